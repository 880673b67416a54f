//! The `qinterp` command line: one JSON document per invocation on stdout.
//!
//! Exit codes: 0 success, 1 domain error (reported as `{"error": ...}`),
//! 2 usage error (clap's usage text on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, Param, Rational, Scalar};
use crate::cache::LatticeCache;
use crate::category::{GenObject, InterpCategory, Morphism, MorphismJson, SumObject, DEFAULT_MAX_HOM};
use crate::error::{Error, Result};
use crate::gfq::FqField;
use crate::lattice::{
    delta_factored, expand_factors, gram_unit_determinant, subspace_count, LatticeIndex, DEFAULT_MAX_DETERMINANT,
    DEFAULT_MAX_SUBSPACES,
};
use crate::semisimple::{center_report, is_singular, numeric_entries, radical, symbolic_radical_roots, DEFAULT_MAX_EXPONENT};
use crate::specialization::{epimorphism_count, Specializer, DEFAULT_MAX_PERM};

#[derive(Parser, Debug)]
#[command(name = "qinterp", version, about = "Exact computations in T(Mod(F_q), K)")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Field order (a prime power at most 16).
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    /// Numeric parameter as a rational "a/b".
    #[arg(long, global = true, conflicts_with = "symbolic", allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Work over Q(t) (the default when --t is absent).
    #[arg(long, global = true)]
    pub symbolic: bool,
    /// Lattice cache directory; defaults to $QINTERP_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUBSPACES)]
    pub limit_lattice: u128,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_HOM)]
    pub limit_hom: u128,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PERM)]
    pub limit_perm: u128,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DETERMINANT)]
    pub limit_det: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subspaces of F_q^n in canonical order.
    Lattice {
        #[arg(long)]
        n: usize,
    },
    /// Factored lattice determinant; --verify also eliminates the Gram matrix.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Dimension of Hom([dx], [dy]).
    HomDim {
        #[arg(long)]
        dx: usize,
        #[arg(long)]
        dy: usize,
    },
    /// G ∘ F for morphisms given as JSON (inline or a file path).
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// F ⊗ G.
    Tensor {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Categorical trace of an endomorphism.
    Trace {
        #[arg(long)]
        f: String,
    },
    /// Trace pairing between Hom(X, Y) and Hom(Y, X).
    Gram {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Negligible endomorphisms of an object.
    Radical {
        #[arg(long)]
        x: String,
    },
    /// Center of End(X)/N.
    Center {
        #[arg(long)]
        x: String,
    },
    /// Subobject idempotents of [n].
    Idempotents {
        #[arg(long)]
        n: usize,
    },
    /// The functor S at t = q^r, on a morphism or (with --n) on [n].
    Specialize {
        #[arg(long)]
        r: usize,
        #[arg(long, conflicts_with = "n")]
        f: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare the Gram rank at t = q^r with GL(r)-orbit counts.
    QuotientCheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dx: usize,
        #[arg(long)]
        dy: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Reduced property suite.
    Selftest {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

impl RunConfig {
    fn field(&self) -> Result<FqField> {
        FqField::from_order(self.q)
    }

    fn param(&self) -> Result<Param> {
        match &self.t {
            Some(t) => Ok(Param::Numeric(parse_rational(t)?)),
            None => Ok(Param::Symbolic),
        }
    }

    fn category(&self) -> Result<InterpCategory> {
        Ok(InterpCategory::new(self.field()?, self.param()?))
    }

    fn cache(&self) -> Option<LatticeCache> {
        self.cache_dir.clone().map(LatticeCache::new).or_else(LatticeCache::from_env)
    }

    fn lattice(&self, n: usize) -> Result<LatticeIndex> {
        let field = self.field()?;
        match self.cache() {
            Some(cache) => {
                let (lattice, outcome) = cache.lattice(&field, n, self.limit_lattice)?;
                log::info!("lattice q={} n={n}: {outcome:?}", self.q);
                Ok(lattice)
            }
            None => LatticeIndex::enumerate(&field, n, self.limit_lattice),
        }
    }
}

/// Objects on the command line: `"[1]+[2]"`, `"1,2"`, `"2"` or `"[]"`.
pub fn parse_object(s: &str) -> Result<SumObject> {
    let bad = || Error::Parse {
        what: "object",
        input: s.to_string(),
    };
    let s = s.trim();
    if s.is_empty() || s == "[]" {
        return Ok(SumObject::unit());
    }
    let parts: Vec<&str> = if s.contains('+') { s.split('+').collect() } else { s.split(',').collect() };
    let dims = parts
        .iter()
        .map(|p| {
            let p = p.trim();
            let inner = p.strip_prefix('[').and_then(|p| p.strip_suffix(']')).unwrap_or(p);
            inner.trim().parse::<usize>().map_err(|_| bad())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SumObject::new(dims))
}

fn read_morphism(field: &FqField, arg: &str) -> Result<Morphism> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    let json: MorphismJson = serde_json::from_str(&text)?;
    Morphism::from_json(field, &json)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn factors_json(q: u32, n: usize) -> Result<Value> {
    let factors = delta_factored(q, n)?;
    Ok(Value::Array(
        factors
            .iter()
            .map(|f| {
                let lin = crate::arith::Poly::linear(Rational::from_integer(f.root.into()));
                json!([lin.to_string(), f.exponent as u64])
            })
            .collect(),
    ))
}

fn matrix_json(m: &[Vec<Rational>]) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|v| Value::String(format_rational(v))).collect()))
            .collect(),
    )
}

fn execute(config: &RunConfig, command: &Command) -> Result<Value> {
    let field = config.field()?;
    let q = field.q();
    match command {
        Command::Lattice { n } => {
            let lattice = config.lattice(*n)?;
            let dims: Vec<usize> = (0..=*n).map(|k| lattice.count_of_dim(k)).collect();
            let subspaces: Vec<Vec<Vec<u32>>> = lattice.subspaces().iter().map(|s| s.to_rows()).collect();
            Ok(json!({"q": q, "n": n, "subspace_count": lattice.len(), "by_dim": dims, "subspaces": subspaces}))
        }
        Command::Delta { n, verify } => {
            let mut out = json!({
                "q": q,
                "n": n,
                "subspace_count": subspace_count(*n, q)? as u64,
                "delta": factors_json(q, *n)?,
            });
            let param = config.param()?;
            let expanded = Scalar::from_poly(expand_factors(&delta_factored(q, *n)?));
            if let Param::Numeric(_) = &param {
                out["value"] = json!(param.specialize(&expanded)?.to_string());
            }
            if *verify {
                let lattice = config.lattice(*n)?;
                let det = gram_unit_determinant(&lattice, &param, config.limit_det)?;
                out["matches"] = json!(det == param.specialize(&expanded)?);
            }
            Ok(out)
        }
        Command::HomDim { dx, dy } => {
            let cat = config.category()?;
            let dim = cat.hom_dim(&SumObject::generator(*dx), &SumObject::generator(*dy))?;
            Ok(json!({"q": q, "dx": dx, "dy": dy, "dim": dim as u64}))
        }
        Command::Compose { f, g } => {
            let cat = config.category()?;
            let f = cat.adopt(&read_morphism(&field, f)?)?;
            let g = cat.adopt(&read_morphism(&field, g)?)?;
            to_value(&cat.compose(&g, &f)?.to_json())
        }
        Command::Tensor { f, g } => {
            let cat = config.category()?;
            let f = cat.adopt(&read_morphism(&field, f)?)?;
            let g = cat.adopt(&read_morphism(&field, g)?)?;
            to_value(&cat.tensor(&f, &g).to_json())
        }
        Command::Trace { f } => {
            let cat = config.category()?;
            let f = cat.adopt(&read_morphism(&field, f)?)?;
            Ok(json!({"t": cat.param().to_string(), "trace": cat.trace(&f)?.to_string()}))
        }
        Command::Gram { x, y } => {
            let cat = config.category()?;
            let (x, y) = (parse_object(x)?, parse_object(y)?);
            let gram = cat.gram_pairing(&x, &y, config.limit_hom)?;
            let entries: Vec<Vec<String>> = gram
                .entries
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect();
            let mut out = json!({
                "x": x.to_string(),
                "y": y.to_string(),
                "t": cat.param().to_string(),
                "rows": gram.rows.iter().map(Morphism::to_json).collect::<Vec<_>>(),
                "cols": gram.cols.iter().map(Morphism::to_json).collect::<Vec<_>>(),
                "entries": entries,
            });
            if cat.param().value().is_some() {
                out["rank"] = json!(crate::arith::rank(&numeric_entries(&gram)?));
            }
            Ok(out)
        }
        Command::Radical { x } => {
            let cat = config.category()?;
            let x = parse_object(x)?;
            match cat.param() {
                Param::Symbolic => {
                    let n = x.summands().iter().copied().max().unwrap_or(0);
                    let roots: Vec<String> = symbolic_radical_roots(q, &x)?
                        .iter()
                        .map(|f| f.root.to_string())
                        .collect();
                    Ok(json!({"object": x.to_string(), "t": "t", "delta": factors_json(q, n)?, "singular_at": roots}))
                }
                Param::Numeric(t) => {
                    let rad = radical(&cat, &x, config.limit_hom)?;
                    let status = is_singular(t, q, DEFAULT_MAX_EXPONENT);
                    Ok(json!({
                        "object": x.to_string(),
                        "t": format_rational(t),
                        "singular": status.singular,
                        "radical_dim": rad.len(),
                        "radical": rad.iter().map(Morphism::to_json).collect::<Vec<_>>(),
                    }))
                }
            }
        }
        Command::Center { x } => {
            let cat = config.category()?;
            to_value(&center_report(&cat, &parse_object(x)?, config.limit_hom)?)
        }
        Command::Idempotents { n } => {
            let cat = config.category()?;
            let idem = cat.lattice_idempotents(GenObject(*n))?;
            let lattice = idem.lattice();
            let mut entries = Vec::with_capacity(idem.len());
            let mut total = Morphism::zero(SumObject::generator(*n), SumObject::generator(*n));
            let mut orthogonal = true;
            for i in 0..idem.len() {
                let e = idem.primitive(i);
                for j in 0..idem.len() {
                    let prod = cat.compose(e, idem.primitive(j))?;
                    let expected = if i == j { e.clone() } else { Morphism::zero(e.source().clone(), e.target().clone()) };
                    orthogonal &= prod == expected;
                }
                total = total.add(e)?;
                entries.push(json!({
                    "y": lattice.get(i).to_rows(),
                    "dim": lattice.get(i).dim(),
                    "trace": cat.trace(e)?.to_string(),
                    "primitive": e.to_json(),
                }));
            }
            Ok(json!({
                "q": q,
                "n": n,
                "idempotents": entries,
                "orthogonal": orthogonal,
                "complete": total == cat.identity(&SumObject::generator(*n)),
            }))
        }
        Command::Specialize { r, f, n } => {
            let t = Rational::from_integer((q as u128).pow(*r as u32).into());
            let param = match config.param()? {
                Param::Symbolic => Param::Numeric(t),
                p => p,
            };
            let cat = InterpCategory::new(field.clone(), param);
            let s = Specializer::for_category(&cat, *r, config.limit_perm)?;
            match (f, n) {
                (Some(f), _) => {
                    let f = cat.adopt(&read_morphism(&field, f)?)?;
                    let m = s.morphism_matrix(&f)?;
                    Ok(json!({
                        "q": q, "r": r, "t": cat.param().to_string(),
                        "rows": m.len(), "cols": s.object_dim(f.source())?,
                        "matrix": matrix_json(&m),
                    }))
                }
                (None, Some(n)) => {
                    let module = s.module(*n)?;
                    Ok(json!({
                        "q": q, "r": r, "n": n,
                        "dim": module.dim(),
                        "epimorphisms": epimorphism_count(q, *n, *r) as u64,
                    }))
                }
                (None, None) => Err(Error::DimensionMismatch("specialize needs --f or --n".into())),
            }
        }
        Command::QuotientCheck { r, dx, dy, samples } => {
            let s = Specializer::new(field, *r, config.limit_perm.max(config.limit_hom));
            to_value(&s.quotient_check(*dx, *dy, *samples, 0)?)
        }
        Command::Selftest { samples } => to_value(&crate::selftest::run(*samples)),
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// the JSON result to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let (doc, code) = match execute(&cli.config, &cli.command) {
        Ok(v) => {
            let failed = matches!(cli.command, Command::Selftest { .. })
                && v["failed"].as_u64().unwrap_or(0) > 0;
            (v, if failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            (json!({"error": e.to_string()}), 1)
        }
    };
    let text = serde_json::to_string(&doc).expect("JSON values serialize");
    if writeln!(out, "{text}").is_err() {
        return 1;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (i32, Value) {
        let mut buf = Vec::new();
        let mut full = vec!["qinterp"];
        full.extend_from_slice(args);
        let code = run(full, &mut buf);
        let text = String::from_utf8(buf).unwrap();
        (code, serde_json::from_str(text.trim()).unwrap_or(Value::Null))
    }

    #[test]
    fn documented_examples() {
        let (code, v) = run_json(&["delta", "--q", "2", "--n", "2", "--symbolic"]);
        assert_eq!(code, 0);
        assert_eq!(v["delta"], json!([["t-1", 4], ["t-2", 1]]));
        assert_eq!(v["subspace_count"], json!(5));
        let (_, v) = run_json(&["hom-dim", "--q", "2", "--dx", "1", "--dy", "1"]);
        assert_eq!(v["dim"], json!(5));
        let (_, v) = run_json(&["quotient-check", "--q", "2", "--r", "1", "--dx", "1", "--dy", "1"]);
        assert_eq!((v["gram_rank"].clone(), v["orbit_count"].clone(), v["match"].clone()), (json!(4), json!(4), json!(true)));
    }

    #[test]
    fn objects_parse() {
        assert_eq!(parse_object("[1]+[2]").unwrap(), SumObject::new(vec![1, 2]));
        assert_eq!(parse_object("1,2").unwrap(), SumObject::new(vec![1, 2]));
        assert_eq!(parse_object("[]").unwrap(), SumObject::unit());
        assert!(parse_object("[x]").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_json(&["hom-dim", "--dx", "1"]).0, 2);
        assert_eq!(run_json(&["frobnicate"]).0, 2);
        let (code, v) = run_json(&["hom-dim", "--q", "6", "--dx", "1", "--dy", "1"]);
        assert_eq!(code, 1);
        assert!(v["error"].is_string());
        let (code, _) = run_json(&["specialize", "--r", "1", "--n", "1", "--t", "3"]);
        assert_eq!(code, 1);
    }
}
