//! A reduced run of the property suite, shared by the CLI and the Python
//! bindings.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{Param, Poly, Rational, Scalar};
use crate::category::sample::{random_basis_morphism, random_representative, random_subspace};
use crate::category::{core_and_length, GenObject, InterpCategory, SumObject, DEFAULT_MAX_HOM};
use crate::error::Result;
use crate::gfq::FqField;
use crate::lattice::{delta_factored, expand_factors, gram_unit_determinant, subspace_count, LatticeIndex};
use crate::semisimple::{center_dim, radical};
use crate::specialization::Specializer;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

fn symbolic(q: u32) -> Result<InterpCategory> {
    Ok(InterpCategory::new(FqField::from_order(q)?, Param::Symbolic))
}

fn determinant_formula() -> Result<bool> {
    for (q, n) in [(2, 1), (2, 2), (3, 1)] {
        let lattice = LatticeIndex::enumerate(&FqField::from_order(q)?, n, 64)?;
        let det = gram_unit_determinant(&lattice, &Param::Symbolic, 64)?;
        if det != Scalar::from_poly(expand_factors(&delta_factored(q, n)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stanley_and_mobius() -> Result<bool> {
    for q in [2, 3] {
        let lattice = LatticeIndex::enumerate(&FqField::from_order(q)?, 3, 1024)?;
        for y in lattice.subspaces() {
            let expected = (0..y.dim()).fold(Poly::one(), |acc, i| {
                &acc * &Poly::linear(Rational::from_integer((q as i64).pow(i as u32).into()))
            });
            if lattice.p_poly(y)? != expected {
                return Ok(false);
            }
        }
        let top = lattice.get(lattice.len() - 1).clone();
        let mu = lattice.mobius(lattice.get(0), &top)?;
        if mu != -(q as i64).pow(3) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn hom_dims() -> Result<bool> {
    let c = symbolic(2)?;
    let g = SumObject::generator;
    Ok(c.hom_dim(&g(1), &g(1))? == 5 && c.hom_dim(&g(1), &g(2))? == 16 && subspace_count(4, 2)? == 67)
}

fn category_axioms(samples: usize) -> Result<bool> {
    let mut rng = StdRng::seed_from_u64(11);
    for q in [2, 3] {
        let c = symbolic(q)?;
        for _ in 0..samples {
            let d: Vec<usize> = (0..4).map(|_| rng.random_range(0..3)).collect();
            let f = random_basis_morphism(&c, &mut rng, d[0], d[1]);
            let g = random_basis_morphism(&c, &mut rng, d[1], d[2]);
            let h = random_basis_morphism(&c, &mut rng, d[2], d[3]);
            if c.compose(&c.compose(&h, &g)?, &f)? != c.compose(&h, &c.compose(&g, &f)?)? {
                return Ok(false);
            }
            if c.compose(&c.identity(f.target()), &f)? != f {
                return Ok(false);
            }
            let x = GenObject(d[0]);
            let id = c.identity(&x.into());
            if c.compose(&c.tensor(&c.ev(x), &id), &c.tensor(&id, &c.delta(x)))? != id {
                return Ok(false);
            }
            let w = random_subspace(c.field(), &mut rng, d[0] + d[1]);
            let rep = random_representative(c.field(), &mut rng, &w, d[0], 1);
            let class = c.class_of_correspondence(&rep)?;
            if class.coefficient(0, 0, &w) != Scalar::t() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn semisimplicity() -> Result<bool> {
    let field = FqField::from_order(2)?;
    let x = SumObject::generator(1);
    let at = |t: i64| InterpCategory::new(field.clone(), Param::numeric(t));
    Ok(radical(&at(5), &x, DEFAULT_MAX_HOM)?.is_empty()
        && radical(&at(0), &x, DEFAULT_MAX_HOM)?.is_empty()
        && radical(&at(2), &x, DEFAULT_MAX_HOM)?.len() == 1
        && radical(&at(1), &x, DEFAULT_MAX_HOM)?.len() == 4)
}

fn idempotents() -> Result<bool> {
    let c = symbolic(2)?;
    let idem = c.lattice_idempotents(GenObject(2))?;
    let mut total = None;
    for i in 0..idem.len() {
        let e = idem.primitive(i);
        if c.compose(e, e)? != *e {
            return Ok(false);
        }
        if c.trace(e)? != Scalar::from_poly(idem.lattice().p_poly(idem.lattice().get(i))?) {
            return Ok(false);
        }
        total = Some(match total {
            None => e.clone(),
            Some(acc) => e.add(&acc)?,
        });
    }
    Ok(total == Some(c.identity(&SumObject::generator(2))))
}

fn center_census() -> Result<bool> {
    let c = InterpCategory::new(FqField::from_order(2)?, Param::numeric(5));
    Ok(center_dim(&c, &SumObject::generator(1), DEFAULT_MAX_HOM)?.0 == 2)
}

fn specialization() -> Result<bool> {
    let s = Specializer::new(FqField::from_order(2)?, 1, 4096);
    let r = s.quotient_check(1, 1, 20, 0)?;
    Ok(r.gram_rank == 4 && r.orbit_count == 4 && r.radical_killed && r.functorial)
}

fn length_filtration() -> Result<bool> {
    let c = symbolic(2)?;
    let sizes = (
        c.isom_split(GenObject(1), GenObject(1)).0.len(),
        c.isom_split(GenObject(2), GenObject(2)).0.len(),
    );
    let field = c.field();
    let core_ok = crate::lattice::all_subspaces(field, 4)
        .iter()
        .all(|w| core_and_length(field, w, 2).core_dim <= 2);
    Ok(sizes == (1, 6) && core_ok)
}

/// Runs every check; a check that errors counts as failed.
pub fn run(samples: usize) -> SelftestReport {
    let checks: Vec<(&'static str, Box<dyn Fn() -> Result<bool>>)> = vec![
        ("determinant_formula", Box::new(determinant_formula)),
        ("stanley_and_mobius", Box::new(stanley_and_mobius)),
        ("hom_dims", Box::new(hom_dims)),
        ("category_axioms", Box::new(move || category_axioms(samples))),
        ("semisimplicity", Box::new(semisimplicity)),
        ("idempotents", Box::new(idempotents)),
        ("center_census", Box::new(center_census)),
        ("specialization", Box::new(specialization)),
        ("length_filtration", Box::new(length_filtration)),
    ];
    let checks: Vec<Check> = checks
        .into_iter()
        .map(|(name, f)| Check {
            name,
            ok: f().unwrap_or(false),
        })
        .collect();
    let passed = checks.iter().filter(|c| c.ok).count();
    SelftestReport {
        passed,
        failed: checks.len() - passed,
        checks,
    }
}
