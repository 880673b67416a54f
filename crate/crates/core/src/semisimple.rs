//! Semisimplicity diagnostics at a numeric parameter: singular values of
//! `t`, the trace-form radical `N`, and the center of `End(X)/N`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, kernel, left_kernel, rank, rref_rows, Rational};
use crate::category::{GramMatrix, InterpCategory, Morphism, SumObject};
use crate::error::{Error, Result};
use crate::gfq::{FqField, Subspace};
use crate::lattice::{delta_factored, DeltaFactor};
use crate::specialization::{combination, conj_class_count, Specializer};

/// Largest exponent `i` tried when testing `t = q^i`.
pub const DEFAULT_MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamStatus {
    pub t: String,
    pub q: u32,
    pub singular: bool,
    /// The exponent `i` with `t = q^i`, when singular.
    pub witness: Option<u32>,
}

/// `t` is singular exactly when it is a power `q^i`, `0 ≤ i ≤ max_exponent`.
pub fn is_singular(t: &Rational, q: u32, max_exponent: u32) -> ParamStatus {
    let mut witness = None;
    if t.is_integer() && *t >= Rational::one() {
        let target = t.to_integer();
        let mut power = num_bigint::BigInt::one();
        for i in 0..=max_exponent {
            if power == target {
                witness = Some(i);
                break;
            }
            if power > target {
                break;
            }
            power *= q;
        }
    }
    ParamStatus {
        t: format_rational(t),
        q,
        singular: witness.is_some(),
        witness,
    }
}

/// Gram matrix entries as numbers; fails in symbolic mode.
pub fn numeric_entries(gram: &GramMatrix) -> Result<Vec<Vec<Rational>>> {
    gram.entries
        .iter()
        .map(|row| row.iter().map(|s| s.as_constant().ok_or(Error::NonNumeric)).collect())
        .collect()
}

fn require_numeric(cat: &InterpCategory) -> Result<()> {
    cat.param().value().map(|_| ()).ok_or(Error::NonNumeric)
}

/// Basis of the negligible morphisms in `Hom(X, Y)`: the left kernel of the
/// pairing with `Hom(Y, X)`.
pub fn hom_radical(cat: &InterpCategory, x: &SumObject, y: &SumObject, max: u128) -> Result<Vec<Morphism>> {
    require_numeric(cat)?;
    let gram = cat.gram_pairing(x, y, max)?;
    let entries = numeric_entries(&gram)?;
    left_kernel(&entries)
        .iter()
        .map(|c| combination(&gram.rows, c))
        .collect()
}

/// `N(X, X)`.
pub fn radical(cat: &InterpCategory, x: &SumObject, max: u128) -> Result<Vec<Morphism>> {
    hom_radical(cat, x, x, max)
}

/// Rank of the trace pairing between `Hom(X, Y)` and `Hom(Y, X)`.
pub fn gram_rank(cat: &InterpCategory, x: &SumObject, y: &SumObject, max: u128) -> Result<usize> {
    require_numeric(cat)?;
    Ok(rank(&numeric_entries(&cat.gram_pairing(x, y, max)?)?))
}

/// Roots of the lattice determinant for the largest summand: at these values
/// of `t` (and only these) the pairing on `End(X)` degenerates.
pub fn symbolic_radical_roots(q: u32, x: &SumObject) -> Result<Vec<DeltaFactor>> {
    let n = x.summands().iter().copied().max().unwrap_or(0);
    delta_factored(q, n)
}

/// Center data of `End(X)/N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub object: String,
    pub t: String,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub blocks_expected: usize,
}

/// Dimension of the center of `End(X)/N`: elements `z` with
/// `tr(b_j [z, b_i]) = 0` for all basis elements, modulo `N`.
pub fn center_dim(cat: &InterpCategory, x: &SumObject, max: u128) -> Result<(usize, usize)> {
    require_numeric(cat)?;
    let gram = cat.gram_pairing(x, x, max)?;
    let g = numeric_entries(&gram)?;
    let basis = &gram.rows;
    let n = basis.len();
    let radical_dim = left_kernel(&g).len();
    let index: HashMap<(usize, usize, &Subspace), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let (sx, ty, w, _) = b.terms().next().expect("basis element has one term");
            ((sx, ty, w), i)
        })
        .collect();
    // b_k b_i = c · b_m (or zero): store (m, c)
    let products: Vec<Vec<Option<(usize, Rational)>>> = basis
        .par_iter()
        .map(|bk| {
            basis
                .iter()
                .map(|bi| {
                    let p = cat.compose(bk, bi)?;
                    let entry = match p.terms().next() {
                        None => None,
                        Some((sx, ty, w, c)) => {
                            Some((index[&(sx, ty, w)], c.as_constant().ok_or(Error::NonNumeric)?))
                        }
                    };
                    Ok(entry)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // only the row space of the pairing matters for "∈ N"
    let mut g_rows = g.clone();
    rref_rows(&mut g_rows);
    let mut system: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        // column k: coordinates of [b_k, b_i] = b_k b_i - b_i b_k
        let mut commutator = vec![vec![Rational::zero(); n]; n];
        for (k, col) in commutator.iter_mut().enumerate() {
            if let Some((m, c)) = &products[k][i] {
                col[*m] += c;
            }
            if let Some((m, c)) = &products[i][k] {
                col[*m] -= c;
            }
        }
        for grow in &g_rows {
            let row: Vec<Rational> = commutator
                .iter()
                .map(|col| {
                    col.iter()
                        .zip(grow)
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect();
            if row.iter().any(|v| !v.is_zero()) {
                system.push(row);
            }
        }
        rref_rows(&mut system);
    }
    let solutions = kernel(&system, n).len();
    Ok((solutions - radical_dim, radical_dim))
}

/// Expected center dimension of `End(X)/N`. At regular `t` it is the number
/// of simple objects `(y, π)` with `dim y` at most the largest summand, that
/// is `Σ_m #conj GL(m, F_q)`; at `t = q^r` it is the center of the
/// commutant of `GL(r)` on `S(X)` for a generator `X`.
pub fn blocks_expected(field: &FqField, t: &Rational, x: &SumObject, limit: u128) -> Result<usize> {
    let top = x.summands().iter().copied().max().unwrap_or(0);
    let status = is_singular(t, field.q(), DEFAULT_MAX_EXPONENT);
    match status.witness {
        None => (0..=top).map(|m| conj_class_count(field, m, limit)).sum(),
        Some(r) => {
            let Some(g) = x.as_generator() else {
                return Err(Error::ObjectMismatch(format!(
                    "singular census needs a generator, got {x}"
                )));
            };
            Specializer::new(field.clone(), r as usize, limit).commutant_center_dim(g.dim())
        }
    }
}

pub fn center_report(cat: &InterpCategory, x: &SumObject, max: u128) -> Result<CenterReport> {
    let t = cat.param().value().ok_or(Error::NonNumeric)?.clone();
    let (center, radical_dim) = center_dim(cat, x, max)?;
    Ok(CenterReport {
        object: x.to_string(),
        t: format_rational(&t),
        radical_dim,
        center_dim: center,
        blocks_expected: blocks_expected(cat.field(), &t, x, max)?,
    })
}
