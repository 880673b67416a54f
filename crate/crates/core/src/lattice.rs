//! The subobject lattice of F_q^n: enumeration, Gaussian binomials, the Möbius
//! function, the polynomials `p_y` and the Gram determinant of the lattice.

use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{bareiss_determinant, determinant, Param, Poly, Rational, Scalar};
use crate::error::{Error, Result};
use crate::gfq::{FieldSpec, FqField, FqMatrix, Subspace};

/// Default cap on the number of subspaces a [`LatticeIndex`] may hold.
pub const DEFAULT_MAX_SUBSPACES: u128 = 1024;

/// Default cap on the side of a Gram matrix handed to the determinant.
pub const DEFAULT_MAX_DETERMINANT: usize = 32;

/// Gaussian binomial `[n choose k]_q`, the number of k-dimensional subspaces
/// of F_q^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> Result<u128> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let q = q as u128;
    let overflow = || Error::LimitExceeded {
        what: "gaussian binomial",
        requested: u128::MAX,
        limit: u128::MAX,
    };
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q
            .checked_pow((n - i) as u32)
            .ok_or_else(overflow)?
            - 1;
        let den = q.checked_pow(i as u32 + 1).ok_or_else(overflow)? - 1;
        acc = acc.checked_mul(num).ok_or_else(overflow)? / den;
    }
    Ok(acc)
}

/// Total number of subspaces of F_q^n.
pub fn subspace_count(n: usize, q: u32) -> Result<u128> {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// All subspaces of F_q^n in canonical order, generated directly as RREF
/// patterns (pivot set plus free entries).
pub fn all_subspaces(field: &FqField, n: usize) -> Vec<Subspace> {
    let q = field.q() as u8;
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| {
                    let pivots = &pivots;
                    (p + 1..n)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let mut values = vec![0u8; free.len()];
            loop {
                let mut m = FqMatrix::zeros(k, n);
                for (i, &p) in pivots.iter().enumerate() {
                    m.set(i, p, 1);
                }
                for (&(i, j), &v) in free.iter().zip(&values) {
                    m.set(i, j, v);
                }
                out.push(Subspace::from_rref(m));
                if !advance(&mut values, q) {
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

fn advance(values: &mut [u8], base: u8) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The full subspace lattice of F_q^n with meet/join tables and the Möbius
/// function, all computed at construction.
#[derive(Clone, Debug)]
pub struct LatticeIndex {
    field: FqField,
    n: usize,
    subspaces: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    meet: Vec<u32>,
    join: Vec<u32>,
    mobius: Vec<i64>,
}

impl LatticeIndex {
    /// Enumerates the lattice, refusing when the subspace count exceeds `max_subspaces`.
    pub fn enumerate(field: &FqField, n: usize, max_subspaces: u128) -> Result<Self> {
        let count = subspace_count(n, field.q())?;
        if count > max_subspaces {
            return Err(Error::LimitExceeded {
                what: "subspace lattice size",
                requested: count,
                limit: max_subspaces,
            });
        }
        let subspaces = all_subspaces(field, n);
        debug_assert_eq!(subspaces.len() as u128, count);
        Ok(LatticeIndex::from_subspaces(field.clone(), n, subspaces))
    }

    fn from_subspaces(field: FqField, n: usize, subspaces: Vec<Subspace>) -> Self {
        let size = subspaces.len();
        let index: HashMap<Subspace, usize> = subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut meet = vec![0u32; size * size];
        let mut join = vec![0u32; size * size];
        for a in 0..size {
            for b in a..size {
                let (m, j) = subspaces[a]
                    .meet_join(&field, &subspaces[b])
                    .expect("same ambient");
                let (m, j) = (index[&m] as u32, index[&j] as u32);
                meet[a * size + b] = m;
                meet[b * size + a] = m;
                join[a * size + b] = j;
                join[b * size + a] = j;
            }
        }
        let mobius = mobius_table(size, &join);
        LatticeIndex {
            field,
            n,
            subspaces,
            index,
            meet,
            join,
            mobius,
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    fn pos(&self, s: &Subspace) -> Result<usize> {
        self.position(s).ok_or(Error::AmbientMismatch {
            left: s.ambient(),
            right: self.n,
        })
    }

    pub fn meet_index(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_index(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join_index(a, b) == b
    }

    /// Indices of all subspaces contained in `subspaces()[top]`.
    pub fn below(&self, top: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.leq(u, top)).collect()
    }

    pub fn count_of_dim(&self, k: usize) -> usize {
        self.subspaces.iter().filter(|s| s.dim() == k).count()
    }

    pub fn mobius_index(&self, u: usize, v: usize) -> Result<i64> {
        if !self.leq(u, v) {
            return Err(Error::NotContained);
        }
        Ok(self.mobius[u * self.len() + v])
    }

    /// Möbius function `μ(u, v)` of the lattice; requires `u ⊆ v`.
    pub fn mobius(&self, u: &Subspace, v: &Subspace) -> Result<i64> {
        self.mobius_index(self.pos(u)?, self.pos(v)?)
    }

    /// `p_y = Σ_{u ⊆ y} μ(u, y) t^{dim u}`.
    pub fn p_poly(&self, y: &Subspace) -> Result<Poly> {
        let yi = self.pos(y)?;
        let mut coeffs = vec![0i64; y.dim() + 1];
        for u in self.below(yi) {
            coeffs[self.subspaces[u].dim()] += self.mobius[u * self.len() + yi];
        }
        Ok(Poly::from_ints(&coeffs))
    }

    /// Number of complements of `m` inside `y`: subspaces `c ⊆ y` with
    /// `c ∩ m = 0` and `c + m = y`.
    pub fn complement_count(&self, m: &Subspace, y: &Subspace) -> Result<usize> {
        let (mi, yi) = (self.pos(m)?, self.pos(y)?);
        if !self.leq(mi, yi) {
            return Err(Error::NotContained);
        }
        let bottom = self.pos(&Subspace::zero(self.n))?;
        Ok(self
            .below(yi)
            .into_iter()
            .filter(|&c| self.meet_index(c, mi) == bottom && self.join_index(c, mi) == yi)
            .count())
    }

    /// The Gram matrix `(t^{dim(u ∩ v)})` in lattice order, as integer
    /// exponents.
    pub fn gram_exponents(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| self.subspaces[self.meet_index(u, v)].dim())
                    .collect()
            })
            .collect()
    }

    pub(crate) fn to_file(&self) -> LatticeFile {
        let size = self.len();
        let mut mobius = Vec::new();
        for u in 0..size {
            for v in 0..size {
                if self.leq(u, v) {
                    mobius.push((u as u32, v as u32, self.mobius[u * size + v]));
                }
            }
        }
        LatticeFile {
            schema_version: LATTICE_SCHEMA_VERSION,
            field: self.field.spec(),
            n: self.n,
            subspaces: self.subspaces.iter().map(Subspace::to_rows).collect(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            mobius,
        }
    }

    pub(crate) fn from_file(file: LatticeFile) -> Result<Self> {
        let field = FqField::from_spec(&file.field)?;
        let size = file.subspaces.len();
        let bad = |msg: &str| Error::Parse {
            what: "lattice cache",
            input: msg.to_string(),
        };
        if file.meet.len() != size * size || file.join.len() != size * size {
            return Err(bad("table size"));
        }
        if file.meet.iter().chain(&file.join).any(|&i| i as usize >= size) {
            return Err(bad("table entry out of range"));
        }
        let mut subspaces = Vec::with_capacity(size);
        for rows in &file.subspaces {
            let s = Subspace::from_rows(&field, file.n, rows)?;
            if s.to_rows() != *rows {
                return Err(bad("subspace not in canonical form"));
            }
            subspaces.push(s);
        }
        if subspaces.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("subspaces not in canonical order"));
        }
        let index = subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut mobius = vec![0i64; size * size];
        for &(u, v, m) in &file.mobius {
            if u as usize >= size || v as usize >= size {
                return Err(bad("mobius entry out of range"));
            }
            mobius[u as usize * size + v as usize] = m;
        }
        Ok(LatticeIndex {
            field,
            n: file.n,
            subspaces,
            index,
            meet: file.meet,
            join: file.join,
            mobius,
        })
    }
}

/// Bumped whenever the serialized layout changes.
pub const LATTICE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
pub(crate) struct LatticeFile {
    pub schema_version: u32,
    pub field: FieldSpec,
    pub n: usize,
    pub subspaces: Vec<Vec<Vec<u32>>>,
    pub meet: Vec<u32>,
    pub join: Vec<u32>,
    pub mobius: Vec<(u32, u32, i64)>,
}

/// Dense Möbius table from the join table: `μ(u,u) = 1` and
/// `μ(u,v) = -Σ_{u ≤ z < v} μ(u,z)`.
fn mobius_table(size: usize, join: &[u32]) -> Vec<i64> {
    let leq = |a: usize, b: usize| join[a * size + b] as usize == b;
    let mut mu = vec![0i64; size * size];
    for u in 0..size {
        // lattice order refines inclusion (sorted by dimension first)
        let up: Vec<usize> = (u..size).filter(|&v| leq(u, v)).collect();
        for (k, &v) in up.iter().enumerate() {
            if v == u {
                mu[u * size + v] = 1;
                continue;
            }
            let s: i64 = up[..k]
                .iter()
                .filter(|&&z| leq(z, v))
                .map(|&z| mu[u * size + z])
                .sum();
            mu[u * size + v] = -s;
        }
    }
    mu
}

/// One factor `(t - root)^exponent` of the lattice determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaFactor {
    pub root: u128,
    pub exponent: u128,
}

/// The lattice determinant as `∏_i (t - q^i)^{e_i}` with
/// `e_i = Σ_{d > i} [n choose d]_q`.
pub fn delta_factored(q: u32, n: usize) -> Result<Vec<DeltaFactor>> {
    (0..n)
        .map(|i| {
            let exponent = (i + 1..=n)
                .map(|d| gaussian_binomial(n, d, q))
                .sum::<Result<u128>>()?;
            Ok(DeltaFactor {
                root: (q as u128).pow(i as u32),
                exponent,
            })
        })
        .collect()
}

/// Expands a factored determinant into a polynomial.
pub fn expand_factors(factors: &[DeltaFactor]) -> Poly {
    factors.iter().fold(Poly::one(), |acc, f| {
        let lin = Poly::linear(Rational::from_integer(f.root.into()));
        &acc * &lin.pow(f.exponent as u32)
    })
}

/// Determinant of the lattice Gram matrix `(t^{dim(u ∩ v)})`, symbolic by
/// fraction-free elimination or at a numeric parameter by Gaussian
/// elimination over Q.
pub fn gram_unit_determinant(lattice: &LatticeIndex, param: &Param, max_side: usize) -> Result<Scalar> {
    let size = lattice.len();
    if size > max_side {
        return Err(Error::LimitExceeded {
            what: "gram determinant side",
            requested: size as u128,
            limit: max_side as u128,
        });
    }
    let exps = lattice.gram_exponents();
    match param {
        Param::Symbolic => {
            let m: Vec<Vec<Poly>> = exps
                .iter()
                .map(|r| r.iter().map(|&k| Poly::t_pow(k)).collect())
                .collect();
            Ok(Scalar::from_poly(bareiss_determinant(&m)))
        }
        Param::Numeric(t) => {
            let m: Vec<Vec<Rational>> = exps
                .iter()
                .map(|r| r.iter().map(|&k| pow_rational(t, k)).collect())
                .collect();
            Ok(Scalar::constant(determinant(&m)))
        }
    }
}

fn pow_rational(t: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn lattice(q: u32, n: usize) -> LatticeIndex {
        LatticeIndex::enumerate(&FqField::from_order(q).unwrap(), n, 10_000).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(lattice(2, 0).len(), 1);
        assert_eq!(lattice(2, 2).len(), 5);
        assert_eq!(lattice(2, 4).len(), 67);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let l = lattice(3, 3);
        assert!(l.subspaces().windows(2).all(|w| w[0] < w[1]));
        assert!(l.subspaces().windows(2).all(|w| w[0].dim() <= w[1].dim()));
    }

    #[test]
    fn limit_is_enforced() {
        let f = FqField::from_order(2).unwrap();
        let err = LatticeIndex::enumerate(&f, 6, 1024).unwrap_err();
        assert!(matches!(
            err,
            Error::LimitExceeded { requested: 2825, limit: 1024, .. }
        ));
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), 1);
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), 3);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        for q in [2, 3] {
            for n in 0..=4 {
                let l = lattice(q, n);
                for k in 0..=n {
                    assert_eq!(l.count_of_dim(k) as u128, gaussian_binomial(n, k, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn mobius_small_values() {
        let l = lattice(2, 2);
        let zero = Subspace::zero(2);
        let full = Subspace::full(2);
        let line = l.subspaces()[1].clone();
        assert_eq!(l.mobius(&line, &line).unwrap(), 1);
        assert_eq!(l.mobius(&zero, &line).unwrap(), -1);
        assert_eq!(l.mobius(&zero, &full).unwrap(), 2);
        assert!(matches!(l.mobius(&full, &line), Err(Error::NotContained)));
    }

    #[test]
    fn p_poly_small_values() {
        let l = lattice(2, 2);
        assert_eq!(l.p_poly(&Subspace::zero(2)).unwrap(), Poly::one());
        assert_eq!(l.p_poly(l.get(1)).unwrap(), Poly::from_ints(&[-1, 1]));
        assert_eq!(l.p_poly(&Subspace::full(2)).unwrap(), Poly::from_ints(&[2, -3, 1]));
    }

    #[test]
    fn delta_factored_small_values() {
        assert!(delta_factored(2, 0).unwrap().is_empty());
        assert_eq!(
            delta_factored(2, 1).unwrap(),
            vec![DeltaFactor { root: 1, exponent: 1 }]
        );
        assert_eq!(
            delta_factored(2, 2).unwrap(),
            vec![
                DeltaFactor { root: 1, exponent: 4 },
                DeltaFactor { root: 2, exponent: 1 }
            ]
        );
    }

    #[test]
    fn gram_determinant_small_values() {
        let l1 = lattice(2, 1);
        let d = gram_unit_determinant(&l1, &Param::Symbolic, 32).unwrap();
        assert_eq!(d, Scalar::from_poly(Poly::from_ints(&[-1, 1])));

        let l2 = lattice(2, 2);
        let d = gram_unit_determinant(&l2, &Param::Symbolic, 32).unwrap();
        let expected = expand_factors(&delta_factored(2, 2).unwrap());
        assert_eq!(d, Scalar::from_poly(expected));

        let at2 = gram_unit_determinant(&l2, &Param::Numeric(rational(2)), 32).unwrap();
        assert!(at2.is_zero());
        assert!(gram_unit_determinant(&lattice(2, 4), &Param::Symbolic, 32).is_err());
    }

    #[test]
    fn complements_of_a_line() {
        let l = lattice(3, 3);
        let full = Subspace::full(3);
        let line = l.subspaces().iter().find(|s| s.dim() == 1).unwrap().clone();
        assert_eq!(l.complement_count(&line, &full).unwrap(), 9);
    }
}
