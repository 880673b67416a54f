//! The specialization functor at `t = q^r`.
//!
//! `S([x])` is the space of functions on `Hom(p, x)`, `p = F_q^r`, and a
//! relation `W ⊆ x ⊕ y` acts by `e_α ↦ Σ e_γ` over the lifts `β: p -> W` with
//! `pr_x β = α`, `pr_y β = γ`. The group `GL(r, F_q)` acts on `Hom(p, x)` by
//! `α ↦ α g^{-1}`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{kernel, left_kernel, rank, rref_rows, Param, Rational};
use crate::category::{Correspondence, GenObject, InterpCategory, Morphism, SumObject};
use crate::error::{Error, Result};
use crate::gfq::{FqField, FqMatrix, Subspace};

/// Default cap on the dimension of a permutation module.
pub const DEFAULT_MAX_PERM: u128 = 4096;

/// Dense matrix over Q, indexed `[row][col]`.
pub type QMatrix = Vec<Vec<Rational>>;

fn checked_power(q: u32, exp: usize, what: &'static str, limit: u128) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(q as u128);
        if acc > limit {
            return Err(Error::LimitExceeded {
                what,
                requested: acc,
                limit,
            });
        }
    }
    Ok(acc)
}

/// Every `rows x cols` matrix, lexicographic in the row-major entries.
fn all_matrices(q: u32, rows: usize, cols: usize) -> Vec<FqMatrix> {
    let len = rows * cols;
    let count = (q as usize).pow(len as u32);
    let mut out = Vec::with_capacity(count);
    let mut data = vec![0u8; len];
    for _ in 0..count {
        out.push(FqMatrix::from_data(rows, cols, data.clone()));
        for d in data.iter_mut().rev() {
            *d += 1;
            if (*d as u32) < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Position of a matrix in the lexicographic enumeration.
fn lex_index(q: u32, m: &FqMatrix) -> usize {
    m.data().iter().fold(0, |acc, &d| acc * q as usize + d as usize)
}

/// `∏_{i<n} (q^r - q^i)`: the number of surjections `F_q^r -> F_q^n`,
/// and `|GL(n, F_q)|` when `r = n`.
pub fn epimorphism_count(q: u32, n: usize, r: usize) -> u128 {
    let qr = (q as u128).pow(r as u32);
    (0..n)
        .map(|i| qr.saturating_sub((q as u128).pow(i as u32)))
        .product()
}

/// `GL(r, F_q)`, enumerated in lexicographic order.
#[derive(Clone, Debug)]
pub struct GLGroup {
    field: FqField,
    r: usize,
    elements: Vec<FqMatrix>,
    inverses: Vec<FqMatrix>,
}

impl GLGroup {
    /// `limit` bounds the `q^(r^2)` candidate matrices scanned.
    pub fn enumerate(field: &FqField, r: usize, limit: u128) -> Result<Self> {
        checked_power(field.q(), r * r, "GL candidate matrices", limit)?;
        let elements: Vec<FqMatrix> = all_matrices(field.q(), r, r)
            .into_iter()
            .filter(|m| m.is_invertible(field))
            .collect();
        let inverses = elements
            .iter()
            .map(|g| g.inverse(field).expect("invertible"))
            .collect();
        Ok(GLGroup {
            field: field.clone(),
            r,
            elements,
            inverses,
        })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FqMatrix] {
        &self.elements
    }

    pub fn inverse(&self, i: usize) -> &FqMatrix {
        &self.inverses[i]
    }
}

/// Number of conjugacy classes of `GL(m, F_q)` by exhaustive conjugation.
pub fn conj_class_count(field: &FqField, m: usize, limit: u128) -> Result<usize> {
    let group = GLGroup::enumerate(field, m, limit)?;
    let index: HashMap<&[u8], usize> = group
        .elements()
        .iter()
        .enumerate()
        .map(|(i, g)| (g.data(), i))
        .collect();
    let mut seen = vec![false; group.order()];
    let mut classes = 0;
    for start in 0..group.order() {
        if seen[start] {
            continue;
        }
        classes += 1;
        let g = &group.elements()[start];
        for (h, h_inv) in group.elements().iter().zip(&group.inverses) {
            let c = h.mul(field, g)?.mul(field, h_inv)?;
            seen[index[c.data()]] = true;
        }
    }
    Ok(classes)
}

/// `S([x])`: functions on `Hom(p, x)` with basis the maps `α` (as
/// `dim x x r` matrices) in lexicographic order.
#[derive(Clone, Debug)]
pub struct PermModule {
    x: GenObject,
    r: usize,
    q: u32,
    basis: Vec<FqMatrix>,
}

impl PermModule {
    pub fn new(field: &FqField, x: GenObject, r: usize, limit: u128) -> Result<Self> {
        checked_power(field.q(), x.dim() * r, "permutation module dimension", limit)?;
        Ok(PermModule {
            x,
            r,
            q: field.q(),
            basis: all_matrices(field.q(), x.dim(), r),
        })
    }

    pub fn object(&self) -> GenObject {
        self.x
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FqMatrix] {
        &self.basis
    }

    pub fn position(&self, alpha: &FqMatrix) -> usize {
        lex_index(self.q, alpha)
    }

    /// Where `g` (the `i`-th group element) sends each basis vector:
    /// `e_α ↦ e_{α g^{-1}}`.
    pub fn permutation(&self, group: &GLGroup, i: usize) -> Result<Vec<usize>> {
        let g_inv = group.inverse(i);
        self.basis
            .iter()
            .map(|a| Ok(self.position(&a.mul(group.field(), g_inv)?)))
            .collect()
    }

    pub fn action_matrix(&self, group: &GLGroup, i: usize) -> Result<QMatrix> {
        let perm = self.permutation(group, i)?;
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (col, &row) in perm.iter().enumerate() {
            m[row][col] = Rational::one();
        }
        Ok(m)
    }
}

/// Evaluates the functor `S` at `t = q^r` for a fixed field.
#[derive(Clone, Debug)]
pub struct Specializer {
    field: FqField,
    r: usize,
    limit: u128,
}

impl Specializer {
    pub fn new(field: FqField, r: usize, limit: u128) -> Self {
        Specializer { field, r, limit }
    }

    /// Checks that `cat` is numeric at exactly `t = q^r`.
    pub fn for_category(cat: &InterpCategory, r: usize, limit: u128) -> Result<Self> {
        let t = cat.param().value().ok_or(Error::NonNumeric)?;
        let q = cat.field().q();
        if *t != Rational::from_integer((q as u128).pow(r as u32).into()) {
            return Err(Error::ParameterMismatch {
                t: cat.param().to_string(),
                q,
                r,
            });
        }
        Ok(Specializer::new(cat.field().clone(), r, limit))
    }

    /// The category at the parameter `t = q^r`.
    pub fn category(&self) -> InterpCategory {
        let t = (self.field.q() as u128).pow(self.r as u32);
        InterpCategory::new(self.field.clone(), Param::Numeric(Rational::from_integer(t.into())))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn module(&self, dim: usize) -> Result<PermModule> {
        PermModule::new(&self.field, GenObject(dim), self.r, self.limit)
    }

    pub fn object_dim(&self, x: &SumObject) -> Result<usize> {
        x.summands()
            .iter()
            .map(|&d| Ok(self.module(d)?.dim()))
            .sum()
    }

    fn offsets(&self, x: &SumObject) -> Result<Vec<usize>> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(x.len());
        for &d in x.summands() {
            out.push(acc);
            acc += self.module(d)?.dim();
        }
        Ok(out)
    }

    /// `S(W)` for a relation `W ⊆ x ⊕ y`: the number of lifts `β: p -> W`
    /// over each pair `(α, γ)`, found by running through all `r`-tuples of
    /// vectors of `W`. Entries are indexed `[γ][α]`.
    pub fn relation_matrix(&self, w: &Subspace, dx: usize) -> Result<QMatrix> {
        let dy = w.ambient() - dx;
        let (mx, my) = (self.module(dx)?, self.module(dy)?);
        checked_power(self.field.q(), w.dim() * self.r, "lifts through a relation", self.limit)?;
        let vectors = w.vectors(&self.field);
        let mut m = vec![vec![Rational::zero(); mx.dim()]; my.dim()];
        let q = self.field.q();
        let mut choice = vec![0usize; self.r];
        loop {
            let mut alpha = FqMatrix::zeros(dx, self.r);
            let mut gamma = FqMatrix::zeros(dy, self.r);
            for (col, &c) in choice.iter().enumerate() {
                let v = &vectors[c];
                for i in 0..dx {
                    alpha.set(i, col, v[i]);
                }
                for j in 0..dy {
                    gamma.set(j, col, v[dx + j]);
                }
            }
            m[lex_index(q, &gamma)][lex_index(q, &alpha)] += Rational::one();
            if !advance(&mut choice, vectors.len()) {
                break;
            }
        }
        Ok(m)
    }

    /// `S` of a raw correspondence `c -> x ⊕ y`: the sum over all
    /// `β: p -> c` of `e_{F_x β} ↦ e_{F_y β}`.
    pub fn correspondence_matrix(&self, c: &Correspondence) -> Result<QMatrix> {
        let (dx, dy) = (c.fx.rows(), c.fy.rows());
        let (mx, my) = (self.module(dx)?, self.module(dy)?);
        checked_power(self.field.q(), c.source_dim() * self.r, "lifts through a correspondence", self.limit)?;
        let q = self.field.q();
        let mut m = vec![vec![Rational::zero(); mx.dim()]; my.dim()];
        for beta in all_matrices(q, c.source_dim(), self.r) {
            let alpha = c.fx.mul(&self.field, &beta)?;
            let gamma = c.fy.mul(&self.field, &beta)?;
            m[lex_index(q, &gamma)][lex_index(q, &alpha)] += Rational::one();
        }
        Ok(m)
    }

    /// `S(F)` as a block matrix over the summands, rows indexed by the target.
    /// Coefficients must already be numbers.
    pub fn morphism_matrix(&self, f: &Morphism) -> Result<QMatrix> {
        let (src, tgt) = (f.source(), f.target());
        let (so, to) = (self.offsets(src)?, self.offsets(tgt)?);
        let (n, m) = (self.object_dim(src)?, self.object_dim(tgt)?);
        let mut out = vec![vec![Rational::zero(); n]; m];
        for (sx, ty, w, c) in f.terms() {
            let coeff = c.as_constant().ok_or(Error::NonNumeric)?;
            let block = self.relation_matrix(w, src.dim_of(sx))?;
            for (i, row) in block.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out[to[ty] + i][so[sx] + j] += &coeff * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Number of `GL(r)`-orbits on `Hom(p, x) × Hom(p, y)`, i.e. on
    /// `(dx + dy) x r` matrices under right multiplication.
    pub fn orbit_count(&self, dx: usize, dy: usize) -> Result<usize> {
        let group = GLGroup::enumerate(&self.field, self.r, self.limit)?;
        let points = PermModule::new(&self.field, GenObject(dx + dy), self.r, self.limit)?;
        let mut seen = vec![false; points.dim()];
        let mut orbits = 0;
        for start in 0..points.dim() {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let a = &points.basis()[start];
            for g in group.elements() {
                seen[points.position(&a.mul(&self.field, g)?)] = true;
            }
        }
        Ok(orbits)
    }

    /// Dimension of the center of the commutant `End_GL(S([x]))`, spanned by
    /// the orbital matrices of `GL(r)` on `Hom(p, x)²`.
    pub fn commutant_center_dim(&self, dx: usize) -> Result<usize> {
        let module = self.module(dx)?;
        let n = module.dim();
        let group = GLGroup::enumerate(&self.field, self.r, self.limit)?;
        let perms: Vec<Vec<usize>> = (0..group.order())
            .map(|i| module.permutation(&group, i))
            .collect::<Result<_>>()?;
        let mut orbit_of = vec![usize::MAX; n * n];
        let mut orbitals = 0;
        for start in 0..n * n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let (a, b) = (start / n, start % n);
            for p in &perms {
                orbit_of[p[a] * n + p[b]] = orbitals;
            }
            orbitals += 1;
        }
        let basis: Vec<Vec<i64>> = (0..orbitals)
            .map(|k| orbit_of.iter().map(|&o| (o == k) as i64).collect())
            .collect();
        let product = |a: &[i64], b: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for l in 0..n {
                    let x = a[i * n + l];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..n {
                        out[i * n + j] += x * b[l * n + j];
                    }
                }
            }
            out
        };
        // unknown z = Σ z_k O_k; equations z O_i - O_i z = 0, entry by entry
        let commutators: Vec<Vec<Vec<i64>>> = (0..orbitals)
            .into_par_iter()
            .map(|k| {
                (0..orbitals)
                    .map(|i| {
                        let ab = product(&basis[k], &basis[i]);
                        let ba = product(&basis[i], &basis[k]);
                        ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
                    })
                    .collect()
            })
            .collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..orbitals {
            for e in 0..n * n {
                let row: Vec<Rational> = (0..orbitals)
                    .map(|k| Rational::from_integer(commutators[k][i][e].into()))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
            rref_rows(&mut rows);
        }
        Ok(kernel(&rows, orbitals).len())
    }

    /// Compares `T/N` with `Rep(GL(r))` on `Hom([x], [y])`; see
    /// [`QuotientReport`].
    pub fn quotient_check(&self, dx: usize, dy: usize, samples: usize, seed: u64) -> Result<QuotientReport> {
        let cat = self.category();
        let (x, y) = (SumObject::generator(dx), SumObject::generator(dy));
        let gram = cat.gram_pairing(&x, &y, self.limit)?;
        let numeric: QMatrix = gram
            .entries
            .iter()
            .map(|row| row.iter().map(|s| s.as_constant().ok_or(Error::NonNumeric)).collect())
            .collect::<Result<_>>()?;
        let gram_rank = rank(&numeric);
        let orbit_count = self.orbit_count(dx, dy)?;

        let radical = left_kernel(&numeric);
        let mut radical_killed = true;
        for coeffs in &radical {
            let f = combination(&gram.rows, coeffs)?;
            if !is_zero_matrix(&self.morphism_matrix(&f)?) {
                radical_killed = false;
            }
        }

        let back = cat.hom_basis(&y, &x, self.limit)?;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut functorial = true;
        for _ in 0..samples {
            let f = &gram.rows[rng.random_range(0..gram.rows.len())];
            let g = &back[rng.random_range(0..back.len())];
            let lhs = self.morphism_matrix(&cat.compose(g, f)?)?;
            let rhs = matmul(&self.morphism_matrix(g)?, &self.morphism_matrix(f)?);
            if lhs != rhs {
                functorial = false;
            }
        }

        Ok(QuotientReport {
            q: self.field.q(),
            r: self.r,
            x: dx,
            y: dy,
            gram_rank,
            orbit_count,
            is_match: gram_rank == orbit_count,
            radical_dim: radical.len(),
            radical_killed,
            functorial,
        })
    }
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

/// `Σ c_i F_i` for basis morphisms sharing one Hom-space.
pub fn combination(basis: &[Morphism], coeffs: &[Rational]) -> Result<Morphism> {
    let first = basis.first().ok_or_else(|| Error::DimensionMismatch("empty basis".into()))?;
    let mut acc = Morphism::zero(first.source().clone(), first.target().clone());
    for (f, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&f.scale(&crate::arith::Scalar::constant(c.clone())))?;
        }
    }
    Ok(acc)
}

/// Outcome of comparing `Hom_T([x],[y])` at `t = q^r` with GL-equivariant maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub q: u32,
    pub r: usize,
    pub x: usize,
    pub y: usize,
    /// Rank of the trace pairing between `Hom([x],[y])` and `Hom([y],[x])`.
    pub gram_rank: usize,
    /// GL-orbits on `Hom(p, x) × Hom(p, y)`.
    pub orbit_count: usize,
    #[serde(rename = "match")]
    pub is_match: bool,
    pub radical_dim: usize,
    /// Every basis vector of the radical maps to zero under `S`.
    pub radical_killed: bool,
    /// `S(G∘F) = S(G) S(F)` on the sampled pairs.
    pub functorial: bool,
}

pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); cols];
            for (x, brow) in row.iter().zip(b) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

pub fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let bcols = b.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(a.len() * b.len());
    for arow in a {
        for brow in b {
            let mut row = Vec::with_capacity(arow.len() * bcols);
            for x in arow {
                row.extend(brow.iter().map(|y| x * y));
            }
            out.push(row);
        }
    }
    out
}

pub fn trace(m: &QMatrix) -> Rational {
    m.iter().enumerate().map(|(i, row)| row[i].clone()).sum()
}

pub fn is_zero_matrix(m: &QMatrix) -> bool {
    m.iter().all(|row| row.iter().all(Zero::is_zero))
}
