use std::fmt;

use super::{FqField, FqMatrix};
use crate::error::{Error, Result};

/// A linear subspace of F_q^ambient, stored as its unique RREF basis.
///
/// Equality, hashing and ordering all act on the RREF bytes, so two values are
/// equal exactly when they span the same space. The derived order sorts by
/// ambient dimension, then dimension, then the basis bytes lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    rows: Vec<u8>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            dim: 0,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rref(FqMatrix::identity(ambient))
    }

    /// Row space of `m`.
    pub fn span(field: &FqField, m: &FqMatrix) -> Self {
        Subspace::from_rref(m.rref(field).0).with_ambient(m.cols())
    }

    /// Wraps a matrix already in RREF with independent rows.
    pub(crate) fn from_rref(m: FqMatrix) -> Self {
        Subspace {
            ambient: m.cols(),
            dim: m.rows(),
            rows: m.data().to_vec(),
        }
    }

    fn with_ambient(mut self, ambient: usize) -> Self {
        self.ambient = ambient;
        self
    }

    /// Parses the JSON row list; the rows need not be reduced.
    pub fn from_rows(field: &FqField, ambient: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let m = FqMatrix::from_rows(field, rows, ambient)?;
        Ok(Subspace::span(field, &m))
    }

    /// Span of the given vectors in F_q^ambient.
    pub fn from_vectors(field: &FqField, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        let data: Vec<u8> = vectors.iter().flatten().copied().collect();
        Subspace::span(field, &FqMatrix::from_data(vectors.len(), ambient, data))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The RREF basis (rows are basis vectors).
    pub fn basis(&self) -> FqMatrix {
        FqMatrix::from_data(self.dim, self.ambient, self.rows.clone())
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rref_bytes(&self) -> &[u8] {
        &self.rows
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.basis().to_rows()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim)
            .map(|i| self.row(i).iter().position(|&x| x != 0).unwrap())
            .collect()
    }

    pub fn contains_vector(&self, field: &FqField, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.row(i)) {
                *x = field.sub(*x, field.mul(c, b));
            }
        }
        v.iter().all(|&x| x == 0)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, field: &FqField, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim <= other.dim
            && (0..self.dim).all(|i| other.contains_vector(field, self.row(i)))
    }

    pub fn join(&self, field: &FqField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(field, &self.basis().vstack(&other.basis())?).with_ambient(self.ambient))
    }

    pub fn meet(&self, field: &FqField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.dim == 0 || other.dim == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // (a, b) with a U = b V, read off through a U
        let stacked = self.basis().vstack(&other.basis())?;
        let relations = stacked.transpose().kernel(field);
        let coeffs = relations.basis().col_block(0, self.dim);
        let vectors = coeffs.mul(field, &self.basis())?;
        Ok(Subspace::span(field, &vectors).with_ambient(self.ambient))
    }

    pub fn meet_join(&self, field: &FqField, other: &Subspace) -> Result<(Subspace, Subspace)> {
        Ok((self.meet(field, other)?, self.join(field, other)?))
    }

    /// Every vector of the subspace, in lexicographic order of coordinates
    /// with respect to the RREF basis.
    pub fn vectors(&self, field: &FqField) -> Vec<Vec<u8>> {
        let q = field.q() as usize;
        let count = q.pow(self.dim as u32);
        let mut out = Vec::with_capacity(count);
        let mut coords = vec![0u8; self.dim];
        for _ in 0..count {
            let mut v = vec![0u8; self.ambient];
            for (i, &c) in coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (x, &b) in v.iter_mut().zip(self.row(i)) {
                    *x = field.add(*x, field.mul(c, b));
                }
            }
            out.push(v);
            for c in coords.iter_mut().rev() {
                *c += 1;
                if (*c as usize) < q {
                    break;
                }
                *c = 0;
            }
        }
        out
    }

    /// `self ⊕ other` inside `F_q^(a + b)`.
    pub fn direct_sum(&self, other: &Subspace) -> Subspace {
        let ambient = self.ambient + other.ambient;
        let mut m = FqMatrix::zeros(self.dim + other.dim, ambient);
        for i in 0..self.dim {
            for (j, &x) in self.row(i).iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for i in 0..other.dim {
            for (j, &x) in other.row(i).iter().enumerate() {
                m.set(self.dim + i, self.ambient + j, x);
            }
        }
        // block-diagonal of two RREFs is already reduced
        Subspace::from_rref(m)
    }

    /// Reorders coordinates: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permute_coords(&self, field: &FqField, perm: &[usize]) -> Subspace {
        debug_assert_eq!(perm.len(), self.ambient);
        let mut m = FqMatrix::zeros(self.dim, self.ambient);
        for i in 0..self.dim {
            let row = self.row(i);
            for (j, &src) in perm.iter().enumerate() {
                m.set(i, j, row[src]);
            }
        }
        Subspace::span(field, &m)
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn map(&self, field: &FqField, m: &FqMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map with {} columns applied to a subspace of F_q^{}",
                m.cols(),
                self.ambient
            )));
        }
        if self.dim == 0 {
            return Ok(Subspace::zero(m.rows()));
        }
        let img = self.basis().mul(field, &m.transpose())?;
        Ok(Subspace::span(field, &img).with_ambient(m.rows()))
    }

    /// Projection onto coordinates `start..end`.
    pub fn project(&self, field: &FqField, start: usize, end: usize) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(end - start);
        }
        Subspace::span(field, &self.basis().col_block(start, end)).with_ambient(end - start)
    }

    /// Vectors of the subspace whose coordinates outside `start..end` vanish,
    /// returned as a subspace of F_q^(end - start).
    pub fn slice_kernel(&self, field: &FqField, start: usize, end: usize) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(end - start);
        }
        let basis = self.basis();
        let outside = basis
            .col_block(0, start)
            .hstack(&basis.col_block(end, self.ambient))
            .expect("same row count");
        // coefficient vectors a with a B vanishing outside the slice
        let coeffs = outside.transpose().kernel(field);
        if coeffs.dim() == 0 {
            return Subspace::zero(end - start);
        }
        let vectors = coeffs
            .basis()
            .mul(field, &basis.col_block(start, end))
            .expect("shapes agree");
        Subspace::span(field, &vectors).with_ambient(end - start)
    }

    /// Embeds a subspace of F_q^k into F_q^ambient at coordinates `start..start+k`.
    pub fn embed_at(&self, ambient: usize, start: usize) -> Subspace {
        let mut m = FqMatrix::zeros(self.dim, ambient);
        for i in 0..self.dim {
            for (j, &x) in self.row(i).iter().enumerate() {
                m.set(i, start + j, x);
            }
        }
        Subspace::from_rref(m)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({}, {:?})", self.ambient, self.to_rows())
    }
}
