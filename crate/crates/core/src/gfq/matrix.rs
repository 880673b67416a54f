use std::fmt;

use super::{FqField, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_q. As a linear map it acts on column vectors,
/// so a map `c -> y` is stored as a `dim y x dim c` matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FqMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        FqMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows, checking shape and residues.
    pub fn from_rows(field: &FqField, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for &x in row {
                if !field.is_residue(x) {
                    return Err(Error::Parse {
                        what: "field element",
                        input: x.to_string(),
                    });
                }
                data.push(x as u8);
            }
        }
        Ok(FqMatrix::from_data(rows.len(), cols, data))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as u32).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, field: &FqField, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = FqMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = field.add(out.get(i, j), field.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, field: &FqField, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + rhs.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(FqMatrix::from_data(self.rows, self.cols + rhs.cols, data))
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != rhs.cols && self.rows > 0 && rhs.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, rhs.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { rhs.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(FqMatrix::from_data(self.rows + rhs.rows, cols, data))
    }

    /// Columns `range` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> FqMatrix {
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[start..end]);
        }
        FqMatrix::from_data(self.rows, end - start, data)
    }

    pub fn neg(&self, field: &FqField) -> FqMatrix {
        FqMatrix::from_data(
            self.rows,
            self.cols,
            self.data.iter().map(|&x| field.neg(x)).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row-echelon form with zero rows removed, the rank, and the pivot
    /// columns.
    pub fn rref(&self, field: &FqField) -> (FqMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(field);
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        (m, rank, pivots)
    }

    fn rref_in_place(&mut self, field: &FqField) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            if inv != 1 {
                for j in c..cols {
                    let v = field.mul(self.get(r, j), inv);
                    self.set(r, j, v);
                }
            }
            for i in 0..rows {
                let f = self.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = field.sub(self.get(i, j), field.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FqField) -> usize {
        self.rref(field).1
    }

    /// Right null space `{ v : M v = 0 }` as a subspace of F_q^cols.
    pub fn kernel(&self, field: &FqField) -> Subspace {
        let (r, _, pivots) = self.rref(field);
        let cols = self.cols;
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FqMatrix::zeros(free.len(), cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, 1);
            for (i, &p) in pivots.iter().enumerate() {
                basis.set(k, p, field.neg(r.get(i, f)));
            }
        }
        Subspace::span(field, &basis)
    }

    /// Column space as a subspace of F_q^rows.
    pub fn image(&self, field: &FqField) -> Subspace {
        if self.cols == 0 {
            return Subspace::zero(self.rows);
        }
        Subspace::span(field, &self.transpose())
    }

    /// True when the square matrix is invertible.
    pub fn is_invertible(&self, field: &FqField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self, field: &FqField) -> Option<FqMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&FqMatrix::identity(n)).ok()?;
        let (r, rank, pivots) = aug.rref(field);
        if rank < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(r.col_block(n, 2 * n))
    }
}

/// Right null space of `m`.
pub fn kernel_basis(field: &FqField, m: &FqMatrix) -> Subspace {
    m.kernel(field)
}

/// The fiber product `{ (a, b) : F a = G b }` of `F: c -> y` and `G: d -> y`
/// as a subspace of `c ⊕ d`.
pub fn pullback(field: &FqField, f: &FqMatrix, g: &FqMatrix) -> Result<Subspace> {
    if f.rows() != g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "pullback targets differ: {} vs {}",
            f.rows(),
            g.rows()
        )));
    }
    Ok(f.hstack(&g.neg(field))?.kernel(field))
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqMatrix{:?}", self.to_rows())
    }
}
