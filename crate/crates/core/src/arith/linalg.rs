use num_traits::{One, Zero};

use super::{Poly, Rational, Scalar};

/// Minimal field interface shared by `Rational` and `Scalar` so elimination
/// routines are written once.
pub trait ExactField: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on a zero divisor; callers only divide by pivots.
    fn div(&self, rhs: &Self) -> Self;
}

impl ExactField for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactField for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Scalar::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Scalar::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Scalar::mul(self, rhs)
    }
    fn div(&self, rhs: &Self) -> Self {
        Scalar::div(self, rhs).expect("division by zero pivot")
    }
}

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref_rows<T: ExactField>(rows: &mut Vec<Vec<T>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one().div(&rows[r][c]);
        if inv != T::one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<T: ExactField>(m: &[Vec<T>]) -> usize {
    let mut rows = m.to_vec();
    rref_rows(&mut rows).len()
}

/// Basis of `{ v : m v = 0 }` for an `r x cols` matrix.
pub fn kernel<T: ExactField>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let mut rows = m.to_vec();
    let pivots = rref_rows(&mut rows);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = T::zero().sub(&row[f]);
                }
            }
            v
        })
        .collect()
}

/// Basis of `{ c : c^T m = 0 }`.
pub fn left_kernel<T: ExactField>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let transposed: Vec<Vec<T>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    kernel(&transposed, rows)
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<T: ExactField>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return T::zero();
        };
        if p != c {
            a.swap(p, c);
            det = T::zero().sub(&det);
        }
        det = det.mul(&a[c][c]);
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].div(&pivot_row[c]);
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x.sub(&f.mul(p));
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant of a polynomial matrix. Every division
/// is exact, so entries stay polynomials throughout.
pub fn bareiss_determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut a = m.to_vec();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v
                    .div_exact(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}
