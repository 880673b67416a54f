//! Random generators for property checks and the self-test.

use rand::Rng;

use super::{Correspondence, InterpCategory, Morphism, SumObject};
use crate::arith::Scalar;
use crate::gfq::{FqField, FqMatrix, Subspace};

pub fn random_matrix<R: Rng>(field: &FqField, rng: &mut R, rows: usize, cols: usize) -> FqMatrix {
    let data = (0..rows * cols)
        .map(|_| rng.random_range(0..field.q()) as u8)
        .collect();
    FqMatrix::from_data(rows, cols, data)
}

/// Span of a random number of random vectors; every subspace has positive
/// probability.
pub fn random_subspace<R: Rng>(field: &FqField, rng: &mut R, ambient: usize) -> Subspace {
    let rows = rng.random_range(0..=ambient);
    Subspace::span(field, &random_matrix(field, rng, rows, ambient))
}

pub fn random_invertible<R: Rng>(field: &FqField, rng: &mut R, n: usize) -> FqMatrix {
    loop {
        let m = random_matrix(field, rng, n, n);
        if m.is_invertible(field) {
            return m;
        }
    }
}

/// A non-monic correspondence with image `w` and a `k`-dimensional kernel.
pub fn random_representative<R: Rng>(
    field: &FqField,
    rng: &mut R,
    w: &Subspace,
    dx: usize,
    k: usize,
) -> Correspondence {
    let dim = w.dim();
    let c = dim + k;
    let mut onto = FqMatrix::zeros(dim, c);
    for i in 0..dim {
        onto.set(i, i, 1);
    }
    let g = random_invertible(field, rng, c);
    let map = w
        .basis()
        .transpose()
        .mul(field, &onto)
        .and_then(|m| m.mul(field, &g))
        .expect("shapes agree");
    let fx = map.transpose().col_block(0, dx).transpose();
    let fy = map.transpose().col_block(dx, w.ambient()).transpose();
    Correspondence { fx, fy }
}

pub fn random_coefficient<R: Rng>(cat: &InterpCategory, rng: &mut R) -> Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.random_range(-3..=3);
    }
    Scalar::from_int(c).mul(&cat.param().t_pow(rng.random_range(0..2)))
}

/// A morphism `X -> Y` with `terms` random terms (duplicates merge).
pub fn random_morphism<R: Rng>(
    cat: &InterpCategory,
    rng: &mut R,
    x: &SumObject,
    y: &SumObject,
    terms: usize,
) -> Morphism {
    let mut m = Morphism::zero(x.clone(), y.clone());
    for _ in 0..terms {
        let sx = rng.random_range(0..x.len());
        let ty = rng.random_range(0..y.len());
        let w = random_subspace(cat.field(), rng, x.dim_of(sx) + y.dim_of(ty));
        let c = random_coefficient(cat, rng);
        m.add_term(sx, ty, w, c).expect("ambient matches block");
    }
    m
}

/// A single relation `[dx] -> [dy]` with coefficient one.
pub fn random_basis_morphism<R: Rng>(cat: &InterpCategory, rng: &mut R, dx: usize, dy: usize) -> Morphism {
    let w = random_subspace(cat.field(), rng, dx + dy);
    Morphism::relation(dx, dy, w).expect("ambient matches")
}
