use std::collections::BTreeMap;

use super::{InterpCategory, Morphism, SumObject};
use crate::arith::{rref_rows, Scalar};
use crate::error::{Error, Result};
use crate::gfq::Subspace;

/// The image of an idempotent `e` on a formal direct sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutObject {
    ambient: SumObject,
    idempotent: Morphism,
}

impl CutObject {
    /// Checks `e ∘ e = e` before accepting the cut.
    pub fn new(cat: &InterpCategory, idempotent: Morphism) -> Result<Self> {
        if !idempotent.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        if cat.compose(&idempotent, &idempotent)? != idempotent {
            return Err(Error::NotIdempotent);
        }
        Ok(CutObject {
            ambient: idempotent.source().clone(),
            idempotent,
        })
    }

    /// The whole object, cut by its identity.
    pub fn full(cat: &InterpCategory, x: SumObject) -> Self {
        CutObject {
            idempotent: cat.identity(&x),
            ambient: x,
        }
    }

    pub fn ambient(&self) -> &SumObject {
        &self.ambient
    }

    pub fn idempotent(&self) -> &Morphism {
        &self.idempotent
    }

    /// `e_B ∘ F ∘ e_A`, the projection of an ambient morphism into `Hom(A, B)`.
    pub fn cut(cat: &InterpCategory, a: &CutObject, b: &CutObject, f: &Morphism) -> Result<Morphism> {
        let inner = cat.compose(f, &a.idempotent)?;
        cat.compose(&b.idempotent, &inner)
    }

    /// True when `F = e_B ∘ F ∘ e_A`.
    pub fn contains(cat: &InterpCategory, a: &CutObject, b: &CutObject, f: &Morphism) -> Result<bool> {
        Ok(CutObject::cut(cat, a, b, f)? == *f)
    }

    /// A basis of `Hom(A, B)` extracted from the projections of the ambient
    /// relation basis.
    pub fn hom_basis(cat: &InterpCategory, a: &CutObject, b: &CutObject, max: u128) -> Result<Vec<Morphism>> {
        let ambient = cat.hom_basis(&a.ambient, &b.ambient, max)?;
        let mut coords: BTreeMap<(usize, usize, Subspace), usize> = BTreeMap::new();
        let mut projected = Vec::with_capacity(ambient.len());
        for f in &ambient {
            let p = CutObject::cut(cat, a, b, f)?;
            for (sx, ty, w, _) in p.terms() {
                let next = coords.len();
                coords.entry((sx, ty, w.clone())).or_insert(next);
            }
            projected.push(p);
        }
        let n = coords.len();
        let vector = |m: &Morphism| {
            let mut v = vec![Scalar::zero(); n];
            for (sx, ty, w, c) in m.terms() {
                v[coords[&(sx, ty, w.clone())]] = c.clone();
            }
            v
        };
        // keep a morphism when it raises the rank of the span so far
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        let mut basis = Vec::new();
        for p in projected {
            if p.is_zero() {
                continue;
            }
            let mut trial = span.clone();
            trial.push(vector(&p));
            rref_rows(&mut trial);
            if trial.len() > span.len() {
                span = trial;
                basis.push(p);
            }
        }
        Ok(basis)
    }
}
