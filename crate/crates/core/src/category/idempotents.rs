use super::{diagonal_of, CutObject, GenObject, InterpCategory, Morphism, SumObject};
use crate::arith::Scalar;
use crate::error::Result;
use crate::lattice::LatticeIndex;

/// Subobject idempotents of `[x]`: `Δ_y` for every `y ⊆ x` (the diagonal of
/// `y` inside `x ⊕ x`) and their Möbius inversions
/// `e*_y = Σ_{u ⊆ y} μ(u, y) Δ_u`, which cut out the pieces `[y]^*`.
#[derive(Clone, Debug)]
pub struct LatticeIdempotents {
    x: GenObject,
    lattice: LatticeIndex,
    deltas: Vec<Morphism>,
    primitives: Vec<Morphism>,
}

impl LatticeIdempotents {
    pub(super) fn new(cat: &InterpCategory, x: GenObject) -> Result<Self> {
        let d = x.dim();
        let lattice = LatticeIndex::enumerate(cat.field(), d, u128::MAX)?;
        let deltas: Vec<Morphism> = lattice
            .subspaces()
            .iter()
            .map(|y| Morphism::relation(d, d, diagonal_of(y)))
            .collect::<Result<_>>()?;
        let mut primitives = Vec::with_capacity(lattice.len());
        for y in 0..lattice.len() {
            let mut e = Morphism::zero(SumObject::generator(d), SumObject::generator(d));
            for u in lattice.below(y) {
                let mu = lattice.mobius_index(u, y)?;
                e = e.add(&deltas[u].scale(&Scalar::from_int(mu)))?;
            }
            primitives.push(e);
        }
        Ok(LatticeIdempotents {
            x,
            lattice,
            deltas,
            primitives,
        })
    }

    pub fn object(&self) -> GenObject {
        self.x
    }

    pub fn lattice(&self) -> &LatticeIndex {
        &self.lattice
    }

    /// `Δ_y` for `y = lattice().get(i)`.
    pub fn delta(&self, i: usize) -> &Morphism {
        &self.deltas[i]
    }

    /// `e*_y` for `y = lattice().get(i)`.
    pub fn primitive(&self, i: usize) -> &Morphism {
        &self.primitives[i]
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    /// The summand `[y]^*` of `[x]`.
    pub fn cut_object(&self, cat: &InterpCategory, i: usize) -> Result<CutObject> {
        CutObject::new(cat, self.primitives[i].clone())
    }
}
