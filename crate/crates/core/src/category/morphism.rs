use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SumObject;
use crate::arith::{Param, Scalar};
use crate::error::{Error, Result};
use crate::gfq::{FqField, Subspace};

/// A morphism between formal direct sums: for each block `(source summand,
/// target summand)` a finite combination of relations `W ⊆ x ⊕ y`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// morphisms.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: SumObject,
    target: SumObject,
    blocks: BTreeMap<(usize, usize), BTreeMap<Subspace, Scalar>>,
}

impl Morphism {
    pub fn zero(source: SumObject, target: SumObject) -> Self {
        Morphism {
            source,
            target,
            blocks: BTreeMap::new(),
        }
    }

    /// `coeff · W` in block `(sx, ty)`.
    pub fn basis_term(
        source: SumObject,
        target: SumObject,
        sx: usize,
        ty: usize,
        w: Subspace,
        coeff: Scalar,
    ) -> Result<Self> {
        let mut m = Morphism::zero(source, target);
        m.add_term(sx, ty, w, coeff)?;
        Ok(m)
    }

    /// Single relation between generators with coefficient one.
    pub fn relation(dx: usize, dy: usize, w: Subspace) -> Result<Self> {
        Morphism::basis_term(
            SumObject::generator(dx),
            SumObject::generator(dy),
            0,
            0,
            w,
            Scalar::one(),
        )
    }

    /// A scalar in `End(1)`.
    pub fn scalar(s: Scalar) -> Self {
        let mut m = Morphism::zero(SumObject::unit(), SumObject::unit());
        m.add_term(0, 0, Subspace::zero(0), s).expect("unit block");
        m
    }

    pub fn source(&self) -> &SumObject {
        &self.source
    }

    pub fn target(&self) -> &SumObject {
        &self.target
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn num_terms(&self) -> usize {
        self.blocks.values().map(BTreeMap::len).sum()
    }

    pub fn block_ambient(&self, sx: usize, ty: usize) -> usize {
        self.source.dim_of(sx) + self.target.dim_of(ty)
    }

    /// Adds `coeff · W` to block `(sx, ty)`, pruning cancellations.
    pub fn add_term(&mut self, sx: usize, ty: usize, w: Subspace, coeff: Scalar) -> Result<()> {
        if sx >= self.source.len() || ty >= self.target.len() {
            return Err(Error::ObjectMismatch(format!(
                "block ({sx}, {ty}) outside {} -> {}",
                self.source, self.target
            )));
        }
        let ambient = self.block_ambient(sx, ty);
        if w.ambient() != ambient {
            return Err(Error::AmbientMismatch {
                left: w.ambient(),
                right: ambient,
            });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let block = self.blocks.entry((sx, ty)).or_default();
        match block.get_mut(&w) {
            Some(c) => {
                let sum = c.add(&coeff);
                if sum.is_zero() {
                    block.remove(&w);
                } else {
                    *c = sum;
                }
            }
            None => {
                block.insert(w, coeff);
            }
        }
        if block.is_empty() {
            self.blocks.remove(&(sx, ty));
        }
        Ok(())
    }

    /// All stored terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Subspace, &Scalar)> {
        self.blocks
            .iter()
            .flat_map(|(&(sx, ty), b)| b.iter().map(move |(w, c)| (sx, ty, w, c)))
    }

    pub fn coefficient(&self, sx: usize, ty: usize, w: &Subspace) -> Scalar {
        self.blocks
            .get(&(sx, ty))
            .and_then(|b| b.get(w))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The single-generator morphism formed by block `(sx, ty)`.
    pub fn block(&self, sx: usize, ty: usize) -> Morphism {
        let mut m = Morphism::zero(
            SumObject::generator(self.source.dim_of(sx)),
            SumObject::generator(self.target.dim_of(ty)),
        );
        if let Some(b) = self.blocks.get(&(sx, ty)) {
            m.blocks.insert((0, 0), b.clone());
        }
        m
    }

    fn check_same_hom(&self, other: &Morphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ObjectMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same_hom(other)?;
        let mut out = self.clone();
        for (sx, ty, w, c) in other.terms() {
            out.add_term(sx, ty, w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        if s.is_zero() {
            return Morphism::zero(self.source.clone(), self.target.clone());
        }
        let mut out = self.clone();
        for block in out.blocks.values_mut() {
            for c in block.values_mut() {
                *c = c.mul(s);
            }
        }
        out
    }

    /// Re-expresses every coefficient in the given parameter mode.
    pub fn specialize(&self, param: &Param) -> Result<Morphism> {
        let mut out = Morphism::zero(self.source.clone(), self.target.clone());
        for (sx, ty, w, c) in self.terms() {
            out.add_term(sx, ty, w.clone(), param.specialize(c)?)?;
        }
        Ok(out)
    }

    /// The scalar of an endomorphism of the unit.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.source != SumObject::unit() || self.target != SumObject::unit() {
            return None;
        }
        Some(self.coefficient(0, 0, &Subspace::zero(0)))
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            source: self.source.summands().to_vec(),
            target: self.target.summands().to_vec(),
            blocks: self
                .blocks
                .iter()
                .map(|(&(sx, ty), b)| BlockJson {
                    sx,
                    ty,
                    terms: b
                        .iter()
                        .map(|(w, c)| TermJson {
                            subspace_rref: w.to_rows(),
                            coeff: c.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(field: &FqField, json: &MorphismJson) -> Result<Morphism> {
        let mut m = Morphism::zero(
            SumObject::new(json.source.clone()),
            SumObject::new(json.target.clone()),
        );
        for block in &json.blocks {
            if block.sx >= m.source.len() || block.ty >= m.target.len() {
                return Err(Error::ObjectMismatch(format!(
                    "block ({}, {}) outside {} -> {}",
                    block.sx, block.ty, m.source, m.target
                )));
            }
            let ambient = m.block_ambient(block.sx, block.ty);
            for term in &block.terms {
                let w = Subspace::from_rows(field, ambient, &term.subspace_rref)?;
                if w.dim() != term.subspace_rref.len() {
                    return Err(Error::Parse {
                        what: "relation basis (rows must be independent)",
                        input: format!("{:?}", term.subspace_rref),
                    });
                }
                m.add_term(block.sx, block.ty, w, term.coeff.parse()?)?;
            }
        }
        Ok(m)
    }
}

impl std::fmt::Debug for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Morphism({} -> {}", self.source, self.target)?;
        for (sx, ty, w, c) in self.terms() {
            write!(f, "; ({sx},{ty}) {c} * {:?}", w.to_rows())?;
        }
        write!(f, ")")
    }
}

/// Wire form:
/// `{"source":[1],"target":[1],"blocks":[{"sx":0,"ty":0,"terms":[{"subspace_rref":[[1,1]],"coeff":"1/1"}]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub sx: usize,
    pub ty: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub subspace_rref: Vec<Vec<u32>>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_matches_wire_example() {
        let field = FqField::from_order(2).unwrap();
        let text = r#"{"source":[1],"target":[1],"blocks":[{"sx":0,"ty":0,"terms":[{"subspace_rref":[[1,1]],"coeff":"1/1"}]}]}"#;
        let json: MorphismJson = serde_json::from_str(text).unwrap();
        let m = Morphism::from_json(&field, &json).unwrap();
        assert_eq!(m.num_terms(), 1);
        assert_eq!(serde_json::to_string(&m.to_json()).unwrap(), text);
    }

    #[test]
    fn cancellation_prunes_terms() {
        let w = Subspace::full(2);
        let a = Morphism::relation(1, 1, w.clone()).unwrap();
        assert!(a.sub(&a).unwrap().is_zero());
        let mut b = a.clone();
        b.add_term(0, 0, w, Scalar::from_int(-1)).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn rejects_bad_blocks() {
        let field = FqField::from_order(2).unwrap();
        let wrong_ambient = Morphism::relation(1, 1, Subspace::full(3));
        assert!(matches!(wrong_ambient, Err(Error::AmbientMismatch { .. })));
        let json = MorphismJson {
            source: vec![1],
            target: vec![1],
            blocks: vec![BlockJson {
                sx: 1,
                ty: 0,
                terms: vec![],
            }],
        };
        assert!(Morphism::from_json(&field, &json).is_err());
    }
}
