use std::fmt;

use serde::{Deserialize, Serialize};

/// The generator `[x]` for `x = F_q^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenObject(pub usize);

impl GenObject {
    pub fn dim(self) -> usize {
        self.0
    }
}

impl fmt::Display for GenObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// A formal direct sum `[x_1] ⊕ ... ⊕ [x_s]`, recorded by the dimensions of
/// its summands. Order is significant: it fixes the block layout of every
/// morphism touching the object. An empty list normalizes to the unit `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct SumObject(Vec<usize>);

impl SumObject {
    pub fn new(summands: Vec<usize>) -> Self {
        if summands.is_empty() {
            SumObject(vec![0])
        } else {
            SumObject(summands)
        }
    }

    pub fn unit() -> Self {
        SumObject(vec![0])
    }

    pub fn generator(dim: usize) -> Self {
        SumObject(vec![dim])
    }

    pub fn summands(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(⊕ [x_i]) ⊗ (⊕ [y_j]) = ⊕_{i,j} [x_i ⊕ y_j]`, summands in
    /// lexicographic `(i, j)` order.
    pub fn tensor(&self, other: &SumObject) -> SumObject {
        SumObject(
            self.0
                .iter()
                .flat_map(|&a| other.0.iter().map(move |&b| a + b))
                .collect(),
        )
    }

    /// The single summand when the object is a generator.
    pub fn as_generator(&self) -> Option<GenObject> {
        (self.0.len() == 1).then(|| GenObject(self.0[0]))
    }
}

impl From<GenObject> for SumObject {
    fn from(g: GenObject) -> Self {
        SumObject::generator(g.0)
    }
}

impl From<Vec<usize>> for SumObject {
    fn from(v: Vec<usize>) -> Self {
        SumObject::new(v)
    }
}

impl From<SumObject> for Vec<usize> {
    fn from(s: SumObject) -> Self {
        s.0
    }
}

impl fmt::Display for SumObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| format!("[{d}]")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_normalizes_to_unit() {
        assert_eq!(SumObject::new(vec![]), SumObject::unit());
        let parsed: SumObject = serde_json::from_str("[]").unwrap();
        assert_eq!(parsed, SumObject::unit());
    }

    #[test]
    fn unit_is_neutral_for_tensor() {
        let x = SumObject::new(vec![1, 2]);
        assert_eq!(SumObject::unit().tensor(&x), x);
        assert_eq!(x.tensor(&SumObject::unit()), x);
        assert_eq!(x.tensor(&x), SumObject::new(vec![2, 3, 3, 4]));
    }
}
