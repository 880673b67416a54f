//! Exact coefficient arithmetic: rationals, polynomials over Q and the
//! rational-function field Q(t), plus dense linear algebra over any of them.

mod linalg;
mod poly;
mod scalar;

pub use linalg::{bareiss_determinant, determinant, kernel, left_kernel, rank, rref_rows, ExactField};
pub use poly::Poly;
pub use scalar::Scalar;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `a/b`, `-a` or `a`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| err())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| err())?;
    if num_traits::Zero::is_zero(&den) {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical `a/b` rendering used on the wire (integers render as `a/1`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// How the parameter `t` is realized: a free symbol (coefficients in Q(t)) or
/// a fixed rational (coefficients in Q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Symbolic,
    Numeric(Rational),
}

impl Param {
    pub fn numeric(t: i64) -> Self {
        Param::Numeric(rational(t))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Param::Symbolic => None,
            Param::Numeric(t) => Some(t),
        }
    }

    /// `t^k` as a coefficient; `t^0 = 1` even at `t = 0`.
    pub fn t_pow(&self, k: usize) -> Scalar {
        match self {
            Param::Symbolic => Scalar::from_poly(Poly::t_pow(k)),
            Param::Numeric(t) => {
                let mut acc = Rational::from_integer(1.into());
                for _ in 0..k {
                    acc *= t;
                }
                Scalar::constant(acc)
            }
        }
    }

    /// Brings a scalar into this mode, evaluating it when numeric.
    pub fn specialize(&self, s: &Scalar) -> Result<Scalar> {
        match self {
            Param::Symbolic => Ok(s.clone()),
            Param::Numeric(t) => s.evaluate_at(t).map(Scalar::constant),
        }
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Symbolic => write!(f, "t"),
            Param::Numeric(t) => write!(f, "{}", format_rational(t)),
        }
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
