use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Element of Q(t): a reduced fraction `num / den` with `den` monic.
///
/// Constants always carry `den = 1`, so numeric-mode values never pay for a
/// polynomial gcd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(Rational::from_integer(n.into()))
    }

    pub fn constant(c: Rational) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(num: Poly) -> Self {
        Scalar {
            num,
            den: Poly::one(),
        }
    }

    /// The parameter itself.
    pub fn t() -> Self {
        Scalar::from_poly(Poly::t_pow(1))
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.constant_term().recip();
            return Scalar::from_poly(num.scale(&c));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading().unwrap().recip();
        Scalar {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when this scalar does not depend on `t`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.constant_term())
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::normalized(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Substitutes `t = at`.
    pub fn evaluate_at(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole {
                den: self.den.to_string(),
                at: at.to_string(),
            });
        }
        Ok(self.num.eval(at) / d)
    }

    /// Numerator and denominator scaled to coprime integer coefficients, with the
    /// denominator's leading coefficient positive.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let all = self.num.coeffs().iter().chain(self.den.coeffs());
        let lcm = all.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |c: &Rational| c.numer() * (&lcm / c.denom());
        let num: Vec<BigInt> = self.num.coeffs().iter().map(to_int).collect();
        let den: Vec<BigInt> = self.den.coeffs().iter().map(to_int).collect();
        let g = num
            .iter()
            .chain(den.iter())
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if g.is_zero() { BigInt::one() } else { g };
        (
            num.into_iter().map(|c| c / &g).collect(),
            den.into_iter().map(|c| c / &g).collect(),
        )
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::constant(c)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, ints: Vec<BigInt>) -> fmt::Result {
    let p = Poly::new(ints.into_iter().map(Rational::from_integer).collect());
    if p.is_constant() {
        write!(f, "{p}")
    } else {
        write!(f, "({p})")
    }
}

/// Wire format `p(t)/q(t)` with integer-coefficient sides, for example
/// `(t^2-3*t+2)/1`, `3/2` or `(t)/2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.integer_parts();
        write_side(f, num)?;
        write!(f, "/")?;
        write_side(f, den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "scalar",
            input: s.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = PolyParser {
            chars: compact.as_bytes(),
            pos: 0,
        };
        let num = parser.side().ok_or_else(err)?;
        let den = if parser.eat(b'/') {
            parser.side().ok_or_else(err)?
        } else {
            Poly::one()
        };
        if parser.pos != parser.chars.len() {
            return Err(err());
        }
        Scalar::new(num, den)
    }
}

struct PolyParser<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn side(&mut self) -> Option<Poly> {
        if self.eat(b'(') {
            let p = self.poly()?;
            self.eat(b')').then_some(p)
        } else {
            self.poly()
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.chars[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn poly(&mut self) -> Option<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let negative = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let coeff = self.integer();
            let has_t = if coeff.is_some() {
                if self.eat(b'*') {
                    self.eat(b't').then_some(true)?
                } else {
                    self.eat(b't')
                }
            } else {
                self.eat(b't').then_some(true)?
            };
            let deg = if has_t {
                if self.eat(b'^') {
                    usize::try_from(self.integer()?).ok()?
                } else {
                    1
                }
            } else {
                0
            };
            let mut c = Rational::from_integer(coeff.unwrap_or_else(BigInt::one));
            if negative {
                c = -c;
            }
            acc = &acc + &Poly::t_pow(deg).scale(&c);
            if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
                break;
            }
        }
        Some(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn cancellation() {
        let a = s("(t-1)/(t-2)");
        let b = s("(t-2)/1");
        assert_eq!(a.mul(&b), s("(t-1)/1"));
    }

    #[test]
    fn normalizes_to_monic_coprime() {
        let a = s("(2*t-2)/2");
        assert_eq!(a, s("(t-1)/1"));
        assert_eq!(a.den(), &Poly::one());
        assert_eq!(a.to_string(), "(t-1)/1");
    }

    #[test]
    fn exact_division_checked_by_remultiplying() {
        let a = s("(t^2-3*t+2)/1");
        let b = s("(t-1)/1");
        let q = a.div(&b).unwrap();
        assert_eq!(q, s("(t-2)/1"));
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(s("t").div(&Scalar::zero()), Err(Error::DivisionByZero)));
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let r = |n: i64| Rational::from_integer(n.into());
        let a = s("(t^2-3*t+2)/1");
        assert_eq!(a.evaluate_at(&r(3)).unwrap(), r(2));
        assert_eq!(a.evaluate_at(&r(2)).unwrap(), r(0));
        let pole = s("1/(t-2)").evaluate_at(&r(2));
        match pole {
            Err(Error::Pole { den, .. }) => assert_eq!(den, "t-2"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn wire_format() {
        assert_eq!(Scalar::one().to_string(), "1/1");
        assert_eq!(s("3/2").to_string(), "3/2");
        assert_eq!(s("-t/2").to_string(), "(-t)/2");
        assert_eq!(s("(t^2-3*t+2)/1").to_string(), "(t^2-3*t+2)/1");
        assert_eq!(s("t").to_string(), "(t)/1");
        let weird = s("(3*t)/(6*t^2+6)");
        assert_eq!(weird.to_string(), "(t)/(2*t^2+2)");
        assert_eq!(s(&weird.to_string()), weird);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "t^", "(t-1", "2**t", "x", "1/2/3"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad}");
        }
    }
}
