use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order the engine accepts.
pub const MAX_ORDER: u32 = 16;

/// Wire form of a field: `{"p":2,"e":1}` with an optional `modulus`
/// coefficient list (lowest degree first, monic, length `e + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// The finite field F_q, q = p^e, with precomputed operation tables.
///
/// Elements are encoded as integers `0..q` whose base-p digits are the
/// coefficients of a polynomial in the generator, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Built-in irreducible moduli, fixed so canonical forms are stable across runs.
pub fn default_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    match (p, e) {
        (_, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

impl FqField {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let modulus = default_modulus(p, e).ok_or_else(|| Error::InvalidField {
            p,
            e,
            reason: "no built-in modulus".into(),
        })?;
        FqField::with_modulus(p, e, modulus)
    }

    /// Builds F_q from its order, which must be a supported prime power.
    pub fn from_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if !is_prime(p) {
                continue;
            }
            let mut pow = p;
            let mut e = 1;
            while pow < q {
                pow *= p;
                e += 1;
            }
            if pow == q {
                return FqField::new(p, e);
            }
        }
        Err(Error::InvalidField {
            p: q,
            e: 1,
            reason: "order is not a prime power".into(),
        })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match &spec.modulus {
            Some(m) => FqField::with_modulus(spec.p, spec.e, m.clone()),
            None => FqField::new(spec.p, spec.e),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            e: self.e,
            modulus: (self.e > 1).then(|| self.modulus.clone()),
        }
    }

    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidField {
            p,
            e,
            reason: reason.to_string(),
        };
        if !is_prime(p) {
            return Err(bad("characteristic is not prime"));
        }
        if e == 0 {
            return Err(bad("exponent must be positive"));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| bad("order exceeds 16"))?;
        if modulus.len() != e as usize + 1 || modulus[e as usize] != 1 {
            return Err(bad("modulus must be monic of degree e"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(bad("modulus coefficients must be residues mod p"));
        }
        let qs = q as usize;
        let digits = |a: u32| -> Vec<u32> {
            (0..e).map(|i| (a / p.pow(i)) % p).collect()
        };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u8;

                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    for (k, m) in modulus.iter().enumerate() {
                        let idx = deg - e as usize + k;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..e as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a == 0 {
                continue;
            }
            match (1..qs).find(|&b| mul[a * qs + b] == 1) {
                Some(b) => inv[a] = b as u8,
                None => return Err(bad("modulus is reducible")),
            }
        }
        Ok(FqField {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    pub fn is_residue(&self, a: u32) -> bool {
        a < self.q
    }
}
