//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Rationals,
    /// The prime field with `p` elements. Construct through [`CoefficientField::prime`].
    Prime(u64),
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator; residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientField {
    /// Prime field; `p` must be a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(CoefficientField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }

    /// Both supported fields are perfect.
    pub fn is_perfect(&self) -> bool {
        true
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::zero()),
            CoefficientField::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(n))),
            CoefficientField::Prime(p) => Coeff::Mod(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::from_integer(n.clone())),
            CoefficientField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u64().expect("residue fits"))
            }
        }
    }

    /// `num / den`, or `None` when `den` vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Option<Coeff> {
        let d = self.from_bigint(den);
        let inv = self.inv(&d)?;
        Some(self.mul(&self.from_bigint(num), &inv))
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Mod(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Rat(x), Coeff::Rat(y), _) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y), CoefficientField::Prime(p)) => Coeff::Mod((x + y) % p),
            _ => panic!("coefficient kinds do not match the field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (a, self) {
            (Coeff::Rat(x), _) => Coeff::Rat(-x),
            (Coeff::Mod(x), CoefficientField::Prime(p)) => Coeff::Mod((p - x) % p),
            _ => panic!("coefficient kinds do not match the field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b, self) {
            (Coeff::Rat(x), Coeff::Rat(y), _) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y), CoefficientField::Prime(p)) => {
                Coeff::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("coefficient kinds do not match the field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if self.is_zero(a) {
            return None;
        }
        match (a, self) {
            (Coeff::Rat(x), _) => Some(Coeff::Rat(x.recip())),
            (Coeff::Mod(x), CoefficientField::Prime(p)) => {
                // Fermat: x^(p-2)
                let (mut base, mut e, mut acc) = (*x as u128, *p - 2, 1u128);
                let m = *p as u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Some(Coeff::Mod(acc as u64))
            }
            _ => panic!("coefficient kinds do not match the field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        Some(self.mul(a, &self.inv(b)?))
    }

    /// True when `c` belongs to this field's representation.
    pub fn owns(&self, c: &Coeff) -> bool {
        match (c, self) {
            (Coeff::Rat(_), CoefficientField::Rationals) => true,
            (Coeff::Mod(v), CoefficientField::Prime(p)) => v < p,
            _ => false,
        }
    }
}

impl Coeff {
    /// Sign used when printing: true if the coefficient should be written with a leading minus.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Rat(r) => r.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    pub(crate) fn abs(&self) -> Coeff {
        match self {
            Coeff::Rat(r) => Coeff::Rat(r.abs()),
            Coeff::Mod(v) => Coeff::Mod(*v),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coeff::Mod(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "rational"),
            CoefficientField::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl std::str::FromStr for CoefficientField {
    type Err = Error;

    /// Accepts `rational` or `prime:p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "Q" {
            return Ok(CoefficientField::Rationals);
        }
        if let Some(p) = s.strip_prefix("prime:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad prime `{p}`")))?;
            return CoefficientField::prime(p);
        }
        Err(Error::InvalidParameter(format!(
            "unknown field `{s}` (expected `rational` or `prime:p`)"
        )))
    }
}
