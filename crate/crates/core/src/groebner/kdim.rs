use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FreeElement, GroebnerBasis};
use crate::poly::{Monomial, Polynomial};

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(&self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(*n),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u64(*n),
            ExtNat::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(n) => Ok(ExtNat::Finite(n)),
            Repr::S(s) if s == "infinite" => Ok(ExtNat::Infinite),
            Repr::S(s) => Err(serde::de::Error::custom(format!("bad length `{s}`"))),
        }
    }
}

/// Number of standard monomials of `Q^rank / span(gb)`, i.e. its dimension
/// as a vector space over the coefficient field.
pub fn kdim_quotient(gb: &GroebnerBasis, rank: usize) -> ExtNat {
    let n = gb.ring().nvars();
    let mut total: u64 = 0;
    for comp in 0..rank {
        let leads: Vec<&Monomial> = gb
            .leading_terms()
            .iter()
            .filter(|(c, _)| *c == comp)
            .map(|(_, m)| m)
            .collect();
        if leads.iter().any(|m| m.is_one()) {
            continue;
        }
        // every variable needs a pure power among the leading monomials
        let mut bounds = vec![u32::MAX; n];
        for m in &leads {
            if let Some((i, e)) = m.pure_power() {
                bounds[i] = bounds[i].min(e);
            }
        }
        if bounds.contains(&u32::MAX) {
            return ExtNat::Infinite;
        }
        total += count_standard(&leads, &bounds);
    }
    ExtNat::Finite(total)
}

/// Counts exponent vectors below `bounds` that no leading monomial divides.
fn count_standard(leads: &[&Monomial], bounds: &[u32]) -> u64 {
    fn rec(prefix: &mut Vec<u32>, leads: &[&Monomial], bounds: &[u32]) -> u64 {
        let k = prefix.len();
        // drop leading monomials already excluded by the prefix
        let live: Vec<&Monomial> = leads
            .iter()
            .copied()
            .filter(|m| m.exponents()[..k].iter().zip(prefix.iter()).all(|(a, b)| a <= b))
            .collect();
        if live.iter().any(|m| m.exponents()[k..].iter().all(|&e| e == 0)) {
            return 0;
        }
        if k == bounds.len() {
            return 1;
        }
        if live.is_empty() {
            return bounds[k..].iter().map(|&b| b as u64).product();
        }
        let mut acc = 0;
        for e in 0..bounds[k] {
            prefix.push(e);
            acc += rec(prefix, &live, bounds);
            prefix.pop();
        }
        acc
    }
    rec(&mut Vec::with_capacity(bounds.len()), leads, bounds)
}

/// True when `Q^rank / span(gb)` is finite dimensional and every variable
/// acts nilpotently on it, i.e. the quotient is supported at the origin only.
pub fn is_origin_supported(gb: &GroebnerBasis, rank: usize) -> bool {
    let len = match kdim_quotient(gb, rank) {
        ExtNat::Infinite => return false,
        ExtNat::Finite(0) => return true,
        ExtNat::Finite(n) => n,
    };
    let ring = gb.ring();
    for i in 0..ring.nvars() {
        let xi = Polynomial::var(ring, i);
        for j in 0..rank {
            let mut v = FreeElement::basis(ring, rank, j);
            for _ in 0..len {
                v = gb.normal_form(&v.mul_poly(&xi)).expect("rank checked");
                if v.is_zero() {
                    break;
                }
            }
            if !v.is_zero() {
                return false;
            }
        }
    }
    true
}
