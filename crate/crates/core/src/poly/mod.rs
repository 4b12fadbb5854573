//! Exact multivariate polynomials over the rationals or a prime field.

mod field;
mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use field::{Coeff, CoefficientField};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;

use crate::error::{Error, Result};

/// `k[x_0, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: CoefficientField,
    variables: Vec<String>,
    order: MonomialOrder,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(
        field: CoefficientField,
        variables: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_string()).collect();
        if variables.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            variables,
            order,
        }))
    }

    /// Shorthand for a grevlex ring over the rationals.
    pub fn rational<S: AsRef<str>>(variables: &[S]) -> Result<Arc<Self>> {
        Self::new(CoefficientField::Rationals, variables, MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Same variables and field with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial: terms sorted strictly descending in the ring's order,
/// no zero coefficients. The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(n))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let field = ring.field;
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient (zero when absent).
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field.zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// `c * mono * self`.
    pub fn mul_term(&self, mono: &Monomial, c: &Coeff) -> Self {
        let field = self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), field.mul(a, c)))
                .collect(),
        }
    }

    /// `self + c * mono * other`, merging sorted term lists.
    pub(crate) fn add_scaled(&self, c: &Coeff, mono: &Monomial, other: &Polynomial) -> Self {
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(m, x)| (m.mul(mono), field.mul(x, c)))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => order.cmp(ma, mb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = field.add(x, &y);
                    if !field.is_zero(&s) {
                        out.push((m.clone(), s));
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.ring.nvars(), "variable index out of range");
        let field = self.ring.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponents()[var];
                if e == 0 {
                    return None;
                }
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                let nc = field.mul(c, &field.from_i64(e as i64));
                (!field.is_zero(&nc)).then(|| (Monomial::from_exponents(exps), nc))
            })
            .collect();
        // derivative keeps the relative order of surviving terms
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Remainder of division by a single nonzero polynomial. A single
    /// polynomial is a Gröbner basis of the ideal it generates, so the
    /// remainder is the canonical normal form modulo `(divisor)`.
    pub fn rem(&self, divisor: &Polynomial) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient and remainder with respect to a single nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Self, Self) {
        let field = self.ring.field;
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial").clone();
        let lc_inv = field.inv(&lc).unwrap();
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match lm.quotient_into(&m) {
                Some(t) => {
                    let k = field.mul(&c, &lc_inv);
                    p = p.add_scaled(&field.neg(&k), &t, divisor);
                    q.push((t, k));
                }
                None => {
                    r.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (
            Polynomial::from_terms(&self.ring, q),
            Polynomial::from_sorted_terms(&self.ring, r),
        )
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Variables occurring with positive exponent divisible by the characteristic.
    pub fn exponents_divisible_by_char(&self) -> Vec<usize> {
        let p = self.ring.field.characteristic();
        if p == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 && (e as u64).is_multiple_of(p) && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Re-expresses the polynomial in another ring with the same field and
    /// variables (used for order changes) or with appended variables.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Self> {
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        let map: Vec<usize> = self
            .ring
            .variables
            .iter()
            .map(|v| target.var_index(v).ok_or(Error::RingMismatch))
            .collect::<Result<_>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.nvars()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(same_ring(&self.ring, &other.ring), "polynomials from different rings");
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Scale(&'a Coeff),
}

/// Checked arithmetic: fails with `RingMismatch` instead of panicking.
pub fn poly_arith(a: &Polynomial, op: PolyOp<'_>) -> Result<Polynomial> {
    match op {
        PolyOp::Add(b) | PolyOp::Sub(b) | PolyOp::Mul(b) if !same_ring(&a.ring, &b.ring) => {
            Err(Error::RingMismatch)
        }
        PolyOp::Add(b) => Ok(a + b),
        PolyOp::Sub(b) => Ok(a - b),
        PolyOp::Mul(b) => Ok(a * b),
        PolyOp::Scale(c) => {
            if !a.ring.field.owns(c) {
                return Err(Error::RingMismatch);
            }
            Ok(a.scale(c))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let one = self.ring.field.one();
        self.add_scaled(&one, &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let m1 = self.ring.field.from_i64(-1);
        self.add_scaled(&m1, &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field.from_i64(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let field = self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), field.mul(ca, cb)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }
}

pub(crate) fn fmt_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Canonical text form, re-readable by [`parse_poly`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if field.is_one(&a) {
                write!(f, "{}", fmt_monomial(m, &self.ring.variables))?;
            } else {
                write!(f, "{a}*{}", fmt_monomial(m, &self.ring.variables))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qxy() -> Arc<PolyRing> {
        PolyRing::rational(&["x", "y"]).unwrap()
    }

    fn p(s: &str, r: &Arc<PolyRing>) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = qxy();
        assert!((&p("x", &r) + &p("-x", &r)).is_zero());
        assert_eq!(&p("x+y", &r) * &p("x-y", &r), p("x^2 - y^2", &r));
        let half = r.field().from_fraction(&1.into(), &2.into()).unwrap();
        assert_eq!(p("x^2", &r).scale(&half).to_string(), "1/2*x^2");
    }

    #[test]
    fn checked_arith_rejects_foreign_rings() {
        let r = qxy();
        let s = PolyRing::rational(&["x", "z"]).unwrap();
        assert_eq!(
            poly_arith(&p("x", &r), PolyOp::Add(&p("x", &s))),
            Err(Error::RingMismatch)
        );
        let f7 = CoefficientField::Prime(7);
        assert_eq!(
            poly_arith(&p("x", &r), PolyOp::Scale(&f7.one())),
            Err(Error::RingMismatch)
        );
        assert_eq!(poly_arith(&p("x", &r), PolyOp::Mul(&p("y", &r))).unwrap(), p("x*y", &r));
    }

    #[test]
    fn derivative_examples() {
        let r = qxy();
        assert_eq!(p("x^3", &r).partial_derivative(0), p("3*x^2", &r));
        assert_eq!(p("x*y", &r).partial_derivative(1), p("x", &r));
        let f5 = PolyRing::new(CoefficientField::Prime(5), &["x"], MonomialOrder::Grevlex).unwrap();
        assert!(p("x^5", &f5).partial_derivative(0).is_zero());
        assert_eq!(p("x^5 + x", &f5).exponents_divisible_by_char(), vec![0]);
    }

    #[test]
    fn division_by_single_polynomial() {
        let r = PolyRing::rational(&["x", "y", "z"]).unwrap();
        let f = p("x^2 - y*z", &r);
        assert_eq!(p("x^3", &r).rem(&f), p("x*y*z", &r));
        assert_eq!(p("x^2*y - y^2*z", &r).exact_div(&f), Some(p("y", &r)));
        assert_eq!(p("x", &r).exact_div(&f), None);
    }

    #[test]
    fn display_forms() {
        let r = qxy();
        assert_eq!(p("-x^2 + 3*x*y - 1", &r).to_string(), "-x^2 + 3*x*y - 1");
        assert_eq!(p("0", &r).to_string(), "0");
        let f7 = PolyRing::new(CoefficientField::Prime(7), &["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(p("x - y", &f7).to_string(), "x + 6*y");
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        prop::collection::vec((0u32..4, 0u32..4, -5i64..6), 0..6)
    }

    fn build(r: &Arc<PolyRing>, t: &[(u32, u32, i64)]) -> Polynomial {
        let terms = t
            .iter()
            .map(|&(a, b, c)| (Monomial::from_exponents(vec![a, b]), r.field().from_i64(c)))
            .collect();
        Polynomial::from_terms(r, terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly(), prime in any::<bool>()) {
            let r = if prime {
                PolyRing::new(CoefficientField::Prime(7), &["x", "y"], MonomialOrder::Grevlex).unwrap()
            } else {
                qxy()
            };
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            // derivative: linear and Leibniz
            for v in 0..2 {
                prop_assert_eq!((&a + &b).partial_derivative(v), &a.partial_derivative(v) + &b.partial_derivative(v));
                prop_assert_eq!(
                    (&a * &b).partial_derivative(v),
                    &(&a.partial_derivative(v) * &b) + &(&a * &b.partial_derivative(v))
                );
            }
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            let r = qxy();
            let a = build(&r, &a);
            let half = r.field().from_fraction(&1.into(), &3.into()).unwrap();
            let a = a.scale(&half);
            prop_assert_eq!(parse_poly(&a.to_string(), &r).unwrap(), a);
        }
    }
}
