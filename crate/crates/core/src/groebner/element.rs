use std::cmp::Ordering;
use std::sync::Arc;

use crate::poly::{same_ring, Coeff, Monomial, PolyRing, Polynomial};

/// An element of the free module `Q^rank`, stored as terms
/// `(component, monomial, coefficient)` sorted descending position-over-term.
#[derive(Clone, Debug)]
pub struct FreeElement {
    ring: Arc<PolyRing>,
    rank: usize,
    terms: Vec<(usize, Monomial, Coeff)>,
}

impl PartialEq for FreeElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for FreeElement {}

impl FreeElement {
    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> Self {
        FreeElement {
            ring: ring.clone(),
            rank,
            terms: Vec::new(),
        }
    }

    /// The basis vector `e_i`.
    pub fn basis(ring: &Arc<PolyRing>, rank: usize, i: usize) -> Self {
        Self::from_component(ring, rank, i, &Polynomial::one(ring))
    }

    /// `p * e_i`.
    pub fn from_component(ring: &Arc<PolyRing>, rank: usize, i: usize, p: &Polynomial) -> Self {
        assert!(i < rank);
        FreeElement {
            ring: ring.clone(),
            rank,
            terms: p.terms().iter().map(|(m, c)| (i, m.clone(), c.clone())).collect(),
        }
    }

    /// Column vector with the given entries.
    pub fn from_polys(ring: &Arc<PolyRing>, entries: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            terms.extend(p.terms().iter().map(|(m, c)| (i, m.clone(), c.clone())));
        }
        FreeElement {
            ring: ring.clone(),
            rank: entries.len(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(usize, Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(usize, Monomial, Coeff)> {
        self.terms.first()
    }

    /// Entry `i` as a polynomial.
    pub fn component(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(c, _, _)| *c == i)
            .map(|(_, m, a)| (m.clone(), a.clone()))
            .collect();
        Polynomial::from_sorted_terms(&self.ring, terms)
    }

    pub fn to_polys(&self) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); self.rank];
        for (c, m, a) in &self.terms {
            buckets[*c].push((m.clone(), a.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted_terms(&self.ring, t))
            .collect()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring, self.rank);
        }
        FreeElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(i, m, a)| (*i, m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = self.ring.field().inv(c).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut acc = Self::zero(&self.ring, self.rank);
        for (m, c) in p.terms() {
            acc = acc.add_scaled(c, m, self);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&self.ring.field().one(), &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&self.ring.field().from_i64(-1), &Monomial::one(self.ring.nvars()), other)
    }

    /// `self + c * mono * other`.
    pub fn add_scaled(&self, c: &Coeff, mono: &Monomial, other: &Self) -> Self {
        FreeElement {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: merge_scaled(&self.ring, &self.terms, c, mono, &other.terms),
        }
    }

    /// Places this element into components `offset..offset + rank` of a larger free module.
    pub fn shifted(&self, offset: usize, new_rank: usize) -> Self {
        assert!(offset + self.rank <= new_rank);
        FreeElement {
            ring: self.ring.clone(),
            rank: new_rank,
            terms: self
                .terms
                .iter()
                .map(|(i, m, c)| (i + offset, m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Components `start..start + len`, renumbered from zero.
    pub fn project(&self, start: usize, len: usize) -> Self {
        FreeElement {
            ring: self.ring.clone(),
            rank: len,
            terms: self
                .terms
                .iter()
                .filter(|(i, _, _)| *i >= start && *i < start + len)
                .map(|(i, m, c)| (i - start, m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Concatenation `(self, other)` in `Q^(rank + other.rank)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(
            other
                .terms
                .iter()
                .map(|(i, m, c)| (i + self.rank, m.clone(), c.clone())),
        );
        FreeElement {
            ring: self.ring.clone(),
            rank: self.rank + other.rank,
            terms,
        }
    }

    pub(crate) fn from_raw(ring: &Arc<PolyRing>, rank: usize, terms: Vec<(usize, Monomial, Coeff)>) -> Self {
        FreeElement {
            ring: ring.clone(),
            rank,
            terms,
        }
    }
}

pub(crate) fn merge_scaled(
    ring: &Arc<PolyRing>,
    a: &[(usize, Monomial, Coeff)],
    c: &Coeff,
    mono: &Monomial,
    b: &[(usize, Monomial, Coeff)],
) -> Vec<(usize, Monomial, Coeff)> {
    let field = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = 0;
    let mut ib = 0;
    let mut pending: Option<(usize, Monomial, Coeff)> = None;
    loop {
        if pending.is_none() && ib < b.len() {
            let (i, m, x) = &b[ib];
            pending = Some((*i, m.mul(mono), field.mul(x, c)));
        }
        let ord = match (a.get(ia), &pending) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((ca, ma, _)), Some((cb, mb, _))) => order.cmp_pot((*ca, ma), (*cb, mb)),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[ia].clone());
                ia += 1;
            }
            Ordering::Less => {
                out.push(pending.take().unwrap());
                ib += 1;
            }
            Ordering::Equal => {
                let (i, m, y) = pending.take().unwrap();
                let s = field.add(&a[ia].2, &y);
                if !field.is_zero(&s) {
                    out.push((i, m, s));
                }
                ia += 1;
                ib += 1;
            }
        }
    }
    out
}
