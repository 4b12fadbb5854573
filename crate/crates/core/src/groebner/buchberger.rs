use std::collections::HashSet;
use std::sync::Arc;

use super::element::merge_scaled;
use super::FreeElement;
use crate::error::{Error, Result};
use crate::poly::{Monomial, PolyRing};

/// A reduced Gröbner basis of a submodule of `Q^rank`, position-over-term
/// with component 0 highest. Generators are monic and sorted by leading term,
/// descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    gens: Vec<FreeElement>,
    leads: Vec<(usize, Monomial)>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

/// Reduces `e` completely (leading terms and tails) by elements whose
/// leading terms are `leads`.
fn reduce_with(e: &FreeElement, basis: &[FreeElement], leads: &[(usize, Monomial)], skip: Option<usize>) -> FreeElement {
    let ring = e.ring().clone();
    let field = ring.field();
    let mut rest: Vec<_> = e.terms().to_vec();
    let mut start = 0;
    let mut done = Vec::new();
    while start < rest.len() {
        let (comp, m, c) = &rest[start];
        let hit = leads
            .iter()
            .enumerate()
            .find(|(k, (lc, lm))| Some(*k) != skip && lc == comp && lm.divides(m));
        match hit {
            Some((k, (_, lm))) => {
                let t = lm.quotient_into(m).unwrap();
                let coef = field.neg(c);
                // generators are monic
                rest = merge_scaled(&ring, &rest[start..], &coef, &t, basis[k].terms());
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    FreeElement::from_raw(&ring, e.rank(), done)
}

fn s_element(a: &FreeElement, b: &FreeElement, lcm: &Monomial) -> FreeElement {
    let (_, ma, _) = a.leading_term().unwrap();
    let (_, mb, _) = b.leading_term().unwrap();
    let field = a.ring().field();
    let ta = ma.quotient_into(lcm).unwrap();
    let tb = mb.quotient_into(lcm).unwrap();
    let lhs = FreeElement::zero(a.ring(), a.rank()).add_scaled(&field.one(), &ta, a);
    lhs.add_scaled(&field.from_i64(-1), &tb, b)
}

/// Buchberger's algorithm with the normal selection strategy, the
/// coprimality criterion (ideals only) and the chain criterion.
pub fn buchberger(gens: &[FreeElement]) -> GroebnerBasis {
    let ring = gens.first().map(|g| g.ring().clone());
    let rank = gens.first().map_or(0, |g| g.rank());
    let Some(ring) = ring else {
        panic!("buchberger needs at least one generator; use GroebnerBasis::empty");
    };
    for g in gens {
        assert_eq!(g.rank(), rank, "generators of different ranks");
    }
    let order = ring.order();
    let mut basis: Vec<FreeElement> = Vec::new();
    let mut leads: Vec<(usize, Monomial)> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: FreeElement,
               basis: &mut Vec<FreeElement>,
               leads: &mut Vec<(usize, Monomial)>,
               pending: &mut Vec<Pair>,
               pending_set: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        let (comp, lm, _) = h.leading_term().unwrap().clone();
        let t = basis.len();
        for (i, (ci, mi)) in leads.iter().enumerate() {
            if *ci == comp {
                pending.push(Pair {
                    i,
                    j: t,
                    comp,
                    lcm: mi.lcm(&lm),
                });
                pending_set.insert((i, t));
            }
        }
        basis.push(h);
        leads.push((comp, lm));
    };

    for g in gens {
        let h = reduce_with(g, &basis, &leads, None);
        if !h.is_zero() {
            add(h, &mut basis, &mut leads, &mut pending, &mut pending_set);
        }
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| order.cmp_pot((pa.comp, &pa.lcm), (pb.comp, &pb.lcm)))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));

        let (_, mi) = &leads[pair.i];
        let (_, mj) = &leads[pair.j];
        if rank == 1 && mi.is_coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && leads[k].0 == pair.comp
                && leads[k].1.divides(&pair.lcm)
                && !pending_set.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending_set.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_element(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let h = reduce_with(&s, &basis, &leads, None);
        if !h.is_zero() {
            add(h, &mut basis, &mut leads, &mut pending, &mut pending_set);
        }
    }

    GroebnerBasis::interreduce(ring, rank, basis, leads)
}

impl GroebnerBasis {
    /// Basis of the zero submodule.
    pub fn empty(ring: &Arc<PolyRing>, rank: usize) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            rank,
            gens: Vec::new(),
            leads: Vec::new(),
        }
    }

    /// Gröbner basis of the submodule generated by `gens` in `Q^rank`.
    pub fn of(ring: &Arc<PolyRing>, rank: usize, gens: &[FreeElement]) -> Self {
        let nonzero: Vec<FreeElement> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Self::empty(ring, rank);
        }
        buchberger(&nonzero)
    }

    fn interreduce(
        ring: Arc<PolyRing>,
        rank: usize,
        basis: Vec<FreeElement>,
        leads: Vec<(usize, Monomial)>,
    ) -> Self {
        let n = basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                !(0..n).any(|j| {
                    j != i
                        && leads[j].0 == leads[i].0
                        && leads[j].1.divides(&leads[i].1)
                        && (leads[j].1 != leads[i].1 || j < i)
                })
            })
            .collect();
        let kb: Vec<FreeElement> = keep.iter().map(|&i| basis[i].clone()).collect();
        let kl: Vec<(usize, Monomial)> = keep.iter().map(|&i| leads[i].clone()).collect();
        let mut gens: Vec<FreeElement> = (0..kb.len())
            .map(|i| {
                let (lc, lm, c) = kb[i].leading_term().unwrap().clone();
                let tail = FreeElement::from_raw(&ring, rank, kb[i].terms()[1..].to_vec());
                let tail = reduce_with(&tail, &kb, &kl, Some(i));
                let head = FreeElement::from_raw(&ring, rank, vec![(lc, lm, c)]);
                head.add(&tail).monic()
            })
            .collect();
        let order = ring.order();
        gens.sort_by(|a, b| {
            let (ca, ma, _) = a.leading_term().unwrap();
            let (cb, mb, _) = b.leading_term().unwrap();
            order.cmp_pot((*cb, mb), (*ca, ma))
        });
        let leads = gens
            .iter()
            .map(|g| {
                let (c, m, _) = g.leading_term().unwrap();
                (*c, m.clone())
            })
            .collect();
        GroebnerBasis {
            ring,
            rank,
            gens,
            leads,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeElement] {
        &self.gens
    }

    /// Leading `(component, monomial)` of every generator.
    pub fn leading_terms(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    /// Normal form: no term of the result is divisible by a leading term.
    pub fn normal_form(&self, e: &FreeElement) -> Result<FreeElement> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: e.rank(),
            });
        }
        Ok(reduce_with(e, &self.gens, &self.leads, None))
    }

    pub fn contains(&self, e: &FreeElement) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }

    /// True when the submodule is all of `Q^rank`.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|j| self.leads.iter().any(|(c, m)| *c == j && m.is_one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Polynomial};

    fn ideal_gens(r: &Arc<PolyRing>, gens: &[&str]) -> Vec<FreeElement> {
        gens.iter()
            .map(|s| FreeElement::from_polys(r, &[parse_poly(s, r).unwrap()]))
            .collect()
    }

    fn as_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.generators().iter().map(|g| g.component(0).to_string()).collect()
    }

    #[test]
    fn small_ideals() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        assert_eq!(as_strings(&buchberger(&ideal_gens(&r, &["x", "y"]))), vec!["x", "y"]);
        assert_eq!(as_strings(&buchberger(&ideal_gens(&r, &["x^2", "x*y"]))), vec!["x^2", "x*y"]);
        assert_eq!(as_strings(&buchberger(&ideal_gens(&r, &["3*x^2 - 6*y"]))), vec!["x^2 - 2*y"]);
        // cyclic redundancy collapses to the reduced basis
        let gb = buchberger(&ideal_gens(&r, &["x^2 + y", "x*y - 1", "x"]));
        assert_eq!(as_strings(&gb), vec!["1"]);
    }

    #[test]
    fn normal_forms() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let gb = buchberger(&ideal_gens(&r, &["x^2", "x*y"]));
        let nf = |s: &str| gb.normal_form(&ideal_gens(&r, &[s])[0]).unwrap().component(0);
        assert!(nf("x^2*y").is_zero());
        assert!(nf("0").is_zero());
        let gx = buchberger(&ideal_gens(&r, &["x"]));
        let y2 = ideal_gens(&r, &["y^2"]).remove(0);
        assert_eq!(gx.normal_form(&y2).unwrap(), y2);
        let wrong = FreeElement::zero(&r, 2);
        assert_eq!(gx.normal_form(&wrong), Err(Error::RankMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn module_basis_is_reduced() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let gens = vec![
            FreeElement::from_polys(&r, &[p("x"), p("y")]),
            FreeElement::from_polys(&r, &[p("y"), p("x")]),
            FreeElement::from_polys(&r, &[p("x*y"), Polynomial::zero(&r)]),
        ];
        let gb = buchberger(&gens);
        let leads = gb.leading_terms();
        for (i, a) in leads.iter().enumerate() {
            for (j, b) in leads.iter().enumerate() {
                assert!(i == j || a.0 != b.0 || !a.1.divides(&b.1));
            }
        }
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        for g in gb.generators() {
            // tails are reduced
            let tail = FreeElement::from_raw(&r, 2, g.terms()[1..].to_vec());
            assert_eq!(gb.normal_form(&tail).unwrap(), tail);
        }
    }
}
