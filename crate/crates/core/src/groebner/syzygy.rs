use std::sync::Arc;

use super::{FreeElement, FreeMap, GroebnerBasis};
use crate::poly::PolyRing;

/// Generators of the module of relations
/// `{ c in Q^s : sum_j c_j g_j ∈ span(modulo) }` among `gens ⊂ Q^rank`.
///
/// Computed as a Gröbner basis of the columns `(g_j, e_j)` and `(l, 0)` of
/// `Q^(rank + s)`: with the original components ranked above the tag
/// components, the basis elements whose leading term sits in a tag component
/// are exactly those with vanishing top part, and their tag parts form a
/// Gröbner basis of the relation module.
pub fn relations_among(
    ring: &Arc<PolyRing>,
    rank: usize,
    gens: &[FreeElement],
    modulo: &[FreeElement],
) -> Vec<FreeElement> {
    let s = gens.len();
    if s == 0 {
        return Vec::new();
    }
    let total = rank + s;
    let mut cols: Vec<FreeElement> = Vec::with_capacity(s + modulo.len());
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.rank(), rank);
        cols.push(g.concat(&FreeElement::basis(ring, s, j)));
    }
    for l in modulo {
        assert_eq!(l.rank(), rank);
        if !l.is_zero() {
            cols.push(l.shifted(0, total));
        }
    }
    let gb = GroebnerBasis::of(ring, total, &cols);
    gb.generators()
        .iter()
        .filter(|g| g.leading_term().is_some_and(|(c, _, _)| *c >= rank))
        .map(|g| g.project(rank, s))
        .collect()
}

/// Kernel of `m: Q^cols -> Q^rows`, as a matrix whose columns generate it.
pub fn syzygies(m: &FreeMap) -> FreeMap {
    let gens = m.columns();
    let rel = relations_among(m.ring(), m.rows(), &gens, &[]);
    FreeMap::from_columns(m.ring(), m.cols(), &rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_syzygy() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let m = FreeMap::parse(&r, &[vec!["x", "y"]]).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.cols(), 1);
        assert_eq!(s.to_strings(), vec![vec!["y"], vec!["-x"]]);
        assert!(m.mul(&s).unwrap().is_zero());
    }

    #[test]
    fn injective_maps_have_no_syzygies() {
        let r = PolyRing::rational(&["x", "y"]).unwrap();
        let id = FreeMap::identity(&r, 3);
        let s = syzygies(&id);
        assert_eq!((s.rows(), s.cols()), (3, 0));
        let f = FreeMap::parse(&r, &[vec!["x^2 - y^3 + x*y"]]).unwrap();
        assert_eq!(syzygies(&f).cols(), 0);
    }
}
