use std::sync::Arc;

use hypersing::groebner::{is_origin_supported, kdim_quotient, syzygies, ExtNat, FreeElement, FreeMap, GroebnerBasis};
use hypersing::poly::{Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn qxy() -> Arc<PolyRing> {
    PolyRing::rational(&["x", "y"]).unwrap()
}

fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=(d - a) {
            out.push(Monomial::from_exponents(vec![a, b]));
        }
    }
    out
}

fn poly_from(r: &Arc<PolyRing>, coeffs: &[i64], d: u32) -> Polynomial {
    let terms = monomials_up_to(d)
        .into_iter()
        .zip(coeffs)
        .map(|(m, &c)| (m, r.field().from_i64(c)))
        .collect();
    Polynomial::from_terms(r, terms)
}

fn arb_small_poly() -> impl Strategy<Value = Vec<i64>> {
    // six monomials of degree <= 2, sparse-ish coefficients
    prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..4], 6)
}

fn rat(c: &Coeff) -> BigRational {
    match c {
        Coeff::Rat(r) => r.clone(),
        Coeff::Mod(_) => unreachable!(),
    }
}

/// Basis of the nullspace of a dense rational matrix, by reduced row echelon form.
fn nullspace(mut a: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let k = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x = &*x - &k * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Independent oracle: every kernel element of `m` with entries of degree <= d.
fn bounded_kernel(m: &FreeMap, d: u32) -> Vec<FreeElement> {
    let r = m.ring().clone();
    let unknown_monos = monomials_up_to(d);
    let nu = unknown_monos.len();
    let max_entry = m.entries().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
    let eq_monos = monomials_up_to(d + max_entry);
    let ncols = m.cols() * nu;
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        for em in &eq_monos {
            let mut line = vec![BigRational::zero(); ncols];
            for j in 0..m.cols() {
                for (mm, c) in m.get(i, j).terms() {
                    for (k, um) in unknown_monos.iter().enumerate() {
                        if &mm.mul(um) == em {
                            line[j * nu + k] += rat(c);
                        }
                    }
                }
            }
            rows.push(line);
        }
    }
    nullspace(rows, ncols)
        .into_iter()
        .map(|v| {
            let polys: Vec<Polynomial> = (0..m.cols())
                .map(|j| {
                    let terms = unknown_monos
                        .iter()
                        .enumerate()
                        .map(|(k, um)| (um.clone(), Coeff::Rat(v[j * nu + k].clone())))
                        .collect();
                    Polynomial::from_terms(&r, terms)
                })
                .collect();
            FreeElement::from_polys(&r, &polys)
        })
        .collect()
}

fn matrix(r: &Arc<PolyRing>, rows: usize, cols: usize, data: &[Vec<i64>]) -> FreeMap {
    let entries = data.iter().take(rows * cols).map(|c| poly_from(r, c, 2)).collect();
    FreeMap::new(r, rows, cols, entries).unwrap()
}

#[test]
fn koszul_kernel_matches_dense_oracle() {
    let r = qxy();
    let m = FreeMap::parse(&r, &[vec!["x", "y"]]).unwrap();
    let dense = bounded_kernel(&m, 2);
    // (y, -x) times the three monomials of degree <= 1
    assert_eq!(dense.len(), 3);
    let syz = syzygies(&m);
    assert_eq!(syz.cols(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn syzygies_are_exact_and_complete(
        shape in (1usize..3, 2usize..4),
        data in prop::collection::vec(arb_small_poly(), 6),
    ) {
        let r = qxy();
        let (rows, cols) = shape;
        let m = matrix(&r, rows, cols, &data);
        let syz = syzygies(&m);
        prop_assert!(m.mul(&syz).unwrap().is_zero());
        let gb = GroebnerBasis::of(&r, cols, &syz.columns());
        for v in bounded_kernel(&m, 4) {
            prop_assert!(gb.contains(&v).unwrap(), "dense kernel vector {:?} missing", v.to_polys());
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_sound(
        gens in prop::collection::vec(arb_small_poly(), 1..4),
        probe in arb_small_poly(),
        mults in prop::collection::vec(arb_small_poly(), 3),
    ) {
        let r = qxy();
        let gens: Vec<FreeElement> = gens.iter().map(|c| FreeElement::from_polys(&r, &[poly_from(&r, c, 2)])).collect();
        let gb = GroebnerBasis::of(&r, 1, &gens);
        let e = FreeElement::from_polys(&r, &[poly_from(&r, &probe, 2)]);
        let nf = gb.normal_form(&e).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        // no term of the normal form is divisible by a leading monomial
        for (_, m, _) in nf.terms() {
            prop_assert!(gb.leading_terms().iter().all(|(_, l)| !l.divides(m)));
        }
        for g in gb.generators() {
            prop_assert!(gb.contains(g).unwrap());
        }
        let mut combo = FreeElement::zero(&r, 1);
        for (g, c) in gens.iter().zip(&mults) {
            combo = combo.add(&g.mul_poly(&poly_from(&r, c, 2)));
        }
        prop_assert!(gb.contains(&combo).unwrap());
        // e - NF(e) lies in the ideal
        prop_assert!(gb.contains(&e.sub(&nf)).unwrap());
    }

    #[test]
    fn monomial_box_dimension(a in 1u32..5, b in 1u32..5, c in 1u32..4) {
        let r = PolyRing::rational(&["x", "y", "z"]).unwrap();
        let gens: Vec<FreeElement> = [(0, a), (1, b), (2, c)]
            .iter()
            .map(|&(i, e)| FreeElement::from_polys(&r, &[Polynomial::term(&r, Monomial::var(3, i, e), r.field().one())]))
            .collect();
        let gb = GroebnerBasis::of(&r, 1, &gens);
        prop_assert_eq!(kdim_quotient(&gb, 1), ExtNat::Finite((a * b * c) as u64));
        prop_assert!(is_origin_supported(&gb, 1));
    }

    #[test]
    fn block_diagonal_dimension_is_additive(a in 1u32..4, b in 1u32..4, c in 1u32..4) {
        let r = qxy();
        let p = |s: String| hypersing::poly::parse_poly(&s, &r).unwrap();
        let m1 = FreeMap::new(&r, 1, 2, vec![p(format!("x^{a}")), p(format!("y^{b}"))]).unwrap();
        let m2 = FreeMap::new(&r, 1, 3, vec![p(format!("x^{c}")), p("x*y".into()), p(format!("y^{b}"))]).unwrap();
        let dim = |m: &FreeMap| kdim_quotient(&GroebnerBasis::of(&r, m.rows(), &m.columns()), m.rows());
        let both = m1.block_diag(&m2);
        let (d1, d2) = (dim(&m1).finite().unwrap(), dim(&m2).finite().unwrap());
        prop_assert_eq!(dim(&both), ExtNat::Finite(d1 + d2));
    }

    #[test]
    fn dimension_is_order_independent(
        a in 1u32..4, b in 1u32..4,
        extra in prop::collection::vec(arb_small_poly(), 0..3),
    ) {
        let g = qxy();
        let l = g.with_order(MonomialOrder::Lex);
        let build = |r: &Arc<PolyRing>| {
            let mut gens = vec![
                FreeElement::from_polys(r, &[Polynomial::term(r, Monomial::var(2, 0, a), r.field().one())]),
                FreeElement::from_polys(r, &[Polynomial::term(r, Monomial::var(2, 1, b), r.field().one())]),
            ];
            for c in &extra {
                gens.push(FreeElement::from_polys(r, &[poly_from(r, c, 2)]));
            }
            kdim_quotient(&GroebnerBasis::of(r, 1, &gens), 1)
        };
        prop_assert_eq!(build(&g), build(&l));
    }
}
