use std::sync::OnceLock;

use hypersing::groebner::ExtNat;
use hypersing::harness::{build_family, module_pool, Family, FamilyKind, FamilySpec};
use hypersing::homology::{stable_tor_lengths, tor, PresentedMap, subquotient_homology};
use hypersing::mf::{knorrer_split, mf_cokernel, mf_combine, star_scaffold, CombineOp, MatrixFactorization};
use hypersing::quotient::{default_max_steps, resolve, RModulePresentation};
use hypersing::theta::{theta, ThetaOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Ring {
    family: Family,
    pool: Vec<RModulePresentation>,
}

fn rings() -> &'static [Ring] {
    static RINGS: OnceLock<Vec<Ring>> = OnceLock::new();
    RINGS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        [
            (FamilyKind::ANCurve, Some(1)),
            (FamilyKind::ANCurve, Some(3)),
            (FamilyKind::ANSurface, Some(2)),
            (FamilyKind::ANSurface, Some(3)),
            (FamilyKind::Quadric3fold, None),
        ]
        .into_iter()
        .map(|(kind, n)| {
            let family = build_family(&FamilySpec::bundled(kind, &[]), n).unwrap();
            let pool = module_pool(&family, &mut rng);
            Ring { family, pool }
        })
        .collect()
    })
}

fn pick(ring: usize, i: usize) -> &'static RModulePresentation {
    let pool = &rings()[ring % rings().len()].pool;
    &pool[i % pool.len()]
}

fn all_factorizations() -> Vec<MatrixFactorization> {
    rings()
        .iter()
        .flat_map(|r| r.family.factorizations.iter().map(|(_, mf)| mf.clone()))
        .collect()
}

fn th(m: &RModulePresentation, n: &RModulePresentation) -> i64 {
    theta(m, n, ThetaOptions::default()).unwrap().theta
}

fn tor_len(m: &RModulePresentation, n: &RModulePresentation, i: usize) -> ExtNat {
    let res = resolve(m, default_max_steps(m.ring())).unwrap();
    tor(&res, n, i).unwrap().length
}

#[test]
fn factorizations_survive_combination() {
    let mfs = all_factorizations();
    for mf in &mfs {
        let t = mf_combine(CombineOp::Transpose, std::slice::from_ref(mf)).unwrap();
        MatrixFactorization::new(t.a(), t.b(), t.ring()).unwrap();
        let s = mf_combine(CombineOp::DirectSum, &[mf.clone(), t]).unwrap();
        MatrixFactorization::new(s.a(), s.b(), s.ring()).unwrap();
        assert!(star_scaffold(&s).unwrap().passed);
    }
}

#[test]
fn knorrer_outputs_resolve_quickly() {
    for mf in all_factorizations().iter().filter(|mf| mf.ring().ambient().nvars() <= 3) {
        let k = knorrer_split(mf, "u", "v").unwrap();
        MatrixFactorization::new(k.a(), k.b(), k.ring()).unwrap();
        let res = resolve(&mf_cokernel(&k), default_max_steps(k.ring())).unwrap();
        assert!(res.stabilization().unwrap().index <= 1);
    }
}

/// `coker(B)` is the first syzygy of `coker(A)`, so its Tor is shifted by one.
#[test]
fn transpose_is_the_first_syzygy() {
    for ring in rings() {
        let k = RModulePresentation::residue_field(&ring.family.ring);
        for (_, mf) in &ring.family.factorizations {
            let a = mf_cokernel(mf);
            let b = mf_cokernel(&mf.transpose());
            for test in [&k, &a, &b] {
                for i in 1..4 {
                    assert_eq!(tor_len(&b, test, i), tor_len(&a, test, i + 1));
                }
            }
        }
    }
}

#[test]
fn resolutions_are_exact() {
    for ring in rings() {
        for m in &ring.pool {
            let res = resolve(m, default_max_steps(m.ring())).unwrap();
            for i in 1..6 {
                let free = |r: usize| RModulePresentation::free(m.ring(), r);
                let (d_in, d_out) = (res.differential(i + 1).unwrap(), res.differential(i).unwrap());
                let src = free(d_in.cols());
                let mid = free(d_out.cols());
                let dst = free(d_out.rows());
                let h = subquotient_homology(
                    &PresentedMap::new(&src, &mid, &d_in).unwrap(),
                    &PresentedMap::new(&mid, &dst, &d_out).unwrap(),
                )
                .unwrap();
                assert!(h.is_zero(), "{:?} at {i}", m.label());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tor_is_symmetric(ring in 0usize..8, a in 0usize..16, b in 0usize..16, i in 0usize..5) {
        let (m, n) = (pick(ring, a), pick(ring, b));
        prop_assert_eq!(tor_len(m, n, i), tor_len(n, m, i));
    }

    #[test]
    fn tor_is_additive(ring in 0usize..8, a in 0usize..16, b in 0usize..16, c in 0usize..16, i in 1usize..5) {
        let (m1, m2, n) = (pick(ring, a), pick(ring, b), pick(ring, c));
        let sum = tor_len(&m1.direct_sum(m2).unwrap(), n, i);
        let parts = (tor_len(m1, n, i), tor_len(m2, n, i));
        match (sum, parts) {
            (ExtNat::Finite(s), (ExtNat::Finite(x), ExtNat::Finite(y))) => prop_assert_eq!(s, x + y),
            (s, (x, y)) => prop_assert!(s == ExtNat::Infinite && (x == ExtNat::Infinite || y == ExtNat::Infinite)),
        }
    }

    #[test]
    fn stable_lengths_repeat(ring in 0usize..8, a in 0usize..16, b in 0usize..16) {
        let (m, n) = (pick(ring, a), pick(ring, b));
        let res = resolve(m, default_max_steps(m.ring())).unwrap();
        let st = stable_tor_lengths(&res, n).unwrap();
        prop_assert!(st.verified);
        let k = st.first_degree;
        prop_assert_eq!(tor(&res, n, k + 4).unwrap().length, ExtNat::Finite(st.even));
        prop_assert_eq!(tor(&res, n, k + 5).unwrap().length, ExtNat::Finite(st.odd));
    }

    #[test]
    fn theta_is_symmetric_and_biadditive(ring in 0usize..8, a in 0usize..16, b in 0usize..16, c in 0usize..16) {
        let (m1, m2, n) = (pick(ring, a), pick(ring, b), pick(ring, c));
        prop_assert_eq!(th(m1, n), th(n, m1));
        let sum = m1.direct_sum(m2).unwrap();
        prop_assert_eq!(th(&sum, n), th(m1, n) + th(m2, n));
        prop_assert_eq!(th(n, &sum), th(n, m1) + th(n, m2));
    }

    #[test]
    fn residue_field_pairs_to_zero(ring in 0usize..8, a in 0usize..16) {
        let n = pick(ring, a);
        let k = RModulePresentation::residue_field(n.ring());
        prop_assert_eq!(th(&k, n), 0);
    }

    #[test]
    fn even_dimensional_isolated_rings_have_vanishing_theta(a in 0usize..16, b in 0usize..16, surface in 2usize..4) {
        let (m, n) = (pick(surface, a), pick(surface, b));
        prop_assert_eq!(th(m, n), 0);
    }
}
