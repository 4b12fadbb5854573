//! The hypersurface ring `R = Q/(f)`, finitely presented `R`-modules and
//! their free resolutions.
//!
//! Every `R`-module is handled as a `Q`-module killed by `f`: a presentation
//! matrix `φ` over `R` stands for `Q^r / (im φ + f·Q^r)`. Resolutions are
//! computed from syzygies over `Q` and pruned to minimal generating sets,
//! which is sound for quasi-homogeneous inputs.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    is_origin_supported, kdim_quotient, relations_among, ExtNat, FreeElement, FreeMap, GroebnerBasis,
    Interpretation,
};
use crate::mf::MatrixFactorization;
use crate::poly::{same_ring, PolyRing, Polynomial};

/// `R = Q/(f)` with `f` nonzero and vanishing at the origin.
#[derive(Clone, Debug)]
pub struct HypersurfaceRing {
    ambient: Arc<PolyRing>,
    f: Polynomial,
}

impl PartialEq for HypersurfaceRing {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ambient, &other.ambient) && self.f == other.f
    }
}

impl Eq for HypersurfaceRing {}

impl HypersurfaceRing {
    pub fn new(ambient: &Arc<PolyRing>, f: Polynomial) -> Result<Arc<Self>> {
        if !same_ring(f.ring(), ambient) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidRing("the hypersurface equation must be nonzero".into()));
        }
        if !ambient.field().is_zero(&f.constant_term()) {
            return Err(Error::InvalidRing(
                "the hypersurface must pass through the origin (f(0) = 0)".into(),
            ));
        }
        Ok(Arc::new(HypersurfaceRing {
            ambient: ambient.clone(),
            f,
        }))
    }

    /// Parses `f` in a grevlex ring over `field` with the given variables.
    pub fn parse<S: AsRef<str>>(
        field: crate::poly::CoefficientField,
        variables: &[S],
        f: &str,
    ) -> Result<Arc<Self>> {
        let q = PolyRing::new(field, variables, crate::poly::MonomialOrder::Grevlex)?;
        let f = crate::poly::parse_poly(f, &q)?;
        Self::new(&q, f)
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    /// Krull dimension `n = #variables - 1`.
    pub fn dim(&self) -> usize {
        self.ambient.nvars() - 1
    }

    /// Gröbner basis of the ideal `(f)`: `f` itself, made monic.
    pub fn gb_f(&self) -> GroebnerBasis {
        GroebnerBasis::of(&self.ambient, 1, &[FreeElement::from_polys(&self.ambient, std::slice::from_ref(&self.f))])
    }

    /// Canonical representative modulo `f`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        p.rem(&self.f)
    }

    pub fn parse_element(&self, s: &str) -> Result<Polynomial> {
        Ok(self.reduce(&crate::poly::parse_poly(s, &self.ambient)?))
    }

    /// `f·e_i` for `i < rank`.
    pub(crate) fn f_multiples(&self, rank: usize) -> Vec<FreeElement> {
        (0..rank)
            .map(|i| FreeElement::from_component(&self.ambient, rank, i, &self.f))
            .collect()
    }
}

impl fmt::Display for HypersurfaceRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]/({})",
            self.ambient.field(),
            self.ambient.variables().join(","),
            self.f
        )
    }
}

/// Replaces every entry by its normal form modulo `f`.
pub fn r_normalize(m: &FreeMap, ring: &HypersurfaceRing) -> Result<FreeMap> {
    if !same_ring(m.ring(), &ring.ambient) {
        return Err(Error::RingMismatch);
    }
    Ok(m.map_entries(|e| ring.reduce(e)).with_interpretation(Interpretation::OverR))
}

/// Eliminates constant unit entries by row and column operations, deleting
/// the pivot's row and column each time. The cokernel is unchanged.
pub fn minimalize(m: &FreeMap, ring: &HypersurfaceRing) -> Result<FreeMap> {
    let field = ring.ambient.field();
    let mut m = r_normalize(m, ring)?;
    loop {
        let pivot = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let e = m.get(i, j);
                !e.is_zero() && e.is_constant()
            });
        let Some((pi, pj)) = pivot else { break };
        let inv = field.inv(&m.get(pi, pj).constant_term()).unwrap();
        // a_lk - a_lj * a_ik / c for every surviving entry
        let mut next = m.minor(pi, pj);
        for (li, l) in (0..m.rows()).filter(|&l| l != pi).enumerate() {
            let alj = m.get(l, pj);
            if alj.is_zero() {
                continue;
            }
            let factor = alj.scale(&inv);
            for (ki, k) in (0..m.cols()).filter(|&k| k != pj).enumerate() {
                let aik = m.get(pi, k);
                if aik.is_zero() {
                    continue;
                }
                let v = next.get(li, ki) - &(&factor * aik);
                next.set(li, ki, ring.reduce(&v));
            }
        }
        m = next;
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !field.is_zero(&m.get(i, j).constant_term()) {
                return Err(Error::NonConstantUnit { row: i, col: j });
            }
        }
    }
    Ok(m)
}

/// Drops zero columns and columns lying in the span (over `R`) of the
/// others, highest degree first; survivors keep their order. For
/// quasi-homogeneous input this leaves a minimal generating set of the
/// column space.
pub fn prune_columns(m: &FreeMap, ring: &HypersurfaceRing) -> FreeMap {
    let rows = m.rows();
    let mut keep: Vec<usize> = (0..m.cols()).filter(|&j| (0..rows).any(|i| !m.get(i, j).is_zero())).collect();
    let degree = |j: usize| (0..rows).filter_map(|i| m.get(i, j).total_degree()).max().unwrap_or(0);
    keep.sort_by_key(|&j| (degree(j), j));
    let cols = m.columns();
    let fmul = ring.f_multiples(rows);
    let mut k = keep.len();
    while k > 0 {
        k -= 1;
        let candidate = keep[k];
        let mut others: Vec<FreeElement> = keep
            .iter()
            .filter(|&&j| j != candidate)
            .map(|&j| cols[j].clone())
            .collect();
        others.extend(fmul.iter().cloned());
        let gb = GroebnerBasis::of(&ring.ambient, rows, &others);
        if gb.contains(&cols[candidate]).expect("same rank") {
            keep.remove(k);
        }
    }
    keep.sort_unstable();
    m.select_columns(&keep)
}

/// The next differential of a free resolution over `R`: generators of
/// `ker(d: R^c -> R^r)`, pruned to a minimal set.
pub fn r_syzygy(d: &FreeMap, ring: &HypersurfaceRing) -> Result<FreeMap> {
    if !same_ring(d.ring(), &ring.ambient) {
        return Err(Error::RingMismatch);
    }
    let rel = relations_among(&ring.ambient, d.rows(), &d.columns(), &ring.f_multiples(d.rows()));
    let raw = FreeMap::from_columns(&ring.ambient, d.cols(), &rel);
    let normalized = r_normalize(&raw, ring)?;
    Ok(prune_columns(&normalized, ring))
}

/// A finitely presented `R`-module `coker(matrix)`.
#[derive(Clone, Debug)]
pub struct RModulePresentation {
    ring: Arc<HypersurfaceRing>,
    matrix: FreeMap,
    label: Option<String>,
}

impl RModulePresentation {
    /// `coker(matrix)`; entries are reduced modulo `f`.
    pub fn new(ring: &Arc<HypersurfaceRing>, matrix: &FreeMap) -> Result<Self> {
        Ok(RModulePresentation {
            ring: ring.clone(),
            matrix: r_normalize(matrix, ring)?,
            label: None,
        })
    }

    /// Parses a presentation matrix given as rows of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Arc<HypersurfaceRing>, rows: &[Vec<S>]) -> Result<Self> {
        Self::new(ring, &FreeMap::parse(&ring.ambient, rows)?)
    }

    /// `R / (gens)`.
    pub fn cyclic(ring: &Arc<HypersurfaceRing>, gens: &[&str]) -> Result<Self> {
        let row: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        if row.is_empty() {
            return Ok(Self::free(ring, 1));
        }
        Self::parse(ring, &[row])
    }

    /// The free module `R^r`, presented by an `r x 0` matrix.
    pub fn free(ring: &Arc<HypersurfaceRing>, rank: usize) -> Self {
        RModulePresentation {
            ring: ring.clone(),
            matrix: FreeMap::zeros(&ring.ambient, rank, 0).with_interpretation(Interpretation::OverR),
            label: None,
        }
    }

    pub fn zero(ring: &Arc<HypersurfaceRing>) -> Self {
        Self::free(ring, 0)
    }

    /// The residue field `R/m`.
    pub fn residue_field(ring: &Arc<HypersurfaceRing>) -> Self {
        let vars: Vec<&str> = ring.ambient.variables().iter().map(String::as_str).collect();
        Self::cyclic(ring, &vars).expect("variables parse").with_label("R/m")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ring(&self) -> &Arc<HypersurfaceRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &FreeMap {
        &self.matrix
    }

    pub fn num_generators(&self) -> usize {
        self.matrix.rows()
    }

    /// Relations over `Q`: the columns of the presentation and `f·e_i`.
    pub fn q_relations(&self) -> Vec<FreeElement> {
        let mut rel = self.matrix.columns();
        rel.extend(self.ring.f_multiples(self.matrix.rows()));
        rel
    }

    pub fn relation_basis(&self) -> GroebnerBasis {
        GroebnerBasis::of(&self.ring.ambient, self.num_generators(), &self.q_relations())
    }

    /// Vector-space dimension over the coefficient field.
    pub fn kdim(&self) -> ExtNat {
        kdim_quotient(&self.relation_basis(), self.num_generators())
    }

    pub fn is_origin_supported(&self) -> bool {
        is_origin_supported(&self.relation_basis(), self.num_generators())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        let label = match (&self.label, &other.label) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Ok(RModulePresentation {
            ring: self.ring.clone(),
            matrix: self.matrix.block_diag(&other.matrix),
            label,
        })
    }
}

/// Presentation of `M ⊗_R N` as `coker[φ ⊗ I | I ⊗ ψ]`.
pub fn tensor_presentations(m: &RModulePresentation, n: &RModulePresentation) -> Result<RModulePresentation> {
    if *m.ring != *n.ring {
        return Err(Error::RingMismatch);
    }
    let a = m.num_generators();
    let b = n.num_generators();
    let left = m.matrix.kron_identity(b);
    let right = n.matrix.identity_kron(a);
    let matrix = left.hstack(&right)?;
    RModulePresentation::new(&m.ring, &matrix)
}

/// Where a resolution becomes two-periodic.
#[derive(Clone, Debug)]
pub struct Stabilization {
    /// `d_{index+1}, d_{index+2}` form the factorization `(A, B)`.
    pub index: usize,
    pub factorization: MatrixFactorization,
}

/// A free resolution `... -> F_2 -d_2-> F_1 -d_1-> F_0 -> M -> 0` over `R`.
#[derive(Clone, Debug)]
pub struct RResolution {
    module: RModulePresentation,
    differentials: Vec<FreeMap>,
    stabilization: Option<Stabilization>,
}

/// Default resolution length bound: `2·(#variables + 2)`.
pub fn default_max_steps(ring: &HypersurfaceRing) -> usize {
    2 * (ring.ambient.nvars() + 2)
}

/// Checks whether `(a, d)` is a matrix factorization of `f` after absorbing
/// a unimodular change of basis: if `a·d = f·U` with `det U` a nonzero
/// constant, returns `(a, d·U⁻¹)`.
pub fn align_factorization(a: &FreeMap, d: &FreeMap, ring: &Arc<HypersurfaceRing>) -> Option<MatrixFactorization> {
    let m = a.rows();
    if a.cols() != m || d.rows() != m || d.cols() != m {
        return None;
    }
    let q = &ring.ambient;
    let a = a.clone().with_interpretation(Interpretation::OverQ);
    let d = d.clone().with_interpretation(Interpretation::OverQ);
    if m == 0 {
        return MatrixFactorization::new(&a, &d, ring).ok();
    }
    let prod = a.mul(&d).ok()?;
    let mut u = FreeMap::zeros(q, m, m);
    for i in 0..m {
        for j in 0..m {
            u.set(i, j, prod.get(i, j).exact_div(ring.f())?);
        }
    }
    let det = u.determinant().ok()?;
    if det.is_zero() || !det.is_constant() {
        return None;
    }
    let inv_det = q.field().inv(&det.constant_term())?;
    let b = d.mul(&u.adjugate().ok()?).ok()?.map_entries(|e| e.scale(&inv_det));
    MatrixFactorization::new(&a, &b, ring).ok()
}

impl RResolution {
    pub fn module(&self) -> &RModulePresentation {
        &self.module
    }

    /// Computed differentials `d_1, d_2, ...` (index 0 holds `d_1`).
    pub fn computed(&self) -> &[FreeMap] {
        &self.differentials
    }

    pub fn stabilization(&self) -> Option<&Stabilization> {
        self.stabilization.as_ref()
    }

    /// Rank of `F_i`.
    pub fn rank(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return Some(self.module.num_generators());
        }
        self.differential(i).map(|d| d.cols())
    }

    /// `d_i` for `i >= 1`, continuing periodically past the stabilization.
    pub fn differential(&self, i: usize) -> Option<FreeMap> {
        assert!(i >= 1);
        if i <= self.differentials.len() {
            return Some(self.differentials[i - 1].clone());
        }
        let st = self.stabilization.as_ref()?;
        let mf = &st.factorization;
        let ring = &self.module.ring;
        let m = if (i - st.index - 1).is_multiple_of(2) { mf.a() } else { mf.b() };
        Some(r_normalize(m, ring).expect("same ring"))
    }
}

fn first_differential(m: &RModulePresentation) -> Result<FreeMap> {
    let d1 = minimalize(m.matrix(), &m.ring)?;
    Ok(prune_columns(&d1, &m.ring))
}

/// Minimal free resolution of `m`, stopping at the first index `s` where
/// `d_{s+1}, d_{s+2}` form a matrix factorization (after alignment).
pub fn resolve(m: &RModulePresentation, max_steps: usize) -> Result<RResolution> {
    let ring = m.ring.clone();
    let mut diffs = vec![first_differential(m)?];
    let mut ranks = vec![diffs[0].rows(), diffs[0].cols()];
    loop {
        if diffs.len() >= 2 {
            let s = diffs.len() - 2;
            if ranks[s] == ranks[s + 1] && ranks[s + 1] == ranks[s + 2] {
                if let Some(mf) = align_factorization(&diffs[s], &diffs[s + 1], &ring) {
                    diffs[s + 1] = r_normalize(mf.b(), &ring)?;
                    return Ok(RResolution {
                        module: m.clone(),
                        differentials: diffs,
                        stabilization: Some(Stabilization {
                            index: s,
                            factorization: mf,
                        }),
                    });
                }
            }
        }
        if diffs.len() >= max_steps {
            return Err(Error::NoStabilization(max_steps));
        }
        let next = r_syzygy(diffs.last().unwrap(), &ring)?;
        ranks.push(next.cols());
        diffs.push(next);
    }
}

/// The first `steps` differentials of a minimal resolution, without any
/// periodicity detection.
pub fn resolve_plain(m: &RModulePresentation, steps: usize) -> Result<RResolution> {
    let ring = m.ring.clone();
    let mut diffs = vec![first_differential(m)?];
    while diffs.len() < steps {
        let next = r_syzygy(diffs.last().unwrap(), &ring)?;
        diffs.push(next);
    }
    Ok(RResolution {
        module: m.clone(),
        differentials: diffs,
        stabilization: None,
    })
}

impl RResolution {
    /// The module actually resolved: `coker(d_1)`, which may have fewer
    /// generators than the input presentation after minimalization.
    pub fn minimal_module(&self) -> RModulePresentation {
        RModulePresentation {
            matrix: self.differentials[0].clone(),
            ..self.module.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::CoefficientField;

    fn node() -> Arc<HypersurfaceRing> {
        HypersurfaceRing::parse(CoefficientField::Rationals, &["x", "y"], "x*y").unwrap()
    }

    #[test]
    fn ring_validation() {
        let q = PolyRing::rational(&["x", "y"]).unwrap();
        assert!(HypersurfaceRing::new(&q, Polynomial::zero(&q)).is_err());
        assert!(HypersurfaceRing::new(&q, crate::poly::parse_poly("x*y + 1", &q).unwrap()).is_err());
        assert_eq!(node().dim(), 1);
        assert_eq!(node().to_string(), "rational[x,y]/(x*y)");
    }

    #[test]
    fn normalize_examples() {
        let r = HypersurfaceRing::parse(CoefficientField::Rationals, &["x", "y", "z"], "x^2 - y*z").unwrap();
        let m = FreeMap::parse(r.ambient(), &[vec!["x^2 - y*z", "x + x^2*y - y^2*z", "x"]]).unwrap();
        let n = r_normalize(&m, &r).unwrap();
        assert_eq!(n.to_strings(), vec![vec!["0", "x", "x"]]);
        assert_eq!(r_normalize(&n, &r).unwrap(), n);
        let other = PolyRing::rational(&["a"]).unwrap();
        assert_eq!(r_normalize(&FreeMap::zeros(&other, 1, 1), &r), Err(Error::RingMismatch));
    }

    #[test]
    fn minimalize_examples() {
        let r = HypersurfaceRing::parse(CoefficientField::Rationals, &["x", "y", "z", "w"], "x*y - z*w").unwrap();
        let m = FreeMap::parse(r.ambient(), &[vec!["1", "x"], vec!["y", "z"]]).unwrap();
        let out = minimalize(&m, &r).unwrap();
        // z - y*x, reduced modulo x*y - z*w
        assert_eq!(out.to_strings(), vec![vec![r.reduce(&r.parse_element("z - y*x").unwrap()).to_string()]]);
        let inm = FreeMap::parse(r.ambient(), &[vec!["x", "y"]]).unwrap();
        assert_eq!(minimalize(&inm, &r).unwrap(), r_normalize(&inm, &r).unwrap());
        let empty = FreeMap::zeros(r.ambient(), 0, 0);
        assert_eq!(minimalize(&empty, &r).unwrap().rows(), 0);
        let bad = FreeMap::parse(r.ambient(), &[vec!["1 + x", "y"]]).unwrap();
        assert_eq!(minimalize(&bad, &r), Err(Error::NonConstantUnit { row: 0, col: 0 }));
    }

    #[test]
    fn node_syzygy() {
        let r = node();
        let d = FreeMap::parse(r.ambient(), &[vec!["x"]]).unwrap();
        assert_eq!(r_syzygy(&d, &r).unwrap().to_strings(), vec![vec!["y"]]);
        let id = FreeMap::identity(r.ambient(), 2);
        let s = r_syzygy(&id, &r).unwrap();
        assert_eq!((s.rows(), s.cols()), (2, 0));
    }

    #[test]
    fn node_resolution() {
        let r = node();
        let m = RModulePresentation::cyclic(&r, &["x"]).unwrap();
        let res = resolve(&m, 8).unwrap();
        let st = res.stabilization().unwrap();
        assert_eq!(st.index, 0);
        assert_eq!(st.factorization.a().to_strings(), vec![vec!["x"]]);
        assert_eq!(st.factorization.b().to_strings(), vec![vec!["y"]]);
        let ds: Vec<String> = (1..=4).map(|i| res.differential(i).unwrap().to_string()).collect();
        assert_eq!(ds, vec!["[[x]]", "[[y]]", "[[x]]", "[[y]]"]);
    }

    #[test]
    fn free_module_resolution_is_trivial() {
        let r = node();
        let res = resolve(&RModulePresentation::free(&r, 1), 6).unwrap();
        let st = res.stabilization().unwrap();
        assert_eq!(st.factorization.size(), 0);
        assert_eq!(res.rank(1), Some(0));
        assert_eq!(res.rank(5), Some(0));
    }

    #[test]
    fn residue_field_resolution_over_node() {
        let r = node();
        let res = resolve(&RModulePresentation::residue_field(&r), 8).unwrap();
        assert_eq!(res.stabilization().unwrap().index, 1);
        assert_eq!(res.rank(2), Some(2));
        for i in 1..6 {
            let prod = res.differential(i).unwrap().mul(&res.differential(i + 1).unwrap()).unwrap();
            assert!(r_normalize(&prod, &r).unwrap().is_zero());
        }
    }

    #[test]
    fn tensor_examples() {
        let r = node();
        let mx = RModulePresentation::cyclic(&r, &["x"]).unwrap();
        let my = RModulePresentation::cyclic(&r, &["y"]).unwrap();
        let t = tensor_presentations(&mx, &my).unwrap();
        assert_eq!(t.matrix().to_strings(), vec![vec!["x", "y"]]);
        assert_eq!(t.kdim(), ExtNat::Finite(1));
        let free = RModulePresentation::free(&r, 1);
        assert_eq!(tensor_presentations(&mx, &free).unwrap().matrix(), mx.matrix());
        let zero = RModulePresentation::zero(&r);
        assert_eq!(tensor_presentations(&mx, &zero).unwrap().num_generators(), 0);
    }

    #[test]
    fn no_stabilization_bound() {
        let r = HypersurfaceRing::parse(CoefficientField::Rationals, &["x", "y", "z"], "x^3 + y^3 + z^3").unwrap();
        let k = RModulePresentation::residue_field(&r);
        assert_eq!(resolve(&k, 2).unwrap_err(), Error::NoStabilization(2));
    }
}
