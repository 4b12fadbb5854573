//! Matrix factorizations `AB = BA = f·I` and the matrix identities built on them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{FreeMap, Interpretation};
use crate::homology::{subquotient_homology, PresentedMap};
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::quotient::{HypersurfaceRing, RModulePresentation};

/// A pair of square matrices over `Q` with `AB = BA = f·I`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ring: Arc<HypersurfaceRing>,
    a: FreeMap,
    b: FreeMap,
}

impl PartialEq for MatrixFactorization {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.a == other.a && self.b == other.b
    }
}

fn check_product(x: &FreeMap, y: &FreeMap, f: &Polynomial, name: &'static str) -> Result<()> {
    let prod = x.mul(y)?;
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let ok = if i == j { prod.get(i, j) == f } else { prod.get(i, j).is_zero() };
            if !ok {
                return Err(Error::NotAFactorization { product: name, row: i, col: j });
            }
        }
    }
    Ok(())
}

impl MatrixFactorization {
    /// Validates `AB = BA = f·I` exactly over `Q`.
    pub fn new(a: &FreeMap, b: &FreeMap, ring: &Arc<HypersurfaceRing>) -> Result<Self> {
        if !same_ring(a.ring(), ring.ambient()) || !same_ring(b.ring(), ring.ambient()) {
            return Err(Error::RingMismatch);
        }
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::ShapeMismatch(format!(
                "factorization needs square matrices of one size, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        let a = a.clone().with_interpretation(Interpretation::OverQ);
        let b = b.clone().with_interpretation(Interpretation::OverQ);
        check_product(&a, &b, ring.f(), "AB")?;
        check_product(&b, &a, ring.f(), "BA")?;
        Ok(MatrixFactorization { ring: ring.clone(), a, b })
    }

    /// Parses both matrices from rows of polynomial strings.
    pub fn parse<S: AsRef<str>>(ring: &Arc<HypersurfaceRing>, a: &[Vec<S>], b: &[Vec<S>]) -> Result<Self> {
        let q = ring.ambient();
        Self::new(&FreeMap::parse(q, a)?, &FreeMap::parse(q, b)?, ring)
    }

    /// The trivial factorization `(1, f)`.
    pub fn trivial(ring: &Arc<HypersurfaceRing>) -> Self {
        let q = ring.ambient();
        Self::new(&FreeMap::identity(q, 1), &FreeMap::scalar(q, 1, ring.f()), ring).expect("1 * f = f")
    }

    pub fn ring(&self) -> &Arc<HypersurfaceRing> {
        &self.ring
    }

    pub fn a(&self) -> &FreeMap {
        &self.a
    }

    pub fn b(&self) -> &FreeMap {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    /// `(B, A)`.
    pub fn transpose(&self) -> Self {
        MatrixFactorization {
            ring: self.ring.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `(A₁ ⊕ A₂, B₁ ⊕ B₂)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Self::new(&self.a.block_diag(&other.a), &self.b.block_diag(&other.b), &self.ring)
    }
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}, B = {}", self.a, self.b)
    }
}

/// `coker(A)` as an `R`-module.
pub fn mf_cokernel(mf: &MatrixFactorization) -> RModulePresentation {
    RModulePresentation::new(&mf.ring, &mf.a)
        .expect("same ring")
        .with_label("coker(A)")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    DirectSum,
    Transpose,
}

/// Direct sum of all inputs, or the transpose of a single input.
pub fn mf_combine(op: CombineOp, inputs: &[MatrixFactorization]) -> Result<MatrixFactorization> {
    match op {
        CombineOp::Transpose => match inputs {
            [mf] => Ok(mf.transpose()),
            _ => Err(Error::InvalidParameter(format!(
                "transpose takes one factorization, got {}",
                inputs.len()
            ))),
        },
        CombineOp::DirectSum => {
            let (first, rest) = inputs
                .split_first()
                .ok_or_else(|| Error::InvalidParameter("direct sum of no factorizations".into()))?;
            rest.iter().try_fold(first.clone(), |acc, mf| acc.direct_sum(mf))
        }
    }
}

/// From a factorization of `f` over `Q`, the factorization
/// `([[A, uI], [vI, -B]], [[B, uI], [vI, -A]])` of `f + uv` over `Q[u, v]`.
pub fn knorrer_split(mf: &MatrixFactorization, u: &str, v: &str) -> Result<MatrixFactorization> {
    let q = mf.ring.ambient();
    for name in [u, v] {
        if q.var_index(name).is_some() {
            return Err(Error::VariableClash(name.to_string()));
        }
    }
    if u == v {
        return Err(Error::VariableClash(u.to_string()));
    }
    let mut vars: Vec<String> = q.variables().to_vec();
    vars.push(u.to_string());
    vars.push(v.to_string());
    let big = PolyRing::new(q.field(), &vars, q.order())?;
    let uu = Polynomial::var(&big, q.nvars());
    let vv = Polynomial::var(&big, q.nvars() + 1);
    let f = &mf.ring.f().embed(&big)? + &(&uu * &vv);
    let ring = HypersurfaceRing::new(&big, f)?;
    let lift = |m: &FreeMap| -> Result<FreeMap> {
        let entries = m.entries().iter().map(|p| p.embed(&big)).collect::<Result<_>>()?;
        FreeMap::new(&big, m.rows(), m.cols(), entries)
    };
    let (a, b) = (lift(&mf.a)?, lift(&mf.b)?);
    let m = mf.size();
    let ui = FreeMap::scalar(&big, m, &uu);
    let vi = FreeMap::scalar(&big, m, &vv);
    let a2 = FreeMap::blocks(&big, &[vec![a.clone(), ui.clone()], vec![vi.clone(), b.neg()]])?;
    let b2 = FreeMap::blocks(&big, &[vec![b, ui], vec![vi, a.neg()]])?;
    MatrixFactorization::new(&a2, &b2, &ring)
}

/// A matrix over `Q[1/f]`, each entry stored as `p / f^e`.
#[derive(Clone, Debug)]
pub struct LocalizedMatrix {
    ring: Arc<HypersurfaceRing>,
    rows: usize,
    cols: usize,
    entries: Vec<(Polynomial, u32)>,
}

impl LocalizedMatrix {
    /// `m / f^e`.
    pub fn from_matrix(ring: &Arc<HypersurfaceRing>, m: &FreeMap, e: u32) -> Self {
        let mut out = LocalizedMatrix {
            ring: ring.clone(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|p| (p.clone(), e)).collect(),
        };
        out.simplify();
        out
    }

    pub fn identity(ring: &Arc<HypersurfaceRing>, n: usize) -> Self {
        Self::from_matrix(ring, &FreeMap::identity(ring.ambient(), n), 0)
    }

    pub fn zeros(ring: &Arc<HypersurfaceRing>, rows: usize, cols: usize) -> Self {
        Self::from_matrix(ring, &FreeMap::zeros(ring.ambient(), rows, cols), 0)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Numerator and `f`-exponent of an entry.
    pub fn get(&self, i: usize, j: usize) -> &(Polynomial, u32) {
        &self.entries[i * self.cols + j]
    }

    /// Cancels powers of `f` from each entry.
    fn simplify(&mut self) {
        let f = self.ring.f().clone();
        for (p, e) in &mut self.entries {
            if p.is_zero() {
                *e = 0;
            }
            while *e > 0 {
                match p.exact_div(&f) {
                    Some(q) => {
                        *p = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.ring.f();
        let q = self.ring.ambient();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let parts: Vec<(Polynomial, u32)> = (0..self.cols)
                    .filter_map(|k| {
                        let (p1, e1) = self.get(i, k);
                        let (p2, e2) = other.get(k, j);
                        (!p1.is_zero() && !p2.is_zero()).then(|| (p1 * p2, e1 + e2))
                    })
                    .collect();
                let e = parts.iter().map(|(_, e)| *e).max().unwrap_or(0);
                let mut acc = Polynomial::zero(q);
                for (p, pe) in parts {
                    acc = &acc + &(&p * &f.pow(e - pe));
                }
                entries.push((acc, e));
            }
        }
        let mut out = LocalizedMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        };
        out.simplify();
        Ok(out)
    }

    /// Block diagonal matrix.
    pub fn block_diag(ring: &Arc<HypersurfaceRing>, blocks: &[&LocalizedMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl PartialEq for LocalizedMatrix {
    fn eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let f = self.ring.f();
        let e = self
            .entries
            .iter()
            .chain(&other.entries)
            .map(|(_, e)| *e)
            .max()
            .unwrap_or(0);
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|((p1, e1), (p2, e2))| (p1 * &f.pow(e - e1)) == (p2 * &f.pow(e - e2)))
    }
}

impl fmt::Display for LocalizedMatrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(fm, ", ")?;
            }
            write!(fm, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(fm, ", ")?;
                }
                match self.get(i, j) {
                    (p, 0) => write!(fm, "{p}")?,
                    (p, 1) => write!(fm, "({p})/f")?,
                    (p, e) => write!(fm, "({p})/f^{e}")?,
                }
            }
            write!(fm, "]")?;
        }
        write!(fm, "]")
    }
}

/// The matrices `D(A) = diag(A, A⁻¹, I)`, `D'(A) = diag(A, I, A⁻¹)` and the
/// signed permutation `P = [[-I, 0, 0], [0, 0, I], [0, I, 0]]`, with the
/// outcome of the conjugation checks.
#[derive(Clone, Debug)]
pub struct StarScaffoldReport {
    pub d_a: LocalizedMatrix,
    pub d_prime_a: LocalizedMatrix,
    pub p: LocalizedMatrix,
    /// `P D(A) P⁻¹ = D'(A)`.
    pub passed: bool,
    /// `P D(B) P⁻¹ = D'(A)`, recorded but not required.
    pub pd_b_equals_d_prime_a: bool,
    /// `P D(B) P⁻¹ = D'(B)`.
    pub pd_b_equals_d_prime_b: bool,
}

fn d_matrices(
    ring: &Arc<HypersurfaceRing>,
    x: &LocalizedMatrix,
    x_inv: &LocalizedMatrix,
) -> (LocalizedMatrix, LocalizedMatrix) {
    let id = LocalizedMatrix::identity(ring, x.rows());
    (
        LocalizedMatrix::block_diag(ring, &[x, x_inv, &id]),
        LocalizedMatrix::block_diag(ring, &[x, &id, x_inv]),
    )
}

/// Builds the elementary matrices over `Q[1/f]` with `A⁻¹ = B/f` and checks
/// `P D(A) P⁻¹ = D'(A)` exactly.
pub fn star_scaffold(mf: &MatrixFactorization) -> Result<StarScaffoldReport> {
    let ring = &mf.ring;
    let q = ring.ambient();
    let n = mf.size();
    let a = LocalizedMatrix::from_matrix(ring, &mf.a, 0);
    let a_inv = LocalizedMatrix::from_matrix(ring, &mf.b, 1);
    let b = LocalizedMatrix::from_matrix(ring, &mf.b, 0);
    let b_inv = LocalizedMatrix::from_matrix(ring, &mf.a, 1);
    let id = LocalizedMatrix::identity(ring, n);
    if a.mul(&a_inv)? != id || a_inv.mul(&a)? != id {
        return Err(Error::IdentityFailed("A·(B/f) is not the identity".into()));
    }
    let z = FreeMap::zeros(q, n, n);
    let i = FreeMap::identity(q, n);
    let p_grid = FreeMap::blocks(
        q,
        &[
            vec![i.neg(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), i.clone()],
            vec![z.clone(), i.clone(), z],
        ],
    )?;
    let p = LocalizedMatrix::from_matrix(ring, &p_grid, 0);
    let p_inv = LocalizedMatrix::from_matrix(ring, &p_grid.transpose(), 0);
    if p.mul(&p_inv)? != LocalizedMatrix::identity(ring, 3 * n) {
        return Err(Error::IdentityFailed("P·Pᵀ is not the identity".into()));
    }
    let (d_a, d_prime_a) = d_matrices(ring, &a, &a_inv);
    let (d_b, d_prime_b) = d_matrices(ring, &b, &b_inv);
    let conj_a = p.mul(&d_a)?.mul(&p_inv)?;
    let conj_b = p.mul(&d_b)?.mul(&p_inv)?;
    let passed = conj_a == d_prime_a;
    let report = StarScaffoldReport {
        pd_b_equals_d_prime_a: conj_b == d_prime_a,
        pd_b_equals_d_prime_b: conj_b == d_prime_b,
        d_a,
        d_prime_a,
        p,
        passed,
    };
    if !passed {
        return Err(Error::IdentityFailed("P·D(A)·P⁻¹ differs from D'(A)".into()));
    }
    Ok(report)
}

/// Lengths of the homology at the three spots of each checked sequence.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MirrorReport {
    /// `0 → coker A -B-> R^m → coker B → 0`.
    pub e: [u64; 3],
    /// `0 → coker B -A-> R^m → coker A → 0`.
    pub f: [u64; 3],
    /// First row of the double short exact sequence built from `(E, F)`.
    pub row_1: [u64; 3],
    /// Second row.
    pub row_2: [u64; 3],
}

/// Checks that `0 → x -i-> y -p-> z → 0` is exact, returning the homology
/// lengths. Spots are numbered from `base`.
fn check_short_exact(i: &PresentedMap, p: &PresentedMap, base: usize, name: &str) -> Result<[u64; 3]> {
    let zero_in = PresentedMap::zero(&RModulePresentation::zero(i.source().ring()), i.source())?;
    let zero_out = PresentedMap::zero(p.target(), &RModulePresentation::zero(p.target().ring()))?;
    let spots = [(&zero_in, i), (i, p), (p, &zero_out)];
    let mut out = [0; 3];
    for (k, (a, b)) in spots.into_iter().enumerate() {
        let h = subquotient_homology(a, b).map_err(|e| Error::ExactnessFailed {
            spot: base + k,
            detail: format!("{name}: {e}"),
        })?;
        out[k] = h.length.finite().unwrap_or(u64::MAX);
        if !h.is_zero() {
            return Err(Error::ExactnessFailed {
                spot: base + k,
                detail: format!("{name}: homology has length {}", h.length),
            });
        }
    }
    Ok(out)
}

/// Builds the mirror image pair
/// `E = (0 → coker A -B-> R^m → coker B → 0)`,
/// `F = (0 → coker B -A-> R^m → coker A → 0)`
/// and the two rows of the associated double short exact sequence
/// `X ⊕ Z → Y ⊕ Z ⊕ X → Z ⊕ X`, and checks that all four are short exact.
/// Spots are numbered 0..3 for `E`, 3..6 for `F`, 6..9 and 9..12 for the rows.
pub fn mirror_double_ses(mf: &MatrixFactorization) -> Result<MirrorReport> {
    let ring = &mf.ring;
    let q = ring.ambient();
    let m = mf.size();
    let x = RModulePresentation::new(ring, &mf.a)?;
    let z = RModulePresentation::new(ring, &mf.b)?;
    let y = RModulePresentation::free(ring, m);
    let id = FreeMap::identity(q, m);
    let zero = FreeMap::zeros(q, m, m);

    let i = PresentedMap::new(&x, &y, &mf.b)?;
    let p = PresentedMap::new(&y, &z, &id)?;
    let j = PresentedMap::new(&z, &y, &mf.a)?;
    let qq = PresentedMap::new(&y, &x, &id)?;
    let e = check_short_exact(&i, &p, 0, "E")?;
    let f = check_short_exact(&j, &qq, 3, "F")?;

    let xz = x.direct_sum(&z)?;
    let yzx = y.direct_sum(&z)?.direct_sum(&x)?;
    let zx = z.direct_sum(&x)?;
    let grid = |g: &[Vec<&FreeMap>]| -> Result<FreeMap> {
        let owned: Vec<Vec<FreeMap>> = g.iter().map(|r| r.iter().map(|&b| b.clone()).collect()).collect();
        FreeMap::blocks(q, &owned)
    };
    let l1_in = grid(&[vec![&zero, &mf.a], vec![&zero, &zero], vec![&id, &zero]])?;
    let l1_out = grid(&[vec![&zero, &id, &zero], vec![&id, &zero, &zero]])?;
    let l2_in = grid(&[vec![&mf.b, &zero], vec![&zero, &id], vec![&zero, &zero]])?;
    let l2_out = grid(&[vec![&id, &zero, &zero], vec![&zero, &zero, &id]])?;
    let row_1 = check_short_exact(
        &PresentedMap::new(&xz, &yzx, &l1_in)?,
        &PresentedMap::new(&yzx, &zx, &l1_out)?,
        6,
        "first row",
    )?;
    let row_2 = check_short_exact(
        &PresentedMap::new(&xz, &yzx, &l2_in)?,
        &PresentedMap::new(&yzx, &zx, &l2_out)?,
        9,
        "second row",
    )?;
    Ok(MirrorReport { e, f, row_1, row_2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::CoefficientField;

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        HypersurfaceRing::parse(CoefficientField::Rationals, vars, f).unwrap()
    }

    fn node_mf() -> MatrixFactorization {
        let r = ring(&["x", "y"], "x*y");
        MatrixFactorization::parse(&r, &[vec!["x"]], &[vec!["y"]]).unwrap()
    }

    fn quadric() -> MatrixFactorization {
        let r = ring(&["x", "y", "z", "w"], "x*y - z*w");
        MatrixFactorization::parse(&r, &[vec!["x", "z"], vec!["w", "y"]], &[vec!["y", "-z"], vec!["-w", "x"]]).unwrap()
    }

    #[test]
    fn validation() {
        node_mf();
        let r = ring(&["x", "y", "z"], "x^2 + y*z");
        let a = vec![vec!["x", "y"], vec!["z", "-x"]];
        assert_eq!(MatrixFactorization::parse(&r, &a, &a).unwrap().size(), 2);
        let n = ring(&["x", "y"], "x*y");
        let err = MatrixFactorization::parse(&n, &[vec!["x"]], &[vec!["x"]]).unwrap_err();
        assert_eq!(err, Error::NotAFactorization { product: "AB", row: 0, col: 0 });
        assert!(matches!(
            MatrixFactorization::parse(&n, &[vec!["x", "y"]], &[vec!["y"]]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn cokernels() {
        let mf = node_mf();
        let c = mf_cokernel(&mf);
        assert_eq!(c.matrix().to_strings(), vec![vec!["x"]]);
        let t = MatrixFactorization::trivial(mf.ring());
        assert_eq!(mf_cokernel(&t).kdim(), crate::groebner::ExtNat::Finite(0));
        // (f, 1): coker of f ≡ 0 is R itself
        let ft = t.transpose();
        assert!(mf_cokernel(&ft).matrix().is_zero());
        assert_eq!(mf_cokernel(&ft).num_generators(), 1);
    }

    #[test]
    fn combine() {
        let mf = node_mf();
        let t = mf_combine(CombineOp::Transpose, std::slice::from_ref(&mf)).unwrap();
        assert_eq!(t.a().to_strings(), vec![vec!["y"]]);
        assert_eq!(t.transpose(), mf);
        let s = mf_combine(CombineOp::DirectSum, &[mf.clone(), mf.clone()]).unwrap();
        assert_eq!(s.a().to_strings(), vec![vec!["x", "0"], vec!["0", "x"]]);
        assert!(mf_combine(CombineOp::Transpose, &[]).is_err());
        assert_eq!(mf.direct_sum(&quadric()).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn knorrer() {
        let mf = node_mf();
        let k = knorrer_split(&mf, "u", "v").unwrap();
        assert_eq!(k.size(), 2);
        assert_eq!(k.ring().f().to_string(), "x*y + u*v");
        let t = knorrer_split(&MatrixFactorization::trivial(mf.ring()), "u", "v").unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(knorrer_split(&mf, "x", "v").unwrap_err(), Error::VariableClash("x".into()));
    }

    #[test]
    fn localized_arithmetic() {
        let mf = node_mf();
        let r = mf.ring();
        let a = LocalizedMatrix::from_matrix(r, mf.a(), 0);
        let a_inv = LocalizedMatrix::from_matrix(r, mf.b(), 1);
        assert_eq!(a_inv.to_string(), "[[(y)/f]]");
        assert_eq!(a.mul(&a_inv).unwrap(), LocalizedMatrix::identity(r, 1));
        // y·f / f^2 equals y / f
        let f = r.f().clone();
        let lifted = LocalizedMatrix {
            ring: r.clone(),
            rows: 1,
            cols: 1,
            entries: vec![(&mf.b().get(0, 0).clone() * &f, 2)],
        };
        assert_eq!(lifted, a_inv);
    }

    #[test]
    fn star_identities() {
        let rep = star_scaffold(&node_mf()).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.d_a.to_string(), "[[x, 0, 0], [0, (y)/f, 0], [0, 0, 1]]");
        assert!(rep.pd_b_equals_d_prime_b);
        assert!(!rep.pd_b_equals_d_prime_a);
        let t = MatrixFactorization::trivial(node_mf().ring());
        assert!(star_scaffold(&t).unwrap().passed);
        let q = star_scaffold(&quadric()).unwrap();
        assert!(q.passed);
        assert_eq!(q.d_a.rows(), 6);
    }

    #[test]
    fn mirror_sequences() {
        let rep = mirror_double_ses(&node_mf()).unwrap();
        assert_eq!(rep.e, [0, 0, 0]);
        mirror_double_ses(&MatrixFactorization::trivial(node_mf().ring())).unwrap();
        mirror_double_ses(&quadric()).unwrap();
    }
}
