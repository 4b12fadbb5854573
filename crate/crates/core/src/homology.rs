//! Homology of complexes of presented `R`-modules, and Tor.

use crate::error::{Error, Result};
use crate::groebner::{is_origin_supported, kdim_quotient, relations_among, ExtNat, FreeElement, FreeMap, GroebnerBasis};
use crate::quotient::{r_normalize, resolve, tensor_presentations, RModulePresentation, RResolution};

/// A homomorphism of presented modules, given by the images of the source
/// generators (one column per source generator).
#[derive(Clone, Debug)]
pub struct PresentedMap {
    source: RModulePresentation,
    target: RModulePresentation,
    matrix: FreeMap,
}

impl PresentedMap {
    /// Checks shapes and well-definedness: the images of the source relations
    /// must lie in the span of the target relations.
    pub fn new(source: &RModulePresentation, target: &RModulePresentation, matrix: &FreeMap) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix)?;
        let images = map.matrix.mul(source.matrix())?;
        let gb = target.relation_basis();
        for col in images.columns() {
            if !gb.contains(&col)? {
                return Err(Error::IllDefinedMap);
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: &RModulePresentation,
        target: &RModulePresentation,
        matrix: &FreeMap,
    ) -> Result<Self> {
        if *source.ring() != *target.ring() {
            return Err(Error::RingMismatch);
        }
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.num_generators(),
                source.num_generators()
            )));
        }
        Ok(PresentedMap {
            source: source.clone(),
            target: target.clone(),
            matrix: r_normalize(matrix, source.ring())?,
        })
    }

    pub fn source(&self) -> &RModulePresentation {
        &self.source
    }

    pub fn target(&self) -> &RModulePresentation {
        &self.target
    }

    pub fn matrix(&self) -> &FreeMap {
        &self.matrix
    }

    /// The zero map.
    pub fn zero(source: &RModulePresentation, target: &RModulePresentation) -> Result<Self> {
        let m = FreeMap::zeros(source.ring().ambient(), target.num_generators(), source.num_generators());
        Self::new_unchecked(source, target, &m)
    }

    /// True if the map is zero on the presented modules.
    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.target.relation_basis();
        for col in self.matrix.columns() {
            if !gb.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A homology module together with its length.
#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub presentation: RModulePresentation,
    /// Finite exactly when the module is supported at the origin only.
    pub length: ExtNat,
    pub origin_supported: bool,
}

impl HomologyResult {
    pub fn is_zero(&self) -> bool {
        self.length == ExtNat::Finite(0)
    }
}

/// `ker(beta) / im(alpha)` for `A -alpha-> X -beta-> Y`.
pub fn subquotient_homology(alpha: &PresentedMap, beta: &PresentedMap) -> Result<HomologyResult> {
    if alpha.target.matrix() != beta.source.matrix() {
        return Err(Error::ShapeMismatch("alpha does not land in the source of beta".into()));
    }
    let composite = beta.matrix.mul(&alpha.matrix)?;
    let gb_y = beta.target.relation_basis();
    for col in composite.columns() {
        if !gb_y.contains(&col)? {
            return Err(Error::CompositeNonzero);
        }
    }
    homology_unchecked(&alpha.matrix, &beta.source, &beta.matrix, &beta.target)
}

/// Homology at `x` of `. -alpha-> x -beta-> y`, without the composite check.
pub(crate) fn homology_unchecked(
    alpha: &FreeMap,
    x: &RModulePresentation,
    beta: &FreeMap,
    y: &RModulePresentation,
) -> Result<HomologyResult> {
    let ring = x.ring().clone();
    let q = ring.ambient();
    let a = x.num_generators();
    // preimage of the target relations: generators of ker(beta) + relations of x
    let kernel = relations_among(q, y.num_generators(), &beta.columns(), &y.q_relations());
    let mut image = alpha.columns();
    image.extend(x.q_relations());
    let gb_image = GroebnerBasis::of(q, a, &image);
    let mut gens: Vec<FreeElement> = Vec::new();
    for k in kernel {
        let r = gb_image.normal_form(&k)?;
        if !r.is_zero() && !gens.contains(&r) {
            gens.push(r);
        }
    }
    let s = gens.len();
    let relations = relations_among(q, a, &gens, gb_image.generators());
    let matrix = FreeMap::from_columns(q, s, &relations);
    let presentation = RModulePresentation::new(&ring, &matrix)?;
    let gb = presentation.relation_basis();
    let origin_supported = is_origin_supported(&gb, s);
    let length = if origin_supported {
        kdim_quotient(&gb, s)
    } else {
        ExtNat::Infinite
    };
    Ok(HomologyResult {
        presentation,
        length,
        origin_supported,
    })
}

/// `N^r`, presented by `r` diagonal copies of `N`'s presentation.
fn power(n: &RModulePresentation, r: usize) -> Result<RModulePresentation> {
    RModulePresentation::new(n.ring(), &n.matrix().identity_kron(r))
}

/// `Tor_i^R(M, N)` where `res` resolves `M`.
pub fn tor(res: &RResolution, n: &RModulePresentation, i: usize) -> Result<HomologyResult> {
    let m = res.module();
    if *m.ring() != *n.ring() {
        return Err(Error::RingMismatch);
    }
    if i == 0 {
        let t = tensor_presentations(&res.minimal_module(), n)?;
        let gb = t.relation_basis();
        let origin_supported = is_origin_supported(&gb, t.num_generators());
        let length = if origin_supported {
            kdim_quotient(&gb, t.num_generators())
        } else {
            ExtNat::Infinite
        };
        return Ok(HomologyResult {
            presentation: t,
            length,
            origin_supported,
        });
    }
    let steps = res.computed().len();
    let d_i = res.differential(i).ok_or(Error::NoStabilization(steps))?;
    let d_next = res.differential(i + 1).ok_or(Error::NoStabilization(steps))?;
    let g = n.num_generators();
    let x = power(n, d_i.cols())?;
    let y = power(n, d_i.rows())?;
    homology_unchecked(&d_next.kron_identity(g), &x, &d_i.kron_identity(g), &y)
}

/// `Tor_i^R(M, N)`, resolving `M` first.
pub fn tor_of(m: &RModulePresentation, n: &RModulePresentation, i: usize, max_steps: usize) -> Result<HomologyResult> {
    tor(&resolve(m, max_steps)?, n, i)
}

/// Tor lengths in the two-periodic range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableTor {
    pub even: u64,
    pub odd: u64,
    /// Stabilization index of the resolution, or the assumed window start.
    pub index: usize,
    /// First (even) homological degree at which the lengths were read.
    pub first_degree: usize,
    /// The lengths were seen to repeat two degrees later.
    pub verified: bool,
}

fn finite_length(h: &HomologyResult, degree: usize) -> Result<u64> {
    h.length.finite().ok_or_else(|| {
        Error::NotFiniteLength(format!("Tor_{degree} is not supported at the origin alone"))
    })
}

/// Stable even and odd Tor lengths read from a stabilized resolution of `M`,
/// at degrees `k, k+1` with `k = 2⌈(s+2)/2⌉`, checked against `k+2, k+3`.
pub fn stable_tor_lengths(res: &RResolution, n: &RModulePresentation) -> Result<StableTor> {
    let s = res
        .stabilization()
        .ok_or(Error::NoStabilization(res.computed().len()))?
        .index;
    let k = 2 * (s + 2).div_ceil(2);
    let mut lens = Vec::with_capacity(4);
    for d in k..k + 4 {
        lens.push(finite_length(&tor(res, n, d)?, d)?);
    }
    if lens[0] != lens[2] || lens[1] != lens[3] {
        return Err(Error::PeriodicityCheckFailed(format!(
            "lengths of Tor_{k}..Tor_{} are {lens:?}",
            k + 3
        )));
    }
    Ok(StableTor {
        even: lens[0],
        odd: lens[1],
        index: s,
        first_degree: k,
        verified: true,
    })
}

/// Index-window evaluation: Tor lengths at `i0..i0+3` from a plain
/// resolution (no periodicity detection). Whether `len_i = len_{i+2}` held
/// is reported in `verified` rather than raised.
pub fn window_tor_lengths(m: &RModulePresentation, n: &RModulePresentation, i0: usize) -> Result<StableTor> {
    let i0 = i0.max(1);
    let res = crate::quotient::resolve_plain(m, i0 + 4)?;
    let mut lens = Vec::with_capacity(4);
    for d in i0..i0 + 4 {
        lens.push(finite_length(&tor(&res, n, d)?, d)?);
    }
    let first = i0 + i0 % 2;
    let (even, odd) = (lens[first - i0], lens[first - i0 + 1]);
    Ok(StableTor {
        even,
        odd,
        index: i0,
        first_degree: first,
        verified: lens[0] == lens[2] && lens[1] == lens[3],
    })
}
