//! Hochster's θ pairing and the singularity checks deciding when it must vanish.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{is_origin_supported, kdim_quotient, ExtNat, FreeElement, GroebnerBasis};
use crate::homology::{stable_tor_lengths, window_tor_lengths, StableTor};
use crate::poly::Polynomial;
use crate::quotient::{default_max_steps, resolve, RModulePresentation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThetaOptions {
    /// Resolution length bound; defaults to `2·(#variables + 2)`.
    pub max_steps: Option<usize>,
    /// Window start used when no stabilization is found.
    pub assume_stable_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub theta: i64,
    pub len_even: u64,
    pub len_odd: u64,
    pub stab_index: usize,
    pub periodicity_verified: bool,
    /// The index-window path was used instead of a detected stabilization.
    pub fallback: bool,
    pub notes: Vec<String>,
}

impl ThetaReport {
    fn from_lengths(st: StableTor, fallback: bool) -> Self {
        let mut notes = Vec::new();
        if fallback {
            notes.push(format!(
                "no stabilization detected; lengths read from degrees {} and {} of a plain resolution",
                st.first_degree,
                st.first_degree + 1
            ));
        }
        if !st.verified {
            notes.push("lengths did not repeat two degrees later".into());
        }
        ThetaReport {
            theta: st.even as i64 - st.odd as i64,
            len_even: st.even,
            len_odd: st.odd,
            stab_index: st.index,
            periodicity_verified: st.verified,
            fallback,
            notes,
        }
    }
}

/// `θ(M, N) = len Tor_even − len Tor_odd` in the two-periodic range, from a
/// resolution of `M`.
pub fn theta(m: &RModulePresentation, n: &RModulePresentation, opts: ThetaOptions) -> Result<ThetaReport> {
    let steps = opts.max_steps.unwrap_or_else(|| default_max_steps(m.ring()));
    match resolve(m, steps) {
        Ok(res) => Ok(ThetaReport::from_lengths(stable_tor_lengths(&res, n)?, false)),
        Err(Error::NoStabilization(k)) => match opts.assume_stable_at {
            Some(i0) => theta_window(m, n, i0),
            None => Err(Error::NoStabilization(k)),
        },
        Err(e) => Err(e),
    }
}

/// θ from Tor lengths at degrees `i0..i0+3` of a plain resolution, trusting
/// that the two-periodic range has begun by `i0`.
pub fn theta_window(m: &RModulePresentation, n: &RModulePresentation, i0: usize) -> Result<ThetaReport> {
    Ok(ThetaReport::from_lengths(window_tor_lengths(m, n, i0)?, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub isolated: bool,
    pub milnor: ExtNat,
    pub tjurina: ExtNat,
    pub dim: usize,
    pub parity: Parity,
    pub char_warnings: Vec<String>,
}

fn ideal_basis(f: &Polynomial, gens: &[Polynomial]) -> GroebnerBasis {
    let q = f.ring();
    let elems: Vec<FreeElement> = gens.iter().map(|g| FreeElement::from_polys(q, std::slice::from_ref(g))).collect();
    GroebnerBasis::of(q, 1, &elems)
}

/// Isolatedness, Milnor and Tjurina numbers of the hypersurface `f = 0` at
/// the origin, where `R = Q/(f)` has dimension `#variables − 1`.
pub fn jacobian_check(f: &Polynomial) -> SingularityReport {
    let q = f.ring();
    let partials: Vec<Polynomial> = (0..q.nvars()).map(|i| f.partial_derivative(i)).collect();
    let mut with_f = partials.clone();
    with_f.push(f.clone());
    let jac = ideal_basis(f, &partials);
    let tj = ideal_basis(f, &with_f);
    let milnor = if is_origin_supported(&jac, 1) {
        kdim_quotient(&jac, 1)
    } else {
        ExtNat::Infinite
    };
    let dim = q.nvars() - 1;
    let mut char_warnings = Vec::new();
    let p = q.field().characteristic();
    for i in f.exponents_divisible_by_char() {
        char_warnings.push(format!(
            "characteristic {p} divides an exponent of `{}`; the partial derivative loses that term",
            q.variables()[i]
        ));
    }
    SingularityReport {
        isolated: is_origin_supported(&tj, 1),
        milnor,
        tjurina: kdim_quotient(&tj, 1),
        dim,
        parity: if dim.is_multiple_of(2) { Parity::Even } else { Parity::Odd },
        char_warnings,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingPrediction {
    pub predicted: bool,
    pub justification: String,
}

/// θ is predicted to vanish identically exactly for isolated singularities
/// of even dimension.
pub fn vanishing_predicted(report: &SingularityReport) -> VanishingPrediction {
    let (predicted, justification) = match (report.isolated, report.parity) {
        (true, Parity::Even) => (true, format!("isolated singularity of even dimension {}", report.dim)),
        (true, Parity::Odd) => (false, format!("dimension {} is odd", report.dim)),
        (false, _) => (false, "the singular locus is not just the origin".to_string()),
    };
    VanishingPrediction {
        predicted,
        justification,
    }
}
