pub mod error;
pub mod groebner;
pub mod harness;
pub mod homology;
pub mod job;
pub mod mf;
pub mod poly;
pub mod quotient;
pub mod theta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/factorizations.md")]
    mod factorizations {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/singularities.md")]
    mod singularities {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
