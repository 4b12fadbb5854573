//! Gröbner bases of submodules of free modules, normal forms, syzygies and
//! vector-space dimensions of quotients.
//!
//! Free modules use the position-over-term order with component 0 highest;
//! ideals are submodules of rank one.

mod buchberger;
mod element;
mod kdim;
mod matrix;
mod syzygy;

pub use buchberger::{buchberger, GroebnerBasis};
pub use element::FreeElement;
pub use kdim::{is_origin_supported, kdim_quotient, ExtNat};
pub use matrix::{FreeMap, Interpretation};
pub use syzygy::{relations_among, syzygies};
