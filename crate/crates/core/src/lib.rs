//! Exact cross ratios on the circle and the bounded cohomology objects they
//! carry.
//!
//! Everything in this crate is computed over exact rationals (or integers for
//! graph metrics). The main pieces are:
//!
//! - [`circle`]: the boundary circle modelled as `RP¹ = ℚ ∪ {∞}`, its cyclic
//!   order and the canonical order/linking cross ratio.
//! - [`cocycle`]: anti-symmetric cross-ratio tables on finite configurations,
//!   alternating 2-cochains, coboundaries and the two maps between cross
//!   ratios and alternating cocycles.
//! - [`measure`]: finitely additive flip-antiinvariant measures on rectangles
//!   of half-open arcs and the correspondence with cross ratios.
//! - [`mobius`] and [`words`]: the exact `PSL(2,ℚ)` action, orbit cocycles,
//!   basepoint-change cochains and quasimorphism defects on free words.
//! - [`coarse`]: finite graph metric spaces, Gromov products, hyperbolicity
//!   constants and Busemann estimates.
//! - [`io`]: the JSON file formats.

pub mod circle;
pub mod coarse;
pub mod cocycle;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod mobius;
pub mod rng;
pub mod words;

pub use circle::{BoundaryPoint, Configuration, Linking};
pub use cocycle::{AltCochain2, Cochain1, Cochain2, Cochain3, CrossRatioTable};
pub use error::{Error, Result};
pub use measure::RectMeasure;
pub use mobius::MobiusMap;
pub use words::GroupWord;

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Ordered 4-tuple of configuration labels.
pub type Quad = [usize; 4];

/// Ordered 3-tuple of configuration labels.
pub type Triple = [usize; 3];

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}
