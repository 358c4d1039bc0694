//! Exact computations for tensor product surfaces of bidegree (2,1).
//!
//! An ideal `I = <p0, p1, p2, p3>` of forms of bidegree (2,1) in
//! `k[s,t;u,v]` defines a rational map `P^1 x P^1 -> P^3`. This crate
//! computes bigraded syzygies and minimal free resolutions of `I`, sorts
//! basepoint-free ideals into their six classes, builds the implicit quartic
//! from the (1,1) syzygies, and cross-checks the classification through the
//! dual scroll. All arithmetic is exact over the rationals.

pub mod bipoly;
pub mod classify;
pub mod dualscroll;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod ideal;
pub mod implicitize;
pub mod parse;
pub mod resolution;
pub mod xpoly;

pub use bipoly::{BiDegree, BiMonomial, BiPoly};
pub use classify::{classify, SurfaceType, TypeReport};

pub use error::{Error, Result};
pub use exactla::{QMatrix, Scalar};
pub use ideal::Ideal;
pub use xpoly::XPoly;
