//! Exact polytope computations for toric Fano manifolds.
//!
//! Given the ray generators of a smooth complete fan, the crate decides
//!
//! * whether the manifold is Kähler–Einstein, via the barycenter of the
//!   anticanonical polytope,
//! * whether its automorphism group is reductive, via Demazure roots,
//! * whether a two-coupled Kähler–Einstein decomposition of the anticanonical
//!   class exists along a one-parameter deformation of the polytope.
//!
//! Every verdict is computed in exact rational arithmetic. Irrational
//! parameter values are carried as isolating intervals of an explicit
//! polynomial; decimals are only produced for presentation.

pub mod cke;
pub mod error;
pub mod exact;
pub mod fan;
pub mod fixtures;
pub mod parametric;
pub mod polytope;
pub mod report;

pub use error::{Error, Result};
pub use exact::{OpenInterval, Rational};
