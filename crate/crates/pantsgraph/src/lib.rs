//! Exact combinatorics of pants graphs of punctured spheres.
//!
//! The crate models isotopy classes of multicurves on S_{0,n} in normal
//! coordinates over a fixed ideal triangulation, computes geometric
//! intersection numbers and Dehn twists exactly, and builds on that the
//! pants graph P(S), the diagonal pants graph DP(S) and the cubical pants
//! graph CP(S), their strata, subsurface projections to complexity-1 pieces,
//! path shadowing, flat lattice embeddings, and generators for infinite
//! geodesic families.  All arithmetic is exact; there is no floating point
//! anywhere in the library.

pub mod error;
pub mod farey;
pub mod surface;

pub use error::{Error, Result};

/// Slopes with machine-word scalars; the default throughout the crate.
pub type Slope = farey::Slope<i64>;
/// Slopes with arbitrary-precision scalars, for callers that need headroom.
pub type BigSlope = farey::Slope<num_bigint::BigInt>;
/// Unimodular matrices acting on [`Slope`].
pub type SlopeMatrix = farey::SlopeMatrix<i64>;
