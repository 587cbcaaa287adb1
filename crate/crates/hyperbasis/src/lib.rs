//! Harmonic analysis on the upper sheet of the two-sheeted hyperboloid
//! u0^2 - u1^2 - u2^2 = R^2, u0 >= R.
//!
//! The crate provides the normalized eigenfunctions of the Laplace-Beltrami
//! operator in six orthogonal coordinate systems (pseudo-spherical,
//! equidistant, horocyclic, semi-circular parabolic, elliptic parabolic,
//! hyperbolic parabolic), the expansion coefficients connecting them, the
//! large-radius contraction limits onto the Euclidean plane, and a
//! quadrature-based verification harness that certifies the identities
//! numerically.

pub mod bases;
pub mod charts;
pub mod contraction;
pub mod cspecfun;
pub mod error;
pub mod interbasis;
pub mod quad;
pub mod value;
pub mod verify;

pub use error::Error;
pub use value::{ComplexValue, ScaledComplex};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
