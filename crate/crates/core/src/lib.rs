//! Classification of planar quadratic bifurcation problems and reduction
//! of spherical-harmonic self-interactions onto two-dimensional fixed-point
//! subspaces.
//!
//! The `planar` module classifies systems
//!
//! ```text
//! 0 = mu x + a x^2 + b x y + c y^2
//! 0 = mu y + p x^2 + q x y + r y^2
//! ```
//!
//! into five phase portraits via three invariants. The `o3` module builds
//! the quadratic equivariant on the degree-`l` spherical harmonics,
//! restricts it to the two-dimensional fixed-point subspace of the
//! octahedral (or icosahedral) rotation group, and extracts the planar
//! coefficients in exact arithmetic. `portrait` renders phase portraits,
//! and `verify` packages the self-checks the command line exposes.

pub mod exact;
pub mod o3;
pub mod planar;
pub mod portrait;
pub mod verify;
