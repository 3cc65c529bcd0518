//! Exact verification engine for the spectral theory of modified Kac
//! matrices and the mean-curvature geometry of parallel hypersurfaces in
//! product space forms.
//!
//! The crate is organized bottom-up:
//!
//! - [`exact`]: rationals, sparse multivariate polynomials, quadratic
//!   extensions, polynomial matrices, fraction-free determinants, exact
//!   linear solves.
//! - [`kac`]: modified Kac matrices, their Kronecker sums, spectra,
//!   eigenvectors, and power identities.
//! - [`csbasis`]: the function algebra generated by generalized sine and
//!   cosine solutions of f'' = tau f, with exact differentiation and graded
//!   projection.
//! - [`jacobi`]: the solution matrix of the parallel-hypersurface Jacobi
//!   system, its determinant expansion, and the first-order recurrence on
//!   graded coefficient vectors.
//! - [`linsys`]: the structured linear systems tying mean-curvature
//!   coefficient data to initial shape data, with exact singularity, rank,
//!   independence, and recovery checks.
//! - [`geometry`]: floating-point curvature computations for parallel
//!   hypersurfaces in products of space forms.
//! - [`suite`]: orchestration that runs the verification battery and emits
//!   machine-readable reports.

pub mod csbasis;
pub mod exact;
pub mod geometry;
pub mod jacobi;
pub mod kac;
pub mod linsys;
pub mod suite;
