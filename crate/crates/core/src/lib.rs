//! Exact weighted Szegő projections of polynomials on planar ellipses,
//! polynomial Dirichlet solutions on ellipsoids, and a floating-point
//! boundary-quadrature harness that cross-checks both.
//!
//! The exact side works over the Gaussian rationals ([`GaussRat`]) with
//! sparse polynomials in `z, z̄` ([`PolyZZbar`]) or in `n` real variables
//! ([`PolyRealN`]). The numeric side ([`numerics`]) is independent of the
//! exact solvers and only consumes their outputs for comparison.

pub mod dirichlet;
pub mod error;
pub mod format;
pub mod gauss;
pub mod linalg;
pub mod numerics;
pub mod poly;
pub mod random;
pub mod suite;
pub mod szego;
pub mod tolerances;

pub use dirichlet::{harmonic_extension, is_harmonic, Ellipsoid, FischerSystem};
pub use error::{Error, Result};
pub use gauss::GaussRat;
pub use poly::{xy_to_zzbar, zzbar_to_xy, Monomial, PolyRealN, PolyZZbar, SparsePoly};
pub use szego::{
    kernel_membership, operator_a, szego_project, szego_project_with, verify_decomposition,
    DecompositionCertificate, Ellipse, EllipseJson, SolveStrategy, SzegoDecomposition,
};
