//! Symbolic variational calculus on finite-order jet bundles.
//!
//! The crate is organized as a tower:
//!
//! * [`symkernel`]: exact-rational scalar expressions in canonical normal
//!   form over base coordinates, jet coordinates and named parameters;
//! * [`jetspace`]: multi-indices, bundle specifications, total derivatives,
//!   vector fields and their jet prolongations;
//! * [`calculus`]: differential forms in the contact basis `{dx, θ}` with
//!   the horizontal/vertical differentials and Cartan calculus;
//! * [`variational`]: Euler-Lagrange forms, momenta, Noether currents,
//!   Helmholtz conditions, second variations, Jacobi linearizations,
//!   gauge identities, reduced currents and superpotentials;
//! * [`dsl`]: a small text format for theories (bundle, metric, parameters,
//!   Lagrangians, vector fields, gauge generators) plus text/LaTeX/JSON
//!   printers.
//!
//! All identities are verified as exact symbolic equalities: coefficients are
//! arbitrary-precision rationals and expression equality is structural
//! equality of the canonical form.

pub mod calculus;
pub mod dsl;
pub mod error;
pub mod jetspace;
pub mod symkernel;
pub mod variational;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
