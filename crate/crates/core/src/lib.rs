//! φ-Selmer groups of the curves `y² = x³ + bx` over the Gaussian rationals.
//!
//! The pipeline factors `b` into primary primes, builds a ℤ/4-weighted graph
//! from quartic residue symbols, solves four affine systems over 𝔽₂ on a
//! modified Laplacian and filters the solutions by a residue test at `1+i`.
//! The [`oracle`] module recomputes the same groups without the graph.

pub mod error;
pub mod f2linalg;
pub mod gaussian;
pub mod graph;
pub mod oracle;
pub mod quartic;
pub mod residue_units;
pub mod selmer;
pub mod survey;

pub use error::{Error, Result};
pub use gaussian::{factor, GaussianInt, PrimaryFactorization};
pub use selmer::{compute_selmer_group, DivisorClass, SelmerGroup};

