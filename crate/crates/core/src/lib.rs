//! Minimization and maximization of real quadratic forms over `{-1, +1}^n`
//! and Hermitian forms over `{±1 ± j}^n` with Hopfield-style signum
//! dynamics, plus exhaustive oracles for small instances.
//!
//! The crate is organized by role:
//!
//! - [`hypercube`]: vertex types, `sgn`/`csgn`, Gray-code enumeration.
//! - [`matrix`] and [`forms`]: dense matrices, symmetric/skew split, hollow
//!   reduction, form evaluation.
//! - [`network`] and [`stability`]: `(W, T)` networks and the stable,
//!   anti-stable and first-order minimality predicates.
//! - [`dynamics`]: serial and fully parallel updates with energy tracking.
//! - [`synthesis`]: weight matrices that store orthogonal patterns.
//! - [`augment`]: threshold elimination with a clamped dummy node.
//! - [`toeplitz`]: structured Toeplitz form evaluation.
//! - [`oracle`]: brute-force extrema, minimality verification, corner
//!   positivity and state censuses.
//! - [`instances`]: seeded random instance generators.

pub mod augment;
pub mod dynamics;
pub mod error;
pub mod forms;
pub mod hypercube;
pub mod instances;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod stability;
pub mod synthesis;
pub mod toeplitz;

pub use error::{Error, Result};
pub use hypercube::{csgn, sgn, Flavor, QSpin, QSpinVector, SpinVector, State};
pub use matrix::SquareMatrix;
pub use network::Network;
