//! Multiple zeta values, their level-two relatives (t, T, S, mixed values),
//! Kaneko-Yamamoto type convolutions, labeled-poset iterated integrals and a
//! registry of integral identities checked numerically.

pub mod closed_forms;
pub mod composition;
pub mod convolution;
pub mod error;
pub mod harmonic;
pub mod nested;
pub mod poset;
pub mod quadrature;
pub mod registry;
pub mod real;
pub mod series;
pub mod symbolic;
pub mod values;

pub use composition::{Admissibility, Composition};
pub use error::{Error, Result};
pub use real::ApproxReal;
