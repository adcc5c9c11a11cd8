//! Hypergeometric monodromy groups in `Sp4(R)` and `SO(2,3)`.
//!
//! The crate builds Levelt and reflection matrices from exponent data,
//! decides which parameters give "good" (assumption A) or maximal
//! (assumption B) local systems, and then runs the numerical side:
//! word balls, Cartan projections, limit curves, log-Anosov certificates
//! and Lyapunov exponents along the geodesic flow of the base orbifold.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fuchsian;
pub mod hyperparams;
pub mod lie;
pub mod linalg;
pub mod monodromy;
pub mod symplectic;

pub use error::{Error, Result};
pub use hyperparams::{Exponent, HypergeomParams};
pub use monodromy::MonodromyRep;
