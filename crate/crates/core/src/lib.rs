//! Quandle 2-cocycle state-sum invariants of classical and virtual links.

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod moves;
pub mod solver;
pub mod weights;

pub use algebra::{map_order, FiniteQuandle, QuandleMap, QuandleSpec, QuandleValidation};
pub use error::{Error, Result};
pub use exec::Execution;
pub use weights::{
    Cochain1, CocycleSpec, CocycleValidation, Cocycle2, CoefficientGroup, Weight, WeightPolynomial,
};
