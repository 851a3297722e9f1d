pub mod bell;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod opr;
pub mod reductions;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};

/// Scalar used by the concrete aliases below and by the CLI.
pub type Scalar = f64;
pub type Opr = opr::Opr<Scalar>;
pub type Matrix = linalg::Matrix<Scalar>;
pub type SeesawOutcome = opr::seesaw::SeesawOutcome<Scalar>;
pub type Substitution = opr::substitution::Substitution<Scalar>;
