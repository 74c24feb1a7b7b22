//! Exact and floating analysis of win-probability sequences of randomized
//! one-pile subtraction games: recurrence evaluation, characteristic
//! polynomial root structure, closed-form limit coefficients, convergence
//! classification, and scan harnesses over families of sets.

pub mod convergence;
pub mod error;
pub mod extensions;
pub mod parse;
pub mod poly;
pub mod recurrence;
pub mod report;
pub mod roots;
pub mod set;
pub mod vandermonde;

pub use error::{Error, Result};
pub use set::SubtractionSet;
