use thiserror::Error;

use crate::family::FamilyId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("requested order {requested} exceeds available truncation {available}")]
    Truncation { requested: usize, available: usize },

    #[error("quotient is not a power series: valuation {numerator} of numerator is below valuation {denominator} of denominator")]
    NotAPowerSeries { numerator: usize, denominator: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("no rational function with numerator degree <= {num_deg} and denominator degree <= {den_deg} matches the series")]
    FitFailure { num_deg: usize, den_deg: usize },

    #[error("pole at {0}")]
    Pole(String),

    #[error("fixed-point iteration did not stabilise within {0} iterations")]
    NonConvergence(usize),

    #[error("{family} enumeration at size {requested} exceeds the budget of {ceiling}")]
    BudgetExceeded {
        family: FamilyId,
        requested: usize,
        ceiling: usize,
    },

    #[error("Bender's lemma does not apply: {0}")]
    LemmaInapplicable(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
