//! Exact coefficient arithmetic: rationals, a real quadratic field,
//! truncated univariate and bivariate series, and rational functions.

pub mod bivariate;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod rational_function;
pub mod series;

pub use bivariate::{BivariateSeries, QuadraticEquation, Term};
pub use poly::Polynomial;
pub use quadratic::{QuadraticNumber, QuadraticParts};
pub use rational::ExactRational;
pub use rational_function::{fit_rational, fit_with_denominator, RationalFunction, RationalFunctionParts, FIT_SAFETY_MARGIN};
pub use series::PowerSeries;
