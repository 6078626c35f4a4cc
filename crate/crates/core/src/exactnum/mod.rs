//! Exact scalars: rationals, cyclotomic numbers and parameter polynomials.

pub mod cyclotomic;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod rational;

pub use cyclotomic::Cyclotomic;
pub use poly::ParamPolynomial;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),
    #[error("no value supplied for parameter `{0}`")]
    MissingVariable(String),
    #[error("integer {0} too large")]
    Overflow(String),
}
