//! Exact rational arithmetic, polynomials in degree symbols, and truncated power series.

pub mod poly;
pub mod rational;
pub mod series;

pub use poly::{DegreePoly, Monomial};
pub use rational::Rational;
pub use series::{Coeff, CoeffKind, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("coefficient kinds differ: {left} vs {right}")]
    KindMismatch { left: CoeffKind, right: CoeffKind },
    #[error("constant term is not invertible")]
    NonUnit,
    #[error("coefficient z^{index} requested from a series of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("a series needs at least one coefficient")]
    EmptySeries,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
