//! Exact computation of Hirzebruch L-classes and signatures.
//!
//! * [`exactq`]: rationals, polynomials in the degree symbols, truncated power series.
//! * [`charclass`]: L-classes and signatures of projective spaces and smooth
//!   complete intersections, with the positivity checks.
//! * [`hodge_oracle`]: hypersurface signatures from primitive Hodge numbers.
//! * [`singularities`]: spectral pairs of Brieskorn-Pham germs and the
//!   degree-zero corrections for hypersurfaces with isolated singularities.

pub mod charclass;
pub mod exactq;
pub mod hodge_oracle;
pub mod report;
pub mod singularities;

pub use exactq::{DegreePoly, Rational, TruncSeries};
