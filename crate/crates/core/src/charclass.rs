//! Hirzebruch L-classes of projective spaces and smooth complete intersections.
//!
//! Cohomology classes are written in the non-primitive part `Q[z]/(z^(m+1))`,
//! where `z = x^2` and `x` is the hyperplane class. The L-class of a smooth
//! complete intersection of multidegree `(d_1..d_r)` in `P^(2m+r)` is
//!
//! ```text
//! H(z)^(2m+r+1) * prod_i H(d_i^2 z)^(-1)  mod z^(m+1)
//! ```
//!
//! with `H(z) = sqrt(z)/tanh(sqrt(z))`, and the signature is the `z^m`
//! coefficient times the degree `d_1 * ... * d_r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::exactq::rational::{self, factorial, rat, Rational};
use crate::exactq::{Coeff, DegreePoly, Monomial, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("degree {0} is not positive")]
    InvalidDegree(i64),
    #[error("at least one degree is required")]
    NoDegrees,
    #[error("hypersurface dimension must be at least 1")]
    InvalidDimension,
    #[error("signature evaluated to the non-integer {0}")]
    NonIntegralSignature(String),
}

/// A smooth complete intersection `X` of dimension `2m` and multidegree
/// `(d_1..d_r)` in `P^(2m+r)`. An empty degree list means `P^(2m)` itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompleteIntersectionSpec {
    pub m: u32,
    pub degrees: Vec<u32>,
}

impl CompleteIntersectionSpec {
    pub fn new(m: u32, degrees: Vec<u32>) -> Result<Self, ClassError> {
        if let Some(&d) = degrees.iter().find(|&&d| d == 0) {
            return Err(ClassError::InvalidDegree(d as i64));
        }
        Ok(CompleteIntersectionSpec { m, degrees })
    }

    pub fn codim(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// Complex dimension `n = 2m`.
    pub fn dim(&self) -> u32 {
        2 * self.m
    }

    pub fn ambient_dim(&self) -> u32 {
        self.dim() + self.codim()
    }

    /// `d_1 * ... * d_r`.
    pub fn degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }
}

/// L-class coefficients in `Q[z]/(z^(m+1))`; entry `j` is `L^{2j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LClassVector<C = Rational> {
    pub m: usize,
    pub values: Vec<C>,
}

impl<C: Coeff> LClassVector<C> {
    fn from_series(s: TruncSeries<C>) -> Self {
        let m = s.order();
        LClassVector {
            m,
            values: s.into_coeffs(),
        }
    }

    pub fn top(&self) -> &C {
        &self.values[self.m]
    }

    pub fn to_text(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

/// `H(z) = (sum z^k/(2k)!) / (sum z^k/(2k+1)!)` modulo `z^(order+1)`.
pub fn hirzebruch_series(order: usize) -> TruncSeries<Rational> {
    let cosh: Vec<Rational> = (0..=order as u64).map(|k| factorial(2 * k).recip()).collect();
    let sinh: Vec<Rational> = (0..=order as u64)
        .map(|k| factorial(2 * k + 1).recip())
        .collect();
    let cosh = TruncSeries::new(cosh).expect("order + 1 coefficients");
    let sinh = TruncSeries::new(sinh).expect("order + 1 coefficients");
    let sinh_inv = sinh.inv().expect("constant term 1");
    cosh.mul(&sinh_inv).expect("same kind")
}

/// `H(z)^exponent * prod_i H(c_i z)^(-1)` at the given order.
fn ci_series<C: Coeff>(h: &TruncSeries<C>, exponent: u64, scales: &[C]) -> TruncSeries<C> {
    scales.iter().fold(h.pow(exponent), |acc, c| {
        let normal = h.subst_scale(c).expect("scale has the series kind");
        let inv = normal.inv().expect("constant term 1");
        acc.mul(&inv).expect("same kind")
    })
}

/// L-class of `P^n`: `H(z)^(n+1) mod z^(floor(n/2)+1)`.
pub fn lclass_pn(n: u32) -> LClassVector {
    let h = hirzebruch_series((n / 2) as usize);
    LClassVector::from_series(h.pow(n as u64 + 1))
}

/// L-class of a smooth complete intersection.
pub fn lclass_ci(spec: &CompleteIntersectionSpec) -> LClassVector {
    let h = hirzebruch_series(spec.m as usize);
    let scales: Vec<Rational> = spec.degrees.iter().map(|&d| rat(d as i64 * d as i64)).collect();
    LClassVector::from_series(ci_series(&h, spec.ambient_dim() as u64 + 1, &scales))
}

/// L-class of a complete intersection with `r` symbolic degrees `d1..dr`.
pub fn lclass_ci_symbolic(m: u32, r: usize) -> LClassVector<DegreePoly> {
    let h = hirzebruch_series(m as usize).promote(r);
    let scales: Vec<DegreePoly> = (0..r)
        .map(|i| {
            let d = DegreePoly::var(r, i);
            d.mul(&d)
        })
        .collect();
    LClassVector::from_series(ci_series(&h, (2 * m as usize + r) as u64 + 1, &scales))
}

/// Signature of a smooth complete intersection. Always an integer.
pub fn signature_ci(spec: &CompleteIntersectionSpec) -> Result<BigInt, ClassError> {
    let l = lclass_ci(spec);
    let value = l.top() * Rational::from_integer(spec.degree());
    rational::as_integer(&value)
        .ok_or_else(|| ClassError::NonIntegralSignature(rational::to_text(&value)))
}

/// The signature as a polynomial in the degrees `d1..dr`.
pub fn signature_poly(m: u32, r: usize) -> Result<DegreePoly, ClassError> {
    if r == 0 {
        return Err(ClassError::NoDegrees);
    }
    let l = lclass_ci_symbolic(m, r);
    let degree = DegreePoly::from_terms(r, [(vec![1; r], Rational::one())]);
    Ok(l.top().mul(&degree))
}

/// The quotient `signature_poly / (d1...dr)`, which is a polynomial in the squares `d_i^2`.
pub fn signature_poly_reduced(m: u32, r: usize) -> Result<DegreePoly, ClassError> {
    let p = signature_poly(m, r)?;
    Ok(p
        .div_monomial(&Monomial::new(vec![1; r]))
        .expect("signature polynomial is divisible by the degree"))
}

/// Images of the L-class components `L_j(Z)` of a smooth degree-`d` hypersurface
/// `Z` in `P^(n+1)`, pushed into `H_{2j}(P^(n+1), Q) = Q`.
///
/// Entry `j` is `d * [z^((n-j)/2)] H(z)^(n+2) H(d^2 z)^(-1)` when `n - j` is even
/// and zero otherwise.
pub fn lclass_hypersurface_pushforward(n: u32, d: u32) -> Result<BTreeMap<u32, Rational>, ClassError> {
    if n == 0 {
        return Err(ClassError::InvalidDimension);
    }
    if d == 0 {
        return Err(ClassError::InvalidDegree(0));
    }
    let h = hirzebruch_series((n / 2) as usize);
    let s = ci_series(&h, n as u64 + 2, &[rat(d as i64 * d as i64)]);
    let degree = rat(d as i64);
    Ok((0..=n)
        .map(|j| {
            let v = if (n - j) % 2 == 0 {
                s.coeffs()[((n - j) / 2) as usize].clone() * &degree
            } else {
                rat(0)
            };
            (j, v)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conjecture {
    /// `L^{2j}(P^n) > 0`.
    ProjectivePositivity,
    /// `(-1)^j L^{2j}(X) > 0` for complete intersections.
    AlternatingPositivity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientCheck {
    pub j: usize,
    pub coefficient: Rational,
    pub holds: bool,
}

/// Outcome of a positivity check on one L-class.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub spec: CompleteIntersectionSpec,
    pub checks: Vec<CoefficientCheck>,
    /// `sum d_i >= n + r`; only recorded, never enforced. `None` for `P^n`.
    pub side_condition: Option<bool>,
}

impl ConjectureReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&CoefficientCheck> {
        self.checks.iter().find(|c| !c.holds)
    }
}

/// Checks that every coefficient of the L-class of `P^(2m)` is positive.
pub fn check_conjecture_27(m: u32) -> ConjectureReport {
    let l = lclass_pn(2 * m);
    let checks = l
        .values
        .into_iter()
        .enumerate()
        .map(|(j, c)| CoefficientCheck {
            j,
            holds: c.is_positive(),
            coefficient: c,
        })
        .collect();
    ConjectureReport {
        conjecture: Conjecture::ProjectivePositivity,
        spec: CompleteIntersectionSpec { m, degrees: vec![] },
        checks,
        side_condition: None,
    }
}

/// Checks `(-1)^j L^{2j}(X) > 0` for a complete intersection of positive codimension.
pub fn check_conjecture_211(spec: &CompleteIntersectionSpec) -> Result<ConjectureReport, ClassError> {
    if spec.degrees.is_empty() {
        return Err(ClassError::NoDegrees);
    }
    let l = lclass_ci(spec);
    let checks = l
        .values
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let signed = if j % 2 == 0 { c.clone() } else { -c.clone() };
            CoefficientCheck {
                j,
                holds: signed.is_positive(),
                coefficient: c,
            }
        })
        .collect();
    let degree_sum: u64 = spec.degrees.iter().map(|&d| d as u64).sum();
    Ok(ConjectureReport {
        conjecture: Conjecture::AlternatingPositivity,
        spec: spec.clone(),
        checks,
        side_condition: Some(degree_sum >= (spec.dim() + spec.codim()) as u64),
    })
}
