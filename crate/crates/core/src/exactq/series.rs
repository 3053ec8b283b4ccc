//! Power series in one variable `z`, known modulo `z^(order+1)`.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::DegreePoly;
use super::rational::Rational;
use super::ExactError;

/// What a series' coefficients are.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    Rational,
    /// Polynomials in `r` degree symbols.
    Polynomial(usize),
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffKind::Rational => f.write_str("rational"),
            CoeffKind::Polynomial(r) => write!(f, "polynomial({r})"),
        }
    }
}

/// Coefficient ring of a [`TruncSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn kind(&self) -> CoeffKind;
    /// Zero of the same kind as `self`.
    fn zero_like(&self) -> Self;
    /// One of the same kind as `self`.
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, if `self` is a nonzero rational constant.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn kind(&self) -> CoeffKind {
        CoeffKind::Rational
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for DegreePoly {
    fn kind(&self) -> CoeffKind {
        CoeffKind::Polynomial(self.arity())
    }
    fn zero_like(&self) -> Self {
        DegreePoly::zero(self.arity())
    }
    fn one_like(&self) -> Self {
        DegreePoly::one(self.arity())
    }
    fn is_zero(&self) -> bool {
        DegreePoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DegreePoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        DegreePoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        DegreePoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        DegreePoly::neg(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| DegreePoly::constant(self.arity(), c.recip()))
    }
}

/// A power series truncated at `z^order`.
///
/// Binary operations require equal coefficient kinds and produce a result at
/// the smaller of the two orders.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Series with the given coefficients; `order = coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self, ExactError> {
        let first = coeffs.first().ok_or(ExactError::EmptySeries)?;
        let kind = first.kind();
        if let Some(c) = coeffs.iter().find(|c| c.kind() != kind) {
            return Err(ExactError::KindMismatch {
                left: kind,
                right: c.kind(),
            });
        }
        Ok(TruncSeries { coeffs })
    }

    /// Polynomial `coeffs` read as a series of the given order (zero padded or truncated).
    pub fn from_poly(mut coeffs: Vec<C>, order: usize) -> Result<Self, ExactError> {
        let zero = coeffs.first().ok_or(ExactError::EmptySeries)?.zero_like();
        coeffs.resize(order + 1, zero);
        TruncSeries::new(coeffs)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn kind(&self) -> CoeffKind {
        self.coeffs[0].kind()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// The `z^k` coefficient.
    pub fn coeff(&self, k: usize) -> Result<&C, ExactError> {
        self.coeffs.get(k).ok_or(ExactError::OutOfRange {
            index: k,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = (order + 1).min(self.coeffs.len());
        TruncSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    fn check_kind(&self, other: &Self) -> Result<(), ExactError> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            Err(ExactError::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_kind(other)?;
        let n = self.order().min(other.order()) + 1;
        let coeffs = self.coeffs[..n]
            .iter()
            .zip(&other.coeffs[..n])
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_kind(other)?;
        let n = self.order().min(other.order()) + 1;
        let coeffs = self.coeffs[..n]
            .iter()
            .zip(&other.coeffs[..n])
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(TruncSeries { coeffs })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_kind(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order().min(other.order()) + 1;
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        TruncSeries { coeffs }
    }

    /// Multiplicative inverse by the triangular recurrence
    /// `g_k = -g_0 * sum_{i=1..k} f_i g_{k-i}`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let g0 = self.coeffs[0].unit_inverse().ok_or(ExactError::NonUnit)?;
        let mut g: Vec<C> = Vec::with_capacity(self.coeffs.len());
        g.push(g0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = g0.zero_like();
            for i in 1..=k {
                let f = &self.coeffs[i];
                if !f.is_zero() {
                    acc = acc.add(&f.mul(&g[k - i]));
                }
            }
            g.push(acc.mul(&g0).neg());
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// Inverse via the geometric series `f^{-1} = f_0^{-1} * sum_k (1 - f/f_0)^k`.
    ///
    /// Slower than [`TruncSeries::inv`]; kept as an independent route.
    pub fn inv_geometric(&self) -> Result<Self, ExactError> {
        let f0_inv = self.coeffs[0].unit_inverse().ok_or(ExactError::NonUnit)?;
        let order = self.order();
        let normalized = self.scale(&f0_inv);
        let one = TruncSeries::constant(f0_inv.one_like(), order);
        let g = one.sub(&normalized)?;
        let mut sum = one.clone();
        let mut power = one;
        for _ in 1..=order {
            power = power.mul_unchecked(&g);
            sum = sum.add(&power)?;
        }
        Ok(sum.scale(&f0_inv))
    }

    /// `f^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = TruncSeries::constant(self.coeffs[0].one_like(), self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Substitutes `z -> c z`: coefficient `k` is multiplied by `c^k`.
    pub fn subst_scale(&self, c: &C) -> Result<Self, ExactError> {
        if c.kind() != self.kind() {
            return Err(ExactError::KindMismatch {
                left: self.kind(),
                right: c.kind(),
            });
        }
        let mut power = c.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.mul(&power));
            power = power.mul(c);
        }
        Ok(TruncSeries { coeffs })
    }

    /// Canonical text form: one coefficient string per power of `z`.
    pub fn to_text(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TruncSeries<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        TruncSeries::new(coeffs.iter().map(|&c| super::rational::rat(c)).collect())
            .expect("nonempty coefficient list")
    }

    /// The same series with coefficients viewed as constant polynomials in `arity` symbols.
    pub fn promote(&self, arity: usize) -> TruncSeries<DegreePoly> {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| DegreePoly::constant(arity, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `z -> c z` for a polynomial `c`, promoting the coefficient kind.
    pub fn subst_scale_poly(&self, c: &DegreePoly) -> TruncSeries<DegreePoly> {
        self.promote(c.arity())
            .subst_scale(c)
            .expect("promoted series has the arity of c")
    }
}
