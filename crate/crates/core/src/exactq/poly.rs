//! Multivariate polynomials over the rationals in the degree symbols `d1..dr`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{rat, Rational};

/// Exponent vector of a monomial `d1^e1 ... dr^er`.
///
/// Ordered by total degree first, then lexicographically on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `arity` degree symbols with rational coefficients.
///
/// Zero coefficients are never stored. With `arity == 0` the polynomial is a
/// plain rational constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePoly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl DegreePoly {
    pub fn zero(arity: usize) -> Self {
        DegreePoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = DegreePoly::zero(arity);
        p.add_term(Monomial::one(arity), c);
        p
    }

    pub fn one(arity: usize) -> Self {
        DegreePoly::constant(arity, Rational::one())
    }

    /// The degree symbol `d_{index+1}`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[index] = 1;
        let mut p = DegreePoly::zero(arity);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = DegreePoly::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector has wrong length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// The rational value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::total_degree)
    }

    pub fn add(&self, other: &DegreePoly) -> DegreePoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DegreePoly {
        DegreePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &DegreePoly) -> DegreePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &DegreePoly) -> DegreePoly {
        debug_assert_eq!(self.arity, other.arity);
        let mut out = DegreePoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> DegreePoly {
        if c.is_zero() {
            return DegreePoly::zero(self.arity);
        }
        DegreePoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> DegreePoly {
        let mut acc = DegreePoly::one(self.arity);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at the given values of `d1..dr`.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                term *= num_traits::pow(x.clone(), e as usize);
            }
            total += term;
        }
        total
    }

    pub fn eval_integers(&self, point: &[i64]) -> Rational {
        let pt: Vec<Rational> = point.iter().map(|&v| rat(v)).collect();
        self.eval(&pt)
    }

    /// Exact quotient by a monomial, or `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<DegreePoly> {
        let mut out = DegreePoly::zero(self.arity);
        for (t, c) in &self.terms {
            out.terms.insert(t.checked_div(m)?, c.clone());
        }
        Some(out)
    }

    fn symbol(&self, i: usize) -> String {
        if self.arity == 1 {
            "d".to_string()
        } else {
            format!("d{}", i + 1)
        }
    }
}

/// Canonical text: terms from highest to lowest in the monomial order,
/// e.g. `-1/3*d^3+4/3*d`.
impl fmt::Display for DegreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.symbol(i)),
                    _ => factors.push(format!("{}^{}", self.symbol(i), e)),
                }
            }
            let sign = if c.is_negative() { "-" } else if pos > 0 { "+" } else { "" };
            let mag = c.abs();
            f.write_str(sign)?;
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rational::ratio;

    fn d() -> DegreePoly {
        DegreePoly::var(1, 0)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = d().sub(&d());
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn arity_zero_is_a_constant() {
        let p = DegreePoly::constant(0, ratio(3, 4));
        assert_eq!(p.as_constant(), Some(ratio(3, 4)));
        assert_eq!(p.mul(&p).as_constant(), Some(ratio(9, 16)));
        assert_eq!(p.eval(&[]), ratio(3, 4));
    }

    #[test]
    fn display_is_canonical() {
        // -(1/3) d (d^2 - 4)
        let p = d().pow(3).scale(&ratio(-1, 3)).add(&d().scale(&ratio(4, 3)));
        assert_eq!(p.to_string(), "-1/3*d^3+4/3*d");
        let q = DegreePoly::var(2, 0)
            .mul(&DegreePoly::var(2, 1))
            .add(&DegreePoly::constant(2, rat(-2)));
        assert_eq!(q.to_string(), "d1*d2-2");
    }

    #[test]
    fn monomial_order_is_degree_then_lex() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![0, 3]);
        let c = Monomial::new(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn eval_and_divide() {
        let p = d().pow(3).sub(&d().scale(&rat(4)));
        assert_eq!(p.eval_integers(&[4]), rat(48));
        let q = p.div_monomial(&Monomial::new(vec![1])).unwrap();
        assert_eq!(q.to_string(), "d^2-4");
        assert!(q.div_monomial(&Monomial::new(vec![1])).is_none());
    }
}
