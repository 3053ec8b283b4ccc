//! Signatures of smooth projective hypersurfaces from Hodge theory.
//!
//! Two routes independent of the L-class computation: primitive Hodge numbers
//! from the graded Jacobian ring of the Fermat hypersurface, and a generating
//! function for the same numbers in one variable `t`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::exactq::rational::{self, rat, Rational};
use crate::exactq::TruncSeries;

/// Primitive middle Hodge numbers `h^{n-q,q}_prim`, `q = 0..=n`, of a smooth
/// hypersurface of dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeNumbers {
    pub n: u32,
    pub primitive: Vec<BigInt>,
}

impl HodgeNumbers {
    pub fn is_symmetric(&self) -> bool {
        self.primitive.iter().eq(self.primitive.iter().rev())
    }

    pub fn total(&self) -> BigInt {
        self.primitive.iter().sum()
    }
}

/// Number of vectors in `[0, bound]^len` with coordinate sum `target`.
fn bounded_compositions(len: usize, bound: u32, target: i64) -> BigInt {
    if target < 0 {
        return BigInt::zero();
    }
    let target = target as usize;
    let bound = bound as usize;
    // ways[s] = number of prefixes with sum s
    let mut ways = vec![BigInt::zero(); target + 1];
    ways[0] = BigInt::one();
    for _ in 0..len {
        let mut next = vec![BigInt::zero(); target + 1];
        for (s, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for e in 0..=bound.min(target - s) {
                next[s + e] += w;
            }
        }
        ways = next;
    }
    ways.swap_remove(target)
}

/// Primitive Hodge numbers of a smooth degree-`d` hypersurface in `P^(n+1)`.
///
/// `h^{n-q,q}_prim` is the dimension of the degree `(q+1)d - n - 2` part of the
/// Jacobian ring of `sum y_i^d`, i.e. the number of exponent vectors in
/// `[0, d-2]^(n+2)` with that sum.
pub fn hodge_numbers_hypersurface(n: u32, d: u32) -> HodgeNumbers {
    let primitive = (0..=n)
        .map(|q| {
            if d < 2 {
                return BigInt::zero();
            }
            let target = (q as i64 + 1) * d as i64 - n as i64 - 2;
            bounded_compositions(n as usize + 2, d - 2, target)
        })
        .collect();
    HodgeNumbers { n, primitive }
}

/// Signature of a smooth degree-`d` hypersurface of dimension `2m` by the
/// Hodge index theorem: `1 + sum_q (-1)^q h^{2m-q,q}_prim`.
pub fn signature_hodge_index(m: u32, d: u32) -> BigInt {
    let h = hodge_numbers_hypersurface(2 * m, d);
    h.primitive
        .iter()
        .enumerate()
        .fold(BigInt::one(), |acc, (q, v)| if q % 2 == 0 { acc + v } else { acc - v })
}

/// Signature of a smooth degree-`d` hypersurface of dimension `2m` from the
/// generating function
///
/// ```text
/// Q = (t^d - t)^N (t - 1)^(-N),  N = 2m + 2,  U = -t^d,  R = sum_{j<m} U^j
/// B = (-1)^m [t^e] Q (1 + 2 U R) + 1,  e = (m + 1) d
/// ```
///
/// `Q` is the Hilbert series of the Fermat Jacobian ring shifted by `t^N`.
pub fn signature_genfun(m: u32, d: u32) -> BigInt {
    let n_vars = 2 * m as usize + 2;
    let e = (m as usize + 1) * d as usize;

    // (t^d - t)^N as a truncated series.
    let mut base = vec![rat(0); e + 1];
    if d as usize <= e {
        base[d as usize] += rat(1);
    }
    if e >= 1 {
        base[1] -= rat(1);
    }
    let numerator = TruncSeries::new(base).expect("nonempty").pow(n_vars as u64);

    // (t - 1)^(-N) = (-1)^N sum_k C(N-1+k, k) t^k.
    let sign = if n_vars % 2 == 0 { rat(1) } else { rat(-1) };
    let denominator_inv = TruncSeries::new(
        (0..=e)
            .map(|k| Rational::from_integer(binomial(BigInt::from(n_vars - 1 + k), BigInt::from(k))) * &sign)
            .collect(),
    )
    .expect("nonempty");
    let q = numerator.mul(&denominator_inv).expect("rational series");

    let mut u = vec![rat(0); e + 1];
    if d as usize <= e {
        u[d as usize] = rat(-1);
    }
    let u = TruncSeries::new(u).expect("nonempty");
    let mut r = TruncSeries::constant(rat(0), e);
    let mut u_pow = TruncSeries::constant(rat(1), e);
    for _ in 0..m {
        r = r.add(&u_pow).expect("rational series");
        u_pow = u_pow.mul(&u).expect("rational series");
    }
    let two_ur = u.mul(&r).expect("rational series").scale(&rat(2));
    let factor = TruncSeries::constant(rat(1), e).add(&two_ur).expect("rational series");

    let coefficient = q.mul(&factor).expect("rational series").coeffs()[e].clone();
    let signed = if m % 2 == 0 { coefficient } else { -coefficient };
    rational::as_integer(&(signed + rat(1))).expect("generating-function coefficients are integers")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Brute-force enumeration of exponent vectors.
    fn count_brute(len: usize, bound: u32, target: i64) -> u64 {
        let mut count = 0;
        let mut v = vec![0u32; len];
        loop {
            if v.iter().map(|&x| x as i64).sum::<i64>() == target {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == len {
                    return count;
                }
                if v[i] < bound {
                    v[i] += 1;
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn compositions_match_enumeration() {
        for len in 1..5 {
            for bound in 0..4 {
                for target in -1..12 {
                    assert_eq!(
                        bounded_compositions(len, bound, target),
                        BigInt::from(count_brute(len, bound, target)),
                        "{len} {bound} {target}"
                    );
                }
            }
        }
    }

    #[test]
    fn hodge_number_examples() {
        assert_eq!(hodge_numbers_hypersurface(2, 4).primitive, big(&[1, 19, 1]));
        assert_eq!(hodge_numbers_hypersurface(2, 1).primitive, big(&[0, 0, 0]));
        assert_eq!(hodge_numbers_hypersurface(2, 3).primitive, big(&[0, 6, 0]));
        // quintic threefold: h^{2,1} = 101
        assert_eq!(hodge_numbers_hypersurface(3, 5).primitive, big(&[1, 101, 101, 1]));
    }

    #[test]
    fn hodge_index_examples() {
        assert_eq!(signature_hodge_index(1, 4), BigInt::from(-16));
        assert_eq!(signature_hodge_index(1, 1), BigInt::from(1));
        assert_eq!(signature_hodge_index(2, 3), BigInt::from(19));
    }

    #[test]
    fn genfun_examples() {
        assert_eq!(signature_genfun(1, 4), BigInt::from(-16));
        assert_eq!(signature_genfun(1, 1), BigInt::from(1));
        // -(1/315) d (d^2-4)(17d^4-44d^2+132) at d = 5
        assert_eq!(signature_genfun(3, 5), BigInt::from(-3219));
    }

    #[test]
    fn negative_binomial_matches_series_inverse() {
        let n = 6;
        let order = 15;
        let mut t_minus_one = vec![rat(-1), rat(1)];
        t_minus_one.resize(order + 1, rat(0));
        let inv = TruncSeries::new(t_minus_one).unwrap().pow(n).inv().unwrap();
        for (k, c) in inv.coeffs().iter().enumerate() {
            let expected = binomial(BigInt::from(n as usize - 1 + k), BigInt::from(k));
            assert_eq!(c, &Rational::from_integer(expected));
        }
    }

    #[test]
    fn hodge_symmetry_and_monotonicity() {
        for m in 1..=4 {
            let mut last = BigInt::zero();
            for d in 1..=8 {
                let h = hodge_numbers_hypersurface(2 * m, d);
                assert!(h.is_symmetric(), "{h:?}");
                assert!(h.total() >= last);
                last = h.total();
            }
        }
    }
}
