use lclass_core::charclass::{
    lclass_ci, lclass_pn, signature_ci, signature_poly, CompleteIntersectionSpec,
};
use lclass_core::exactq::{DegreePoly, Rational, TruncSeries};
use lclass_core::singularities::{
    bp_spectral_pairs, sector_table, sigma_table, ts_join, BpSpec, SpectralPairSet,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec(small_rational(), order + 1)
        .prop_map(|c| TruncSeries::new(c).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    (series(order), 1i64..=5, prop::bool::ANY).prop_map(|(s, c0, neg)| {
        let mut c = s.into_coeffs();
        c[0] = Rational::from_integer(BigInt::from(if neg { -c0 } else { c0 }));
        TruncSeries::new(c).unwrap()
    })
}

fn lowest_terms(q: &Rational) -> bool {
    q.numer().gcd(q.denom()).is_one() && q.denom() > &BigInt::from(0)
}

fn exponents() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(2u32..=6, 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in series(4), g in series(4), h in series(4)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        for c in f.mul(&g).unwrap().coeffs() {
            prop_assert!(lowest_terms(c));
        }
    }

    #[test]
    fn inverse_is_inverse(f in unit_series(6)) {
        let one = TruncSeries::constant(Rational::one(), 6);
        let inv = f.inv().unwrap();
        prop_assert_eq!(f.mul(&inv).unwrap(), one);
        prop_assert_eq!(inv, f.inv_geometric().unwrap());
    }

    #[test]
    fn pow_matches_repeated_mul(f in series(4), k in 0u64..=8) {
        let mut acc = TruncSeries::constant(Rational::one(), 4);
        for _ in 0..k {
            acc = acc.mul(&f).unwrap();
        }
        prop_assert_eq!(f.pow(k), acc);
    }

    #[test]
    fn subst_is_a_ring_homomorphism(f in series(4), g in series(4), c in small_rational()) {
        let lhs = f.mul(&g).unwrap().subst_scale(&c).unwrap();
        let rhs = f.subst_scale(&c).unwrap().mul(&g.subst_scale(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_subst_specializes(f in series(3), k in 1i64..=6) {
        // substituting d^2 then evaluating at d = k equals substituting k^2
        let d = DegreePoly::var(1, 0);
        let sym = f.subst_scale_poly(&d.mul(&d));
        let num = f.subst_scale(&Rational::from_integer(BigInt::from(k * k))).unwrap();
        for (a, b) in sym.coeffs().iter().zip(num.coeffs()) {
            prop_assert_eq!(&a.eval_integers(&[k]), b);
        }
    }

    #[test]
    fn milnor_number_and_symmetry(exps in exponents()) {
        let spec = BpSpec::new(exps).unwrap();
        let set = bp_spectral_pairs(&spec);
        prop_assert_eq!(set.milnor_number(), spec.milnor_number());
        prop_assert!(set.is_symmetric());
        let t = sector_table(&set);
        prop_assert_eq!(t.total_dim() as u64, spec.milnor_number());
        prop_assert_eq!(&t.primitive_unipotent, &t.unipotent);
        prop_assert_eq!(&t.primitive_nonunipotent, &t.nonunipotent);
        prop_assert!(t.check_structure().is_ok());
        let s = sigma_table(&t);
        for (j, (s1, sne1)) in s.entries() {
            if j % 2 != 0 {
                prop_assert_eq!((s1, sne1), (0, 0));
            }
        }
    }

    #[test]
    fn join_agrees_with_split_exponents(exps in prop::collection::vec(2u32..=5, 2..=4), cut in 1usize..=3) {
        let cut = cut.min(exps.len() - 1);
        let left = bp_spectral_pairs(&BpSpec::new(exps[..cut].to_vec()).unwrap());
        let right = bp_spectral_pairs(&BpSpec::new(exps[cut..].to_vec()).unwrap());
        let whole = bp_spectral_pairs(&BpSpec::new(exps.clone()).unwrap());
        prop_assert_eq!(ts_join(&left, &right).unwrap(), whole.clone());
        let ones: Vec<SpectralPairSet> =
            exps.iter().map(|&a| SpectralPairSet::one_variable(a).unwrap()).collect();
        let folded = ones[1..]
            .iter()
            .fold(ones[0].clone(), |acc, s| ts_join(&acc, s).unwrap());
        prop_assert_eq!(folded, whole);
    }

    #[test]
    fn join_is_associative(a in 2u32..=5, b in 2u32..=5, c in 2u32..=5) {
        let [x, y, z] = [a, b, c].map(|e| SpectralPairSet::one_variable(e).unwrap());
        let left = ts_join(&ts_join(&x, &y).unwrap(), &z).unwrap();
        let right = ts_join(&x, &ts_join(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn hyperplane_sections_are_projective_spaces() {
    for m in 0..=8 {
        for r in 1..=3 {
            let spec = CompleteIntersectionSpec::new(m, vec![1; r]).unwrap();
            assert_eq!(lclass_ci(&spec), lclass_pn(2 * m), "m={m} r={r}");
        }
    }
}

#[test]
fn every_lclass_starts_with_one() {
    for m in 0..=6 {
        for degrees in [vec![], vec![3], vec![2, 5]] {
            let l = lclass_ci(&CompleteIntersectionSpec::new(m, degrees).unwrap());
            assert!(l.values[0].is_one());
            assert_eq!(l.values.len(), m as usize + 1);
        }
    }
}

#[test]
fn polynomial_specialization_matches_signature() {
    for m in 1..=4 {
        let p1 = signature_poly(m, 1).unwrap();
        for d in 1..=9 {
            let spec = CompleteIntersectionSpec::new(m, vec![d]).unwrap();
            let sig = Rational::from_integer(signature_ci(&spec).unwrap());
            assert_eq!(p1.eval_integers(&[d as i64]), sig, "m={m} d={d}");
        }
        let p2 = signature_poly(m, 2).unwrap();
        for d1 in 1..=5 {
            for d2 in 1..=5 {
                let spec = CompleteIntersectionSpec::new(m, vec![d1, d2]).unwrap();
                let sig = Rational::from_integer(signature_ci(&spec).unwrap());
                assert_eq!(p2.eval_integers(&[d1 as i64, d2 as i64]), sig);
            }
        }
    }
}
