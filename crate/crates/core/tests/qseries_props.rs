use crankforge::qseries::{overpartition_gf, partition_gf, phi, pochhammer};
use crankforge::{BigRational, PochhammerSpec, Series};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const ORDER: usize = 50;

fn series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((-20i64..=20, 1i64..=6), order + 1).prop_map(|v| {
        Series::from_coeffs(
            v.into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        )
    })
}

fn unit_series(order: usize) -> impl Strategy<Value = Series> {
    (series(order), 1i64..=5, any::<bool>()).prop_map(|(s, c, neg)| {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = BigRational::from_integer(if neg { -c } else { c }.into());
        Series::from_coeffs(coeffs)
    })
}

fn is_generalized_pentagonal(n: usize) -> bool {
    (0..).map(|k: i64| k * (3 * k - 1) / 2).take_while(|&p| p <= n as i64).any(|p| p == n as i64)
        || (1..).map(|k: i64| k * (3 * k + 1) / 2).take_while(|&p| p <= n as i64).any(|p| p == n as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_laws(a in series(ORDER), b in series(ORDER), c in series(ORDER)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &Series::one(ORDER), a.clone());
    }

    #[test]
    fn delta_q_is_a_derivation(a in series(ORDER), b in series(ORDER)) {
        let lhs = (&a * &b).delta_q();
        let rhs = &(&a.delta_q() * &b) + &(&a * &b.delta_q());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitute_then_extract(a in series(ORDER), d in 1usize..=5) {
        let back = a.substitute_power(d).extract_every(d);
        prop_assert_eq!(back.truncate(ORDER / d), a.truncate(ORDER / d));
    }

    #[test]
    fn inverse_is_two_sided(a in unit_series(30)) {
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, Series::one(30));
        prop_assert_eq!(&inv * &a, Series::one(30));
        prop_assert_eq!(inv.inverse().unwrap(), a);
    }

    #[test]
    fn mixed_orders_truncate(a in series(20), b in series(35)) {
        prop_assert_eq!((&a * &b).trunc_order(), 20);
        prop_assert_eq!((&a + &b).trunc_order(), 20);
    }
}

#[test]
fn pentagonal_pattern() {
    let e = pochhammer(&PochhammerSpec::euler(1), 300).unwrap();
    for (n, c) in e.coeffs().iter().enumerate() {
        if is_generalized_pentagonal(n) {
            assert!(c.abs().is_one(), "q^{n}: {c}");
        } else {
            assert!(c.is_zero(), "q^{n}: {c}");
        }
    }
}

#[test]
fn partitions_times_euler_is_one() {
    let prod = &partition_gf(200) * &pochhammer(&PochhammerSpec::euler(1), 200).unwrap();
    assert_eq!(prod, Series::one(200));
}

#[test]
fn distinct_parts_product() {
    let d = pochhammer(&PochhammerSpec::single_neg(1, 1), 3).unwrap();
    assert_eq!(d, Series::from_prefix(&[1, 1, 1, 2], 3));
}

#[test]
fn empty_product_is_one() {
    assert_eq!(pochhammer(&PochhammerSpec::new(vec![], 1), 10).unwrap(), Series::one(10));
}

#[test]
fn pbar_derivative_identity() {
    let pbar = overpartition_gf(200);
    let rhs = (&pbar * &(&phi(1, 1, 200) - &phi(1, 2, 200))).scale_int(2);
    assert_eq!(pbar.delta_q(), rhs);
}

#[test]
fn even_parts_generating_function() {
    // Counted directly: partitions of n into even parts, n <= 8.
    let counts = [1, 0, 1, 0, 2, 0, 3, 0, 5];
    assert_eq!(partition_gf(8).substitute_power(2), Series::from_prefix(&counts, 8));
}

#[test]
fn serde_round_trip() {
    let s = Series::from_coeffs(vec![
        BigRational::new(1.into(), 3.into()),
        BigRational::from_integer((-7).into()),
        BigRational::zero(),
    ]);
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(json, r#"{"trunc_order":2,"coeffs":["1/3","-7","0"]}"#);
    assert_eq!(serde_json::from_str::<Series>(&json).unwrap(), s);
    assert!(serde_json::from_str::<Series>(r#"{"trunc_order":3,"coeffs":["1"]}"#).is_err());
}
