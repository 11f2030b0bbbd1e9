use std::collections::BTreeMap;

use crankforge::combinatorics::crank_table_bruteforce;
use crankforge::quasimod::{
    bernoulli, certify_theorem, eisenstein, find_representation, solve_in_span, spanning_set,
    theorem_target, verify_e2_derivative, verify_lifting, ExpansionCache, Generator, SolveOptions,
};
use crankforge::qseries::{overpartition_gf, phi};
use crankforge::{BigInt, BigRational, CrankConvention, ModularForm, QMonomial, QuasimodError, Series};
use num_traits::{One, Zero};
use proptest::prelude::*;

type Poly = BTreeMap<Vec<u32>, i64>;

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Moments of `(q;q)^2 / ((zq;q)(q/z;q))` at `z = e^x` as polynomials in
/// `Phi_1, Phi_3, ..., Phi_{2j-1}`. The logarithm has even cumulants
/// `kappa_{2s} = 2 Phi_{2s-1}` and no odd ones.
fn cumulant_moments(j: u32) -> Poly {
    let width = j as usize;
    let kappa = |m: u32| -> Poly {
        let mut p = Poly::new();
        if m % 2 == 0 {
            let mut e = vec![0; width];
            e[(m / 2 - 1) as usize] = 1;
            p.insert(e, 2);
        }
        p
    };
    let mut mu: Vec<Poly> = vec![Poly::from([(vec![0; width], 1)])];
    for n in 1..=2 * j {
        let mut acc = Poly::new();
        for m in 1..=n {
            let term = poly_mul(&kappa(m), &mu[(n - m) as usize]);
            for (e, c) in term {
                *acc.entry(e).or_default() += binomial(n - 1, m - 1) * c;
            }
        }
        acc.retain(|_, c| *c != 0);
        mu.push(acc);
    }
    mu.pop().unwrap()
}

fn key(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[test]
fn representation_matches_cumulant_oracle() {
    for j in 1..=3 {
        let expected: BTreeMap<String, BigInt> = cumulant_moments(j)
            .into_iter()
            .map(|(e, c)| (key(&e), BigInt::from(c / 2)))
            .collect();
        for k in 1..=3 {
            let rep = find_representation(k, j, 200).unwrap();
            let got: BTreeMap<String, BigInt> =
                rep.keyed().into_iter().filter(|(_, a)| !a.is_zero()).collect();
            assert_eq!(got, expected, "k = {k}, j = {j}");
        }
    }
    let rep = find_representation(2, 1, 200).unwrap();
    assert_eq!(rep.keyed(), BTreeMap::from([("(1)".to_string(), BigInt::one())]));
}

#[test]
fn representation_reproduces_brute_force_moments() {
    for (k, j) in [(1, 2), (2, 3), (3, 2)] {
        let rep = find_representation(k, j, 200).unwrap();
        let twice_pbar = overpartition_gf(20).scale_int(2);
        let rebuilt = &rep.certificate.combination().truncate(20) * &twice_pbar;
        let table = crank_table_bruteforce(k, 20, CrankConvention::GeneratingFunction).unwrap();
        for n in 0..=20 {
            assert_eq!(
                rebuilt.coeff(n),
                &BigRational::from_integer(table.moment(2 * j, n)),
                "k = {k}, j = {j}, n = {n}"
            );
        }
    }
}

#[test]
fn second_moment_over_phi1_alone() {
    let span = [QMonomial::new([(Generator::Phi { index: 1, dilation: 1 }, 1)])];
    let target = &crankforge::cranks::moment_series(1, 2, 200).series
        * &overpartition_gf(200).scale_int(2).inverse().unwrap();
    let cert = solve_in_span(&target, &span, 200, SolveOptions::default()).unwrap();
    assert_eq!(cert.coordinates, [BigRational::one()]);
    assert!(cert.verify(&target));
}

#[test]
fn theorem_instances_certify() {
    for k in 1..=3 {
        for l in 1..=2 {
            for j in 1..=l {
                for m in 0..=(l - j) {
                    let cert = certify_theorem(k, j, m, l, 200).unwrap();
                    let target = theorem_target(k, j, m, 200);
                    assert!(cert.verify(&target), "k = {k}, j = {j}, m = {m}, l = {l}");
                    assert!(cert.combination().coeff(0).is_zero());
                    assert_eq!(cert.residual_order, 200);
                }
            }
        }
    }
    let cert = certify_theorem(1, 1, 0, 1, 200).unwrap();
    let support: Vec<String> = cert.support().iter().map(|(m, _)| m.to_string()).collect();
    assert_eq!(support, ["Phi1(q)"]);
}

#[test]
fn certify_rejects_bad_indices() {
    assert!(matches!(
        certify_theorem(1, 2, 3, 2, 200),
        Err(QuasimodError::PreconditionViolated(_))
    ));
    assert!(find_representation(1, 0, 200).is_err());
}

#[test]
fn derivative_closure() {
    for level in 1..=2 {
        for l in 0..=2 {
            let mut cache = ExpansionCache::new(200);
            let bigger = spanning_set(level, l + 1, false);
            for m in spanning_set(level, l, false) {
                let target = m.expand(&mut cache).delta_q();
                let cert = solve_in_span(&target, &bigger, 200, SolveOptions::default())
                    .unwrap_or_else(|e| panic!("delta_q({m}) at level {level}: {e}"));
                assert!(cert.verify(&target));
                assert!(cert.combination().coeff(0).is_zero());
            }
        }
    }
}

#[test]
fn lifting_examples() {
    let e = |w: u32, d: u32| QMonomial::new([(Generator::Eisenstein { weight: w, dilation: d }, 1)]);
    let lift4 = verify_lifting(&ModularForm::eisenstein(4, 1, 200), 200);
    assert_eq!(lift4, eisenstein(6, 1, 200).scale_int(-4));
    let lift6 = verify_lifting(&ModularForm::eisenstein(6, 1, 200), 200);
    assert_eq!(lift6, eisenstein(4, 1, 200).pow(2).scale_int(-6));
    let one = ModularForm { series: Series::one(50), weight: 0, level: 1 };
    assert!(verify_lifting(&one, 50).is_zero());

    // A level-two form lifts into the span of E6(q) and E6(q^2).
    let lift = verify_lifting(&ModularForm::eisenstein(4, 2, 200), 200);
    let cert = solve_in_span(&lift, &[e(6, 1), e(6, 2)], 200, SolveOptions::default()).unwrap();
    assert!(cert.verify(&lift));
}

#[test]
fn eisenstein_normalization() {
    for (w, c) in [(2, -24), (4, 240), (6, -504), (8, 480)] {
        assert_eq!(eisenstein(w, 1, 3).coeff(1), &BigRational::from_integer(c.into()));
        let b = bernoulli(w as usize);
        assert_eq!(BigRational::from_integer((-2 * w as i64).into()) / b, BigRational::from_integer(c.into()));
    }
    assert_eq!(eisenstein(4, 1, 50), &Series::one(50) + &phi(3, 1, 50).scale_int(240));
}

#[test]
fn bernoulli_recurrence() {
    for n in 1..=20usize {
        let mut acc = BigRational::zero();
        let mut c = BigInt::one();
        for j in 0..=n {
            acc += bernoulli(j) * BigRational::from_integer(c.clone());
            c = c * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        assert!(acc.is_zero(), "n = {n}");
    }
}

#[test]
fn e2_derivative_through_500() {
    assert!(verify_e2_derivative(500));
}

#[test]
fn solver_errors() {
    let span = spanning_set(1, 1, false);
    let phi3 = phi(3, 1, 200);
    assert_eq!(
        solve_in_span(&phi3, &span, 200, SolveOptions::default()),
        Err(QuasimodError::NoSolutionWithinTruncation { first_failing_order: 2 })
    );
    assert!(matches!(
        solve_in_span(&phi3, &span, 20, SolveOptions::default()),
        Err(QuasimodError::InsufficientTruncation { .. })
    ));
    let opts = SolveOptions { zero_constant_term: true, ..SolveOptions::default() };
    assert_eq!(
        solve_in_span(&Series::one(200), &span, 200, opts),
        Err(QuasimodError::NonzeroConstantTerm)
    );
    let zero = solve_in_span(&Series::zero(200), &span, 200, opts).unwrap();
    assert!(zero.coordinates.iter().all(Zero::is_zero));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn solver_recovers_random_combinations(coords in prop::collection::vec(-9i64..=9, 7)) {
        // E2, E4, E6 are algebraically independent, so level one coordinates are unique.
        let span = spanning_set(1, 3, false);
        prop_assert_eq!(span.len(), 7);
        let mut cache = ExpansionCache::new(120);
        let mut target = Series::zero(120);
        for (m, &c) in span.iter().zip(&coords) {
            target = &target + &m.expand(&mut cache).scale_int(c);
        }
        let cert = solve_in_span(&target, &span, 120, SolveOptions::default()).unwrap();
        let expected: Vec<BigRational> =
            coords.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        prop_assert_eq!(cert.coordinates, expected);
    }

    #[test]
    fn certificates_reproduce_level_two_combinations(coords in prop::collection::vec(-9i64..=9, 8)) {
        let span = spanning_set(2, 2, false);
        let mut cache = ExpansionCache::new(120);
        let mut target = Series::zero(120);
        for (m, &c) in span.iter().zip(&coords) {
            target = &target + &m.expand(&mut cache).scale_int(c);
        }
        let cert = solve_in_span(&target, &span, 120, SolveOptions::default()).unwrap();
        prop_assert!(cert.verify(&target));
    }
}
