use crankforge::combinatorics::{
    crank_table_bruteforce, nov, omega_weighted_crank_sum, ordinary_crank_table_bruteforce, ov,
};
use crankforge::cranks::{
    crank_residue_counts, crank_series, crank_table_from_series, expand_product, inequality_scan,
    is_equidistributed, moment_series, ordinary_crank_table, ordinary_moment_series, positive_moment,
    residual_crank_series,
};
use crankforge::qseries::{overpartition_gf, partition_gf, pochhammer};
use crankforge::{BigInt, CrankConvention, PochhammerSpec, Series};
use num_traits::Zero;

fn int(s: &Series, n: usize) -> BigInt {
    assert!(s.coeff(n).is_integer());
    s.coeff(n).to_integer()
}

fn poch(spec: PochhammerSpec, n: usize) -> Series {
    pochhammer(&spec, n).unwrap()
}

#[test]
fn first_residual_matches_its_own_product() {
    let n = 30;
    // (-q, q; q)_inf / (zq, q/z; q)_inf
    let pre = &poch(PochhammerSpec::single_neg(1, 1), n) * &poch(PochhammerSpec::euler(1), n);
    let direct = expand_product(&pre, (1..=n).flat_map(|i| [(1, i), (-1, i)]));
    assert_eq!(residual_crank_series(1, n), direct);
}

#[test]
fn second_residual_matches_its_own_product() {
    let n = 30;
    // (-q;q)_inf (q^2;q^2)_inf / ((q;q^2)_inf (zq^2, q^2/z; q^2)_inf)
    let numer = &poch(PochhammerSpec::single_neg(1, 1), n) * &poch(PochhammerSpec::euler(2), n);
    let pre = &numer * &poch(PochhammerSpec::single(1, 2), n).inverse().unwrap();
    let direct = expand_product(&pre, (1..=n / 2).flat_map(|i| [(1, 2 * i), (-1, 2 * i)]));
    assert_eq!(residual_crank_series(2, n), direct);
}

#[test]
fn crank_series_rows() {
    let c = crank_series(12);
    assert_eq!(c.row(0).terms().map(|(m, x)| (m, x.clone())).collect::<Vec<_>>(), [(0, 1.into())]);
    let row1: Vec<(i64, BigInt)> = c.row(1).terms().map(|(m, x)| (m, x.clone())).collect();
    assert_eq!(row1, [(-1, 1.into()), (0, (-1).into()), (1, 1.into())]);
    assert_eq!(c.at_one(), partition_gf(12));
    for n in 0..=12 {
        if let Some((lo, hi)) = c.row(n).support() {
            assert!(lo >= -(n as i64) && hi <= n as i64);
        }
    }
}

#[test]
fn residual_series_at_one_is_pbar() {
    for k in 1..=5 {
        assert_eq!(residual_crank_series(k, 40).at_one(), overpartition_gf(40), "k = {k}");
        assert_eq!(moment_series(k, 0, 40).series, overpartition_gf(40));
    }
}

#[test]
fn oracle_equivalence_up_to_20() {
    for k in 1..=4 {
        let brute = crank_table_bruteforce(k, 20, CrankConvention::GeneratingFunction).unwrap();
        let series = crank_table_from_series(k, 20);
        assert!(brute.diff(&series).is_empty(), "k = {k}: {:?}", brute.diff(&series).first());
    }
    let brute = ordinary_crank_table_bruteforce(20, CrankConvention::GeneratingFunction).unwrap();
    assert!(brute.diff(&ordinary_crank_table(20)).is_empty());
}

#[test]
fn moments_match_brute_force_tables() {
    for k in 1..=3 {
        let t = crank_table_bruteforce(k, 20, CrankConvention::GeneratingFunction).unwrap();
        for ell in [2, 4, 6] {
            let m = moment_series(k, ell, 20).series;
            let p = positive_moment(k, ell, 20).series;
            for n in 0..=20 {
                assert_eq!(int(&m, n), t.moment(ell, n), "k = {k}, ell = {ell}, n = {n}");
                assert_eq!(int(&p, n), t.positive_moment(ell, n));
                assert_eq!(int(&p, n) * 2, int(&m, n));
            }
        }
        for n in 0..k as usize {
            assert!(int(&positive_moment(k, 2, 20).series, n).is_zero());
        }
    }
}

#[test]
fn moment_examples() {
    assert_eq!(int(&moment_series(1, 2, 5).series, 3), 28.into());
    assert_eq!(int(&moment_series(2, 2, 5).series, 3), 4.into());
    for ell in [1, 3, 5] {
        assert!(moment_series(2, ell, 30).series.is_zero());
    }
}

#[test]
fn dyson_through_40() {
    let m2 = ordinary_moment_series(2, 40);
    let p = partition_gf(40);
    for n in 0..=40 {
        assert_eq!(int(&m2, n), int(&p, n) * BigInt::from(2 * n), "n = {n}");
    }
    let t = ordinary_crank_table_bruteforce(15, CrankConvention::GeneratingFunction).unwrap();
    for n in 0..=15 {
        assert_eq!(t.moment(2, n), t.column_sum(n) * BigInt::from(2 * n));
    }
}

#[test]
fn nov_theorem_and_ov_corollary() {
    for k in 1..=4u32 {
        let m = moment_series(k, 2, 25).series;
        let m2k = moment_series(2 * k, 2, 25).series;
        for n in 0..=25 {
            let nov2 = BigInt::from(nov(k, n).unwrap()) * 2;
            assert_eq!(nov2, BigInt::from(k) * int(&m, n), "k = {k}, n = {n}");
            if k <= 3 {
                let ov2 = BigInt::from(ov(k, n).unwrap()) * 2;
                let rhs = BigInt::from(k) * (int(&m, n) - int(&m2k, n) * 2);
                assert_eq!(ov2, rhs, "k = {k}, n = {n}");
            }
        }
    }
}

#[test]
fn omega_weighted_crank_sum_is_minus_half_moment() {
    for k in 1..=3 {
        let m = moment_series(k, 2, 20).series;
        for n in 0..=20 {
            let lhs = BigInt::from(omega_weighted_crank_sum(k, n, CrankConvention::Raw).unwrap());
            assert_eq!(lhs * -2, int(&m, n), "k = {k}, n = {n}");
        }
    }
}

#[test]
fn omega_weighted_sum_at_one() {
    // The residual (1) has raw crank -1; its correction vector has weighted crank 0.
    assert_eq!(omega_weighted_crank_sum(1, 1, CrankConvention::Raw).unwrap(), -1);
    assert_eq!(omega_weighted_crank_sum(1, 1, CrankConvention::GeneratingFunction).unwrap(), 0);
}

#[test]
fn equidistribution_mod_11() {
    let t = ordinary_crank_table(28);
    for n in [6, 17, 28] {
        let counts = crank_residue_counts(&t, n, 11);
        assert!(is_equidistributed(&counts), "n = {n}: {counts:?}");
        assert_eq!(&counts[0] * 11, int(&partition_gf(28), n));
    }
    assert!(!is_equidistributed(&crank_residue_counts(&t, 7, 11)));
}

#[test]
fn inequality_scan_holds() {
    for d in 1..=3 {
        for k in 1..=3 {
            let scan = inequality_scan(d, k, 2, 25);
            assert!(scan.all_hold, "d = {d}, k = {k}");
            if d == 1 {
                assert_eq!(scan.equality_set.len(), 26);
            }
            for row in &scan.rows {
                if row.n < k as usize {
                    assert!(row.lhs.is_zero() && row.rhs.is_zero());
                }
            }
        }
    }
}
