//! Identity suites: each pairs a brute-force or independently expanded side
//! with a product-formula side and reports the first disagreement.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{
    crank_table_bruteforce, distinct_multiples, euler_dilation, nov, odd_multiples,
    omega_weighted_crank_sum, ordinary_crank_table_bruteforce, ov, CombinatoricsError,
    CrankConvention, DilationDirection,
};
use crate::cranks::{
    crank_residue_counts, crank_table_from_series, inequality_scan, is_equidistributed,
    moment_series, ordinary_crank_table, ordinary_moment_series,
};
use crate::quasimod::{certify_theorem, e2_derivative_defect, eisenstein, find_representation};
use crate::qseries::{overpartition_gf, partition_gf, phi, Series};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub at: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    pub checked: usize,
    pub first_failure: Option<Failure>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    fn new(name: impl Into<String>) -> Self {
        IdentityReport {
            name: name.into(),
            pass: true,
            checked: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    /// Records one comparison.
    fn check<T: PartialEq + ToString>(&mut self, at: impl FnOnce() -> String, expected: T, actual: T) {
        self.checked += 1;
        if expected != actual {
            if self.first_failure.is_none() {
                self.first_failure = Some(Failure {
                    at: at(),
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                });
            }
            self.pass = false;
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn entry(s: &Series, n: usize) -> BigInt {
    let c = s.coeff(n);
    assert!(c.is_integer(), "expected an integer coefficient, found {c}");
    c.to_integer()
}

/// Product-formula crank tables against enumeration.
pub fn oracle_equivalence(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("oracle equivalence");
    for &k in ks {
        let brute = crank_table_bruteforce(k, n_max, CrankConvention::GeneratingFunction)?;
        let series = crank_table_from_series(k, n_max);
        let diff = brute.diff(&series);
        r.checked += 1;
        if let Some(d) = diff.first() {
            r.pass = false;
            r.first_failure.get_or_insert(Failure {
                at: format!("k = {k}, n = {}, m = {}", d.n, d.m),
                expected: d.left.to_string(),
                actual: d.right.to_string(),
            });
        }
    }
    Ok(r)
}

/// `nov_k(n) = (k/2) M[k]_2(n)`.
pub fn nov_theorem(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("nov_k(n) = (k/2) M[k]_2(n)");
    for &k in ks {
        let m2 = moment_series(k, 2, n_max).series;
        for n in 0..=n_max {
            let lhs = BigInt::from(nov(k, n)?) * 2;
            let rhs = BigInt::from(k) * entry(&m2, n);
            r.check(|| format!("k = {k}, n = {n} (twice both sides)"), rhs, lhs);
        }
        let half = BigRational::new(BigInt::from(k) * entry(&m2, n_max), BigInt::from(2));
        r.note(format!(
            "nov_{k}({n_max}) = {}, ({k}/2) M[{k}]_2({n_max}) = {half}",
            nov(k, n_max)?
        ));
    }
    Ok(r)
}

/// `ov_k(n) = nov_k(n) - nov_{2k}(n)`.
pub fn ov_lemma(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("ov_k(n) = nov_k(n) - nov_2k(n)");
    for &k in ks {
        for n in 0..=n_max {
            let lhs = i128::from(ov(k, n)?);
            let rhs = i128::from(nov(k, n)?) - i128::from(nov(2 * k, n)?);
            r.check(|| format!("k = {k}, n = {n}"), rhs, lhs);
        }
        r.note(format!(
            "ov_{k}({n_max}) = {}, nov_{k}({n_max}) = {}, nov_{}({n_max}) = {}",
            ov(k, n_max)?,
            nov(k, n_max)?,
            2 * k,
            nov(2 * k, n_max)?
        ));
    }
    Ok(r)
}

/// `ov_k(n) = (k/2) M[k]_2(n) - k M[2k]_2(n)`.
pub fn ov_corollary(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("ov_k(n) = (k/2) M[k]_2(n) - k M[2k]_2(n)");
    for &k in ks {
        let a = moment_series(k, 2, n_max).series;
        let b = moment_series(2 * k, 2, n_max).series;
        for n in 0..=n_max {
            let lhs = BigInt::from(ov(k, n)?) * 2;
            let kk = BigInt::from(k);
            let rhs = &kk * entry(&a, n) - &kk * 2 * entry(&b, n);
            r.check(|| format!("k = {k}, n = {n} (twice both sides)"), rhs, lhs);
        }
    }
    Ok(r)
}

/// `M_2(n) = 2 n p(n)` from the product expansion of `C(z;q)`.
pub fn dyson_series(n_max: usize) -> IdentityReport {
    let mut r = IdentityReport::new("M_2(n) = 2 n p(n) (series)");
    let m2 = ordinary_moment_series(2, n_max);
    let p = partition_gf(n_max);
    for n in 0..=n_max {
        let rhs = entry(&p, n) * BigInt::from(2 * n);
        r.check(|| format!("n = {n}"), rhs, entry(&m2, n));
    }
    r
}

/// `M_2(n) = 2 n p(n)` by enumerating partitions with the corrected crank.
pub fn dyson_enumeration(n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("M_2(n) = 2 n p(n) (enumeration)");
    let t = ordinary_crank_table_bruteforce(n_max, CrankConvention::GeneratingFunction)?;
    for n in 0..=n_max {
        let p = t.column_sum(n);
        r.check(|| format!("n = {n}"), p * BigInt::from(2 * n), t.moment(2, n));
    }
    Ok(r)
}

/// `sum_{lambda |- n} omega_k(lambda) crbar_k(lambda) = -M[k]_2(n)` with the
/// generating-function convention for the residual partition `(1)`.
pub fn chern(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("sum omega_k crbar_k = -M[k]_2(n)");
    for &k in ks {
        let m2 = moment_series(k, 2, n_max).series;
        for n in 0..=n_max {
            let lhs = BigInt::from(omega_weighted_crank_sum(k, n, CrankConvention::GeneratingFunction)?);
            r.check(|| format!("k = {k}, n = {n}"), -entry(&m2, n), lhs);
        }
    }
    Ok(r)
}

/// `sum_{lambda |- n} omega_k(lambda) crbar_k(lambda) = -M[k]_2(n) / 2` with
/// raw cranks, which is the form that follows from
/// `sum_{lambda |- n} omega(lambda) cr(lambda) = -n p(n)` and `M_2(n) = 2 n p(n)`.
pub fn chern_half_moment(ks: &[u32], n_max: usize) -> Result<IdentityReport, CombinatoricsError> {
    let mut r = IdentityReport::new("sum omega_k crbar_k = -M[k]_2(n)/2 (raw cranks)");
    for &k in ks {
        let m2 = moment_series(k, 2, n_max).series;
        for n in 0..=n_max {
            let lhs = BigInt::from(omega_weighted_crank_sum(k, n, CrankConvention::Raw)?) * 2;
            r.check(|| format!("k = {k}, n = {n} (twice both sides)"), -entry(&m2, n), lhs);
        }
    }
    Ok(r)
}

/// 11-way equidistribution of the ordinary crank at the given weights.
pub fn ramanujan(cases: &[usize]) -> IdentityReport {
    let mut r = IdentityReport::new("crank equidistribution mod 11");
    let top = cases.iter().copied().max().unwrap_or(0);
    let table = ordinary_crank_table(top);
    let p = partition_gf(top);
    for &n in cases {
        let counts = crank_residue_counts(&table, n, 11);
        r.checked += 1;
        if !is_equidistributed(&counts) {
            r.pass = false;
            r.first_failure.get_or_insert(Failure {
                at: format!("n = {n}"),
                expected: "equal residue counts".into(),
                actual: format!("{counts:?}"),
            });
        } else {
            r.note(format!("n = {n}: p(n) = {}, each residue class {}", entry(&p, n), counts[0]));
        }
    }
    r
}

/// `delta_q(E_2) = (E_2^2 - E_4) / 12`.
pub fn e2_derivative(trunc: usize) -> IdentityReport {
    let mut r = IdentityReport::new("delta_q(E2) = (E2^2 - E4)/12");
    r.checked = trunc + 1;
    if let Some(n) = e2_derivative_defect(&eisenstein(2, 1, trunc), &eisenstein(4, 1, trunc)) {
        r.pass = false;
        r.first_failure = Some(Failure {
            at: format!("q^{n}"),
            expected: "equal coefficients".into(),
            actual: "mismatch".into(),
        });
    }
    r
}

/// `delta_q(Pbar) = 2 Pbar (Phi_1(q) - Phi_1(q^2))`.
pub fn pbar_derivative(trunc: usize) -> IdentityReport {
    let mut r = IdentityReport::new("delta_q(Pbar) = 2 Pbar (Phi1(q) - Phi1(q^2))");
    let pbar = overpartition_gf(trunc);
    let lhs = pbar.delta_q();
    let rhs = (&pbar * &(&phi(1, 1, trunc) - &phi(1, 2, trunc))).scale_int(2);
    for n in 0..=trunc {
        r.check(|| format!("q^{n}"), rhs.coeff(n).clone(), lhs.coeff(n).clone());
    }
    r
}

/// Integer representations of `Cbar[k]_{2j}` in `Phi`-monomials.
pub fn representation(ks: &[u32], js: &[u32], trunc: usize) -> IdentityReport {
    let mut r = IdentityReport::new("Cbar[k]_2j = 2 Pbar sum alpha Phi-monomials");
    for &k in ks {
        for &j in js {
            r.checked += 1;
            match find_representation(k, j, trunc) {
                Ok(rep) => {
                    let keyed: Vec<String> =
                        rep.keyed().iter().map(|(key, a)| format!("{key}: {a}")).collect();
                    r.note(format!("k = {k}, j = {j}: {}", keyed.join(", ")));
                }
                Err(e) => {
                    r.pass = false;
                    r.first_failure.get_or_insert(Failure {
                        at: format!("k = {k}, j = {j}"),
                        expected: "integer representation".into(),
                        actual: e.to_string(),
                    });
                }
            }
        }
    }
    r
}

/// Membership certificates for every `(k, j, m, l)` with `j + m <= l`.
pub fn quasimodularity(ks: &[u32], l_max: u32, trunc: usize) -> IdentityReport {
    let mut r = IdentityReport::new("delta_q^m Cbar[k]_2j in Pbar Wbar_l(Gamma0(lcm(2,k)))");
    for &k in ks {
        for l in 1..=l_max {
            for j in 1..=l {
                for m in 0..=(l - j) {
                    r.checked += 1;
                    let result = certify_theorem(k, j, m, l, trunc);
                    let ok = result.as_ref().is_ok_and(|c| {
                        let target = crate::quasimod::theorem_target(k, j, m, trunc);
                        c.verify(&target) && c.combination().coeff(0).is_zero()
                    });
                    if !ok {
                        r.pass = false;
                        r.first_failure.get_or_insert(Failure {
                            at: format!("k = {k}, j = {j}, m = {m}, l = {l}"),
                            expected: "certificate".into(),
                            actual: match result {
                                Ok(_) => "certificate failed re-verification".into(),
                                Err(e) => e.to_string(),
                            },
                        });
                    }
                }
            }
        }
    }
    r
}

/// Round trip of the dilated Euler map on every valid partition up to `max_weight`.
pub fn bijection(ks: &[u32], max_weight: usize) -> IdentityReport {
    let mut r = IdentityReport::new("Euler dilation round trip");
    for &k in ks {
        for n in 0..=max_weight {
            let distinct = distinct_multiples(n, k);
            let odd = odd_multiples(n, k);
            r.check(|| format!("k = {k}, n = {n}: class sizes"), distinct.len(), odd.len());
            for p in &distinct {
                let image = euler_dilation(p, k, DilationDirection::Forward);
                let back = image
                    .as_ref()
                    .ok()
                    .and_then(|im| euler_dilation(im, k, DilationDirection::Inverse).ok());
                let in_codomain = image.as_ref().is_ok_and(|im| odd.contains(im));
                r.check(|| format!("k = {k}, forward of {p}"), true, in_codomain);
                r.check(
                    || format!("k = {k}, round trip of {p}"),
                    p.to_string(),
                    back.map(|x| x.to_string()).unwrap_or_default(),
                );
            }
            for p in &odd {
                let back = euler_dilation(p, k, DilationDirection::Inverse)
                    .and_then(|im| euler_dilation(&im, k, DilationDirection::Forward));
                r.check(
                    || format!("k = {k}, inverse round trip of {p}"),
                    p.to_string(),
                    back.map(|x| x.to_string()).unwrap_or_default(),
                );
            }
        }
    }
    r
}

/// `d M[dk]_2(n) <= M[k]_2(n)`; the equality sets are listed as notes.
pub fn inequality(ds: &[u32], ks: &[u32], n_max: usize) -> IdentityReport {
    let mut r = IdentityReport::new("d M[dk]_2(n) <= M[k]_2(n)");
    for &d in ds {
        for &k in ks {
            let scan = inequality_scan(d, k, 2, n_max);
            for row in &scan.rows {
                r.check(|| format!("d = {d}, k = {k}, n = {}", row.n), true, row.holds);
            }
            r.note(format!("d = {d}, k = {k}: equality at n in {:?}", scan.equality_set));
        }
    }
    r
}
