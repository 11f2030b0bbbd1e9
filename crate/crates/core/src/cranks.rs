//! Two-variable crank generating functions built from their product formulas,
//! and the moment series read off them.
//!
//! `C(z;q) = (q;q)_inf / ((zq;q)_inf (q/z;q)_inf)` is expanded factor by
//! factor as geometric series with Laurent-polynomial coefficients. The k-th
//! residual crank series is `(q^k;q^k)_inf Pbar(q) C(z;q^k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::CrankTable;
use crate::qseries::{overpartition_gf, pochhammer, PochhammerSpec, Series};

/// A Laurent polynomial in `z` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`.
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: exp,
            coeffs: vec![c],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Smallest and largest exponent with a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    /// `self += scale * z^shift * other`.
    pub fn add_scaled_shifted(&mut self, other: &LaurentPoly, shift: i64, scale: &BigInt) {
        if other.is_zero() || scale.is_zero() {
            return;
        }
        let o_low = other.low + shift;
        let o_high = o_low + other.coeffs.len() as i64 - 1;
        if self.is_zero() {
            self.low = o_low;
        }
        let new_low = self.low.min(o_low);
        let new_high = (self.low + self.coeffs.len() as i64 - 1).max(o_high);
        if new_low < self.low {
            let pad = (self.low - new_low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(BigInt::zero(), pad));
            self.low = new_low;
        }
        let len = (new_high - new_low + 1) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigInt::zero());
        }
        let base = (o_low - self.low) as usize;
        let unit = scale.is_one();
        for (i, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if unit {
                self.coeffs[base + i] += c;
            } else {
                self.coeffs[base + i] += c * scale;
            }
        }
        self.trim();
    }

    /// Value at `z = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `(z d/dz)^ell` evaluated at `z = 1`: `sum_m m^ell c_m`.
    pub fn moment(&self, ell: u32) -> BigInt {
        self.terms().map(|(m, c)| BigInt::from(m).pow(ell) * c).sum()
    }

    /// `sum_{m >= 1} m^ell c_m`.
    pub fn positive_moment(&self, ell: u32) -> BigInt {
        self.terms()
            .filter(|(m, _)| *m >= 1)
            .map(|(m, c)| BigInt::from(m).pow(ell) * c)
            .sum()
    }

    /// `z d/dz` applied to the polynomial.
    pub fn z_derivative(&self) -> LaurentPoly {
        let mut out = LaurentPoly {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(self.low + i as i64))
                .collect(),
        };
        out.trim();
        out
    }
}

/// A truncated series `sum_n R_n(z) q^n` with Laurent-polynomial rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZLaurentSeries {
    rows: Vec<LaurentPoly>,
}

impl ZLaurentSeries {
    /// The z-free series `s` viewed as a two-variable series. `s` must have
    /// integer coefficients.
    pub fn from_series(s: &Series) -> Self {
        let ints = s
            .to_integers()
            .expect("two-variable series carry integer coefficients");
        ZLaurentSeries {
            rows: ints
                .into_iter()
                .map(|c| LaurentPoly::monomial(0, c))
                .collect(),
        }
    }

    pub fn trunc_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &LaurentPoly {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[LaurentPoly] {
        &self.rows
    }

    /// Multiplies in place by `1 / (1 - z^zexp q^qexp)`.
    pub fn divide_by_geometric(&mut self, zexp: i64, qexp: usize) {
        assert!(qexp >= 1, "geometric factor needs a positive q-power");
        let unit = BigInt::one();
        for n in qexp..self.rows.len() {
            let (lo, hi) = self.rows.split_at_mut(n);
            hi[0].add_scaled_shifted(&lo[n - qexp], zexp, &unit);
        }
    }

    /// Multiplies in place by `1 - z^zexp q^qexp`.
    pub fn multiply_by_binomial(&mut self, zexp: i64, qexp: usize) {
        assert!(qexp >= 1, "binomial factor needs a positive q-power");
        let minus = -BigInt::one();
        for n in (qexp..self.rows.len()).rev() {
            let (lo, hi) = self.rows.split_at_mut(n);
            hi[0].add_scaled_shifted(&lo[n - qexp], zexp, &minus);
        }
    }

    /// Product with a z-free integer series.
    pub fn mul_series(&self, s: &Series) -> ZLaurentSeries {
        let n = self.trunc_order().min(s.trunc_order());
        let a = s
            .to_integers()
            .expect("two-variable series carry integer coefficients");
        let mut rows = vec![LaurentPoly::zero(); n + 1];
        for (w, row) in self.rows.iter().enumerate().take(n + 1) {
            if row.is_zero() {
                continue;
            }
            for (i, c) in a.iter().enumerate().take(n + 1 - w) {
                rows[w + i].add_scaled_shifted(row, 0, c);
            }
        }
        ZLaurentSeries { rows }
    }

    /// `q -> q^d`, truncated at `order`.
    pub fn dilate(&self, d: usize, order: usize) -> ZLaurentSeries {
        let mut rows = vec![LaurentPoly::zero(); order + 1];
        for (w, row) in self.rows.iter().enumerate() {
            if w * d > order {
                break;
            }
            rows[w * d] = row.clone();
        }
        ZLaurentSeries { rows }
    }

    pub fn at_one(&self) -> Series {
        Series::from_integers(self.rows.iter().map(LaurentPoly::at_one))
    }

    pub fn moment(&self, ell: u32) -> Series {
        Series::from_integers(self.rows.iter().map(|r| r.moment(ell)))
    }

    pub fn positive_moment(&self, ell: u32) -> Series {
        Series::from_integers(self.rows.iter().map(|r| r.positive_moment(ell)))
    }

    pub fn to_crank_table(&self, k: u32) -> CrankTable {
        let mut t = CrankTable::new(k, self.trunc_order());
        for (n, row) in self.rows.iter().enumerate() {
            for (m, c) in row.terms() {
                t.add(m, n, c);
            }
        }
        t
    }
}

/// Expands `prefactor / prod_j (1 - z^{a_j} q^{b_j})` where each
/// `(a_j, b_j)` runs over the supplied geometric denominators.
pub fn expand_product(
    prefactor: &Series,
    denominators: impl IntoIterator<Item = (i64, usize)>,
) -> ZLaurentSeries {
    let mut s = ZLaurentSeries::from_series(prefactor);
    for (zexp, qexp) in denominators {
        if qexp <= s.trunc_order() {
            s.divide_by_geometric(zexp, qexp);
        }
    }
    s
}

/// The ordinary crank series `C(z;q)` through `q^trunc`.
pub fn crank_series(trunc: usize) -> ZLaurentSeries {
    let mut s = ZLaurentSeries::from_series(&Series::one(trunc));
    for i in 1..=trunc {
        s.divide_by_geometric(1, i);
        s.divide_by_geometric(-1, i);
        s.multiply_by_binomial(0, i);
    }
    s
}

/// `(q^k;q^k)_inf Pbar(q)`, the z-free part of the k-th residual crank series.
pub fn residual_prefactor(k: u32, trunc: usize) -> Series {
    let euler = pochhammer(&PochhammerSpec::euler(k), trunc).expect("unit product");
    &euler * &overpartition_gf(trunc)
}

/// `Cbar[k](z;q) = (q^k;q^k)_inf Pbar(q) C(z;q^k)` through `q^trunc`.
pub fn residual_crank_series(k: u32, trunc: usize) -> ZLaurentSeries {
    assert!(k >= 1, "residual modulus must be positive");
    let k = k as usize;
    crank_series(trunc / k)
        .dilate(k, trunc)
        .mul_series(&residual_prefactor(k as u32, trunc))
}

/// Crank table of `Cbar[k]` read off the product expansion.
pub fn crank_table_from_series(k: u32, n_max: usize) -> CrankTable {
    residual_crank_series(k, n_max).to_crank_table(k)
}

/// The ordinary crank table `M(m, n)` from `C(z;q)`.
pub fn ordinary_crank_table(n_max: usize) -> CrankTable {
    crank_series(n_max).to_crank_table(1)
}

/// A moment generating series together with its labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentSeries {
    pub k: u32,
    pub ell: u32,
    pub positive: bool,
    pub series: Series,
}

/// `sum_n M_ell(n) q^n` for the ordinary crank.
pub fn ordinary_moment_series(ell: u32, trunc: usize) -> Series {
    crank_series(trunc).moment(ell)
}

/// `Cbar[k]_ell(q) = (z d/dz)^ell Cbar[k](z;q) |_{z=1}`.
///
/// The z-dependent factor `C(z;q^k)` is differentiated row by row, then the
/// z-free prefactor is multiplied back in.
pub fn moment_series(k: u32, ell: u32, trunc: usize) -> MomentSeries {
    moment_series_impl(k, ell, trunc, false)
}

/// `sum_n sum_{m >= 1} m^ell M[k](m, n) q^n`.
pub fn positive_moment(k: u32, ell: u32, trunc: usize) -> MomentSeries {
    moment_series_impl(k, ell, trunc, true)
}

fn moment_series_impl(k: u32, ell: u32, trunc: usize, positive: bool) -> MomentSeries {
    assert!(k >= 1, "residual modulus must be positive");
    let base = crank_series(trunc / k as usize);
    let inner = if positive {
        base.positive_moment(ell)
    } else {
        base.moment(ell)
    };
    let step = k as usize;
    let mut coeffs = vec![BigRational::zero(); trunc + 1];
    for (w, c) in inner.coeffs().iter().enumerate() {
        if w * step <= trunc {
            coeffs[w * step] = c.clone();
        }
    }
    let dilated = Series::from_coeffs(coeffs);
    MomentSeries {
        k,
        ell,
        positive,
        series: &dilated * &residual_prefactor(k, trunc),
    }
}

/// One line of an inequality scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub description: String,
    pub rows: Vec<ScanRow>,
    pub all_hold: bool,
    /// The `n` at which both sides agree.
    pub equality_set: Vec<usize>,
}

impl ScanReport {
    fn from_pairs(description: String, pairs: impl Iterator<Item = (usize, BigInt, BigInt)>) -> Self {
        let rows: Vec<ScanRow> = pairs
            .map(|(n, lhs, rhs)| ScanRow {
                n,
                holds: lhs <= rhs,
                equal: lhs == rhs,
                lhs,
                rhs,
            })
            .collect();
        ScanReport {
            description,
            all_hold: rows.iter().all(|r| r.holds),
            equality_set: rows.iter().filter(|r| r.equal).map(|r| r.n).collect(),
            rows,
        }
    }
}

fn series_entry(s: &Series, n: usize) -> BigInt {
    let c = s.coeff(n);
    debug_assert!(c.is_integer());
    c.to_integer()
}

/// Compares `d * M[dk]_ell(n)` with `M[k]_ell(n)` for `n = 0..=n_max`.
///
/// Equality is recorded, not asserted.
pub fn inequality_scan(d: u32, k: u32, ell: u32, n_max: usize) -> ScanReport {
    assert!(d >= 1 && k >= 1, "d and k must be positive");
    let big = moment_series(d * k, ell, n_max).series;
    let small = moment_series(k, ell, n_max).series;
    let dd = BigInt::from(d);
    ScanReport::from_pairs(
        format!("{d} * M[{}]_{ell}(n) <= M[{k}]_{ell}(n)", d * k),
        (0..=n_max).map(|n| (n, &dd * series_entry(&big, n), series_entry(&small, n))),
    )
}

/// Compares the positive moments `M[k+1]_ell^+(n)` and `M[k]_ell^+(n)`.
pub fn successive_positive_scan(k: u32, ell: u32, n_max: usize) -> ScanReport {
    assert!(k >= 1, "k must be positive");
    let next = positive_moment(k + 1, ell, n_max).series;
    let this = positive_moment(k, ell, n_max).series;
    ScanReport::from_pairs(
        format!("M[{}]_{ell}^+(n) <= M[{k}]_{ell}^+(n)", k + 1),
        (0..=n_max).map(|n| (n, series_entry(&next, n), series_entry(&this, n))),
    )
}

/// Residue classes `sum_{m = r mod modulus} M(m, n)` for `r = 0..modulus`.
pub fn crank_residue_counts(table: &CrankTable, n: usize, modulus: u32) -> Vec<BigInt> {
    let modulus = i64::from(modulus);
    let mut out = vec![BigInt::zero(); modulus as usize];
    for (&m, c) in table.column(n) {
        out[m.rem_euclid(modulus) as usize] += c;
    }
    out
}

/// Whether a count vector has every entry equal.
pub fn is_equidistributed(counts: &[BigInt]) -> bool {
    counts.windows(2).all(|w| w[0] == w[1])
}
