//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! Every [`Series`] carries its truncation order explicitly: it is known
//! through the coefficient of `q^N` inclusive and nothing beyond. Binary
//! operations truncate to the shorter operand, so agreement is never claimed
//! past the precision actually computed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("pochhammer factor (1 - q^0; q^{modulus}) vanishes identically")]
    NonUnitProduct { modulus: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse coefficient {0:?}")]
    ParseCoefficient(String),
}

/// A power series `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `q^e` truncated at `order` (zero when `e > order`).
    pub fn monomial(e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = BigRational::one();
        }
        s
    }

    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Series { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Integer coefficients given for a prefix, zero-padded up to `order`.
    pub fn from_prefix(prefix: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, &c) in s.coeffs.iter_mut().zip(prefix) {
            *slot = BigRational::from_integer(c.into());
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Coefficient of `q^n`. Panics when `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// Drops coefficients above `order`. Asking for a larger order keeps the
    /// series unchanged: truncation never extends known precision.
    pub fn truncate(&self, order: usize) -> Series {
        let keep = order.min(self.trunc_order());
        Series {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Index of the first coefficient where `self` and `other` differ, up to
    /// the common truncation order.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Series {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Multiplicative inverse through the truncation order.
    pub fn inverse(&self) -> Result<Series, QSeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(QSeriesError::ZeroConstantTerm);
        }
        let n = self.trunc_order();
        let (ints, den) = integerize(&self.coeffs);
        // a = A / den, so 1/a = den * (1/A).
        let lead = &ints[0];
        if lead.abs().is_one() {
            let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
            b.push(lead.clone());
            for m in 1..=n {
                let mut acc = BigInt::zero();
                for i in 1..=m {
                    if !ints[i].is_zero() {
                        acc += &ints[i] * &b[m - i];
                    }
                }
                // b_m = -(1/A_0) * acc, and 1/A_0 = A_0 when A_0 = +-1.
                b.push(-(acc * lead));
            }
            let den = BigRational::from_integer(den);
            return Ok(Series {
                coeffs: b
                    .into_iter()
                    .map(|c| BigRational::from_integer(c) * &den)
                    .collect(),
            });
        }
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &b[m - i];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: b })
    }

    /// The map `q -> q^d`, keeping the truncation order.
    pub fn substitute_power(&self, d: usize) -> Series {
        assert!(d >= 1, "substitution power must be positive");
        let n = self.trunc_order();
        let mut out = Series::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = i * d;
            if e > n {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        out
    }

    /// Every `d`-th coefficient, i.e. the inverse of [`Series::substitute_power`].
    pub fn extract_every(&self, d: usize) -> Series {
        assert!(d >= 1, "step must be positive");
        Series {
            coeffs: self.coeffs.iter().step_by(d).cloned().collect(),
        }
    }

    /// `delta_q = q d/dq`: the coefficient of `q^n` is multiplied by `n`.
    pub fn delta_q(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * BigInt::from(n))
                .collect(),
        }
    }

    pub fn delta_q_pow(&self, times: u32) -> Series {
        (0..times).fold(self.clone(), |s, _| s.delta_q())
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.trunc_order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Scales a rational vector to integers: returns `(A, D)` with `v = A / D`.
fn integerize(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (ints, den)
}

fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

impl PartialEq for Series {
    /// Coefficient-wise equality up to the common truncation order.
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;

    fn mul(self, rhs: &'a Series) -> Series {
        let n = self.trunc_order().min(rhs.trunc_order());
        let (a, da) = integerize(&self.coeffs[..=n]);
        let (b, db) = integerize(&rhs.coeffs[..=n]);
        let den = da * db;
        Series {
            coeffs: convolve(&a, &b, n)
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        }
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;

    fn add(self, rhs: &'a Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;

    fn sub(self, rhs: &'a Series) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &'a Series) -> Series {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc_order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    trunc_order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesWire {
            trunc_order: self.trunc_order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.trunc_order + 1 {
            return Err(D::Error::custom(format!(
                "trunc_order {} needs {} coefficients, found {}",
                wire.trunc_order,
                wire.trunc_order + 1,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(Series { coeffs })
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, QSeriesError> {
    let bad = || QSeriesError::ParseCoefficient(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// One factor `(a; q^d)_inf` with `a = +q^shift` or `a = -q^shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerFactor {
    pub shift: u32,
    /// `true` for `a = -q^shift`, giving factors `(1 + q^{shift + d i})`.
    pub negated: bool,
}

impl PochhammerFactor {
    pub fn q_power(shift: u32) -> Self {
        PochhammerFactor {
            shift,
            negated: false,
        }
    }

    pub fn neg_q_power(shift: u32) -> Self {
        PochhammerFactor {
            shift,
            negated: true,
        }
    }
}

/// `(a_1, ..., a_r; q^d)_inf` where each `a_i` is `+-q^{s_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub factors: Vec<PochhammerFactor>,
    pub modulus: u32,
}

impl PochhammerSpec {
    pub fn new(factors: Vec<PochhammerFactor>, modulus: u32) -> Self {
        PochhammerSpec { factors, modulus }
    }

    /// `(q^s; q^d)_inf`.
    pub fn single(shift: u32, modulus: u32) -> Self {
        Self::new(vec![PochhammerFactor::q_power(shift)], modulus)
    }

    /// `(-q^s; q^d)_inf`.
    pub fn single_neg(shift: u32, modulus: u32) -> Self {
        Self::new(vec![PochhammerFactor::neg_q_power(shift)], modulus)
    }

    /// `(q^d; q^d)_inf`.
    pub fn euler(d: u32) -> Self {
        Self::single(d, d)
    }
}

/// Expands a q-Pochhammer product through `q^trunc`.
pub fn pochhammer(spec: &PochhammerSpec, trunc: usize) -> Result<Series, QSeriesError> {
    if spec.modulus == 0 {
        return Err(QSeriesError::InvalidArgument(
            "pochhammer modulus must be positive".into(),
        ));
    }
    if spec.factors.iter().any(|f| f.shift == 0 && !f.negated) {
        return Err(QSeriesError::NonUnitProduct {
            modulus: spec.modulus,
        });
    }
    let d = spec.modulus as usize;
    let mut c = vec![BigInt::zero(); trunc + 1];
    c[0] = BigInt::one();
    for f in &spec.factors {
        let mut e = f.shift as usize;
        while e <= trunc {
            if e == 0 {
                // (1 + q^0) = 2
                for x in c.iter_mut() {
                    *x *= 2;
                }
            } else {
                for i in (e..=trunc).rev() {
                    let (lo, hi) = c.split_at_mut(i);
                    if f.negated {
                        hi[0] += &lo[i - e];
                    } else {
                        hi[0] -= &lo[i - e];
                    }
                }
            }
            e += d;
        }
    }
    Ok(Series::from_integers(c))
}

/// Divisor power sums `sigma_l(n) = sum_{e | n} e^l` for `n = 0..=max` (index 0 is 0).
pub fn divisor_power_sums(l: u32, max: usize) -> Vec<BigInt> {
    let mut sigma = vec![BigInt::zero(); max + 1];
    for e in 1..=max {
        let p = BigInt::from(e).pow(l);
        for n in (e..=max).step_by(e) {
            sigma[n] += &p;
        }
    }
    sigma
}

/// `Phi_l(q^d) = sum_n sigma_l(n) q^{dn}` through `q^trunc`.
pub fn phi(l: u32, d: usize, trunc: usize) -> Series {
    assert!(d >= 1, "dilation must be positive");
    let sigma = divisor_power_sums(l, trunc / d);
    let mut out = vec![BigInt::zero(); trunc + 1];
    for (n, s) in sigma.into_iter().enumerate().skip(1) {
        out[n * d] = s;
    }
    Series::from_integers(out)
}

/// `P(q) = 1/(q;q)_inf`, the partition generating function.
pub fn partition_gf(trunc: usize) -> Series {
    pochhammer(&PochhammerSpec::euler(1), trunc)
        .and_then(|s| s.inverse())
        .expect("(q;q)_inf is a unit")
}

/// `Pbar(q) = (-q;q)_inf / (q;q)_inf`, the overpartition generating function.
pub fn overpartition_gf(trunc: usize) -> Series {
    let distinct = pochhammer(&PochhammerSpec::single_neg(1, 1), trunc).expect("unit product");
    &distinct * &partition_gf(trunc)
}
