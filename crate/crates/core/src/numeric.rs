//! Double-precision evaluation of q-expansions on the upper half-plane and
//! spot checks of modular transformation laws.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::quasimod::{eisenstein, ModularForm};
use crate::qseries::Series;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Relative size the estimated truncation tail must stay under.
pub const TAIL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("tau must lie in the upper half-plane, got imaginary part {0}")]
    NotInUpperHalfPlane(f64),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    #[error("lower-left entry {c} is not divisible by the level {level}")]
    LevelViolation { c: i64, level: u32 },
    #[error("estimated truncation tail {estimate:e} exceeds {bound:e} (|q| = {q_abs})")]
    TailBoundExceeded { estimate: f64, bound: f64, q_abs: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    tau: Complex64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self, NumericError> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(tau: Complex64) -> Result<Self, NumericError> {
        if tau.im > 0.0 && tau.im.is_finite() && tau.re.is_finite() {
            Ok(HalfPlanePoint { tau })
        } else {
            Err(NumericError::NotInUpperHalfPlane(tau.im))
        }
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// `q = exp(2 pi i tau)`.
    pub fn q(&self) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.tau).exp()
    }
}

/// An integer matrix `[[a, b], [c, d]]` of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, NumericError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(NumericError::NotUnimodular(det));
        }
        Ok(GammaElement { a, b, c, d })
    }

    pub fn translation() -> Self {
        GammaElement { a: 1, b: 1, c: 0, d: 1 }
    }

    pub fn inversion() -> Self {
        GammaElement { a: 0, b: -1, c: 1, d: 0 }
    }

    pub fn in_gamma0(&self, level: u32) -> bool {
        self.c % i64::from(level) == 0
    }

    /// `c tau + d`.
    pub fn automorphy(&self, tau: &HalfPlanePoint) -> Complex64 {
        tau.tau * self.c as f64 + self.d as f64
    }

    /// `(a tau + b) / (c tau + d)`.
    pub fn act(&self, tau: &HalfPlanePoint) -> HalfPlanePoint {
        let num = tau.tau * self.a as f64 + self.b as f64;
        HalfPlanePoint {
            tau: num / self.automorphy(tau),
        }
    }
}

fn coeff_f64(s: &Series) -> Vec<f64> {
    s.coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}

/// Evaluates `sum c_n q^n` at `tau`.
///
/// The tail beyond `q^N` is estimated as `max_n |c_n| * (N+1)^4 |q|^{N+1} / (1 - |q|)`,
/// which covers the polynomial coefficient growth of the series used here,
/// and must stay below `TAIL_TOLERANCE * max(1, |value|)`.
pub fn eval_series(s: &Series, tau: &HalfPlanePoint) -> Result<Complex64, NumericError> {
    let q = tau.q();
    let coeffs = coeff_f64(s);
    let value = coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * q + c);
    let q_abs = q.norm();
    let n = s.trunc_order() as f64;
    let max_c = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let estimate = max_c * (n + 1.0).powi(4) * q_abs.powf(n + 1.0) / (1.0 - q_abs);
    let bound = TAIL_TOLERANCE * value.norm().max(1.0);
    if estimate.is_nan() || estimate > bound {
        return Err(NumericError::TailBoundExceeded {
            estimate,
            bound,
            q_abs,
        });
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformationReport {
    pub check: String,
    pub tau: [f64; 2],
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn report(check: String, tau: &HalfPlanePoint, lhs: Complex64, rhs: Complex64, tol: f64) -> TransformationReport {
    let scale = lhs.norm().max(rhs.norm()).max(1.0);
    let defect = (lhs - rhs).norm() / scale;
    TransformationReport {
        check,
        tau: [tau.tau.re, tau.tau.im],
        defect,
        tolerance: tol,
        pass: defect < tol,
    }
}

/// `E_2(-1/tau) = tau^2 E_2(tau) + 6 tau / (pi i)`.
///
/// With `with_anomaly = false` the correction term is dropped, which must fail.
pub fn check_e2_anomaly(
    tau: &HalfPlanePoint,
    trunc: usize,
    tol: f64,
    with_anomaly: bool,
) -> Result<TransformationReport, NumericError> {
    let e2 = eisenstein(2, 1, trunc);
    let image = GammaElement::inversion().act(tau);
    let lhs = eval_series(&e2, &image)?;
    let t = tau.tau;
    let mut rhs = t * t * eval_series(&e2, tau)?;
    if with_anomaly {
        rhs += t * 6.0 / (Complex64::i() * PI);
    }
    let name = if with_anomaly {
        "E2 anomaly"
    } else {
        "E2 without anomaly term"
    };
    Ok(report(name.into(), tau, lhs, rhs, tol))
}

/// `f(gamma tau) = (c tau + d)^w f(tau)` without checking the level.
pub fn check_transformation(
    f: &ModularForm,
    gamma: &GammaElement,
    tau: &HalfPlanePoint,
    tol: f64,
) -> Result<TransformationReport, NumericError> {
    let lhs = eval_series(&f.series, &gamma.act(tau))?;
    let rhs = gamma.automorphy(tau).powu(f.weight) * eval_series(&f.series, tau)?;
    Ok(report(
        format!(
            "weight {} level {} under [[{}, {}], [{}, {}]]",
            f.weight, f.level, gamma.a, gamma.b, gamma.c, gamma.d
        ),
        tau,
        lhs,
        rhs,
        tol,
    ))
}

/// As [`check_transformation`], after confirming `gamma` lies in `Gamma_0(level)`.
pub fn check_modularity(
    f: &ModularForm,
    gamma: &GammaElement,
    tau: &HalfPlanePoint,
    tol: f64,
) -> Result<TransformationReport, NumericError> {
    if !gamma.in_gamma0(f.level) {
        return Err(NumericError::LevelViolation {
            c: gamma.c,
            level: f.level,
        });
    }
    check_transformation(f, gamma, tau, tol)
}

/// A point with `Im tau >= 0.8` and `|Re tau| <= 1`.
pub fn sample_tau<R: Rng + ?Sized>(rng: &mut R) -> HalfPlanePoint {
    HalfPlanePoint {
        tau: Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.8..=2.5)),
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A pseudorandom element of `Gamma_0(level)` with `|c|, |d| <= bound`,
/// together with a point `tau` such that `Im(gamma tau) >= 0.2`.
/// Pairs violating that condition are re-drawn.
pub fn sample_gamma0_pair<R: Rng + ?Sized>(
    rng: &mut R,
    level: u32,
    bound: i64,
) -> (GammaElement, HalfPlanePoint) {
    let level = i64::from(level);
    loop {
        let c = level * rng.gen_range(-(bound / level)..=bound / level);
        let d = rng.gen_range(-bound..=bound);
        let (g, x, y) = ext_gcd(c, d);
        if g != 1 {
            continue;
        }
        // x c + y d = 1, so a = y, b = -x gives a d - b c = 1.
        let (mut a, mut b) = (y, -x);
        // Shift (a, b) by a multiple of (c, d) to keep the entries small.
        if c != 0 || d != 0 {
            let denom = (c * c + d * d) as f64;
            let t = ((a * c + b * d) as f64 / denom).round() as i64;
            a -= t * c;
            b -= t * d;
        }
        if a.abs() > bound || b.abs() > bound {
            continue;
        }
        let gamma = GammaElement { a, b, c, d };
        let tau = sample_tau(rng);
        if gamma.act(&tau).tau.im >= 0.2 {
            return (gamma, tau);
        }
    }
}
