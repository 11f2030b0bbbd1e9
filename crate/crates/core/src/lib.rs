//! Exact computations around k-th residual cranks of overpartitions.
//!
//! * [`qseries`]: truncated power series with rational coefficients,
//!   q-Pochhammer products, divisor sums, `delta_q`.
//! * [`combinatorics`]: enumeration of partitions and overpartitions, crank
//!   and residual crank statistics, weighted part sums, the dilated Euler map.
//! * [`cranks`]: two-variable crank series from product formulas, crank
//!   tables and moment series.
//! * [`quasimod`]: Eisenstein series, quasimodular spanning sets, exact
//!   linear solving and membership certificates.
//! * [`numeric`]: floating-point checks of transformation laws.
//! * [`verify`]: the identity suites used by the CLI and the acceptance tests.

pub mod combinatorics;
pub mod cranks;
pub mod numeric;
pub mod qseries;
pub mod quasimod;
pub mod verify;

pub use combinatorics::{CombinatoricsError, CrankConvention, CrankTable, Overpartition, Partition};
pub use cranks::{LaurentPoly, MomentSeries, ScanReport, ZLaurentSeries};
pub use numeric::{GammaElement, HalfPlanePoint, NumericError, TransformationReport};
pub use qseries::{PochhammerFactor, PochhammerSpec, QSeriesError, Series};
pub use quasimod::{MembershipCertificate, ModularForm, QMonomial, QuasimodError, Representation};
pub use verify::IdentityReport;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Default truncation order for identity checks.
pub const DEFAULT_ORDER: usize = 200;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] QSeriesError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error(transparent)]
    Quasimod(#[from] QuasimodError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
