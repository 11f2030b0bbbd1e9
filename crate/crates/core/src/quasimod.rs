//! Eisenstein series, explicit spanning sets for quasimodular forms on
//! `Gamma_0(K)`, and an exact linear solver that turns a membership claim into
//! a checkable certificate.
//!
//! A certificate is sound: each generator `E_2(q^d)`, `E_4(q^d)`, `E_6(q^d)`
//! (or `Phi_{2i-1}(q^d)`, which is affine in `E_{2i}(q^d)`) with `d | K` is a
//! quasimodular form on `Gamma_0(K)`, so any rational combination that matches
//! the target is a witness. Failure to find one is inconclusive, since the
//! spanning set is not claimed to exhaust the space.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cranks::moment_series;
use crate::qseries::{overpartition_gf, phi, QSeriesError, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasimodError {
    #[error("truncation order {order} is too small for a span of {dim} (need at least {needed})")]
    InsufficientTruncation {
        order: usize,
        dim: usize,
        needed: usize,
    },
    #[error("no combination matches the target beyond q^{}", first_failing_order.saturating_sub(1))]
    NoSolutionWithinTruncation { first_failing_order: usize },
    #[error("target has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("coefficient of {monomial} is {value}, not an integer")]
    NonIntegerCoefficients { monomial: String, value: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

/// Bernoulli numbers `B_0..=B_max` with `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl BernoulliCache {
    /// Fills the table from `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
    pub fn new(max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max + 1);
        values.push(BigRational::one());
        for n in 1..=max {
            let mut binom = BigInt::one(); // C(n+1, 0)
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += b * &binom;
                // C(n+1, j+1) = C(n+1, j) * (n+1-j) / (j+1)
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            values.push(-acc / BigInt::from(n + 1));
        }
        BernoulliCache { values }
    }

    pub fn get(&self, n: usize) -> &BigRational {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

pub fn bernoulli(n: usize) -> BigRational {
    BernoulliCache::new(n).get(n).clone()
}

/// `E_w(q^d) = 1 - (2w / B_w) Phi_{w-1}(q^d)` for even `w >= 2`.
pub fn eisenstein(weight: u32, d: usize, trunc: usize) -> Series {
    assert!(weight >= 2 && weight % 2 == 0, "Eisenstein weight must be even and >= 2");
    let b = bernoulli(weight as usize);
    let factor = -BigRational::from_integer(BigInt::from(2 * weight)) / b;
    let p = phi(weight - 1, d, trunc);
    &Series::one(trunc) + &p.scale(&factor)
}

/// First order at which `delta_q(E_2)` and `(E_2^2 - E_4)/12` differ.
pub fn e2_derivative_defect(e2: &Series, e4: &Series) -> Option<usize> {
    let lhs = e2.delta_q();
    let twelfth = BigRational::new(BigInt::one(), BigInt::from(12));
    let rhs = (&(e2 * e2) - e4).scale(&twelfth);
    lhs.first_difference(&rhs)
}

pub fn verify_e2_derivative(trunc: usize) -> bool {
    e2_derivative_defect(&eisenstein(2, 1, trunc), &eisenstein(4, 1, trunc)).is_none()
}

/// A q-expansion tagged with its transformation weight and level.
#[derive(Clone, Debug)]
pub struct ModularForm {
    pub series: Series,
    /// The true weight: `E_4` has weight 4.
    pub weight: u32,
    pub level: u32,
}

impl ModularForm {
    /// `E_w(q^d)` as a form of level `d`.
    pub fn eisenstein(weight: u32, d: u32, trunc: usize) -> Self {
        ModularForm {
            series: eisenstein(weight, d as usize, trunc),
            weight,
            level: d,
        }
    }
}

/// `12 delta_q(f) - w E_2 f` for a form of weight `w`.
pub fn verify_lifting(f: &ModularForm, trunc: usize) -> Series {
    let s = f.series.truncate(trunc);
    let e2 = eisenstein(2, 1, s.trunc_order());
    &s.delta_q().scale_int(12) - &(&e2 * &s).scale_int(i64::from(f.weight))
}

/// A building block of the spanning sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `E_weight(q^dilation)`.
    Eisenstein { weight: u32, dilation: u32 },
    /// `Phi_index(q^dilation)` with `index` odd; weight `index + 1`.
    Phi { index: u32, dilation: u32 },
}

impl Generator {
    pub fn weight(&self) -> u32 {
        match *self {
            Generator::Eisenstein { weight, .. } => weight,
            Generator::Phi { index, .. } => index + 1,
        }
    }

    pub fn expand(&self, trunc: usize) -> Series {
        match *self {
            Generator::Eisenstein { weight, dilation } => eisenstein(weight, dilation as usize, trunc),
            Generator::Phi { index, dilation } => phi(index, dilation as usize, trunc),
        }
    }
}

fn write_arg(f: &mut fmt::Formatter<'_>, d: u32) -> fmt::Result {
    if d == 1 {
        write!(f, "(q)")
    } else {
        write!(f, "(q^{d})")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Eisenstein { weight, dilation } => {
                write!(f, "E{weight}")?;
                write_arg(f, dilation)
            }
            Generator::Phi { index, dilation } => {
                write!(f, "Phi{index}")?;
                write_arg(f, dilation)
            }
        }
    }
}

/// A product of generator powers. The empty product is the constant 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QMonomial {
    factors: Vec<(Generator, u32)>,
}

impl QMonomial {
    pub fn one() -> Self {
        QMonomial::default()
    }

    pub fn new(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut map: BTreeMap<Generator, u32> = BTreeMap::new();
        for (g, e) in factors {
            *map.entry(g).or_default() += e;
        }
        QMonomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|(g, e)| g.weight() * e).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn expand(&self, cache: &mut ExpansionCache) -> Series {
        let mut acc = Series::one(cache.trunc);
        for &(g, e) in &self.factors {
            let base = cache.generator(g).clone();
            for _ in 0..e {
                acc = &acc * &base;
            }
        }
        acc
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for QMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Generator expansions memoized at a fixed truncation order.
#[derive(Debug)]
pub struct ExpansionCache {
    trunc: usize,
    generators: HashMap<Generator, Series>,
}

impl ExpansionCache {
    pub fn new(trunc: usize) -> Self {
        ExpansionCache {
            trunc,
            generators: HashMap::new(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn generator(&mut self, g: Generator) -> &Series {
        let trunc = self.trunc;
        self.generators.entry(g).or_insert_with(|| g.expand(trunc))
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// All monomials in `gens` of total weight exactly `w`, generators taken in
/// the given order with non-decreasing index.
fn monomials_of_weight(gens: &[Generator], w: u32) -> Vec<QMonomial> {
    fn rec(gens: &[Generator], start: usize, rem: u32, cur: &mut Vec<Generator>, out: &mut Vec<QMonomial>) {
        if rem == 0 {
            out.push(QMonomial::new(cur.iter().map(|&g| (g, 1))));
            return;
        }
        for i in start..gens.len() {
            let gw = gens[i].weight();
            if gw <= rem {
                cur.push(gens[i]);
                rec(gens, i, rem - gw, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, w, &mut Vec::new(), &mut out);
    out
}

/// Monomials in `E_2, E_4, E_6` at `q^d` for every `d | level`, of weight at
/// most `2 * max_half_weight`, ordered by weight.
///
/// With `include_phi`, the products of `Phi_1, Phi_3, Phi_5` at the same
/// arguments (weight at least 2) are listed first; they span the same space
/// but give sparser certificates for targets built from `Phi`.
pub fn spanning_set(level: u32, max_half_weight: u32, include_phi: bool) -> Vec<QMonomial> {
    assert!(level >= 1, "level must be positive");
    let divs = divisors(level);
    let mut eis = Vec::new();
    let mut phis = Vec::new();
    for weight in [2u32, 4, 6] {
        for &d in &divs {
            eis.push(Generator::Eisenstein { weight, dilation: d });
            phis.push(Generator::Phi {
                index: weight - 1,
                dilation: d,
            });
        }
    }
    let mut out = Vec::new();
    if include_phi {
        for h in 1..=max_half_weight {
            out.extend(monomials_of_weight(&phis, 2 * h));
        }
    }
    out.push(QMonomial::one());
    for h in 1..=max_half_weight {
        out.extend(monomials_of_weight(&eis, 2 * h));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Require the combination to have zero constant term.
    pub zero_constant_term: bool,
    /// Extra coefficient equations demanded beyond the span dimension.
    pub margin: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            zero_constant_term: false,
            margin: 50,
        }
    }
}

/// Exact coordinates of a target series in an explicit spanning set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipCertificate {
    pub target: String,
    pub spanning_set: Vec<QMonomial>,
    #[serde(serialize_with = "serialize_rationals")]
    pub coordinates: Vec<BigRational>,
    /// The combination matches the target through `q^residual_order`.
    pub residual_order: usize,
    pub zero_constant_term: bool,
}

fn serialize_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl MembershipCertificate {
    /// Nonzero coordinates.
    pub fn support(&self) -> Vec<(&QMonomial, &BigRational)> {
        self.spanning_set
            .iter()
            .zip(&self.coordinates)
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Expands the claimed combination from scratch.
    pub fn combination(&self) -> Series {
        let mut cache = ExpansionCache::new(self.residual_order);
        let mut acc = Series::zero(self.residual_order);
        for (m, c) in self.spanning_set.iter().zip(&self.coordinates) {
            if !c.is_zero() {
                acc = &acc + &m.expand(&mut cache).scale(c);
            }
        }
        acc
    }

    /// Re-expands the combination and compares it with `target` through the
    /// residual order; also checks the constant term when required.
    pub fn verify(&self, target: &Series) -> bool {
        if target.trunc_order() < self.residual_order {
            return false;
        }
        let combo = self.combination();
        let matches = combo.first_difference(&target.truncate(self.residual_order)).is_none();
        matches && (!self.zero_constant_term || combo.coeff(0).is_zero())
    }
}

/// Incremental reduced row echelon form over the rationals.
struct Echelon {
    ncols: usize,
    /// Each pivot row holds `ncols` coefficients followed by the right-hand side.
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Adds an equation; returns `false` when it is inconsistent with the
    /// equations already present.
    fn push(&mut self, mut row: Vec<BigRational>) -> bool {
        for (pc, prow) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for (x, p) in row.iter_mut().zip(prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        match row[..self.ncols].iter().position(|x| !x.is_zero()) {
            None => row[self.ncols].is_zero(),
            Some(pc) => {
                let inv = row[pc].recip();
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                for (_, prow) in self.rows.iter_mut() {
                    if prow[pc].is_zero() {
                        continue;
                    }
                    let f = prow[pc].clone();
                    for (x, p) in prow.iter_mut().zip(&row) {
                        if !p.is_zero() {
                            *x -= &f * p;
                        }
                    }
                }
                self.rows.push((pc, row));
                true
            }
        }
    }

    /// The particular solution with every free variable set to zero.
    fn solution(&self) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); self.ncols];
        for (pc, row) in &self.rows {
            x[*pc] = row[self.ncols].clone();
        }
        x
    }
}

/// Finds rational coordinates `c` with `sum_i c_i span_i = target` through
/// `q^trunc`.
pub fn solve_in_span(
    target: &Series,
    span: &[QMonomial],
    trunc: usize,
    options: SolveOptions,
) -> Result<MembershipCertificate, QuasimodError> {
    let needed = span.len() + options.margin;
    if trunc < needed || target.trunc_order() < trunc {
        return Err(QuasimodError::InsufficientTruncation {
            order: trunc.min(target.trunc_order()),
            dim: span.len(),
            needed,
        });
    }
    if options.zero_constant_term && !target.coeff(0).is_zero() {
        return Err(QuasimodError::NonzeroConstantTerm);
    }
    let mut cache = ExpansionCache::new(trunc);
    let columns: Vec<Series> = span.iter().map(|m| m.expand(&mut cache)).collect();
    let mut echelon = Echelon::new(span.len());
    for n in 0..=trunc {
        let mut row: Vec<BigRational> = columns.iter().map(|c| c.coeff(n).clone()).collect();
        let rhs = if n == 0 && options.zero_constant_term {
            BigRational::zero()
        } else {
            target.coeff(n).clone()
        };
        row.push(rhs);
        if !echelon.push(row) {
            return Err(QuasimodError::NoSolutionWithinTruncation {
                first_failing_order: n,
            });
        }
    }
    Ok(MembershipCertificate {
        target: String::new(),
        spanning_set: span.to_vec(),
        coordinates: echelon.solution(),
        residual_order: trunc,
        zero_constant_term: options.zero_constant_term,
    })
}

/// Exponent vectors `(a_1, ..., a_j)` with `a_1 + 2 a_2 + ... + j a_j = j`,
/// in lexicographic order.
pub fn weighted_compositions(j: u32) -> Vec<Vec<u32>> {
    fn rec(i: u32, j: u32, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > j {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=rem / i {
            cur.push(a);
            rec(i + 1, j, rem - a * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, j, j, &mut Vec::new(), &mut out);
    out
}

/// `prod_i Phi_{2i-1}(q^k)^{a_i}`.
pub fn phi_monomial(exponents: &[u32], k: u32) -> QMonomial {
    QMonomial::new(exponents.iter().enumerate().map(|(i, &a)| {
        (
            Generator::Phi {
                index: 2 * i as u32 + 1,
                dilation: k,
            },
            a,
        )
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentationTerm {
    pub exponents: Vec<u32>,
    pub alpha: BigInt,
}

/// Integer coefficients `alpha` with
/// `Cbar[k]_{2j} = 2 Pbar sum alpha_a prod_i Phi_{2i-1}(q^k)^{a_i}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Representation {
    pub k: u32,
    pub j: u32,
    pub terms: Vec<RepresentationTerm>,
    pub certificate: MembershipCertificate,
}

impl Representation {
    /// `"(a_1,...,a_j)" -> alpha`.
    pub fn keyed(&self) -> BTreeMap<String, BigInt> {
        self.terms
            .iter()
            .map(|t| {
                let key = t
                    .exponents
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                (format!("({key})"), t.alpha.clone())
            })
            .collect()
    }
}

pub fn find_representation(k: u32, j: u32, trunc: usize) -> Result<Representation, QuasimodError> {
    if k == 0 || j == 0 {
        return Err(QuasimodError::PreconditionViolated("k and j must be positive".into()));
    }
    let exps = weighted_compositions(j);
    let span: Vec<QMonomial> = exps.iter().map(|a| phi_monomial(a, k)).collect();
    let moment = moment_series(k, 2 * j, trunc).series;
    let twice_pbar = overpartition_gf(trunc).scale_int(2);
    let target = &moment * &twice_pbar.inverse()?;
    let options = SolveOptions {
        zero_constant_term: true,
        ..SolveOptions::default()
    };
    let mut certificate = solve_in_span(&target, &span, trunc, options)?;
    certificate.target = format!("Cbar[{k}]_{}/(2 Pbar)", 2 * j);
    let mut terms = Vec::with_capacity(exps.len());
    for ((a, m), c) in exps.into_iter().zip(&span).zip(&certificate.coordinates) {
        if !c.is_integer() {
            return Err(QuasimodError::NonIntegerCoefficients {
                monomial: m.to_string(),
                value: c.to_string(),
            });
        }
        terms.push(RepresentationTerm {
            exponents: a,
            alpha: c.to_integer(),
        });
    }
    Ok(Representation {
        k,
        j,
        terms,
        certificate,
    })
}

/// `delta_q^m(Cbar[k]_{2j}) / Pbar` through `q^trunc`.
pub fn theorem_target(k: u32, j: u32, m: u32, trunc: usize) -> Series {
    let moment = moment_series(k, 2 * j, trunc).series.delta_q_pow(m);
    let inv = overpartition_gf(trunc).inverse().expect("Pbar is a unit");
    &moment * &inv
}

/// Certifies `delta_q^m(Cbar[k]_{2j}) in Pbar * Wbar_l(Gamma_0(lcm(2, k)))`.
pub fn certify_theorem(
    k: u32,
    j: u32,
    m: u32,
    l: u32,
    trunc: usize,
) -> Result<MembershipCertificate, QuasimodError> {
    if k == 0 || j == 0 {
        return Err(QuasimodError::PreconditionViolated("k and j must be positive".into()));
    }
    if j + m > l {
        return Err(QuasimodError::PreconditionViolated(format!(
            "need j + m <= l, got j = {j}, m = {m}, l = {l}"
        )));
    }
    let level = 2u32.lcm(&k);
    let span = spanning_set(level, l, true);
    let target = theorem_target(k, j, m, trunc);
    let options = SolveOptions {
        zero_constant_term: true,
        ..SolveOptions::default()
    };
    let mut cert = solve_in_span(&target, &span, trunc, options)?;
    cert.target = format!("delta_q^{m}(Cbar[{k}]_{})/Pbar in Wbar_{l}(Gamma0({level}))", 2 * j);
    Ok(cert)
}
