use std::io::{self, Write};

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crankforge::combinatorics::{crank_table_bruteforce, CrankConvention, CrankTable};
use crankforge::cranks::{crank_table_from_series, inequality_scan, moment_series, positive_moment};
use crankforge::numeric::{
    check_e2_anomaly, check_modularity, eval_series, sample_gamma0_pair, TransformationReport,
};
use crankforge::quasimod::{certify_theorem, eisenstein, find_representation, theorem_target, QuasimodError};
use crankforge::qseries::{overpartition_gf, partition_gf, phi};
use crankforge::verify::{self, IdentityReport};
use crankforge::{BigInt, GammaElement, HalfPlanePoint, ModularForm, Series};

use crate::config::{Format, GammaArg, RunConfig, TauArg, SCHEMA};
use crate::{Check, CliError, Convention, SeriesName, Source, Suite};

/// A JSON number when the value fits in an `i64`, else a decimal string.
fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn print_json(v: &Value) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn table_json(t: &CrankTable, source: &str) -> Value {
    let rows: Vec<Value> = t
        .rows()
        .map(|(_, n, m, c)| json!({ "n": n, "m": m, "count": big(c) }))
        .collect();
    json!({ "schema": SCHEMA, "k": t.k, "n_max": t.n_max, "source": source, "rows": rows })
}

fn write_table_csv(t: &CrankTable) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["k", "n", "m", "count"])?;
    for (k, n, m, c) in t.rows() {
        w.write_record([k.to_string(), n.to_string(), m.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn table(config: &RunConfig, k: u32, n: usize, source: Source, convention: Convention) -> Result<bool, CliError> {
    if k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    let convention = match convention {
        Convention::Gf => CrankConvention::GeneratingFunction,
        Convention::Raw => CrankConvention::Raw,
    };
    if source != Source::Brute && convention == CrankConvention::Raw {
        return Err(CliError::Usage("the product expansion only gives the generating-function convention".into()));
    }
    let brute = || -> Result<CrankTable, CliError> {
        config.check_cap(n)?;
        Ok(crank_table_bruteforce(k, n, convention)?)
    };
    match source {
        Source::Brute | Source::Series => {
            let (t, name) = if source == Source::Brute {
                (brute()?, "brute")
            } else {
                (crank_table_from_series(k, n), "series")
            };
            match config.format {
                Format::Csv => write_table_csv(&t)?,
                Format::Json => print_json(&table_json(&t, name))?,
            }
            Ok(true)
        }
        Source::Both => {
            let diff = brute()?.diff(&crank_table_from_series(k, n));
            match config.format {
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout().lock());
                    w.write_record(["k", "n", "m", "brute", "series"])?;
                    for d in &diff {
                        w.write_record([
                            k.to_string(),
                            d.n.to_string(),
                            d.m.to_string(),
                            d.left.to_string(),
                            d.right.to_string(),
                        ])?;
                    }
                    w.flush()?;
                }
                Format::Json => {
                    let rows: Vec<Value> = diff
                        .iter()
                        .map(|d| json!({ "n": d.n, "m": d.m, "brute": big(&d.left), "series": big(&d.right) }))
                        .collect();
                    print_json(&json!({
                        "schema": SCHEMA, "k": k, "n_max": n, "pass": diff.is_empty(), "diff": rows
                    }))?;
                }
            }
            Ok(diff.is_empty())
        }
    }
}

fn coefficient(s: &Series, n: usize) -> Value {
    let c = s.coeff(n);
    if c.is_integer() {
        big(&c.to_integer())
    } else {
        json!(c.to_string())
    }
}

pub fn moments(config: &RunConfig, k: u32, ell: u32, n: usize, positive: bool) -> Result<bool, CliError> {
    if k == 0 {
        return Err(CliError::Usage("k must be positive".into()));
    }
    let m = if positive {
        positive_moment(k, ell, n)
    } else {
        moment_series(k, ell, n)
    };
    match config.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["k", "ell", "n", "value"])?;
            for i in 0..=n {
                w.write_record([k.to_string(), ell.to_string(), i.to_string(), m.series.coeff(i).to_string()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let values: Vec<Value> = (0..=n).map(|i| coefficient(&m.series, i)).collect();
            print_json(&json!({
                "schema": SCHEMA, "k": k, "ell": ell, "positive": positive, "values": values
            }))?;
        }
    }
    Ok(true)
}

pub struct VerifyArgs {
    pub k: Option<Vec<u32>>,
    pub n: Option<usize>,
    pub cases: Option<Vec<usize>>,
    pub j: Option<Vec<u32>>,
    pub m: Option<u32>,
    pub l: Option<u32>,
    pub samples: usize,
}

impl VerifyArgs {
    fn ks(&self, default: &[u32]) -> Result<Vec<u32>, CliError> {
        let ks = self.k.clone().unwrap_or_else(|| default.to_vec());
        if ks.contains(&0) {
            return Err(CliError::Usage("k must be positive".into()));
        }
        Ok(ks)
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Dyson => "dyson",
        Suite::Chern => "chern",
        Suite::ChernHalf => "chern-half",
        Suite::Nov => "nov",
        Suite::Ov => "ov",
        Suite::Ramanujan => "ramanujan",
        Suite::E2 => "e2",
        Suite::Pbar => "pbar",
        Suite::Rep => "rep",
        Suite::Oracle => "oracle",
        Suite::Bijection => "bijection",
        Suite::Quasimod => "quasimod",
        Suite::Numeric => "numeric",
        Suite::All => "all",
    }
}

const ALL_SUITES: [Suite; 13] = [
    Suite::Oracle,
    Suite::Nov,
    Suite::Ov,
    Suite::Dyson,
    Suite::Chern,
    Suite::ChernHalf,
    Suite::Ramanujan,
    Suite::E2,
    Suite::Pbar,
    Suite::Rep,
    Suite::Quasimod,
    Suite::Bijection,
    Suite::Numeric,
];

fn certify_report(k: u32, j: u32, m: u32, l: u32, order: usize) -> IdentityReport {
    let cert = certify_theorem(k, j, m, l, order);
    let ok = cert
        .as_ref()
        .is_ok_and(|c| c.verify(&theorem_target(k, j, m, order)));
    IdentityReport {
        name: format!("certificate for k = {k}, j = {j}, m = {m}, l = {l}"),
        pass: ok,
        checked: 1,
        first_failure: match &cert {
            Ok(_) if ok => None,
            Ok(_) => Some(verify::Failure {
                at: "re-verification".into(),
                expected: "combination equals target".into(),
                actual: "mismatch".into(),
            }),
            Err(e) => Some(verify::Failure {
                at: format!("k = {k}, j = {j}, m = {m}, l = {l}"),
                expected: "certificate".into(),
                actual: e.to_string(),
            }),
        },
        notes: match &cert {
            Ok(c) => vec![c
                .support()
                .iter()
                .map(|(mono, x)| format!("{x} * {mono}"))
                .collect::<Vec<_>>()
                .join(" + ")],
            Err(_) => Vec::new(),
        },
    }
}

fn numeric_report(config: &RunConfig, samples: usize) -> Result<IdentityReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let tol = crankforge::numeric::DEFAULT_TOLERANCE;
    let mut r = IdentityReport {
        name: format!("transformation laws (seed {})", config.seed),
        pass: true,
        checked: 0,
        first_failure: None,
        notes: Vec::new(),
    };
    let mut record = |label: String, rep: TransformationReport, expect: bool| {
        r.checked += 1;
        if rep.pass != expect {
            r.pass = false;
            r.first_failure.get_or_insert(verify::Failure {
                at: format!("{label} at tau = {:?}", rep.tau),
                expected: if expect { "pass" } else { "fail" }.into(),
                actual: format!("defect {:e}", rep.defect),
            });
        }
    };
    for _ in 0..samples {
        let tau = crankforge::numeric::sample_tau(&mut rng);
        record("E2 anomaly".into(), check_e2_anomaly(&tau, config.order, tol, true)?, true);
        record("E2 without anomaly".into(), check_e2_anomaly(&tau, config.order, tol, false)?, false);
    }
    for (w, d) in [(4, 1), (6, 1), (4, 2), (4, 3), (4, 4)] {
        let f = ModularForm::eisenstein(w, d, config.order);
        for _ in 0..samples {
            let (g, tau) = sample_gamma0_pair(&mut rng, d, 10);
            record(format!("E{w}(q^{d})"), check_modularity(&f, &g, &tau, tol)?, true);
        }
        if d > 1 {
            let tau = HalfPlanePoint::new(0.1, 1.2)?;
            let rep = crankforge::numeric::check_transformation(&f, &GammaElement::inversion(), &tau, tol)?;
            record(format!("E{w}(q^{d}) under inversion"), rep, false);
        }
    }
    Ok(r)
}

fn run_suite(config: &RunConfig, suite: Suite, a: &VerifyArgs) -> Result<Vec<IdentityReport>, CliError> {
    let order = config.order;
    let capped = |n: usize| config.check_cap(n).map(|_| n);
    Ok(match suite {
        Suite::Dyson => {
            let n = a.n.unwrap_or(40);
            vec![verify::dyson_series(n), verify::dyson_enumeration(n.min(config.cap))?]
        }
        Suite::Chern => vec![verify::chern(&a.ks(&[1, 2, 3])?, capped(a.n.unwrap_or(20))?)?],
        Suite::ChernHalf => vec![verify::chern_half_moment(&a.ks(&[1, 2, 3])?, capped(a.n.unwrap_or(20))?)?],
        Suite::Nov => vec![verify::nov_theorem(&a.ks(&[1, 2, 3, 4])?, capped(a.n.unwrap_or(25))?)?],
        Suite::Ov => {
            let ks = a.ks(&[1, 2, 3])?;
            let n = capped(a.n.unwrap_or(25))?;
            vec![verify::ov_lemma(&ks, n)?, verify::ov_corollary(&ks, n)?]
        }
        Suite::Ramanujan => vec![verify::ramanujan(a.cases.as_deref().unwrap_or(&[6, 17, 28]))],
        Suite::E2 => vec![verify::e2_derivative(order)],
        Suite::Pbar => vec![verify::pbar_derivative(order)],
        Suite::Rep => {
            let js = a.j.clone().unwrap_or_else(|| vec![1, 2, 3]);
            vec![verify::representation(&a.ks(&[1, 2, 3])?, &js, order)]
        }
        Suite::Oracle => vec![verify::oracle_equivalence(&a.ks(&[1, 2, 3, 4])?, capped(a.n.unwrap_or(20))?)?],
        Suite::Bijection => vec![verify::bijection(&a.ks(&[1, 2, 3, 4, 5])?, a.n.unwrap_or(30))],
        Suite::Quasimod => {
            let ks = a.ks(&[1, 2, 3])?;
            match (&a.j, a.m, a.l) {
                (Some(js), m, Some(l)) => {
                    let m = m.unwrap_or(0);
                    let mut out = Vec::new();
                    for &k in &ks {
                        for &j in js {
                            if j == 0 || j + m > l {
                                return Err(CliError::Usage(format!("need 1 <= j and j + m <= l, got j = {j}, m = {m}, l = {l}")));
                            }
                            out.push(certify_report(k, j, m, l, order));
                        }
                    }
                    out
                }
                (None, None, l) => vec![verify::quasimodularity(&ks, l.unwrap_or(2), order)],
                _ => return Err(CliError::Usage("give --l together with --j (and optionally --m)".into())),
            }
        }
        Suite::Numeric => vec![numeric_report(config, a.samples)?],
        Suite::All => {
            let defaults = VerifyArgs {
                k: None,
                n: None,
                cases: None,
                j: None,
                m: None,
                l: None,
                samples: a.samples,
            };
            let mut out = Vec::new();
            for s in ALL_SUITES {
                out.extend(run_suite(config, s, &defaults)?);
            }
            out
        }
    })
}

pub fn verify(config: &RunConfig, suite: Suite, args: &VerifyArgs) -> Result<bool, CliError> {
    let reports = run_suite(config, suite, args)?;
    let pass = reports.iter().all(|r| r.pass);
    print_json(&json!({
        "schema": SCHEMA,
        "suite": suite_name(suite),
        "order": config.order,
        "seed": config.seed,
        "pass": pass,
        "reports": reports,
    }))?;
    Ok(pass)
}

pub fn represent(config: &RunConfig, k: u32, j: u32) -> Result<bool, CliError> {
    if k == 0 || j == 0 {
        return Err(CliError::Usage("k and j must be positive".into()));
    }
    match find_representation(k, j, config.order) {
        Ok(rep) => {
            let alpha: serde_json::Map<String, Value> =
                rep.keyed().iter().map(|(key, a)| (key.clone(), big(a))).collect();
            print_json(&json!({
                "schema": SCHEMA, "k": k, "j": j, "order": config.order, "pass": true, "alpha": alpha
            }))?;
            Ok(true)
        }
        Err(e @ (QuasimodError::InsufficientTruncation { .. } | QuasimodError::PreconditionViolated(_))) => {
            Err(CliError::Usage(e.to_string()))
        }
        Err(e) => {
            print_json(&json!({
                "schema": SCHEMA, "k": k, "j": j, "order": config.order, "pass": false, "error": e.to_string()
            }))?;
            Ok(false)
        }
    }
}

pub fn certify(config: &RunConfig, k: u32, j: u32, m: u32, l: u32) -> Result<bool, CliError> {
    if k == 0 || j == 0 || j + m > l {
        return Err(CliError::Usage(format!(
            "need k >= 1, j >= 1 and j + m <= l, got k = {k}, j = {j}, m = {m}, l = {l}"
        )));
    }
    match certify_theorem(k, j, m, l, config.order) {
        Ok(cert) => {
            let verified = cert.verify(&theorem_target(k, j, m, config.order));
            let mut v = with_schema(serde_json::to_value(&cert)?);
            v["verified"] = json!(verified);
            v["pass"] = json!(verified);
            print_json(&v)?;
            Ok(verified)
        }
        Err(e @ QuasimodError::InsufficientTruncation { .. }) => Err(CliError::Usage(e.to_string())),
        Err(e) => {
            let mut v = json!({ "schema": SCHEMA, "k": k, "j": j, "m": m, "l": l, "pass": false, "error": e.to_string() });
            if let QuasimodError::NoSolutionWithinTruncation { first_failing_order } = e {
                v["first_failing_order"] = json!(first_failing_order);
            }
            print_json(&v)?;
            Ok(false)
        }
    }
}

pub struct EvalArgs {
    pub series: SeriesName,
    pub dilation: u32,
    pub tau: TauArg,
    pub check: Check,
    pub gamma: Option<GammaArg>,
    pub level: Option<u32>,
    pub samples: usize,
    pub tol: f64,
}

fn named_series(name: SeriesName, d: usize, order: usize) -> (Series, String, Option<u32>) {
    let arg = if d == 1 { "(q)".to_string() } else { format!("(q^{d})") };
    match name {
        SeriesName::E2 => (eisenstein(2, d, order), format!("E2{arg}"), Some(2)),
        SeriesName::E4 => (eisenstein(4, d, order), format!("E4{arg}"), Some(4)),
        SeriesName::E6 => (eisenstein(6, d, order), format!("E6{arg}"), Some(6)),
        SeriesName::Phi1 => (phi(1, d, order), format!("Phi1{arg}"), None),
        SeriesName::Phi3 => (phi(3, d, order), format!("Phi3{arg}"), None),
        SeriesName::Phi5 => (phi(5, d, order), format!("Phi5{arg}"), None),
        SeriesName::P => (partition_gf(order).substitute_power(d), format!("P{arg}"), None),
        SeriesName::Pbar => (overpartition_gf(order).substitute_power(d), format!("Pbar{arg}"), None),
    }
}

fn report_json(r: &TransformationReport) -> Result<Value, CliError> {
    Ok(with_schema(serde_json::to_value(r)?))
}

pub fn eval(config: &RunConfig, a: &EvalArgs) -> Result<bool, CliError> {
    if a.dilation == 0 {
        return Err(CliError::Usage("dilation must be positive".into()));
    }
    let tau = HalfPlanePoint::new(a.tau.0, a.tau.1)?;
    let (series, label, weight) = named_series(a.series, a.dilation as usize, config.order);
    match a.check {
        Check::Value => {
            let v = eval_series(&series, &tau)?;
            print_json(&json!({
                "schema": SCHEMA, "series": label, "tau": [a.tau.0, a.tau.1],
                "order": config.order, "value": [v.re, v.im]
            }))?;
            Ok(true)
        }
        Check::Anomaly | Check::NoAnomaly => {
            let r = check_e2_anomaly(&tau, config.order, a.tol, a.check == Check::Anomaly)?;
            print_json(&report_json(&r)?)?;
            Ok(r.pass)
        }
        Check::Modularity => {
            let weight = weight.ok_or_else(|| {
                CliError::Usage(format!("{label} is not tagged with a weight; use e2, e4 or e6"))
            })?;
            let form = ModularForm {
                series,
                weight,
                level: a.level.unwrap_or(a.dilation),
            };
            if let Some(GammaArg([aa, b, c, d])) = a.gamma {
                let g = GammaElement::new(aa, b, c, d)?;
                let r = check_modularity(&form, &g, &tau, a.tol)?;
                print_json(&report_json(&r)?)?;
                return Ok(r.pass);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut reports = Vec::with_capacity(a.samples);
            for _ in 0..a.samples {
                let (g, t) = sample_gamma0_pair(&mut rng, form.level, 10);
                let r = check_modularity(&form, &g, &t, a.tol)?;
                reports.push(json!({ "gamma": [g.a, g.b, g.c, g.d], "report": r }));
            }
            let pass = reports.iter().all(|r| r["report"]["pass"] == json!(true));
            print_json(&json!({
                "schema": SCHEMA, "series": label, "level": form.level, "seed": config.seed,
                "pass": pass, "reports": reports
            }))?;
            Ok(pass)
        }
    }
}

pub fn scan_inequality(config: &RunConfig, d: u32, k: u32, ell: u32, n: usize) -> Result<bool, CliError> {
    if d == 0 || k == 0 {
        return Err(CliError::Usage("d and k must be positive".into()));
    }
    let scan = inequality_scan(d, k, ell, n);
    match config.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["d", "k", "ell", "n", "lhs", "rhs", "holds", "equal"])?;
            for r in &scan.rows {
                w.write_record([
                    d.to_string(),
                    k.to_string(),
                    ell.to_string(),
                    r.n.to_string(),
                    r.lhs.to_string(),
                    r.rhs.to_string(),
                    r.holds.to_string(),
                    r.equal.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = scan
                .rows
                .iter()
                .map(|r| json!({ "n": r.n, "lhs": big(&r.lhs), "rhs": big(&r.rhs), "holds": r.holds, "equal": r.equal }))
                .collect();
            print_json(&json!({
                "schema": SCHEMA, "description": scan.description, "pass": scan.all_hold,
                "equality_set": scan.equality_set, "rows": rows
            }))?;
        }
    }
    Ok(scan.all_hold)
}
