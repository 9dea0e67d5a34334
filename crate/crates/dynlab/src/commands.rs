//! Subcommand implementations. Each returns the rendered output together
//! with an exit code; input problems surface as [`CliError`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use dynlab_core::classify::{in_e, in_f1, in_f2, in_f3, in_t, FamilyTag};
use dynlab_core::exactnum::{Field, Rational};
use dynlab_core::orbit::{classify_orbit, orbit, OrbitError, OrbitPoint, OrbitStatus};
use dynlab_core::primeledger::{
    density_count, fermat_order_oracle, primitive_report, valuation, DiffLedger, FactorBudget,
    PrimitiveReport, TermLedger, TermPart,
};
use dynlab_core::ratmap::{
    has_exact_period_point, parse_field_decl, parse_map, parse_point, AlgebraicContext, AnyMap,
    ProjPoint, RatMapError, RationalMap,
};
use num_bigint::BigUint;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::report::{exit, SuiteResult};
use crate::suites::{find_suite, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Property(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Property(_) => exit::PROPERTY,
            CliError::Budget(_) => exit::BUDGET,
        }
    }
}

impl From<RatMapError> for CliError {
    fn from(e: RatMapError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::Map(e) => CliError::Input(e.to_string()),
            e => CliError::Budget(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: exit::OK,
        }
    }
}

type CmdResult = Result<Output, CliError>;

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref()
        .ok_or_else(|| CliError::Input(format!("missing --{flag}")))
}

fn parsed_map(cfg: &RunConfig) -> Result<AnyMap, CliError> {
    let text = require(&cfg.map, "map")?;
    let ctx = match &cfg.field {
        Some(decl) => parse_field_decl(decl)?,
        None => AlgebraicContext::Rationals,
    };
    Ok(parse_map(text, &ctx)?)
}

fn rational_map(cfg: &RunConfig) -> Result<RationalMap<Rational>, CliError> {
    match parsed_map(cfg)? {
        AnyMap::Rational(m) => {
            m.require_dynamical()?;
            Ok(m)
        }
        AnyMap::Algebraic(_) => Err(CliError::Input(
            "orbits and ledgers are computed over Q only".into(),
        )),
    }
}

fn start_point(cfg: &RunConfig) -> Result<ProjPoint<Rational>, CliError> {
    Ok(parse_point(require(&cfg.x0, "x0")?)?)
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn json_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[derive(Serialize)]
struct OrbitRow<'a> {
    #[serde(flatten)]
    point: &'a OrbitPoint,
    x: String,
}

pub fn cmd_orbit(cfg: &RunConfig) -> CmdResult {
    let phi = rational_map(cfg)?;
    let x0 = start_point(cfg)?;
    let steps = cfg.steps.unwrap_or(10);
    let orb = orbit(&phi, &x0, steps, cfg.digit_cap())?;
    let rows = orb.iter().map(|p| OrbitRow {
        point: p,
        x: p.to_string(),
    });
    let text = match cfg.format() {
        Format::Json => rows.map(|r| json_line(&r) + "\n").collect(),
        Format::Csv => csv_text(
            &["n", "u", "v", "x"],
            rows.map(|r| {
                vec![
                    r.point.n.to_string(),
                    r.point.u.to_string(),
                    r.point.v.to_string(),
                    r.x,
                ]
            }),
        ),
        Format::Text => rows
            .map(|r| format!("x_{} = {}\n", r.point.n, r.x))
            .collect(),
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
pub struct TagReport {
    pub test: &'static str,
    pub family: String,
    pub witness: Option<String>,
    pub canonical: Option<String>,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub map: String,
    pub degree: usize,
    pub tags: Vec<TagReport>,
    /// Whether a point of exact period 2 (resp. 3) exists over an algebraic closure.
    pub exact_period: BTreeMap<String, bool>,
}

fn tag_report<K: Field>(test: &'static str, t: FamilyTag<K>) -> TagReport {
    TagReport {
        test,
        family: t.kind.name().to_string(),
        witness: t.witness.map(|s| s.to_string()),
        canonical: t.canonical.map(|c| c.to_string()),
        detail: t.detail,
    }
}

pub fn classify_map<K: Field>(phi: &RationalMap<K>) -> Result<ClassifyReport, RatMapError> {
    phi.require_dynamical()?;
    let tags = vec![
        tag_report("in_T", in_t(phi)?),
        tag_report("in_E", in_e(phi)?),
        tag_report("in_F1", in_f1(phi)?),
        tag_report("in_F2", in_f2(phi)?),
        tag_report("in_F3", in_f3(phi)?),
    ];
    let mut exact_period = BTreeMap::new();
    for delta in [2, 3] {
        exact_period.insert(
            delta.to_string(),
            has_exact_period_point(phi, delta)?.exists,
        );
    }
    Ok(ClassifyReport {
        map: phi.to_string(),
        degree: phi.degree(),
        tags,
        exact_period,
    })
}

pub fn cmd_classify(cfg: &RunConfig) -> CmdResult {
    let report = match parsed_map(cfg)? {
        AnyMap::Rational(m) => classify_map(&m)?,
        AnyMap::Algebraic(m) => classify_map(&m)?,
    };
    let text = match cfg.format() {
        Format::Json => json_pretty(&report),
        Format::Csv => csv_text(
            &["test", "family", "witness", "canonical", "detail"],
            report.tags.iter().map(|t| {
                vec![
                    t.test.to_string(),
                    t.family.clone(),
                    t.witness.clone().unwrap_or_default(),
                    t.canonical.clone().unwrap_or_default(),
                    t.detail.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut s = format!("map {} (degree {})\n", report.map, report.degree);
            for t in &report.tags {
                let _ = write!(s, "  {:<6} {}", t.test, t.family);
                if let Some(w) = &t.witness {
                    let _ = write!(s, " via sigma = {w}");
                }
                if let Some(c) = &t.canonical {
                    let _ = write!(s, " -> {c}");
                }
                s.push('\n');
            }
            for (d, e) in &report.exact_period {
                let _ = writeln!(
                    s,
                    "  exact period {d} point: {}",
                    if *e { "yes" } else { "no" }
                );
            }
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct DiffsOutput<'a> {
    map: String,
    x0: String,
    orbit_status: &'a OrbitStatus,
    ledger: &'a DiffLedger,
    report: &'a PrimitiveReport,
}

pub fn cmd_diffs(cfg: &RunConfig) -> CmdResult {
    let phi = rational_map(cfg)?;
    let x0 = start_point(cfg)?;
    let n_max = cfg.n_max.unwrap_or(10);
    let m = cfg.m.unwrap_or(1);
    if m == 0 {
        return Err(CliError::Input("--M must be at least 1".into()));
    }
    let status = classify_orbit(&phi, &x0, n_max.max(64), cfg.digit_cap())?;
    if !status.is_wandering() && !cfg.allow_unknown.unwrap_or(false) {
        return Err(CliError::Property(format!(
            "orbit is not certified wandering ({}); pass --allow-unknown to tabulate anyway",
            serde_json::to_string(&status).expect("serializable")
        )));
    }
    let ledger = DiffLedger::build(
        &phi,
        &x0,
        n_max,
        m,
        cfg.mode(),
        cfg.budget(),
        cfg.exec(),
        cfg.digit_cap(),
    )?;
    let terms = TermLedger::build(
        ledger.orbit.clone(),
        TermPart::Numerator,
        cfg.budget(),
        cfg.exec(),
    );
    let report = primitive_report(&ledger, Some(&terms));
    let censored = ledger.entries.iter().any(|e| e.censored())
        || terms.factorizations.iter().any(|f| !f.is_complete());
    let text = match cfg.format() {
        Format::Json => json_pretty(&DiffsOutput {
            map: phi.to_string(),
            x0: x0.to_string(),
            orbit_status: &status,
            ledger: &ledger,
            report: &report,
        }),
        Format::Csv => {
            let mut rows = Vec::new();
            for (e, r) in ledger.entries.iter().zip(&report.rows) {
                for p in &e.primes {
                    let exp = valuation(&e.value, p).unwrap_or(0);
                    rows.push(vec![
                        e.n.to_string(),
                        e.delta.to_string(),
                        p.to_string(),
                        exp.to_string(),
                        r.primitive.primes.contains(p).to_string(),
                        r.doubly_primitive.contains(p).to_string(),
                    ]);
                }
                if let Some(c) = &e.factorization.cofactor {
                    rows.push(vec![
                        e.n.to_string(),
                        e.delta.to_string(),
                        format!("cofactor:{c}"),
                        "1".into(),
                        "".into(),
                        "".into(),
                    ]);
                }
            }
            csv_text(
                &["n", "delta", "p", "e", "primitive", "doubly_primitive"],
                rows,
            )
        }
        Format::Text => {
            let mut s = format!("{}  (x0 = {x0}, {})\n", phi, report.scope);
            for r in &report.rows {
                let list = |v: &[BigUint]| {
                    v.iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let _ = writeln!(
                    s,
                    "  n={:<3} D={:<2} primitive [{}]{} doubly [{}]",
                    r.n,
                    r.delta,
                    list(&r.primitive.primes),
                    if r.primitive.censored {
                        " (censored)"
                    } else {
                        ""
                    },
                    list(&r.doubly_primitive)
                );
            }
            s
        }
    };
    Ok(Output {
        text,
        code: if censored { exit::BUDGET } else { exit::OK },
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdResult {
    let id = cfg.suite.as_deref().unwrap_or("all");
    let specs: Vec<_> = if id == "all" {
        SUITES.iter().collect()
    } else {
        let known = SUITES.iter().map(|s| s.id).collect::<Vec<_>>().join(", ");
        vec![find_suite(id).ok_or_else(|| {
            CliError::Input(format!("unknown suite '{id}' (known: all, {known})"))
        })?]
    };
    let sc = cfg.suite_config();
    let results: Vec<SuiteResult> = specs.iter().map(|s| (s.run)(&sc)).collect();
    let code = results
        .iter()
        .map(SuiteResult::exit_code)
        .fold(exit::OK, |acc, c| match (acc, c) {
            (exit::PROPERTY, _) | (_, exit::PROPERTY) => exit::PROPERTY,
            (exit::BUDGET, _) | (_, exit::BUDGET) => exit::BUDGET,
            _ => exit::OK,
        });
    let text = match cfg.format() {
        Format::Json => results.iter().map(|r| json_line(r) + "\n").collect(),
        Format::Csv => csv_text(
            &["suite", "check", "status", "anchor", "details"],
            results.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    vec![
                        r.suite.clone(),
                        c.name.clone(),
                        json_line(&c.status).trim_matches('"').to_string(),
                        c.anchor.clone(),
                        c.details.clone(),
                    ]
                })
            }),
        ),
        Format::Text => results.iter().map(SuiteResult::render_text).collect(),
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
pub struct DensityRow {
    pub x: u64,
    pub count: usize,
    /// Count from the order-of-2 oracle (Fermat mode only).
    pub oracle: Option<usize>,
    /// x^(1/2) / ln x, for comparison.
    pub sqrt_over_log: f64,
}

/// With a map, counts primes of the orbit numerators u_n; without one,
/// counts primes of the Fermat numbers F_0..F_16 and compares each
/// checkpoint against the multiplicative-order oracle.
pub fn cmd_density(cfg: &RunConfig, checkpoints: &[u64]) -> CmdResult {
    let checkpoints: Vec<u64> = if checkpoints.is_empty() {
        vec![10_000, 100_000]
    } else {
        checkpoints.to_vec()
    };
    let top = *checkpoints.iter().max().expect("nonempty");
    let (orb, budget, oracle) = match &cfg.map {
        Some(_) => {
            let phi = rational_map(cfg)?;
            let x0 = start_point(cfg)?;
            (
                orbit(&phi, &x0, cfg.steps.unwrap_or(12), cfg.digit_cap())?,
                cfg.budget(),
                None,
            )
        }
        None => {
            // every prime factor of F_n exceeds 2^(n+1), so F_0..F_16 covers p <= 1.3e5
            if top > 131_072 {
                return Err(CliError::Input(
                    "Fermat mode supports checkpoints up to 131072".into(),
                ));
            }
            let fermat = dynlab_core::ratmap::parse_rational_map("t^2 - 2*t + 2")?;
            let orb = orbit(
                &fermat,
                &ProjPoint::Finite(Rational::from_integer(3.into())),
                16,
                cfg.digit_cap(),
            )?;
            (
                orb,
                FactorBudget::trial_only(top),
                Some(fermat_order_oracle(top, cfg.exec())),
            )
        }
    };
    let terms = TermLedger::build(orb, TermPart::Numerator, budget, cfg.exec());
    let observed: BTreeSet<BigUint> = terms.observed_primes();
    let rows: Vec<DensityRow> = checkpoints
        .iter()
        .map(|&x| DensityRow {
            x,
            count: density_count(&observed, &BigUint::from(x)),
            oracle: oracle.as_ref().map(|o| o.range(..=x).count()),
            sqrt_over_log: (x as f64).sqrt() / (x as f64).ln(),
        })
        .collect();
    let mismatch = rows.iter().any(|r| r.oracle.is_some_and(|o| o != r.count));
    let text = match cfg.format() {
        Format::Json => rows.iter().map(|r| json_line(r) + "\n").collect(),
        Format::Csv => csv_text(
            &["x", "count", "oracle", "sqrt_over_log"],
            rows.iter().map(|r| {
                vec![
                    r.x.to_string(),
                    r.count.to_string(),
                    r.oracle.map(|o| o.to_string()).unwrap_or_default(),
                    format!("{:.3}", r.sqrt_over_log),
                ]
            }),
        ),
        Format::Text => rows
            .iter()
            .map(|r| match r.oracle {
                Some(o) => format!(
                    "P({}) = {} (oracle {o}; sqrt(x)/ln x = {:.1})\n",
                    r.x, r.count, r.sqrt_over_log
                ),
                None => format!(
                    "P({}) = {} (sqrt(x)/ln x = {:.1})\n",
                    r.x, r.count, r.sqrt_over_log
                ),
            })
            .collect(),
    };
    Ok(Output {
        text,
        code: if mismatch { exit::PROPERTY } else { exit::OK },
    })
}
