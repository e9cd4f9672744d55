//! Command-line front end: `compute`, `verify` and `sweep`.
//!
//! Exit codes are 0 on success, 1 on a verification mismatch, 2 on invalid
//! parameters and 3 when the brute-force budget is exceeded.

use std::io::{self, Write};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::character_sums::{
    f_closed, f_enumerate_all, gauss_sum_closed, gaussian_period_closed, CharSystem, CosetVector,
};
use crate::cyclic_code::{
    brute_distribution_with, build_code, semi_analytic_distribution, CodeParams, CodeShape,
    WeightDistribution, DEFAULT_BRUTE_BUDGET,
};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::exec::{configure_threads, map_ordered, Exec};
use crate::field_tower::{is_prime, FieldTower};
use crate::theorem_tables::{
    classify, instantiate_table, table_distribution, Table, TableInputs, TheoremCase,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_BAD_PARAMS: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Default r²·n cap per parameter set during a sweep.
pub const DEFAULT_SWEEP_BUDGET: u128 = 200_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "cyclotome",
    version,
    about = "Exact weight distributions of two-zero cyclic codes"
)]
pub struct Cli {
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true, env = "CYCLOTOME_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight distribution by one method, or by each method in turn.
    Compute(ComputeArgs),
    /// Cross-check all three methods, the class counts and the character sums.
    Verify(VerifyArgs),
    /// Enumerate parameter sets up to a field size and verify each.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub h: u32,
    #[arg(long, default_value_t = 3)]
    pub e: u32,
    /// Defining polynomial of GF(r) over GF(p): comma-separated coefficients,
    /// constant term first, leading 1 included (x² + x + 3 is "3,1,1").
    #[arg(long)]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Semi,
    Table,
    All,
}

impl Method {
    fn tag(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Semi => "semi",
            Method::Table => "table",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Method::Brute)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cap on r²·n for brute force.
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
    /// Add one to a table frequency before comparing.
    #[arg(long, hide = true)]
    pub inject_table_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub max_r: u64,
    #[arg(long, default_value_t = 3)]
    pub e: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SWEEP_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub h: u32,
    pub e: u32,
    pub q: u32,
    pub r: u64,
    pub n: u64,
    #[serde(rename = "N")]
    pub n_classes: u32,
}

impl From<&CodeShape> for ParamsEcho {
    fn from(s: &CodeShape) -> Self {
        ParamsEcho {
            p: s.p,
            s: s.s,
            m: s.m,
            h: s.h,
            e: s.e,
            q: s.q,
            r: s.r,
            n: s.length,
            n_classes: s.n_classes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    Applicable {
        case: String,
        j: u32,
        gamma: u32,
        sqrt_r: u64,
    },
    NotApplicable {
        reason: String,
    },
}

impl Classification {
    fn of(shape: &CodeShape) -> (Self, Option<TheoremCase>) {
        match classify(shape) {
            Ok(c) => (
                Classification::Applicable {
                    case: c.label().to_string(),
                    j: c.j,
                    gamma: c.gamma,
                    sqrt_r: c.sqrt_r,
                },
                Some(c),
            ),
            Err(na) => (
                Classification::NotApplicable {
                    reason: na.to_string(),
                },
                None,
            ),
        }
    }

    fn describe(&self) -> String {
        match self {
            Classification::Applicable { case, j, gamma, .. } => {
                format!("case {case} (j={j}, gamma={gamma})")
            }
            Classification::NotApplicable { reason } => format!("not applicable: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, failure: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    OverBudget,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub params: ParamsEcho,
    pub method: String,
    pub classification: Classification,
    /// (weight, frequency as a decimal string), ascending by weight.
    pub distribution: Vec<(u64, String)>,
    #[serde(default)]
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    fn new(shape: &CodeShape, method: &str, classification: Classification) -> Self {
        RunReport {
            params: shape.into(),
            method: method.to_string(),
            classification,
            distribution: Vec::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
            verdict: None,
            error: None,
        }
    }

    fn set_distribution(&mut self, dist: &WeightDistribution) {
        self.distribution = dist.iter().map(|(w, f)| (w, f.to_string())).collect();
    }

    /// The distribution back as exact integers.
    pub fn weight_distribution(&self) -> WeightDistribution {
        WeightDistribution::from_pairs(
            self.distribution
                .iter()
                .map(|(w, f)| (*w, f.parse::<BigUint>().expect("decimal frequency"))),
        )
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::NonIntegerResult(_) | Error::NonIntegerFrequency(_) | Error::Io(_) => EXIT_MISMATCH,
        _ => EXIT_BAD_PARAMS,
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    configure_threads(cli.threads);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args).and_then(|reports| {
            emit_reports(&mut out, &reports, args.format)?;
            Ok(EXIT_OK)
        }),
        Command::Verify(args) => cmd_verify(args).and_then(|report| {
            emit_reports(&mut out, std::slice::from_ref(&report), args.format)?;
            Ok(if report.verdict == Some(Verdict::Pass) {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }),
        Command::Sweep(args) => {
            let reports = cmd_sweep(args);
            emit_sweep(&mut out, &reports, args.format).map(|_| EXIT_OK)
        }
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = out.flush();
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn parse_poly(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidPolynomial(format!("bad coefficient {c:?} in {text:?}")))
        })
        .collect()
}

/// Validated shape plus a lazily built field.
struct Setup {
    shape: CodeShape,
    poly: Option<Vec<u32>>,
}

impl Setup {
    fn new(args: &CodeArgs) -> Result<Self> {
        let shape = CodeShape::new(args.p, args.s, args.m, args.h, args.e)?;
        let poly = args.poly.as_deref().map(parse_poly).transpose()?;
        Ok(Setup { shape, poly })
    }

    fn code(&self) -> Result<CodeParams> {
        let mut builder = FieldTower::builder(self.shape.p as u64, self.shape.s, self.shape.m);
        if let Some(poly) = &self.poly {
            builder = builder.polynomial(poly.clone());
        }
        build_code(Arc::new(builder.build()?), self.shape.h, self.shape.e)
    }

    fn brute_work(&self) -> u128 {
        let r = self.shape.r as u128;
        r * r * self.shape.length as u128
    }
}

pub fn cmd_compute(args: &ComputeArgs) -> Result<Vec<RunReport>> {
    let setup = Setup::new(&args.code)?;
    let methods: &[Method] = match args.method {
        Method::All => &[Method::Brute, Method::Semi, Method::Table],
        ref m => std::slice::from_ref(m),
    };
    if methods.contains(&Method::Brute) && setup.brute_work() > args.budget {
        return Err(Error::BudgetExceeded {
            work: setup.brute_work(),
            budget: args.budget,
        });
    }
    let (classification, case) = Classification::of(&setup.shape);
    let mut code = None;
    let mut reports = Vec::new();
    for &method in methods {
        let start = Instant::now();
        let mut report = RunReport::new(&setup.shape, method.tag(), classification.clone());
        let dist = match (method, &case) {
            (Method::Brute, _) => {
                let params = code.get_or_insert(setup.code()?);
                Some(brute_distribution_with(
                    params,
                    Exec::default(),
                    args.budget,
                )?)
            }
            (Method::Semi, Some(case)) => {
                let params = code.get_or_insert(setup.code()?);
                Some(semi_analytic_distribution(params, case)?)
            }
            (Method::Table, Some(case)) => Some(table_distribution(case, &setup.shape)?),
            _ => None,
        };
        if let Some(dist) = dist {
            report.set_distribution(&dist);
        }
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        reports.push(report);
    }
    Ok(reports)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport> {
    let setup = Setup::new(&args.code)?;
    let start = Instant::now();
    let (classification, case) = Classification::of(&setup.shape);
    let case = match (case, &classification) {
        (Some(case), _) => case,
        (None, Classification::NotApplicable { reason }) => {
            return Err(Error::BadParameters(format!(
                "closed forms do not apply: {reason}"
            )))
        }
        (None, _) => unreachable!(),
    };
    if setup.brute_work() > args.budget {
        return Err(Error::BudgetExceeded {
            work: setup.brute_work(),
            budget: args.budget,
        });
    }
    let params = setup.code()?;
    let mut report = RunReport::new(&setup.shape, "all", classification);
    let outcome = verify_code(&params, &case, args.budget, args.inject_table_fault)?;
    report.set_distribution(&outcome.distribution);
    report.verdict = Some(if outcome.checks.iter().all(|c| c.passed) {
        Verdict::Pass
    } else {
        Verdict::Fail
    });
    report.checks = outcome.checks;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Everything `verify` checks, for callers that already hold a code.
pub struct VerifyOutcome {
    pub distribution: WeightDistribution,
    pub checks: Vec<Check>,
}

pub fn verify_code(
    params: &CodeParams,
    case: &TheoremCase,
    budget: u128,
    inject_fault: bool,
) -> Result<VerifyOutcome> {
    let shape = *params.shape();
    let brute = brute_distribution_with(params, Exec::default(), budget)?;
    let semi = semi_analytic_distribution(params, case)?;
    let mut table = table_distribution(case, &shape)?;
    if inject_fault {
        let first = table.iter().map(|(w, _)| w).find(|&w| w > 0);
        if let Some(w) = first {
            table.add(w, BigUint::from(1u32));
        }
    }
    let mut checks = vec![
        Check::new(
            "brute = table",
            diff_detail(&brute, &table, "brute", "table"),
        ),
        Check::new("semi = table", diff_detail(&semi, &table, "semi", "table")),
        Check::new("brute = semi", diff_detail(&brute, &semi, "brute", "semi")),
        Check::new(
            "distribution invariants",
            brute.check_invariants(shape.r, shape.length).err(),
        ),
        Check::new("mean weight", mean_weight_failure(&brute, &shape)),
    ];
    let chars = params.char_system();
    checks.push(Check::new(
        "class counts agree",
        class_count_failure(params, &chars, case)?,
    ));
    checks.push(Check::new(
        "class count partition",
        partition_failure(params),
    ));
    checks.push(Check::new(
        "gaussian periods",
        period_failure(&chars, case)?,
    ));
    checks.push(Check::new(
        "gauss sums",
        gauss_failure(&chars, case, shape.r)?,
    ));
    checks.push(Check::new(
        "jacobi identities",
        jacobi_failure(&chars, case, shape.r),
    ));
    if shape.n_classes == 2 {
        checks.push(Check::new(
            "two-class tables coincide",
            two_class_failure(&shape, case),
        ));
    }
    Ok(VerifyOutcome {
        distribution: brute,
        checks,
    })
}

fn diff_detail(
    a: &WeightDistribution,
    b: &WeightDistribution,
    la: &str,
    lb: &str,
) -> Option<String> {
    a.first_difference(b)
        .map(|(w, x, y)| format!("first difference at weight {w}: {la}={x}, {lb}={y}"))
}

fn mean_weight_failure(dist: &WeightDistribution, shape: &CodeShape) -> Option<String> {
    let expected = BigUint::from(shape.length) * shape.r * shape.r * (shape.q - 1) / shape.q;
    let got = dist.weight_sum();
    (got != expected).then(|| format!("sum of w*A_w = {got}, expected {expected}"))
}

fn class_count_failure(
    params: &CodeParams,
    chars: &CharSystem,
    case: &TheoremCase,
) -> Result<Option<String>> {
    let counts = f_enumerate_all(params, Exec::default());
    for c in CosetVector::all(params.n_classes()) {
        let e = counts.get(&c);
        let s = chars.f_charsum(&c, params)?;
        let k = f_closed(&c, params.shape(), case)?;
        if e != s || e != k {
            return Ok(Some(format!(
                "c = {:?}: enumerate={e}, charsum={s}, closed={k}",
                c.0
            )));
        }
    }
    Ok(None)
}

fn partition_failure(params: &CodeParams) -> Option<String> {
    let r = params.shape().r;
    let counts = f_enumerate_all(params, Exec::default());
    let total: u64 = counts.counts.iter().sum();
    let expected = r * r - 1 - 3 * (r - 1);
    (total != expected || counts.degenerate != 3 * (r - 1) + 1).then(|| {
        format!(
            "sum of f = {total}, expected {expected}; degenerate pairs {}",
            counts.degenerate
        )
    })
}

fn period_failure(chars: &CharSystem, case: &TheoremCase) -> Result<Option<String>> {
    let p = chars.tower().p();
    let mut sum = CycInt::zero(p);
    for i in 0..chars.order() {
        let eta = chars.gaussian_period(i);
        let closed = gaussian_period_closed(i, case)?;
        if eta.as_integer() != Some(closed.clone()) {
            return Ok(Some(format!(
                "class {i}: enumerated {eta}, closed form {closed}"
            )));
        }
        sum = &sum + &eta;
    }
    Ok((sum != CycInt::from_integer(p, -1)).then(|| format!("periods sum to {sum}")))
}

fn gauss_failure(chars: &CharSystem, case: &TheoremCase, r: u64) -> Result<Option<String>> {
    let n = chars.order();
    let order = chars.tower().p() * n;
    for i in 1..n {
        let tau = chars.gauss_sum(i);
        if tau.conj_norm() != CycInt::from_integer(order, r) {
            return Ok(Some(format!("|tau(chi^{i})|^2 != r")));
        }
        let closed = gauss_sum_closed(i, case)?;
        if tau.as_integer() != Some(closed.clone()) {
            return Ok(Some(format!("tau(chi^{i}) = {tau}, closed form {closed}")));
        }
    }
    Ok(None)
}

fn jacobi_failure(chars: &CharSystem, case: &TheoremCase, r: u64) -> Option<String> {
    let n = chars.order();
    let int = |v: i64| CycInt::from_integer(n, v);
    if chars.jacobi_sum(n, n) != int(r as i64 - 2) {
        return Some(format!("J(chi^N, chi^N) = {}", chars.jacobi_sum(n, n)));
    }
    let big = chars.tower().p() * n;
    for i in 1..n {
        for j in 1..n {
            let jac = chars.jacobi_sum(i, j);
            if i + j == n {
                if jac != int(-1) {
                    return Some(format!("J(chi^{i}, chi^{j}) = {jac}, expected -1"));
                }
                continue;
            }
            let lhs = &chars.gauss_sum((i + j) % n) * &jac.embed(big).expect("N divides pN");
            let rhs = &chars.gauss_sum(i) * &chars.gauss_sum(j);
            if lhs != rhs {
                return Some(format!(
                    "tau(chi^{})J(chi^{i}, chi^{j}) != tau(chi^{i})tau(chi^{j})",
                    i + j
                ));
            }
            if case.case_major == 2 && jac != int(-case.gamma_sign() * case.sqrt_r as i64) {
                return Some(format!(
                    "J(chi^{i}, chi^{j}) = {jac}, expected (-1)^(gamma+1) sqrt(r)"
                ));
            }
        }
    }
    None
}

fn two_class_failure(shape: &CodeShape, case: &TheoremCase) -> Option<String> {
    let inputs = TableInputs::new(shape, case);
    match (
        instantiate_table(Table::Case11, &inputs),
        instantiate_table(Table::Case21, &inputs),
    ) {
        (Ok(a), Ok(b)) => diff_detail(&a, &b, "table 1.1", "table 2.1"),
        (a, b) => Some(format!(
            "instantiation failed: {:?} / {:?}",
            a.err(),
            b.err()
        )),
    }
}

/// All (p, s, m, h) with e | h | q − 1 and r ≤ max_r, ordered by tuple.
pub fn sweep_shapes(max_r: u64, e: u32) -> Vec<CodeShape> {
    let mut shapes = Vec::new();
    for p in (2..=max_r).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut s = 1;
        while q <= max_r && q <= u32::MAX as u64 {
            let mut r = q;
            let mut m = 1;
            while r <= max_r {
                for h in (e as u64..q)
                    .step_by(e.max(1) as usize)
                    .filter(|h| (q - 1) % h == 0)
                {
                    if let Ok(shape) = CodeShape::new(p as u32, s, m, h as u32, e) {
                        shapes.push(shape);
                    }
                }
                r *= q;
                m += 1;
            }
            q *= p;
            s += 1;
        }
    }
    shapes.sort_by_key(|s| (s.p, s.s, s.m, s.h));
    shapes
}

pub fn cmd_sweep(args: &SweepArgs) -> Vec<RunReport> {
    let shapes = sweep_shapes(args.max_r, args.e);
    map_ordered(Exec::default(), &shapes, |shape| {
        sweep_item(shape, args.budget)
    })
}

/// Classify one parameter set and verify it as far as the budget allows.
pub fn sweep_item(shape: &CodeShape, budget: u128) -> RunReport {
    let start = Instant::now();
    let (classification, case) = Classification::of(shape);
    let mut report = RunReport::new(shape, "all", classification);
    let Some(case) = case else {
        report.verdict = Some(Verdict::NotApplicable);
        return report;
    };
    let r = shape.r as u128;
    let outcome = (|| -> Result<(WeightDistribution, Vec<Check>, Verdict)> {
        let params = build_code(
            Arc::new(FieldTower::builder(shape.p as u64, shape.s, shape.m).build()?),
            shape.h,
            shape.e,
        )?;
        if r * r * shape.length as u128 <= budget {
            let o = verify_code(&params, &case, budget, false)?;
            let verdict = if o.checks.iter().all(|c| c.passed) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            return Ok((o.distribution, o.checks, verdict));
        }
        let semi = semi_analytic_distribution(&params, &case)?;
        let table = table_distribution(&case, shape)?;
        let check = Check::new("semi = table", diff_detail(&semi, &table, "semi", "table"));
        let verdict = if check.passed {
            Verdict::OverBudget
        } else {
            Verdict::Fail
        };
        Ok((table, vec![check], verdict))
    })();
    match outcome {
        Ok((dist, checks, verdict)) => {
            report.set_distribution(&dist);
            report.checks = checks;
            report.verdict = Some(verdict);
        }
        Err(err) => {
            report.verdict = Some(Verdict::Error);
            report.error = Some(err.to_string());
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

#[derive(Serialize)]
struct DistributionRow<'a> {
    method: &'a str,
    p: u32,
    s: u32,
    m: u32,
    h: u32,
    e: u32,
    weight: u64,
    frequency: &'a str,
}

#[derive(Serialize)]
struct SweepRow<'a> {
    p: u32,
    s: u32,
    m: u32,
    h: u32,
    e: u32,
    q: u32,
    r: u64,
    n: u64,
    #[serde(rename = "N")]
    n_classes: u32,
    classification: String,
    verdict: &'a str,
    detail: String,
    elapsed_ms: u64,
}

fn verdict_tag(v: Option<Verdict>) -> &'static str {
    match v {
        None => "",
        Some(Verdict::Pass) => "PASS",
        Some(Verdict::Fail) => "FAIL",
        Some(Verdict::NotApplicable) => "NOT_APPLICABLE",
        Some(Verdict::OverBudget) => "OVER_BUDGET",
        Some(Verdict::Error) => "ERROR",
    }
}

fn csv_error(err: csv::Error) -> io::Error {
    io::Error::other(err)
}

pub fn emit_reports(out: &mut impl Write, reports: &[RunReport], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for report in reports {
                serde_json::to_writer(&mut *out, report)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for report in reports {
                let p = &report.params;
                for (weight, frequency) in &report.distribution {
                    w.serialize(DistributionRow {
                        method: &report.method,
                        p: p.p,
                        s: p.s,
                        m: p.m,
                        h: p.h,
                        e: p.e,
                        weight: *weight,
                        frequency,
                    })
                    .map_err(csv_error)?;
                }
            }
            w.flush()?;
        }
        Format::Pretty => {
            for report in reports {
                write_pretty(out, report)?;
            }
        }
    }
    Ok(())
}

fn write_pretty(out: &mut impl Write, report: &RunReport) -> io::Result<()> {
    let p = &report.params;
    writeln!(
        out,
        "p={} s={} m={} h={} e={}  q={} r={} n={} N={}",
        p.p, p.s, p.m, p.h, p.e, p.q, p.r, p.n, p.n_classes
    )?;
    writeln!(
        out,
        "method: {}  {}",
        report.method,
        report.classification.describe()
    )?;
    if !report.distribution.is_empty() {
        writeln!(out, "{:>10}  {:>20}", "weight", "frequency")?;
        for (w, f) in &report.distribution {
            writeln!(out, "{w:>10}  {f:>20}")?;
        }
    }
    for check in &report.checks {
        let mark = if check.passed { "ok  " } else { "FAIL" };
        match &check.detail {
            Some(d) => writeln!(out, "  [{mark}] {}: {d}", check.name)?,
            None => writeln!(out, "  [{mark}] {}", check.name)?,
        }
    }
    if let Some(err) = &report.error {
        writeln!(out, "error: {err}")?;
    }
    if report.verdict.is_some() {
        writeln!(out, "verdict: {}", verdict_tag(report.verdict))?;
    }
    writeln!(out, "elapsed: {} ms", report.elapsed_ms)?;
    writeln!(out)
}

pub fn emit_sweep(out: &mut impl Write, reports: &[RunReport], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for report in reports {
                let p = &report.params;
                let detail = match (&report.classification, &report.error) {
                    (_, Some(err)) => err.clone(),
                    (Classification::NotApplicable { reason }, _) => reason.clone(),
                    _ => report
                        .checks
                        .iter()
                        .filter_map(|c| c.detail.clone())
                        .collect::<Vec<_>>()
                        .join("; "),
                };
                let classification = match &report.classification {
                    Classification::Applicable { case, .. } => case.clone(),
                    Classification::NotApplicable { .. } => "not_applicable".to_string(),
                };
                w.serialize(SweepRow {
                    p: p.p,
                    s: p.s,
                    m: p.m,
                    h: p.h,
                    e: p.e,
                    q: p.q,
                    r: p.r,
                    n: p.n,
                    n_classes: p.n_classes,
                    classification,
                    verdict: verdict_tag(report.verdict),
                    detail,
                    elapsed_ms: report.elapsed_ms,
                })
                .map_err(csv_error)?;
            }
            Ok(w.flush()?)
        }
        format => Ok(emit_reports(out, reports, format)?),
    }
}
