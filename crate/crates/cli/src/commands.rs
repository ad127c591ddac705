use std::collections::BTreeSet;
use std::io::Write as _;

use anyhow::{bail, Result};
use mertens_core::acceptance::{Acceptance, CRITERIA, L_HEIGHT, MODULUS_SAMPLES, TABLE3_MODULI};
use mertens_core::arith::{c_count_one_formula, FundamentalDiscriminant};
use mertens_core::bias::{
    b_chi, b_chi_two_route, b_q, calibrate_tau, containment_discriminants, golden,
    search_discriminants, search_moduli, table3_rows, BiasConstant, Route, SearchReport, Subject,
    Verdict, ZeroStore,
};
use mertens_core::primes::{
    mertens_errors, sweep, CheckpointCollector, MeanValueObserver, PositivitySweep,
    ProgressionObserver, TwistedObserver,
};
use mertens_core::special::{mertens_constants, progression_constants, twisted_constants};
use mertens_core::zeros::{ingest_zero_list, l_zero_scan, zeta_zero_scan, LFunctionId};
use mertens_core::Error;

use crate::config::{RunConfig, Usage};
use crate::output::{emit, format_number, sidecar, Table};

/// Largest `--xmax` for `scan`.
pub const MAX_SCAN: u64 = 1_000_000_000;
/// Sampled rows of `scan` below this height must all be positive.
pub const TRIPWIRE_X: f64 = 1e8;
pub const MIN_PLOT_X: u64 = 2000;

/// A computed result contradicts a published one or an expected property.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct CheckFailed(pub String);

/// Some subjects could not be decided with the available data.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Undecided(pub String);

fn write_table(cfg: &RunConfig, table: &Table) -> Result<()> {
    emit(cfg.out.as_deref(), &table.render(cfg.format))
}

fn note(msg: impl AsRef<str>) {
    let _ = writeln!(std::io::stderr(), "{}", msg.as_ref());
}

pub fn scan(cfg: &RunConfig) -> Result<()> {
    let x = cfg.require_xmax()?;
    if x > MAX_SCAN {
        bail!(Usage(format!("scan is limited to --xmax <= {MAX_SCAN}")));
    }
    let c = mertens_constants();
    let points = cfg.grid.points(x)?;
    let mut positivity = PositivitySweep::new(c);
    let mut col = CheckpointCollector::default();
    sweep(x, &points, cfg.sweep_options(), &mut [&mut positivity, &mut col])?;
    let mut t = Table::new(&[
        "x",
        "pi",
        "theta",
        "psi",
        "big_pi",
        "sum_recip",
        "sum_logp_over_p",
        "sum_log_one_minus",
        "E1",
        "E2",
        "E3",
    ]);
    let mut bad = Vec::new();
    for cp in col.checkpoints() {
        let e = mertens_errors(cp, &c);
        if cp.x <= TRIPWIRE_X && e.min() <= 0.0 {
            bad.push(cp.x);
        }
        t.push(vec![
            cp.x.into(),
            cp.pi_x.into(),
            cp.theta_x.into(),
            cp.psi_x.into(),
            cp.big_pi_x.into(),
            cp.sum_recip.into(),
            cp.sum_logp_over_p.into(),
            cp.sum_log_one_minus.into(),
            e.e1.into(),
            e.e2.into(),
            e.e3.into(),
        ]);
    }
    write_table(cfg, &t)?;
    if let Some(v) = positivity.report().first_violation.filter(|&v| v <= TRIPWIRE_X) {
        bad.push(v);
    }
    if let Some(first) = bad.iter().copied().reduce(f64::min) {
        bail!(CheckFailed(format!(
            "some E_i <= 0 below {TRIPWIRE_X:e}, first at x = {}",
            format_number(first)
        )));
    }
    Ok(())
}

pub fn meanvalues(cfg: &RunConfig) -> Result<()> {
    let x = cfg.require_xmax()?;
    if x < MIN_PLOT_X {
        bail!(Usage(format!("meanvalues needs --xmax >= {MIN_PLOT_X}")));
    }
    let points: Vec<f64> = cfg
        .grid
        .points(x)?
        .into_iter()
        .filter(|&p| p >= MIN_PLOT_X as f64)
        .collect();
    let mut obs = MeanValueObserver::new(mertens_constants());
    sweep(x, &points, cfg.sweep_options(), &mut [&mut obs])?;
    let mut t = Table::new(&[
        "X",
        "f1",
        "f2",
        "f3",
        "int_E1",
        "int_E2",
        "int_E3",
        "delta1",
        "delta2",
        "int_E3_identity",
    ]);
    for r in obs.reports() {
        t.push(vec![
            r.x.into(),
            r.f1.into(),
            r.f2.into(),
            r.f3.into(),
            r.int_e1.into(),
            r.int_e2.into(),
            r.int_e3.into(),
            r.delta1.into(),
            r.delta2.into(),
            r.int_e3_identity.into(),
        ]);
    }
    write_table(cfg, &t)
}

pub fn twisted(cfg: &RunConfig) -> Result<()> {
    let x = cfg.require_xmax()?;
    let d = FundamentalDiscriminant::new(cfg.require_d()?)?;
    if d.conductor() == 1 {
        bail!(Usage("twisted sums need a nontrivial character".into()));
    }
    let points = cfg.grid.points(x)?;
    let mut obs = TwistedObserver::new(d, twisted_constants(d));
    sweep(x, &points, cfg.sweep_options(), &mut [&mut obs])?;
    let mut t = Table::new(&[
        "d", "x", "pi_chi", "theta_chi", "E1", "E2", "E3", "int_E1", "int_E2", "int_E3", "f1", "f2",
        "f3",
    ]);
    for r in obs.rows() {
        t.push(vec![
            r.d.into(),
            r.x.into(),
            r.pi_chi.into(),
            r.theta_chi.into(),
            r.e1.into(),
            r.e2.into(),
            r.e3.into(),
            r.int_e1.into(),
            r.int_e2.into(),
            r.int_e3.into(),
            r.f1.into(),
            r.f2.into(),
            r.f3.into(),
        ]);
    }
    write_table(cfg, &t)
}

pub fn progressions(cfg: &RunConfig) -> Result<()> {
    let x = cfg.require_xmax()?;
    let q = cfg.require_q()?;
    let constants = progression_constants(q)?;
    if let Some(a) = cfg.a {
        if !constants.iter().any(|c| c.a == a) {
            bail!(Usage(format!("--a {a} is not a unit modulo {q}")));
        }
    }
    let points = cfg.grid.points(x)?;
    let mut obs = ProgressionObserver::new(q, constants)?;
    sweep(x, &points, cfg.sweep_options(), &mut [&mut obs])?;
    let mut t = Table::new(&[
        "q", "a", "x", "pi", "theta", "psi", "E1", "E2", "E3", "int_E1", "int_E2", "int_E3",
    ]);
    for r in obs.rows().iter().filter(|r| cfg.a.is_none_or(|a| a == r.a)) {
        t.push(vec![
            r.q.into(),
            r.a.into(),
            r.x.into(),
            r.pi.into(),
            r.theta.into(),
            r.psi.into(),
            r.e1.into(),
            r.e2.into(),
            r.e3.into(),
            r.int_e1.into(),
            r.int_e2.into(),
            r.int_e3.into(),
        ]);
    }
    write_table(cfg, &t)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Member => "member",
        Verdict::NonMember => "non-member",
        Verdict::Undecided => "undecided",
    }
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::ClosedForm => "closed-form",
        Route::ZeroSum => "zero-sum",
        Route::Both => "both",
    }
}

/// Zero lists from the configured directory when it exists.
fn optional_store(cfg: &RunConfig) -> Result<Option<ZeroStore>> {
    if cfg.zeros_dir.is_dir() {
        Ok(Some(ZeroStore::from_dir(&cfg.zeros_dir)?))
    } else {
        Ok(None)
    }
}

pub fn bchi(cfg: &RunConfig) -> Result<()> {
    let ds: Vec<FundamentalDiscriminant> = match (cfg.d, cfg.bound) {
        (Some(d), _) => vec![FundamentalDiscriminant::new(d)?],
        (None, Some(b)) => FundamentalDiscriminant::up_to(b)
            .into_iter()
            .filter(|d| d.conductor() > 1)
            .collect(),
        (None, None) => bail!(Usage("bchi needs --d or --bound".into())),
    };
    if ds.iter().any(|d| d.conductor() == 1) {
        bail!(Usage("the trivial character has no bias constant here; use d != 1".into()));
    }
    let store = optional_store(cfg)?;
    let mut t = Table::new(&[
        "d", "B", "lower", "upper", "verdict", "route", "zero_sum_lower", "zero_sum_upper",
    ]);
    let mut undecided = Vec::new();
    for d in ds {
        let zeros = store.as_ref().and_then(|s| s.get(&LFunctionId::Discriminant(d.d())));
        let (b, sum) = match zeros {
            Some(list) => {
                let (b, sum) = b_chi_two_route(d, list)?;
                (b, Some(sum))
            }
            None => (b_chi(d)?, None),
        };
        let v = Verdict::below(&b.value, 2.0);
        if v == Verdict::Undecided {
            undecided.push(d.d());
        }
        t.push(vec![
            d.d().into(),
            b.value.mid().into(),
            b.value.lower.into(),
            b.value.upper.into(),
            verdict_name(v).into(),
            route_name(b.route).into(),
            sum.as_ref().map_or(f64::NAN, |s| s.lower).into(),
            sum.as_ref().map_or(f64::NAN, |s| s.upper).into(),
        ]);
    }
    write_table(cfg, &t)?;
    if !undecided.is_empty() {
        bail!(Undecided(format!("brackets straddle 2 for d in {undecided:?}")));
    }
    Ok(())
}

pub fn bq(cfg: &RunConfig) -> Result<()> {
    let qs: Vec<u64> = match (cfg.q, cfg.bound) {
        (Some(q), _) => vec![q],
        (None, Some(b)) => (2..=b).collect(),
        (None, None) => bail!(Usage("bq needs --q or --bound".into())),
    };
    let mut t = Table::new(&["q", "B", "lower", "upper", "C", "verdict"]);
    let mut undecided = Vec::new();
    for q in qs {
        let b = b_q(q)?;
        let c = c_count_one_formula(q);
        let v = Verdict::below(&b.value, 2.0 * c as f64);
        if v == Verdict::Undecided {
            undecided.push(q);
        }
        t.push(vec![
            q.into(),
            b.value.mid().into(),
            b.value.lower.into(),
            b.value.upper.into(),
            c.into(),
            verdict_name(v).into(),
        ]);
    }
    write_table(cfg, &t)?;
    if !undecided.is_empty() {
        bail!(Undecided(format!("brackets straddle 2C(q,1) for q in {undecided:?}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// the discriminant set
    D,
    /// the modulus set
    Q,
    /// residue pairs with an eventually negative integral
    Table3,
}

/// Writes the undecided subjects next to the output and fails.
fn undecided_sidecar(cfg: &RunConfig, rows: &[BiasConstant]) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let mut t = Table::new(&["subject", "lower", "upper"]);
    for b in rows {
        t.push(vec![b.subject.to_string().into(), b.value.lower.into(), b.value.upper.into()]);
    }
    let path = sidecar(cfg.out.as_deref(), "undecided.csv");
    emit(Some(&path), &t.render(crate::output::Format::Csv))?;
    bail!(Undecided(format!(
        "{} undecided subjects listed in {}",
        rows.len(),
        path.display()
    )))
}

fn certificate_sidecar(cfg: &RunConfig, report: &SearchReport) -> Result<()> {
    let path = sidecar(cfg.out.as_deref(), "certificates.json");
    let mut text = serde_json::to_string_pretty(&report.certificates)?;
    text.push('\n');
    emit(Some(&path), &text)?;
    if !report.certificates_hold() {
        bail!(CheckFailed(format!("an exclusion certificate fails; see {}", path.display())));
    }
    Ok(())
}

pub fn tables(cfg: &RunConfig, which: Which, diff: bool) -> Result<()> {
    match which {
        Which::D => table_d(cfg, diff),
        Which::Q => table_q(cfg, diff),
        Which::Table3 => table3(cfg, diff),
    }
}

fn discriminant_of(b: &BiasConstant) -> i64 {
    match b.subject {
        Subject::Discriminant(d) => d,
        _ => unreachable!("discriminant search"),
    }
}

fn table_d(cfg: &RunConfig, diff: bool) -> Result<()> {
    let report = search_discriminants(cfg.bound.unwrap_or(1300))?;
    let mut members: Vec<&BiasConstant> = report.members.iter().collect();
    // positive discriminants first, then negative ones by |d|
    members.sort_by_key(|b| {
        let d = discriminant_of(b);
        (d < 0, d.abs())
    });
    let mut t = Table::new(&["d", "B", "lower", "upper"]);
    for b in &members {
        t.push(vec![
            discriminant_of(b).into(),
            b.value.mid().into(),
            b.value.lower.into(),
            b.value.upper.into(),
        ]);
    }
    write_table(cfg, &t)?;
    certificate_sidecar(cfg, &report)?;
    undecided_sidecar(cfg, &report.undecided)?;
    if diff {
        let computed: Vec<(i64, f64)> = members.iter().map(|b| (discriminant_of(b), b.value.mid())).collect();
        diff_discriminants(&computed, cfg.bound.unwrap_or(1300))?;
    }
    Ok(())
}

/// Compares members with the bundled table, whose values are truncated to
/// three decimals. Unlisted members inside the gap of the positive table
/// are rows the table is known to lack.
fn diff_discriminants(computed: &[(i64, f64)], bound: u64) -> Result<()> {
    let golden: Vec<(i64, f64)> = golden::TABLE_POSITIVE
        .iter()
        .chain(golden::TABLE_NEGATIVE.iter())
        .copied()
        .filter(|e| e.0.unsigned_abs() <= bound)
        .collect();
    let gap = golden::TABLE_POSITIVE
        .windows(2)
        .map(|w| (w[0].0, w[1].0))
        .max_by_key(|(a, b)| b - a)
        .unwrap_or((0, 0));
    let mut problems = Vec::new();
    for &(d, shown) in &golden {
        match computed.iter().find(|c| c.0 == d) {
            None => problems.push(format!("missing d={d} (table {shown})")),
            Some(&(_, v)) => {
                let dist = (shown - v).max(v - (shown + 1e-3)).max(0.0);
                if dist >= 5e-4 {
                    problems.push(format!("d={d}: computed {} vs table {shown}", format_number(v)));
                }
            }
        }
    }
    for &(d, v) in computed {
        if golden.iter().any(|g| g.0 == d) {
            continue;
        }
        if d > gap.0 && d < gap.1 {
            note(format!("unlisted d={d} ({}) lies in the table gap ({}, {})", format_number(v), gap.0, gap.1));
        } else {
            problems.push(format!("unlisted d={d} ({})", format_number(v)));
        }
    }
    report_diff(problems)
}

fn report_diff(problems: Vec<String>) -> Result<()> {
    for p in &problems {
        note(format!("diff: {p}"));
    }
    if problems.is_empty() {
        note("diff: matches the bundled table");
        Ok(())
    } else {
        bail!(CheckFailed(format!("{} differences from the bundled table", problems.len())))
    }
}

fn table_q(cfg: &RunConfig, diff: bool) -> Result<()> {
    let bound = cfg.bound.unwrap_or(100);
    let report = search_moduli(bound, MODULUS_SAMPLES)?;
    let mut t = Table::new(&["q", "B", "lower", "upper", "C"]);
    let mut qs = Vec::new();
    for b in &report.members {
        let Subject::Modulus(q) = b.subject else {
            unreachable!("modulus search")
        };
        qs.push(q);
        t.push(vec![
            q.into(),
            b.value.mid().into(),
            b.value.lower.into(),
            b.value.upper.into(),
            c_count_one_formula(q).into(),
        ]);
    }
    write_table(cfg, &t)?;
    certificate_sidecar(cfg, &report)?;
    undecided_sidecar(cfg, &report.undecided)?;
    if diff {
        let want: BTreeSet<u64> = golden::SET_Q.iter().copied().filter(|&q| q <= bound).collect();
        let got: BTreeSet<u64> = qs.into_iter().collect();
        let mut problems: Vec<String> = want.difference(&got).map(|q| format!("missing q={q}")).collect();
        problems.extend(got.difference(&want).map(|q| format!("unlisted q={q}")));
        report_diff(problems)?;
    }
    Ok(())
}

fn table3(cfg: &RunConfig, diff: bool) -> Result<()> {
    let mut store = ZeroStore::from_dir(cfg.zeros_dir()?)?;
    let containment = containment_discriminants(&mut store, L_HEIGHT)?;
    let cal = calibrate_tau(&store, &TABLE3_MODULI, &containment)?;
    let report_path = sidecar(cfg.out.as_deref(), "calibration.txt");
    emit(Some(&report_path), &cal.report())?;
    let Some(tau) = cal.chosen else {
        bail!(Undecided(format!(
            "the threshold coefficient is not determined; see {}",
            report_path.display()
        )));
    };
    let moduli: Vec<u64> = match cfg.q {
        Some(q) => vec![q],
        None => (2..=cfg.bound.unwrap_or(24)).collect(),
    };
    let mut t = Table::new(&["q", "a", "C", "B_prime", "lower", "upper", "tau"]);
    let mut skipped = Vec::new();
    let mut problems = Vec::new();
    for q in moduli {
        let rows = match table3_rows(q, &store, tau) {
            Ok(rows) => rows,
            Err(Error::InsufficientData(why)) => {
                skipped.push(format!("q={q}: {why}"));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let members: Vec<u64> = rows.iter().filter(|r| r.verdict == Verdict::Member).map(|r| r.a).collect();
        for r in rows.iter().filter(|r| r.verdict == Verdict::Member) {
            t.push(vec![
                r.q.into(),
                r.a.into(),
                r.c.into(),
                r.b_prime.mid().into(),
                r.b_prime.lower.into(),
                r.b_prime.upper.into(),
                tau.into(),
            ]);
        }
        match golden::TABLE3.iter().find(|g| g.0 == q) {
            Some(g) if g.1 != members.as_slice() => {
                problems.push(format!("q={q}: computed {members:?} vs table {:?}", g.1))
            }
            None if !members.is_empty() && implied_by_half(q, &members) => note(format!(
                "q={q} is not in the table; its rows {members:?} repeat those for q={}",
                q / 2
            )),
            None if !members.is_empty() => problems.push(format!("q={q} is not in the table")),
            _ => {}
        }
    }
    write_table(cfg, &t)?;
    if !skipped.is_empty() {
        let path = sidecar(cfg.out.as_deref(), "undecided.csv");
        let mut s = Table::new(&["reason"]);
        for why in &skipped {
            s.push(vec![why.clone().into()]);
        }
        emit(Some(&path), &s.render(crate::output::Format::Csv))?;
        note(format!("{} moduli lack zero data; listed in {}", skipped.len(), path.display()));
    }
    if diff {
        report_diff(problems)?;
    }
    Ok(())
}

/// For odd `m`, the primes `≡ a (mod 2m)` are the primes `≡ a (mod m)` and
/// `φ(2m) = φ(m)`, so the rows for `2m` copy the listed rows for `m`.
fn implied_by_half(q: u64, members: &[u64]) -> bool {
    if q % 4 != 2 || q == 2 {
        return false;
    }
    let m = q / 2;
    let Some(half) = golden::TABLE3.iter().find(|g| g.0 == m) else {
        return false;
    };
    let mut reduced: Vec<u64> = members.iter().map(|a| a % m).collect();
    reduced.sort_unstable();
    reduced == half.1
}

#[derive(Clone, Debug, clap::Subcommand)]
pub enum ZerosAction {
    /// Find zeros of zeta, or of L(s, chi_d) with --d, up to a height
    Scan {
        #[arg(long)]
        tmax: f64,
    },
    /// Read and check a zero-list file and write it in normalised form
    Ingest { file: std::path::PathBuf },
    /// Check a zero-list file
    Validate { file: std::path::PathBuf },
}

pub fn zeros(cfg: &RunConfig, action: &ZerosAction) -> Result<()> {
    let fallback = cfg.d.map(LFunctionId::Discriminant);
    match action {
        ZerosAction::Scan { tmax } => {
            let list = match cfg.d {
                Some(d) => l_zero_scan(FundamentalDiscriminant::new(d)?, *tmax)?,
                None => zeta_zero_scan(*tmax)?,
            };
            emit(cfg.out.as_deref(), &list.to_text())
        }
        ZerosAction::Ingest { file } => {
            let list = ingest_zero_list(file, fallback.as_ref())?;
            emit(cfg.out.as_deref(), &list.to_text())
        }
        ZerosAction::Validate { file } => {
            let list = ingest_zero_list(file, fallback.as_ref())?;
            emit(
                cfg.out.as_deref(),
                &format!(
                    "ok {}: {} ordinates up to t_max = {}\n",
                    list.id,
                    list.len(),
                    format_number(list.t_max)
                ),
            )
        }
    }
}

pub fn check(cfg: &RunConfig, only: &[u8]) -> Result<()> {
    for id in only {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            bail!(Usage(format!("no criterion {id}")));
        }
    }
    let suite = Acceptance::new(cfg.zeros_dir.clone(), cfg.workers);
    let mut failed = Vec::new();
    let mut lines = String::new();
    for &(id, _) in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.0)) {
        let r = suite.run(id);
        note(r.to_string());
        lines.push_str(&format!("{r}\n"));
        if !r.passed {
            failed.push(id);
        }
    }
    if cfg.out.is_some() {
        emit(cfg.out.as_deref(), &lines)?;
    }
    if !failed.is_empty() {
        bail!(CheckFailed(format!("criteria failing: {failed:?}")));
    }
    Ok(())
}
