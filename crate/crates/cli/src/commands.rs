use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lgfine::cltvolume::{mc_violation_fraction, v_lg, v_ngon, VolumeEstimate};
use lgfine::feasibility::{
    conjecture_check, fine_build, fine_build_from_moments, lp_feasible, lp_feasible_exact, PairMarginal,
};
use lgfine::inequalities::generate;
use lgfine::moments::MAX_TIMES;
use lgfine::spinmodel::{nu_versus_n, sweep, SpinSweepConfig};
use lgfine::{distinct_under_equal_spacing, FamilyKind, LinearInequality, MomentSpec, Pair};
use serde::{Deserialize, Serialize};

use crate::args::{
    CheckArgs, CltArgs, Command, ConjectureArgs, FineBuildArgs, GenArgs, McArgs, NuArgs, SpinArgs, SweepFamilyArg,
};
use crate::error::CliError;
use crate::format::{g12, round_json};

/// What a subcommand produced: the payload, whether `--strict` should
/// fail the run, the seeds used and any side files written.
#[derive(Debug)]
pub struct Outcome {
    pub payload: String,
    pub verdict_ok: bool,
    pub seeds: Vec<u64>,
    pub side_files: Vec<PathBuf>,
}

impl Outcome {
    fn new(payload: String, verdict_ok: bool) -> Self {
        Outcome { payload, verdict_ok, seeds: Vec::new(), side_files: Vec::new() }
    }
}

pub fn run(command: &Command, out: Option<&Path>) -> Result<Outcome, CliError> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Check(a) => check(a),
        Command::FineBuild(a) => fine(a),
        Command::Conjecture(a) => conjecture(a, out),
        Command::Spin(a) => spin(a),
        Command::Nu(a) => nu(a),
        Command::Clt(a) => clt(a),
        Command::Mc(a) => mc(a),
    }
}

/// Pretty JSON with floats rounded to twelve significant digits.
pub fn to_json(value: &impl Serialize) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value).map_err(CliError::Serialize)?;
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(CliError::Serialize)?;
    s.push('\n');
    Ok(s)
}

fn compact_json(value: &impl Serialize) -> Result<String, CliError> {
    let mut v = serde_json::to_value(value).map_err(CliError::Serialize)?;
    round_json(&mut v);
    serde_json::to_string(&v).map_err(CliError::Serialize)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn gen(a: &GenArgs) -> Result<Outcome, CliError> {
    if a.raw && !matches!(a.family, crate::args::FamilyArg::Ngon) {
        return Err(CliError::Usage("--raw applies to the ngon family only".into()));
    }
    let mut family = generate(a.family.into(), a.n, a.raw)?;
    if a.distinct {
        family = distinct_under_equal_spacing(&family);
    }
    Ok(Outcome::new(to_json(&family.members())?, true))
}

fn check(a: &CheckArgs) -> Result<Outcome, CliError> {
    let spec: MomentSpec = read_json(&a.moments)?;
    let verdict = if a.exact { lp_feasible_exact(&spec)? } else { lp_feasible(&spec)? };
    Ok(Outcome::new(to_json(&verdict)?, verdict.feasible))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarginalRecord {
    pair: String,
    p: [f64; 4],
}

fn fine(a: &FineBuildArgs) -> Result<Outcome, CliError> {
    let verdict = match (&a.moments, &a.marginals) {
        (Some(path), None) => {
            let spec: MomentSpec = read_json(path)?;
            let means: Vec<f64> = (1..=spec.n()).map(|i| spec.mean(i)).collect();
            fine_build_from_moments(&means, &spec.correlators()?)?
        }
        (None, Some(path)) => {
            let records: Vec<MarginalRecord> = read_json(path)?;
            let marginals = records
                .into_iter()
                .map(|r| Pair::parse(&r.pair, MAX_TIMES).map(|pair| PairMarginal { pair, p: r.p }))
                .collect::<lgfine::Result<Vec<_>>>()?;
            fine_build(&marginals)?
        }
        _ => return Err(CliError::Usage("give exactly one of --moments or --marginals".into())),
    };
    Ok(Outcome::new(to_json(&verdict)?, verdict.feasible))
}

fn conjecture(a: &ConjectureArgs, out: Option<&Path>) -> Result<Outcome, CliError> {
    let report = conjecture_check(a.n, a.samples, a.seed, a.mode.into())?;
    let mut side_files = Vec::new();
    if !report.counterexamples.is_empty() {
        let path = a.counterexamples.clone().unwrap_or_else(|| {
            out.and_then(Path::parent).unwrap_or(Path::new("")).join("counterexamples.jsonl")
        });
        let mut lines = String::new();
        for c in &report.counterexamples {
            lines.push_str(&compact_json(&c.spec)?);
            lines.push('\n');
        }
        fs::write(&path, lines).map_err(|source| CliError::Io { path: path.clone(), source })?;
        side_files.push(path);
    }
    let ok = report.counterexamples.is_empty() && report.necessity_violations == 0;
    Ok(Outcome { payload: to_json(&report)?, verdict_ok: ok, seeds: vec![a.seed], side_files })
}

fn sweep_config(
    n: usize,
    family: SweepFamilyArg,
    regime: crate::args::RegimeArg,
    omega: f64,
    tau: (Option<f64>, Option<f64>),
    steps: usize,
) -> SpinSweepConfig {
    let base = SpinSweepConfig::new(n, family.into(), regime.into());
    let (lo, hi) = SpinSweepConfig::default_range(base.regime, omega);
    SpinSweepConfig { omega, tau_min: tau.0.unwrap_or(lo), tau_max: tau.1.unwrap_or(hi), steps, ..base }
}

fn spin(a: &SpinArgs) -> Result<Outcome, CliError> {
    let config = sweep_config(a.n, a.family, a.regime, a.omega, (a.tau_min, a.tau_max), a.steps);
    let result = sweep(&config)?;
    let mut csv = String::from("tau");
    for m in 0..result.members.len() {
        write!(csv, ",member_{m}").unwrap();
    }
    csv.push_str(",any_violation\n");
    for (k, &x) in result.grid.iter().enumerate() {
        csv.push_str(&g12(config.spacing(x)));
        for row in &result.slacks {
            write!(csv, ",{}", g12(row[k])).unwrap();
        }
        writeln!(csv, ",{}", u8::from(result.violated[k])).unwrap();
    }
    let ok = !result.violated.iter().any(|v| *v);
    Ok(Outcome::new(csv, ok))
}

fn nu(a: &NuArgs) -> Result<Outcome, CliError> {
    let base = sweep_config(a.n_min, a.family, a.regime, a.omega, (a.tau_min, a.tau_max), a.steps);
    let series = nu_versus_n(a.n_min, a.n_max, &base)?;
    let mut csv = String::from("n,nu\n");
    for (n, nu) in &series {
        writeln!(csv, "{n},{}", g12(*nu)).unwrap();
    }
    let ok = series.iter().all(|(_, nu)| *nu == 0.0);
    Ok(Outcome::new(csv, ok))
}

fn clt(a: &CltArgs) -> Result<Outcome, CliError> {
    if a.n_min < 3 || a.n_min > a.n_max {
        return Err(CliError::Usage(format!("need 3 <= n-min <= n-max, got {}..{}", a.n_min, a.n_max)));
    }
    let mut csv = String::from("n,v\n");
    for n in a.n_min..=a.n_max {
        let v = match a.family {
            SweepFamilyArg::Lg => v_lg(n)?,
            SweepFamilyArg::Ngon => v_ngon(n)?,
        };
        writeln!(csv, "{n},{}", g12(v.value)).unwrap();
    }
    Ok(Outcome::new(csv, true))
}

#[derive(Serialize)]
struct McReport<'a> {
    n: usize,
    family: FamilyKind,
    member: usize,
    inequality: &'a LinearInequality,
    #[serde(flatten)]
    estimate: VolumeEstimate,
}

fn mc(a: &McArgs) -> Result<Outcome, CliError> {
    if a.raw && !matches!(a.family, crate::args::FamilyArg::Ngon) {
        return Err(CliError::Usage("--raw applies to the ngon family only".into()));
    }
    let family = generate(a.family.into(), a.n, a.raw)?;
    let inequality = family.members().get(a.member).ok_or_else(|| {
        CliError::Usage(format!("member {} out of range, family has {} members", a.member, family.len()))
    })?;
    let estimate = mc_violation_fraction(inequality, a.samples, a.seed)?;
    let report = McReport { n: a.n, family: family.kind(), member: a.member, inequality, estimate };
    Ok(Outcome { payload: to_json(&report)?, verdict_ok: true, seeds: vec![a.seed], side_files: Vec::new() })
}
