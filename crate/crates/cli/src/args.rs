use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lgfine::feasibility::ConjectureMode;
use lgfine::spinmodel::Regime;
use lgfine::FamilyKind;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "lgfine", version, about = "Leggett-Garg inequality families and joint-distribution feasibility")]
pub struct Cli {
    /// Worker threads for parallel stages (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Exit with status 1 on infeasible or violating results.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Output file; stdout when absent. The run manifest goes to
    /// `<out>.manifest.json`, or to stderr without `--out`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Print an inequality family as JSON.
    Gen(GenArgs),
    /// Decide feasibility of fixed moments with the linear-feasibility oracle.
    Check(CheckArgs),
    /// Build a joint distribution from chain marginals with the product construction.
    FineBuild(FineBuildArgs),
    /// Compare the three-time, two-time and n-gon conditions with the oracle on random data.
    Conjecture(ConjectureArgs),
    /// Sweep the cosine model over equal spacing; CSV of member slacks.
    Spin(SpinArgs),
    /// Violating fraction of the sweep window for a range of n; CSV.
    Nu(NuArgs),
    /// CLT estimate of the violating volume for a range of n; CSV.
    Clt(CltArgs),
    /// Monte Carlo violating volume of one family member; JSON.
    Mc(McArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Lg,
    Ngon,
    Three,
    Two,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Lg => FamilyKind::Lg,
            FamilyArg::Ngon => FamilyKind::Ngon,
            FamilyArg::Three => FamilyKind::ThreeTime,
            FamilyArg::Two => FamilyKind::TwoTime,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamilyArg {
    Lg,
    Ngon,
}

impl From<SweepFamilyArg> for FamilyKind {
    fn from(f: SweepFamilyArg) -> Self {
        match f {
            SweepFamilyArg::Lg => FamilyKind::Lg,
            SweepFamilyArg::Ngon => FamilyKind::Ngon,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeArg {
    Extend,
    Fixed,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Extend => Regime::Extend,
            RegimeArg::Fixed => Regime::FixedWindow,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Symmetric,
    General,
}

impl From<ModeArg> for ConjectureMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Symmetric => ConjectureMode::Symmetric,
            ModeArg::General => ConjectureMode::General,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    /// Keep one member per class of equal-spacing duplicates.
    #[arg(long)]
    pub distinct: bool,
    /// n-gon only: all 2^n sign vectors instead of one per global flip.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckArgs {
    /// MomentSpec JSON: `{"n": 3, "moments": {"1": 0.1, "1,2": 0.5, ...}}`.
    #[arg(long)]
    pub moments: PathBuf,
    /// Solve in exact rational arithmetic (n <= 6).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("input").required(true).args(["moments", "marginals"])))]
pub struct FineBuildArgs {
    /// MomentSpec JSON with means and chain correlators.
    #[arg(long)]
    pub moments: Option<PathBuf>,
    /// JSON list of `{"pair": "1,2", "p": [p++, p-+, p+-, p--]}`, signs
    /// listed for the first time then the second.
    #[arg(long)]
    pub marginals: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, env = "LG_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "symmetric")]
    pub mode: ModeArg,
    /// Counterexample file, one MomentSpec per line; defaults to
    /// `counterexamples.jsonl` beside `--out`, or in the working directory.
    #[arg(long)]
    pub counterexamples: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpinArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "lg")]
    pub family: SweepFamilyArg,
    #[arg(long, value_enum, default_value = "extend")]
    pub regime: RegimeArg,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Defaults to the regime's range for the given omega.
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long, default_value_t = 2048)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NuArgs {
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "lg")]
    pub family: SweepFamilyArg,
    #[arg(long, value_enum, default_value = "extend")]
    pub regime: RegimeArg,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long)]
    pub tau_min: Option<f64>,
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[arg(long, default_value_t = 2048)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CltArgs {
    #[arg(long, value_enum)]
    pub family: SweepFamilyArg,
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "lg")]
    pub family: FamilyArg,
    /// n-gon only: index into the raw family.
    #[arg(long)]
    pub raw: bool,
    /// Member index within the family.
    #[arg(long, default_value_t = 0)]
    pub member: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, env = "LG_SEED", default_value_t = 0)]
    pub seed: u64,
}
