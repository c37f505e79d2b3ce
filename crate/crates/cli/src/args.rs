//! Flag definitions and their translation into library inputs.

use std::path::PathBuf;

use catcorr::kernels::{overlap, Family};
use catcorr::{Error, MeasurementSide, Parity, Result, SuperpositionSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "catcorr", version, about = "Pairwise discord and concurrence of multipartite cat states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Correlations of one state, optionally after dephasing.
    Report(ReportArgs),
    /// Discord and concurrence over a grid of equal overlaps.
    Sweep(SweepArgs),
    /// Discord and concurrence along a dephasing trajectory.
    Evolve(EvolveArgs),
    /// Cross-check closed forms, numerics and the oracle on random states.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    /// Glauber coherent states
    Wh,
    Su2,
    Su11,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    First,
    Second,
}

impl From<SideArg> for MeasurementSide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::First => MeasurementSide::FirstQubit,
            SideArg::Second => MeasurementSide::SecondQubit,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Coherent-state family used to turn amplitudes into overlaps.
#[derive(Args, Debug, Clone)]
pub struct FamilyFlags {
    /// Coherent-state family; overlaps then come from the amplitudes.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Spin j of the SU(2) family (positive half-integer).
    #[arg(long)]
    pub j: Option<f64>,
    /// Bargmann index of the SU(1,1) family.
    #[arg(long)]
    pub bargmann: Option<f64>,
}

impl FamilyFlags {
    pub fn resolve(&self) -> Result<Option<Family>> {
        let Some(family) = self.family else {
            if self.j.is_some() || self.bargmann.is_some() {
                return Err(Error::Domain("--j and --bargmann need --family".into()));
            }
            return Ok(None);
        };
        let f = match family {
            FamilyArg::Wh => Family::WeylHeisenberg,
            FamilyArg::Su2 => {
                let j = self.j.ok_or_else(|| Error::Domain("--family su2 needs --j".into()))?;
                Family::su2_from_spin(j)?
            }
            FamilyArg::Su11 => {
                let k = self.bargmann.ok_or_else(|| Error::Domain("--family su11 needs --bargmann".into()))?;
                Family::su11(k)?
            }
        };
        Ok(Some(f))
    }
}

pub fn overlap_of_modulus(z: f64, family: Family) -> Result<f64> {
    overlap(Complex64::new(z, 0.0), family)
}

#[derive(Args, Debug, Clone)]
pub struct SpecFlags {
    /// Number of modes; inferred from --p or --z when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Overlaps p_1 .. p_n; a single value is shared by all n modes.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub p: Vec<f64>,
    /// Amplitude moduli |z_1| .. |z_n| (with --family); a single value is shared.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub z: Vec<f64>,
    #[command(flatten)]
    pub family: FamilyFlags,
    /// Relative phase e^{imπ} of the two branches.
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
}

fn broadcast(values: &[f64], n: Option<usize>, flag: &str) -> Result<Vec<f64>> {
    match (values.len(), n) {
        (0, _) => Err(Error::InvalidSpec(format!("{flag} needs at least one value"))),
        (1, Some(n)) => Ok(vec![values[0]; n]),
        (len, Some(n)) if len != n => {
            Err(Error::InvalidSpec(format!("--n {n} but {flag} lists {len} values")))
        }
        _ => Ok(values.to_vec()),
    }
}

impl SpecFlags {
    pub fn build(&self) -> Result<SuperpositionSpec> {
        let family = self.family.resolve()?;
        let overlaps = match (family, self.p.is_empty(), self.z.is_empty()) {
            (None, false, true) => broadcast(&self.p, self.n, "--p")?,
            (Some(f), true, false) => broadcast(&self.z, self.n, "--z")?
                .into_iter()
                .map(|z| overlap_of_modulus(z, f))
                .collect::<Result<Vec<_>>>()?,
            (None, _, false) => return Err(Error::InvalidSpec("--z needs --family".into())),
            (Some(_), false, _) => {
                return Err(Error::InvalidSpec("give either --p or --family with --z, not both".into()))
            }
            _ => return Err(Error::InvalidSpec("missing overlaps: give --p or --family with --z".into())),
        };
        SuperpositionSpec::new(overlaps, self.parity.into())
    }
}

/// Which two-qubit state of the spec to analyse. Indices are 1-based.
#[derive(Args, Debug, Clone)]
pub struct SelectionFlags {
    /// Analyse the pure split of the first k modes against the rest.
    #[arg(long, requires = "k", conflicts_with = "pair")]
    pub pure: bool,
    /// Size of the first group of the pure split.
    #[arg(long)]
    pub k: Option<usize>,
    /// Modes i j of the mixed pair marginal (1-based, default 1 2).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Vec<usize>,
    /// Qubit carrying the projective measurement.
    #[arg(long, value_enum, default_value = "first")]
    pub side: SideArg,
}

/// Resolved selection with 1-based indices, as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Selection {
    Pair { i: usize, j: usize },
    Pure { k: usize },
}

impl SelectionFlags {
    pub fn resolve(&self, n: usize) -> Result<Selection> {
        if self.pure {
            let k = self.k.ok_or_else(|| Error::InvalidIndex("--pure needs --k".into()))?;
            if k == 0 || k >= n {
                return Err(Error::InvalidIndex(format!("split size --k {k} must lie in [1, {}]", n - 1)));
            }
            return Ok(Selection::Pure { k });
        }
        if self.k.is_some() {
            return Err(Error::InvalidIndex("--k only applies with --pure".into()));
        }
        let (i, j) = match self.pair.as_slice() {
            [] => (1, 2),
            [i, j] => (*i, *j),
            _ => unreachable!("clap enforces two values"),
        };
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidIndex(format!("--pair {i} {j}: modes are numbered 1..{n}")));
        }
        if i == j {
            return Err(Error::InvalidIndex(format!("--pair {i} {j}: modes must differ")));
        }
        Ok(Selection::Pair { i, j })
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputFlags {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub selection: SelectionFlags,
    /// Dephasing rate Γ; adds the trajectory value and the sudden-death time.
    #[arg(long, alias = "gamma")]
    pub rate: Option<f64>,
    /// Time at which to evaluate the trajectory (default 0).
    #[arg(long, requires = "rate")]
    pub t: Option<f64>,
    /// Also run the measurement-search oracle.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Pure,
    Mixed,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "mixed")]
    pub mode: Mode,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "even")]
    pub parity: ParityArg,
    /// Size of the first group (pure mode).
    #[arg(long)]
    pub k: Option<usize>,
    /// Modes i j (mixed mode, 1-based, default 1 2).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Vec<usize>,
    #[arg(long, value_enum, default_value = "first")]
    pub side: SideArg,
    /// First grid value (overlap, or amplitude modulus with --family).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub start: f64,
    /// Last grid value.
    #[arg(long)]
    pub stop: Option<f64>,
    /// Number of grid points, at least 2.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[command(flatten)]
    pub family: FamilyFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub spec: SpecFlags,
    #[command(flatten)]
    pub selection: SelectionFlags,
    /// Dephasing rate Γ.
    #[arg(long, alias = "gamma")]
    pub rate: f64,
    /// Explicit times; overrides the uniform grid.
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub times: Vec<f64>,
    /// End of the uniform time grid starting at 0.
    #[arg(long, default_value_t = 5.0)]
    pub t_stop: f64,
    /// Points in the uniform time grid.
    #[arg(long, default_value_t = 101)]
    pub t_steps: usize,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Grid size of the measurement-search oracle.
    #[arg(long, default_value_t = catcorr::oracle::DEFAULT_COARSE_STEPS)]
    pub coarse_steps: usize,
}

/// `steps` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 steps, got {steps}")));
    }
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(Error::Domain(format!("grid bounds {start}..{stop} must be finite and increasing")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { stop } else { start + (stop - start) * k as f64 / last })
        .collect())
}
