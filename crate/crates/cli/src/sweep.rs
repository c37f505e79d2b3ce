use std::io::{self, Write};

use catcorr::correlations::{geometric_discord_numeric, mixed_lambdas, pure_report};
use catcorr::{Branch, Error, MeasurementSide, Parity, Result, SuperpositionSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{linspace, overlap_of_modulus, Format, Mode, Selection, SweepArgs};
use crate::output::{csv_bytes, fmt_num, open_sink, sig9, write_json};
use crate::report::{closed_report, selected_density};

/// Odd parity at `p = 1` is the null state; the sweep evaluates just below.
pub const ODD_ENDPOINT: f64 = 1.0 - 1e-6;

pub const CSV_HEADER: [&str; 8] =
    ["p", "discord_closed", "discord_numeric", "branch", "concurrence", "lambda1", "lambda2", "lambda3"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub discord_closed: f64,
    pub discord_numeric: f64,
    pub branch: Branch,
    pub concurrence: f64,
    /// z-axis eigenvalue of `K`
    pub lambda1: f64,
    /// x-axis eigenvalue
    pub lambda2: f64,
    /// y-axis eigenvalue
    pub lambda3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub mode: Mode,
    pub n: usize,
    pub parity: Parity,
    pub selection: Selection,
    pub rows: Vec<SweepRow>,
}

fn selection(args: &SweepArgs) -> Result<Selection> {
    let n = args.n;
    if n < 2 {
        return Err(Error::InvalidSpec(format!("need at least 2 modes, got {n}")));
    }
    match args.mode {
        Mode::Pure => {
            if !args.pair.is_empty() {
                return Err(Error::InvalidIndex("--pair only applies to --mode mixed".into()));
            }
            let k = args.k.unwrap_or(1);
            if k == 0 || k >= n {
                return Err(Error::InvalidIndex(format!("split size --k {k} must lie in [1, {}]", n - 1)));
            }
            Ok(Selection::Pure { k })
        }
        Mode::Mixed => {
            if args.k.is_some() {
                return Err(Error::InvalidIndex("--k only applies to --mode pure".into()));
            }
            let (i, j) = match args.pair.as_slice() {
                [] => (1, 2),
                [i, j] => (*i, *j),
                _ => unreachable!("clap enforces two values"),
            };
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::InvalidIndex(format!("--pair {i} {j}: need two distinct modes in 1..{n}")));
            }
            Ok(Selection::Pair { i, j })
        }
    }
}

/// Overlap at each grid point, after the family kernel if one is given.
fn overlap_grid(args: &SweepArgs) -> Result<Vec<f64>> {
    let family = args.family.resolve()?;
    let stop = match (args.stop, family) {
        (Some(s), _) => s,
        (None, None) => 1.0,
        (None, Some(_)) => return Err(Error::Domain("--family sweeps need --stop (largest |z|)".into())),
    };
    let grid = linspace(args.start, stop, args.steps)?;
    match family {
        None => {
            if args.start < 0.0 || stop > 1.0 {
                return Err(Error::Domain(format!("overlap grid {}..{stop} must lie in [0, 1]", args.start)));
            }
            Ok(grid)
        }
        Some(f) => grid.into_iter().map(|z| overlap_of_modulus(z, f)).collect(),
    }
}

fn row(n: usize, p: f64, parity: Parity, selection: Selection, side: MeasurementSide) -> Result<SweepRow> {
    let p = if parity == Parity::Odd && p == 1.0 { ODD_ENDPOINT } else { p };
    let spec = SuperpositionSpec::equal(n, p, parity)?;
    let closed = closed_report(&spec, selection, side)?;
    let numeric = geometric_discord_numeric(&selected_density(&spec, selection)?, side)?;
    let [l1, l2, l3] = match selection {
        Selection::Pair { i, j } => mixed_lambdas(&spec, i - 1, j - 1, side)?.as_array(),
        Selection::Pure { k } => {
            let c = pure_report(&spec, k)?.concurrence;
            [2.0 - c * c, c * c, c * c]
        }
    };
    Ok(SweepRow {
        p: sig9(p),
        discord_closed: sig9(closed.discord),
        discord_numeric: sig9(numeric.discord),
        branch: closed.branch,
        concurrence: sig9(closed.concurrence),
        lambda1: sig9(l1),
        lambda2: sig9(l2),
        lambda3: sig9(l3),
    })
}

pub fn build(args: &SweepArgs) -> Result<SweepOutput> {
    let selection = selection(args)?;
    let parity: Parity = args.parity.into();
    let side: MeasurementSide = args.side.into();
    let grid = overlap_grid(args)?;
    // collect keeps grid order
    let rows = grid
        .par_iter()
        .map(|&p| row(args.n, p, parity, selection, side))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput { mode: args.mode, n: args.n, parity, selection, rows })
}

pub fn write(out: &SweepOutput, format: Format, sink: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(sink, out),
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &out.rows {
                w.write_record([
                    fmt_num(r.p),
                    fmt_num(r.discord_closed),
                    fmt_num(r.discord_numeric),
                    r.branch.to_string(),
                    fmt_num(r.concurrence),
                    fmt_num(r.lambda1),
                    fmt_num(r.lambda2),
                    fmt_num(r.lambda3),
                ])?;
            }
            sink.write_all(&csv_bytes(w)?)
        }
    }
}

pub fn run(args: &SweepArgs) -> std::result::Result<(), crate::CliError> {
    let out = build(args)?;
    let mut sink = open_sink(args.output.out.as_deref())?;
    write(&out, args.output.format.unwrap_or(Format::Csv), &mut *sink)?;
    sink.flush()?;
    Ok(())
}
