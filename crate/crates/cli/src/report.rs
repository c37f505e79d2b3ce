use std::io::{self, Write};

use catcorr::correlations::{
    geometric_discord_numeric, mixed_discord_closed, pure_density, pure_report,
};
use catcorr::dephasing::{
    discord_trajectory, pure_concurrence_trajectory, pure_discord_trajectory, sudden_death_time,
};
use catcorr::oracle::discord_by_measurement_search_default;
use catcorr::state::reduced_pair_density;
use catcorr::{
    CorrelationReport, DephasingParams, MeasurementSide, Parity, Result, SuddenDeathTime, SuperpositionSpec,
    TwoQubitDensity,
};
use serde::{Deserialize, Serialize};

use crate::args::{Format, ReportArgs, Selection};
use crate::output::{csv_bytes, fmt_num, open_sink, sig9, write_json, DeathTime};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportOutput {
    pub overlaps: Vec<f64>,
    pub parity: Parity,
    pub selection: Selection,
    pub closed: CorrelationReport,
    pub numeric: CorrelationReport,
    pub oracle_discord: Option<f64>,
    pub dephasing: Option<DephasingOutput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DephasingOutput {
    pub decay_rate: f64,
    pub time: f64,
    pub gamma: f64,
    pub discord: f64,
    pub concurrence: f64,
    pub sudden_death_time: DeathTime,
}

pub fn round_report(r: CorrelationReport) -> CorrelationReport {
    CorrelationReport {
        discord: sig9(r.discord),
        k_eigenvalues: r.k_eigenvalues.map(sig9),
        concurrence: sig9(r.concurrence),
        ..r
    }
}

/// Two-qubit state picked out by `selection` (0-based internally).
pub fn selected_density(spec: &SuperpositionSpec, selection: Selection) -> Result<TwoQubitDensity> {
    match selection {
        Selection::Pair { i, j } => reduced_pair_density(spec, i - 1, j - 1),
        Selection::Pure { k } => pure_density(spec, k),
    }
}

pub fn closed_report(spec: &SuperpositionSpec, selection: Selection, side: MeasurementSide) -> Result<CorrelationReport> {
    match selection {
        Selection::Pair { i, j } => mixed_discord_closed(spec, i - 1, j - 1, side),
        Selection::Pure { k } => pure_report(spec, k),
    }
}

/// Discord, concurrence and sudden-death time after dephasing for `params`.
pub fn dephased(
    spec: &SuperpositionSpec,
    selection: Selection,
    side: MeasurementSide,
    params: DephasingParams,
) -> Result<(f64, f64, SuddenDeathTime)> {
    match selection {
        Selection::Pair { i, j } => {
            let r = discord_trajectory(spec, i - 1, j - 1, params, side)?;
            let t0 = sudden_death_time(spec, i - 1, j - 1, params.decay_rate())?;
            Ok((r.discord, r.concurrence, t0))
        }
        Selection::Pure { k } => {
            let c0 = pure_report(spec, k)?.concurrence;
            // e^{-Γt} decay never reaches zero
            let t0 = if c0 > 0.0 { SuddenDeathTime::Infinite } else { SuddenDeathTime::Finite(0.0) };
            Ok((pure_discord_trajectory(spec, k, params)?, pure_concurrence_trajectory(spec, k, params)?, t0))
        }
    }
}

pub fn build(args: &ReportArgs) -> Result<ReportOutput> {
    let spec = args.spec.build()?;
    let selection = args.selection.resolve(spec.n())?;
    let side: MeasurementSide = args.selection.side.into();
    let rho = selected_density(&spec, selection)?;
    let closed = closed_report(&spec, selection, side)?;
    let numeric = geometric_discord_numeric(&rho, side)?;
    let oracle_discord = if args.verify {
        Some(sig9(discord_by_measurement_search_default(&rho, side)?))
    } else {
        None
    };
    let dephasing = match args.rate {
        Some(rate) => {
            let params = DephasingParams::new(rate, args.t.unwrap_or(0.0))?;
            let (discord, concurrence, t0) = dephased(&spec, selection, side, params)?;
            Some(DephasingOutput {
                decay_rate: sig9(rate),
                time: sig9(params.time()),
                gamma: sig9(params.gamma()),
                discord: sig9(discord),
                concurrence: sig9(concurrence),
                sudden_death_time: DeathTime::rounded(t0),
            })
        }
        None => None,
    };
    Ok(ReportOutput {
        overlaps: spec.overlaps().iter().copied().map(sig9).collect(),
        parity: spec.parity(),
        selection,
        closed: round_report(closed),
        numeric: round_report(numeric),
        oracle_discord,
        dephasing,
    })
}

fn fields(out: &ReportOutput) -> Vec<(&'static str, String)> {
    let join = |v: &[f64]| v.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(" ");
    let side = match out.closed.measurement_side {
        MeasurementSide::FirstQubit => "first",
        MeasurementSide::SecondQubit => "second",
    };
    let selection = match out.selection {
        Selection::Pair { i, j } => format!("pair {i} {j}"),
        Selection::Pure { k } => format!("pure k={k}"),
    };
    let mut f = vec![
        ("n", out.overlaps.len().to_string()),
        ("overlaps", join(&out.overlaps)),
        ("parity", out.parity.to_string()),
        ("selection", selection),
        ("measurement_side", side.to_string()),
        ("discord", fmt_num(out.closed.discord)),
        ("branch", out.closed.branch.to_string()),
        ("discord_numeric", fmt_num(out.numeric.discord)),
        ("k_eigenvalues", join(&out.numeric.k_eigenvalues)),
        ("concurrence", fmt_num(out.closed.concurrence)),
        ("concurrence_numeric", fmt_num(out.numeric.concurrence)),
    ];
    if let Some(d) = out.oracle_discord {
        f.push(("discord_oracle", fmt_num(d)));
    }
    if let Some(d) = &out.dephasing {
        f.push(("decay_rate", fmt_num(d.decay_rate)));
        f.push(("t", fmt_num(d.time)));
        f.push(("gamma", fmt_num(d.gamma)));
        f.push(("discord_t", fmt_num(d.discord)));
        f.push(("concurrence_t", fmt_num(d.concurrence)));
        f.push(("sudden_death_time", d.sudden_death_time.text()));
    }
    f
}

pub fn write(out: &ReportOutput, format: Format, sink: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(sink, out),
        Format::Text => {
            for (k, v) in fields(out) {
                writeln!(sink, "{k}: {v}")?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"])?;
            for (k, v) in fields(out) {
                w.write_record([k, v.as_str()])?;
            }
            sink.write_all(&csv_bytes(w)?)
        }
    }
}

pub fn run(args: &ReportArgs) -> std::result::Result<(), crate::CliError> {
    let out = build(args)?;
    let mut sink = open_sink(args.output.out.as_deref())?;
    write(&out, args.output.format.unwrap_or(Format::Text), &mut *sink)?;
    sink.flush()?;
    Ok(())
}
