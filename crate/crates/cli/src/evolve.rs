use std::io::{self, Write};

use catcorr::{DephasingParams, Error, MeasurementSide, Result, SuddenDeathTime};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{linspace, EvolveArgs, Format, Selection};
use crate::output::{csv_bytes, fmt_num, open_sink, sig9, write_json, DeathTime};
use crate::report::dephased;

pub const CSV_HEADER: [&str; 4] = ["t", "gamma", "discord", "concurrence"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveRow {
    pub t: f64,
    pub gamma: f64,
    pub discord: f64,
    pub concurrence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolveOutput {
    pub overlaps: Vec<f64>,
    pub parity: catcorr::Parity,
    pub selection: Selection,
    pub decay_rate: f64,
    pub sudden_death_time: DeathTime,
    pub rows: Vec<EvolveRow>,
}

fn times(args: &EvolveArgs) -> Result<Vec<f64>> {
    if args.times.is_empty() {
        return linspace(0.0, args.t_stop, args.t_steps);
    }
    if let Some(t) = args.times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::Domain(format!("time {t} must be non-negative and finite")));
    }
    Ok(args.times.clone())
}

pub fn build(args: &EvolveArgs) -> Result<EvolveOutput> {
    let spec = args.spec.build()?;
    let selection = args.selection.resolve(spec.n())?;
    let side: MeasurementSide = args.selection.side.into();
    // validates the rate before any grid work
    let (_, _, t0) = dephased(&spec, selection, side, DephasingParams::new(args.rate, 0.0)?)?;
    let rows = times(args)?
        .par_iter()
        .map(|&t| {
            let params = DephasingParams::new(args.rate, t)?;
            let (discord, concurrence, _) = dephased(&spec, selection, side, params)?;
            Ok(EvolveRow {
                t: sig9(t),
                gamma: sig9(params.gamma()),
                discord: sig9(discord),
                concurrence: sig9(concurrence),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvolveOutput {
        overlaps: spec.overlaps().iter().copied().map(sig9).collect(),
        parity: spec.parity(),
        selection,
        decay_rate: sig9(args.rate),
        sudden_death_time: DeathTime::rounded(t0),
        rows,
    })
}

pub fn sudden_death_line(t0: SuddenDeathTime) -> String {
    format!("# sudden_death_time,{}", DeathTime::rounded(t0).text())
}

pub fn write(out: &EvolveOutput, format: Format, sink: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => write_json(sink, out),
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &out.rows {
                w.write_record([fmt_num(r.t), fmt_num(r.gamma), fmt_num(r.discord), fmt_num(r.concurrence)])?;
            }
            sink.write_all(&csv_bytes(w)?)?;
            writeln!(sink, "{}", sudden_death_line(out.sudden_death_time.0))
        }
    }
}

pub fn run(args: &EvolveArgs) -> std::result::Result<(), crate::CliError> {
    let out = build(args)?;
    let mut sink = open_sink(args.output.out.as_deref())?;
    write(&out, args.output.format.unwrap_or(Format::Csv), &mut *sink)?;
    sink.flush()?;
    Ok(())
}
