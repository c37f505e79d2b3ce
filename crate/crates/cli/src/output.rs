//! Number formatting and output sinks shared by the subcommands.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use catcorr::SuddenDeathTime;
use serde::{Deserialize, Serialize};

/// Rounds to 9 significant digits. Printing the result with the shortest
/// round-trip representation then never shows more than 9 digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// Locale-independent text for a number at 9 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = sig9(x);
    if r == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Serialize, Deserialize)]
enum InfiniteMarker {
    #[serde(rename = "infinite")]
    Infinite,
}

/// Sudden-death time as printed: a number, or the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "DeathTimeRepr", from = "DeathTimeRepr")]
pub struct DeathTime(pub SuddenDeathTime);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DeathTimeRepr {
    Finite(f64),
    Infinite(InfiniteMarker),
}

impl From<DeathTime> for DeathTimeRepr {
    fn from(d: DeathTime) -> Self {
        match d.0 {
            SuddenDeathTime::Finite(t) => DeathTimeRepr::Finite(t),
            SuddenDeathTime::Infinite => DeathTimeRepr::Infinite(InfiniteMarker::Infinite),
        }
    }
}

impl From<DeathTimeRepr> for DeathTime {
    fn from(r: DeathTimeRepr) -> Self {
        DeathTime(match r {
            DeathTimeRepr::Finite(t) => SuddenDeathTime::Finite(t),
            DeathTimeRepr::Infinite(_) => SuddenDeathTime::Infinite,
        })
    }
}

impl DeathTime {
    pub fn rounded(t: SuddenDeathTime) -> Self {
        DeathTime(match t {
            SuddenDeathTime::Finite(v) => SuddenDeathTime::Finite(sig9(v)),
            inf => inf,
        })
    }

    pub fn text(&self) -> String {
        match self.0 {
            SuddenDeathTime::Finite(t) => fmt_num(t),
            SuddenDeathTime::Infinite => "infinite".to_string(),
        }
    }
}

pub fn open_sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Finished CSV document of an in-memory writer.
pub fn csv_bytes(w: csv::Writer<Vec<u8>>) -> io::Result<Vec<u8>> {
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize>(sink: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, value)?;
    writeln!(sink)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_num(5.0 / 36.0), "0.138888889");
        assert_eq!(fmt_num(0.5), "0.5");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0 / 3.0 * 1e-9), "3.33333333e-10");
        assert_eq!(fmt_num(123456789012.0), "123456789000");
        assert_eq!(fmt_num(2f64.ln()), "0.693147181");
    }

    #[test]
    fn rounding_is_idempotent() {
        for x in [0.1, 1.0 / 7.0, 12345.678901234, 9.999999999e-5, 0.138888888888] {
            assert_eq!(sig9(sig9(x)), sig9(x));
        }
    }

    #[test]
    fn death_time_serde() {
        let inf = DeathTime(SuddenDeathTime::Infinite);
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"infinite\"");
        let fin = DeathTime(SuddenDeathTime::Finite(0.5));
        assert_eq!(serde_json::to_string(&fin).unwrap(), "0.5");
        assert_eq!(serde_json::from_str::<DeathTime>("\"infinite\"").unwrap(), inf);
        assert_eq!(serde_json::from_str::<DeathTime>("0.5").unwrap(), fin);
        assert!(serde_json::from_str::<DeathTime>("\"never\"").is_err());
    }
}
