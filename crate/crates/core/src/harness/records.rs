//! Sweep records and their CSV form.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{SymmetryVariant, NU1};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_HEADER: [&str; 8] = ["a", "delta", "variant", "method", "index", "lambda", "residual", "meta"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Modematch,
    Fdoracle,
    Rayleigh,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Modematch, Method::Fdoracle, Method::Rayleigh];

    pub fn label(self) -> &'static str {
        match self {
            Method::Modematch => "modematch",
            Method::Fdoracle => "fdoracle",
            Method::Rayleigh => "rayleigh",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown method '{s}' (expected modematch, fdoracle or rayleigh)")))
    }
}

/// One eigenvalue measurement. Failed points keep `lambda = NaN` and carry
/// the error in `status`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub a: f64,
    pub delta: f64,
    pub variant: SymmetryVariant,
    pub method: Method,
    /// 1-based index within the variant's spectrum.
    pub index: usize,
    pub lambda: f64,
    pub residual: f64,
    /// `key=value` pairs separated by `;` (truncation, grid, status).
    pub meta: String,
    pub status: String,
    pub timestamp: u64,
    pub version: String,
}

pub fn unix_time() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

impl SweepRecord {
    pub fn ok(
        a: f64,
        delta: f64,
        variant: SymmetryVariant,
        method: Method,
        index: usize,
        lambda: f64,
        residual: f64,
        meta: String,
    ) -> Self {
        Self {
            a,
            delta,
            variant,
            method,
            index,
            lambda,
            residual,
            meta,
            status: "ok".into(),
            timestamp: unix_time(),
            version: CODE_VERSION.into(),
        }
    }

    pub fn failed(a: f64, delta: f64, variant: SymmetryVariant, method: Method, err: &Error) -> Self {
        Self {
            a,
            delta,
            variant,
            method,
            index: 0,
            lambda: f64::NAN,
            residual: f64::NAN,
            meta: String::new(),
            status: format!("{}: {}", err.kind(), err),
            timestamp: unix_time(),
            version: CODE_VERSION.into(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    /// Distance to the threshold.
    pub fn gap(&self) -> f64 {
        NU1 - self.lambda
    }

    fn meta_column(&self) -> String {
        let mut out = format!("status={};version={}", self.status.replace(';', ","), self.version);
        if !self.meta.is_empty() {
            out.push(';');
            out.push_str(&self.meta);
        }
        out
    }
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "NaN".into()
    }
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            fmt17(r.a),
            fmt17(r.delta),
            r.variant.label().to_string(),
            r.method.label().to_string(),
            r.index.to_string(),
            fmt17(r.lambda),
            fmt17(r.residual),
            r.meta_column(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("line {line}: bad number '{s}'")))
}

/// Reads records written by [`write_csv`]. The timestamp is not part of the
/// CSV and comes back as 0.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let field = |k: usize| row.get(k).ok_or_else(|| Error::Parse(format!("line {line}: missing column {}", CSV_HEADER[k])));
        let mut status = "ok".to_string();
        let mut version = String::new();
        let mut rest = Vec::new();
        for part in field(7)?.split(';').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("status", v)) => status = v.to_string(),
                Some(("version", v)) => version = v.to_string(),
                _ => rest.push(part),
            }
        }
        out.push(SweepRecord {
            a: parse_f64(field(0)?, line)?,
            delta: parse_f64(field(1)?, line)?,
            variant: field(2)?.parse()?,
            method: field(3)?.parse()?,
            index: field(4)?.trim().parse().map_err(|_| Error::Parse(format!("line {line}: bad index")))?,
            lambda: parse_f64(field(5)?, line)?,
            residual: parse_f64(field(6)?, line)?,
            meta: rest.join(";"),
            status,
            timestamp: 0,
            version,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_keeps_bits() {
        let mut r = SweepRecord::ok(
            0.5,
            0.1,
            SymmetryVariant::NeumannAtCut,
            Method::Modematch,
            1,
            2.354415449123456,
            1e-9,
            "n_left=4;n_right=40".into(),
        );
        r.timestamp = 0;
        let f = SweepRecord {
            timestamp: 0,
            ..SweepRecord::failed(
                0.5,
                0.05,
                SymmetryVariant::NeumannAtCut,
                Method::Fdoracle,
                &Error::OutOfValidity("delta, too small".into()),
            )
        };
        let text = to_csv_string(&[r.clone(), f.clone()]).unwrap();
        assert!(text.starts_with("a,delta,variant,method,index,lambda,residual,meta\n"));
        assert!(text.contains("2.3544154491234561e0"));
        let back = read_csv(text.as_bytes()).unwrap();
        assert_eq!(back[0], r);
        assert_eq!(back[1].status, f.status.replace(';', ","));
        assert!(back[1].lambda.is_nan() && !back[1].is_ok());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("FDoracle".parse::<Method>().unwrap(), Method::Fdoracle);
        assert!("fem".parse::<Method>().is_err());
        assert!(read_csv("x,y\n1,2\n".as_bytes()).is_err());
    }
}
