//! CSV and JSON serialisation of sweep results.

use std::io::{self, Write};
use std::str::FromStr;

use hyperspin_core::{MeasureRecord, Regime};
use serde::{Deserialize, Serialize};

use crate::grid::GridPoint;
use crate::sweep::{Metadata, SweepResult};

pub const CSV_HEADER: &str = "channel,phi,mu,tau,regime,time,kernel,eta,s_ab,s_ba,delta_s,steering_class,concurrence,eof,gqd,coherence_l1";

/// Significant digits of every emitted float.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (csv, json)")),
        }
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`]; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("own exponent format parses")
}

/// C `%.12g`: shortest of fixed and exponent notation, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = SIGNIFICANT_DIGITS as i32;
    let e_form = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = e_form.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..p).contains(&exp) {
        let fixed = format!("{:.*}", (p - 1 - exp) as usize, x);
        strip_zeros(&fixed).to_owned()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip_zeros(mantissa), sign, exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// One output row; the field names are the CSV columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub channel: String,
    pub phi: f64,
    pub mu: f64,
    pub tau: f64,
    pub regime: String,
    pub time: f64,
    pub kernel: f64,
    pub eta: f64,
    pub s_ab: f64,
    pub s_ba: f64,
    pub delta_s: f64,
    pub steering_class: String,
    pub concurrence: f64,
    pub eof: f64,
    pub gqd: f64,
    pub coherence_l1: f64,
}

impl Row {
    /// Full-precision row.
    pub fn new(p: &GridPoint, r: &MeasureRecord) -> Self {
        Self {
            channel: p.channel.as_str().to_owned(),
            phi: p.phi,
            mu: p.mu,
            tau: p.tau,
            regime: Regime::of_tau(p.tau).as_str().to_owned(),
            time: p.time,
            kernel: r.kernel,
            eta: r.eta,
            s_ab: r.steering.s_ab,
            s_ba: r.steering.s_ba,
            delta_s: r.steering.delta_s,
            steering_class: r.steering.class.as_str().to_owned(),
            concurrence: r.concurrence,
            eof: r.eof,
            gqd: r.gqd,
            coherence_l1: r.coherence_l1,
        }
    }

    fn floats_mut(&mut self) -> [&mut f64; 13] {
        [
            &mut self.phi,
            &mut self.mu,
            &mut self.tau,
            &mut self.time,
            &mut self.kernel,
            &mut self.eta,
            &mut self.s_ab,
            &mut self.s_ba,
            &mut self.delta_s,
            &mut self.concurrence,
            &mut self.eof,
            &mut self.gqd,
            &mut self.coherence_l1,
        ]
    }

    /// Every float rounded with [`round_sig`].
    pub fn rounded(mut self) -> Self {
        for x in self.floats_mut() {
            *x = round_sig(*x);
        }
        self
    }

    pub fn to_csv_line(&self) -> String {
        let f = format_sig;
        [
            self.channel.clone(),
            f(self.phi),
            f(self.mu),
            f(self.tau),
            self.regime.clone(),
            f(self.time),
            f(self.kernel),
            f(self.eta),
            f(self.s_ab),
            f(self.s_ba),
            f(self.delta_s),
            self.steering_class.clone(),
            f(self.concurrence),
            f(self.eof),
            f(self.gqd),
            f(self.coherence_l1),
        ]
        .join(",")
    }
}

#[derive(Debug, Serialize)]
struct Document<'a> {
    metadata: &'a Metadata,
    records: Vec<Row>,
}

/// JSON document as read back by [`parse_json`].
#[derive(Debug, Clone, Deserialize)]
pub struct ParsedDocument {
    pub metadata: serde_json::Value,
    pub records: Vec<Row>,
}

pub fn parse_json(bytes: &[u8]) -> serde_json::Result<ParsedDocument> {
    serde_json::from_slice(bytes)
}

struct Counter<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Writes `result` to `sink` and returns the number of bytes written.
pub fn emit<W: Write>(result: &SweepResult, format: Format, sink: W) -> io::Result<usize> {
    let mut out = Counter { inner: io::BufWriter::new(sink), bytes: 0 };
    match format {
        Format::Csv => {
            out.write_all(CSV_HEADER.as_bytes())?;
            out.write_all(b"\n")?;
            for (p, r) in &result.records {
                out.write_all(Row::new(p, r).to_csv_line().as_bytes())?;
                out.write_all(b"\n")?;
            }
        }
        Format::Json => {
            let doc = Document {
                metadata: &result.metadata,
                records: result.records.iter().map(|(p, r)| Row::new(p, r).rounded()).collect(),
            };
            serde_json::to_writer(&mut out, &doc)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(out.bytes)
}

/// One record, as the `measure` command prints it.
pub fn emit_record<W: Write>(p: &GridPoint, r: &MeasureRecord, format: Format, mut sink: W) -> io::Result<usize> {
    let row = Row::new(p, r);
    let text = match format {
        Format::Csv => format!("{CSV_HEADER}\n{}\n", row.to_csv_line()),
        Format::Json => format!("{}\n", serde_json::to_string(&row.rounded())?),
    };
    sink.write_all(text.as_bytes())?;
    Ok(text.len())
}
