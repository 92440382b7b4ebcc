use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use superharm::{Rational, ScaledScalar};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything a command produces, ready for any output format.
pub struct Output {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    /// Header and rows for CSV.
    pub table: (Vec<&'static str>, Vec<Vec<String>>),
    pub text: String,
    /// The first failed exact check, with its witness.
    pub failure: Option<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    params: &'a Value,
    result: &'a Value,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn emit(out: &Output, format: Format, elapsed_ms: Option<u128>) -> io::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: out.command,
                params: &out.params,
                result: &out.result,
                ok: out.failure.is_none(),
                elapsed_ms,
            };
            serde_json::to_writer_pretty(&mut w, &env)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(&out.table.0)?;
            for row in &out.table.1 {
                csv.write_record(row)?;
            }
            csv.flush()?;
        }
        Format::Text => {
            write!(w, "{}", out.text)?;
            if let Some(ms) = elapsed_ms {
                writeln!(w, "elapsed: {ms} ms")?;
            }
        }
    }
    Ok(())
}

/// An integer as a JSON number when it fits, otherwise as a decimal string.
fn big_int(s: String) -> Value {
    s.parse::<i64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}

pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn scalar_json(s: &ScaledScalar) -> Value {
    json!({
        "coeff_num": big_int(s.coeff.numer().to_string()),
        "coeff_den": big_int(s.coeff.denom().to_string()),
        "pi_exponent": s.pi_exponent,
    })
}

/// Exact form followed by a 12-digit approximation.
pub fn scalar_text(s: &ScaledScalar) -> String {
    format!("{s} (approx. {:.11e})", s.approx())
}
