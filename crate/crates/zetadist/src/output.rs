//! JSON and CSV emission. Every float is written with 17 significant
//! digits so that parsing the text gives back the same `f64`.

use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// `x` with 17 significant digits, e.g. `1.6449340668482264e0`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A JSON number carrying the 17-digit text of `x`; `null` if `x` is not
/// finite.
pub fn num17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&fmt17(x)).expect("formatted float is a JSON number"))
}

/// Serialize `v` and rewrite every non-integer number with 17 digits.
pub fn to_json17<T: Serialize>(v: &T) -> Value {
    rewrite(serde_json::to_value(v).expect("in-memory serialization"))
}

fn rewrite(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num17(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(rewrite).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rewrite(v))).collect()),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt17(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => num17(*x),
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

/// Tabular payload plus metadata that only the JSON form carries.
#[derive(Debug, Clone, Default)]
pub struct Payload {
    pub meta: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Payload {
    pub fn new(columns: &[&'static str]) -> Self {
        Payload {
            meta: Map::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn meta(mut self, key: &str, value: Value) -> Self {
        self.meta.insert(key.into(), value);
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self.columns.iter().zip(r).map(|(c, v)| ((*c).to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = self.meta.clone();
        out.insert("rows".into(), Value::Array(rows));
        Value::Object(out)
    }

    pub fn write<W: Write>(&self, w: &mut W, format: OutputFormat) -> io::Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer(&mut *w, &self.to_json())?;
                w.write_all(b"\n")
            }
            OutputFormat::Csv => {
                let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
                out.write_record(&self.columns)?;
                for r in &self.rows {
                    out.write_record(r.iter().map(Cell::csv))?;
                }
                out.flush()
            }
        }
    }
}
