use std::io::Write;

use crate::SignedLogValue;

/// Magnitude of `log_abs` from which `value_linear` is left empty.
pub const LINEAR_LOG_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Field {
    fn csv_cell(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Num(v) => format_g17(*v),
            Field::Text(s) => s.clone(),
            Field::Empty => String::new(),
        }
    }

    fn json_token(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Num(v) if v.is_finite() => format_g17(*v),
            Field::Num(_) | Field::Empty => "null".into(),
            Field::Text(s) => serde_json::to_string(s).expect("strings always serialise"),
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(v)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Empty, Field::Num)
    }
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v as i64)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

/// One flat output row whose keys keep their insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputRecord {
    fields: Vec<(String, Field)>,
}

impl OutputRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    /// Adds `{prefix}sign`, `{prefix}log_abs` and, for the value only,
    /// `value_linear`.
    pub fn push_signed(&mut self, prefix: &str, v: SignedLogValue, linear: bool) -> &mut Self {
        self.push(&format!("{prefix}sign"), v.sign as i64);
        let log = if v.is_zero() { None } else { Some(v.log_abs) };
        self.push(&format!("{prefix}log_abs"), log);
        if linear {
            let lin = (v.is_zero() || v.log_abs.abs() < LINEAR_LOG_LIMIT).then(|| v.to_real());
            self.push("value_linear", lin);
        }
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|(k, _)| k.as_str())
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// `%.17g`-style rendering: 17 significant digits, trailing zeros dropped.
pub fn format_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{v:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Writes `records` as CSV (header first, LF endings) or as one JSON object
/// per line. Every record must share the first record's keys.
pub fn write_records(out: &mut dyn Write, records: &[OutputRecord], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.keys())?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.csv_cell()))?;
            }
            w.flush()
        }
        Format::Json => {
            for r in records {
                let body: Vec<String> = r
                    .fields
                    .iter()
                    .map(|(k, v)| {
                        format!(
                            "{}:{}",
                            serde_json::to_string(k).expect("strings always serialise"),
                            v.json_token()
                        )
                    })
                    .collect();
                writeln!(out, "{{{}}}", body.join(","))?;
            }
            out.flush()
        }
    }
}
