//! Tables and their CSV and JSON renderings.
//!
//! Numbers are written with 12 significant digits in `%g` style. Parsing an
//! emitted file and writing it again reproduces it byte for byte.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn parse(field: &str) -> Cell {
        if field.is_empty() {
            Cell::Empty
        } else if let Ok(i) = field.parse::<i64>() {
            Cell::Int(i)
        } else if let Ok(x) = field.parse::<f64>() {
            Cell::Num(x)
        } else {
            Cell::Text(field.to_owned())
        }
    }

    fn to_field(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_g(*x),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => serde_json::Number::from_f64(round_sig(*x)).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }
}

/// `printf("%.12g", x)`.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`].
pub fn round_sig(x: f64) -> f64 {
    format_g(x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        write_csv(&self.columns, &self.rows)
    }

    /// `{"config": ..., "rows": [{column: value, ...}, ...]}`.
    pub fn to_json<C: Serialize>(&self, config: &C) -> Result<String, CliError> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.to_json())).collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("config".into(), serde_json::to_value(config)?);
        doc.insert("rows".into(), Value::Array(rows));
        Ok(render_json(&Value::Object(doc)))
    }
}

fn write_csv<S: AsRef<[u8]>>(columns: &[S], rows: &[Vec<Cell>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::to_field))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values always serialize");
    s.push('\n');
    s
}

/// A CSV table read back from text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ParsedTable {
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let columns = r.headers()?.iter().map(str::to_owned).collect();
        let rows = r
            .records()
            .map(|rec| Ok(rec?.iter().map(Cell::parse).collect()))
            .collect::<Result<_, CliError>>()?;
        Ok(ParsedTable { columns, rows })
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        write_csv(&self.columns, &self.rows)
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_formatting() {
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(-0.0), "0");
        assert_eq!(format_g(0.5), "0.5");
        assert_eq!(format_g(1.0), "1");
        assert_eq!(format_g(0.491666666666666), "0.491666666667");
        assert_eq!(format_g(1.0 / 3.0 * 1e-5), "3.33333333333e-06");
        assert_eq!(format_g(0.0001), "0.0001");
        assert_eq!(format_g(123456789012.0), "123456789012");
        assert_eq!(format_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(format_g(-2.5e-300), "-2.5e-300");
        assert_eq!(format_g(0.9999999999999), "1");
        assert_eq!(format_g(f64::INFINITY), "inf");
        assert_eq!(format_g(0.005 * 3.0), "0.015");
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(&["n", "label", "x", "maybe"]);
        t.push(vec![1usize.into(), "hot".into(), 0.1234567890123456.into(), Cell::Empty]);
        t.push(vec![2usize.into(), "a,b".into(), 2.0.into(), f64::INFINITY.into()]);
        let text = t.to_csv().unwrap();
        assert_eq!(text, "n,label,x,maybe\n1,hot,0.123456789012,\n2,\"a,b\",2,inf\n");
        assert_eq!(ParsedTable::from_csv(&text).unwrap().to_csv().unwrap(), text);
    }

    #[test]
    fn json_round_trip() {
        let mut t = Table::new(&["n", "x", "gone"]);
        t.push(vec![3usize.into(), 0.1234567890123456.into(), f64::INFINITY.into()]);
        let text = t.to_json(&serde_json::json!({"seed": 1})).unwrap();
        assert!(text.contains("\"x\": 0.123456789012"));
        assert!(text.contains("\"gone\": null"));
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render_json(&reparsed), text);
    }
}
