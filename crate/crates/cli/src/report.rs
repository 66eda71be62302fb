use std::io::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Text(String),
}

impl Cell {
    fn to_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// `p/q` in lowest terms with the sign on the numerator; integers print bare.
pub fn rational_text(r: &BigRational) -> String {
    r.to_string()
}

/// Decimal rendering of an exact rational.
pub fn decimal_text(r: &BigRational) -> String {
    match r.to_f64() {
        Some(x) if x.is_finite() => format!("{x}"),
        _ => "NaN".into(),
    }
}

pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>, meta: Map<String, Value>) -> Self {
        Report { columns, rows: Vec::new(), meta }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_text))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": Value::Object(self.meta.clone()), "rows": rows });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_text(&r(1, 3)), "1/3");
        assert_eq!(rational_text(&r(2, 6)), "1/3");
        assert_eq!(rational_text(&r(-4, 6)), "-2/3");
        assert_eq!(rational_text(&r(3, 1)), "3");
        assert_eq!(decimal_text(&r(1, 4)), "0.25");
        assert_eq!(decimal_text(&r(1, 1)), "1");
    }

    #[test]
    fn csv_header_only_when_empty() {
        let rep = Report::new(vec!["a", "b"], Map::new());
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n");
    }
}
