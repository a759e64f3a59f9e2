//! Tabular reports: CSV, JSON and a static SVG stem plot.
//!
//! Floats are written in shortest round-trip form, so a parsed report
//! reproduces every value bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    PlotSvg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "plot-svg" => Ok(Format::PlotSvg),
            _ => Err(format!("unknown format '{s}' (expected csv, json or plot-svg)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(u64),
    Float(f64),
    Text(String),
    Missing,
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => Value::from(*v),
            Field::Float(v) => Value::from(*v),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Missing => Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Text(s) => s.clone(),
            Field::Missing => String::new(),
        }
    }

    fn as_f64(&self) -> Option<f64> {
        match self {
            Field::Int(v) => Some(*v as f64),
            Field::Float(v) => Some(*v),
            _ => None,
        }
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Missing, Into::into)
    }
}

/// Same text serde_json would write for the number.
pub fn format_float(v: f64) -> String {
    Value::from(v).to_string()
}

/// One flat record; values line up with the table's columns.
pub type ReportRow = Vec<Field>;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<ReportRow>,
    /// Horizontal line for the stem plot.
    pub threshold: Option<f64>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            threshold: None,
        }
    }

    pub fn push(&mut self, row: ReportRow) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (name, field) in self.columns.iter().zip(row) {
                        obj.insert((*name).to_owned(), field.to_json());
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// A finished report: a table, or a single JSON document.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Document { json: Value, table: Table },
}

pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>, String> {
    match (report, format) {
        (Report::Document { json, .. }, Format::Json) => {
            let mut out = serde_json::to_vec(json).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        (Report::Document { table, .. }, f) | (Report::Table(table), f) => emit_table(table, f),
    }
}

pub fn emit_table(table: &Table, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Csv => emit_csv(table),
        Format::Json => {
            let mut out = serde_json::to_vec(&table.to_json_value()).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::PlotSvg => emit_svg(table).map(String::into_bytes),
    }
}

fn emit_csv(table: &Table) -> Result<Vec<u8>, String> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(&table.columns).map_err(|e| e.to_string())?;
    for row in &table.rows {
        writer
            .write_record(row.iter().map(Field::to_csv))
            .map_err(|e| e.to_string())?;
    }
    writer.into_inner().map_err(|e| e.to_string())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;

/// `|A|` against `l`: one stem per row plus the threshold line.
fn emit_svg(table: &Table) -> Result<String, String> {
    let (Some(li), Some(mi)) = (table.column("l"), table.column("magnitude")) else {
        return Err("plot-svg needs a table with 'l' and 'magnitude' columns".into());
    };
    let points: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter_map(|row| Some((row[li].as_f64()?, row[mi].as_f64()?)))
        .collect();
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |l: f64| {
        if points.len() <= 1 {
            WIDTH / 2.0
        } else {
            MARGIN + (l - lo) / span * (WIDTH - 2.0 * MARGIN)
        }
    };
    let y = |m: f64| HEIGHT - MARGIN - m.clamp(0.0, 1.0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r#"<path class="axes" d="M{MARGIN} {MARGIN} V{b} H{r}" fill="none" stroke="black"/>"#,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN
    );
    for (l, m) in &points {
        let _ = writeln!(
            svg,
            r#"<line class="stem" x1="{px:.3}" y1="{base:.3}" x2="{px:.3}" y2="{top:.3}" stroke="steelblue"><title>l={l} |A|={m}</title></line>"#,
            px = x(*l),
            base = y(0.0),
            top = y(*m),
        );
    }
    if let Some(t) = table.threshold {
        let _ = writeln!(
            svg,
            r#"<line class="threshold" x1="{MARGIN}" y1="{py:.3}" x2="{r}" y2="{py:.3}" stroke="crimson" stroke-dasharray="4 3"/>"#,
            py = y(t),
            r = WIDTH - MARGIN
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_rows() -> Table {
        let mut t = Table::new(vec!["l", "magnitude", "verdict"]);
        t.push(vec![2u64.into(), 0.0.into(), "NonFactor".into()]);
        t.push(vec![3u64.into(), 1.0.into(), "Factor".into()]);
        t.threshold = Some(0.75);
        t
    }

    #[test]
    fn csv_header_plus_rows() {
        let out = String::from_utf8(emit_table(&two_rows(), Format::Csv).unwrap()).unwrap();
        assert_eq!(out.lines().count(), 3);
        assert!(!out.contains('\r'));
        assert_eq!(out.lines().next().unwrap(), "l,magnitude,verdict");
        assert_eq!(out.lines().nth(2).unwrap(), "3,1.0,Factor");
    }

    #[test]
    fn empty_json_is_brackets() {
        let t = Table::new(vec!["l", "magnitude"]);
        assert_eq!(emit_table(&t, Format::Json).unwrap(), b"[]\n");
    }

    #[test]
    fn svg_counts() {
        let svg = String::from_utf8(emit_table(&two_rows(), Format::PlotSvg).unwrap()).unwrap();
        assert_eq!(svg.matches(r#"class="stem""#).count(), 2);
        assert_eq!(svg.matches(r#"class="threshold""#).count(), 1);
    }

    #[test]
    fn svg_needs_magnitudes() {
        let t = Table::new(vec!["prime"]);
        assert!(emit_table(&t, Format::PlotSvg).is_err());
    }

    #[test]
    fn float_text_round_trips() {
        for v in [0.1, 1.0 / 3.0, 0.707_106_781_186_547_6, 1e-300, 123_456_789.012_345_67] {
            assert_eq!(format_float(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
