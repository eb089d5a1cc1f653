//! Report structure and the CSV / JSON emitters.

use histoq_core::continuum::QuadratureSpec;
use histoq_core::hilbert::Tolerances;
use serde_json::{json, Map, Value};

use crate::format::{number, round_sig};

/// One output value.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(round_sig(*x)).map(Value::Number).unwrap_or(Value::Null),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Rows in grid order; the last column is always `provenance`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// `columns` excludes the provenance column, which is appended.
    pub fn new(columns: &[&'static str]) -> Self {
        let mut columns = columns.to_vec();
        columns.push("provenance");
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, mut row: Vec<Cell>, provenance: &str) {
        row.push(Cell::text(provenance));
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A scalar result that does not fit the row table.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryItem {
    pub name: String,
    pub value: Cell,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, Cell)>,
    pub tolerances: Option<Tolerances>,
    /// Set for the continuum commands.
    pub quadrature: Option<QuadratureSpec>,
    pub table: Table,
    pub summary: Vec<SummaryItem>,
    /// Structured detail only the JSON form carries.
    pub detail: Option<Value>,
}

impl Report {
    pub fn new(command: &'static str, table: Table) -> Self {
        Report { command, parameters: Vec::new(), tolerances: None, quadrature: None, table, summary: Vec::new(), detail: None }
    }

    pub fn param(&mut self, name: &'static str, value: impl Into<Cell>) {
        self.parameters.push((name, value.into()));
    }

    pub fn summarize(&mut self, name: impl Into<String>, value: impl Into<Cell>, provenance: &str) {
        self.summary.push(SummaryItem { name: name.into(), value: value.into(), provenance: provenance.into() });
    }

    /// Header plus rows, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.table.columns).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("cells are UTF-8")
    }

    /// Summary lines `name = value  [provenance]` for the terminal.
    pub fn summary_lines(&self) -> String {
        self.summary.iter().map(|s| format!("{} = {}  [{}]\n", s.name, s.value.csv(), s.provenance)).collect()
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("artifact".into(), json!(env!("CARGO_PKG_NAME")));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), json!(self.command));
        let params: Map<String, Value> = self.parameters.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
        meta.insert("parameters".into(), Value::Object(params));
        let mut tol = Map::new();
        if let Some(t) = &self.tolerances {
            tol.insert("md".into(), Cell::Num(t.md).json());
            tol.insert("rlp".into(), Cell::Num(t.rlp).json());
            tol.insert("lp".into(), Cell::Num(t.lp).json());
        }
        if let Some(q) = &self.quadrature {
            tol.insert("quad_abs".into(), Cell::Num(q.abs_tol).json());
            tol.insert("quad_rel".into(), Cell::Num(q.rel_tol).json());
        }
        if !tol.is_empty() {
            meta.insert("tolerances".into(), Value::Object(tol));
        }
        let rows: Vec<Value> = self
            .table
            .rows
            .iter()
            .map(|r| Value::Object(self.table.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect()))
            .collect();
        let summary: Vec<Value> = self
            .summary
            .iter()
            .map(|s| json!({ "name": s.name, "value": s.value.json(), "provenance": s.provenance }))
            .collect();
        let mut root = Map::new();
        root.insert("metadata".into(), Value::Object(meta));
        root.insert("columns".into(), json!(self.table.columns));
        root.insert("rows".into(), Value::Array(rows));
        root.insert("summary".into(), Value::Array(summary));
        if let Some(d) = &self.detail {
            root.insert("detail".into(), d.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("values serialize");
        s.push('\n');
        s
    }
}

/// JSON number for a float, rounded like every other emitted value.
pub fn json_number(x: f64) -> Value {
    Cell::Num(x).json()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new(&["label", "value", "flag"]);
        t.push(vec!["(Φ,A)".into(), (1.0 / 9.0).into(), true.into()], "Eq. 4.20");
        t.push(vec!["a,b".into(), (-0.0).into(), Cell::Empty], "none");
        let mut r = Report::new("demo", t);
        r.param("n", 3usize);
        r.summarize("horizon", "none", "Eq. insert1");
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(csv, "label,value,flag,provenance\n\"(Φ,A)\",0.111111111111,true,Eq. 4.20\n\"a,b\",0,,none\n");
    }

    #[test]
    fn json_keeps_column_order_and_rounds() {
        let j = sample().to_json();
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["rows"][0]["value"], json!(0.111111111111));
        assert_eq!(v["metadata"]["parameters"]["n"], json!(3));
        let label = j.find("\"label\"").unwrap();
        let value = j.find("\"value\"").unwrap();
        assert!(label < value);
        assert!(j.ends_with("}\n"));
    }
}
