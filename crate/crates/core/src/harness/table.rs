use std::fmt::Write;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Text(String),
    Float(f64),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Float(x)
        } else {
            Cell::Empty
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::from)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        i64::try_from(x).map_or_else(|_| Cell::Text(x.to_string()), Cell::Int)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Scientific notation with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

/// A CSV table with `#` provenance lines before the header and `#` summary
/// lines after the rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub subcommand: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl ResultTable {
    pub fn new(subcommand: &str, columns: &[&str]) -> Self {
        ResultTable {
            subcommand: subcommand.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn render(&self, config_hash: &str, seed: u64) -> String {
        let mut out = String::new();
        writeln!(out, "# cusplab {}", self.subcommand).unwrap();
        writeln!(out, "# config_sha256 = {config_hash}").unwrap();
        writeln!(out, "# seed = {seed}").unwrap();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::render).collect();
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k} = {}", v.render()).unwrap();
        }
        out
    }
}
