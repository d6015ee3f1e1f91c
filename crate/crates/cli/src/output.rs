//! Report serialization: 12-significant-digit numbers, JSON and CSV
//! documents, atomic file writes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qthermo::{cumulative_work_heat, Trajectory};
use serde_json::{Map, Value};

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Rounds every floating-point number inside `v`.
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("is_f64"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// CSV text of a number rounded to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if !r.is_finite() || r == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Int(b as usize)
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

/// Everything a command produces before serialization.
pub struct Outcome {
    /// Structured result; numbers are rounded on output.
    pub result: Value,
    /// Scalar summary, repeated as `# summary` lines in CSV output.
    pub summary: Vec<(&'static str, f64)>,
    pub table: Table,
    pub trajectory: Option<Trajectory>,
    pub violations: Vec<String>,
}

pub fn json_document(command: &str, echo: &[(&'static str, String)], outcome: &Outcome) -> String {
    let config: Map<String, Value> = echo
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
        .collect();
    let mut result = outcome.result.clone();
    round_value(&mut result);
    let doc = serde_json::json!({
        "command": command,
        "config": config,
        "result": result,
        "violations": outcome.violations,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    text.push('\n');
    text
}

pub fn csv_document(command: &str, echo: &[(&'static str, String)], outcome: &Outcome) -> String {
    let mut text = format!("# qthermo {command}\n");
    for (k, v) in echo {
        text.push_str(&format!("# config {k}={v}\n"));
    }
    for (k, x) in &outcome.summary {
        text.push_str(&format!("# summary {k}={}\n", fmt_num(*x)));
    }
    for v in &outcome.violations {
        text.push_str(&format!("# violation {v}\n"));
    }
    text.push_str(&outcome.table.to_csv());
    text
}

/// `t,p_excited,coherence_re,coherence_im,omega,W_cum,Q_cum,delta` per sample.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut table = Table::new(&[
        "t",
        "p_excited",
        "coherence_re",
        "coherence_im",
        "omega",
        "W_cum",
        "Q_cum",
        "delta",
    ]);
    for (s, (w, q)) in traj.samples().iter().zip(cumulative_work_heat(traj)) {
        let c = s.state.coherence();
        table.push(vec![
            s.time.into(),
            s.state.p_excited().into(),
            c.re.into(),
            c.im.into(),
            s.hamiltonian.gap.into(),
            w.into(),
            q.into(),
            s.hamiltonian.transverse.into(),
        ]);
    }
    table.to_csv()
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|()| f.sync_all()))
        .and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
