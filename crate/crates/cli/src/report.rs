//! Command reports, rendered as fixed-width text or JSON.

use std::fmt::Write as _;

use serde::Serialize;
use simplex_centers::BarycentricPoint;

/// Numbers print with this many decimals.
pub const DECIMALS: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub predicate: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRow {
    pub name: String,
    pub normalized: Vec<f64>,
    pub homogeneous: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Residual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl PointRow {
    pub fn new(name: impl Into<String>, p: &BarycentricPoint) -> Self {
        Self {
            name: name.into(),
            normalized: p.normalized_coords().unwrap_or_default(),
            homogeneous: p.display_homogeneous(),
            exact: None,
            residual: None,
            iterations: None,
        }
    }

    pub fn exact(mut self, v: Vec<String>) -> Self {
        self.exact = Some(v);
        self
    }

    pub fn residual(mut self, predicate: impl Into<String>, value: f64) -> Self {
        self.residual = Some(Residual {
            predicate: predicate.into(),
            value,
        });
        self
    }

    pub fn iterations(mut self, n: usize) -> Self {
        self.iterations = Some(n);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueRow {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterReport {
    pub command: String,
    /// The input document as parsed, re-serializable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<serde_json::Value>,
    pub points: Vec<PointRow>,
    pub values: Vec<ValueRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

impl CenterReport {
    pub fn new(command: impl Into<String>, document: Option<serde_json::Value>) -> Self {
        Self {
            command: command.into(),
            document,
            points: vec![],
            values: vec![],
            tables: vec![],
            notes: vec![],
            warnings: vec![],
            trace: None,
        }
    }

    pub fn value(&mut self, name: impl Into<String>, value: f64, exact: Option<String>) {
        self.values.push(ValueRow {
            name: name.into(),
            value,
            exact,
        });
    }

    pub fn point(&self, name: &str) -> Option<&PointRow> {
        self.points.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let name = self
            .document
            .as_ref()
            .and_then(|d| d.get("name"))
            .and_then(|n| n.as_str())
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        let _ = writeln!(out, "{}{name}", self.command);
        if !self.points.is_empty() {
            let _ = writeln!(out, "\npoints");
            for p in &self.points {
                let _ = writeln!(out, "  {}", p.name);
                let _ = writeln!(out, "    normalized   {}", vector(&p.normalized));
                let _ = writeln!(out, "    homogeneous  {}", vector(&p.homogeneous));
                if let Some(e) = &p.exact {
                    let _ = writeln!(out, "    exact        [{}]", e.join(", "));
                }
                if let Some(r) = &p.residual {
                    let _ = writeln!(out, "    residual     {:.3e}  ({})", r.value, r.predicate);
                }
                if let Some(n) = p.iterations {
                    let _ = writeln!(out, "    iterations   {n}");
                }
            }
        }
        if !self.values.is_empty() {
            let _ = writeln!(out, "\nvalues");
            let w = self.values.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &self.values {
                let _ = write!(out, "  {:<w$}  {}", v.name, number(v.value));
                if let Some(e) = &v.exact {
                    let _ = write!(out, "  = {e}");
                }
                out.push('\n');
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            out.push_str(&table(&t.columns, &t.rows));
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "\nnotes");
            for n in &self.notes {
                let _ = writeln!(out, "  {n}");
            }
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "\nwarnings");
            for n in &self.warnings {
                let _ = writeln!(out, "  {n}");
            }
        }
        out
    }
}

/// Fixed 12-decimal rendering; negative zero prints as zero.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{:.DECIMALS$}", x + 0.0)
    } else {
        x.to_string()
    }
}

pub fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{:>17}", number(*x))).collect();
    format!("[{}]", parts.join(","))
}

pub fn table(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for r in rows {
        for (k, cell) in r.iter().enumerate() {
            if k < widths.len() {
                widths[k] = widths[k].max(cell.len());
            }
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{:<w$}", c, w = widths.get(k).copied().unwrap_or(0)))
            .collect();
        format!("  {}\n", parts.join("  ").trim_end())
    };
    let mut out = line(columns);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}
