//! JSON simplex documents.
//!
//! ```json
//! { "name": "example", "vertices": [[0, 0], [1, 0], [0, "1/2"]] }
//! { "edge_lengths": { "dimension": 3, "values": [13, 11, 9, 12, 5, 11] } }
//! ```
//!
//! Numbers may be JSON numbers or strings holding a decimal or a fraction
//! `"p/q"`; both are read exactly. `values` lists `d_12, d_13, ..., d_{n,n+1}`.

use serde::{Deserialize, Serialize};
use simplex_centers::{EdgeLengthTable, GeometryError, SimplexModel};

use crate::exact::{parse_rational, to_f64, ExactTable, Rational};

/// A number as written in the document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Number(serde_json::Number),
    Text(String),
}

impl Num {
    pub fn exact(&self) -> Result<Rational, String> {
        match self {
            Num::Number(n) => parse_rational(&n.to_string()),
            Num::Text(s) => parse_rational(s),
        }
    }
}

impl From<&str> for Num {
    fn from(s: &str) -> Self {
        Num::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeLengths {
    pub dimension: usize,
    pub values: Vec<Num>,
}

/// Per-document defaults for the numeric flags; command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_lengths: Option<EdgeLengths>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("{0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A validated document with its numeric model and exact squared edge lengths.
#[derive(Debug, Clone)]
pub struct ParsedSimplex {
    pub document: SimplexDocument,
    pub model: SimplexModel,
    pub exact: ExactTable,
}

impl ParsedSimplex {
    pub fn name(&self) -> &str {
        self.document.name.as_deref().unwrap_or("simplex")
    }
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_document(text: &str) -> Result<ParsedSimplex, DocumentError> {
    let document: SimplexDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))?;
    build(document)
}

pub fn build(document: SimplexDocument) -> Result<ParsedSimplex, DocumentError> {
    let (model, exact) = match (&document.vertices, &document.edge_lengths) {
        (Some(_), Some(_)) => return Err(invalid("$", "give either \"vertices\" or \"edge_lengths\", not both")),
        (None, None) => return Err(invalid("$", "missing \"vertices\" or \"edge_lengths\"")),
        (Some(v), None) => from_vertices(v)?,
        (None, Some(e)) => from_edges(e)?,
    };
    Ok(ParsedSimplex { document, model, exact })
}

fn from_vertices(rows: &[Vec<Num>]) -> Result<(SimplexModel, ExactTable), DocumentError> {
    let m = rows.len();
    if m < 3 {
        return Err(invalid("vertices", format!("need at least 3 vertices, found {m}")));
    }
    let n = m - 1;
    let mut exact = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(
                format!("vertices[{i}]"),
                format!("expected {n} coordinates for {m} vertices, found {}", row.len()),
            ));
        }
        let coords = row
            .iter()
            .enumerate()
            .map(|(k, c)| c.exact().map_err(|e| invalid(format!("vertices[{i}][{k}]"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        exact.push(coords);
    }
    let mut sq = vec![vec![Rational::from_integer(0.into()); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let d: Rational = (0..n)
                .map(|k| (&exact[i][k] - &exact[j][k]) * (&exact[i][k] - &exact[j][k]))
                .sum();
            sq[i][j] = d.clone();
            sq[j][i] = d;
        }
    }
    let floats = exact.iter().map(|r| r.iter().map(to_f64).collect()).collect();
    let model = SimplexModel::from_vertices(floats)?;
    Ok((model, ExactTable { sq }))
}

fn from_edges(e: &EdgeLengths) -> Result<(SimplexModel, ExactTable), DocumentError> {
    let n = e.dimension;
    if n < 2 {
        return Err(invalid(
            "edge_lengths.dimension",
            format!("dimension must be at least 2, found {n}"),
        ));
    }
    let want = n * (n + 1) / 2;
    if e.values.len() != want {
        return Err(invalid(
            "edge_lengths.values",
            format!("dimension {n} needs {want} edge lengths, found {}", e.values.len()),
        ));
    }
    let values = e
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.exact()
                .map_err(|msg| invalid(format!("edge_lengths.values[{k}]"), msg))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(k) = values.iter().position(|v| *v <= Rational::from_integer(0.into())) {
        return Err(invalid(
            format!("edge_lengths.values[{k}]"),
            "edge lengths must be positive",
        ));
    }
    let m = n + 1;
    let mut sq = vec![vec![Rational::from_integer(0.into()); m]; m];
    let mut k = 0;
    for i in 0..m {
        for j in i + 1..m {
            sq[i][j] = &values[k] * &values[k];
            sq[j][i] = sq[i][j].clone();
            k += 1;
        }
    }
    let floats: Vec<f64> = values.iter().map(to_f64).collect();
    let table = EdgeLengthTable::from_pairs(n, &floats)?;
    let model = SimplexModel::from_edge_lengths(&table)?;
    Ok((model, ExactTable { sq }))
}

/// Reads a list of points such as `[[1, 2, 3], ["1/2", -1, 1]]`, either
/// inline or from a file.
pub fn parse_point_list(text: &str, len: usize) -> Result<Vec<Vec<Rational>>, DocumentError> {
    let rows: Vec<Vec<Num>> = serde_json::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != len {
                return Err(invalid(
                    format!("[{i}]"),
                    format!("expected {len} coordinates, found {}", row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(k, c)| c.exact().map_err(|e| invalid(format!("[{i}][{k}]"), e)))
                .collect()
        })
        .collect()
}

/// Reads one point, as `[1, 2, 3]` or `1,2,3`.
pub fn parse_point(text: &str, len: usize) -> Result<Vec<Rational>, DocumentError> {
    let t = text.trim();
    let list = if t.starts_with('[') {
        format!("[{t}]")
    } else {
        let parts: Vec<String> = t.split(',').map(|p| format!("\"{}\"", p.trim())).collect();
        format!("[[{}]]", parts.join(","))
    };
    Ok(parse_point_list(&list, len)?.remove(0))
}

/// Built-in documents.
pub mod builtin {
    use super::*;

    fn nums(v: &[&str]) -> Vec<Num> {
        v.iter().map(|s| Num::from(*s)).collect()
    }

    /// The tetrahedron with five isogonic points.
    pub fn five_point_tetrahedron() -> SimplexDocument {
        SimplexDocument {
            name: Some("five-point tetrahedron".into()),
            vertices: Some(vec![
                nums(&["0", "0", "0"]),
                nums(&["6", "0", "0"]),
                nums(&["0", "8", "0"]),
                nums(&["2", "2", "6"]),
            ]),
            edge_lengths: None,
            tolerances: None,
        }
    }

    /// The tetrahedron whose Apollonian spheres share no point.
    pub fn disjoint_apollonian_tetrahedron() -> SimplexDocument {
        SimplexDocument {
            name: Some("disjoint Apollonian spheres".into()),
            vertices: None,
            edge_lengths: Some(EdgeLengths {
                dimension: 3,
                values: nums(&["13", "11", "9", "12", "5", "11"]),
            }),
            tolerances: None,
        }
    }
}
