//! Pairwise distance tables and Cayley-Menger volumes.
//!
//! The squared k-volume of a simplex with vertices `0..=k` follows from its
//! bordered squared-distance matrix:
//!
//! ```text
//! V_k^2 = (-1)^(k+1) / (2^k (k!)^2) * det | 0  1      ...  1      |
//!                                         | 1  0      ...  d_0k^2 |
//!                                         | .  .      ...  .      |
//!                                         | 1  d_k0^2 ...  0      |
//! ```

use nalgebra::{DMatrix, DVector};

use crate::error::{GeometryError, Result};

/// Relative squared volume (V^2 / L^{2k}) below which a sub-simplex is flat.
const FLAT_EPS: f64 = 1e-20;

/// Symmetric table of vertex distances `d_ij` for an n-simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLengthTable {
    dim: usize,
    d: DMatrix<f64>,
}

impl EdgeLengthTable {
    /// Builds the table from lexicographic pairs `(d_12, d_13, ..., d_{n,n+1})`.
    pub fn from_pairs(dim: usize, pairs: &[f64]) -> Result<Self> {
        if dim < 1 {
            return Err(GeometryError::InvalidInput("dimension must be at least 1".into()));
        }
        let m = dim + 1;
        let expected = m * dim / 2;
        if pairs.len() != expected {
            return Err(GeometryError::DimensionMismatch {
                expected,
                found: pairs.len(),
            });
        }
        let mut d = DMatrix::zeros(m, m);
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                d[(i, j)] = pairs[k];
                d[(j, i)] = pairs[k];
                k += 1;
            }
        }
        Self::from_matrix(d)
    }

    /// Builds the table from a full square matrix, checking symmetry and signs.
    pub fn from_matrix(d: DMatrix<f64>) -> Result<Self> {
        let m = d.nrows();
        if m < 2 || d.ncols() != m {
            return Err(GeometryError::InvalidInput(
                "distance matrix must be square with at least two rows".into(),
            ));
        }
        for i in 0..m {
            if d[(i, i)] != 0.0 {
                return Err(GeometryError::InvalidInput(format!(
                    "diagonal entry d_{0}{0} must be zero",
                    i + 1
                )));
            }
            for j in i + 1..m {
                let (a, b) = (d[(i, j)], d[(j, i)]);
                if !a.is_finite() || a <= 0.0 {
                    return Err(GeometryError::InvalidInput(format!(
                        "d_{}{} must be a positive length",
                        i + 1,
                        j + 1
                    )));
                }
                if (a - b).abs() > 1e-12 * a.max(b) {
                    return Err(GeometryError::InvalidInput(format!(
                        "distance table is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { dim: m - 1, d })
    }

    /// Distances between the given Cartesian points.
    pub fn from_points(points: &[DVector<f64>]) -> Result<Self> {
        let m = points.len();
        let mut d = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in i + 1..m {
                let v = (&points[i] - &points[j]).norm();
                d[(i, j)] = v;
                d[(j, i)] = v;
            }
        }
        Self::from_matrix(d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.dim + 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[(i, j)]
    }

    pub fn squared(&self, i: usize, j: usize) -> f64 {
        self.d[(i, j)] * self.d[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }

    /// Lexicographic pair listing, the inverse of [`EdgeLengthTable::from_pairs`].
    pub fn pairs(&self) -> Vec<f64> {
        let m = self.vertex_count();
        let mut out = Vec::with_capacity(m * self.dim / 2);
        for i in 0..m {
            for j in i + 1..m {
                out.push(self.d[(i, j)]);
            }
        }
        out
    }

    /// Sub-table on the listed vertices, in the listed order.
    pub fn sub_table(&self, subset: &[usize]) -> Result<Self> {
        let k = subset.len();
        let d = DMatrix::from_fn(k, k, |r, c| self.d[(subset[r], subset[c])]);
        Self::from_matrix(d)
    }

    pub fn max_length(&self) -> f64 {
        self.d.max()
    }

    /// Determinant of the bordered Cayley-Menger matrix of a vertex subset.
    pub fn cayley_menger_determinant(&self, subset: &[usize]) -> f64 {
        let k = subset.len();
        let cm = DMatrix::from_fn(k + 1, k + 1, |r, c| match (r, c) {
            (0, 0) => 0.0,
            (0, _) | (_, 0) => 1.0,
            _ => self.squared(subset[r - 1], subset[c - 1]),
        });
        cm.determinant()
    }

    /// Signed squared volume of the sub-simplex on `subset`; negative values
    /// mean the distances cannot be realized in Euclidean space.
    pub fn signed_squared_volume(&self, subset: &[usize]) -> f64 {
        let k = subset.len() - 1;
        if k == 0 {
            return 0.0;
        }
        let det = self.cayley_menger_determinant(subset);
        let sign = if (k + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        let fact: f64 = (1..=k).map(|v| v as f64).product();
        sign * det / (2f64.powi(k as i32) * fact * fact)
    }

    /// k-volume of the sub-simplex on `subset` (clamped at zero).
    pub fn volume(&self, subset: &[usize]) -> f64 {
        self.signed_squared_volume(subset).max(0.0).sqrt()
    }

    /// Checks that every vertex subset spans a sub-simplex of positive volume.
    pub fn validate_embeddable(&self) -> Result<()> {
        let m = self.vertex_count();
        // subsets of size >= 3; pairs are covered by the positivity check
        for mask in 0u64..(1u64 << m) {
            if mask.count_ones() < 3 {
                continue;
            }
            let subset: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let k = subset.len() - 1;
            let scale = subset
                .iter()
                .flat_map(|&i| subset.iter().map(move |&j| (i, j)))
                .fold(0.0_f64, |acc, (i, j)| acc.max(self.d[(i, j)]));
            let rel = self.signed_squared_volume(&subset) / scale.powi(2 * k as i32);
            if rel < -FLAT_EPS {
                return Err(GeometryError::NotEmbeddable { subset });
            }
            if rel <= FLAT_EPS {
                return Err(GeometryError::Degenerate { subset });
            }
        }
        Ok(())
    }
}

/// Realizes the table as Cartesian points in `R^n`.
///
/// Canonical pose: `A_1` at the origin, `A_2` on the positive first axis, and
/// vertex `k` confined to the first `k-1` axes with a positive last coordinate.
pub fn embed_points(table: &EdgeLengthTable) -> Result<Vec<DVector<f64>>> {
    table.validate_embeddable()?;
    let n = table.dim();
    let m = n + 1;
    let mut pts: Vec<DVector<f64>> = vec![DVector::zeros(n); m];
    pts[1][0] = table.get(0, 1);
    for k in 2..m {
        // |x - A_j|^2 - |x - A_0|^2 = d_jk^2 - d_0k^2 is linear in x
        let free = k - 1;
        let a = DMatrix::from_fn(free, free, |r, c| 2.0 * pts[r + 1][c]);
        let b = DVector::from_fn(free, |r, _| {
            let j = r + 1;
            table.squared(0, k) - table.squared(j, k) + pts[j].norm_squared()
        });
        let y = a.lu().solve(&b).ok_or_else(|| GeometryError::Degenerate {
            subset: (0..=k).collect(),
        })?;
        let h2 = table.squared(0, k) - y.norm_squared();
        if h2 <= 0.0 {
            return Err(GeometryError::Degenerate {
                subset: (0..=k).collect(),
            });
        }
        for c in 0..free {
            pts[k][c] = y[c];
        }
        pts[k][free] = h2.sqrt();
    }
    Ok(pts)
}
