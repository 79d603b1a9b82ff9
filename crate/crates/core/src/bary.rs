//! Barycentric points relative to a reference simplex.
//!
//! A point is stored either with homogeneous coordinates `[p_1 : ... : p_{n+1}]`
//! (defined up to a nonzero scale) or with normalized coordinates summing to
//! one. A homogeneous vector whose coordinates sum to zero is a direction, i.e.
//! a point at infinity; it can be held but metric operations reject it.

use std::fmt;

use crate::error::{GeometryError, Result};

/// Relative threshold under which a coordinate sum counts as zero.
const INFINITY_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordMode {
    Homogeneous,
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricPoint {
    coords: Vec<f64>,
    mode: CoordMode,
}

impl BarycentricPoint {
    /// Homogeneous point. Rejects the zero vector and non-finite entries.
    pub fn homogeneous(coords: Vec<f64>) -> Result<Self> {
        check_coords(&coords)?;
        Ok(Self {
            coords,
            mode: CoordMode::Homogeneous,
        })
    }

    /// Normalized point; the input is rescaled so that it sums to one.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        Self::homogeneous(coords)?.normalize()
    }

    /// The `i`-th vertex `[0 : ... : 1 : ... : 0]` of a simplex with `len` vertices.
    pub fn vertex(i: usize, len: usize) -> Self {
        let mut coords = vec![0.0; len];
        coords[i] = 1.0;
        Self {
            coords,
            mode: CoordMode::Normalized,
        }
    }

    pub fn centroid(len: usize) -> Self {
        Self {
            coords: vec![1.0 / len as f64; len],
            mode: CoordMode::Normalized,
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn mode(&self) -> CoordMode {
        self.mode
    }

    /// Number of coordinates (vertices of the reference simplex).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.coords.iter().sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_at_infinity(&self) -> bool {
        self.sum().abs() <= INFINITY_EPS * self.max_abs()
    }

    pub fn normalize(&self) -> Result<Self> {
        if self.mode == CoordMode::Normalized {
            return Ok(self.clone());
        }
        if self.is_at_infinity() {
            return Err(GeometryError::PointAtInfinity);
        }
        let s = self.sum();
        Ok(Self {
            coords: self.coords.iter().map(|c| c / s).collect(),
            mode: CoordMode::Normalized,
        })
    }

    /// Normalized coordinates as a plain vector.
    pub fn normalized_coords(&self) -> Result<Vec<f64>> {
        Ok(self.normalize()?.coords)
    }

    /// Homogeneous rendering scaled so the largest-magnitude coordinate is `+1`.
    pub fn display_homogeneous(&self) -> Vec<f64> {
        let (mut best, mut idx) = (0.0_f64, 0);
        for (i, c) in self.coords.iter().enumerate() {
            if c.abs() > best {
                best = c.abs();
                idx = i;
            }
        }
        let s = self.coords[idx];
        self.coords.iter().map(|c| c / s).collect()
    }

    /// Index of the first coordinate that is zero relative to the largest one.
    pub fn zero_coordinate(&self) -> Option<usize> {
        let scale = self.max_abs();
        self.coords.iter().position(|c| c.abs() <= 1e-15 * scale)
    }

    /// Fails with [`GeometryError::ZeroCoordinate`] when any coordinate vanishes.
    pub fn require_nonzero(&self) -> Result<()> {
        match self.zero_coordinate() {
            Some(index) => Err(GeometryError::ZeroCoordinate { index }),
            None => Ok(()),
        }
    }

    /// Componentwise square `[p_1^2 : ... : p_{n+1}^2]`.
    pub fn square(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * c).collect(),
            mode: CoordMode::Homogeneous,
        }
    }

    /// Largest per-coordinate difference after normalizing both points.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let a = self.normalize()?;
        let b = other.normalize()?;
        Ok(a.coords
            .iter()
            .zip(&b.coords)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs())))
    }

    /// Number of strictly negative coordinates after normalization.
    pub fn negative_count(&self) -> usize {
        match self.normalize() {
            Ok(p) => p.coords.iter().filter(|c| **c < 0.0).count(),
            Err(_) => self.len(),
        }
    }
}

/// `[p_1^2 : ... : p_{n+1}^2]`.
pub fn barycentric_square(p: &BarycentricPoint) -> BarycentricPoint {
    p.square()
}

fn check_coords(coords: &[f64]) -> Result<()> {
    if coords.is_empty() {
        return Err(GeometryError::InvalidInput("empty coordinate vector".into()));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(GeometryError::InvalidInput("non-finite barycentric coordinate".into()));
    }
    if coords.iter().all(|c| *c == 0.0) {
        return Err(GeometryError::InvalidInput("zero coordinate vector".into()));
    }
    Ok(())
}

impl fmt::Display for BarycentricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.mode {
            CoordMode::Homogeneous => " : ",
            CoordMode::Normalized => ", ",
        };
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, "{sep}")?;
            }
            write!(f, "{c:.12}")?;
        }
        write!(f, "]")
    }
}
