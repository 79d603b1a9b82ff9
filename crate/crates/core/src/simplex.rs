//! Embedded simplices and the barycentric/Cartesian coordinate engine.

use nalgebra::{DMatrix, DVector};

use crate::bary::BarycentricPoint;
use crate::edges::{embed_points, EdgeLengthTable};
use crate::error::{GeometryError, Result};

/// Relative volume (V / diameter^n) below which a point set counts as flat.
pub const FLAT_VOLUME_EPS: f64 = 1e-12;

/// An n-simplex given by n+1 affinely independent points of `R^n`, with its
/// edge table, facet volumes and the inverse of the affine coordinate map.
#[derive(Debug, Clone)]
pub struct SimplexModel {
    vertices: Vec<DVector<f64>>,
    edges: EdgeLengthTable,
    facet_volumes: Vec<f64>,
    volume: f64,
    /// Inverse of the (n+1)x(n+1) matrix whose columns are `[A_i; 1]`.
    affine_inverse: DMatrix<f64>,
}

impl SimplexModel {
    pub fn from_vertices(vertices: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_points(vertices.into_iter().map(DVector::from_vec).collect())
    }

    /// Builds a model from Cartesian points; requires `n+1` points in `R^n`.
    pub fn from_points(vertices: Vec<DVector<f64>>) -> Result<Self> {
        let m = vertices.len();
        if m < 3 {
            return Err(GeometryError::InvalidInput(
                "a simplex needs at least three vertices".into(),
            ));
        }
        let n = m - 1;
        for v in &vertices {
            if v.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(GeometryError::InvalidInput("non-finite vertex coordinate".into()));
            }
        }
        let edges = EdgeLengthTable::from_points(&vertices).map_err(|_| GeometryError::Degenerate {
            subset: (0..m).collect(),
        })?;
        let volume = gram_volume(&vertices);
        if volume <= FLAT_VOLUME_EPS * edges.max_length().powi(n as i32) {
            return Err(GeometryError::Degenerate {
                subset: (0..m).collect(),
            });
        }
        Self::assemble(vertices, edges)
    }

    /// Embeds an edge-length table in canonical pose.
    pub fn from_edge_lengths(table: &EdgeLengthTable) -> Result<Self> {
        let vertices = embed_points(table)?;
        let model = Self::assemble(vertices, table.clone())?;
        // cached table must match the realized distances
        let realized = EdgeLengthTable::from_points(&model.vertices)?;
        for i in 0..table.vertex_count() {
            for j in i + 1..table.vertex_count() {
                let (want, got) = (table.get(i, j), realized.get(i, j));
                if (want - got).abs() > 1e-10 * want {
                    return Err(GeometryError::NotEmbeddable { subset: vec![i, j] });
                }
            }
        }
        Ok(model)
    }

    fn assemble(vertices: Vec<DVector<f64>>, edges: EdgeLengthTable) -> Result<Self> {
        let m = vertices.len();
        let n = m - 1;
        let affine = DMatrix::from_fn(m, m, |r, c| if r < n { vertices[c][r] } else { 1.0 });
        let affine_inverse = affine.try_inverse().ok_or_else(|| GeometryError::Degenerate {
            subset: (0..m).collect(),
        })?;
        let all: Vec<usize> = (0..m).collect();
        let volume = edges.volume(&all);
        let facet_volumes = (0..m)
            .map(|i| {
                let facet: Vec<usize> = (0..m).filter(|&j| j != i).collect();
                edges.volume(&facet)
            })
            .collect();
        Ok(Self {
            vertices,
            edges,
            facet_volumes,
            volume,
            affine_inverse,
        })
    }

    /// Dimension n.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &DVector<f64> {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn edges(&self) -> &EdgeLengthTable {
        &self.edges
    }

    /// `(n-1)`-volumes `a_i` of the facets opposite each vertex.
    pub fn facet_volumes(&self) -> &[f64] {
        &self.facet_volumes
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn diameter(&self) -> f64 {
        self.edges.max_length()
    }

    pub(crate) fn check_len(&self, p: &BarycentricPoint) -> Result<()> {
        if p.len() != self.vertex_count() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.vertex_count(),
                found: p.len(),
            });
        }
        Ok(())
    }

    pub fn bary_to_cart(&self, p: &BarycentricPoint) -> Result<DVector<f64>> {
        self.check_len(p)?;
        let p = p.normalize()?;
        let mut x = DVector::zeros(self.dim());
        for (c, v) in p.coords().iter().zip(&self.vertices) {
            x.axpy(*c, v, 1.0);
        }
        Ok(x)
    }

    /// Normalized barycentric coordinates of a Cartesian point.
    pub fn cart_to_bary(&self, x: &DVector<f64>) -> Result<BarycentricPoint> {
        if x.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let rhs = DVector::from_fn(self.vertex_count(), |r, _| if r < self.dim() { x[r] } else { 1.0 });
        let mut coords: Vec<f64> = (&self.affine_inverse * rhs).iter().copied().collect();
        // absorb the rounding drift of the last row
        let s: f64 = coords.iter().sum();
        coords.iter_mut().for_each(|c| *c /= s);
        BarycentricPoint::homogeneous(coords)?.normalize()
    }

    /// Squared distance from barycentric coordinates alone:
    /// `-sum_{i<j} d_ij^2 (p_i - q_i)(p_j - q_j)`.
    pub fn squared_distance(&self, p: &BarycentricPoint, q: &BarycentricPoint) -> Result<f64> {
        self.check_len(p)?;
        self.check_len(q)?;
        let p = p.normalize()?;
        let q = q.normalize()?;
        let delta: Vec<f64> = p.coords().iter().zip(q.coords()).map(|(a, b)| a - b).collect();
        let m = self.vertex_count();
        let mut acc = 0.0;
        for i in 0..m {
            for j in i + 1..m {
                acc -= self.edges.squared(i, j) * delta[i] * delta[j];
            }
        }
        Ok(acc)
    }

    pub fn distance(&self, p: &BarycentricPoint, q: &BarycentricPoint) -> Result<f64> {
        Ok(self.squared_distance(p, q)?.max(0.0).sqrt())
    }

    /// Cartesian distances from `x` to every vertex.
    pub fn vertex_distances(&self, x: &DVector<f64>) -> Vec<f64> {
        self.vertices.iter().map(|v| (v - x).norm()).collect()
    }

    /// The facet opposite vertex `i` as an (n-1)-simplex in canonical pose,
    /// keeping the remaining vertices in their original order.
    pub fn facet(&self, i: usize) -> Result<SimplexModel> {
        let rest: Vec<usize> = (0..self.vertex_count()).filter(|&j| j != i).collect();
        SimplexModel::from_edge_lengths(&self.edges.sub_table(&rest)?)
    }

    /// The sideplane `{x_i = 0}` opposite vertex `i`, its normal pointing toward `A_i`.
    pub fn facet_hyperplane(&self, i: usize) -> Hyperplane {
        let mut coeffs = vec![0.0; self.vertex_count()];
        coeffs[i] = 1.0;
        Hyperplane::from_bary_coeffs(coeffs, self).expect("facet hyperplane is always finite")
    }

    pub fn circumsphere(&self) -> Sphere {
        let n = self.dim();
        let a0 = &self.vertices[0];
        let a = DMatrix::from_fn(n, n, |r, c| 2.0 * (self.vertices[r + 1][c] - a0[c]));
        let b = DVector::from_fn(n, |r, _| self.vertices[r + 1].norm_squared() - a0.norm_squared());
        let center = a.lu().solve(&b).expect("affinely independent vertices");
        let radius = self.vertices.iter().map(|v| (v - &center).norm()).sum::<f64>() / self.vertex_count() as f64;
        Sphere::new(center, radius)
    }

    /// Centroid, incenter `[a_i]`, symmedian `[a_i^2]` and circumcenter.
    pub fn classical_centers(&self) -> ClassicalCenters {
        let m = self.vertex_count();
        let a = &self.facet_volumes;
        let circ = self.circumsphere();
        ClassicalCenters {
            centroid: BarycentricPoint::centroid(m),
            incenter: BarycentricPoint::homogeneous(a.clone()).expect("positive facet volumes"),
            symmedian: BarycentricPoint::homogeneous(a.iter().map(|v| v * v).collect())
                .expect("positive facet volumes"),
            circumcenter: self.cart_to_bary(&circ.center).expect("finite circumcenter"),
        }
    }

    /// The Σ-polar hyperplane `{x | sum x_i / p_i = 0}` of a point.
    pub fn sigma_polar_plane(&self, p: &BarycentricPoint) -> Result<Hyperplane> {
        self.check_len(p)?;
        if let Some(index) = p.zero_coordinate() {
            return Err(GeometryError::OnSideplane { index });
        }
        Hyperplane::from_bary_coeffs(p.coords().iter().map(|c| 1.0 / c).collect(), self)
    }
}

/// Classical centers of a simplex as barycentric points.
#[derive(Debug, Clone)]
pub struct ClassicalCenters {
    pub centroid: BarycentricPoint,
    pub incenter: BarycentricPoint,
    pub symmedian: BarycentricPoint,
    pub circumcenter: BarycentricPoint,
}

/// A hyperplane held both as barycentric coefficients `{sum c_i x_i = 0}` and
/// in Cartesian form `{normal . x = offset}` with a unit normal.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    bary_coeffs: Vec<f64>,
    normal: DVector<f64>,
    offset: f64,
}

impl Hyperplane {
    pub fn from_bary_coeffs(coeffs: Vec<f64>, model: &SimplexModel) -> Result<Self> {
        if coeffs.len() != model.vertex_count() {
            return Err(GeometryError::DimensionMismatch {
                expected: model.vertex_count(),
                found: coeffs.len(),
            });
        }
        let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if scale == 0.0 || coeffs.iter().all(|c| (c - coeffs[0]).abs() <= 1e-12 * scale) {
            return Err(GeometryError::HyperplaneAtInfinity);
        }
        let n = model.dim();
        let c = DVector::from_vec(coeffs.clone());
        // sum c_i lambda_i(x) with lambda(x) = M^{-1} [x; 1]
        let w = model.affine_inverse.transpose() * c;
        let grad = w.rows(0, n).into_owned();
        let g = grad.norm();
        if g == 0.0 {
            return Err(GeometryError::HyperplaneAtInfinity);
        }
        Ok(Self {
            bary_coeffs: coeffs,
            normal: grad / g,
            offset: -w[n] / g,
        })
    }

    /// Hyperplane `{normal . x = offset}`; the normal need not be unit length.
    pub fn from_cartesian(normal: DVector<f64>, offset: f64, model: &SimplexModel) -> Result<Self> {
        let g = normal.norm();
        if g == 0.0 {
            return Err(GeometryError::HyperplaneAtInfinity);
        }
        let normal = normal / g;
        let offset = offset / g;
        let coeffs = model.vertices().iter().map(|v| normal.dot(v) - offset).collect();
        Ok(Self {
            bary_coeffs: coeffs,
            normal,
            offset,
        })
    }

    pub fn bary_coeffs(&self) -> &[f64] {
        &self.bary_coeffs
    }

    pub fn normal(&self) -> &DVector<f64> {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn signed_distance(&self, x: &DVector<f64>) -> f64 {
        self.normal.dot(x) - self.offset
    }

    /// `sum c_i p_i` for the normalized point, relative to the coefficient scale.
    pub fn bary_residual(&self, p: &BarycentricPoint) -> Result<f64> {
        let p = p.normalize()?;
        let scale = self.bary_coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let s: f64 = self.bary_coeffs.iter().zip(p.coords()).map(|(c, x)| c * x).sum();
        Ok(s / scale)
    }

    pub fn project(&self, x: &DVector<f64>) -> DVector<f64> {
        x - &self.normal * self.signed_distance(x)
    }
}

/// A sphere, or the hyperplane it degenerates to when its radius is infinite.
#[derive(Debug, Clone)]
pub struct Sphere {
    pub center: DVector<f64>,
    pub radius: f64,
    pub degenerate_hyperplane: Option<Hyperplane>,
}

impl Sphere {
    pub fn new(center: DVector<f64>, radius: f64) -> Self {
        Self {
            center,
            radius,
            degenerate_hyperplane: None,
        }
    }

    /// Infinite-radius sphere; `center` is any point on the hyperplane.
    pub fn flat(center: DVector<f64>, plane: Hyperplane) -> Self {
        Self {
            center,
            radius: f64::INFINITY,
            degenerate_hyperplane: Some(plane),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate_hyperplane.is_some()
    }

    /// Distance to the sphere surface, signed positive outside.
    pub fn signed_residual(&self, x: &DVector<f64>) -> f64 {
        match &self.degenerate_hyperplane {
            Some(h) => h.signed_distance(x),
            None => (x - &self.center).norm() - self.radius,
        }
    }
}

/// k-volume of the simplex spanned by `k+1` points in any ambient dimension.
pub fn gram_volume(points: &[DVector<f64>]) -> f64 {
    let k = points.len() - 1;
    if k == 0 {
        return 0.0;
    }
    let dim = points[0].len();
    let e = DMatrix::from_fn(dim, k, |r, c| points[c + 1][r] - points[0][r]);
    let gram = e.transpose() * &e;
    let fact: f64 = (1..=k).map(|v| v as f64).product();
    gram.determinant().max(0.0).sqrt() / fact
}

/// `(n-1)`-volumes of the facets of the point set (facet `i` omits point `i`).
pub fn facet_volumes_of(points: &[DVector<f64>]) -> Vec<f64> {
    (0..points.len())
        .map(|i| {
            let facet: Vec<DVector<f64>> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            gram_volume(&facet)
        })
        .collect()
}

/// `(max a_i - min a_i) / mean a_i`; zero exactly for equiareal simplices.
pub fn equiareal_deviation(facet_volumes: &[f64]) -> f64 {
    let max = facet_volumes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = facet_volumes.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = facet_volumes.iter().sum::<f64>() / facet_volumes.len() as f64;
    (max - min) / mean
}

impl SimplexModel {
    pub fn equiareal_deviation(&self) -> f64 {
        equiareal_deviation(&self.facet_volumes)
    }
}
