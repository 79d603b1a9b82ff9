//! Pedal, antipedal, polar and inversive simplices of a point.

use nalgebra::{DMatrix, DVector};

use crate::bary::BarycentricPoint;
use crate::error::{GeometryError, Result};
use crate::simplex::{equiareal_deviation, facet_volumes_of, SimplexModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Pedal,
    Antipedal,
    Polar,
    Inversive,
}

/// Vertices of a derived simplex. `simplex` is `None` when the points are
/// affinely dependent; the raw points are still available.
#[derive(Debug, Clone)]
pub struct PedalResult {
    pub kind: ConstructionKind,
    /// Cartesian position of the generating point (or inversion center).
    pub source: DVector<f64>,
    pub points: Vec<DVector<f64>>,
    pub simplex: Option<SimplexModel>,
}

impl PedalResult {
    fn new(kind: ConstructionKind, source: DVector<f64>, points: Vec<DVector<f64>>) -> Self {
        let simplex = SimplexModel::from_points(points.clone()).ok();
        Self {
            kind,
            source,
            points,
            simplex,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.simplex.is_none()
    }

    /// Facet volumes of the point set, defined even for degenerate results.
    pub fn facet_volumes(&self) -> Vec<f64> {
        match &self.simplex {
            Some(s) => s.facet_volumes().to_vec(),
            None => facet_volumes_of(&self.points),
        }
    }

    pub fn equiareal_deviation(&self) -> f64 {
        equiareal_deviation(&self.facet_volumes())
    }

    pub fn centroid(&self) -> DVector<f64> {
        let mut c = DVector::zeros(self.source.len());
        for p in &self.points {
            c += p;
        }
        c / self.points.len() as f64
    }

    /// Facet-volume weighted average of the points (the incenter when nondegenerate).
    pub fn incenter(&self) -> DVector<f64> {
        let w = self.facet_volumes();
        let total: f64 = w.iter().sum();
        let mut c = DVector::zeros(self.source.len());
        for (p, a) in self.points.iter().zip(&w) {
            c.axpy(*a / total, p, 1.0);
        }
        c
    }
}

fn check_not_vertex(model: &SimplexModel, x: &DVector<f64>) -> Result<()> {
    let tol = 1e-14 * model.diameter();
    match model.vertices().iter().position(|v| (v - x).norm() <= tol) {
        Some(index) => Err(GeometryError::AtVertex { index }),
        None => Ok(()),
    }
}

/// Orthogonal projections of `p` onto the sideplanes; the i-th foot lies on
/// the sideplane opposite `A_i`.
pub fn pedal_simplex(p: &BarycentricPoint, model: &SimplexModel) -> Result<PedalResult> {
    let x = model.bary_to_cart(p)?;
    pedal_of_cartesian(&x, model)
}

pub(crate) fn pedal_of_cartesian(x: &DVector<f64>, model: &SimplexModel) -> Result<PedalResult> {
    check_not_vertex(model, x)?;
    let feet = (0..model.vertex_count())
        .map(|i| model.facet_hyperplane(i).project(x))
        .collect();
    Ok(PedalResult::new(ConstructionKind::Pedal, x.clone(), feet))
}

/// Simplex bounded by the hyperplanes through each `A_i` perpendicular to the
/// line `P A_i`. Vertex `i` is where all hyperplanes except the i-th meet.
pub fn antipedal_simplex(p: &BarycentricPoint, model: &SimplexModel) -> Result<PedalResult> {
    let x = model.bary_to_cart(p)?;
    antipedal_of_cartesian(&x, model)
}

pub(crate) fn antipedal_of_cartesian(x: &DVector<f64>, model: &SimplexModel) -> Result<PedalResult> {
    check_not_vertex(model, x)?;
    let m = model.vertex_count();
    let n = model.dim();
    let normals: Vec<DVector<f64>> = model.vertices().iter().map(|v| v - x).collect();
    let rhs: Vec<f64> = normals.iter().zip(model.vertices()).map(|(nv, v)| nv.dot(v)).collect();
    let mut points = Vec::with_capacity(m);
    for i in 0..m {
        let rows: Vec<usize> = (0..m).filter(|&j| j != i).collect();
        let a = DMatrix::from_fn(n, n, |r, c| normals[rows[r]][c]);
        let b = DVector::from_fn(n, |r, _| rhs[rows[r]]);
        // scale-free singularity test: |det| against the product of row norms
        let row_scale: f64 = rows.iter().map(|&j| normals[j].norm()).product();
        if a.determinant().abs() <= 1e-12 * row_scale {
            return Err(GeometryError::UnboundedAntipedal { index: i });
        }
        let y = a.lu().solve(&b).ok_or(GeometryError::UnboundedAntipedal { index: i })?;
        points.push(y);
    }
    Ok(PedalResult::new(ConstructionKind::Antipedal, x.clone(), points))
}

/// Polar simplex with respect to the sphere of the given radius centered at
/// `p`: vertex `i` is the pole of the sideplane opposite `A_i`, i.e.
/// `P + radius^2 / dist(P, h_i)` along the unit vector from `P` to its foot on `h_i`.
pub fn polar_simplex(p: &BarycentricPoint, radius: f64, model: &SimplexModel) -> Result<PedalResult> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(GeometryError::InvalidInput("polar radius must be positive".into()));
    }
    model.check_len(p)?;
    if let Some(index) = p.zero_coordinate() {
        return Err(GeometryError::OnSideplane { index });
    }
    let x = model.bary_to_cart(p)?;
    let r2 = radius * radius;
    let points = (0..model.vertex_count())
        .map(|i| {
            let h = model.facet_hyperplane(i);
            let s = h.signed_distance(&x);
            // unit vector toward the foot is -sign(s) * normal; the pole sits at r^2/|s|
            &x - h.normal() * (r2 / s)
        })
        .collect();
    Ok(PedalResult::new(ConstructionKind::Polar, x, points))
}

/// Image of the vertices under inversion in the sphere (center, radius).
pub fn inversive_image(model: &SimplexModel, center: &DVector<f64>, radius: f64) -> Result<PedalResult> {
    if center.len() != model.dim() {
        return Err(GeometryError::DimensionMismatch {
            expected: model.dim(),
            found: center.len(),
        });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(GeometryError::InvalidInput("inversion radius must be positive".into()));
    }
    let r2 = radius * radius;
    let mut points = Vec::with_capacity(model.vertex_count());
    for (i, v) in model.vertices().iter().enumerate() {
        let d = v - center;
        let n2 = d.norm_squared();
        if n2 <= (1e-14 * model.diameter()).powi(2) {
            return Err(GeometryError::CenterAtVertex { index: i });
        }
        points.push(center + d * (r2 / n2));
    }
    Ok(PedalResult::new(ConstructionKind::Inversive, center.clone(), points))
}

/// Inversion of a single point.
pub fn invert_point(x: &DVector<f64>, center: &DVector<f64>, radius: f64) -> DVector<f64> {
    let d = x - center;
    center + &d * (radius * radius / d.norm_squared())
}
