//! Generalized Apollonian spheres of a simplex with respect to a point, and
//! the isodynamic points where all of them meet.
//!
//! For `P = [p_1 : ... : p_{n+1}]` the sphere `S_ij` has diameter
//! `P_ij = [p_i : p_j]`, `P_ij* = [-p_i : p_j]` (other slots zero) and center
//! `Q_ij = [-p_i^2 : p_j^2]`. It is the locus of points `R` with
//! `d(A_i, R) |p_i| = d(A_j, R) |p_j|`. Every `S_ij` meets the circumsphere
//! orthogonally, and their common points lie on the line through the
//! circumcenter perpendicular to the Σ-polar plane of `P^2`.

use nalgebra::DVector;
use rayon::prelude::*;

use crate::bary::BarycentricPoint;
use crate::edges::EdgeLengthTable;
use crate::error::{GeometryError, Result};
use crate::simplex::{Hyperplane, SimplexModel, Sphere};

/// Relative gap `| |p_i| - |p_j| |` under which `S_ij` is a hyperplane.
const FLAT_RATIO_EPS: f64 = 1e-12;

/// Discriminant threshold (relative to R^2) separating tangency from a miss.
const TANGENCY_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ApollonianSphere {
    pub i: usize,
    pub j: usize,
    /// `P_ij`, the internal division point of `A_i A_j`.
    pub inner: BarycentricPoint,
    /// `P_ij*`, the external division point.
    pub outer: BarycentricPoint,
    /// `Q_ij`, midpoint of the two; at infinity when the sphere is flat.
    pub center: BarycentricPoint,
    pub sphere: Sphere,
    weights: (f64, f64),
}

impl ApollonianSphere {
    pub fn is_degenerate(&self) -> bool {
        self.sphere.is_degenerate()
    }

    /// Scale-free membership defect of a Cartesian point:
    /// `|d_i |p_i| - d_j |p_j|| / (d_i |p_i| + d_j |p_j|)`.
    pub fn membership_residual(&self, model: &SimplexModel, x: &DVector<f64>) -> f64 {
        let di = (model.vertex(self.i) - x).norm() * self.weights.0;
        let dj = (model.vertex(self.j) - x).norm() * self.weights.1;
        let s = di + dj;
        if s == 0.0 {
            0.0
        } else {
            (di - dj).abs() / s
        }
    }

    /// Cross-ratio `(A_i, A_j; P_ij, P_ij*)` from the homogeneous line coordinates.
    pub fn cross_ratio(&self) -> f64 {
        let line = |p: &BarycentricPoint| [p.coords()[self.i], p.coords()[self.j]];
        cross_ratio_homogeneous([1.0, 0.0], [0.0, 1.0], line(&self.inner), line(&self.outer))
    }
}

/// Cross-ratio `(a, b; c, d)` of four points on a projective line.
pub fn cross_ratio_homogeneous(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let det = |u: [f64; 2], v: [f64; 2]| u[0] * v[1] - u[1] * v[0];
    (det(a, c) * det(b, d)) / (det(a, d) * det(b, c))
}

/// Cross-ratio `(a, b; c, d)` of four collinear points given by line parameters.
pub fn cross_ratio(a: f64, b: f64, c: f64, d: f64) -> f64 {
    ((c - a) * (d - b)) / ((c - b) * (d - a))
}

fn slot_point(len: usize, i: usize, j: usize, ci: f64, cj: f64) -> BarycentricPoint {
    let mut v = vec![0.0; len];
    v[i] = ci;
    v[j] = cj;
    BarycentricPoint::homogeneous(v).expect("nonzero slot coordinates")
}

/// The generalized Apollonian sphere `S_ij` of the simplex with respect to `p`.
pub fn apollonian_sphere(p: &BarycentricPoint, i: usize, j: usize, model: &SimplexModel) -> Result<ApollonianSphere> {
    model.check_len(p)?;
    let m = model.vertex_count();
    if i >= m || j >= m || i == j {
        return Err(GeometryError::InvalidInput(format!(
            "invalid vertex pair ({}, {})",
            i + 1,
            j + 1
        )));
    }
    let (pi, pj) = (p.coords()[i], p.coords()[j]);
    let scale = p.max_abs();
    for (index, v) in [(i, pi), (j, pj)] {
        if v.abs() <= 1e-15 * scale {
            return Err(GeometryError::ZeroCoordinate { index });
        }
    }
    let inner = slot_point(m, i, j, pi, pj);
    let outer = slot_point(m, i, j, -pi, pj);
    let center = slot_point(m, i, j, -pi * pi, pj * pj);
    let (ai, aj) = (model.vertex(i), model.vertex(j));
    let gap = pj * pj - pi * pi;
    let sphere = if gap.abs() <= FLAT_RATIO_EPS * pi.abs().max(pj.abs()).powi(2) {
        let mid = (ai + aj) / 2.0;
        let normal = aj - ai;
        let offset = normal.dot(&mid);
        Sphere::flat(mid, Hyperplane::from_cartesian(normal, offset, model)?)
    } else {
        let c = (aj * (pj * pj) - ai * (pi * pi)) / gap;
        let r = (pi * pj).abs() * model.edges().get(i, j) / gap.abs();
        Sphere::new(c, r)
    };
    Ok(ApollonianSphere {
        i,
        j,
        inner,
        outer,
        center,
        sphere,
        weights: (pi.abs(), pj.abs()),
    })
}

/// All `C(n+1, 2)` spheres `S_ij`, `i < j`, in lexicographic order.
pub fn apollonian_spheres(p: &BarycentricPoint, model: &SimplexModel) -> Result<Vec<ApollonianSphere>> {
    let m = model.vertex_count();
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(apollonian_sphere(p, i, j, model)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct IsodynamicResult {
    /// Zero, one or two points; with two, the one inside the circumsphere comes first.
    pub points: Vec<BarycentricPoint>,
    pub cartesian: Vec<DVector<f64>>,
    /// Circumcenter, the base point of the axis.
    pub axis_point: BarycentricPoint,
    /// Unit direction of the axis; `None` when every sphere is flat.
    pub axis_direction: Option<DVector<f64>>,
    /// Largest membership residual of each point over all spheres.
    pub residuals: Vec<f64>,
    pub circumradius: f64,
    pub note: Option<String>,
}

/// Common points of all generalized Apollonian spheres of `p`.
pub fn isodynamic_points(p: &BarycentricPoint, model: &SimplexModel) -> Result<IsodynamicResult> {
    model.check_len(p)?;
    p.require_nonzero()?;
    let spheres = apollonian_spheres(p, model)?;
    let circ = model.circumsphere();
    let o = circ.center.clone();
    let r = circ.radius;
    let axis_point = model.cart_to_bary(&o)?;

    let residuals_of = |x: &DVector<f64>| -> f64 {
        spheres
            .par_iter()
            .map(|s| s.membership_residual(model, x))
            .reduce(|| 0.0, f64::max)
    };

    let Some(base) = spheres.iter().find(|s| !s.is_degenerate()) else {
        // |p_i| all equal: every S_ij is a bisector hyperplane, meeting only at O
        let res = residuals_of(&o);
        return Ok(IsodynamicResult {
            points: vec![axis_point.clone()],
            cartesian: vec![o],
            axis_point,
            axis_direction: None,
            residuals: vec![res],
            circumradius: r,
            note: Some(
                "all Apollonian spheres are bisector hyperplanes; the only finite common point \
                 is the circumcenter, the second point lies at infinity"
                    .into(),
            ),
        });
    };

    let axis = model.sigma_polar_plane(&p.square())?;
    let u = axis.normal().clone();
    // |O + t u - c|^2 = rho^2
    let d = &o - &base.sphere.center;
    let half_b = u.dot(&d);
    let c = d.norm_squared() - base.sphere.radius * base.sphere.radius;
    let disc = half_b * half_b - c;
    let ts: Vec<f64> = if disc < -TANGENCY_EPS * r * r {
        vec![]
    } else if disc <= TANGENCY_EPS * r * r {
        vec![-half_b]
    } else {
        let sq = disc.sqrt();
        let (t1, t2) = (-half_b - sq, -half_b + sq);
        if t1.abs() <= t2.abs() {
            vec![t1, t2]
        } else {
            vec![t2, t1]
        }
    };
    let cartesian: Vec<DVector<f64>> = ts.iter().map(|t| &o + &u * *t).collect();
    let points = cartesian
        .iter()
        .map(|x| model.cart_to_bary(x))
        .collect::<Result<Vec<_>>>()?;
    let residuals = cartesian.iter().map(residuals_of).collect();
    let note = match ts.len() {
        0 => Some("the axis misses the Apollonian spheres: no isodynamic points exist".into()),
        1 => Some("the axis is tangent: a single isodynamic point on the circumsphere".into()),
        _ => None,
    };
    Ok(IsodynamicResult {
        points,
        cartesian,
        axis_point,
        axis_direction: Some(u),
        residuals,
        circumradius: r,
        note,
    })
}

/// Outcome of the outside-circumcircle test on a triangle.
#[derive(Debug, Clone)]
pub struct YiuVerdict {
    pub q: BarycentricPoint,
    pub circumcenter: BarycentricPoint,
    pub distance_sq: f64,
    pub circumradius_sq: f64,
    /// `Q` outside the circumcircle, i.e. the circles share no point.
    pub outside: bool,
}

impl YiuVerdict {
    pub fn circles_meet(&self) -> bool {
        !self.outside
    }
}

/// Decides whether the Apollonian circles of the triangle with sides
/// `(d_23, d_13, d_12)` for distance ratios `1/a_i : 1/a_j` have a common
/// point: they do not exactly when
///
/// ```text
/// Q = [ d23^2 (d23^2/a1^2 - d13^2/a2^2 - d12^2/a3^2)
///     : d13^2 (d13^2/a2^2 - d12^2/a3^2 - d23^2/a1^2)
///     : d12^2 (d12^2/a3^2 - d23^2/a1^2 - d13^2/a2^2) ]
/// ```
///
/// lies outside the circumcircle.
pub fn yiu_triangle_test(d23: f64, d13: f64, d12: f64, a1: f64, a2: f64, a3: f64) -> Result<YiuVerdict> {
    let sides = [d23, d13, d12];
    if sides.iter().any(|s| !(s.is_finite() && *s > 0.0)) || d23 >= d13 + d12 || d13 >= d23 + d12 || d12 >= d23 + d13 {
        return Err(GeometryError::NotATriangle(d23, d13, d12));
    }
    if [a1, a2, a3].iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(GeometryError::InvalidInput("weights must be positive".into()));
    }
    let model = SimplexModel::from_edge_lengths(&EdgeLengthTable::from_pairs(2, &[d12, d13, d23])?)?;
    let (s1, s2, s3) = (d23 * d23, d13 * d13, d12 * d12);
    let (w1, w2, w3) = (s1 / (a1 * a1), s2 / (a2 * a2), s3 / (a3 * a3));
    let q = BarycentricPoint::homogeneous(vec![s1 * (w1 - w2 - w3), s2 * (w2 - w3 - w1), s3 * (w3 - w1 - w2)])?;
    let circumcenter = model.classical_centers().circumcenter;
    let circumradius_sq = model.circumsphere().radius.powi(2);
    let (q, distance_sq) = match q.normalize() {
        Ok(qn) => {
            let d2 = model.squared_distance(&qn, &circumcenter)?;
            (qn, d2)
        }
        // a point at infinity is outside every circle
        Err(GeometryError::PointAtInfinity) => (q, f64::INFINITY),
        Err(e) => return Err(e),
    };
    Ok(YiuVerdict {
        q,
        circumcenter,
        distance_sq,
        circumradius_sq,
        outside: distance_sq > circumradius_sq,
    })
}

/// Intersects the line through the vertex opposite `facet_index` and `p` with
/// that facet. Returns the facet simplex (canonical pose, remaining vertices in
/// order) and the intersection in the facet's own coordinates.
pub fn restrict_to_facet(
    p: &BarycentricPoint,
    model: &SimplexModel,
    facet_index: usize,
) -> Result<(SimplexModel, BarycentricPoint)> {
    model.check_len(p)?;
    if facet_index >= model.vertex_count() {
        return Err(GeometryError::InvalidInput(format!(
            "facet index {} out of range",
            facet_index + 1
        )));
    }
    let p = p.normalize()?;
    let pf = p.coords()[facet_index];
    if (1.0 - pf).abs() <= 1e-14 {
        return Err(GeometryError::ParallelLine { index: facet_index });
    }
    let coords: Vec<f64> = p
        .coords()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != facet_index)
        .map(|(_, c)| c / (1.0 - pf))
        .collect();
    Ok((model.facet(facet_index)?, BarycentricPoint::normalized(coords)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(pairs: [f64; 3]) -> SimplexModel {
        SimplexModel::from_edge_lengths(&EdgeLengthTable::from_pairs(2, &pairs).unwrap()).unwrap()
    }

    #[test]
    fn flat_sphere_for_equal_weights() {
        let m = triangle([13.0, 11.0, 12.0]);
        let p = BarycentricPoint::homogeneous(vec![2.0, -2.0, 1.0]).unwrap();
        let s = apollonian_sphere(&p, 0, 1, &m).unwrap();
        assert!(s.is_degenerate());
        let mid = (m.vertex(0) + m.vertex(1)) / 2.0;
        assert!(s.sphere.signed_residual(&mid).abs() < 1e-12);
        assert!(s.membership_residual(&m, m.vertex(2)) > 0.0);
        assert!((s.cross_ratio() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn incenter_sphere_divides_side_in_side_ratio() {
        let m = triangle([13.0, 11.0, 12.0]);
        let inc = m.classical_centers().incenter;
        let s = apollonian_sphere(&inc, 0, 1, &m).unwrap();
        // a_1 : a_2 = d_23 : d_13 = 12 : 11
        let x_in = m.bary_to_cart(&s.inner).unwrap();
        let x_out = m.bary_to_cart(&s.outer).unwrap();
        for x in [&x_in, &x_out] {
            let r = (m.vertex(0) - x).norm() / (m.vertex(1) - x).norm();
            assert!((r - 11.0 / 12.0).abs() < 1e-12);
            assert!(s.sphere.signed_residual(x).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coordinate_rejected() {
        let m = triangle([13.0, 11.0, 12.0]);
        let p = BarycentricPoint::homogeneous(vec![0.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            apollonian_sphere(&p, 0, 1, &m),
            Err(GeometryError::ZeroCoordinate { index: 0 })
        ));
        assert!(matches!(
            isodynamic_points(&p, &m),
            Err(GeometryError::ZeroCoordinate { index: 0 })
        ));
    }

    #[test]
    fn equilateral_incenter_gives_single_center() {
        let m = triangle([1.0, 1.0, 1.0]);
        let res = isodynamic_points(&m.classical_centers().incenter, &m).unwrap();
        assert_eq!(res.points.len(), 1);
        assert!(res.axis_direction.is_none());
        assert!(res.note.is_some());
        assert!(res.points[0].max_abs_diff(&BarycentricPoint::centroid(3)).unwrap() < 1e-12);
    }

    #[test]
    fn triangle_isodynamic_points_equalize_products() {
        let m = triangle([7.0, 5.0, 4.0]);
        let res = isodynamic_points(&m.classical_centers().incenter, &m).unwrap();
        assert_eq!(res.points.len(), 2);
        let d = |i, j| m.edges().get(i, j);
        for x in &res.cartesian {
            let dist = m.vertex_distances(x);
            let prods = [dist[0] * d(1, 2), dist[1] * d(0, 2), dist[2] * d(0, 1)];
            for k in 1..3 {
                assert!((prods[k] - prods[0]).abs() <= 1e-9 * prods[0]);
            }
        }
        // inversive pair through the circumcircle
        let o = m.circumsphere();
        let prod = (&res.cartesian[0] - &o.center).norm() * (&res.cartesian[1] - &o.center).norm();
        assert!((prod - o.radius * o.radius).abs() <= 1e-9 * o.radius * o.radius);
    }

    #[test]
    fn yiu_equilateral_equal_weights_is_centroid_inside() {
        let v = yiu_triangle_test(1.0, 1.0, 1.0, 2.0, 2.0, 2.0).unwrap();
        assert!(v.q.max_abs_diff(&BarycentricPoint::centroid(3)).unwrap() < 1e-15);
        assert!(!v.outside);
        assert!(v.circles_meet());
    }

    #[test]
    fn yiu_rejects_non_triangles() {
        assert!(matches!(
            yiu_triangle_test(1.0, 1.0, 2.0, 1.0, 1.0, 1.0),
            Err(GeometryError::NotATriangle(..))
        ));
        assert!(yiu_triangle_test(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn restrict_examples() {
        let m = SimplexModel::from_vertices(vec![
            vec![0.0, 0.0, 0.0],
            vec![6.0, 0.0, 0.0],
            vec![0.0, 8.0, 0.0],
            vec![2.0, 2.0, 6.0],
        ])
        .unwrap();
        let (facet, g) = restrict_to_facet(&BarycentricPoint::centroid(4), &m, 3).unwrap();
        assert_eq!(facet.vertex_count(), 3);
        assert!(g.max_abs_diff(&BarycentricPoint::centroid(3)).unwrap() < 1e-15);

        let on = BarycentricPoint::normalized(vec![0.2, 0.5, 0.3, 0.0]).unwrap();
        let (_, same) = restrict_to_facet(&on, &m, 3).unwrap();
        assert_eq!(same.coords(), &[0.2, 0.5, 0.3]);

        assert!(matches!(
            restrict_to_facet(&BarycentricPoint::vertex(3, 4), &m, 3),
            Err(GeometryError::ParallelLine { index: 3 })
        ));
    }

    #[test]
    fn cross_ratio_of_harmonic_parameters() {
        // 0, 1 and the harmonic pair 1/3, -1
        assert!((cross_ratio(0.0, 1.0, 1.0 / 3.0, -1.0) + 1.0).abs() < 1e-15);
    }
}
