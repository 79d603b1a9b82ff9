//! Z*-correspondence and Weiszfeld-type iterations for the Fermat-Torricelli
//! point (the minimizer of the summed vertex distances).
//!
//! With `Σ*` the polar simplex of `Σ` in a sphere centered at `P`, the
//! correspondent of `Z* = [z_1 : ... : z_{n+1}]` (coordinates taken with
//! respect to `Σ*`) is `P # Z* = [p_1/z_1 : ... : p_{n+1}/z_{n+1}]`. Two
//! sequences built from it converge to the Fermat point:
//!
//! * `Q_{k+1} = [1/d(Q_k, A_1) : ... ]`, which is `Q_k # I*`;
//! * `R_{k+1} = [1/(|r_1| d(R_k, A_1)^2) : ... ]`, which is `R_k # K*` and needs
//!   no square roots of coordinates beyond the distances themselves.

use nalgebra::DVector;

use crate::bary::BarycentricPoint;
use crate::error::{GeometryError, Result};
use crate::simplex::SimplexModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeiszfeldMethod {
    /// `[1/d_i]`, the classical Weiszfeld update.
    Q,
    /// `[1/(|p_i| d_i^2)]` with the current iterate's coordinates.
    R,
    /// `[p_i / d_i]`, kept for comparison; its fixed points are not Fermat points.
    Classic,
}

impl WeiszfeldMethod {
    pub fn name(self) -> &'static str {
        match self {
            WeiszfeldMethod::Q => "q",
            WeiszfeldMethod::R => "r",
            WeiszfeldMethod::Classic => "classic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub method: WeiszfeldMethod,
    /// Normalized iterates, starting with the start point.
    pub iterates: Vec<BarycentricPoint>,
    /// Summed vertex distance at each iterate.
    pub objective_values: Vec<f64>,
    pub converged: bool,
    pub iterations_used: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct FermatOptions {
    /// Stop when successive normalized iterates differ by less than this per coordinate.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FermatOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FermatSolution {
    pub point: BarycentricPoint,
    pub objective: f64,
    /// Set when the minimum is attained at a vertex.
    pub vertex_optimum: Option<usize>,
    pub trace: IterationTrace,
}

impl FermatSolution {
    pub fn converged(&self) -> bool {
        self.trace.converged
    }
}

/// `P # Z* = [p_i / z_i]`.
pub fn z_correspondent(p: &BarycentricPoint, zstar: &BarycentricPoint) -> Result<BarycentricPoint> {
    if p.len() != zstar.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: p.len(),
            found: zstar.len(),
        });
    }
    p.require_nonzero()?;
    zstar.require_nonzero()?;
    BarycentricPoint::homogeneous(p.coords().iter().zip(zstar.coords()).map(|(a, z)| a / z).collect())
}

fn distances_checked(p: &BarycentricPoint, model: &SimplexModel) -> Result<(BarycentricPoint, Vec<f64>)> {
    model.check_len(p)?;
    let p = p.normalize()?;
    let x = model.bary_to_cart(&p)?;
    let d = model.vertex_distances(&x);
    if let Some(index) = d.iter().position(|v| *v <= 1e-15 * model.diameter()) {
        return Err(GeometryError::AtVertex { index });
    }
    Ok((p, d))
}

/// `P # I* = [sgn(p_i) / d(P, A_i)]`.
pub fn weiszfeld_step_q(p: &BarycentricPoint, model: &SimplexModel) -> Result<BarycentricPoint> {
    let (p, d) = distances_checked(p, model)?;
    BarycentricPoint::normalized(p.coords().iter().zip(&d).map(|(c, di)| c.signum() / di).collect())
}

/// `[1 / (|p_i| d(P, A_i)^2)]` with `p` the current normalized coordinates.
pub fn weiszfeld_step_r(p: &BarycentricPoint, model: &SimplexModel) -> Result<BarycentricPoint> {
    model.check_len(p)?;
    p.require_nonzero()?;
    let (p, d) = distances_checked(p, model)?;
    BarycentricPoint::normalized(
        p.coords()
            .iter()
            .zip(&d)
            .map(|(c, di)| 1.0 / (c.abs() * di * di))
            .collect(),
    )
}

/// `[p_i / d(P, A_i)]`.
pub fn weiszfeld_step_classic(p: &BarycentricPoint, model: &SimplexModel) -> Result<BarycentricPoint> {
    let (p, d) = distances_checked(p, model)?;
    BarycentricPoint::normalized(p.coords().iter().zip(&d).map(|(c, di)| c / di).collect())
}

/// One step of the chosen sequence. The Q step uses `[1/d_i]` (the
/// correspondent for `Z* = [sgn(p_i) a_i*]`), so exterior points map inside.
fn sequence_step(method: WeiszfeldMethod, p: &BarycentricPoint, model: &SimplexModel) -> Result<BarycentricPoint> {
    match method {
        WeiszfeldMethod::Q => {
            let (_, d) = distances_checked(p, model)?;
            BarycentricPoint::normalized(d.iter().map(|di| 1.0 / di).collect())
        }
        WeiszfeldMethod::R => weiszfeld_step_r(p, model),
        WeiszfeldMethod::Classic => weiszfeld_step_classic(p, model),
    }
}

/// `sum_i d(P, A_i)`.
pub fn total_distance(p: &BarycentricPoint, model: &SimplexModel) -> Result<f64> {
    model.check_len(p)?;
    let p = p.normalize()?;
    (0..model.vertex_count())
        .map(|i| model.distance(&p, &BarycentricPoint::vertex(i, model.vertex_count())))
        .sum()
}

/// Norm of `sum_{j != i} (A_i - A_j)/|A_i - A_j|`; vertex `i` minimizes the
/// summed distance exactly when this is at most one.
pub fn vertex_optimality(model: &SimplexModel, i: usize) -> f64 {
    let ai = model.vertex(i);
    let mut g = DVector::zeros(model.dim());
    for (j, aj) in model.vertices().iter().enumerate() {
        if j != i {
            let d = ai - aj;
            g += &d / d.norm();
        }
    }
    g.norm()
}

/// Cartesian gradient `sum_i (x - A_i)/|x - A_i|` of the summed distance.
pub fn total_distance_gradient(model: &SimplexModel, x: &DVector<f64>) -> DVector<f64> {
    let mut g = DVector::zeros(model.dim());
    for a in model.vertices() {
        let d = x - a;
        g += &d / d.norm();
    }
    g
}

/// Runs the chosen sequence from `start` until successive iterates agree to
/// `opts.tol`. Returns the trace even without convergence; check
/// [`FermatSolution::converged`].
pub fn fermat_point(
    model: &SimplexModel,
    start: &BarycentricPoint,
    method: WeiszfeldMethod,
    opts: FermatOptions,
) -> Result<FermatSolution> {
    model.check_len(start)?;
    start.require_nonzero()?;
    let m = model.vertex_count();
    let diam = model.diameter();
    let mut p = start.normalize()?;
    let mut trace = IterationTrace {
        method,
        iterates: vec![p.clone()],
        objective_values: vec![total_distance(&p, model)?],
        converged: false,
        iterations_used: 0,
    };
    let mut vertex_optimum = None;

    for it in 1..=opts.max_iter {
        let x = model.bary_to_cart(&p)?;
        let dist = model.vertex_distances(&x);
        let (near, dmin) = dist
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, d)| if d < acc.1 { (i, d) } else { acc });

        if dmin < 1e-6 * diam && vertex_optimality(model, near) <= 1.0 {
            p = BarycentricPoint::vertex(near, m);
            vertex_optimum = Some(near);
            trace.iterates.push(p.clone());
            trace.objective_values.push(total_distance(&p, model)?);
            trace.iterations_used = it;
            trace.converged = true;
            break;
        }
        if dmin < 1e-13 * diam {
            // stuck on a non-optimal vertex: step off along the steepest descent direction
            let ai = model.vertex(near);
            let mut g = DVector::zeros(model.dim());
            for (j, aj) in model.vertices().iter().enumerate() {
                if j != near {
                    let d = ai - aj;
                    g += &d / d.norm();
                }
            }
            let moved = ai - &g * (1e-4 * diam / g.norm());
            p = model.cart_to_bary(&moved)?;
            continue;
        }

        let next = sequence_step(method, &p, model)?;
        let delta = next.max_abs_diff(&p)?;
        p = next;
        trace.iterates.push(p.clone());
        trace.objective_values.push(total_distance(&p, model)?);
        trace.iterations_used = it;
        if delta < opts.tol {
            trace.converged = true;
            break;
        }
    }

    let objective = *trace.objective_values.last().expect("trace holds the start");
    Ok(FermatSolution {
        point: p,
        objective,
        vertex_optimum,
        trace,
    })
}
