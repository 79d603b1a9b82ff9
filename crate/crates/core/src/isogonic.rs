//! Isogonal conjugation, the pedal fixed-point iteration and the search for
//! isogonic points (points whose antipedal simplex is equiareal).
//!
//! A point `L` whose pedal simplex is equiareal has an isogonic conjugate
//! `F = [a_i^2 / l_i]`. The points `L` are found as fixed points of
//! `P <- P + G_P - I_P`, with `G_P` and `I_P` the centroid and incenter of the
//! pedal simplex of `P`; they coincide exactly when that pedal is equiareal.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::apollonian::isodynamic_points;
use crate::bary::BarycentricPoint;
use crate::error::{GeometryError, Result};
use crate::pedal::{antipedal_of_cartesian, invert_point, pedal_of_cartesian};
use crate::simplex::{facet_volumes_of, gram_volume, Hyperplane, SimplexModel, FLAT_VOLUME_EPS};

/// Acceptance threshold for equiareal pedal and antipedal simplices.
pub const EQUIAREAL_TOL: f64 = 1e-7;
/// Catalog points closer than this (max normalized coordinate difference) are merged.
pub const DEDUP_TOL: f64 = 1e-6;
/// Conjugates whose normalized coordinates exceed this are treated as points
/// at infinity (limits like `[a_1^2 : -a_2^2 : -a_3^2 : a_4^2]` conjugate to
/// `[1 : -1 : -1 : 1]`).
pub const FAR_COORD_LIMIT: f64 = 1e4;
/// During enumeration a seed whose residual shrinks by less than 10% over
/// this many steps is handed to Newton's method.
const STALL_WINDOW: usize = 500;
/// Line-angle agreement required by [`triad_angle_check`], in radians.
pub const TRIAD_TOL: f64 = 1e-7;

/// `[a_1^2/p_1 : ... : a_{n+1}^2/p_{n+1}]` with `a_i` the facet volumes.
pub fn isogonal_conjugate(p: &BarycentricPoint, model: &SimplexModel) -> Result<BarycentricPoint> {
    model.check_len(p)?;
    p.require_nonzero()?;
    let a = model.facet_volumes();
    BarycentricPoint::homogeneous(p.coords().iter().zip(a).map(|(pi, ai)| ai * ai / pi).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationStatus {
    Converged,
    MaxIterationsExceeded,
    DegeneratePedal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// The raw (possibly damped) fixed-point iteration.
    Iteration,
    /// Newton's method on `G_P - I_P`, used when the iteration stalls.
    Newton,
}

#[derive(Debug, Clone, Copy)]
pub struct PedalIterationOptions {
    /// Stop once `|G_P - I_P| < tol * diameter`.
    pub tol: f64,
    pub max_iter: usize,
    /// Step multiplier; halved whenever the residual grows five steps in a row.
    pub damping: f64,
}

impl Default for PedalIterationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            max_iter: 20_000,
            damping: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PedalIterationOutcome {
    /// Last iterate (the fixed point when converged).
    pub point: BarycentricPoint,
    pub cartesian: DVector<f64>,
    pub status: IterationStatus,
    pub method: SolveMethod,
    pub iterations: usize,
    /// Final `|G_P - I_P|`.
    pub residual: f64,
    /// `|G_P - I_P|` per step.
    pub residual_history: Vec<f64>,
    pub final_damping: f64,
}

impl PedalIterationOutcome {
    pub fn converged(&self) -> bool {
        self.status == IterationStatus::Converged
    }
}

/// Sideplanes of a model, cached for repeated pedal evaluations.
struct PedalMap<'a> {
    model: &'a SimplexModel,
    planes: Vec<Hyperplane>,
}

impl<'a> PedalMap<'a> {
    fn new(model: &'a SimplexModel) -> Self {
        let planes = (0..model.vertex_count()).map(|i| model.facet_hyperplane(i)).collect();
        Self { model, planes }
    }

    /// `G_P - I_P`, or `None` when the pedal is degenerate.
    fn defect(&self, x: &DVector<f64>) -> Result<Option<DVector<f64>>> {
        let diam = self.model.diameter();
        if let Some(index) = self
            .model
            .vertices()
            .iter()
            .position(|v| (v - x).norm() <= 1e-14 * diam)
        {
            return Err(GeometryError::AtVertex { index });
        }
        let feet: Vec<DVector<f64>> = self.planes.iter().map(|h| h.project(x)).collect();
        let n = self.model.dim();
        let span = feet
            .iter()
            .flat_map(|a| feet.iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max);
        if gram_volume(&feet) <= FLAT_VOLUME_EPS * span.powi(n as i32) {
            return Ok(None);
        }
        let w = facet_volumes_of(&feet);
        let total: f64 = w.iter().sum();
        let m = feet.len() as f64;
        let mut d = DVector::zeros(n);
        for (p, a) in feet.iter().zip(&w) {
            d.axpy(1.0 / m - a / total, p, 1.0);
        }
        Ok(Some(d))
    }
}

/// Runs `P <- P + damping * (G_P - I_P)` from `p0`.
pub fn pedal_equiareal_iteration(
    p0: &BarycentricPoint,
    model: &SimplexModel,
    opts: PedalIterationOptions,
) -> Result<PedalIterationOutcome> {
    let x0 = model.bary_to_cart(p0)?;
    iterate_cartesian(x0, model, opts, false)
}

fn iterate_cartesian(
    mut x: DVector<f64>,
    model: &SimplexModel,
    opts: PedalIterationOptions,
    stop_on_stall: bool,
) -> Result<PedalIterationOutcome> {
    let map = PedalMap::new(model);
    let tol = opts.tol * model.diameter();
    let mut damping = opts.damping;
    let mut history = Vec::new();
    let mut rises = 0;
    let mut status = IterationStatus::MaxIterationsExceeded;
    let mut iterations = 0;
    let mut residual = f64::INFINITY;

    for it in 0..=opts.max_iter {
        let Some(f) = map.defect(&x)? else {
            status = IterationStatus::DegeneratePedal;
            break;
        };
        let r = f.norm();
        if let Some(prev) = history.last() {
            if r > *prev {
                rises += 1;
                if rises >= 5 {
                    damping *= 0.5;
                    rises = 0;
                }
            } else {
                rises = 0;
            }
        }
        history.push(r);
        residual = r;
        iterations = it;
        if r < tol {
            status = IterationStatus::Converged;
            break;
        }
        if it == opts.max_iter {
            break;
        }
        if stop_on_stall && it >= STALL_WINDOW && r > 0.9 * history[it - STALL_WINDOW] {
            break;
        }
        x.axpy(damping, &f, 1.0);
        if !x.iter().all(|v| v.is_finite()) {
            return Err(GeometryError::InvalidInput("pedal iteration diverged".into()));
        }
    }

    Ok(PedalIterationOutcome {
        point: model.cart_to_bary(&x)?,
        cartesian: x,
        status,
        method: SolveMethod::Iteration,
        iterations,
        residual,
        residual_history: history,
        final_damping: damping,
    })
}

/// Newton's method on `x -> G_P - I_P` with a central-difference Jacobian
/// and a backtracking line search. Converges to unstable fixed points the
/// raw iteration cannot reach.
pub fn pedal_equiareal_newton(
    x0: &DVector<f64>,
    model: &SimplexModel,
    tol: f64,
    max_iter: usize,
) -> Result<PedalIterationOutcome> {
    let diam = model.diameter();
    let n = model.dim();
    let h = 1e-6 * diam;
    let target = tol * diam;
    let mut x = x0.clone();
    let mut history = Vec::new();

    let map = PedalMap::new(model);
    let eval = |y: &DVector<f64>| -> Option<DVector<f64>> { map.defect(y).ok().flatten() };

    let Some(mut f) = eval(&x) else {
        return Ok(PedalIterationOutcome {
            point: model.cart_to_bary(&x)?,
            cartesian: x,
            status: IterationStatus::DegeneratePedal,
            method: SolveMethod::Newton,
            iterations: 0,
            residual: f64::INFINITY,
            residual_history: history,
            final_damping: 1.0,
        });
    };
    let mut status = IterationStatus::MaxIterationsExceeded;
    let mut iterations = 0;

    for it in 0..max_iter {
        let r = f.norm();
        history.push(r);
        iterations = it;
        if r < target {
            status = IterationStatus::Converged;
            break;
        }
        let mut jac = DMatrix::zeros(n, n);
        let mut ok = true;
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            match (eval(&xp), eval(&xm)) {
                (Some(fp), Some(fm)) => jac.set_column(k, &((fp - fm) / (2.0 * h))),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            status = IterationStatus::DegeneratePedal;
            break;
        }
        let Some(step) = jac.lu().solve(&(-&f)) else {
            break;
        };
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let y = &x + &step * t;
            if let Some(fy) = eval(&y) {
                if fy.norm() < r {
                    x = y;
                    f = fy;
                    improved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !improved {
            // stalled at rounding level; accept if already tiny
            if r < 1e3 * target {
                status = IterationStatus::Converged;
            }
            break;
        }
    }
    let residual = f.norm();
    if residual < target {
        status = IterationStatus::Converged;
    }
    Ok(PedalIterationOutcome {
        point: model.cart_to_bary(&x)?,
        cartesian: x,
        status,
        method: SolveMethod::Newton,
        iterations,
        residual,
        residual_history: history,
        final_damping: 1.0,
    })
}

/// Result of [`is_isogonic`].
#[derive(Debug, Clone)]
pub struct IsogonicCheck {
    pub isogonic: bool,
    /// Equiareal deviation of the antipedal simplex, when it exists.
    pub deviation: Option<f64>,
    pub antipedal_volumes: Vec<f64>,
    pub diagnostic: Option<GeometryError>,
}

/// Whether the antipedal simplex of `p` is equiareal within `tol`.
pub fn is_isogonic(p: &BarycentricPoint, model: &SimplexModel, tol: f64) -> Result<IsogonicCheck> {
    let x = model.bary_to_cart(p)?;
    match antipedal_of_cartesian(&x, model) {
        Ok(ap) => {
            let vols = ap.facet_volumes();
            let dev = ap.equiareal_deviation();
            Ok(IsogonicCheck {
                isogonic: !ap.is_degenerate() && dev <= tol,
                deviation: Some(dev),
                antipedal_volumes: vols,
                diagnostic: None,
            })
        }
        Err(e @ (GeometryError::UnboundedAntipedal { .. } | GeometryError::AtVertex { .. })) => Ok(IsogonicCheck {
            isogonic: false,
            deviation: None,
            antipedal_volumes: vec![],
            diagnostic: Some(e),
        }),
        Err(e) => Err(e),
    }
}

/// Line angles at `P` for one vertex triple.
#[derive(Debug, Clone, PartialEq)]
pub struct TriadAngles {
    pub vertices: [usize; 3],
    /// Angles between the lines `P A_i`, `P A_j`, in `[0, pi/2]`, ascending.
    pub angles: [f64; 3],
}

#[derive(Debug, Clone)]
pub struct TriadCheck {
    pub congruent: bool,
    /// Largest disagreement between corresponding sorted angles.
    pub spread: f64,
    pub triads: Vec<TriadAngles>,
}

/// Compares the angle triples formed by the lines from `P` to each vertex
/// triple of a tetrahedron.
pub fn triad_angle_check(p: &BarycentricPoint, model: &SimplexModel) -> Result<TriadCheck> {
    if model.dim() != 3 {
        return Err(GeometryError::DimensionMismatch {
            expected: 3,
            found: model.dim(),
        });
    }
    let x = model.bary_to_cart(p)?;
    let diam = model.diameter();
    let dirs: Vec<DVector<f64>> = model
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let d = a - &x;
            let len = d.norm();
            if len <= 1e-14 * diam {
                Err(GeometryError::AtVertex { index: i })
            } else {
                Ok(d / len)
            }
        })
        .collect::<Result<_>>()?;
    let line_angle = |i: usize, j: usize| dirs[i].dot(&dirs[j]).abs().min(1.0).acos();

    let mut triads = Vec::with_capacity(4);
    for skip in (0..4).rev() {
        let v: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let mut angles = [line_angle(v[0], v[1]), line_angle(v[0], v[2]), line_angle(v[1], v[2])];
        angles.sort_by(f64::total_cmp);
        triads.push(TriadAngles {
            vertices: [v[0], v[1], v[2]],
            angles,
        });
    }
    let mut spread: f64 = 0.0;
    for t in &triads[1..] {
        for k in 0..3 {
            spread = spread.max((t.angles[k] - triads[0].angles[k]).abs());
        }
    }
    Ok(TriadCheck {
        congruent: spread <= TRIAD_TOL,
        spread,
        triads,
    })
}

/// Where a seed came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    Centroid,
    /// The centroid with coordinate `i` negated.
    Orthant(usize),
    /// Isodynamic point of the incenter.
    Isodynamic,
    /// Circumsphere inversion of an already accepted point.
    Inversion,
    User,
}

#[derive(Debug, Clone)]
pub struct SeedStrategy {
    /// Centroid plus the one-negative sign patterns.
    pub defaults: bool,
    /// Also seed from the isodynamic points of the incenter.
    pub isodynamic: bool,
    /// Re-seed from circumsphere inversions of accepted points.
    pub inversion: bool,
    pub user: Vec<BarycentricPoint>,
}

impl Default for SeedStrategy {
    fn default() -> Self {
        Self {
            defaults: true,
            isodynamic: true,
            inversion: true,
            user: vec![],
        }
    }
}

impl SeedStrategy {
    /// Only the given seeds.
    pub fn only(user: Vec<BarycentricPoint>) -> Self {
        Self {
            defaults: false,
            isodynamic: false,
            inversion: false,
            user,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeedReport {
    pub seed: BarycentricPoint,
    pub kind: SeedKind,
    pub status: Option<IterationStatus>,
    pub method: Option<SolveMethod>,
    pub iterations: usize,
    pub residual: f64,
    /// Index into the catalog of the point this seed produced.
    pub entry: Option<usize>,
    /// Why the seed produced nothing new.
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct IsogonicEntry {
    /// `L`: equiareal pedal simplex.
    pub conjugate_point: BarycentricPoint,
    /// `F`: equiareal antipedal simplex.
    pub isogonic_point: BarycentricPoint,
    /// Mean facet volume of the pedal simplex of `L`.
    pub pedal_area: f64,
    /// Mean facet volume of the antipedal simplex of `F`.
    pub antipedal_area: f64,
    pub pedal_deviation: f64,
    pub antipedal_deviation: f64,
    /// Index of the first seed reaching this point.
    pub seed: usize,
    pub iterations: usize,
    pub method: SolveMethod,
}

#[derive(Debug, Clone, Default)]
pub struct IsogonicCatalog {
    pub entries: Vec<IsogonicEntry>,
    pub seeds: Vec<SeedReport>,
}

impl IsogonicCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn conjugate_points(&self) -> Vec<BarycentricPoint> {
        self.entries.iter().map(|e| e.conjugate_point.clone()).collect()
    }

    pub fn isogonic_points(&self) -> Vec<BarycentricPoint> {
        self.entries.iter().map(|e| e.isogonic_point.clone()).collect()
    }

    pub fn pedal_areas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.pedal_area).collect()
    }

    pub fn antipedal_areas(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.antipedal_area).collect()
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

struct Candidate {
    outcome: Option<PedalIterationOutcome>,
    entry: Option<IsogonicEntry>,
    note: Option<String>,
}

fn verify(outcome: &PedalIterationOutcome, model: &SimplexModel, seed: usize) -> Result<IsogonicEntry, String> {
    let l = outcome.point.normalize().map_err(|e| e.to_string())?;
    if let Some(i) = l.zero_coordinate() {
        return Err(format!("limit lies on sideplane {i}"));
    }
    let pedal = pedal_of_cartesian(&outcome.cartesian, model).map_err(|e| e.to_string())?;
    if pedal.is_degenerate() {
        return Err("degenerate pedal simplex at the limit".into());
    }
    let pedal_dev = pedal.equiareal_deviation();
    if pedal_dev > EQUIAREAL_TOL {
        return Err(format!("pedal deviation {pedal_dev:.3e} too large"));
    }
    let f = isogonal_conjugate(&l, model)
        .and_then(|f| f.normalize())
        .map_err(|e| e.to_string())?;
    if f.max_abs() > FAR_COORD_LIMIT {
        return Err("conjugate lies at infinity".into());
    }
    let check = is_isogonic(&f, model, EQUIAREAL_TOL).map_err(|e| e.to_string())?;
    if !check.isogonic {
        return Err(match (check.deviation, check.diagnostic) {
            (_, Some(e)) => format!("conjugate rejected: {e}"),
            (Some(d), None) => format!("antipedal deviation {d:.3e} too large"),
            (None, None) => "conjugate rejected".into(),
        });
    }
    Ok(IsogonicEntry {
        pedal_area: mean(&pedal.facet_volumes()),
        antipedal_area: mean(&check.antipedal_volumes),
        pedal_deviation: pedal_dev,
        antipedal_deviation: check.deviation.unwrap_or(f64::NAN),
        conjugate_point: l,
        isogonic_point: f,
        seed,
        iterations: outcome.iterations,
        method: outcome.method,
    })
}

fn solve_seed(seed: &BarycentricPoint, model: &SimplexModel, opts: PedalIterationOptions, index: usize) -> Candidate {
    let fail = |note: String| Candidate {
        outcome: None,
        entry: None,
        note: Some(note),
    };
    let x0 = match seed.normalize().and_then(|s| model.bary_to_cart(&s)) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let first = match iterate_cartesian(x0.clone(), model, opts, true) {
        Ok(o) => o,
        Err(e) => return fail(e.to_string()),
    };
    let mut attempts = vec![];
    if first.converged() {
        // tighten the limit with a few Newton steps
        if let Ok(polished) = pedal_equiareal_newton(&first.cartesian, model, opts.tol * 1e-2, 8) {
            if polished.residual <= first.residual {
                attempts.push(PedalIterationOutcome {
                    iterations: first.iterations + polished.iterations,
                    method: SolveMethod::Iteration,
                    status: IterationStatus::Converged,
                    residual_history: first.residual_history.clone(),
                    ..polished
                });
            }
        }
        attempts.push(first);
    } else {
        let start = if first.status == IterationStatus::DegeneratePedal {
            x0
        } else {
            first.cartesian.clone()
        };
        if let Ok(o) = pedal_equiareal_newton(&start, model, opts.tol, 200) {
            attempts.push(o);
        }
        attempts.push(first);
    }

    let mut note = None;
    for o in &attempts {
        match verify(o, model, index) {
            Ok(entry) => {
                return Candidate {
                    outcome: Some(o.clone()),
                    entry: Some(entry),
                    note: None,
                }
            }
            Err(msg) => {
                note.get_or_insert(msg);
            }
        }
    }
    Candidate {
        outcome: attempts.pop(),
        entry: None,
        note,
    }
}

fn canonical_order(a: &BarycentricPoint, b: &BarycentricPoint) -> Ordering {
    let first_neg = |p: &BarycentricPoint| p.coords().iter().position(|c| *c < 0.0).unwrap_or(0);
    a.negative_count()
        .cmp(&b.negative_count())
        .then(first_neg(a).cmp(&first_neg(b)))
        .then_with(|| {
            a.coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// Runs the pedal iteration from every seed (in parallel), keeps limits whose
/// pedal and conjugate antipedal simplices are both equiareal, merges
/// duplicates and sorts the result: all-positive points first, then by the
/// position of the first negative coordinate. `budget` caps iterations per seed.
pub fn enumerate_isogonic(model: &SimplexModel, strategy: &SeedStrategy, budget: usize) -> IsogonicCatalog {
    let opts = PedalIterationOptions {
        max_iter: budget,
        ..Default::default()
    };
    enumerate_isogonic_with(model, strategy, opts)
}

/// [`enumerate_isogonic`] with explicit iteration settings.
pub fn enumerate_isogonic_with(
    model: &SimplexModel,
    strategy: &SeedStrategy,
    opts: PedalIterationOptions,
) -> IsogonicCatalog {
    let m = model.vertex_count();
    let mut seeds: Vec<(BarycentricPoint, SeedKind)> = vec![];
    if strategy.defaults {
        seeds.push((BarycentricPoint::centroid(m), SeedKind::Centroid));
        for i in 0..m {
            let mut c = vec![1.0; m];
            c[i] = -1.0;
            // sum is m - 2 > 0 for every simplex of dimension at least 2
            if let Ok(s) = BarycentricPoint::normalized(c.iter().map(|v| v / (m as f64 - 2.0)).collect()) {
                seeds.push((s, SeedKind::Orthant(i)));
            }
        }
    }
    if strategy.isodynamic {
        let incenter = model.classical_centers().incenter;
        if let Ok(iso) = isodynamic_points(&incenter, model) {
            for p in iso.points {
                if p.zero_coordinate().is_none() {
                    seeds.push((p, SeedKind::Isodynamic));
                }
            }
        }
    }
    for s in &strategy.user {
        seeds.push((s.clone(), SeedKind::User));
    }

    let mut catalog = IsogonicCatalog::default();
    let mut found: Vec<IsogonicEntry> = vec![];
    let mut entry_of_seed: Vec<Option<usize>> = vec![];

    let run_round = |batch: Vec<(BarycentricPoint, SeedKind)>,
                     catalog: &mut IsogonicCatalog,
                     found: &mut Vec<IsogonicEntry>,
                     entry_of_seed: &mut Vec<Option<usize>>|
     -> Vec<usize> {
        let offset = catalog.seeds.len();
        let results: Vec<Candidate> = batch
            .par_iter()
            .enumerate()
            .map(|(k, (s, _))| solve_seed(s, model, opts, offset + k))
            .collect();
        let mut new = vec![];
        for ((seed, kind), cand) in batch.into_iter().zip(results) {
            let mut note = cand.note;
            let mut idx = None;
            if let Some(entry) = cand.entry {
                let dup = found.iter().position(|e| {
                    e.conjugate_point
                        .max_abs_diff(&entry.conjugate_point)
                        .map(|d| d <= DEDUP_TOL)
                        .unwrap_or(false)
                });
                match dup {
                    Some(j) => {
                        idx = Some(j);
                        note = Some("duplicate of an earlier limit".into());
                    }
                    None => {
                        found.push(entry);
                        idx = Some(found.len() - 1);
                        new.push(found.len() - 1);
                    }
                }
            }
            entry_of_seed.push(idx);
            catalog.seeds.push(SeedReport {
                seed,
                kind,
                status: cand.outcome.as_ref().map(|o| o.status),
                method: cand.outcome.as_ref().map(|o| o.method),
                iterations: cand.outcome.as_ref().map_or(0, |o| o.iterations),
                residual: cand.outcome.as_ref().map_or(f64::NAN, |o| o.residual),
                entry: None,
                note,
            });
        }
        new
    };

    let new = run_round(seeds, &mut catalog, &mut found, &mut entry_of_seed);

    if strategy.inversion {
        let circ = model.circumsphere();
        let extra: Vec<(BarycentricPoint, SeedKind)> = new
            .iter()
            .filter_map(|&k| {
                let x = model.bary_to_cart(&found[k].conjugate_point).ok()?;
                if (&x - &circ.center).norm() <= 1e-9 * circ.radius {
                    return None;
                }
                let y = invert_point(&x, &circ.center, circ.radius);
                let p = model.cart_to_bary(&y).ok()?;
                p.zero_coordinate().is_none().then_some((p, SeedKind::Inversion))
            })
            .collect();
        if !extra.is_empty() {
            run_round(extra, &mut catalog, &mut found, &mut entry_of_seed);
        }
    }

    // canonical order, then remap seed reports
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| canonical_order(&found[a].conjugate_point, &found[b].conjugate_point));
    let mut rank = vec![0; found.len()];
    for (r, &k) in order.iter().enumerate() {
        rank[k] = r;
    }
    for (report, e) in catalog.seeds.iter_mut().zip(&entry_of_seed) {
        report.entry = e.map(|k| rank[k]);
    }
    let mut slots: Vec<Option<IsogonicEntry>> = found.into_iter().map(Some).collect();
    catalog.entries = order
        .iter()
        .map(|&k| slots[k].take().expect("each index once"))
        .collect();
    catalog
}
