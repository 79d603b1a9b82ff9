//! The report-producing commands.

use nalgebra::DVector;
use simplex_centers::apollonian::isodynamic_points;
use simplex_centers::fermat::{total_distance_gradient, vertex_optimality};
use simplex_centers::isogonic::SeedKind;
use simplex_centers::{
    enumerate_isogonic_with, fermat_point, pedal_simplex, yiu_triangle_test, BarycentricPoint, FermatOptions,
    GeometryError, IterationStatus, PedalIterationOptions, SeedStrategy, SimplexModel, WeiszfeldMethod,
};

use crate::document::{DocumentError, ParsedSimplex};
use crate::exact::{self, render, render_sqrt, to_f64, ExactTable, Rational};
use crate::report::{CenterReport, PointRow, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("geometric error: {0}")]
    Geometry(#[from] GeometryError),
    #[error("iteration did not converge")]
    NotConverged(Box<CenterReport>),
    #[error("verification failed")]
    VerifyFailed(Box<CenterReport>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::NotConverged(_) => 4,
        }
    }

    /// The report to print despite the failure, if any.
    pub fn report(&self) -> Option<&CenterReport> {
        match self {
            CliError::NotConverged(r) | CliError::VerifyFailed(r) => Some(r),
            _ => None,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Geometry(g) => CliError::Geometry(g),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Numeric settings shared by the iterative commands.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    pub tolerance: Option<f64>,
    pub max_iter: Option<usize>,
}

impl Settings {
    /// Command-line values win over document values.
    pub fn merged(self, parsed: &ParsedSimplex) -> Settings {
        let doc = parsed.document.tolerances.clone().unwrap_or_default();
        Settings {
            tolerance: self.tolerance.or(doc.tolerance),
            max_iter: self.max_iter.or(doc.max_iter),
        }
    }
}

fn echo(parsed: &ParsedSimplex) -> Option<serde_json::Value> {
    serde_json::to_value(&parsed.document).ok()
}

fn exact_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(render).collect()
}

fn to_point(v: &[Rational]) -> Result<BarycentricPoint, CliError> {
    BarycentricPoint::homogeneous(v.iter().map(to_f64).collect()).map_err(|e| CliError::Input(e.to_string()))
}

fn pad<T: Clone>(v: &[T], at: Option<usize>, zero: T) -> Vec<T> {
    let mut out = v.to_vec();
    if let Some(k) = at {
        out.insert(k, zero);
    }
    out
}

fn pad_row(mut row: PointRow, at: Option<usize>) -> PointRow {
    row.normalized = pad(&row.normalized, at, 0.0);
    row.homogeneous = pad(&row.homogeneous, at, 0.0);
    row.exact = row.exact.map(|e| pad(&e, at, "0".to_string()));
    row
}

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// Centroid, incenter, symmedian and circumcenter with the defining
/// predicate of each re-checked. With `facet = Some(k)` (1-based) the centers
/// of the facet opposite `A_k` are reported, with a zero in slot `k`.
pub fn cmd_centers(parsed: &ParsedSimplex, facet: Option<usize>) -> Result<CenterReport, CliError> {
    let m = parsed.model.vertex_count();
    let (model, table, slot): (SimplexModel, ExactTable, Option<usize>) = match facet {
        None => (parsed.model.clone(), parsed.exact.clone(), None),
        Some(k) if (1..=m).contains(&k) => {
            if m < 4 {
                return Err(CliError::Input(
                    "--facet needs a simplex of dimension at least 3".into(),
                ));
            }
            let keep: Vec<usize> = (0..m).filter(|&j| j != k - 1).collect();
            (parsed.model.facet(k - 1)?, parsed.exact.sub_table(&keep), Some(k - 1))
        }
        Some(k) => return Err(CliError::Input(format!("--facet {k} is out of range 1..={m}"))),
    };
    let mut report = CenterReport::new("centers", echo(parsed));
    if let Some(k) = slot {
        report.notes.push(format!("centers of the facet opposite A_{}", k + 1));
    }
    let c = model.classical_centers();
    let diam = model.diameter();
    let cart = |p: &BarycentricPoint| model.bary_to_cart(p);
    let len = model.vertex_count();
    let a2 = table.squared_facet_volumes();

    let mean = model
        .vertices()
        .iter()
        .fold(DVector::zeros(model.dim()), |acc, v| acc + v)
        / len as f64;
    let g_res = (cart(&c.centroid)? - mean).norm() / diam;
    let g_exact = vec![Rational::new(1.into(), (len as i64).into()); len];
    report.points.push(pad_row(
        PointRow::new("G", &c.centroid)
            .exact(exact_strings(&g_exact))
            .residual("distance to the vertex average / diameter", g_res),
        slot,
    ));

    let xi = cart(&c.incenter)?;
    let dists: Vec<f64> = (0..len)
        .map(|i| model.facet_hyperplane(i).signed_distance(&xi))
        .collect();
    report.points.push(pad_row(
        PointRow::new("I", &c.incenter).residual("spread of sideplane distances / diameter", spread(&dists) / diam),
        slot,
    ));

    let xk = cart(&c.symmedian)?;
    let k_res = (pedal_simplex(&c.symmedian, &model)?.centroid() - xk).norm() / diam;
    let mut k_row =
        PointRow::new("K", &c.symmedian).residual("distance to the centroid of its pedal simplex / diameter", k_res);
    if let Some(k) = exact::normalize(&a2) {
        k_row = k_row.exact(exact_strings(&k));
    }
    report.points.push(pad_row(k_row, slot));

    let circ = model.circumsphere();
    let vd = model.vertex_distances(&circ.center);
    let mut o_row = PointRow::new("O", &c.circumcenter)
        .residual("spread of vertex distances / circumradius", spread(&vd) / circ.radius);
    if let Some(o) = table.circumcenter() {
        o_row = o_row.exact(exact_strings(&o));
    }
    report.points.push(pad_row(o_row, slot));

    report.value(
        "circumradius",
        circ.radius,
        table.circumradius_sq().as_ref().and_then(render_sqrt),
    );
    let all: Vec<usize> = (0..len).collect();
    report.value("volume", model.volume(), render_sqrt(&table.squared_volume(&all)));
    let labels: Vec<usize> = (0..m).filter(|&j| Some(j) != slot).collect();
    for (i, a) in model.facet_volumes().iter().enumerate() {
        report.value(format!("facet volume a_{}", labels[i] + 1), *a, render_sqrt(&a2[i]));
    }
    Ok(report)
}

/// Exact and floating-point outside-circumcircle test on the triangle
/// `A_1 A_2 A_3` for weights `|p_1|, |p_2|, |p_3|` (given as squares).
fn apollonian_witness(
    parsed: &ParsedSimplex,
    weights: &[f64],
    weights_sq: &[Rational],
    report: &mut CenterReport,
) -> Result<(), CliError> {
    let m = parsed.model.vertex_count();
    let e = parsed.model.edges();
    let verdict = yiu_triangle_test(
        e.get(1, 2),
        e.get(0, 2),
        e.get(0, 1),
        weights[0],
        weights[1],
        weights[2],
    )?;
    let tri = parsed.exact.sub_table(&[0, 1, 2]);
    let s = [&tri.sq[1][2], &tri.sq[0][2], &tri.sq[0][1]];
    let exact_q = exact::yiu_witness(s, [&weights_sq[0], &weights_sq[1], &weights_sq[2]]);
    let exact_o = tri.circumcenter();
    let zeros = vec![Rational::from_integer(0.into()); m - 3];
    let extend = |v: &[Rational]| -> Vec<Rational> { v.iter().cloned().chain(zeros.iter().cloned()).collect() };

    let mut q_row = PointRow::new("Q", &verdict.q);
    let mut o_row = PointRow::new("O_delta", &verdict.circumcenter);
    let full = |v: Vec<f64>| -> Vec<f64> { v.into_iter().chain(std::iter::repeat_n(0.0, m - 3)).collect() };
    q_row.normalized = full(q_row.normalized);
    q_row.homogeneous = full(q_row.homogeneous);
    o_row.normalized = full(o_row.normalized);
    o_row.homogeneous = full(o_row.homogeneous);
    let mut exact_outside = None;
    if let Some(q) = &exact_q {
        q_row = q_row.exact(exact_strings(&extend(q)));
    }
    if let Some(o) = &exact_o {
        o_row = o_row.exact(exact_strings(&extend(o)));
    }
    if let (Some(q), Some(o), Some(r2)) = (&exact_q, &exact_o, tri.circumradius_sq()) {
        let d2 = tri.squared_distance(q, o);
        report.value(
            "witness squared distance d(Q, O_delta)^2",
            to_f64(&d2),
            Some(render(&d2)),
        );
        report.value("witness squared circumradius", to_f64(&r2), Some(render(&r2)));
        exact_outside = Some(d2 > r2);
    } else {
        report.value("witness squared distance d(Q, O_delta)^2", verdict.distance_sq, None);
        report.value("witness squared circumradius", verdict.circumradius_sq, None);
    }
    report.points.push(q_row);
    report.points.push(o_row);
    let outside = exact_outside.unwrap_or(verdict.outside);
    if exact_outside.is_some_and(|x| x != verdict.outside) {
        report
            .warnings
            .push("floating-point and exact witness verdicts disagree; the exact verdict is reported".into());
    }
    report.value("witness outside", if outside { 1.0 } else { 0.0 }, None);
    report.notes.push(if outside {
        "witness: Q lies outside the circumcircle of A_1 A_2 A_3, so S_12, S_13, S_23 share no point".into()
    } else {
        "witness: Q lies inside the circumcircle of A_1 A_2 A_3".into()
    });
    Ok(())
}

/// Common points of the generalized Apollonian spheres of `point` (default:
/// the incenter). When there are none, a witness on the triangle
/// `A_1 A_2 A_3` is attached.
pub fn cmd_isodynamic(parsed: &ParsedSimplex, point: Option<&[Rational]>) -> Result<CenterReport, CliError> {
    let model = &parsed.model;
    let m = model.vertex_count();
    let mut report = CenterReport::new("isodynamic", echo(parsed));
    let (p, weights_sq) = match point {
        Some(v) => {
            if v.len() != m {
                return Err(CliError::Input(format!(
                    "--point needs {m} coordinates, found {}",
                    v.len()
                )));
            }
            (to_point(v)?, v.iter().map(|x| x * x).collect::<Vec<_>>())
        }
        None => (model.classical_centers().incenter, parsed.exact.squared_facet_volumes()),
    };
    report.points.push(PointRow::new("P", &p));
    let res = isodynamic_points(&p, model)?;
    let names: Vec<String> = if res.points.len() == 1 {
        vec!["J".into()]
    } else {
        (1..=res.points.len()).map(|k| format!("J_{k}")).collect()
    };
    for ((name, q), r) in names.iter().zip(&res.points).zip(&res.residuals) {
        report
            .points
            .push(PointRow::new(name, q).residual("largest Apollonian-sphere membership defect", *r));
    }
    report.value(
        "isodynamic points",
        res.points.len() as f64,
        Some(res.points.len().to_string()),
    );
    report.value("circumradius", res.circumradius, None);
    if let Some(note) = &res.note {
        report.notes.push(note.clone());
    }
    if res.points.is_empty() {
        report.notes.push("none exist".into());
        let weights: Vec<f64> = p.coords().iter().map(|c| c.abs()).collect();
        apollonian_witness(parsed, &weights, &weights_sq, &mut report)?;
    }
    Ok(report)
}

pub fn parse_method(s: &str) -> Result<WeiszfeldMethod, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(WeiszfeldMethod::Q),
        "r" => Ok(WeiszfeldMethod::R),
        "classic" => Ok(WeiszfeldMethod::Classic),
        other => Err(CliError::Input(format!(
            "unknown method \"{other}\" (expected q, r or classic)"
        ))),
    }
}

/// Fermat-Torricelli point by the chosen iteration; iteration counts of
/// both sequences are reported for comparison.
pub fn cmd_fermat(
    parsed: &ParsedSimplex,
    method: WeiszfeldMethod,
    start: Option<&[Rational]>,
    trace: bool,
    settings: Settings,
) -> Result<CenterReport, CliError> {
    let settings = settings.merged(parsed);
    let model = &parsed.model;
    let m = model.vertex_count();
    let start = match start {
        Some(v) if v.len() != m => {
            return Err(CliError::Input(format!(
                "--start needs {m} coordinates, found {}",
                v.len()
            )));
        }
        Some(v) => to_point(v)?,
        None => BarycentricPoint::centroid(m),
    };
    let defaults = FermatOptions::default();
    let opts = FermatOptions {
        tol: settings.tolerance.unwrap_or(defaults.tol),
        max_iter: settings.max_iter.unwrap_or(defaults.max_iter),
    };
    let sol = fermat_point(model, &start, method, opts)?;
    let mut report = CenterReport::new("fermat", echo(parsed));
    report.points.push(PointRow::new("start", &start));
    let row = PointRow::new("F", &sol.point).iterations(sol.trace.iterations_used);
    let row = match sol.vertex_optimum {
        Some(i) => {
            report.notes.push(format!("vertex optimum at A_{}", i + 1));
            row.residual("vertex optimality norm (at most 1)", vertex_optimality(model, i))
        }
        None => {
            let x = model.bary_to_cart(&sol.point)?;
            row.residual(
                "gradient norm of the summed distance",
                total_distance_gradient(model, &x).norm(),
            )
        }
    };
    report.points.push(row);
    report.value("summed vertex distance", sol.objective, None);
    report.value(
        format!("iterations ({})", method.name()),
        sol.trace.iterations_used as f64,
        None,
    );
    for other in [WeiszfeldMethod::Q, WeiszfeldMethod::R] {
        if other == method {
            continue;
        }
        if let Ok(o) = fermat_point(model, &start, other, opts) {
            let label = if o.converged() { "" } else { ", not converged" };
            report.value(
                format!("iterations ({}{label})", other.name()),
                o.trace.iterations_used as f64,
                None,
            );
        }
    }
    if method == WeiszfeldMethod::Classic {
        report
            .warnings
            .push("the classic step [p_i/d_i] is shown for comparison; its limit is not the Fermat point".into());
    }
    if trace || !sol.converged() {
        report.trace = Some(serde_json::json!({
            "method": method.name(),
            "converged": sol.trace.converged,
            "iterations_used": sol.trace.iterations_used,
            "iterates": sol.trace.iterates.iter().map(|p| p.coords().to_vec()).collect::<Vec<_>>(),
            "objective_values": sol.trace.objective_values,
        }));
    }
    if !sol.converged() {
        report
            .warnings
            .push(format!("no convergence within {} iterations", opts.max_iter));
        return Err(CliError::NotConverged(Box::new(report)));
    }
    Ok(report)
}

fn seed_kind(k: SeedKind) -> String {
    match k {
        SeedKind::Centroid => "centroid".into(),
        SeedKind::Orthant(i) => format!("sign pattern -A_{}", i + 1),
        SeedKind::Isodynamic => "isodynamic".into(),
        SeedKind::Inversion => "inversion".into(),
        SeedKind::User => "user".into(),
    }
}

/// All isogonic points reachable from the default and user seeds.
pub fn cmd_isogonic(
    parsed: &ParsedSimplex,
    seeds: &[Vec<Rational>],
    budget: Option<usize>,
    settings: Settings,
) -> Result<CenterReport, CliError> {
    let settings = settings.merged(parsed);
    let model = &parsed.model;
    let m = model.vertex_count();
    let mut strategy = SeedStrategy::default();
    for (k, s) in seeds.iter().enumerate() {
        if s.len() != m {
            return Err(CliError::Input(format!(
                "seed {k} needs {m} coordinates, found {}",
                s.len()
            )));
        }
        strategy.user.push(to_point(s)?);
    }
    let defaults = PedalIterationOptions::default();
    let opts = PedalIterationOptions {
        tol: settings.tolerance.unwrap_or(defaults.tol),
        max_iter: budget.or(settings.max_iter).unwrap_or(defaults.max_iter),
        damping: defaults.damping,
    };
    let catalog = enumerate_isogonic_with(model, &strategy, opts);
    let mut report = CenterReport::new("isogonic", echo(parsed));
    for (k, e) in catalog.entries.iter().enumerate() {
        report.points.push(
            PointRow::new(format!("L_{k}"), &e.conjugate_point)
                .residual("equiareal deviation of the pedal simplex", e.pedal_deviation)
                .iterations(e.iterations),
        );
    }
    for (k, e) in catalog.entries.iter().enumerate() {
        report.points.push(
            PointRow::new(format!("F_{k}"), &e.isogonic_point)
                .residual("equiareal deviation of the antipedal simplex", e.antipedal_deviation),
        );
    }
    report.value("isogonic points", catalog.len() as f64, Some(catalog.len().to_string()));
    for (k, e) in catalog.entries.iter().enumerate() {
        report.value(format!("pedal facet volume a_{k}"), e.pedal_area, None);
    }
    for (k, e) in catalog.entries.iter().enumerate() {
        report.value(format!("antipedal facet volume a~_{k}"), e.antipedal_area, None);
    }
    let rows = catalog
        .seeds
        .iter()
        .enumerate()
        .map(|(k, s)| {
            vec![
                k.to_string(),
                seed_kind(s.kind),
                match s.status {
                    Some(IterationStatus::Converged) => "converged".into(),
                    Some(IterationStatus::MaxIterationsExceeded) => "iteration cap".into(),
                    Some(IterationStatus::DegeneratePedal) => "degenerate pedal".into(),
                    None => "failed".into(),
                },
                match s.method {
                    Some(simplex_centers::isogonic::SolveMethod::Newton) => "newton".into(),
                    Some(_) => "iteration".into(),
                    None => "-".into(),
                },
                s.iterations.to_string(),
                format!("{:.3e}", s.residual),
                s.entry.map_or("-".into(), |e| format!("L_{e}")),
                s.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    report.tables.push(Table {
        title: "seeds".into(),
        columns: [
            "#",
            "seed",
            "status",
            "method",
            "iterations",
            "residual",
            "limit",
            "note",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        rows,
    });
    let failed = catalog.seeds.iter().filter(|s| s.entry.is_none()).count();
    if failed > 0 {
        report.notes.push(format!(
            "{failed} seed(s) produced no verified point; see the seed table"
        ));
    }
    report.notes.push(format!(
        "points are verified at equiareal deviation {:e} and merged at {:e}",
        simplex_centers::isogonic::EQUIAREAL_TOL,
        simplex_centers::isogonic::DEDUP_TOL
    ));
    Ok(report)
}
