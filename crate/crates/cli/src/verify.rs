//! Recomputes the reference values for the built-in tetrahedra and the
//! randomized property suites, one row per check.
//!
//! Sections: 1 isogonic tables, 2 isodynamic points, 3 disjoint Apollonian
//! spheres, 4 Fermat solver, 5 triangle suite, 6 structural invariants.

use nalgebra::DVector;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use simplex_centers::apollonian::{cross_ratio, isodynamic_points};
use simplex_centers::fermat::total_distance_gradient;
use simplex_centers::simplex::facet_volumes_of;
use simplex_centers::{
    antipedal_simplex, apollonian_spheres, enumerate_isogonic, fermat_point, isogonal_conjugate, pedal_simplex,
    polar_simplex, total_distance, yiu_triangle_test, z_correspondent, BarycentricPoint, FermatOptions, Hyperplane,
    SeedStrategy, SimplexModel, WeiszfeldMethod,
};

use crate::commands::{cmd_centers, cmd_fermat, cmd_isodynamic, cmd_isogonic, CliError, Settings};
use crate::document::{build, builtin, ParsedSimplex};
use crate::report::{number, CenterReport, Table};

/// Reference values, 12 decimals.
pub mod reference {
    pub const L: [[f64; 4]; 5] = [
        [0.266996565955, 0.275481800939, 0.217355830792, 0.240165802314],
        [-4.180629474014, 2.569387212447, 1.602113038329, 1.009129223238],
        [1.193250865914, -1.252645952150, 0.354761022780, 0.704634063455],
        [0.713260932730, 0.358215195120, -0.616627271982, 0.545151144132],
        [0.657546390333, 0.802131717931, 0.639088262811, -1.098766371077],
    ];
    pub const PEDAL_AREAS: [f64; 5] = [
        2.404772767371,
        122.125536031480,
        19.392997370805,
        9.848601171111,
        18.965046082427,
    ];
    pub const F: [[f64; 4]; 5] = [
        [0.369979160947, 0.229493293826, 0.163611619856, 0.236915925371],
        [-0.297000489955, 0.309278164652, 0.279002561033, 0.708719764270],
        [0.388102931405, -0.236608485604, 0.469943106828, 0.378562447371],
        [0.382915343108, 0.487963317698, -0.159452369671, 0.288573708865],
        [0.645021938255, 0.338403751068, 0.238914519123, -0.222340208446],
    ];
    pub const ANTIPEDAL_AREAS: [f64; 5] = [
        241.637142362610,
        60.087819904352,
        31.387257487815,
        5.647726265255,
        31.003305976553,
    ];
    pub const J: [[f64; 4]; 2] = [
        [0.206439675828, 0.327649375007, 0.263085414624, 0.20282553454],
        [2.954833710960, -0.575606610593, -1.403778427224, 0.024551326857],
    ];
    pub const Q: [&str; 4] = ["3326952/4504043", "25180529/27024258", "-18117983/27024258", "0"];
    pub const O_DELTA: [&str; 4] = ["73/210", "121/315", "169/630", "0"];
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub section: u8,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub deviation: f64,
    /// `None` for exact and pass/fail rows.
    pub tolerance: Option<f64>,
    pub pass: bool,
}

struct Checker {
    rows: Vec<CheckRow>,
    tolerance: Option<f64>,
}

impl Checker {
    fn tol(&self, t: f64) -> f64 {
        self.tolerance.unwrap_or(t)
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        section: u8,
        check: String,
        expected: String,
        computed: String,
        deviation: f64,
        tolerance: Option<f64>,
        pass: bool,
    ) {
        self.rows.push(CheckRow {
            section,
            check,
            expected,
            computed,
            deviation,
            tolerance,
            pass,
        });
    }

    /// `|computed - expected| <= tol`.
    fn abs(&mut self, section: u8, check: impl Into<String>, expected: f64, computed: f64, tol: f64) {
        let tol = self.tol(tol);
        let dev = (computed - expected).abs();
        self.push(
            section,
            check.into(),
            number(expected),
            number(computed),
            dev,
            Some(tol),
            dev <= tol,
        );
    }

    /// `|computed / expected - 1| <= tol`.
    fn rel(&mut self, section: u8, check: impl Into<String>, expected: f64, computed: f64, tol: f64) {
        let tol = self.tol(tol);
        let dev = (computed / expected - 1.0).abs();
        self.push(
            section,
            check.into(),
            number(expected),
            number(computed),
            dev,
            Some(tol),
            dev <= tol,
        );
    }

    /// A measured defect that must stay below `tol`.
    fn bound(&mut self, section: u8, check: impl Into<String>, defect: f64, tol: f64) {
        let tol = self.tol(tol);
        let ok = defect <= tol;
        self.push(
            section,
            check.into(),
            format!("<= {tol:e}"),
            format!("{defect:.3e}"),
            defect,
            Some(tol),
            ok,
        );
    }

    fn flag(
        &mut self,
        section: u8,
        check: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) {
        self.push(
            section,
            check.into(),
            expected.into(),
            computed.into(),
            if ok { 0.0 } else { 1.0 },
            None,
            ok,
        );
    }

    fn exact(&mut self, section: u8, check: impl Into<String>, expected: &str, computed: &str) {
        let ok = expected == computed;
        self.flag(section, check, expected, computed, ok);
    }
}

fn parsed(doc: crate::document::SimplexDocument) -> Result<ParsedSimplex, CliError> {
    Ok(build(doc)?)
}

fn value(report: &CenterReport, name: &str) -> Option<f64> {
    report.values.iter().find(|v| v.name == name).map(|v| v.value)
}

fn exact_value(report: &CenterReport, name: &str) -> Option<String> {
    report
        .values
        .iter()
        .find(|v| v.name == name)
        .and_then(|v| v.exact.clone())
}

fn coords_of(report: &CenterReport, name: &str) -> Option<Vec<f64>> {
    report.point(name).map(|p| p.normalized.clone())
}

fn section_isogonic(c: &mut Checker, five: &ParsedSimplex) -> Result<(), CliError> {
    let r = cmd_isogonic(five, &[], None, Settings::default())?;
    let n = value(&r, "isogonic points").unwrap_or(0.0) as usize;
    c.flag(1, "number of isogonic points", "5", n.to_string(), n == 5);
    for k in 0..5 {
        for (sym, table) in [("L", &reference::L), ("F", &reference::F)] {
            let got = coords_of(&r, &format!("{sym}_{k}"));
            for i in 0..4 {
                let v = got.as_ref().map_or(f64::NAN, |g| g[i]);
                c.abs(1, format!("{sym}_{k} coordinate {}", i + 1), table[k][i], v, 1e-9);
            }
        }
    }
    for k in 0..5 {
        let a = value(&r, &format!("pedal facet volume a_{k}")).unwrap_or(f64::NAN);
        c.rel(
            1,
            format!("pedal facet volume a_{k}"),
            reference::PEDAL_AREAS[k],
            a,
            1e-6,
        );
    }
    for k in 0..5 {
        let a = value(&r, &format!("antipedal facet volume a~_{k}")).unwrap_or(f64::NAN);
        c.rel(
            1,
            format!("antipedal facet volume a~_{k}"),
            reference::ANTIPEDAL_AREAS[k],
            a,
            1e-6,
        );
    }
    Ok(())
}

fn section_isodynamic(c: &mut Checker, five: &ParsedSimplex) -> Result<(), CliError> {
    let r = cmd_isodynamic(five, None)?;
    for (k, want) in reference::J.iter().enumerate() {
        let name = format!("J_{}", k + 1);
        let got = coords_of(&r, &name);
        for i in 0..4 {
            let v = got.as_ref().map_or(f64::NAN, |g| g[i]);
            c.abs(2, format!("{name} coordinate {}", i + 1), want[i], v, 1e-8);
        }
        let res = r
            .point(&name)
            .and_then(|p| p.residual.as_ref())
            .map_or(f64::INFINITY, |x| x.value);
        c.bound(2, format!("{name} sphere membership residual"), res, 1e-8);
    }
    Ok(())
}

fn section_disjoint(c: &mut Checker, disjoint: &ParsedSimplex) -> Result<(), CliError> {
    let centers = cmd_centers(disjoint, None)?;
    let s = |x: f64| x.sqrt();
    let want = [
        ("6*sqrt(21)", 6.0 * s(21.0)),
        ("9/4*sqrt(403)", 2.25 * s(403.0)),
        ("9/4*sqrt(51)", 2.25 * s(51.0)),
        ("6*sqrt(105)", 6.0 * s(105.0)),
    ];
    for (i, (text, v)) in want.iter().enumerate() {
        let name = format!("facet volume a_{}", i + 1);
        c.rel(3, name.clone(), *v, value(&centers, &name).unwrap_or(f64::NAN), 1e-10);
        c.exact(
            3,
            format!("{name} exact"),
            text,
            &exact_value(&centers, &name).unwrap_or_default(),
        );
    }
    let facet = cmd_centers(disjoint, Some(4))?;
    let o = facet.point("O");
    for i in 0..4 {
        let want = crate::exact::parse_rational(reference::O_DELTA[i]).expect("literal");
        let got = o.map_or(f64::NAN, |p| p.normalized[i]);
        c.abs(
            3,
            format!("O_delta coordinate {}", i + 1),
            crate::exact::to_f64(&want),
            got,
            1e-12,
        );
        let got_exact = o
            .and_then(|p| p.exact.as_ref())
            .map(|e| e[i].clone())
            .unwrap_or_default();
        c.exact(
            3,
            format!("O_delta coordinate {} exact", i + 1),
            reference::O_DELTA[i],
            &got_exact,
        );
    }

    let iso = cmd_isodynamic(disjoint, None)?;
    let count = value(&iso, "isodynamic points").unwrap_or(f64::NAN);
    c.flag(3, "isodynamic points", "none", format!("{count}"), count == 0.0);
    let q = iso.point("Q");
    for i in 0..4 {
        let want = crate::exact::parse_rational(reference::Q[i]).expect("literal");
        let got = q.map_or(f64::NAN, |p| p.normalized[i]);
        c.abs(
            3,
            format!("Q coordinate {}", i + 1),
            crate::exact::to_f64(&want),
            got,
            1e-12,
        );
        let got_exact = q
            .and_then(|p| p.exact.as_ref())
            .map(|e| e[i].clone())
            .unwrap_or_default();
        c.exact(3, format!("Q coordinate {} exact", i + 1), reference::Q[i], &got_exact);
    }
    let d2 = value(&iso, "witness squared distance d(Q, O_delta)^2").unwrap_or(f64::NAN);
    let r2 = value(&iso, "witness squared circumradius").unwrap_or(f64::NAN);
    c.flag(
        3,
        "d(Q, O_delta) > circumradius",
        "outside",
        format!("d^2 = {} vs R^2 = {}", number(d2), number(r2)),
        value(&iso, "witness outside") == Some(1.0) && d2 > r2,
    );
    Ok(())
}

fn random_interior(rng: &mut StdRng, m: usize) -> BarycentricPoint {
    BarycentricPoint::normalized((0..m).map(|_| rng.gen_range(0.05..1.0)).collect()).expect("positive")
}

fn section_fermat(c: &mut Checker, five: &ParsedSimplex) -> Result<(), CliError> {
    let model = &five.model;
    let f0 = BarycentricPoint::normalized(reference::F[0].to_vec()).expect("reference row");
    for (method, label) in [(WeiszfeldMethod::Q, "q"), (WeiszfeldMethod::R, "r")] {
        let r = cmd_fermat(five, method, None, false, Settings::default())?;
        let got = coords_of(&r, "F").unwrap_or_default();
        let dev = got
            .iter()
            .zip(f0.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        c.bound(4, format!("fermat --method {label} from G reaches F_0"), dev, 1e-9);
    }
    let mut rng = StdRng::seed_from_u64(4);
    let (mut worst_q, mut worst_r, mut grad, mut fd, mut rise) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, f64::NEG_INFINITY);
    let (mut all_converged, mut it_q, mut it_r) = (true, 0usize, 0usize);
    for _ in 0..10 {
        let start = random_interior(&mut rng, 4);
        for method in [WeiszfeldMethod::Q, WeiszfeldMethod::R] {
            let sol = fermat_point(model, &start, method, FermatOptions::default())?;
            all_converged &= sol.converged();
            let dev = sol.point.max_abs_diff(&f0)?;
            let x = model.bary_to_cart(&sol.point)?;
            let g = total_distance_gradient(model, &x);
            grad = grad.max(g.norm());
            let h = 1e-6;
            let sum = |y: &DVector<f64>| model.vertices().iter().map(|a| (a - y).norm()).sum::<f64>();
            for k in 0..3 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                fd = fd.max(((sum(&xp) - sum(&xm)) / (2.0 * h) - g[k]).abs());
            }
            match method {
                WeiszfeldMethod::Q => {
                    worst_q = worst_q.max(dev);
                    it_q += sol.trace.iterations_used;
                    let vals = &sol.trace.objective_values;
                    for w in vals.windows(2) {
                        rise = rise.max((w[1] - w[0]) / w[0]);
                    }
                }
                _ => {
                    worst_r = worst_r.max(dev);
                    it_r += sol.trace.iterations_used;
                }
            }
        }
    }
    c.flag(
        4,
        "all 20 runs converged",
        "true",
        all_converged.to_string(),
        all_converged,
    );
    c.bound(4, "method q from 10 random starts reaches F_0", worst_q, 1e-9);
    c.bound(4, "method r from 10 random starts reaches F_0", worst_r, 1e-9);
    c.bound(4, "gradient norm of the summed distance at the limit", grad, 1e-7);
    c.bound(4, "gradient agrees with central differences", fd, 1e-5);
    c.bound(
        4,
        "summed distance never increases along q iterates (relative)",
        rise.max(0.0),
        1e-12,
    );
    c.flag(
        4,
        "mean iterations q / r (informational)",
        "-",
        format!("{:.1} / {:.1}", it_q as f64 / 10.0, it_r as f64 / 10.0),
        true,
    );
    let _ = total_distance(&f0, model)?;
    Ok(())
}

fn random_simplex(rng: &mut StdRng, n: usize) -> SimplexModel {
    loop {
        let pts: Vec<Vec<f64>> = (0..=n)
            .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        if let Ok(m) = SimplexModel::from_vertices(pts) {
            let h = m
                .facet_volumes()
                .iter()
                .map(|a| n as f64 * m.volume() / a)
                .fold(f64::INFINITY, f64::min);
            if h / m.diameter() > 0.08 {
                return m;
            }
        }
    }
}

fn rel_spread(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / (v.iter().sum::<f64>() / v.len() as f64)
}

fn side_spread(points: &[DVector<f64>]) -> f64 {
    rel_spread(&facet_volumes_of(points))
}

/// Scale-aware difference of normalized coordinates.
fn point_gap(a: &BarycentricPoint, b: &BarycentricPoint) -> f64 {
    let scale = a.normalize().map(|p| p.max_abs()).unwrap_or(1.0).max(1.0);
    a.max_abs_diff(b).unwrap_or(f64::INFINITY) / scale
}

fn section_triangles(c: &mut Checker) -> Result<(), CliError> {
    let mut rng = StdRng::seed_from_u64(5);
    let mut line = 0.0f64;
    let mut harmonic = 0.0f64;
    let mut interior_ok = true;
    let mut with_interior = 0usize;
    let mut products = 0.0f64;
    let mut pedal = 0.0f64;
    let mut antipedal = 0.0f64;
    let mut conj = 0.0f64;
    let mut fermat = 0.0f64;
    let mut counts_ok = true;
    for _ in 0..100 {
        let m = random_simplex(&mut rng, 2);
        let centers = m.classical_centers();
        let res = isodynamic_points(&centers.incenter, &m)?;
        if res.points.len() != 2 {
            counts_ok = false;
            continue;
        }
        let o = m.bary_to_cart(&centers.circumcenter)?;
        let k = m.bary_to_cart(&centers.symmedian)?;
        let u = &k - &o;
        let t = |x: &DVector<f64>| (x - &o).dot(&u) / u.norm_squared();
        for x in &res.cartesian {
            let off = (x - &o) - &u * t(x);
            line = line.max(off.norm() / m.diameter().max((x - &o).norm()));
        }
        // O, J_1, K, J_2 in range order: the pairs {O, K} and {J_1, J_2} separate
        harmonic = harmonic.max((cross_ratio(0.0, 1.0, t(&res.cartesian[0]), t(&res.cartesian[1])) + 1.0).abs());
        let interior = res
            .points
            .iter()
            .filter(|p| p.normalized_coords().is_ok_and(|c| c.iter().all(|v| *v > 0.0)))
            .count();
        let inside_circle = res
            .cartesian
            .iter()
            .filter(|x| (*x - &o).norm() < m.circumsphere().radius)
            .count();
        let sides = m.facet_volumes();
        let longest = sides.iter().copied().fold(0.0, f64::max);
        let rest: f64 = sides.iter().map(|a| a * a).sum::<f64>() - longest * longest;
        let prod: f64 = sides.iter().product::<f64>() / longest;
        // largest angle below 120 degrees: cos > -1/2
        let below_120 = (rest - longest * longest) / prod > -1.0;
        interior_ok &= inside_circle == 1 && interior == usize::from(below_120);
        with_interior += usize::from(interior == 1);
        let e = m.edges();
        let opposite = [e.get(1, 2), e.get(0, 2), e.get(0, 1)];
        for x in &res.cartesian {
            let d = m.vertex_distances(x);
            let prod: Vec<f64> = (0..3).map(|i| d[i] * opposite[i]).collect();
            products = products.max(rel_spread(&prod));
        }
        for p in &res.points {
            pedal = pedal.max(side_spread(&pedal_simplex(p, &m)?.points));
        }
        let cat = enumerate_isogonic(&m, &SeedStrategy::default(), 20_000);
        counts_ok &= cat.len() == 2;
        let fs = cat.isogonic_points();
        for f in &fs {
            antipedal = antipedal.max(side_spread(&antipedal_simplex(f, &m)?.points));
        }
        for j in &res.points {
            let g = isogonal_conjugate(j, &m)?;
            let best = fs.iter().map(|f| point_gap(&g, f)).fold(f64::INFINITY, f64::min);
            conj = conj.max(best);
        }
        if let Some(inner) = fs
            .iter()
            .find(|f| f.normalized_coords().is_ok_and(|c| c.iter().all(|v| *v > 0.0)))
        {
            let sol = fermat_point(
                &m,
                &BarycentricPoint::centroid(3),
                WeiszfeldMethod::Q,
                FermatOptions::default(),
            )?;
            fermat = fermat.max(sol.point.max_abs_diff(inner)?);
        }
    }
    c.flag(
        5,
        "two isodynamic and two isogonic points per triangle",
        "true",
        counts_ok.to_string(),
        counts_ok,
    );
    c.bound(5, "isodynamic points on the line O K (relative distance)", line, 1e-9);
    c.bound(
        5,
        "O, J_1, K, J_2 harmonic: cross-ratio (O, K; J_1, J_2) + 1",
        harmonic,
        1e-7,
    );
    c.flag(
        5,
        "one J inside the circumcircle; it is inside the triangle iff every angle is below 120 degrees",
        "true",
        interior_ok.to_string(),
        interior_ok,
    );
    c.flag(
        5,
        "triangles with an isodynamic point inside (informational)",
        "-",
        format!("{with_interior}/100"),
        true,
    );
    c.bound(5, "d(J, A_i) d_jk equal across i (relative spread)", products, 1e-8);
    c.bound(
        5,
        "pedal triangles of J_1, J_2 equilateral (relative side spread)",
        pedal,
        1e-8,
    );
    c.bound(
        5,
        "antipedal triangles of the isogonic points equilateral",
        antipedal,
        1e-8,
    );
    c.bound(5, "conjugates of J_1, J_2 are the isogonic points", conj, 1e-8);
    c.bound(5, "interior isogonic point equals the Fermat point", fermat, 1e-8);
    Ok(())
}

/// `P # Z*` from its definition: the Σ-pole of the polar hyperplane of `Z*`
/// in the sphere of radius `r` about `P`.
fn correspondent_by_poles(
    model: &SimplexModel,
    p: &BarycentricPoint,
    zstar: &DVector<f64>,
    r: f64,
) -> Option<BarycentricPoint> {
    let x = model.bary_to_cart(p).ok()?;
    let n = zstar - &x;
    let offset = r * r + n.dot(&x);
    let h = Hyperplane::from_cartesian(n, offset, model).ok()?;
    BarycentricPoint::homogeneous(h.bary_coeffs().iter().map(|c| 1.0 / c).collect()).ok()
}

fn section_structure(c: &mut Checker) -> Result<(), CliError> {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut harmonic, mut ortho, mut orthology, mut g_star, mut p_star, mut pedal_back) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 0..100 {
        let n = 2 + k % 3;
        let m = random_simplex(&mut rng, n);
        let coords: Vec<f64> = loop {
            let v: Vec<f64> = (0..=n)
                .map(|_| {
                    let x = rng.gen_range(0.15..1.0);
                    if rng.gen_bool(0.2) {
                        -x
                    } else {
                        x
                    }
                })
                .collect();
            if v.iter().sum::<f64>() > 0.3 {
                break v;
            }
        };
        let p = BarycentricPoint::normalized(coords)?;
        let x = m.bary_to_cart(&p)?;

        let circ = m.circumsphere();
        for s in apollonian_spheres(&p, &m)? {
            let (ai, aj) = (m.vertex(s.i), m.vertex(s.j));
            let dir = aj - ai;
            let t = |q: &BarycentricPoint| -> Result<f64, CliError> {
                let y = m.bary_to_cart(&q.normalize()?)?;
                Ok((y - ai).dot(&dir) / dir.norm_squared())
            };
            harmonic = harmonic.max((cross_ratio(0.0, 1.0, t(&s.inner)?, t(&s.outer)?) + 1.0).abs());
            if !s.is_degenerate() {
                let d2 = (&s.sphere.center - &circ.center).norm_squared();
                let want = circ.radius.powi(2) + s.sphere.radius.powi(2);
                ortho = ortho.max((d2 - want).abs() / want);
            }
        }

        let polar = polar_simplex(&p, 1.0, &m)?;
        if let Some(ps) = &polar.simplex {
            let q = ps.cart_to_bary(&x)?;
            orthology = orthology.max(q.max_abs_diff(&p)? / p.max_abs().max(1.0));
            let gstar = polar.centroid();
            if let Some(geo) = correspondent_by_poles(&m, &p, &gstar, 1.0) {
                g_star = g_star.max(geo.max_abs_diff(&p)? / p.max_abs().max(1.0));
            }
            // P has the same coordinates with respect to the polar simplex
            let formula = z_correspondent(&p, &q)?;
            p_star = p_star.max(formula.max_abs_diff(&BarycentricPoint::centroid(n + 1))?);
        } else {
            orthology = f64::INFINITY;
        }

        if p.coords().iter().all(|v| *v > 0.0) {
            let ap = antipedal_simplex(&p, &m)?;
            if let Some(outer) = &ap.simplex {
                let back = pedal_simplex(&outer.cart_to_bary(&x)?, outer)?;
                for (i, foot) in back.points.iter().enumerate() {
                    pedal_back = pedal_back.max((foot - m.vertex(i)).norm() / m.diameter());
                }
            }
        }
    }
    c.bound(6, "cross-ratio (A_i, A_j; P_ij, P_ij*) + 1", harmonic, 1e-9);
    c.bound(
        6,
        "Apollonian spheres orthogonal to the circumsphere (relative)",
        ortho,
        1e-8,
    );
    c.bound(
        6,
        "coordinates of P agree for the simplex and its polar simplex",
        orthology,
        1e-10,
    );
    c.bound(6, "P # G* = P from the pole construction", g_star, 1e-12);
    c.bound(6, "P # P* = G", p_star, 1e-12);
    c.bound(
        6,
        "pedal simplex of P in its antipedal simplex is the simplex (relative)",
        pedal_back,
        1e-8,
    );

    let mut rng = StdRng::seed_from_u64(7);
    let mut agree = 0;
    let mut total = 0;
    while total < 50 {
        let m = random_simplex(&mut rng, 2);
        let a: Vec<f64> = (0..3).map(|_| rng.gen_range(0.3..3.0)).collect();
        let circle = |i: usize, j: usize| {
            // points X with |X A_i| / |X A_j| = a_j / a_i
            let k2 = (a[j] / a[i]).powi(2);
            let center = (m.vertex(i) - m.vertex(j) * k2) / (1.0 - k2);
            let radius = (a[j] / a[i]) * (m.vertex(i) - m.vertex(j)).norm() / (1.0 - k2).abs();
            (center, radius)
        };
        let (c1, r1) = circle(0, 1);
        let (c2, r2) = circle(0, 2);
        let d = (c1 - c2).norm();
        let margin = (d - (r1 - r2).abs()).min(r1 + r2 - d);
        if margin.abs() < 1e-6 * (r1 + r2) {
            continue;
        }
        let e = m.edges();
        let v = yiu_triangle_test(e.get(1, 2), e.get(0, 2), e.get(0, 1), a[0], a[1], a[2])?;
        total += 1;
        if v.circles_meet() == (margin >= 0.0) {
            agree += 1;
        }
    }
    c.flag(
        6,
        "witness verdict agrees with direct circle intersection",
        "50/50",
        format!("{agree}/{total}"),
        agree == total,
    );
    Ok(())
}

/// Runs every check. `tolerance` replaces the numeric tolerance of every
/// comparison row; exact and pass/fail rows are unaffected.
pub fn cmd_verify_paper(tolerance: Option<f64>) -> Result<CenterReport, CliError> {
    let five = parsed(builtin::five_point_tetrahedron())?;
    let disjoint = parsed(builtin::disjoint_apollonian_tetrahedron())?;
    let mut c = Checker {
        rows: vec![],
        tolerance,
    };
    section_isogonic(&mut c, &five)?;
    section_isodynamic(&mut c, &five)?;
    section_disjoint(&mut c, &disjoint)?;
    section_fermat(&mut c, &five)?;
    section_triangles(&mut c)?;
    section_structure(&mut c)?;

    let mut report = CenterReport::new("verify-paper", None);
    let failed: Vec<&CheckRow> = c.rows.iter().filter(|r| !r.pass).collect();
    report.value("checks", c.rows.len() as f64, None);
    report.value("failures", failed.len() as f64, None);
    for r in &failed {
        report.notes.push(format!(
            "FAIL [{}] {}: expected {}, computed {}",
            r.section, r.check, r.expected, r.computed
        ));
    }
    report.tables.push(Table {
        title: "checks".into(),
        columns: [
            "section",
            "check",
            "expected",
            "computed",
            "deviation",
            "tolerance",
            "result",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        rows: c
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.section.to_string(),
                    r.check.clone(),
                    r.expected.clone(),
                    r.computed.clone(),
                    format!("{:.3e}", r.deviation),
                    r.tolerance.map_or("-".into(), |t| format!("{t:e}")),
                    if r.pass { "pass".into() } else { "FAIL".into() },
                ]
            })
            .collect(),
    });
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(CliError::VerifyFailed(Box::new(report)))
    }
}
