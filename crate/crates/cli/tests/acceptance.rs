//! One line per acceptance criterion. Criteria 1-3 and 7 drive the binary;
//! 4-6 recompute with the library against independent constructions.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nalgebra::DVector;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use simplex_centers::apollonian::{cross_ratio, isodynamic_points};
use simplex_centers::fermat::total_distance_gradient;
use simplex_centers::simplex::facet_volumes_of;
use simplex_centers::{
    antipedal_simplex, apollonian_spheres, enumerate_isogonic, fermat_point, isogonal_conjugate, pedal_simplex,
    polar_simplex, yiu_triangle_test, z_correspondent, BarycentricPoint, FermatOptions, Hyperplane, SeedStrategy,
    SimplexModel, WeiszfeldMethod,
};

const L: [[f64; 4]; 5] = [
    [0.266996565955, 0.275481800939, 0.217355830792, 0.240165802314],
    [-4.180629474014, 2.569387212447, 1.602113038329, 1.009129223238],
    [1.193250865914, -1.252645952150, 0.354761022780, 0.704634063455],
    [0.713260932730, 0.358215195120, -0.616627271982, 0.545151144132],
    [0.657546390333, 0.802131717931, 0.639088262811, -1.098766371077],
];
const F: [[f64; 4]; 5] = [
    [0.369979160947, 0.229493293826, 0.163611619856, 0.236915925371],
    [-0.297000489955, 0.309278164652, 0.279002561033, 0.708719764270],
    [0.388102931405, -0.236608485604, 0.469943106828, 0.378562447371],
    [0.382915343108, 0.487963317698, -0.159452369671, 0.288573708865],
    [0.645021938255, 0.338403751068, 0.238914519123, -0.222340208446],
];
const PEDAL: [f64; 5] = [
    2.404772767371,
    122.125536031480,
    19.392997370805,
    9.848601171111,
    18.965046082427,
];
const ANTIPEDAL: [f64; 5] = [
    241.637142362610,
    60.087819904352,
    31.387257487815,
    5.647726265255,
    31.003305976553,
];
const J: [[f64; 4]; 2] = [
    [0.206439675828, 0.327649375007, 0.263085414624, 0.20282553454],
    [2.954833710960, -0.575606610593, -1.403778427224, 0.024551326857],
];

/// Collects the failed sub-claims of one criterion.
#[derive(Default)]
struct Claims {
    failed: Vec<String>,
}

impl Claims {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn within(&mut self, dev: f64, tol: f64, what: &str) {
        self.check(dev <= tol, format!("{what}: {dev:.3e} > {tol:e}"));
    }
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn simplex(args: &[&str]) -> (Option<i32>, Value, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_simplex")).args(args).output().unwrap();
    let elapsed = t.elapsed();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v, elapsed)
}

fn point(r: &Value, name: &str) -> Option<Vec<f64>> {
    let p = r["points"].as_array()?.iter().find(|p| p["name"] == name)?;
    p["normalized"].as_array()?.iter().map(|x| x.as_f64()).collect()
}

fn exact(r: &Value, name: &str) -> Vec<String> {
    r["points"]
        .as_array()
        .and_then(|a| a.iter().find(|p| p["name"] == name))
        .and_then(|p| p["exact"].as_array())
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn value(r: &Value, name: &str) -> f64 {
    r["values"]
        .as_array()
        .and_then(|a| a.iter().find(|v| v["name"] == name))
        .and_then(|v| v["value"].as_f64())
        .unwrap_or(f64::NAN)
}

fn residual(r: &Value, name: &str) -> f64 {
    r["points"]
        .as_array()
        .and_then(|a| a.iter().find(|p| p["name"] == name))
        .and_then(|p| p["residual"]["value"].as_f64())
        .unwrap_or(f64::INFINITY)
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn criterion_1() -> Claims {
    let mut c = Claims::default();
    let (code, r, t) = simplex(&["--json", "isogonic", &data("five-point.json")]);
    c.check(code == Some(0), format!("exit code {code:?}"));
    c.check(value(&r, "isogonic points") == 5.0, "catalog size is not 5");
    for k in 0..5 {
        let l = point(&r, &format!("L_{k}")).unwrap_or_default();
        c.within(max_gap(&l, &L[k]), 1e-9, &format!("L_{k}"));
        let f = point(&r, &format!("F_{k}")).unwrap_or_default();
        c.within(max_gap(&f, &F[k]), 1e-9, &format!("F_{k}"));
        let a = value(&r, &format!("pedal facet volume a_{k}"));
        c.within((a / PEDAL[k] - 1.0).abs(), 1e-6, &format!("a_{k}"));
        let a = value(&r, &format!("antipedal facet volume a~_{k}"));
        c.within((a / ANTIPEDAL[k] - 1.0).abs(), 1e-6, &format!("a~_{k}"));
    }
    c.check(t < Duration::from_secs(5), format!("runtime {t:?}"));
    c
}

fn criterion_2() -> Claims {
    let mut c = Claims::default();
    let (code, r, _) = simplex(&["--json", "isodynamic", &data("five-point.json")]);
    c.check(code == Some(0), format!("exit code {code:?}"));
    for (k, want) in J.iter().enumerate() {
        let name = format!("J_{}", k + 1);
        c.within(max_gap(&point(&r, &name).unwrap_or_default(), want), 1e-8, &name);
        c.within(residual(&r, &name), 1e-8, &format!("{name} membership residual"));
    }
    c
}

fn criterion_3() -> Claims {
    let mut c = Claims::default();
    let doc = data("disjoint-apollonian.json");
    let (code, iso, t) = simplex(&["--json", "isodynamic", &doc]);
    c.check(code == Some(0), format!("exit code {code:?}"));
    c.check(value(&iso, "isodynamic points") == 0.0, "isodynamic points found");
    let q_exact = ["3326952/4504043", "25180529/27024258", "-18117983/27024258", "0"];
    c.check(exact(&iso, "Q") == q_exact, format!("Q exact {:?}", exact(&iso, "Q")));
    let q = [
        3326952.0 / 4504043.0,
        25180529.0 / 27024258.0,
        -18117983.0 / 27024258.0,
        0.0,
    ];
    c.within(max_gap(&point(&iso, "Q").unwrap_or_default(), &q), 1e-12, "Q");
    let o = [73.0 / 210.0, 121.0 / 315.0, 169.0 / 630.0, 0.0];
    c.within(
        max_gap(&point(&iso, "O_delta").unwrap_or_default(), &o),
        1e-12,
        "O_delta",
    );
    let d2 = value(&iso, "witness squared distance d(Q, O_delta)^2");
    let r2 = value(&iso, "witness squared circumradius");
    c.check(d2 > r2, format!("d^2 = {d2} is not above R^2 = {r2}"));
    c.check(t < Duration::from_secs(1), format!("runtime {t:?}"));

    let (_, facet, _) = simplex(&["--json", "centers", &doc, "--facet", "4"]);
    c.check(
        exact(&facet, "O") == ["73/210", "121/315", "169/630", "0"],
        "O_delta exact",
    );
    let (_, centers, _) = simplex(&["--json", "centers", &doc]);
    let want = [
        6.0 * 21f64.sqrt(),
        2.25 * 403f64.sqrt(),
        2.25 * 51f64.sqrt(),
        6.0 * 105f64.sqrt(),
    ];
    for (i, w) in want.iter().enumerate() {
        let a = value(&centers, &format!("facet volume a_{}", i + 1));
        c.within((a / w - 1.0).abs(), 1e-10, &format!("facet volume a_{}", i + 1));
    }
    c
}

fn five_point() -> SimplexModel {
    SimplexModel::from_vertices(vec![
        vec![0.0, 0.0, 0.0],
        vec![6.0, 0.0, 0.0],
        vec![0.0, 8.0, 0.0],
        vec![2.0, 2.0, 6.0],
    ])
    .unwrap()
}

fn criterion_4() -> Claims {
    let mut c = Claims::default();
    let m = five_point();
    let mut rng = StdRng::seed_from_u64(41);
    let sum = |y: &DVector<f64>| m.vertices().iter().map(|a| (a - y).norm()).sum::<f64>();
    for run in 0..10 {
        let start = BarycentricPoint::normalized((0..4).map(|_| rng.gen_range(0.05..1.0)).collect()).unwrap();
        for method in [WeiszfeldMethod::Q, WeiszfeldMethod::R] {
            let tag = format!("{} run {run}", method.name());
            let sol = fermat_point(&m, &start, method, FermatOptions::default()).unwrap();
            c.check(sol.converged(), format!("{tag} did not converge"));
            c.within(max_gap(&sol.point.normalized_coords().unwrap(), &F[0]), 1e-9, &tag);
            let x = m.bary_to_cart(&sol.point).unwrap();
            // gradient from the definition, then by central differences
            let g: DVector<f64> = m.vertices().iter().map(|a| (&x - a) / (&x - a).norm()).sum();
            c.within(g.norm(), 1e-7, &format!("{tag} gradient"));
            c.within(
                (total_distance_gradient(&m, &x) - &g).norm(),
                1e-12,
                &format!("{tag} library gradient"),
            );
            let h = 1e-6;
            for k in 0..3 {
                let mut e = DVector::zeros(3);
                e[k] = h;
                let fd = (sum(&(&x + &e)) - sum(&(&x - &e))) / (2.0 * h);
                c.within((fd - g[k]).abs(), 1e-5, &format!("{tag} finite difference"));
            }
            if method == WeiszfeldMethod::Q {
                for w in sol.trace.objective_values.windows(2) {
                    c.within((w[1] - w[0]) / w[0], 1e-12, &format!("{tag} rise"));
                }
            }
        }
    }
    c
}

fn random_model(rng: &mut StdRng, n: usize) -> SimplexModel {
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

fn spread(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / (v.iter().sum::<f64>() / v.len() as f64)
}

/// Literal failures of "exactly one J interior", and whether each one is a
/// triangle with an angle above 120 degrees.
struct InteriorTally {
    literal_failures: usize,
    explained: usize,
}

fn criterion_5() -> (Claims, InteriorTally) {
    let mut c = Claims::default();
    let mut tally = InteriorTally {
        literal_failures: 0,
        explained: 0,
    };
    let mut rng = StdRng::seed_from_u64(51);
    let t = Instant::now();
    for n in 0..100 {
        let m = random_model(&mut rng, 2);
        let e = m.edges();
        let a = [e.get(1, 2), e.get(0, 2), e.get(0, 1)];
        let angle = |i: usize| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            ((a[j] * a[j] + a[k] * a[k] - a[i] * a[i]) / (2.0 * a[j] * a[k])).acos()
        };
        let angles = [angle(0), angle(1), angle(2)];
        let third = std::f64::consts::FRAC_PI_3;
        let classical = |s: f64| {
            BarycentricPoint::homogeneous((0..3).map(|i| a[i] * (angles[i] + s * third).sin()).collect()).unwrap()
        };
        let res = isodynamic_points(&m.classical_centers().incenter, &m).unwrap();
        c.check(
            res.points.len() == 2,
            format!("triangle {n}: {} isodynamic points", res.points.len()),
        );
        if res.points.len() != 2 {
            continue;
        }
        for want in [classical(1.0), classical(-1.0)] {
            let best = res
                .points
                .iter()
                .map(|p| p.max_abs_diff(&want).unwrap())
                .fold(f64::INFINITY, f64::min);
            let scale = want.normalize().unwrap().max_abs().max(1.0);
            c.within(best / scale, 1e-8, &format!("triangle {n}: classical isodynamic point"));
        }
        let circ = m.circumsphere();
        let o = circ.center.clone();
        let k = m.bary_to_cart(&m.classical_centers().symmedian).unwrap();
        let u = &k - &o;
        let param = |x: &DVector<f64>| (x - &o).dot(&u) / u.norm_squared();
        for x in &res.cartesian {
            let off = (x - &o) - &u * param(x);
            c.within(
                off.norm() / (x - &o).norm().max(m.diameter()),
                1e-9,
                &format!("triangle {n}: line O K"),
            );
            let d = m.vertex_distances(x);
            c.within(
                spread(&[d[0] * a[0], d[1] * a[1], d[2] * a[2]]),
                1e-8,
                &format!("triangle {n}: products"),
            );
        }
        let cr = cross_ratio(0.0, 1.0, param(&res.cartesian[0]), param(&res.cartesian[1]));
        c.within((cr + 1.0).abs(), 1e-7, &format!("triangle {n}: harmonic range"));

        let interior = res
            .points
            .iter()
            .filter(|p| p.normalized_coords().unwrap().iter().all(|v| *v > 0.0))
            .count();
        if interior != 1 {
            tally.literal_failures += 1;
            let wide = angles.iter().any(|&x| x > 2.0 * third);
            let in_circle = res.cartesian.iter().filter(|x| (*x - &o).norm() < circ.radius).count();
            if wide && in_circle == 1 && interior == 0 {
                tally.explained += 1;
            }
        }

        for p in &res.points {
            let feet = pedal_simplex(p, &m).unwrap();
            c.within(
                spread(&facet_volumes_of(&feet.points)),
                1e-8,
                &format!("triangle {n}: pedal"),
            );
        }
        let cat = enumerate_isogonic(&m, &SeedStrategy::default(), 20_000);
        c.check(cat.len() == 2, format!("triangle {n}: {} isogonic points", cat.len()));
        let fs = cat.isogonic_points();
        for f in &fs {
            let ap = antipedal_simplex(f, &m).unwrap();
            c.within(
                spread(&facet_volumes_of(&ap.points)),
                1e-8,
                &format!("triangle {n}: antipedal"),
            );
        }
        for j in &res.points {
            let g = isogonal_conjugate(j, &m).unwrap();
            let scale = g.normalize().map(|p| p.max_abs()).unwrap_or(1.0).max(1.0);
            let best = fs
                .iter()
                .map(|f| g.max_abs_diff(f).unwrap())
                .fold(f64::INFINITY, f64::min);
            c.within(best / scale, 1e-8, &format!("triangle {n}: conjugate"));
        }
    }
    c.check(
        t.elapsed() < Duration::from_secs(10),
        format!("runtime {:?}", t.elapsed()),
    );
    (c, tally)
}

fn criterion_6() -> Claims {
    let mut c = Claims::default();
    let mut rng = StdRng::seed_from_u64(61);
    for k in 0..100 {
        let n = 2 + k % 3;
        let m = random_model(&mut rng, n);
        let coords: Vec<f64> = loop {
            let v: Vec<f64> = (0..=n)
                .map(|_| rng.gen_range(0.15..1.0) * if rng.gen_bool(0.2) { -1.0 } else { 1.0 })
                .collect();
            if v.iter().sum::<f64>() > 0.3 {
                break v;
            }
        };
        let p = BarycentricPoint::normalized(coords).unwrap();
        let x = m.bary_to_cart(&p).unwrap();
        let circ = m.circumsphere();
        for s in apollonian_spheres(&p, &m).unwrap() {
            let (ai, aj) = (m.vertex(s.i), m.vertex(s.j));
            let t = |q: &BarycentricPoint| {
                let y = m.bary_to_cart(&q.normalize().unwrap()).unwrap();
                (y - ai).dot(&(aj - ai)) / (aj - ai).norm_squared()
            };
            c.within(
                (cross_ratio(0.0, 1.0, t(&s.inner), t(&s.outer)) + 1.0).abs(),
                1e-9,
                "harmonic range",
            );
            if !s.is_degenerate() {
                // orthogonal spheres: the tangent length from the center equals the radius
                let d2 = (&s.sphere.center - &circ.center).norm_squared();
                let want = circ.radius.powi(2) + s.sphere.radius.powi(2);
                c.within((d2 - want).abs() / want, 1e-8, "orthogonality");
            }
        }
        let polar = polar_simplex(&p, 1.0, &m).unwrap();
        let Some(ps) = &polar.simplex else {
            c.check(false, "degenerate polar simplex");
            continue;
        };
        let q = ps.cart_to_bary(&x).unwrap();
        let scale = p.max_abs().max(1.0);
        c.within(q.max_abs_diff(&p).unwrap() / scale, 1e-10, "orthology");
        // P # G* through the pole of the polar hyperplane of G* in the unit sphere at P
        let gstar = polar.centroid();
        let normal = &gstar - &x;
        let offset = 1.0 + normal.dot(&x);
        let h = Hyperplane::from_cartesian(normal, offset, &m).unwrap();
        let pole = BarycentricPoint::homogeneous(h.bary_coeffs().iter().map(|v| 1.0 / v).collect()).unwrap();
        c.within(pole.max_abs_diff(&p).unwrap() / scale, 1e-12, "P # G* = P");
        let g = z_correspondent(&p, &q).unwrap();
        c.within(
            g.max_abs_diff(&BarycentricPoint::centroid(n + 1)).unwrap(),
            1e-12,
            "P # P* = G",
        );

        if p.coords().iter().all(|v| *v > 0.0) {
            let ap = antipedal_simplex(&p, &m).unwrap();
            if let Some(outer) = &ap.simplex {
                let back = pedal_simplex(&outer.cart_to_bary(&x).unwrap(), outer).unwrap();
                for (i, foot) in back.points.iter().enumerate() {
                    c.within((foot - m.vertex(i)).norm() / m.diameter(), 1e-8, "pedal of antipedal");
                }
            }
        }
    }

    let mut tested = 0;
    while tested < 50 {
        let m = random_model(&mut rng, 2);
        let w: Vec<f64> = (0..3).map(|_| rng.gen_range(0.3..3.0)).collect();
        // circle of X with |X A_i| w_i = |X A_j| w_j, sampled as a polygon
        let locus = |i: usize, j: usize| {
            let k2 = (w[j] / w[i]).powi(2);
            let center = (m.vertex(i) - m.vertex(j) * k2) / (1.0 - k2);
            let radius = (w[j] / w[i]) * (m.vertex(i) - m.vertex(j)).norm() / (1.0 - k2).abs();
            (center, radius)
        };
        let (c1, r1) = locus(0, 1);
        let (c2, r2) = locus(0, 2);
        let d = (&c1 - &c2).norm();
        let margin = (d - (r1 - r2).abs()).min(r1 + r2 - d);
        if margin.abs() < 1e-6 * (r1 + r2) {
            continue;
        }
        let e = m.edges();
        let v = yiu_triangle_test(e.get(1, 2), e.get(0, 2), e.get(0, 1), w[0], w[1], w[2]).unwrap();
        c.check(
            v.circles_meet() == (margin >= 0.0),
            format!("witness verdict on instance {tested}"),
        );
        tested += 1;
    }
    c
}

fn criterion_7() -> Claims {
    let mut c = Claims::default();
    let (code, r, _) = simplex(&["--json", "verify-paper"]);
    c.check(code == Some(0), format!("exit code {code:?}"));
    let rows = r["tables"][0]["rows"].as_array().cloned().unwrap_or_default();
    c.check(rows.len() >= 30, format!("{} rows", rows.len()));
    for section in 1..=6 {
        let s = section.to_string();
        c.check(
            rows.iter().any(|row| row[0] == s.as_str()),
            format!("no rows for criterion {section}"),
        );
    }
    c.check(rows.iter().all(|row| row[6] == "pass"), "failed rows");
    let (code, _, _) = simplex(&["--json", "--tolerance", "1e-15", "verify-paper"]);
    c.check(code == Some(1), "a 1e-15 tolerance should fail the 12-decimal rows");
    c
}

fn line(n: u8, c: &Claims) -> bool {
    if c.failed.is_empty() {
        println!("criterion {n}: PASS");
        true
    } else {
        println!("criterion {n}: FAIL ({} sub-claims)", c.failed.len());
        for f in c.failed.iter().take(10) {
            println!("    {f}");
        }
        false
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= line(1, &criterion_1());
    ok &= line(2, &criterion_2());
    ok &= line(3, &criterion_3());
    ok &= line(4, &criterion_4());

    let (c5, tally) = criterion_5();
    if c5.failed.is_empty() && tally.literal_failures == 0 {
        println!("criterion 5: PASS");
    } else if c5.failed.is_empty() && tally.literal_failures == tally.explained {
        // every other sub-claim holds; the inside/outside split does not hold as stated
        println!(
            "criterion 5: FAIL (\"exactly one J interior\" is false for {}/100 triangles, each with an angle above \
             120 degrees where both isodynamic points lie outside; all other sub-claims pass)",
            tally.literal_failures
        );
    } else {
        ok &= line(5, &c5);
        if tally.literal_failures != tally.explained {
            println!(
                "    {} unexplained interior failures",
                tally.literal_failures - tally.explained
            );
            ok = false;
        }
    }

    ok &= line(6, &criterion_6());
    ok &= line(7, &criterion_7());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
