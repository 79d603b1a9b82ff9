mod common;

use common::*;
use proptest::prelude::*;
use simplex_centers::apollonian::cross_ratio;
use simplex_centers::fermat::total_distance_gradient;
use simplex_centers::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn cartesian_round_trip((m, p) in simplex_and_point(true)) {
        let x = m.bary_to_cart(&p).unwrap();
        let q = m.cart_to_bary(&x).unwrap();
        prop_assert!(q.max_abs_diff(&p).unwrap() < 1e-12);
    }

    #[test]
    fn distance_formula_matches_embedding((m, p) in simplex_and_point(true), q in positive_coords(5)) {
        let q = BarycentricPoint::normalized(q[..m.vertex_count()].to_vec()).unwrap();
        let d = (m.bary_to_cart(&p).unwrap() - m.bary_to_cart(&q).unwrap()).norm_squared();
        let got = m.squared_distance(&p, &q).unwrap();
        prop_assert!((got - d).abs() <= 1e-10 * m.diameter().powi(2));
    }

    #[test]
    fn edge_embedding_reproduces_lengths(m in any_simplex()) {
        let again = SimplexModel::from_edge_lengths(m.edges()).unwrap();
        for (a, b) in m.facet_volumes().iter().zip(again.facet_volumes()) {
            prop_assert!((a - b).abs() <= 1e-9 * a);
        }
        let k = again.vertex_count();
        for i in 0..k {
            for j in i + 1..k {
                let d = (again.vertex(i) - again.vertex(j)).norm();
                prop_assert!((d - m.edges().get(i, j)).abs() <= 1e-10 * m.diameter());
            }
        }
    }

    #[test]
    fn harmonic_division((m, p) in simplex_and_point(true)) {
        for s in apollonian_spheres(&p, &m).unwrap() {
            prop_assert!((s.cross_ratio() + 1.0).abs() < 1e-12);
            // the same on the edge itself, as line parameters
            let t = |q: &BarycentricPoint| {
                let c = q.normalize().unwrap();
                c.coords()[s.j]
            };
            let cr = cross_ratio(0.0, 1.0, t(&s.inner), t(&s.outer));
            prop_assert!((cr + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn apollonian_spheres_are_orthogonal_to_circumsphere((m, p) in simplex_and_point(true)) {
        let circ = m.circumsphere();
        for s in apollonian_spheres(&p, &m).unwrap() {
            if s.is_degenerate() {
                // bisector plane passes through the circumcenter
                let h = s.sphere.degenerate_hyperplane.as_ref().unwrap();
                prop_assert!(h.signed_distance(&circ.center).abs() <= 1e-10 * circ.radius);
                continue;
            }
            let d2 = (&s.sphere.center - &circ.center).norm_squared();
            let want = circ.radius.powi(2) + s.sphere.radius.powi(2);
            prop_assert!((d2 - want).abs() <= 1e-8 * want);
            // membership of the division points
            for q in [&s.inner, &s.outer] {
                let x = m.bary_to_cart(&q.normalize().unwrap()).unwrap();
                prop_assert!(s.sphere.signed_residual(&x).abs() <= 1e-9 * s.sphere.radius.max(m.diameter()));
            }
        }
    }

    #[test]
    fn isodynamic_points_lie_on_every_sphere((m, p) in simplex_and_point(false)) {
        let res = isodynamic_points(&p, &m).unwrap();
        for r in &res.residuals {
            prop_assert!(*r <= 1e-8);
        }
        if res.points.len() == 2 {
            // the two points are inverse in the circumsphere
            let circ = m.circumsphere();
            let a = (&res.cartesian[0] - &circ.center).norm();
            let b = (&res.cartesian[1] - &circ.center).norm();
            prop_assert!((a * b / circ.radius.powi(2) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn polar_simplex_orthology((m, p) in simplex_and_point(true), r in 0.2f64..3.0) {
        let polar = polar_simplex(&p, r, &m).unwrap();
        let ps = polar.simplex.as_ref().unwrap();
        let x = m.bary_to_cart(&p).unwrap();
        let q = ps.cart_to_bary(&x).unwrap();
        prop_assert!(q.max_abs_diff(&p).unwrap() <= 1e-10 * p.max_abs().max(1.0));
        // each polar vertex lies on the perpendicular from P to the opposite sideplane
        for i in 0..m.vertex_count() {
            let h = m.facet_hyperplane(i);
            let v = &polar.points[i] - &x;
            let cos = v.dot(h.normal()).abs() / v.norm();
            prop_assert!((cos - 1.0).abs() < 1e-10);
            prop_assert!((v.norm() * h.signed_distance(&x).abs() - r * r).abs() < 1e-9 * r * r);
        }
    }

    #[test]
    fn correspondence_identities((m, p) in simplex_and_point(true)) {
        let g = BarycentricPoint::centroid(m.vertex_count());
        prop_assert!(z_correspondent(&p, &g).unwrap().max_abs_diff(&p).unwrap() < 1e-12);
        prop_assert!(z_correspondent(&p, &p).unwrap().max_abs_diff(&g).unwrap() < 1e-12);
    }

    #[test]
    fn correspondence_is_the_pole_of_the_polar_plane(
        (m, p) in simplex_and_point(true),
        z in positive_coords(5),
        r in 0.3f64..3.0,
    ) {
        let z = BarycentricPoint::normalized(z[..m.vertex_count()].to_vec()).unwrap();
        let polar = polar_simplex(&p, r, &m).unwrap();
        let ps = polar.simplex.as_ref().unwrap();
        let x = m.bary_to_cart(&p).unwrap();
        let zc = ps.bary_to_cart(&z).unwrap();
        prop_assume!((&zc - &x).norm() > 1e-3 * m.diameter());
        // polar hyperplane of Z* in the sphere of radius r about P
        let n = &zc - &x;
        let offset = r * r + n.dot(&x);
        let h = Hyperplane::from_cartesian(n, offset, &m).unwrap();
        prop_assume!(h.bary_coeffs().iter().all(|c| c.abs() > 1e-6));
        let pole = BarycentricPoint::homogeneous(h.bary_coeffs().iter().map(|c| 1.0 / c).collect()).unwrap();
        let want = z_correspondent(&p, &z).unwrap();
        let scale = want.normalize().unwrap().max_abs().max(1.0);
        prop_assert!(pole.max_abs_diff(&want).unwrap() <= 1e-8 * scale);
    }

    #[test]
    fn pedal_of_antipedal_is_the_simplex((m, p) in simplex_and_point(false)) {
        let x = m.bary_to_cart(&p).unwrap();
        let ap = antipedal_simplex(&p, &m).unwrap();
        let outer = ap.simplex.as_ref().unwrap();
        let back = pedal_simplex(&outer.cart_to_bary(&x).unwrap(), outer).unwrap();
        for (i, foot) in back.points.iter().enumerate() {
            prop_assert!(max_diff(foot, m.vertex(i)) <= 1e-8 * m.diameter());
        }
    }

    #[test]
    fn conjugation_is_an_involution((m, p) in simplex_and_point(true)) {
        let c = isogonal_conjugate(&isogonal_conjugate(&p, &m).unwrap(), &m).unwrap();
        prop_assert!(c.max_abs_diff(&p).unwrap() <= 1e-12 * p.max_abs().max(1.0));
    }

    #[test]
    fn q_step_never_increases_total_distance((m, p) in simplex_and_point(false)) {
        let next = weiszfeld_step_q(&p, &m).unwrap();
        let before = total_distance(&p, &m).unwrap();
        let after = total_distance(&next, &m).unwrap();
        prop_assert!(after <= before + 1e-12 * before);
    }

    #[test]
    fn weiszfeld_limit_is_stationary((m, p) in simplex_and_point(false)) {
        let sol = fermat_point(&m, &p, WeiszfeldMethod::Q, FermatOptions::default()).unwrap();
        prop_assert!(sol.converged());
        if sol.vertex_optimum.is_none() {
            let x = m.bary_to_cart(&sol.point).unwrap();
            prop_assert!(total_distance_gradient(&m, &x).norm() <= 1e-7);
        }
    }

    #[test]
    fn regular_simplex_center_is_fixed(n in 2usize..=5, side in 0.5f64..4.0) {
        let k = n * (n + 1) / 2;
        let m = SimplexModel::from_edge_lengths(&EdgeLengthTable::from_pairs(n, &vec![side; k]).unwrap()).unwrap();
        let g = BarycentricPoint::centroid(n + 1);
        let c = m.classical_centers();
        for q in [&c.incenter, &c.symmedian, &c.circumcenter] {
            prop_assert!(q.normalize().unwrap().max_abs_diff(&g).unwrap() < 1e-12);
        }
        prop_assert!(pedal_simplex(&g, &m).unwrap().equiareal_deviation() < 1e-12);
        prop_assert!(is_isogonic(&g, &m, 1e-10).unwrap().isogonic);
        let step = weiszfeld_step_r(&g, &m).unwrap();
        prop_assert!(step.max_abs_diff(&g).unwrap() < 1e-12);
    }
}
