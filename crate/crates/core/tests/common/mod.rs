#![allow(dead_code)]

use nalgebra::DVector;
use proptest::prelude::*;
use simplex_centers::{BarycentricPoint, SimplexModel};

/// Smallest vertex-to-opposite-facet height divided by the diameter.
pub fn thickness(m: &SimplexModel) -> f64 {
    let n = m.dim() as f64;
    m.facet_volumes()
        .iter()
        .map(|a| n * m.volume() / a)
        .fold(f64::INFINITY, f64::min)
        / m.diameter()
}

/// Random reasonably shaped simplex of dimension `n`.
pub fn simplex(n: usize) -> impl Strategy<Value = SimplexModel> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), n + 1).prop_filter_map("flat simplex", |pts| {
        let m = SimplexModel::from_vertices(pts).ok()?;
        (thickness(&m) > 0.08).then_some(m)
    })
}

pub fn any_simplex() -> impl Strategy<Value = SimplexModel> {
    (2usize..=4).prop_flat_map(simplex)
}

/// Coordinates bounded away from zero, of either sign, summing away from zero.
pub fn signed_coords(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0.15f64..1.0, prop::bool::weighted(0.2)), len)
        .prop_map(|v| {
            v.into_iter()
                .map(|(x, neg)| if neg { -x } else { x })
                .collect::<Vec<_>>()
        })
        .prop_filter("near infinity", |v: &Vec<f64>| v.iter().sum::<f64>() > 0.3)
}

pub fn positive_coords(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.1f64..1.0, len)
}

pub fn simplex_and_point(signed: bool) -> impl Strategy<Value = (SimplexModel, BarycentricPoint)> {
    any_simplex().prop_flat_map(move |m| {
        let len = m.vertex_count();
        let coords = if signed {
            signed_coords(len).boxed()
        } else {
            positive_coords(len).boxed()
        };
        (Just(m), coords.prop_map(|c| BarycentricPoint::normalized(c).unwrap()))
    })
}

pub fn max_diff(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    (a - b).amax()
}

pub fn five_point() -> SimplexModel {
    SimplexModel::from_vertices(vec![
        vec![0.0, 0.0, 0.0],
        vec![6.0, 0.0, 0.0],
        vec![0.0, 8.0, 0.0],
        vec![2.0, 2.0, 6.0],
    ])
    .unwrap()
}

/// Interior angles of the triangle with sides `(a, b, c)` opposite `A_1, A_2, A_3`.
pub fn angles(s: [f64; 3]) -> [f64; 3] {
    let ang = |x: f64, y: f64, z: f64| ((y * y + z * z - x * x) / (2.0 * y * z)).acos();
    [ang(s[0], s[1], s[2]), ang(s[1], s[0], s[2]), ang(s[2], s[0], s[1])]
}

pub fn sides(m: &SimplexModel) -> [f64; 3] {
    let e = m.edges();
    [e.get(1, 2), e.get(0, 2), e.get(0, 1)]
}
