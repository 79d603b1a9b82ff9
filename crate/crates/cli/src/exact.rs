//! Exact rational arithmetic for quantities that are rational in the squared
//! edge lengths: squared facet volumes, circumcenters, symmedians and the
//! outside-circumcircle witness for Apollonian circles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Parses `"3"`, `"-1.25"`, `"2.5e-3"` or `"p/q"` (each part a decimal) exactly.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal(p)?;
        let q = parse_decimal(q)?;
        if q.is_zero() {
            return Err(format!("zero denominator in \"{s}\""));
        }
        return Ok(p / q);
    }
    parse_decimal(s)
}

fn parse_decimal(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    let bad = || format!("not a number: \"{s}\"");
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    if exp.abs() > 400 {
        return Err(format!("exponent out of range in \"{s}\""));
    }
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if (int.is_empty() && frac.is_empty()) || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let pow = BigInt::from(10).pow(scale.unsigned_abs());
    let r = if scale >= 0 {
        Rational::from_integer(n * pow)
    } else {
        Rational::new(n, pow)
    };
    Ok(if neg { -r } else { r })
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q`, or `p` for integers.
pub fn render(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders `sqrt(r)` as `c*sqrt(k)` with `c` rational and `k` square-free
/// when the numbers are small enough to factor; `None` otherwise.
pub fn render_sqrt(r: &Rational) -> Option<String> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some("0".into());
    }
    // sqrt(p/q) = sqrt(p q) / q
    let pq = (r.numer() * r.denom()).to_u64()?;
    let q = r.denom().clone();
    let (outside, inside) = split_square(pq)?;
    let coeff = Rational::new(BigInt::from(outside), q);
    if inside == 1 {
        return Some(render(&coeff));
    }
    Some(if coeff.is_one() {
        format!("sqrt({inside})")
    } else {
        format!("{}*sqrt({inside})", render(&coeff))
    })
}

/// `n = a^2 b` with `b` square-free, by trial division.
fn split_square(mut n: u64) -> Option<(u64, u64)> {
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut f = 2u64;
    let mut steps = 0u32;
    while f.saturating_mul(f) <= n {
        steps += 1;
        if steps > 2_000_000 {
            return None;
        }
        let mut e = 0;
        while n.is_multiple_of(f) {
            n /= f;
            e += 1;
        }
        outside *= f.pow(e / 2);
        if e % 2 == 1 {
            inside *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    Some((outside, inside * n))
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Solves `a x = b`; `None` for singular systems.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        b.swap(piv, col);
        let p = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Squared edge lengths of a simplex, exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTable {
    pub sq: Vec<Vec<Rational>>,
}

impl ExactTable {
    pub fn vertex_count(&self) -> usize {
        self.sq.len()
    }

    pub fn sub_table(&self, keep: &[usize]) -> ExactTable {
        ExactTable {
            sq: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.sq[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Squared k-volume of the sub-simplex on `subset` (Cayley-Menger).
    pub fn squared_volume(&self, subset: &[usize]) -> Rational {
        let m = subset.len();
        let k = m - 1;
        let mut cm = vec![vec![Rational::zero(); m + 1]; m + 1];
        for i in 0..m {
            cm[0][i + 1] = Rational::one();
            cm[i + 1][0] = Rational::one();
            for j in 0..m {
                cm[i + 1][j + 1] = self.sq[subset[i]][subset[j]].clone();
            }
        }
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        let denom = BigInt::from(2).pow(k as u32) * &fact * &fact;
        let sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
        determinant(cm) * Rational::new(BigInt::from(sign), denom)
    }

    /// Squared facet volumes `a_i^2`, facet `i` opposite vertex `i`.
    pub fn squared_facet_volumes(&self) -> Vec<Rational> {
        let m = self.vertex_count();
        (0..m)
            .map(|i| {
                let facet: Vec<usize> = (0..m).filter(|&j| j != i).collect();
                self.squared_volume(&facet)
            })
            .collect()
    }

    /// Normalized barycentric coordinates of the circumcenter.
    pub fn circumcenter(&self) -> Option<Vec<Rational>> {
        // [0 1^T; 1 D] [-c; lambda] = [1; 0] with D the squared-distance matrix
        let m = self.vertex_count();
        let mut a = vec![vec![Rational::zero(); m + 1]; m + 1];
        for i in 0..m {
            a[0][i + 1] = Rational::one();
            a[i + 1][0] = Rational::one();
            for j in 0..m {
                a[i + 1][j + 1] = self.sq[i][j].clone();
            }
        }
        let mut b = vec![Rational::zero(); m + 1];
        b[0] = Rational::one();
        let x = solve(a, b)?;
        Some(x[1..].to_vec())
    }

    /// Squared circumradius.
    pub fn circumradius_sq(&self) -> Option<Rational> {
        let lambda = self.circumcenter()?;
        // |O - A_0|^2 = sum_j lambda_j D_0j - 1/2 lambda^T D lambda
        let m = self.vertex_count();
        let mut quad = Rational::zero();
        for i in 0..m {
            for j in 0..m {
                quad += &lambda[i] * &lambda[j] * &self.sq[i][j];
            }
        }
        let lin: Rational = (0..m).map(|j| &lambda[j] * &self.sq[0][j]).sum();
        Some(lin - quad / Rational::from_integer(BigInt::from(2)))
    }

    /// Squared distance between two normalized barycentric points.
    pub fn squared_distance(&self, p: &[Rational], q: &[Rational]) -> Rational {
        let m = self.vertex_count();
        let mut s = Rational::zero();
        for i in 0..m {
            for j in i + 1..m {
                s -= &self.sq[i][j] * (&p[i] - &q[i]) * (&p[j] - &q[j]);
            }
        }
        s
    }
}

pub fn normalize(v: &[Rational]) -> Option<Vec<Rational>> {
    let s: Rational = v.iter().sum();
    if s.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &s).collect())
}

/// The witness point for the Apollonian circles of a triangle with squared
/// sides `(d23^2, d13^2, d12^2)` and squared weights `a_i^2`, normalized.
pub fn yiu_witness(s: [&Rational; 3], w: [&Rational; 3]) -> Option<Vec<Rational>> {
    let t: Vec<Rational> = (0..3).map(|i| s[i] / w[i]).collect();
    let q = [
        s[0] * (&t[0] - &t[1] - &t[2]),
        s[1] * (&t[1] - &t[2] - &t[0]),
        s[2] * (&t[2] - &t[0] - &t[1]),
    ];
    normalize(&q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(r("3"), Rational::from_integer(3.into()));
        assert_eq!(r("-1.25"), Rational::new((-5).into(), 4.into()));
        assert_eq!(r("2.5e-3"), Rational::new(1.into(), 400.into()));
        assert_eq!(r("1e2"), Rational::from_integer(100.into()));
        assert_eq!(r("73/210"), Rational::new(73.into(), 210.into()));
        assert_eq!(r(" .5 / 2 "), Rational::new(1.into(), 4.into()));
        assert_eq!(r("0.1"), Rational::new(1.into(), 10.into()));
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e", "1e999"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&r("6/4")), "3/2");
        assert_eq!(render(&r("-7")), "-7");
        assert_eq!(render_sqrt(&r("756")).unwrap(), "6*sqrt(21)");
        assert_eq!(render_sqrt(&r("32643/16")).unwrap(), "9/4*sqrt(403)");
        assert_eq!(render_sqrt(&r("576")).unwrap(), "24");
        assert_eq!(render_sqrt(&r("2")).unwrap(), "sqrt(2)");
        assert!(render_sqrt(&r("-1")).is_none());
    }

    #[test]
    fn linear_algebra() {
        let a = vec![vec![r("2"), r("1")], vec![r("1"), r("3")]];
        assert_eq!(determinant(a.clone()), r("5"));
        let x = solve(a, vec![r("3"), r("5")]).unwrap();
        assert_eq!(x, vec![r("4/5"), r("7/5")]);
        assert!(solve(vec![vec![r("1"), r("2")], vec![r("2"), r("4")]], vec![r("1"), r("1")]).is_none());
    }

    fn table(pairs: &[&str], m: usize) -> ExactTable {
        let mut sq = vec![vec![Rational::zero(); m]; m];
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                let d = r(pairs[k]);
                sq[i][j] = &d * &d;
                sq[j][i] = &d * &d;
                k += 1;
            }
        }
        ExactTable { sq }
    }

    #[test]
    fn triangle_quantities() {
        let t = table(&["3", "4", "5"], 3);
        assert_eq!(t.squared_volume(&[0, 1, 2]), r("36"));
        // right angle at A_1: circumcenter is the midpoint of A_2 A_3
        assert_eq!(t.circumcenter().unwrap(), vec![r("0"), r("1/2"), r("1/2")]);
        assert_eq!(t.circumradius_sq().unwrap(), r("25/4"));
    }

    #[test]
    fn disjoint_apollonian_tetrahedron() {
        let t = table(&["13", "11", "9", "12", "5", "11"], 4);
        let a2 = t.squared_facet_volumes();
        assert_eq!(a2, vec![r("756"), r("32643/16"), r("4131/16"), r("3780")]);
        let tri = t.sub_table(&[0, 1, 2]);
        assert_eq!(
            tri.circumcenter().unwrap(),
            vec![r("73/210"), r("121/315"), r("169/630")]
        );
        let s = [&tri.sq[1][2], &tri.sq[0][2], &tri.sq[0][1]];
        let q = yiu_witness(s, [&a2[0], &a2[1], &a2[2]]).unwrap();
        assert_eq!(
            q,
            vec![r("3326952/4504043"), r("25180529/27024258"), r("-18117983/27024258")]
        );
    }
}
