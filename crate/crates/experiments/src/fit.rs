//! Exact discrete minimax (Chebyshev) polynomial fits over Q, and the upper
//! bounds obtained by shifting them.
//!
//! On a finite set of distinct abscissae the best degree-d approximation has
//! error equal to the largest reference error over all (d + 2)-point subsets,
//! and it is the levelled solution on a maximizing reference. Samples are
//! small, so every reference is enumerated.

use std::collections::BTreeMap;

use local_field::Q;

use crate::report::{fmt_q, FitRecord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFit {
    /// Constant term first.
    pub coefficients: Vec<Q>,
    pub max_error: Q,
}

fn abs(q: Q) -> Q {
    if q < Q::from_integer(0) {
        -q
    } else {
        q
    }
}

pub fn eval_poly(c: &[Q], x: Q) -> Q {
    c.iter().rev().fold(Q::from_integer(0), |acc, &a| acc * x + a)
}

/// Solves a square system by Gaussian elimination; None when singular.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Q::from_integer(0))?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] != Q::from_integer(0) {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn max_error(c: &[Q], pts: &[(Q, Q)]) -> Q {
    pts.iter().map(|&(x, y)| abs(eval_poly(c, x) - y)).max().unwrap_or_else(|| Q::from_integer(0))
}

fn interpolate(pts: &[(Q, Q)], degree: usize) -> Vec<Q> {
    // exact through all points, padded with zero coefficients
    let n = pts.len();
    let a: Vec<Vec<Q>> = pts.iter().map(|&(x, _)| (0..n).map(|k| pow(x, k)).collect()).collect();
    let b: Vec<Q> = pts.iter().map(|p| p.1).collect();
    let mut c = if n == 0 { Vec::new() } else { solve(a, b).expect("distinct abscissae") };
    c.resize(degree + 1, Q::from_integer(0));
    c
}

fn pow(x: Q, k: usize) -> Q {
    (0..k).fold(Q::from_integer(1), |a, _| a * x)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Best uniform approximation of degree <= `degree` on points with distinct
/// abscissae. Returns None when two points share an abscissa.
pub fn minimax_fit(points: &[(Q, Q)], degree: usize) -> Option<PolyFit> {
    let mut pts = points.to_vec();
    pts.sort();
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    if pts.len() <= degree + 1 {
        let c = interpolate(&pts, degree);
        return Some(PolyFit { max_error: max_error(&c, &pts), coefficients: c });
    }
    let mut best: Option<(Q, Vec<Q>)> = None;
    for s in subsets(pts.len(), degree + 2) {
        // p(x_r) + (-1)^r e = y_r
        let a: Vec<Vec<Q>> = s
            .iter()
            .enumerate()
            .map(|(r, &i)| {
                let mut row: Vec<Q> = (0..=degree).map(|k| pow(pts[i].0, k)).collect();
                row.push(Q::from_integer(if r % 2 == 0 { 1 } else { -1 }));
                row
            })
            .collect();
        let b: Vec<Q> = s.iter().map(|&i| pts[i].1).collect();
        let Some(sol) = solve(a, b) else {
            continue;
        };
        let h = abs(sol[degree + 1]);
        let c = sol[..=degree].to_vec();
        let better = match &best {
            None => true,
            Some((bh, bc)) => h > *bh || (h == *bh && max_error(&c, &pts) < max_error(bc, &pts)),
        };
        if better {
            best = Some((h, c));
        }
    }
    let (_, c) = best?;
    Some(PolyFit { max_error: max_error(&c, &pts), coefficients: c })
}

/// Per-abscissa maxima of a sample, which is all an upper bound has to dominate.
pub fn upper_profile(points: &[(Q, Q)]) -> Vec<(Q, Q)> {
    let mut m: BTreeMap<Q, Q> = BTreeMap::new();
    for &(x, y) in points {
        let e = m.entry(x).or_insert(y);
        if y > *e {
            *e = y;
        }
    }
    m.into_iter().collect()
}

/// Minimax fit to the upper profile, shifted up by its error so it dominates
/// every point; the record counts points still above it.
pub fn upper_bound_fit(name: &str, variable: &str, points: &[(Q, Q)], degree: usize) -> Option<(Vec<Q>, FitRecord)> {
    let prof = upper_profile(points);
    let fit = minimax_fit(&prof, degree)?;
    let mut bound = fit.coefficients.clone();
    bound[0] += fit.max_error;
    let violations = points.iter().filter(|&&(x, y)| y > eval_poly(&bound, x)).count();
    let record = FitRecord {
        name: name.to_string(),
        variable: variable.to_string(),
        coefficients: bound.iter().map(fmt_q).collect(),
        minimax_error: fmt_q(&fit.max_error),
        points: points.len(),
        violations,
    };
    Some((bound, record))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i128) -> Q {
        Q::from_integer(a)
    }

    #[test]
    fn constant_fit_is_the_midrange() {
        let f = minimax_fit(&[(q(0), q(1)), (q(1), q(5)), (q(2), q(3))], 0).unwrap();
        assert_eq!(f.coefficients, vec![q(3)]);
        assert_eq!(f.max_error, q(2));
    }

    #[test]
    fn line_through_collinear_points_is_exact() {
        let pts: Vec<(Q, Q)> = (0..6).map(|x| (q(x), q(3 * x - 2))).collect();
        let f = minimax_fit(&pts, 1).unwrap();
        assert_eq!(f.coefficients, vec![q(-2), q(3)]);
        assert_eq!(f.max_error, q(0));
    }

    #[test]
    fn chebyshev_equioscillation() {
        // y = x^2 on {-1, 0, 1}: the best line is y = 1/2 with error 1/2
        let f = minimax_fit(&[(q(-1), q(1)), (q(0), q(0)), (q(1), q(1))], 1).unwrap();
        assert_eq!(f.coefficients, vec![Q::new(1, 2), q(0)]);
        assert_eq!(f.max_error, Q::new(1, 2));
    }

    #[test]
    fn upper_bound_dominates() {
        let pts = vec![(q(1), q(1)), (q(1), q(4)), (q(2), q(0)), (q(3), q(9)), (q(4), q(2))];
        let (b, rec) = upper_bound_fit("t", "x", &pts, 1).unwrap();
        assert_eq!(rec.violations, 0);
        assert!(pts.iter().all(|&(x, y)| eval_poly(&b, x) >= y));
        assert!(minimax_fit(&pts, 1).is_none());
    }
}
