//! Brute-force ground truth and baselines. These retain the whole input and
//! are meant for verification at small scale (a few thousand points).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dist_sq, Ball, Point};
use crate::meb::meb_points;

/// Tolerance of [`reference_meb`].
pub const REFERENCE_DELTA: f64 = 1e-9;

/// Slack added to every bound before a ratio counts as a violation.
pub const RATIO_SLACK: f64 = 1e-9;

/// Worst measured approximation ratio of one metric against its bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub metric: String,
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    pub measured_max_ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

impl RatioReport {
    pub fn new(metric: impl Into<String>, n: usize, d: usize, epsilon: f64, measured_max_ratio: f64, bound: f64) -> Self {
        RatioReport {
            metric: metric.into(),
            n,
            d,
            epsilon,
            measured_max_ratio,
            bound,
            pass: measured_max_ratio <= bound + RATIO_SLACK,
        }
    }
}

fn check_same_dim(points: &[Point], dim: usize) -> Result<()> {
    points.iter().try_for_each(|p| p.check_dim(dim))
}

/// Exact farthest neighbor of `x`; ties go to the lowest index.
pub fn brute_fn<'a>(points: &'a [Point], x: &Point) -> Result<&'a Point> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    check_same_dim(points, x.dim())?;
    let mut best = first;
    let mut best_dist = x.dist_sq_unchecked(first);
    for p in &points[1..] {
        let d = x.dist_sq_unchecked(p);
        if d > best_dist {
            best = p;
            best_dist = d;
        }
    }
    Ok(best)
}

/// Exact farthest pair in `O(n^2 d)`; ties go to the lexicographically
/// smallest index pair.
pub fn brute_fp(points: &[Point]) -> Result<(&Point, &Point)> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    check_same_dim(points, points[0].dim())?;
    let mut best = (0, 1);
    let mut best_dist = points[0].dist_sq_unchecked(&points[1]);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].dist_sq_unchecked(&points[j]);
            if d > best_dist {
                best = (i, j);
                best_dist = d;
            }
        }
    }
    Ok((&points[best.0], &points[best.1]))
}

/// The enclosing ball used as ground truth: [`meb_points`] at
/// [`REFERENCE_DELTA`].
pub fn reference_meb(points: &[Point]) -> Result<Ball> {
    Ok(meb_points(points, REFERENCE_DELTA)?.ball)
}

/// Two-approximate enclosing ball from one pass: centered at the first point
/// with radius equal to the largest distance from it.
pub fn gonzalez_2meb<I>(points: I) -> Result<Ball>
where
    I: IntoIterator<Item = Point>,
{
    let mut points = points.into_iter();
    let first = points.next().ok_or(Error::EmptyInput)?;
    let mut radius = 0.0f64;
    for p in points {
        radius = radius.max(first.dist(&p)?);
    }
    Ball::new(first, radius)
}

/// Exact minimum enclosing ball by enumerating every support subset of at
/// most `d + 1` points and keeping the smallest circumscribed ball (centered
/// in the subset's affine hull) that encloses all points.
///
/// Cost is `O(n^(d+2))`; only for low dimensions and a few dozen points.
pub fn support_subset_meb(points: &[Point]) -> Result<Ball> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    check_same_dim(points, dim)?;
    let max_size = (dim + 1).min(points.len());

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut subset = Vec::with_capacity(max_size);
    for size in 1..=max_size {
        combinations(points.len(), size, &mut subset, &mut |idx| {
            let Some((center, r2)) = circumcenter(points, idx) else {
                return;
            };
            if best.as_ref().is_some_and(|(b, _)| r2 >= *b) {
                return;
            }
            let limit = r2 * (1.0 + 1e-10) + 1e-20;
            if points.iter().all(|p| dist_sq(p.coords(), &center) <= limit) {
                best = Some((r2, center));
            }
        });
    }
    let (_, center) = best.expect("the diametral subsets always include a feasible ball");
    let center = Point::new(center)?;
    let radius = points
        .iter()
        .map(|p| center.dist_unchecked(p))
        .fold(0.0f64, f64::max);
    Ball::new(center, radius)
}

fn combinations(n: usize, k: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if current.len() == k {
            visit(current);
            return;
        }
        let remaining = k - current.len();
        for i in start..=n - remaining {
            current.push(i);
            rec(i + 1, n, k, current, visit);
            current.pop();
        }
    }
    current.clear();
    rec(0, n, k, current, visit);
}

/// Center of the ball through all `idx` points with center in their affine
/// hull, and its squared radius. `None` for affinely dependent subsets.
fn circumcenter(points: &[Point], idx: &[usize]) -> Option<(Vec<f64>, f64)> {
    let base = points[idx[0]].coords();
    let m = idx.len() - 1;
    if m == 0 {
        return Some((base.to_vec(), 0.0));
    }
    let dirs: Vec<Vec<f64>> = idx[1..]
        .iter()
        .map(|&i| points[i].coords().iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    // Solve 2 G a = diag(G) with G the Gram matrix of the directions.
    let mut a = vec![vec![0.0; m + 1]; m];
    for r in 0..m {
        for c in 0..m {
            a[r][c] = 2.0 * dot(&dirs[r], &dirs[c]);
        }
        a[r][m] = dot(&dirs[r], &dirs[r]);
    }
    let coef = solve(a)?;
    let mut center = base.to_vec();
    for (k, dir) in dirs.iter().enumerate() {
        for (c, v) in center.iter_mut().zip(dir) {
            *c += coef[k] * v;
        }
    }
    let r2 = dist_sq(&center, base);
    Some((center, r2))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = a.len();
    let scale = a
        .iter()
        .flat_map(|row| row[..m].iter())
        .fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..=m].iter_mut().zip(&pivot_row[col..=m]) {
                *x -= f * p;
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let s: f64 = (row + 1..m).map(|c| a[row][c] * x[c]).sum();
        x[row] = (a[row][m] - s) / a[row][row];
    }
    Some(x)
}
