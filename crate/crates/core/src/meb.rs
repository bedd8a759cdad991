//! Certified approximate minimum enclosing balls.
//!
//! Both solvers work on the convex-weight formulation: the center is a convex
//! combination `c(u) = sum_i u_i p_i` of atoms, and
//! `phi(u) = sum_i u_i |p_i - c(u)|^2` lower-bounds the squared radius of the
//! minimum enclosing ball for every weight vector `u`. Each iteration either
//! moves weight toward the farthest atom (Frank-Wolfe step) or away from the
//! nearest supporting atom (away step), both with exact line search. The loop
//! stops once the primal radius `R` satisfies `R^2 <= (1 + delta)^2 phi(u)`,
//! which proves `R <= (1 + delta) r(MEB)`.

use crate::error::{Error, Result};
use crate::geometry::{dist_sq, Ball, Point};

/// Output of [`meb_points`].
#[derive(Clone, Debug, PartialEq)]
pub struct MebResult {
    pub ball: Ball,
    /// Convex weights over the input points; `ball.center()` is their
    /// weighted mean.
    pub support_weights: Vec<f64>,
    pub iterations: u64,
    /// Proven upper bound on `radius / r(MEB)`.
    pub certified_ratio: f64,
}

impl MebResult {
    pub fn is_certified(&self, delta: f64) -> bool {
        self.certified_ratio <= 1.0 + delta
    }
}

/// Iteration budget for a target tolerance: `ceil(100 / delta) + 10^4`.
pub fn iteration_cap(delta: f64) -> u64 {
    let scaled = (100.0 / delta).ceil();
    if scaled >= (u64::MAX / 2) as f64 {
        u64::MAX / 2
    } else {
        scaled as u64 + 10_000
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(delta))
    }
}

fn common_dim(mut dims: impl Iterator<Item = usize>) -> Result<usize> {
    let first = dims.next().ok_or(Error::EmptyInput)?;
    for found in dims {
        if found != first {
            return Err(Error::DimensionMismatch {
                expected: first,
                found,
            });
        }
    }
    Ok(first)
}

/// `phi(u)` for convex weights `u`, the certificate that lower-bounds the
/// squared radius of `MEB(points)`.
///
/// Evaluated as the weighted variance `sum_i u_i |p_i - c(u)|^2`, which is
/// algebraically equal to `sum_i u_i |p_i|^2 - |c(u)|^2` but avoids the
/// cancellation of the latter far from the origin.
pub fn dual_lower_bound(points: &[Point], weights: &[f64]) -> Result<f64> {
    if points.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} points",
            weights.len(),
            points.len()
        )));
    }
    let dim = common_dim(points.iter().map(Point::dim))?;
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidWeights(format!("negative or non-finite weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 * (points.len() as f64).max(1.0) {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    let center = weighted_mean(points.iter().map(Point::coords), weights, dim);
    Ok(points
        .iter()
        .zip(weights)
        .map(|(p, w)| w * dist_sq(p.coords(), &center))
        .sum())
}

fn weighted_mean<'a>(atoms: impl Iterator<Item = &'a [f64]>, weights: &[f64], dim: usize) -> Vec<f64> {
    let mut center = vec![0.0; dim];
    for (atom, &w) in atoms.zip(weights) {
        if w == 0.0 {
            continue;
        }
        for (c, a) in center.iter_mut().zip(atom) {
            *c += w * a;
        }
    }
    center
}

/// Weights plus their weighted mean, updated in place by the two step kinds.
struct Iterate {
    weights: Vec<f64>,
    center: Vec<f64>,
}

impl Iterate {
    fn toward(&mut self, atom: &[f64], idx: usize, lambda: f64) {
        for w in &mut self.weights {
            *w *= 1.0 - lambda;
        }
        self.weights[idx] += lambda;
        for (c, a) in self.center.iter_mut().zip(atom) {
            *c = (1.0 - lambda) * *c + lambda * a;
        }
    }

    fn away(&mut self, atom: &[f64], idx: usize, lambda: f64, drop: bool) {
        for w in &mut self.weights {
            *w *= 1.0 + lambda;
        }
        if drop {
            self.weights[idx] = 0.0;
        } else {
            self.weights[idx] = (self.weights[idx] - lambda).max(0.0);
        }
        for (c, a) in self.center.iter_mut().zip(atom) {
            *c = (1.0 + lambda) * *c - lambda * a;
        }
    }

    fn renormalize<'a>(&mut self, atoms: impl Iterator<Item = &'a [f64]>) {
        let total: f64 = self.weights.iter().sum();
        for w in &mut self.weights {
            *w /= total;
        }
        self.center = weighted_mean(atoms, &self.weights, self.center.len());
    }
}

enum Step {
    Toward(usize, f64),
    Away(usize, f64, bool),
}

/// Picks the better of the Frank-Wolfe and away directions given the squared
/// distances from the current center to every atom.
fn choose_step(dist2: &[f64], weights: &[f64], far: usize, far_dist2: f64, phi: f64) -> Step {
    if phi <= 0.0 {
        return Step::Toward(far, 0.5);
    }
    let gap_toward = far_dist2 / phi - 1.0;
    let mut near = None;
    for (i, (&d2, &w)) in dist2.iter().zip(weights).enumerate() {
        if w > 0.0 && near.is_none_or(|(_, best)| d2 < best) {
            near = Some((i, d2));
        }
    }
    if let Some((k, near_dist2)) = near {
        let gap_away = 1.0 - near_dist2 / phi;
        let wk = weights[k];
        if gap_away > gap_toward && wk < 1.0 {
            let max_step = wk / (1.0 - wk);
            let step = gap_away / (2.0 * (1.0 - gap_away));
            return if step >= max_step {
                Step::Away(k, max_step, true)
            } else {
                Step::Away(k, step, false)
            };
        }
    }
    Step::Toward(far, gap_toward / (2.0 * (1.0 + gap_toward)))
}

/// A `(1 + delta)`-approximate minimum enclosing ball of `points`.
///
/// The returned radius is the largest distance from the returned center to
/// any input point, so every input is enclosed regardless of convergence.
/// If the iteration cap is reached first, the best iterate seen is returned
/// and `certified_ratio` reports what was proven.
pub fn meb_points(points: &[Point], delta: f64) -> Result<MebResult> {
    check_delta(delta)?;
    let dim = common_dim(points.iter().map(Point::dim))?;
    let n = points.len();
    let atoms = || points.iter().map(Point::coords);

    let mut it = Iterate {
        weights: vec![0.0; n],
        center: points[0].coords().to_vec(),
    };
    it.weights[0] = 1.0;

    let cap = iteration_cap(delta);
    let target = (1.0 + delta) * (1.0 + delta);
    let mut dist2 = vec![0.0; n];
    let mut best_phi = 0.0f64;
    let mut best: Option<(f64, Vec<f64>, Vec<f64>)> = None;
    let mut fresh = false;
    let mut iterations = 0u64;

    loop {
        let mut far = 0;
        let mut far_dist2 = f64::NEG_INFINITY;
        let mut phi = 0.0;
        for (i, p) in points.iter().enumerate() {
            let d2 = dist_sq(p.coords(), &it.center);
            dist2[i] = d2;
            phi += it.weights[i] * d2;
            if d2 > far_dist2 {
                far = i;
                far_dist2 = d2;
            }
        }
        best_phi = best_phi.max(phi);
        if best.as_ref().is_none_or(|(r2, _, _)| far_dist2 < *r2) {
            best = Some((far_dist2, it.center.clone(), it.weights.clone()));
        }

        if far_dist2 <= target * phi {
            if fresh {
                return Ok(finish(points, it.center, it.weights, iterations, phi, dim));
            }
            // Confirm against a center recomputed from the weights, so the
            // certificate is not an artifact of accumulated update drift.
            it.renormalize(atoms());
            fresh = true;
            continue;
        }
        if iterations >= cap {
            break;
        }
        fresh = false;
        iterations += 1;

        match choose_step(&dist2, &it.weights, far, far_dist2, phi) {
            Step::Toward(j, lambda) => it.toward(points[j].coords(), j, lambda),
            Step::Away(k, lambda, drop) => it.away(points[k].coords(), k, lambda, drop),
        }
        if iterations.is_multiple_of(1024) {
            it.renormalize(atoms());
        }
    }

    let (_, center, weights) = best.expect("at least one iterate");
    Ok(finish(points, center, weights, iterations, best_phi, dim))
}

fn finish(points: &[Point], center: Vec<f64>, weights: Vec<f64>, iterations: u64, phi: f64, dim: usize) -> MebResult {
    debug_assert_eq!(center.len(), dim);
    let radius = points
        .iter()
        .map(|p| dist_sq(p.coords(), &center).sqrt())
        .fold(0.0f64, f64::max);
    let certified_ratio = if radius == 0.0 {
        1.0
    } else if phi > 0.0 {
        (radius / phi.sqrt()).max(1.0)
    } else {
        f64::INFINITY
    };
    let center = Point::new(center).expect("convex combination of finite points is finite");
    MebResult {
        ball: Ball::new(center, radius).expect("finite nonnegative radius"),
        support_weights: weights,
        iterations,
        certified_ratio,
    }
}

/// The point of `ball` farthest from `from`. When `from` is the center every
/// boundary point is farthest; the first coordinate axis is used.
fn farthest_in_ball(from: &[f64], ball: &Ball) -> Vec<f64> {
    let c = ball.center().coords();
    let r = ball.radius();
    let len = dist_sq(c, from).sqrt();
    if len > 0.0 {
        c.iter().zip(from).map(|(ci, fi)| ci + r * (ci - fi) / len).collect()
    } else {
        let mut y = c.to_vec();
        y[0] += r;
        y
    }
}

/// A ball enclosing every input ball entirely, with radius within
/// `1 + delta_out` of the minimum enclosing ball of their union.
///
/// Runs the same weighted iteration over boundary points of the input balls,
/// generating a new atom at each Frank-Wolfe step from the farthest ball. The
/// final radius is `max_i (|c - c_i| + r_i)`, so containment is unconditional.
pub fn meb_balls(balls: &[Ball], delta_out: f64) -> Result<Ball> {
    check_delta(delta_out)?;
    let dim = common_dim(balls.iter().map(Ball::dim))?;
    let support = |center: &[f64]| -> (usize, f64) {
        let mut far = 0;
        let mut far_dist = f64::NEG_INFINITY;
        for (i, b) in balls.iter().enumerate() {
            let s = dist_sq(b.center().coords(), center).sqrt() + b.radius();
            if s > far_dist {
                far = i;
                far_dist = s;
            }
        }
        (far, far_dist)
    };

    let start = balls[0].center().coords();
    let (first, _) = support(start);
    let mut atoms: Vec<Vec<f64>> = vec![farthest_in_ball(start, &balls[first])];
    let mut it = Iterate {
        weights: vec![1.0],
        center: atoms[0].clone(),
    };

    let cap = iteration_cap(delta_out);
    let target = (1.0 + delta_out) * (1.0 + delta_out);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut dist2 = Vec::new();
    let mut iterations = 0u64;

    loop {
        let (far_ball, far_dist) = support(&it.center);
        if best.as_ref().is_none_or(|(r, _)| far_dist < *r) {
            best = Some((far_dist, it.center.clone()));
        }
        dist2.clear();
        dist2.extend(atoms.iter().map(|a| dist_sq(a, &it.center)));
        let phi: f64 = dist2.iter().zip(&it.weights).map(|(d, w)| d * w).sum();
        if far_dist * far_dist <= target * phi || far_dist == 0.0 || iterations >= cap {
            break;
        }
        iterations += 1;

        let atom = farthest_in_ball(&it.center, &balls[far_ball]);
        let atom_dist2 = dist_sq(&atom, &it.center);
        atoms.push(atom);
        it.weights.push(0.0);
        dist2.push(atom_dist2);
        let far = atoms.len() - 1;

        match choose_step(&dist2, &it.weights, far, atom_dist2, phi) {
            Step::Toward(j, lambda) => it.toward(&atoms[j], j, lambda),
            Step::Away(k, lambda, drop) => it.away(&atoms[k], k, lambda, drop),
        }

        // Drop atoms that carry no weight so the atom set tracks the support.
        if it.weights.contains(&0.0) {
            let mut keep = it.weights.iter().map(|w| *w > 0.0);
            atoms.retain(|_| keep.next().unwrap_or(false));
            it.weights.retain(|w| *w > 0.0);
        }
        if iterations.is_multiple_of(1024) {
            it.renormalize(atoms.iter().map(Vec::as_slice));
        }
    }

    let (_, center) = best.expect("at least one iterate");
    debug_assert_eq!(center.len(), dim);
    let (_, radius) = support(&center);
    Ball::new(
        Point::new(center).expect("convex combination of finite points is finite"),
        radius,
    )
}
