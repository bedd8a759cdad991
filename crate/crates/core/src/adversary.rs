//! Hard instance for algorithms that answer with stored input points.
//!
//! The stream is the first `k = 1/(2 eps) + 1` standard basis vectors. The
//! query `q_j` has `-1` in coordinate `j` and `2 eps` in the other first `k`
//! coordinates, so its farthest point is `e_j` at distance `sqrt(4 + 2 eps)`,
//! while every other basis vector sits at `sqrt(2 - 2 eps)`. An algorithm that
//! has dropped `e_j` is off by `sqrt((4 + 2 eps) / (2 - 2 eps)) > sqrt(2) + eps`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundInstance {
    pub epsilon: f64,
    pub k: usize,
    pub d: usize,
    pub basis_points: Vec<Point>,
    pub queries: Vec<Point>,
    pub d_far: f64,
    pub d_near: f64,
}

impl LowerBoundInstance {
    /// `d_far / d_near`, the ratio forced on an algorithm missing `e_j`.
    pub fn ratio(&self) -> f64 {
        self.d_far / self.d_near
    }

    /// `sqrt(2) + eps`.
    pub fn target(&self) -> f64 {
        std::f64::consts::SQRT_2 + self.epsilon
    }

    /// Writes the basis points as CSV rows and the queries as `#` comment
    /// lines, so the file can be fed straight to the stream reader.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# lower-bound instance: epsilon={} k={} d={} d_far={} d_near={}",
            self.epsilon, self.k, self.d, self.d_far, self.d_near
        )?;
        for (j, q) in self.queries.iter().enumerate() {
            writeln!(out, "# query {j}: {}", q.to_csv())?;
        }
        for p in &self.basis_points {
            writeln!(out, "{}", p.to_csv())?;
        }
        Ok(())
    }
}

/// `k = 1/(2 eps) + 1`, or an error when `1/(2 eps)` is not a whole number.
pub fn basis_size(epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let half_inv = 1.0 / (2.0 * epsilon);
    let rounded = half_inv.round();
    if (half_inv - rounded).abs() > 1e-9 * rounded.max(1.0) || rounded < 1.0 {
        return Err(Error::InvalidInstance(format!(
            "1/(2 epsilon) = {half_inv} is not a positive integer"
        )));
    }
    Ok(rounded as usize + 1)
}

/// Builds the instance in dimension `d` (at least `k`; `None` picks `k`).
pub fn gen_instance(epsilon: f64, d: Option<usize>) -> Result<LowerBoundInstance> {
    let k = basis_size(epsilon)?;
    let d = d.unwrap_or(k);
    if d < k {
        return Err(Error::InvalidInstance(format!(
            "dimension {d} is smaller than k = {k}"
        )));
    }
    let basis_points = (0..k)
        .map(|i| {
            let mut c = vec![0.0; d];
            c[i] = 1.0;
            Point::new(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let queries = (0..k)
        .map(|j| {
            let mut c = vec![0.0; d];
            for (i, v) in c.iter_mut().enumerate().take(k) {
                *v = if i == j { -1.0 } else { 2.0 * epsilon };
            }
            Point::new(c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LowerBoundInstance {
        epsilon,
        k,
        d,
        basis_points,
        queries,
        d_far: (4.0 + 2.0 * epsilon).sqrt(),
        d_near: (2.0 - 2.0 * epsilon).sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub epsilon: f64,
    pub k: usize,
    /// `distances[j][i] = |q_j - e_i|`.
    pub distances: Vec<Vec<f64>>,
    /// Largest relative deviation from the closed forms.
    pub max_rel_error: f64,
    pub ratio: f64,
    pub target: f64,
    /// Best distance an algorithm missing `e_j` can return, minimized over j.
    pub worst_missing_answer: f64,
    pub pass: bool,
}

/// Relative tolerance when comparing measured distances to the closed forms.
pub const DISTANCE_TOLERANCE: f64 = 1e-12;

/// Measures every query-to-basis distance and checks it against the closed
/// forms, and checks that the forced ratio beats `sqrt(2) + eps`.
pub fn verify(instance: &LowerBoundInstance) -> Result<VerifyReport> {
    let mut distances = Vec::with_capacity(instance.queries.len());
    let mut max_rel_error = 0.0f64;
    let mut worst_missing_answer = f64::INFINITY;
    let mut pass = instance.basis_points.len() == instance.k && instance.queries.len() == instance.k;
    for (j, q) in instance.queries.iter().enumerate() {
        let row = instance
            .basis_points
            .iter()
            .map(|e| q.dist(e))
            .collect::<Result<Vec<_>>>()?;
        let mut best_other = 0.0f64;
        for (i, &measured) in row.iter().enumerate() {
            let expected = if i == j { instance.d_far } else { instance.d_near };
            let err = (measured - expected).abs();
            max_rel_error = max_rel_error.max(err / expected.max(f64::MIN_POSITIVE));
            if err > DISTANCE_TOLERANCE * (1.0 + expected) {
                pass = false;
            }
            if i != j {
                best_other = best_other.max(measured);
            }
        }
        worst_missing_answer = worst_missing_answer.min(best_other);
        distances.push(row);
    }
    let ratio = instance.ratio();
    let target = instance.target();
    if ratio.is_nan() || ratio <= target {
        pass = false;
    }
    Ok(VerifyReport {
        epsilon: instance.epsilon,
        k: instance.k,
        distances,
        max_rel_error,
        ratio,
        target,
        worst_missing_answer,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub subsets_checked: u64,
    pub queries_checked: u64,
    /// Smallest `d_far / best stored answer` over every proper subset and
    /// every query whose farthest point is missing.
    pub min_ratio: f64,
    pub pass: bool,
}

/// Largest `k` accepted by [`simulate_missing`].
pub const MAX_SIMULATED_K: usize = 16;

/// Plays every proper nonempty stored subset of the basis against every query
/// whose answer `e_j` was dropped, checking that the best stored answer is
/// worse than a `sqrt(2) + eps` approximation.
pub fn simulate_missing(instance: &LowerBoundInstance) -> Result<SimulationReport> {
    let k = instance.k;
    if k > MAX_SIMULATED_K {
        return Err(Error::InvalidInstance(format!(
            "exhaustive simulation supports k <= {MAX_SIMULATED_K}, got {k}"
        )));
    }
    let dist: Vec<Vec<f64>> = instance
        .queries
        .iter()
        .map(|q| instance.basis_points.iter().map(|e| q.dist(e)).collect())
        .collect::<Result<_>>()?;
    let target = instance.target();
    let full = (1u32 << k) - 1;
    let mut subsets_checked = 0;
    let mut queries_checked = 0;
    let mut min_ratio = f64::INFINITY;
    for stored in 1..full {
        subsets_checked += 1;
        for j in (0..k).filter(|j| stored & (1 << j) == 0) {
            let best = (0..k)
                .filter(|i| stored & (1 << i) != 0)
                .map(|i| dist[j][i])
                .fold(0.0f64, f64::max);
            let truth = dist[j][j];
            min_ratio = min_ratio.min(truth / best);
            queries_checked += 1;
        }
    }
    Ok(SimulationReport {
        subsets_checked,
        queries_checked,
        min_ratio,
        pass: min_ratio > target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_instance() {
        let inst = gen_instance(0.25, Some(3)).unwrap();
        assert_eq!(inst.k, 3);
        assert!((inst.d_far - 4.5f64.sqrt()).abs() < 1e-15);
        assert!((inst.d_near - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((inst.ratio() - 3f64.sqrt()).abs() < 1e-12);
        assert!(inst.ratio() > 2f64.sqrt() + 0.25);
        assert_eq!(inst.queries[1].coords(), &[0.5, -1.0, 0.5]);
        let report = verify(&inst).unwrap();
        assert!(report.pass);
        assert_eq!(report.distances.len(), 3);
        assert!(report.distances.iter().all(|r| r.len() == 3));
    }

    #[test]
    fn half_instance() {
        let inst = gen_instance(0.5, Some(2)).unwrap();
        assert_eq!(inst.k, 2);
        assert_eq!(inst.d_far, 5f64.sqrt());
        assert_eq!(inst.d_near, 1.0);
        let report = verify(&inst).unwrap();
        assert!(report.pass);
        assert_eq!(report.distances.iter().flatten().count(), 4);
    }

    #[test]
    fn basis_is_orthonormal() {
        let inst = gen_instance(0.05, Some(11)).unwrap();
        assert_eq!(inst.k, 11);
        for (i, a) in inst.basis_points.iter().enumerate() {
            for b in &inst.basis_points[i + 1..] {
                assert_eq!(a.dist(b).unwrap(), 2f64.sqrt());
            }
        }
    }

    #[test]
    fn default_dimension_is_k() {
        assert_eq!(gen_instance(0.1, None).unwrap().d, 6);
        assert_eq!(gen_instance(0.1, Some(40)).unwrap().queries[0].dim(), 40);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(gen_instance(0.3, None), Err(Error::InvalidInstance(_))));
        // 2/eps = 5 is integral but 1/(2 eps) = 1.25 is not.
        assert!(matches!(gen_instance(0.4, None), Err(Error::InvalidInstance(_))));
        assert!(matches!(gen_instance(1.0, None), Err(Error::InvalidInstance(_))));
        assert!(matches!(gen_instance(0.25, Some(2)), Err(Error::InvalidInstance(_))));
        assert!(matches!(gen_instance(0.0, None), Err(Error::InvalidEpsilon(_))));
    }

    #[test]
    fn corrupted_instance_fails() {
        let mut inst = gen_instance(0.25, None).unwrap();
        let scaled: Vec<f64> = inst.basis_points[1].coords().iter().map(|c| 2.0 * c).collect();
        inst.basis_points[1] = Point::new(scaled).unwrap();
        assert!(!verify(&inst).unwrap().pass);
    }

    #[test]
    fn simulation_small() {
        let inst = gen_instance(0.5, None).unwrap();
        let sim = simulate_missing(&inst).unwrap();
        // k = 2: subsets {e0}, {e1}, one missing query each.
        assert_eq!(sim.subsets_checked, 2);
        assert_eq!(sim.queries_checked, 2);
        assert!((sim.min_ratio - 5f64.sqrt()).abs() < 1e-12);
        assert!(sim.pass);
    }

    #[test]
    fn csv_export_parses_back() {
        let inst = gen_instance(0.25, None).unwrap();
        let mut buf = Vec::new();
        inst.write_csv(&mut buf).unwrap();
        let pts = crate::io::read_points(&buf[..], crate::io::Format::Csv).unwrap();
        assert_eq!(pts, inst.basis_points);
    }
}
