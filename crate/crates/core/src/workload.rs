//! Seeded synthetic streams and the ratio benchmark run by `gbc bench`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::cover::check_epsilon;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::oracle::{brute_fn, brute_fp, gonzalez_2meb, reference_meb, RatioReport};
use crate::queries::{approx_meb, coreset, farthest_neighbor, DiameterState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// Standard normal in every coordinate.
    Gaussian,
    /// Uniform on the unit sphere.
    Sphere,
    /// Unit-variance blobs around a few widely spread centers.
    Clustered,
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Distribution::Gaussian),
            "sphere" => Ok(Distribution::Sphere),
            "clustered" => Ok(Distribution::Clustered),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown distribution {other:?}"),
            }),
        }
    }
}

const CLUSTERS: usize = 8;
const CLUSTER_SPREAD: f64 = 5.0;
/// Number of farthest-neighbor queries per benchmark run.
pub const BENCH_QUERIES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n: usize,
    pub d: usize,
    pub epsilon: f64,
    pub distribution: Distribution,
    pub seed: u64,
}

fn gaussian_vec(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    (0..d).map(|_| rng.sample(StandardNormal)).collect()
}

/// `n` points of dimension `d`. The same arguments always give the same
/// stream.
pub fn generate_stream(n: usize, d: usize, distribution: Distribution, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<f64>> = match distribution {
        Distribution::Clustered => (0..CLUSTERS)
            .map(|_| gaussian_vec(&mut rng, d).into_iter().map(|v| v * CLUSTER_SPREAD).collect())
            .collect(),
        _ => Vec::new(),
    };
    (0..n)
        .map(|_| {
            let mut v = gaussian_vec(&mut rng, d);
            match distribution {
                Distribution::Gaussian => {}
                Distribution::Sphere => {
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 0.0 {
                        v.iter_mut().for_each(|x| *x /= norm);
                    }
                }
                Distribution::Clustered => {
                    let c = &centers[rng.random_range(0..CLUSTERS)];
                    v.iter_mut().zip(c).for_each(|(x, ci)| *x += ci);
                }
            }
            Point::new(v).expect("sampled coordinates are finite")
        })
        .collect()
}

/// Standard normal query points, seeded independently of the stream.
pub fn generate_queries(count: usize, d: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|_| Point::new(gaussian_vec(&mut rng, d)).expect("finite"))
        .collect()
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        check_epsilon(self.epsilon)?;
        if self.n < 2 {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: self.n,
            });
        }
        if self.d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(())
    }

    pub fn stream(&self) -> Vec<Point> {
        generate_stream(self.n, self.d, self.distribution, self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchEntry {
    pub metric: String,
    pub config: BenchConfig,
    pub measured_max_ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Builds the sketch over a generated stream and measures every query kind
/// against brute force. With `gonzalez`, the one-pass 2-approximate ball is
/// measured as well.
pub fn run_bench(config: &BenchConfig, gonzalez: bool) -> Result<Vec<BenchEntry>> {
    config.validate()?;
    let points = config.stream();
    let reports = measure(&points, config.epsilon, &generate_queries(BENCH_QUERIES, config.d, config.seed), gonzalez)?;
    Ok(reports
        .into_iter()
        .map(|r| BenchEntry {
            metric: r.metric,
            config: config.clone(),
            measured_max_ratio: r.measured_max_ratio,
            bound: r.bound,
            pass: r.pass,
        })
        .collect())
}

/// Ratio reports for one retained stream: farthest neighbor over `queries`,
/// diameter, enclosing ball (ratio and containment) and coreset.
pub fn measure(points: &[Point], epsilon: f64, queries: &[Point], gonzalez: bool) -> Result<Vec<RatioReport>> {
    let n = points.len();
    let d = points.first().ok_or(Error::EmptyInput)?.dim();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut state = DiameterState::new(epsilon)?;
    for p in points {
        state.observe(p.clone())?;
    }
    let cover = state.cover().expect("nonempty stream");
    let mut reports = Vec::new();

    let mut fn_ratio = 1.0f64;
    for x in queries {
        let got = x.dist(farthest_neighbor(cover, x)?)?;
        let truth = x.dist(brute_fn(points, x)?)?;
        fn_ratio = fn_ratio.max(ratio(truth, got));
    }
    reports.push(RatioReport::new("farthest_neighbor", n, d, epsilon, fn_ratio, sqrt2 + 2.0 * epsilon));

    if n >= 2 {
        let (a, b) = brute_fp(points)?;
        let diam = a.dist(b)?;
        reports.push(RatioReport::new(
            "diameter",
            n,
            d,
            epsilon,
            ratio(diam, state.best_dist()),
            sqrt2 + 2.0 * epsilon,
        ));
    }

    let reference = reference_meb(points)?;
    let ball = approx_meb(cover)?;
    reports.push(RatioReport::new(
        "meb",
        n,
        d,
        epsilon,
        ratio(ball.radius(), reference.radius()),
        1.22 + 3.0 * epsilon,
    ));
    let reach = points
        .iter()
        .map(|p| ball.center().dist_unchecked(p))
        .fold(0.0f64, f64::max);
    reports.push(RatioReport::new("meb_containment", n, d, epsilon, ratio(reach, ball.radius()), 1.0));

    let q = coreset(cover);
    let core_ball = reference_meb(&q)?;
    let reach = points
        .iter()
        .map(|p| core_ball.center().dist_unchecked(p))
        .fold(0.0f64, f64::max);
    reports.push(RatioReport::new(
        "coreset",
        n,
        d,
        epsilon,
        ratio(reach, core_ball.radius()),
        sqrt2 + 2.0 * epsilon,
    ));

    if gonzalez {
        let g = gonzalez_2meb(points.iter().cloned())?;
        reports.push(RatioReport::new(
            "gonzalez_meb",
            n,
            d,
            epsilon,
            ratio(g.radius(), reference.radius()),
            2.0,
        ));
    }
    Ok(reports)
}

/// `num / den`, treating `0 / 0` as an exact answer.
fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        1.0
    } else if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        for dist in [Distribution::Gaussian, Distribution::Sphere, Distribution::Clustered] {
            let a = generate_stream(50, 4, dist, 7);
            assert_eq!(a, generate_stream(50, 4, dist, 7));
            assert_ne!(a, generate_stream(50, 4, dist, 8));
            assert!(a.iter().all(|p| p.dim() == 4));
        }
        for p in generate_stream(20, 5, Distribution::Sphere, 1) {
            let norm = p.coords().iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn small_bench_passes() {
        let cfg = BenchConfig {
            n: 300,
            d: 6,
            epsilon: 0.3,
            distribution: Distribution::Clustered,
            seed: 3,
        };
        let entries = run_bench(&cfg, true).unwrap();
        let names: Vec<_> = entries.iter().map(|e| e.metric.as_str()).collect();
        assert_eq!(
            names,
            ["farthest_neighbor", "diameter", "meb", "meb_containment", "coreset", "gonzalez_meb"]
        );
        assert!(entries.iter().all(|e| e.pass), "{entries:#?}");
        assert_eq!(entries, run_bench(&cfg, true).unwrap());
    }

    #[test]
    fn config_validation() {
        let mut cfg = BenchConfig {
            n: 10,
            d: 2,
            epsilon: 0.5,
            distribution: Distribution::Gaussian,
            seed: 0,
        };
        assert!(cfg.validate().is_ok());
        cfg.epsilon = 2.0;
        assert!(cfg.validate().is_err());
        cfg.epsilon = 0.5;
        cfg.n = 1;
        assert!(cfg.validate().is_err());
        assert!("uniform".parse::<Distribution>().is_err());
    }
}
