#![allow(dead_code)]

use guarded_ball_cover::workload::{generate_stream, Distribution};
use guarded_ball_cover::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub enum StreamKind {
    Synthetic(Distribution),
    /// Gaussian directions with a scale that grows geometrically over the
    /// stream, so early balls are evicted.
    Expanding,
}

pub const STREAM_KINDS: [StreamKind; 4] = [
    StreamKind::Synthetic(Distribution::Gaussian),
    StreamKind::Synthetic(Distribution::Sphere),
    StreamKind::Synthetic(Distribution::Clustered),
    StreamKind::Expanding,
];

pub fn stream(kind: StreamKind, n: usize, d: usize, seed: u64) -> Vec<Point> {
    match kind {
        StreamKind::Synthetic(dist) => generate_stream(n, d, dist, seed),
        StreamKind::Expanding => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(31).wrapping_add(17));
            let growth = (1e8f64).ln() / n as f64;
            (0..n)
                .map(|i| {
                    let scale = (growth * i as f64).exp();
                    let c: Vec<f64> = (0..d).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
                    Point::new(c).unwrap()
                })
                .collect()
        }
    }
}

pub fn gaussian_points(rng: &mut ChaCha8Rng, n: usize, d: usize, scale: f64) -> Vec<Point> {
    (0..n)
        .map(|_| {
            let c: Vec<f64> = (0..d).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
            Point::new(c).unwrap()
        })
        .collect()
}
