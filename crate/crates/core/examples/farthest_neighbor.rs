//! Sketch a Gaussian stream and compare farthest-neighbor answers with brute
//! force over the retained stream.
//!
//!     cargo run --example farthest_neighbor -- [epsilon]

use guarded_ball_cover::oracle::brute_fn;
use guarded_ball_cover::workload::{generate_queries, generate_stream, Distribution};
use guarded_ball_cover::{farthest_neighbor, Cover};

fn main() -> guarded_ball_cover::Result<()> {
    let eps: f64 = std::env::args().nth(1).map_or(0.2, |s| s.parse().expect("epsilon"));
    let points = generate_stream(5000, 20, Distribution::Gaussian, 1);
    let cover = Cover::from_points(eps, points.iter().cloned())?;
    println!(
        "{} points, {} live balls, {} stored points",
        cover.stats().points_seen,
        cover.balls().len(),
        cover.guards().len()
    );

    let mut worst = 1.0f64;
    for x in generate_queries(100, 20, 1) {
        let got = x.dist(farthest_neighbor(&cover, &x)?)?;
        let truth = x.dist(brute_fn(&points, &x)?)?;
        worst = worst.max(truth / got);
    }
    println!("worst ratio over 100 queries: {worst:.4} (guarantee {:.4})", 2f64.sqrt() + 2.0 * eps);
    Ok(())
}
