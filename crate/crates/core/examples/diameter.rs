//! Maintain an approximate farthest pair over a clustered stream.

use guarded_ball_cover::oracle::brute_fp;
use guarded_ball_cover::workload::{generate_stream, Distribution};
use guarded_ball_cover::DiameterState;

fn main() -> guarded_ball_cover::Result<()> {
    let eps = 0.2;
    let points = generate_stream(3000, 10, Distribution::Clustered, 2);
    let mut state = DiameterState::new(eps)?;
    for (i, p) in points.iter().enumerate() {
        state.observe(p.clone())?;
        if (i + 1) % 1000 == 0 {
            println!("after {:>4} points: best pair distance {:.4}", i + 1, state.best_dist());
        }
    }
    let (a, b) = brute_fp(&points)?;
    let diam = a.dist(b)?;
    println!("true diameter {diam:.4}, ratio {:.4}", diam / state.best_dist());
    Ok(())
}
