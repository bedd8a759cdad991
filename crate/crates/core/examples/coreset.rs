//! The stored points form a coreset: the enclosing ball of the coreset,
//! scaled up slightly, covers the entire stream.

use guarded_ball_cover::oracle::reference_meb;
use guarded_ball_cover::workload::{generate_stream, Distribution};
use guarded_ball_cover::{coreset, Cover};

fn main() -> guarded_ball_cover::Result<()> {
    let points = generate_stream(5000, 30, Distribution::Gaussian, 4);
    for eps in [0.1, 0.3, 0.6] {
        let cover = Cover::from_points(eps, points.iter().cloned())?;
        let q = coreset(&cover);
        let ball = reference_meb(&q)?;
        let reach = points.iter().map(|p| ball.center().dist(p).unwrap()).fold(0.0, f64::max);
        println!(
            "eps {eps}: |Q| = {:>3}, farthest stream point at {:.4} r(MEB(Q)), bound {:.4}",
            q.len(),
            reach / ball.radius(),
            2f64.sqrt() + 2.0 * eps
        );
    }
    Ok(())
}
