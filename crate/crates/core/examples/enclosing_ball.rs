//! Enclosing ball of a whole stream from the sketch alone, next to the
//! certified solver run on every point and the one-pass Gonzalez ball.

use guarded_ball_cover::oracle::{gonzalez_2meb, reference_meb};
use guarded_ball_cover::workload::{generate_stream, Distribution};
use guarded_ball_cover::{approx_meb, meb_points, Cover};

fn main() -> guarded_ball_cover::Result<()> {
    let points = generate_stream(4000, 15, Distribution::Sphere, 3);
    let reference = reference_meb(&points)?;
    println!("reference radius      {:.6}", reference.radius());

    let res = meb_points(&points, 0.01)?;
    println!(
        "solver at delta 0.01  {:.6} ({} iterations, certified ratio {:.5})",
        res.ball.radius(),
        res.iterations,
        res.certified_ratio
    );

    for eps in [0.1, 0.2, 0.5] {
        let cover = Cover::from_points(eps, points.iter().cloned())?;
        let ball = approx_meb(&cover)?;
        let inside = points.iter().all(|p| ball.contains(p).unwrap_or(false));
        println!(
            "sketch eps {eps:<4}       {:.6} (ratio {:.4}, contains stream: {inside})",
            ball.radius(),
            ball.radius() / reference.radius()
        );
    }

    let g = gonzalez_2meb(points.iter().cloned())?;
    println!("gonzalez              {:.6}", g.radius());
    Ok(())
}
