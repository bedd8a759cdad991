//! Replay a stream whose scale keeps growing, so old balls get evicted, and
//! check every structural invariant after each insertion.

use guarded_ball_cover::audit::audit_stream;
use guarded_ball_cover::Point;

fn main() -> guarded_ball_cover::Result<()> {
    let points: Vec<Point> = (0..400)
        .map(|i| {
            let s = 1.05f64.powi(i);
            let angle = i as f64 * 2.4;
            Point::new(vec![s * angle.cos(), s * angle.sin(), (i % 5) as f64])
        })
        .collect::<Result<_, _>>()?;
    let report = audit_stream(0.3, points)?;
    print!("{report}");
    Ok(())
}
