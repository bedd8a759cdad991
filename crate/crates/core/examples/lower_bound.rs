//! The hard instance: a sketch missing any basis point answers some query
//! with ratio above sqrt(2) + eps.

use guarded_ball_cover::adversary::{gen_instance, simulate_missing, verify};

fn main() -> guarded_ball_cover::Result<()> {
    for eps in [0.5, 0.25, 0.1, 0.05] {
        let instance = gen_instance(eps, None)?;
        let report = verify(&instance)?;
        let sim = simulate_missing(&instance)?;
        println!(
            "eps {eps:<4} k={:<2} d_far {:.5} d_near {:.5} ratio {:.5} > {:.5}  verified {}  subsets {}",
            instance.k,
            instance.d_far,
            instance.d_near,
            instance.ratio(),
            instance.target(),
            report.pass && sim.pass,
            sim.subsets_checked
        );
    }
    Ok(())
}
