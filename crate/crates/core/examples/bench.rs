//! Ratio report for one seeded configuration, as emitted by `gbc bench`.

use guarded_ball_cover::workload::{run_bench, BenchConfig, Distribution};

fn main() -> guarded_ball_cover::Result<()> {
    let config = BenchConfig {
        n: 2000,
        d: 20,
        epsilon: 0.2,
        distribution: Distribution::Clustered,
        seed: 6,
    };
    for e in run_bench(&config, true)? {
        println!("{:<18} {:.4} <= {:.4}  {}", e.metric, e.measured_max_ratio, e.bound, if e.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
