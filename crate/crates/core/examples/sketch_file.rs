//! Save a sketch as JSON, load it back and keep streaming into it.

use guarded_ball_cover::workload::{generate_stream, Distribution};
use guarded_ball_cover::{sketch, Cover};

fn main() -> guarded_ball_cover::Result<()> {
    let points = generate_stream(2000, 4, Distribution::Clustered, 5);
    let (first, rest) = points.split_at(1000);

    let cover = Cover::from_points(0.5, first.iter().cloned())?;
    let path = std::env::temp_dir().join("gbc_example_sketch.json");
    sketch::save(&cover, std::fs::File::create(&path)?)?;
    println!("saved {} ({} bytes)", path.display(), std::fs::metadata(&path)?.len());

    let mut resumed = sketch::load(std::fs::File::open(&path)?)?;
    for p in rest {
        resumed.insert(p.clone())?;
    }
    let direct = Cover::from_points(0.5, points.iter().cloned())?;
    println!("resumed sketch matches a single pass: {}", sketch::to_json(&resumed) == sketch::to_json(&direct));
    println!("{}", sketch::to_json(&resumed).lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}
