//! JSON persistence for [`Cover`].
//!
//! ```json
//! {"epsilon": 0.5, "dim": 3, "p1": [0.0, 0.0, 0.0],
//!  "balls": [{"center": [..], "radius": 1.0, "guard": [..], "creation_index": 0}],
//!  "stats": {"points_seen": .., "points_discarded": .., "balls_created": ..,
//!            "balls_deleted": .., "r_max": ..}}
//! ```
//!
//! Floats are written in shortest round-trip form, so loading a saved sketch
//! reproduces it exactly and saving it again gives the same bytes. A
//! `solver_delta` field appears only when it differs from the default.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::cover::{default_solver_delta, Cover, CoverStats, GuardedBall};
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};

#[derive(Serialize, Deserialize)]
struct SketchFile {
    epsilon: f64,
    dim: usize,
    p1: Point,
    balls: Vec<BallRecord>,
    stats: CoverStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    solver_delta: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct BallRecord {
    center: Point,
    radius: f64,
    guard: Point,
    creation_index: u64,
}

impl From<&Cover> for SketchFile {
    fn from(cover: &Cover) -> Self {
        let solver_delta = cover.solver_delta();
        SketchFile {
            epsilon: cover.epsilon(),
            dim: cover.dim(),
            p1: cover.p1().clone(),
            balls: cover
                .balls()
                .iter()
                .map(|b| BallRecord {
                    center: b.ball.center().clone(),
                    radius: b.ball.radius(),
                    guard: b.guard.clone(),
                    creation_index: b.creation_index,
                })
                .collect(),
            stats: *cover.stats(),
            solver_delta: (solver_delta != default_solver_delta(cover.epsilon())).then_some(solver_delta),
        }
    }
}

impl TryFrom<SketchFile> for Cover {
    type Error = Error;

    fn try_from(file: SketchFile) -> Result<Self> {
        if file.p1.dim() != file.dim {
            return Err(Error::Sketch(format!(
                "p1 has {} coordinates but dim is {}",
                file.p1.dim(),
                file.dim
            )));
        }
        let balls = file
            .balls
            .into_iter()
            .map(|r| {
                Ok(GuardedBall {
                    ball: Ball::new(r.center, r.radius)?,
                    guard: r.guard,
                    creation_index: r.creation_index,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let solver_delta = file
            .solver_delta
            .unwrap_or_else(|| default_solver_delta(file.epsilon));
        Cover::from_parts(file.epsilon, solver_delta, file.p1, balls, file.stats)
    }
}

pub fn to_json(cover: &Cover) -> String {
    let mut s = serde_json::to_string_pretty(&SketchFile::from(cover)).expect("sketch serializes");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Cover> {
    let file: SketchFile = serde_json::from_str(s)?;
    Cover::try_from(file)
}

pub fn save<W: Write>(cover: &Cover, mut writer: W) -> Result<()> {
    writer.write_all(to_json(cover).as_bytes())?;
    Ok(())
}

pub fn load<R: Read>(mut reader: R) -> Result<Cover> {
    let mut s = String::new();
    reader.read_to_string(&mut s)?;
    from_json(&s)
}
