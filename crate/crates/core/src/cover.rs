//! The guarded ball cover sketch.
//!
//! The cover keeps the first stream point `p1` and a creation-ordered list of
//! balls, each carrying one stream point as its guard. The guard set
//! `Q = {p1} ∪ {guards}` is the only point data the sketch stores. A new point
//! that falls inside the `(1 + eps)`-expansion of some live ball is dropped.
//! Otherwise the sketch computes an approximate MEB of `Q ∪ {p}`, appends it
//! with `p` as guard, and evicts every ball whose radius falls below
//! `eps^2 r / 80` for the new radius `r`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};
use crate::meb::meb_points;

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

/// Solver tolerance used for the per-insertion MEB: `eps^2 / 16`.
pub fn default_solver_delta(epsilon: f64) -> f64 {
    epsilon * epsilon / 16.0
}

/// Balls whose radius is below this fraction of the newest radius are evicted.
pub fn eviction_threshold(epsilon: f64, new_radius: f64) -> f64 {
    epsilon * epsilon * new_radius / 80.0
}

/// Upper bound on the number of live balls,
/// `ceil(ln(80 / eps^2) / ln(1 + eps^2 / 8)) + 1`.
///
/// Consecutive radii grow by at least `1 + eps^2 / 8` and every live ball is
/// at least `eps^2 / 80` times the newest one.
pub fn max_ball_bound(epsilon: f64) -> Result<usize> {
    check_epsilon(epsilon)?;
    let e2 = epsilon * epsilon;
    let steps = (80.0 / e2).ln() / (e2 / 8.0).ln_1p();
    Ok(steps.ceil() as usize + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GuardedBall {
    pub ball: Ball,
    pub guard: Point,
    /// Zero-based position of this ball among all balls ever created.
    pub creation_index: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoverStats {
    pub points_seen: u64,
    pub points_discarded: u64,
    pub balls_created: u64,
    pub balls_deleted: u64,
    /// Largest radius of any ball created so far.
    pub r_max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertKind {
    Discarded,
    Created,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InsertOutcome {
    pub kind: InsertKind,
    pub created: Option<GuardedBall>,
    pub evicted: Vec<GuardedBall>,
}

impl InsertOutcome {
    fn discarded() -> Self {
        InsertOutcome {
            kind: InsertKind::Discarded,
            created: None,
            evicted: Vec::new(),
        }
    }
}

/// The sketch. Single writer: [`Cover::insert`] takes `&mut self`, queries
/// take `&self`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    epsilon: f64,
    solver_delta: f64,
    p1: Point,
    balls: Vec<GuardedBall>,
    stats: CoverStats,
}

impl Cover {
    pub fn new(epsilon: f64, p1: Point) -> Result<Self> {
        Cover::with_solver_delta(epsilon, p1, default_solver_delta(epsilon))
    }

    /// Like [`Cover::new`] with a custom MEB tolerance, for experiments.
    pub fn with_solver_delta(epsilon: f64, p1: Point, solver_delta: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(solver_delta.is_finite() && solver_delta > 0.0) {
            return Err(Error::InvalidTolerance(solver_delta));
        }
        Ok(Cover {
            epsilon,
            solver_delta,
            p1,
            balls: Vec::new(),
            stats: CoverStats {
                points_seen: 1,
                ..CoverStats::default()
            },
        })
    }

    /// Builds a cover from a stream, taking its first element as `p1`.
    pub fn from_points<I>(epsilon: f64, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        let mut points = points.into_iter();
        let p1 = points.next().ok_or(Error::EmptyInput)?;
        let mut cover = Cover::new(epsilon, p1)?;
        for p in points {
            cover.insert(p)?;
        }
        Ok(cover)
    }

    /// Reassembles a cover from stored parts, checking its invariants.
    pub(crate) fn from_parts(
        epsilon: f64,
        solver_delta: f64,
        p1: Point,
        balls: Vec<GuardedBall>,
        stats: CoverStats,
    ) -> Result<Self> {
        let mut cover = Cover::with_solver_delta(epsilon, p1, solver_delta)?;
        let dim = cover.dim();
        let mut last_index = None;
        for b in &balls {
            b.ball.center().check_dim(dim)?;
            b.guard.check_dim(dim)?;
            if last_index.is_some_and(|i| b.creation_index <= i) {
                return Err(Error::Sketch("balls are not in creation order".into()));
            }
            if b.creation_index >= stats.balls_created {
                return Err(Error::Sketch("creation index beyond balls_created".into()));
            }
            last_index = Some(b.creation_index);
        }
        if stats.points_seen != stats.points_discarded + stats.balls_created + 1 {
            return Err(Error::Sketch("inconsistent point counters".into()));
        }
        if stats.balls_created - stats.balls_deleted != balls.len() as u64 {
            return Err(Error::Sketch("live ball count does not match counters".into()));
        }
        cover.balls = balls;
        cover.stats = stats;
        Ok(cover)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn solver_delta(&self) -> f64 {
        self.solver_delta
    }

    pub fn dim(&self) -> usize {
        self.p1.dim()
    }

    pub fn p1(&self) -> &Point {
        &self.p1
    }

    /// Live balls in creation order.
    pub fn balls(&self) -> &[GuardedBall] {
        &self.balls
    }

    pub fn stats(&self) -> &CoverStats {
        &self.stats
    }

    /// `p1` followed by the guard of every live ball, duplicates included.
    pub(crate) fn guard_iter(&self) -> impl Iterator<Item = &Point> {
        std::iter::once(&self.p1).chain(self.balls.iter().map(|b| &b.guard))
    }

    /// The guard set `Q`: `p1` first, then guards in creation order, with
    /// exact coordinate duplicates removed.
    pub fn guards(&self) -> Vec<Point> {
        let mut seen = HashSet::new();
        self.guard_iter()
            .filter(|p| seen.insert(coordinate_key(p)))
            .cloned()
            .collect()
    }

    /// Index of the first live ball whose expansion contains `p`.
    pub fn covering_ball(&self, p: &Point) -> Result<Option<usize>> {
        p.check_dim(self.dim())?;
        let scale = 1.0 + self.epsilon;
        Ok(self
            .balls
            .iter()
            .position(|b| b.ball.center().dist_unchecked(p) <= scale * b.ball.radius()))
    }

    /// Processes one stream point.
    pub fn insert(&mut self, p: Point) -> Result<InsertOutcome> {
        if self.covering_ball(&p)?.is_some() {
            self.stats.points_seen += 1;
            self.stats.points_discarded += 1;
            return Ok(InsertOutcome::discarded());
        }

        let mut input: Vec<Point> = self.guard_iter().cloned().collect();
        input.push(p.clone());
        let ball = meb_points(&input, self.solver_delta)?.ball;

        let threshold = eviction_threshold(self.epsilon, ball.radius());
        let (kept, evicted): (Vec<_>, Vec<_>) = std::mem::take(&mut self.balls)
            .into_iter()
            .partition(|b| b.ball.radius() >= threshold);
        self.balls = kept;

        let created = GuardedBall {
            creation_index: self.stats.balls_created,
            guard: p,
            ball,
        };
        self.stats.points_seen += 1;
        self.stats.balls_created += 1;
        self.stats.balls_deleted += evicted.len() as u64;
        self.stats.r_max = self.stats.r_max.max(created.ball.radius());
        self.balls.push(created.clone());

        Ok(InsertOutcome {
            kind: InsertKind::Created,
            created: Some(created),
            evicted,
        })
    }
}

fn coordinate_key(p: &Point) -> Vec<u64> {
    // -0.0 and 0.0 compare equal, so they share a key.
    p.coords().iter().map(|c| (c + 0.0).to_bits()).collect()
}
