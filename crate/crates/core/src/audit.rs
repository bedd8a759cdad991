//! Invariant harness: replays a stream through a [`Cover`] while retaining
//! every point, and checks the structural guarantees after each insertion.
//!
//! | check | condition |
//! |---|---|
//! | growth | `r_next >= (1 + eps^2/8) r_prev - 1e-9 r_next` for consecutive new balls |
//! | eviction_guard | an evicted ball lies in `B(p1, eps^2 r_new / 40)` |
//! | nesting | `(1+eps)`-expansion of an evicted ball lies in that of the evicting ball and every later one, up to `1e-9` |
//! | coverage | every retained point is in the `(1 + eps + 1e-9)`-expansion of a live ball |
//! | space | live balls `<=` [`max_ball_bound`] |
//! | stored_points | `|Q| <= live balls + 1` and `p1` is in `Q` |
//! | guard_in_ball | `|guard - c| <= r + 1e-9 (1 + r)` |
//! | radii_order | live radii nondecreasing in creation order |
//! | counters | `points_seen = discarded + created + 1` |

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::cover::{max_ball_bound, Cover, InsertKind};
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};

pub const GROWTH_SLACK: f64 = 1e-9;
pub const NESTING_SLACK: f64 = 1e-9;
pub const COVERAGE_SLACK: f64 = 1e-9;
pub const GUARD_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub description: &'static str,
    pub evaluated: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
}

impl Check {
    fn new(name: &'static str, description: &'static str) -> Self {
        Check {
            name,
            description,
            evaluated: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.evaluated += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub epsilon: f64,
    pub points: u64,
    pub balls_created: u64,
    pub balls_deleted: u64,
    pub max_live_balls: usize,
    pub ball_bound: usize,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            write!(
                f,
                "{verdict} {:<15} {} ({} evaluated, {} violations)",
                c.name, c.description, c.evaluated, c.violations
            )?;
            if let Some(v) = &c.first_violation {
                write!(f, ": {v}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "points={} created={} deleted={} max_live={} bound={}",
            self.points, self.balls_created, self.balls_deleted, self.max_live_balls, self.ball_bound
        )
    }
}

const GROWTH: usize = 0;
const EVICTION_GUARD: usize = 1;
const NESTING: usize = 2;
const COVERAGE: usize = 3;
const SPACE: usize = 4;
const STORED: usize = 5;
const GUARD: usize = 6;
const ORDER: usize = 7;
const COUNTERS: usize = 8;

/// Drives a cover and checks every invariant after each insertion.
pub struct Auditor {
    cover: Cover,
    ball_bound: usize,
    points: Vec<Point>,
    /// Creation index of a live ball covering each retained point.
    covered_by: Vec<Option<u64>>,
    last_radius: Option<f64>,
    evicted: Vec<Ball>,
    max_live: usize,
    checks: Vec<Check>,
}

impl Auditor {
    pub fn new(epsilon: f64, p1: Point) -> Result<Self> {
        let cover = Cover::new(epsilon, p1.clone())?;
        Ok(Auditor {
            ball_bound: max_ball_bound(epsilon)?,
            cover,
            points: vec![p1],
            covered_by: vec![None],
            last_radius: None,
            evicted: Vec::new(),
            max_live: 0,
            checks: vec![
                Check::new("growth", "radii of consecutive new balls grow by 1+eps^2/8"),
                Check::new("eviction_guard", "evicted balls lie within eps^2 r/40 of p1"),
                Check::new("nesting", "evicted expansions nest in later expansions"),
                Check::new("coverage", "every point lies in some expanded live ball"),
                Check::new("space", "live balls within the explicit bound"),
                Check::new("stored_points", "|Q| <= live balls + 1 and p1 in Q"),
                Check::new("guard_in_ball", "guards lie in their own balls"),
                Check::new("radii_order", "live radii nondecreasing in creation order"),
                Check::new("counters", "points_seen = discarded + created + 1"),
            ],
        })
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn insert(&mut self, p: Point) -> Result<()> {
        let outcome = self.cover.insert(p.clone())?;
        self.points.push(p);
        self.covered_by.push(None);
        let eps = self.cover.epsilon();

        if outcome.kind == InsertKind::Created {
            let created = outcome.created.as_ref().expect("created ball");
            let r = created.ball.radius();
            if let Some(prev) = self.last_radius {
                let need = (1.0 + eps * eps / 8.0) * prev - GROWTH_SLACK * r;
                self.checks[GROWTH].record(r >= need, || {
                    format!("ball {}: radius {r} after {prev}", created.creation_index)
                });
            }
            self.last_radius = Some(r);

            let p1 = self.cover.p1();
            for old in &outcome.evicted {
                let reach = old.ball.center().dist_unchecked(p1) + old.ball.radius();
                let limit = eps * eps * r / 40.0;
                self.checks[EVICTION_GUARD].record(reach <= limit, || {
                    format!("ball {} reaches {reach} from p1, limit {limit}", old.creation_index)
                });
            }
            self.evicted.extend(outcome.evicted.iter().map(|b| b.ball.clone()));
            for old in &self.evicted {
                let lhs = old.center().dist_unchecked(created.ball.center()) + (1.0 + eps) * old.radius();
                let rhs = (1.0 + eps) * r + NESTING_SLACK;
                self.checks[NESTING].record(lhs <= rhs, || {
                    format!("ball {} does not nest an earlier evicted ball: {lhs} > {rhs}", created.creation_index)
                });
            }
        }

        self.check_coverage();
        self.check_structure();
        Ok(())
    }

    fn check_coverage(&mut self) {
        let eps = self.cover.epsilon();
        let scale = 1.0 + eps + COVERAGE_SLACK;
        let live: HashSet<u64> = self.cover.balls().iter().map(|b| b.creation_index).collect();
        for (i, p) in self.points.iter().enumerate() {
            let current = self.covered_by[i];
            let still_live = current.is_some_and(|c| live.contains(&c));
            if still_live {
                // Verified when assigned; balls never change after creation.
                self.checks[COVERAGE].evaluated += 1;
                continue;
            }
            let found = self
                .cover
                .balls()
                .iter()
                .find(|b| b.ball.center().dist_unchecked(p) <= scale * b.ball.radius())
                .map(|b| b.creation_index);
            self.covered_by[i] = found;
            self.checks[COVERAGE].record(found.is_some(), || {
                format!("point {i} is outside every expanded live ball")
            });
        }
    }

    fn check_structure(&mut self) {
        let cover = &self.cover;
        let live = cover.balls().len();
        self.max_live = self.max_live.max(live);
        let bound = self.ball_bound;
        self.checks[SPACE].record(live <= bound, || format!("{live} live balls > bound {bound}"));

        let q = cover.guards();
        let ok = q.len() <= live + 1 && q.first() == Some(cover.p1());
        self.checks[STORED].record(ok, || format!("|Q| = {} with {live} live balls", q.len()));

        for b in cover.balls() {
            let r = b.ball.radius();
            let d = b.guard.dist_unchecked(b.ball.center());
            self.checks[GUARD].record(d <= r + GUARD_SLACK * (1.0 + r), || {
                format!("guard of ball {} at {d} from center, radius {r}", b.creation_index)
            });
        }
        for w in cover.balls().windows(2) {
            let (a, b) = (w[0].ball.radius(), w[1].ball.radius());
            self.checks[ORDER].record(a <= b, || {
                format!("ball {} radius {a} > ball {} radius {b}", w[0].creation_index, w[1].creation_index)
            });
        }
        let s = cover.stats();
        self.checks[COUNTERS].record(
            s.points_seen == s.points_discarded + s.balls_created + 1
                && s.balls_created - s.balls_deleted == live as u64,
            || format!("{s:?}"),
        );
    }

    pub fn finish(self) -> AuditReport {
        let s = self.cover.stats();
        AuditReport {
            epsilon: self.cover.epsilon(),
            points: s.points_seen,
            balls_created: s.balls_created,
            balls_deleted: s.balls_deleted,
            max_live_balls: self.max_live,
            ball_bound: self.ball_bound,
            checks: self.checks,
        }
    }
}

/// Audits a whole stream; its first point becomes `p1`.
pub fn audit_stream<I>(epsilon: f64, points: I) -> Result<AuditReport>
where
    I: IntoIterator<Item = Point>,
{
    let mut points = points.into_iter();
    let p1 = points.next().ok_or(Error::EmptyInput)?;
    let mut auditor = Auditor::new(epsilon, p1)?;
    for p in points {
        auditor.insert(p)?;
    }
    Ok(auditor.finish())
}
