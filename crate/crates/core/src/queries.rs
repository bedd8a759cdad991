//! Extent queries answered from a [`Cover`]: farthest neighbor, running
//! diameter, approximate enclosing ball and the coreset.

use crate::cover::{check_epsilon, Cover};
use crate::error::Result;
use crate::geometry::{Ball, Point};
use crate::meb::meb_balls;

/// Returns the guard farthest from `x`. Ties go to the earlier guard
/// (`p1` first, then creation order).
///
/// The answer is a `(sqrt(2) + 2 eps)`-approximate farthest neighbor of `x`
/// among all points the cover has seen.
pub fn farthest_neighbor<'a>(cover: &'a Cover, x: &Point) -> Result<&'a Point> {
    x.check_dim(cover.dim())?;
    let mut best = cover.p1();
    let mut best_dist = x.dist_sq_unchecked(best);
    for q in cover.guard_iter().skip(1) {
        let d = x.dist_sq_unchecked(q);
        if d > best_dist {
            best = q;
            best_dist = d;
        }
    }
    Ok(best)
}

/// Approximate enclosing ball of the stream: the MEB of the
/// `(1 + eps)`-expansions of all live balls, solved to `1 + eps / 4`.
///
/// Every live expanded ball is enclosed, hence every stream point. With no
/// balls yet, the zero-radius ball at `p1`.
pub fn approx_meb(cover: &Cover) -> Result<Ball> {
    if cover.balls().is_empty() {
        return Ok(Ball::point(cover.p1().clone()));
    }
    let eps = cover.epsilon();
    let expanded: Vec<Ball> = cover.balls().iter().map(|b| b.ball.expanded(eps)).collect();
    meb_balls(&expanded, eps / 4.0)
}

/// The guard set `Q`, a `(sqrt(2) + 2 eps)`-coreset of the stream for the
/// minimum enclosing ball.
pub fn coreset(cover: &Cover) -> Vec<Point> {
    cover.guards()
}

/// Running farthest pair. Each observed point is inserted into the cover and
/// then paired with its farthest guard.
#[derive(Clone, Debug)]
pub struct DiameterState {
    epsilon: f64,
    inner: Option<Running>,
}

#[derive(Clone, Debug)]
struct Running {
    cover: Cover,
    best_pair: (Point, Point),
    best_dist: f64,
}

impl DiameterState {
    pub fn new(epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        Ok(DiameterState {
            epsilon,
            inner: None,
        })
    }

    pub fn observe(&mut self, p: Point) -> Result<()> {
        let Some(run) = self.inner.as_mut() else {
            let cover = Cover::new(self.epsilon, p.clone())?;
            self.inner = Some(Running {
                cover,
                best_pair: (p.clone(), p),
                best_dist: 0.0,
            });
            return Ok(());
        };
        run.cover.insert(p.clone())?;
        let far = farthest_neighbor(&run.cover, &p)?;
        let d = p.dist_unchecked(far);
        if d > run.best_dist {
            run.best_pair = (p, far.clone());
            run.best_dist = d;
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn cover(&self) -> Option<&Cover> {
        self.inner.as_ref().map(|r| &r.cover)
    }

    pub fn best_pair(&self) -> Option<(&Point, &Point)> {
        self.inner.as_ref().map(|r| (&r.best_pair.0, &r.best_pair.1))
    }

    /// Zero before any point has been observed.
    pub fn best_dist(&self) -> f64 {
        self.inner.as_ref().map_or(0.0, |r| r.best_dist)
    }
}
