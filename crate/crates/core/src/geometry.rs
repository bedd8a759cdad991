//! Points, balls and the distance primitives everything else is built on.
//!
//! All arithmetic is plain `f64` without compensated summation. Membership
//! tests compare with `<=` and no slack, so a replayed stream always makes
//! the same decisions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in d-dimensional Euclidean space with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Point(coords))
    }

    /// The origin of `dim`-dimensional space.
    pub fn origin(dim: usize) -> Result<Self> {
        Point::new(vec![0.0; dim])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    pub fn dist(&self, other: &Point) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(self.dist_sq_unchecked(other).sqrt())
    }

    /// Squared distance without the dimension check. Callers guarantee
    /// equal dimensions.
    pub(crate) fn dist_sq_unchecked(&self, other: &Point) -> f64 {
        dist_sq(&self.0, &other.0)
    }

    pub(crate) fn dist_unchecked(&self, other: &Point) -> f64 {
        self.dist_sq_unchecked(other).sqrt()
    }

    /// Comma-separated coordinates in shortest round-trip form, the same
    /// syntax the CSV reader accepts.
    pub fn to_csv(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{:?}", self.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = x - y;
            t * t
        })
        .sum()
}

/// A closed ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBall")]
pub struct Ball {
    center: Point,
    radius: f64,
}

#[derive(Deserialize)]
struct RawBall {
    center: Point,
    radius: f64,
}

impl TryFrom<RawBall> for Ball {
    type Error = Error;

    fn try_from(raw: RawBall) -> Result<Self> {
        Ball::new(raw.center, raw.radius)
    }
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Ball { center, radius })
    }

    /// The degenerate ball holding only `center`.
    pub fn point(center: Point) -> Self {
        Ball {
            center,
            radius: 0.0,
        }
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// The ball with the same center and radius scaled by `1 + eps`.
    pub fn expanded(&self, eps: f64) -> Ball {
        Ball {
            center: self.center.clone(),
            radius: (1.0 + eps) * self.radius,
        }
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(self.center.dist(p)? <= self.radius)
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn dist(p: &Point, q: &Point) -> Result<f64> {
    p.dist(q)
}

/// Whether `p` lies in the `(1 + eps)`-expansion of `b`. The boundary counts
/// as inside.
pub fn in_expansion(b: &Ball, eps: f64, p: &Point) -> Result<bool> {
    Ok(b.center.dist(p)? <= (1.0 + eps) * b.radius)
}

/// Distance from `x` to the farthest point of `b`.
pub fn ball_support_dist(x: &Point, b: &Ball) -> Result<f64> {
    Ok(x.dist(&b.center)? + b.radius)
}
