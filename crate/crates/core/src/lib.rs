//! Single-pass streaming sketch for extent queries over high-dimensional
//! Euclidean point streams.
//!
//! A [`Cover`] stores `O(eps^-2 log(1/eps))` stream points and answers
//!
//! * farthest-neighbor queries within `sqrt(2) + 2 eps` ([`farthest_neighbor`]),
//! * the running farthest pair within `sqrt(2) + 2 eps` ([`DiameterState`]),
//! * an enclosing ball of the whole stream ([`approx_meb`]),
//! * a `(sqrt(2) + 2 eps)`-coreset for the minimum enclosing ball ([`coreset`]).
//!
//! [`oracle`] holds brute-force ground truth, [`audit`] replays a stream and
//! checks every structural invariant, and [`adversary`] builds the instance
//! on which any algorithm storing too few points must fail.

pub mod adversary;
pub mod audit;
pub mod cli;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod io;
pub mod meb;
pub mod oracle;
pub mod queries;
pub mod sketch;
pub mod workload;

pub use cover::{max_ball_bound, Cover, CoverStats, GuardedBall, InsertKind, InsertOutcome};
pub use error::{Error, Result};
pub use geometry::{ball_support_dist, dist, in_expansion, Ball, Point};
pub use meb::{dual_lower_bound, meb_balls, meb_points, MebResult};
pub use queries::{approx_meb, coreset, farthest_neighbor, DiameterState};
