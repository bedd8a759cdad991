mod support;

use guarded_ball_cover::audit::audit_stream;
use guarded_ball_cover::oracle::{brute_fn, brute_fp, gonzalez_2meb, reference_meb};
use guarded_ball_cover::{farthest_neighbor, sketch, Cover, Point};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{gaussian_points, stream, STREAM_KINDS};

#[test]
fn brute_force_oracles_are_permutation_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut points = gaussian_points(&mut rng, 150, 7, 1.0);
    let queries = gaussian_points(&mut rng, 20, 7, 2.0);
    let before: Vec<f64> = queries.iter().map(|x| x.dist(brute_fn(&points, x).unwrap()).unwrap()).collect();
    let (a, b) = brute_fp(&points).unwrap();
    let diam = a.dist(b).unwrap();
    points.shuffle(&mut rng);
    let after: Vec<f64> = queries.iter().map(|x| x.dist(brute_fn(&points, x).unwrap()).unwrap()).collect();
    assert_eq!(before, after);
    let (a, b) = brute_fp(&points).unwrap();
    assert_eq!(a.dist(b).unwrap(), diam);
}

#[test]
fn gonzalez_ball_contains_the_stream() {
    for (seed, kind) in STREAM_KINDS.iter().enumerate() {
        let points = stream(*kind, 500, 6, seed as u64);
        let ball = gonzalez_2meb(points.iter().cloned()).unwrap();
        assert!(points.iter().all(|p| ball.contains(p).unwrap()));
        assert!(ball.radius() <= 2.0 * reference_meb(&points).unwrap().radius() * (1.0 + 1e-9));
    }
}

#[test]
fn reference_ball_is_locally_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (n, d) in [(40, 3), (120, 10)] {
        let points = gaussian_points(&mut rng, n, d, 1.0);
        let ball = reference_meb(&points).unwrap();
        let r = ball.radius();
        for step in gaussian_points(&mut rng, 10_000, d, 1e-3 * r) {
            let moved: Vec<f64> = ball.center().coords().iter().zip(step.coords()).map(|(c, s)| c + s).collect();
            let moved = Point::new(moved).unwrap();
            let reach = points.iter().map(|p| moved.dist(p).unwrap()).fold(0.0, f64::max);
            assert!(r <= reach * (1.0 + 1e-9), "perturbed center beats reference: {reach} < {r}");
        }
    }
}

#[test]
fn farthest_neighbor_is_read_only_and_order_independent() {
    let points = stream(STREAM_KINDS[3], 800, 5, 22);
    let cover = Cover::from_points(0.3, points).unwrap();
    let snapshot = sketch::to_json(&cover);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut queries = gaussian_points(&mut rng, 50, 5, 10.0);
    let forward: Vec<(Point, Point)> = queries
        .iter()
        .map(|x| (x.clone(), farthest_neighbor(&cover, x).unwrap().clone()))
        .collect();
    queries.reverse();
    for x in &queries {
        let expected = &forward.iter().find(|(q, _)| q == x).unwrap().1;
        assert_eq!(farthest_neighbor(&cover, x).unwrap(), expected);
    }
    assert_eq!(sketch::to_json(&cover), snapshot);
}

#[test]
fn replay_is_deterministic() {
    for (seed, kind) in STREAM_KINDS.iter().enumerate() {
        let points = stream(*kind, 700, 9, 30 + seed as u64);
        let a = Cover::from_points(0.2, points.clone()).unwrap();
        let b = Cover::from_points(0.2, points).unwrap();
        assert_eq!(sketch::to_json(&a), sketch::to_json(&b));
    }
}

#[test]
fn audit_passes_on_every_stream_kind() {
    for (seed, kind) in STREAM_KINDS.iter().enumerate() {
        for eps in [0.1, 0.5, 1.0] {
            let report = audit_stream(eps, stream(*kind, 600, 4, 40 + seed as u64)).unwrap();
            assert!(report.passed(), "{kind:?} eps {eps}\n{report}");
        }
    }
}

fn streams() -> impl Strategy<Value = Vec<Point>> {
    (1usize..5).prop_flat_map(|d| {
        prop::collection::vec((prop::collection::vec(-1.0f64..1.0, d), -3i32..12), 1..80).prop_map(|rows| {
            rows.into_iter()
                .map(|(v, e)| Point::new(v.into_iter().map(|x| x * 2f64.powi(e)).collect()).unwrap())
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn audited_invariants_hold(points in streams(), eps in 0.05f64..1.0) {
        let report = audit_stream(eps, points).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn queries_meet_their_bounds(points in streams(), eps in 0.05f64..1.0) {
        let cover = Cover::from_points(eps, points.clone()).unwrap();
        let bound = std::f64::consts::SQRT_2 + 2.0 * eps + 1e-9;
        for x in points.iter().take(10) {
            let got = x.dist(farthest_neighbor(&cover, x).unwrap()).unwrap();
            let truth = x.dist(brute_fn(&points, x).unwrap()).unwrap();
            prop_assert!(truth <= bound * got || truth == 0.0);
        }
        let ball = guarded_ball_cover::approx_meb(&cover).unwrap();
        for p in &points {
            prop_assert!(ball.contains(p).unwrap());
        }
    }
}
