use nalgebra::Matrix2;
use proptest::prelude::*;

use udgloc::geometry::{distance, Point};
use udgloc::localizer::{
    bilaterate, localize_from_seeds, localize_graph, propose_trilateration, replay_soundness, trilaterate,
    AlgorithmConfig, FailReason, LocalizationState, Method, Mode, SeedPlacement, SigmaVerdict,
};
use udgloc::metrics::{mean_offset, Align, RigidTransform};
use udgloc::network::{generate_random_udg, generate_wheel, WsnGraph};

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;

/// a and c on a horizontal line, b above it, d below it mirroring b.
/// Every pair is an edge except {b, d}.
fn missing_edge_graph() -> WsnGraph {
    let g = WsnGraph::from_positions(
        vec![
            Point::new(0.05, 0.0),
            Point::new(0.5, 0.6),
            Point::new(0.95, 0.0),
            Point::new(0.5, -0.6),
        ],
        1.0,
    )
    .unwrap();
    assert_eq!(g.edge_count(), 5);
    assert!(!g.is_neighbor(B, D));
    g
}

fn violations() -> AlgorithmConfig {
    AlgorithmConfig::new(Mode::Violations)
}

#[test]
fn missing_edge_picks_the_non_violating_candidate() {
    let g = missing_edge_graph();
    let mut state = LocalizationState::new(&g, Mode::Violations);
    for id in [A, B, C] {
        state.place_seed(id, g.position(id));
    }
    assert_eq!(state.localized_neighbors(D), &[A, C]);
    let placed = bilaterate(&mut state, D, &violations()).unwrap();
    assert!(distance(placed, g.position(D)) < 1e-12);
    let formation = state.into_formation();
    let record = formation.record(D).unwrap();
    assert_eq!(record.method, Method::Bilaterate);
    // p1 is left of a -> c, i.e. the mirror image sitting on b
    assert_eq!(record.violations, Some([true, false]));
    assert!(distance(record.candidates.unwrap().p1, g.position(B)) < 1e-12);
}

#[test]
fn bilateration_keeps_ambiguity_without_evidence() {
    let g = missing_edge_graph();
    let mut state = LocalizationState::new(&g, Mode::Violations);
    state.place_seed(A, g.position(A));
    state.place_seed(C, g.position(C));
    assert_eq!(bilaterate(&mut state, D, &violations()), Err(FailReason::BothClear));
    assert!(!state.is_localized(D));
}

#[test]
fn bilateration_both_violate() {
    // node 4 sits far away but carries a wrong estimate right next to d
    let g = WsnGraph::from_positions(
        vec![
            Point::new(0.05, 0.0),
            Point::new(0.5, 0.6),
            Point::new(0.95, 0.0),
            Point::new(0.5, -0.6),
            Point::new(0.5, 3.0),
        ],
        1.0,
    )
    .unwrap();
    let mut state = LocalizationState::new(&g, Mode::Violations);
    for id in [A, B, C] {
        state.place_seed(id, g.position(id));
    }
    state.place_seed(4, Point::new(0.5, -0.65));
    assert_eq!(bilaterate(&mut state, D, &violations()), Err(FailReason::BothViolate));
}

#[test]
fn bilateration_without_intersection() {
    let g = WsnGraph::from_edges(
        vec![Point::new(0.0, 0.0), Point::new(0.9, 0.0), Point::new(0.45, 0.3)],
        1.0,
        vec![(0, 1, 0.9), (0, 2, 0.1), (1, 2, 0.1)],
    )
    .unwrap();
    let mut state = LocalizationState::new(&g, Mode::Violations);
    state.place_seed(0, g.position(0));
    state.place_seed(1, g.position(1));
    assert_eq!(
        bilaterate(&mut state, 2, &violations()),
        Err(FailReason::NoIntersection)
    );
}

#[test]
fn exact_trilateration_lands_on_truth() {
    let g = WsnGraph::from_positions(
        vec![
            Point::new(0.0, 0.0),
            Point::new(0.8, 0.0),
            Point::new(0.3, 0.7),
            Point::new(0.5, 0.4),
        ],
        1.0,
    )
    .unwrap();
    for mode in [Mode::Violations, Mode::Pure] {
        let cfg = AlgorithmConfig::new(mode);
        let mut state = LocalizationState::new(&g, mode);
        for id in 0..3 {
            state.place_seed(id, g.position(id));
        }
        let p = trilaterate(&mut state, 3, &cfg).unwrap();
        assert!(distance(p, g.position(3)) < 1e-9 * g.theta());
    }
}

#[test]
fn symmetric_third_anchor_gives_sigma_null() {
    // three anchors on one line cannot tell the mirror images apart
    let g = WsnGraph::from_positions(
        vec![
            Point::new(0.0, 0.0),
            Point::new(0.4, 0.0),
            Point::new(0.8, 0.0),
            Point::new(0.4, 0.5),
        ],
        1.0,
    )
    .unwrap();
    for mode in [Mode::Violations, Mode::Pure] {
        let mut state = LocalizationState::new(&g, mode);
        for id in 0..3 {
            state.place_seed(id, g.position(id));
        }
        let cfg = AlgorithmConfig::new(mode).with_p(5.0);
        assert_eq!(propose_trilateration(&state, 3, &cfg), Err(FailReason::SigmaNull));
    }
}

#[test]
fn violation_decides_before_sigma() {
    let g = WsnGraph::from_positions(
        vec![
            Point::new(0.05, 0.0),
            Point::new(0.5, 0.6),
            Point::new(0.95, 0.0),
            Point::new(0.5, -0.6),
            Point::new(0.5, -0.05),
        ],
        1.0,
    )
    .unwrap();
    let mut state = LocalizationState::new(&g, Mode::Violations);
    for id in [A, B, C, 4] {
        state.place_seed(id, g.position(id));
    }
    assert_eq!(state.localized_neighbors(D), &[A, C, 4]);
    let record = propose_trilateration(&state, D, &violations()).unwrap();
    assert_eq!(record.violations, Some([true, false]));
    assert_eq!(record.sigma, None);
    assert!(distance(record.position, g.position(D)) < 1e-12);
    // pure mode has to use sigma and gets the same answer here
    let pure = propose_trilateration(&state, D, &AlgorithmConfig::new(Mode::Pure)).unwrap();
    assert_eq!(pure.sigma, Some(SigmaVerdict::Second));
}

#[test]
fn wheel_separates_the_modes() {
    let g = generate_wheel(6, 1.0, 0.8, Point::ORIGIN).unwrap();
    let full = localize_graph(&g, &violations());
    assert_eq!(full.len(), 7);
    for &(id, p) in &full.placements {
        assert!(distance(p, g.position(id)) < 1e-6);
    }
    replay_soundness(&full, &g).unwrap();
    let pure = localize_graph(&g, &AlgorithmConfig::new(Mode::Pure));
    assert_eq!(pure.len(), 3);
}

#[test]
fn relative_frame_recovers_shape_after_alignment() {
    let g = generate_random_udg(60, 30.0, 14.0, 5).unwrap();
    let cfg = violations().with_seed_placement(SeedPlacement::Relative);
    let f = localize_graph(&g, &cfg);
    assert!(f.len() > 50);
    assert!(mean_offset(&f, &g, Align::Rigid).unwrap() < 1e-6 * g.theta());
}

#[test]
fn seed_triple_must_be_connected() {
    let g = missing_edge_graph();
    assert!(localize_from_seeds(&g, [A, B, D], &violations()).is_none());
    assert!(localize_from_seeds(&g, [A, B, C], &violations()).is_some());
}

#[test]
fn exact_measurements_give_exact_formations() {
    for seed in 0..25 {
        let g = generate_random_udg(60, 50.0, 7.0 + (seed % 5) as f64, seed).unwrap();
        let f = localize_graph(&g, &violations());
        for &(id, p) in &f.placements {
            let err = distance(p, g.position(id));
            assert!(err <= 1e-6 * g.theta(), "seed {seed} node {id} off by {err}");
        }
        replay_soundness(&f, &g).unwrap();
    }
}

#[test]
fn violations_never_localize_fewer_nodes() {
    for seed in 0..30 {
        let g = generate_random_udg(50, 50.0, 5.0 + (seed % 8) as f64, 1000 + seed).unwrap();
        let v = localize_graph(&g, &violations());
        let p = localize_graph(&g, &AlgorithmConfig::new(Mode::Pure));
        assert!(v.len() >= p.len(), "seed {seed}: {} < {}", v.len(), p.len());
    }
}

#[test]
fn each_node_dequeued_once() {
    let g = generate_random_udg(80, 50.0, 9.0, 3).unwrap();
    let f = localize_graph(&g, &violations());
    let mut ids: Vec<_> = f.placements.iter().map(|&(id, _)| id).collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n);
    assert_eq!(f.audit.len(), n);
}

// Procrustes, checked against an SVD of the cross-covariance.

fn svd_residual(from: &[Point], to: &[Point]) -> f64 {
    let n = from.len() as f64;
    let cf = from.iter().fold(Point::ORIGIN, |a, &p| a + p) * (1.0 / n);
    let ct = to.iter().fold(Point::ORIGIN, |a, &p| a + p) * (1.0 / n);
    let mut h = Matrix2::zeros();
    for (&f, &t) in from.iter().zip(to) {
        let (e, g) = (f - cf, t - ct);
        h += Matrix2::new(e.x * g.x, e.x * g.y, e.y * g.x, e.y * g.y);
    }
    let svd = h.svd(true, true);
    let r = svd.v_t.unwrap().transpose() * svd.u.unwrap().transpose();
    from.iter()
        .zip(to)
        .map(|(&f, &t)| {
            let e = f - cf;
            let x = r[(0, 0)] * e.x + r[(0, 1)] * e.y + ct.x;
            let y = r[(1, 0)] * e.x + r[(1, 1)] * e.y + ct.y;
            (x - t.x).powi(2) + (y - t.y).powi(2)
        })
        .sum()
}

fn points() -> impl Strategy<Value = Vec<(f64, f64, f64, f64)>> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64, -0.5..0.5f64, -0.5..0.5f64), 2..30)
}

proptest! {
    #[test]
    fn procrustes_matches_svd(raw in points(), angle in 0.0..6.3f64, flip in any::<bool>(), tx in -5.0..5.0f64) {
        let truth: Vec<Point> = raw.iter().map(|&(x, y, _, _)| Point::new(x, y)).collect();
        let est: Vec<Point> = raw
            .iter()
            .map(|&(x, y, nx, ny)| {
                let y = if flip { -y } else { y };
                let (s, c) = angle.sin_cos();
                Point::new(c * x - s * y + tx + nx, s * x + c * y + ny)
            })
            .collect();
        let fit = RigidTransform::fit(&est, &truth);
        let ours: f64 = est.iter().zip(&truth).map(|(&e, &t)| {
            let p = fit.apply(e);
            (p.x - t.x).powi(2) + (p.y - t.y).powi(2)
        }).sum();
        let oracle = svd_residual(&est, &truth);
        prop_assert!(ours <= oracle + 1e-9 * (1.0 + oracle), "{} vs {}", ours, oracle);
    }

    #[test]
    fn alignment_never_increases_rms(raw in points()) {
        let truth: Vec<Point> = raw.iter().map(|&(x, y, _, _)| Point::new(x, y)).collect();
        let est: Vec<Point> = raw.iter().map(|&(x, y, nx, ny)| Point::new(x + 3.0 * nx + 1.0, y + 3.0 * ny)).collect();
        let fit = RigidTransform::fit(&est, &truth);
        let aligned: Vec<Point> = est.iter().map(|&p| fit.apply(p)).collect();
        prop_assert!(rms(&aligned, &truth) <= rms(&est, &truth) + 1e-9);
    }
}

fn rms(a: &[Point], b: &[Point]) -> f64 {
    (a.iter().zip(b).map(|(&p, &q)| distance(p, q).powi(2)).sum::<f64>() / a.len() as f64).sqrt()
}

#[test]
fn rotation_about_centroid() {
    let truth = vec![
        Point::new(0.0, 0.0),
        Point::new(2.0, 0.0),
        Point::new(2.0, 1.0),
        Point::new(0.0, 3.0),
    ];
    let g = WsnGraph::from_positions(truth.clone(), 1.0).unwrap();
    let centroid = truth.iter().fold(Point::ORIGIN, |a, &p| a + p) * 0.25;
    let angle = 30f64.to_radians();
    let (s, c) = angle.sin_cos();
    let placements = truth
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let e = p - centroid;
            (i, centroid + Point::new(c * e.x - s * e.y, s * e.x + c * e.y))
        })
        .collect();
    let f = udgloc::localizer::Formation {
        mode: Mode::Violations,
        placements,
        audit: Vec::new(),
    };
    // a point at radius r moves along a chord of length 2 r sin(15 deg)
    let expected = truth
        .iter()
        .map(|&p| 2.0 * distance(p, centroid) * (angle / 2.0).sin())
        .sum::<f64>()
        / 4.0;
    assert!((mean_offset(&f, &g, Align::None).unwrap() - expected).abs() < 1e-12);
    assert!(mean_offset(&f, &g, Align::Rigid).unwrap() < 1e-12);
}

#[test]
fn offset_invariant_under_relabeling() {
    let g = generate_random_udg(20, 10.0, 6.0, 8).unwrap();
    let est: Vec<Point> = g.positions().iter().map(|&p| p + Point::new(0.1, -0.2)).collect();
    let f = udgloc::localizer::Formation {
        mode: Mode::Violations,
        placements: est.iter().copied().enumerate().collect(),
        audit: Vec::new(),
    };
    // reverse the node ids
    let n = g.len();
    let relabeled = WsnGraph::from_positions(g.positions().iter().rev().copied().collect(), g.theta()).unwrap();
    let f2 = udgloc::localizer::Formation {
        mode: Mode::Violations,
        placements: est
            .iter()
            .copied()
            .enumerate()
            .map(|(i, p)| (n - 1 - i, p))
            .rev()
            .collect(),
        audit: Vec::new(),
    };
    for align in [Align::None, Align::Rigid] {
        let a = mean_offset(&f, &g, align).unwrap();
        let b = mean_offset(&f2, &relabeled, align).unwrap();
        assert!((a - b).abs() < 1e-12);
    }
}
