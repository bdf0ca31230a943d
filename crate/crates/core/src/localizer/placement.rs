use serde::{Deserialize, Serialize};

use super::{AlgorithmConfig, LocalizationState, Method, PlacementRecord};
use crate::geometry::{circle_intersection, distance, CandidatePair, Point};
use crate::network::NodeId;

/// Relative slack added to the σ band so exact measurements survive
/// floating-point round-off when the tolerance is zero.
pub const SIGMA_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailReason {
    BothViolate,
    BothClear,
    SigmaNull,
    NoIntersection,
    InsufficientAnchors,
}

/// Outcome of the σ test on a candidate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaVerdict {
    BothInBand,
    First,
    Second,
    NeitherInBand,
}

impl SigmaVerdict {
    pub fn pick(self, p1: Point, p2: Point) -> Option<Point> {
        match self {
            SigmaVerdict::First => Some(p1),
            SigmaVerdict::Second => Some(p2),
            SigmaVerdict::BothInBand | SigmaVerdict::NeitherInBand => None,
        }
    }
}

/// Classifies `p1` and `p2` by whether their distance to `anchor` matches
/// the measured distance `d` within `d * p_tolerance`.
pub fn sigma_verdict(p1: Point, p2: Point, anchor: Point, d: f64, p_tolerance: f64) -> SigmaVerdict {
    let band = d * (p_tolerance + SIGMA_FLOOR);
    let first = (distance(anchor, p1) - d).abs() <= band;
    let second = (distance(anchor, p2) - d).abs() <= band;
    match (first, second) {
        (true, true) => SigmaVerdict::BothInBand,
        (true, false) => SigmaVerdict::First,
        (false, true) => SigmaVerdict::Second,
        (false, false) => SigmaVerdict::NeitherInBand,
    }
}

/// The candidate uniquely consistent with the third measurement, if any.
pub fn sigma(p1: Point, p2: Point, anchor: Point, d: f64, p_tolerance: f64) -> Option<Point> {
    sigma_verdict(p1, p2, anchor, d, p_tolerance).pick(p1, p2)
}

fn violates(state: &LocalizationState<'_>, candidate: Point, j: NodeId, other: NodeId, strict: bool) -> bool {
    let graph = state.graph();
    if other == j || graph.is_neighbor(j, other) {
        return false;
    }
    let est = state.estimate(other).expect("localized node has an estimate");
    let d = distance(candidate, est);
    if strict {
        d < graph.theta()
    } else {
        d <= graph.theta()
    }
}

/// True iff placing `j` at `candidate` puts it inside the sensing range of a
/// localized node that is not one of its neighbors.
pub fn check_violation(candidate: Point, state: &LocalizationState<'_>, j: NodeId, strict: bool) -> bool {
    state
        .localized()
        .iter()
        .any(|&other| violates(state, candidate, j, other, strict))
}

fn violation_pair(state: &LocalizationState<'_>, j: NodeId, pair: &CandidatePair, strict: bool) -> [bool; 2] {
    let mut flags = [false; 2];
    for &other in state.localized() {
        flags[0] = flags[0] || violates(state, pair.p1, j, other, strict);
        flags[1] = flags[1] || violates(state, pair.p2, j, other, strict);
        if flags[0] && flags[1] {
            break;
        }
    }
    flags
}

fn candidates(state: &LocalizationState<'_>, j: NodeId, a: NodeId, b: NodeId) -> Option<CandidatePair> {
    let graph = state.graph();
    let (pa, pb) = (state.estimate(a)?, state.estimate(b)?);
    let (ra, rb) = (graph.delta(j, a)?, graph.delta(j, b)?);
    circle_intersection(pa, ra, pb, rb).pair()
}

/// Bilateration with missing edges, without committing the result.
///
/// Candidates come from the first and the most recent localized neighbor of
/// `j`; the placement succeeds only if exactly one candidate is free of
/// violations.
pub fn propose_bilateration(
    state: &LocalizationState<'_>,
    j: NodeId,
    config: &AlgorithmConfig,
) -> Result<PlacementRecord, FailReason> {
    let ln = state.localized_neighbors(j);
    if ln.len() < 2 {
        return Err(FailReason::InsufficientAnchors);
    }
    let (first, last) = (ln[0], ln[ln.len() - 1]);
    let pair = candidates(state, j, first, last).ok_or(FailReason::NoIntersection)?;
    let flags = violation_pair(state, j, &pair, config.strict_boundary);
    let position = match flags {
        [true, true] => return Err(FailReason::BothViolate),
        [false, false] => return Err(FailReason::BothClear),
        [false, true] => pair.p1,
        [true, false] => pair.p2,
    };
    Ok(PlacementRecord {
        node: j,
        method: Method::Bilaterate,
        position,
        anchors: vec![first, last],
        candidates: Some(pair),
        violations: Some(flags),
        sigma: None,
        fallback_from: None,
    })
}

/// Trilateration with missing edges, without committing the result.
///
/// Candidates come from `LN_1(j)` and `LN_2(j)`. A single violation-free
/// candidate is taken directly; if both are free the σ test against the
/// most recent localized neighbor decides. In pure mode violations are not
/// evaluated and σ alone decides.
pub fn propose_trilateration(
    state: &LocalizationState<'_>,
    j: NodeId,
    config: &AlgorithmConfig,
) -> Result<PlacementRecord, FailReason> {
    let ln = state.localized_neighbors(j);
    if ln.len() < 3 {
        return Err(FailReason::InsufficientAnchors);
    }
    let (first, second, last) = (ln[0], ln[1], ln[ln.len() - 1]);
    let pair = candidates(state, j, first, second).ok_or(FailReason::NoIntersection)?;

    let mut record = PlacementRecord {
        node: j,
        method: Method::Trilaterate,
        position: pair.p1,
        anchors: vec![first, second, last],
        candidates: Some(pair),
        violations: None,
        sigma: None,
        fallback_from: None,
    };

    if config.violations_enabled() {
        let flags = violation_pair(state, j, &pair, config.strict_boundary);
        record.violations = Some(flags);
        match flags {
            [true, true] => return Err(FailReason::BothViolate),
            [false, true] => return Ok(record),
            [true, false] => {
                record.position = pair.p2;
                return Ok(record);
            }
            [false, false] => {}
        }
    }

    let graph = state.graph();
    let anchor = state.estimate(last).expect("LN members are localized");
    let d = graph.delta(j, last).expect("LN members are neighbors");
    let verdict = sigma_verdict(pair.p1, pair.p2, anchor, d, config.p_tolerance);
    record.sigma = Some(verdict);
    record.position = verdict.pick(pair.p1, pair.p2).ok_or(FailReason::SigmaNull)?;
    Ok(record)
}

/// Runs [`propose_bilateration`] and commits the placement on success.
pub fn bilaterate(state: &mut LocalizationState<'_>, j: NodeId, config: &AlgorithmConfig) -> Result<Point, FailReason> {
    let record = propose_bilateration(state, j, config)?;
    let pos = record.position;
    state.commit(record);
    Ok(pos)
}

/// Runs [`propose_trilateration`] and commits the placement on success.
pub fn trilaterate(
    state: &mut LocalizationState<'_>,
    j: NodeId,
    config: &AlgorithmConfig,
) -> Result<Point, FailReason> {
    let record = propose_trilateration(state, j, config)?;
    let pos = record.position;
    state.commit(record);
    Ok(pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localizer::Mode;
    use crate::network::WsnGraph;

    #[test]
    fn sigma_truth_table() {
        let anchor = Point::ORIGIN;
        let d = 2.0;
        let at_d = Point::new(2.0, 0.0);
        let at_d_too = Point::new(0.0, -2.0);
        let far = Point::new(6.0, 0.0);
        let farther = Point::new(0.0, 9.0);
        let tol = 0.05;
        assert_eq!(sigma(at_d, at_d_too, anchor, d, tol), None);
        assert_eq!(sigma(at_d, far, anchor, d, tol), Some(at_d));
        assert_eq!(sigma(far, at_d, anchor, d, tol), Some(at_d));
        assert_eq!(sigma(far, farther, anchor, d, tol), None);
        assert_eq!(sigma_verdict(at_d, at_d_too, anchor, d, tol), SigmaVerdict::BothInBand);
        assert_eq!(sigma_verdict(far, farther, anchor, d, tol), SigmaVerdict::NeitherInBand);
    }

    #[test]
    fn sigma_band_edges() {
        // band is d * (tol + floor): 0.1 for d = 1, tol = 0.1
        let a = Point::ORIGIN;
        assert_eq!(
            sigma(Point::new(1.0999999, 0.0), Point::new(5.0, 0.0), a, 1.0, 0.1),
            Some(Point::new(1.0999999, 0.0))
        );
        assert_eq!(sigma(Point::new(1.1001, 0.0), Point::new(5.0, 0.0), a, 1.0, 0.1), None);
    }

    fn line_graph() -> WsnGraph {
        // 0 -- 1 -- 2 on a line with 3 off to the side of 1
        WsnGraph::from_positions(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(1.0, 0.9),
            ],
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn violation_ignores_neighbors_and_self() {
        let g = line_graph();
        let mut state = LocalizationState::new(&g, Mode::Violations);
        assert!(!check_violation(Point::new(0.0, 0.1), &state, 3, true));
        state.place_seed(0, g.position(0));
        // 0 is not a neighbor of 2
        assert!(check_violation(Point::new(0.5, 0.0), &state, 2, true));
        // 0 is a neighbor of 1
        assert!(!check_violation(Point::new(0.5, 0.0), &state, 1, true));
        // exactly theta away: strict comparison does not fire
        assert!(!check_violation(Point::new(1.0, 0.0), &state, 2, true));
        assert!(check_violation(Point::new(1.0, 0.0), &state, 2, false));
    }

    #[test]
    fn too_few_anchors() {
        let g = line_graph();
        let state = LocalizationState::new(&g, Mode::Violations);
        let cfg = AlgorithmConfig::new(Mode::Violations);
        assert_eq!(
            propose_bilateration(&state, 3, &cfg),
            Err(FailReason::InsufficientAnchors)
        );
        assert_eq!(
            propose_trilateration(&state, 3, &cfg),
            Err(FailReason::InsufficientAnchors)
        );
    }
}
