//! Recall and positional offset of a formation against ground truth.

use serde::{Deserialize, Serialize};

use crate::geometry::{distance, Point};
use crate::localizer::{Formation, Mode};
use crate::network::WsnGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Align {
    /// Compare estimates to ground truth as-is.
    #[default]
    None,
    /// Compare after the best rotation (or reflection) plus translation.
    Rigid,
}

/// Per-trial summary row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub mode: Mode,
    pub n: usize,
    pub avg_degree: f64,
    pub p_magnitude: f64,
    pub trial: usize,
    pub recall_pct: f64,
    /// Absent when nothing was localized.
    pub mean_offset: Option<f64>,
    pub rng_seed: u64,
}

/// Percentage of nodes with an estimated position.
pub fn recall(formation: &Formation, graph: &WsnGraph) -> f64 {
    if graph.is_empty() {
        return 0.0;
    }
    100.0 * formation.len() as f64 / graph.len() as f64
}

/// Mean distance between estimated and true positions over localized nodes.
/// `None` for an empty formation.
pub fn mean_offset(formation: &Formation, graph: &WsnGraph, align: Align) -> Option<f64> {
    if formation.is_empty() {
        return None;
    }
    let estimated: Vec<Point> = formation.placements.iter().map(|&(_, p)| p).collect();
    let truth: Vec<Point> = formation.placements.iter().map(|&(id, _)| graph.position(id)).collect();
    let transform = match align {
        Align::None => RigidTransform::IDENTITY,
        Align::Rigid => RigidTransform::fit(&estimated, &truth),
    };
    let total: f64 = estimated
        .iter()
        .zip(&truth)
        .map(|(&e, &t)| distance(transform.apply(e), t))
        .sum();
    Some(total / estimated.len() as f64)
}

/// `p -> M p + t` with `M` orthogonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    pub matrix: [[f64; 2]; 2],
    pub translation: Point,
}

impl RigidTransform {
    pub const IDENTITY: RigidTransform = RigidTransform {
        matrix: [[1.0, 0.0], [0.0, 1.0]],
        translation: Point::ORIGIN,
    };

    pub fn apply(&self, p: Point) -> Point {
        let m = &self.matrix;
        Point::new(
            m[0][0] * p.x + m[0][1] * p.y + self.translation.x,
            m[1][0] * p.x + m[1][1] * p.y + self.translation.y,
        )
    }

    pub fn is_reflection(&self) -> bool {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0.0
    }

    /// Least-squares orthogonal Procrustes fit mapping `from` onto `to`,
    /// reflections allowed.
    ///
    /// In 2D the best rotation has a closed form: with centered points the
    /// objective is `cos a * S_dot + sin a * S_cross`, maximized at
    /// `a = atan2(S_cross, S_dot)`. The reflected case is the same problem
    /// after mirroring `from` in the x axis; the larger maximum wins.
    pub fn fit(from: &[Point], to: &[Point]) -> Self {
        assert_eq!(from.len(), to.len(), "point sets must pair up");
        if from.is_empty() {
            return Self::IDENTITY;
        }
        let cf = centroid(from);
        let ct = centroid(to);
        let (mut dot, mut cross, mut dot_m, mut cross_m) = (0.0, 0.0, 0.0, 0.0);
        for (&f, &t) in from.iter().zip(to) {
            let e = f - cf;
            let g = t - ct;
            let mirrored = Point::new(e.x, -e.y);
            dot += e.dot(&g);
            cross += e.cross(&g);
            dot_m += mirrored.dot(&g);
            cross_m += mirrored.cross(&g);
        }
        let matrix = if dot == 0.0 && cross == 0.0 && dot_m == 0.0 && cross_m == 0.0 {
            // all points coincide: translation only
            Self::IDENTITY.matrix
        } else if dot.hypot(cross) >= dot_m.hypot(cross_m) {
            let a = cross.atan2(dot);
            [[a.cos(), -a.sin()], [a.sin(), a.cos()]]
        } else {
            let a = cross_m.atan2(dot_m);
            // rotation(a) * diag(1, -1)
            [[a.cos(), a.sin()], [a.sin(), -a.cos()]]
        };
        let rotated = RigidTransform {
            matrix,
            translation: Point::ORIGIN,
        }
        .apply(cf);
        RigidTransform {
            matrix,
            translation: ct - rotated,
        }
    }
}

fn centroid(points: &[Point]) -> Point {
    let sum = points.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
    sum * (1.0 / points.len() as f64)
}
