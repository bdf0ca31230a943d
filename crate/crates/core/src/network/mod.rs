//! Ground-truth deployments and their measured unit disk graphs.

mod generate;
mod io;
mod noise;

pub use generate::{generate_random_udg, generate_wheel, generate_wheel_network, WheelNetwork};
pub use io::{load_graph, save_graph, GraphFile};
pub use noise::{apply_noise, f_theta, NoiseModel, NoiseSpread, MIN_DELTA};

use crate::error::{Error, Result};
use crate::geometry::{distance, Point};

/// Index of a sensor node; ids are dense from zero.
pub type NodeId = usize;

/// A deployment together with its measured unit disk graph.
///
/// Nodes `i` and `j` are adjacent iff their true positions are at most
/// `theta` apart. Neighbor lists are sorted by ascending id and each
/// unordered edge carries a single measured distance.
#[derive(Debug, Clone, PartialEq)]
pub struct WsnGraph {
    positions: Vec<Point>,
    theta: f64,
    neighbors: Vec<Vec<NodeId>>,
    // parallel to `neighbors`
    deltas: Vec<Vec<f64>>,
}

impl WsnGraph {
    /// Builds the unit disk graph of `positions` with exact (noiseless) edge
    /// weights.
    pub fn from_positions(positions: Vec<Point>, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        check_positions(&positions)?;
        let n = positions.len();
        let mut neighbors = vec![Vec::new(); n];
        let mut deltas = vec![Vec::new(); n];
        for u in 0..n {
            for v in (u + 1)..n {
                let d = distance(positions[u], positions[v]);
                if d <= theta {
                    neighbors[u].push(v);
                    deltas[u].push(d);
                    neighbors[v].push(u);
                    deltas[v].push(d);
                }
            }
        }
        // Pushes for v < u happen before pushes for v > u, so lists are sorted.
        Ok(Self {
            positions,
            theta,
            neighbors,
            deltas,
        })
    }

    /// Builds a graph from explicit measured edges, rejecting any edge set that
    /// disagrees with the unit disk rule on the true positions.
    pub fn from_edges(
        positions: Vec<Point>,
        theta: f64,
        edges: impl IntoIterator<Item = (NodeId, NodeId, f64)>,
    ) -> Result<Self> {
        check_theta(theta)?;
        check_positions(&positions)?;
        let n = positions.len();
        let mut neighbors = vec![Vec::new(); n];
        let mut deltas = vec![Vec::new(); n];
        for (u, v, delta) in edges {
            if u >= n || v >= n {
                return Err(Error::Malformed(format!("edge ({u}, {v}) names an unknown node")));
            }
            if u == v {
                return Err(Error::Malformed(format!("self loop on node {u}")));
            }
            if !(delta.is_finite() && delta > 0.0) {
                return Err(Error::Malformed(format!(
                    "edge ({u}, {v}) has non-positive or non-finite delta {delta}"
                )));
            }
            if neighbors[u].contains(&v) {
                return Err(Error::Malformed(format!("duplicate edge ({u}, {v})")));
            }
            neighbors[u].push(v);
            deltas[u].push(delta);
            neighbors[v].push(u);
            deltas[v].push(delta);
        }
        for (list, weights) in neighbors.iter_mut().zip(deltas.iter_mut()) {
            let mut paired: Vec<_> = list.iter().copied().zip(weights.iter().copied()).collect();
            paired.sort_by_key(|&(id, _)| id);
            *list = paired.iter().map(|&(id, _)| id).collect();
            *weights = paired.iter().map(|&(_, d)| d).collect();
        }
        let graph = Self {
            positions,
            theta,
            neighbors,
            deltas,
        };
        graph.verify_udg()?;
        Ok(graph)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Sensing range.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn position(&self, id: NodeId) -> Point {
        self.positions[id]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    /// Ordered neighbor list of `id`.
    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.neighbors[id]
    }

    pub fn degree(&self, id: NodeId) -> usize {
        self.neighbors[id].len()
    }

    pub fn is_neighbor(&self, a: NodeId, b: NodeId) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Measured distance of edge `{a, b}`, if the edge exists.
    pub fn delta(&self, a: NodeId, b: NodeId) -> Option<f64> {
        self.neighbors[a]
            .binary_search(&b)
            .ok()
            .map(|slot| self.deltas[a][slot])
    }

    /// Edges as `(u, v, delta)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.neighbors.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .zip(&self.deltas[u])
                .filter(move |(&v, _)| v > u)
                .map(move |(&v, &d)| (u, v, d))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Average node degree `2|E| / n`.
    pub fn average_degree(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.len() as f64
    }

    /// Exhaustive pair scan confirming that edges are exactly the pairs within
    /// sensing range.
    pub fn verify_udg(&self) -> Result<()> {
        let n = self.len();
        for u in 0..n {
            for v in (u + 1)..n {
                let d = distance(self.positions[u], self.positions[v]);
                let within = d <= self.theta;
                let edge = self.is_neighbor(u, v);
                if within != edge {
                    return Err(Error::UdgViolation {
                        u,
                        v,
                        distance: d,
                        theta: self.theta,
                        reason: if edge {
                            "edge present beyond sensing range"
                        } else {
                            "missing edge within sensing range"
                        },
                    });
                }
            }
        }
        Ok(())
    }

    /// Same topology with every edge weight replaced by `weight(u, v, true_distance)`.
    pub(crate) fn reweighted(&self, mut weight: impl FnMut(NodeId, NodeId, f64) -> f64) -> Self {
        let mut out = self.clone();
        for u in 0..self.len() {
            for (slot, &v) in self.neighbors[u].iter().enumerate() {
                if v > u {
                    let d = weight(u, v, distance(self.positions[u], self.positions[v]));
                    out.deltas[u][slot] = d;
                    let back = self.neighbors[v].binary_search(&u).expect("symmetric adjacency");
                    out.deltas[v][back] = d;
                }
            }
        }
        out
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "sensing range must be positive, got {theta}"
        )))
    }
}

fn check_positions(positions: &[Point]) -> Result<()> {
    match positions.iter().position(|p| !p.is_finite()) {
        Some(i) => Err(Error::InvalidParameter(format!("node {i} has a non-finite position"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> WsnGraph {
        WsnGraph::from_positions(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn unit_square_has_four_sides_only() {
        let g = square();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert_eq!(g.neighbors(2), &[1, 3]);
        assert!(!g.is_neighbor(0, 2));
        assert_eq!(g.delta(3, 0), Some(1.0));
        assert_eq!(g.delta(0, 2), None);
        assert_eq!(g.average_degree(), 2.0);
        g.verify_udg().unwrap();
    }

    #[test]
    fn huge_range_gives_complete_graph() {
        let pts: Vec<_> = (0..9).map(|i| Point::new(i as f64, (i * i) as f64)).collect();
        let g = WsnGraph::from_positions(pts, 1e6).unwrap();
        assert_eq!(g.average_degree(), 8.0);
    }

    #[test]
    fn from_edges_rejects_udg_violations() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(1.5, 0.0), Point::new(0.5, 0.0)];
        let err = WsnGraph::from_edges(pts.clone(), 1.0, vec![(0, 1, 1.5), (0, 2, 0.5), (1, 2, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::UdgViolation { u: 0, v: 1, .. }));
        let err = WsnGraph::from_edges(pts, 1.0, vec![(1, 2, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::UdgViolation { u: 0, v: 2, .. }));
    }

    #[test]
    fn from_edges_rejects_bad_deltas_and_duplicates() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(0.5, 0.0)];
        assert!(WsnGraph::from_edges(pts.clone(), 1.0, vec![(0, 1, 0.0)]).is_err());
        assert!(WsnGraph::from_edges(pts.clone(), 1.0, vec![(0, 1, 0.5), (1, 0, 0.5)]).is_err());
        assert!(WsnGraph::from_edges(pts, 1.0, vec![(0, 7, 0.5)]).is_err());
    }

    #[test]
    fn edges_are_ordered() {
        let g = square();
        let edges: Vec<_> = g.edges().map(|(u, v, _)| (u, v)).collect();
        assert_eq!(edges, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }
}
