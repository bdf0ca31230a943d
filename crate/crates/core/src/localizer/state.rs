use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{FailReason, Mode, SigmaVerdict};
use crate::geometry::{CandidatePair, Point};
use crate::network::{NodeId, WsnGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Seed,
    Bilaterate,
    Trilaterate,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Seed => "seed",
            Method::Bilaterate => "bilaterate",
            Method::Trilaterate => "trilaterate",
        }
    }
}

/// How a node got its position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub node: NodeId,
    pub method: Method,
    pub position: Point,
    /// Localized neighbors whose estimates were used, in LN order.
    pub anchors: Vec<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<CandidatePair>,
    /// Violation verdicts for `(p1, p2)`; absent when not evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<[bool; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<SigmaVerdict>,
    /// Failed trilateration that this bilateration replaced.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_from: Option<FailReason>,
}

impl PlacementRecord {
    pub fn seed(node: NodeId, position: Point) -> Self {
        Self {
            node,
            method: Method::Seed,
            position,
            anchors: Vec::new(),
            candidates: None,
            violations: None,
            sigma: None,
            fallback_from: None,
        }
    }
}

/// A point formation: estimated positions in processing order plus the
/// placement audit in placement order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Formation {
    pub mode: Mode,
    pub placements: Vec<(NodeId, Point)>,
    pub audit: Vec<PlacementRecord>,
}

impl Formation {
    pub fn empty(mode: Mode) -> Self {
        Self {
            mode,
            placements: Vec::new(),
            audit: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.placements.iter().any(|&(n, _)| n == id)
    }

    pub fn estimate(&self, id: NodeId) -> Option<Point> {
        self.placements.iter().find(|&&(n, _)| n == id).map(|&(_, p)| p)
    }

    pub fn record(&self, id: NodeId) -> Option<&PlacementRecord> {
        self.audit.iter().find(|r| r.node == id)
    }

    /// Seed triple this formation grew from.
    pub fn seeds(&self) -> Vec<NodeId> {
        self.audit
            .iter()
            .filter(|r| r.method == Method::Seed)
            .map(|r| r.node)
            .collect()
    }
}

/// Mutable state of one propagation run from one seed triple.
#[derive(Debug, Clone)]
pub struct LocalizationState<'g> {
    graph: &'g WsnGraph,
    estimates: Vec<Option<Point>>,
    localized_neighbors: Vec<Vec<NodeId>>,
    localized: Vec<NodeId>,
    queue: VecDeque<NodeId>,
    current: Formation,
}

impl<'g> LocalizationState<'g> {
    pub fn new(graph: &'g WsnGraph, mode: Mode) -> Self {
        let n = graph.len();
        Self {
            graph,
            estimates: vec![None; n],
            localized_neighbors: vec![Vec::new(); n],
            localized: Vec::new(),
            queue: VecDeque::new(),
            current: Formation::empty(mode),
        }
    }

    pub fn graph(&self) -> &'g WsnGraph {
        self.graph
    }

    pub fn estimate(&self, id: NodeId) -> Option<Point> {
        self.estimates[id]
    }

    pub fn is_localized(&self, id: NodeId) -> bool {
        self.estimates[id].is_some()
    }

    /// `LN(id)`: localized neighbors in the order they were localized.
    pub fn localized_neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.localized_neighbors[id]
    }

    pub fn ln_count(&self, id: NodeId) -> usize {
        self.localized_neighbors[id].len()
    }

    /// All localized nodes in placement order.
    pub fn localized(&self) -> &[NodeId] {
        &self.localized
    }

    pub fn place_seed(&mut self, id: NodeId, position: Point) {
        self.commit(PlacementRecord::seed(id, position));
    }

    /// Records a placement: sets the estimate, appends the node to the
    /// localized-neighbor lists of its neighbors and enqueues it.
    pub(crate) fn commit(&mut self, record: PlacementRecord) {
        let id = record.node;
        debug_assert!(self.estimates[id].is_none(), "node {id} placed twice");
        debug_assert!(record.position.is_finite());
        self.estimates[id] = Some(record.position);
        self.localized.push(id);
        for &j in self.graph.neighbors(id) {
            self.localized_neighbors[j].push(id);
        }
        self.queue.push_back(id);
        self.current.audit.push(record);
    }

    pub(crate) fn dequeue(&mut self) -> Option<NodeId> {
        let id = self.queue.pop_front()?;
        let pos = self.estimates[id].expect("queued nodes are localized");
        self.current.placements.push((id, pos));
        Some(id)
    }

    /// Finishes the run. Placed nodes still waiting in the queue are
    /// appended to the formation in queue order.
    pub fn into_formation(mut self) -> Formation {
        while self.dequeue().is_some() {}
        self.current
    }
}
