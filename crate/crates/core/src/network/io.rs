//! JSON graph files.
//!
//! ```json
//! {"theta": 1.0,
//!  "nodes": [{"id": 0, "x": 0.0, "y": 0.0}, ...],
//!  "edges": [{"u": 0, "v": 1, "delta": 0.8}, ...]}
//! ```
//!
//! Ids are dense from zero and edges are listed with `u < v`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{NodeId, WsnGraph};
use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub theta: f64,
    pub nodes: Vec<NodeRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: NodeId,
    pub v: NodeId,
    pub delta: f64,
}

impl From<&WsnGraph> for GraphFile {
    fn from(graph: &WsnGraph) -> Self {
        GraphFile {
            theta: graph.theta(),
            nodes: graph
                .positions()
                .iter()
                .enumerate()
                .map(|(id, p)| NodeRecord { id, x: p.x, y: p.y })
                .collect(),
            edges: graph.edges().map(|(u, v, delta)| EdgeRecord { u, v, delta }).collect(),
        }
    }
}

impl TryFrom<GraphFile> for WsnGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let n = file.nodes.len();
        let mut positions = vec![None; n];
        for node in &file.nodes {
            let slot = positions
                .get_mut(node.id)
                .ok_or_else(|| Error::Malformed(format!("node id {} is not dense in 0..{n}", node.id)))?;
            if slot.replace(Point::new(node.x, node.y)).is_some() {
                return Err(Error::Malformed(format!("node id {} listed twice", node.id)));
            }
        }
        let positions: Vec<Point> = positions.into_iter().map(|p| p.expect("ids are dense")).collect();
        if let Some(e) = file.edges.iter().find(|e| e.u >= e.v) {
            return Err(Error::Malformed(format!(
                "edge ({}, {}) is not listed with u < v",
                e.u, e.v
            )));
        }
        WsnGraph::from_edges(positions, file.theta, file.edges.iter().map(|e| (e.u, e.v, e.delta)))
    }
}

impl WsnGraph {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&GraphFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        file.try_into()
    }
}

pub fn save_graph(graph: &WsnGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, graph.to_json()?).map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<WsnGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    WsnGraph::from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{apply_noise, generate_random_udg, NoiseModel};

    #[test]
    fn round_trip_through_file() {
        let g = generate_random_udg(30, 10.0, 5.0, 1).unwrap();
        let g = apply_noise(&g, &NoiseModel::new(5.0, 2)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        save_graph(&g, &path).unwrap();
        assert_eq!(load_graph(&path).unwrap(), g);
    }

    #[test]
    fn edge_beyond_range_rejected() {
        let text = r#"{"theta": 1.0,
            "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 1.5, "y": 0}],
            "edges": [{"u": 0, "v": 1, "delta": 1.5}]}"#;
        let err = WsnGraph::from_json(text).unwrap_err();
        assert!(matches!(err, Error::UdgViolation { u: 0, v: 1, .. }), "{err}");
    }

    #[test]
    fn missing_edge_within_range_rejected() {
        let text = r#"{"theta": 1.0,
            "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 0.5, "y": 0}],
            "edges": []}"#;
        let err = WsnGraph::from_json(text).unwrap_err();
        assert!(err.to_string().contains("missing edge"), "{err}");
    }

    #[test]
    fn malformed_files_rejected() {
        assert!(matches!(WsnGraph::from_json("{"), Err(Error::Malformed(_))));
        let sparse_ids = r#"{"theta": 1.0, "nodes": [{"id": 3, "x": 0, "y": 0}], "edges": []}"#;
        assert!(matches!(WsnGraph::from_json(sparse_ids), Err(Error::Malformed(_))));
        let reversed = r#"{"theta": 1.0,
            "nodes": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 0.5, "y": 0}],
            "edges": [{"u": 1, "v": 0, "delta": 0.5}]}"#;
        assert!(matches!(WsnGraph::from_json(reversed), Err(Error::Malformed(_))));
    }
}
