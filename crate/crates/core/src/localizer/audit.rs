use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Formation, Method, Mode};
use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::metrics::recall;
use crate::network::{NodeId, WsnGraph};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("node {node} was placed {distance} from earlier non-neighbor {other} (sensing range {theta})")]
pub struct SoundnessError {
    pub node: NodeId,
    pub other: NodeId,
    pub distance: f64,
    pub theta: f64,
}

/// Replays the audit log of a violations-mode formation and checks that
/// every non-seed placement was at least `theta` away from every node
/// localized before it that is not its neighbor. Pure-mode formations pass
/// trivially.
pub fn replay_soundness(formation: &Formation, graph: &WsnGraph) -> Result<(), SoundnessError> {
    if formation.mode != Mode::Violations {
        return Ok(());
    }
    let theta = graph.theta();
    for (k, record) in formation.audit.iter().enumerate() {
        if record.method == Method::Seed {
            continue;
        }
        for earlier in &formation.audit[..k] {
            if graph.is_neighbor(record.node, earlier.node) {
                continue;
            }
            let d = distance(record.position, earlier.position);
            if d < theta {
                return Err(SoundnessError {
                    node: record.node,
                    other: earlier.node,
                    distance: d,
                    theta,
                });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizedNode {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    pub method: Method,
}

/// Formation output document:
/// `{"localized": [{"id", "x", "y", "method"}...], "recall_pct": number}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormationFile {
    pub localized: Vec<LocalizedNode>,
    pub recall_pct: f64,
}

impl FormationFile {
    pub fn new(formation: &Formation, graph: &WsnGraph) -> Self {
        let localized = formation
            .placements
            .iter()
            .map(|&(id, p)| LocalizedNode {
                id,
                x: p.x,
                y: p.y,
                method: formation.record(id).map_or(Method::Seed, |r| r.method),
            })
            .collect();
        Self {
            localized,
            recall_pct: recall(formation, graph),
        }
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

impl Formation {
    /// Writes the audit as JSON lines, one placement record per line, in
    /// placement order.
    pub fn write_audit_log<W: Write>(&self, mut out: W) -> Result<()> {
        for record in &self.audit {
            serde_json::to_writer(&mut out, record)?;
            out.write_all(b"\n").map_err(|e| Error::io("<audit log>", e))?;
        }
        Ok(())
    }
}
