//! Incremental localization from a seed triangle, pruning ambiguous
//! placements with unit disk graph violations.
//!
//! Two range measurements to localized neighbors leave two candidate
//! positions. A candidate that falls strictly inside the sensing range of an
//! already localized node which is *not* a neighbor cannot be right: the
//! missing edge would have been measured. Bilateration places a node when
//! exactly one candidate survives that test; trilateration additionally uses
//! a third measured distance to choose between two surviving candidates.
//!
//! [`localize_graph`] sweeps every mutually connected, non-collinear seed
//! triple and keeps the largest formation, returning early on a complete one.

mod audit;
mod driver;
mod placement;
mod state;

pub use audit::{replay_soundness, FormationFile, LocalizedNode, SoundnessError};
pub use driver::{localize_from_seeds, localize_graph, seed_triples};
pub use placement::{
    bilaterate, check_violation, propose_bilateration, propose_trilateration, sigma, sigma_verdict, trilaterate,
    FailReason, SigmaVerdict, SIGMA_FLOOR,
};
pub use state::{Formation, LocalizationState, Method, PlacementRecord};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Bilateration and trilateration with missing-edge pruning.
    Violations,
    /// Plain trilateration: three localized neighbors and the σ test only.
    Pure,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Violations => "violations",
            Mode::Pure => "pure",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.as_str())
    }
}

/// Where the seed triple is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedPlacement {
    /// Seeds at their ground-truth coordinates.
    #[default]
    Anchored,
    /// First seed at the origin, second on +x, third in the upper half-plane,
    /// all from measured distances. Estimates live in an arbitrary rigid frame.
    Relative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub mode: Mode,
    /// Relative width of the σ acceptance band, i.e. `P / 100`.
    pub p_tolerance: f64,
    pub seed_placement: SeedPlacement,
    /// Maximum number of seed triples to try; `None` sweeps all of them.
    pub seed_triple_cap: Option<usize>,
    /// Violations use `< theta` when set, `<= theta` otherwise.
    pub strict_boundary: bool,
}

impl AlgorithmConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            p_tolerance: 0.0,
            seed_placement: SeedPlacement::Anchored,
            seed_triple_cap: None,
            strict_boundary: true,
        }
    }

    /// Sets the σ band from an error magnitude given in percent.
    pub fn with_p(mut self, p_percent: f64) -> Self {
        self.p_tolerance = p_percent / 100.0;
        self
    }

    pub fn with_seed_placement(mut self, placement: SeedPlacement) -> Self {
        self.seed_placement = placement;
        self
    }

    pub fn with_triple_cap(mut self, cap: Option<usize>) -> Self {
        self.seed_triple_cap = cap;
        self
    }

    pub fn violations_enabled(&self) -> bool {
        self.mode == Mode::Violations
    }
}
