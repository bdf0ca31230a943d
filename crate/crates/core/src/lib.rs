//! Range-based localization of 2D wireless sensor networks that exploits
//! the unit disk graph property: a missing edge is evidence too.
//!
//! * [`geometry`]: points, circle intersection, collinearity.
//! * [`network`]: deployments, unit disk graphs, the ranging noise model,
//!   wheel graphs and JSON graph files.
//! * [`localizer`]: bilateration and trilateration with missing-edge
//!   pruning, the seed-sweeping driver and a pure trilateration baseline.
//! * [`metrics`]: recall and offset, with optional rigid alignment.
//! * [`harness`]: seeded connectivity and noise sweeps and the wheel demo.
//!
//! ```
//! use udgloc::geometry::Point;
//! use udgloc::localizer::{localize_graph, AlgorithmConfig, Mode};
//! use udgloc::network::generate_wheel;
//!
//! let wheel = generate_wheel(6, 1.0, 0.8, Point::ORIGIN).unwrap();
//! let full = localize_graph(&wheel, &AlgorithmConfig::new(Mode::Violations));
//! let pure = localize_graph(&wheel, &AlgorithmConfig::new(Mode::Pure));
//! assert_eq!((full.len(), pure.len()), (7, 3));
//! ```

pub mod error;
pub mod geometry;
pub mod harness;
pub mod localizer;
pub mod metrics;
pub mod network;

pub use error::{Error, Result};
