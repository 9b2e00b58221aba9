//! Quantifying what pixel grids do to boiling measurements.
//!
//! High-speed-video phase-detection pipelines reduce each frame to a binary
//! dry/wet mask and read physical quantities off the pixel grid. This crate
//! provides the measurement side of that workflow and the machinery to
//! quantify its discretization uncertainty:
//!
//! - [`mask`] / [`io`] — the binary mask representation with bit-exact PGM
//!   and CSV round-trips;
//! - [`morphology`], [`distance`], [`labeling`] — one-pixel erosion and
//!   dilation, an exact Euclidean distance transform, and connected-component
//!   labeling;
//! - [`boiling`] — dry area fraction and contact line density;
//! - [`bubbles`] — per-bubble area/perimeter/radius tables, histograms and
//!   grouped size distributions;
//! - [`sim`] — the Monte Carlo circle-discretization study producing PRE/ME
//!   error matrices over grid resolution × bubble radius;
//! - [`calibrate`] — frequency-weighted mapping of an experimental bubble
//!   population onto the simulated error matrices;
//! - [`segeval`] — confusion-matrix scoring of predicted masks
//!   (accuracy, precision, recall, specificity, F1, IoU, MCC).
//!
//! All operations are pure functions over immutable inputs and safe to call
//! concurrently; the simulation sweep parallelizes internally with
//! per-cell random substreams so results are reproducible for a given seed
//! regardless of thread count.

pub mod boiling;
pub mod bubbles;
pub mod calibrate;
pub mod distance;
pub mod error;
pub mod io;
pub mod labeling;
pub mod mask;
pub mod morphology;
pub mod segeval;
pub mod sim;

pub use error::{Error, Result};
pub use mask::{BinaryMask, Connectivity};
