//! Ground segmentation for 3D LIDAR frames using two coupled Gaussian
//! processes: an observation process over ground heights with a
//! non-stationary covariance kernel, and a latent process over the
//! logarithm of its length-scales.
//!
//! A frame is partitioned into a polar grid of angular segments and radial
//! bins. The lowest point of each bin forms the segment's ground candidate
//! set. Candidates are split at critical points by an errors-in-variables
//! line sweep; the resulting line pieces provide pseudo-inputs for the
//! latent process. All segments share one hyper-parameter set, learned by
//! maximizing a whole-frame marginal-likelihood objective with analytic
//! gradients. Every point is then labeled ground or obstacle by its height
//! distance to the predicted ground profile.

pub mod cli;
pub mod gp;
pub mod grid_map;
pub mod hyperopt;
pub mod io;
pub mod kernels;
pub mod line_extraction;
pub mod pipeline;
pub mod pseudo_input;

pub use grid_map::{Bin, GridConfig, GroundCandidateSet, Point2, Point3, PolarGridMap};
pub use line_extraction::{CriticalPointCriteria, DemingConfig, LineParams, LineSegmentModel};
