//! Pseudo-input selection for the latent length-scale process.
//!
//! Every line piece stands for a hypothetical surface; points measured
//! from one surface share a correlation scale, and the surface's radial
//! extent is the natural value for it. Each piece therefore emits latent
//! training pairs (r̄, L̄) at locations determined by the strictness mode,
//! all carrying the logarithm of the piece's clamped radial extent.

use crate::grid_map::GroundCandidateSet;
use crate::line_extraction::LineSegmentModel;

/// Strictness of pseudo-input emission, from most to least populous.
/// A weaker mode shrinks the latent training set, trading precision for
/// optimization and prediction speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoInputMode {
    /// Endpoints plus interior third-points: 4 per piece.
    Thirds,
    /// Both endpoints plus the radial midpoint: 3 per piece.
    MidpointEndpoints,
    /// The radial midpoint only: 1 per piece.
    MidpointOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoInputConfig {
    /// Clamp bounds on the length-scale value (meters) before the log.
    pub l_min: f64,
    pub l_max: f64,
    pub mode: PseudoInputMode,
}

impl Default for PseudoInputConfig {
    fn default() -> Self {
        Self { l_min: 0.3, l_max: 30.0, mode: PseudoInputMode::MidpointEndpoints }
    }
}

/// Training set of the latent process: locations r̄ and natural-log
/// length-scale targets L̄, parallel and sorted by location.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LatentTrainingSet {
    pub locations: Vec<f64>,
    pub log_lengthscales: Vec<f64>,
}

impl LatentTrainingSet {
    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }
}

/// Derives the latent training set from a segment's line pieces.
///
/// Each piece contributes pseudo-inputs at mode-dependent locations, all
/// with L̄ = ln(clamp(radial extent, l_min, l_max)). Locations shared
/// between adjacent pieces are emitted once with the smaller neighbor's
/// value. A segment with no line pieces falls back to a single
/// pseudo-input at the candidate-set midpoint with L̄ = ln(l_max); an
/// empty candidate set yields an empty training set.
pub fn select_pseudo_inputs(
    segments: &[LineSegmentModel],
    pg: &GroundCandidateSet,
    config: &PseudoInputConfig,
) -> LatentTrainingSet {
    if segments.is_empty() {
        if pg.is_empty() {
            return LatentTrainingSet::default();
        }
        let first = pg.candidates.first().unwrap().r;
        let last = pg.candidates.last().unwrap().r;
        return LatentTrainingSet {
            locations: vec![0.5 * (first + last)],
            log_lengthscales: vec![config.l_max.ln()],
        };
    }

    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for piece in segments {
        let r_lo = pg.candidates[piece.start_index].r;
        let r_hi = pg.candidates[piece.end_index - 1].r;
        let extent = piece.r_extent;
        let log_scale = extent.clamp(config.l_min, config.l_max).ln();
        let mid = 0.5 * (r_lo + r_hi);
        match config.mode {
            PseudoInputMode::MidpointOnly => pairs.push((mid, log_scale)),
            PseudoInputMode::MidpointEndpoints => {
                pairs.push((r_lo, log_scale));
                pairs.push((mid, log_scale));
                pairs.push((r_hi, log_scale));
            }
            PseudoInputMode::Thirds => {
                pairs.push((r_lo, log_scale));
                pairs.push((r_lo + extent / 3.0, log_scale));
                pairs.push((r_lo + 2.0 * extent / 3.0, log_scale));
                pairs.push((r_hi, log_scale));
            }
        }
    }

    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite ranges"));
    let mut set = LatentTrainingSet::default();
    for (r, log_scale) in pairs {
        match set.locations.last() {
            Some(&prev) if prev == r => {
                // shared location: keep the smaller neighbor's scale
                let last = set.log_lengthscales.last_mut().unwrap();
                *last = last.min(log_scale);
            }
            _ => {
                set.locations.push(r);
                set.log_lengthscales.push(log_scale);
            }
        }
    }
    set
}
