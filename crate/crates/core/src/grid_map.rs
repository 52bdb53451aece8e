//! Polar grid map: partitions a 3D frame into M angular segments of N
//! radial bins each, projects bins to the (r, z) plane, and extracts the
//! per-segment ground candidate set together with vertical point-density
//! statistics.

use std::f64::consts::TAU;

use thiserror::Error;

/// Minimum vertical slab thickness used when a bin has zero height extent.
pub const MIN_SLAB_THICKNESS: f64 = 0.01;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid config: {0}")]
    InvalidConfig(String),
}

/// A raw LIDAR return. Intensity is carried through untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub intensity: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z, intensity: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Radial range in the horizontal plane.
    pub fn range(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// 2D projection of a point: radial range and height, with a back-pointer
/// into the source frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub r: f64,
    pub z: f64,
    pub source_index: usize,
}

/// Geometry of the polar grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub num_segments: usize,
    pub num_bins: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub vertical_slabs: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            num_segments: 180,
            num_bins: 120,
            r_min: 0.5,
            r_max: 80.0,
            vertical_slabs: 4,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<(), GridError> {
        if self.num_segments < 1 {
            return Err(GridError::InvalidConfig("num_segments must be >= 1".into()));
        }
        if self.num_bins < 1 {
            return Err(GridError::InvalidConfig("num_bins must be >= 1".into()));
        }
        if !(self.r_min >= 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(GridError::InvalidConfig(format!(
                "radial range [{}, {}) is invalid",
                self.r_min, self.r_max
            )));
        }
        if self.vertical_slabs < 1 {
            return Err(GridError::InvalidConfig("vertical_slabs must be >= 1".into()));
        }
        Ok(())
    }

    pub fn bin_width(&self) -> f64 {
        (self.r_max - self.r_min) / self.num_bins as f64
    }

    pub fn segment_width(&self) -> f64 {
        TAU / self.num_segments as f64
    }

    /// Segment index for a point: atan2 angle mapped to [0, 2π),
    /// counter-clockwise.
    pub fn segment_index(&self, x: f64, y: f64) -> usize {
        let mut angle = y.atan2(x);
        if angle < 0.0 {
            angle += TAU;
        }
        // atan2(-0.0, -1.0) style results can land exactly on 2π after the
        // wrap; fold them back onto segment 0.
        let idx = (angle / self.segment_width()) as usize;
        idx.min(self.num_segments - 1)
    }

    /// Bin index for a range, or None when r lies outside [r_min, r_max).
    pub fn bin_index(&self, r: f64) -> Option<usize> {
        if r < self.r_min || r >= self.r_max {
            return None;
        }
        let idx = ((r - self.r_min) / self.bin_width()) as usize;
        Some(idx.min(self.num_bins - 1))
    }
}

/// One radial cell of a segment: its 2D points and aggregate statistics.
#[derive(Debug, Clone)]
pub struct Bin {
    pub points2d: Vec<Point2>,
    pub r_lo: f64,
    pub r_hi: f64,
    pub z_min: f64,
    pub z_max: f64,
    /// Mean vertical point density over the bin's slabs.
    pub density: f64,
}

impl Bin {
    fn empty(r_lo: f64, r_hi: f64) -> Self {
        Self {
            points2d: Vec::new(),
            r_lo,
            r_hi,
            z_min: f64::INFINITY,
            z_max: f64::NEG_INFINITY,
            density: 0.0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points2d.is_empty()
    }
}

/// Per-segment ground candidates: for every nonempty bin, the point with
/// the lowest height. Ordered by strictly increasing r; `densities` holds
/// the source bin's mean vertical density, parallel to `candidates`.
#[derive(Debug, Clone, Default)]
pub struct GroundCandidateSet {
    pub candidates: Vec<Point2>,
    pub densities: Vec<f64>,
}

impl GroundCandidateSet {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// The full polar grid: M×N bins plus one candidate set per segment.
#[derive(Debug, Clone)]
pub struct PolarGridMap {
    pub config: GridConfig,
    /// Row-major: bins[segment * num_bins + bin].
    pub bins: Vec<Bin>,
    pub candidates: Vec<GroundCandidateSet>,
    /// Points dropped because r fell outside [r_min, r_max).
    pub discarded_out_of_range: usize,
    /// Points dropped because a coordinate was not finite.
    pub discarded_non_finite: usize,
}

impl PolarGridMap {
    pub fn bin(&self, segment: usize, bin: usize) -> &Bin {
        &self.bins[segment * self.config.num_bins + bin]
    }

    pub fn segment_bins(&self, segment: usize) -> &[Bin] {
        let n = self.config.num_bins;
        &self.bins[segment * n..(segment + 1) * n]
    }

    pub fn retained_points(&self) -> usize {
        self.bins.iter().map(|b| b.points2d.len()).sum()
    }
}

/// Builds the polar grid map for a frame. Non-finite points and points
/// with r outside [r_min, r_max) are discarded and counted.
pub fn build_radial_grid(frame: &[Point3], config: &GridConfig) -> Result<PolarGridMap, GridError> {
    config.validate()?;

    let m = config.num_segments;
    let n = config.num_bins;
    let width = config.bin_width();
    let mut bins = Vec::with_capacity(m * n);
    for _ in 0..m {
        for b in 0..n {
            let r_lo = config.r_min + b as f64 * width;
            bins.push(Bin::empty(r_lo, r_lo + width));
        }
    }

    let mut out_of_range = 0usize;
    let mut non_finite = 0usize;
    for (i, p) in frame.iter().enumerate() {
        if !p.is_finite() {
            non_finite += 1;
            continue;
        }
        let r = p.range();
        let Some(bin_idx) = config.bin_index(r) else {
            out_of_range += 1;
            continue;
        };
        let seg_idx = config.segment_index(p.x, p.y);
        let bin = &mut bins[seg_idx * n + bin_idx];
        bin.points2d.push(Point2 { r, z: p.z, source_index: i });
        bin.z_min = bin.z_min.min(p.z);
        bin.z_max = bin.z_max.max(p.z);
    }

    for bin in &mut bins {
        if !bin.is_empty() {
            bin.density = vertical_density(bin, config.vertical_slabs);
        }
    }

    let candidates = (0..m)
        .map(|s| extract_ground_candidates(&bins[s * n..(s + 1) * n]))
        .collect();

    Ok(PolarGridMap {
        config: *config,
        bins,
        candidates,
        discarded_out_of_range: out_of_range,
        discarded_non_finite: non_finite,
    })
}

/// Collects the lowest point of every nonempty bin, in bin order. Bins are
/// half-open in r, so candidate ranges increase strictly across the list.
pub fn extract_ground_candidates(segment: &[Bin]) -> GroundCandidateSet {
    let mut set = GroundCandidateSet::default();
    for bin in segment {
        let Some(lowest) = bin
            .points2d
            .iter()
            .min_by(|a, b| a.z.partial_cmp(&b.z).expect("finite heights"))
        else {
            continue;
        };
        set.candidates.push(*lowest);
        set.densities.push(bin.density);
    }
    set
}

/// Mean vertical point density of a bin: the bin's height extent is split
/// into `slabs` uniform slabs, each slab's point count is divided by its
/// area (radial extent × slab thickness), and the per-slab densities are
/// averaged.
///
/// A bin with zero height extent (including a single-point bin) has no
/// slab area; its density is count / (radial extent × minimum thickness).
pub fn vertical_density(bin: &Bin, slabs: usize) -> f64 {
    assert!(slabs >= 1, "slab count must be >= 1");
    assert!(!bin.is_empty(), "density of an empty bin is undefined");

    let radial_extent = bin.r_hi - bin.r_lo;
    let height = bin.z_max - bin.z_min;
    if height <= 0.0 {
        return bin.points2d.len() as f64 / (radial_extent * MIN_SLAB_THICKNESS);
    }

    let thickness = height / slabs as f64;
    let slab_area = radial_extent * thickness;
    let mut counts = vec![0usize; slabs];
    for p in &bin.points2d {
        let idx = (((p.z - bin.z_min) / thickness) as usize).min(slabs - 1);
        counts[idx] += 1;
    }
    counts.iter().map(|&c| c as f64 / slab_area).sum::<f64>() / slabs as f64
}
