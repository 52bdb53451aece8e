//! Critical-point line extraction over a segment's ground candidates.
//!
//! Candidates are swept in order of increasing range. The current line
//! piece grows point by point and is refit with distance-oriented
//! (errors-in-variables) regression after each addition; a critical point
//! is declared, and a new piece started from scratch, whenever the local
//! behavior of the candidates changes: a range gap, a height step, a
//! density jump, a violated point-to-line distance, or a slope that leaves
//! the ground-compatible band.

use thiserror::Error;

use crate::grid_map::{GroundCandidateSet, Point2};

#[derive(Debug, Error, PartialEq)]
pub enum LineError {
    #[error("underdetermined: need at least 2 distinct points")]
    Underdetermined,
}

/// A fitted 2D line in homogeneous form a·r + b·z + c = 0 with a² + b² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineParams {
    fn from_slope_intercept(slope: f64, intercept: f64) -> Self {
        // z = intercept + slope * r  =>  slope*r - z + intercept = 0
        let norm = slope.hypot(-1.0);
        Self {
            a: slope / norm,
            b: -1.0 / norm,
            c: intercept / norm,
        }
    }

    fn vertical(r: f64) -> Self {
        Self { a: 1.0, b: 0.0, c: -r }
    }

    pub fn is_vertical(&self) -> bool {
        self.b == 0.0
    }

    /// dz/dr. Infinite for vertical lines.
    pub fn slope(&self) -> f64 {
        if self.is_vertical() {
            f64::INFINITY
        } else {
            -self.a / self.b
        }
    }

    /// Height-axis intercept. Infinite for vertical lines.
    pub fn intercept(&self) -> f64 {
        if self.is_vertical() {
            f64::INFINITY
        } else {
            -self.c / self.b
        }
    }

    /// Line angle in radians, in (−π/2, π/2].
    pub fn angle(&self) -> f64 {
        if self.is_vertical() {
            std::f64::consts::FRAC_PI_2
        } else {
            self.slope().atan()
        }
    }
}

/// Variance ratio of z-noise to r-noise in the errors-in-variables model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemingConfig {
    pub lambda: f64,
}

impl Default for DemingConfig {
    fn default() -> Self {
        Self { lambda: 1.0 }
    }
}

/// Thresholds that define a critical point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPointCriteria {
    /// Max |dz/dr| for a line still considered ground-compatible.
    pub slope_threshold: f64,
    /// Max point-to-line distance δ within a piece.
    pub fit_distance: f64,
    /// Max range gap ζ_m between successive candidates.
    pub horizontal_gap: f64,
    /// Max ratio between consecutive bins' vertical densities.
    pub density_jump: f64,
    /// Max height step ζ_b between successive candidates, also the max
    /// intercept jump between consecutive refits.
    pub height_step: f64,
    /// Max line-angle change between consecutive refits, radians.
    pub angular_jump: f64,
}

impl Default for CriticalPointCriteria {
    fn default() -> Self {
        Self {
            slope_threshold: 0.2,
            fit_distance: 0.05,
            horizontal_gap: 2.0,
            density_jump: 2.0,
            height_step: 0.15,
            angular_jump: 0.02,
        }
    }
}

/// One line piece between two critical points: candidates
/// [start_index, end_index) of the segment's ground candidate set.
#[derive(Debug, Clone)]
pub struct LineSegmentModel {
    pub start_index: usize,
    pub end_index: usize,
    pub params: LineParams,
    /// Range covered: r(last member) − r(first member).
    pub r_extent: f64,
    /// Mean vertical density over the member bins.
    pub mean_density: f64,
    /// True when a single-point residue was folded into this piece.
    pub absorbed_singleton: bool,
}

impl LineSegmentModel {
    pub fn len(&self) -> usize {
        self.end_index - self.start_index
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Maximum-likelihood Deming line fit.
///
/// With sample moments s_rr, s_zz, s_rz about the means and λ the z/r
/// noise-variance ratio, the slope is
/// β = [s_zz − λ·s_rr + sqrt((s_zz − λ·s_rr)² + 4λ·s_rz²)] / (2·s_rz)
/// and the intercept α = mean(z) − β·mean(r). Degenerate moment
/// configurations resolve to the vertical or horizontal line through the
/// centroid.
pub fn fit_line_deming(points: &[Point2], config: &DemingConfig) -> Result<LineParams, LineError> {
    if points.len() < 2 {
        return Err(LineError::Underdetermined);
    }
    let n = points.len() as f64;
    let mean_r = points.iter().map(|p| p.r).sum::<f64>() / n;
    let mean_z = points.iter().map(|p| p.z).sum::<f64>() / n;
    let mut s_rr = 0.0;
    let mut s_zz = 0.0;
    let mut s_rz = 0.0;
    for p in points {
        let dr = p.r - mean_r;
        let dz = p.z - mean_z;
        s_rr += dr * dr;
        s_zz += dz * dz;
        s_rz += dr * dz;
    }
    if s_rr == 0.0 && s_zz == 0.0 {
        return Err(LineError::Underdetermined);
    }

    let lambda = config.lambda;
    let scale = s_rr.max(s_zz);
    if s_rz.abs() <= 1e-14 * scale {
        if s_zz > lambda * s_rr {
            return Ok(LineParams::vertical(mean_r));
        }
        return Ok(LineParams::from_slope_intercept(0.0, mean_z));
    }

    let diff = s_zz - lambda * s_rr;
    let beta = (diff + (diff * diff + 4.0 * lambda * s_rz * s_rz).sqrt()) / (2.0 * s_rz);
    let alpha = mean_z - beta * mean_r;
    Ok(LineParams::from_slope_intercept(beta, alpha))
}

/// Unsigned Euclidean distance |a·r + b·z + c| from a point to a
/// normalized line.
pub fn point_line_distance(p: Point2, line: &LineParams) -> f64 {
    (line.a * p.r + line.b * p.z + line.c).abs()
}

/// Density ratio test between consecutive bins: fires when the density at
/// least `bound`-folds up or down. Zero densities only fire against a
/// nonzero neighbor.
fn density_jumps(prev: f64, next: f64, bound: f64) -> bool {
    if prev == next {
        return false;
    }
    if prev == 0.0 || next == 0.0 {
        return true;
    }
    let ratio = if next > prev { next / prev } else { prev / next };
    ratio > bound
}

/// Sweeps a segment's ground candidates, partitioning them at critical
/// points into Deming-fitted line pieces. The returned pieces are
/// consecutive, non-overlapping, and cover the whole candidate list;
/// single-point residues are folded into the shorter adjacent piece and
/// flagged. Fewer than two candidates yield no pieces.
pub fn extract_line_segments(
    pg: &GroundCandidateSet,
    criteria: &CriticalPointCriteria,
    deming: &DemingConfig,
) -> Vec<LineSegmentModel> {
    let cand = &pg.candidates;
    let n = cand.len();
    if n < 2 {
        return Vec::new();
    }

    // Sweep: raw piece boundaries by index.
    let mut boundaries = vec![0usize];
    let mut start = 0usize;
    let mut accepted_fit: Option<LineParams> = None;
    for i in 1..n {
        let prev = cand[i - 1];
        let cur = cand[i];
        let gap = cur.r - prev.r;
        let step = (cur.z - prev.z).abs();

        let fires = if gap > criteria.horizontal_gap
            || step > criteria.height_step
            || density_jumps(pg.densities[i - 1], pg.densities[i], criteria.density_jump)
        {
            true
        } else {
            let refit = fit_line_deming(&cand[start..=i], deming)
                .expect("piece has >= 2 distinct-r points");
            let too_far = cand[start..=i]
                .iter()
                .any(|p| point_line_distance(*p, &refit) > criteria.fit_distance);
            let slope_escapes = refit.slope().abs() > criteria.slope_threshold
                && accepted_fit.is_some_and(|f| f.slope().abs() <= criteria.slope_threshold);
            let param_jump = accepted_fit.is_some_and(|f| {
                (refit.angle() - f.angle()).abs() > criteria.angular_jump
                    || (refit.intercept() - f.intercept()).abs() > criteria.height_step
            });
            if too_far || slope_escapes || param_jump {
                true
            } else {
                accepted_fit = Some(refit);
                false
            }
        };

        if fires {
            boundaries.push(i);
            start = i;
            accepted_fit = None;
        }
    }
    boundaries.push(n);

    // Raw pieces as (start, end, absorbed) ranges.
    let mut pieces: Vec<(usize, usize, bool)> = boundaries
        .windows(2)
        .map(|w| (w[0], w[1], false))
        .collect();

    // Fold single-point residues into the shorter adjacent piece.
    while pieces.len() > 1 {
        let Some(k) = pieces.iter().position(|p| p.1 - p.0 < 2) else {
            break;
        };
        let left_len = if k > 0 { pieces[k - 1].1 - pieces[k - 1].0 } else { usize::MAX };
        let right_len = if k + 1 < pieces.len() {
            pieces[k + 1].1 - pieces[k + 1].0
        } else {
            usize::MAX
        };
        if left_len <= right_len {
            pieces[k - 1].1 = pieces[k].1;
            pieces[k - 1].2 = true;
            pieces.remove(k);
        } else {
            pieces[k + 1].0 = pieces[k].0;
            pieces[k + 1].2 = true;
            pieces.remove(k);
        }
    }

    pieces
        .into_iter()
        .map(|(s, e, absorbed)| {
            let params = fit_line_deming(&cand[s..e], deming)
                .expect("merged pieces hold >= 2 candidates at distinct r");
            let densities = &pg.densities[s..e];
            LineSegmentModel {
                start_index: s,
                end_index: e,
                params,
                r_extent: cand[e - 1].r - cand[s].r,
                mean_density: densities.iter().sum::<f64>() / densities.len() as f64,
                absorbed_singleton: absorbed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use rand_distr::{Distribution, Normal};

    fn pts(pairs: &[(f64, f64)]) -> Vec<Point2> {
        pairs
            .iter()
            .enumerate()
            .map(|(i, &(r, z))| Point2 { r, z, source_index: i })
            .collect()
    }

    fn candidate_set(pairs: &[(f64, f64)]) -> GroundCandidateSet {
        GroundCandidateSet {
            candidates: pts(pairs),
            densities: vec![1.0; pairs.len()],
        }
    }

    #[test]
    fn exact_collinear_fit() {
        for lambda in [0.25, 1.0, 4.0] {
            let line = fit_line_deming(
                &pts(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]),
                &DemingConfig { lambda },
            )
            .unwrap();
            assert!((line.slope() - 1.0).abs() < 1e-12);
            assert!((line.intercept() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_square_passes_through_centroid() {
        let points = pts(&[(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)]);
        let line = fit_line_deming(&points, &DemingConfig { lambda: 1.0 }).unwrap();
        let centroid = Point2 { r: 0.5, z: 0.5, source_index: 0 };
        assert!(point_line_distance(centroid, &line) < 1e-12);

        // lambda = 1 is orthogonal regression: total squared orthogonal
        // distance must match the best axis-aligned candidate lines of
        // this symmetric configuration.
        let total: f64 = points
            .iter()
            .map(|p| point_line_distance(*p, &line).powi(2))
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    /// Grid-search oracle over the concentrated negative log-likelihood
    /// sum (z - a - b r)^2 / (lambda + b^2).
    fn likelihood_grid_fit(points: &[Point2], lambda: f64) -> (f64, f64) {
        let objective = |alpha: f64, beta: f64| -> f64 {
            points
                .iter()
                .map(|p| {
                    let e = p.z - alpha - beta * p.r;
                    e * e
                })
                .sum::<f64>()
                / (lambda + beta * beta)
        };
        let (mut a0, mut b0) = (0.0f64, 0.0f64);
        let mut half = 1.0f64;
        for _ in 0..4 {
            let mut best = (f64::INFINITY, a0, b0);
            for ia in 0..=200 {
                let alpha = a0 - half + 2.0 * half * ia as f64 / 200.0;
                for ib in 0..=200 {
                    let beta = b0 - half + 2.0 * half * ib as f64 / 200.0;
                    let v = objective(alpha, beta);
                    if v < best.0 {
                        best = (v, alpha, beta);
                    }
                }
            }
            a0 = best.1;
            b0 = best.2;
            half /= 10.0;
        }
        (a0, b0)
    }

    #[test]
    fn noisy_line_matches_likelihood_grid() {
        let mut rng = StdRng::seed_from_u64(42);
        let noise = Normal::new(0.0, 0.05).unwrap();
        let points: Vec<Point2> = (0..100)
            .map(|i| {
                let xi = i as f64 * 0.1;
                Point2 {
                    r: xi + noise.sample(&mut rng),
                    z: 0.3 + 0.2 * xi + noise.sample(&mut rng),
                    source_index: i,
                }
            })
            .collect();
        let line = fit_line_deming(&points, &DemingConfig { lambda: 1.0 }).unwrap();
        let (alpha, beta) = likelihood_grid_fit(&points, 1.0);
        assert!((line.intercept() - alpha).abs() < 1e-3, "alpha {} vs {}", line.intercept(), alpha);
        assert!((line.slope() - beta).abs() < 1e-3, "beta {} vs {}", line.slope(), beta);
    }

    #[test]
    fn vertical_degenerate_case() {
        let line = fit_line_deming(
            &pts(&[(2.0, 0.0), (2.0, 1.0), (2.0, 5.0)]),
            &DemingConfig::default(),
        )
        .unwrap();
        assert!(line.is_vertical());
        assert!(point_line_distance(Point2 { r: 2.0, z: 3.0, source_index: 0 }, &line) < 1e-12);
    }

    #[test]
    fn underdetermined_inputs_error() {
        let one = pts(&[(1.0, 1.0)]);
        assert_eq!(
            fit_line_deming(&one, &DemingConfig::default()).unwrap_err(),
            LineError::Underdetermined
        );
        let same = pts(&[(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]);
        assert_eq!(
            fit_line_deming(&same, &DemingConfig::default()).unwrap_err(),
            LineError::Underdetermined
        );
    }

    #[test]
    fn large_lambda_converges_to_least_squares() {
        let mut rng = StdRng::seed_from_u64(9);
        let points: Vec<Point2> = (0..60)
            .map(|i| Point2 {
                r: i as f64 * 0.25,
                z: 1.5 - 0.07 * i as f64 * 0.25 + rng.gen_range(-0.02..0.02),
                source_index: i,
            })
            .collect();
        let line = fit_line_deming(&points, &DemingConfig { lambda: 1e8 }).unwrap();

        let n = points.len() as f64;
        let mr = points.iter().map(|p| p.r).sum::<f64>() / n;
        let mz = points.iter().map(|p| p.z).sum::<f64>() / n;
        let s_rz: f64 = points.iter().map(|p| (p.r - mr) * (p.z - mz)).sum();
        let s_rr: f64 = points.iter().map(|p| (p.r - mr).powi(2)).sum();
        assert!((line.slope() - s_rz / s_rr).abs() < 1e-4);
    }

    #[test]
    fn distance_basics() {
        let horizontal = LineParams { a: 0.0, b: 1.0, c: -1.0 }; // z = 1
        assert!((point_line_distance(Point2 { r: 0.0, z: 0.0, source_index: 0 }, &horizontal) - 1.0).abs() < 1e-15);
        assert!(point_line_distance(Point2 { r: 3.0, z: 1.0, source_index: 0 }, &horizontal) < 1e-15);
    }

    /// Euclidean projection oracle for random points and lines.
    #[test]
    fn distance_matches_projection_oracle() {
        let mut rng = StdRng::seed_from_u64(77);
        for _ in 0..200 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let c = rng.gen_range(-5.0..5.0);
            let line = LineParams { a: theta.cos(), b: theta.sin(), c };
            let p = Point2 {
                r: rng.gen_range(-10.0..10.0),
                z: rng.gen_range(-10.0..10.0),
                source_index: 0,
            };
            // Project p onto the line and measure displacement.
            let d = line.a * p.r + line.b * p.z + line.c;
            let proj = (p.r - d * line.a, p.z - d * line.b);
            let oracle = ((p.r - proj.0).powi(2) + (p.z - proj.1).powi(2)).sqrt();
            assert!((point_line_distance(p, &line) - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn single_compliant_line_yields_one_piece() {
        let pairs: Vec<(f64, f64)> = (0..20).map(|i| (1.0 + i as f64 * 0.5, 0.01 * (1.0 + i as f64 * 0.5))).collect();
        let pg = candidate_set(&pairs);
        let pieces = extract_line_segments(&pg, &CriticalPointCriteria::default(), &DemingConfig::default());
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].start_index, 0);
        assert_eq!(pieces[0].end_index, 20);
        assert!(!pieces[0].absorbed_singleton);
    }

    #[test]
    fn height_step_splits_into_two_pieces() {
        // Flat run, then a 0.4 m step: critical point at the step.
        let mut pairs: Vec<(f64, f64)> = (0..10).map(|i| (1.0 + i as f64 * 0.5, 0.0)).collect();
        pairs.extend((0..10).map(|i| (6.0 + i as f64 * 0.5, 0.4)));
        let pg = candidate_set(&pairs);
        let pieces = extract_line_segments(&pg, &CriticalPointCriteria::default(), &DemingConfig::default());
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].end_index, 10);
        assert_eq!(pieces[1].start_index, 10);
    }

    #[test]
    fn piecewise_slope_change_recovers_both_slopes() {
        // 0.0 slope for r < 10, 0.08 after; generator ground truth.
        let mut pairs: Vec<(f64, f64)> = (0..19).map(|i| (0.5 + 0.5 * i as f64, 0.0)).collect();
        pairs.extend((0..20).map(|i| {
            let r = 10.0 + 0.5 * i as f64;
            (r, 0.08 * (r - 10.0))
        }));
        let pg = candidate_set(&pairs);
        let criteria = CriticalPointCriteria {
            fit_distance: 0.05,
            ..CriticalPointCriteria::default()
        };
        let pieces = extract_line_segments(&pg, &criteria, &DemingConfig::default());
        assert_eq!(pieces.len(), 2, "expected exactly two pieces, got {:?}",
            pieces.iter().map(|p| (p.start_index, p.end_index)).collect::<Vec<_>>());
        assert!((pieces[0].params.slope() - 0.0).abs() < 0.01);
        assert!((pieces[1].params.slope() - 0.08).abs() < 0.01);
    }

    #[test]
    fn fewer_than_two_candidates_yield_nothing() {
        let pg = candidate_set(&[(1.0, 0.0)]);
        assert!(extract_line_segments(&pg, &CriticalPointCriteria::default(), &DemingConfig::default()).is_empty());
    }

    #[test]
    fn density_jump_triggers_critical_point() {
        let pairs: Vec<(f64, f64)> = (0..10).map(|i| (1.0 + i as f64 * 0.5, 0.0)).collect();
        let mut pg = candidate_set(&pairs);
        for d in &mut pg.densities[5..] {
            *d = 10.0;
        }
        let pieces = extract_line_segments(&pg, &CriticalPointCriteria::default(), &DemingConfig::default());
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[1].start_index, 5);
    }

    #[test]
    fn singleton_residue_is_absorbed() {
        // Two gaps in a row isolate index 5.
        let pairs: Vec<(f64, f64)> = (0..5)
            .map(|i| (1.0 + i as f64 * 0.5, 0.0))
            .chain(std::iter::once((20.0, 0.0)))
            .chain((0..5).map(|i| (40.0 + i as f64 * 0.5, 0.0)))
            .collect();
        let pg = candidate_set(&pairs);
        let pieces = extract_line_segments(&pg, &CriticalPointCriteria::default(), &DemingConfig::default());
        assert_eq!(pieces.iter().map(LineSegmentModel::len).sum::<usize>(), 11);
        assert!(pieces.iter().all(|p| p.len() >= 2));
        assert!(pieces.iter().any(|p| p.absorbed_singleton));
    }

    proptest! {
        /// Translation equivariance: slope invariant, intercept shifts by
        /// dz - slope*dr.
        #[test]
        fn deming_translation_equivariance(
            seed in 0u64..1000,
            dr in -50.0f64..50.0,
            dz in -50.0f64..50.0,
            lambda in 0.1f64..10.0,
        ) {
            let mut rng = StdRng::seed_from_u64(seed);
            let points: Vec<Point2> = (0..30)
                .map(|i| Point2 {
                    r: i as f64 * 0.3 + rng.gen_range(-0.05..0.05),
                    z: 0.5 + 0.1 * i as f64 * 0.3 + rng.gen_range(-0.05..0.05),
                    source_index: i,
                })
                .collect();
            let shifted: Vec<Point2> = points
                .iter()
                .map(|p| Point2 { r: p.r + dr, z: p.z + dz, ..*p })
                .collect();
            let cfg = DemingConfig { lambda };
            let base = fit_line_deming(&points, &cfg).unwrap();
            let moved = fit_line_deming(&shifted, &cfg).unwrap();
            prop_assert!((moved.slope() - base.slope()).abs() < 1e-9);
            let expect = base.intercept() + dz - base.slope() * dr;
            prop_assert!((moved.intercept() - expect).abs() < 1e-6);
        }

        /// The fitted line passes through the centroid.
        #[test]
        fn deming_line_through_centroid(seed in 0u64..1000, lambda in 0.1f64..10.0) {
            let mut rng = StdRng::seed_from_u64(seed);
            let points: Vec<Point2> = (0..25)
                .map(|i| Point2 {
                    r: rng.gen_range(0.0..20.0),
                    z: rng.gen_range(-1.0..1.0),
                    source_index: i,
                })
                .collect();
            let line = fit_line_deming(&points, &DemingConfig { lambda }).unwrap();
            let n = points.len() as f64;
            let centroid = Point2 {
                r: points.iter().map(|p| p.r).sum::<f64>() / n,
                z: points.iter().map(|p| p.z).sum::<f64>() / n,
                source_index: 0,
            };
            prop_assert!(point_line_distance(centroid, &line) < 1e-9);
        }

        /// Scaling z by s while scaling lambda by s^2 scales the slope by s.
        #[test]
        fn deming_z_scaling(seed in 0u64..1000, s in 0.2f64..5.0) {
            let mut rng = StdRng::seed_from_u64(seed);
            let points: Vec<Point2> = (0..30)
                .map(|i| Point2 {
                    r: i as f64 * 0.4 + rng.gen_range(-0.1..0.1),
                    z: 0.3 * i as f64 * 0.4 + rng.gen_range(-0.1..0.1),
                    source_index: i,
                })
                .collect();
            let scaled: Vec<Point2> = points
                .iter()
                .map(|p| Point2 { r: p.r, z: p.z * s, ..*p })
                .collect();
            let base = fit_line_deming(&points, &DemingConfig { lambda: 1.0 }).unwrap();
            let big = fit_line_deming(&scaled, &DemingConfig { lambda: s * s }).unwrap();
            prop_assert!((big.slope() - s * base.slope()).abs() < 1e-9 * s.max(1.0));
        }

        /// Output pieces partition [0, n).
        #[test]
        fn pieces_partition_candidates(seed in 0u64..500) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.gen_range(2..60);
            let mut r = 0.5;
            let mut z = 0.0f64;
            let pairs: Vec<(f64, f64)> = (0..n)
                .map(|_| {
                    r += rng.gen_range(0.2..3.0);
                    z += rng.gen_range(-0.3..0.3);
                    (r, z)
                })
                .collect();
            let pg = candidate_set(&pairs);
            let pieces = extract_line_segments(
                &pg,
                &CriticalPointCriteria::default(),
                &DemingConfig::default(),
            );
            prop_assert_eq!(pieces[0].start_index, 0);
            prop_assert_eq!(pieces.last().unwrap().end_index, n);
            for w in pieces.windows(2) {
                prop_assert_eq!(w[0].end_index, w[1].start_index);
            }
            for p in &pieces {
                prop_assert!(p.len() >= 2);
                prop_assert!(p.r_extent > 0.0);
            }
        }
    }
}
