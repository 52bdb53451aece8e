//! Exact Gaussian-process inference for the two-stage predictive model:
//! the latent process supplies point estimates of length-scales, which
//! plug into the non-stationary ground-height posterior.

use nalgebra::{DMatrix, DVector};

use crate::kernels::{
    gram_nonstat, gram_se, nonstat_cross_matrix, se_cross_matrix, KernelError, NonStatParams,
    SeParams,
};
use crate::pseudo_input::LatentTrainingSet;

/// Posterior of the ground-height process at the query ranges.
#[derive(Debug, Clone)]
pub struct GroundPosterior {
    pub query_r: Vec<f64>,
    pub mean: Vec<f64>,
    pub variance: Vec<f64>,
    /// How many posterior variances were clamped up to zero.
    pub clamped_variances: usize,
}

/// Length-scale point estimates at the query ranges, with the latent
/// predictive variance kept for diagnostics.
#[derive(Debug, Clone)]
pub struct LengthscalePrediction {
    pub query_r: Vec<f64>,
    pub lengthscales: Vec<f64>,
    pub latent_variance: Vec<f64>,
}

/// Mean prediction of the latent process, exponentiated into length-scales:
/// L(r) = exp(k̄(r,r̄)ᵀ·(K̄+σ̄_n²I)⁻¹·L̄).
pub fn predict_lengthscales(
    latent: &LatentTrainingSet,
    params: &SeParams,
    query_r: &[f64],
) -> Result<LengthscalePrediction, KernelError> {
    assert!(!latent.is_empty(), "latent training set must be nonempty");
    let factor = gram_se(&latent.locations, params).factorize()?;
    let targets = DVector::from_column_slice(&latent.log_lengthscales);
    let alpha = factor.solve_vec(&targets);

    // cross block: rows = pseudo-inputs, columns = queries
    let cross = se_cross_matrix(&latent.locations, query_r, params);
    let solved = factor.solve_mat(&cross);

    let mut lengthscales = Vec::with_capacity(query_r.len());
    let mut latent_variance = Vec::with_capacity(query_r.len());
    for q in 0..query_r.len() {
        let col = cross.column(q);
        let mu = col.dot(&alpha);
        lengthscales.push(mu.exp());
        let var = params.signal_variance - col.dot(&solved.column(q));
        latent_variance.push(var.max(0.0));
    }
    Ok(LengthscalePrediction {
        query_r: query_r.to_vec(),
        lengthscales,
        latent_variance,
    })
}

/// Ground-height posterior with the non-stationary kernel, length-scales
/// treated as fixed plug-in values. Training targets are assumed already
/// centered; the prior mean is zero.
pub fn predict_ground(
    train_r: &[f64],
    train_z: &[f64],
    train_lengthscales: &[f64],
    query_lengthscales: &[f64],
    params: &NonStatParams,
    query_r: &[f64],
) -> Result<GroundPosterior, KernelError> {
    assert!(!train_r.is_empty(), "training set must be nonempty");
    assert_eq!(train_r.len(), train_z.len());
    assert_eq!(train_r.len(), train_lengthscales.len());
    assert_eq!(query_r.len(), query_lengthscales.len());

    let factor = gram_nonstat(train_r, train_lengthscales, params)?.factorize()?;
    let targets = DVector::from_column_slice(train_z);
    let alpha = factor.solve_vec(&targets);

    // rows = training points, columns = queries
    let cross = nonstat_cross_matrix(
        query_r,
        query_lengthscales,
        train_r,
        train_lengthscales,
        params.signal_variance,
    )?
    .transpose();
    let solved = factor.solve_mat(&cross);

    let mut mean = Vec::with_capacity(query_r.len());
    let mut variance = Vec::with_capacity(query_r.len());
    let mut clamped = 0usize;
    for q in 0..query_r.len() {
        let col = cross.column(q);
        mean.push(col.dot(&alpha));
        // prior variance at any query is σ_f² (zero distance, equal scales)
        let var = params.signal_variance - col.dot(&solved.column(q));
        if var < 0.0 {
            clamped += 1;
            variance.push(0.0);
        } else {
            variance.push(var);
        }
    }
    Ok(GroundPosterior {
        query_r: query_r.to_vec(),
        mean,
        variance,
        clamped_variances: clamped,
    })
}

/// Dense explicit-inverse reference for tests and verification: the same
/// posterior as [`predict_ground`] computed without Cholesky solves.
pub fn dense_ground_oracle(
    train_r: &[f64],
    train_z: &[f64],
    train_lengthscales: &[f64],
    query_lengthscales: &[f64],
    params: &NonStatParams,
    query_r: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    let gram = gram_nonstat(train_r, train_lengthscales, params)?;
    let inv = gram
        .values
        .clone()
        .try_inverse()
        .ok_or(KernelError::IllConditioned)?;
    let cross = nonstat_cross_matrix(
        query_r,
        query_lengthscales,
        train_r,
        train_lengthscales,
        params.signal_variance,
    )?;
    let z = DVector::from_column_slice(train_z);
    let mean_vec: DVector<f64> = &cross * (&inv * &z);
    let cov: DMatrix<f64> = &cross * &inv * cross.transpose();
    let mean = mean_vec.iter().copied().collect();
    let variance = (0..query_r.len())
        .map(|q| params.signal_variance - cov[(q, q)])
        .collect();
    Ok((mean, variance))
}
