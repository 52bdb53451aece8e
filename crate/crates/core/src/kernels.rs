//! Covariance functions and Gram-matrix assembly.
//!
//! Two kernels drive the model: a non-stationary kernel over ground
//! candidate ranges whose length-scale varies per input location, and a
//! stationary squared-exponential kernel over pseudo-input ranges for the
//! latent length-scale process. Both come with analytic parameter
//! derivatives for the marginal-likelihood gradient.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("length-scales must be positive, got {0}")]
    NonPositiveLengthscale(f64),
    #[error("ill-conditioned: Cholesky failed after jitter escalation")]
    IllConditioned,
}

/// Hyper-parameters of the non-stationary ground-height kernel. Per-point
/// length-scales are supplied alongside the input locations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonStatParams {
    /// σ_f²
    pub signal_variance: f64,
    /// σ_n²
    pub noise_variance: f64,
}

/// Hyper-parameters of the stationary squared-exponential latent kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeParams {
    /// σ̄_f²
    pub signal_variance: f64,
    /// σ̄_l
    pub lengthscale: f64,
    /// σ̄_n²
    pub noise_variance: f64,
}

/// Non-stationary covariance between two scalar inputs with their own
/// length-scales:
///
/// k(r_i, r_j) = σ_f² (L_i²)^¼ (L_j²)^¼ ((L_i²+L_j²)/2)^-½
///              · exp(−(r_i−r_j)² / (L_i²+L_j²))
///
/// The prefactor collapses to 1 when L_i = L_j, and for a constant
/// length-scale field the kernel reduces to the stationary squared
/// exponential σ_f²·exp(−Δr²/(2L²)).
pub fn nonstat_cov(
    r_i: f64,
    r_j: f64,
    l_i: f64,
    l_j: f64,
    signal_variance: f64,
) -> Result<f64, KernelError> {
    if l_i <= 0.0 {
        return Err(KernelError::NonPositiveLengthscale(l_i));
    }
    if l_j <= 0.0 {
        return Err(KernelError::NonPositiveLengthscale(l_j));
    }
    Ok(nonstat_cov_unchecked(r_i, r_j, l_i, l_j, signal_variance))
}

#[inline]
fn nonstat_cov_unchecked(r_i: f64, r_j: f64, l_i: f64, l_j: f64, signal_variance: f64) -> f64 {
    let sum_sq = l_i * l_i + l_j * l_j;
    let prefactor = (2.0 * l_i * l_j / sum_sq).sqrt();
    let d = r_i - r_j;
    signal_variance * prefactor * (-d * d / sum_sq).exp()
}

/// Stationary squared-exponential covariance of the latent process:
/// k̄(r̄_i, r̄_j) = σ̄_f²·exp(−½ (r̄_i−r̄_j)²/σ̄_l²).
pub fn se_cov(r_i: f64, r_j: f64, params: &SeParams) -> f64 {
    let d = r_i - r_j;
    params.signal_variance * (-0.5 * d * d / (params.lengthscale * params.lengthscale)).exp()
}

/// A symmetric covariance matrix with the diagonal stabilizer that was
/// added at assembly time.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub values: DMatrix<f64>,
    pub jitter: f64,
}

/// Relative jitter ladder applied at factorization: assembly starts at
/// 1e-8·max(diag) and escalation stops at 1e-4·max(diag).
const JITTER_LADDER: [f64; 5] = [1e-8, 1e-7, 1e-6, 1e-5, 1e-4];

impl GramMatrix {
    /// Wraps a pure kernel matrix, adding measurement noise and the
    /// initial jitter on the diagonal.
    pub fn from_kernel(mut kernel: DMatrix<f64>, noise_variance: f64) -> Self {
        let n = kernel.nrows();
        for i in 0..n {
            kernel[(i, i)] += noise_variance;
        }
        let jitter = JITTER_LADDER[0] * kernel.diagonal().amax();
        for i in 0..n {
            kernel[(i, i)] += jitter;
        }
        Self { values: kernel, jitter }
    }

    /// Noise-free wrapper (no jitter), for prior blocks.
    pub fn pure(kernel: DMatrix<f64>) -> Self {
        Self { values: kernel, jitter: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    /// Cholesky factorization with jitter escalation: on failure the
    /// diagonal is lifted to the next rung of the ladder (×10 per step,
    /// relative to max(diag)) until 1e-4·max(diag), then the matrix is
    /// declared ill-conditioned.
    pub fn factorize(&self) -> Result<CholeskyFactor, KernelError> {
        let max_diag = self.values.diagonal().amax();
        if let Some(chol) = Cholesky::new(self.values.clone()) {
            return Ok(CholeskyFactor { chol, applied_jitter: self.jitter });
        }
        for &factor in &JITTER_LADDER[1..] {
            let extra = factor * max_diag;
            let mut lifted = self.values.clone();
            for i in 0..lifted.nrows() {
                lifted[(i, i)] += extra;
            }
            if let Some(chol) = Cholesky::new(lifted) {
                return Ok(CholeskyFactor { chol, applied_jitter: self.jitter + extra });
            }
        }
        Err(KernelError::IllConditioned)
    }
}

/// A successful factorization; all downstream solves go through it.
pub struct CholeskyFactor {
    chol: Cholesky<f64, Dyn>,
    pub applied_jitter: f64,
}

impl CholeskyFactor {
    pub fn solve_vec(&self, b: &DVector<f64>) -> DVector<f64> {
        self.chol.solve(b)
    }

    pub fn solve_mat(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        self.chol.solve(b)
    }

    /// log|A| from the factor diagonal.
    pub fn log_det(&self) -> f64 {
        2.0 * self.chol.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>()
    }

    /// A⁻¹ computed by solving against the identity.
    pub fn inverse(&self) -> DMatrix<f64> {
        self.chol.inverse()
    }
}

fn validate_lengthscales(lengthscales: &[f64]) -> Result<(), KernelError> {
    for &l in lengthscales {
        if !(l > 0.0) {
            return Err(KernelError::NonPositiveLengthscale(l));
        }
    }
    Ok(())
}

/// Pure non-stationary kernel matrix over `locations` with per-location
/// length-scales.
pub fn nonstat_kernel_matrix(
    locations: &[f64],
    lengthscales: &[f64],
    signal_variance: f64,
) -> Result<DMatrix<f64>, KernelError> {
    assert_eq!(locations.len(), lengthscales.len(), "one length-scale per location");
    validate_lengthscales(lengthscales)?;
    let n = locations.len();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = nonstat_cov_unchecked(
                locations[i],
                locations[j],
                lengthscales[i],
                lengthscales[j],
                signal_variance,
            );
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(k)
}

/// Rectangular non-stationary cross-covariance K(query, train).
pub fn nonstat_cross_matrix(
    query: &[f64],
    query_lengthscales: &[f64],
    train: &[f64],
    train_lengthscales: &[f64],
    signal_variance: f64,
) -> Result<DMatrix<f64>, KernelError> {
    assert_eq!(query.len(), query_lengthscales.len());
    assert_eq!(train.len(), train_lengthscales.len());
    validate_lengthscales(query_lengthscales)?;
    validate_lengthscales(train_lengthscales)?;
    let mut k = DMatrix::zeros(query.len(), train.len());
    for i in 0..query.len() {
        for j in 0..train.len() {
            k[(i, j)] = nonstat_cov_unchecked(
                query[i],
                train[j],
                query_lengthscales[i],
                train_lengthscales[j],
                signal_variance,
            );
        }
    }
    Ok(k)
}

/// Pure squared-exponential kernel matrix over `locations`.
pub fn se_kernel_matrix(locations: &[f64], params: &SeParams) -> DMatrix<f64> {
    let n = locations.len();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = se_cov(locations[i], locations[j], params);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

/// Rectangular squared-exponential cross-covariance K̄(query, train).
pub fn se_cross_matrix(query: &[f64], train: &[f64], params: &SeParams) -> DMatrix<f64> {
    let mut k = DMatrix::zeros(query.len(), train.len());
    for i in 0..query.len() {
        for j in 0..train.len() {
            k[(i, j)] = se_cov(query[i], train[j], params);
        }
    }
    k
}

/// Noisy Gram A = K(r,r) + σ_n²·I (+ jitter) for the ground process.
pub fn gram_nonstat(
    locations: &[f64],
    lengthscales: &[f64],
    params: &NonStatParams,
) -> Result<GramMatrix, KernelError> {
    assert!(!locations.is_empty(), "gram of zero locations");
    let kernel = nonstat_kernel_matrix(locations, lengthscales, params.signal_variance)?;
    Ok(GramMatrix::from_kernel(kernel, params.noise_variance))
}

/// Noisy Gram B = K̄(r̄,r̄) + σ̄_n²·I (+ jitter) for the latent process.
pub fn gram_se(locations: &[f64], params: &SeParams) -> GramMatrix {
    assert!(!locations.is_empty(), "gram of zero locations");
    GramMatrix::from_kernel(se_kernel_matrix(locations, params), params.noise_variance)
}

/// Analytic partials of the noisy non-stationary Gram.
pub struct NonStatGramDerivs {
    /// ∂A/∂σ_f = 2K/σ_f (noise-free part).
    pub d_sigma_f: DMatrix<f64>,
    /// ∂A/∂σ_n is 2σ_n·I; only the scalar is stored.
    pub d_sigma_n_diag: f64,
    /// P with P[i][j] = ∂K_ij/∂L_i and zero diagonal. The full matrix
    /// ∂A/∂L_k is zero outside row/column k, with entries taken from P's
    /// row k, which is enough to assemble any directional derivative.
    pub dk_dl: DMatrix<f64>,
}

/// Partials of the non-stationary Gram with respect to σ_f, σ_n, and each
/// per-point length-scale.
pub fn nonstat_gram_derivatives(
    locations: &[f64],
    lengthscales: &[f64],
    params: &NonStatParams,
) -> Result<NonStatGramDerivs, KernelError> {
    let sigma_f = params.signal_variance.sqrt();
    let kernel = nonstat_kernel_matrix(locations, lengthscales, params.signal_variance)?;
    let n = locations.len();
    let mut dk_dl = DMatrix::zeros(n, n);
    for i in 0..n {
        let l_i = lengthscales[i];
        for j in 0..n {
            if i == j {
                continue;
            }
            let l_j = lengthscales[j];
            let s = l_i * l_i + l_j * l_j;
            let d = locations[i] - locations[j];
            // d ln k / d L_i = 1/(2L_i) − L_i/S + 2 L_i d²/S²
            dk_dl[(i, j)] = kernel[(i, j)] * (0.5 / l_i - l_i / s + 2.0 * l_i * d * d / (s * s));
        }
    }
    Ok(NonStatGramDerivs {
        d_sigma_f: kernel * (2.0 / sigma_f),
        d_sigma_n_diag: 2.0 * params.noise_variance.sqrt(),
        dk_dl,
    })
}

/// Analytic partials of the noisy squared-exponential Gram.
pub struct SeGramDerivs {
    /// ∂B/∂σ̄_f = 2K̄/σ̄_f.
    pub d_sigma_f: DMatrix<f64>,
    /// ∂B/∂σ̄_l = K̄ ∘ Δ²/σ̄_l³.
    pub d_sigma_l: DMatrix<f64>,
    /// ∂B/∂σ̄_n is 2σ̄_n·I; only the scalar is stored.
    pub d_sigma_n_diag: f64,
}

pub fn se_gram_derivatives(locations: &[f64], params: &SeParams) -> SeGramDerivs {
    let kernel = se_kernel_matrix(locations, params);
    let sigma_f = params.signal_variance.sqrt();
    let l3 = params.lengthscale.powi(3);
    let n = locations.len();
    let mut d_sigma_l = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = locations[i] - locations[j];
            d_sigma_l[(i, j)] = kernel[(i, j)] * d * d / l3;
        }
    }
    SeGramDerivs {
        d_sigma_f: kernel * (2.0 / sigma_f),
        d_sigma_l,
        d_sigma_n_diag: 2.0 * params.noise_variance.sqrt(),
    }
}
