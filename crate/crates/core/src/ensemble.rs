//! Monte Carlo machinery for the random-phase postulate: phase draws and
//! their correlation, energy-window coarse graining, coherent versus
//! incoherent expectation values, the fluctuation-count sampler with density
//! proportional to exp(-mu^2 N^2), and the oscillator ground-state spread.
//!
//! Everything here is pure given (parameters, seed): a fixed seed fixes
//! every output bit.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use thiserror::Error;

use crate::quantity::{Dimension, Quantity};
use crate::registry::Registry;
use crate::relations::{expect_dim, expect_positive, EngineError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("state norm must be positive and finite, got {norm:e}")]
    BadNorm { norm: f64 },
    #[error("no energy level falls strictly inside the window ({lo:e}, {hi:e})")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("expectation needs at least one nonzero weight")]
    AllZeroWeights,
    #[error("invalid parameters: {what}")]
    InvalidParams { what: String },
}

/// Superposition over an energy basis. Construction normalizes, so the
/// squared amplitudes always sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    amplitudes: Vec<Complex64>,
    energies: Vec<f64>,
    label: String,
}

impl EnsembleState {
    pub fn new(
        amplitudes: Vec<Complex64>,
        energies: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self, EnsembleError> {
        if amplitudes.len() != energies.len() {
            return Err(EnsembleError::LengthMismatch {
                left: amplitudes.len(),
                right: energies.len(),
            });
        }
        if amplitudes.is_empty() {
            return Err(EnsembleError::InvalidParams {
                what: "state needs at least one basis element".to_string(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !(norm_sq.is_finite() && norm_sq > 0.0) {
            return Err(EnsembleError::BadNorm { norm: norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Ok(EnsembleState {
            amplitudes: amplitudes.iter().map(|c| c * scale).collect(),
            energies,
            label: label.into(),
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Occupation probabilities |c_n|^2.
    pub fn weights(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Result of collapsing a state onto an energy window: each level is fully
/// occupied (weight exactly 1) or empty (exactly 0).
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseGrainedState {
    /// Squared occupancies, each exactly 0.0 or 1.0.
    pub occupancy: Vec<f64>,
    /// The (E, delta) window that produced it.
    pub window: (f64, f64),
}

impl CoarseGrainedState {
    pub fn occupied_count(&self) -> usize {
        self.occupancy.iter().filter(|&&w| w == 1.0).count()
    }
}

/// Collapse onto the open window (e, e + delta): a level is occupied iff
/// its energy lies strictly inside. Depends only on the energies.
pub fn coarse_grain(
    state: &EnsembleState,
    e: f64,
    delta: f64,
) -> Result<CoarseGrainedState, EnsembleError> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(EnsembleError::InvalidParams {
            what: format!("window width must be positive, got {delta:e}"),
        });
    }
    let hi = e + delta;
    let occupancy: Vec<f64> = state
        .energies()
        .iter()
        .map(|&level| if e < level && level < hi { 1.0 } else { 0.0 })
        .collect();
    if occupancy.iter().all(|&w| w == 0.0) {
        return Err(EnsembleError::EmptyWindow { lo: e, hi });
    }
    Ok(CoarseGrainedState {
        occupancy,
        window: (e, delta),
    })
}

fn angles<R: Rng>(rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.gen::<f64>() * TAU).collect()
}

/// Independent uniform phases on [0, 2pi) as unit-modulus complex numbers.
pub fn sample_phases(count: usize, seed: u64) -> Result<Vec<Complex64>, EnsembleError> {
    if count == 0 {
        return Err(EnsembleError::InvalidParams {
            what: "phase sample count must be at least 1".to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(angles(&mut rng, count)
        .into_iter()
        .map(|theta| Complex64::from_polar(1.0, theta))
        .collect())
}

/// Monte Carlo average of c_n c_m* over independent phase draws. The
/// product is computed as a single unit-modulus number from the phase
/// difference, so the diagonal (n = m) averages to exactly 1.
pub fn phase_correlation(
    n: usize,
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<Complex64, EnsembleError> {
    if samples == 0 {
        return Err(EnsembleError::InvalidParams {
            what: "correlation needs at least 1 sample".to_string(),
        });
    }
    let needed = n.max(m) + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = Complex64::new(0.0, 0.0);
    for _ in 0..samples {
        let draw = angles(&mut rng, needed);
        sum += Complex64::from_polar(1.0, draw[n] - draw[m]);
    }
    let s = samples as f64;
    Ok(Complex64::new(sum.re / s, sum.im / s))
}

/// Weighted average of diagonal elements: sum w_n O_n / sum w_n.
pub fn expectation(weights: &[f64], diagonal: &[f64]) -> Result<f64, EnsembleError> {
    if weights.len() != diagonal.len() {
        return Err(EnsembleError::LengthMismatch {
            left: weights.len(),
            right: diagonal.len(),
        });
    }
    if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(EnsembleError::InvalidParams {
            what: "weights must be finite and non-negative".to_string(),
        });
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(EnsembleError::AllZeroWeights);
    }
    let weighted: f64 = weights.iter().zip(diagonal).map(|(w, o)| w * o).sum();
    Ok(weighted / total)
}

/// Expectation against a coarse-grained occupancy.
pub fn coarse_expectation(
    state: &CoarseGrainedState,
    diagonal: &[f64],
) -> Result<f64, EnsembleError> {
    expectation(&state.occupancy, diagonal)
}

/// Expectation against a full state's occupation probabilities.
pub fn state_expectation(state: &EnsembleState, diagonal: &[f64]) -> Result<f64, EnsembleError> {
    expectation(&state.weights(), diagonal)
}

/// Dense Hermitian matrix, used to show that random phases kill the
/// off-diagonal cross terms of a coherent expectation value.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: Vec<Vec<Complex64>>,
}

impl HermitianOperator {
    /// (B + B^dagger)/2 for a matrix of standard complex Gaussians.
    pub fn random(dim: usize, seed: u64) -> Result<Self, EnsembleError> {
        if dim == 0 {
            return Err(EnsembleError::InvalidParams {
                what: "operator dimension must be at least 1".to_string(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, 1.0).expect("unit normal is valid");
        let raw: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Complex64::new(rng.sample(normal), rng.sample(normal)))
                    .collect()
            })
            .collect();
        let matrix = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|k| (raw[j][k] + raw[k][j].conj()) * 0.5)
                    .collect()
            })
            .collect();
        Ok(HermitianOperator { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn element(&self, j: usize, k: usize) -> Complex64 {
        self.matrix[j][k]
    }

    /// The real diagonal (phi_n, O phi_n).
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.matrix[j][j].re).collect()
    }

    /// Full quadratic form sum_jk c_j* O_jk c_k, cross terms included. Real
    /// for a Hermitian matrix, up to rounding.
    pub fn coherent_expectation(&self, amplitudes: &[Complex64]) -> Result<f64, EnsembleError> {
        if amplitudes.len() != self.dim() {
            return Err(EnsembleError::LengthMismatch {
                left: amplitudes.len(),
                right: self.dim(),
            });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (j, row) in self.matrix.iter().enumerate() {
            for (k, element) in row.iter().enumerate() {
                total += amplitudes[j].conj() * element * amplitudes[k];
            }
        }
        Ok(total.re)
    }
}

/// Phase-averaged coherent expectation versus the incoherent diagonal
/// average, with the Monte Carlo error bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub coherent_mean: f64,
    pub incoherent: f64,
    /// Standard error of the coherent mean; infinite below 2 draws.
    pub std_error: f64,
    pub abs_difference: f64,
}

impl EquivalenceReport {
    pub fn passes(&self, k_sigma: f64) -> bool {
        self.abs_difference <= k_sigma * self.std_error
    }
}

/// Draw equal-modulus random-phase states and average the full quadratic
/// form; compare with the uniform diagonal average the occupancy picture
/// predicts once cross terms average out.
pub fn expectation_equivalence(
    op: &HermitianOperator,
    draws: usize,
    seed: u64,
) -> Result<EquivalenceReport, EnsembleError> {
    if draws == 0 {
        return Err(EnsembleError::InvalidParams {
            what: "equivalence check needs at least 1 draw".to_string(),
        });
    }
    let dim = op.dim();
    let modulus = (dim as f64).sqrt().recip();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(draws);
    for _ in 0..draws {
        let amps: Vec<Complex64> = angles(&mut rng, dim)
            .into_iter()
            .map(|theta| Complex64::from_polar(modulus, theta))
            .collect();
        values.push(op.coherent_expectation(&amps)?);
    }
    let n = draws as f64;
    let coherent_mean = values.iter().sum::<f64>() / n;
    let std_error = if draws > 1 {
        let var = values
            .iter()
            .map(|v| (v - coherent_mean).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    } else {
        f64::INFINITY
    };
    let diagonal = op.diagonal();
    let incoherent = diagonal.iter().sum::<f64>() / dim as f64;
    Ok(EquivalenceReport {
        coherent_mean,
        incoherent,
        std_error,
        abs_difference: (coherent_mean - incoherent).abs(),
    })
}

/// Parameters for the fluctuation-count sampler. The density is
/// proportional to exp(-mu^2 N^2) on N >= 0, a half-normal with underlying
/// sigma = 1/(mu sqrt(2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerParams {
    /// Inverse-count scale, > 0.
    pub mu: f64,
    pub seed: u64,
    pub samples: usize,
    /// Round draws to whole counts. Off in normal use; the continuous
    /// density is the stated model.
    pub integer_counts: bool,
}

pub const HISTOGRAM_BINS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    /// Probability density; bin masses sum to 1.
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (n-1 denominator); 0 below 2 samples.
    pub std: f64,
    /// Delta-method standard error of `std`; infinite when undefined.
    pub std_se: f64,
    /// Root mean square, the natural spread measure for this density.
    pub rms: f64,
    pub histogram: Vec<HistogramBin>,
}

/// Draw counts from the half-normal fluctuation density and summarize them.
pub fn particlet_count_sampler(params: &SamplerParams) -> Result<SampleStats, EnsembleError> {
    if !(params.mu.is_finite() && params.mu > 0.0) {
        return Err(EnsembleError::InvalidParams {
            what: format!("mu must be positive, got {:e}", params.mu),
        });
    }
    if params.samples == 0 {
        return Err(EnsembleError::InvalidParams {
            what: "sampler needs at least 1 sample".to_string(),
        });
    }
    let sigma = (params.mu * std::f64::consts::SQRT_2).recip();
    let normal = Normal::new(0.0, sigma).expect("sigma is positive and finite");
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut draws = Vec::with_capacity(params.samples);
    for _ in 0..params.samples {
        let mut value = rng.sample::<f64, _>(normal).abs();
        if params.integer_counts {
            value = value.round();
        }
        draws.push(value);
    }

    let n = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / n;
    let rms = (draws.iter().map(|x| x * x).sum::<f64>() / n).sqrt();
    let (std, std_se) = if draws.len() > 1 {
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let std = var.sqrt();
        let m4 = draws.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        let spread = m4 - var * var;
        let se = if var > 0.0 && spread > 0.0 {
            (spread / (4.0 * var * n)).sqrt()
        } else {
            f64::INFINITY
        };
        (std, se)
    } else {
        (0.0, f64::INFINITY)
    };

    Ok(SampleStats {
        count: draws.len(),
        mean,
        std,
        std_se,
        rms,
        histogram: histogram(&draws),
    })
}

/// Equal-width bins from zero to the sample maximum, normalized to unit
/// total mass.
fn histogram(draws: &[f64]) -> Vec<HistogramBin> {
    let max = draws.iter().fold(0.0f64, |acc, &x| acc.max(x));
    let top = if max > 0.0 { max } else { 1.0 };
    let width = top / HISTOGRAM_BINS as f64;
    let mut counts = [0usize; HISTOGRAM_BINS];
    for &x in draws {
        let idx = ((x / top) * HISTOGRAM_BINS as f64) as usize;
        counts[idx.min(HISTOGRAM_BINS - 1)] += 1;
    }
    let total = draws.len() as f64;
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| HistogramBin {
            lo: i as f64 * width,
            hi: (i + 1) as f64 * width,
            density: c as f64 / (total * width),
        })
        .collect()
}

/// CSV export, header `bin_lo,bin_hi,density`.
pub fn histogram_csv(bins: &[HistogramBin]) -> String {
    let mut out = String::from("bin_lo,bin_hi,density\n");
    for bin in bins {
        out.push_str(&format!("{:e},{:e},{:e}\n", bin.lo, bin.hi, bin.density));
    }
    out
}

/// Ground-state position spread sqrt(hbar/(m omega)) of a harmonic
/// oscillator. At omega = mc^2/hbar it reduces to the Compton length.
pub fn ground_state_spread(
    reg: &Registry,
    m: Quantity,
    omega: Quantity,
) -> Result<Quantity, EngineError> {
    expect_dim(m, Dimension::mass())?;
    expect_positive(m, "mass")?;
    expect_dim(omega, Dimension::inverse_time())?;
    expect_positive(omega, "frequency")?;
    let hbar = reg.quantity("hbar")?;
    hbar.div(m.mul(omega)?)?.sqrt().map_err(Into::into)
}
