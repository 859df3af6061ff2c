//! Reproducible double-Wishart eigenvalue simulation.
//!
//! One draw builds A = X'X (m x p) and B = Y'Y (n x p) from standard
//! normals (complex entries have independent real and imaginary parts of
//! variance 1/2), then solves det[B - theta (A+B)] = 0 by Cholesky of A+B
//! and a Hermitian eigensolve of the congruence L^{-1} B L^{-H}.
//!
//! Replications are partitioned into independent chunks, each driven by a
//! ChaCha12 stream seeded from (seed, chunk index); results are concatenated
//! in chunk order, so output is identical for any thread count.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

use crate::edge_scaling::{self, EdgeScaling, ScaleKind, ScalingError};
use crate::math::logit;
use crate::params::{Ensemble, StatParams};
use crate::special::{tw_quantile, TwError};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("factorization of A+B failed {consecutive} times in a row; matrices numerically singular")]
    Factorization { consecutive: u32 },
    #[error(transparent)]
    Scaling(#[from] ScalingError),
    #[error(transparent)]
    Tw(#[from] TwError),
    #[error("{0}")]
    Invalid(String),
}

/// A reproducible simulation request.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub params: StatParams,
    pub ensemble: Ensemble,
    pub reps: u32,
    pub seed: u64,
    pub chunk_count: u32,
}

impl SimConfig {
    pub fn new(params: StatParams, ensemble: Ensemble, reps: u32, seed: u64) -> SimConfig {
        SimConfig { params, ensemble, reps, seed, chunk_count: 1 }
    }

    pub fn with_chunks(mut self, chunks: u32) -> SimConfig {
        self.chunk_count = chunks.max(1);
        self
    }
}

/// Monte Carlo estimates of cumulative probabilities at reference points.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    pub reference_s: Vec<f64>,
    pub estimates: Vec<f64>,
    pub reps: u32,
    /// Plug-in binomial standard errors sqrt(F(1-F)/R).
    pub standard_errors: Vec<f64>,
}

fn chunk_rng(seed: u64, chunk: u32) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(chunk as u64).to_le_bytes());
    ChaCha12Rng::from_seed(key)
}

/// Largest root of det[B - theta (A+B)] = 0 for one draw.
pub fn sample_largest_root(cfg: &SimConfig, rng: &mut ChaCha12Rng) -> Result<f64, SimError> {
    Ok(*sample_spectrum(cfg, rng)?.last().expect("p >= 1"))
}

/// All p roots for one draw, ascending.
pub fn sample_spectrum(cfg: &SimConfig, rng: &mut ChaCha12Rng) -> Result<Vec<f64>, SimError> {
    let mut failures = 0;
    loop {
        let spectrum = match cfg.ensemble {
            Ensemble::Real => real_spectrum(&cfg.params, rng),
            Ensemble::Complex => complex_spectrum(&cfg.params, rng),
        };
        match spectrum {
            Some(mut eigs) => {
                eigs.sort_by(|a, b| a.total_cmp(b));
                return Ok(eigs);
            }
            None => {
                failures += 1;
                if failures >= 5 {
                    return Err(SimError::Factorization { consecutive: failures });
                }
            }
        }
    }
}

fn real_spectrum(params: &StatParams, rng: &mut ChaCha12Rng) -> Option<Vec<f64>> {
    let p = params.p() as usize;
    let a = wishart_real(p, params.m(), rng);
    let b = wishart_real(p, params.n(), rng);
    let chol = (a + &b).cholesky()?;
    let l = chol.l();
    // C = L^{-1} B L^{-T}
    let x = l.solve_lower_triangular(&b)?;
    let c = l.solve_lower_triangular(&x.transpose())?;
    let sym = nalgebra::SymmetricEigen::new(c);
    Some(sym.eigenvalues.iter().copied().collect())
}

fn complex_spectrum(params: &StatParams, rng: &mut ChaCha12Rng) -> Option<Vec<f64>> {
    let p = params.p() as usize;
    let a = wishart_complex(p, params.m(), rng);
    let b = wishart_complex(p, params.n(), rng);
    let chol = (a + &b).cholesky()?;
    let l = chol.l();
    let x = l.solve_lower_triangular(&b)?;
    let c = l.solve_lower_triangular(&x.adjoint())?;
    let herm = nalgebra::SymmetricEigen::new(c);
    Some(herm.eigenvalues.iter().copied().collect())
}

/// A = X'X accumulated row by row (the data matrix is never materialized).
fn wishart_real(p: usize, dof: u32, rng: &mut ChaCha12Rng) -> DMatrix<f64> {
    let mut a = DMatrix::<f64>::zeros(p, p);
    let mut row = vec![0.0f64; p];
    for _ in 0..dof {
        for v in row.iter_mut() {
            *v = rng.sample(StandardNormal);
        }
        for i in 0..p {
            for j in 0..=i {
                a[(i, j)] += row[i] * row[j];
            }
        }
    }
    for i in 0..p {
        for j in (i + 1)..p {
            a[(i, j)] = a[(j, i)];
        }
    }
    a
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn wishart_complex(p: usize, dof: u32, rng: &mut ChaCha12Rng) -> DMatrix<Complex<f64>> {
    let mut a = DMatrix::<Complex<f64>>::zeros(p, p);
    let mut row = vec![Complex::new(0.0, 0.0); p];
    for _ in 0..dof {
        for v in row.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v = Complex::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2);
        }
        // A += conj(row) row^T, i.e. A_ij += conj(x_i) x_j.
        for i in 0..p {
            for j in 0..=i {
                a[(i, j)] += row[i].conj() * row[j];
            }
        }
    }
    for i in 0..p {
        for j in (i + 1)..p {
            a[(i, j)] = a[(j, i)].conj();
        }
    }
    a
}

/// All replications of the largest root, deterministic in (seed, chunks).
pub fn draw_largest_roots(cfg: &SimConfig) -> Result<Vec<f64>, SimError> {
    let chunks = chunk_sizes(cfg.reps, cfg.chunk_count);
    let results: Result<Vec<Vec<f64>>, SimError> = chunks
        .into_par_iter()
        .enumerate()
        .map(|(idx, count)| {
            let mut rng = chunk_rng(cfg.seed, idx as u32);
            let mut out = Vec::with_capacity(count as usize);
            for _ in 0..count {
                out.push(sample_largest_root(cfg, &mut rng)?);
            }
            Ok(out)
        })
        .collect();
    Ok(results?.concat())
}

/// Full spectra for `draws` replications (used for bulk-law checks).
pub fn draw_spectra(cfg: &SimConfig, draws: u32) -> Result<Vec<Vec<f64>>, SimError> {
    let mut rng = chunk_rng(cfg.seed, 0);
    let mut out = Vec::with_capacity(draws as usize);
    for _ in 0..draws {
        out.push(sample_spectrum(cfg, &mut rng)?);
    }
    Ok(out)
}

fn chunk_sizes(reps: u32, chunk_count: u32) -> Vec<u32> {
    let chunks = chunk_count.max(1);
    let base = reps / chunks;
    let extra = reps % chunks;
    (0..chunks).map(|i| base + u32::from(i < extra)).collect()
}

/// The scaling used to standardize draws before comparing against
/// Tracy-Widom reference points.
pub fn table_scaling(params: &StatParams, ensemble: Ensemble, kind: ScaleKind) -> Result<EdgeScaling, SimError> {
    match kind {
        ScaleKind::Logit => Ok(edge_scaling::logit_scaling(params, ensemble)?),
        ScaleKind::Theta => {
            if ensemble != Ensemble::Real {
                return Err(SimError::Invalid(
                    "theta-scale standardization is defined for the real ensemble".into(),
                ));
            }
            Ok(edge_scaling::theta_scaling(params)?)
        }
        _ => Err(SimError::Invalid("standardization needs the logit or theta scale".into())),
    }
}

/// Empirical cumulative probabilities at the given reference points on the
/// chosen scale (fraction of standardized draws at or below each point).
pub fn empirical_table(
    cfg: &SimConfig,
    reference_s: &[f64],
    kind: ScaleKind,
) -> Result<EmpiricalCdf, SimError> {
    let scaling = table_scaling(&cfg.params, cfg.ensemble, kind)?;
    let draws = draw_largest_roots(cfg)?;
    let standardized: Vec<f64> = draws
        .iter()
        .map(|&theta| {
            let w = match kind {
                ScaleKind::Theta => theta,
                _ => logit(theta),
            };
            (w - scaling.center) / scaling.scale
        })
        .collect();
    let r = cfg.reps as f64;
    let mut estimates = Vec::with_capacity(reference_s.len());
    let mut ses = Vec::with_capacity(reference_s.len());
    for &s in reference_s {
        let count = standardized.iter().filter(|&&v| v <= s).count();
        let f = count as f64 / r;
        estimates.push(f);
        ses.push((f * (1.0 - f) / r).sqrt());
    }
    Ok(EmpiricalCdf { reference_s: reference_s.to_vec(), estimates, reps: cfg.reps, standard_errors: ses })
}

/// Probability-plot pairs: the i-th ordered standardized draw against
/// F_beta^{-1}((i - 0.5)/R).
pub fn prob_plot_data(cfg: &SimConfig, kind: ScaleKind) -> Result<Vec<(f64, f64)>, SimError> {
    let scaling = table_scaling(&cfg.params, cfg.ensemble, kind)?;
    let beta = cfg.ensemble.beta_index();
    let mut standardized: Vec<f64> = draw_largest_roots(cfg)?
        .iter()
        .map(|&theta| {
            let w = match kind {
                ScaleKind::Theta => theta,
                _ => logit(theta),
            };
            (w - scaling.center) / scaling.scale
        })
        .collect();
    standardized.sort_by(|a, b| a.total_cmp(b));
    let r = cfg.reps as f64;
    standardized
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let q = tw_quantile(beta, (i as f64 + 0.5) / r)?;
            Ok((v, q))
        })
        .collect()
}
