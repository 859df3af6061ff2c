//! User-facing distribution functions for the greatest (and smallest) root,
//! the dictionary from common statistical settings to (p, m, n), and the
//! limiting bulk (Wachter) density.

use thiserror::Error;

use crate::edge_scaling::{self, EdgeScaling, ScalingError};
use crate::math::{logistic, logit};
use crate::oracle::ks_distance;
use crate::params::{Ensemble, StatParams};
use crate::quad::{integrate_adaptive, integrate_gl, QuadError};
use crate::special::{tw_quantile, tw_table, TwError};

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("theta = {theta} outside the open interval (0, 1)")]
    ThetaDomain { theta: f64 },
    #[error("probability {prob} outside the open interval (0, 1)")]
    ProbDomain { prob: f64 },
    #[error(transparent)]
    Scaling(#[from] ScalingError),
    #[error(transparent)]
    Tw(#[from] TwError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Infeasible degrees of freedom in a statistical-setting translation; the
/// message names the violated constraint.
#[derive(Debug, Error, PartialEq)]
#[error("{setting}: {constraint}")]
pub struct DictionaryError {
    pub setting: &'static str,
    pub constraint: String,
}

/// Flags attached to results whose inputs sit outside the fully supported
/// regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caveat {
    /// Odd dimension p: the edge formulas are applied unchanged, but the
    /// supporting second-order theory assumes p even.
    OddDimension,
    /// The Tracy-Widom value came from the tail continuation beyond the
    /// tabulated grid.
    TailExtrapolated,
}

impl std::fmt::Display for Caveat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Caveat::OddDimension => write!(
                f,
                "odd dimension p: formulas applied unchanged; supporting theory assumes p even"
            ),
            Caveat::TailExtrapolated => {
                write!(f, "reference value extrapolated beyond the tabulated grid")
            }
        }
    }
}

/// A completed greatest-root test evaluation.
#[derive(Debug, Clone)]
pub struct TestResult {
    pub statistic_theta: f64,
    pub s_value: f64,
    pub p_value: f64,
    pub scaling: EdgeScaling,
    pub caveats: Vec<Caveat>,
}

fn caveats_for(params: &StatParams, extrapolated: bool) -> Vec<Caveat> {
    let mut out = Vec::new();
    if params.p() % 2 == 1 {
        out.push(Caveat::OddDimension);
    }
    if extrapolated {
        out.push(Caveat::TailExtrapolated);
    }
    out
}

/// P(greatest root <= theta) under the Tracy-Widom approximation.
pub fn greatest_root_cdf(
    params: &StatParams,
    theta: f64,
    ensemble: Ensemble,
) -> Result<f64, ApproxError> {
    Ok(greatest_root_test(params, theta, ensemble)?.p_value).map(|p| 1.0 - p)
}

/// Upper-tail p-value of the observed greatest root, with diagnostics.
pub fn greatest_root_test(
    params: &StatParams,
    theta: f64,
    ensemble: Ensemble,
) -> Result<TestResult, ApproxError> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(ApproxError::ThetaDomain { theta });
    }
    let scaling = edge_scaling::logit_scaling(params, ensemble)?;
    let s = (logit(theta) - scaling.center) / scaling.scale;
    let table = tw_table(ensemble.beta_index())?;
    let (cdf, extrapolated) = table.cdf_detailed(s);
    Ok(TestResult {
        statistic_theta: theta,
        s_value: s,
        p_value: 1.0 - cdf,
        scaling,
        caveats: caveats_for(params, extrapolated),
    })
}

/// Convenience wrapper returning only the p-value.
pub fn greatest_root_pvalue(
    params: &StatParams,
    theta: f64,
    ensemble: Ensemble,
) -> Result<f64, ApproxError> {
    Ok(greatest_root_test(params, theta, ensemble)?.p_value)
}

/// Quantile of the greatest root on the theta scale.
pub fn greatest_root_quantile(
    params: &StatParams,
    prob: f64,
    ensemble: Ensemble,
) -> Result<f64, ApproxError> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(ApproxError::ProbDomain { prob });
    }
    let scaling = edge_scaling::logit_scaling(params, ensemble)?;
    let s = tw_quantile(ensemble.beta_index(), prob)?;
    Ok(logistic(scaling.center + scaling.scale * s))
}

/// P(smallest root <= theta) under the reflected approximation; increasing
/// in theta. Requires n >= p so the smallest root is not pinned at zero.
pub fn smallest_root_cdf(params: &StatParams, theta: f64) -> Result<f64, ApproxError> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(ApproxError::ThetaDomain { theta });
    }
    let scaling = edge_scaling::smallest_root_scaling(params)?;
    let w = logit(theta);
    let table = tw_table(1)?;
    Ok(1.0 - table.cdf((scaling.center - w) / scaling.scale))
}

// ---- Table of statistical settings -> (p, m, n) ----

/// Canonical correlation analysis with p and q variables and n observations:
/// (p, n' - q, q), where n' = n - 1 under mean correction.
pub fn from_cca(p: u32, q: u32, n: u32, mean_corrected: bool) -> Result<StatParams, DictionaryError> {
    let setting = "canonical correlations";
    let n_eff = if mean_corrected {
        n.checked_sub(1).ok_or_else(|| DictionaryError {
            setting,
            constraint: "mean correction needs n >= 1".into(),
        })?
    } else {
        n
    };
    let m = n_eff.checked_sub(q).filter(|&m| m >= p).ok_or_else(|| DictionaryError {
        setting,
        constraint: format!(
            "error degrees of freedom n' - q = {} - {q} must be at least p = {p}",
            n_eff
        ),
    })?;
    StatParams::new(p, m, q).map_err(|e| DictionaryError { setting, constraint: e.to_string() })
}

/// Multivariate linear model: r response combinations, g hypothesis degrees
/// of freedom, q regressors, n observations: (r, n - q, g).
pub fn from_mlm(r: u32, g: u32, q: u32, n: u32) -> Result<StatParams, DictionaryError> {
    let setting = "multivariate linear model";
    let m = n.checked_sub(q).filter(|&m| m >= r).ok_or_else(|| DictionaryError {
        setting,
        constraint: format!("error degrees of freedom n - q = {n} - {q} must be at least r = {r}"),
    })?;
    StatParams::new(r, m, g).map_err(|e| DictionaryError { setting, constraint: e.to_string() })
}

/// Equality of two covariance matrices on n1 and n2 degrees of freedom:
/// (p, n1, n2).
pub fn from_cov_equal(p: u32, n1: u32, n2: u32) -> Result<StatParams, DictionaryError> {
    StatParams::new(p, n1, n2)
        .map_err(|e| DictionaryError { setting: "covariance equality", constraint: e.to_string() })
}

/// Multiple discriminant analysis with g groups and n total observations:
/// (p, n - g, g - 1).
pub fn from_discrim(p: u32, g: u32, n: u32) -> Result<StatParams, DictionaryError> {
    let setting = "discriminant analysis";
    if g < 2 {
        return Err(DictionaryError {
            setting,
            constraint: format!("needs at least 2 groups, got {g}"),
        });
    }
    let m = n.checked_sub(g).filter(|&m| m >= p).ok_or_else(|| DictionaryError {
        setting,
        constraint: format!("error degrees of freedom n - g = {n} - {g} must be at least p = {p}"),
    })?;
    StatParams::new(p, m, g - 1).map_err(|e| DictionaryError { setting, constraint: e.to_string() })
}

// ---- Limiting bulk density ----

/// The limiting empirical eigenvalue density
/// f(theta) = c sqrt((theta_+ - theta)(theta - theta_-)) / (theta (1-theta))
/// on [theta_-, theta_+], normalized to unit mass numerically.
#[derive(Debug, Clone, Copy)]
pub struct WachterDensity {
    pub theta_minus: f64,
    pub theta_plus: f64,
    /// The numerically determined constant c.
    pub normalization: f64,
}

pub fn wachter(params: &StatParams) -> Result<WachterDensity, ApproxError> {
    let a = params.angles();
    let theta_minus = ((a.phi - a.gamma) / 2.0).sin().powi(2);
    let theta_plus = ((a.phi + a.gamma) / 2.0).sin().powi(2);
    // theta = mid + half sin t removes the square-root endpoints.
    let mid = 0.5 * (theta_plus + theta_minus);
    let half = 0.5 * (theta_plus - theta_minus);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let raw = integrate_gl(-half_pi, half_pi, 200, |t| {
        let theta = mid + half * t.sin();
        half * half * t.cos() * t.cos() / (theta * (1.0 - theta))
    });
    Ok(WachterDensity { theta_minus, theta_plus, normalization: 1.0 / raw })
}

/// Density value at theta (zero outside the support).
pub fn wachter_eval(d: &WachterDensity, theta: f64) -> f64 {
    if theta <= d.theta_minus || theta >= d.theta_plus {
        return 0.0;
    }
    d.normalization * ((d.theta_plus - theta) * (theta - d.theta_minus)).sqrt()
        / (theta * (1.0 - theta))
}

/// Distribution function of the limiting density.
pub fn wachter_cdf(d: &WachterDensity, theta: f64) -> Result<f64, ApproxError> {
    if theta <= d.theta_minus {
        return Ok(0.0);
    }
    if theta >= d.theta_plus {
        return Ok(1.0);
    }
    // Same sine substitution, partial range.
    let mid = 0.5 * (d.theta_plus + d.theta_minus);
    let half = 0.5 * (d.theta_plus - d.theta_minus);
    let t_up = ((theta - mid) / half).clamp(-1.0, 1.0).asin();
    let val = integrate_adaptive(-std::f64::consts::FRAC_PI_2, t_up, 1e-10, |t| {
        let th = mid + half * t.sin();
        d.normalization * half * half * t.cos() * t.cos() / (th * (1.0 - th))
    })?;
    Ok(val.clamp(0.0, 1.0))
}

/// Kolmogorov-Smirnov distance between pooled spectra and the limiting
/// distribution (test/validation helper).
pub fn wachter_ks(d: &WachterDensity, pooled: &mut [f64]) -> Result<f64, ApproxError> {
    // Precompute the cdf on a grid; interpolate linearly (the cdf is C^1).
    let n_grid = 2001;
    let mut grid = Vec::with_capacity(n_grid);
    for i in 0..n_grid {
        let theta = d.theta_minus
            + (d.theta_plus - d.theta_minus) * i as f64 / (n_grid - 1) as f64;
        grid.push(wachter_cdf(d, theta)?);
    }
    let interp = |theta: f64| -> f64 {
        if theta <= d.theta_minus {
            return 0.0;
        }
        if theta >= d.theta_plus {
            return 1.0;
        }
        let pos = (theta - d.theta_minus) / (d.theta_plus - d.theta_minus)
            * (n_grid - 1) as f64;
        let i = (pos.floor() as usize).min(n_grid - 2);
        let t = pos - i as f64;
        grid[i] * (1.0 - t) + grid[i + 1] * t
    };
    Ok(ks_distance(pooled, interp))
}
