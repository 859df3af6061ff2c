//! Centering and scaling constants for the largest-root edge limit.
//!
//! Everything reduces to two trigonometric quantities per polynomial degree:
//! the x-scale pair (x_N, sigma_N) at the upper turning point and its
//! u-scale image (u_N, tau_N) under x = tanh(u). The statistics-facing logit
//! constants are twice the u-scale ones; the complex ensemble averages the
//! degree-N and degree-(N-1) u-scale pairs; the theta scale is the logistic
//! image of the logit scale.

use thiserror::Error;

use crate::jacobi;
use crate::math::logistic;
use crate::params::{Angles, Ensemble, JacobiParams, StatParams};

#[derive(Debug, Error, PartialEq)]
pub enum ScalingError {
    #[error("hard edge (alpha = 0, i.e. m = p): the upper edge sits at 1 and the soft-edge scaling degenerates")]
    HardEdge,
    #[error("degree too small: degree-(N-1) quantities are undefined at N <= 1")]
    DegenerateDegree,
    #[error("smallest root requires n >= p (otherwise it is pinned at 0)")]
    SmallestRootDegenerate,
}

/// Which transformed statistic a scaling pair centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    /// Jacobi variable x in (-1, 1).
    X,
    /// u = atanh(x).
    U,
    /// logit of theta = (1+x)/2, i.e. 2u.
    Logit,
    /// theta itself in (0, 1).
    Theta,
}

/// A (center, scale) pair tagged by the variable it applies to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeScaling {
    pub center: f64,
    pub scale: f64,
    pub kind: ScaleKind,
    pub ensemble: Ensemble,
    /// True for the smallest-root (reflected) variant.
    pub reflected: bool,
}

/// (x_N, sigma_N) from the angle parameters at large parameter kappa:
/// x_N = -cos(phi+gamma), sigma_N^3 = 2 sin^4(phi+gamma) / (kappa^2 sin phi sin gamma).
fn x_pair(a: &Angles, kappa: f64) -> (f64, f64) {
    let sum = a.phi + a.gamma;
    let center = -sum.cos();
    let scale3 = 2.0 * sum.sin().powi(4) / (kappa * kappa * a.phi.sin() * a.gamma.sin());
    (center, scale3.cbrt())
}

/// (u_N, tau_N): u_N = log tan((phi+gamma)/2), tau_N = sigma_N / (1 - x_N^2).
fn u_pair(a: &Angles, kappa: f64) -> (f64, f64) {
    let sum = a.phi + a.gamma;
    let center = (sum / 2.0).tan().ln();
    let (_, sigma) = x_pair(a, kappa);
    (center, sigma / sum.sin().powi(2))
}

fn require_soft_edge(j: &JacobiParams) -> Result<(), ScalingError> {
    if j.alpha() <= 0.0 {
        Err(ScalingError::HardEdge)
    } else {
        Ok(())
    }
}

/// x-scale constants at the given Jacobi parameters.
pub fn x_scale(j: &JacobiParams) -> Result<EdgeScaling, ScalingError> {
    require_soft_edge(j)?;
    let (center, scale) = x_pair(&j.angles(), j.kappa());
    Ok(EdgeScaling { center, scale, kind: ScaleKind::X, ensemble: j.ensemble(), reflected: false })
}

/// u-scale constants at the given Jacobi parameters.
pub fn u_scale(j: &JacobiParams) -> Result<EdgeScaling, ScalingError> {
    require_soft_edge(j)?;
    let (center, scale) = u_pair(&j.angles(), j.kappa());
    Ok(EdgeScaling { center, scale, kind: ScaleKind::U, ensemble: j.ensemble(), reflected: false })
}

/// Logit-scale constants for the real ensemble: twice the u-scale pair at
/// the real-case angles (kappa = m + n - 1), computed directly from the
/// statistics parameters so p = 1 works too.
pub fn real_logit_scaling(s: &StatParams) -> Result<EdgeScaling, ScalingError> {
    if s.is_hard_edge() {
        return Err(ScalingError::HardEdge);
    }
    let kappa = (s.m() + s.n() - 1) as f64;
    let (u, tau) = u_pair(&s.angles(), kappa);
    Ok(EdgeScaling {
        center: 2.0 * u,
        scale: 2.0 * tau,
        kind: ScaleKind::Logit,
        ensemble: Ensemble::Real,
        reflected: false,
    })
}

/// Logit-scale constants for the complex ensemble: precision-weighted
/// average of the u-scale pairs at degree N and N-1 (alpha, beta fixed),
/// then doubled onto the logit scale.
pub fn complex_logit_scaling(s: &StatParams) -> Result<EdgeScaling, ScalingError> {
    if s.is_hard_edge() {
        return Err(ScalingError::HardEdge);
    }
    let j = s.to_jacobi(Ensemble::Complex);
    if j.degree() < 2 {
        return Err(ScalingError::DegenerateDegree);
    }
    let lower = j.degree_down().expect("degree >= 2");
    let (u_n, tau_n) = u_pair(&j.angles(), j.kappa());
    let (u_m, tau_m) = u_pair(&lower.angles(), lower.kappa());
    let w_n = 1.0 / tau_n;
    let w_m = 1.0 / tau_m;
    let mu = (w_n * u_n + w_m * u_m) / (w_n + w_m);
    let sigma = 2.0 / (w_n + w_m);
    Ok(EdgeScaling {
        center: 2.0 * mu,
        scale: 2.0 * sigma,
        kind: ScaleKind::Logit,
        ensemble: Ensemble::Complex,
        reflected: false,
    })
}

/// Logit scaling for the requested ensemble.
pub fn logit_scaling(s: &StatParams, ensemble: Ensemble) -> Result<EdgeScaling, ScalingError> {
    match ensemble {
        Ensemble::Real => real_logit_scaling(s),
        Ensemble::Complex => complex_logit_scaling(s),
    }
}

/// Theta-scale constants: center = logistic(mu_p), scale = center (1-center) sigma_p.
pub fn theta_scaling(s: &StatParams) -> Result<EdgeScaling, ScalingError> {
    let logit = real_logit_scaling(s)?;
    let center = logistic(logit.center);
    Ok(EdgeScaling {
        center,
        scale: center * (1.0 - center) * logit.scale,
        kind: ScaleKind::Theta,
        ensemble: Ensemble::Real,
        reflected: false,
    })
}

/// Reflected constants for the smallest root: center = -mu_p(p, n, m),
/// scale = sigma_p(p, n, m) (m and n swapped).
pub fn smallest_root_scaling(s: &StatParams) -> Result<EdgeScaling, ScalingError> {
    if s.n() < s.p() {
        return Err(ScalingError::SmallestRootDegenerate);
    }
    let swapped = StatParams::new(s.p(), s.n(), s.m()).expect("n >= p checked");
    let base = real_logit_scaling(&swapped)?;
    Ok(EdgeScaling {
        center: -base.center,
        scale: base.scale,
        kind: ScaleKind::Logit,
        ensemble: Ensemble::Real,
        reflected: true,
    })
}

/// Finite-difference diagnostics between degrees N and N-1 at fixed
/// (alpha, beta).
#[derive(Debug, Clone, Copy)]
pub struct DegreeStepDiagnostics {
    /// (u_N - u_{N-1}) / tau_{N-1}; O(N^{-1/3}).
    pub delta_n: f64,
    /// sigma_N / sigma_{N-1}; 1 + O(1/N).
    pub sigma_ratio: f64,
    /// tau_N / tau_{N-1}; 1 + O(1/N).
    pub tau_ratio: f64,
    /// u_N - u_{N-1}; O(1/N).
    pub u_diff: f64,
}

pub fn degree_step_diagnostics(j: &JacobiParams) -> Result<DegreeStepDiagnostics, ScalingError> {
    require_soft_edge(j)?;
    let lower = j.degree_down().filter(|l| l.degree() >= 1).ok_or(ScalingError::DegenerateDegree)?;
    let a_hi = j.angles();
    let a_lo = lower.angles();
    let (_, sig_hi) = x_pair(&a_hi, j.kappa());
    let (_, sig_lo) = x_pair(&a_lo, lower.kappa());
    let (u_hi, tau_hi) = u_pair(&a_hi, j.kappa());
    let (u_lo, tau_lo) = u_pair(&a_lo, lower.kappa());
    Ok(DegreeStepDiagnostics {
        delta_n: (u_hi - u_lo) / tau_lo,
        sigma_ratio: sig_hi / sig_lo,
        tau_ratio: tau_hi / tau_lo,
        u_diff: u_hi - u_lo,
    })
}

/// The kernel prefactor e_N = sigma^2 (kappa_N - 1) a_N
/// sqrt(sigma_N sigma_{N-1} kappa_N kappa_{N-1}), which tends to 1.
///
/// `scale` is the u-scale sigma entering the rescaled kernel; passing tau_N
/// or the averaged complex scale changes the value by O(1/N).
pub fn kernel_prefactor(j: &JacobiParams, scale: f64) -> Result<f64, ScalingError> {
    require_soft_edge(j)?;
    let lower = j.degree_down().filter(|l| l.degree() >= 1).ok_or(ScalingError::DegenerateDegree)?;
    let a_n = jacobi::norms(j.degree(), j.alpha(), j.beta()).a_n;
    let (_, sig_hi) = x_pair(&j.angles(), j.kappa());
    let (_, sig_lo) = x_pair(&lower.angles(), lower.kappa());
    Ok(scale * scale
        * (j.kappa() - 1.0)
        * a_n
        * (sig_hi * sig_lo * j.kappa() * lower.kappa()).sqrt())
}
