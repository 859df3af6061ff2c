//! The Liouville-Green transform behind the edge scalings, its closed forms,
//! and numerical instrumentation of the Airy approximation rates.
//!
//! The weighted Jacobi polynomial solves w'' = (kappa^2 f + g) w with
//! f = (x - x_-)(x - x_+)/(4(1-x^2)^2). The transform zeta(x) defined by
//! (2/3) zeta^{3/2} = int_{x_+}^x sqrt(f) turns the equation into a
//! perturbed Airy equation; its linearization at the turning point produces
//! the sigma_N scale used everywhere else.

use thiserror::Error;

use crate::edge_scaling::{self, ScalingError};
use crate::jacobi;
use crate::params::{JacobiParams, LgParams};
use crate::quad::{integrate_adaptive, QuadError};
use crate::special::{airy, airy_kernel};

#[derive(Debug, Error)]
pub enum LgError {
    #[error("x = {x} outside the transform domain (band center, 1)")]
    Domain { x: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Scaling(#[from] ScalingError),
}

/// The LG data attached to one set of Jacobi parameters.
#[derive(Debug, Clone, Copy)]
pub struct LgTransform {
    pub params: LgParams,
    pub x_plus: f64,
    pub x_minus: f64,
    /// zeta'(x_+) = k_N^{1/3}, k_N = sin(phi) sin(gamma) / (2 sin^4(phi+gamma)).
    pub zeta_dot_at_xplus: f64,
    /// sigma_N = (kappa^{2/3} zeta'(x_+))^{-1}.
    pub sigma_n: f64,
}

impl LgTransform {
    pub fn new(j: &JacobiParams) -> LgTransform {
        let lg = j.lg_params();
        let a = j.angles();
        let tp = a.turning_points();
        let k_n = a.phi.sin() * a.gamma.sin() / (2.0 * (a.phi + a.gamma).sin().powi(4));
        let zeta_dot = k_n.cbrt();
        LgTransform {
            params: lg,
            x_plus: tp.x_plus,
            x_minus: tp.x_minus,
            zeta_dot_at_xplus: zeta_dot,
            sigma_n: 1.0 / (lg.kappa.powf(2.0 / 3.0) * zeta_dot),
        }
    }
}

/// The coefficient pair (f, g) of the transformed differential equation.
pub fn f_g(x: f64, lg: &LgParams) -> (f64, f64) {
    let tp = lg.turning_points_algebraic();
    let d = 4.0 * (1.0 - x * x).powi(2);
    ((x - tp.x_minus) * (x - tp.x_plus) / d, -(3.0 + x * x) / d)
}

/// zeta(x): closed form above the turning point, quadrature below.
pub fn zeta(x: f64, lg: &LgParams) -> Result<f64, LgError> {
    let tp = lg.turning_points_algebraic();
    let mid = 0.5 * (tp.x_plus + tp.x_minus);
    if x <= mid || x >= 1.0 {
        return Err(LgError::Domain { x });
    }
    if x >= tp.x_plus {
        // The boundary terms cancel only to roundoff at x_+ itself.
        let i = closed_form_integral(x, lg).max(0.0);
        if x == tp.x_plus {
            return Ok(0.0);
        }
        Ok((1.5 * i).powf(2.0 / 3.0))
    } else {
        let i = lower_branch_integral(x, lg)?;
        Ok(-((1.5 * i).powf(2.0 / 3.0)))
    }
}

/// zeta(x) with both branches by adaptive quadrature (the independent route
/// used to validate the closed form).
pub fn zeta_via_quadrature(x: f64, lg: &LgParams) -> Result<f64, LgError> {
    let tp = lg.turning_points_algebraic();
    let mid = 0.5 * (tp.x_plus + tp.x_minus);
    if x <= mid || x >= 1.0 {
        return Err(LgError::Domain { x });
    }
    if x >= tp.x_plus {
        // x' = x_+ + t^2 removes the square-root vanishing at the edge.
        let width = (x - tp.x_plus).sqrt();
        let i = integrate_adaptive(0.0, width, 1e-13, |t| {
            let xp = tp.x_plus + t * t;
            let k = (xp - tp.x_minus) / (4.0 * (1.0 - xp * xp).powi(2));
            2.0 * t * t * k.sqrt()
        })?;
        Ok((1.5 * i).powf(2.0 / 3.0))
    } else {
        let i = lower_branch_integral(x, lg)?;
        Ok(-((1.5 * i).powf(2.0 / 3.0)))
    }
}

/// int_x^{x_+} sqrt(-f), for x between the band center and x_+.
fn lower_branch_integral(x: f64, lg: &LgParams) -> Result<f64, LgError> {
    let tp = lg.turning_points_algebraic();
    let width = (tp.x_plus - x).sqrt();
    Ok(integrate_adaptive(0.0, width, 1e-13, |t| {
        let xp = tp.x_plus - t * t;
        let k = (xp - tp.x_minus) / (4.0 * (1.0 - xp * xp).powi(2));
        2.0 * t * t * k.sqrt()
    })?)
}

/// I(x) = (2/3) zeta^{3/2} = int_{x_+}^x sqrt(f) in closed form: the
/// elementary antiderivative of R(u)/u applied in the variables s = 1+x and
/// t = 1-x, with the boundary terms at s_+ and t_- subtracted explicitly.
fn closed_form_integral(x: f64, lg: &LgParams) -> f64 {
    let tp = lg.turning_points_algebraic();
    let (lambda, mu) = (lg.lambda, lg.mu);
    let r = ((x - tp.x_plus) * (x - tp.x_minus)).max(0.0).sqrt();
    let s = 1.0 + x;
    let t = 1.0 - x;
    let s_plus = 1.0 + tp.x_plus;
    let t_minus = 1.0 - tp.x_plus;
    let x_bar = 0.5 * (tp.x_plus + tp.x_minus);
    let s_bar = 1.0 + x_bar;
    let t_bar = 1.0 - x_bar;
    let s_hat = 2.0 * mu; // sqrt(s_+ s_-)
    let t_hat = 2.0 * lambda; // sqrt(t_+ t_-)
    let i_s = r - s_hat * ((s_bar * s - s_hat * s_hat - s_hat * r) / s).ln()
        - s_bar * (s - s_bar + r).ln()
        + s_hat * ((s_bar * s_plus - s_hat * s_hat) / s_plus).ln()
        + s_bar * (s_plus - s_bar).ln();
    let i_t = -r + t_hat * ((t_hat * t_hat + t_hat * r - t_bar * t) / t).ln()
        + t_bar * (t_bar - t - r).ln()
        - t_hat * ((t_hat * t_hat - t_bar * t_minus) / t_minus).ln()
        - t_bar * (t_bar - t_minus).ln();
    0.25 * (i_s + i_t)
}

/// The additive constant in the x -> 1 expansion of 4 I(x), direct closed
/// form in the growth parameters (a, b) with alpha = (N + 1/2) a.
pub fn c0n(a: f64, b: f64) -> f64 {
    2.0 / (2.0 + a + b)
        * ((2.0 * a * a).powf(a) * (1.0 + b).powf(1.0 + b)
            / ((1.0 + a).powf(1.0 + a) * (1.0 + a + b).powf(1.0 + a + b)))
        .ln()
}

/// The same constant assembled from the endpoint-variable pieces of the
/// closed-form antiderivative (the two routes must agree identically).
pub fn c0n_assembled(a: f64, b: f64) -> f64 {
    let lambda = a / (2.0 + a + b);
    let mu = b / (2.0 + a + b);
    let lg = LgParams { kappa: f64::NAN, lambda, mu };
    let tp = lg.turning_points_algebraic();
    let x_bar = 0.5 * (tp.x_plus + tp.x_minus);
    let s_bar = 1.0 + x_bar;
    let t_bar = 1.0 - x_bar;
    let s_hat = 2.0 * mu;
    let t_hat = 2.0 * lambda;
    let delta = 1.0 / (tp.x_plus - x_bar);
    let t1 = 0.5 * delta * (2.0 * s_bar - s_hat * s_hat - s_hat * t_hat);
    let t2 = delta * (t_bar + t_hat);
    let t3 = 2.0 * delta * t_hat * t_hat;
    let t4 = delta * (t_bar - t_hat);
    -s_hat * t1.ln() - s_bar * t2.ln() + t_hat * t3.ln() + t_bar * t4.ln()
}

/// The scaled weighted polynomial phi_check_N(x) =
/// sqrt(1-x^2) phi_N(x) / sqrt(kappa_N sigma_N) and its derivative times
/// sigma_N, the objects the edge limit compares against Ai and Ai'.
pub fn phi_check_with_deriv(j: &JacobiParams, x: f64) -> (f64, f64) {
    let t = LgTransform::new(j);
    let (phi_n, _, dphi_n, _) =
        jacobi::phi_pair_with_deriv(j.degree(), j.alpha(), j.beta(), x);
    let root = (1.0 - x * x).sqrt();
    let norm = (j.kappa() * t.sigma_n).sqrt();
    let check = root * phi_n / norm;
    let dcheck = (root * dphi_n - x / root * phi_n) / norm;
    (check, t.sigma_n * dcheck)
}

/// Weighted sup errors of the Airy approximation on an s-grid.
#[derive(Debug, Clone, Copy)]
pub struct EdgeErrorReport {
    pub degree: u32,
    /// sup_s |phi_check(x_N + s sigma_N) - Ai(s)| e^{s/2}.
    pub sup_value_error: f64,
    /// sup_s |sigma_N phi_check'(x_N + s sigma_N) - Ai'(s)| e^{s/2}.
    pub sup_deriv_error: f64,
}

/// Sup error of the local Airy approximation over s in [s_lo, min(4, N^{1/6})].
pub fn lg_airy_error(j: &JacobiParams, s_lo: f64, step: f64) -> EdgeErrorReport {
    let t = LgTransform::new(j);
    let s_hi = (j.degree() as f64).powf(1.0 / 6.0).min(4.0);
    let mut sup_v = 0.0f64;
    let mut sup_d = 0.0f64;
    let mut s = s_lo;
    while s <= s_hi + 1e-12 {
        let x = t.x_plus + s * t.sigma_n;
        let (check, scaled_deriv) = phi_check_with_deriv(j, x);
        let ai = airy(s);
        let w = (0.5 * s).exp();
        sup_v = sup_v.max((check - ai.ai).abs() * w);
        sup_d = sup_d.max((scaled_deriv - ai.ai_prime).abs() * w);
        s += step;
    }
    EdgeErrorReport { degree: j.degree(), sup_value_error: sup_v, sup_deriv_error: sup_d }
}

/// Sup error of the rescaled kernel against the Airy kernel over an
/// (s, t) grid, with tau(s) = tanh(mu + sigma s).
///
/// `averaged` selects the degree-averaged (mu, sigma) that attains the
/// second-order rate; `false` uses the naive (u_N, tau_N) pair, which is
/// one order worse.
pub fn kernel_edge_error(
    j: &JacobiParams,
    s_lo: f64,
    s_hi: f64,
    step: f64,
    averaged: bool,
) -> Result<f64, LgError> {
    let hi = edge_scaling::u_scale(j)?;
    let (mu, sigma) = if averaged {
        let lower = j.degree_down().ok_or(ScalingError::DegenerateDegree)?;
        let lo = edge_scaling::u_scale(&lower)?;
        let (w_hi, w_lo) = (1.0 / hi.scale, 1.0 / lo.scale);
        ((w_hi * hi.center + w_lo * lo.center) / (w_hi + w_lo), 2.0 / (w_hi + w_lo))
    } else {
        (hi.center, hi.scale)
    };
    let tau = |s: f64| (mu + sigma * s).tanh();
    let dtau = |s: f64| {
        let t = tau(s);
        sigma * (1.0 - t * t)
    };
    let n_pts = ((s_hi - s_lo) / step).round() as usize + 1;
    let mut sup = 0.0f64;
    for i in 0..n_pts {
        let s = s_lo + i as f64 * step;
        for k in i..n_pts {
            let t = s_lo + k as f64 * step;
            let rescaled = (dtau(s) * dtau(t)).sqrt()
                * jacobi::kernel_cd(j.degree(), j.alpha(), j.beta(), tau(s), tau(t));
            let limit = airy_kernel(s, t);
            let w = (0.25 * (s + t)).exp();
            sup = sup.max((rescaled - limit).abs() * w);
        }
    }
    Ok(sup)
}

/// Sup errors over a ladder of degrees plus the least-squares exponent of
/// error ~ N^slope.
#[derive(Debug, Clone)]
pub struct RateReport {
    pub n_values: Vec<u32>,
    pub sup_errors: Vec<f64>,
    pub fitted_exponent: f64,
}

impl RateReport {
    fn from_errors(n_values: Vec<u32>, sup_errors: Vec<f64>) -> RateReport {
        let k = n_values.len() as f64;
        let xs: Vec<f64> = n_values.iter().map(|&n| (n as f64).ln()).collect();
        let ys: Vec<f64> = sup_errors.iter().map(|&e| e.ln()).collect();
        let mx = xs.iter().sum::<f64>() / k;
        let my = ys.iter().sum::<f64>() / k;
        let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        RateReport { n_values, sup_errors, fitted_exponent: num / den }
    }

    /// error(N_{i+1}) / error(N_i) for consecutive ladder entries.
    pub fn pairwise_ratios(&self) -> Vec<f64> {
        self.sup_errors.windows(2).map(|w| w[1] / w[0]).collect()
    }

    /// CSV with columns N, sup_error, ratio (ratio empty on the first row).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,sup_error,ratio\n");
        for i in 0..self.n_values.len() {
            let ratio = if i == 0 {
                String::new()
            } else {
                format!("{:.16e}", self.sup_errors[i] / self.sup_errors[i - 1])
            };
            out.push_str(&format!("{},{:.16e},{}\n", self.n_values[i], self.sup_errors[i], ratio));
        }
        out
    }
}

/// Airy-approximation rate ladder at alpha = (N+1/2) a, beta = (N+1/2) b.
pub fn airy_rate_report(
    n_values: &[u32],
    a: f64,
    b: f64,
    use_deriv: bool,
) -> Result<RateReport, LgError> {
    let mut errs = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let j = JacobiParams::from_growth_ratios(n, a, b, crate::params::Ensemble::Complex)
            .expect("growth ratios nonnegative");
        let rep = lg_airy_error(&j, -2.0, 0.05);
        errs.push(if use_deriv { rep.sup_deriv_error } else { rep.sup_value_error });
    }
    Ok(RateReport::from_errors(n_values.to_vec(), errs))
}

/// Kernel-convergence rate ladder; `averaged` as in [`kernel_edge_error`].
pub fn kernel_rate_report(
    n_values: &[u32],
    a: f64,
    b: f64,
    averaged: bool,
) -> Result<RateReport, LgError> {
    let mut errs = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let j = JacobiParams::from_growth_ratios(n, a, b, crate::params::Ensemble::Complex)
            .expect("growth ratios nonnegative");
        errs.push(kernel_edge_error(&j, -2.0, 4.0, 0.25, averaged)?);
    }
    Ok(RateReport::from_errors(n_values.to_vec(), errs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Ensemble;

    fn lg_4_35_5() -> LgParams {
        JacobiParams::new(4, 35.0, 5.0, Ensemble::Real).unwrap().lg_params()
    }

    #[test]
    fn f_and_g_basics() {
        let lg = lg_4_35_5();
        let tp = lg.turning_points_algebraic();
        let (f_plus, _) = f_g(tp.x_plus, &lg);
        assert_eq!(f_plus, 0.0);
        for &x in &[0.1, 0.5, 0.9] {
            assert!(f_g(x, &lg).0 > 0.0, "f should be positive right of x_+");
        }
        let (_, g0) = f_g(0.0, &lg);
        assert_eq!(g0, -0.75);
        // Quartic and factored forms of f agree.
        for i in 0..40 {
            let x = -0.95 + 1.9 * i as f64 / 39.0;
            let quart = x * x + 2.0 * (lg.lambda * lg.lambda - lg.mu * lg.mu) * x
                + 2.0 * (lg.lambda * lg.lambda + lg.mu * lg.mu)
                - 1.0;
            let f_quart = quart / (4.0 * (1.0 - x * x).powi(2));
            let (f_fact, _) = f_g(x, &lg);
            assert!((f_quart - f_fact).abs() <= 1e-12 * f_fact.abs().max(1.0));
        }
    }

    #[test]
    fn zeta_reference_values() {
        // 40-digit references at (N, alpha, beta) = (4, 35, 5).
        let lg = lg_4_35_5();
        let refs = [
            (0.2, 0.15766079803181996),
            (0.5, 0.397_064_996_962_384_1),
            (0.9, 1.033_218_634_979_738),
            (0.99, 1.728_269_858_409_453),
            (-0.3, -0.15192530935633813),
            (-0.25, -0.12292128335597388),
        ];
        for (x, want) in refs {
            let got = zeta(x, &lg).unwrap();
            assert!((got - want).abs() < 1e-11, "zeta({x}) = {got}, want {want}");
        }
        let tp = lg.turning_points_algebraic();
        assert_eq!(zeta(tp.x_plus, &lg).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let lg = lg_4_35_5();
        let tp = lg.turning_points_algebraic();
        for i in 0..20 {
            let x = tp.x_plus + (0.999 - tp.x_plus) * (i as f64 + 0.7) / 20.0;
            let a = zeta(x, &lg).unwrap();
            let b = zeta_via_quadrature(x, &lg).unwrap();
            assert!((a - b).abs() <= 1e-10, "zeta mismatch at {x}: {a} vs {b}");
        }
    }

    #[test]
    fn zeta_smooth_across_turning_point() {
        let lg = lg_4_35_5();
        let tp = lg.turning_points_algebraic();
        let t = LgTransform::new(&JacobiParams::new(4, 35.0, 5.0, Ensemble::Real).unwrap());
        // One-sided slopes with Richardson extrapolation (kills the O(h)
        // curvature term, leaving O(h^2)).
        let h = 1e-4;
        let slope = |hh: f64| zeta_via_quadrature(tp.x_plus + hh, &lg).unwrap() / hh;
        let right = 2.0 * slope(h / 2.0) - slope(h);
        let left = 2.0 * slope(-h / 2.0) - slope(-h);
        assert!((right - t.zeta_dot_at_xplus).abs() < 1e-6 * t.zeta_dot_at_xplus);
        assert!((right - left).abs() < 1e-6 * t.zeta_dot_at_xplus);
        // zeta strictly increasing through the turning point.
        let mut prev = f64::NEG_INFINITY;
        for i in 0..60 {
            let x = tp.x_plus - 0.2 + 0.4 * i as f64 / 59.0;
            let z = zeta(x, &lg).unwrap();
            assert!(z > prev);
            prev = z;
        }
    }

    #[test]
    fn zeta_tail_constant() {
        // 4 I(x) - (2a/(2+a+b)) log(1/(1-x)) -> c_0N as x -> 1.
        let j = JacobiParams::new(4, 35.0, 5.0, Ensemble::Real).unwrap();
        let lg = j.lg_params();
        let n_plus = 4.5;
        let (a, b) = (35.0 / n_plus, 5.0 / n_plus);
        let x = 1.0 - 1e-6;
        let four_i = 4.0 * closed_form_integral(x, &lg);
        let tail = four_i - 2.0 * a / (2.0 + a + b) * (1.0 / (1.0 - x)).ln();
        assert!((tail - c0n(a, b)).abs() < 1e-4, "tail {tail} vs c0n {}", c0n(a, b));
    }

    #[test]
    fn c0n_two_routes_agree() {
        // Includes b = 0, where the constant stays finite.
        let refs = [
            (2.0, 1.0, -1.3183347464017316),
            (1.0, 0.0, -1.3862943611198906),
            (0.7, 0.3, -1.307_620_492_826_737),
        ];
        for (a, b, want) in refs {
            assert!((c0n(a, b) - want).abs() < 1e-12);
            assert!((c0n(a, b) - c0n_assembled(a, b)).abs() < 1e-12);
        }
        for (a, b) in [(5.0, 2.0), (0.3, 0.0), (8.0, 0.01)] {
            assert!((c0n(a, b) - c0n_assembled(a, b)).abs() < 1e-12 * c0n(a, b).abs().max(1.0));
        }
    }

    #[test]
    fn sigma_matches_edge_scaling() {
        // (112): the LG-derived sigma equals the closed-form x-scale.
        for (n, alpha, beta) in [(4u32, 35.0, 5.0), (20, 10.0, 5.0), (100, 201.0, 100.5), (7, 3.0, 0.0)] {
            let j = JacobiParams::new(n, alpha, beta, Ensemble::Complex).unwrap();
            let t = LgTransform::new(&j);
            if alpha > 0.0 {
                let e = edge_scaling::x_scale(&j).unwrap();
                assert!(
                    ((t.sigma_n - e.scale) / e.scale).abs() < 1e-10,
                    "sigma mismatch at ({n},{alpha},{beta})"
                );
            }
            // Exact chain: omega^2 (x_+ - x_-)/4 kappa^2 sigma^3 = 1.
            let omega2 = 1.0 / (1.0 - t.x_plus * t.x_plus).powi(2);
            let chain = omega2 * 0.25 * (t.x_plus - t.x_minus)
                * j.kappa().powi(2)
                * t.sigma_n.powi(3);
            assert!((chain - 1.0).abs() < 1e-12, "chain = {chain}");
        }
    }

    #[test]
    fn airy_approximation_visual_regime() {
        // At (N, alpha, beta) = (20, 10, 5) the scaled polynomial and Ai
        // already agree to a few percent on the decay side of the edge. On
        // the oscillatory side the error envelope ~0.8 N^{-2/3} e^{-s/2} is
        // honest but visibly larger at this small N.
        let j = JacobiParams::new(20, 10.0, 5.0, Ensemble::Complex).unwrap();
        let t = LgTransform::new(&j);
        let mut sup = 0.0f64;
        let mut s = 0.0;
        while s <= 1.649 {
            let x = t.x_plus + s * t.sigma_n;
            let (check, _) = phi_check_with_deriv(&j, x);
            sup = sup.max((check - airy(s).ai).abs());
            s += 0.05;
        }
        assert!(sup < 0.05, "decay-side sup error {sup}");
        // Full weighted sup stays within the N^{-2/3} envelope.
        let rep = lg_airy_error(&j, -2.0, 0.05);
        assert!(rep.sup_value_error < 0.5, "weighted sup {}", rep.sup_value_error);
    }

    #[test]
    fn airy_rate_band() {
        // error(2N)/error(N) should sit near 2^{-2/3} ~ 0.63.
        let rep = airy_rate_report(&[50, 100, 200], 2.0, 1.0, false).unwrap();
        for r in rep.pairwise_ratios() {
            assert!((0.4..=0.8).contains(&r), "value-rate ratio {r}");
        }
        let rep_d = airy_rate_report(&[50, 100, 200], 2.0, 1.0, true).unwrap();
        for r in rep_d.pairwise_ratios() {
            assert!((0.4..=0.8).contains(&r), "derivative-rate ratio {r}");
        }
        assert!(rep.fitted_exponent < -0.4 && rep.fitted_exponent > -0.9);
    }

    #[test]
    fn kernel_rate_band_and_naive_degradation() {
        let good = kernel_rate_report(&[50, 100], 2.0, 1.0, true).unwrap();
        for r in good.pairwise_ratios() {
            assert!((0.4..=0.8).contains(&r), "averaged-scaling ratio {r}");
        }
        let naive = kernel_rate_report(&[50, 100], 2.0, 1.0, false).unwrap();
        for r in naive.pairwise_ratios() {
            assert!((0.7..=0.95).contains(&r), "naive-scaling ratio {r}");
        }
    }
}
