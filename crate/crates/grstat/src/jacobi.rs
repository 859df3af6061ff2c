//! Jacobi polynomials with parameters growing like the degree: overflow-safe
//! evaluation, norming constants, weighted (orthonormalized) functions and
//! the Christoffel-Darboux kernel.
//!
//! In the regime alpha, beta ~ N the raw polynomial values overflow f64 by
//! hundreds of orders of magnitude, so the three-term recurrence runs with a
//! power-of-two exponent accumulator and everything user-facing is assembled
//! in log space and exponentiated once.

use thiserror::Error;

use crate::math::ln_gamma;
use crate::quad::{integrate_adaptive, QuadError};

#[derive(Debug, Error)]
pub enum JacobiError {
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("integral representation tail not negligible: |integrand({at})| = {magnitude:e}")]
    TailNotNegligible { at: f64, magnitude: f64 },
}

/// A possibly huge or tiny value kept as sign * exp(log_magnitude).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyValue {
    pub log_magnitude: f64,
    /// -1, 0 or +1; 0 means the value is exactly zero.
    pub sign: i8,
}

impl PolyValue {
    fn new(scaled: f64, log_scale: f64) -> PolyValue {
        if scaled == 0.0 {
            PolyValue { log_magnitude: f64::NEG_INFINITY, sign: 0 }
        } else {
            PolyValue {
                log_magnitude: scaled.abs().ln() + log_scale,
                sign: if scaled > 0.0 { 1 } else { -1 },
            }
        }
    }

    /// Reconstructs the value; may overflow to +-inf or underflow to 0.
    pub fn value(&self) -> f64 {
        self.sign as f64 * self.log_magnitude.exp()
    }
}

/// Exponent-accumulator state for the recurrences: values are renormalized
/// by exact powers of two whenever they leave [2^-500, 2^500].
struct Scaler {
    log_scale: f64,
}

const SCALE_UP: f64 = 2.938_735_877_055_718_6e-151; // 2^-500
const SCALE_DOWN: f64 = 3.273_390_607_896_142e150; // 2^500
const LN_2_500: f64 = 346.573_590_279_972_7; // 500 ln 2

impl Scaler {
    fn new() -> Scaler {
        Scaler { log_scale: 0.0 }
    }
    fn renorm(&mut self, values: &mut [&mut f64]) {
        let mag = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if mag > SCALE_DOWN {
            for v in values.iter_mut() {
                **v *= SCALE_UP;
            }
            self.log_scale += LN_2_500;
        } else if mag < SCALE_UP && mag > 0.0 {
            for v in values.iter_mut() {
                **v *= SCALE_DOWN;
            }
            self.log_scale -= LN_2_500;
        }
    }
}

/// P_n^{alpha,beta}(x) by the standard three-term recurrence.
pub fn eval_p(n: u32, alpha: f64, beta: f64, x: f64) -> PolyValue {
    eval_p_pair(n, alpha, beta, x).0
}

/// (P_n, P_{n-1}) in one pass; P_{-1} reported as exact zero for n = 0.
///
/// In the regime alpha, beta ~ n the degree recurrence mixes solution
/// branches of wildly different growth over much of (-1, 1): a point in the
/// degree-n oscillatory band was in the decay region of intermediate
/// degrees, and the contamination picked up there survives. For n >= 20 the
/// polynomials are therefore evaluated one at a time by a cancellation-free
/// series anchored near the closest endpoint plus a Taylor march of the
/// Jacobi ODE inward; the march follows the dominant-or-neutral branch the
/// whole way, so it is stable.
pub fn eval_p_pair(n: u32, alpha: f64, beta: f64, x: f64) -> (PolyValue, PolyValue) {
    if n >= 20 {
        let (a, _) = endpoint_eval(n, alpha, beta, x);
        let (b, _) = endpoint_eval(n - 1, alpha, beta, x);
        return (a, b);
    }
    let (cur, prev, _, _, scaler) = recurrence(n, alpha, beta, x, false);
    (PolyValue::new(cur, scaler), PolyValue::new(prev, scaler))
}

/// P_n at x via the endpoint-anchored inward march, from whichever endpoint
/// is on x's side of the band center. Returns (P, dP/dx).
fn endpoint_eval(n: u32, alpha: f64, beta: f64, x: f64) -> (PolyValue, PolyValue) {
    // Band center = (x_plus + x_minus)/2 = mu^2 - lambda^2.
    let kappa = 2.0 * n as f64 + alpha + beta + 1.0;
    let (lam, mu) = (alpha / kappa, beta / kappa);
    let mid = mu * mu - lam * lam;
    if x >= mid {
        endpoint_eval_right(n, alpha, beta, x)
    } else {
        // P_n^{a,b}(x) = (-1)^n P_n^{b,a}(-x).
        let (v, d) = endpoint_eval_right(n, beta, alpha, -x);
        let parity: i8 = if n.is_multiple_of(2) { 1 } else { -1 };
        (
            PolyValue { log_magnitude: v.log_magnitude, sign: v.sign * parity },
            // d/dx adds one sign flip.
            PolyValue { log_magnitude: d.log_magnitude, sign: -d.sign * parity },
        )
    }
}

/// Series anchor near x = 1 plus leftward Taylor march down to x >= band
/// center. Returns (P, dP/dx) in log-sign form.
fn endpoint_eval_right(n: u32, alpha: f64, beta: f64, x: f64) -> (PolyValue, PolyValue) {
    let nf = n as f64;
    // Series terms stay decreasing when z <= (alpha+1)/(n (n+alpha+beta+1)).
    let z_safe = ((alpha + 1.0) / (nf * (nf + alpha + beta + 1.0))).min(5e-3);
    let x_anchor = 1.0 - 2.0 * z_safe;
    if x >= x_anchor {
        return series_at_right_end(n, alpha, beta, x);
    }
    let (p, dp) = series_at_right_end(n, alpha, beta, x_anchor);
    // March the ODE (1-t^2) y'' + (B - A t) y' + lam y = 0 leftward.
    let a_coef = alpha + beta + 2.0;
    let b_coef = beta - alpha;
    let lam = nf * (nf + alpha + beta + 1.0);
    let kappa = 2.0 * nf + alpha + beta + 1.0;
    let (lam_lg, mu_lg) = (alpha / kappa, beta / kappa);
    let mut x0 = x_anchor;
    let mut y = 1.0f64;
    let mut yp = (dp.sign as f64 * p.sign as f64) * (dp.log_magnitude - p.log_magnitude).exp();
    let mut log_off = p.log_magnitude;
    let mut sign = p.sign;
    // Two step limits: the second ODE solution behaves like (1-t)^{-alpha}
    // near 1, so alpha h / (1-x0) must stay small for its truncated Taylor
    // tail not to amplify roundoff; inside the oscillatory band the step
    // must also resolve the local wavelength 1/(kappa sqrt|f|).
    let step_frac = 6.0 / (alpha + 30.0);
    while x0 > x {
        let quart = x0 * x0 + 2.0 * (lam_lg * lam_lg - mu_lg * mu_lg) * x0
            + 2.0 * (lam_lg * lam_lg + mu_lg * mu_lg) - 1.0;
        let f_abs = (quart / (4.0 * (1.0 - x0 * x0).powi(2))).abs();
        let wave_limit = 3.0 / (kappa * f_abs.sqrt() + 1.0);
        let h = -((step_frac * (1.0 - x0)).min(wave_limit).min(x0 - x));
        let (ny, nyp) = jacobi_ode_taylor_step(x0, y, yp, h, a_coef, b_coef, lam);
        y = ny;
        yp = nyp;
        x0 += h;
        // Renormalize so |y| stays at 1 (skip near zeros of P).
        if y.abs() > 1e-8 {
            if y < 0.0 {
                sign = -sign;
            }
            log_off += y.abs().ln();
            yp /= y;
            y = 1.0;
        }
    }
    let value = PolyValue::new(y * sign as f64, log_off);
    let deriv = PolyValue::new(yp * sign as f64, log_off);
    (value, deriv)
}

/// (P_n, P'_n) at x near 1 via P_n = C(n+alpha, n) 2F1(-n, n+a+b+1; a+1; z),
/// z = (1-x)/2, returned in log-sign form.
fn series_at_right_end(n: u32, alpha: f64, beta: f64, x: f64) -> (PolyValue, PolyValue) {
    let nf = n as f64;
    let z = 0.5 * (1.0 - x);
    let log_binom = ln_gamma(nf + alpha + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(alpha + 1.0);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut dsum = 0.0f64; // sum of j * t_j
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - nf) * (nf + alpha + beta + 1.0 + jf) * z
            / ((alpha + 1.0 + jf) * (jf + 1.0));
        sum += term;
        dsum += (jf + 1.0) * term;
        if term.abs() < 1e-19 * sum.abs() {
            break;
        }
    }
    let value = PolyValue {
        log_magnitude: log_binom + sum.abs().ln(),
        sign: if sum > 0.0 { 1 } else { -1 },
    };
    // dP/dx = -C/(2z) * sum_j j t_j.
    let d = -dsum / (2.0 * z);
    let deriv = PolyValue {
        log_magnitude: log_binom + d.abs().ln(),
        sign: if d == 0.0 {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        },
    };
    (value, deriv)
}

/// One Taylor step for (1-t^2) y'' + (B - A t) y' + lam y = 0 around x0.
fn jacobi_ode_taylor_step(
    x0: f64,
    y: f64,
    yp: f64,
    h: f64,
    a_coef: f64,
    b_coef: f64,
    lam: f64,
) -> (f64, f64) {
    const TERMS: usize = 44;
    let w = 1.0 - x0 * x0;
    let mut c = [0.0f64; TERMS];
    c[0] = y;
    c[1] = yp;
    for j in 0..TERMS - 2 {
        let jf = j as f64;
        let num = 2.0 * x0 * (jf + 1.0) * jf * c[j + 1] + jf * (jf - 1.0) * c[j]
            - (b_coef - a_coef * x0) * (jf + 1.0) * c[j + 1]
            + a_coef * jf * c[j]
            - lam * c[j];
        c[j + 2] = num / (w * (jf + 2.0) * (jf + 1.0));
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for j in (0..TERMS).rev() {
        val = val * h + c[j];
        if j >= 1 {
            der = der * h + c[j] * j as f64;
        }
    }
    (val, der)
}

/// (P_n, P_{n-1}, P'_n, P'_{n-1}): differentiated recurrence for small
/// degrees, endpoint march (which carries the derivative anyway) above.
pub fn eval_p_with_deriv(n: u32, alpha: f64, beta: f64, x: f64) -> (PolyValue, PolyValue, PolyValue, PolyValue) {
    if n >= 20 {
        let (p_n, d_n) = endpoint_eval(n, alpha, beta, x);
        let (p_m, d_m) = endpoint_eval(n - 1, alpha, beta, x);
        return (p_n, p_m, d_n, d_m);
    }
    let (cur, prev, dcur, dprev, scaler) = recurrence(n, alpha, beta, x, true);
    (
        PolyValue::new(cur, scaler),
        PolyValue::new(prev, scaler),
        PolyValue::new(dcur, scaler),
        PolyValue::new(dprev, scaler),
    )
}

/// Shared recurrence core. Returns (P_n, P_{n-1}, P'_n, P'_{n-1}, log scale).
fn recurrence(n: u32, alpha: f64, beta: f64, x: f64, with_deriv: bool) -> (f64, f64, f64, f64, f64) {
    let mut scaler = Scaler::new();
    // Degree 0 and 1 seeds.
    let mut prev = 1.0; // P_0
    let mut cur = 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta); // P_1
    let mut dprev = 0.0;
    let mut dcur = 0.5 * (alpha + beta + 2.0);
    if n == 0 {
        return (1.0, 0.0, 0.0, 0.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let t = 2.0 * kf + alpha + beta;
        let c0 = 2.0 * kf * (kf + alpha + beta) * (t - 2.0);
        let c1 = t - 1.0;
        let c2 = t * (t - 2.0);
        let c3 = alpha * alpha - beta * beta;
        let c4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * t;
        let next = (c1 * (c2 * x + c3) * cur - c4 * prev) / c0;
        if with_deriv {
            let dnext = (c1 * (c2 * x + c3) * dcur + c1 * c2 * cur - c4 * dprev) / c0;
            dprev = dcur;
            dcur = dnext;
        }
        prev = cur;
        cur = next;
        scaler.renorm(&mut [&mut cur, &mut prev, &mut dcur, &mut dprev]);
    }
    (cur, prev, dcur, dprev, scaler.log_scale)
}

/// Norming constants at degree n: log of the L2 norm h_n, log of the leading
/// coefficient l_n, and the Christoffel-Darboux coefficient a_n in the exact
/// closed form a_n = 2 sqrt(n (n+a) (n+b) (n+a+b) / (k (k-1)^2 (k-2))),
/// k = 2n + a + b + 1.
#[derive(Debug, Clone, Copy)]
pub struct NormConstants {
    pub log_h: f64,
    pub log_l: f64,
    pub a_n: f64,
}

pub fn norms(n: u32, alpha: f64, beta: f64) -> NormConstants {
    let nf = n as f64;
    let kappa = 2.0 * nf + alpha + beta + 1.0;
    let log_h = (alpha + beta + 1.0) * std::f64::consts::LN_2 - kappa.ln()
        + ln_gamma(nf + alpha + 1.0)
        + ln_gamma(nf + beta + 1.0)
        - ln_gamma(nf + 1.0)
        - ln_gamma(nf + alpha + beta + 1.0);
    let log_l = -nf * std::f64::consts::LN_2 + ln_gamma(2.0 * nf + alpha + beta + 1.0)
        - ln_gamma(nf + 1.0)
        - ln_gamma(nf + alpha + beta + 1.0);
    let a_n = if n == 0 {
        0.0
    } else {
        2.0 * (nf * (nf + alpha) * (nf + beta) * (nf + alpha + beta)
            / (kappa * (kappa - 1.0) * (kappa - 1.0) * (kappa - 2.0)))
            .sqrt()
    };
    NormConstants { log_h, log_l, a_n }
}

/// Log of the weight w(x) = (1-x)^alpha (1+x)^beta; -inf at the endpoints
/// for positive exponents.
fn log_weight(alpha: f64, beta: f64, x: f64) -> f64 {
    alpha * (1.0 - x).ln() + beta * (1.0 + x).ln()
}

/// Orthonormalized weighted function phi_k = h_k^{-1/2} w^{1/2}(x) P_k(x).
/// Underflow far in the decay region returns exactly 0.
pub fn phi(k: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let p = eval_p(k, alpha, beta, x);
    let nc = norms(k, alpha, beta);
    let log_phi = -0.5 * nc.log_h + 0.5 * log_weight(alpha, beta, x) + p.log_magnitude;
    p.sign as f64 * log_phi.exp()
}

/// (phi_n, phi_{n-1}) in one recurrence pass.
pub fn phi_pair(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let (p_n, p_m) = eval_p_pair(n, alpha, beta, x);
    let half_w = 0.5 * log_weight(alpha, beta, x);
    let hi = norms(n, alpha, beta);
    let lo = norms(n.saturating_sub(1), alpha, beta);
    (
        p_n.sign as f64 * (-0.5 * hi.log_h + half_w + p_n.log_magnitude).exp(),
        p_m.sign as f64 * (-0.5 * lo.log_h + half_w + p_m.log_magnitude).exp(),
    )
}

/// (phi_n, phi_{n-1}, phi'_n, phi'_{n-1}); the derivatives come from the
/// differentiated recurrence plus the logarithmic weight derivative.
pub fn phi_pair_with_deriv(n: u32, alpha: f64, beta: f64, x: f64) -> (f64, f64, f64, f64) {
    let (p_n, p_m, d_n, d_m) = eval_p_with_deriv(n, alpha, beta, x);
    let half_w = 0.5 * log_weight(alpha, beta, x);
    let hi = norms(n, alpha, beta);
    let lo = norms(n.saturating_sub(1), alpha, beta);
    // (w^{1/2} P)' = w^{1/2} (P' + P w'/(2w)), w'/w = -a/(1-x) + b/(1+x).
    let dlog_w_half = 0.5 * (-alpha / (1.0 - x) + beta / (1.0 + x));
    let assemble = |p: PolyValue, d: PolyValue, log_h: f64| {
        let scale = (-0.5 * log_h + half_w).exp();
        let val = p.sign as f64 * p.log_magnitude.exp();
        let dval = d.sign as f64 * d.log_magnitude.exp();
        (scale * val, scale * (dval + val * dlog_w_half))
    };
    let (f_n, df_n) = assemble(p_n, d_n, hi.log_h);
    let (f_m, df_m) = assemble(p_m, d_m, lo.log_h);
    (f_n, f_m, df_n, df_m)
}

/// All of phi_0..phi_{n_max} at one x (single recurrence sweep).
pub fn phi_all(n_max: u32, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    let half_w = 0.5 * log_weight(alpha, beta, x);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut scaler = Scaler::new();
    let mut prev = 1.0;
    let mut cur = 0.5 * (alpha + beta + 2.0) * x + 0.5 * (alpha - beta);
    let emit = |v: f64, log_scale: f64, k: u32, out: &mut Vec<f64>| {
        let nc = norms(k, alpha, beta);
        let pv = PolyValue::new(v, log_scale);
        out.push(pv.sign as f64 * (-0.5 * nc.log_h + half_w + pv.log_magnitude).exp());
    };
    emit(prev, 0.0, 0, &mut out);
    if n_max == 0 {
        return out;
    }
    emit(cur, 0.0, 1, &mut out);
    for k in 2..=n_max {
        let kf = k as f64;
        let t = 2.0 * kf + alpha + beta;
        let c0 = 2.0 * kf * (kf + alpha + beta) * (t - 2.0);
        let c1 = t - 1.0;
        let c2 = t * (t - 2.0);
        let c3 = alpha * alpha - beta * beta;
        let c4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * t;
        let next = (c1 * (c2 * x + c3) * cur - c4 * prev) / c0;
        prev = cur;
        cur = next;
        scaler.renorm(&mut [&mut cur, &mut prev]);
        emit(cur, scaler.log_scale, k, &mut out);
    }
    out
}

/// phi_tilde_n = phi_n / sqrt(1 - x^2), |x| < 1.
pub fn phi_tilde(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    phi(n, alpha, beta, x) / (1.0 - x * x).sqrt()
}

/// The weighted polynomial w_n(x) = (1-x)^{(alpha+1)/2} (1+x)^{(beta+1)/2} P_n(x).
pub fn weighted_poly(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let p = eval_p(n, alpha, beta, x);
    let lw = 0.5 * ((alpha + 1.0) * (1.0 - x).ln() + (beta + 1.0) * (1.0 + x).ln());
    p.sign as f64 * (lw + p.log_magnitude).exp()
}

/// phi_n on the u-scale: phi_hat_n(u) = phi_n(tanh u) / cosh u.
pub fn phi_hat(n: u32, alpha: f64, beta: f64, u: f64) -> f64 {
    // 1/cosh u = sqrt(1 - tanh^2 u); folded into log space to survive large u.
    let x = u.tanh();
    let p = eval_p(n, alpha, beta, x);
    let nc = norms(n, alpha, beta);
    let log_sech = -(u.abs() + (1.0 + (-2.0 * u.abs()).exp()).ln() - std::f64::consts::LN_2);
    let log_val = -0.5 * nc.log_h + 0.5 * log_weight(alpha, beta, x) + p.log_magnitude + log_sech;
    p.sign as f64 * log_val.exp()
}

/// Christoffel-Darboux kernel
/// S_n(x, y) = a_n (phi_n(x) phi_{n-1}(y) - phi_{n-1}(x) phi_n(y)) / (x - y),
/// with the derivative form on the diagonal.
pub fn kernel_cd(n: u32, alpha: f64, beta: f64, x: f64, y: f64) -> f64 {
    let a_n = norms(n, alpha, beta).a_n;
    if (x - y).abs() < 1e-6 {
        let m = 0.5 * (x + y);
        let (f_n, f_m, df_n, df_m) = phi_pair_with_deriv(n, alpha, beta, m);
        a_n * (df_n * f_m - df_m * f_n)
    } else {
        let (fx_n, fx_m) = phi_pair(n, alpha, beta, x);
        let (fy_n, fy_m) = phi_pair(n, alpha, beta, y);
        a_n * (fx_n * fy_m - fx_m * fy_n) / (x - y)
    }
}

/// Kernel on the u-scale: S_hat(u, v) = S(tanh u, tanh v) / (cosh u cosh v).
pub fn kernel_hat(n: u32, alpha: f64, beta: f64, u: f64, v: f64) -> f64 {
    kernel_cd(n, alpha, beta, u.tanh(), v.tanh()) / (u.cosh() * v.cosh())
}

/// Residual of the semi-infinite integral representation
/// S_hat(u,v) = (kappa_n - 1) a_n / 2 *
///   int_0^inf [phi_hat_n(u+w) phi_hat_{n-1}(v+w) + (n-1 <-> n)] dw
/// against the direct Christoffel-Darboux evaluation. The integral is
/// truncated at w = 40 N^{-1/3}, where the integrand must have decayed below
/// 1e-12 of its peak.
pub fn kernel_integral_rep_residual(
    n: u32,
    alpha: f64,
    beta: f64,
    u: f64,
    v: f64,
) -> Result<f64, JacobiError> {
    let kappa = 2.0 * n as f64 + alpha + beta + 1.0;
    let a_n = norms(n, alpha, beta).a_n;
    let pref = (kappa - 1.0) * a_n / 2.0;
    let cross = |w: f64| {
        phi_hat(n, alpha, beta, u + w) * phi_hat(n - 1, alpha, beta, v + w)
            + phi_hat(n - 1, alpha, beta, u + w) * phi_hat(n, alpha, beta, v + w)
    };
    let w_max = 40.0 / (n as f64).cbrt();
    let tail = cross(w_max).abs();
    if tail > 1e-12 {
        return Err(JacobiError::TailNotNegligible { at: w_max, magnitude: tail });
    }
    let integral = integrate_adaptive(0.0, w_max, 1e-9, cross)?;
    let direct = kernel_hat(n, alpha, beta, u, v);
    Ok((pref * integral - direct).abs())
}

/// int_{-1}^{1} phi_tilde_n dx, via x = tanh t (the integrand becomes
/// phi_hat_n(t), smooth and exponentially decaying).
pub fn integral_phi_tilde(n: u32, alpha: f64, beta: f64) -> Result<f64, JacobiError> {
    let t_max = 40.0;
    Ok(integrate_adaptive(-t_max, t_max, 1e-10, |t| phi_hat(n, alpha, beta, t))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_gl;

    #[test]
    fn degree_zero_and_value_at_one() {
        assert_eq!(eval_p(0, 3.0, 2.0, 0.7).value(), 1.0);
        // P_2^{1,0}(1) = C(3,2) = 3.
        let v = eval_p(2, 1.0, 0.0, 1.0);
        assert!((v.value() - 3.0).abs() < 1e-13);
        // General value at 1 is C(n+alpha, n).
        let v5 = eval_p(5, 3.0, 2.0, 1.0);
        assert!((v5.value() - 56.0).abs() < 56.0 * 1e-13);
    }

    #[test]
    fn moderate_reference_values() {
        // 30-digit references for P_20^{10,5}.
        let refs = [(0.3, 13.759_384_582_481_97), (0.85, -31_161.466_091_372_61)];
        for (x, want) in refs {
            let got = eval_p(20, 10.0, 5.0, x).value();
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "P20({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn orthogonality_under_the_weight() {
        // int P_j P_k w dx = delta_jk h_j for j, k <= 6 at (alpha, beta) = (2, 1):
        // polynomial integrand, exact for Gauss-Legendre of enough nodes.
        let (alpha, beta) = (2.0, 1.0);
        for j in 0..=6u32 {
            for k in 0..=6u32 {
                let val = integrate_gl(-1.0, 1.0, 24, |x| {
                    eval_p(j, alpha, beta, x).value()
                        * eval_p(k, alpha, beta, x).value()
                        * (1.0 - x).powf(alpha)
                        * (1.0 + x).powf(beta)
                });
                if j == k {
                    let h = norms(j, alpha, beta).log_h.exp();
                    assert!(((val - h) / h).abs() < 1e-12, "h_{j} mismatch: {val} vs {h}");
                } else {
                    assert!(val.abs() < 1e-10, "P_{j} P_{k} not orthogonal: {val}");
                }
            }
        }
    }

    #[test]
    fn norm_constant_identities() {
        // h_0 = 2^{a+b+1} B(a+1, b+1).
        let nc0 = norms(0, 2.5, 0.5, );
        let want = (2.5f64 + 0.5 + 1.0) * std::f64::consts::LN_2
            + ln_gamma(3.5) + ln_gamma(1.5) - ln_gamma(5.0);
        assert!((nc0.log_h - want).abs() < 1e-12);
        // a_n closed form vs the h/l ratio route, log-gamma evaluated.
        for (n, alpha, beta) in [(1u32, 1.0, 0.0), (7, 4.0, 2.5), (40, 35.0, 5.0), (100, 201.0, 100.5)] {
            let hi = norms(n, alpha, beta);
            let lo = norms(n - 1, alpha, beta);
            let ratio_route = (0.5 * (hi.log_h - lo.log_h) + lo.log_l - hi.log_l).exp();
            assert!(
                ((ratio_route - hi.a_n) / hi.a_n).abs() < 1e-12,
                "a_n routes disagree at ({n},{alpha},{beta}): {ratio_route} vs {}",
                hi.a_n
            );
        }
    }

    #[test]
    fn a_n_asymptote() {
        // |a_N / (sin(phi) sin(gamma) / 2) - 1| <= 5/N at (a, b) = (2, 1).
        use crate::params::{Ensemble, JacobiParams};
        for n in [50u32, 100, 200] {
            let j = JacobiParams::from_growth_ratios(n, 2.0, 1.0, Ensemble::Complex).unwrap();
            let a = j.angles();
            let limit = 0.5 * a.phi.sin() * a.gamma.sin();
            let a_n = norms(n, j.alpha(), j.beta()).a_n;
            assert!(
                (a_n / limit - 1.0).abs() <= 5.0 / n as f64,
                "a_N asymptote at {n}: {}",
                a_n / limit - 1.0
            );
        }
    }

    #[test]
    fn phi_orthonormality_by_quadrature() {
        // x = sin(t) smooths the fractional-power endpoint behavior of the
        // half-integer weight.
        let (alpha, beta) = (3.0, 1.5);
        let half_pi = std::f64::consts::FRAC_PI_2;
        for j in 0..=5u32 {
            for k in j..=5u32 {
                let val = integrate_gl(-half_pi, half_pi, 120, |t| {
                    let x = t.sin();
                    phi(j, alpha, beta, x) * phi(k, alpha, beta, x) * t.cos()
                });
                let want = if j == k { 1.0 } else { 0.0 };
                assert!(
                    (val - want).abs() < 1e-9,
                    "phi_{j} phi_{k} integral = {val}, want {want}"
                );
            }
        }
    }

    #[test]
    fn weighted_poly_sign_changes() {
        // w_20 with alpha=10, beta=5 has exactly 20 sign changes in (-1,1).
        let samples = 4001;
        let mut changes = 0;
        let mut last = 0.0f64;
        for i in 0..samples {
            let x = -0.999 + 1.998 * i as f64 / (samples - 1) as f64;
            let v = weighted_poly(20, 10.0, 5.0, x);
            if last != 0.0 && v != 0.0 && v.signum() != last.signum() {
                changes += 1;
            }
            if v != 0.0 {
                last = v;
            }
        }
        assert_eq!(changes, 20);
    }

    #[test]
    fn overflow_safe_at_degree_400() {
        // 30-digit references: sign and ln|P| for N=400, alpha=800, beta=400.
        let refs: [(f64, f64, f64); 5] = [
            (0.9, 1.0, 717.336_614_686_293_6),
            (0.6, -1.0, 512.540_415_893_999_8),
            (0.123456, -1.0, 269.139_185_048_519_83),
            (-0.5, 1.0, 215.472_193_741_062_2),
            (-0.95, 1.0, 506.745_300_201_690_7),
        ];
        for (x, sign, ln_abs) in refs {
            let v = eval_p(400, 800.0, 400.0, x);
            assert_eq!(v.sign as f64, sign, "sign at {x}");
            assert!(v.log_magnitude.is_finite());
            assert!(
                (v.log_magnitude - ln_abs).abs() < 1e-8,
                "ln|P| at {x}: {} vs {ln_abs}",
                v.log_magnitude
            );
        }
    }

    #[test]
    fn kernel_symmetry_and_mercer() {
        let (n, alpha, beta) = (10u32, 2.0, 1.0);
        for (x, y) in [(0.2, -0.5), (0.8, 0.75), (-0.9, 0.1)] {
            let s1 = kernel_cd(n, alpha, beta, x, y);
            let s2 = kernel_cd(n, alpha, beta, y, x);
            assert!((s1 - s2).abs() <= 1e-12 * s1.abs().max(1.0));
            // Mercer sum oracle.
            let px = phi_all(n - 1, alpha, beta, x);
            let py = phi_all(n - 1, alpha, beta, y);
            let direct: f64 = px.iter().zip(&py).map(|(a, b)| a * b).sum();
            assert!(
                (s1 - direct).abs() < 1e-8,
                "CD vs Mercer at ({x},{y}): {s1} vs {direct}"
            );
        }
        // Diagonal continuity: derivative form vs nearby off-diagonal.
        let d = kernel_cd(n, alpha, beta, 0.3, 0.3);
        let near = kernel_cd(n, alpha, beta, 0.3 + 5e-5, 0.3 - 5e-5);
        assert!((d - near).abs() < 1e-5 * d.abs());
    }

    #[test]
    fn kernel_trace_is_degree() {
        let (n, alpha, beta) = (8u32, 2.0, 1.0);
        let trace = integrate_adaptive(-1.0, 1.0, 1e-8, |x| kernel_cd(n, alpha, beta, x, x)).unwrap();
        assert!((trace - n as f64).abs() < 1e-6, "trace = {trace}");
    }

    #[test]
    fn kernel_projection_property() {
        // int S(x,z) S(z,y) dz = S(x,y).
        let (n, alpha, beta) = (8u32, 2.0, 1.0);
        for (x, y) in [(0.4, 0.1), (-0.3, 0.6)] {
            let want = kernel_cd(n, alpha, beta, x, y);
            let got = integrate_adaptive(-1.0, 1.0, 1e-8, |z| {
                kernel_cd(n, alpha, beta, x, z) * kernel_cd(n, alpha, beta, z, y)
            })
            .unwrap();
            assert!((got - want).abs() < 1e-6, "projection at ({x},{y}): {got} vs {want}");
        }
    }

    #[test]
    fn integral_representation_residual() {
        // Identity check of the u-scale integral representation at the
        // centering point and off-diagonal.
        use crate::edge_scaling::u_scale;
        use crate::params::{Ensemble, JacobiParams};
        let j = JacobiParams::new(20, 10.0, 5.0, Ensemble::Complex).unwrap();
        let u_n = u_scale(&j).unwrap().center;
        let r_diag = kernel_integral_rep_residual(20, 10.0, 5.0, u_n, u_n).unwrap();
        assert!(r_diag <= 1e-6, "diagonal residual {r_diag}");
        let r_off = kernel_integral_rep_residual(20, 10.0, 5.0, u_n + 0.15, u_n - 0.1).unwrap();
        assert!(r_off <= 1e-6, "off-diagonal residual {r_off}");
    }

    #[test]
    fn phi_tilde_integral_parity() {
        // Zero for odd degree; positive and close to 2 (kappa a_n)^{-1/2}
        // for even degree.
        let (alpha, beta) = (2.0, 1.0);
        let odd = integral_phi_tilde(9, alpha, beta).unwrap();
        assert!(odd.abs() <= 1e-8, "odd-degree integral {odd}");
        let n = 10u32;
        let even = integral_phi_tilde(n, alpha, beta).unwrap();
        assert!(even > 0.0);
        let kappa = 2.0 * n as f64 + alpha + beta + 1.0;
        let predicted = 2.0 / (kappa * norms(n, alpha, beta).a_n).sqrt();
        assert!(
            (even / predicted - 1.0).abs() <= 10.0 / n as f64,
            "even-degree ratio {}",
            even / predicted
        );
    }

    #[test]
    fn phi_check_oscillation_to_decay() {
        // The scaled function oscillates left of the upper turning point and
        // decays monotonically beyond it (N=20, alpha=10, beta=5).
        use crate::edge_scaling::x_scale;
        use crate::params::{Ensemble, JacobiParams};
        let j = JacobiParams::new(20, 10.0, 5.0, Ensemble::Complex).unwrap();
        let e = x_scale(&j).unwrap();
        let (x_n, sigma) = (e.center, e.scale);
        let tp = j.angles().turning_points();
        let x0 = 0.5 * (tp.x_minus + tp.x_plus);
        // Oscillation: several sign changes in (x0, x_N).
        let mut changes = 0;
        let mut last = 0.0f64;
        for i in 0..400 {
            let x = x0 + (x_n - x0) * i as f64 / 399.0;
            let v = phi(20, 10.0, 5.0, x);
            if last != 0.0 && v != 0.0 && v.signum() != last.signum() {
                changes += 1;
            }
            last = v;
        }
        assert!(changes >= 3, "expected oscillation, saw {changes} sign changes");
        // Decay: strictly decreasing magnitude beyond x_N + 2 sigma.
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let x = (x_n + 2.0 * sigma) + (0.999 - x_n - 2.0 * sigma) * i as f64 / 199.0;
            let v = phi(20, 10.0, 5.0, x).abs();
            assert!(v < prev, "not decaying at x = {x}");
            prev = v;
        }
    }
}
