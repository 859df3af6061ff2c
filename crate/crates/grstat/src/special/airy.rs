//! Airy function of the first kind and its derivative.
//!
//! Branch layout:
//! * |x| <= 4.5: Maclaurin series (no cancellation beyond ~e^{2 xi}).
//! * x >= 12, x <= -8: Poincare asymptotic expansions.
//! * intermediate: asymptotic value at an anchor (12 or the Maclaurin edge)
//!   refined by Taylor steps of the Airy ODE y'' = x y toward the target.
//!   Stepping runs in the direction in which Ai is nonreceding, so the
//!   recurrence is stable.

use super::AiryValue;

/// Ai(0) = 3^{-2/3} / Gamma(2/3).
const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0) = 3^{-1/3} / Gamma(1/3).
const AIP_ZERO: f64 = 0.258_819_403_792_806_8;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Evaluates Ai and Ai' at `s`.
pub fn airy(s: f64) -> AiryValue {
    assert!(s.is_finite(), "airy requires finite argument");
    let (ai, ai_prime) = if s.abs() <= 4.5 {
        maclaurin(s)
    } else if s >= 12.0 {
        asymptotic_pos(s)
    } else if s > 4.5 {
        taylor_walk(12.0, asymptotic_pos(12.0), s)
    } else if s <= -8.0 {
        asymptotic_neg(s)
    } else {
        taylor_walk(-4.0, maclaurin(-4.0), s)
    };
    AiryValue { s, ai, ai_prime }
}

/// Maclaurin series: Ai = c1 f - c2 g with f, g the two ODE basis solutions.
fn maclaurin(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (AI_ZERO, -AIP_ZERO);
    }
    let x3 = x * x * x;
    // f = sum c_k x^{3k}, c_0 = 1, c_{k+1} = c_k / ((3k+3)(3k+2))
    // g = sum d_k x^{3k+1}, d_0 = 1, d_{k+1} = d_k / ((3k+4)(3k+3))
    let mut f_term = 1.0;
    let mut g_term = x;
    let mut f = f_term;
    let mut g = g_term;
    let mut fp = 0.0; // f' = sum c_k (3k) x^{3k-1}
    let mut gp = 1.0; // g' = sum d_k (3k+1) x^{3k}
    for k in 0..200u32 {
        let kf = k as f64;
        f_term *= x3 / ((3.0 * kf + 3.0) * (3.0 * kf + 2.0));
        g_term *= x3 / ((3.0 * kf + 4.0) * (3.0 * kf + 3.0));
        let k1 = kf + 1.0;
        f += f_term;
        g += g_term;
        fp += f_term * (3.0 * k1) / x;
        gp += g_term * (3.0 * k1 + 1.0) / x;
        if f_term.abs() < 1e-18 * f.abs() && g_term.abs() < 1e-18 * g.abs() {
            break;
        }
    }
    (AI_ZERO * f - AIP_ZERO * g, AI_ZERO * fp - AIP_ZERO * gp)
}

/// u_k, v_k coefficient pair of the Poincare expansions, by recurrence.
fn uv(k: u32, prev_u: f64) -> (f64, f64) {
    debug_assert!(k >= 1);
    let kf = k as f64;
    let u = prev_u * (6.0 * kf - 1.0) * (6.0 * kf - 3.0) * (6.0 * kf - 5.0)
        / (216.0 * kf * (2.0 * kf - 1.0));
    let v = u * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
    (u, v)
}

/// Right-tail expansion, x >= 12: relative truncation error below 1e-15.
fn asymptotic_pos(x: f64) -> (f64, f64) {
    let xi = 2.0 / 3.0 * x.powf(1.5);
    let mut su = 1.0;
    let mut sv = 1.0;
    let mut u = 1.0;
    let mut sign = -1.0;
    let mut pow = 1.0;
    for k in 1..=25 {
        let (uk, vk) = uv(k, u);
        u = uk;
        pow /= xi;
        let tu = sign * uk * pow;
        let tv = sign * vk * pow;
        if tu.abs() < 1e-18 {
            break;
        }
        su += tu;
        sv += tv;
        sign = -sign;
    }
    let pre = (-xi).exp() / (2.0 * SQRT_PI * x.powf(0.25));
    (pre * su, -x.powf(0.25) * (-xi).exp() / (2.0 * SQRT_PI) * sv)
}

/// Left-tail oscillatory expansion, x <= -8.
fn asymptotic_neg(x: f64) -> (f64, f64) {
    let z = -x;
    let xi = 2.0 / 3.0 * z.powf(1.5);
    let w = xi - std::f64::consts::FRAC_PI_4;
    // Split sums over even/odd k of (-1)^k u_k xi^{-k}.
    let mut u_even = 1.0;
    let mut u_odd = 0.0;
    let mut v_even = 1.0;
    let mut v_odd = 0.0;
    let mut u = 1.0;
    let mut pow = 1.0;
    for k in 1..=25u32 {
        let (uk, vk) = uv(k, u);
        u = uk;
        pow /= xi;
        if pow * uk.abs() < 1e-18 {
            break;
        }
        // (-1)^k split by parity of k: with m = k/2, the classical grouping is
        // sum_m (-1)^m u_{2m} xi^{-2m} and sum_m (-1)^m u_{2m+1} xi^{-2m-1}.
        let m = k / 2;
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            u_even += sgn * uk * pow;
            v_even += sgn * vk * pow;
        } else {
            u_odd += sgn * uk * pow;
            v_odd += sgn * vk * pow;
        }
    }
    let (sw, cw) = w.sin_cos();
    let q = z.powf(0.25);
    let ai = (cw * u_even + sw * u_odd) / (SQRT_PI * q);
    let aip = q / SQRT_PI * (sw * v_even - cw * v_odd);
    (ai, aip)
}

/// Taylor steps of y'' = x y from `x0` (value `start`) to `target`.
fn taylor_walk(x0: f64, start: (f64, f64), target: f64) -> (f64, f64) {
    let n_steps = ((target - x0).abs() / 0.5).ceil().max(1.0);
    let h = (target - x0) / n_steps;
    let (mut y, mut yp) = start;
    let mut x = x0;
    for _ in 0..n_steps as usize {
        let (ny, nyp) = taylor_step(x, y, yp, h);
        y = ny;
        yp = nyp;
        x += h;
    }
    (y, yp)
}

fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    const TERMS: usize = 36;
    let mut a = [0.0f64; TERMS];
    a[0] = y;
    a[1] = yp;
    for n in 0..TERMS - 2 {
        let prev = if n == 0 { 0.0 } else { a[n - 1] };
        a[n + 2] = (x0 * a[n] + prev) / (((n + 1) * (n + 2)) as f64);
    }
    let mut val = 0.0;
    let mut der = 0.0;
    for n in (0..TERMS).rev() {
        val = val * h + a[n];
        if n >= 1 {
            der = der * h + a[n] * n as f64;
        }
    }
    (val, der)
}

/// Airy kernel (Ai(s)Ai'(t) - Ai(t)Ai'(s)) / (s - t), with the analytic
/// diagonal value Ai'(m)^2 - m Ai(m)^2 (m the midpoint) when |s - t| < 1e-4.
pub fn airy_kernel(s: f64, t: f64) -> f64 {
    if (s - t).abs() < 1e-4 {
        let m = 0.5 * (s + t);
        let a = airy(m);
        a.ai_prime * a.ai_prime - m * a.ai * a.ai
    } else {
        let va = airy(s);
        let vb = airy(t);
        (va.ai * vb.ai_prime - vb.ai * va.ai_prime) / (s - t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_gl;

    // Reference values computed with 40-digit arithmetic.
    const REFS: [(f64, f64, f64); 12] = [
        (0.0, 0.3550280538878172, -0.2588194037928068),
        (1.0, 0.1352924163128814, -0.1591474412967932),
        (2.0, 0.03492413042327438, -0.05309038443365363),
        (4.5, 3.302_503_235_143_09e-4, -7.178665675575089e-4),
        (5.0, 1.083444281360744e-4, -2.474138908684625e-4),
        (10.0, 1.104753255289869e-10, -3.520633676738924e-10),
        (15.0, 2.164962520737992e-18, -8.420567954017773e-18),
        (-1.0, 0.5355608832923521, -0.01016056711664521),
        (-2.5, -0.1123250676929661, 0.6788527342647944),
        (-5.0, 0.3507610090241143, 0.3271928185544431),
        (-10.0, 0.04024123848644319, 0.996_265_044_132_79),
        (-15.0, 0.2782174908708289, 0.272_374_204_308_642),
    ];

    #[test]
    fn matches_references() {
        for (x, ai, aip) in REFS {
            let v = airy(x);
            let scale = ai.abs().max(1e-300);
            assert!(
                ((v.ai - ai) / scale).abs() < 1e-10,
                "Ai({x}): got {}, want {ai}",
                v.ai
            );
            let scale_p = aip.abs().max(1e-300);
            assert!(
                ((v.ai_prime - aip) / scale_p).abs() < 1e-10,
                "Ai'({x}): got {}, want {aip}",
                v.ai_prime
            );
        }
    }

    #[test]
    fn ode_residual_under_second_differences() {
        // Richardson-extrapolated central second difference: the plain
        // stencil at any single h cannot beat ~5e-8 against eval noise.
        let second_diff = |x: f64, h: f64| {
            (airy(x + h).ai - 2.0 * airy(x).ai + airy(x - h).ai) / (h * h)
        };
        let h = 2e-3;
        for &x in &[-6.0, -3.0, -1.0, 0.0, 1.5, 3.0, 5.0, 8.0] {
            let d1 = second_diff(x, h);
            let d2 = second_diff(x, h / 2.0);
            let second = (4.0 * d2 - d1) / 3.0;
            let y1 = airy(x).ai;
            assert!(
                (second - x * y1).abs() < 1e-8 * (1.0 + y1.abs()),
                "residual at {x}: {}",
                second - x * y1
            );
        }
    }

    #[test]
    fn sign_pattern_positive_axis() {
        for &x in &[0.1, 1.0, 3.0, 7.0, 20.0, 50.0] {
            let v = airy(x);
            assert!(v.ai > 0.0 && v.ai_prime < 0.0, "signs at {x}");
        }
    }

    #[test]
    fn first_zero_found_by_bisection_on_own_evaluation() {
        // Root of Ai between -2.5 and -2.0 via bisection on this module.
        let mut lo = -2.5;
        let mut hi = -2.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if airy(mid).ai.signum() == airy(lo).ai.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        assert!((root - (-2.338107410459767)).abs() < 1e-10);
        assert!(airy(root).ai.abs() <= 1e-8);
    }

    #[test]
    fn kernel_symmetry_and_diagonal() {
        let pairs = [(0.3, -1.7), (2.0, 0.1), (-3.5, 1.2), (4.0, 3.9999)];
        for (s, t) in pairs {
            assert_eq!(airy_kernel(s, t), airy_kernel(t, s));
        }
        let s = 0.7;
        let v = airy(s);
        let want = v.ai_prime * v.ai_prime - s * v.ai * v.ai;
        assert!((airy_kernel(s, s) - want).abs() < 1e-14);
    }

    #[test]
    fn kernel_matches_integral_form() {
        // S_A(s,t) = int_0^inf Ai(s+z) Ai(t+z) dz, truncated where Ai decays.
        for (s, t) in [(0.0, 0.5), (-1.0, 1.0), (1.3, 1.3)] {
            let direct = airy_kernel(s, t);
            let quad = integrate_gl(0.0, 30.0, 200, |z| airy(s + z).ai * airy(t + z).ai);
            assert!(
                (direct - quad).abs() < 1e-6,
                "kernel integral mismatch at ({s},{t}): {direct} vs {quad}"
            );
        }
    }
}
