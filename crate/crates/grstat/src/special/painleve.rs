//! Hastings-McLeod solution of Painleve II: q'' = s q + 2 q^3 with
//! q(s) ~ Ai(s) as s -> +infinity.
//!
//! The solution is produced by adaptive Dormand-Prince 5(4) integration
//! backward from a boundary point on the far right, where q = Ai holds to
//! well below double precision. The Hastings-McLeod solution is a
//! separatrix: deviations seeded at s grow like exp((2 sqrt2/3) |s|^{3/2})
//! toward the left, an amplification of ~4e7 by s = -7 and ~9e12 by s = -10.
//! Double precision therefore cannot integrate usefully past about -7; below
//! that the left asymptotic series q = sqrt(-s/2) (1 + s^{-3}/8 - ...) is
//! both stable and more accurate (truncation ~3e-7 at -7, shrinking left),
//! so the solver switches to it there.

use thiserror::Error;

use super::airy;

#[derive(Debug, Error)]
pub enum PainleveError {
    #[error("Painleve II integration diverged near s = {s}; boundary or step control is wrong")]
    Diverged { s: f64 },
    #[error("invalid grid request: {0}")]
    BadGrid(String),
}

/// Dense output of the Hastings-McLeod solve on an equispaced grid.
#[derive(Debug, Clone)]
pub struct PainleveSolution {
    /// Increasing, equispaced.
    pub s: Vec<f64>,
    pub q: Vec<f64>,
    pub q_prime: Vec<f64>,
}

/// Leftmost point reached by the ODE march; see the module comment.
const ODE_FLOOR: f64 = -6.0;

/// Solves on the grid `s_min, s_min+step, ..., s_max`, integrating backward
/// from `max(s_max, 10)` with boundary q = Ai, q' = Ai'. Grid nodes below
/// -7 are filled from the left asymptotic series.
pub fn hastings_mcleod(s_min: f64, s_max: f64, step: f64) -> Result<PainleveSolution, PainleveError> {
    if !step.is_finite() || step <= 0.0 || s_max <= s_min {
        return Err(PainleveError::BadGrid(format!(
            "need s_min < s_max and step > 0, got [{s_min}, {s_max}] step {step}"
        )));
    }
    let n = ((s_max - s_min) / step).round() as usize + 1;
    if ((s_max - s_min) - (n - 1) as f64 * step).abs() > 1e-9 {
        return Err(PainleveError::BadGrid(format!(
            "step {step} does not divide [{s_min}, {s_max}]"
        )));
    }

    let s_start = s_max.max(10.0);
    let boundary = airy(s_start);
    let mut state = [boundary.ai, boundary.ai_prime];
    let mut s_cur = s_start;

    let mut grid = vec![0.0; n];
    let mut q = vec![0.0; n];
    let mut qp = vec![0.0; n];
    for (i, g) in grid.iter_mut().enumerate() {
        *g = s_min + i as f64 * step;
    }

    // March down through the nodes from the top.
    for i in (0..n).rev() {
        let target = grid[i];
        if target > s_start {
            // Nodes above the boundary: q = Ai there.
            let v = airy(target);
            q[i] = v.ai;
            qp[i] = v.ai_prime;
        } else if target >= ODE_FLOOR {
            integrate_to(&mut s_cur, &mut state, target)?;
            q[i] = state[0];
            qp[i] = state[1];
        } else {
            let (qa, qpa) = left_asymptotic(target);
            q[i] = qa;
            qp[i] = qpa;
        }
    }

    Ok(PainleveSolution { s: grid, q, q_prime: qp })
}

/// q and q' from the left expansion q = sqrt(-s/2) (1 + s^{-3}/8
/// - (73/128) s^{-6} + (10657/1024) s^{-9}), valid for s <= -7.
fn left_asymptotic(s: f64) -> (f64, f64) {
    let root = (-s / 2.0).sqrt();
    let p = 1.0 + s.powi(-3) / 8.0 - 73.0 / 128.0 * s.powi(-6) + 10657.0 / 1024.0 * s.powi(-9);
    let dp = -3.0 / 8.0 * s.powi(-4) + 6.0 * 73.0 / 128.0 * s.powi(-7)
        - 9.0 * 10657.0 / 1024.0 * s.powi(-10);
    let q = root * p;
    let dq = -0.25 / root * p + root * dp;
    (q, dq)
}

fn rhs(s: f64, y: &[f64; 2]) -> [f64; 2] {
    [y[1], s * y[0] + 2.0 * y[0] * y[0] * y[0]]
}

/// Adaptive Dormand-Prince 5(4) from `s_cur` down to `target` (target < s_cur).
fn integrate_to(s_cur: &mut f64, y: &mut [f64; 2], target: f64) -> Result<(), PainleveError> {
    const RTOL: f64 = 1e-12;
    // Pure relative control: q spans ten orders of magnitude on the right,
    // and any absolute error floor there is amplified by the separatrix
    // instability on the way left. Neither component vanishes, so a token
    // positive floor only guards the 0/0 case.
    const ATOL: f64 = 1e-290;
    // Dormand-Prince coefficients.
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut h = -(0.05f64).min(*s_cur - target);
    while *s_cur > target + 1e-14 {
        if h.abs() > *s_cur - target {
            h = -(*s_cur - target);
        }
        let mut k = [[0.0f64; 2]; 7];
        k[0] = rhs(*s_cur, y);
        for stage in 1..7 {
            let mut yy = *y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = if stage < 6 { A[stage - 1][j] } else { B5[j] };
                yy[0] += h * a * kj[0];
                yy[1] += h * a * kj[1];
            }
            k[stage] = rhs(*s_cur + h * STAGE_C[stage], &yy);
        }
        let mut y5 = *y;
        let mut y4 = *y;
        for j in 0..7 {
            y5[0] += h * B5[j] * k[j][0];
            y5[1] += h * B5[j] * k[j][1];
            y4[0] += h * B4[j] * k[j][0];
            y4[1] += h * B4[j] * k[j][1];
        }
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let sc = ATOL + RTOL * y5[i].abs().max(y[i].abs());
            err = err.max(((y5[i] - y4[i]) / sc).abs());
        }
        if err <= 1.0 {
            *s_cur += h;
            *y = y5;
            if y[0].abs() > 1e8 {
                return Err(PainleveError::Diverged { s: *s_cur });
            }
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h *= factor.clamp(0.2, 5.0);
        if h.abs() < 1e-13 {
            return Err(PainleveError::Diverged { s: *s_cur });
        }
    }
    *s_cur = target;
    Ok(())
}

const STAGE_C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
