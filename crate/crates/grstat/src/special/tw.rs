//! Tracy-Widom distribution functions F1 and F2 with quantile inversion.
//!
//! F2(s) = exp(-int_s^inf (x-s) q^2(x) dx) and
//! F1(s) = sqrt(F2(s)) exp(-1/2 int_s^inf q(x) dx), with q the
//! Hastings-McLeod solution of Painleve II. The integrals are accumulated on
//! a fine internal grid with a derivative-corrected trapezoid rule (q' is
//! available from the ODE state, making the rule O(h^4) globally), plus an
//! Ai-based tail beyond the right boundary.

use std::fmt::Write as _;
use std::sync::OnceLock;

use thiserror::Error;

use super::{airy, hastings_mcleod};
use crate::quad::integrate_gl;

#[derive(Debug, Error)]
pub enum TwError {
    #[error("beta index must be 1 or 2, got {0}")]
    BadBeta(u8),
    #[error("probability must lie strictly in (0,1), got {0}")]
    BadProbability(f64),
    #[error("Tracy-Widom table construction failed: {0}")]
    Build(String),
    #[error("Tracy-Widom table data rejected: {0}")]
    Corrupt(String),
}

/// Tabulated Tracy-Widom distribution for one symmetry class.
#[derive(Debug, Clone)]
pub struct TwTable {
    /// 1 (orthogonal) or 2 (unitary).
    pub beta_index: u8,
    /// Equispaced, increasing.
    pub s_grid: Vec<f64>,
    /// F_beta at the grid nodes.
    pub f_values: Vec<f64>,
    /// Painleve II solution at the grid nodes.
    pub q_values: Vec<f64>,
    /// dF/ds at the nodes, used for monotone cubic interpolation.
    f_slopes: Vec<f64>,
    step: f64,
    /// I1 = int q, I2 = int (x-s) q^2 and J0 = int q^2, all evaluated at the
    /// left grid edge; they anchor the tail continuation below the grid.
    edge_i1: f64,
    edge_i2: f64,
    edge_j0: f64,
}

/// Internal integration grid: finer than the stored one and extended to the
/// right so the tail correction is negligible.
const S_LO: f64 = -10.0;
const S_HI: f64 = 10.0;
const S_TAIL: f64 = 14.0;
const H_INT: f64 = 0.0125;
const STORE_STRIDE: usize = 4; // stored step 0.05

/// Builds both tables from one Painleve solve.
pub fn build_tables() -> Result<(TwTable, TwTable), TwError> {
    let sol = hastings_mcleod(S_LO, S_TAIL, H_INT).map_err(|e| TwError::Build(e.to_string()))?;
    let n = sol.s.len();
    let h = H_INT;

    // Cumulative integrals from the top: I1 = int q, J0 = int q^2,
    // J1 = int x q^2, each with the Hermite endpoint correction
    //   int_a^b f ~ h/2 (f_a + f_b) - h^2/12 (f'_b - f'_a).
    let mut i1 = vec![0.0; n];
    let mut j0 = vec![0.0; n];
    let mut j1 = vec![0.0; n];
    for i in (0..n - 1).rev() {
        let (qa, qb) = (sol.q[i], sol.q[i + 1]);
        let (da, db) = (sol.q_prime[i], sol.q_prime[i + 1]);
        let (xa, xb) = (sol.s[i], sol.s[i + 1]);
        i1[i] = i1[i + 1] + h / 2.0 * (qa + qb) - h * h / 12.0 * (db - da);
        let (fa, fb) = (qa * qa, qb * qb);
        let (ga, gb) = (2.0 * qa * da, 2.0 * qb * db);
        j0[i] = j0[i + 1] + h / 2.0 * (fa + fb) - h * h / 12.0 * (gb - ga);
        let (ua, ub) = (xa * fa, xb * fb);
        let (va, vb) = (fa + xa * ga, fb + xb * gb);
        j1[i] = j1[i + 1] + h / 2.0 * (ua + ub) - h * h / 12.0 * (vb - va);
    }

    let stored: Vec<usize> = (0..n)
        .step_by(STORE_STRIDE)
        .take_while(|&i| sol.s[i] <= S_HI + 1e-9)
        .collect();
    let mut s_grid = Vec::with_capacity(stored.len());
    let mut q_values = Vec::with_capacity(stored.len());
    let mut f1 = Vec::with_capacity(stored.len());
    let mut f2 = Vec::with_capacity(stored.len());
    let mut d1 = Vec::with_capacity(stored.len());
    let mut d2 = Vec::with_capacity(stored.len());
    for &i in &stored {
        let s = sol.s[i];
        let i2 = j1[i] - s * j0[i];
        let f2v = (-i2).exp();
        let f1v = f2v.sqrt() * (-0.5 * i1[i]).exp();
        s_grid.push(s);
        q_values.push(sol.q[i]);
        f2.push(f2v);
        f1.push(f1v);
        d2.push(j0[i] * f2v);
        d1.push(0.5 * (j0[i] + sol.q[i]) * f1v);
    }

    let edge_i1 = i1[0];
    let edge_i2 = j1[0] - sol.s[0] * j0[0];
    let edge_j0 = j0[0];
    let t1 = TwTable {
        beta_index: 1,
        s_grid: s_grid.clone(),
        f_values: f1,
        q_values: q_values.clone(),
        f_slopes: d1,
        step: h * STORE_STRIDE as f64,
        edge_i1,
        edge_i2,
        edge_j0,
    };
    let t2 = TwTable {
        beta_index: 2,
        s_grid,
        f_values: f2,
        q_values,
        f_slopes: d2,
        step: h * STORE_STRIDE as f64,
        edge_i1,
        edge_i2,
        edge_j0,
    };
    Ok((t1, t2))
}

static TABLES: OnceLock<Result<(TwTable, TwTable), String>> = OnceLock::new();

/// Process-wide shared tables, built on first use.
pub fn tw_table(beta_index: u8) -> Result<&'static TwTable, TwError> {
    let cell = TABLES.get_or_init(|| build_tables().map_err(|e| e.to_string()));
    match (cell, beta_index) {
        (Ok((t1, _)), 1) => Ok(t1),
        (Ok((_, t2)), 2) => Ok(t2),
        (Ok(_), b) => Err(TwError::BadBeta(b)),
        (Err(m), _) => Err(TwError::Build(m.clone())),
    }
}

/// Installs externally loaded tables (for example from a file cache) as the
/// process-wide pair. No effect if the shared pair already exists; returns
/// whether the install took.
pub fn install_tables(pair: (TwTable, TwTable)) -> bool {
    TABLES.set(Ok(pair)).is_ok()
}

/// F_beta(s) using the shared tables.
pub fn tw_cdf(beta_index: u8, s: f64) -> Result<f64, TwError> {
    Ok(tw_table(beta_index)?.cdf(s))
}

/// Quantile of F_beta using the shared tables.
pub fn tw_quantile(beta_index: u8, prob: f64) -> Result<f64, TwError> {
    tw_table(beta_index)?.quantile(prob)
}

impl TwTable {
    /// Distribution function; silently extrapolates outside the grid.
    pub fn cdf(&self, s: f64) -> f64 {
        self.cdf_detailed(s).0
    }

    /// Distribution function plus a flag marking tail extrapolation beyond
    /// the tabulated range.
    pub fn cdf_detailed(&self, s: f64) -> (f64, bool) {
        let lo = self.s_grid[0];
        let hi = *self.s_grid.last().unwrap();
        if s < lo {
            (self.left_tail(s), true)
        } else if s > hi {
            (self.right_tail(s), true)
        } else {
            let pos = (s - lo) / self.step;
            let mut i = pos.floor() as usize;
            if i >= self.s_grid.len() - 1 {
                i = self.s_grid.len() - 2;
            }
            let t = (s - self.s_grid[i]) / self.step;
            let (f0, f1) = (self.f_values[i], self.f_values[i + 1]);
            let (d0, d1) = (self.f_slopes[i] * self.step, self.f_slopes[i + 1] * self.step);
            let t2 = t * t;
            let t3 = t2 * t;
            let v = f0 * (2.0 * t3 - 3.0 * t2 + 1.0)
                + d0 * (t3 - 2.0 * t2 + t)
                + f1 * (-2.0 * t3 + 3.0 * t2)
                + d1 * (t3 - t2);
            (v.clamp(0.0, 1.0), false)
        }
    }

    /// Left continuation with q^2 ~ -x/2 below the grid.
    fn left_tail(&self, s: f64) -> f64 {
        let s0 = self.s_grid[0];
        let extra_i2 =
            (s0 - s) * self.edge_j0 + (-s0.powi(3) / 6.0 + s * s0 * s0 / 4.0 - s.powi(3) / 12.0);
        let i2 = self.edge_i2 + extra_i2;
        match self.beta_index {
            2 => (-i2).exp(),
            _ => {
                let extra_i1 = 2.0 / (3.0 * std::f64::consts::SQRT_2)
                    * ((-s).powf(1.5) - (-s0).powf(1.5));
                (-0.5 * (i2 + self.edge_i1 + extra_i1)).exp()
            }
        }
    }

    /// Right continuation with q = Ai above the grid.
    fn right_tail(&self, s: f64) -> f64 {
        let i2 = integrate_gl(s, s + 15.0, 60, |x| {
            let a = airy(x).ai;
            (x - s) * a * a
        });
        match self.beta_index {
            2 => (-i2).exp(),
            _ => {
                let i1 = integrate_gl(s, s + 15.0, 60, |x| airy(x).ai);
                (-0.5 * (i2 + i1)).exp()
            }
        }
    }

    /// Monotone inverse by bisection to |delta F| <= 1e-10.
    pub fn quantile(&self, prob: f64) -> Result<f64, TwError> {
        if !(prob > 0.0 && prob < 1.0) {
            return Err(TwError::BadProbability(prob));
        }
        let mut lo = self.s_grid[0];
        let mut hi = *self.s_grid.last().unwrap();
        if self.cdf(lo) > prob {
            lo = -40.0;
        }
        if self.cdf(hi) < prob {
            hi = 40.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let f = self.cdf(mid);
            if (f - prob).abs() <= 1e-10 && (hi - lo) < 1e-6 {
                return Ok(mid);
            }
            if f < prob {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Serializes a pair of tables as CSV with columns `s,q,F1,F2`, 17
/// significant digits (exact f64 round trip).
pub fn tables_to_csv(f1: &TwTable, f2: &TwTable) -> String {
    assert_eq!(f1.s_grid, f2.s_grid, "tables must share a grid");
    let mut out = String::from("s,q,F1,F2\n");
    for i in 0..f1.s_grid.len() {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            f1.s_grid[i], f1.q_values[i], f1.f_values[i], f2.f_values[i]
        );
    }
    out
}

/// Parses tables written by [`tables_to_csv`]. Slopes are rebuilt from the
/// q column, so the interpolated cdf matches the original to ~1e-9.
pub fn tables_from_csv(text: &str) -> Result<(TwTable, TwTable), TwError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| TwError::Corrupt("empty".into()))?;
    if header.trim() != "s,q,F1,F2" {
        return Err(TwError::Corrupt(format!("unexpected header {header:?}")));
    }
    let mut s = Vec::new();
    let mut q = Vec::new();
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(TwError::Corrupt(format!("line {}: want 4 fields", ln + 2)));
        }
        let parse = |f: &str| -> Result<f64, TwError> {
            f.trim().parse().map_err(|_| TwError::Corrupt(format!("bad float {f:?}")))
        };
        s.push(parse(fields[0])?);
        q.push(parse(fields[1])?);
        f1.push(parse(fields[2])?);
        f2.push(parse(fields[3])?);
    }
    if s.len() < 3 {
        return Err(TwError::Corrupt("too few rows".into()));
    }
    let step = s[1] - s[0];
    for w in s.windows(2) {
        if ((w[1] - w[0]) - step).abs() > 1e-9 {
            return Err(TwError::Corrupt("grid not equispaced".into()));
        }
    }
    // Rebuild J0 = int q^2 (plain trapezoid on the stored grid plus Ai tail)
    // to recover slopes.
    let n = s.len();
    let top = s[n - 1];
    let tail_j0 = integrate_gl(top, top + 15.0, 60, |x| {
        let a = airy(x).ai;
        a * a
    });
    let mut j0 = vec![0.0; n];
    j0[n - 1] = tail_j0;
    for i in (0..n - 1).rev() {
        j0[i] = j0[i + 1] + step / 2.0 * (q[i] * q[i] + q[i + 1] * q[i + 1]);
    }
    let d1: Vec<f64> = (0..n).map(|i| 0.5 * (j0[i] + q[i]) * f1[i]).collect();
    let d2: Vec<f64> = (0..n).map(|i| j0[i] * f2[i]).collect();
    // I2 and I1 at the left edge are recoverable from the F columns:
    // ln F2 = -I2 and ln F1 = -(I2 + I1)/2.
    let edge_i2 = -f2[0].ln();
    let edge_i1 = -2.0 * f1[0].ln() - edge_i2;
    let edge_j0 = j0[0];
    let t1 = TwTable {
        beta_index: 1,
        s_grid: s.clone(),
        f_values: f1,
        q_values: q.clone(),
        f_slopes: d1,
        step,
        edge_i1,
        edge_i2,
        edge_j0,
    };
    let t2 = TwTable {
        beta_index: 2,
        s_grid: s,
        f_values: f2,
        q_values: q,
        f_slopes: d2,
        step,
        edge_i1,
        edge_i2,
        edge_j0,
    };
    Ok((t1, t2))
}
