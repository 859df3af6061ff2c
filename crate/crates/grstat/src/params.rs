//! The equivalent parameter systems of the double-Wishart problem and the
//! conversions among them.
//!
//! Four systems are in play: statistics parameters `(p, m, n)`, Jacobi
//! parameters `(N, alpha, beta)`, Liouville-Green parameters
//! `(kappa, lambda, mu)` and the trigonometric angles `(gamma, phi)`. Each
//! is the natural coordinate system for part of the computation; everything
//! here is exact arithmetic plus inverse trigonometry.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("dimension p={p} exceeds error degrees of freedom m={m}: A is singular")]
    SingularErrorMatrix { p: u32, m: u32 },
    #[error("(p, m, n) must all be positive, got ({p}, {m}, {n})")]
    NonPositive { p: u32, m: u32, n: u32 },
    #[error("Jacobi exponents must be nonnegative, got alpha={alpha}, beta={beta}")]
    NegativeExponent { alpha: f64, beta: f64 },
}

/// Data ensemble: real entries (orthogonal, beta index 1) or complex entries
/// (unitary, beta index 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Real,
    Complex,
}

impl Ensemble {
    /// Tracy-Widom index of the ensemble's edge law.
    pub fn beta_index(self) -> u8 {
        match self {
            Ensemble::Real => 1,
            Ensemble::Complex => 2,
        }
    }
}

/// The statistics triple: dimension `p`, error degrees of freedom `m`,
/// hypothesis degrees of freedom `n`. Always satisfies `m >= p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StatParams {
    p: u32,
    m: u32,
    n: u32,
}

impl StatParams {
    pub fn new(p: u32, m: u32, n: u32) -> Result<Self, ParamError> {
        if p == 0 || m == 0 || n == 0 {
            return Err(ParamError::NonPositive { p, m, n });
        }
        if m < p {
            return Err(ParamError::SingularErrorMatrix { p, m });
        }
        Ok(StatParams { p, m, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }

    /// True at the m = p boundary, where the upper spectrum edge reaches 1
    /// and the soft-edge scaling constants degenerate.
    pub fn is_hard_edge(&self) -> bool {
        self.m == self.p
    }

    /// The distributionally equivalent triple `(n, m+n-p, p)`.
    pub fn dual(&self) -> StatParams {
        StatParams { p: self.n, m: self.m + self.n - self.p, n: self.p }
    }

    /// Jacobi parameters of the matching ensemble. The polynomial degree is
    /// `min(p, n)` in the complex case and `min(p, n) - 1` in the real case
    /// (the real ensemble of size p is driven by degree-(p-1) machinery).
    pub fn to_jacobi(&self, ensemble: Ensemble) -> JacobiParams {
        let small = self.p.min(self.n);
        let degree = match ensemble {
            Ensemble::Complex => small,
            Ensemble::Real => small - 1,
        };
        JacobiParams {
            degree,
            alpha: (self.m - self.p) as f64,
            beta: self.p.abs_diff(self.n) as f64,
            ensemble,
        }
    }

    /// Angle parameters from the half-angle identities
    /// sin^2(gamma/2) = (min(p,n) - 1/2) / (m+n-1),
    /// sin^2(phi/2)   = (max(p,n) - 1/2) / (m+n-1).
    pub fn angles(&self) -> Angles {
        let total = (self.m + self.n - 1) as f64;
        let lo = (self.p.min(self.n) as f64 - 0.5) / total;
        let hi = (self.p.max(self.n) as f64 - 0.5) / total;
        Angles::from_half_angle_ratios(lo, hi)
    }
}

/// Jacobi polynomial parameters `(N, alpha, beta)` tagged by ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    degree: u32,
    alpha: f64,
    beta: f64,
    ensemble: Ensemble,
}

impl JacobiParams {
    pub fn new(degree: u32, alpha: f64, beta: f64, ensemble: Ensemble) -> Result<Self, ParamError> {
        if alpha < 0.0 || beta < 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(ParamError::NegativeExponent { alpha, beta });
        }
        Ok(JacobiParams { degree, alpha, beta, ensemble })
    }

    /// The proportional parameterization alpha = (N + 1/2) a,
    /// beta = (N + 1/2) b used by the convergence-rate experiments.
    pub fn from_growth_ratios(degree: u32, a: f64, b: f64, ensemble: Ensemble) -> Result<Self, ParamError> {
        let n_plus = degree as f64 + 0.5;
        Self::new(degree, n_plus * a, n_plus * b, ensemble)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn ensemble(&self) -> Ensemble {
        self.ensemble
    }

    /// kappa = 2N + alpha + beta + 1.
    pub fn kappa(&self) -> f64 {
        2.0 * self.degree as f64 + self.alpha + self.beta + 1.0
    }

    /// Same parameters at degree N-1 (alpha, beta unchanged).
    pub fn degree_down(&self) -> Option<JacobiParams> {
        self.degree.checked_sub(1).map(|d| JacobiParams { degree: d, ..*self })
    }

    /// Liouville-Green parameters (kappa, lambda, mu).
    pub fn lg_params(&self) -> LgParams {
        let kappa = self.kappa();
        LgParams { kappa, lambda: self.alpha / kappa, mu: self.beta / kappa }
    }

    /// Angle parameters via sin^2(gamma/2) = (N + 1/2)/kappa,
    /// sin^2(phi/2) = (N + beta + 1/2)/kappa, equivalent to
    /// cos(gamma) = (alpha+beta)/kappa, cos(phi) = (alpha-beta)/kappa but
    /// accurate when gamma is small.
    pub fn angles(&self) -> Angles {
        let kappa = self.kappa();
        let nf = self.degree as f64;
        Angles::from_half_angle_ratios((nf + 0.5) / kappa, (nf + self.beta + 0.5) / kappa)
    }
}

/// Liouville-Green parameters: kappa the large parameter, lambda = alpha/kappa,
/// mu = beta/kappa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgParams {
    pub kappa: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl LgParams {
    /// Turning points from the algebraic form
    /// x_pm = mu^2 - lambda^2 +- sqrt((1-(lambda+mu)^2)(1-(lambda-mu)^2)).
    pub fn turning_points_algebraic(&self) -> TurningPoints {
        let d = self.mu * self.mu - self.lambda * self.lambda;
        let sp = self.lambda + self.mu;
        let sm = self.lambda - self.mu;
        let r = ((1.0 - sp * sp) * (1.0 - sm * sm)).sqrt();
        TurningPoints { x_minus: d - r, x_plus: d + r }
    }
}

/// The angle parameters, with 0 < gamma <= pi/2, gamma <= phi < pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles {
    pub gamma: f64,
    pub phi: f64,
}

impl Angles {
    fn from_half_angle_ratios(sin2_half_gamma: f64, sin2_half_phi: f64) -> Angles {
        debug_assert!(sin2_half_gamma > 0.0 && sin2_half_gamma <= 0.5 + 1e-12);
        debug_assert!(sin2_half_phi > 0.0 && sin2_half_phi < 1.0);
        Angles {
            gamma: 2.0 * sin2_half_gamma.sqrt().asin(),
            phi: 2.0 * sin2_half_phi.sqrt().asin(),
        }
    }

    /// Turning points x_pm = -cos(phi +- gamma).
    pub fn turning_points(&self) -> TurningPoints {
        TurningPoints {
            x_minus: -(self.phi - self.gamma).cos(),
            x_plus: -(self.phi + self.gamma).cos(),
        }
    }
}

/// Zeros of the Liouville-Green coefficient f: the oscillation/decay
/// boundaries of the weighted polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoints {
    pub x_minus: f64,
    pub x_plus: f64,
}
