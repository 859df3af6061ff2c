//! Numerics for the greatest-root statistic of the double-Wishart problem.
//!
//! Given independent Wishart matrices `A ~ W_p(I, m)` and `B ~ W_p(I, n)`,
//! the largest eigenvalue of `(A + B)^{-1} B` drives Roy's largest-root test
//! in MANOVA, canonical correlation analysis and related procedures. On the
//! logit scale this statistic is approximately Tracy-Widom distributed, with
//! centering and scaling constants that are explicit trigonometric functions
//! of `(p, m, n)`.
//!
//! The crate provides:
//!
//! * [`params`]: the equivalent parameter systems (statistics, Jacobi,
//!   Liouville-Green, trigonometric) and conversions among them;
//! * [`special`]: Airy function, Airy kernel, and the Tracy-Widom
//!   distributions `F1`/`F2` via the Hastings-McLeod solution of Painleve II;
//! * [`edge_scaling`]: all centering/scaling constants (x, u, logit and
//!   theta scales; real, complex and smallest-root variants);
//! * [`jacobi`]: overflow-safe Jacobi polynomial evaluation, norming
//!   constants and the Christoffel-Darboux kernel;
//! * [`liouville_green`]: the turning-point transform behind the edge
//!   scalings, with convergence-rate instrumentation;
//! * [`approx`]: user-facing distribution functions and the dictionary from
//!   common statistical settings to `(p, m, n)`;
//! * [`montecarlo`]: reproducible double-Wishart eigenvalue simulation;
//! * [`oracle`]: independent ground truths (exact p=1 and p=2 laws, a
//!   Fredholm-determinant route to `F2`).

pub mod approx;
pub mod edge_scaling;
pub mod jacobi;
pub mod liouville_green;
pub mod math;
pub mod montecarlo;
pub mod oracle;
pub mod params;
pub mod quad;
pub mod special;

pub use approx::{greatest_root_cdf, greatest_root_pvalue, greatest_root_quantile};
pub use params::{Angles, Ensemble, JacobiParams, LgParams, StatParams};
pub use special::TwTable;
