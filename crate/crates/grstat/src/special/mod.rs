//! Airy machinery and the Tracy-Widom distributions.

mod airy;
mod painleve;
mod tw;

pub use airy::{airy, airy_kernel};
pub use painleve::{hastings_mcleod, PainleveError, PainleveSolution};
pub use tw::{
    build_tables, install_tables, tables_from_csv, tables_to_csv, tw_cdf, tw_quantile, tw_table,
    TwError, TwTable,
};

/// Ai and Ai' at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub s: f64,
    pub ai: f64,
    pub ai_prime: f64,
}
