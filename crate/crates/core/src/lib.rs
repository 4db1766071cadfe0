//! Rigorous numerics for Hardy-Hilbert type inequalities with the kernel
//! `1/max{m^lambda, n^lambda}`.
//!
//! * [`exact`]: Bernoulli numbers as exact rationals, generalized binomials.
//! * [`zeta`]: Euler-Maclaurin brackets for `zeta(rho)` and power-sum tails.
//! * [`weights`]: weight coefficients and their upper bounds.
//! * [`inequalities`]: both sides of the inequality family, O(N) kernel sums.
//! * [`sequences`]: deterministic test sequences and file ingestion.

pub mod error;
pub mod exact;
pub mod inequalities;
pub mod interval;
pub mod params;
pub mod sequences;
pub mod sum;
pub mod weights;
pub mod zeta;

pub use error::{Error, Result};
pub use interval::Interval;
pub use params::HolderParams;
pub use zeta::EmSettings;
