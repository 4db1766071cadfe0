use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("zeta has a pole at rho = 1")]
    Pole,

    #[error("rho = {0} is outside the supported domain rho >= 0")]
    OutOfDomain(f64),

    #[error("power sum with exponent s = {0} diverges (need s > 1)")]
    Divergent(f64),

    #[error(
        "remainder order l = {l} is past the asymptotic turning point for rho = {rho}, m = {m}"
    )]
    RemainderOrder { rho: f64, m: u64, l: u32 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("sequence ingestion failed: {0}")]
    Ingestion(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
