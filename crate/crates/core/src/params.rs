use serde::Serialize;

use crate::error::{Error, Result};

/// Required distance of `lambda` above the lower admissibility edge.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-6;

/// Conjugate exponents `(p, q)` with the kernel exponent `lambda`.
///
/// Construction enforces `2 - min(p, q) < lambda <= 2`; everything
/// downstream assumes an admissible triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderParams {
    p: f64,
    q: f64,
    lambda: f64,
    k_lambda: f64,
}

impl HolderParams {
    /// Derives `q = p/(p-1)` and validates.
    pub fn new(p: f64, lambda: f64) -> Result<Self> {
        if !p.is_finite() || !lambda.is_finite() {
            return Err(Error::NonFinite("p or lambda"));
        }
        if p <= 1.0 {
            return Err(Error::Parameter(format!("p = {p} must exceed 1")));
        }
        Self::from_pair(p, p / (p - 1.0), lambda)
    }

    fn from_pair(p: f64, q: f64, lambda: f64) -> Result<Self> {
        if q <= 1.0 || !q.is_finite() {
            return Err(Error::Parameter(format!(
                "conjugate q = {q} must be a finite value > 1"
            )));
        }
        let conj = 1.0 / p + 1.0 / q - 1.0;
        if conj.abs() > 4.0 * f64::EPSILON {
            return Err(Error::Parameter(format!(
                "1/p + 1/q - 1 = {conj:e} for p = {p}, q = {q}"
            )));
        }
        let edge = lower_lambda_edge(p, q);
        if lambda > 2.0 {
            return Err(Error::Parameter(format!("lambda = {lambda} exceeds 2")));
        }
        if lambda - edge < ADMISSIBILITY_MARGIN {
            return Err(Error::Parameter(format!(
                "lambda = {lambda} must exceed 2 - min(p, q) = {edge} by at least {ADMISSIBILITY_MARGIN:e}"
            )));
        }
        let k_lambda = lambda * p * q / ((p + lambda - 2.0) * (q + lambda - 2.0));
        if !(k_lambda > 0.0 && k_lambda.is_finite()) {
            return Err(Error::Parameter(format!(
                "k_lambda = {k_lambda} is not positive"
            )));
        }
        let s = 2.0 / p + lambda / q;
        if s <= 1.0 {
            return Err(Error::Parameter(format!(
                "tail exponent 2/p + lambda/q = {s} must exceed 1"
            )));
        }
        Ok(Self {
            p,
            q,
            lambda,
            k_lambda,
        })
    }

    /// Same parameters with the roles of `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            ..*self
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn k_lambda(&self) -> f64 {
        self.k_lambda
    }

    /// `(2 - lambda)/p`, the exponent of the finite head of the weight sum.
    pub fn head_exponent(&self) -> f64 {
        (2.0 - self.lambda) / self.p
    }

    /// `2/p + lambda/q`, the exponent of the weight tail; always `> 1`.
    pub fn tail_exponent(&self) -> f64 {
        2.0 / self.p + self.lambda / self.q
    }

    /// `(p + lambda - 2)/p`.
    pub fn decay_exponent(&self) -> f64 {
        (self.p + self.lambda - 2.0) / self.p
    }

    /// Exponent of `n` in the weighted `l^p` norm: `(p-1)(2-lambda) - 1`.
    pub fn norm_weight_exponent(&self) -> f64 {
        (self.p - 1.0) * (2.0 - self.lambda) - 1.0
    }
}

/// `2 - min(p, q)`; admissible `lambda` lie strictly above it.
pub fn lower_lambda_edge(p: f64, q: f64) -> f64 {
    2.0 - p.min(q)
}

/// `p` values of the default verification grid.
pub const DEFAULT_P_GRID: [f64; 5] = [1.2, 1.5, 2.0, 3.0, 4.0];

/// `lambda = 2 - min(p,q) + 0.1 k` up to 2, with 2 itself always included.
pub fn default_lambda_grid(p: f64) -> Vec<f64> {
    let q = p / (p - 1.0);
    let edge = lower_lambda_edge(p, q);
    let mut out: Vec<f64> = (1..)
        .map(|k| edge + 0.1 * f64::from(k))
        .take_while(|&l| l <= 2.0 + 1e-9)
        .map(|l| l.min(2.0))
        .collect();
    if out.last().is_none_or(|&l| l < 2.0 - 1e-9) {
        out.push(2.0);
    }
    out
}

/// Admissible `(p, lambda)` pairs of the default grid.
pub fn default_grid() -> Vec<HolderParams> {
    DEFAULT_P_GRID
        .iter()
        .flat_map(|&p| {
            default_lambda_grid(p)
                .into_iter()
                .map(move |l| HolderParams::new(p, l))
        })
        .collect::<Result<_>>()
        .expect("default grid is admissible")
}
