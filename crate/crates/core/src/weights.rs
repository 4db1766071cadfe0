//! Weight coefficients of the max-kernel and their upper bounds.
//!
//! `omega(m) = sum_{n>=1} (m/n)^rho / max{m^lambda, n^lambda}` with
//! `rho = (2-lambda)/p` splits at `n = m` into
//!
//! ```text
//! m^(rho-lambda) * sum_{n<=m} n^-rho  -  m^-lambda  +  m^rho * sum_{n>=m} n^-s
//! ```
//!
//! where `s = 2/p + lambda/q`; the `n = m` term is counted by both sums and
//! removed once.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{ulp_slack, Interval};
use crate::params::HolderParams;
use crate::zeta::{power_sum_acc, tail_power_sum, zeta_em, EmSettings};

/// Bracketed weight coefficient together with the bound it is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightEstimate {
    pub m: u64,
    pub value: Interval,
    pub bound: f64,
    /// `bound - value.hi()`.
    pub margin: f64,
}

impl WeightEstimate {
    fn new(m: u64, value: Interval, bound: f64) -> Self {
        Self {
            m,
            value,
            bound,
            margin: bound - value.hi(),
        }
    }

    /// Strict inequality at interval resolution.
    pub fn confirmed(&self) -> bool {
        self.margin > -self.value.width()
    }
}

/// Which denominator the dual bound uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum DualBoundForm {
    /// `q/(3(q+lambda-2) n^((q+lambda-2)/q))`, matching the theorem's second factor.
    #[default]
    Symmetric,
    /// `q/(3(p+lambda-2) n^((q+lambda-2)/q))`, the literal printed variant.
    Literal,
}

/// Bracket for `omega(m, lambda, p)`.
pub fn weight_omega(m: u64, params: &HolderParams, settings: EmSettings) -> Result<Interval> {
    if m == 0 {
        return Err(Error::Parameter("weight index m must be >= 1".into()));
    }
    let ulps = settings.slack_ulps();
    let mf = m as f64;
    let rho = params.head_exponent();
    let lambda = params.lambda();

    let head = power_sum_acc(rho, m);
    let head_scale = mf.powf(rho - lambda);
    let head_part = Interval::point(head_scale * head.value()).widen(ulp_slack(
        head_scale * (head.abs_sum() + head.value()),
        ulps,
    ));

    let overlap = mf.powf(-lambda);
    let overlap = Interval::point(overlap).widen(ulp_slack(overlap, ulps));

    let tail = tail_power_sum(params.tail_exponent(), m, settings)?;
    let tail_part = tail.scale(mf.powf(rho));
    let tail_part = tail_part.widen(ulp_slack(tail_part.hi(), ulps));

    let value = head_part - overlap + tail_part;
    if value.lo() <= 0.0 {
        return Err(Error::Invariant(format!(
            "weight bracket {value} for m = {m} is not positive"
        )));
    }
    Ok(value)
}

/// Bracket for `omega(n, lambda, q)`: the same sum with `p` and `q` exchanged.
pub fn weight_omega_dual(n: u64, params: &HolderParams, settings: EmSettings) -> Result<Interval> {
    weight_omega(n, &params.swapped(), settings)
}

/// `m^(1-lambda) (k - p / (3(p+lambda-2) m^((p+lambda-2)/p)))`.
pub fn bound_24(m: u64, params: &HolderParams) -> f64 {
    let (p, lambda) = (params.p(), params.lambda());
    let mf = m as f64;
    let corr = p / (3.0 * (p + lambda - 2.0) * mf.powf(params.decay_exponent()));
    mf.powf(1.0 - lambda) * (params.k_lambda() - corr)
}

/// Upper bound for `omega(n, lambda, q)` in the requested form.
pub fn bound_25(n: u64, params: &HolderParams, form: DualBoundForm) -> f64 {
    let (p, q, lambda) = (params.p(), params.q(), params.lambda());
    let nf = n as f64;
    let denom = match form {
        DualBoundForm::Symmetric => 3.0 * (q + lambda - 2.0),
        DualBoundForm::Literal => 3.0 * (p + lambda - 2.0),
    };
    let corr = q / (denom * nf.powf((q + lambda - 2.0) / q));
    nf.powf(1.0 - lambda) * (params.k_lambda() - corr)
}

/// Both weight checks at one index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightCheck {
    pub m: u64,
    /// `omega(m, lambda, p)` against the primal bound.
    pub primal: WeightEstimate,
    /// `omega(m, lambda, q)` against the symmetric dual bound.
    pub dual: WeightEstimate,
    /// Margin of the same dual value against the literal dual bound.
    pub dual_literal_margin: f64,
}

impl WeightCheck {
    pub fn confirmed(&self) -> bool {
        self.primal.confirmed() && self.dual.confirmed()
    }
}

/// Evaluates both weight bounds for every `m` in `1..=m_max`, ordered by `m`.
pub fn check_weight_bounds(
    params: &HolderParams,
    m_max: u64,
    settings: EmSettings,
) -> Result<Vec<WeightCheck>> {
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let primal = weight_omega(m, params, settings)?;
            let dual = weight_omega_dual(m, params, settings)?;
            let literal = bound_25(m, params, DualBoundForm::Literal);
            Ok(WeightCheck {
                m,
                primal: WeightEstimate::new(m, primal, bound_24(m, params)),
                dual: WeightEstimate::new(m, dual, bound_25(m, params, DualBoundForm::Symmetric)),
                dual_literal_margin: literal - dual.hi(),
            })
        })
        .collect()
}

/// One step of the lower bound on `-zeta((2-lambda)/p)` used by the weight estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainGap {
    pub m: u64,
    /// `-zeta_hi(rho) - (p lambda + 2q)/(12 p q m^e) - p/(3(p+lambda-2))`.
    pub gap: f64,
    /// Bracket width plus rounding slack; `gap >= -resolution` passes.
    pub resolution: f64,
}

impl ChainGap {
    pub fn holds(&self) -> bool {
        self.gap >= -self.resolution
    }
}

/// Evaluates the negativity-chain gap for every `m` in `1..=m_max`.
pub fn check_negativity_chain(
    params: &HolderParams,
    m_max: u64,
    settings: EmSettings,
) -> Result<Vec<ChainGap>> {
    let rho = params.head_exponent();
    if rho == 1.0 {
        return Err(Error::Pole);
    }
    let (p, q, lambda) = (params.p(), params.q(), params.lambda());
    let zeta = zeta_em(rho, settings)?;
    let target = p / (3.0 * (p + lambda - 2.0));
    let coeff = (p * lambda + 2.0 * q) / (12.0 * p * q);
    let e = params.decay_exponent();
    Ok((1..=m_max)
        .map(|m| {
            let corr = coeff / (m as f64).powf(e);
            let gap = -zeta.hi() - corr - target;
            let resolution =
                zeta.width() + ulp_slack(zeta.hi().abs() + corr + target, settings.slack_ulps());
            ChainGap { m, gap, resolution }
        })
        .collect())
}
