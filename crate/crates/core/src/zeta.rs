//! Euler-Maclaurin evaluation of `zeta(rho)` and of power-sum tails.
//!
//! With split point `m` and remainder order `l`,
//!
//! ```text
//! zeta(rho) = sum_{n<=m} n^-rho - m^(1-rho)/(1-rho) - 1/(2 m^rho)
//!           - sum_{j=1}^{l-1} B_2j/(2j) C(-rho, 2j-1) m^(-rho-2j+1)
//!           - eps * B_2l/(2l) C(-rho, 2l-1) m^(-rho-2l+1),   0 < eps < 1.
//! ```
//!
//! The unknown `eps` is bracketed by evaluating the last term at 0 and 1.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{bernoulli_table, gen_binomial, MAX_BERNOULLI_INDEX};
use crate::interval::{ulp_slack, Interval, DEFAULT_SLACK_ULPS};
use crate::sum::NeumaierSum;

/// Split point and remainder order for the Euler-Maclaurin formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmSettings {
    m: u64,
    l: u32,
    slack_ulps: u32,
}

impl Default for EmSettings {
    fn default() -> Self {
        Self {
            m: 16,
            l: 8,
            slack_ulps: DEFAULT_SLACK_ULPS,
        }
    }
}

impl EmSettings {
    pub fn new(m: u64, l: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter(
                "Euler-Maclaurin split point m must be >= 1".into(),
            ));
        }
        if l == 0 {
            return Err(Error::Parameter("remainder order l must be >= 1".into()));
        }
        if 2 * l as usize > MAX_BERNOULLI_INDEX {
            return Err(Error::Parameter(format!(
                "remainder order l = {l} needs B_{} beyond the table cap",
                2 * l
            )));
        }
        Ok(Self {
            m,
            l,
            slack_ulps: DEFAULT_SLACK_ULPS,
        })
    }

    pub fn with_slack_ulps(mut self, ulps: u32) -> Self {
        self.slack_ulps = ulps;
        self
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn slack_ulps(&self) -> u32 {
        self.slack_ulps
    }
}

fn bernoulli_f64() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let t = bernoulli_table(MAX_BERNOULLI_INDEX).expect("cap is within range");
        (0..=MAX_BERNOULLI_INDEX)
            .map(|n| t.get_f64(n).unwrap_or(f64::NAN))
            .collect()
    })
}

/// Correction term of order `j >= 1`:
/// `-B_2j/(2j) * C(-rho, 2j-1) * m^(-rho-2j+1)`.
fn correction_term(rho: f64, m: f64, j: u32) -> Result<f64> {
    let b = bernoulli_f64()[2 * j as usize];
    let c = gen_binomial(-rho, 2 * j - 1)?;
    Ok(-(b / f64::from(2 * j)) * c * m.powf(-rho - f64::from(2 * j) + 1.0))
}

/// Compensated `sum_{n=1}^{m} n^-s`, with the absolute-value sum alongside.
pub(crate) fn power_sum_acc(s: f64, m: u64) -> NeumaierSum {
    let mut acc = NeumaierSum::new();
    for n in 1..=m {
        acc.add((n as f64).powf(-s));
    }
    acc
}

/// `sum_{n=1}^{m} n^-s`, compensated, ascending index.
pub fn partial_power_sum(s: f64, m: u64) -> f64 {
    power_sum_acc(s, m).value()
}

/// Rigorous bracket for `zeta(rho)`, `rho >= 0`, `rho != 1`.
pub fn zeta_em(rho: f64, settings: EmSettings) -> Result<Interval> {
    if !rho.is_finite() {
        return Err(Error::NonFinite("rho"));
    }
    if rho < 0.0 {
        return Err(Error::OutOfDomain(rho));
    }
    if rho == 1.0 {
        return Err(Error::Pole);
    }
    let EmSettings { m, l, slack_ulps } = settings;
    let mf = m as f64;

    let remainder = correction_term(rho, mf, l)?;
    if !remainder.is_finite() {
        return Err(Error::RemainderOrder { rho, m, l });
    }
    if l >= 2 {
        let last = correction_term(rho, mf, l - 1)?;
        if remainder.abs() > last.abs() {
            return Err(Error::RemainderOrder { rho, m, l });
        }
    }

    let mut acc = power_sum_acc(rho, m);
    acc.add(-mf.powf(1.0 - rho) / (1.0 - rho));
    acc.add(-0.5 * mf.powf(-rho));
    for j in 1..l {
        acc.add(correction_term(rho, mf, j)?);
    }
    let center = acc.value();
    let slack = ulp_slack(acc.abs_sum() + remainder.abs() + center.abs(), slack_ulps);
    Ok(Interval::hull(center, center + remainder).widen(slack))
}

/// Rigorous bracket for `sum_{n=m}^inf n^-s`, `s > 1`.
///
/// Computed as `zeta_em(s)` minus the finite head, then intersected with the
/// integral-test bracket `[I, I + m^-s]`, `I = m^(1-s)/(s-1)`.
pub fn tail_power_sum(s: f64, m: u64, settings: EmSettings) -> Result<Interval> {
    if !s.is_finite() {
        return Err(Error::NonFinite("s"));
    }
    if s <= 1.0 {
        return Err(Error::Divergent(s));
    }
    if m == 0 {
        return Err(Error::Parameter("tail start m must be >= 1".into()));
    }
    let ulps = settings.slack_ulps();
    let zeta = zeta_em(s, settings)?;
    let head = power_sum_acc(s, m - 1);
    let head_slack = ulp_slack(head.abs_sum() + zeta.hi().abs(), ulps);
    let via_zeta = zeta.shift(-head.value()).widen(head_slack);

    let bracket = integral_test_bracket(s, m, ulps);
    via_zeta.intersect(&bracket).ok_or_else(|| {
        Error::Invariant(format!(
            "tail brackets disagree for s = {s}, m = {m}: {via_zeta} vs {bracket}"
        ))
    })
}

/// `[I, I + m^-s]` with `I = m^(1-s)/(s-1)`, widened by rounding slack.
pub fn integral_test_bracket(s: f64, m: u64, ulps: u32) -> Interval {
    let mf = m as f64;
    let integral = mf.powf(1.0 - s) / (s - 1.0);
    let first = mf.powf(-s);
    Interval::hull(integral, integral + first).widen(ulp_slack(integral + first, ulps))
}
