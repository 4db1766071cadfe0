//! Both sides of the max-kernel inequality family on finite sequences.
//!
//! Finite inputs are read as zero-padded infinite sequences. The bilinear
//! form `sum_m sum_n a_m b_n / max{m,n}^lambda` is evaluated in O(N) by
//! grouping pairs on `k = max{m, n}`:
//!
//! ```text
//! sum_k k^-lambda (a_k * B(k) + b_k * A(k-1)),   A, B prefix sums.
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::HolderParams;
use crate::sequences::Sequence;
use crate::sum::NeumaierSum;

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum InequalityId {
    #[serde(rename = "3.1")]
    I31,
    #[serde(rename = "3.2")]
    I32,
    #[serde(rename = "3.3")]
    I33,
    #[serde(rename = "3.4")]
    I34,
    #[serde(rename = "3.5")]
    I35,
    #[serde(rename = "3.6")]
    I36,
    #[serde(rename = "3.7")]
    I37,
    #[serde(rename = "3.8")]
    I38,
    #[serde(rename = "1.3")]
    Yang13,
}

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::I31,
        InequalityId::I32,
        InequalityId::I33,
        InequalityId::I34,
        InequalityId::I35,
        InequalityId::I36,
        InequalityId::I37,
        InequalityId::I38,
        InequalityId::Yang13,
    ];

    pub fn label(self) -> &'static str {
        match self {
            InequalityId::I31 => "3.1",
            InequalityId::I32 => "3.2",
            InequalityId::I33 => "3.3",
            InequalityId::I34 => "3.4",
            InequalityId::I35 => "3.5",
            InequalityId::I36 => "3.6",
            InequalityId::I37 => "3.7",
            InequalityId::I38 => "3.8",
            InequalityId::Yang13 => "1.3",
        }
    }

    /// Single-sequence forms whose left side is an outer sum over rows.
    pub fn is_row_form(self) -> bool {
        matches!(
            self,
            InequalityId::I32 | InequalityId::I34 | InequalityId::I36 | InequalityId::I38
        )
    }

    /// Rejects parameters outside the family the inequality is stated for.
    pub fn check_params(self, params: &HolderParams) -> Result<()> {
        let needs_unit_lambda = matches!(
            self,
            InequalityId::I35 | InequalityId::I36 | InequalityId::I37 | InequalityId::I38
        );
        let needs_p_two = matches!(self, InequalityId::I37 | InequalityId::I38);
        if needs_unit_lambda && !is_unit_lambda(params) {
            return Err(Error::Parameter(format!(
                "inequality {self} requires lambda = 1, got {}",
                params.lambda()
            )));
        }
        if needs_p_two && !(params.p() == 2.0 && params.q() == 2.0) {
            return Err(Error::Parameter(format!(
                "inequality {self} requires p = q = 2, got p = {}",
                params.p()
            )));
        }
        Ok(())
    }
}

fn is_unit_lambda(params: &HolderParams) -> bool {
    (params.lambda() - 1.0).abs() <= 4.0 * f64::EPSILON
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let key = lower.strip_prefix('i').unwrap_or(&lower).replace('.', "");
        let id = match key.as_str() {
            "31" => InequalityId::I31,
            "32" => InequalityId::I32,
            "33" => InequalityId::I33,
            "34" => InequalityId::I34,
            "35" => InequalityId::I35,
            "36" => InequalityId::I36,
            "37" => InequalityId::I37,
            "38" => InequalityId::I38,
            "13" | "yang13" => InequalityId::Yang13,
            _ => return Err(Error::Parameter(format!("unknown inequality id {s:?}"))),
        };
        Ok(id)
    }
}

/// Outcome of one inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub inequality: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    /// Right side with the plain constant `k_lambda` (no improvement term).
    pub rhs_baseline: f64,
    /// `lhs < rhs`.
    pub holds: bool,
    /// `rhs_baseline - rhs`.
    pub improvement: f64,
    pub params: HolderParams,
    pub a: String,
    pub b: Option<String>,
    /// Truncation point of the outer sum for row forms.
    pub n_max: Option<u64>,
}

impl VerificationReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        inequality: InequalityId,
        lhs: f64,
        rhs: f64,
        rhs_baseline: f64,
        params: &HolderParams,
        a: &Sequence,
        b: Option<&Sequence>,
        n_max: Option<u64>,
    ) -> Self {
        Self {
            inequality,
            lhs,
            rhs,
            rhs_baseline,
            holds: lhs < rhs,
            improvement: rhs_baseline - rhs,
            params: *params,
            a: a.label().to_owned(),
            b: b.map(|s| s.label().to_owned()),
            n_max,
        }
    }
}

#[inline]
fn at(values: &[f64], i: usize) -> f64 {
    values.get(i).copied().unwrap_or(0.0)
}

/// `sum_m sum_n a_m b_n / max{m^lambda, n^lambda}` over the finite supports.
pub fn kernel_double_sum(a: &Sequence, b: &Sequence, params: &HolderParams) -> f64 {
    let (a, b) = (a.values(), b.values());
    let lambda = params.lambda();
    let n = a.len().max(b.len());
    let mut prefix_a = NeumaierSum::new();
    let mut prefix_b = NeumaierSum::new();
    let mut acc = NeumaierSum::new();
    for k in 1..=n {
        let (ak, bk) = (at(a, k - 1), at(b, k - 1));
        prefix_b.add(bk);
        let row = ak * prefix_b.value() + bk * prefix_a.value();
        prefix_a.add(ak);
        if row != 0.0 {
            acc.add((k as f64).powf(-lambda) * row);
        }
    }
    acc.value()
}

/// Row sums `r_n = sum_m a_m / max{m^lambda, n^lambda}` for `n = 1..=n_max`.
pub fn kernel_row_sums(a: &Sequence, params: &HolderParams, n_max: usize) -> Vec<f64> {
    let lambda = params.lambda();
    let a = &a.values()[..a.support()];
    let len = a.len();
    // suffix[j] = sum_{m > j} a_m m^-lambda (0-based j = m - 1 boundary)
    let mut suffix = vec![0.0; len + 1];
    let mut acc = NeumaierSum::new();
    for j in (0..len).rev() {
        if a[j] != 0.0 {
            acc.add(a[j] * ((j + 1) as f64).powf(-lambda));
        }
        suffix[j] = acc.value();
    }
    let mut prefix = NeumaierSum::new();
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n <= len {
            prefix.add(a[n - 1]);
        }
        let after = if n < len { suffix[n] } else { 0.0 };
        rows.push((n as f64).powf(-lambda) * prefix.value() + after);
    }
    rows
}

/// `sum_n c(n) n^((p-1)(2-lambda)-1) a_n^p` for the exponent `p` of `params`.
fn weighted_power_sum(a: &Sequence, params: &HolderParams, bracket: impl Fn(f64) -> f64) -> f64 {
    let p = params.p();
    let w = params.norm_weight_exponent();
    let mut acc = NeumaierSum::new();
    for (i, &v) in a.values().iter().enumerate() {
        if v != 0.0 {
            let n = (i + 1) as f64;
            acc.add(bracket(n) * n.powf(w) * v.powf(p));
        }
    }
    acc.value()
}

/// Improvement numerator of the bracket `k - c/(3(p+lambda-2) n^((p+lambda-2)/p))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Correction {
    /// `c = p`
    Theorem,
    /// `c = 1`
    Weakened,
}

fn improved_bracket(params: &HolderParams, kind: Correction) -> Result<impl Fn(f64) -> f64> {
    let (p, lambda, k) = (params.p(), params.lambda(), params.k_lambda());
    let c = match kind {
        Correction::Theorem => p,
        Correction::Weakened => 1.0,
    };
    let coeff = c / (3.0 * (p + lambda - 2.0));
    let e = params.decay_exponent();
    let bracket = move |n: f64| k - coeff / n.powf(e);
    // Increasing in n, so n = 1 is the binding case.
    let first = bracket(1.0);
    if first.is_nan() || first <= 0.0 {
        return Err(Error::Invariant(format!(
            "improved bracket k - {coeff} = {first} is not positive for p = {p}, lambda = {lambda}"
        )));
    }
    Ok(bracket)
}

fn improved_rhs(
    a: &Sequence,
    b: &Sequence,
    params: &HolderParams,
    kind: Correction,
) -> Result<f64> {
    let dual = params.swapped();
    let fa = weighted_power_sum(a, params, improved_bracket(params, kind)?);
    let fb = weighted_power_sum(b, &dual, improved_bracket(&dual, kind)?);
    Ok(fa.powf(1.0 / params.p()) * fb.powf(1.0 / params.q()))
}

fn improved_row_rhs(a: &Sequence, params: &HolderParams, kind: Correction) -> Result<f64> {
    let k = params.k_lambda();
    Ok(k.powf(params.p() - 1.0) * weighted_power_sum(a, params, improved_bracket(params, kind)?))
}

/// Improved right side of the bilinear form.
pub fn rhs_31(a: &Sequence, b: &Sequence, params: &HolderParams) -> Result<f64> {
    improved_rhs(a, b, params, Correction::Theorem)
}

/// Right side with the improvement numerator replaced by 1.
pub fn rhs_33(a: &Sequence, b: &Sequence, params: &HolderParams) -> Result<f64> {
    improved_rhs(a, b, params, Correction::Weakened)
}

/// `k_lambda * ||a||_{p,w} * ||b||_{q,w}` with the plain constant.
pub fn rhs_yang13(a: &Sequence, b: &Sequence, params: &HolderParams) -> f64 {
    let dual = params.swapped();
    let fa = weighted_power_sum(a, params, |_| 1.0);
    let fb = weighted_power_sum(b, &dual, |_| 1.0);
    params.k_lambda() * fa.powf(1.0 / params.p()) * fb.powf(1.0 / params.q())
}

/// `lambda = 1` form: `pq {sum [1 - 1/(3q(p-1) n^((p-1)/p))] n^(p-2) a^p}^(1/p) {..}^(1/q)`.
pub fn rhs_35(a: &Sequence, b: &Sequence, params: &HolderParams) -> Result<f64> {
    InequalityId::I35.check_params(params)?;
    let (p, q) = (params.p(), params.q());
    let side = |s: &Sequence, p: f64, q: f64| {
        let c = 1.0 / (3.0 * q * (p - 1.0));
        let e = (p - 1.0) / p;
        let mut acc = NeumaierSum::new();
        for (i, &v) in s.values().iter().enumerate() {
            if v != 0.0 {
                let n = (i + 1) as f64;
                acc.add((1.0 - c / n.powf(e)) * n.powf(p - 2.0) * v.powf(p));
            }
        }
        acc.value()
    };
    Ok(p * q * side(a, p, q).powf(1.0 / p) * side(b, q, p).powf(1.0 / q))
}

fn sqrt_bracket_sum(s: &Sequence) -> f64 {
    let mut acc = NeumaierSum::new();
    for (i, &v) in s.values().iter().enumerate() {
        if v != 0.0 {
            let n = (i + 1) as f64;
            acc.add((1.0 - 1.0 / (6.0 * n.sqrt())) * v * v);
        }
    }
    acc.value()
}

/// `p = q = 2, lambda = 1`: `4 {sum [1 - 1/(6 sqrt n)] a^2}^(1/2) {..}^(1/2)`.
pub fn rhs_37(a: &Sequence, b: &Sequence, params: &HolderParams) -> Result<f64> {
    InequalityId::I37.check_params(params)?;
    Ok(4.0 * (sqrt_bracket_sum(a) * sqrt_bracket_sum(b)).sqrt())
}

/// Left side of the row forms: `sum_{n<=n_max} n^(p+lambda-3) r_n^p`.
pub fn lhs_32(a: &Sequence, params: &HolderParams, n_max: usize) -> f64 {
    let (p, lambda) = (params.p(), params.lambda());
    let mut acc = NeumaierSum::new();
    for (i, r) in kernel_row_sums(a, params, n_max).into_iter().enumerate() {
        let n = (i + 1) as f64;
        acc.add(n.powf(p + lambda - 3.0) * r.powf(p));
    }
    acc.value()
}

pub fn rhs_32(a: &Sequence, params: &HolderParams) -> Result<f64> {
    improved_row_rhs(a, params, Correction::Theorem)
}

pub fn rhs_34(a: &Sequence, params: &HolderParams) -> Result<f64> {
    improved_row_rhs(a, params, Correction::Weakened)
}

/// `(pq)^p sum [1 - 1/(3q(p-1) n^((p-1)/p))] n^(p-2) a^p`.
pub fn rhs_36(a: &Sequence, params: &HolderParams) -> Result<f64> {
    InequalityId::I36.check_params(params)?;
    let (p, q) = (params.p(), params.q());
    let c = 1.0 / (3.0 * q * (p - 1.0));
    let e = (p - 1.0) / p;
    let mut acc = NeumaierSum::new();
    for (i, &v) in a.values().iter().enumerate() {
        if v != 0.0 {
            let n = (i + 1) as f64;
            acc.add((1.0 - c / n.powf(e)) * n.powf(p - 2.0) * v.powf(p));
        }
    }
    Ok((p * q).powf(p) * acc.value())
}

/// `16 sum [1 - 1/(6 sqrt n)] a^2`.
pub fn rhs_38(a: &Sequence, params: &HolderParams) -> Result<f64> {
    InequalityId::I38.check_params(params)?;
    Ok(16.0 * sqrt_bracket_sum(a))
}

/// Row-form right side with the plain constant: `k^p sum n^((p-1)(2-lambda)-1) a^p`.
pub fn rhs_row_baseline(a: &Sequence, params: &HolderParams) -> f64 {
    params.k_lambda().powf(params.p()) * weighted_power_sum(a, params, |_| 1.0)
}

fn check_n_max(a: &Sequence, n_max: usize) -> Result<()> {
    if n_max < a.support() {
        return Err(Error::Parameter(format!(
            "n_max = {n_max} is below the support {} of {}",
            a.support(),
            a.label()
        )));
    }
    Ok(())
}

pub fn verify_31(a: &Sequence, b: &Sequence, params: &HolderParams) -> Result<VerificationReport> {
    let lhs = kernel_double_sum(a, b, params);
    let rhs = rhs_31(a, b, params)?;
    let base = rhs_yang13(a, b, params);
    Ok(VerificationReport::new(
        InequalityId::I31,
        lhs,
        rhs,
        base,
        params,
        a,
        Some(b),
        None,
    ))
}

pub fn verify_32(a: &Sequence, params: &HolderParams, n_max: usize) -> Result<VerificationReport> {
    check_n_max(a, n_max)?;
    let lhs = lhs_32(a, params, n_max);
    let rhs = rhs_32(a, params)?;
    let base = rhs_row_baseline(a, params);
    Ok(VerificationReport::new(
        InequalityId::I32,
        lhs,
        rhs,
        base,
        params,
        a,
        None,
        Some(n_max as u64),
    ))
}

/// Evaluates one inequality after checking its parameter family.
///
/// Row forms ignore `b`; bilinear forms require it.
pub fn verify(
    id: InequalityId,
    a: &Sequence,
    b: Option<&Sequence>,
    params: &HolderParams,
    n_max: usize,
) -> Result<VerificationReport> {
    id.check_params(params)?;
    if id.is_row_form() {
        check_n_max(a, n_max)?;
        let lhs = lhs_32(a, params, n_max);
        let rhs = match id {
            InequalityId::I32 => rhs_32(a, params)?,
            InequalityId::I34 => rhs_34(a, params)?,
            InequalityId::I36 => rhs_36(a, params)?,
            _ => rhs_38(a, params)?,
        };
        let base = rhs_row_baseline(a, params);
        return Ok(VerificationReport::new(
            id,
            lhs,
            rhs,
            base,
            params,
            a,
            None,
            Some(n_max as u64),
        ));
    }
    let b =
        b.ok_or_else(|| Error::Parameter(format!("inequality {id} needs a second sequence")))?;
    let lhs = kernel_double_sum(a, b, params);
    let base = rhs_yang13(a, b, params);
    let rhs = match id {
        InequalityId::I31 => rhs_31(a, b, params)?,
        InequalityId::I33 => rhs_33(a, b, params)?,
        InequalityId::I35 => rhs_35(a, b, params)?,
        InequalityId::I37 => rhs_37(a, b, params)?,
        _ => base,
    };
    Ok(VerificationReport::new(
        id,
        lhs,
        rhs,
        base,
        params,
        a,
        Some(b),
        None,
    ))
}

/// Reports for every corollary whose parameter family contains `params`.
///
/// Always includes the weakened forms; the `lambda = 1` and `p = q = 2`
/// specializations are added when they apply.
pub fn verify_corollaries(
    a: &Sequence,
    b: &Sequence,
    params: &HolderParams,
    n_max: usize,
) -> Result<Vec<VerificationReport>> {
    let r31 = rhs_31(a, b, params)?;
    let r33 = rhs_33(a, b, params)?;
    if r31 > r33 {
        return Err(Error::Invariant(format!(
            "weakened right side {r33} is below the theorem's {r31}"
        )));
    }
    InequalityId::ALL
        .into_iter()
        .filter(|id| {
            !matches!(
                id,
                InequalityId::I31 | InequalityId::I32 | InequalityId::Yang13
            ) && id.check_params(params).is_ok()
        })
        .map(|id| verify(id, a, Some(b), params, n_max))
        .collect()
}

/// Ratio of the bilinear form to the plain-constant right side on the
/// near-extremal family, next to `k_lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeResult {
    pub eps: f64,
    pub n_terms: usize,
    pub ratio: f64,
    pub constant: f64,
}

impl ProbeResult {
    pub fn gap(&self) -> f64 {
        self.constant - self.ratio
    }
}

/// `a_n = n^(-((p-1)(2-lambda)+eps)/p)`, so the weighted norm is `sum n^(-1-eps)`.
pub fn extremal_sequence(params: &HolderParams, eps: f64, n_terms: usize) -> Result<Sequence> {
    let p = params.p();
    let t = -((p - 1.0) * (2.0 - params.lambda()) + eps) / p;
    Sequence::labelled(
        (1..=n_terms).map(|n| (n as f64).powf(t)).collect(),
        format!("extremal:{eps}:{n_terms}"),
    )
}

pub const MIN_PROBE_TERMS: usize = 1000;

pub fn sharpness_probe(params: &HolderParams, eps: f64, n_terms: usize) -> Result<ProbeResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Parameter(format!(
            "eps = {eps} must be finite and positive"
        )));
    }
    if n_terms < MIN_PROBE_TERMS {
        return Err(Error::Parameter(format!(
            "n_terms = {n_terms} is below {MIN_PROBE_TERMS}"
        )));
    }
    let a = extremal_sequence(params, eps, n_terms)?;
    let b = extremal_sequence(&params.swapped(), eps, n_terms)?;
    let lhs = kernel_double_sum(&a, &b, params);
    let plain = rhs_yang13(&a, &b, params) / params.k_lambda();
    Ok(ProbeResult {
        eps,
        n_terms,
        ratio: lhs / plain,
        constant: params.k_lambda(),
    })
}
