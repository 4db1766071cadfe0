//! Exact Bernoulli numbers and generalized binomial coefficients.
//!
//! Bernoulli numbers are kept as reduced big rationals and only rounded to
//! `f64` where a remainder term consumes them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Largest Bernoulli index the table builder accepts.
pub const MAX_BERNOULLI_INDEX: usize = 200;

/// `B_0..=B_n` as exact rationals (convention `B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Result<Self> {
        bernoulli_table(max_index)
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    /// `B_n` rounded to the nearest double.
    pub fn get_f64(&self, n: usize) -> Option<f64> {
        self.values.get(n).and_then(|b| b.to_f64())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Builds `B_0..=B_max_index` from `sum_{j=0}^{n} C(n+1, j) B_j = 0`, `B_0 = 1`.
pub fn bernoulli_table(max_index: usize) -> Result<BernoulliTable> {
    if max_index > MAX_BERNOULLI_INDEX {
        return Err(Error::Parameter(format!(
            "Bernoulli index {max_index} exceeds cap {MAX_BERNOULLI_INDEX}"
        )));
    }
    let mut values: Vec<Rational> = Vec::with_capacity(max_index + 1);
    values.push(Rational::one());
    // Pascal row C(n+1, .), advanced one row per index.
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for n in 1..=max_index {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;

        let mut acc = Rational::zero();
        for (j, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(row[j].clone());
            }
        }
        let bn = -acc / Rational::from_integer(BigInt::from(n + 1));
        values.push(bn);
    }
    Ok(BernoulliTable { values })
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Double-double product of `(ah + al) * (bh + bl)`.
#[inline]
fn dd_mul((ah, al): (f64, f64), (bh, bl): (f64, f64)) -> (f64, f64) {
    let (p, e) = two_prod(ah, bh);
    let e = e + (ah * bl + al * bh);
    two_sum(p, e)
}

fn exact_integer_binomial(alpha: i128, k: u32) -> Option<f64> {
    let mut c: i128 = 1;
    for j in 0..k as i128 {
        c = c.checked_mul(alpha - j)? / (j + 1);
    }
    Some(c as f64)
}

/// Generalized binomial coefficient `alpha (alpha-1) ... (alpha-k+1) / k!`.
///
/// Integer `alpha` is evaluated exactly in integer arithmetic while the
/// result fits; otherwise numerator and denominator are accumulated as
/// double-double products in ascending `j` and divided once at the end.
pub fn gen_binomial(alpha: f64, k: u32) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::NonFinite("gen_binomial alpha"));
    }
    if k == 0 {
        return Ok(1.0);
    }
    if alpha.fract() == 0.0 && alpha.abs() <= 9.007_199_254_740_992e15 {
        if let Some(v) = exact_integer_binomial(alpha as i128, k) {
            return Ok(v);
        }
    }
    let mut num = (1.0, 0.0);
    let mut den = (1.0, 0.0);
    for j in 0..k {
        num = dd_mul(num, two_sum(alpha, -(j as f64)));
        den = dd_mul(den, (f64::from(j + 1), 0.0));
    }
    let q = num.0 / den.0;
    let r = (-q).mul_add(den.0, num.0);
    let corr = (r + num.1 - q * den.1) / den.0;
    Ok(q + corr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_bernoulli_numbers() {
        let t = bernoulli_table(4).unwrap();
        assert_eq!(
            t.values(),
            &[r(1, 1), r(-1, 2), r(1, 6), r(0, 1), r(-1, 30)]
        );
    }

    #[test]
    fn base_case() {
        let t = bernoulli_table(0).unwrap();
        assert_eq!(t.values(), &[r(1, 1)]);
    }

    #[test]
    fn cap_enforced() {
        assert!(bernoulli_table(MAX_BERNOULLI_INDEX).is_ok());
        assert!(matches!(bernoulli_table(201), Err(Error::Parameter(_))));
    }

    #[test]
    fn odd_entries_vanish() {
        let t = bernoulli_table(61).unwrap();
        for k in 1..=30 {
            assert!(t.get(2 * k + 1).unwrap().is_zero(), "B_{}", 2 * k + 1);
        }
    }

    #[test]
    fn b16_and_b20() {
        let t = bernoulli_table(20).unwrap();
        assert_eq!(t.get(16).unwrap(), &r(-3617, 510));
        assert_eq!(t.get(20).unwrap(), &r(-174611, 330));
        assert_eq!(t.get_f64(2), Some(1.0 / 6.0));
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(gen_binomial(3.7, 0).unwrap(), 1.0);
        assert_eq!(gen_binomial(-2.0, 1).unwrap(), -2.0);
        assert_eq!(gen_binomial(-0.5, 3).unwrap(), -0.3125);
        assert_eq!(gen_binomial(-2.0, 3).unwrap(), -4.0);
        assert!(gen_binomial(f64::NAN, 2).is_err());
        assert!(gen_binomial(f64::INFINITY, 2).is_err());
    }

    #[test]
    fn integer_binomials_exact() {
        for m in 0..=60u32 {
            let mut c: u128 = 1;
            for k in 0..=m {
                assert_eq!(
                    gen_binomial(f64::from(m), k).unwrap(),
                    c as f64,
                    "C({m},{k})"
                );
                c = c * u128::from(m - k) / u128::from(k + 1);
            }
            // Past the top the product hits the zero factor.
            assert_eq!(gen_binomial(f64::from(m), m + 1).unwrap(), 0.0);
        }
    }
}
