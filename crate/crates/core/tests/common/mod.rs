//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the Euler-Maclaurin or prefix-sum code paths.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Bernoulli numbers via the Akiyama-Tanigawa transform (gives `B_1 = +1/2`,
/// so the sign of index 1 is flipped to match the `-1/2` convention).
pub fn bernoulli_akiyama_tanigawa(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(BigRational::new(BigInt::from(1), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let d = &row[j - 1] - &row[j];
            row[j - 1] = d * BigRational::from_integer(BigInt::from(j));
        }
        out.push(row[0].clone());
    }
    if n >= 1 {
        out[1] = -out[1].abs();
    }
    out
}

/// O(N^2) double loop over `a_m b_n / max(m, n)^lambda`.
pub fn naive_double_sum(a: &[f64], b: &[f64], lambda: f64) -> f64 {
    let mut total = 0.0;
    let mut comp = 0.0;
    for (i, &am) in a.iter().enumerate() {
        for (j, &bn) in b.iter().enumerate() {
            let k = (i.max(j) + 1) as f64;
            let t = am * bn / k.powf(lambda);
            let s = total + t;
            comp += if f64::abs(total) >= t.abs() {
                (total - s) + t
            } else {
                (t - s) + total
            };
            total = s;
        }
    }
    total + comp
}

/// Plain `[lo, hi]` pair so the oracle does not share the library's interval type.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

struct Acc {
    s: f64,
    c: f64,
    abs: f64,
}

impl Acc {
    fn new() -> Self {
        Acc {
            s: 0.0,
            c: 0.0,
            abs: 0.0,
        }
    }
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        self.c += if self.s.abs() >= x.abs() {
            (self.s - t) + x
        } else {
            (x - t) + self.s
        };
        self.s = t;
        self.abs += x.abs();
    }
    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Direct summation of `omega(m) = sum_n (m/n)^rho / max(m,n)^lambda` over
/// `n <= n_terms`, plus the integral-test bracket for `n > n_terms`.
///
/// Returns brackets for `m = 1..=m_max`. For `n > m` the kernel term equals
/// `m^rho n^-s`; the sums of `n^-s` are accumulated once, from the top down.
pub fn direct_weight_oracle(p: f64, lambda: f64, m_max: usize, n_terms: usize) -> Vec<Bracket> {
    let q = p / (p - 1.0);
    let rho = (2.0 - lambda) / p;
    let s = 2.0 / p + lambda / q;
    let u = f64::EPSILON;

    // suffix[m] = sum_{n = m+1}^{n_terms} n^-s for m <= m_max
    let mut suffix = vec![(0.0, 0.0); m_max + 1];
    let mut acc = Acc::new();
    for n in (1..=n_terms).rev() {
        if n <= m_max {
            suffix[n] = (acc.value(), acc.abs);
        }
        acc.add((n as f64).powf(-s));
    }

    let big = (n_terms + 1) as f64;
    let integral = big.powf(1.0 - s) / (s - 1.0);
    let first = big.powf(-s);

    (1..=m_max)
        .map(|m| {
            let mf = m as f64;
            let mut head = Acc::new();
            for n in 1..=m {
                head.add((mf / n as f64).powf(rho) / mf.powf(lambda));
            }
            let scale = mf.powf(rho);
            let (mid, mid_abs) = suffix[m];
            let center = head.value() + scale * mid;
            let slack = 8.0 * u * (head.abs + scale * mid_abs + center.abs())
                + scale * (integral + first) * 8.0 * u;
            Bracket {
                lo: center + scale * integral - slack,
                hi: center + scale * (integral + first) + slack,
            }
        })
        .collect()
}

/// Deterministic stream for picking test inputs (not the library generator).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

pub fn is_zero(x: &BigRational) -> bool {
    x.is_zero()
}
