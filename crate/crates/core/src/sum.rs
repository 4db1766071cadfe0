use std::ops::AddAssign;

/// Kahan-Babuska (Neumaier) compensated accumulator.
///
/// Also tracks the sum of absolute values of everything added, which the
/// interval code uses to size rounding slack.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Sum of |x| over all accumulated terms.
    #[inline]
    pub fn abs_sum(&self) -> f64 {
        self.abs
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum in iteration order.
pub fn neumaier(iter: impl IntoIterator<Item = f64>) -> f64 {
    iter.into_iter().collect::<NeumaierSum>().value()
}
