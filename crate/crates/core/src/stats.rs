//! Exact integer accumulation for sample statistics.
//!
//! Sums are kept as integers so that merging partial results in any order
//! yields bit-identical means and deviations.

/// Running count, sum and sum of squares of non-negative integer samples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Accumulator {
    count: u64,
    sum: u64,
    sum_sq: u128,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += (x as u128) * (x as u128);
    }

    pub fn merge(mut self, other: Accumulator) -> Accumulator {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn summary(&self) -> Option<Summary> {
        if self.count == 0 {
            return None;
        }
        let n = self.count as f64;
        let mean = self.sum as f64 / n;
        let std = if self.count < 2 {
            0.0
        } else {
            // n * sum_sq - sum^2 is exact in integers.
            let num = (self.count as u128) * self.sum_sq - (self.sum as u128) * (self.sum as u128);
            libm::sqrt(num as f64 / (n * (n - 1.0)))
        };
        Some(Summary {
            mean,
            std,
            samples: self.count,
        })
    }
}

impl FromIterator<u64> for Accumulator {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut acc = Accumulator::new();
        for x in iter {
            acc.push(x);
        }
        acc
    }
}

/// Mean and sample standard deviation (n - 1 denominator; 0 for one sample).
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub samples: u64,
}

impl Summary {
    pub fn std_error(&self) -> f64 {
        self.std / libm::sqrt(self.samples as f64)
    }
}
