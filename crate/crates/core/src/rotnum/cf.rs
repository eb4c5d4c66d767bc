//! Eventually periodic continued fractions `[0; a1, a2, ..., (b1, ..., bk)]`.

use crate::error::{Error, Result};

/// Depth at which infinite expansions are truncated for floating-point
/// evaluation. For bounded type the truncation error is far below 2^-64.
pub const EVAL_DEPTH: usize = 64;

/// Coefficients `a1, a2, ...` (all positive) of a number in (0, 1), stored as
/// a preperiod followed by a repeating block.
///
/// The representation is kept canonical: the period is primitive and the
/// preperiod is as short as possible, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCf {
    pre: Vec<u32>,
    period: Vec<u32>,
}

impl PeriodicCf {
    pub fn new(pre: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("continued fraction period is empty".into()));
        }
        if pre.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidInput(
                "continued fraction coefficients must be positive".into(),
            ));
        }
        let mut cf = PeriodicCf { pre, period };
        cf.canonicalize();
        Ok(cf)
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.pre
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(d) =
            (1..n).find(|&d| n.is_multiple_of(d) && (d..n).all(|i| self.period[i] == self.period[i - d]))
        {
            self.period.truncate(d);
        }
        while let (Some(&last_pre), Some(&last_per)) = (self.pre.last(), self.period.last()) {
            if last_pre != last_per {
                break;
            }
            self.pre.pop();
            self.period.rotate_right(1);
        }
    }

    /// Coefficient `a_{i+1}` (zero-based index into the tail).
    pub fn term(&self, i: usize) -> u32 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn first(&self) -> u32 {
        self.term(0)
    }

    /// Infinite iterator over `a1, a2, ...`.
    pub fn terms(&self) -> impl Iterator<Item = u32> + '_ {
        (0..).map(move |i| self.term(i))
    }

    /// Shift: `[0; a1, a2, ...]` to `[0; a2, a3, ...]`.
    pub fn drop_first(&self) -> Self {
        let mut cf = if self.pre.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            PeriodicCf {
                pre: Vec::new(),
                period,
            }
        } else {
            PeriodicCf {
                pre: self.pre[1..].to_vec(),
                period: self.period.clone(),
            }
        };
        cf.canonicalize();
        cf
    }

    /// Replaces `a1` by `value` (which must be positive).
    pub fn with_first(&self, value: u32) -> Self {
        debug_assert!(value > 0);
        let mut cf = if self.pre.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            PeriodicCf {
                pre: vec![value],
                period,
            }
        } else {
            let mut pre = self.pre.clone();
            pre[0] = value;
            PeriodicCf {
                pre,
                period: self.period.clone(),
            }
        };
        cf.canonicalize();
        cf
    }

    pub fn prepend(&self, head: &[u32]) -> Self {
        let mut pre = head.to_vec();
        pre.extend_from_slice(&self.pre);
        let mut cf = PeriodicCf {
            pre,
            period: self.period.clone(),
        };
        cf.canonicalize();
        cf
    }

    /// Expansion of `1 - x`:
    /// `1 - [0; a1, ...] = [0; 1, a1 - 1, a2, ...]` when `a1 >= 2`, and
    /// `1 - [0; 1, a2, a3, ...] = [0; a2 + 1, a3, ...]`.
    pub fn complement(&self) -> Self {
        let a1 = self.first();
        if a1 >= 2 {
            self.drop_first().prepend(&[1, a1 - 1])
        } else {
            let a2 = self.term(1);
            self.drop_first().drop_first().prepend(&[a2 + 1])
        }
    }

    pub fn max_coefficient(&self) -> u32 {
        self.pre.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    /// Backward evaluation of the first [`EVAL_DEPTH`] coefficients.
    pub fn to_f64(&self) -> f64 {
        let mut x = 0.0_f64;
        for i in (0..EVAL_DEPTH).rev() {
            x = 1.0 / (f64::from(self.term(i)) + x);
        }
        x
    }
}

/// Continued-fraction coefficients `[a1, ..., ak]` of `num/den` in (0, 1),
/// canonical (last coefficient at least 2 unless the value is 1/1).
pub fn rational_terms(mut num: u64, mut den: u64) -> Vec<u32> {
    let mut terms = Vec::new();
    // value = num/den < 1; the leading integer part is zero.
    while num != 0 {
        let a = den / num;
        terms.push(u32::try_from(a).expect("continued fraction coefficient exceeds u32"));
        let r = den % num;
        den = num;
        num = r;
    }
    terms
}

/// Evaluates `[0; a1, ..., ak]` exactly as a reduced fraction.
pub fn eval_finite(terms: &[u32]) -> (u64, u64) {
    // Continuants from the tail: value = num/den.
    let (mut num, mut den) = (0_u64, 1_u64);
    for &a in terms.iter().rev() {
        // 1 / (a + num/den) = den / (a*den + num)
        let new_den = u64::from(a) * den + num;
        num = den;
        den = new_den;
    }
    (num, den)
}
