//! Periodic anti-renormalization words over {A, B} and the bookkeeping of
//! jumps between consecutive sectors.
//!
//! A word is stored over one period; index arithmetic is taken mod the period
//! length, so `seq[-1]` is the last letter.

use std::fmt;

use crate::error::{Error, Result};
use crate::rotnum::return_times;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "A",
            Letter::B => "B",
        })
    }
}

/// A bi-infinite periodic word, stored over one period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicWord {
    letters: Vec<Letter>,
}

impl PeriodicWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidInput("word period is empty".into()));
        }
        Ok(PeriodicWord { letters })
    }

    pub fn period(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `seq[i]` for any integer `i`.
    pub fn at(&self, i: i64) -> Letter {
        self.letters[i.rem_euclid(self.letters.len() as i64) as usize]
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The `p/q` anti-renormalization word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PacWord {
    pub p: u64,
    pub q: u64,
    word: PeriodicWord,
}

impl PacWord {
    pub fn word(&self) -> &PeriodicWord {
        &self.word
    }

    pub fn at(&self, i: i64) -> Letter {
        self.word.at(i)
    }

    /// Checks the four defining constraints of the word directly.
    pub fn check_invariants(&self) -> bool {
        let (p, q) = (self.p as i64, self.q as i64);
        let s = &self.word;
        if s.period() as i64 != q {
            return false;
        }
        if s.at(0) != Letter::A || s.at(-1) != Letter::B {
            return false;
        }
        if s.at(-p - 1) != Letter::A || s.at(-p) != Letter::B {
            return false;
        }
        let skip = [(-p).rem_euclid(q), (-p - 1).rem_euclid(q)];
        (0..q)
            .filter(|j| !skip.contains(j))
            .all(|j| s.at(j + p) == s.at(j))
    }
}

/// Builds the unique `q`-periodic word with `seq[0] = A`, `seq[-1] = B`,
/// `seq[-p-1] = A`, `seq[-p] = B` and `seq[j+p] = seq[j]` elsewhere:
/// `seq[i p] = A` for `i < a` and `seq[-1 + i p] = B` for `i < b`.
pub fn build_seq(p: u64, q: u64) -> Result<PacWord> {
    let rt = return_times(p, q)?;
    let mut letters = vec![Letter::B; q as usize];
    for i in 0..rt.a {
        letters[((u128::from(i) * u128::from(p)) % u128::from(q)) as usize] = Letter::A;
    }
    Ok(PacWord {
        p,
        q,
        word: PeriodicWord { letters },
    })
}

/// Jump `ι(j)` determined by the pair `(seq[j-1], seq[j])`.
pub fn jump(word: &PeriodicWord, j: i64) -> i8 {
    match (word.at(j - 1), word.at(j)) {
        (Letter::A, Letter::A) => -1,
        (Letter::B, Letter::B) => 1,
        _ => 0,
    }
}

/// Signed jump counts `(ν, μ, κ)` at an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JumpCounts {
    pub nu: i64,
    pub mu: i64,
    pub kappa: i64,
}

/// Prefix tables of `ι` over one period, answering `(ν, μ, κ)(j)` in O(1).
#[derive(Clone, Debug)]
pub struct JumpStats {
    period: i64,
    /// `prefix[k]` holds the counts over `ι(1..=k)` for `0 <= k <= period`.
    prefix: Vec<[i64; 3]>,
}

fn slot(iota: i8) -> usize {
    match iota {
        1 => 0,
        -1 => 1,
        _ => 2,
    }
}

impl JumpStats {
    pub fn new(word: &PeriodicWord) -> Self {
        let period = word.period() as i64;
        let mut prefix = Vec::with_capacity(word.period() + 1);
        let mut acc = [0_i64; 3];
        prefix.push(acc);
        for k in 1..=period {
            acc[slot(jump(word, k))] += 1;
            prefix.push(acc);
        }
        JumpStats { period, prefix }
    }

    /// Counts over `ι(1..=n)` for `n >= 0`.
    fn forward(&self, n: i64) -> [i64; 3] {
        let (full, rem) = (n.div_euclid(self.period), n.rem_euclid(self.period));
        let per = self.prefix[self.period as usize];
        let part = self.prefix[rem as usize];
        [0, 1, 2].map(|i| full * per[i] + part[i])
    }

    /// Counts over `ι(lo..=hi)`.
    fn range(&self, lo: i64, hi: i64) -> [i64; 3] {
        // ι is periodic, so shift the range to start at 1.
        let shift = (lo - 1).div_euclid(self.period) * self.period;
        let (lo, hi) = (lo - shift, hi - shift);
        let upper = self.forward(hi);
        let lower = self.forward(lo - 1);
        [0, 1, 2].map(|i| upper[i] - lower[i])
    }

    /// `(ν, μ, κ)(j)`: counts of `ι = +1, -1, 0` over `1..=j` for `j > 0`,
    /// negated counts over `j+1..=0` for `j < 0`.
    pub fn at(&self, j: i64) -> JumpCounts {
        let c = match j.cmp(&0) {
            std::cmp::Ordering::Equal => [0; 3],
            std::cmp::Ordering::Greater => self.range(1, j),
            std::cmp::Ordering::Less => self.range(j + 1, 0).map(|x| -x),
        };
        JumpCounts {
            nu: c[0],
            mu: c[1],
            kappa: c[2],
        }
    }

    /// Number of zero jumps per period.
    pub fn zero_jumps_per_period(&self) -> i64 {
        self.prefix[self.period as usize][2]
    }
}

pub fn jump_stats(word: &PeriodicWord, j: i64) -> JumpCounts {
    JumpStats::new(word).at(j)
}

/// Jump from sector 0 to sector `k`, i.e. `ν(k) - μ(k)`.
pub fn total_jump(word: &PeriodicWord, k: i64) -> i64 {
    let c = jump_stats(word, k);
    c.nu - c.mu
}

/// A periodic word is mixed iff its period contains `(A, B)` or `(B, A)`.
pub fn is_mixed(word: &PeriodicWord) -> bool {
    (1..=word.period() as i64).any(|j| word.at(j - 1) != word.at(j))
}

/// Finite check that `κ(j) → ±∞` as `j → ±∞`: with `z` zero jumps per
/// period, `κ(h) >= z h / q - q` and `κ(-h) <= -(z h / q - q)`.
pub fn kappa_divergence_check(word: &PeriodicWord, horizon: i64) -> Result<bool> {
    let q = word.period() as i64;
    if horizon < q {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} is below the period {q}"
        )));
    }
    let stats = JumpStats::new(word);
    let z = stats.zero_jumps_per_period();
    if z == 0 {
        return Ok(false);
    }
    let bound = z * horizon / q - q;
    Ok(stats.at(horizon).kappa >= bound && stats.at(-horizon).kappa <= -bound)
}

/// The word obtained by reflecting indices `i ↦ -1 - i` and swapping
/// letters. Maps `seq(p, q)` to `seq(q - p, q)`.
pub fn dual_word(word: &PeriodicWord) -> PeriodicWord {
    let letters = (0..word.period() as i64)
        .map(|i| word.at(-1 - i).swap())
        .collect();
    PeriodicWord { letters }
}

/// All symmetries `seq'[i] = σ(seq[ε i + s])` (σ a letter permutation,
/// ε = ±1, s a shift) carrying `from` onto `to`, as `(ε, s, swapped)`.
pub fn word_symmetries(from: &PeriodicWord, to: &PeriodicWord) -> Vec<(i8, i64, bool)> {
    let q = from.period() as i64;
    if to.period() as i64 != q {
        return Vec::new();
    }
    let mut out = Vec::new();
    for eps in [1_i8, -1] {
        for s in 0..q {
            for swapped in [false, true] {
                let ok = (0..q).all(|i| {
                    let l = from.at(i64::from(eps) * i + s);
                    to.at(i) == if swapped { l.swap() } else { l }
                });
                if ok {
                    out.push((eps, s, swapped));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{A, B};

    fn w(letters: &[Letter]) -> PeriodicWord {
        PeriodicWord::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn printed_words() {
        assert_eq!(build_seq(1, 3).unwrap().word().letters(), &[A, A, B]);
        assert_eq!(build_seq(2, 3).unwrap().word().letters(), &[A, B, B]);
        assert_eq!(build_seq(2, 5).unwrap().word().letters(), &[A, B, A, B, B]);
        assert_eq!(build_seq(1, 3).unwrap().word().to_string(), "A A B");
        assert!(build_seq(2, 4).is_err());
        assert!(build_seq(1, 2).is_err());
    }

    #[test]
    fn jumps_on_aab() {
        let aab = w(&[A, A, B]);
        assert_eq!(jump(&aab, 1), -1);
        assert_eq!(jump(&aab, 2), 0);
        assert_eq!(jump(&aab, 3), 0);
        assert_eq!(
            jump_stats(&aab, 3),
            JumpCounts {
                nu: 0,
                mu: 1,
                kappa: 2
            }
        );
        assert_eq!(
            jump_stats(&aab, 0),
            JumpCounts {
                nu: 0,
                mu: 0,
                kappa: 0
            }
        );
        assert_eq!(
            jump_stats(&aab, -3),
            JumpCounts {
                nu: 0,
                mu: -1,
                kappa: -2
            }
        );
        assert_eq!(total_jump(&aab, 3), -1);
        assert_eq!(total_jump(&w(&[A, B, B]), 3), 1);
        assert_eq!(total_jump(&aab, 0), 0);
    }

    #[test]
    fn stats_match_direct_count() {
        let word = build_seq(5, 13).unwrap().word().clone();
        let stats = JumpStats::new(&word);
        for j in -40_i64..=40 {
            let (lo, hi, sign) = if j > 0 { (1, j, 1) } else { (j + 1, 0, -1) };
            let mut c = [0_i64; 3];
            if j != 0 {
                for k in lo..=hi {
                    c[slot(jump(&word, k))] += sign;
                }
            }
            assert_eq!(
                stats.at(j),
                JumpCounts {
                    nu: c[0],
                    mu: c[1],
                    kappa: c[2]
                },
                "j = {j}"
            );
        }
    }

    #[test]
    fn mixing_and_kappa() {
        assert!(is_mixed(&w(&[A, A, B])));
        assert!(is_mixed(&w(&[A, B])));
        assert!(!is_mixed(&w(&[A, A, A])));
        assert!(kappa_divergence_check(&w(&[A, A, B]), 300).unwrap());
        assert_eq!(jump_stats(&w(&[A, A, B]), 300).kappa, 200);
        assert!(!kappa_divergence_check(&w(&[A, A, A]), 300).unwrap());
        assert_eq!(jump_stats(&w(&[A, B, B]), 3).kappa, 2);
        assert!(kappa_divergence_check(&w(&[A, B, B]), 2).is_err());
    }

    #[test]
    fn duality_small_cases() {
        let s13 = build_seq(1, 3).unwrap();
        assert_eq!(&dual_word(s13.word()), build_seq(2, 3).unwrap().word());
        let s25 = build_seq(2, 5).unwrap();
        assert_eq!(&dual_word(s25.word()), build_seq(3, 5).unwrap().word());
    }
}
