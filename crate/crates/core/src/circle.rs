//! Brute-force rigid rotation `x ↦ x + θ (mod 1)` on the circle.
//!
//! This module is the independent oracle for the renormalization calculus in
//! [`crate::rotnum`]: it finds first-return maps to sectors by scanning
//! orbits, and extracts the induced rotation number from the cyclic order of
//! return points rather than from any gluing map.

use crate::error::{Error, Result};
use crate::rotnum::{convergents, return_times, RotationNumber};

/// Largest orbit length the floating-point irrational path is trusted for.
pub const MAX_ORBIT_LEN: u64 = 100_000;

/// Rotation by θ with exact arithmetic for rationals.
#[derive(Clone, Copy, Debug)]
enum Rotation {
    Exact { p: u64, q: u64 },
    Float(f64),
}

impl Rotation {
    fn new(theta: &RotationNumber) -> Self {
        match theta {
            RotationNumber::Rational(f) => Rotation::Exact {
                p: f.num(),
                q: f.den(),
            },
            RotationNumber::Quadratic(_) => Rotation::Float(theta.to_f64()),
        }
    }

    /// frac(k θ)
    fn multiple(self, k: u64) -> f64 {
        match self {
            Rotation::Exact { p, q } => ((u128::from(k) * u128::from(p)) % u128::from(q)) as f64 / q as f64,
            Rotation::Float(t) => frac(k as f64 * t),
        }
    }

    /// frac(-k θ)
    fn neg_multiple(self, k: u64) -> f64 {
        match self {
            Rotation::Exact { p, q } => {
                let r = (u128::from(k) * u128::from(p)) % u128::from(q);
                ((u128::from(q) - r) % u128::from(q)) as f64 / q as f64
            }
            Rotation::Float(t) => frac(-(k as f64) * t),
        }
    }
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// A closed-open arc `[start, start + length)` of the circle ℝ/ℤ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    start: f64,
    length: f64,
}

impl Arc {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length < 1.0) || !start.is_finite() {
            return Err(Error::InvalidInput(format!(
                "arc length {length} must lie in (0, 1)"
            )));
        }
        Ok(Arc {
            start: frac(start),
            length,
        })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Position of `x` measured from the arc start, in [0, 1).
    pub fn offset(&self, x: f64) -> f64 {
        frac(x - self.start)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.offset(x) < self.length
    }
}

/// `x0 + kθ mod 1` for `k = 0..n`.
pub fn rotation_orbit(theta: &RotationNumber, n: usize, x0: f64) -> Vec<f64> {
    let rot = Rotation::new(theta);
    (0..n as u64).map(|k| frac(x0 + rot.multiple(k))).collect()
}

/// The smaller sector between the base ray at angle 0 and its image at θ.
/// Its angle is θ for θ ≤ 1/2 and 1 - θ otherwise.
pub fn fundamental_sector(theta: &RotationNumber) -> Result<Arc> {
    if theta.is_zero() {
        return Err(Error::InvalidInput("θ = 0 has no fundamental sector".into()));
    }
    match theta {
        RotationNumber::Rational(f) => {
            let (p, q) = (f.num(), f.den());
            if 2 * p <= q {
                Arc::new(0.0, p as f64 / q as f64)
            } else {
                Arc::new(p as f64 / q as f64, (q - p) as f64 / q as f64)
            }
        }
        RotationNumber::Quadratic(_) => {
            let t = theta.to_f64();
            if t <= 0.5 {
                Arc::new(0.0, t)
            } else {
                Arc::new(t, 1.0 - t)
            }
        }
    }
}

/// The arc `[0, 2/q)` made of two adjacent atoms of the `p/q` cycle. Its
/// first return has exactly the renormalization return times `(a, b)`.
pub fn two_atom_sector(p: u64, q: u64) -> Result<Arc> {
    return_times(p, q)?;
    Arc::new(0.0, 2.0 / q as f64)
}

/// A maximal sub-arc on which the first return time is constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReturnBranch {
    /// Offsets from the sector start.
    pub from: f64,
    pub to: f64,
    pub time: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstReturnData {
    pub sector: Arc,
    /// `(a, b)`: `a` is the return time on the branch at the far end of the
    /// sector, `b` the time on the branch at its start. Equal when the
    /// return map has a single branch.
    pub times: (u64, u64),
    /// Interior division point between the two branches (absolute angle);
    /// the sector end when one branch is degenerate.
    pub cut: f64,
    /// Branches in arc order.
    pub branches: Vec<ReturnBranch>,
    /// Indices `k < a + b` of the base-point orbit sorted by position from
    /// the sector start.
    pub order: Vec<usize>,
}

impl FirstReturnData {
    pub fn times_sorted(&self) -> (u64, u64) {
        let (a, b) = self.times;
        (a.min(b), a.max(b))
    }

    pub fn is_degenerate(&self) -> bool {
        self.branches.len() == 1
    }
}

fn return_time(rot: Rotation, sector: &Arc, offset: f64, limit: u64) -> Option<u64> {
    (1..=limit).find(|&k| frac(offset + rot.multiple(k)) < sector.length)
}

/// First-return map of the rotation to `sector`, found by scanning.
///
/// The return time is constant between consecutive points of the form
/// `-kθ` and `ω - kθ` (offsets that land on a sector endpoint at time k), so
/// those are the candidate cuts.
pub fn first_return(theta: &RotationNumber, sector: &Arc) -> Result<FirstReturnData> {
    if theta.is_zero() {
        return Err(Error::InvalidInput("θ = 0 never returns".into()));
    }
    let rot = Rotation::new(theta);
    let omega = sector.length;
    let scan_limit = MAX_ORBIT_LEN * 10;
    let mut horizon = (2.0 / omega).ceil() as u64 + 2;

    let branches = loop {
        let mut cuts = vec![0.0, omega];
        for k in 1..=horizon {
            for c in [rot.neg_multiple(k), frac(omega + rot.neg_multiple(k))] {
                if c > 0.0 && c < omega {
                    cuts.push(c);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

        let mut branches: Vec<ReturnBranch> = Vec::new();
        let mut max_time = 0;
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let time = return_time(rot, sector, mid, scan_limit)
                .ok_or_else(|| Error::Inconclusive(format!("no return within {scan_limit} steps")))?;
            max_time = max_time.max(time);
            match branches.last_mut() {
                Some(last) if last.time == time => last.to = w[1],
                _ => branches.push(ReturnBranch {
                    from: w[0],
                    to: w[1],
                    time,
                }),
            }
        }
        if max_time <= horizon {
            break branches;
        }
        horizon = max_time;
    };

    if branches.len() > 2 {
        return Err(Error::TooManyBranches {
            branches: branches.len(),
        });
    }
    let first = branches[0];
    let last = *branches.last().expect("at least one branch");
    let cut = if branches.len() == 2 {
        frac(sector.start + first.to)
    } else {
        frac(sector.start + omega)
    };
    let n = (first.time + last.time) as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| rot.multiple(i as u64).total_cmp(&rot.multiple(j as u64)));
    Ok(FirstReturnData {
        sector: *sector,
        times: (last.time, first.time),
        cut,
        branches,
        order,
    })
}

/// Result of the combinatorial induced-rotation oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InducedRotation {
    /// The induced rotation number lies in `[lower, upper]`.
    pub lower: f64,
    pub upper: f64,
    /// Simplest fraction in `[lower, upper]`.
    pub best: (u64, u64),
    pub returns: usize,
}

impl InducedRotation {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }
}

/// Simplest fraction (smallest denominator) in the closed interval
/// `[lo, hi]` within [0, 1], by Stern–Brocot descent.
fn simplest_in(lo: f64, hi: f64) -> (u64, u64) {
    if lo <= 0.0 {
        return (0, 1);
    }
    if hi >= 1.0 {
        return (1, 1);
    }
    let (mut ln, mut ld, mut rn, mut rd) = (0_u64, 1_u64, 1_u64, 1_u64);
    loop {
        let (mn, md) = (ln + rn, ld + rd);
        let m = mn as f64 / md as f64;
        if m < lo {
            ln = mn;
            ld = md;
        } else if m > hi {
            rn = mn;
            rd = md;
        } else {
            return (mn, md);
        }
    }
}

/// Rotation number of the first return to the fundamental sector, read off
/// from the order of the first `q_probe` return points.
///
/// Starting at the sector's start point, the rescaled return positions are
/// `y_n = frac(nρ)`, so the number of wraps `w_n` among the first `n`
/// returns equals `floor(nρ)` and confines ρ to `[w_n/n, (w_n+1)/n)`.
pub fn induced_rotation_number(theta: &RotationNumber, q_probe: usize) -> Result<InducedRotation> {
    if q_probe < 2 {
        return Err(Error::Inconclusive(format!("q_probe = {q_probe} is too small")));
    }
    let sector = fundamental_sector(theta)?;
    let rot = Rotation::new(theta);
    let omega = sector.length;
    let mut lower: f64 = 0.0;
    let mut upper: f64 = 1.0;
    let mut prev = 0.0;
    let mut wraps = 0_u64;
    let mut returns = 0_usize;
    let mut k = 0_u64;
    let step_cap = MAX_ORBIT_LEN * 10;
    while returns < q_probe {
        k += 1;
        if k > step_cap {
            return Err(Error::Inconclusive(format!(
                "only {returns} returns within {step_cap} steps"
            )));
        }
        let u = rot.multiple(k);
        if u < omega {
            let y = u / omega;
            if y < prev {
                wraps += 1;
            }
            prev = y;
            returns += 1;
            let n = returns as f64;
            lower = lower.max(wraps as f64 / n);
            upper = upper.min((wraps + 1) as f64 / n);
        }
    }
    Ok(InducedRotation {
        lower,
        upper,
        best: simplest_in(lower, upper),
        returns,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriangulationStats {
    pub q: u64,
    pub min_arc: f64,
    pub max_arc: f64,
    pub ratio: f64,
    /// Number of distinct arc lengths, up to an absolute tolerance of 1e-10.
    pub distinct_lengths: usize,
}

/// Arcs cut out by `{kθ : 0 <= k < q}` where `p/q` is a convergent of θ
/// (or θ itself when θ = p/q).
pub fn triangulation_stats(theta: &RotationNumber, p: u64, q: u64) -> Result<TriangulationStats> {
    match theta {
        RotationNumber::Rational(f) => {
            if (f.num(), f.den()) != (p, q) {
                return Err(Error::InvalidInput(format!("{p}/{q} is not {theta}")));
            }
        }
        RotationNumber::Quadratic(_) => {
            if q > MAX_ORBIT_LEN {
                return Err(Error::InvalidInput(format!(
                    "q = {q} exceeds the orbit precision budget {MAX_ORBIT_LEN}"
                )));
            }
            if !convergents(theta, q)?.iter().any(|c| c.p == p && c.q == q) {
                return Err(Error::InvalidInput(format!(
                    "{p}/{q} is not a convergent of {theta}"
                )));
            }
        }
    }
    let rot = Rotation::new(theta);
    let mut pts: Vec<f64> = (0..q).map(|k| rot.multiple(k)).collect();
    pts.sort_by(f64::total_cmp);
    let mut arcs: Vec<f64> = pts.windows(2).map(|w| w[1] - w[0]).collect();
    arcs.push(1.0 - pts[pts.len() - 1] + pts[0]);
    let min_arc = arcs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_arc = arcs.iter().copied().fold(0.0, f64::max);
    arcs.sort_by(f64::total_cmp);
    let mut distinct = 1;
    for w in arcs.windows(2) {
        if w[1] - w[0] > 1e-10 {
            distinct += 1;
        }
    }
    Ok(TriangulationStats {
        q,
        min_arc,
        max_arc,
        ratio: max_arc / min_arc,
        distinct_lengths: distinct,
    })
}

/// Triangulation statistics for every convergent with `q_n <= q_max`.
pub fn triangulation_table(theta: &RotationNumber, q_max: u64) -> Result<Vec<TriangulationStats>> {
    convergents(theta, q_max.min(MAX_ORBIT_LEN))?
        .iter()
        .map(|c| triangulation_stats(theta, c.p, c.q))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    /// Row number, starting at 1.
    pub n: usize,
    pub p: u64,
    pub q: u64,
    pub a: u64,
    pub b: u64,
}

/// Return times `(a_n, b_n)` at the first `n_max` convergents with `q_n >= 3`.
pub fn return_time_growth(theta: &RotationNumber, n_max: usize) -> Result<Vec<GrowthRow>> {
    if theta.is_rational() {
        return Err(Error::RationalNotAllowed(theta.to_string()));
    }
    let mut rows = Vec::with_capacity(n_max);
    for c in convergents(theta, u64::MAX)?.into_iter().filter(|c| c.q >= 3) {
        if rows.len() == n_max {
            break;
        }
        let rt = return_times(c.p, c.q)?;
        rows.push(GrowthRow {
            n: rows.len() + 1,
            p: c.p,
            q: c.q,
            a: rt.a,
            b: rt.b,
        });
    }
    Ok(rows)
}

/// Exponential growth rates of `a_n` and `b_n` per row, estimated from the
/// last row against the row `lag` rows earlier.
pub fn growth_exponents(rows: &[GrowthRow], lag: usize) -> Option<(f64, f64)> {
    if lag == 0 || rows.len() <= lag {
        return None;
    }
    let last = rows[rows.len() - 1];
    let early = rows[rows.len() - 1 - lag];
    let rate = |x: u64, y: u64| ((x as f64).ln() - (y as f64).ln()) / lag as f64;
    Some((rate(last.a, early.a), rate(last.b, early.b)))
}
