//! Centers of satellite components: Newton on `c ↦ f_c^q(0)` and a
//! grid-search oracle.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{cardioid_normal, satellite_root, ParamPoint, PointRole};
use crate::error::{Error, Result};
use crate::raster::map_indices;

pub const NEWTON_MAX_STEPS: usize = 200;
/// Target for `|f_c^q(0)|` at a center.
pub const RESIDUAL_TOL: f64 = 1e-13;
/// Minimum `|f_c^d(0)|` for every proper divisor `d` of the period.
pub const DIVISOR_TOL: f64 = 1e-6;
pub const BRUTEFORCE_MAX_Q: u32 = 12;
pub const BRUTEFORCE_STEP: f64 = 1e-3;
pub const BRUTEFORCE_THRESHOLD: f64 = 0.1;

/// `f_c^n(0)` and its derivative with respect to `c`.
pub fn critical_value(c: Complex64, n: u32) -> (Complex64, Complex64) {
    let mut z = Complex64::new(0.0, 0.0);
    let mut dz = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        dz = 2.0 * z * dz + 1.0;
        z = z * z + c;
    }
    (z, dz)
}

pub(crate) fn check_coprime(p: u32, q: u32) -> Result<()> {
    if q < 2 || p == 0 || p >= q {
        return Err(Error::InvalidInput(format!(
            "{p}/{q} must satisfy 1 <= p < q, q >= 2"
        )));
    }
    let (mut a, mut b) = (p, q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a != 1 {
        return Err(Error::InvalidInput(format!("{p} and {q} are not coprime")));
    }
    Ok(())
}

/// Outcome of the Newton iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOutcome {
    pub c: Complex64,
    pub residual: f64,
    pub steps: usize,
}

/// Newton on `c ↦ f_c^q(0)`. Stops when the residual is below
/// [`RESIDUAL_TOL`] or the step has shrunk to rounding level; for large `q`
/// the derivative is so large that the residual floor of binary64 sits above
/// [`RESIDUAL_TOL`] while the root itself is resolved to full precision.
pub fn newton_center(q: u32, seed: Complex64) -> Result<NewtonOutcome> {
    let mut c = seed;
    let mut residual = f64::INFINITY;
    for step in 1..=NEWTON_MAX_STEPS {
        let (g, dg) = critical_value(c, q);
        residual = g.norm();
        if !residual.is_finite() || dg.norm() == 0.0 || !dg.norm().is_finite() {
            break;
        }
        let delta = g / dg;
        c -= delta;
        if residual < RESIDUAL_TOL || delta.norm() <= 1e-14 * c.norm().max(1.0) {
            let (g, _) = critical_value(c, q);
            return Ok(NewtonOutcome {
                c,
                residual: g.norm().min(residual),
                steps: step,
            });
        }
    }
    Err(Error::NonConvergence {
        steps: NEWTON_MAX_STEPS,
        residual,
    })
}

fn proper_divisors(q: u32) -> impl Iterator<Item = u32> {
    (1..q).filter(move |d| q.is_multiple_of(*d))
}

/// Fails with [`Error::WrongPeriod`] if `f_c^d(0)` nearly vanishes for a
/// proper divisor `d` of `q`.
pub fn divisor_test(c: Complex64, q: u32) -> Result<()> {
    for d in proper_divisors(q) {
        let r = critical_value(c, d).0.norm();
        if r <= DIVISOR_TOL {
            return Err(Error::WrongPeriod {
                period: q,
                divisor: d,
                residual: r,
            });
        }
    }
    Ok(())
}

/// The α fixed point `(1 - sqrt(1 - 4c)) / 2`; on the cardioid closure its
/// multiplier is `e^{2πiθ}`.
pub fn alpha_fixed_point(c: Complex64) -> Complex64 {
    (1.0 - (1.0 - 4.0 * c).sqrt()) / 2.0
}

/// Multiplier `2α` of the α fixed point.
pub fn fixed_point_multiplier(c: Complex64) -> Complex64 {
    2.0 * alpha_fixed_point(c)
}

/// Combinatorial rotation number of the critical `q`-cycle around α: the
/// constant shift `s` such that `f` moves each cycle point `s` places
/// counterclockwise in the angular order about α. `None` if the shift is not
/// constant.
pub fn cycle_rotation(c: Complex64, q: u32) -> Option<u32> {
    let alpha = alpha_fixed_point(c);
    let mut z = Complex64::new(0.0, 0.0);
    let mut angles = Vec::with_capacity(q as usize);
    for _ in 0..q {
        angles.push((z - alpha).arg());
        z = z * z + c;
    }
    let mut idx: Vec<usize> = (0..q as usize).collect();
    idx.sort_by(|&i, &j| angles[i].total_cmp(&angles[j]));
    let mut pos = vec![0_usize; q as usize];
    for (rank, &k) in idx.iter().enumerate() {
        pos[k] = rank;
    }
    let q = q as usize;
    let shift = (pos[1] + q - pos[0]) % q;
    (0..q)
        .all(|k| (pos[(k + 1) % q] + q - pos[k]) % q == shift)
        .then_some(shift as u32)
}

/// Period, component and convergence checks for a candidate center.
pub fn verify_center(p: u32, q: u32, outcome: NewtonOutcome) -> Result<ParamPoint> {
    divisor_test(outcome.c, q)?;
    let found = cycle_rotation(outcome.c, q);
    if found != Some(p) {
        return Err(Error::WrongComponent { p, q, found });
    }
    Ok(ParamPoint {
        c: outcome.c,
        role: PointRole::Center { p, q },
        residual: Some(outcome.residual),
    })
}

/// Default seed: the root pushed into the satellite along the cardioid's
/// outward normal by `sin(πp/q)/q²`.
pub fn root_offset_seed(p: u32, q: u32) -> Result<Complex64> {
    let root = satellite_root(p, q)?;
    let theta = f64::from(p) / f64::from(q);
    let offset = (PI * theta).sin() / f64::from(q * q);
    Ok(root.c + offset * cardioid_normal(theta))
}

/// Center of the `p/q` satellite by Newton from `seed` (or the root-offset
/// seed).
pub fn satellite_center(p: u32, q: u32, seed: Option<Complex64>) -> Result<ParamPoint> {
    check_coprime(p, q)?;
    let seed = match seed {
        Some(s) => s,
        None => root_offset_seed(p, q)?,
    };
    verify_center(p, q, newton_center(q, seed)?)
}

/// Grid-search oracle: local minima of `|f_c^q(0)|` on a grid of step
/// [`BRUTEFORCE_STEP`] in the disk of radius `8/q²` about the root, each
/// polished by Newton and filtered by period and component; the survivor
/// nearest the root wins.
pub fn center_bruteforce(p: u32, q: u32) -> Result<ParamPoint> {
    check_coprime(p, q)?;
    if q > BRUTEFORCE_MAX_Q {
        return Err(Error::InvalidInput(format!(
            "brute force is limited to q <= {BRUTEFORCE_MAX_Q}"
        )));
    }
    let root = satellite_root(p, q)?.c;
    let radius = 8.0 / f64::from(q * q);
    let h = BRUTEFORCE_STEP;
    let n = (radius / h).ceil() as i64;
    let value = |i: i64, j: i64| -> f64 {
        if i * i + j * j > n * n {
            return f64::INFINITY;
        }
        let c = root + Complex64::new(i as f64 * h, j as f64 * h);
        critical_value(c, q).0.norm()
    };

    let per_row = map_indices((2 * n + 1) as usize, |r| {
        let j = r as i64 - n;
        let rows: Vec<Vec<f64>> = (j - 1..=j + 1)
            .map(|jj| (-n - 1..=n + 1).map(|i| value(i, jj)).collect())
            .collect();
        let mut best = f64::INFINITY;
        let mut minima = Vec::new();
        for col in 1..rows[1].len() - 1 {
            let v = rows[1][col];
            best = best.min(v);
            if v >= BRUTEFORCE_THRESHOLD {
                continue;
            }
            let is_min = (0..3).all(|dr| (col - 1..=col + 1).all(|cc| rows[dr][cc] >= v));
            if is_min {
                let i = col as i64 - n - 1;
                minima.push(root + Complex64::new(i as f64 * h, j as f64 * h));
            }
        }
        (best, minima)
    });

    let best = per_row.iter().map(|(b, _)| *b).fold(f64::INFINITY, f64::min);
    if best >= BRUTEFORCE_THRESHOLD {
        return Err(Error::NoGridCandidate {
            p,
            q,
            threshold: BRUTEFORCE_THRESHOLD,
        });
    }
    let mut last_err = Error::WrongComponent { p, q, found: None };
    let mut winner: Option<ParamPoint> = None;
    for seed in per_row.into_iter().flat_map(|(_, m)| m) {
        match newton_center(q, seed).and_then(|o| verify_center(p, q, o)) {
            Ok(pt) => {
                if winner
                    .as_ref()
                    .is_none_or(|w| (pt.c - root).norm() < (w.c - root).norm())
                {
                    winner = Some(pt);
                }
            }
            Err(e) => last_err = e,
        }
    }
    winner.ok_or(last_err)
}

/// Multiplier `(f_c^q)'` along the period-`q` cycle through the Newton limit
/// of `z ↦ f_c^q(z) - z` started at `z_seed`.
pub fn multiplier_of_cycle(c: Complex64, q: u32, z_seed: Complex64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::InvalidInput("period must be positive".into()));
    }
    let orbit = |z0: Complex64| {
        let mut z = z0;
        let mut dz = Complex64::new(1.0, 0.0);
        for _ in 0..q {
            dz *= 2.0 * z;
            z = z * z + c;
        }
        (z, dz)
    };
    let mut z = z_seed;
    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_MAX_STEPS {
        let (fz, dfz) = orbit(z);
        let g = fz - z;
        residual = g.norm();
        if residual < 1e-14 * z.norm().max(1.0) {
            return Ok(dfz);
        }
        let dg = dfz - 1.0;
        if dg.norm() == 0.0 || !residual.is_finite() {
            break;
        }
        z -= g / dg;
    }
    Err(Error::NonConvergence {
        steps: NEWTON_MAX_STEPS,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn half_center_is_minus_one() {
        let a = satellite_center(1, 2, None).unwrap();
        assert!(close(a.c, Complex64::new(-1.0, 0.0), 1e-12));
    }

    #[test]
    fn third_center() {
        let a = satellite_center(1, 3, None).unwrap();
        assert!(close(
            a.c,
            Complex64::new(-0.122_561_166_876_654, 0.744_861_766_619_744),
            1e-12
        ));
        let b = center_bruteforce(1, 3).unwrap();
        assert!(close(a.c, b.c, 1e-10));
    }

    #[test]
    fn conjugate_symmetry() {
        let a = satellite_center(2, 5, None).unwrap();
        let b = satellite_center(3, 5, None).unwrap();
        assert!(close(a.c, b.c.conj(), 1e-12));
    }

    #[test]
    fn divisor_test_catches_lower_period() {
        // c = -1 has critical period 2, so it is not a period-4 center.
        let err = divisor_test(Complex64::new(-1.0, 0.0), 4).unwrap_err();
        assert!(matches!(err, Error::WrongPeriod { divisor: 2, .. }));
    }

    #[test]
    fn multipliers() {
        let m = multiplier_of_cycle(Complex64::new(-1.0, 0.0), 2, Complex64::new(0.0, 0.0)).unwrap();
        assert!(m.norm() < 1e-14);
        let m = multiplier_of_cycle(Complex64::new(0.0, 0.0), 1, Complex64::new(0.0, 0.0)).unwrap();
        assert!(m.norm() < 1e-14);
        let m = multiplier_of_cycle(Complex64::new(-0.5, 0.0), 1, Complex64::new(-0.4, 0.0)).unwrap();
        assert!(m.norm() < 1.0);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(satellite_center(2, 4, None).is_err());
        assert!(center_bruteforce(1, 13).is_err());
    }
}
