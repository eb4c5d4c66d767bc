//! External rays of `z² + c` by Newton pullback along angle doubling.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rotnum::Fraction;

/// Radius at which the Böttcher coordinate is replaced by the identity.
pub const RAY_ESCAPE_RADIUS: f64 = 1e4;
/// Newton iterations allowed per ray point.
pub const RAY_NEWTON_STEPS: usize = 12;
const MAX_HALVINGS: usize = 8;

/// `2^k t mod 1` for `t = num/den`, exactly.
fn doubled_angle(t: Fraction, k: u32) -> f64 {
    let den = u128::from(t.den());
    let mut factor: u128 = 1;
    let mut base: u128 = 2 % den;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            factor = factor * base % den;
        }
        base = base * base % den;
        e >>= 1;
    }
    (u128::from(t.num()) * factor % den) as f64 / den as f64
}

/// `f_c^k(z)` and its derivative in `z`.
fn iterate(c: Complex64, z: Complex64, k: u32) -> (Complex64, Complex64) {
    let mut z = z;
    let mut dz = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        dz *= 2.0 * z;
        z = z * z + c;
    }
    (z, dz)
}

/// Points of the external ray of angle `t`, from potential
/// `log RAY_ESCAPE_RADIUS` down through `depth` halvings of the potential,
/// with `steps_per_level` points per halving.
///
/// The point at potential `G` is the solution of
/// `f^k(z) = exp(2^k G + 2πi 2^k t)` with `k` chosen so that `2^k G` sits
/// above `log RAY_ESCAPE_RADIUS`, found by Newton from the previous point.
/// Steps that increase the residual are halved.
pub fn external_ray_trace(
    c: Complex64,
    angle: Fraction,
    depth: usize,
    steps_per_level: usize,
) -> Result<Vec<Complex64>> {
    if steps_per_level == 0 {
        return Err(Error::InvalidInput("steps_per_level must be positive".into()));
    }
    let g0 = RAY_ESCAPE_RADIUS.ln();
    let mut z = Complex64::from_polar(RAY_ESCAPE_RADIUS, 2.0 * PI * angle.to_f64());
    let mut points = vec![z];
    for j in 1..=depth * steps_per_level {
        let k = j.div_ceil(steps_per_level) as u32;
        let g = g0 * (-(j as f64) / steps_per_level as f64).exp2();
        let log_mod = g * f64::from(k).exp2();
        let target = Complex64::from_polar(log_mod.exp(), 2.0 * PI * doubled_angle(angle, k));

        let residual = |w: Complex64| {
            let (fw, dfw) = iterate(c, w, k);
            (fw - target, dfw)
        };
        let (mut r, mut dr) = residual(z);
        for _ in 0..RAY_NEWTON_STEPS {
            if dr.norm() == 0.0 {
                break;
            }
            let mut step = r / dr;
            let mut accepted = false;
            for _ in 0..=MAX_HALVINGS {
                let (r_new, dr_new) = residual(z - step);
                if r_new.norm() < r.norm() {
                    z -= step;
                    (r, dr) = (r_new, dr_new);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted || step.norm() <= 1e-14 * z.norm() {
                break;
            }
        }
        let converged = r.norm() <= 1e-9 * target.norm();
        if !converged {
            return Err(Error::NewtonDivergence {
                level: j,
                last_good: *points.last().expect("ray starts with one point"),
            });
        }
        points.push(z);
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(p: u64, q: u64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn doubling() {
        assert_eq!(doubled_angle(frac(1, 3), 1), 2.0 / 3.0);
        assert_eq!(doubled_angle(frac(1, 3), 2), 1.0 / 3.0);
        assert_eq!(doubled_angle(frac(1, 4), 2), 0.0);
    }

    #[test]
    fn radial_rays_for_z_squared() {
        let zero = Complex64::new(0.0, 0.0);
        for (p, q) in [(0, 1), (1, 4), (1, 3), (5, 7)] {
            let t = frac(p, q);
            let ray = external_ray_trace(zero, t, 12, 4).unwrap();
            let dir = Complex64::from_polar(1.0, 2.0 * PI * t.to_f64());
            for z in &ray {
                let off = (z / dir).im.abs() / z.norm();
                assert!(off < 1e-10, "{p}/{q}: {z}");
            }
            assert!(ray.last().unwrap().norm() < 1.003);
        }
    }
}
