//! Dynamical planes: Siegel critical orbits, Julia sets, the exterior Green
//! function, external rays, and the cubic molecule model.

mod molecule;
mod rays;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use molecule::{
    molecule_escape, molecule_grid, molecule_model_checks, molecule_render, q_map, q_prime, MoleculeReport,
    MOLECULE_BAILOUT,
};
pub use rays::{external_ray_trace, RAY_ESCAPE_RADIUS, RAY_NEWTON_STEPS};

use crate::error::{Error, Result};
use crate::raster::{EscapeGrid, RasterImage, Resolution, Window};
use crate::rotnum::{convergents, orbit_signature, OrbitSignature, RotationNumber};

/// `e^{2πiθ}`
pub fn multiplier(theta: &RotationNumber) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * theta.to_f64())
}

/// Critical point `-λ/2` of `p_θ(z) = λz + z²`.
pub fn siegel_critical_point(theta: &RotationNumber) -> Complex64 {
    -multiplier(theta) / 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiegelOrbit {
    /// `ĉ, p(ĉ), p²(ĉ), ...`, stopping early on escape.
    pub points: Vec<Complex64>,
    /// Whether every point satisfies `|z| <= 2`.
    pub bounded: bool,
}

/// The first `n` points of the critical orbit of `p_θ`.
pub fn siegel_critical_orbit(theta: &RotationNumber, n: usize) -> SiegelOrbit {
    let lambda = multiplier(theta);
    let mut z = -lambda / 2.0;
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        if z.norm_sqr() > 4.0 {
            return SiegelOrbit {
                points,
                bounded: false,
            };
        }
        points.push(z);
        z = lambda * z + z * z;
    }
    SiegelOrbit {
        points,
        bounded: true,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosestReturnReport {
    pub theta: RotationNumber,
    /// `(q_n, |p^{q_n}(ĉ) - ĉ|)`
    pub rows: Vec<(u64, f64)>,
    /// Lag between compared rows: the prime-renormalization period of θ.
    pub lag: usize,
    /// `ratios[k] = dist[k + lag] / dist[k]`
    pub ratios: Vec<f64>,
}

impl ClosestReturnReport {
    /// CSV with header `q,dist,ratio`; `ratio` is `dist/dist_{lag rows
    /// earlier}` and empty for the first `lag` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,dist,ratio\n");
        for (i, (q, d)) in self.rows.iter().enumerate() {
            let ratio = if i >= self.lag {
                self.ratios[i - self.lag].to_string()
            } else {
                String::new()
            };
            out.push_str(&format!("{q},{d},{ratio}\n"));
        }
        out
    }
}

/// Distances of the critical orbit from ĉ at the convergent denominators of
/// θ up to `q_max`.
pub fn closest_returns(theta: &RotationNumber, q_max: u64) -> Result<ClosestReturnReport> {
    if theta.is_rational() {
        return Err(Error::RationalNotAllowed(theta.to_string()));
    }
    let lag = match orbit_signature(theta, 10_000) {
        OrbitSignature::Periodic { period, .. } => period,
        _ => {
            return Err(Error::Inconclusive(format!(
                "no periodic prime-renormalization orbit detected for {theta}"
            )))
        }
    };
    let qs: Vec<u64> = convergents(theta, q_max)?.iter().map(|c| c.q).collect();
    let horizon = qs.last().copied().unwrap_or(0) as usize;
    let orbit = siegel_critical_orbit(theta, horizon + 1);
    if !orbit.bounded {
        return Err(Error::UnboundedOrbit {
            step: orbit.points.len(),
        });
    }
    let c0 = orbit.points[0];
    let rows: Vec<(u64, f64)> = qs
        .iter()
        .map(|&q| (q, (orbit.points[q as usize] - c0).norm()))
        .collect();
    let ratios = rows.windows(lag + 1).map(|w| w[lag].1 / w[0].1).collect();
    Ok(ClosestReturnReport {
        theta: theta.clone(),
        rows,
        lag,
        ratios,
    })
}

/// Times `k` in `1..=horizon` at which `|p^k(ĉ) - ĉ|` is smaller than at
/// every earlier time.
pub fn closest_return_times(theta: &RotationNumber, horizon: usize) -> Result<Vec<u64>> {
    let orbit = siegel_critical_orbit(theta, horizon + 1);
    if !orbit.bounded {
        return Err(Error::UnboundedOrbit {
            step: orbit.points.len(),
        });
    }
    let c0 = orbit.points[0];
    let mut best = f64::INFINITY;
    let mut times = Vec::new();
    for (k, z) in orbit.points.iter().enumerate().skip(1) {
        let d = (z - c0).norm();
        if d < best {
            best = d;
            times.push(k as u64);
        }
    }
    Ok(times)
}

/// Escape step of `z ↦ z² + c` from `z` with bailout `|z| > 2`, or `None`.
pub fn julia_escape(c: Complex64, z: Complex64, max_iter: u32) -> Option<u32> {
    let mut z = z;
    for n in 0..max_iter {
        if z.norm_sqr() > 4.0 {
            return Some(n);
        }
        z = z * z + c;
    }
    (z.norm_sqr() > 4.0).then_some(max_iter)
}

pub fn julia_grid(c: Complex64, window: Window, res: Resolution, max_iter: u32) -> EscapeGrid {
    EscapeGrid::compute(window, res, max_iter, |z| julia_escape(c, z, max_iter))
}

pub fn julia_render(c: Complex64, window: Window, res: Resolution, max_iter: u32) -> RasterImage {
    julia_grid(c, window, res, max_iter).to_image()
}

/// Escape step under `p_θ` (bailout `|z| > 2`, past which `|p_θ(z)| >
/// |z|(|z| - 1)` grows without bound).
pub fn siegel_escape(lambda: Complex64, z: Complex64, max_iter: u32) -> Option<u32> {
    let mut z = z;
    for n in 0..max_iter {
        if z.norm_sqr() > 4.0 {
            return Some(n);
        }
        z = lambda * z + z * z;
    }
    (z.norm_sqr() > 4.0).then_some(max_iter)
}

/// Filled Julia set of `p_θ` with the first `orbit_points` points of the
/// critical orbit overlaid in red.
pub fn siegel_render(
    theta: &RotationNumber,
    window: Window,
    res: Resolution,
    max_iter: u32,
    orbit_points: usize,
) -> RasterImage {
    let lambda = multiplier(theta);
    let mut img =
        EscapeGrid::compute(window, res, max_iter, |z| siegel_escape(lambda, z, max_iter)).to_image();
    for z in siegel_critical_orbit(theta, orbit_points).points {
        img.plot(z, [255, 32, 32]);
    }
    img
}

/// Escape radius beyond which `log|z|` is used for the Green function.
pub const GREEN_ESCAPE_RADIUS: f64 = 1e50;

/// Green function of the filled Julia set of `z² + c`, `lim 2^{-k} log|z_k|`,
/// evaluated at the first `k` with `|z_k|` above [`GREEN_ESCAPE_RADIUS`] or at
/// `k = n_terms`. Zero when the orbit has not left `|z| <= 2` by then.
pub fn green_potential(c: Complex64, z: Complex64, n_terms: u32) -> Result<f64> {
    if n_terms < 8 {
        return Err(Error::InvalidInput(format!("n_terms = {n_terms} is below 8")));
    }
    let mut z = z;
    let mut scale = 1.0_f64;
    for _ in 0..n_terms {
        if z.norm() > GREEN_ESCAPE_RADIUS {
            break;
        }
        z = z * z + c;
        scale *= 0.5;
    }
    Ok(if z.norm() > 2.0 {
        z.norm().ln() * scale
    } else {
        0.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siegel_orbit_basics() {
        let g = RotationNumber::golden();
        let one = siegel_critical_orbit(&g, 1);
        assert_eq!(one.points, vec![siegel_critical_point(&g)]);
        assert!(one.bounded);
        let parabolic = siegel_critical_orbit(&RotationNumber::ZERO, 1000);
        assert!(parabolic.bounded);
        assert!(parabolic.points[999].norm() < 0.01);
    }

    #[test]
    fn golden_closest_returns_shrink() {
        let rep = closest_returns(&RotationNumber::golden(), 233).unwrap();
        assert_eq!(rep.lag, 2);
        let d: Vec<f64> = rep.rows.iter().skip(1).map(|r| r.1).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{:?}", rep.rows);
        assert!(closest_returns(&RotationNumber::golden(), 1)
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn julia_points() {
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(julia_escape(zero, Complex64::new(0.5, 0.0), 100), None);
        assert_eq!(julia_escape(zero, Complex64::new(3.0, 0.0), 100), Some(0));
        assert_eq!(julia_escape(Complex64::new(-1.0, 0.0), zero, 100), None);
    }

    #[test]
    fn green_examples() {
        let zero = Complex64::new(0.0, 0.0);
        let g = green_potential(zero, Complex64::new(1e6, 0.0), 64).unwrap();
        assert!((g - 1e6f64.ln()).abs() < 1e-5);
        assert_eq!(green_potential(zero, Complex64::new(0.3, 0.0), 64).unwrap(), 0.0);
        let g = green_potential(Complex64::new(-1.0, 0.0), Complex64::new(2.1, 0.0), 64).unwrap();
        assert!(g > 0.0);
        assert!(green_potential(zero, zero, 4).is_err());
    }
}
