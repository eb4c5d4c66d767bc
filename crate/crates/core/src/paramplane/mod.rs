//! Parameter plane of `f_c(z) = z² + c`: the main cardioid, satellite roots
//! and centers, the scaling of satellites along convergents, and rendering.

mod center;
mod scaling;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use center::{
    alpha_fixed_point, center_bruteforce, critical_value, cycle_rotation, divisor_test,
    fixed_point_multiplier, multiplier_of_cycle, newton_center, root_offset_seed, satellite_center,
    verify_center, NewtonOutcome, BRUTEFORCE_MAX_Q, BRUTEFORCE_STEP, BRUTEFORCE_THRESHOLD, DIVISOR_TOL,
    NEWTON_MAX_STEPS, RESIDUAL_TOL,
};
pub use scaling::{scaling_table, RowFailure, ScalingRow, ScalingTable, SCALING_CSV_HEADER};

use crate::error::Result;
use crate::raster::{EscapeGrid, RasterImage, Resolution, Window};
use crate::rotnum::{prime_renormalize, RotationNumber};

#[derive(Clone, Debug, PartialEq)]
pub enum PointRole {
    Cardioid(RotationNumber),
    Root { p: u32, q: u32 },
    Center { p: u32, q: u32 },
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint {
    pub c: Complex64,
    pub role: PointRole,
    /// `|f_c^q(0)|` for computed centers.
    pub residual: Option<f64>,
}

fn cardioid_at(theta: f64) -> Complex64 {
    let lambda = Complex64::from_polar(1.0, 2.0 * PI * theta);
    lambda / 2.0 - lambda * lambda / 4.0
}

/// Unit outward normal to the main cardioid at angle θ, proportional to
/// `λ(1 - λ)`. At the cusp, where that vanishes, `+1` is returned.
pub(crate) fn cardioid_normal(theta: f64) -> Complex64 {
    let lambda = Complex64::from_polar(1.0, 2.0 * PI * theta);
    let n = lambda * (1.0 - lambda);
    if n.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        n / n.norm()
    }
}

/// `c(θ) = λ/2 - λ²/4` with `λ = e^{2πiθ}`: the parameter whose fixed point
/// has multiplier λ.
pub fn cardioid_point(theta: &RotationNumber) -> ParamPoint {
    ParamPoint {
        c: cardioid_at(theta.to_f64()),
        role: PointRole::Cardioid(theta.clone()),
        residual: None,
    }
}

/// Root `c(p/q)` of the `p/q` satellite component.
pub fn satellite_root(p: u32, q: u32) -> Result<ParamPoint> {
    center::check_coprime(p, q)?;
    Ok(ParamPoint {
        c: cardioid_at(f64::from(p) / f64::from(q)),
        role: PointRole::Root { p, q },
        residual: None,
    })
}

/// Action of the molecule map on the cardioid boundary: `θ ↦ θ'` under the
/// prime renormalization together with both cardioid points.
pub fn molecule_boundary_step(theta: &RotationNumber) -> (RotationNumber, ParamPoint, ParamPoint) {
    let next = prime_renormalize(theta);
    let c = cardioid_point(theta);
    let c_next = cardioid_point(&next);
    (next, c, c_next)
}

/// Escape step of the critical orbit with bailout `|z| > 2`, or `None`.
pub fn mandelbrot_escape(c: Complex64, max_iter: u32) -> Option<u32> {
    let mut z = Complex64::new(0.0, 0.0);
    for n in 0..max_iter {
        if z.norm_sqr() > 4.0 {
            return Some(n);
        }
        z = z * z + c;
    }
    (z.norm_sqr() > 4.0).then_some(max_iter)
}

pub fn mandelbrot_grid(window: Window, res: Resolution, max_iter: u32) -> EscapeGrid {
    EscapeGrid::compute(window, res, max_iter, |c| mandelbrot_escape(c, max_iter))
}

pub fn mandelbrot_render(window: Window, res: Resolution, max_iter: u32) -> RasterImage {
    mandelbrot_grid(window, res, max_iter).to_image()
}
