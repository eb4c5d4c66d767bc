//! The cubic `Q(z) = z(z+1)²`, the combinatorial model of the molecule map.

use num_complex::Complex64;

use crate::raster::{EscapeGrid, RasterImage, Resolution, Window};

/// For `|z| >= 4`, `|Q(z)| >= |z| (|z| - 1)² > |z|`, so orbits leaving this
/// disk escape.
pub const MOLECULE_BAILOUT: f64 = 4.0;

pub fn q_map(z: Complex64) -> Complex64 {
    let w = z + 1.0;
    z * w * w
}

/// `Q'(z) = (z + 1)(3z + 1)`
pub fn q_prime(z: Complex64) -> Complex64 {
    (z + 1.0) * (3.0 * z + 1.0)
}

pub fn molecule_escape(z: Complex64, max_iter: u32) -> Option<u32> {
    let r2 = MOLECULE_BAILOUT * MOLECULE_BAILOUT;
    let mut z = z;
    for n in 0..max_iter {
        if z.norm_sqr() > r2 {
            return Some(n);
        }
        z = q_map(z);
    }
    (z.norm_sqr() > r2).then_some(max_iter)
}

pub fn molecule_grid(window: Window, res: Resolution, max_iter: u32) -> EscapeGrid {
    EscapeGrid::compute(window, res, max_iter, |z| molecule_escape(z, max_iter))
}

pub fn molecule_render(window: Window, res: Resolution, max_iter: u32) -> RasterImage {
    molecule_grid(window, res, max_iter).to_image()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeReport {
    pub q_at_minus_one: Complex64,
    pub derivative_at_zero: Complex64,
    /// Roots of `3z² + 4z + 1`, ascending.
    pub critical_points: [f64; 2],
    /// First step at which the orbit of `-1/3` is within `1e-2` of 0.
    pub steps_to_parabolic: Option<usize>,
}

impl MoleculeReport {
    pub fn passed(&self) -> bool {
        self.q_at_minus_one == Complex64::new(0.0, 0.0)
            && self.derivative_at_zero == Complex64::new(1.0, 0.0)
            && self.critical_points == [-1.0, -1.0 / 3.0]
            && self.steps_to_parabolic.is_some()
    }
}

/// Checks the structural facts of the model: `Q(-1) = 0`, `Q'(0) = 1`,
/// critical points `{-1, -1/3}`, and the attraction of `-1/3` to the
/// parabolic point 0 within `10⁴` steps.
pub fn molecule_model_checks() -> MoleculeReport {
    let disc: f64 = 16.0 - 12.0;
    let (lo, hi) = ((-4.0 - disc.sqrt()) / 6.0, (-4.0 + disc.sqrt()) / 6.0);
    let mut z = Complex64::new(-1.0 / 3.0, 0.0);
    let mut steps = None;
    for n in 0..=10_000 {
        if z.norm() < 1e-2 {
            steps = Some(n);
            break;
        }
        z = q_map(z);
    }
    MoleculeReport {
        q_at_minus_one: q_map(Complex64::new(-1.0, 0.0)),
        derivative_at_zero: q_prime(Complex64::new(0.0, 0.0)),
        critical_points: [lo, hi],
        steps_to_parabolic: steps,
    }
}
