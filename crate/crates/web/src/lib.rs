//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Images are returned as RGBA bytes, ready for `ImageData`.

use num_complex::Complex64;
use renorm::combinat::build_seq;
use renorm::dynplane::siegel_render;
use renorm::paramplane::mandelbrot_render;
use renorm::raster::{RasterImage, Resolution, Window};
use renorm::rotnum::{fast_renormalize, fast_step_count, prime_renormalize, return_times, RotationNumber};
use wasm_bindgen::prelude::*;

fn to_rgba(img: &RasterImage) -> Vec<u8> {
    img.pixels.iter().flat_map(|&[r, g, b]| [r, g, b, 255]).collect()
}

fn view(cx: f64, cy: f64, width: f64, w: usize, h: usize) -> Result<(Window, Resolution), String> {
    let window = Window::new(Complex64::new(cx, cy), width).map_err(|e| e.to_string())?;
    let res = Resolution::new(w, h).map_err(|e| e.to_string())?;
    Ok((window, res))
}

pub fn mandelbrot_rgba(
    cx: f64,
    cy: f64,
    width: f64,
    w: usize,
    h: usize,
    max_iter: u32,
) -> Result<Vec<u8>, String> {
    let (window, res) = view(cx, cy, width, w, h)?;
    Ok(to_rgba(&mandelbrot_render(window, res, max_iter)))
}

/// Orbit under prime renormalization, the fast renormalization, and for
/// rationals the word `seq(p, q)`, one item per line.
pub fn orbit_report(theta: &str, steps: usize) -> Result<String, String> {
    let theta: RotationNumber = theta.parse().map_err(|e: renorm::Error| e.to_string())?;
    let mut t = theta.clone();
    let mut orbit = Vec::with_capacity(steps);
    for _ in 0..steps {
        orbit.push(t.to_string());
        t = prime_renormalize(&t);
    }
    let mut lines = vec![format!("orbit: {}", orbit.join(" "))];
    if let (Ok(n), Ok(fast)) = (fast_step_count(&theta), fast_renormalize(&theta)) {
        lines.push(format!("n = {n}, fast renormalization = {fast}"));
    }
    if let RotationNumber::Rational(f) = &theta {
        if let (Ok(word), Ok(rt)) = (build_seq(f.num(), f.den()), return_times(f.num(), f.den())) {
            lines.push(format!("seq = {}", word.word()));
            lines.push(format!("(a,b) = ({},{})", rt.a, rt.b));
        }
    }
    Ok(lines.join("\n"))
}

/// Filled Julia set of `e^{2πiθ}z + z²` centered on its critical point, with
/// the critical orbit in red.
pub fn siegel_rgba(
    theta: &str,
    width: f64,
    w: usize,
    h: usize,
    max_iter: u32,
    orbit: usize,
) -> Result<Vec<u8>, String> {
    let theta: RotationNumber = theta.parse().map_err(|e: renorm::Error| e.to_string())?;
    if theta.is_rational() {
        return Err(format!(
            "{theta} is rational; Siegel disks need an irrational angle"
        ));
    }
    let c = renorm::dynplane::siegel_critical_point(&theta);
    let (window, res) = view(c.re, c.im, width, w, h)?;
    Ok(to_rgba(&siegel_render(&theta, window, res, max_iter, orbit)))
}

#[wasm_bindgen]
pub fn mandelbrot(
    cx: f64,
    cy: f64,
    width: f64,
    w: usize,
    h: usize,
    max_iter: u32,
) -> Result<Vec<u8>, JsError> {
    mandelbrot_rgba(cx, cy, width, w, h, max_iter).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn renorm_orbit(theta: &str, steps: usize) -> Result<String, JsError> {
    orbit_report(theta, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn siegel(
    theta: &str,
    width: f64,
    w: usize,
    h: usize,
    max_iter: u32,
    orbit: usize,
) -> Result<Vec<u8>, JsError> {
    siegel_rgba(theta, width, w, h, max_iter, orbit).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_one_third() {
        let r = orbit_report("1/3", 5).unwrap();
        assert_eq!(
            r,
            "orbit: 1/3 1/2 0 0 0\nn = 2, fast renormalization = 0\nseq = A A B\n(a,b) = (2,1)"
        );
        assert!(orbit_report("[0;(1)]", 3)
            .unwrap()
            .starts_with("orbit: [0;(1)] [0;2,(1)] [0;(1)]"));
        assert!(orbit_report("nonsense", 3).is_err());
    }

    #[test]
    fn images_are_rgba() {
        let px = mandelbrot_rgba(-0.6, 0.0, 3.0, 8, 6, 50).unwrap();
        assert_eq!(px.len(), 8 * 6 * 4);
        assert!(px.chunks(4).all(|p| p[3] == 255));
        assert_eq!(
            siegel_rgba("[0;(1)]", 3.6, 8, 6, 50, 100).unwrap().len(),
            8 * 6 * 4
        );
        assert!(siegel_rgba("1/3", 3.6, 8, 6, 50, 100).is_err());
        assert!(mandelbrot_rgba(0.0, 0.0, -1.0, 8, 6, 50).is_err());
    }
}
