//! Viewing windows, escape-time grids and binary PPM output.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maps `0..n` through `f`, in parallel when the `parallel` feature is on.
/// Output order never depends on scheduling.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// A rectangular region of the plane: `width` is the real extent, the
/// imaginary extent follows from the pixel aspect ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub center: Complex64,
    pub width: f64,
}

impl Window {
    pub fn new(center: Complex64, width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) || !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidInput(format!(
                "window width {width} must be positive"
            )));
        }
        Ok(Window { center, width })
    }

    /// Complex coordinate of the center of pixel `(col, row)`; row 0 is the top.
    pub fn pixel_to_point(&self, col: usize, row: usize, res: Resolution) -> Complex64 {
        let step = self.width / res.width as f64;
        let height = step * res.height as f64;
        Complex64::new(
            self.center.re - 0.5 * self.width + (col as f64 + 0.5) * step,
            self.center.im + 0.5 * height - (row as f64 + 0.5) * step,
        )
    }

    /// Pixel containing `z`, if it lies inside the window.
    pub fn point_to_pixel(&self, z: Complex64, res: Resolution) -> Option<(usize, usize)> {
        let step = self.width / res.width as f64;
        let x = (z.re - (self.center.re - 0.5 * self.width)) / step;
        let y = ((self.center.im + 0.5 * step * res.height as f64) - z.im) / step;
        (x >= 0.0 && y >= 0.0 && x < res.width as f64 && y < res.height as f64)
            .then_some((x as usize, y as usize))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub width: usize,
    pub height: usize,
}

impl Resolution {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "resolution {width}x{height} is empty"
            )));
        }
        Ok(Resolution { width, height })
    }
}

/// Escape times per pixel: `Some(n)` if the orbit escaped at step `n`,
/// `None` if it stayed bounded for the whole budget.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapeGrid {
    pub window: Window,
    pub res: Resolution,
    pub max_iter: u32,
    pub counts: Vec<Option<u32>>,
}

impl EscapeGrid {
    /// Evaluates `escape(point)` at every pixel center, rows in parallel.
    pub fn compute<F>(window: Window, res: Resolution, max_iter: u32, escape: F) -> Self
    where
        F: Fn(Complex64) -> Option<u32> + Sync + Send,
    {
        let rows = map_indices(res.height, |row| {
            (0..res.width)
                .map(|col| escape(window.pixel_to_point(col, row, res)))
                .collect::<Vec<_>>()
        });
        EscapeGrid {
            window,
            res,
            max_iter,
            counts: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, col: usize, row: usize) -> Option<u32> {
        self.counts[row * self.res.width + col]
    }

    pub fn is_interior(&self, col: usize, row: usize) -> bool {
        self.get(col, row).is_none()
    }

    /// Grayscale image: interior black, escaping pixels on a logarithmic
    /// ramp from white (fast escape) down.
    pub fn to_image(&self) -> RasterImage {
        let denom = (1.0 + f64::from(self.max_iter.max(1))).ln();
        let mut img = RasterImage::new(self.window, self.res);
        for (i, c) in self.counts.iter().enumerate() {
            let v = match c {
                None => 0,
                Some(n) => 255 - (200.0 * (1.0 + f64::from(*n)).ln() / denom).round() as u8,
            };
            img.pixels[i] = [v, v, v];
        }
        img
    }
}

/// 24-bit color image, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RasterImage {
    pub window: Window,
    pub res: Resolution,
    pub pixels: Vec<[u8; 3]>,
}

impl RasterImage {
    pub fn new(window: Window, res: Resolution) -> Self {
        RasterImage {
            window,
            res,
            pixels: vec![[0; 3]; res.width * res.height],
        }
    }

    pub fn set(&mut self, col: usize, row: usize, rgb: [u8; 3]) {
        self.pixels[row * self.res.width + col] = rgb;
    }

    /// Colors the pixel under `z`, if visible.
    pub fn plot(&mut self, z: Complex64, rgb: [u8; 3]) {
        if let Some((col, row)) = self.window.point_to_pixel(z, self.res) {
            self.set(col, row, rgb);
        }
    }

    /// Binary PPM (P6), maxval 255.
    pub fn write_ppm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.res.width, self.res.height)?;
        let bytes: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        out.write_all(&bytes)
    }

    pub fn to_ppm_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::with_capacity(16 + 3 * self.pixels.len());
        self.write_ppm(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pixel_centers() {
        let w = Window::new(Complex64::new(0.0, 0.0), 2.0).unwrap();
        let res = Resolution::new(2, 2).unwrap();
        assert_eq!(w.pixel_to_point(0, 0, res), Complex64::new(-0.5, 0.5));
        assert_eq!(w.pixel_to_point(1, 1, res), Complex64::new(0.5, -0.5));
        assert_eq!(w.point_to_pixel(Complex64::new(0.4, -0.2), res), Some((1, 1)));
        assert_eq!(w.point_to_pixel(Complex64::new(1.5, 0.0), res), None);
    }

    #[test]
    fn ppm_header_and_size() {
        let w = Window::new(Complex64::new(0.0, 0.0), 1.0).unwrap();
        let img = RasterImage::new(w, Resolution::new(3, 2).unwrap());
        let bytes = img.to_ppm_bytes();
        assert!(bytes.starts_with(b"P6\n3 2\n255\n"));
        assert_eq!(bytes.len(), 11 + 18);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(Window::new(Complex64::new(0.0, 0.0), 0.0).is_err());
        assert!(Resolution::new(0, 4).is_err());
    }
}
