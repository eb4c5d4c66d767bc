//! Combinatorial renormalization of rotation numbers and numerical scaling
//! of Mandelbrot satellite components near Siegel parameters.

pub mod circle;
pub mod combinat;
pub mod dynplane;
pub mod error;
pub mod paramplane;
pub mod raster;
pub mod rotnum;

pub use error::{Error, Result};
pub use rotnum::RotationNumber;
