use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use renorm::raster::{Resolution, Window};
use renorm::rotnum::{Fraction, RotationNumber};

/// Rotation-number renormalization: orbits, words, satellite scaling and
/// dynamical pictures.
///
/// Rotation numbers are written `p/q`, `0`, or `[0;a1,...,(b1,...,bk)]`,
/// optionally prefixed by `1-`.
#[derive(Debug, Parser)]
#[command(name = "renorm", version)]
pub struct Cli {
    /// Worker threads for renders and tables [default: available cores]
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the prime-renormalization orbit of θ
    Renorm(RenormArgs),
    /// Print the periodic word seq(p, q) and its return times (a, b)
    Seq(SeqArgs),
    /// Satellite-center scaling table along the convergents of θ (CSV)
    Scale(ScaleArgs),
    /// Centers of all satellites with q up to a bound (CSV)
    Centers(CentersArgs),
    /// Arc statistics of the convergent-level circle triangulations (CSV)
    CircleStats(CircleStatsArgs),
    /// Filled Julia set of z² + c (PPM); default window 0,0,3.2
    Julia(JuliaArgs),
    /// Mandelbrot set (PPM); default window -0.6,0,3
    Mandel(MandelArgs),
    /// Siegel polynomial e^{2πiθ}z + z²: picture or closest returns;
    /// default window centered on the critical point, width 3.6
    Siegel(SiegelArgs),
    /// Cubic molecule model z(z+1)²: picture or model checks; default
    /// window -0.4,0,3.2
    Molecule(MoleculeArgs),
    /// External rays of z² + c: polylines or picture; default window
    /// 0,0,3.2
    Rays(RaysArgs),
}

#[derive(Debug, Args)]
pub struct RenormArgs {
    /// Rotation number θ
    #[arg(long, value_parser = parse_theta)]
    pub theta: RotationNumber,
    /// Number of orbit entries printed, starting with θ itself
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// Also print 𝔫(θ) and the fast renormalization on a second line
    #[arg(long)]
    pub fast: bool,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Numerator p, coprime to q
    pub p: u64,
    /// Denominator q ≥ 3
    pub q: u64,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Irrational rotation number θ
    #[arg(long, value_parser = parse_theta)]
    pub theta: RotationNumber,
    /// Largest convergent denominator
    #[arg(long, default_value_t = 987)]
    pub qmax: u64,
    /// Output CSV file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CentersArgs {
    /// Largest denominator
    #[arg(long, default_value_t = 10)]
    pub qmax: u32,
    /// Add the distance to the grid-search center (q ≤ 12 only)
    #[arg(long)]
    pub bruteforce: bool,
    /// Output CSV file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CircleStatsArgs {
    /// Rotation number θ
    #[arg(long, value_parser = parse_theta)]
    pub theta: RotationNumber,
    /// Largest convergent denominator
    #[arg(long, default_value_t = 10_000)]
    pub qmax: u64,
    /// `csv`: one row per triangulation; `text`: first-return summary
    #[arg(long, value_enum, default_value_t = StatsFormat::Csv)]
    pub format: StatsFormat,
    /// Output file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// View as `cx,cy,w`: center and width in the complex plane
    #[arg(long, value_name = "CX,CY,W", value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<Window>,
    /// Image size as `WxH`
    #[arg(long, value_name = "WxH", value_parser = parse_resolution, default_value = "512x512")]
    pub res: Resolution,
    /// Iteration budget per pixel
    #[arg(long, default_value_t = 500)]
    pub maxiter: u32,
    /// Output file [default: standard output]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JuliaArgs {
    /// Parameter c as `re,im`
    #[arg(long, value_name = "RE,IM", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Complex64,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct MandelArgs {
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct SiegelArgs {
    /// Irrational rotation number θ
    #[arg(long, value_parser = parse_theta, default_value = "[0;(1)]")]
    pub theta: RotationNumber,
    /// `ppm`: filled Julia set with the critical orbit; `csv`: closest returns
    #[arg(long, value_enum, default_value_t = SiegelFormat::Ppm)]
    pub format: SiegelFormat,
    /// Largest convergent denominator for the closest-return table
    #[arg(long, default_value_t = 233)]
    pub qmax: u64,
    /// Critical-orbit points drawn on the picture
    #[arg(long, default_value_t = 20_000)]
    pub orbit: usize,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct MoleculeArgs {
    /// `ppm`: filled Julia set of the cubic; `text`: model checks
    #[arg(long, value_enum, default_value_t = MoleculeFormat::Ppm)]
    pub format: MoleculeFormat,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct RaysArgs {
    /// Parameter c as `re,im`
    #[arg(long, value_name = "RE,IM", value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Complex64,
    /// Ray angle `p/q` in [0, 1); repeat for several rays
    #[arg(long = "angle", value_name = "P/Q", value_parser = parse_angle, required = true)]
    pub angles: Vec<Fraction>,
    /// Number of potential halvings
    #[arg(long, default_value_t = 30)]
    pub depth: usize,
    /// Ray points per potential halving
    #[arg(long, default_value_t = 4)]
    pub steps_per_level: usize,
    /// `csv`: ray points; `ppm`: rays over the filled Julia set
    #[arg(long, value_enum, default_value_t = RaysFormat::Csv)]
    pub format: RaysFormat,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SiegelFormat {
    Ppm,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MoleculeFormat {
    Ppm,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RaysFormat {
    Csv,
    Ppm,
}

fn parse_theta(s: &str) -> Result<RotationNumber, String> {
    s.parse().map_err(|e: renorm::Error| e.to_string())
}

fn parse_angle(s: &str) -> Result<Fraction, String> {
    match parse_theta(s)? {
        RotationNumber::Rational(f) => Ok(f),
        RotationNumber::Quadratic(_) => Err(format!("angle {s} must be rational")),
    }
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0_f64; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| format!("bad number {p:?}"))?;
        if !o.is_finite() {
            return Err(format!("non-finite number {p:?}"));
        }
    }
    Ok(out)
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let [re, im] = parse_floats(s)?;
    Ok(Complex64::new(re, im))
}

fn parse_window(s: &str) -> Result<Window, String> {
    let [cx, cy, w] = parse_floats(s)?;
    Window::new(Complex64::new(cx, cy), w).map_err(|e| e.to_string())
}

fn parse_resolution(s: &str) -> Result<Resolution, String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: usize = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let h: usize = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    Resolution::new(w, h).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn value_parsers() {
        assert_eq!(parse_complex("-1,0.5").unwrap(), Complex64::new(-1.0, 0.5));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("nan,0").is_err());
        assert!(parse_window("0,0,-1").is_err());
        let r = parse_resolution("640x480").unwrap();
        assert_eq!((r.width, r.height), (640, 480));
        assert!(parse_resolution("640").is_err());
        assert!(parse_angle("[0;(1)]").is_err());
        assert_eq!(parse_angle("1/3").unwrap(), Fraction::new(1, 3).unwrap());
    }
}
