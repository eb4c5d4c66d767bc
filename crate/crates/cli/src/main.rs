mod args;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;
use rayon::prelude::*;
use renorm::circle::{first_return, fundamental_sector, triangulation_table};
use renorm::combinat::build_seq;
use renorm::dynplane::{
    closest_returns, external_ray_trace, julia_render, molecule_model_checks, molecule_render,
    siegel_critical_point, siegel_render,
};
use renorm::paramplane::{center_bruteforce, mandelbrot_render, satellite_center, scaling_table};
use renorm::raster::{RasterImage, Window};
use renorm::rotnum::{fast_renormalize, fast_step_count, prime_renormalize, return_times};

use args::{Cli, Command, MoleculeFormat, RaysFormat, RenderArgs, SiegelFormat, StatsFormat};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] renorm::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io { .. } => "E_IO",
            CliError::Usage(_) => "E_USAGE",
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Writes `bytes` to `path`, or to standard output when no path is given.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    let name = path.map_or_else(|| "<stdout>".to_string(), |p| p.display().to_string());
    let io_err = |source| CliError::Io {
        path: name.clone(),
        source,
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            w.write_all(bytes).and_then(|()| w.flush()).map_err(io_err)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|()| out.flush()).map_err(io_err)
        }
    }
}

fn emit_image(out: &Option<PathBuf>, img: &RasterImage) -> Result<()> {
    emit(out.as_deref(), &img.to_ppm_bytes())
}

fn window_or(render: &RenderArgs, cx: f64, cy: f64, width: f64) -> Window {
    render
        .window
        .unwrap_or_else(|| Window::new(Complex64::new(cx, cy), width).expect("positive width"))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Renorm(a) => {
            let mut theta = a.theta.clone();
            let mut orbit = Vec::with_capacity(a.steps);
            for _ in 0..a.steps {
                orbit.push(theta.to_string());
                theta = prime_renormalize(&theta);
            }
            let mut text = orbit.join(" ");
            text.push('\n');
            if a.fast {
                let n = fast_step_count(&a.theta)?;
                let fast = fast_renormalize(&a.theta)?;
                writeln!(text, "n={n} fast={fast}").expect("writing to a String cannot fail");
            }
            emit(None, text.as_bytes())
        }
        Command::Seq(a) => {
            let word = build_seq(a.p, a.q)?;
            let rt = return_times(a.p, a.q)?;
            let text = format!("{}\n(a,b)=({},{})\n", word.word(), rt.a, rt.b);
            emit(None, text.as_bytes())
        }
        Command::Scale(a) => {
            let table = scaling_table(&a.theta, a.qmax)?;
            emit(a.out.as_deref(), table.to_csv().as_bytes())?;
            // Rows that failed are reported after the table is written.
            match table.failures.into_iter().next() {
                Some(f) => {
                    eprintln!("row n={} p/q={}/{} failed", f.n, f.p, f.q);
                    Err(f.error.into())
                }
                None => Ok(()),
            }
        }
        Command::Centers(a) => {
            if a.qmax < 2 {
                return Err(CliError::Usage("--qmax must be at least 2".into()));
            }
            let pairs: Vec<(u32, u32)> = (2..=a.qmax)
                .flat_map(|q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q)))
                .collect();
            let rows: Vec<String> = pairs
                .par_iter()
                .map(|&(p, q)| -> Result<String> {
                    let pt = satellite_center(p, q, None)?;
                    let residual = pt.residual.unwrap_or(0.0);
                    let mut row = format!("{p},{q},{},{},{residual}", pt.c.re, pt.c.im);
                    if a.bruteforce {
                        let bf = center_bruteforce(p, q)?;
                        write!(row, ",{}", (bf.c - pt.c).norm()).expect("writing to a String cannot fail");
                    }
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            let mut csv = String::from("p,q,re,im,residual");
            if a.bruteforce {
                csv.push_str(",bruteforce_dist");
            }
            csv.push('\n');
            for r in rows {
                csv.push_str(&r);
                csv.push('\n');
            }
            emit(a.out.as_deref(), csv.as_bytes())
        }
        Command::CircleStats(a) => {
            let text = match a.format {
                StatsFormat::Csv => {
                    let mut csv = String::from("q,min_arc,max_arc,ratio,distinct_lengths\n");
                    for t in triangulation_table(&a.theta, a.qmax)? {
                        writeln!(
                            csv,
                            "{},{},{},{},{}",
                            t.q, t.min_arc, t.max_arc, t.ratio, t.distinct_lengths
                        )
                        .expect("writing to a String cannot fail");
                    }
                    csv
                }
                StatsFormat::Text => {
                    let fr = first_return(&a.theta, &fundamental_sector(&a.theta)?)?;
                    let n = fast_step_count(&a.theta)?;
                    let fast = fast_renormalize(&a.theta)?;
                    let (lo, hi) = fr.times_sorted();
                    let ratio = triangulation_table(&a.theta, a.qmax)?
                        .iter()
                        .map(|t| t.ratio)
                        .fold(0.0, f64::max);
                    format!(
                        "theta={}\nn={n}\nfast={fast}\nreturn_times={lo},{hi}\nmax_ratio={ratio}\n",
                        a.theta
                    )
                }
            };
            emit(a.out.as_deref(), text.as_bytes())
        }
        Command::Julia(a) => {
            let r = &a.render;
            let img = julia_render(a.c, window_or(r, 0.0, 0.0, 3.2), r.res, r.maxiter);
            emit_image(&r.out, &img)
        }
        Command::Mandel(a) => {
            let r = &a.render;
            let img = mandelbrot_render(window_or(r, -0.6, 0.0, 3.0), r.res, r.maxiter);
            emit_image(&r.out, &img)
        }
        Command::Siegel(a) => {
            if a.theta.is_rational() {
                return Err(renorm::Error::RationalNotAllowed(a.theta.to_string()).into());
            }
            let r = &a.render;
            match a.format {
                SiegelFormat::Csv => {
                    let rep = closest_returns(&a.theta, a.qmax)?;
                    emit(r.out.as_deref(), rep.to_csv().as_bytes())
                }
                SiegelFormat::Ppm => {
                    let c = siegel_critical_point(&a.theta);
                    let window = window_or(r, c.re, c.im, 3.6);
                    let img = siegel_render(&a.theta, window, r.res, r.maxiter, a.orbit);
                    emit_image(&r.out, &img)
                }
            }
        }
        Command::Molecule(a) => {
            let r = &a.render;
            match a.format {
                MoleculeFormat::Ppm => {
                    let img = molecule_render(window_or(r, -0.4, 0.0, 3.2), r.res, r.maxiter);
                    emit_image(&r.out, &img)
                }
                MoleculeFormat::Text => {
                    let rep = molecule_model_checks();
                    let steps = rep
                        .steps_to_parabolic
                        .map_or_else(|| "none".to_string(), |s| s.to_string());
                    let text = format!(
                        "Q(-1)={}\nQ'(0)={}\ncritical_points={},{}\nsteps_to_parabolic={steps}\npassed={}\n",
                        rep.q_at_minus_one,
                        rep.derivative_at_zero,
                        rep.critical_points[0],
                        rep.critical_points[1],
                        rep.passed()
                    );
                    emit(r.out.as_deref(), text.as_bytes())?;
                    if rep.passed() {
                        Ok(())
                    } else {
                        Err(renorm::Error::Inconclusive("molecule model checks failed".into()).into())
                    }
                }
            }
        }
        Command::Rays(a) => {
            let rays: Vec<_> = a
                .angles
                .par_iter()
                .map(|&t| external_ray_trace(a.c, t, a.depth, a.steps_per_level).map(|pts| (t, pts)))
                .collect::<std::result::Result<_, _>>()?;
            let r = &a.render;
            match a.format {
                RaysFormat::Csv => {
                    let mut csv = String::from("angle,k,re,im\n");
                    for (t, pts) in &rays {
                        for (k, z) in pts.iter().enumerate() {
                            writeln!(csv, "{}/{},{k},{},{}", t.num(), t.den(), z.re, z.im)
                                .expect("writing to a String cannot fail");
                        }
                    }
                    emit(r.out.as_deref(), csv.as_bytes())
                }
                RaysFormat::Ppm => {
                    let window = window_or(r, 0.0, 0.0, 3.2);
                    let mut img = julia_render(a.c, window, r.res, r.maxiter);
                    for (_, pts) in &rays {
                        for w in pts.windows(2) {
                            // Densify so that segments read as lines.
                            let n = 16;
                            for i in 0..=n {
                                img.plot(
                                    w[0] + (w[1] - w[0]) * (f64::from(i) / f64::from(n)),
                                    [255, 32, 32],
                                );
                            }
                        }
                    }
                    emit_image(&r.out, &img)
                }
            }
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(usize::from(n));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| run(cli.command)),
        Err(e) => Err(CliError::Usage(format!("cannot start worker threads: {e}"))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
