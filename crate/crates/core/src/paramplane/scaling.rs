//! Distances from `c(θ)` to the satellite centers at the convergents of θ.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::{cardioid_point, satellite_center};
use crate::error::{Error, Result};
use crate::rotnum::{convergents, ApproachSide, Convergent, RotationNumber};

pub const SCALING_CSV_HEADER: &str = "n,p,q,side,re_a,im_a,d,s";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    pub side: ApproachSide,
    /// Center of the `p/q` satellite.
    pub a: Complex64,
    /// `|c(θ) - a|`
    pub d: f64,
    /// `q² d`
    pub s: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowFailure {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    pub side: ApproachSide,
    pub error: Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingTable {
    pub c_theta: Complex64,
    /// Successful rows, by increasing `q`.
    pub rows: Vec<ScalingRow>,
    pub failures: Vec<RowFailure>,
}

impl ScalingTable {
    pub fn side(&self, side: ApproachSide) -> impl Iterator<Item = &ScalingRow> {
        self.rows.iter().filter(move |r| r.side == side)
    }

    /// `s_{n+2}/s_n - 1` for consecutive rows on one side.
    pub fn same_side_deviations(&self, side: ApproachSide) -> Vec<f64> {
        let s: Vec<f64> = self.side(side).map(|r| r.s).collect();
        s.windows(2).map(|w| w[1] / w[0] - 1.0).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SCALING_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n, r.p, r.q, r.side, r.a.re, r.a.im, r.d, r.s
            )
            .expect("writing to a String cannot fail");
        }
        out
    }
}

type ChainItem = std::result::Result<ScalingRow, RowFailure>;

/// Solves one same-side chain in order, seeding each center from the two
/// previous ones on that side.
fn solve_chain(chain: &[Convergent], c_theta: Complex64) -> Vec<ChainItem> {
    let mut done: Vec<Complex64> = Vec::new();
    let mut out = Vec::with_capacity(chain.len());
    for conv in chain {
        let (p, q) = (conv.p as u32, conv.q as u32);
        let extrapolated = match done.as_slice() {
            [.., older, newer] => {
                let r = (newer - c_theta) / (older - c_theta);
                Some(c_theta + (newer - c_theta) * r)
            }
            _ => None,
        };
        let solved = match extrapolated {
            Some(seed) => satellite_center(p, q, Some(seed)).or_else(|_| satellite_center(p, q, None)),
            None => satellite_center(p, q, None),
        };
        match solved {
            Ok(pt) => {
                done.push(pt.c);
                let d = (c_theta - pt.c).norm();
                out.push(Ok(ScalingRow {
                    n: conv.n,
                    p: conv.p,
                    q: conv.q,
                    side: conv.side,
                    a: pt.c,
                    d,
                    s: (conv.q as f64).powi(2) * d,
                }));
            }
            Err(error) => out.push(Err(RowFailure {
                n: conv.n,
                p: conv.p,
                q: conv.q,
                side: conv.side,
                error,
            })),
        }
    }
    out
}

fn join<A: Send, B: Send>(a: impl FnOnce() -> A + Send, b: impl FnOnce() -> B + Send) -> (A, B) {
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}

/// Satellite centers at every convergent of θ with `q_n <= q_max`, with
/// distances to `c(θ)` and the rescaled distances `s_n = q_n² d_n`.
///
/// Solver failures are recorded per row and do not abort the table.
pub fn scaling_table(theta: &RotationNumber, q_max: u64) -> Result<ScalingTable> {
    if theta.is_rational() {
        return Err(Error::RationalNotAllowed(theta.to_string()));
    }
    if q_max > u64::from(u32::MAX) {
        return Err(Error::InvalidInput(format!("q_max = {q_max} is too large")));
    }
    let c_theta = cardioid_point(theta).c;
    let convs = convergents(theta, q_max)?;
    let (left, right): (Vec<Convergent>, Vec<Convergent>) =
        convs.iter().partition(|c| c.side == ApproachSide::Left);
    let (l, r) = join(|| solve_chain(&left, c_theta), || solve_chain(&right, c_theta));
    let mut items: Vec<ChainItem> = l.into_iter().chain(r).collect();
    items.sort_by_key(|it| match it {
        Ok(row) => row.q,
        Err(f) => f.q,
    });
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for it in items {
        match it {
            Ok(row) => rows.push(row),
            Err(f) => failures.push(f),
        }
    }
    Ok(ScalingTable {
        c_theta,
        rows,
        failures,
    })
}
