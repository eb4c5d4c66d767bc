//! Exact rotation numbers and the combinatorial renormalization calculus.
//!
//! A rotation number is either a reduced fraction `p/q` in `[0, 1)` or a
//! quadratic irrational stored as an eventually periodic continued fraction.
//! The prime renormalization
//!
//! ```text
//! θ ↦ θ / (1 - θ)      for θ ≤ 1/2
//! θ ↦ (2θ - 1) / θ     for θ ≥ 1/2
//! ```
//!
//! is available through two independent routes: [`prime_renormalize`]
//! (Möbius arithmetic on fractions and surds) and [`cf_prime_step`]
//! (coefficient rewriting on the continued fraction).

mod cf;
mod parse;
mod surd;

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

pub use cf::{eval_finite, rational_terms, PeriodicCf, EVAL_DEPTH};

use crate::error::{Error, Result};
use surd::Surd;

/// A reduced fraction `num/den` with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };

    /// Reduces `num/den`; requires `num < den`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::InvalidInput(format!("{num}/{den} is not in [0, 1)")));
        }
        let g = gcd_u64(num, den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den)).cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

/// Which side the stored continued fraction describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CfSide {
    /// θ = [0; a1, a2, ...]
    Direct,
    /// θ = 1 - [0; b1, b2, ...]
    Complement,
}

/// A quadratic irrational in (0, 1).
#[derive(Clone, Debug)]
pub struct QuadraticIrrational {
    cf: PeriodicCf,
    side: CfSide,
}

impl QuadraticIrrational {
    pub fn new(cf: PeriodicCf, side: CfSide) -> Self {
        QuadraticIrrational { cf, side }
    }

    pub fn cf(&self) -> &PeriodicCf {
        &self.cf
    }

    pub fn side(&self) -> CfSide {
        self.side
    }

    /// Expansion of θ itself.
    pub fn direct_cf(&self) -> Cow<'_, PeriodicCf> {
        match self.side {
            CfSide::Direct => Cow::Borrowed(&self.cf),
            CfSide::Complement => Cow::Owned(self.cf.complement()),
        }
    }

    /// Expansion of 1 - θ.
    pub fn complement_cf(&self) -> Cow<'_, PeriodicCf> {
        match self.side {
            CfSide::Direct => Cow::Owned(self.cf.complement()),
            CfSide::Complement => Cow::Borrowed(&self.cf),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.side {
            CfSide::Direct => self.cf.to_f64(),
            CfSide::Complement => 1.0 - self.cf.to_f64(),
        }
    }
}

impl PartialEq for QuadraticIrrational {
    fn eq(&self, other: &Self) -> bool {
        self.direct_cf() == other.direct_cf()
    }
}

impl Eq for QuadraticIrrational {}

impl Hash for QuadraticIrrational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.direct_cf().hash(state);
    }
}

/// An exact angle θ in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RotationNumber {
    Rational(Fraction),
    Quadratic(QuadraticIrrational),
}

impl RotationNumber {
    pub const ZERO: RotationNumber = RotationNumber::Rational(Fraction::ZERO);

    pub fn rational(num: u64, den: u64) -> Result<Self> {
        Ok(RotationNumber::Rational(Fraction::new(num, den)?))
    }

    /// θ = [0; pre..., (period...)].
    pub fn quadratic(pre: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        Ok(RotationNumber::Quadratic(QuadraticIrrational::new(
            PeriodicCf::new(pre, period)?,
            CfSide::Direct,
        )))
    }

    /// θ = 1 - [0; pre..., (period...)].
    pub fn quadratic_complement(pre: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        Ok(RotationNumber::Quadratic(QuadraticIrrational::new(
            PeriodicCf::new(pre, period)?,
            CfSide::Complement,
        )))
    }

    /// (√5 - 1)/2 = [0; 1, 1, 1, ...]
    pub fn golden() -> Self {
        Self::quadratic(vec![], vec![1]).expect("valid expansion")
    }

    /// (3 - √5)/2 = 1 - golden = [0; 2, 1, 1, ...]
    pub fn anti_golden() -> Self {
        Self::quadratic(vec![2], vec![1]).expect("valid expansion")
    }

    /// √2 - 1 = [0; 2, 2, 2, ...]
    pub fn silver() -> Self {
        Self::quadratic(vec![], vec![2]).expect("valid expansion")
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RotationNumber::Rational(f) if f.num == 0)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RotationNumber::Rational(_))
    }

    /// Floating-point value. Irrationals are evaluated from a depth-64
    /// truncation of their continued fraction.
    pub fn to_f64(&self) -> f64 {
        match self {
            RotationNumber::Rational(f) => f.to_f64(),
            RotationNumber::Quadratic(qi) => qi.to_f64(),
        }
    }

    /// 1 - θ (with 1 - 0 = 0).
    pub fn complement(&self) -> Self {
        match self {
            RotationNumber::Rational(f) if f.num == 0 => self.clone(),
            RotationNumber::Rational(f) => RotationNumber::Rational(Fraction {
                num: f.den - f.num,
                den: f.den,
            }),
            RotationNumber::Quadratic(qi) => {
                let side = match qi.side {
                    CfSide::Direct => CfSide::Complement,
                    CfSide::Complement => CfSide::Direct,
                };
                RotationNumber::Quadratic(QuadraticIrrational::new(qi.cf.clone(), side))
            }
        }
    }

    /// Canonical representative: quadratics on the direct side.
    pub fn canonical(&self) -> Self {
        match self {
            RotationNumber::Quadratic(qi) if qi.side == CfSide::Complement => RotationNumber::Quadratic(
                QuadraticIrrational::new(qi.direct_cf().into_owned(), CfSide::Direct),
            ),
            _ => self.clone(),
        }
    }

    /// Coefficient `a1` of θ and of 1 - θ, for θ ≠ 0.
    fn leading_terms(&self) -> (u32, u32) {
        match self {
            RotationNumber::Rational(f) => {
                let direct = rational_terms(f.num, f.den);
                let comp = rational_terms(f.den - f.num, f.den);
                (direct[0], comp[0])
            }
            RotationNumber::Quadratic(qi) => (qi.direct_cf().first(), qi.complement_cf().first()),
        }
    }

    /// Whether θ ≤ 1/2.
    fn in_lower_half(&self) -> bool {
        match self {
            RotationNumber::Rational(f) => 2 * u128::from(f.num) <= u128::from(f.den),
            RotationNumber::Quadratic(qi) => qi.direct_cf().first() >= 2,
        }
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationNumber::Rational(fr) if fr.num == 0 => write!(f, "0"),
            RotationNumber::Rational(fr) => write!(f, "{}/{}", fr.num, fr.den),
            RotationNumber::Quadratic(qi) => {
                if qi.side == CfSide::Complement {
                    write!(f, "1-")?;
                }
                write!(f, "[0;")?;
                let mut first = true;
                for a in qi.cf.preperiod() {
                    if !first {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                    first = false;
                }
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "(")?;
                for (i, b) in qi.cf.period().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")]")
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Prime renormalization
// ---------------------------------------------------------------------------

/// Prime renormalization by Möbius arithmetic: θ/(1-θ) on [0, 1/2] and
/// (2θ-1)/θ on [1/2, 1). 0 is fixed and 1/2 maps to 0.
pub fn prime_renormalize(theta: &RotationNumber) -> RotationNumber {
    match theta {
        RotationNumber::Rational(f) => {
            let (p, q) = (f.num, f.den);
            if p == 0 || 2 * p == q {
                return RotationNumber::ZERO;
            }
            let frac = if 2 * p < q {
                Fraction::new(p, q - p)
            } else {
                Fraction::new(2 * p - q, p)
            };
            RotationNumber::Rational(frac.expect("prime renormalization stays in [0, 1)"))
        }
        RotationNumber::Quadratic(qi) => surd_prime_step(qi).unwrap_or_else(|| cf_prime_step(theta)),
    }
}

fn surd_prime_step(qi: &QuadraticIrrational) -> Option<RotationNumber> {
    let s = Surd::from_cf(&qi.direct_cf())?;
    let image = match s.cmp_rational(1, 2)? {
        Ordering::Less => s.mobius(1, 0, -1, 1)?,
        Ordering::Greater => s.mobius(2, -1, 1, 0)?,
        Ordering::Equal => return None,
    };
    let cf = image.to_cf()?;
    Some(RotationNumber::Quadratic(QuadraticIrrational::new(
        cf,
        CfSide::Direct,
    )))
}

/// Prime renormalization as a continued-fraction rewrite:
///
/// ```text
/// [0; a1, a2, ...]     ↦ [0; a1-1, a2, ...]       if a1 > 1
///                      ↦ 1 - [0; a2, a3, ...]     if a1 = 1
/// 1 - [0; b1, b2, ...] ↦ 1 - [0; b1-1, b2, ...]   if b1 > 1
///                      ↦ [0; b2, b3, ...]         if b1 = 1
/// ```
///
/// Rationals are rewritten on their canonical finite expansion; a result of
/// `[0; 1] = 1` is read mod 1 as 0.
pub fn cf_prime_step(theta: &RotationNumber) -> RotationNumber {
    match theta {
        RotationNumber::Rational(f) => {
            if f.num == 0 {
                return RotationNumber::ZERO;
            }
            let terms = rational_terms(f.num, f.den);
            let (num, den) = if terms[0] > 1 {
                let mut t = terms.clone();
                t[0] -= 1;
                eval_finite(&t)
            } else {
                let (n, d) = eval_finite(&terms[1..]);
                (d - n, d)
            };
            if num == den {
                RotationNumber::ZERO
            } else {
                RotationNumber::rational(num, den).expect("value in [0, 1)")
            }
        }
        RotationNumber::Quadratic(qi) => {
            let a1 = qi.cf.first();
            let (cf, side) = match (qi.side, a1 > 1) {
                (side, true) => (qi.cf.with_first(a1 - 1), side),
                (CfSide::Direct, false) => (qi.cf.drop_first(), CfSide::Complement),
                (CfSide::Complement, false) => (qi.cf.drop_first(), CfSide::Direct),
            };
            RotationNumber::Quadratic(QuadraticIrrational::new(cf, side))
        }
    }
}

/// Long-run behaviour of θ under iterated prime renormalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitSignature {
    /// The orbit reaches the fixed point 0 after `steps` steps.
    Fixed {
        steps: usize,
    },
    /// The orbit enters a cycle: `R^(preperiod + period)(θ) = R^preperiod(θ)`.
    Periodic {
        preperiod: usize,
        period: usize,
    },
    NotDetectedWithin(usize),
}

pub fn orbit_signature(theta: &RotationNumber, max_steps: usize) -> OrbitSignature {
    let mut seen: Vec<RotationNumber> = vec![theta.canonical()];
    loop {
        let last = seen.last().expect("non-empty history");
        if last.is_zero() {
            return OrbitSignature::Fixed {
                steps: seen.len() - 1,
            };
        }
        if seen.len() > max_steps {
            return OrbitSignature::NotDetectedWithin(max_steps);
        }
        let next = prime_renormalize(last).canonical();
        if let Some(i) = seen.iter().position(|x| *x == next) {
            return OrbitSignature::Periodic {
                preperiod: i,
                period: seen.len() - i,
            };
        }
        seen.push(next);
    }
}

/// Whether θ ∈ Θ_N: all coefficients of θ, or all coefficients of 1 - θ,
/// are at most `bound`.
pub fn is_bounded_type(theta: &RotationNumber, bound: u32) -> Result<bool> {
    match theta {
        RotationNumber::Rational(_) => Err(Error::RationalNotAllowed(theta.to_string())),
        RotationNumber::Quadratic(qi) => {
            Ok(qi.direct_cf().max_coefficient() <= bound || qi.complement_cf().max_coefficient() <= bound)
        }
    }
}

/// Number of prime steps composing the first return to the fundamental
/// sector: `R_fast = R^n`.
///
/// For θ ∉ {1/m, 1 - 1/m} this is the leading coefficient of the expansion
/// of min(θ, 1 - θ); for θ ∈ {1/m, 1 - 1/m} one branch of the return map is
/// degenerate and n = m - 1.
pub fn fast_step_count(theta: &RotationNumber) -> Result<u32> {
    if theta.is_zero() {
        return Err(Error::InvalidInput("θ = 0 has no fundamental sector".into()));
    }
    if let RotationNumber::Rational(f) = theta {
        if f.num == 1 || f.num + 1 == f.den {
            return Ok(u32::try_from(f.den - 1).expect("denominator fits u32"));
        }
    }
    let (direct, comp) = theta.leading_terms();
    Ok(if theta.in_lower_half() { direct } else { comp })
}

/// First return to the fundamental sector, as a rotation number.
pub fn fast_renormalize(theta: &RotationNumber) -> Result<RotationNumber> {
    let n = fast_step_count(theta)?;
    Ok((0..n).fold(theta.clone(), |t, _| prime_renormalize(&t)))
}

/// Renormalization return times of `p/q`: `p·a ≡ -1`, `p·b ≡ 1 (mod q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReturnTimes {
    pub a: u64,
    pub b: u64,
    pub q: u64,
}

fn mod_inverse(p: u64, q: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(p), i128::from(q));
    let (mut old_s, mut s) = (1_i128, 0_i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(i128::from(q)) as u64)
}

fn check_pq(p: u64, q: u64) -> Result<()> {
    if q < 3 {
        return Err(Error::InvalidInput(format!("q = {q} must be at least 3")));
    }
    if p == 0 || p >= q {
        return Err(Error::InvalidInput(format!("p = {p} must lie in 1..{q}")));
    }
    if gcd_u64(p, q) != 1 {
        return Err(Error::InvalidInput(format!("{p} and {q} are not coprime")));
    }
    Ok(())
}

pub fn return_times(p: u64, q: u64) -> Result<ReturnTimes> {
    check_pq(p, q)?;
    let b = mod_inverse(p, q).expect("coprime");
    Ok(ReturnTimes { a: q - b, b, q })
}

/// Side of θ on which a convergent lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproachSide {
    /// p/q < θ (even index).
    Left,
    /// p/q > θ (odd index).
    Right,
}

impl ApproachSide {
    pub fn as_str(self) -> &'static str {
        match self {
            ApproachSide::Left => "left",
            ApproachSide::Right => "right",
        }
    }
}

impl fmt::Display for ApproachSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Convergent {
    /// Index in the standard recursion, with `p_0/q_0 = 0/1`.
    pub n: usize,
    pub p: u64,
    pub q: u64,
    pub side: ApproachSide,
}

/// Convergents `p_n/q_n` of an irrational θ with `2 <= q_n <= q_max`.
pub fn convergents(theta: &RotationNumber, q_max: u64) -> Result<Vec<Convergent>> {
    let RotationNumber::Quadratic(qi) = theta else {
        return Err(Error::RationalNotAllowed(theta.to_string()));
    };
    let cf = qi.direct_cf();
    let mut out = Vec::new();
    // (p_{n-1}, q_{n-1}) and (p_{n-2}, q_{n-2}) starting from p_0/q_0 = 0/1.
    let (mut p_prev, mut q_prev) = (0_u64, 1_u64);
    let (mut p_prev2, mut q_prev2) = (1_u64, 0_u64);
    for (i, a) in cf.terms().enumerate() {
        let n = i + 1;
        let a = u64::from(a);
        let (p, q) = match (
            a.checked_mul(p_prev).and_then(|x| x.checked_add(p_prev2)),
            a.checked_mul(q_prev).and_then(|x| x.checked_add(q_prev2)),
        ) {
            (Some(p), Some(q)) => (p, q),
            _ => break,
        };
        if q > q_max {
            break;
        }
        if q >= 2 {
            let side = if n % 2 == 0 {
                ApproachSide::Left
            } else {
                ApproachSide::Right
            };
            out.push(Convergent { n, p, q, side });
        }
        (p_prev2, q_prev2) = (p_prev, q_prev);
        (p_prev, q_prev) = (p, q);
    }
    Ok(out)
}

/// One prime anti-renormalization step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeToken {
    /// The 1/3 anti-renormalization (emitted when p/q < 1/2).
    P13,
    /// The 2/3 anti-renormalization (emitted when p/q > 1/2).
    P23,
}

impl fmt::Display for PrimeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeToken::P13 => "P13",
            PrimeToken::P23 => "P23",
        })
    }
}

/// Factors the `p/q` anti-renormalization into prime ones, following
/// `p/q → R(p/q) → ...` down to denominator 3 (base token included).
pub fn anti_prime_factorize(p: u64, q: u64) -> Result<Vec<PrimeToken>> {
    check_pq(p, q)?;
    let mut word = Vec::new();
    let (mut p, mut q) = (p, q);
    loop {
        word.push(if 2 * p < q {
            PrimeToken::P13
        } else {
            PrimeToken::P23
        });
        if q == 3 {
            return Ok(word);
        }
        (p, q) = if 2 * p < q { (p, q - p) } else { (2 * p - q, p) };
    }
}
