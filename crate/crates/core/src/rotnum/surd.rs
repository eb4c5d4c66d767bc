//! Exact quadratic surds `(u + v*sqrt(d)) / w` with `i128` coefficients.
//!
//! This is the algebraic route for the prime renormalization of quadratic
//! irrationals: convert the continued fraction to a surd, apply the Möbius
//! map, and expand the result again. All arithmetic is checked; `None` means
//! the coefficients left the `i128` range.

use std::cmp::Ordering;

use super::cf::PeriodicCf;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Surd {
    u: i128,
    v: i128,
    w: i128,
    d: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn isqrt(n: i128) -> i128 {
    debug_assert!(n >= 0);
    (n as u128).isqrt() as i128
}

/// `floor((p + sqrt(d)) / q)` for non-square `d > 0`, `q != 0`.
fn floor_surd(p: i128, d: i128, q: i128) -> Option<i128> {
    let s = isqrt(d);
    if q > 0 {
        Some(p.checked_add(s)?.div_euclid(q))
    } else {
        // (p + sqrt d)/q = (-p - sqrt d)/(-q) and -sqrt d lies in (-s-1, -s).
        let num = p.checked_neg()?.checked_sub(s)?.checked_sub(1)?;
        Some(num.div_euclid(-q))
    }
}

impl Surd {
    fn reduce(u: i128, v: i128, w: i128, d: i128) -> Option<Self> {
        if w == 0 || v == 0 {
            return None;
        }
        let g = gcd(gcd(u, v), w);
        let sign = if w < 0 { -1 } else { 1 };
        Some(Surd {
            u: sign * u / g,
            v: sign * v / g,
            w: sign * w / g,
            d,
        })
    }

    /// Value of `[0; pre..., (period...)]`.
    pub(crate) fn from_cf(cf: &PeriodicCf) -> Option<Self> {
        // Tail zeta = [b1; b2, ..., bk, zeta] is fixed by the product of
        // [[b, 1], [1, 0]] matrices.
        let (mut a, mut b, mut c, mut e) = (1_i128, 0_i128, 0_i128, 1_i128);
        for &t in cf.period() {
            let t = i128::from(t);
            // [[a, b], [c, e]] * [[t, 1], [1, 0]]
            let (na, nb) = (a.checked_mul(t)?.checked_add(b)?, a);
            let (nc, ne) = (c.checked_mul(t)?.checked_add(e)?, c);
            a = na;
            b = nb;
            c = nc;
            e = ne;
        }
        // c z^2 + (e - a) z - b = 0, positive root.
        let diff = a.checked_sub(e)?;
        let disc = diff
            .checked_mul(diff)?
            .checked_add(b.checked_mul(c)?.checked_mul(4)?)?;
        let zeta = Surd::reduce(diff, 1, c.checked_mul(2)?, disc)?;

        // [0; c1, ..., cm, zeta] = J * prod [[c_i, 1], [1, 0]] applied to zeta.
        let (mut a, mut b, mut c, mut e) = (0_i128, 1_i128, 1_i128, 0_i128);
        for &t in cf.preperiod() {
            let t = i128::from(t);
            let (na, nb) = (a.checked_mul(t)?.checked_add(b)?, a);
            let (nc, ne) = (c.checked_mul(t)?.checked_add(e)?, c);
            a = na;
            b = nb;
            c = nc;
            e = ne;
        }
        zeta.mobius(a, b, c, e)
    }

    /// `(a x + b) / (c x + e)`.
    pub(crate) fn mobius(&self, a: i128, b: i128, c: i128, e: i128) -> Option<Self> {
        let n1 = a.checked_mul(self.u)?.checked_add(b.checked_mul(self.w)?)?;
        let n2 = a.checked_mul(self.v)?;
        let d1 = c.checked_mul(self.u)?.checked_add(e.checked_mul(self.w)?)?;
        let d2 = c.checked_mul(self.v)?;
        // Multiply through by the conjugate d1 - d2 sqrt(d).
        let u = n1
            .checked_mul(d1)?
            .checked_sub(n2.checked_mul(d2)?.checked_mul(self.d)?)?;
        let v = n2.checked_mul(d1)?.checked_sub(n1.checked_mul(d2)?)?;
        let w = d1
            .checked_mul(d1)?
            .checked_sub(d2.checked_mul(d2)?.checked_mul(self.d)?)?;
        Surd::reduce(u, v, w, self.d)
    }

    /// Exact comparison with `num/den` (`den > 0`).
    pub(crate) fn cmp_rational(&self, num: i128, den: i128) -> Option<Ordering> {
        // sign of (u + v sqrt d)/w - num/den = (den u - num w + den v sqrt d) / (w den)
        let a = den.checked_mul(self.u)?.checked_sub(num.checked_mul(self.w)?)?;
        let b = den.checked_mul(self.v)?;
        let sign_num = match (a.signum(), b.signum()) {
            (sa, sb) if sa >= 0 && sb >= 0 => {
                if sa == 0 && sb == 0 {
                    0
                } else {
                    1
                }
            }
            (sa, sb) if sa <= 0 && sb <= 0 => -1,
            (sa, _) => {
                // Opposite signs: compare a^2 with b^2 d.
                let lhs = a.checked_mul(a)?;
                let rhs = b.checked_mul(b)?.checked_mul(self.d)?;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa as i32,
                    Ordering::Less => -(sa as i32),
                    Ordering::Equal => 0,
                }
            }
        };
        // w > 0 after reduction and den > 0.
        Some(sign_num.cmp(&0))
    }

    #[cfg(test)]
    pub(crate) fn to_f64(self) -> f64 {
        (self.u as f64 + self.v as f64 * (self.d as f64).sqrt()) / self.w as f64
    }

    /// Continued fraction of a surd in (0, 1), with exact cycle detection.
    pub(crate) fn to_cf(self) -> Option<PeriodicCf> {
        let (mut p, mut q, dd) = if self.v > 0 {
            (self.u, self.w, self.v.checked_mul(self.v)?.checked_mul(self.d)?)
        } else {
            (-self.u, -self.w, self.v.checked_mul(self.v)?.checked_mul(self.d)?)
        };
        let mut big_d = dd;
        if (big_d - p.checked_mul(p)?) % q != 0 {
            let aq = q.abs();
            p = p.checked_mul(aq)?;
            big_d = big_d.checked_mul(aq)?.checked_mul(aq)?;
            q = q.checked_mul(aq)?;
        }
        let a0 = floor_surd(p, big_d, q)?;
        if a0 != 0 {
            return None;
        }
        let mut states: Vec<(i128, i128)> = Vec::new();
        let mut terms: Vec<u32> = Vec::new();
        // Step to x1 = 1 / (x0 - a0).
        p = a0.checked_mul(q)?.checked_sub(p)?;
        q = big_d.checked_sub(p.checked_mul(p)?)? / q;
        loop {
            if let Some(start) = states.iter().position(|&s| s == (p, q)) {
                let period = terms[start..].to_vec();
                let pre = terms[..start].to_vec();
                return PeriodicCf::new(pre, period).ok();
            }
            if states.len() > 100_000 {
                return None;
            }
            states.push((p, q));
            let a = floor_surd(p, big_d, q)?;
            terms.push(u32::try_from(a).ok()?);
            p = a.checked_mul(q)?.checked_sub(p)?;
            q = big_d.checked_sub(p.checked_mul(p)?)? / q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_surd() {
        let golden = PeriodicCf::new(vec![], vec![1]).unwrap();
        let s = Surd::from_cf(&golden).unwrap();
        assert!((s.to_f64() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert_eq!(s.to_cf().unwrap(), golden);
    }

    #[test]
    fn cf_round_trip_through_surd() {
        let cases = [
            (vec![], vec![2]),
            (vec![3, 1], vec![2, 5]),
            (vec![1], vec![1, 4, 2]),
            (vec![7, 7, 2], vec![3]),
        ];
        for (pre, per) in cases {
            let cf = PeriodicCf::new(pre, per).unwrap();
            let s = Surd::from_cf(&cf).unwrap();
            assert!((s.to_f64() - cf.to_f64()).abs() < 1e-14);
            assert_eq!(s.to_cf().unwrap(), cf);
        }
    }

    #[test]
    fn compare_with_half() {
        let golden = Surd::from_cf(&PeriodicCf::new(vec![], vec![1]).unwrap()).unwrap();
        assert_eq!(golden.cmp_rational(1, 2), Some(Ordering::Greater));
        let silver = Surd::from_cf(&PeriodicCf::new(vec![], vec![2]).unwrap()).unwrap();
        assert_eq!(silver.cmp_rational(1, 2), Some(Ordering::Less));
        assert_eq!(silver.cmp_rational(2, 5), Some(Ordering::Greater));
    }
}
