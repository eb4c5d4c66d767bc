//! Textual form: `p/q`, `0`, `[0;a1,a2,(b1,...,bk)]`, optionally prefixed
//! by `1-` for the complement side. A bracket without a parenthesized
//! period is a finite expansion and parses to a fraction.

use std::str::FromStr;

use super::{eval_finite, CfSide, PeriodicCf, QuadraticIrrational, RotationNumber};
use crate::error::Error;

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_coeff(input: &str, tok: &str) -> Result<u32, Error> {
    let v: u32 = tok
        .trim()
        .parse()
        .map_err(|_| parse_err(input, format!("bad coefficient {tok:?}")))?;
    if v == 0 {
        return Err(parse_err(input, "coefficients must be positive"));
    }
    Ok(v)
}

impl FromStr for RotationNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let input = s.trim();
        if input == "0" {
            return Ok(RotationNumber::ZERO);
        }
        if let Some((p, q)) = input.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| parse_err(input, "bad numerator"))?;
            let q: u64 = q
                .trim()
                .parse()
                .map_err(|_| parse_err(input, "bad denominator"))?;
            return RotationNumber::rational(p, q).map_err(|e| parse_err(input, e.to_string()));
        }

        let (side, body) = match input.strip_prefix("1-") {
            Some(rest) => (CfSide::Complement, rest.trim()),
            None => (CfSide::Direct, input),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| parse_err(input, "expected p/q or [0;...]"))?;
        let (head, tail) = inner
            .split_once(';')
            .ok_or_else(|| parse_err(input, "missing ';'"))?;
        if head.trim() != "0" {
            return Err(parse_err(input, "integer part must be 0"));
        }

        let (pre_text, period_text) = match tail.find('(') {
            Some(open) => {
                let close = tail
                    .rfind(')')
                    .filter(|&c| c > open && tail[c + 1..].trim().is_empty())
                    .ok_or_else(|| parse_err(input, "period must be a final (...) group"))?;
                let pre = tail[..open].trim().trim_end_matches(',');
                (pre, Some(&tail[open + 1..close]))
            }
            None => (tail, None),
        };

        let pre = if pre_text.trim().is_empty() {
            Vec::new()
        } else {
            pre_text
                .split(',')
                .map(|t| parse_coeff(input, t))
                .collect::<Result<Vec<_>, _>>()?
        };

        match period_text {
            Some(per) => {
                let period = per
                    .split(',')
                    .map(|t| parse_coeff(input, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let cf = PeriodicCf::new(pre, period).map_err(|e| parse_err(input, e.to_string()))?;
                Ok(RotationNumber::Quadratic(QuadraticIrrational::new(cf, side)))
            }
            None => {
                if pre.is_empty() {
                    return Err(parse_err(input, "empty expansion"));
                }
                let (num, den) = eval_finite(&pre);
                let value = if num == den {
                    RotationNumber::ZERO
                } else {
                    RotationNumber::rational(num, den).map_err(|e| parse_err(input, e.to_string()))?
                };
                Ok(match side {
                    CfSide::Direct => value,
                    CfSide::Complement => value.complement(),
                })
            }
        }
    }
}
