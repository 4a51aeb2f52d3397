//! Coefficient parsing: comma-separated lists in descending powers of X,
//! entries as integers, rationals `p/q`, or Gaussian integers `a+bi`.

use binform::arith::GaussInt;
use num::complex::Complex64;
use num::{BigInt, BigRational, ToPrimitive};

pub fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("not an integer: {s:?}"))
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    match t.split_once('/') {
        Some((num, den)) => {
            let n = parse_bigint(num)?;
            let d = parse_bigint(den)?;
            if d == BigInt::from(0) {
                return Err(format!("zero denominator: {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(parse_bigint(t)?)),
    }
}

pub fn parse_gauss_int(s: &str) -> Result<GaussInt, String> {
    let t = s.trim();
    if !t.ends_with('i') {
        return Ok(GaussInt::new(parse_bigint(t)?, BigInt::from(0)));
    }
    let body = &t[..t.len() - 1];
    let unit_im = |tag: &str| -> Result<BigInt, String> {
        match tag {
            "" | "+" => Ok(BigInt::from(1)),
            "-" => Ok(BigInt::from(-1)),
            other => parse_bigint(other),
        }
    };
    if let Some(pos) = body.rfind(['+', '-']).filter(|&p| p > 0) {
        Ok(GaussInt {
            re: parse_bigint(&body[..pos])?,
            im: unit_im(&body[pos..])?,
        })
    } else {
        Ok(GaussInt {
            re: BigInt::from(0),
            im: unit_im(body)?,
        })
    }
}

/// A coefficient that may be rational or Gaussian-integral; for the julia
/// paths everything is lowered to a complex double.
pub fn parse_complex_entry(s: &str) -> Result<Complex64, String> {
    if let Ok(r) = parse_rational(s) {
        return Ok(Complex64::new(r.to_f64().ok_or("rational overflow")?, 0.0));
    }
    let g = parse_gauss_int(s)?;
    Ok(g.to_complex())
}

pub fn split_list(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect()
}

pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>, String> {
    split_list(s).into_iter().map(parse_rational).collect()
}

pub fn parse_bigint_list(s: &str) -> Result<Vec<BigInt>, String> {
    split_list(s).into_iter().map(parse_bigint).collect()
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    split_list(s).into_iter().map(parse_complex_entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_forms() {
        assert_eq!(parse_gauss_int("1-i").unwrap(), GaussInt::new(1, -1));
        assert_eq!(parse_gauss_int("-i").unwrap(), GaussInt::new(0, -1));
        assert_eq!(parse_gauss_int("i").unwrap(), GaussInt::new(0, 1));
        assert_eq!(parse_gauss_int("-2+3i").unwrap(), GaussInt::new(-2, 3));
        assert_eq!(parse_gauss_int("7").unwrap(), GaussInt::new(7, 0));
        assert_eq!(parse_gauss_int("2-2i").unwrap(), GaussInt::new(2, -2));
        assert!(parse_gauss_int("x+i").is_err());
    }

    #[test]
    fn rationals_round_trip_on_canonical_strings() {
        for s in ["3", "-7", "1/2", "-22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn lists() {
        assert_eq!(parse_bigint_list("4,0,-3").unwrap().len(), 3);
        assert!(parse_bigint_list("4,x").is_err());
    }
}
