//! Angle tokens shared by the graph file format and the command line.
//!
//! Accepted forms, all in radians:
//!
//! * decimal floats: `0.5`, `-1.25e-3`
//! * multiples and fractions of pi: `pi`, `-pi`, `pi/2`, `pi/16`, `3pi/16`, `3*pi/4`, `2pi`

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Parses a single angle token.
pub fn parse_angle(token: &str) -> Result<f64> {
    let bad = || Error::InvalidAngle(token.to_string());
    let trimmed = token.trim();
    if trimmed.is_empty() {
        return Err(bad());
    }

    if let Some(pos) = trimmed.find("pi") {
        let (sign, head) = match trimmed[..pos].strip_prefix('-') {
            Some(rest) => (-1.0, rest),
            None => (1.0, &trimmed[..pos]),
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        let numerator = if head.is_empty() {
            1.0
        } else {
            head.parse::<u64>().map_err(|_| bad())? as f64
        };
        let tail = &trimmed[pos + 2..];
        let denominator = if tail.is_empty() {
            1.0
        } else {
            let d = tail
                .strip_prefix('/')
                .ok_or_else(bad)?
                .parse::<u64>()
                .map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            d as f64
        };
        return Ok(sign * numerator * PI / denominator);
    }

    let value: f64 = trimmed.parse().map_err(|_| bad())?;
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_fractions() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("pi/16").unwrap(), PI / 16.0);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("3pi/16").unwrap(), 3.0 * PI / 16.0);
        assert_eq!(parse_angle("3*pi/16").unwrap(), 3.0 * PI / 16.0);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        assert_eq!(parse_angle("-0.25").unwrap(), -0.25);
        assert_eq!(parse_angle("1e-3").unwrap(), 1e-3);
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "", "pie", "pi/", "pi/0", "x", "nan", "inf", "pi/2.5", "1.5pi",
        ] {
            assert!(parse_angle(bad).is_err(), "{bad} should be rejected");
        }
    }
}
