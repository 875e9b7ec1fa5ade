//! Exact point values.
//!
//! Weights, points and distances are rationals so that grading is
//! reproducible and independent of summation order. Values are parsed from
//! and rendered as decimal strings (`"1.5"`, `"-0.25"`, `"2"`); a rational
//! without a finite decimal expansion renders as `p/q`.

use alloc::string::{String, ToString};
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

type Inner = Ratio<i128>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Points(Inner);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid point value {input:?}: {reason}")]
pub struct ParsePointsError {
    pub input: String,
    pub reason: &'static str,
}

impl Points {
    pub const ZERO: Points = Points(Ratio::new_raw(0, 1));

    pub fn from_integer(n: i64) -> Self {
        Points(Ratio::from_integer(i128::from(n)))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Points(Ratio::new(i128::from(num), i128::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn max(self, other: Points) -> Points {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Points) -> Points {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Lossy conversion for display and statistics only.
    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl From<i64> for Points {
    fn from(n: i64) -> Self {
        Points::from_integer(n)
    }
}

impl FromStr for Points {
    type Err = ParsePointsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParsePointsError {
            input: s.to_string(),
            reason,
        };
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| err("bad numerator"))?;
            let d: i128 = d.trim().parse().map_err(|_| err("bad denominator"))?;
            if d == 0 {
                return Err(err("zero denominator"));
            }
            return Ok(Points(Ratio::new(n, d)));
        }
        let (negative, digits) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err("expected a decimal number"));
        }
        if frac_part.len() > 18 {
            return Err(err("too many decimal places"));
        }
        let mut numer: i128 = 0;
        for b in int_part.bytes().chain(frac_part.bytes()) {
            numer = numer
                .checked_mul(10)
                .and_then(|v| v.checked_add(i128::from(b - b'0')))
                .ok_or_else(|| err("value out of range"))?;
        }
        let denom = 10i128.pow(frac_part.len() as u32);
        if negative {
            numer = -numer;
        }
        Ok(Points(Ratio::new(numer, denom)))
    }
}

impl fmt::Display for Points {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = *self.0.numer();
        let mut denom = *self.0.denom();
        // Finite decimal expansion iff the reduced denominator is 2^a * 5^b.
        let (mut twos, mut fives) = (0u32, 0u32);
        while denom % 2 == 0 {
            denom /= 2;
            twos += 1;
        }
        while denom % 5 == 0 {
            denom /= 5;
            fives += 1;
        }
        if denom != 1 {
            return write!(f, "{}/{}", self.0.numer(), self.0.denom());
        }
        let places = twos.max(fives);
        let scaled = numer * (10i128.pow(places) / *self.0.denom());
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        let unit = 10u128.pow(places);
        let int_part = abs / unit;
        if places == 0 {
            return write!(f, "{sign}{int_part}");
        }
        let frac = abs % unit;
        write!(f, "{sign}{int_part}.{frac:0width$}", width = places as usize)
    }
}

impl Add for Points {
    type Output = Points;
    fn add(self, rhs: Points) -> Points {
        Points(self.0 + rhs.0)
    }
}

impl Sub for Points {
    type Output = Points;
    fn sub(self, rhs: Points) -> Points {
        Points(self.0 - rhs.0)
    }
}

impl Mul for Points {
    type Output = Points;
    fn mul(self, rhs: Points) -> Points {
        Points(self.0 * rhs.0)
    }
}

impl Div for Points {
    type Output = Points;
    fn div(self, rhs: Points) -> Points {
        Points(self.0 / rhs.0)
    }
}

impl Neg for Points {
    type Output = Points;
    fn neg(self) -> Points {
        Points(-self.0)
    }
}

impl AddAssign for Points {
    fn add_assign(&mut self, rhs: Points) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Points {
    fn sub_assign(&mut self, rhs: Points) {
        self.0 -= rhs.0;
    }
}

impl Sum for Points {
    fn sum<I: Iterator<Item = Points>>(iter: I) -> Points {
        iter.fold(Points::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Points> for Points {
    fn sum<I: Iterator<Item = &'a Points>>(iter: I) -> Points {
        iter.copied().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn p(s: &str) -> Points {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(p("1.5"), Points::from_ratio(3, 2));
        assert_eq!(p("-0.25"), Points::from_ratio(-1, 4));
        assert_eq!(p("2"), Points::from_integer(2));
        assert_eq!(p(".5"), Points::from_ratio(1, 2));
        assert_eq!(p("1/3"), Points::from_ratio(1, 3));
        assert_eq!(p("0.50"), p("0.5"));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "-", "1.2.3", "abc", "1e3", "1/0", "."] {
            assert!(bad.parse::<Points>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn renders_minimal_decimals() {
        assert_eq!(format!("{}", p("1.50")), "1.5");
        assert_eq!(format!("{}", p("2.00")), "2");
        assert_eq!(format!("{}", p("-0.125")), "-0.125");
        assert_eq!(format!("{}", p("0.05")), "0.05");
        assert_eq!(format!("{}", Points::from_ratio(-1, 2)), "-0.5");
        assert_eq!(format!("{}", Points::from_ratio(5, 6)), "5/6");
        assert_eq!(format!("{}", Points::ZERO), "0");
    }

    #[test]
    fn decimal_roundtrip() {
        for s in ["0", "1", "0.5", "12.34", "-7.001", "1000000"] {
            assert_eq!(format!("{}", p(s)), s);
        }
    }
}
