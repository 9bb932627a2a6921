//! Exact rational arithmetic on `i128`.
//!
//! All densities, areas, and bound values in this crate are exact fractions.
//! Intermediate products use 128-bit integers and every operation is checked:
//! an overflow aborts with a panic rather than silently wrapping. The
//! quantities that actually occur (block densities, region areas, Pick
//! counts) are far below the overflow threshold.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An exact fraction `num/den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Ratio {
        assert!(den != 0, "ratio denominator must be nonzero");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num, den);
        if g == 0 {
            return Ratio { num: 0, den: 1 };
        }
        Ratio {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn from_int(n: i128) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn abs(&self) -> Ratio {
        Ratio {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Ratio {
        assert!(self.num != 0, "reciprocal of zero");
        Ratio::new(self.den, self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn checked_mul_i128(a: i128, b: i128) -> i128 {
        a.checked_mul(b).expect("ratio arithmetic overflowed i128")
    }
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        // Reduce by gcd of denominators first to keep intermediates small.
        let g = gcd_i128(self.den, rhs.den);
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        let num = Ratio::checked_mul_i128(self.num, lhs_scale)
            .checked_add(Ratio::checked_mul_i128(rhs.num, rhs_scale))
            .expect("ratio arithmetic overflowed i128");
        let den = Ratio::checked_mul_i128(self.den, lhs_scale);
        Ratio::new(num, den)
    }
}

impl Sub for Ratio {
    type Output = Ratio;
    fn sub(self, rhs: Ratio) -> Ratio {
        self + (-rhs)
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        // Cross-reduce before multiplying; denominators are positive, so the
        // gcds are at least 1.
        let g1 = gcd_i128(self.num, rhs.den).max(1);
        let g2 = gcd_i128(rhs.num, self.den).max(1);
        let num = Ratio::checked_mul_i128(self.num / g1, rhs.num / g2);
        let den = Ratio::checked_mul_i128(self.den / g2, rhs.den / g1);
        Ratio::new(num, den)
    }
}

impl Div for Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        self * rhs.recip()
    }
}

impl AddAssign for Ratio {
    fn add_assign(&mut self, rhs: Ratio) {
        *self = *self + rhs;
    }
}

impl SubAssign for Ratio {
    fn sub_assign(&mut self, rhs: Ratio) {
        *self = *self - rhs;
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        let lhs = Ratio::checked_mul_i128(self.num, other.den);
        let rhs = Ratio::checked_mul_i128(other.num, self.den);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parse error for [`Ratio::from_str`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRatioError(String);

impl fmt::Display for ParseRatioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid ratio: {}", self.0)
    }
}

impl std::error::Error for ParseRatioError {}

impl FromStr for Ratio {
    type Err = ParseRatioError;

    /// Accepts `"num/den"` or a bare integer.
    fn from_str(s: &str) -> Result<Ratio, ParseRatioError> {
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num: i128 = num_s
            .trim()
            .parse()
            .map_err(|_| ParseRatioError(s.to_string()))?;
        let den: i128 = den_s
            .trim()
            .parse()
            .map_err(|_| ParseRatioError(s.to_string()))?;
        if den == 0 {
            return Err(ParseRatioError(s.to_string()));
        }
        Ok(Ratio::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        assert_eq!(Ratio::new(4, -6), Ratio::new(-2, 3));
        assert_eq!(Ratio::new(0, -5), Ratio::ZERO);
        assert_eq!(Ratio::new(36, 400), Ratio::new(9, 100));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Ratio::new(1, 6);
        let b = Ratio::new(1, 12);
        assert_eq!(a + b, Ratio::new(1, 4));
        assert_eq!(a * Ratio::from_int(172) + b * Ratio::from_int(200), Ratio::new(136, 3));
        assert_eq!(Ratio::new(136, 3) / Ratio::from_int(400), Ratio::new(17, 150));
    }

    #[test]
    fn ordering_and_display() {
        assert!(Ratio::new(7, 96) < Ratio::new(17, 150));
        assert_eq!(Ratio::new(21, 242).to_string(), "21/242");
        assert_eq!("175/1452".parse::<Ratio>().unwrap(), Ratio::new(175, 1452));
        assert_eq!("-3".parse::<Ratio>().unwrap(), Ratio::from_int(-3));
        assert!("1/0".parse::<Ratio>().is_err());
    }
}
