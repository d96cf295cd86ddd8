//! Scalar abstraction shared by every module.
//!
//! The core is written once against [`Scalar`] and instantiated for `f32`,
//! `f64` and exact [`BigRational`] arithmetic. Floats are what the CLI runs
//! on; the rational instance lets tests reproduce equality cases of the
//! contraction inequalities without rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Ordered field element used for coordinates, distances and constants.
pub trait Scalar:
    Clone + PartialOrd + fmt::Debug + fmt::Display + Num + Signed + Send + Sync + 'static
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Converts a finite `f64`. Exact types take the binary value verbatim.
    fn from_f64(v: f64) -> Option<Self>;

    fn as_f64(&self) -> f64;

    /// `num / den` computed in `Self` (exact for rationals, correctly rounded
    /// for floats when both integers are representable).
    fn from_ratio(num: i64, den: i64) -> Self;

    fn is_finite(&self) -> bool;

    /// Pivot / feasibility tolerance for internal solvers: zero for exact
    /// arithmetic, a small multiple of machine epsilon for floats.
    fn solver_epsilon() -> Self;

    /// Parses a decimal (`-0.25`, `1e-10`) or rational (`-1/4`) literal.
    fn parse_literal(text: &str) -> Option<Self>;

    /// Text that [`Scalar::parse_literal`] maps back to the same value.
    fn to_literal(&self) -> String;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn powi(&self, exp: usize) -> Self {
        num_traits::pow(self.clone(), exp)
    }
}

fn split_rational(text: &str) -> Option<(&str, &str)> {
    let (n, d) = text.split_once('/')?;
    Some((n.trim(), d.trim()))
}

macro_rules! impl_float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_f64(v: f64) -> Option<Self> {
                v.is_finite().then_some(v as $t)
            }

            fn as_f64(&self) -> f64 {
                *self as f64
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }

            fn solver_epsilon() -> Self {
                $eps
            }

            fn parse_literal(text: &str) -> Option<Self> {
                let text = text.trim();
                if let Some((n, d)) = split_rational(text) {
                    let n: f64 = n.parse().ok()?;
                    let d: f64 = d.parse().ok()?;
                    if d == 0.0 {
                        return None;
                    }
                    let v = (n / d) as $t;
                    return v.is_finite().then_some(v);
                }
                let v: $t = text.parse().ok()?;
                v.is_finite().then_some(v)
            }

            fn to_literal(&self) -> String {
                format!("{:?}", self)
            }
        }
    };
}

impl_float_scalar!(f64, 1e-11);
impl_float_scalar!(f32, 1e-5);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn solver_epsilon() -> Self {
        Self::zero()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((n, d)) = split_rational(text) {
            let n = parse_decimal_exact(n)?;
            let d = parse_decimal_exact(d)?;
            if d.is_zero() {
                return None;
            }
            return Some(n / d);
        }
        parse_decimal_exact(text)
    }

    fn to_literal(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Exact decimal parsing: `-12.5e-3` becomes `-125/10000`.
fn parse_decimal_exact(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::parse_bytes(all_digits.as_bytes(), 10)?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}
