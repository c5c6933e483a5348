//! Exact numeric types shared by every module.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact, non-saturating triangulation count.
pub type BigCount = BigUint;

/// Exact rational used for charges and expected degrees.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn count_to_rational(c: &BigCount) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

/// JSON shape for an exact fraction: `{"num": "...", "den": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Fraction {
    fn from(r: &Rational) -> Self {
        Fraction { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl Fraction {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

/// Renders `r` as a mixed number, e.g. `28 17/28`, `-1`, `5/3` -> `1 2/3`.
pub fn mixed(r: &Rational) -> String {
    let (whole, frac) = r.numer().div_rem(r.denom());
    if frac.is_zero() {
        return whole.to_string();
    }
    if whole.is_zero() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    format!("{} {}/{}", whole, frac.abs(), r.denom())
}

/// Decimal rendering rounded toward +infinity at `places` digits, trailing
/// zeros trimmed. Used for upper-bound reporting (70.209 -> "70.21").
pub fn decimal_ceil(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r * Rational::from_integer(scale.clone())).ceil().to_integer();
    render_scaled(&scaled, &scale, places)
}

/// Decimal rendering rounded half away from zero.
pub fn decimal_round(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    render_scaled(&scaled, &scale, places)
}

fn render_scaled(scaled: &BigInt, scale: &BigInt, places: u32) -> String {
    let neg = scaled.is_negative();
    let (whole, frac) = scaled.abs().div_rem(scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if places > 0 {
        let digits = format!("{:0>width$}", frac.to_string(), width = places as usize);
        let digits = digits.trim_end_matches('0');
        if !digits.is_empty() {
            out.push('.');
            out.push_str(digits);
        }
    }
    out
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
