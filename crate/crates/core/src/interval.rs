//! Closed intervals with exact rational endpoints, dyadic helpers, exact
//! decimal rendering, and an outward-rounded natural logarithm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval lower endpoint exceeds upper endpoint")]
    Reversed,
    #[error("not a decimal number: {0:?}")]
    BadDecimal(String),
    #[error("value is not a dyadic rational")]
    NotDyadic,
    #[error("logarithm of a non-positive number")]
    NonPositive,
}

/// `[lo, hi]` with exact rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Reversed);
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into())).expect("ordered integers")
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Containment of an `f64` compared exactly.
    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|r| self.contains(&r))
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn is_dyadic(&self) -> bool {
        is_dyadic(&self.lo) && is_dyadic(&self.hi)
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (to_decimal(&self.lo), to_decimal(&self.hi)) {
            (Ok(a), Ok(b)) => write!(f, "[{a}, {b}]"),
            _ => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

/// `2^k` for any integer `k`.
pub fn pow2(k: i64) -> BigRational {
    let mag = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

pub fn is_dyadic(x: &BigRational) -> bool {
    let d = x.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

/// Largest multiple of `2^-k` not above `x`.
pub fn dyadic_floor(x: &BigRational, k: i64) -> BigRational {
    let scaled = x * pow2(k);
    BigRational::from_integer(scaled.floor().to_integer()) * pow2(-k)
}

/// Smallest multiple of `2^-k` not below `x`.
pub fn dyadic_ceil(x: &BigRational, k: i64) -> BigRational {
    let scaled = x * pow2(k);
    BigRational::from_integer(scaled.ceil().to_integer()) * pow2(-k)
}

/// Exact decimal expansion of a dyadic rational (`a / 2^k = a 5^k / 10^k`).
pub fn to_decimal(x: &BigRational) -> Result<String, IntervalError> {
    if !is_dyadic(x) {
        return Err(IntervalError::NotDyadic);
    }
    let k = x.denom().bits() - 1;
    let scaled = x.numer().abs() * num_traits::pow(BigInt::from(5), k as usize);
    let digits = scaled.to_string();
    let k = k as usize;
    let (int_part, frac_part) = if digits.len() > k {
        let (a, b) = digits.split_at(digits.len() - k);
        (a.to_owned(), b.to_owned())
    } else {
        ("0".to_owned(), format!("{}{}", "0".repeat(k - digits.len()), digits))
    };
    let frac = frac_part.trim_end_matches('0');
    let sign = if x.is_negative() { "-" } else { "" };
    Ok(if frac.is_empty() { format!("{sign}{int_part}") } else { format!("{sign}{int_part}.{frac}") })
}

/// Parses a plain decimal string (`-12.0625`) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, IntervalError> {
    let bad = || IntervalError::BadDecimal(s.to_owned());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Fixed-point bounds `(lo, hi)` on `atanh(num/den)` in units of `2^-prec`,
/// for `0 <= num/den <= 1/3`.
fn atanh_bounds(num: &BigInt, den: &BigInt, prec: u64) -> (BigInt, BigInt) {
    let one_scaled = BigInt::one() << prec;
    let t2_num = num * num;
    let t2_den = den * den;
    let mut pow_num = num.clone();
    let mut pow_den = den.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        if pow_num.is_zero() {
            break;
        }
        let odd = BigInt::from(2 * j + 1);
        let denom = &pow_den * &odd;
        let (q, r) = (&pow_num * &one_scaled).div_rem(&denom);
        lo += &q;
        hi += if r.is_zero() { q } else { q + 1 };
        // Remaining tail <= t^(2j+3) / (1 - t^2) <= (9/8) t^(2j+3); stop once
        // that is below one unit.
        pow_num *= &t2_num;
        pow_den *= &t2_den;
        let tail_units: BigInt = (&pow_num * &one_scaled * 9u32) / (&pow_den * 8u32);
        if tail_units.is_zero() {
            hi += 1;
            break;
        }
        j += 1;
    }
    (lo, hi)
}

/// Fixed-point bounds on `ln x` in units of `2^-prec`.
fn ln_bounds(x: &BigRational, prec: u64) -> (BigInt, BigInt) {
    // x = 2^k y with 1 <= y < 2.
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = x * pow2(-k);
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    while y < one {
        y *= &two;
        k -= 1;
    }
    while y >= two {
        y /= &two;
        k += 1;
    }
    let t = (&y - &one) / (&y + &one);
    let (ylo, yhi) = atanh_bounds(t.numer(), t.denom(), prec);
    let (mut lo, mut hi) = (ylo * 2, yhi * 2);
    if k != 0 {
        let (l2lo, l2hi) = atanh_bounds(&BigInt::one(), &BigInt::from(3), prec);
        let kk = BigInt::from(k);
        if k > 0 {
            lo += &kk * l2lo * 2;
            hi += &kk * l2hi * 2;
        } else {
            lo += &kk * l2hi * 2;
            hi += &kk * l2lo * 2;
        }
    }
    (lo, hi)
}

/// Dyadic enclosure of `ln x` with width at most `2^-bits`.
pub fn ln_enclosure(x: &BigRational, bits: u32) -> Result<RationalInterval, IntervalError> {
    ln_interval(&RationalInterval::point(x.clone()), bits)
}

/// Dyadic enclosure of `{ln t : t in iv}` whose width exceeds
/// `ln(hi) - ln(lo)` by at most `2^-bits`.
pub fn ln_interval(iv: &RationalInterval, bits: u32) -> Result<RationalInterval, IntervalError> {
    if !iv.lo().is_positive() {
        return Err(IntervalError::NonPositive);
    }
    // Each side carries O(terms * (1 + |k|)) units of rounding error.
    let scale = iv.hi().numer().bits() + iv.lo().denom().bits() + u64::from(bits) + 1;
    let prec = u64::from(bits) + 24 + 2 * u64::from(64 - scale.leading_zeros());
    let (lo, _) = ln_bounds(iv.lo(), prec);
    let (_, hi) = ln_bounds(iv.hi(), prec);
    let unit = pow2(-(prec as i64));
    RationalInterval::new(BigRational::from_integer(lo) * &unit, BigRational::from_integer(hi) * &unit)
}
