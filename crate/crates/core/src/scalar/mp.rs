//! Binary floating point with a per-value mantissa length, built on `BigUint`.
//!
//! A value is `(-1)^neg * mant * 2^exp` with `mant` holding at most `prec`
//! bits after every operation (round half to even). Binary operations use the
//! larger precision of their operands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Environment variable holding the default number of significant decimal digits.
pub const PRECISION_ENV: &str = "IK_PRECISION_DIGITS";

/// Decimal digits used when neither the environment nor the caller chooses.
pub const DEFAULT_DIGITS: u32 = 64;

static DEFAULT_BITS: AtomicU32 = AtomicU32::new(0);
static ENV_INIT: OnceLock<()> = OnceLock::new();

/// Mantissa length needed for `digits` significant decimal digits plus guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Current default mantissa length in bits.
pub fn default_bits() -> u32 {
    ENV_INIT.get_or_init(|| {
        if DEFAULT_BITS.load(AtomicOrdering::Relaxed) == 0 {
            let digits = std::env::var(PRECISION_ENV)
                .ok()
                .and_then(|s| s.trim().parse::<u32>().ok())
                .filter(|&d| d >= 10)
                .unwrap_or(DEFAULT_DIGITS);
            DEFAULT_BITS.store(digits_to_bits(digits), AtomicOrdering::Relaxed);
        }
    });
    DEFAULT_BITS.load(AtomicOrdering::Relaxed)
}

/// Override the default precision for values created afterwards.
pub fn set_default_digits(digits: u32) -> Result<()> {
    if digits < 10 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 10 digits, got {digits}"
        )));
    }
    ENV_INIT.get_or_init(|| ());
    DEFAULT_BITS.store(digits_to_bits(digits), AtomicOrdering::Relaxed);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MpFloat {
    neg: bool,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

fn bits(x: &BigUint) -> u64 {
    x.bits()
}

/// Round `mant * 2^exp` to `prec` bits. `sticky` marks discarded nonzero bits
/// below `mant`.
fn round(mant: BigUint, exp: i64, prec: u32, sticky: bool) -> (BigUint, i64) {
    let nb = bits(&mant);
    if nb <= prec as u64 {
        return (mant, exp);
    }
    let shift = nb - prec as u64;
    let kept = &mant >> shift;
    let half_bit = mant.bit(shift - 1);
    let below = sticky || (shift >= 2 && trailing_nonzero(&mant, shift - 1));
    let round_up = half_bit && (below || kept.bit(0));
    let mut kept = kept;
    if round_up {
        kept += 1u32;
    }
    let mut e = exp + shift as i64;
    if bits(&kept) > prec as u64 {
        kept >>= 1u32;
        e += 1;
    }
    (kept, e)
}

fn trailing_nonzero(x: &BigUint, nbits: u64) -> bool {
    match x.trailing_zeros() {
        Some(tz) => tz < nbits,
        None => false,
    }
}

impl MpFloat {
    pub fn zero_with(prec: u32) -> Self {
        MpFloat { neg: false, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn zero() -> Self {
        Self::zero_with(default_bits())
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u32) -> Self {
        self.prec = prec;
        let (m, e) = round(std::mem::take(&mut self.mant), self.exp, prec, false);
        self.mant = m;
        self.exp = e;
        self
    }

    fn make(neg: bool, mant: BigUint, exp: i64, prec: u32, sticky: bool) -> Self {
        if mant.is_zero() {
            return Self::zero_with(prec);
        }
        let (m, e) = round(mant, exp, prec, sticky);
        let tz = m.trailing_zeros().unwrap_or(0);
        let (m, e) = if tz > 0 { (m >> tz, e + tz as i64) } else { (m, e) };
        MpFloat { neg, mant: m, exp: e, prec }
    }

    pub fn from_bigint_prec(n: &BigInt, prec: u32) -> Self {
        let neg = n.sign() == Sign::Minus;
        Self::make(neg, n.magnitude().clone(), 0, prec, false)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::from_bigint_prec(n, default_bits())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Result<Self> {
        Self::from_f64_prec(x, default_bits())
    }

    pub fn from_f64_prec(x: f64, prec: u32) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite sample {x}")));
        }
        if x == 0.0 {
            return Ok(Self::zero_with(prec));
        }
        let b = x.to_bits();
        let neg = (b >> 63) == 1;
        let e = ((b >> 52) & 0x7ff) as i64;
        let frac = b & ((1u64 << 52) - 1);
        let (m, exp) = if e == 0 { (frac, -1074) } else { (frac | (1u64 << 52), e - 1075) };
        Ok(Self::make(neg, BigUint::from(m), exp, prec.max(53), false))
    }

    /// `n / d` rounded to `prec` bits.
    pub fn from_ratio_prec(n: &BigInt, d: &BigInt, prec: u32) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_bigint_prec(n, prec + 8).div_checked(&Self::from_bigint_prec(d, prec + 8)).map(|x| x.with_precision(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Floor of log2 |x|; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + bits(&self.mant) as i64 - 1)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = bits(&self.mant) as i64;
        let (top, e) = if nb > 60 {
            ((&self.mant >> (nb - 60) as u64).to_u64().unwrap_or(0), self.exp + nb - 60)
        } else {
            (self.mant.to_u64().unwrap_or(0), self.exp)
        };
        let mag = ldexp(top as f64, e);
        if self.neg {
            -mag
        } else {
            mag
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    fn add_signed(&self, other: &Self, negate_other: bool) -> Self {
        let prec = self.prec.max(other.prec);
        let oneg = other.neg ^ negate_other;
        if other.is_zero() {
            return self.clone().with_precision(prec);
        }
        if self.is_zero() {
            let mut r = other.clone().with_precision(prec);
            r.neg = oneg;
            return r;
        }
        let top_a = self.exp + bits(&self.mant) as i64;
        let top_b = other.exp + bits(&other.mant) as i64;
        let guard = prec as i64 + 3;
        if top_a - top_b > guard && other.exp < self.exp {
            return Self::make(self.neg, self.mant.clone() << 2u32, self.exp - 2, prec, true);
        }
        if top_b - top_a > guard && self.exp < other.exp {
            return Self::make(oneg, other.mant.clone() << 2u32, other.exp - 2, prec, true);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        if self.neg == oneg {
            Self::make(self.neg, a + b, e, prec, false)
        } else {
            match a.cmp(&b) {
                Ordering::Equal => Self::zero_with(prec),
                Ordering::Greater => Self::make(self.neg, a - b, e, prec, false),
                Ordering::Less => Self::make(oneg, b - a, e, prec, false),
            }
        }
    }

    pub fn div_checked(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Ok(Self::zero_with(prec));
        }
        let want = prec as i64 + 3;
        let shift = (want + bits(&other.mant) as i64 - bits(&self.mant) as i64).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_rem(&other.mant);
        Ok(Self::make(self.neg ^ other.neg, q, self.exp - shift - other.exp, prec, !r.is_zero()))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let prec = self.prec;
        let need = 2 * (prec as i64 + 3);
        let mut k = (need - bits(&self.mant) as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = &self.mant << k as u64;
        let r = m.sqrt();
        let exact = &r * &r == m;
        Ok(Self::make(false, r, (self.exp - k) / 2, prec, !exact))
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = self.exp + bits(&self.mant) as i64;
        let tb = other.exp + bits(&other.mant) as i64;
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }

    /// Exact rational value as `(numerator, denominator)`.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        let m = BigInt::from_biguint(sign, self.mant.clone());
        if self.exp >= 0 {
            (m << self.exp as u64, BigInt::one())
        } else {
            (m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let (n, d) = self.to_ratio();
        let n = n.abs();
        let est = (self.log2_floor().unwrap_or(0) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let mut e10 = est;
        loop {
            let scale = digits as i64 - 1 - e10;
            let (num, den) = if scale >= 0 {
                (&n * BigInt::from(10u32).pow(scale as u32), d.clone())
            } else {
                (n.clone(), &d * BigInt::from(10u32).pow((-scale) as u32))
            };
            let (q, r) = num.div_rem(&den);
            let q = if &r * 2 >= den { q + 1 } else { q };
            let s = q.to_string();
            if s.len() > digits {
                e10 += 1;
                continue;
            }
            if s.len() < digits {
                e10 -= 1;
                continue;
            }
            let sign = if self.neg { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            let tail = tail.trim_end_matches('0');
            return if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            };
        }
    }

    /// Parse a decimal literal such as `-1.25`, `3e-4` or `0.5E2`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed number '{s}'"));
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (int, frac) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        if neg {
            n = -n;
        }
        let e10 = exp - frac.len() as i64;
        if e10.abs() > 10_000 {
            return Err(bad());
        }
        if e10 >= 0 {
            Ok(Self::from_bigint_prec(&(n * BigInt::from(10u32).pow(e10 as u32)), prec))
        } else {
            Self::from_ratio_prec(&n, &BigInt::from(10u32).pow((-e10) as u32), prec)
        }
    }
}

/// `x * 2^e` without intermediate overflow for moderate exponents.
pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero()) || (self.neg == other.neg && self.mant == other.mant && self.exp == other.exp)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let sa = if self.is_zero() { 0 } else if self.neg { -1 } else { 1 };
        let sb = if other.is_zero() { 0 } else if other.neg { -1 } else { 1 };
        if sa != sb {
            return Some(sa.cmp(&sb));
        }
        let c = self.cmp_abs(other);
        Some(if sa < 0 { c.reverse() } else { c })
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        write!(f, "{}", self.to_sci_string(digits))
    }
}

impl<'a> Add<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;
    fn add(self, rhs: &MpFloat) -> MpFloat {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;
    fn sub(self, rhs: &MpFloat) -> MpFloat {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;
    fn mul(self, rhs: &MpFloat) -> MpFloat {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return MpFloat::zero_with(prec);
        }
        MpFloat::make(self.neg ^ rhs.neg, &self.mant * &rhs.mant, self.exp + rhs.exp, prec, false)
    }
}

/// Panics on a zero divisor; use [`MpFloat::div_checked`] to recover.
impl<'a> Div<&'a MpFloat> for &'a MpFloat {
    type Output = MpFloat;
    fn div(self, rhs: &MpFloat) -> MpFloat {
        self.div_checked(rhs).expect("division by zero")
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(mut self) -> MpFloat {
        if !self.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        -(self.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $m(self, rhs: MpFloat) -> MpFloat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MpFloat> for MpFloat {
            type Output = MpFloat;
            fn $m(self, rhs: &MpFloat) -> MpFloat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> u32 {
        digits_to_bits(50)
    }

    #[test]
    fn f64_roundtrip() {
        for x in [1.0, -0.1, 3.5e-200, 1.7e300, 123456.789] {
            assert_eq!(MpFloat::from_f64_prec(x, p()).unwrap().to_f64(), x);
        }
    }

    #[test]
    fn third_times_three() {
        let three = MpFloat::from_bigint_prec(&BigInt::from(3), p());
        let third = MpFloat::one().with_precision(p()).div_checked(&three).unwrap();
        let back = &third * &three;
        let err = (&back - &MpFloat::one()).abs();
        assert!(err.log2_floor().is_none_or(|e| e < -(p() as i64) + 2));
    }

    #[test]
    fn sqrt_two() {
        let two = MpFloat::from_bigint_prec(&BigInt::from(2), p());
        let r = two.sqrt().unwrap();
        assert_eq!(r.to_sci_string(30), "1.41421356237309504880168872421e0");
    }

    #[test]
    fn decimal_parse_and_print() {
        let x = MpFloat::parse_decimal("-1.25e-3", p()).unwrap();
        assert_eq!(x.to_sci_string(10), "-1.25e-3");
        let y = MpFloat::parse_decimal("0.1", p()).unwrap();
        assert_eq!(y.to_sci_string(40), "1e-1");
        assert!(MpFloat::parse_decimal("1.2.3", p()).is_err());
    }

    #[test]
    fn cancellation_is_exact() {
        let a = MpFloat::parse_decimal("1.000000000000000000000000000001", p()).unwrap();
        let b = MpFloat::one().with_precision(p());
        let d = &a - &b;
        assert_eq!(d.to_sci_string(12), "1e-30");
    }

    #[test]
    fn ordering() {
        let a = MpFloat::from_i64(-3);
        let b = MpFloat::from_i64(2);
        assert!(a < b);
        assert!(b.cmp_abs(&a) == Ordering::Less);
    }
}
