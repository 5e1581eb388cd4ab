//! Complex numbers over [`MpFloat`] and over `f64`.

use std::fmt;

use num_complex::Complex;
use serde_json::Value;

use super::mp::{self, MpFloat};
use super::{Approx, Field};
use crate::error::{Error, Result};

/// Divisors smaller than this are rejected by [`MpComplex::inv`].
pub const ILL_CONDITIONED: f64 = 1e-40;

#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn real(re: MpFloat) -> Self {
        let im = MpFloat::zero_with(re.precision());
        MpComplex { re, im }
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn norm_sqr(&self) -> MpFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> MpFloat {
        self.norm_sqr().sqrt().expect("non-negative")
    }

    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidArgument(format!("malformed complex number '{s}'"));
        if let Some(body) = t.strip_suffix(['i', 'j']) {
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im {
                "" | "+" => "1",
                "-" => "-1",
                x => x,
            };
            let re = MpFloat::parse_decimal(re, prec).map_err(|_| bad())?;
            let im = MpFloat::parse_decimal(im, prec).map_err(|_| bad())?;
            Ok(MpComplex::new(re, im))
        } else {
            Ok(MpComplex::real(MpFloat::parse_decimal(&t, prec).map_err(|_| bad())?))
        }
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        let im = self.im.to_sci_string(d);
        if im.starts_with('-') {
            write!(f, "{}{}i", self.re.to_sci_string(d), im)
        } else {
            write!(f, "{}+{}i", self.re.to_sci_string(d), im)
        }
    }
}

impl Field for MpComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        MpComplex::real(MpFloat::zero())
    }

    fn one() -> Self {
        MpComplex::real(MpFloat::one())
    }

    fn from_i64(n: i64) -> Self {
        MpComplex::real(MpFloat::from_i64(n))
    }

    fn from_ratio(n: i64, d: i64) -> Result<Self> {
        let bits = mp::default_bits();
        Ok(MpComplex::real(MpFloat::from_ratio_prec(&n.into(), &d.into(), bits)?))
    }

    fn add(&self, o: &Self) -> Self {
        MpComplex::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        MpComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() {
            return MpComplex::new(&self.re * &o.re, &self.re * &o.im);
        }
        if o.im.is_zero() {
            return MpComplex::new(&self.re * &o.re, &self.im * &o.re);
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        MpComplex::new(re, im)
    }

    fn neg(&self) -> Self {
        MpComplex::new(-&self.re, -&self.im)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mag = self.magnitude();
        if mag < ILL_CONDITIONED {
            return Err(Error::IllConditioned(mag));
        }
        if self.im.is_zero() {
            let re = MpFloat::one().with_precision(self.precision()).div_checked(&self.re)?;
            return Ok(MpComplex::real(re));
        }
        let n = self.norm_sqr();
        Ok(MpComplex::new(self.re.div_checked(&n)?, (-&self.im).div_checked(&n)?))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn magnitude(&self) -> f64 {
        let r = self.re.to_f64();
        let i = self.im.to_f64();
        if r.is_finite() && i.is_finite() && (r != 0.0 || i != 0.0 || self.is_zero()) {
            r.hypot(i)
        } else {
            // Outside f64 range: fall back on the binary exponent.
            let e = self.re.log2_floor().max(self.im.log2_floor()).unwrap_or(i64::MIN / 2);
            mp::ldexp(1.0, e)
        }
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![Value::String(self.re.to_sci_string(40)), Value::String(self.im.to_sci_string(40))])
    }
}

impl Approx for MpComplex {
    fn from_f64_pair(re: f64, im: f64) -> Result<Self> {
        Ok(MpComplex::new(MpFloat::from_f64(re)?, MpFloat::from_f64(im)?))
    }

    fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    fn conj(&self) -> Self {
        MpComplex::new(self.re.clone(), -&self.im)
    }

    fn sqrt(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = MpFloat::from_i64(2);
        let a = (&(&r + &self.re) / &two).sqrt().expect("non-negative");
        let b = (&(&r - &self.re) / &two).sqrt().expect("non-negative");
        if self.im.is_negative() {
            MpComplex::new(a, -b)
        } else {
            MpComplex::new(a, b)
        }
    }

    fn epsilon(&self) -> f64 {
        mp::ldexp(1.0, -(self.precision() as i64))
    }
}

/// Double precision complex, used where matrix sizes make multiprecision
/// impractical (chain spectra beyond a handful of sites).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64(pub Complex<f64>);

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64(Complex::new(0.0, 0.0))
    }
    fn one() -> Self {
        C64(Complex::new(1.0, 0.0))
    }
    fn from_i64(n: i64) -> Self {
        C64(Complex::new(n as f64, 0.0))
    }
    fn from_ratio(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(C64(Complex::new(n as f64 / d as f64, 0.0)))
    }
    fn add(&self, o: &Self) -> Self {
        C64(self.0 + o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        C64(self.0 - o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        C64(self.0 * o.0)
    }
    fn neg(&self) -> Self {
        C64(-self.0)
    }
    fn inv(&self) -> Result<Self> {
        if self.0.norm_sqr() == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(C64(self.0.inv()))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn to_json(&self) -> Value {
        Value::Array(vec![Value::String(format!("{:e}", self.0.re)), Value::String(format!("{:e}", self.0.im))])
    }
}

impl Approx for C64 {
    fn from_f64_pair(re: f64, im: f64) -> Result<Self> {
        Ok(C64(Complex::new(re, im)))
    }
    fn re_f64(&self) -> f64 {
        self.0.re
    }
    fn im_f64(&self) -> f64 {
        self.0.im
    }
    fn conj(&self) -> Self {
        C64(self.0.conj())
    }
    fn sqrt(&self) -> Self {
        C64(self.0.sqrt())
    }
    fn epsilon(&self) -> f64 {
        f64::EPSILON
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_sqrt() {
        let z = MpComplex::from_f64_pair(0.3, -0.7).unwrap();
        let w = z.mul(&z.inv().unwrap());
        assert!(w.sub(&MpComplex::one()).magnitude() < 1e-60);
        let r = z.sqrt();
        assert!(r.mul(&r).sub(&z).magnitude() < 1e-60);
        assert!(r.re_f64() > 0.0);
    }

    #[test]
    fn parse_forms() {
        let p = mp::default_bits();
        let z = MpComplex::parse("0.5-0.25i", p).unwrap();
        assert_eq!((z.re_f64(), z.im_f64()), (0.5, -0.25));
        let z = MpComplex::parse("1e-3+2e-2i", p).unwrap();
        assert_eq!((z.re_f64(), z.im_f64()), (1e-3, 2e-2));
        let z = MpComplex::parse("-i", p).unwrap();
        assert_eq!((z.re_f64(), z.im_f64()), (0.0, -1.0));
        let z = MpComplex::parse("0.7", p).unwrap();
        assert_eq!(z.im_f64(), 0.0);
        assert!(MpComplex::parse("abc", p).is_err());
    }
}
