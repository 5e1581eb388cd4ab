//! Reduced quotients of integer polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Mono, Poly, NVARS};
use super::Field;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and a positive leading coefficient in `den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(Poly::from_i64(n))
    }

    pub fn var(var: usize) -> Self {
        Self::from_poly(Poly::var(var))
    }

    /// `x^e` for any integer `e`.
    pub fn var_pow(var: usize, e: i64) -> Self {
        let m = Poly::monomial(Mono::var(var, e.unsigned_abs() as u32), BigInt::one());
        if e >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: Poly::one(), den: m }
        }
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(Poly::from_i64(n), Poly::from_i64(d))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Self::sign_normalized(n, d)
    }

    fn sign_normalized(n: Poly, d: Poly) -> Self {
        match d.leading() {
            Some((_, c)) if c.is_negative() => RatFunc { num: n.neg(), den: d.neg() },
            _ => RatFunc { num: n, den: d },
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        let on = if negate { o.num.neg() } else { o.num.clone() };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc { num: on, den: o.den.clone() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&on), self.den.clone());
        }
        if self.den.is_one() {
            return Self::sign_normalized(self.num.mul(&o.den).add(&on), o.den.clone());
        }
        if o.den.is_one() {
            return Self::sign_normalized(self.num.add(&on.mul(&self.den)), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&on.mul(&self.den));
            return Self::sign_normalized(n, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let t = self.num.mul(&d2).add(&on.mul(&d1));
        if t.is_zero() {
            return Self::zero();
        }
        let g2 = gcd(&t, &g);
        let n = t.div_exact(&g2).expect("gcd divides");
        let den = d1.mul(&o.den.div_exact(&g2).expect("gcd divides"));
        Self::sign_normalized(n, den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::sign_normalized(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::sign_normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitute `x -> 1/x`.
    pub fn invert_var(&self, var: usize) -> Self {
        let (n, dn) = self.num.reverse_var(var);
        let (d, dd) = self.den.reverse_var(var);
        // num(1/x)/den(1/x) = x^(dd - dn) * n / d
        let shift = dd as i64 - dn as i64;
        let (n, d) = if shift >= 0 {
            (n.mul_term(Mono::var(var, shift as u32), &BigInt::one()), d)
        } else {
            (n, d.mul_term(Mono::var(var, (-shift) as u32), &BigInt::one()))
        };
        Self::reduce(n, d)
    }

    /// Substitute `x -> x^s` for any nonzero integer `s`.
    pub fn power_var(&self, var: usize, s: i64) -> Self {
        assert!(s != 0, "zero exponent substitution");
        let r = Self::reduce(self.num.power_var(var, s.unsigned_abs() as u32), self.den.power_var(var, s.unsigned_abs() as u32));
        if s < 0 {
            r.invert_var(var)
        } else {
            r
        }
    }

    /// Substitute `x -> 1`; fails if the denominator vanishes there.
    pub fn at_one(&self, var: usize) -> Result<Self> {
        let d = self.den.at_one(var);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at {}=1", super::poly::VAR_NAMES[var])));
        }
        Self::new(self.num.at_one(var), d)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let n = self.num.derivative(var).mul(&self.den).sub(&self.num.mul(&self.den.derivative(var)));
        Self::reduce(n, self.den.mul(&self.den))
    }

    pub fn eval<F: Field>(&self, point: &[F; NVARS]) -> Result<F> {
        self.num.eval(point).div(&self.den.eval(point))
    }

    /// Taylor coefficients in `var` around zero, up to and including `order`.
    /// The other variables stay symbolic.
    pub fn taylor(&self, var: usize, order: usize) -> Result<Vec<RatFunc>> {
        let n = self.num.to_uni(var);
        let d = self.den.to_uni(var);
        let d0 = RatFunc::from_poly(d[0].clone());
        if d0.is_zero() {
            return Err(Error::Pole(format!("no Taylor expansion in {}: denominator vanishes at 0", super::poly::VAR_NAMES[var])));
        }
        let d0inv = d0.inv()?;
        let mut out: Vec<RatFunc> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = n.get(k).map(|p| RatFunc::from_poly(p.clone())).unwrap_or_else(RatFunc::zero);
            for j in 1..=k.min(d.len() - 1) {
                if d[j].is_zero() {
                    continue;
                }
                acc = acc.sub(&RatFunc::from_poly(d[j].clone()).mul(&out[k - j]));
            }
            out.push(acc.mul(&d0inv));
        }
        Ok(out)
    }

    /// Least common multiple of the denominators, used when printing.
    pub(crate) fn lcm_den(a: &Poly, b: &Poly) -> Poly {
        let g = gcd(a, b);
        a.div_exact(&g).expect("gcd divides").mul(b)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_ratio(&self) -> Option<(BigInt, BigInt)> {
        if self.is_constant() {
            Some((self.num.constant_value().unwrap_or_else(BigInt::zero), self.den.constant_value().unwrap_or_else(BigInt::one)))
        } else {
            None
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
