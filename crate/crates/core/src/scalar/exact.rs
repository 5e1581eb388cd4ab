//! Exact scalars `A + B*u` with `A`, `B` rational functions in `v` and the
//! spectral variables, and `u^2 = v^2 + v^-2`.

use std::fmt;

use num_traits::Signed;
use serde_json::Value;

use super::poly::{Poly, NVARS, VAR_NAMES};
use super::ratfunc::RatFunc;
use super::Field;
use crate::error::{Error, Result};

/// Index of `v` among the polynomial variables.
pub const V: usize = 0;
/// Indices of the three spectral variables.
pub const Z: [usize; 3] = [1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact {
    a: RatFunc,
    b: RatFunc,
}

/// `u^2 = (v^4 + 1) / v^2`.
fn u_square() -> RatFunc {
    let v4 = Poly::var(V).pow(4).add(&Poly::one());
    RatFunc::new(v4, Poly::var(V).pow(2)).expect("nonzero denominator")
}

impl Exact {
    pub fn new(a: RatFunc, b: RatFunc) -> Self {
        Exact { a, b }
    }

    pub fn rational(a: RatFunc) -> Self {
        Exact { a, b: RatFunc::zero() }
    }

    pub fn u() -> Self {
        Exact { a: RatFunc::zero(), b: RatFunc::one() }
    }

    pub fn var(var: usize) -> Self {
        Self::rational(RatFunc::var(var))
    }

    pub fn var_pow(var: usize, e: i64) -> Self {
        Self::rational(RatFunc::var_pow(var, e))
    }

    /// `v`.
    pub fn v() -> Self {
        Self::var(V)
    }

    /// Spectral variable number `k` (0, 1 or 2).
    pub fn z(k: usize) -> Self {
        Self::var(Z[k])
    }

    pub fn rational_part(&self) -> &RatFunc {
        &self.a
    }

    pub fn u_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn is_u_free(&self) -> bool {
        self.b.is_zero()
    }

    fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Exact { a: f(&self.a), b: f(&self.b) }
    }

    /// Parameter flip of the Cartan anti-involution: `v -> 1/v`, every
    /// spectral variable `z -> 1/z`, `u -> u`.
    pub fn flip(&self) -> Self {
        self.map(|r| {
            let mut r = r.clone();
            for var in 0..NVARS {
                if r.num().mentions(var) || r.den().mentions(var) {
                    r = r.invert_var(var);
                }
            }
            r
        })
    }

    /// `x -> 1/x` for one variable.
    pub fn invert_var(&self, var: usize) -> Self {
        self.map(|r| r.invert_var(var))
    }

    /// `z -> z^s` for a spectral variable.
    pub fn power_var(&self, var: usize, s: i64) -> Self {
        assert!(var != V, "u depends on v; substitute spectral variables only");
        self.map(|r| r.power_var(var, s))
    }

    /// Value at `z = 1` for a spectral variable.
    pub fn at_one(&self, var: usize) -> Result<Self> {
        assert!(var != V, "u depends on v; substitute spectral variables only");
        Ok(Exact { a: self.a.at_one(var)?, b: self.b.at_one(var)? })
    }

    /// Derivative with respect to a spectral variable.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var != V, "derivative in v is not needed and would act on u");
        self.map(|r| r.derivative(var))
    }

    /// Taylor coefficients in a spectral variable, up to `order`.
    pub fn taylor(&self, var: usize, order: usize) -> Result<Vec<Exact>> {
        assert!(var != V);
        let ta = self.a.taylor(var, order)?;
        let tb = self.b.taylor(var, order)?;
        Ok(ta.into_iter().zip(tb).map(|(a, b)| Exact { a, b }).collect())
    }

    /// Evaluate at a point; `u` must be the chosen square root of `v^2 + v^-2`.
    pub fn eval<F: Field>(&self, point: &[F; NVARS], u: &F) -> Result<F> {
        let a = self.a.eval(point)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        Ok(a.add(&self.b.eval(point)?.mul(u)))
    }

    /// Numerator and denominator strings with `u` kept symbolic.
    pub fn fraction_strings(&self) -> (String, String) {
        if self.b.is_zero() {
            return (self.a.num().to_string(), self.a.den().to_string());
        }
        let l = RatFunc::lcm_den(self.a.den(), self.b.den());
        let na = self.a.num().mul(&l.div_exact(self.a.den()).expect("lcm"));
        let nb = self.b.num().mul(&l.div_exact(self.b.den()).expect("lcm"));
        let mut parts: Vec<(bool, String)> = Vec::new();
        push_terms(&mut parts, &na, "");
        push_terms(&mut parts, &nb, "u");
        let mut s = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        (s, l.to_string())
    }
}

fn push_terms(out: &mut Vec<(bool, String)>, p: &Poly, extra: &str) {
    for (m, c) in p.terms() {
        let mut factors: Vec<String> = Vec::new();
        for (i, name) in VAR_NAMES.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => factors.push(name.to_string()),
                e => factors.push(format!("{name}^{e}")),
            }
        }
        if !extra.is_empty() {
            factors.push(extra.to_string());
        }
        let a = c.abs();
        let body = if factors.is_empty() {
            a.to_string()
        } else if a == 1.into() {
            factors.join("*")
        } else {
            format!("{a}*{}", factors.join("*"))
        };
        out.push((c.is_negative(), body));
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.fraction_strings();
        write!(f, "({n})/({d})")
    }
}

impl Field for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::rational(RatFunc::zero())
    }

    fn one() -> Self {
        Self::rational(RatFunc::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::rational(RatFunc::from_i64(n))
    }

    fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Ok(Self::rational(RatFunc::ratio(n, d)?))
    }

    fn add(&self, o: &Self) -> Self {
        Exact { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    fn sub(&self, o: &Self) -> Self {
        Exact { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return Self::rational(self.a.mul(&o.a));
        }
        if self.b.is_zero() {
            return Exact { a: self.a.mul(&o.a), b: self.a.mul(&o.b) };
        }
        if o.b.is_zero() {
            return Exact { a: self.a.mul(&o.a), b: self.b.mul(&o.a) };
        }
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&u_square()));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        Exact { a, b }
    }

    fn neg(&self) -> Self {
        Exact { a: self.a.neg(), b: self.b.neg() }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::rational(self.a.inv()?));
        }
        // (a + b u)^-1 = (a - b u) / (a^2 - b^2 u^2); the norm is nonzero
        // because u is not a rational function of v.
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&u_square()));
        let ni = norm.inv()?;
        Ok(Exact { a: self.a.mul(&ni), b: self.b.neg().mul(&ni) })
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Zero for the zero element and infinity otherwise, so tolerance tests
    /// against an exact residual demand exact vanishing.
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}
