//! Coefficient fields: an exact backend over rational functions in `v`, the
//! spectral variables and `u`, and numeric complex backends.

pub mod complex;
pub mod exact;
pub mod mp;
pub mod poly;
pub mod qnum;
pub mod ratfunc;
pub mod series;

use std::fmt;

use serde_json::Value;

use crate::error::Result;

pub use complex::{MpComplex, C64};
pub use exact::Exact;
pub use mp::MpFloat;
pub use series::ZetaSeries;

/// A commutative field as used by every module. Values are immutable; all
/// operations return new values.
pub trait Field: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True for the symbolic backend, where zero tests are decisive.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Result<Self>;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;

    /// Absolute value for residual reporting.
    fn magnitude(&self) -> f64;

    fn to_json(&self) -> Value;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn scale(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }

    fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.square();
            }
        }
        Ok(acc)
    }
}

/// Numeric backends.
pub trait Approx: Field {
    fn from_f64_pair(re: f64, im: f64) -> Result<Self>;
    fn re_f64(&self) -> f64;
    fn im_f64(&self) -> f64;
    fn conj(&self) -> Self;
    /// Principal square root.
    fn sqrt(&self) -> Self;
    /// Unit roundoff of this value's precision.
    fn epsilon(&self) -> f64;
}

/// Largest `|k|` for which powers of `v` are precomputed.
const POW_CACHE: i64 = 48;

/// The deformation data shared by every construction: `v = q^(1/2)` and
/// `u = [2]_q^(1/2)`.
#[derive(Clone, Debug)]
pub struct Params<F: Field> {
    v: F,
    u: F,
    pows: Vec<F>,
}

impl<F: Field> Params<F> {
    pub fn new(v: F, u: F) -> Result<Self> {
        let vi = v.inv()?;
        let mut pows = vec![F::one(); (2 * POW_CACHE + 1) as usize];
        for k in 1..=POW_CACHE as usize {
            pows[POW_CACHE as usize + k] = pows[POW_CACHE as usize + k - 1].mul(&v);
            pows[POW_CACHE as usize - k] = pows[POW_CACHE as usize - k + 1].mul(&vi);
        }
        Ok(Params { v, u, pows })
    }

    pub fn v(&self) -> &F {
        &self.v
    }

    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn q(&self) -> F {
        self.v_pow(2)
    }

    /// `v^k = q^(k/2)`.
    pub fn v_pow(&self, k: i64) -> F {
        if k.abs() <= POW_CACHE {
            return self.pows[(k + POW_CACHE) as usize].clone();
        }
        let step = if k > 0 { self.v_pow(POW_CACHE) } else { self.v_pow(-POW_CACHE) };
        step.mul(&self.v_pow(k - k.signum() * POW_CACHE))
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> F {
        self.v_pow(2 * k)
    }

    /// Same data with `q -> 1/q`; `u` is unchanged since `[2]_q` is symmetric.
    pub fn flipped(&self) -> Self {
        let mut pows = self.pows.clone();
        pows.reverse();
        Params { v: self.v_pow(-1), u: self.u.clone(), pows }
    }

    /// `[n]_q`.
    pub fn qnum(&self, n: i64) -> F {
        qnum::qint_v(self, 2, n)
    }

    /// `[n]_(q^(1/2))`.
    pub fn qnum_half(&self, n: i64) -> F {
        qnum::qint_v(self, 1, n)
    }

    /// `q - q^-1`.
    pub fn q_minus_qinv(&self) -> F {
        self.q_pow(1).sub(&self.q_pow(-1))
    }
}

impl Params<Exact> {
    /// Fully symbolic parameters.
    pub fn symbolic() -> Self {
        Params::new(Exact::v(), Exact::u()).expect("v is invertible")
    }
}

impl<F: Approx> Params<F> {
    /// Numeric parameters with `u = +sqrt(v^2 + v^-2)`.
    pub fn numeric(v: F) -> Result<Self> {
        let v2 = v.square();
        let u = v2.add(&v2.inv()?).sqrt();
        Params::new(v, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_and_flip() {
        let p = Params::symbolic();
        assert_eq!(p.v_pow(-3), Exact::var_pow(exact::V, -3));
        assert_eq!(p.v_pow(60), Exact::var_pow(exact::V, 60));
        assert_eq!(p.flipped().v_pow(5), Exact::var_pow(exact::V, -5));
        assert_eq!(p.flipped().u(), p.u());
    }

    #[test]
    fn numeric_u() {
        let p = Params::numeric(MpComplex::from_f64_pair(1.1, 0.0).unwrap()).unwrap();
        let w = p.u().square().sub(&p.qnum(2));
        assert!(w.magnitude() < 1e-60);
    }
}
