//! Truncated power series in one spectral variable.

use super::{Field, Params};
use crate::error::{Error, Result};

/// `sum_m coeffs[m] * zeta^(m * step)`, truncated after `coeffs.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaSeries<F> {
    coeffs: Vec<F>,
    step: i64,
}

impl<F: Field> ZetaSeries<F> {
    pub fn new(coeffs: Vec<F>, step: i64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Series("a series needs at least the constant term".into()));
        }
        Ok(ZetaSeries { coeffs, step })
    }

    pub fn zero(order: usize, step: i64) -> Self {
        ZetaSeries { coeffs: vec![F::zero(); order + 1], step }
    }

    pub fn constant(c: F, order: usize, step: i64) -> Self {
        let mut s = Self::zero(order, step);
        s.coeffs[0] = c;
        s
    }

    /// `c * zeta^(k * step)`.
    pub fn monomial(c: F, k: usize, order: usize, step: i64) -> Self {
        let mut s = Self::zero(order, step);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &F {
        &self.coeffs[m]
    }

    fn compatible(&self, o: &Self) -> Result<usize> {
        if self.step != o.step {
            return Err(Error::Series(format!("mismatched steps {} and {}", self.step, o.step)));
        }
        Ok(self.order().min(o.order()))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.compatible(o)?;
        Ok(ZetaSeries { coeffs: (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect(), step: self.step })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let n = self.compatible(o)?;
        Ok(ZetaSeries { coeffs: (0..=n).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect(), step: self.step })
    }

    pub fn neg(&self) -> Self {
        ZetaSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), step: self.step }
    }

    pub fn scale(&self, c: &F) -> Self {
        ZetaSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(), step: self.step }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.compatible(o)?;
        let mut coeffs = vec![F::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !o.coeffs[j].is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
                }
            }
        }
        Ok(ZetaSeries { coeffs, step: self.step })
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inv().map_err(|_| Error::Series("inverse needs a nonzero constant term".into()))?;
        let n = self.order();
        let mut out = vec![F::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = acc.mul(&c0).neg();
        }
        Ok(ZetaSeries { coeffs: out, step: self.step })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.inv()?)
    }

    /// Logarithm of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].sub(&F::one()).is_zero() {
            return Err(Error::Series("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut g = vec![F::zero(); n + 1];
        for k in 1..=n {
            // k g_k = k f_k - sum_{j=1}^{k-1} j g_j f_{k-j}
            let mut acc = self.coeffs[k].scale(k as i64);
            for j in 1..k {
                acc = acc.sub(&g[j].scale(j as i64).mul(&self.coeffs[k - j]));
            }
            g[k] = acc.mul(&F::from_ratio(1, k as i64)?);
        }
        Ok(ZetaSeries { coeffs: g, step: self.step })
    }

    /// Exponential of a series with constant term zero.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("exp needs constant term 0".into()));
        }
        let n = self.order();
        let mut g = vec![F::zero(); n + 1];
        g[0] = F::one();
        for k in 1..=n {
            let mut acc = F::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].scale(j as i64).mul(&g[k - j]));
            }
            g[k] = acc.mul(&F::from_ratio(1, k as i64)?);
        }
        Ok(ZetaSeries { coeffs: g, step: self.step })
    }

    /// `f(c * x)` where `x = zeta^step`.
    pub fn scale_arg(&self, c: &F) -> Self {
        let mut pw = F::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.mul(&pw));
            pw = pw.mul(c);
        }
        ZetaSeries { coeffs, step: self.step }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

/// `log(1 - x)` as a series in `x = zeta^step`.
pub fn log_one_minus<F: Field>(order: usize, step: i64) -> Result<ZetaSeries<F>> {
    let mut s = ZetaSeries::zero(order, step);
    for m in 1..=order {
        s.coeffs[m] = F::from_ratio(-1, m as i64)?;
    }
    Ok(s)
}

/// `1 + c x` as a series.
pub fn linear<F: Field>(c: &F, order: usize, step: i64) -> ZetaSeries<F> {
    let mut s = ZetaSeries::constant(F::one(), order, step);
    if order >= 1 {
        s.coeffs[1] = c.clone();
    }
    s
}

/// The function `lambda(c x) = sum_m (c x)^m / (m (q^m - (-1)^m + q^-m))`.
pub fn lambda_series<F: Field>(p: &Params<F>, order: usize, scale: &F, step: i64) -> Result<ZetaSeries<F>> {
    if order < 1 {
        return Err(Error::Series("lambda series needs order >= 1".into()));
    }
    let mut s = ZetaSeries::zero(order, step);
    let mut pw = F::one();
    for m in 1..=order as i64 {
        pw = pw.mul(scale);
        let sign = if m % 2 == 0 { F::one() } else { F::one().neg() };
        let den = p.q_pow(m).sub(&sign).add(&p.q_pow(-m)).scale(m);
        s.coeffs[m as usize] = pw.div(&den)?;
    }
    Ok(s)
}

/// `lambda(q x) - lambda(-x) + lambda(q^-1 x) + log(1 - x)`, which vanishes.
pub fn lambda_identity_residual<F: Field>(p: &Params<F>, order: usize) -> Result<ZetaSeries<F>> {
    let l = |c: &F| lambda_series(p, order, c, 1);
    l(&p.q())?.sub(&l(&F::one().neg())?)?.add(&l(&p.q_pow(-1))?)?.add(&log_one_minus(order, 1)?)
}

/// `exp(-lambda(q^4 x)) / ((1 + q^2 x)(1 - q^3 x)) - exp(lambda(-q x))`, which
/// vanishes.
pub fn prefactor_identity_residual<F: Field>(p: &Params<F>, order: usize) -> Result<ZetaSeries<F>> {
    let lhs = lambda_series(p, order, &p.q_pow(4), 1)?.neg().exp()?;
    let den = linear(&p.q_pow(2), order, 1).mul(&linear(&p.q_pow(3).neg(), order, 1))?;
    lhs.div(&den)?.sub(&lambda_series(p, order, &p.q().neg(), 1)?.exp()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Params};

    #[test]
    fn mercator() {
        let c = Exact::v();
        let s = linear(&c, 2, 1).log().unwrap();
        assert_eq!(s.coeff(1), &c);
        assert_eq!(s.coeff(2), &c.square().mul(&Exact::from_ratio(-1, 2).unwrap()));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = ZetaSeries::new(vec![Exact::one(), Exact::v(), Exact::from_i64(3), Exact::u()], 1).unwrap();
        let back = f.log().unwrap().exp().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn lambda_first_coefficient() {
        let p = Params::symbolic();
        let l = lambda_series(&p, 3, &Exact::one(), 1).unwrap();
        assert_eq!(l.coeff(1), &p.qnum_half(3).inv().unwrap());
    }

    #[test]
    fn wrong_constant_terms() {
        let f = ZetaSeries::new(vec![Exact::from_i64(2), Exact::one()], 1).unwrap();
        assert!(f.log().is_err());
        assert!(f.exp().is_err());
    }
}
