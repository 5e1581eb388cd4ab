//! Elements of an associative algebra over a [`Field`] and truncated power
//! series with such coefficients. Matrices and oscillator polynomials both
//! implement [`Element`], so the root vector recursion runs on either.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Field;

pub trait Element<F: Field>: Clone + fmt::Debug + Send + Sync {
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn scale(&self, c: &F) -> Self;
    /// The zero element of the same shape.
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn max_magnitude(&self) -> f64;

    /// `x y - c y x`.
    fn q_commutator(&self, o: &Self, c: &F) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?.scale(c))
    }
}

impl<F: Field> Element<F> for Mat<F> {
    fn add(&self, o: &Self) -> Result<Self> {
        Mat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Mat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.matmul(o)
    }
    fn scale(&self, c: &F) -> Self {
        Mat::scale(self, c)
    }
    fn zero_like(&self) -> Self {
        Mat::zeros(self.rows(), self.cols())
    }
    fn is_zero(&self) -> bool {
        Mat::is_zero(self)
    }
    fn max_magnitude(&self) -> f64 {
        Mat::max_magnitude(self)
    }
}

/// Truncated power series `sum_k c_k y^k` with algebra-valued coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    pub coeffs: Vec<T>,
}

impl<T> Series<T> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add<F: Field>(&self, o: &Self) -> Result<Self>
    where
        T: Element<F>,
    {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(Series { coeffs })
    }

    pub fn mul<F: Field>(&self, o: &Self) -> Result<Self>
    where
        T: Element<F>,
    {
        let order = self.order().min(o.order());
        let mut coeffs: Vec<T> = (0..=order).map(|_| self.coeffs[0].zero_like()).collect();
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Series { coeffs })
    }

    /// `log(1 + N)` for a series `N` with vanishing constant term.
    pub fn log1p<F: Field>(&self) -> Result<Self>
    where
        T: Element<F>,
    {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("log1p needs a vanishing constant term".into()));
        }
        let order = self.order();
        let mut acc = Series { coeffs: (0..=order).map(|_| self.coeffs[0].zero_like()).collect() };
        let mut pw = self.clone();
        for k in 1..=order {
            let c = F::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k as i64)?;
            acc = acc.add(&Series { coeffs: pw.coeffs.iter().map(|m| m.scale(&c)).collect() })?;
            pw = pw.mul(self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn log_of_nilpotent_shift() {
        // log(1 + x N) with N^2 = 0 is x N.
        let n = Mat::<Exact>::unit(2, 0, 1);
        let s = Series { coeffs: vec![Mat::zeros(2, 2), n.clone(), Mat::zeros(2, 2)] };
        let l = s.log1p().unwrap();
        assert_eq!(l.coeffs[1], n);
        assert!(l.coeffs[2].is_zero());
    }

    #[test]
    fn log_of_geometric_series() {
        // 1 + N = 1/(1 - x) gives log = sum x^k / k.
        let one = Mat::<Exact>::identity(1);
        let s = Series { coeffs: vec![Mat::zeros(1, 1), one.clone(), one.clone(), one.clone()] };
        let l = s.log1p().unwrap();
        assert_eq!(l.coeffs[3], one.scale(&Exact::from_ratio(1, 3).unwrap()));
    }
}
