//! q-integers, q-factorials, q-binomials and q-exponentials.

use super::{Field, Params};
use crate::error::{Error, Result};
use crate::matrix::Mat;

/// `[n]_x` with `x = v^step`, written as a Laurent sum so no division occurs.
pub fn qint_v<F: Field>(p: &Params<F>, step: i64, n: i64) -> F {
    if n < 0 {
        return qint_v(p, step, -n).neg();
    }
    let mut acc = F::zero();
    for k in 0..n {
        acc = acc.add(&p.v_pow(step * (n - 1 - 2 * k)));
    }
    acc
}

/// `[n]_x = (x^n - x^-n)/(x - x^-1)` for an arbitrary base.
pub fn qint<F: Field>(x: &F, n: i64) -> Result<F> {
    if n < 0 {
        return Ok(qint(x, -n)?.neg());
    }
    let xi = x.inv()?;
    let mut acc = F::zero();
    for k in 0..n {
        let e = n - 1 - 2 * k;
        let t = if e >= 0 { x.pow(e)? } else { xi.pow(-e)? };
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// `[n]_x! = [1]_x [2]_x ... [n]_x`.
pub fn qfactorial<F: Field>(x: &F, n: i64) -> Result<F> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("q-factorial of {n}")));
    }
    let mut acc = F::one();
    for k in 2..=n {
        acc = acc.mul(&qint(x, k)?);
    }
    Ok(acc)
}

/// Symmetric q-binomial coefficient in base `x`.
pub fn qbinomial<F: Field>(x: &F, n: i64, m: i64) -> Result<F> {
    if !(0..=n).contains(&m) {
        return Err(Error::InvalidArgument(format!("q-binomial ({n} choose {m})")));
    }
    qfactorial(x, n)?.div(&qfactorial(x, m)?.mul(&qfactorial(x, n - m)?))
}

/// `(n)_x = (x^n - 1)/(x - 1) = 1 + x + ... + x^(n-1)`.
pub fn round_qint<F: Field>(x: &F, n: i64) -> Result<F> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("(n)_q for n = {n}")));
    }
    let mut acc = F::zero();
    let mut pw = F::one();
    for _ in 0..n {
        acc = acc.add(&pw);
        pw = pw.mul(x);
    }
    Ok(acc)
}

/// `(n)_x!`.
pub fn round_qfactorial<F: Field>(x: &F, n: i64) -> Result<F> {
    let mut acc = F::one();
    for k in 2..=n {
        acc = acc.mul(&round_qint(x, k)?);
    }
    Ok(acc)
}

/// `exp_x(m) = sum_n m^n / (n)_x!`. The sum stops at the first vanishing power
/// when `terms` is `None`; otherwise after `terms` terms.
pub fn qexp<F: Field>(m: &Mat<F>, base: &F, terms: Option<usize>) -> Result<Mat<F>> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("q-exponential of a non-square matrix".into()));
    }
    let n = m.rows();
    let limit = match terms {
        Some(t) => t,
        None => {
            // Nilpotency index is at most the dimension.
            let mut pw = m.clone();
            let mut k = 1;
            while !pw.is_zero() {
                if k > n {
                    return Err(Error::InvalidArgument(
                        "q-exponential of a non-nilpotent matrix needs a truncation order".into(),
                    ));
                }
                pw = pw.matmul(m)?;
                k += 1;
            }
            k
        }
    };
    let mut acc = Mat::identity(n);
    let mut pw = Mat::identity(n);
    for k in 1..limit {
        pw = pw.matmul(m)?;
        if pw.is_zero() {
            break;
        }
        acc = acc.add(&pw.scale(&round_qfactorial(base, k as i64)?.inv()?))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Params};

    #[test]
    fn small_q_integers() {
        let p = Params::symbolic();
        let q = p.q();
        assert_eq!(p.qnum(2), q.add(&q.inv().unwrap()));
        assert_eq!(qint(&q, 2).unwrap(), p.qnum(2));
        let two = Exact::from_i64(2);
        assert_eq!(qint(&two, 3).unwrap(), Exact::from_ratio(21, 4).unwrap());
        assert_eq!(qbinomial(&q, 2, 1).unwrap(), p.qnum(2));
        assert_eq!(qbinomial(&q, 5, 2).unwrap(), p.qnum(5).mul(&p.qnum(4)).div(&p.qnum(2)).unwrap());
    }

    #[test]
    fn qexp_nilpotent() {
        let p = Params::symbolic();
        let q = p.q();
        let mut x = Mat::zeros(3, 3);
        x.set(0, 1, Exact::one());
        x.set(1, 2, Exact::one());
        let e = qexp(&x, &q, None).unwrap();
        let x2 = x.matmul(&x).unwrap();
        let expect = Mat::identity(3).add(&x).unwrap().add(&x2.scale(&Exact::one().add(&q).inv().unwrap())).unwrap();
        assert_eq!(e, expect);
        let mut y = Mat::zeros(2, 2);
        y.set(0, 1, Exact::v());
        assert_eq!(qexp(&y, &q, None).unwrap(), Mat::identity(2).add(&y).unwrap());
    }
}
