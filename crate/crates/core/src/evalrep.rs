//! The three-dimensional evaluation representation and closed forms of the
//! root vectors in it.

use serde::{Deserialize, Serialize};

use crate::algebra::{Family, Rep, Side};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Params};

/// Exponents of the spectral parameter at `e_0` and `e_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralConvention {
    pub s0: i64,
    pub s1: i64,
}

impl SpectralConvention {
    pub fn new(s0: i64, s1: i64) -> Result<Self> {
        if s0 + 2 * s1 == 0 {
            return Err(Error::DegenerateConvention);
        }
        Ok(SpectralConvention { s0, s1 })
    }

    pub fn standard() -> Self {
        SpectralConvention { s0: 1, s1: 0 }
    }

    /// `s = s0 + 2 s1`.
    pub fn s(&self) -> i64 {
        self.s0 + 2 * self.s1
    }
}

impl Default for SpectralConvention {
    fn default() -> Self {
        Self::standard()
    }
}

/// `E_ij` in dimension three with one-based indices.
pub fn e3<F: Field>(i: usize, j: usize) -> Mat<F> {
    Mat::unit(3, i - 1, j - 1)
}

fn sign<F: Field>(m: i64) -> F {
    if m.rem_euclid(2) == 0 {
        F::one()
    } else {
        F::one().neg()
    }
}

/// `phi_zeta` with generator images on both sides.
pub fn make_phi<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Rep<F>> {
    let SpectralConvention { s0, s1 } = conv;
    let u = p.u();
    let e1 = e3::<F>(1, 2).add(&e3(2, 3))?.scale(&zeta.pow(s1)?);
    let f1 = e3::<F>(2, 1).add(&e3(3, 2))?.scale(&zeta.pow(-s1)?);
    let e0 = e3::<F>(3, 1).scale(&zeta.pow(s0)?.mul(u));
    let f0 = e3::<F>(1, 3).scale(&zeta.pow(-s0)?.mul(u));
    Rep::new(p.clone(), vec![-2, 0, 2], vec![1, 0, -1])?
        .with(Side::E, 0, e0)?
        .with(Side::E, 1, e1)?
        .with(Side::F, 0, f0)?
        .with(Side::F, 1, f1)
}

/// Closed-form image of `e_gamma` or `f_gamma` for a positive root family;
/// imaginary roots give the unprimed vectors.
pub fn phi_closed_form<F: Field>(
    p: &Params<F>,
    zeta: &F,
    conv: SpectralConvention,
    family: Family,
    side: Side,
) -> Result<Mat<F>> {
    match side {
        Side::E => e_closed_form(p, zeta, conv, family, false),
        // The f-images are the transposed e-images at inverted q and zeta.
        Side::F => Ok(e_closed_form(&p.flipped(), &zeta.inv()?, conv, family, false)?.transpose()),
    }
}

/// Closed-form image of the primed imaginary vector `e'_{m delta}` or its
/// `f` counterpart.
pub fn phi_primed_closed_form<F: Field>(
    p: &Params<F>,
    zeta: &F,
    conv: SpectralConvention,
    m: i64,
    side: Side,
) -> Result<Mat<F>> {
    match side {
        Side::E => e_closed_form(p, zeta, conv, Family::Imaginary(m), true),
        Side::F => Ok(e_closed_form(&p.flipped(), &zeta.inv()?, conv, Family::Imaginary(m), true)?.transpose()),
    }
}

fn e_closed_form<F: Field>(
    p: &Params<F>,
    zeta: &F,
    conv: SpectralConvention,
    family: Family,
    primed: bool,
) -> Result<Mat<F>> {
    let (s, s1) = (conv.s(), conv.s1);
    let q = |k: i64| p.q_pow(k);
    let z = |k: i64| zeta.pow(k);
    let u = p.u();
    let out = match family {
        Family::Alpha(m) => {
            let inner = e3::<F>(1, 2).scale(&sign(m)).add(&e3(2, 3).scale(&q(-m)))?;
            inner.scale(&q(-m).mul(&z(s1 + m * s)?))
        }
        Family::DeltaMinusAlpha(m) => {
            let inner = e3::<F>(2, 1).scale(&sign(m + 1)).add(&e3(3, 2).scale(&q(-m - 2)))?;
            inner.scale(&q(-m).mul(&z(s - s1 + m * s)?).neg())
        }
        Family::TwoAlpha(m) => {
            let c = sign::<F>(m).mul(&q(-3 * m - 1)).mul(&z(2 * s1 + (2 * m + 1) * s)?).mul(u);
            e3::<F>(1, 3).scale(&c)
        }
        Family::DeltaMinusTwoAlpha(m) => {
            let c = sign::<F>(m).mul(&q(-3 * m)).mul(&z(s - 2 * s1 + 2 * m * s)?).mul(u);
            e3::<F>(3, 1).scale(&c)
        }
        Family::Imaginary(m) if m >= 1 => {
            let (pre, mid, last) = if primed {
                (q(1 - m), sign::<F>(m).mul(&q(-1)).sub(&q(-m - 1)), q(-m - 2))
            } else {
                (p.qnum(m).mul(&F::from_ratio(1, m)?), sign::<F>(m).mul(&q(-2 * m)).sub(&q(-m)), q(-3 * m))
            };
            let d = Mat::diag(&[sign(m - 1), mid, last]);
            d.scale(&pre.mul(&z(m * s)?))
        }
        Family::Imaginary(m) => return Err(Error::InvalidArgument(format!("imaginary root index {m}"))),
    };
    if family.index() < 0 {
        return Err(Error::InvalidArgument(format!("negative family index in {family:?}")));
    }
    Ok(out)
}
