//! L-operators with one leg in the oscillator algebra: the displayed
//! matrices, their factorized construction over a truncated Fock space and
//! the exchange relations with the R-matrix.
//!
//! Scalar prefactors `exp(lambda(-q zeta^s))` are dropped throughout.

use std::sync::Arc;

use crate::algebra::{Family, Side};
use crate::error::{Error, Result};
use crate::evalrep::{phi_closed_form, SpectralConvention};
use crate::matrix::Mat;
use crate::qosc::{chi_closed_form, FockSpace, Osc};
use crate::rmatrix::{build_r, gauge_matrix, Factor};
use crate::scalar::qnum::qexp;
use crate::scalar::exact::Z;
use crate::scalar::series::{lambda_series, ZetaSeries};
use crate::scalar::{Exact, Field, Params};

/// A square matrix with oscillator entries.
#[derive(Clone, Debug, PartialEq)]
pub struct OscMat<F: Field> {
    n: usize,
    data: Vec<Osc<F>>,
}

impl<F: Field> OscMat<F> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Osc<F>) -> Self {
        OscMat { n, data: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn identity(params: &Arc<Params<F>>, n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Osc::one(params) } else { Osc::zero(params) })
    }

    /// A scalar matrix embedded as constants.
    pub fn from_scalars(params: &Arc<Params<F>>, m: &Mat<F>) -> Self {
        Self::from_fn(m.rows(), |i, j| Osc::constant(params, m.get(i, j).clone()))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Osc<F> {
        &self.data[i * self.n + j]
    }

    pub fn map(&self, f: impl Fn(&Osc<F>) -> Result<Osc<F>>) -> Result<Self> {
        Ok(OscMat { n: self.n, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(OscMat { n: self.n, data })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Osc::zero(self.data[0].params());
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                data.push(acc);
            }
        }
        Ok(OscMat { n, data })
    }

    /// `(A (x) B)_{(ij),(kl)} = A_ik B_jl` with the algebra factors kept in
    /// this order.
    pub fn boxtimes(&self, o: &Self) -> Result<Self> {
        let (n, m) = (self.n, o.n);
        let mut data = Vec::with_capacity(n * n * m * m);
        for r in 0..n * m {
            for c in 0..n * m {
                data.push(self.get(r / m, c / m).mul(o.get(r % m, c % m))?);
            }
        }
        Ok(OscMat { n: n * m, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.max_magnitude()).fold(0.0, f64::max)
    }

    /// Fock blocks of every entry.
    pub fn to_fock(&self, fock: &FockSpace<F>) -> Result<Blocks<F>> {
        let b = self.data.iter().map(|x| x.to_fock(fock)).collect::<Result<_>>()?;
        Ok(Blocks { n: self.n, b })
    }
}

/// A square matrix of Fock-space operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Blocks<F: Field> {
    n: usize,
    b: Vec<Mat<F>>,
}

impl<F: Field> Blocks<F> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Result<Mat<F>>) -> Result<Self> {
        Ok(Blocks { n, b: (0..n * n).map(|k| f(k / n, k % n)).collect::<Result<_>>()? })
    }

    pub fn get(&self, i: usize, j: usize) -> &Mat<F> {
        &self.b[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Blocks::from_fn(self.n, |i, j| {
            let mut acc = Mat::zeros(self.get(0, 0).rows(), self.get(0, 0).cols());
            for k in 0..self.n {
                acc = acc.add(&self.get(i, k).matmul(o.get(k, j))?)?;
            }
            Ok(acc)
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        Blocks::from_fn(self.n, |i, j| self.get(i, j).sub(o.get(i, j)))
    }

    /// Restrict every block to the Fock band of width `t`.
    pub fn band(&self, fock: &FockSpace<F>, t: usize) -> Result<Self> {
        Blocks::from_fn(self.n, |i, j| fock.band(self.get(i, j), t))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.b.iter().map(|m| m.max_magnitude()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.b.iter().all(|m| m.is_zero())
    }
}

/// The displayed L-operator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LKind {
    /// From `chi (x) phi`; oscillator leg first.
    Hat,
    /// From `phi (x) psi`; oscillator leg second.
    Check,
    /// The sigma image of `Hat`.
    HatSigma,
    /// The matrix inverting `Hat` up to a scalar.
    CheckPrime,
}

/// An L-operator without its scalar prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct LOperator<F: Field> {
    pub kind: LKind,
    pub conv: SpectralConvention,
    pub m: OscMat<F>,
}

struct Ingredients<'a, F: Field> {
    p: &'a Arc<Params<F>>,
    zeta: &'a F,
}

impl<F: Field> Ingredients<'_, F> {
    /// `c zeta^k g(p) q^(cD)`.
    fn t(&self, c: F, k: i64, p: i64, d: i64) -> Result<Osc<F>> {
        Ok(Osc::term(self.p, c.mul(&self.zeta.pow(k)?), p, d))
    }

    fn q(&self, k: i64) -> F {
        self.p.q_pow(k)
    }

    fn qp1(&self) -> F {
        self.q(1).add(&F::one())
    }
}

fn build<F: Field>(
    kind: LKind,
    p: &Arc<Params<F>>,
    zeta: &F,
    conv: SpectralConvention,
    f: impl Fn(&Ingredients<F>) -> Result<[[Osc<F>; 3]; 3]>,
) -> Result<LOperator<F>> {
    let ing = Ingredients { p, zeta };
    let rows = f(&ing)?;
    let m = OscMat::from_fn(3, |i, j| rows[i][j].clone());
    Ok(LOperator { kind, conv, m })
}

/// The operator of type hat.
pub fn build_lhat<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<LOperator<F>> {
    let (s, s1) = (conv.s(), conv.s1);
    build(LKind::Hat, p, zeta, conv, |g| {
        let one = F::one();
        let (q, qp1) = (|k| g.q(k), g.qp1());
        Ok([
            [
                g.t(one.clone(), 0, 0, -1)?.add(&g.t(q(2), s, 0, 1)?)?,
                g.t(qp1.mul(&q(1)).neg(), s - s1, 1, 0)?,
                g.t(qp1.div(&q(1))?, s - 2 * s1, 2, -1)?,
            ],
            [
                g.t(one.clone(), s1, -1, -1)?,
                g.t(one.clone(), 0, 0, 0)?.sub(&g.t(q(1), s, 0, 0)?)?,
                g.t(qp1.div(&q(1))?, s - s1, 1, -1)?,
            ],
            [
                g.t(q(1).div(&qp1)?, 2 * s1, -2, -1)?,
                g.t(one.clone(), s1, -1, 0)?,
                g.t(one.clone(), 0, 0, 1)?.add(&g.t(one, s, 0, -1)?)?,
            ],
        ])
    })
}

/// The operator of type check.
pub fn build_lcheck<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<LOperator<F>> {
    let (s, s1) = (conv.s(), conv.s1);
    build(LKind::Check, p, zeta, conv, |g| {
        let one = F::one();
        let (q, qp1) = (|k| g.q(k), g.qp1());
        Ok([
            [
                g.t(one.clone(), 0, 0, 1)?.add(&g.t(one.clone(), s, 0, -1)?)?,
                g.t(one.clone(), s1, -1, 0)?,
                g.t(q(1).div(&qp1)?, 2 * s1, -2, -1)?,
            ],
            [
                g.t(qp1.div(&q(1))?, s - s1, 1, -1)?,
                g.t(one.clone(), 0, 0, 0)?.sub(&g.t(q(1), s, 0, 0)?)?,
                g.t(one.clone(), s1, -1, -1)?,
            ],
            [
                g.t(qp1.div(&q(1))?, s - 2 * s1, 2, -1)?,
                g.t(qp1.mul(&q(1)).neg(), s - s1, 1, 0)?,
                g.t(one, 0, 0, -1)?.add(&g.t(q(2), s, 0, 1)?)?,
            ],
        ])
    })
}

/// The displayed sigma image of the hat operator.
pub fn build_lhat_sigma<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<LOperator<F>> {
    let (s, s1) = (conv.s(), conv.s1);
    build(LKind::HatSigma, p, zeta, conv, |g| {
        let one = F::one();
        let (q, qp1) = (|k| g.q(k), g.qp1());
        let qi = q(-1);
        Ok([
            [
                g.t(q(1), 0, 0, 1)?.add(&g.t(q(1), s, 0, -1)?)?,
                g.t(qp1.mul(&q(1)).neg(), s - s1, -1, -1)?,
                g.t(qp1.mul(&q(1)), s - 2 * s1, -2, -1)?,
            ],
            [
                g.t(one.clone().neg(), s1, 1, 0)?,
                g.t(one.clone(), 0, 0, 0)?.sub(&g.t(q(1), s, 0, 0)?)?,
                g.t(qp1.clone(), s - s1, -1, 0)?,
            ],
            [
                // q^-1/(q+1) zeta^(2 s1) a^dag^2 q^-D
                g.t(qi.div(&qp1)?, 2 * s1, 2, -1)?,
                // -q^-1 zeta^s1 a^dag q^-D
                g.t(qi.neg(), s1, 1, -1)?,
                g.t(qi.clone(), 0, 0, -1)?.add(&g.t(qi.mul(&q(2)), s, 0, 1)?)?,
            ],
        ])
    })
}

/// The matrix with `hat(zeta) checkprime(zeta) = (1 + q^2 x)(1 - q^3 x)` for
/// `x = zeta^s`. Its entries carry `q^-D` on the left, reordered here.
pub fn build_lcheck_prime<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<LOperator<F>> {
    let (s, s1) = (conv.s(), conv.s1);
    build(LKind::CheckPrime, p, zeta, conv, |g| {
        let one = F::one();
        let (q, qp1) = (|k| g.q(k), g.qp1());
        let qd = |c: i64| Osc::qd(p, c);
        Ok([
            [
                g.t(one.clone(), 0, 0, 1)?.sub(&g.t(q(3), s, 0, -1)?)?,
                qd(-1).mul(&g.t(qp1.mul(&q(3)), s - s1, 1, 0)?)?,
                qd(-1).mul(&g.t(qp1.mul(&q(3)).neg(), s - 2 * s1, 2, 0)?)?,
            ],
            [
                g.t(one.clone().neg(), s1, -1, 0)?,
                g.t(one.clone(), 0, 0, 0)?.add(&g.t(q(4), s, 0, 0)?)?,
                g.t(qp1.mul(&q(3)).neg(), s - s1, 1, 0)?,
            ],
            [
                qd(-1).mul(&g.t(qp1.inv()?, 2 * s1, -2, 0)?)?,
                qd(-1).mul(&g.t(one.clone().neg(), s1, -1, 0)?)?,
                g.t(one, 0, 0, -1)?.sub(&g.t(q(5), s, 0, 1)?)?,
            ],
        ])
    })
}

impl<F: Field> LOperator<F> {
    pub fn get(&self, i: usize, j: usize) -> &Osc<F> {
        self.m.get(i, j)
    }

    fn with(&self, kind: LKind, m: OscMat<F>) -> Self {
        LOperator { kind, conv: self.conv, m }
    }

    /// `J x J`: entry `(i, j)` moves to `(2 - i, 2 - j)`.
    pub fn j_conjugate(&self, kind: LKind) -> Self {
        self.with(kind, OscMat::from_fn(3, |i, j| self.get(2 - i, 2 - j).clone()))
    }

    pub fn sigma(&self) -> Result<Self> {
        Ok(self.with(LKind::HatSigma, self.m.map(|x| x.sigma())?))
    }

    pub fn tau(&self, kind: LKind) -> Result<Self> {
        Ok(self.with(kind, self.m.map(|x| x.tau())?))
    }

    /// Entrywise `gamma` with `w = zeta^s1` of the convention passed.
    pub fn gamma(&self, w: &F) -> Result<Self> {
        Ok(self.with(self.kind, self.m.map(|x| x.gamma(w))?))
    }

    /// `G L G^-1` for a diagonal `G = diag(g)`.
    pub fn conjugate_diag(&self, g: &[F; 3]) -> Result<Self> {
        let mut rows = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                rows.push(self.get(i, j).scale(&g[i].div(&g[j])?));
            }
        }
        Ok(self.with(self.kind, OscMat::from_fn(3, |i, j| rows[3 * i + j].clone())))
    }

    pub fn to_fock(&self, fock: &FockSpace<F>) -> Result<Blocks<F>> {
        self.m.to_fock(fock)
    }
}

fn diag_of<F: Field>(m: &Mat<F>) -> [F; 3] {
    [m.get(0, 0).clone(), m.get(1, 1).clone(), m.get(2, 2).clone()]
}

/// `L-hat(zeta) L-checkprime(zeta) - (1 + q^2 x)(1 - q^3 x)` and the same
/// with the factors swapped.
pub fn inverse_relation_residual<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<[OscMat<F>; 2]> {
    let h = build_lhat(p, zeta, conv)?;
    let c = build_lcheck_prime(p, zeta, conv)?;
    let x = zeta.pow(conv.s())?;
    let k = F::one().add(&p.q_pow(2).mul(&x)).mul(&F::one().sub(&p.q_pow(3).mul(&x)));
    let target = OscMat::from_scalars(p, &Mat::identity(3).scale(&k));
    Ok([h.m.mul(&c.m)?.sub(&target)?, c.m.mul(&h.m)?.sub(&target)?])
}

/// Residuals of the gauge relations between conventions `conv` and `(1, 0)`:
/// `[hat with gamma_{zeta_1}, hat with gamma_{zeta_1^-1}, check]`, where
/// the hat relation reads `L(z12) = gamma(G(z2) L^(1,0)(z12^s) G(z2)^-1)` and
/// the check relation `L(z12) = G(z1) gamma_{z2}(L^(1,0)(z12^s)) G(z1)^-1`.
pub fn gauge_relation_l<F: Field>(p: &Arc<Params<F>>, z1: &F, z2: &F, conv: SpectralConvention) -> Result<[OscMat<F>; 3]> {
    let base = SpectralConvention::standard();
    let z12 = z1.div(z2)?;
    let zs = z12.pow(conv.s())?;
    let s1 = conv.s1;
    let g1 = diag_of(&gauge_matrix(z1, s1)?);
    let g2 = diag_of(&gauge_matrix(z2, s1)?);
    let hat = build_lhat(p, &z12, conv)?;
    let inner = build_lhat(p, &zs, base)?.conjugate_diag(&g2)?;
    let lit = inner.gamma(&z1.pow(s1)?)?;
    let inv = inner.gamma(&z1.pow(-s1)?)?;
    let check = build_lcheck(p, &z12, conv)?;
    let rhs = build_lcheck(p, &zs, base)?.gamma(&z2.pow(s1)?)?.conjugate_diag(&g1)?;
    Ok([hat.m.sub(&lit.m)?, hat.m.sub(&inv.m)?, check.m.sub(&rhs.m)?])
}

/// Split an operator whose entries are `A + zeta^s B` (convention `(1, 0)`)
/// into `(L_+, L_-) = (B, -A)`, so that `zeta^(-1/2) L = zeta^(1/2) L_+ -
/// zeta^(-1/2) L_-`. Built at `zeta = 0` and `zeta = 1`.
pub fn split_plus_minus<F: Field>(
    p: &Arc<Params<F>>,
    build: impl Fn(&Arc<Params<F>>, &F, SpectralConvention) -> Result<LOperator<F>>,
) -> Result<(OscMat<F>, OscMat<F>)> {
    let conv = SpectralConvention::standard();
    let a = build(p, &F::zero(), conv)?.m;
    let ab = build(p, &F::one(), conv)?.m;
    let b = ab.sub(&a)?;
    let minus = a.map(|x| Ok(x.neg()))?;
    Ok((b, minus))
}

/// Inverse of a triangular oscillator matrix whose diagonal entries are
/// single terms `c q^(kD)`; `None` if the matrix is not of this form.
pub fn triangular_inverse<F: Field>(m: &OscMat<F>) -> Result<Option<OscMat<F>>> {
    let n = m.size();
    let params = m.get(0, 0).params().clone();
    let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
    if !upper && !lower {
        return Ok(None);
    }
    let mut dinv = Vec::with_capacity(n);
    for i in 0..n {
        let t = m.get(i, i).terms();
        if t.len() != 1 {
            return Ok(None);
        }
        let (&(pw, c), x) = t.iter().next().expect("one term");
        if pw != 0 {
            return Ok(None);
        }
        dinv.push(Osc::term(&params, x.inv()?, 0, -c));
    }
    // Solve m X = I column by column with back or forward substitution.
    let mut x: Vec<Vec<Osc<F>>> = vec![vec![Osc::zero(&params); n]; n];
    let order: Vec<usize> = if upper { (0..n).rev().collect() } else { (0..n).collect() };
    for col in 0..n {
        for &i in &order {
            let mut rhs = if i == col { Osc::one(&params) } else { Osc::zero(&params) };
            for (k, xk) in x.iter().enumerate() {
                if k != i && !m.get(i, k).is_zero() {
                    rhs = rhs.sub(&m.get(i, k).mul(&xk[col])?)?;
                }
            }
            x[i][col] = dinv[i].mul(&rhs)?;
        }
    }
    Ok(Some(OscMat::from_fn(n, |i, j| x[i][j].clone())))
}

/// Fock images of the factors of the hat operator at spectral parameter
/// `zeta = zeta_12`, each a 3x3 array of Fock operators. The imaginary
/// factor is given without its scalar prefactor.
pub fn lhat_factor<F: Field>(fock: &FockSpace<F>, zeta: &F, conv: SpectralConvention, which: Factor) -> Result<Blocks<F>> {
    let p = fock.params().clone();
    let (s, s1) = (conv.s(), conv.s1);
    let x = zeta.pow(s)?;
    let q = |k: i64| p.q_pow(k);
    let one = F::one();
    let dim = fock.dim();
    let ad = fock.adag();
    let a = fock.a();
    let zp = |k: i64| zeta.pow(k);
    // f(D) = 1 / (1 + c x^k q^(2 k D)) with the sign folded into c.
    let inv_lin = |c: F, k: i64| -> Result<Mat<F>> {
        fock.diag_fn(|n| one.add(&c.mul(&x.pow(k)?).mul(&q(2 * k * n))).inv())
    };
    let cfac = p.q_minus_qinv().div(&q(1).sub(&one))?;
    let mut b: Vec<Mat<F>> = (0..9).map(|k| if k % 4 == 0 { Mat::identity(dim) } else { Mat::zeros(dim, dim) }).collect();
    let at = |i: usize, j: usize| 3 * (i - 1) + (j - 1);
    let a2 = a.matmul(a)?;
    let ad2 = ad.matmul(ad)?;
    match which {
        Factor::Alpha | Factor::Prec => {
            b[at(2, 1)] = a.matmul(&inv_lin(q(2), 1)?)?.scale(&zp(s1)?);
            b[at(3, 2)] = a.matmul(&inv_lin(q(3).neg(), 1)?)?.scale(&zp(s1)?);
            let c = q(1).div(&q(1).add(&one))?.mul(&zp(2 * s1)?);
            if which == Factor::Prec {
                b[at(3, 1)] = a2.matmul(&inv_lin(q(2), 1)?)?.scale(&c);
            } else {
                let first = a2.matmul(&inv_lin(q(3), 2)?)?.scale(&c);
                let second = a2
                    .matmul(&fock.qd(2))?
                    .matmul(&inv_lin(q(3), 2)?)?
                    .matmul(&inv_lin(q(2), 1)?)?
                    .scale(&q(2).mul(&zp(s + 2 * s1)?));
                b[at(3, 1)] = first.sub(&second)?;
            }
        }
        Factor::TwoAlpha => {
            let c = q(1).mul(&q(1).sub(&one)).div(&p.q_minus_qinv())?.mul(&zp(s + 2 * s1)?);
            b[at(3, 1)] = a2.matmul(&fock.qd(2))?.matmul(&inv_lin(q(3), 2)?)?.scale(&c);
        }
        Factor::DeltaMinusTwoAlpha => {
            let c = cfac.mul(&zp(s - 2 * s1)?);
            b[at(1, 3)] = ad2.matmul(&fock.qd(-2))?.matmul(&inv_lin(q(11), 2)?)?.scale(&c);
        }
        Factor::DeltaMinusAlpha | Factor::Succ => {
            b[at(1, 2)] = ad.matmul(&inv_lin(q(4), 1)?)?.scale(&cfac.mul(&q(2)).mul(&zp(s - s1)?).neg());
            b[at(2, 3)] = ad.matmul(&inv_lin(q(5).neg(), 1)?)?.scale(&cfac.mul(&q(4)).mul(&zp(s - s1)?));
            if which == Factor::Succ {
                let c = cfac.mul(&zp(s - 2 * s1)?);
                b[at(1, 3)] = ad2.matmul(&fock.qd(-2))?.matmul(&inv_lin(q(6), 1)?)?.scale(&c);
            } else {
                let c2 = cfac.square();
                let first = ad2.matmul(&inv_lin(q(11), 2)?)?.scale(&q(7).div(&q(1).add(&one))?.mul(&c2).mul(&zp(2 * (s - s1))?));
                let second = ad2
                    .matmul(&fock.qd(2))?
                    .matmul(&inv_lin(q(11), 2)?)?
                    .matmul(&inv_lin(q(6), 1)?)?
                    .scale(&c2.mul(&q(12)).mul(&zp(3 * s - 2 * s1)?));
                b[at(1, 3)] = second.sub(&first)?;
            }
        }
        Factor::Sim => {
            let lin = |c: F| fock.diag_fn(|n| Ok(one.add(&c.mul(&x).mul(&q(2 * n)))));
            let k = one.add(&q(2).mul(&x));
            let k3 = k.mul(&one.sub(&q(3).mul(&x)));
            b[at(1, 1)] = lin(q(2))?;
            b[at(2, 2)] = lin(q(3).neg())?.matmul(&inv_lin(q(4), 1)?)?.scale(&k);
            b[at(3, 3)] = inv_lin(q(5).neg(), 1)?.scale(&k3);
        }
        Factor::K => {
            b[at(1, 1)] = fock.qd(-1);
            b[at(3, 3)] = fock.qd(1);
        }
    }
    Ok(Blocks { n: 3, b })
}

/// Product `R_prec R_sim R_succ K` of the factor images minus the displayed
/// hat operator, restricted to the band of width 2.
pub fn lhat_factor_residual<F: Field>(fock: &FockSpace<F>, zeta: &F, conv: SpectralConvention) -> Result<Blocks<F>> {
    let mut acc = lhat_factor(fock, zeta, conv, Factor::Prec)?;
    for f in [Factor::Sim, Factor::Succ, Factor::K] {
        acc = acc.mul(&lhat_factor(fock, zeta, conv, f)?)?;
    }
    let l = build_lhat(fock.params(), zeta, conv)?.to_fock(fock)?;
    acc.sub(&l)?.band(fock, 2)
}

/// `R_prec - R_alpha R_2alpha` and `R_succ - R_{delta-2alpha} R_{delta-alpha}`
/// on the band of width 2.
pub fn lhat_grouping_residuals<F: Field>(fock: &FockSpace<F>, zeta: &F, conv: SpectralConvention) -> Result<[Blocks<F>; 2]> {
    let f = |w| lhat_factor(fock, zeta, conv, w);
    let prec = f(Factor::Prec)?.sub(&f(Factor::Alpha)?.mul(&f(Factor::TwoAlpha)?)?)?;
    let succ = f(Factor::Succ)?.sub(&f(Factor::DeltaMinusTwoAlpha)?.mul(&f(Factor::DeltaMinusAlpha)?)?)?;
    Ok([prec.band(fock, 2)?, succ.band(fock, 2)?])
}

/// Index of `|n> (x) e_a (x) e_b` with the Fock leg first.
fn embed_first<F: Field>(l: &Blocks<F>, slot: usize) -> Result<Mat<F>> {
    let dim = l.get(0, 0).rows();
    let mut out = Mat::zeros(9 * dim, 9 * dim);
    for i in 0..3 {
        for j in 0..3 {
            let e = Mat::unit(3, i, j);
            let t = if slot == 2 { e.kron(&Mat::identity(3)) } else { Mat::identity(3).kron(&e) };
            out = out.add(&l.get(i, j).kron(&t))?;
        }
    }
    Ok(out)
}

/// Index of `e_a (x) e_b (x) |n>` with the Fock leg last.
fn embed_last<F: Field>(l: &Blocks<F>, slot: usize) -> Result<Mat<F>> {
    let dim = l.get(0, 0).rows();
    let mut out = Mat::zeros(9 * dim, 9 * dim);
    for i in 0..3 {
        for j in 0..3 {
            let e = Mat::unit(3, i, j);
            let t = if slot == 1 { e.kron(&Mat::identity(3)) } else { Mat::identity(3).kron(&e) };
            out = out.add(&t.kron(l.get(i, j)))?;
        }
    }
    Ok(out)
}

/// Residual of the exchange relation for a hat-type operator family,
/// `R_23(z1/z2) L_13(z1) L_12(z2) - L_12(z2) L_13(z1) R_23(z1/z2)` on
/// `Fock (x) C^3 (x) C^3`, profiled by the Fock level of the column. Levels
/// `n <= nf - 4` are free of truncation effects.
pub fn rll_hat_residual<F: Field>(
    fock: &FockSpace<F>,
    l: impl Fn(&F) -> Result<LOperator<F>>,
    z1: &F,
    z2: &F,
    conv: SpectralConvention,
) -> Result<LevelProfile> {
    let p = fock.params();
    let r = build_r(p, &z1.div(z2)?, conv)?;
    let r23 = Mat::identity(fock.dim()).kron(&r);
    let l13 = embed_first(&l(z1)?.to_fock(fock)?, 3)?;
    let l12 = embed_first(&l(z2)?.to_fock(fock)?, 2)?;
    let lhs = r23.matmul(&l13)?.matmul(&l12)?;
    let rhs = l12.matmul(&l13)?.matmul(&r23)?;
    level_profile(&lhs.sub(&rhs)?, fock.dim(), true)
}

/// Residual of `R_12(z1/z2) L_13(z1) L_23(z2) - L_23(z2) L_13(z1) R_12(z1/z2)`
/// on `C^3 (x) C^3 (x) Fock`, profiled like [`rll_hat_residual`].
pub fn rll_check_residual<F: Field>(
    fock: &FockSpace<F>,
    l: impl Fn(&F) -> Result<LOperator<F>>,
    z1: &F,
    z2: &F,
    conv: SpectralConvention,
) -> Result<LevelProfile> {
    let p = fock.params();
    let dim = fock.dim();
    let r = build_r(p, &z1.div(z2)?, conv)?;
    let r12 = r.kron(&Mat::identity(dim));
    let l13 = embed_last(&l(z1)?.to_fock(fock)?, 1)?;
    let l23 = embed_last(&l(z2)?.to_fock(fock)?, 2)?;
    let lhs = r12.matmul(&l13)?.matmul(&l23)?;
    let rhs = l23.matmul(&l13)?.matmul(&r12)?;
    level_profile(&lhs.sub(&rhs)?, dim, false)
}

/// Largest residual entry in the columns of each Fock level.
#[derive(Clone, Debug)]
pub struct LevelProfile {
    pub per_level: Vec<f64>,
}

impl LevelProfile {
    /// Largest residual over the levels `n <= nf - t`.
    pub fn band(&self, t: usize) -> f64 {
        let keep = self.per_level.len().saturating_sub(t);
        self.per_level[..keep].iter().copied().fold(0.0, f64::max)
    }

    pub fn max(&self) -> f64 {
        self.band(0)
    }
}

fn level_profile<F: Field>(d: &Mat<F>, dim: usize, fock_first: bool) -> Result<LevelProfile> {
    let mut per_level = vec![0.0f64; dim];
    let aux = d.cols() / dim;
    for i in 0..d.rows() {
        for (c, x) in d.row(i).iter().enumerate() {
            let level = if fock_first { c / aux } else { c % dim };
            per_level[level] = per_level[level].max(x.magnitude());
        }
    }
    Ok(LevelProfile { per_level })
}

/// The exchange relations in the algebra itself, with no truncation:
/// `R(z12) (L(z1) [x] L(z2)) - (L(z2) [x] L(z1)) R(z12)` for `R-hat = R P`
/// and the hat operator, and the same with `R-check = P R` for the check
/// operator.
pub fn rll_boxed_residuals<F: Field>(p: &Arc<Params<F>>, z1: &F, z2: &F, conv: SpectralConvention) -> Result<[OscMat<F>; 2]> {
    let r = build_r(p, &z1.div(z2)?, conv)?;
    let (rhat, rcheck) = crate::rmatrix::hat_check(&r)?;
    let rhat = OscMat::from_scalars(p, &rhat);
    let rcheck = OscMat::from_scalars(p, &rcheck);
    let (h1, h2) = (build_lhat(p, z1, conv)?.m, build_lhat(p, z2, conv)?.m);
    let (c1, c2) = (build_lcheck(p, z1, conv)?.m, build_lcheck(p, z2, conv)?.m);
    let hat = rhat.mul(&h1.boxtimes(&h2)?)?.sub(&h2.boxtimes(&h1)?.mul(&rhat)?)?;
    let check = rcheck.mul(&c1.boxtimes(&c2)?)?.sub(&c2.boxtimes(&c1)?.mul(&rcheck)?)?;
    Ok([hat, check])
}

/// Truncated-product construction of a factor of the hat operator from the
/// closed-form root vector images in `chi_z (x) phi_1`, with the same
/// ordering and bases as for the R-matrix. Returns the first entry and order
/// in `zeta^s` at which it disagrees with [`lhat_factor`] on the band of
/// width 2, or `None`. Only conventions with `s1 = 0` are accepted; the
/// others follow by the gauge relation.
pub fn lhat_factor_series_mismatch(nf: usize, which: Factor, conv: SpectralConvention, order: usize) -> Result<Option<(usize, usize, usize)>> {
    if conv.s1 != 0 || conv.s() <= 0 {
        return Err(Error::InvalidArgument("the oracle needs s1 = 0 and s > 0".into()));
    }
    let p = Arc::new(Params::symbolic());
    let fock = crate::qosc::make_fock(&p, nf)?;
    let z = Exact::z(0);
    let one = Exact::one();
    let t = p.q_minus_qinv();
    let s = conv.s();
    let m_max = order as i64;
    let n = 3 * fock.dim();
    let real = |f: Family, base: i64| -> Result<Mat<Exact>> {
        let e = chi_closed_form(&p, &z, conv, f)?.to_fock(&fock)?;
        let fm = phi_closed_form(&*p, &one, conv, f, Side::F)?;
        qexp(&e.kron(&fm).scale(&t), &p.q_pow(base), None)
    };
    let product = |fs: Vec<(Family, i64)>| -> Result<Mat<Exact>> {
        let mut acc = Mat::identity(n);
        for (f, base) in fs {
            acc = acc.matmul(&real(f, base)?)?;
        }
        Ok(acc)
    };
    let asc = |mk: fn(i64) -> Family, base: i64| (0..=m_max).map(|m| (mk(m), base)).collect::<Vec<_>>();
    let as_series = |m: &Mat<Exact>| -> Result<Vec<ZetaSeries<Exact>>> {
        let keep = 3 * (fock.nf() - 1);
        let mut out = Vec::with_capacity(n * keep);
        for r in 0..n {
            for c in 0..keep {
                let tay = m.get(r, c).taylor(Z[0], order * s as usize)?;
                let coeffs = tay.into_iter().step_by(s as usize).collect();
                out.push(ZetaSeries::new(coeffs, s)?);
            }
        }
        Ok(out)
    };
    let oracle = match which {
        Factor::Alpha => as_series(&product(asc(Family::Alpha, -1))?)?,
        Factor::TwoAlpha => as_series(&product(asc(Family::TwoAlpha, -4))?)?,
        Factor::DeltaMinusAlpha => as_series(&product(asc(Family::DeltaMinusAlpha, -1).into_iter().rev().collect())?)?,
        Factor::DeltaMinusTwoAlpha => as_series(&product(asc(Family::DeltaMinusTwoAlpha, -4).into_iter().rev().collect())?)?,
        Factor::Prec => {
            let mut fs = Vec::new();
            for m in 0..=m_max {
                fs.push((Family::Alpha(m), -1));
                fs.push((Family::TwoAlpha(m), -4));
            }
            as_series(&product(fs)?)?
        }
        Factor::Succ => {
            let mut fs = Vec::new();
            for m in 0..=m_max {
                fs.push((Family::DeltaMinusTwoAlpha(m), -4));
                fs.push((Family::DeltaMinusAlpha(m), -1));
            }
            fs.reverse();
            as_series(&product(fs)?)?
        }
        Factor::Sim => {
            // exp(sum_m (q - q^-1) b_m^-1 e_{m delta} (x) f_{m delta}) over
            // exp(lambda(-q x)); diagonal.
            let mut logs: Vec<ZetaSeries<Exact>> = (0..n).map(|_| ZetaSeries::zero(order, s)).collect();
            for m in 1..=m_max {
                let e = chi_closed_form(&p, &one, conv, Family::Imaginary(m))?.to_fock(&fock)?;
                let f = phi_closed_form(&*p, &one, conv, Family::Imaginary(m), Side::F)?;
                let d = e.kron(&f);
                let c = t.div(&crate::algebra::b_coefficient(&*p, m)?)?;
                for (i, l) in logs.iter_mut().enumerate() {
                    *l = l.add(&ZetaSeries::monomial(d.get(i, i).mul(&c), m as usize, order, s))?;
                }
            }
            let pre = lambda_series(&*p, order, &p.q().neg(), s)?.exp()?;
            let keep = 3 * (fock.nf() - 1);
            let mut out = Vec::with_capacity(n * keep);
            for (r, l) in logs.iter().enumerate() {
                let d = l.exp()?.div(&pre)?;
                for c in 0..keep {
                    out.push(if r == c { d.clone() } else { ZetaSeries::zero(order, s) });
                }
            }
            out
        }
        Factor::K => return Err(Error::InvalidArgument("the Cartan factor has no series".into())),
    };
    let closed = as_series(&blocks_to_matrix(&lhat_factor(&fock, &z, conv, which)?)?)?;
    let keep = 3 * (fock.nf() - 1);
    for (k, (a, b)) in oracle.iter().zip(&closed).enumerate() {
        if let Some(o) = a.sub(b)?.coeffs().iter().position(|x| !x.is_zero()) {
            return Ok(Some((k / keep, k % keep, o)));
        }
    }
    Ok(None)
}

/// Fock blocks as one matrix with the Fock leg first.
pub fn blocks_to_matrix<F: Field>(b: &Blocks<F>) -> Result<Mat<F>> {
    let mut out = Mat::zeros(3 * b.get(0, 0).rows(), 3 * b.get(0, 0).cols());
    for i in 0..3 {
        for j in 0..3 {
            out = out.add(&b.get(i, j).kron(&Mat::unit(3, i, j)))?;
        }
    }
    Ok(out)
}
