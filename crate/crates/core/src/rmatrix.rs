//! The R-matrix of the evaluation representation: factor images, their
//! product and closed form, and the identities it satisfies.

use crate::algebra::{cartan_antiinvolution, Family, Side};
use crate::eigen::{cluster, eigenvalues, Cluster};
use crate::error::{Error, Result};
use crate::evalrep::{phi_closed_form, SpectralConvention};
use crate::matrix::{permutation, skew_identity, Mat};
use crate::scalar::exact::Z;
use crate::scalar::qnum::qexp;
use crate::scalar::series::{lambda_series, ZetaSeries};
use crate::scalar::{Approx, Exact, Field, Params};

/// `E_ij (x) E_kl` in dimension nine, one-based indices.
pub fn e9<F: Field>(i: usize, j: usize, k: usize, l: usize) -> Mat<F> {
    Mat::unit(9, (i - 1) * 3 + (k - 1), (j - 1) * 3 + (l - 1))
}

/// Sum of `c * E_ij (x) E_kl` terms.
fn assemble<F: Field>(terms: Vec<(F, [usize; 4])>) -> Mat<F> {
    let mut m = Mat::<F>::zeros(9, 9);
    for (c, [i, j, k, l]) in terms {
        let (r, col) = ((i - 1) * 3 + (k - 1), (j - 1) * 3 + (l - 1));
        let cur = m.get(r, col).add(&c);
        m.set(r, col, cur);
    }
    m
}

/// `I + sum c * E_ij (x) E_kl`.
fn identity_plus<F: Field>(terms: Vec<(F, [usize; 4])>) -> Mat<F> {
    Mat::identity(9).add(&assemble(terms)).expect("9x9")
}

/// Powers of the spectral parameter that every formula is written in:
/// `x = zeta^s` and `w = zeta^(s1)`.
struct Spectral<F> {
    x: F,
    w: F,
}

impl<F: Field> Spectral<F> {
    fn new(zeta: &F, conv: SpectralConvention) -> Result<Self> {
        Ok(Spectral { x: zeta.pow(conv.s())?, w: zeta.pow(conv.s1)? })
    }
}

/// The rational functions that fill the R-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryFunctions<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub rho: F,
    pub sigma: F,
}

impl<F: Field> EntryFunctions<F> {
    pub fn new(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Self> {
        let Spectral { x, w } = Spectral::new(zeta, conv)?;
        let q = |k: i64| p.q_pow(k);
        let t = p.q_minus_qinv();
        let one = F::one();
        let one_minus_x = one.sub(&x);
        let one_plus_x1 = one.add(&q(-1).mul(&x));
        let a = t.mul(&w).div(&one_minus_x)?;
        let b = t.mul(&w).div(&one_plus_x1)?;
        let cn = t.mul(&q(1).sub(&one).add(&q(1).add(&q(-1)).mul(&q(-1)).mul(&x))).mul(&w.square());
        let den = one_minus_x.mul(&one_plus_x1);
        let c = cn.div(&den)?;
        let dn = q(1).add(&q(1).sub(&one).mul(&t.add(&q(-3))).mul(&x)).sub(&q(-2).mul(&x.square()));
        let d = dn.div(&den)?;
        let rho = one_minus_x.div(&one.sub(&q(-2).mul(&x)))?;
        let sn = q(-1).mul(&one_minus_x).mul(&one_plus_x1);
        let sd = one.sub(&q(-2).mul(&x)).mul(&one.add(&q(-3).mul(&x)));
        let sigma = sn.div(&sd)?;
        Ok(EntryFunctions { a, b, c, d, rho, sigma })
    }

    /// The same functions at `q -> 1/q`, `zeta -> 1/zeta`.
    pub fn flipped(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Self> {
        Self::new(&p.flipped(), &zeta.inv()?, conv)
    }
}

/// Closed form of the normalized R-matrix, entry by entry.
pub fn build_r<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let f = EntryFunctions::new(p, zeta, conv)?;
    let g = EntryFunctions::flipped(p, zeta, conv)?;
    let q = p.q();
    let qi = p.q_pow(-1);
    let (rho, sig) = (&f.rho, &f.sigma);
    Ok(assemble(vec![
        (q.clone(), [1, 1, 1, 1]),
        (rho.clone(), [1, 1, 2, 2]),
        (rho.mul(&f.a), [1, 2, 2, 1]),
        (rho.mul(&g.a), [2, 1, 1, 2]),
        (rho.clone(), [2, 2, 1, 1]),
        (sig.clone(), [1, 1, 3, 3]),
        (sig.mul(&q).mul(&f.b), [1, 2, 3, 2]),
        (sig.mul(&f.c), [1, 3, 3, 1]),
        (sig.mul(&f.b), [2, 3, 2, 1]),
        (sig.mul(&qi).mul(&g.b), [2, 1, 2, 3]),
        (sig.mul(&g.c), [3, 1, 1, 3]),
        (sig.mul(&g.b), [3, 2, 1, 2]),
        (sig.mul(&f.d), [2, 2, 2, 2]),
        (sig.clone(), [3, 3, 1, 1]),
        (rho.clone(), [2, 2, 3, 3]),
        (rho.mul(&f.a), [2, 3, 3, 2]),
        (rho.mul(&g.a), [3, 2, 2, 3]),
        (rho.clone(), [3, 3, 2, 2]),
        (q, [3, 3, 3, 3]),
    ]))
}

/// The factors of the universal R-matrix in the tensor square of the
/// evaluation representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Product over the `alpha + m delta` roots.
    Alpha,
    /// Product over the `2 alpha + (2m+1) delta` roots.
    TwoAlpha,
    /// Product over the `delta - alpha + m delta` roots.
    DeltaMinusAlpha,
    /// Product over the `delta - 2 alpha + 2m delta` roots.
    DeltaMinusTwoAlpha,
    /// Everything before the imaginary roots.
    Prec,
    /// The imaginary part without its scalar prefactor.
    Sim,
    /// Everything after the imaginary roots.
    Succ,
    /// The Cartan factor.
    K,
}

/// Closed-form image of one factor at `zeta = zeta_1 / zeta_2`.
pub fn build_factor<F: Field>(which: Factor, p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let Spectral { x, w } = Spectral::new(zeta, conv)?;
    let q = |k: i64| p.q_pow(k);
    let t = p.q_minus_qinv();
    let one = F::one();
    let omx = one.sub(&x);
    let omx2 = one.sub(&x.square());
    let opx = |k: i64| one.add(&q(k).mul(&x));
    let wi = w.inv()?;
    let y = x.mul(&wi);
    Ok(match which {
        Factor::Alpha => identity_plus(vec![
            (t.mul(&w).div(&omx)?, [1, 2, 2, 1]),
            (t.mul(&w).div(&omx)?, [2, 3, 3, 2]),
            (t.mul(&w).div(&opx(1))?, [1, 2, 3, 2]),
            (t.mul(&w).div(&opx(-1))?, [2, 3, 2, 1]),
            (
                t.mul(&q(1).sub(&one)).mul(&one.sub(&q(-2).mul(&x))).mul(&w.square()).div(&omx2.mul(&opx(-1)))?,
                [1, 3, 3, 1],
            ),
        ]),
        Factor::TwoAlpha => identity_plus(vec![(t.mul(&p.qnum(2)).mul(&x).mul(&w.square()).div(&omx2)?, [1, 3, 3, 1])]),
        Factor::DeltaMinusAlpha => identity_plus(vec![
            (t.mul(&y).div(&omx)?, [2, 1, 1, 2]),
            (t.mul(&y).div(&omx)?, [3, 2, 2, 3]),
            (t.mul(&q(2)).mul(&y).div(&opx(1))?.neg(), [2, 1, 2, 3]),
            (t.mul(&q(-2)).mul(&y).div(&opx(-1))?.neg(), [3, 2, 1, 2]),
            (
                t.mul(&q(1).sub(&one).sub(&one.sub(&q(-1)).mul(&q(-1)).mul(&x)))
                    .mul(&y.square())
                    .div(&omx2.mul(&opx(-1)))?,
                [3, 1, 1, 3],
            ),
        ]),
        Factor::DeltaMinusTwoAlpha => {
            identity_plus(vec![(t.mul(&p.qnum(2)).mul(&x).mul(&wi.square()).div(&omx2)?, [3, 1, 1, 3])])
        }
        Factor::Prec => r_plus(p, zeta, conv)?,
        Factor::Succ => identity_plus(vec![
            (t.mul(&y).div(&omx)?, [2, 1, 1, 2]),
            (t.mul(&y).div(&omx)?, [3, 2, 2, 3]),
            (t.mul(&q(2)).mul(&y).div(&opx(1))?.neg(), [2, 1, 2, 3]),
            (t.mul(&q(-2)).mul(&y).div(&opx(-1))?.neg(), [3, 2, 1, 2]),
            (
                t.mul(&q(1).add(&q(-1)).add(&q(-1).sub(&one).mul(&q(-1)).mul(&x)))
                    .mul(&x)
                    .mul(&wi.square())
                    .div(&omx.mul(&opx(-1)))?,
                [3, 1, 1, 3],
            ),
        ]),
        Factor::Sim => {
            let r1 = one.sub(&q(2).mul(&x)).div(&omx)?;
            let r2 = omx.div(&one.sub(&q(-2).mul(&x)))?;
            let r13 = r1.mul(&opx(3)).div(&opx(1))?;
            let r31 = r2.mul(&opx(-1)).div(&opx(-3))?;
            let d = [
                one.clone(),
                r1.clone(),
                r13,
                r2.clone(),
                opx(1).div(&opx(-1))?,
                r1,
                r31,
                r2,
                one.clone(),
            ];
            Mat::diag(&d)
        }
        Factor::K => k_factor(p),
    })
}

fn k_factor<F: Field>(p: &Params<F>) -> Mat<F> {
    let (q, qi, one) = (p.q(), p.q_pow(-1), F::one());
    Mat::diag(&[q.clone(), one.clone(), qi.clone(), one.clone(), one.clone(), one.clone(), qi, one, q])
}

/// Upper-triangular factor of the triangular decomposition.
pub fn r_plus<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let Spectral { x, w } = Spectral::new(zeta, conv)?;
    let q = |k: i64| p.q_pow(k);
    let t = p.q_minus_qinv();
    let one = F::one();
    let omx = one.sub(&x);
    let opx = |k: i64| one.add(&q(k).mul(&x));
    let cn = t.mul(&q(1).sub(&one).add(&q(1).add(&q(-1)).mul(&q(-1)).mul(&x))).mul(&w.square());
    Ok(identity_plus(vec![
        (t.mul(&w).div(&omx)?, [1, 2, 2, 1]),
        (t.mul(&w).div(&omx)?, [2, 3, 3, 2]),
        (t.mul(&w).div(&opx(1))?, [1, 2, 3, 2]),
        (t.mul(&w).div(&opx(-1))?, [2, 3, 2, 1]),
        (cn.div(&omx.mul(&opx(-1)))?, [1, 3, 3, 1]),
    ]))
}

/// Diagonal factor of the triangular decomposition.
pub fn r_zero<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let x = zeta.pow(conv.s())?;
    let q = |k: i64| p.q_pow(k);
    let one = F::one();
    let omx = one.sub(&x);
    let opx = |k: i64| one.add(&q(k).mul(&x));
    let r1 = one.sub(&q(2).mul(&x)).div(&omx)?;
    let r2 = omx.div(&one.sub(&q(-2).mul(&x)))?;
    Ok(Mat::diag(&[
        q(1),
        r1.clone(),
        r1.mul(&opx(3)).div(&opx(1))?.mul(&q(-1)),
        r2.clone(),
        opx(1).div(&opx(-1))?,
        r1,
        r2.mul(&opx(-1)).div(&opx(-3))?.mul(&q(-1)),
        r2,
        q(1),
    ]))
}

/// Lower-triangular factor of the triangular decomposition.
pub fn r_minus<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let Spectral { x, w } = Spectral::new(zeta, conv)?;
    let q = |k: i64| p.q_pow(k);
    let t = p.q_minus_qinv();
    let one = F::one();
    let omx = one.sub(&x);
    let opx = |k: i64| one.add(&q(k).mul(&x));
    let wi = w.inv()?;
    let y = x.mul(&wi);
    Ok(identity_plus(vec![
        (t.mul(&y).div(&omx)?, [2, 1, 1, 2]),
        (t.mul(&y).div(&omx)?, [3, 2, 2, 3]),
        (t.mul(&q(1)).mul(&y).div(&opx(1))?.neg(), [2, 1, 2, 3]),
        (t.mul(&q(-1)).mul(&y).div(&opx(-1))?.neg(), [3, 2, 1, 2]),
        (
            t.mul(&q(1).add(&q(-1)).add(&q(-1).sub(&one).mul(&q(-1)).mul(&x)))
                .mul(&x)
                .mul(&wi.square())
                .div(&omx.mul(&opx(-1)))?,
            [3, 1, 1, 3],
        ),
    ]))
}

/// `R_prec R_sim R_succ K` from the closed factor images.
pub fn build_r_from_factors<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let mut acc = build_factor(Factor::Prec, p, zeta, conv)?;
    for f in [Factor::Sim, Factor::Succ, Factor::K] {
        acc = acc.matmul(&build_factor(f, p, zeta, conv)?)?;
    }
    Ok(acc)
}

/// `R12(z12) R13(z13) R23(z23) - R23(z23) R13(z13) R12(z12)` on the
/// 27-dimensional space.
pub fn yang_baxter_residual<F: Field>(p: &Params<F>, z: [&F; 3], conv: SpectralConvention) -> Result<Mat<F>> {
    let r12 = build_r(p, &z[0].div(z[1])?, conv)?;
    let r13 = build_r(p, &z[0].div(z[2])?, conv)?;
    let r23 = build_r(p, &z[1].div(z[2])?, conv)?;
    let id3 = Mat::<F>::identity(3);
    let p23 = id3.kron(&permutation(3));
    let a12 = r12.kron(&id3);
    let a23 = id3.kron(&r23);
    let a13 = p23.matmul(&r13.kron(&id3))?.matmul(&p23)?;
    let lhs = a12.matmul(&a13)?.matmul(&a23)?;
    let rhs = a23.matmul(&a13)?.matmul(&a12)?;
    lhs.sub(&rhs)
}

/// `R-hat = R P` and `R-check = P R`.
pub fn hat_check<F: Field>(r: &Mat<F>) -> Result<(Mat<F>, Mat<F>)> {
    let pm = permutation::<F>(3);
    Ok((r.matmul(&pm)?, pm.matmul(r)?))
}

/// `R-check - (J (x) J) R-hat (J (x) J)`.
pub fn hat_check_j_residual<F: Field>(r: &Mat<F>) -> Result<Mat<F>> {
    let (hat, check) = hat_check(r)?;
    let j = skew_identity::<F>(3);
    let jj = j.kron(&j);
    check.sub(&jj.matmul(&hat)?.matmul(&jj)?)
}

/// `diag(zeta^s1, 1, zeta^-s1)`.
pub fn gauge_matrix<F: Field>(zeta: &F, s1: i64) -> Result<Mat<F>> {
    Ok(Mat::diag(&[zeta.pow(s1)?, F::one(), zeta.pow(-s1)?]))
}

/// `R^(s,s1)(z1/z2) - [G(z1) (x) G(z2)] R^(1,0)((z1/z2)^s) [G(z1) (x) G(z2)]^-1`.
pub fn gauge_residual<F: Field>(p: &Params<F>, z1: &F, z2: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let z12 = z1.div(z2)?;
    let lhs = build_r(p, &z12, conv)?;
    let g = gauge_matrix(z1, conv.s1)?.kron(&gauge_matrix(z2, conv.s1)?);
    let gi = gauge_matrix(z1, -conv.s1)?.kron(&gauge_matrix(z2, -conv.s1)?);
    let base = build_r(p, &z12.pow(conv.s())?, SpectralConvention::standard())?;
    lhs.sub(&g.matmul(&base)?.matmul(&gi)?)
}

/// The closed-form eigenvalues of `P R` with multiplicities 5, 3, 1.
pub fn expected_eigenvalues<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<[(F, usize); 3]> {
    let x = zeta.pow(conv.s())?;
    let q = |k: i64| p.q_pow(k);
    let l2 = q(1).mul(&q(2).mul(&x).sub(&F::one())).div(&q(2).sub(&x))?;
    let l3 = q(1).mul(&q(3).mul(&x).add(&F::one())).div(&q(3).add(&x))?;
    Ok([(q(1), 5), (l2, 3), (l3, 1)])
}

/// Outcome of a spectrum comparison.
#[derive(Clone, Debug)]
pub struct SpectrumReport<F> {
    pub clusters: Vec<Cluster<F>>,
    /// Largest distance between a cluster and its predicted value.
    pub max_deviation: f64,
    pub multiplicities_match: bool,
}

/// Eigenvalues of `P R` clustered at `tol` and matched with the prediction.
/// The gauge factor of a convention with `s1 != 0` does not commute with `P`,
/// so the spectrum is taken in the gauge-free convention `(s, 0)`.
pub fn spectrum_check<F: Approx>(p: &Params<F>, zeta: &F, conv: SpectralConvention, tol: f64) -> Result<SpectrumReport<F>> {
    let r = build_r(p, zeta, SpectralConvention::new(conv.s(), 0)?)?;
    let (_, check) = hat_check(&r)?;
    let ev = eigenvalues(&check)?;
    let clusters = cluster(&ev, tol)?;
    let expect = expected_eigenvalues(p, zeta, conv)?;
    for i in 0..3 {
        for j in i + 1..3 {
            if expect[i].0.sub(&expect[j].0).magnitude() < 1e3 * tol {
                return Err(Error::Clustering("predicted eigenvalues collide at this sample".into()));
            }
        }
    }
    let mut max_deviation: f64 = 0.0;
    let mut multiplicities_match = clusters.len() == 3;
    for (val, mult) in &expect {
        let best = clusters.iter().min_by(|a, b| {
            let da = a.value.sub(val).magnitude();
            let db = b.value.sub(val).magnitude();
            da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
        });
        match best {
            Some(c) => {
                max_deviation = max_deviation.max(c.value.sub(val).magnitude());
                multiplicities_match &= c.multiplicity == *mult;
            }
            None => multiplicities_match = false,
        }
    }
    Ok(SpectrumReport { clusters, max_deviation, multiplicities_match })
}

/// `R-plus R-zero R-minus - R`.
pub fn factorization_residual<F: Field>(p: &Params<F>, zeta: &F, conv: SpectralConvention) -> Result<Mat<F>> {
    let prod = r_plus(p, zeta, conv)?.matmul(&r_zero(p, zeta, conv)?)?.matmul(&r_minus(p, zeta, conv)?)?;
    prod.sub(&build_r(p, zeta, conv)?)
}

/// Symmetry residuals of the triangular factors and of `R` under the
/// anti-involution: `Omega(R+) - R-`, `Omega(R0) - q^-2 R0`, `Omega(R) - q^-2 R`.
pub fn antiinvolution_residuals(zeta: &Exact, conv: SpectralConvention) -> Result<[Mat<Exact>; 3]> {
    let p = Params::symbolic();
    let qm2 = p.q_pow(-2);
    let rp = r_plus(&p, zeta, conv)?;
    let r0 = r_zero(&p, zeta, conv)?;
    let rm = r_minus(&p, zeta, conv)?;
    let r = build_r(&p, zeta, conv)?;
    Ok([
        cartan_antiinvolution(&rp).sub(&rm)?,
        cartan_antiinvolution(&r0).sub(&r0.scale(&qm2))?,
        cartan_antiinvolution(&r).sub(&r.scale(&qm2))?,
    ])
}

/// The constant matrix `r_0` of the spectral decomposition. With
/// `as_printed` the coefficient of `E13 (x) E31` carries `q` instead of
/// `q^-1`; that variant does not reproduce `R`.
pub fn r0_matrix<F: Field>(p: &Params<F>, as_printed: bool) -> Mat<F> {
    let q = |k: i64| p.q_pow(k);
    let t = p.q_minus_qinv();
    let one = F::one();
    let c13 = q(1).add(&q(-1)).mul(&q(if as_printed { 1 } else { -1 }));
    let mut terms = vec![
        (one.clone(), [1, 1, 1, 1]),
        (q(1), [1, 1, 2, 2]),
        (one.clone(), [1, 1, 3, 3]),
        (q(1), [2, 2, 1, 1]),
        (q(1).mul(&one.sub(&t)), [2, 2, 2, 2]),
        (q(1), [2, 2, 3, 3]),
        (one.clone(), [3, 3, 1, 1]),
        (q(1), [3, 3, 2, 2]),
        (one.clone(), [3, 3, 3, 3]),
    ];
    for (c, idx) in [(q(-2), [1, 2, 2, 1]), (q(1).neg(), [1, 2, 3, 2]), (one.neg(), [2, 3, 2, 1]), (c13, [1, 3, 3, 1]), (q(-2), [2, 3, 3, 2])] {
        terms.push((t.mul(&c).neg(), idx));
    }
    assemble(terms)
}

/// The constant matrix `r_1` of the spectral decomposition.
pub fn r1_matrix<F: Field>(p: &Params<F>) -> Mat<F> {
    let q = |k: i64| p.q_pow(k);
    let t = p.q_minus_qinv();
    let one = F::one();
    let mut terms = vec![
        (q(2), [1, 1, 1, 1]),
        (q(1), [1, 1, 2, 2]),
        (one.clone(), [1, 1, 3, 3]),
        (q(1), [2, 2, 1, 1]),
        (q(1), [2, 2, 2, 2]),
        (q(1), [2, 2, 3, 3]),
        (one.clone(), [3, 3, 1, 1]),
        (q(1), [3, 3, 2, 2]),
        (q(2), [3, 3, 3, 3]),
    ];
    for (c, idx) in [(q(1), [1, 2, 2, 1]), (q(1), [1, 2, 3, 2]), (one.clone(), [2, 3, 2, 1]), (q(1).sub(&one), [1, 3, 3, 1]), (q(1), [2, 3, 3, 2])] {
        terms.push((t.mul(&c), idx));
    }
    assemble(terms)
}

/// `Lambda(zeta) = q^(-3/2) zeta / ((1 - q^-2 zeta)(1 + q^-3 zeta))`.
pub fn lambda_prefactor<F: Field>(p: &Params<F>, zeta: &F) -> Result<F> {
    let one = F::one();
    let den = one.sub(&p.q_pow(-2).mul(zeta)).mul(&one.add(&p.q_pow(-3).mul(zeta)));
    p.v_pow(-3).mul(zeta).div(&den)
}

/// `R - Lambda [M - Omega(M)]` with `M = q^(1/2)(zeta^-1 r_1 - r_0)`, and
/// `Omega(Lambda) + q^-2 Lambda`, in the standard convention.
pub fn decomposition_residual(as_printed: bool) -> Result<(Mat<Exact>, Exact)> {
    let p = Params::symbolic();
    let z = Exact::z(0);
    let conv = SpectralConvention::standard();
    let m = r1_matrix(&p).scale(&z.inv()?).sub(&r0_matrix(&p, as_printed))?.scale(p.v());
    let lam = lambda_prefactor(&p, &z)?;
    let rhs = m.sub(&cartan_antiinvolution(&m))?.scale(&lam);
    let res = build_r(&p, &z, conv)?.sub(&rhs)?;
    let lam_res = lam.flip().add(&p.q_pow(-2).mul(&lam));
    Ok((res, lam_res))
}

/// `lim_{h -> 0} f(1 + h)` by polynomial extrapolation over the steps
/// `10^-4, ..., 10^-10`. Returns the limit and the change contributed by the
/// last extrapolation level as an error estimate.
pub fn limit_at_one<F: Approx>(f: impl Fn(&F) -> Result<Mat<F>>) -> Result<(Mat<F>, f64)> {
    let mut table: Vec<Mat<F>> = Vec::new();
    let mut hv: Vec<F> = Vec::new();
    for k in 4..=10 {
        let h = F::from_i64(10).pow(-k)?;
        table.push(f(&F::one().add(&h))?);
        hv.push(h);
    }
    // Neville at 0.
    let n = table.len();
    let mut est = 0.0;
    for level in 1..n {
        for i in (level..n).rev() {
            let (hi, hj) = (&hv[i], &hv[i - level]);
            let num = table[i].scale(hj).sub(&table[i - 1].scale(hi))?;
            let next = num.scale(&hj.sub(hi).inv()?);
            if i == n - 1 {
                est = next.sub(&table[i])?.max_magnitude();
            }
            table[i] = next;
        }
    }
    Ok((table.pop().expect("nonempty"), est))
}

/// `R(1) - q P` through the extrapolated limit.
pub fn r_at_one_residual<F: Approx>(p: &Params<F>, conv: SpectralConvention) -> Result<(Mat<F>, f64)> {
    let (lim, est) = limit_at_one(|z| build_r(p, z, conv))?;
    Ok((lim.sub(&permutation::<F>(3).scale(&p.q()))?, est))
}

/// Truncated-product construction of a factor, as series in `zeta^s`.
///
/// The factor is assembled from closed-form root vector images with
/// `zeta_2 = 1` and spectral variable `zeta_1 = z`, keeping the factors whose
/// leading power of `zeta^s` is below `order + 1`. Each entry of the result
/// is `z^(-s1 (j - i))` times the matrix entry, with `(i, j)` the first
/// tensor leg, expanded in `zeta^s`.
pub fn partial_product_oracle(which: Factor, conv: SpectralConvention, order: usize) -> Result<Vec<Vec<ZetaSeries<Exact>>>> {
    if conv.s() <= 0 {
        return Err(Error::InvalidArgument("series oracles need s > 0".into()));
    }
    let p = Params::symbolic();
    let z = Exact::z(0);
    let one = Exact::one();
    let t = p.q_minus_qinv();
    let m_max = order as i64;
    let real = |f: Family, base: i64| -> Result<Mat<Exact>> {
        let e = phi_closed_form(&p, &z, conv, f, Side::E)?;
        let fm = phi_closed_form(&p, &one, conv, f, Side::F)?;
        qexp(&e.kron(&fm).scale(&t), &p.q_pow(base), None)
    };
    let product = |fs: Vec<(Family, i64)>| -> Result<Mat<Exact>> {
        let mut acc = Mat::identity(9);
        for (f, base) in fs {
            acc = acc.matmul(&real(f, base)?)?;
        }
        Ok(acc)
    };
    let asc = |mk: fn(i64) -> Family, base: i64| (0..=m_max).map(|m| (mk(m), base)).collect::<Vec<_>>();
    let mat = match which {
        Factor::Alpha => product(asc(Family::Alpha, -1))?,
        Factor::TwoAlpha => product(asc(Family::TwoAlpha, -4))?,
        Factor::DeltaMinusAlpha => product(asc(Family::DeltaMinusAlpha, -1).into_iter().rev().collect())?,
        Factor::DeltaMinusTwoAlpha => product(asc(Family::DeltaMinusTwoAlpha, -4).into_iter().rev().collect())?,
        Factor::Prec => {
            let mut fs = Vec::new();
            for m in 0..=m_max {
                fs.push((Family::Alpha(m), -1));
                fs.push((Family::TwoAlpha(m), -4));
            }
            product(fs)?
        }
        Factor::Succ => {
            let mut fs = Vec::new();
            for m in 0..=m_max {
                fs.push((Family::DeltaMinusTwoAlpha(m), -4));
                fs.push((Family::DeltaMinusAlpha(m), -1));
            }
            fs.reverse();
            product(fs)?
        }
        Factor::Sim => return sim_oracle(&p, conv, order),
        Factor::K => return Err(Error::InvalidArgument("the Cartan factor has no series".into())),
    };
    entries_as_series(&mat, conv, order)
}

/// Series of the normalized imaginary factor: the exponential of
/// `(q - q^-1) sum_m b_m^-1 e_{m delta} (x) f_{m delta}`, divided by
/// `exp(lambda(q x) - lambda(q^-1 x))`.
fn sim_oracle(p: &Params<Exact>, conv: SpectralConvention, order: usize) -> Result<Vec<Vec<ZetaSeries<Exact>>>> {
    let s = conv.s();
    let one = Exact::one();
    let t = p.q_minus_qinv();
    let mut logs: Vec<ZetaSeries<Exact>> = (0..9).map(|_| ZetaSeries::zero(order, s)).collect();
    for m in 1..=order as i64 {
        let e = phi_closed_form(p, &one, conv, Family::Imaginary(m), Side::E)?;
        let f = phi_closed_form(p, &one, conv, Family::Imaginary(m), Side::F)?;
        let d = e.kron(&f);
        let c = t.div(&crate::algebra::b_coefficient(p, m)?)?;
        for (i, l) in logs.iter_mut().enumerate() {
            let add = ZetaSeries::monomial(d.get(i, i).mul(&c), m as usize, order, s);
            *l = l.add(&add)?;
        }
    }
    let pre = lambda_series(p, order, &p.q(), s)?.sub(&lambda_series(p, order, &p.q_pow(-1), s)?)?.exp()?;
    let mut out = vec![vec![ZetaSeries::zero(order, s); 9]; 9];
    for (i, l) in logs.iter().enumerate() {
        out[i][i] = l.exp()?.div(&pre)?;
    }
    Ok(out)
}

/// Entries of a 9x9 matrix in the spectral variable `z`, with the
/// `z^(s1 (j - i))` weight removed, as series in `z^s`.
pub fn entries_as_series(m: &Mat<Exact>, conv: SpectralConvention, order: usize) -> Result<Vec<Vec<ZetaSeries<Exact>>>> {
    let s = conv.s();
    let mut out = Vec::with_capacity(9);
    for r in 0..9 {
        let mut row = Vec::with_capacity(9);
        for c in 0..9 {
            let w = (c / 3) as i64 - (r / 3) as i64;
            let x = m.get(r, c).mul(&Exact::var_pow(Z[0], -conv.s1 * w));
            let tay = x.taylor(Z[0], order * s as usize)?;
            let mut coeffs = Vec::with_capacity(order + 1);
            for (k, ck) in tay.into_iter().enumerate() {
                if k % s as usize == 0 {
                    coeffs.push(ck);
                } else if !ck.is_zero() {
                    return Err(Error::Series(format!("entry ({r},{c}) is not a series in zeta^{s}")));
                }
            }
            row.push(ZetaSeries::new(coeffs, s)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Largest order at which the oracle and the closed form of a factor
/// disagree, or `None` when they agree through `order`.
pub fn factor_series_mismatch(which: Factor, conv: SpectralConvention, order: usize) -> Result<Option<(usize, usize, usize)>> {
    let oracle = partial_product_oracle(which, conv, order)?;
    let p = Params::symbolic();
    let closed = build_factor(which, &p, &Exact::z(0), conv)?;
    let closed = entries_as_series(&closed, conv, order)?;
    for r in 0..9 {
        for c in 0..9 {
            let d = oracle[r][c].sub(&closed[r][c])?;
            if let Some(k) = d.coeffs().iter().position(|x| !x.is_zero()) {
                return Ok(Some((r, c, k)));
            }
        }
    }
    Ok(None)
}
