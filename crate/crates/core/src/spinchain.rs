//! Periodic spin chains on `N` sites of the evaluation representation:
//! transfer matrices, the Hamiltonian as a logarithmic derivative, and the
//! four-term closed form.
//!
//! Site 1 is the most significant tensor factor. Chain operators are dense
//! `3^N x 3^N` matrices.

use std::collections::BTreeMap;

use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::evalrep::SpectralConvention;
use crate::matrix::Mat;
use crate::par;
use crate::rmatrix::{build_r, limit_at_one};
use crate::scalar::exact::Z;
use crate::scalar::{Approx, Exact, Field, Params, C64};

/// Largest chain for the numeric backends.
pub const MAX_SITES_NUMERIC: usize = 7;
/// Largest chain for the exact backend.
pub const MAX_SITES_EXACT: usize = 3;

fn check_sites<F: Field>(n: usize) -> Result<()> {
    let max = if F::EXACT { MAX_SITES_EXACT } else { MAX_SITES_NUMERIC };
    if n == 0 || n > max {
        return Err(Error::InvalidArgument(format!("chain of {n} sites outside 1..={max}")));
    }
    Ok(())
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Base-3 digit of site `k` (zero-based) in a chain of `n` sites.
fn digit(idx: usize, k: usize, n: usize) -> usize {
    idx / pow3(n - 1 - k) % 3
}

fn with_digit(idx: usize, k: usize, n: usize, d: usize) -> usize {
    let w = pow3(n - 1 - k);
    idx - digit(idx, k, n) * w + d * w
}

/// `tr_0(R_01 R_02 ... R_0N)` for the given local matrices `R_0k`, each
/// acting on `V_0 (x) V_k`. Every column is built by applying the local
/// matrices to sparse states of the auxiliary space and the chain.
pub fn transfer_from_local<F: Field>(rs: &[Mat<F>]) -> Result<Mat<F>> {
    let n = rs.len();
    check_sites::<F>(n)?;
    let dim = pow3(n);
    // Nonzero entries of each column of each local matrix.
    let cols: Vec<Vec<Vec<(usize, F)>>> = rs
        .iter()
        .map(|r| (0..9).map(|j| (0..9).filter(|&i| !r.get(i, j).is_zero()).map(|i| (i, r.get(i, j).clone())).collect()).collect())
        .collect();
    let columns: Vec<Result<Vec<(usize, F)>>> = par::map_range(dim, |c| {
        let mut out: BTreeMap<usize, F> = BTreeMap::new();
        for a in 0..3 {
            let mut state: BTreeMap<(usize, usize), F> = BTreeMap::new();
            state.insert((a, c), F::one());
            for k in (0..n).rev() {
                let mut next: BTreeMap<(usize, usize), F> = BTreeMap::new();
                for ((x, idx), val) in &state {
                    let y = digit(*idx, k, n);
                    for (i, r) in &cols[k][3 * x + y] {
                        let key = (i / 3, with_digit(*idx, k, n, i % 3));
                        let add = r.mul(val);
                        match next.get_mut(&key) {
                            Some(e) => *e = e.add(&add),
                            None => {
                                next.insert(key, add);
                            }
                        }
                    }
                }
                state = next;
            }
            for ((x, idx), val) in state {
                if x == a && !val.is_zero() {
                    match out.get_mut(&idx) {
                        Some(e) => *e = e.add(&val),
                        None => {
                            out.insert(idx, val);
                        }
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    });
    let mut t = Mat::zeros(dim, dim);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col? {
            t.set(r, c, v);
        }
    }
    Ok(t)
}

/// `T(zeta | xi_1, ..., xi_N) = tr_0(R_01(zeta/xi_1) ... R_0N(zeta/xi_N))`.
pub fn transfer_matrix<F: Field>(p: &Params<F>, zeta: &F, xi: &[F], conv: SpectralConvention) -> Result<Mat<F>> {
    check_sites::<F>(xi.len())?;
    let rs = xi.iter().map(|x| build_r(p, &zeta.div(x)?, conv)).collect::<Result<Vec<_>>>()?;
    transfer_from_local(&rs)
}

/// The homogeneous transfer matrix `T(zeta) = T(zeta | 1, ..., 1)`.
pub fn homogeneous_transfer<F: Field>(p: &Params<F>, zeta: &F, n: usize, conv: SpectralConvention) -> Result<Mat<F>> {
    check_sites::<F>(n)?;
    let r = build_r(p, zeta, conv)?;
    transfer_from_local(&vec![r; n])
}

/// The cyclic shift `|i_1 i_2 ... i_N> -> |i_2 ... i_N i_1>`.
pub fn cyclic_shift<F: Field>(n: usize) -> Mat<F> {
    let dim = pow3(n);
    let mut m = Mat::zeros(dim, dim);
    for c in 0..dim {
        let first = digit(c, 0, n);
        let r = (c % pow3(n - 1)) * 3 + first;
        m.set(r, c, F::one());
    }
    m
}

/// `[T(z1), T(z2)]` for the homogeneous chain.
pub fn transfer_commutator<F: Field>(p: &Params<F>, z1: &F, z2: &F, n: usize, conv: SpectralConvention) -> Result<Mat<F>> {
    let t1 = homogeneous_transfer(p, z1, n, conv)?;
    let t2 = homogeneous_transfer(p, z2, n, conv)?;
    t1.commutator(&t2)
}

/// `T(1)` from the extrapolated limit of the local R-matrix at `zeta = 1`.
pub fn transfer_at_one<F: Approx>(p: &Params<F>, n: usize) -> Result<Mat<F>> {
    let conv = SpectralConvention::standard();
    let (r1, _) = limit_at_one(|z| build_r(p, z, conv))?;
    transfer_from_local(&vec![r1; n])
}

/// `T(1)^-1 dT/dzeta (1)` for the homogeneous chain in the convention
/// `(1, 0)`: five-point central differences with steps `h` and `h/2`
/// combined by one Richardson step.
pub fn hamiltonian_numeric<F: Approx>(p: &Params<F>, n: usize, h: f64) -> Result<Mat<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument("the Hamiltonian needs at least two sites".into()));
    }
    let conv = SpectralConvention::standard();
    let t_at = |x: &F| -> Result<Mat<F>> { homogeneous_transfer(p, &F::one().add(x), n, conv) };
    let five = |h: &F| -> Result<Mat<F>> {
        let (h2, m1, m2) = (h.scale(2), h.neg(), h.scale(-2));
        let num = t_at(&m2)?.sub(&t_at(&m1)?.scale(&F::from_i64(8)))?.add(&t_at(h)?.scale(&F::from_i64(8)))?.sub(&t_at(&h2)?)?;
        Ok(num.scale(&h.scale(12).inv()?))
    };
    let h = F::from_f64_pair(h, 0.0)?;
    let coarse = five(&h)?;
    let fine = five(&h.mul(&F::from_ratio(1, 2)?))?;
    let d = fine.scale(&F::from_i64(64)).sub(&coarse)?.scale(&F::from_ratio(1, 63)?);
    transfer_at_one(p, n)?.inverse()?.matmul(&d)
}

/// The same Hamiltonian from the exact derivative of the entries of `T(z)`.
pub fn hamiltonian_exact(n: usize) -> Result<Mat<Exact>> {
    if !(2..=MAX_SITES_EXACT).contains(&n) {
        return Err(Error::InvalidArgument(format!("exact Hamiltonian needs 2..={MAX_SITES_EXACT} sites")));
    }
    let p = Params::symbolic();
    let t = homogeneous_transfer(&p, &Exact::z(0), n, SpectralConvention::standard())?;
    let t1 = t.try_map(|x| x.at_one(Z[0]))?;
    let d1 = t.try_map(|x| x.derivative(Z[0]).at_one(Z[0]))?;
    t1.inverse()?.matmul(&d1)
}

/// The four displayed terms of the closed-form Hamiltonian and their sum.
#[derive(Clone, Debug)]
pub struct HamiltonianTerms<F: Field> {
    pub h12: Mat<F>,
    pub h23: Mat<F>,
    pub h31: Mat<F>,
    pub h123: Mat<F>,
}

impl<F: Field> HamiltonianTerms<F> {
    pub fn total(&self) -> Result<Mat<F>> {
        self.h12.add(&self.h23)?.add(&self.h31)?.add(&self.h123)
    }
}

/// `E_ij (x) E_kl` on two sites, zero-based indices.
fn ee<F: Field>(i: usize, j: usize, k: usize, l: usize) -> Mat<F> {
    Mat::unit(3, i, j).kron(&Mat::unit(3, k, l))
}

/// Two-site densities of the four terms, one-based matrix units.
pub fn local_densities<F: Field>(p: &Params<F>) -> Result<[Mat<F>; 4]> {
    let q = |k: i64| p.q_pow(k);
    let e = |i: usize, j: usize, k: usize, l: usize| ee::<F>(i - 1, j - 1, k - 1, l - 1);
    let pre = p.q_minus_qinv().inv()?.neg();
    let pair = |a: usize, b: usize| -> Result<Mat<F>> {
        e(a, b, b, a).add(&e(b, a, a, b))?.sub(&e(a, a, b, b).scale(&q(-1)))?.sub(&e(b, b, a, a).scale(&q(1)))
    };
    let h12 = pair(1, 2)?.scale(&pre);
    let h23 = pair(2, 3)?.scale(&pre);
    let one = F::one();
    let w33 = q(-1).add(&q(1).mul(&q(1).sub(&one)));
    let w11 = q(1).sub(&q(-2).mul(&q(1).sub(&one)));
    let c31 = pre.mul(&p.qnum_half(3)).div(&p.qnum(3))?;
    let h31 = e(3, 1, 1, 3).add(&e(1, 3, 3, 1))?.sub(&e(3, 3, 1, 1).scale(&w33))?.sub(&e(1, 1, 3, 3).scale(&w11))?.scale(&c31);
    // [3/2]_q = (q^(3/2) - q^(-3/2)) / (q - q^-1)
    let half32 = p.v_pow(3).sub(&p.v_pow(-3)).div(&p.q_minus_qinv())?;
    let c123 = half32.div(&p.qnum(3))?.neg();
    let (vh, vmh) = (p.v_pow(1), p.v_pow(-1));
    let first = e(1, 2, 3, 2).scale(&q(1)).sub(&e(3, 2, 1, 2).scale(&q(-1)))?.scale(&vh);
    let second = e(2, 1, 2, 3).scale(&q(1)).sub(&e(2, 3, 2, 1).scale(&q(-1)))?.scale(&vmh);
    let third = e(2, 2, 2, 2).scale(&vh.sub(&vmh).mul(&p.qnum(2)));
    let h123 = first.add(&second)?.sub(&third)?.scale(&c123);
    Ok([h12, h23, h31, h123])
}

/// `sum_l h_{l, l+1}` with site `N + 1` identified with site 1.
pub fn periodic_sum<F: Field>(h: &Mat<F>, n: usize) -> Result<Mat<F>> {
    if n < 2 {
        return Err(Error::InvalidArgument("periodic sums need at least two sites".into()));
    }
    let dim = pow3(n);
    let cols: Vec<Vec<Vec<(usize, F)>>> = vec![(0..9).map(|j| (0..9).filter(|&i| !h.get(i, j).is_zero()).map(|i| (i, h.get(i, j).clone())).collect()).collect()];
    let columns: Vec<BTreeMap<usize, F>> = par::map_range(dim, |c| {
        let mut out: BTreeMap<usize, F> = BTreeMap::new();
        for l in 0..n {
            let m = (l + 1) % n;
            let j = 3 * digit(c, l, n) + digit(c, m, n);
            for (i, x) in &cols[0][j] {
                let r = with_digit(with_digit(c, l, n, i / 3), m, n, i % 3);
                match out.get_mut(&r) {
                    Some(e) => *e = e.add(x),
                    None => {
                        out.insert(r, x.clone());
                    }
                }
            }
        }
        out
    });
    let mut t = Mat::zeros(dim, dim);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            t.set(r, c, v);
        }
    }
    Ok(t)
}

/// The four-term Hamiltonian on `n` periodic sites.
pub fn closed_form_hamiltonian<F: Field>(p: &Params<F>, n: usize) -> Result<HamiltonianTerms<F>> {
    check_sites::<F>(n)?;
    let [a, b, c, d] = local_densities(p)?;
    Ok(HamiltonianTerms { h12: periodic_sum(&a, n)?, h23: periodic_sum(&b, n)?, h31: periodic_sum(&c, n)?, h123: periodic_sum(&d, n)? })
}

/// Comparison of two operators up to a multiple of the identity.
#[derive(Clone, Debug)]
pub struct ShiftReport<F> {
    /// Largest entry of `a - b`.
    pub raw: f64,
    /// `tr(a - b) / dim`.
    pub shift: F,
    /// Largest entry of `a - b - shift`.
    pub shifted: f64,
}

pub fn compare_up_to_identity<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<ShiftReport<F>> {
    let d = a.sub(b)?;
    let shift = d.trace().div(&F::from_i64(d.rows() as i64))?;
    let shifted = d.sub(&Mat::identity(d.rows()).scale(&shift))?.max_magnitude();
    Ok(ShiftReport { raw: d.max_magnitude(), shift, shifted })
}

/// Full spectrum in double precision, sorted by real part.
pub fn spectrum<F: Approx>(m: &Mat<F>) -> Result<Vec<C64>> {
    let c = Mat::from_fn(m.rows(), m.cols(), |i, j| C64(num_complex::Complex::new(m.get(i, j).re_f64(), m.get(i, j).im_f64())));
    let mut ev = eigenvalues(&c)?;
    ev.sort_by(|a, b| a.re_f64().total_cmp(&b.re_f64()).then(a.im_f64().total_cmp(&b.im_f64())));
    Ok(ev)
}
