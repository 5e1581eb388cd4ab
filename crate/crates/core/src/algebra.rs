//! Cartan data, roots and normal ordering, and the recursive construction of
//! root vectors inside a matrix representation of the generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::element::{Element, Series};
use crate::matrix::Mat;
use crate::scalar::qnum::qbinomial;
use crate::scalar::{Exact, Field, Params};

/// Generalized Cartan matrix, symmetrizing factors and symmetrized matrix.
/// Index 0 is `delta - 2 alpha`, index 1 is `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub a: [[i64; 2]; 2],
    /// `d_i` as (numerator, denominator).
    pub d: [(i64, i64); 2],
    pub a_sym: [[i64; 2]; 2],
}

impl CartanData {
    pub fn twisted_a2() -> Self {
        CartanData { a: [[2, -1], [-4, 2]], d: [(2, 1), (1, 2)], a_sym: [[4, -2], [-2, 1]] }
    }

    /// `d_i a_ij = d_j a_ji` and `a_sym = diag(d) a`.
    pub fn is_consistent(&self) -> bool {
        let sym = (0..2).all(|i| {
            (0..2).all(|j| {
                let (ni, di) = self.d[i];
                let (nj, dj) = self.d[j];
                ni * self.a[i][j] * dj == nj * self.a[j][i] * di
            })
        });
        let scaled = (0..2).all(|i| (0..2).all(|j| self.a_sym[i][j] * self.d[i].1 == self.d[i].0 * self.a[i][j]));
        sym && scaled
    }
}

/// The root `k alpha + m delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub k: i64,
    pub m: i64,
}

/// The five families of positive roots, each with its own running index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `alpha + m delta`, `m >= 0`.
    Alpha(i64),
    /// `2 alpha + (2m+1) delta`, `m >= 0`.
    TwoAlpha(i64),
    /// `m delta`, `m >= 1`.
    Imaginary(i64),
    /// `delta - alpha + m delta`, `m >= 0`.
    DeltaMinusAlpha(i64),
    /// `delta - 2 alpha + 2m delta`, `m >= 0`.
    DeltaMinusTwoAlpha(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootClass {
    Positive(Family),
    Negative(Family),
}

impl Family {
    pub fn root(self) -> Root {
        match self {
            Family::Alpha(m) => Root::new(1, m),
            Family::TwoAlpha(m) => Root::new(2, 2 * m + 1),
            Family::Imaginary(m) => Root::new(0, m),
            Family::DeltaMinusAlpha(m) => Root::new(-1, m + 1),
            Family::DeltaMinusTwoAlpha(m) => Root::new(-2, 2 * m + 1),
        }
    }

    pub fn index(self) -> i64 {
        match self {
            Family::Alpha(m)
            | Family::TwoAlpha(m)
            | Family::Imaginary(m)
            | Family::DeltaMinusAlpha(m)
            | Family::DeltaMinusTwoAlpha(m) => m,
        }
    }
}

impl Root {
    pub const fn new(k: i64, m: i64) -> Self {
        Root { k, m }
    }

    pub const fn alpha() -> Self {
        Root::new(1, 0)
    }

    pub const fn delta() -> Self {
        Root::new(0, 1)
    }

    /// Simple root `alpha_i`: `alpha_0 = delta - 2 alpha`, `alpha_1 = alpha`.
    pub fn simple(i: usize) -> Self {
        match i {
            0 => Root::new(-2, 1),
            1 => Root::new(1, 0),
            _ => panic!("simple root index {i}"),
        }
    }

    pub fn neg(self) -> Self {
        Root::new(-self.k, -self.m)
    }

    /// Coefficients `(m_0, m_1)` with respect to the simple roots.
    pub fn simple_coeffs(self) -> (i64, i64) {
        (self.m, self.k + 2 * self.m)
    }

    fn positive_family(self) -> Option<Family> {
        let Root { k, m } = self;
        match k {
            1 if m >= 0 => Some(Family::Alpha(m)),
            2 if m >= 1 && m % 2 == 1 => Some(Family::TwoAlpha((m - 1) / 2)),
            0 if m >= 1 => Some(Family::Imaginary(m)),
            -1 if m >= 1 => Some(Family::DeltaMinusAlpha(m - 1)),
            -2 if m >= 1 && m % 2 == 1 => Some(Family::DeltaMinusTwoAlpha((m - 1) / 2)),
            _ => None,
        }
    }

    pub fn classify(self) -> Option<RootClass> {
        if let Some(f) = self.positive_family() {
            return Some(RootClass::Positive(f));
        }
        self.neg().positive_family().map(RootClass::Negative)
    }

    pub fn is_root(self) -> bool {
        self.classify().is_some()
    }

    pub fn is_positive(self) -> bool {
        self.positive_family().is_some()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.k {
            0 => String::new(),
            1 => "a".into(),
            -1 => "-a".into(),
            k => format!("{k}a"),
        };
        match (a.is_empty(), self.m) {
            (true, 0) => write!(f, "0"),
            (true, m) => write!(f, "{m}d"),
            (false, 0) => write!(f, "{a}"),
            (false, m) if m > 0 => write!(f, "{a}+{m}d"),
            (false, m) => write!(f, "{a}{m}d"),
        }
    }
}

/// Symmetric bilinear form, extended from `(alpha_i, alpha_j) = a_sym[i][j]`.
pub fn form(x: Root, y: Root) -> i64 {
    let s = CartanData::twisted_a2().a_sym;
    let (x0, x1) = x.simple_coeffs();
    let (y0, y1) = y.simple_coeffs();
    x0 * (s[0][0] * y0 + s[0][1] * y1) + x1 * (s[1][0] * y0 + s[1][1] * y1)
}

/// Positive roots with `delta` coefficient at most `max_m`, in normal order.
/// With `reverse` the opposite normal order is returned.
pub fn positive_roots(max_m: i64, reverse: bool) -> Vec<Root> {
    let mut out = Vec::new();
    for m in 0..=max_m {
        let a = Family::Alpha(m).root();
        if a.m <= max_m {
            out.push(a);
        }
        let b = Family::TwoAlpha(m).root();
        if b.m <= max_m {
            out.push(b);
        }
    }
    for m in 1..=max_m {
        out.push(Root::new(0, m));
    }
    let mut tail = Vec::new();
    for m in 0..=max_m {
        let b = Family::DeltaMinusTwoAlpha(m).root();
        if b.m <= max_m {
            tail.push(b);
        }
        let a = Family::DeltaMinusAlpha(m).root();
        if a.m <= max_m {
            tail.push(a);
        }
    }
    tail.reverse();
    out.extend(tail);
    if reverse {
        out.reverse();
    }
    out
}

/// `b_m = ([m]_q / m)(q^m - (-1)^m + q^-m)`.
pub fn b_coefficient<F: Field>(p: &Params<F>, m: i64) -> Result<F> {
    let sign = if m % 2 == 0 { F::one() } else { F::one().neg() };
    let s = p.q_pow(m).sub(&sign).add(&p.q_pow(-m));
    Ok(p.qnum(m).mul(&s).mul(&F::from_ratio(1, m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    E,
    F,
}

/// Images of the Chevalley generators. Cartan generators act diagonally with
/// integer weights; either side may be absent (Borel representations).
#[derive(Clone, Debug)]
pub struct Rep<F: Field> {
    dim: usize,
    params: Params<F>,
    e: [Option<Mat<F>>; 2],
    f: [Option<Mat<F>>; 2],
    h: [Vec<i64>; 2],
}

impl<F: Field> Rep<F> {
    pub fn new(params: Params<F>, h0: Vec<i64>, h1: Vec<i64>) -> Result<Self> {
        if h0.len() != h1.len() {
            return Err(Error::Dimension("Cartan weights of different lengths".into()));
        }
        Ok(Rep { dim: h0.len(), params, e: [None, None], f: [None, None], h: [h0, h1] })
    }

    pub fn with(mut self, side: Side, i: usize, m: Mat<F>) -> Result<Self> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension(format!("generator image of size {}x{}", m.rows(), m.cols())));
        }
        match side {
            Side::E => self.e[i] = Some(m),
            Side::F => self.f[i] = Some(m),
        }
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &Params<F> {
        &self.params
    }

    pub fn has(&self, side: Side) -> bool {
        let g = match side {
            Side::E => &self.e,
            Side::F => &self.f,
        };
        g.iter().all(|x| x.is_some())
    }

    pub fn generator(&self, side: Side, i: usize) -> Result<&Mat<F>> {
        let g = match side {
            Side::E => &self.e[i],
            Side::F => &self.f[i],
        };
        g.as_ref().ok_or_else(|| {
            let name = match side {
                Side::E => "e",
                Side::F => "f",
            };
            Error::MissingGenerator(format!("{name}_{i}"))
        })
    }

    pub fn h_weights(&self, i: usize) -> &[i64] {
        &self.h[i]
    }

    pub fn h(&self, i: usize) -> Mat<F> {
        Mat::diag(&self.h[i].iter().map(|&w| F::from_i64(w)).collect::<Vec<_>>())
    }

    /// Weights of `h_gamma = m_0 h_0 + m_1 h_1`.
    pub fn root_weights(&self, r: Root) -> Vec<i64> {
        let (m0, m1) = r.simple_coeffs();
        self.h[0].iter().zip(&self.h[1]).map(|(a, b)| m0 * a + m1 * b).collect()
    }

    /// `(q^h - q^-h)/(q - q^-1)` for `h = h_gamma`.
    pub fn cartan_bracket(&self, r: Root) -> Mat<F> {
        let p = &self.params;
        Mat::diag(&self.root_weights(r).into_iter().map(|w| p.qnum(w)).collect::<Vec<_>>())
    }

    /// The central element `h_0 + 2 h_1`.
    pub fn central(&self) -> Mat<F> {
        self.h(0).add(&self.h(1).scale(&F::from_i64(2))).expect("same size")
    }

    /// Residuals of `[h_i, x_j] = +-a_sym[i][j] x_j` and
    /// `[e_i, f_j] = delta_ij [h_i]`, largest magnitude first.
    pub fn defining_relation_residual(&self) -> Result<f64> {
        let s = CartanData::twisted_a2().a_sym;
        let mut worst: f64 = self.central().max_magnitude();
        for side in [Side::E, Side::F] {
            if !self.has(side) {
                continue;
            }
            let sign = if side == Side::E { 1 } else { -1 };
            for i in 0..2 {
                for j in 0..2 {
                    let x = self.generator(side, j)?;
                    let lhs = self.h(i).commutator(x)?;
                    let rhs = x.scale(&F::from_i64(sign * s[i][j]));
                    worst = worst.max(lhs.sub(&rhs)?.max_magnitude());
                }
            }
        }
        if self.has(Side::E) && self.has(Side::F) {
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = self.generator(Side::E, i)?.commutator(self.generator(Side::F, j)?)?;
                    let rhs = if i == j {
                        self.cartan_bracket(Root::simple(i))
                    } else {
                        Mat::zeros(self.dim, self.dim)
                    };
                    worst = worst.max(lhs.sub(&rhs)?.max_magnitude());
                }
            }
        }
        Ok(worst)
    }

    /// The two quantum Serre polynomials on one side: index 0 is the cubic
    /// relation (quadratic in `x_0`), index 1 the quintic one in `x_1`.
    pub fn serre_polynomials(&self, side: Side) -> Result<[Mat<F>; 2]> {
        let x0 = self.generator(side, 0)?;
        let x1 = self.generator(side, 1)?;
        let p = &self.params;
        Ok([serre_word(x0, x1, 2, &p.q_pow(2))?, serre_word(x1, x0, 5, p.v())?])
    }
}

/// `sum_k (-1)^k [n choose k]_base x^(n-k) y x^k`.
pub fn serre_word<F: Field>(x: &Mat<F>, y: &Mat<F>, n: i64, base: &F) -> Result<Mat<F>> {
    let dim = x.rows();
    let mut pows = vec![Mat::identity(dim)];
    for k in 1..=n as usize {
        pows.push(pows[k - 1].matmul(x)?);
    }
    let mut acc = Mat::zeros(dim, dim);
    for k in 0..=n {
        let c = qbinomial(base, n, k)?;
        let c = if k % 2 == 1 { c.neg() } else { c };
        let w = pows[(n - k) as usize].matmul(y)?.matmul(&pows[k as usize])?;
        acc = acc.add(&w.scale(&c))?;
    }
    Ok(acc)
}

/// Root vector images on one side of the algebra, keyed by positive roots.
/// `T` is the carrier: matrices of a representation or oscillator elements.
#[derive(Clone, Debug)]
pub struct RootVectors<T> {
    pub side: Side,
    pub max_m: i64,
    real: BTreeMap<Root, T>,
    primed: BTreeMap<i64, T>,
    imaginary: BTreeMap<i64, T>,
}

impl<T> RootVectors<T> {
    /// Image for a positive root; imaginary roots give the unprimed vectors.
    pub fn get(&self, r: Root) -> Option<&T> {
        if r.k == 0 {
            self.imaginary.get(&r.m)
        } else {
            self.real.get(&r)
        }
    }

    pub fn family(&self, f: Family) -> Option<&T> {
        self.get(f.root())
    }

    pub fn primed(&self, m: i64) -> Option<&T> {
        self.primed.get(&m)
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.real.keys()
    }
}

fn bracket<F: Field, T: Element<F>>(p: &Params<F>, side: Side, x: &T, gx: Root, y: &T, gy: Root) -> Result<T> {
    let e = form(gx, gy);
    match side {
        Side::E => x.q_commutator(y, &p.q_pow(e)),
        Side::F => y.q_commutator(x, &p.q_pow(-e)),
    }
}

/// Root vectors from the simple ones by q-commutators. Each family index
/// `m <= max_m` is produced; imaginary vectors up to `max_m + 1`.
pub fn root_vectors_recursive<F: Field>(rep: &Rep<F>, side: Side, max_m: i64) -> Result<RootVectors<Mat<F>>> {
    root_vectors_from(rep.params(), side, [rep.generator(side, 0)?, rep.generator(side, 1)?], max_m)
}

/// The same recursion starting from arbitrary images `[x_0, x_1]` of the
/// simple generators on one side.
pub fn root_vectors_from<F: Field, T: Element<F>>(
    p: &Params<F>,
    side: Side,
    gens: [&T; 2],
    max_m: i64,
) -> Result<RootVectors<T>> {
    if max_m < 0 {
        return Err(Error::InvalidArgument(format!("max_m = {max_m}")));
    }
    let ui = p.u().inv()?;
    let v3i = p.qnum_half(3).inv()?;
    let br = |x: &T, gx: Root, y: &T, gy: Root| bracket(p, side, x, gx, y, gy);

    let mut real = BTreeMap::new();
    let alpha = Root::alpha();
    let a0 = Root::simple(0);
    let dma = Family::DeltaMinusAlpha(0).root();
    let delta = Root::delta();
    real.insert(alpha, gens[1].clone());
    real.insert(a0, gens[0].clone());
    real.insert(dma, br(&real[&alpha], alpha, &real[&a0], a0)?.scale(&ui));
    let ed = br(&real[&alpha], alpha, &real[&dma], dma)?;

    let top = max_m + 1;
    for m in 1..=top {
        let (prev, cur) = (Family::Alpha(m - 1).root(), Family::Alpha(m).root());
        let x = br(&real[&prev], prev, &ed, delta)?.scale(&v3i);
        real.insert(cur, x);
        let (prev, cur) = (Family::DeltaMinusAlpha(m - 1).root(), Family::DeltaMinusAlpha(m).root());
        let x = br(&ed, delta, &real[&prev], prev)?.scale(&v3i);
        real.insert(cur, x);
    }
    for m in 0..=max_m {
        let (x, y) = (Family::Alpha(m).root(), Family::Alpha(m + 1).root());
        let v = br(&real[&x], x, &real[&y], y)?.scale(&ui);
        real.insert(Family::TwoAlpha(m).root(), v);
        if m >= 1 {
            let (x, y) = (Family::DeltaMinusAlpha(m).root(), Family::DeltaMinusAlpha(m - 1).root());
            let v = br(&real[&x], x, &real[&y], y)?.scale(&ui);
            real.insert(Family::DeltaMinusTwoAlpha(m).root(), v);
        }
    }
    let mut primed = BTreeMap::new();
    primed.insert(1, ed);
    for m in 2..=top {
        let x = Family::Alpha(m - 1).root();
        primed.insert(m, br(&real[&x], x, &real[&dma], dma)?);
    }
    real.retain(|r, _| r.positive_family().map(|f| f.index() <= max_m).unwrap_or(false));
    let imaginary = unprimed_from_primed(p, side, &primed)?;
    Ok(RootVectors { side, max_m, real, primed, imaginary })
}

/// `c e_delta(y) = log(1 + c e'_delta(y))` with `c = q - q^-1` on the
/// `e` side and `q^-1 - q` on the `f` side.
fn unprimed_from_primed<F: Field, T: Element<F>>(p: &Params<F>, side: Side, primed: &BTreeMap<i64, T>) -> Result<BTreeMap<i64, T>> {
    let c = match side {
        Side::E => p.q_minus_qinv(),
        Side::F => p.q_minus_qinv().neg(),
    };
    let order = *primed.keys().max().unwrap_or(&0) as usize;
    let zero = primed.values().next().ok_or_else(|| Error::InvalidArgument("no primed vectors".into()))?.zero_like();
    let mut s = Series { coeffs: vec![zero; order + 1] };
    for (&m, x) in primed {
        s.coeffs[m as usize] = x.scale(&c);
    }
    let l = s.log1p()?;
    let ci = c.inv()?;
    Ok((1..=order as i64).map(|m| (m, l.coeffs[m as usize].scale(&ci))).collect())
}

/// Residual of `[e_{alpha+m delta}, e_{n delta}] = b_n e_{alpha+(m+n) delta}`.
pub fn ed_commutation_residual<F: Field, T: Element<F>>(rv: &RootVectors<T>, p: &Params<F>, m: i64, n: i64) -> Result<T> {
    let x = rv.family(Family::Alpha(m)).ok_or_else(|| Error::InvalidArgument(format!("alpha+{m}d not built")))?;
    let y = rv.family(Family::Imaginary(n)).ok_or_else(|| Error::InvalidArgument(format!("{n}d not built")))?;
    let z = rv.family(Family::Alpha(m + n)).ok_or_else(|| Error::InvalidArgument(format!("alpha+{}d not built", m + n)))?;
    let lhs = bracket(p, Side::E, x, Family::Alpha(m).root(), y, Root::new(0, n))?;
    lhs.sub(&z.scale(&b_coefficient(p, n)?))
}

pub fn check_ed_commutation<F: Field, T: Element<F>>(rv: &RootVectors<T>, p: &Params<F>, m: i64, n: i64, tol: f64) -> Result<bool> {
    let r = ed_commutation_residual(rv, p, m, n)?;
    Ok(if F::EXACT { r.is_zero() } else { r.max_magnitude() < tol })
}

/// Cartan anti-involution on matrix images: transpose together with
/// `q -> 1/q` and `zeta -> 1/zeta`. On a tensor square the transpose is the
/// map `E_ij (x) E_mn -> E_ji (x) E_nm`, so one function serves every size.
pub fn cartan_antiinvolution(m: &Mat<Exact>) -> Mat<Exact> {
    m.transpose().map(|x| x.flip())
}
