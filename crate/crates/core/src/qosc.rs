//! The q-oscillator algebra: an exact normal form for its elements, the
//! truncated Fock representation, the Borel homomorphisms into it and the
//! maps sigma, tau, gamma and the two-parameter automorphism group.
//!
//! Every element is stored as a sum of canonical terms `g(p) q^(cD)` where
//! `g(p) = (a^dag)^p` for `p >= 0` and `g(p) = a^(-p)` for `p < 0`. Mixed
//! words are reduced with `a^dag a = 1 - q^(2D)` and `a a^dag = 1 - q^2 q^(2D)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{b_coefficient, root_vectors_from, Family, Rep, RootVectors, Side};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::evalrep::SpectralConvention;
use crate::matrix::Mat;
use crate::scalar::{Field, Params};

/// An element of the oscillator algebra in canonical form.
#[derive(Clone)]
pub struct Osc<F: Field> {
    params: Arc<Params<F>>,
    terms: BTreeMap<(i64, i64), F>,
}

impl<F: Field> fmt::Debug for Osc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Osc({self})")
    }
}

impl<F: Field> fmt::Display for Osc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(p, c), x)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({x})")?;
            match p {
                0 => {}
                1 => write!(f, " a†")?,
                -1 => write!(f, " a")?,
                p if p > 0 => write!(f, " a†^{p}")?,
                p => write!(f, " a^{}", -p)?,
            }
            if c != 0 {
                write!(f, " q^({c}D)")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> PartialEq for Osc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).map(|d| d.terms.is_empty()).unwrap_or(false)
    }
}

impl<F: Field> Osc<F> {
    fn from_terms(params: &Arc<Params<F>>, terms: impl IntoIterator<Item = ((i64, i64), F)>) -> Self {
        let mut out = Osc { params: params.clone(), terms: BTreeMap::new() };
        for (k, x) in terms {
            out.push(k, x);
        }
        out
    }

    fn push(&mut self, k: (i64, i64), x: F) {
        let v = match self.terms.remove(&k) {
            Some(y) => y.add(&x),
            None => x,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn zero(params: &Arc<Params<F>>) -> Self {
        Osc { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(params: &Arc<Params<F>>, c: F) -> Self {
        Self::term(params, c, 0, 0)
    }

    pub fn one(params: &Arc<Params<F>>) -> Self {
        Self::constant(params, F::one())
    }

    /// `x g(p) q^(cD)`.
    pub fn term(params: &Arc<Params<F>>, x: F, p: i64, c: i64) -> Self {
        Self::from_terms(params, [((p, c), x)])
    }

    pub fn a(params: &Arc<Params<F>>) -> Self {
        Self::term(params, F::one(), -1, 0)
    }

    pub fn adag(params: &Arc<Params<F>>) -> Self {
        Self::term(params, F::one(), 1, 0)
    }

    /// `q^(cD)`.
    pub fn qd(params: &Arc<Params<F>>, c: i64) -> Self {
        Self::term(params, F::one(), 0, c)
    }

    pub fn params(&self) -> &Arc<Params<F>> {
        &self.params
    }

    /// Canonical terms keyed by `(p, c)`.
    pub fn terms(&self) -> &BTreeMap<(i64, i64), F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Net level shifts `p` present in the element.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|k| k.0).collect();
        d.dedup();
        d
    }

    /// The level shift of a homogeneous element.
    pub fn degree(&self) -> Result<i64> {
        match self.degrees().as_slice() {
            [p] => Ok(*p),
            [] => Ok(0),
            _ => Err(Error::NormalForm(format!("inhomogeneous element {self}"))),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&k, x) in &o.terms {
            out.push(k, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| x.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        Self::from_terms(&self.params, self.terms.iter().map(|(&k, x)| (k, f(x))))
    }

    /// Canonical form of `g(p1) g(p2)` as `(p, c, coefficient)` triples.
    fn word(&self, p1: i64, p2: i64) -> Vec<(i64, i64, F)> {
        if p1 >= 0 && p2 >= 0 || p1 <= 0 && p2 <= 0 {
            return vec![(p1 + p2, 0, F::one())];
        }
        // Peel one a^dag a or one a a^dag from the middle.
        let (inner, c) = if p1 > 0 {
            (self.word(p1 - 1, p2 + 1), self.params.q_pow(2 * (p2 + 1)))
        } else {
            (self.word(p1 + 1, p2 - 1), self.params.q_pow(2 * p2))
        };
        let mut out = inner.clone();
        out.extend(inner.into_iter().map(|(p, cc, x)| (p, cc + 2, x.mul(&c).neg())));
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = Osc::zero(&self.params);
        for (&(p1, c1), x) in &self.terms {
            for (&(p2, c2), y) in &o.terms {
                let xy = x.mul(y).mul(&self.params.q_pow(c1 * p2));
                for (p, c, w) in self.word(p1, p2) {
                    out.push((p, c + c1 + c2), xy.mul(&w));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Osc::one(&self.params);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute generator images into each canonical term:
    /// `g(p) q^(cD) -> img(a^dag)^p or img(a)^(-p), times img(q^(cD))`.
    fn substitute(&self, adag: &Self, a: &Self, qd: impl Fn(i64) -> Self, reverse: bool) -> Result<Self> {
        let mut out = Osc::zero(&self.params);
        for (&(p, c), x) in &self.terms {
            let g = if p >= 0 { adag.pow(p as u32)? } else { a.pow((-p) as u32)? };
            let t = if reverse { qd(c).mul(&g)? } else { g.mul(&qd(c))? };
            out = out.add(&t.scale(x))?;
        }
        Ok(out)
    }

    /// The automorphism `a^dag -> a q^-D`, `a -> -q^-D a^dag`, `D -> -D - 1`.
    pub fn sigma(&self) -> Result<Self> {
        let p = &self.params;
        let adag = Osc::term(p, F::one(), -1, -1);
        let a = Osc::term(p, p.q_pow(-1).neg(), 1, -1);
        self.substitute(&adag, &a, |c| Osc::term(p, p.q_pow(-c), 0, -c), false)
    }

    /// The anti-involution `a <-> a^dag`, `D -> D`, reversing products.
    pub fn tau(&self) -> Result<Self> {
        let p = &self.params;
        self.substitute(&Osc::a(p), &Osc::adag(p), |c| Osc::qd(p, c), true)
    }

    /// `a -> a w^-1`, `a^dag -> a^dag w`, `D -> D`; with `w = zeta^s1` this is
    /// `gamma_zeta`.
    pub fn gamma(&self, w: &F) -> Result<Self> {
        let mut out = Osc::zero(&self.params);
        for (&(p, c), x) in &self.terms {
            out.push((p, c), x.mul(&w.pow(p)?));
        }
        Ok(out)
    }

    /// The two-parameter automorphism `a -> kappa a q^(xi D)`,
    /// `a^dag -> kappa^-1 q^(-xi D) a^dag`, `D -> D`.
    pub fn automorphism(&self, kappa: &F, xi: i64) -> Result<Self> {
        if kappa.is_zero() {
            return Err(Error::InvalidArgument("kappa = 0".into()));
        }
        let p = &self.params;
        let a = Osc::term(p, kappa.clone(), -1, xi);
        let adag = Osc::term(p, kappa.inv()?.mul(&p.q_pow(-xi)), 1, -xi);
        self.substitute(&adag, &a, |c| Osc::qd(p, c), false)
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Matrix in a truncated Fock space.
    pub fn to_fock(&self, fock: &FockSpace<F>) -> Result<Mat<F>> {
        let n = fock.dim();
        let mut out = Mat::zeros(n, n);
        for (&(p, c), x) in &self.terms {
            let g = if p >= 0 { fock.adag_pow(p as usize)? } else { fock.a_pow((-p) as usize)? };
            out = out.add(&g.matmul(&fock.qd(c))?.scale(x))?;
        }
        Ok(out)
    }
}

impl<F: Field> Element<F> for Osc<F> {
    fn add(&self, o: &Self) -> Result<Self> {
        Osc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Osc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Osc::mul(self, o)
    }
    fn scale(&self, c: &F) -> Self {
        Osc::scale(self, c)
    }
    fn zero_like(&self) -> Self {
        Osc::zero(&self.params)
    }
    fn is_zero(&self) -> bool {
        Osc::is_zero(self)
    }
    fn max_magnitude(&self) -> f64 {
        Osc::max_magnitude(self)
    }
}

/// The Fock space truncated at level `nf`: basis `|0>, ..., |nf>` with
/// `a^dag |n> = |n+1>` and `a |n> = (1 - q^(2n)) |n-1>`.
#[derive(Clone, Debug)]
pub struct FockSpace<F: Field> {
    nf: usize,
    params: Arc<Params<F>>,
    a: Mat<F>,
    adag: Mat<F>,
}

/// Fock space of truncation level `nf >= 4`.
pub fn make_fock<F: Field>(params: &Arc<Params<F>>, nf: usize) -> Result<FockSpace<F>> {
    if nf < 4 {
        return Err(Error::InvalidArgument(format!("Fock truncation {nf} is below 4")));
    }
    let n = nf + 1;
    let mut a = Mat::zeros(n, n);
    let mut adag = Mat::zeros(n, n);
    for k in 1..n {
        a.set(k - 1, k, F::one().sub(&params.q_pow(2 * k as i64)));
        adag.set(k, k - 1, F::one());
    }
    Ok(FockSpace { nf, params: params.clone(), a, adag })
}

impl<F: Field> FockSpace<F> {
    pub fn nf(&self) -> usize {
        self.nf
    }

    pub fn dim(&self) -> usize {
        self.nf + 1
    }

    pub fn params(&self) -> &Arc<Params<F>> {
        &self.params
    }

    pub fn a(&self) -> &Mat<F> {
        &self.a
    }

    pub fn adag(&self) -> &Mat<F> {
        &self.adag
    }

    pub fn a_pow(&self, k: usize) -> Result<Mat<F>> {
        (0..k).try_fold(Mat::identity(self.dim()), |acc, _| acc.matmul(&self.a))
    }

    pub fn adag_pow(&self, k: usize) -> Result<Mat<F>> {
        (0..k).try_fold(Mat::identity(self.dim()), |acc, _| acc.matmul(&self.adag))
    }

    /// The number operator `D`.
    pub fn d(&self) -> Mat<F> {
        self.diag_fn(|n| Ok(F::from_i64(n))).expect("integer diagonal")
    }

    /// `q^(cD)`.
    pub fn qd(&self, c: i64) -> Mat<F> {
        self.diag_fn(|n| Ok(self.params.q_pow(c * n))).expect("powers of q")
    }

    /// The diagonal operator `f(D)`.
    pub fn diag_fn(&self, f: impl Fn(i64) -> Result<F>) -> Result<Mat<F>> {
        let d = (0..self.dim() as i64).map(f).collect::<Result<Vec<_>>>()?;
        Ok(Mat::diag(&d))
    }

    /// Columns `|0>, ..., |nf - t>` of an operator: the band on which words
    /// that climb at most `t` levels are unaffected by the truncation.
    pub fn band(&self, m: &Mat<F>, t: usize) -> Result<Mat<F>> {
        if t > self.nf {
            return Err(Error::InvalidArgument(format!("band {t} exceeds the truncation {}", self.nf)));
        }
        Ok(m.leading_columns(self.nf + 1 - t))
    }
}

/// Which Borel subalgebra is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Borel {
    /// `chi`, on the generators `e_i`.
    Chi,
    /// `psi`, on the generators `f_i`.
    Psi,
}

impl Borel {
    pub fn side(self) -> Side {
        match self {
            Borel::Chi => Side::E,
            Borel::Psi => Side::F,
        }
    }
}

/// A homomorphism of a Borel subalgebra into the oscillator algebra.
#[derive(Clone, Debug)]
pub struct OscHom<F: Field> {
    pub kind: Borel,
    pub conv: SpectralConvention,
    gens: [Osc<F>; 2],
    /// `h_i -> h_d[i] D`.
    h_d: [i64; 2],
}

fn mu0<F: Field>(p: &Params<F>) -> Result<F> {
    p.q_pow(1).sub(&F::one()).mul(p.u()).inv()
}

fn mu1<F: Field>(p: &Params<F>) -> Result<F> {
    p.q_minus_qinv().inv()
}

/// `chi_zeta`: `h_0 -> 2D`, `h_1 -> -D`, `e_0 -> mu_0 a^dag^2 q^(-2D) zeta^s0`,
/// `e_1 -> mu_1 a zeta^s1`.
pub fn make_chi<F: Field>(params: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<OscHom<F>> {
    let e0 = Osc::term(params, mu0(params)?.mul(&zeta.pow(conv.s0)?), 2, -2);
    let e1 = Osc::term(params, mu1(params)?.mul(&zeta.pow(conv.s1)?), -1, 0);
    Ok(OscHom { kind: Borel::Chi, conv, gens: [e0, e1], h_d: [2, -1] })
}

/// `psi_zeta`: `h_0 -> -2D`, `h_1 -> D`, `f_0 -> mu_0 a^dag^2 q^(-2D) zeta^-s0`,
/// `f_1 -> mu_1 a zeta^-s1`.
pub fn make_psi<F: Field>(params: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention) -> Result<OscHom<F>> {
    let f0 = Osc::term(params, mu0(params)?.mul(&zeta.pow(-conv.s0)?), 2, -2);
    let f1 = Osc::term(params, mu1(params)?.mul(&zeta.pow(-conv.s1)?), -1, 0);
    Ok(OscHom { kind: Borel::Psi, conv, gens: [f0, f1], h_d: [-2, 1] })
}

impl<F: Field> OscHom<F> {
    /// Image of `e_i` (for chi) or `f_i` (for psi).
    pub fn generator(&self, i: usize) -> &Osc<F> {
        &self.gens[i]
    }

    /// Image of `h_i` as a multiple of `D`.
    pub fn h_coefficient(&self, i: usize) -> i64 {
        self.h_d[i]
    }

    fn params(&self) -> &Arc<Params<F>> {
        self.gens[0].params()
    }

    /// Residuals of `[h_i, x_j] = +-a^S_ij x_j`, using `[D, g(p)] = p g(p)`.
    pub fn weight_residuals(&self) -> Result<[[i64; 2]; 2]> {
        let sym = crate::algebra::CartanData::twisted_a2().a_sym;
        let sign = if self.kind == Borel::Chi { 1 } else { -1 };
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.h_d[i] * self.gens[j].degree()? - sign * sym[i][j];
            }
        }
        Ok(out)
    }

    /// Root vectors by the recursion, computed in the algebra itself.
    pub fn root_vectors(&self, max_m: i64) -> Result<RootVectors<Osc<F>>> {
        root_vectors_from(self.params(), self.kind.side(), [&self.gens[0], &self.gens[1]], max_m)
    }

    /// The cubic and quintic Serre polynomials evaluated in the algebra.
    pub fn serre(&self) -> Result<[Osc<F>; 2]> {
        let p = self.params();
        Ok([
            serre_element(&self.gens[0], &self.gens[1], 2, &p.q_pow(2))?,
            serre_element(&self.gens[1], &self.gens[0], 5, p.v())?,
        ])
    }

    /// The homomorphism composed with the Fock representation.
    pub fn rep(&self, fock: &FockSpace<F>) -> Result<Rep<F>> {
        let n = fock.dim() as i64;
        let h0 = (0..n).map(|k| self.h_d[0] * k).collect();
        let h1 = (0..n).map(|k| self.h_d[1] * k).collect();
        let side = self.kind.side();
        Rep::new((**self.params()).clone(), h0, h1)?
            .with(side, 0, self.gens[0].to_fock(fock)?)?
            .with(side, 1, self.gens[1].to_fock(fock)?)
    }

    /// Band widths for the cubic and quintic Serre words from the level
    /// shifts of the generators.
    pub fn serre_bands(&self) -> Result<[usize; 2]> {
        let d0 = self.gens[0].degree()?;
        let d1 = self.gens[1].degree()?;
        Ok([serre_band(d0, d1, 2), serre_band(d1, d0, 5)])
    }

    /// Serre polynomials in the Fock representation, restricted to the band
    /// where no word leaves the truncated space.
    pub fn serre_on_band(&self, fock: &FockSpace<F>) -> Result<[Mat<F>; 2]> {
        let rep = self.rep(fock)?;
        let [c, q] = rep.serre_polynomials(self.kind.side())?;
        let [tc, tq] = self.serre_bands()?;
        Ok([fock.band(&c, tc)?, fock.band(&q, tq)?])
    }
}

/// `sum_k (-1)^k [n choose k]_base x^(n-k) y x^k` in the algebra.
pub fn serre_element<F: Field>(x: &Osc<F>, y: &Osc<F>, n: i64, base: &F) -> Result<Osc<F>> {
    let mut pows = vec![Osc::one(x.params())];
    for k in 1..=n as usize {
        pows.push(pows[k - 1].mul(x)?);
    }
    let mut acc = Osc::zero(x.params());
    for k in 0..=n {
        let c = crate::scalar::qnum::qbinomial(base, n, k)?;
        let c = if k % 2 == 1 { c.neg() } else { c };
        let w = pows[(n - k) as usize].mul(y)?.mul(&pows[k as usize])?;
        acc = acc.add(&w.scale(&c))?;
    }
    Ok(acc)
}

/// Highest level above the starting one reached by any word
/// `x^(n-k) y x^k`, applied right to left, with level shifts `dx`, `dy`.
pub fn serre_band(dx: i64, dy: i64, n: i64) -> usize {
    let mut best = 0i64;
    for k in 0..=n {
        let word: Vec<i64> = std::iter::repeat_n(dx, k as usize).chain([dy]).chain(std::iter::repeat_n(dx, (n - k) as usize)).collect();
        let mut level = 0;
        for d in word {
            level += d;
            best = best.max(level);
        }
    }
    best as usize
}

/// Closed-form `chi_zeta` images of the root vectors; imaginary roots give
/// the unprimed vectors.
pub fn chi_closed_form<F: Field>(params: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention, family: Family) -> Result<Osc<F>> {
    let p = params;
    let (s, s1) = (conv.s(), conv.s1);
    let q = |k: i64| p.q_pow(k);
    let z = |k: i64| zeta.pow(k);
    let t = p.q_minus_qinv();
    let qm1 = q(1).sub(&F::one());
    let out = match family {
        Family::Alpha(m) => Osc::term(p, q(m).mul(&z(s1 + m * s)?).div(&t)?, -1, 2 * m),
        Family::DeltaMinusAlpha(m) => Osc::term(p, q(3 * m + 2).mul(&z(s - s1 + m * s)?).div(&qm1)?.neg(), 1, 2 * m),
        Family::TwoAlpha(m) => {
            let c = qm1.mul(p.u()).mul(&z(2 * s1 + (2 * m + 1) * s)?).div(&t.mul(&q(2).sub(&q(-2))))?;
            Osc::term(p, c, -2, 2 * (2 * m + 1))
        }
        Family::DeltaMinusTwoAlpha(m) => {
            let c = q(8 * m).mul(&z(s - 2 * s1 + 2 * m * s)?).div(&qm1.mul(p.u()))?;
            Osc::term(p, c, 2, 2 * (2 * m - 1))
        }
        Family::Imaginary(m) if m >= 1 => {
            let pre = q(m).mul(&z(m * s)?).div(&t.mul(&F::from_i64(m)))?.neg();
            let inner = F::from_i64(m).div(&p.qnum(m))?.mul(&b_coefficient(p, m)?).mul(&q(m));
            Osc::constant(p, pre.clone()).sub(&Osc::term(p, pre.mul(&inner), 0, 2 * m))?
        }
        Family::Imaginary(m) => return Err(Error::InvalidArgument(format!("imaginary root index {m}"))),
    };
    if family.index() < 0 {
        return Err(Error::InvalidArgument(format!("negative family index in {family:?}")));
    }
    Ok(out)
}

/// Closed-form `chi_zeta(e'_{m delta})`.
pub fn chi_primed_closed_form<F: Field>(params: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention, m: i64) -> Result<Osc<F>> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("imaginary root index {m}")));
    }
    let p = params;
    let q = |k: i64| p.q_pow(k);
    let pre = q(m).mul(&zeta.pow(m * conv.s())?).div(&q(1).sub(&F::one()).mul(&p.q_minus_qinv()))?;
    let lo = F::one().sub(&q(2 * m - 1)).mul(&pre);
    let hi = F::one().sub(&q(2 * m + 1)).mul(&pre).neg();
    Osc::term(p, lo, 0, 2 * (m - 1)).add(&Osc::term(p, hi, 0, 2 * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn params() -> Arc<Params<Exact>> {
        Arc::new(Params::symbolic())
    }

    #[test]
    fn defining_relations_in_normal_form() {
        let p = params();
        let (a, ad) = (Osc::a(&p), Osc::adag(&p));
        let one = Osc::one(&p);
        assert_eq!(ad.mul(&a).unwrap(), one.sub(&Osc::qd(&p, 2)).unwrap());
        let q2 = Osc::term(&p, p.q_pow(2), 0, 2);
        assert_eq!(a.mul(&ad).unwrap(), one.sub(&q2).unwrap());
        // q^D a = q^-1 a q^D
        let lhs = Osc::qd(&p, 1).mul(&a).unwrap();
        assert_eq!(lhs, Osc::term(&p, p.q_pow(-1), -1, 1));
    }

    #[test]
    fn sigma_tau_gamma_on_generators() {
        let p = params();
        let d1 = Osc::term(&p, p.q_pow(-1), 0, -1);
        assert_eq!(Osc::qd(&p, 1).sigma().unwrap(), d1);
        let aad = Osc::a(&p).mul(&Osc::adag(&p)).unwrap();
        assert_eq!(aad.tau().unwrap(), aad);
        let w = Exact::z(0);
        assert_eq!(Osc::adag(&p).gamma(&w).unwrap(), Osc::adag(&p).scale(&w));
        assert_eq!(Osc::a(&p).automorphism(&Exact::one(), 0).unwrap(), Osc::a(&p));
    }

    #[test]
    fn fock_too_small() {
        assert!(make_fock(&params(), 3).is_err());
        assert!(make_fock(&params(), 4).is_ok());
    }

    #[test]
    fn serre_band_widths() {
        assert_eq!(serre_band(2, -1, 2), 4);
        assert_eq!(serre_band(-1, 2, 5), 2);
    }
}
