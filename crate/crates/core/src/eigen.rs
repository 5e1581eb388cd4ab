//! Eigenvalues of dense complex matrices by Hessenberg reduction and shifted
//! QR, and clustering of the result.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Approx;

type Rows<F> = Vec<Vec<F>>;

fn abs<F: Approx>(x: &F) -> F {
    x.mul(&x.conj()).sqrt()
}

/// Multiply by a power of two bringing magnitude `m` near one, so that small
/// values never reach a division.
fn rescaled<F: Approx>(xs: &[&F], m: f64) -> Result<Vec<F>> {
    let f = F::from_f64_pair(2f64.powi(-m.log2().round() as i32), 0.0)?;
    Ok(xs.iter().map(|x| x.mul(&f)).collect())
}

/// Unit-modulus `x / |x|`, or one for negligible `x`.
fn phase<F: Approx>(x: &F, tiny: f64) -> Result<F> {
    let m = x.magnitude();
    if m <= tiny {
        return Ok(F::one());
    }
    let x = rescaled(&[x], m)?.remove(0);
    x.div(&abs(&x))
}

/// Givens pair `(c, s)` with `|c|^2 + |s|^2 = 1` rotating `(x, y)` onto the
/// first axis.
fn givens<F: Approx>(x: &F, y: &F, tiny: f64) -> Result<(F, F)> {
    let m = x.magnitude().max(y.magnitude());
    if m <= tiny {
        return Ok((F::one(), F::zero()));
    }
    let v = rescaled(&[x, y], m)?;
    let r = v[0].mul(&v[0].conj()).add(&v[1].mul(&v[1].conj())).sqrt();
    Ok((v[0].div(&r)?, v[1].div(&r)?))
}

fn hessenberg<F: Approx>(a: &mut Rows<F>, tiny: f64) -> Result<()> {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let mut norm2 = F::zero();
        for row in a.iter().skip(k + 1) {
            norm2 = norm2.add(&row[k].mul(&row[k].conj()));
        }
        let norm = norm2.sqrt();
        if norm.magnitude() <= tiny {
            continue;
        }
        let alpha = phase(&a[k + 1][k], tiny)?.mul(&norm).neg();
        let mut v: Vec<F> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        v[0] = v[0].sub(&alpha);
        let mut vn = F::zero();
        for x in &v {
            vn = vn.add(&x.mul(&x.conj()));
        }
        let sc = F::from_f64_pair(2f64.powi(-vn.magnitude().log2().round() as i32), 0.0)?;
        let beta = F::from_i64(2).mul(&sc).div(&vn.mul(&sc))?;
        // A <- (I - beta v v^H) A
        for j in 0..n {
            let mut s = F::zero();
            for (t, x) in v.iter().enumerate() {
                s = s.add(&x.conj().mul(&a[k + 1 + t][j]));
            }
            let s = s.mul(&beta);
            for (t, x) in v.iter().enumerate() {
                a[k + 1 + t][j] = a[k + 1 + t][j].sub(&x.mul(&s));
            }
        }
        // A <- A (I - beta v v^H)
        for row in a.iter_mut() {
            let mut s = F::zero();
            for (t, x) in v.iter().enumerate() {
                s = s.add(&row[k + 1 + t].mul(x));
            }
            let s = s.mul(&beta);
            for (t, x) in v.iter().enumerate() {
                row[k + 1 + t] = row[k + 1 + t].sub(&s.mul(&x.conj()));
            }
        }
        for row in a.iter_mut().skip(k + 2) {
            row[k] = F::zero();
        }
    }
    Ok(())
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson<F: Approx>(a: &F, b: &F, c: &F, d: &F) -> Result<F> {
    let half = F::from_ratio(1, 2)?;
    let m = a.add(d).mul(&half);
    let diff = a.sub(d).mul(&half);
    let disc = diff.square().add(&b.mul(c)).sqrt();
    let l1 = m.add(&disc);
    let l2 = m.sub(&disc);
    Ok(if l1.sub(d).magnitude() <= l2.sub(d).magnitude() { l1 } else { l2 })
}

/// All eigenvalues, in the order they deflate.
pub fn eigenvalues<F: Approx>(m: &Mat<F>) -> Result<Vec<F>> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::Dimension("eigenvalues of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a: Rows<F> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let eps = a[0][0].epsilon().max(f64::MIN_POSITIVE);
    let scale = m.max_magnitude().max(f64::MIN_POSITIVE);
    let tiny = (eps * eps * scale).max(1e-280);
    hessenberg(&mut a, tiny)?;
    let mut out = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut since = 0usize;
    loop {
        if hi == 0 {
            out.push(a[0][0].clone());
            break;
        }
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = a[lo][lo - 1].magnitude();
            let diag = a[lo][lo].magnitude() + a[lo - 1][lo - 1].magnitude();
            let diag = if diag == 0.0 { scale } else { diag };
            if sub <= eps * diag {
                a[lo][lo - 1] = F::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(a[hi][hi].clone());
            hi -= 1;
            since = 0;
            continue;
        }
        iter += 1;
        since += 1;
        if iter > 100 * n {
            return Err(Error::NoConvergence);
        }
        let mu = if since % 11 == 10 {
            a[hi][hi].add(&F::from_f64_pair(a[hi][hi - 1].magnitude() * 0.75, 0.0)?)
        } else {
            wilkinson(&a[hi - 1][hi - 1], &a[hi - 1][hi], &a[hi][hi - 1], &a[hi][hi])?
        };
        for (i, row) in a.iter_mut().enumerate().take(hi + 1).skip(lo) {
            row[i] = row[i].sub(&mu);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(&a[k][k], &a[k + 1][k], tiny)?;
            for j in k..=hi {
                let top = a[k][j].clone();
                let bot = a[k + 1][j].clone();
                a[k][j] = c.conj().mul(&top).add(&s.conj().mul(&bot));
                a[k + 1][j] = c.mul(&bot).sub(&s.mul(&top));
            }
            rots.push((c, s));
        }
        for (t, (c, s)) in rots.iter().enumerate() {
            let k = lo + t;
            for row in a.iter_mut().take((k + 2).min(hi + 1)).skip(lo) {
                let l = row[k].clone();
                let r = row[k + 1].clone();
                row[k] = l.mul(c).add(&r.mul(s));
                row[k + 1] = c.conj().mul(&r).sub(&s.conj().mul(&l));
            }
        }
        for (i, row) in a.iter_mut().enumerate().take(hi + 1).skip(lo) {
            row[i] = row[i].add(&mu);
        }
    }
    Ok(out)
}

/// A group of eigenvalues that agree within the tolerance.
#[derive(Clone, Debug)]
pub struct Cluster<F> {
    pub value: F,
    pub multiplicity: usize,
    /// Largest distance of a member from the cluster mean.
    pub spread: f64,
}

/// Single-linkage clustering with tolerance `tol`; clusters are returned in
/// order of decreasing multiplicity, ties by real part.
pub fn cluster<F: Approx>(vals: &[F], tol: f64) -> Result<Vec<Cluster<F>>> {
    let n = vals.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(l: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while l[r] != r {
            r = l[r];
        }
        l[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if vals[i].sub(&vals[j]).magnitude() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut label, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let mut sum = F::zero();
        for &i in members {
            sum = sum.add(&vals[i]);
        }
        let mean = sum.div(&F::from_i64(members.len() as i64))?;
        let spread = members.iter().map(|&i| vals[i].sub(&mean).magnitude()).fold(0.0, f64::max);
        out.push(Cluster { value: mean, multiplicity: members.len(), spread });
    }
    out.sort_by(|a, b| {
        b.multiplicity.cmp(&a.multiplicity).then(a.value.re_f64().partial_cmp(&b.value.re_f64()).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(out)
}
