//! Sparse multivariate polynomials over the integers in four variables:
//! `v` (square root of the deformation parameter) and three spectral variables.
//!
//! Exponents are packed into one `u64`, sixteen bits per variable, with the
//! first variable in the top bits so that integer order is lexicographic order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["v", "z1", "z2", "z3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(u64);

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = 0xffff;

fn shift_of(var: usize) -> u32 {
    (NVARS - 1 - var) as u32 * FIELD_BITS
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(var: usize, e: u32) -> Mono {
        assert!(var < NVARS && e <= FIELD_MASK as u32, "monomial exponent out of range");
        Mono((e as u64) << shift_of(var))
    }

    pub fn from_exps(e: [u32; NVARS]) -> Mono {
        let mut m = 0u64;
        for (i, &x) in e.iter().enumerate() {
            assert!(x <= FIELD_MASK as u32, "monomial exponent out of range");
            m |= (x as u64) << shift_of(i);
        }
        Mono(m)
    }

    pub fn exp(self, var: usize) -> u32 {
        ((self.0 >> shift_of(var)) & FIELD_MASK) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        let mut e = [0; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(i);
        }
        e
    }

    pub fn mul(self, o: Mono) -> Mono {
        for i in 0..NVARS {
            assert!(self.exp(i) + o.exp(i) <= FIELD_MASK as u32, "monomial exponent overflow");
        }
        Mono(self.0 + o.0)
    }

    pub fn divides(self, o: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(self, o: Mono) -> Mono {
        debug_assert!(self.divides(o));
        Mono(o.0 - self.0)
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let mut e = [0; NVARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exp(i).min(o.exp(i));
        }
        Mono::from_exps(e)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    fn without(self, var: usize) -> Mono {
        Mono(self.0 & !(FIELD_MASK << shift_of(var)))
    }
}

/// Terms are kept sorted by decreasing monomial with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigInt)>,
}

fn merge_sorted(mut v: Vec<(Mono, BigInt)>) -> Vec<(Mono, BigInt)> {
    v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    let mut out: Vec<(Mono, BigInt)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::monomial(Mono::ONE, c)
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn monomial(m: Mono, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(var: usize) -> Poly {
        Poly::monomial(Mono::var(var, 1), BigInt::one())
    }

    /// Build from arbitrary terms; merges duplicates and drops zeros.
    pub fn from_terms(terms: Vec<(Mono, BigInt)>) -> Poly {
        Poly { terms: merge_sorted(terms) }
    }

    pub fn terms(&self) -> &[(Mono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, BigInt)> {
        self.terms.first()
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn min_degree(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0)
    }

    pub fn mentions(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.combine(o, true)
    }

    fn combine(&self, o: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                v.push((ma.mul(*mb), ca * cb));
            }
        }
        Poly { terms: merge_sorted(v) }
    }

    pub fn mul_term(&self, m: Mono, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(Mono::ONE, c)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut r = Poly::one();
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x / c)).collect() }
    }

    /// Divide by a monomial dividing every term.
    pub fn div_mono(&self, m: Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(mm, c)| (m.div_into(*mm), c.clone())).collect() }
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Largest monomial dividing every term.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else { return Mono::ONE };
        it.fold(*first, |g, (m, _)| g.gcd(*m))
    }

    /// Multiply by -1 if needed so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((dm.div_into(*m), q));
            }
            return Some(Poly { terms: out });
        }
        let (lm, lc) = &d.terms[0];
        for v in 0..NVARS {
            if d.degree(v) > self.degree(v) {
                return None;
            }
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.terms.first() {
            if !lm.divides(*rm) {
                return None;
            }
            let (qc, rem) = rc.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let qm = lm.div_into(*rm);
            r = r.sub(&d.mul_term(qm, &qc));
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Coefficients with respect to `var`, index = power. The variable is
    /// removed from each coefficient.
    pub fn to_uni(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree(var) as usize;
        let mut buckets: Vec<Vec<(Mono, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(var) as usize].push((m.without(var), c.clone()));
        }
        // Removing one variable can reorder terms inside a bucket.
        buckets.into_iter().map(|b| Poly { terms: merge_sorted(b) }).collect()
    }

    pub fn from_uni(var: usize, coeffs: &[Poly]) -> Poly {
        let mut v = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let xm = Mono::var(var, k as u32);
            for (m, cc) in &c.terms {
                v.push((m.mul(xm), cc.clone()));
            }
        }
        Poly { terms: merge_sorted(v) }
    }

    /// `x^deg * P(1/x)` together with `deg = degree(var)`.
    pub fn reverse_var(&self, var: usize) -> (Poly, u32) {
        let d = self.degree(var);
        let v = self
            .terms
            .iter()
            .map(|(m, c)| (m.without(var).mul(Mono::var(var, d - m.exp(var))), c.clone()))
            .collect();
        (Poly { terms: merge_sorted(v) }, d)
    }

    /// Substitute `x -> x^s` for `s >= 1`.
    pub fn power_var(&self, var: usize, s: u32) -> Poly {
        assert!(s >= 1);
        let v = self
            .terms
            .iter()
            .map(|(m, c)| (m.without(var).mul(Mono::var(var, m.exp(var) * s)), c.clone()))
            .collect();
        Poly { terms: merge_sorted(v) }
    }

    /// Substitute `x -> 1`.
    pub fn at_one(&self, var: usize) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.without(var), c.clone())).collect())
    }

    /// Substitute `x -> c * x`.
    pub fn scale_var(&self, var: usize, c: &BigInt) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x * num_traits::pow(c.clone(), m.exp(var) as usize)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let v = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.without(var).mul(Mono::var(var, e - 1)), c * BigInt::from(e))
            })
            .collect();
        Poly { terms: merge_sorted(v) }
    }

    /// Evaluate at a point of any field.
    pub fn eval<F: Field>(&self, point: &[F; NVARS]) -> F {
        let mut cache: Vec<Vec<F>> = Vec::with_capacity(NVARS);
        for (i, x) in point.iter().enumerate() {
            let d = self.degree(i) as usize;
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(F::one());
            for k in 1..=d {
                let next = pw[k - 1].mul(x);
                pw.push(next);
            }
            cache.push(pw);
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = bigint_to_field::<F>(c);
            for (i, pw) in cache.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Integer value at an integer point.
    pub fn eval_int(&self, point: &[i64; NVARS]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in point.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t *= num_traits::pow(BigInt::from(x), e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }
}

pub(crate) fn bigint_to_field<F: Field>(c: &BigInt) -> F {
    if let Some(x) = c.to_i64() {
        return F::from_i64(x);
    }
    // Horner in base 2^32 for large coefficients.
    let (sign, digits) = c.to_u32_digits();
    let base = F::from_i64(1i64 << 32);
    let mut acc = F::zero();
    for d in digits.iter().rev() {
        acc = acc.mul(&base).add(&F::from_i64(*d as i64));
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalize_sign();
    }
    if b.is_zero() {
        return a.normalize_sign();
    }
    let ca = a.content();
    let cb = b.content();
    let ic = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(ic);
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let gm = ma.gcd(mb);
    let a1 = a.div_mono(ma).div_int(&ca);
    let b1 = b.div_mono(mb).div_int(&cb);
    let g = gcd_primitive(&a1, &b1);
    g.mul_term(gm, &ic)
}

/// Gcd of polynomials with unit integer content and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let a = a.normalize_sign();
    let b = b.normalize_sign();
    if a == b {
        return a;
    }
    let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    // A variable present in only one operand cannot occur in the gcd.
    for var in 0..NVARS {
        let (ia, ib) = (a.mentions(var), b.mentions(var));
        if ia != ib {
            let (with, without) = if ia { (&a, &b) } else { (&b, &a) };
            let mut g = without.clone();
            for c in with.to_uni(var) {
                if c.is_zero() {
                    continue;
                }
                g = gcd(&g, &c);
                if g.is_constant() {
                    return Poly::one();
                }
            }
            return g.normalize_sign();
        }
    }
    if !probably_share_factor(&a, &b) {
        return Poly::one();
    }
    let var = (0..NVARS)
        .filter(|&v| a.mentions(v))
        .min_by_key(|&v| (a.degree(v).max(b.degree(v)), a.degree(v) + b.degree(v)))
        .expect("nonconstant polynomial mentions a variable");
    let ua = a.to_uni(var);
    let ub = b.to_uni(var);
    let conta = uni_content(&ua);
    let contb = uni_content(&ub);
    let c = gcd(&conta, &contb);
    let pa: Vec<Poly> = ua.iter().map(|x| x.div_exact(&conta).expect("content divides")).collect();
    let pb: Vec<Poly> = ub.iter().map(|x| x.div_exact(&contb).expect("content divides")).collect();
    let g = prs_gcd(pa, pb);
    Poly::from_uni(var, &g).mul(&c).normalize_sign()
}

/// Gcd of all coefficients of a univariate view.
fn uni_content(u: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn uni_trim(u: &mut Vec<Poly>) {
    while matches!(u.last(), Some(p) if p.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder of `r` by `d` (both trimmed, `d` nonzero).
fn prem(mut r: Vec<Poly>, d: &[Poly]) -> Vec<Poly> {
    let dd = d.len() - 1;
    let lc = &d[dd];
    uni_trim(&mut r);
    if r.len() < d.len() {
        return r;
    }
    let mut e = r.len() - d.len() + 1;
    while !r.is_empty() && r.len() >= d.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dd;
        for (i, ri) in r.iter_mut().enumerate() {
            let mut t = ri.mul(lc);
            if i >= shift && i - shift <= dd {
                t = t.sub(&lr.mul(&d[i - shift]));
            }
            *ri = t;
        }
        uni_trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lc.pow(e as u32);
        for ri in r.iter_mut() {
            *ri = ri.mul(&f);
        }
    }
    r
}

/// Primitive remainder sequence; inputs are primitive in the main variable.
fn prs_gcd(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        let r = prem(r0, &r1);
        if r.is_empty() {
            return r1;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let c = uni_content(&r);
        let r: Vec<Poly> = r.iter().map(|x| x.div_exact(&c).expect("content divides")).collect();
        r0 = r1;
        r1 = r;
    }
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    c.mod_floor(&p).to_u64().expect("reduced residue fits")
}

/// Image modulo the prime after substituting fixed values for all variables
/// except `keep`.
fn image_mod(p: &Poly, keep: usize, point: &[u64; NVARS]) -> Vec<u64> {
    let deg = p.degree(keep) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in &p.terms {
        let mut t = reduce(c);
        for (i, &x) in point.iter().enumerate() {
            if i != keep {
                t = mulmod(t, powmod(x, m.exp(i) as u64));
            }
        }
        let k = m.exp(keep) as usize;
        out[k] = (out[k] + t) % PRIME;
    }
    out
}

fn uni_gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while matches!(v.last(), Some(0)) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = powmod(*b.last().unwrap(), PRIME - 2);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                let t = mulmod(f, *bi);
                a[i + shift] = (a[i + shift] + PRIME - t) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// False only when modular images certify that `a` and `b` are coprime: the
/// gcd must have degree zero in every variable they both mention.
fn probably_share_factor(a: &Poly, b: &Poly) -> bool {
    // Fixed evaluation points keep results deterministic.
    const POINTS: [[u64; NVARS]; 2] = [
        [1_000_003, 7_777_771, 31_337_041, 2_718_281],
        [4_294_967_311, 99_991_003, 123_456_791, 65_537_017],
    ];
    for keep in 0..NVARS {
        if !a.mentions(keep) || !b.mentions(keep) {
            continue;
        }
        let certified = POINTS.iter().any(|pt| {
            let ia = image_mod(a, keep, pt);
            let ib = image_mod(b, keep, pt);
            // The degree bound needs both leading coefficients to survive.
            ia.last() != Some(&0) && ib.last() != Some(&0) && uni_gcd_degree_mod(ia, ib) == 0
        });
        if !certified {
            return true;
        }
    }
    false
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = Vec::new();
    for (i, name) in VAR_NAMES.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", fmt_mono(*m))?;
            } else {
                write!(f, "{a}*{}", fmt_mono(*m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Poly {
        Poly::var(0)
    }
    fn z() -> Poly {
        Poly::var(1)
    }
    fn c(x: i64) -> Poly {
        Poly::from_i64(x)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = v().add(&c(1)).mul(&v().sub(&c(1)));
        assert_eq!(p.to_string(), "v^2 - 1");
        assert_eq!(p.derivative(0).to_string(), "2*v");
        assert_eq!(p.at_one(0).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = v().add(&z()).pow(3);
        let b = v().add(&z());
        assert_eq!(a.div_exact(&b).unwrap(), b.pow(2));
        assert!(b.div_exact(&v().sub(&z())).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let f = v().mul(&z()).sub(&c(2));
        let g1 = f.mul(&v().add(&c(3))).scale(&BigInt::from(6));
        let g2 = f.mul(&z().pow(2).add(&v())).scale(&BigInt::from(4));
        let g = gcd(&g1, &g2);
        assert_eq!(g, f.scale(&BigInt::from(2)));
    }

    #[test]
    fn gcd_coprime() {
        let a = v().pow(4).add(&c(1));
        let b = v().pow(2).add(&z());
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn reverse_and_power() {
        let p = v().pow(3).add(&c(2).mul(&v()));
        let (r, d) = p.reverse_var(0);
        assert_eq!(d, 3);
        assert_eq!(r.to_string(), "2*v^2 + 1");
        assert_eq!(z().add(&c(1)).power_var(1, 3).to_string(), "z1^3 + 1");
    }
}
