//! Seeded sampling of numeric points away from the R-matrix pole loci.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Approx, Params};

/// Minimal distance from every pole locus.
pub const POLE_MARGIN: f64 = 1e-3;
const MAX_TRIES: usize = 10_000;

/// Distance of `x = zeta^s` from the nearest denominator zero: `1 - x`,
/// `1 +- q^(+-k) x` for `k <= 3`, `q^3 + x` and `q^2 - x`. Evaluated in f64.
pub fn pole_distance(q: f64, x: (f64, f64)) -> f64 {
    let (xr, xi) = x;
    let mut best = f64::INFINITY;
    let mut consider = |re: f64, im: f64| best = best.min(re.hypot(im));
    for k in -3i32..=3 {
        let c = q.powi(k);
        consider(1.0 - c * xr, -c * xi);
        consider(1.0 + c * xr, c * xi);
    }
    let q2 = q * q;
    consider(q2 * q + xr, xi);
    consider(q2 - xr, -xi);
    best
}

/// Random point generator; every draw is a pure function of the seed and
/// the draw index.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn v(&mut self) -> f64 {
        self.rng.random_range(1.02..1.25)
    }

    /// A point on the annulus `0.3 < |zeta| < 0.8` with uniform phase.
    pub fn zeta(&mut self) -> (f64, f64) {
        let r: f64 = self.rng.random_range(0.3..0.8);
        let t: f64 = self.rng.random_range(0.0..std::f64::consts::TAU);
        (r * t.cos(), r * t.sin())
    }

    /// `v` together with `n` spectral parameters such that every ratio
    /// `zeta_i / zeta_j` (i < j), raised to `s`, keeps away from the poles.
    /// For `n = 1` the parameter itself is tested.
    pub fn point(&mut self, n: usize, s: i64) -> Result<(f64, Vec<(f64, f64)>)> {
        for _ in 0..MAX_TRIES {
            let v = self.v();
            let zs: Vec<_> = (0..n).map(|_| self.zeta()).collect();
            let q = v * v;
            let ok = if n == 1 {
                pole_distance(q, cpow(zs[0], s)) > POLE_MARGIN
            } else {
                (0..n).all(|i| (i + 1..n).all(|j| pole_distance(q, cpow(cdiv(zs[i], zs[j]), s)) > POLE_MARGIN))
            };
            if ok {
                return Ok((v, zs));
            }
        }
        Err(Error::Pole("no admissible sample found".into()))
    }
}

fn cdiv(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn cpow(a: (f64, f64), s: i64) -> (f64, f64) {
    let r = a.0.hypot(a.1).powi(s as i32);
    let t = a.1.atan2(a.0) * s as f64;
    (r * t.cos(), r * t.sin())
}

/// Numeric parameters and spectral values from an f64 sample.
pub fn lift<F: Approx>(v: f64, zs: &[(f64, f64)]) -> Result<(Params<F>, Vec<F>)> {
    let p = Params::numeric(F::from_f64_pair(v, 0.0)?)?;
    let z = zs.iter().map(|&(a, b)| F::from_f64_pair(a, b)).collect::<Result<Vec<_>>>()?;
    Ok((p, z))
}
