//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ik_core::algebra::{root_vectors_recursive, Family, Side};
use ik_core::error::Result;
use ik_core::evalrep::{make_phi, phi_closed_form, phi_primed_closed_form, SpectralConvention};
use ik_core::loper::*;
use ik_core::qosc::{chi_closed_form, chi_primed_closed_form, make_chi, make_fock, make_psi};
use ik_core::rmatrix::*;
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::mp::{set_default_digits, DEFAULT_DIGITS};
use ik_core::scalar::series::{lambda_identity_residual, prefactor_identity_residual};
use ik_core::scalar::{Exact, Field, MpComplex, Params};
use ik_core::spinchain::*;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&what.into());
    }
}

fn conv(s0: i64, s1: i64) -> SpectralConvention {
    SpectralConvention::new(s0, s1).expect("valid convention")
}

fn numeric(sampler: &mut Sampler, n: usize, s: i64) -> Result<(Params<MpComplex>, Vec<MpComplex>)> {
    let (v, z) = sampler.point(n, s)?;
    lift::<MpComplex>(v, &z)
}

fn yang_baxter() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    let z = [Exact::z(0), Exact::z(1), Exact::z(2)];
    o.check(yang_baxter_residual(&p, [&z[0], &z[1], &z[2]], conv(1, 0))?.is_zero(), "exact residual nonzero");
    set_default_digits(50)?;
    let mut worst = 0.0f64;
    let mut s = Sampler::new(1001);
    for c in [conv(1, 0), conv(3, 1)] {
        for _ in 0..20 {
            let (p, z) = numeric(&mut s, 3, c.s())?;
            worst = worst.max(yang_baxter_residual(&p, [&z[0], &z[1], &z[2]], c)?.max_magnitude());
        }
    }
    set_default_digits(DEFAULT_DIGITS)?;
    o.check(worst < 1e-40, format!("numeric residual {worst:.2e}"));
    o.note(format!("40 samples at 50 digits, max {worst:.2e}"));
    Ok(o)
}

fn displayed_entries(p: &Params<Exact>, c: SpectralConvention) -> Result<EntryFunctions<Exact>> {
    let x = Exact::z(0).pow(c.s())?;
    let w = Exact::z(0).pow(c.s1)?;
    let q = |k| p.q_pow(k);
    let one = Exact::one();
    let t = p.q_minus_qinv();
    let den = one.sub(&x).mul(&one.add(&q(-1).mul(&x)));
    Ok(EntryFunctions {
        a: t.div(&one.sub(&x))?.mul(&w),
        b: t.div(&one.add(&q(-1).mul(&x)))?.mul(&w),
        c: t.mul(&q(1).sub(&one).add(&q(1).add(&q(-1)).mul(&q(-1)).mul(&x))).div(&den)?.mul(&w.square()),
        d: q(1).add(&q(1).sub(&one).mul(&t.add(&q(-3))).mul(&x)).sub(&q(-2).mul(&x.square())).div(&den)?,
        rho: one.sub(&x).div(&one.sub(&q(-2).mul(&x)))?,
        sigma: q(-1).mul(&den).div(&one.sub(&q(-2).mul(&x)).mul(&one.add(&q(-3).mul(&x))))?,
    })
}

fn closed_form() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1), conv(5, 2)] {
        o.check(build_r_from_factors(&p, &z, c)? == build_r(&p, &z, c)?, format!("factor product differs in {c:?}"));
        let f = EntryFunctions::new(&p, &z, c)?;
        let d = displayed_entries(&p, c)?;
        let pairs = [("a", &f.a, &d.a), ("b", &f.b, &d.b), ("c", &f.c, &d.c), ("d", &f.d, &d.d), ("rho", &f.rho, &d.rho), ("sigma", &f.sigma, &d.sigma)];
        for (name, got, want) in pairs {
            o.check(got == want, format!("{name} differs in {c:?}"));
        }
        // Placement in the closed form.
        let r = build_r(&p, &z, c)?;
        o.check(r.get(1, 3) == &d.rho.mul(&d.a), "rho a placement");
        o.check(r.get(2, 4) == &d.sigma.mul(&p.q()).mul(&d.b), "q sigma b placement");
        o.check(r.get(2, 6) == &d.sigma.mul(&d.c), "sigma c placement");
        o.check(r.get(4, 4) == &d.sigma.mul(&d.d), "sigma d placement");
        // Omega_1 symmetries of d, rho, sigma.
        let g = EntryFunctions::flipped(&p, &z, c)?;
        o.check(g.d == f.d, "Omega(d) != d");
        o.check(g.rho == f.rho.mul(&p.q_pow(-2)), "Omega(rho) != q^-2 rho");
        o.check(g.sigma == f.sigma.mul(&p.q_pow(-2)), "Omega(sigma) != q^-2 sigma");
    }
    o.note("exact, conventions (1,0), (3,1), (5,2)");
    Ok(o)
}

fn spectrum() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut s = Sampler::new(2002);
    let mut worst = 0.0f64;
    for k in 0..10 {
        let c = if k % 2 == 0 { conv(1, 0) } else { conv(3, 0) };
        let (p, z) = numeric(&mut s, 1, c.s())?;
        let rep = spectrum_check(&p, &z[0], c, 1e-20)?;
        let mult: Vec<usize> = rep.clusters.iter().map(|x| x.multiplicity).collect();
        o.check(rep.multiplicities_match, format!("sample {k}: multiplicities {mult:?}"));
        worst = worst.max(rep.max_deviation);
    }
    o.check(worst < 1e-20, format!("eigenvalue deviation {worst:.2e}"));
    o.note(format!("10 samples, multiplicities 5/3/1, max deviation {worst:.2e}"));
    Ok(o)
}

fn series() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    o.check(lambda_identity_residual(&p, 30)?.is_zero(), "lambda identity at order 30");
    o.check(prefactor_identity_residual(&p, 30)?.is_zero(), "prefactor relation at order 30");
    for c in [conv(1, 0), conv(3, 1)] {
        for f in [Factor::Alpha, Factor::DeltaMinusAlpha, Factor::Sim, Factor::TwoAlpha, Factor::DeltaMinusTwoAlpha] {
            let m = factor_series_mismatch(f, c, 8)?;
            o.check(m.is_none(), format!("{f:?} in {c:?} at {m:?}"));
        }
    }
    for f in [Factor::Alpha, Factor::DeltaMinusAlpha, Factor::Sim] {
        let m = lhat_factor_series_mismatch(6, f, conv(1, 0), 5)?;
        o.check(m.is_none(), format!("oscillator {f:?} at {m:?}"));
    }
    o.note("identities exact to order 30, factors to order 8");
    Ok(o)
}

fn root_vectors() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        let rep = make_phi(&p, &z, c)?;
        for side in [Side::E, Side::F] {
            let rv = root_vectors_recursive(&rep, side, 6)?;
            for m in 0..=6 {
                let mut fams = vec![Family::Alpha(m), Family::TwoAlpha(m), Family::DeltaMinusAlpha(m), Family::DeltaMinusTwoAlpha(m)];
                if m >= 1 {
                    fams.push(Family::Imaginary(m));
                    o.check(rv.primed(m) == Some(&phi_primed_closed_form(&p, &z, c, m, side)?), format!("primed {m} {side:?} {c:?}"));
                }
                for f in fams {
                    o.check(rv.family(f) == Some(&phi_closed_form(&p, &z, c, f, side)?), format!("{f:?} {side:?} {c:?}"));
                }
            }
        }
        let pa = Arc::new(p.clone());
        let rv = make_chi(&pa, &z, c)?.root_vectors(6)?;
        for m in 0..=6 {
            let mut fams = vec![Family::Alpha(m), Family::TwoAlpha(m), Family::DeltaMinusAlpha(m)];
            if m >= 1 {
                fams.push(Family::DeltaMinusTwoAlpha(m));
                fams.push(Family::Imaginary(m));
                o.check(rv.primed(m) == Some(&chi_primed_closed_form(&pa, &z, c, m)?), format!("oscillator primed {m} {c:?}"));
            }
            for f in fams {
                o.check(rv.family(f) == Some(&chi_closed_form(&pa, &z, c, f)?), format!("oscillator {f:?} {c:?}"));
            }
        }
    }
    o.note("m <= 6, both sides, exact");
    Ok(o)
}

fn serre() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        let rep = make_phi(&p, &z, c)?;
        for side in [Side::E, Side::F] {
            for s in rep.serre_polynomials(side)? {
                o.check(s.is_zero(), format!("phi {side:?} {c:?}"));
            }
        }
    }
    let mut s = Sampler::new(3003);
    let mut worst = 0.0f64;
    for c in [conv(1, 0), conv(3, 1)] {
        let (pn, zn) = numeric(&mut s, 1, c.s())?;
        let pn = Arc::new(pn);
        let f = make_fock(&pn, 12)?;
        for h in [make_chi(&pn, &zn[0], c)?, make_psi(&pn, &zn[0], c)?] {
            for r in h.serre_on_band(&f)? {
                worst = worst.max(r.max_magnitude());
            }
        }
    }
    o.check(worst < 1e-40, format!("band residual {worst:.2e}"));
    o.note(format!("phi exact, oscillator band at N_f = 12 max {worst:.2e}"));
    Ok(o)
}

fn rll() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut s = Sampler::new(4004);
    let mut worst = 0.0f64;
    for nf in [8, 12] {
        for k in 0..10 {
            let c = if k % 2 == 0 { conv(1, 0) } else { conv(3, 1) };
            let (p, z) = numeric(&mut s, 2, c.s())?;
            let p = Arc::new(p);
            let f = make_fock(&p, nf)?;
            let h = rll_hat_residual(&f, |x| build_lhat(&p, x, c), &z[0], &z[1], c)?;
            let ch = rll_check_residual(&f, |x| build_lcheck(&p, x, c), &z[0], &z[1], c)?;
            worst = worst.max(h.band(4)).max(ch.band(4));
        }
    }
    o.check(worst < 1e-35, format!("band residual {worst:.2e}"));
    o.note(format!("N_f = 8, 12, 10 samples each, band 4, max {worst:.2e}"));
    Ok(o)
}

fn structural() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Arc::new(Params::symbolic());
    let (z1, z2) = (Exact::z(0), Exact::z(1));
    for c in [conv(3, 1), conv(5, 2)] {
        let h = build_lhat(&p, &z1, c)?;
        o.check(h.j_conjugate(LKind::Check).m == build_lcheck(&p, &z1, c)?.m, format!("L-check = J L-hat J in {c:?}"));
        o.check(h.sigma()?.m == build_lhat_sigma(&p, &z1, c)?.m, format!("sigma image in {c:?}"));
        for r in inverse_relation_residual(&p, &z1, c)? {
            o.check(r.is_zero(), format!("inverse relation in {c:?}"));
        }
        o.check(hat_check_j_residual(&build_r(&*p, &z1, c)?)?.is_zero(), format!("R-check J relation in {c:?}"));
        o.check(gauge_residual(&*p, &z1, &z2, c)?.is_zero(), format!("R gauge in {c:?}"));
        let [literal, inverse, check] = gauge_relation_l(&p, &z1, &z2, c)?;
        o.check(inverse.is_zero(), format!("L-hat gauge in {c:?}"));
        o.check(check.is_zero(), format!("L-check gauge in {c:?}"));
        if !literal.is_zero() {
            o.note(format!("L-hat gauge needs gamma at zeta_1^-1 at ({}, {})", c.s0, c.s1));
        }
    }
    Ok(o)
}

fn factorizations() -> Result<Outcome> {
    let mut o = Outcome::new();
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        o.check(factorization_residual(&p, &z, c)?.is_zero(), format!("R = R+ R0 R- in {c:?}"));
        let names = ["Omega(R+) = R-", "Omega(R0) = q^-2 R0", "Omega(R) = q^-2 R"];
        for (r, name) in antiinvolution_residuals(&z, c)?.iter().zip(names) {
            o.check(r.is_zero(), format!("{name} in {c:?}"));
        }
    }
    let (res, lam) = decomposition_residual(false)?;
    o.check(res.is_zero(), "decomposition residual");
    o.check(lam.is_zero(), "Omega(Lambda) = -q^-2 Lambda");
    let (printed, _) = decomposition_residual(true)?;
    if !printed.is_zero() {
        o.note("r_0 uses q^-1 on E13 x E31");
    }
    Ok(o)
}

fn spin_chain() -> Result<Outcome> {
    let mut o = Outcome::new();
    let std = SpectralConvention::standard();
    let mut s = Sampler::new(5005);
    let mut worst = 0.0f64;
    for n in 2..=4 {
        for _ in 0..3 {
            let (p, z) = numeric(&mut s, 2, std.s())?;
            worst = worst.max(transfer_commutator(&p, &z[0], &z[1], n, std)?.max_magnitude());
        }
    }
    o.check(worst < 1e-35, format!("commutator {worst:.2e}"));
    o.note(format!("[T, T'] max {worst:.2e}"));
    for n in [3, 4] {
        let (p, _) = numeric(&mut s, 1, std.s())?;
        let h = hamiltonian_numeric(&p, n, 1e-8)?;
        let hc = closed_form_hamiltonian(&p, n)?.total()?;
        let r = compare_up_to_identity(&h, &hc)?;
        o.check(r.raw < 1e-25, format!("H at N = {n}: {:.2e}", r.raw));
        o.note(format!("H at N = {n}: {:.2e}, identity shift {:.2e}", r.raw, r.shift.magnitude()));
    }
    let (p, _) = numeric(&mut s, 1, 1)?;
    for c in [conv(1, 0), conv(3, 1)] {
        let (res, _) = r_at_one_residual(&p, c)?;
        let m = res.max_magnitude();
        o.check(m < 1e-25, format!("R(1) - qP in {c:?}: {m:.2e}"));
        o.note(format!("R(1) - qP at ({}, {}): {m:.2e}", c.s0, c.s1));
    }
    Ok(o)
}

type Criterion = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("1 Yang-Baxter", yang_baxter),
        ("2 R-matrix closed form", closed_form),
        ("3 spectrum", spectrum),
        ("4 series oracles", series),
        ("5 root-vector closed forms", root_vectors),
        ("6 Serre relations", serre),
        ("7 RLL", rll),
        ("8 structural relations", structural),
        ("9 factorizations", factorizations),
        ("10 spin chain", spin_chain),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name} ({:.1} s): {detail}", start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
