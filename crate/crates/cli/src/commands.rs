use std::sync::Arc;

use clap::{Subcommand, ValueEnum};
use ik_core::algebra::Side;
use ik_core::evalrep::{make_phi, SpectralConvention};
use ik_core::loper::{
    blocks_to_matrix, build_lcheck, build_lhat, build_lhat_sigma, gauge_relation_l, inverse_relation_residual,
    lhat_factor_series_mismatch, rll_check_residual, rll_hat_residual, LOperator,
};
use ik_core::qosc::{make_chi, make_fock, make_psi};
use ik_core::rmatrix::{
    antiinvolution_residuals, build_r, decomposition_residual, factor_series_mismatch, factorization_residual,
    gauge_residual, spectrum_check, yang_baxter_residual, Factor,
};
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::series::{lambda_identity_residual, prefactor_identity_residual};
use ik_core::scalar::{Exact, Field, MpComplex, Params};
use ik_core::spinchain::{
    closed_form_hamiltonian, compare_up_to_identity, hamiltonian_exact, hamiltonian_numeric, homogeneous_transfer,
    spectrum, transfer_commutator, MAX_SITES_EXACT,
};
use ik_core::Result;

use crate::config::{Backend, RunConfig};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LChoice {
    Hat,
    Check,
    Sigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    R,
    Lhat,
    Lcheck,
    Lsigma,
    Transfer,
    Hamiltonian,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Build the R-matrix.
    BuildR,
    /// Yang-Baxter residuals.
    CheckYb,
    /// Eigenvalues of the checked R-matrix.
    Spectrum,
    /// R = R+ R0 R- and its anti-involution symmetry.
    Factorize,
    /// Spectral decomposition through r_0, r_1 and the prefactor.
    Decompose,
    /// Build an L-operator.
    BuildL {
        #[arg(value_enum)]
        kind: LChoice,
    },
    /// Exchange relations of both L-operator types on the Fock band.
    CheckRll,
    /// Serre relations in the evaluation and oscillator representations.
    CheckSerre,
    /// Gauge relations of R and of both L-operator types.
    CheckGauge,
    /// Transfer matrix and the commutator of two of them.
    Transfer,
    /// Chain Hamiltonian against the four-term closed form.
    Hamiltonian,
    /// Series identities and factor oracles.
    CheckSeries,
    /// Write an object as JSON; needs --output.
    Export {
        #[arg(value_enum)]
        object: Object,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::BuildR => "build-r".into(),
            Command::CheckYb => "check-yb".into(),
            Command::Spectrum => "spectrum".into(),
            Command::Factorize => "factorize".into(),
            Command::Decompose => "decompose".into(),
            Command::BuildL { kind } => format!("build-l {}", format!("{kind:?}").to_lowercase()),
            Command::CheckRll => "check-rll".into(),
            Command::CheckSerre => "check-serre".into(),
            Command::CheckGauge => "check-gauge".into(),
            Command::Transfer => "transfer".into(),
            Command::Hamiltonian => "hamiltonian".into(),
            Command::CheckSeries => "check-series".into(),
            Command::Export { object } => format!("export {}", format!("{object:?}").to_lowercase()),
        }
    }

    /// Supported backends, the first one being the default.
    pub fn backends(&self) -> &'static [Backend] {
        use Backend::*;
        match self {
            Command::BuildR | Command::Factorize | Command::BuildL { .. } | Command::CheckSerre => &[Exact, Numeric],
            Command::CheckYb | Command::Hamiltonian => &[Numeric, Exact],
            Command::Decompose | Command::CheckGauge | Command::CheckSeries => &[Exact],
            Command::Spectrum | Command::CheckRll | Command::Transfer => &[Numeric],
            Command::Export { object } => match object {
                Object::R | Object::Lhat | Object::Lcheck | Object::Lsigma => &[Exact, Numeric],
                Object::Transfer | Object::Hamiltonian => &[Numeric],
            },
        }
    }

    pub fn run(&self, cfg: &RunConfig) -> Result<Report> {
        let mut rep = Report::new(&self.name());
        rep.line(format!("convention ({}, {}), backend {}", cfg.conv.s0, cfg.conv.s1, cfg.backend));
        match self {
            Command::BuildR => build_r_cmd(cfg, &mut rep)?,
            Command::CheckYb => check_yb(cfg, &mut rep)?,
            Command::Spectrum => spectrum_cmd(cfg, &mut rep)?,
            Command::Factorize => factorize(cfg, &mut rep)?,
            Command::Decompose => decompose(&mut rep)?,
            Command::BuildL { kind } => build_l(cfg, *kind, &mut rep)?,
            Command::CheckRll => check_rll(cfg, &mut rep)?,
            Command::CheckSerre => check_serre(cfg, &mut rep)?,
            Command::CheckGauge => check_gauge(cfg, &mut rep)?,
            Command::Transfer => transfer(cfg, &mut rep)?,
            Command::Hamiltonian => hamiltonian(cfg, &mut rep)?,
            Command::CheckSeries => check_series(cfg, &mut rep)?,
            Command::Export { object } => match object {
                Object::R => build_r_cmd(cfg, &mut rep)?,
                Object::Lhat => build_l(cfg, LChoice::Hat, &mut rep)?,
                Object::Lcheck => build_l(cfg, LChoice::Check, &mut rep)?,
                Object::Lsigma => build_l(cfg, LChoice::Sigma, &mut rep)?,
                Object::Transfer => transfer(cfg, &mut rep)?,
                Object::Hamiltonian => hamiltonian(cfg, &mut rep)?,
            },
        }
        Ok(rep)
    }
}

/// Numeric parameters and `n` spectral values: sampled from the seed, with
/// `--v` and `--zeta` replacing the sampled `v` and first value.
fn numeric_point(cfg: &RunConfig, sampler: &mut Sampler, n: usize) -> Result<(Params<MpComplex>, Vec<MpComplex>)> {
    let (v, mut z) = sampler.point(n, cfg.conv.s())?;
    if let (Some(fixed), Some(first)) = (cfg.zeta, z.first_mut()) {
        *first = fixed;
    }
    lift::<MpComplex>(cfg.v.unwrap_or(v), &z)
}

fn fmt_c(z: &MpComplex) -> String {
    use ik_core::scalar::Approx;
    format!("{:.12e}{:+.12e}i", z.re_f64(), z.im_f64())
}

fn build_r_cmd(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let m = match cfg.backend {
        Backend::Exact => {
            let r = build_r(&Params::symbolic(), &Exact::z(0), cfg.conv)?;
            rep.line(format!("{} nonzero entries", r.nonzero_positions().len()));
            r.to_json()
        }
        Backend::Numeric => {
            let (p, z) = numeric_point(cfg, &mut Sampler::new(cfg.seed), 1)?;
            rep.line(format!("zeta = {}", fmt_c(&z[0])));
            let r = build_r(&p, &z[0], cfg.conv)?;
            rep.line(format!("{} nonzero entries", r.nonzero_positions().len()));
            r.to_json()
        }
    };
    rep.matrix = Some(m);
    Ok(())
}

fn check_yb(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    match cfg.backend {
        Backend::Exact => {
            let p = Params::symbolic();
            let z = [Exact::z(0), Exact::z(1), Exact::z(2)];
            let r = yang_baxter_residual(&p, [&z[0], &z[1], &z[2]], cfg.conv)?;
            rep.exact("Yang-Baxter", r.is_zero());
        }
        Backend::Numeric => {
            let tol = cfg.tol_or(1e-40);
            let mut s = Sampler::new(cfg.seed);
            for k in 0..cfg.samples {
                let (p, z) = numeric_point(cfg, &mut s, 3)?;
                let r = yang_baxter_residual(&p, [&z[0], &z[1], &z[2]], cfg.conv)?;
                rep.numeric(format!("sample {k}"), r.max_magnitude(), tol);
            }
        }
    }
    Ok(())
}

fn spectrum_cmd(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let tol = cfg.tol_or(1e-20);
    let mut s = Sampler::new(cfg.seed);
    let count = if cfg.zeta.is_some() { 1 } else { cfg.samples };
    for k in 0..count {
        let (p, z) = numeric_point(cfg, &mut s, 1)?;
        let r = spectrum_check(&p, &z[0], cfg.conv, tol)?;
        rep.line(format!("sample {k}: zeta = {}", fmt_c(&z[0])));
        for c in &r.clusters {
            rep.line(format!("  {} x{}", fmt_c(&c.value), c.multiplicity));
        }
        let mult: Vec<usize> = r.clusters.iter().map(|c| c.multiplicity).collect();
        rep.exact(format!("sample {k} multiplicities {mult:?}"), r.multiplicities_match);
        rep.numeric(format!("sample {k} closed-form eigenvalues"), r.max_deviation, tol);
    }
    Ok(())
}

fn factorize(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    match cfg.backend {
        Backend::Exact => {
            let p = Params::symbolic();
            let z = Exact::z(0);
            rep.exact("R = R+ R0 R-", factorization_residual(&p, &z, cfg.conv)?.is_zero());
            let names = ["Omega(R+) = R-", "Omega(R0) = q^-2 R0", "Omega(R) = q^-2 R"];
            for (r, name) in antiinvolution_residuals(&z, cfg.conv)?.iter().zip(names) {
                rep.exact(name, r.is_zero());
            }
        }
        Backend::Numeric => {
            let tol = cfg.tol_or(1e-40);
            let mut s = Sampler::new(cfg.seed);
            for k in 0..cfg.samples {
                let (p, z) = numeric_point(cfg, &mut s, 1)?;
                rep.numeric(format!("R = R+ R0 R- sample {k}"), factorization_residual(&p, &z[0], cfg.conv)?.max_magnitude(), tol);
            }
        }
    }
    Ok(())
}

fn decompose(rep: &mut Report) -> Result<()> {
    let (res, lam) = decomposition_residual(false)?;
    rep.line("convention (1, 0) is used for the decomposition");
    rep.exact("R = Lambda [M - Omega(M)]", res.is_zero());
    rep.exact("Omega(Lambda) = -q^-2 Lambda", lam.is_zero());
    Ok(())
}

fn l_operator<F: Field>(p: &Arc<Params<F>>, zeta: &F, conv: SpectralConvention, kind: LChoice) -> Result<LOperator<F>> {
    match kind {
        LChoice::Hat => build_lhat(p, zeta, conv),
        LChoice::Check => build_lcheck(p, zeta, conv),
        LChoice::Sigma => build_lhat_sigma(p, zeta, conv),
    }
}

fn build_l(cfg: &RunConfig, kind: LChoice, rep: &mut Report) -> Result<()> {
    let m = match cfg.backend {
        Backend::Exact => {
            let p = Arc::new(Params::symbolic());
            let l = l_operator(&p, &Exact::z(0), cfg.conv, kind)?;
            for i in 0..3 {
                for j in 0..3 {
                    rep.line(format!("L[{i}][{j}] = {}", l.get(i, j)));
                }
            }
            blocks_to_matrix(&l.to_fock(&make_fock(&p, cfg.nf)?)?)?.to_json()
        }
        Backend::Numeric => {
            let (p, z) = numeric_point(cfg, &mut Sampler::new(cfg.seed), 1)?;
            let p = Arc::new(p);
            rep.line(format!("zeta = {}", fmt_c(&z[0])));
            let l = l_operator(&p, &z[0], cfg.conv, kind)?;
            blocks_to_matrix(&l.to_fock(&make_fock(&p, cfg.nf)?)?)?.to_json()
        }
    };
    rep.line(format!("Fock image with N_f = {}", cfg.nf));
    rep.matrix = Some(m);
    Ok(())
}

fn check_rll(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let tol = cfg.tol_or(1e-35);
    let band = 4;
    rep.line(format!("N_f = {}, band {band}", cfg.nf));
    let mut s = Sampler::new(cfg.seed);
    for k in 0..cfg.samples {
        let (p, z) = numeric_point(cfg, &mut s, 2)?;
        let p = Arc::new(p);
        let f = make_fock(&p, cfg.nf)?;
        let c = cfg.conv;
        let h = rll_hat_residual(&f, |x| build_lhat(&p, x, c), &z[0], &z[1], c)?;
        let ch = rll_check_residual(&f, |x| build_lcheck(&p, x, c), &z[0], &z[1], c)?;
        rep.numeric(format!("hat sample {k}"), h.band(band), tol);
        rep.numeric(format!("check sample {k}"), ch.band(band), tol);
    }
    Ok(())
}

fn check_serre(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    match cfg.backend {
        Backend::Exact => {
            let p = Params::symbolic();
            let z = Exact::z(0);
            let phi = make_phi(&p, &z, cfg.conv)?;
            for side in [Side::E, Side::F] {
                let [c, q] = phi.serre_polynomials(side)?;
                rep.exact(format!("phi {side:?} cubic"), c.is_zero());
                rep.exact(format!("phi {side:?} quintic"), q.is_zero());
            }
            let pa = Arc::new(p);
            for h in [make_chi(&pa, &z, cfg.conv)?, make_psi(&pa, &z, cfg.conv)?] {
                let [c, q] = h.serre()?;
                rep.exact(format!("{:?} cubic", h.kind), c.is_zero());
                rep.exact(format!("{:?} quintic", h.kind), q.is_zero());
            }
        }
        Backend::Numeric => {
            let tol = cfg.tol_or(1e-35);
            let (p, z) = numeric_point(cfg, &mut Sampler::new(cfg.seed), 1)?;
            let p = Arc::new(p);
            let f = make_fock(&p, cfg.nf)?;
            rep.line(format!("N_f = {}", cfg.nf));
            for h in [make_chi(&p, &z[0], cfg.conv)?, make_psi(&p, &z[0], cfg.conv)?] {
                let [tc, tq] = h.serre_bands()?;
                let [c, q] = h.serre_on_band(&f)?;
                rep.numeric(format!("{:?} cubic on band {tc}", h.kind), c.max_magnitude(), tol);
                rep.numeric(format!("{:?} quintic on band {tq}", h.kind), q.max_magnitude(), tol);
            }
        }
    }
    Ok(())
}

fn check_gauge(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let p = Arc::new(Params::symbolic());
    let (z1, z2) = (Exact::z(0), Exact::z(1));
    rep.exact("R gauge", gauge_residual(&*p, &z1, &z2, cfg.conv)?.is_zero());
    let [literal, inverse, check] = gauge_relation_l(&p, &z1, &z2, cfg.conv)?;
    rep.exact("L-hat gauge with gamma at zeta_1^-1", inverse.is_zero());
    rep.exact("L-check gauge", check.is_zero());
    rep.line(format!(
        "L-hat gauge with gamma at zeta_1: {}",
        if literal.is_zero() { "zero" } else { "nonzero" }
    ));
    let names = ["L-hat L-check' = k", "L-check' L-hat = k"];
    for (r, name) in inverse_relation_residual(&p, &z1, cfg.conv)?.iter().zip(names) {
        rep.exact(name, r.is_zero());
    }
    Ok(())
}

fn transfer(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let tol = cfg.tol_or(1e-35);
    let (p, z) = numeric_point(cfg, &mut Sampler::new(cfg.seed), 2)?;
    rep.line(format!("N = {}, zeta = {}, zeta' = {}", cfg.sites, fmt_c(&z[0]), fmt_c(&z[1])));
    let t = homogeneous_transfer(&p, &z[0], cfg.sites, cfg.conv)?;
    let c = transfer_commutator(&p, &z[0], &z[1], cfg.sites, cfg.conv)?;
    rep.numeric("[T(zeta), T(zeta')]", c.max_magnitude(), tol);
    rep.matrix = Some(t.to_json());
    Ok(())
}

fn hamiltonian(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let n = cfg.sites;
    rep.line(format!("N = {n}"));
    match cfg.backend {
        Backend::Exact => {
            if !(2..=MAX_SITES_EXACT).contains(&n) {
                return Err(ik_core::Error::InvalidArgument(format!("exact Hamiltonian needs 2..={MAX_SITES_EXACT} sites")));
            }
            let h = hamiltonian_exact(n)?;
            let hc = closed_form_hamiltonian(&Params::symbolic(), n)?.total()?;
            rep.exact("H = four-term closed form", h == hc);
            rep.matrix = Some(h.to_json());
        }
        Backend::Numeric => {
            let tol = cfg.tol_or(1e-25);
            let (p, _) = numeric_point(cfg, &mut Sampler::new(cfg.seed), 1)?;
            let h = hamiltonian_numeric(&p, n, 1e-8)?;
            let hc = closed_form_hamiltonian(&p, n)?.total()?;
            let r = compare_up_to_identity(&h, &hc)?;
            rep.line(format!("identity shift {}", fmt_c(&r.shift)));
            rep.line(format!("residual after removing the shift {:.3e}", r.shifted));
            let ev = spectrum(&h)?;
            let shown: Vec<String> = ev.iter().take(6).map(|x| format!("{:.10e}{:+.10e}i", x.0.re, x.0.im)).collect();
            rep.line(format!("lowest eigenvalues: {}", shown.join(", ")));
            rep.numeric("H = four-term closed form", r.raw, tol);
            rep.matrix = Some(h.to_json());
        }
    }
    Ok(())
}

fn check_series(cfg: &RunConfig, rep: &mut Report) -> Result<()> {
    let p = Params::symbolic();
    let order = cfg.order;
    rep.line(format!("order {order}"));
    rep.exact("lambda identity", lambda_identity_residual(&p, order)?.is_zero());
    rep.exact("prefactor relation", prefactor_identity_residual(&p, order)?.is_zero());
    let factors = [Factor::Alpha, Factor::TwoAlpha, Factor::DeltaMinusAlpha, Factor::DeltaMinusTwoAlpha, Factor::Sim];
    for f in factors {
        let m = factor_series_mismatch(f, cfg.conv, order)?;
        rep.exact(format!("R factor {f:?}"), m.is_none());
    }
    if cfg.conv.s1 == 0 {
        for f in factors {
            let m = lhat_factor_series_mismatch(cfg.nf.min(6), f, cfg.conv, order.min(5))?;
            rep.exact(format!("L-hat factor {f:?}"), m.is_none());
        }
    }
    Ok(())
}
