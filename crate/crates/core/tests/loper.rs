use std::sync::Arc;

use ik_core::evalrep::SpectralConvention;
use ik_core::loper::*;
use ik_core::matrix::{skew_identity, Mat};
use ik_core::qosc::{make_fock, Osc};
use ik_core::rmatrix::{build_r, hat_check_j_residual, Factor};
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::{Exact, Field, MpComplex, Params};

fn symbolic() -> Arc<Params<Exact>> {
    Arc::new(Params::symbolic())
}

fn conv(s0: i64, s1: i64) -> SpectralConvention {
    SpectralConvention::new(s0, s1).unwrap()
}

fn numeric(seed: u64, n: usize) -> (Arc<Params<MpComplex>>, Vec<MpComplex>) {
    let (v, z) = Sampler::new(seed).point(n, 1).unwrap();
    let (p, z) = lift::<MpComplex>(v, &z).unwrap();
    (Arc::new(p), z)
}

#[test]
fn displayed_entries() {
    let p = symbolic();
    let z = Exact::z(0);
    let c = conv(1, 0);
    let q = |k| p.q_pow(k);
    let h = build_lhat(&p, &z, c).unwrap();
    let one = Exact::one();
    assert_eq!(h.get(1, 1), &Osc::constant(&p, one.sub(&q(1).mul(&z))));
    assert_eq!(h.get(2, 0), &Osc::term(&p, q(1).div(&q(1).add(&one)).unwrap(), -2, -1));
    let ch = build_lcheck(&p, &z, c).unwrap();
    assert_eq!(ch.get(0, 0), &Osc::qd(&p, 1).add(&Osc::term(&p, z.clone(), 0, -1)).unwrap());
    let sg = build_lhat_sigma(&p, &z, c).unwrap();
    assert_eq!(sg.get(1, 0), &Osc::adag(&p).neg());
    let cp = build_lcheck_prime(&p, &z, c).unwrap();
    assert_eq!(cp.get(1, 1), &Osc::constant(&p, one.add(&q(4).mul(&z))));
    // Normal-ordered entries have oscillator degree at most two.
    for l in [h, ch, sg, cp] {
        for i in 0..3 {
            for j in 0..3 {
                assert!(l.get(i, j).degrees().iter().all(|d| d.abs() <= 2));
            }
        }
    }
}

#[test]
fn j_sigma_and_inverse_relations() {
    let p = symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1), conv(5, 2)] {
        let h = build_lhat(&p, &z, c).unwrap();
        assert_eq!(h.j_conjugate(LKind::Check).m, build_lcheck(&p, &z, c).unwrap().m, "{c:?}");
        assert_eq!(h.sigma().unwrap().m, build_lhat_sigma(&p, &z, c).unwrap().m, "{c:?}");
        for r in inverse_relation_residual(&p, &z, c).unwrap() {
            assert!(r.is_zero(), "{c:?}");
        }
    }
    // The two skew-diagonal relations hold together.
    let r = build_r(&*p, &z, conv(1, 0)).unwrap();
    assert!(hat_check_j_residual(&r).unwrap().is_zero());
    assert_eq!(skew_identity::<Exact>(3).matmul(&skew_identity(3)).unwrap(), Mat::identity(3));
}

#[test]
fn inverse_relation_on_the_fock_band() {
    let (p, z) = numeric(3, 1);
    let f = make_fock(&p, 10).unwrap();
    let c = conv(1, 0);
    let h = build_lhat(&p, &z[0], c).unwrap().to_fock(&f).unwrap();
    let cp = build_lcheck_prime(&p, &z[0], c).unwrap().to_fock(&f).unwrap();
    let x = z[0].clone();
    let k = MpComplex::one().add(&p.q_pow(2).mul(&x)).mul(&MpComplex::one().sub(&p.q_pow(3).mul(&x)));
    let prod = h.mul(&cp).unwrap().band(&f, 2).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { f.band(&Mat::identity(f.dim()).scale(&k), 2).unwrap() } else { f.band(&Mat::zeros(f.dim(), f.dim()), 2).unwrap() };
            assert!(prod.get(i, j).sub(&target).unwrap().max_magnitude() < 1e-50);
        }
    }
}

#[test]
fn gauge_relations() {
    let p = symbolic();
    let (z1, z2) = (Exact::z(0), Exact::z(1));
    for c in [conv(3, 1), conv(5, 2)] {
        let [literal, inverse, check] = gauge_relation_l(&p, &z1, &z2, c).unwrap();
        assert!(!literal.is_zero(), "gamma with zeta_1 itself does not reproduce the gauge");
        assert!(inverse.is_zero());
        assert!(check.is_zero());
    }
    let [_, inverse, check] = gauge_relation_l(&p, &z1, &z2, conv(1, 0)).unwrap();
    assert!(inverse.is_zero() && check.is_zero());
}

#[test]
fn factor_product_reproduces_lhat() {
    let p = symbolic();
    let f = make_fock(&p, 6).unwrap();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        assert!(lhat_factor_residual(&f, &z, c).unwrap().is_zero(), "{c:?}");
        for r in lhat_grouping_residuals(&f, &z, c).unwrap() {
            assert!(r.is_zero(), "{c:?}");
        }
    }
    let (p, z) = numeric(5, 1);
    let f = make_fock(&p, 12).unwrap();
    assert!(lhat_factor_residual(&f, &z[0], conv(1, 0)).unwrap().max_magnitude() < 1e-50);
}

#[test]
fn factors_match_truncated_root_vector_products() {
    for which in [Factor::Alpha, Factor::TwoAlpha, Factor::DeltaMinusAlpha, Factor::DeltaMinusTwoAlpha, Factor::Prec, Factor::Succ, Factor::Sim] {
        assert_eq!(lhat_factor_series_mismatch(6, which, conv(1, 0), 5).unwrap(), None, "{which:?}");
    }
    assert_eq!(lhat_factor_series_mismatch(5, Factor::Succ, conv(2, 0), 3).unwrap(), None);
    assert!(lhat_factor_series_mismatch(5, Factor::Alpha, conv(3, 1), 3).is_err());
}

#[test]
fn exchange_relations_on_the_interior() {
    for nf in [8, 12] {
        for seed in 0..if nf == 8 { 6 } else { 2 } {
            let (p, z) = numeric(100 + seed, 2);
            let f = make_fock(&p, nf).unwrap();
            for c in [conv(1, 0), conv(3, 1)] {
                let h = rll_hat_residual(&f, |x| build_lhat(&p, x, c), &z[0], &z[1], c).unwrap();
                let ch = rll_check_residual(&f, |x| build_lcheck(&p, x, c), &z[0], &z[1], c).unwrap();
                assert!(h.band(4) < 1e-35, "hat nf={nf} {c:?}: {}", h.band(4));
                assert!(ch.band(4) < 1e-35, "check nf={nf} {c:?}: {}", ch.band(4));
                // Only the truncated top levels carry a residual.
                assert!(h.max() > 1e-10);
            }
        }
    }
}

#[test]
fn exchange_relations_distinguish_the_types() {
    let (p, z) = numeric(7, 2);
    let f = make_fock(&p, 8).unwrap();
    let c = conv(1, 0);
    let wrong = rll_hat_residual(&f, |x| build_lcheck(&p, x, c), &z[0], &z[1], c).unwrap();
    assert!(wrong.band(4) > 1e-3);
    let wrong = rll_check_residual(&f, |x| build_lhat(&p, x, c)?.tau(LKind::Check), &z[0], &z[1], c).unwrap();
    assert!(wrong.band(4) > 1e-3);
    // tau(L-hat(zeta^-1)) is of type L-check.
    let flip = rll_check_residual(&f, |x| build_lhat(&p, &x.inv()?, c)?.tau(LKind::Check), &z[0], &z[1], c).unwrap();
    assert!(flip.band(4) < 1e-35);
}

#[test]
fn boxed_exchange_relations_in_the_algebra() {
    let (p, z) = numeric(11, 2);
    for c in [conv(1, 0), conv(3, 1)] {
        for r in rll_boxed_residuals(&p, &z[0], &z[1], c).unwrap() {
            assert!(r.max_magnitude() < 1e-50, "{c:?}: {}", r.max_magnitude());
        }
    }
}

#[test]
fn plus_minus_parts_are_invertible() {
    let p = symbolic();
    for build in [build_lhat::<Exact>, build_lcheck::<Exact>] {
        let (plus, minus) = split_plus_minus(&p, build).unwrap();
        let z = Exact::z(0);
        let l = build(&p, &z, conv(1, 0)).unwrap().m;
        let rebuilt = OscMat::from_fn(3, |i, j| plus.get(i, j).scale(&z).sub(minus.get(i, j)).unwrap());
        assert_eq!(rebuilt, l);
        for part in [&plus, &minus] {
            let inv = triangular_inverse(part).unwrap().expect("triangular with invertible diagonal");
            assert_eq!(part.mul(&inv).unwrap(), OscMat::identity(&p, 3));
            assert_eq!(inv.mul(part).unwrap(), OscMat::identity(&p, 3));
        }
    }
}
