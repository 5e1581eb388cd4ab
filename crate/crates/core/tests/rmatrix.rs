use ik_core::evalrep::SpectralConvention;
use ik_core::rmatrix::*;
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::{Exact, Field, MpComplex, Params};

fn conv(s0: i64, s1: i64) -> SpectralConvention {
    SpectralConvention::new(s0, s1).unwrap()
}

#[test]
fn factor_product_equals_closed_form() {
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        assert_eq!(build_r_from_factors(&p, &z, c).unwrap(), build_r(&p, &z, c).unwrap(), "{c:?}");
    }
}

#[test]
fn grouped_factors_are_products_of_single_ones() {
    let p = Params::symbolic();
    let z = Exact::z(0);
    let c = conv(3, 1);
    let f = |w| build_factor(w, &p, &z, c).unwrap();
    assert_eq!(f(Factor::Alpha).matmul(&f(Factor::TwoAlpha)).unwrap(), f(Factor::Prec));
    assert_eq!(f(Factor::DeltaMinusTwoAlpha).matmul(&f(Factor::DeltaMinusAlpha)).unwrap(), f(Factor::Succ));
    let k = f(Factor::K);
    let conj = k.inverse().unwrap().matmul(&f(Factor::Succ)).unwrap().matmul(&k).unwrap();
    assert_eq!(conj, r_minus(&p, &z, c).unwrap());
    assert_eq!(f(Factor::Sim).matmul(&k).unwrap(), r_zero(&p, &z, c).unwrap());
}

#[test]
fn closed_form_sparsity() {
    let p = Params::symbolic();
    let r = build_r(&p, &Exact::z(0), conv(1, 0)).unwrap();
    assert_eq!(r.nonzero_positions().len(), 19);
    assert_eq!(r.get(0, 0), &p.q());
}

#[test]
fn entry_function_a_in_standard_convention() {
    let p = Params::symbolic();
    let z = Exact::z(0);
    let f = EntryFunctions::new(&p, &z, conv(1, 0)).unwrap();
    let expect = p.q_minus_qinv().div(&Exact::one().sub(&z)).unwrap();
    assert_eq!(f.a, expect);
    let g = EntryFunctions::flipped(&p, &z, conv(1, 0)).unwrap();
    assert_eq!(g.d, f.d);
    assert_eq!(g.rho, f.rho.mul(&p.q_pow(-2)));
    assert_eq!(g.sigma, f.sigma.mul(&p.q_pow(-2)));
}

#[test]
fn triangular_factorization_and_symmetries() {
    let p = Params::symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        assert!(factorization_residual(&p, &z, c).unwrap().is_zero());
        for r in antiinvolution_residuals(&z, c).unwrap() {
            assert!(r.is_zero());
        }
    }
}

#[test]
fn spectral_decomposition() {
    let (res, lam) = decomposition_residual(false).unwrap();
    assert!(res.is_zero());
    assert!(lam.is_zero());
    let (res, _) = decomposition_residual(true).unwrap();
    assert!(!res.is_zero());
    let p = Params::symbolic();
    let r1 = r1_matrix(&p);
    assert_eq!(r1.get(2, 6), &p.q_minus_qinv().mul(&p.q().sub(&Exact::one())));
}

#[test]
fn hat_and_check_are_j_conjugate() {
    let p = Params::symbolic();
    let r = build_r(&p, &Exact::z(0), conv(3, 1)).unwrap();
    assert!(hat_check_j_residual(&r).unwrap().is_zero());
}

#[test]
fn series_oracles_match_factors() {
    for c in [conv(1, 0), conv(3, 1)] {
        for f in [
            Factor::Alpha,
            Factor::TwoAlpha,
            Factor::DeltaMinusAlpha,
            Factor::DeltaMinusTwoAlpha,
            Factor::Prec,
            Factor::Succ,
            Factor::Sim,
        ] {
            assert_eq!(factor_series_mismatch(f, c, 8).unwrap(), None, "{f:?} {c:?}");
        }
    }
}

#[test]
fn gauge_relation_exact() {
    let p = Params::symbolic();
    for c in [conv(1, 0), conv(3, 1), conv(5, 2)] {
        assert!(gauge_residual(&p, &Exact::z(0), &Exact::z(1), c).unwrap().is_zero(), "{c:?}");
    }
}

#[test]
fn yang_baxter_numeric() {
    let mut s = Sampler::new(11);
    for c in [conv(1, 0), conv(3, 1)] {
        for _ in 0..3 {
            let (v, zs) = s.point(3, c.s()).unwrap();
            let (p, z) = lift::<MpComplex>(v, &zs).unwrap();
            let r = yang_baxter_residual(&p, [&z[0], &z[1], &z[2]], c).unwrap();
            assert!(r.max_magnitude() < 1e-40, "{}", r.max_magnitude());
        }
    }
}

#[test]
fn spectrum_of_check_r() {
    let mut s = Sampler::new(5);
    for c in [conv(1, 0), conv(3, 1)] {
        let (v, zs) = s.point(1, c.s()).unwrap();
        let (p, z) = lift::<MpComplex>(v, &zs).unwrap();
        let rep = spectrum_check(&p, &z[0], c, 1e-20).unwrap();
        assert!(rep.multiplicities_match, "{:?}", rep.clusters.iter().map(|x| x.multiplicity).collect::<Vec<_>>());
        assert!(rep.max_deviation < 1e-30);
    }
}

#[test]
fn r_at_one_is_q_times_permutation() {
    let mut s = Sampler::new(3);
    for _ in 0..8 {
        let (p, _) = lift::<MpComplex>(s.v(), &[]).unwrap();
        for c in [conv(1, 0), conv(3, 1), conv(5, 2)] {
            let (res, _) = r_at_one_residual(&p, c).unwrap();
            assert!(res.max_magnitude() < 1e-25, "{c:?}: {}", res.max_magnitude());
        }
    }
}
