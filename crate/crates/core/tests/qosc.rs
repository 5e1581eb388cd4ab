use std::sync::Arc;

use ik_core::algebra::{check_ed_commutation, Family};
use ik_core::evalrep::SpectralConvention;
use ik_core::matrix::Mat;
use ik_core::qosc::*;
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::{Exact, Field, MpComplex, Params};
use proptest::prelude::*;

fn symbolic() -> Arc<Params<Exact>> {
    Arc::new(Params::symbolic())
}

fn conv(s0: i64, s1: i64) -> SpectralConvention {
    SpectralConvention::new(s0, s1).unwrap()
}

fn numeric(seed: u64) -> (Arc<Params<MpComplex>>, MpComplex) {
    let (v, z) = Sampler::new(seed).point(1, 1).unwrap();
    let (p, z) = lift::<MpComplex>(v, &z).unwrap();
    (Arc::new(p), z[0].clone())
}

#[test]
fn fock_relations() {
    let (p, _) = numeric(1);
    for nf in [8, 12] {
        let f = make_fock(&p, nf).unwrap();
        let one = Mat::identity(f.dim());
        let ada = f.adag().matmul(f.a()).unwrap();
        assert!(ada.sub(&one.sub(&f.qd(2)).unwrap()).unwrap().max_magnitude() < 1e-50);
        let aad = f.a().matmul(f.adag()).unwrap();
        let expect = one.sub(&f.qd(2).scale(&p.q_pow(2))).unwrap();
        assert!(f.band(&aad.sub(&expect).unwrap(), 1).unwrap().max_magnitude() < 1e-50);
        assert!(aad.sub(&expect).unwrap().max_magnitude() > 0.1, "the top level is truncated");
        let da = f.d().commutator(f.a()).unwrap().add(f.a()).unwrap();
        assert!(da.max_magnitude() < 1e-50);
        let dad = f.d().commutator(f.adag()).unwrap().sub(f.adag()).unwrap();
        assert!(dad.max_magnitude() < 1e-50);
    }
    // a^dag a |3> = (1 - q^6) |3>
    let f = make_fock(&p, 8).unwrap();
    let ada = f.adag().matmul(f.a()).unwrap();
    assert!(ada.get(3, 3).sub(&MpComplex::one().sub(&p.q_pow(3 * 2))).magnitude() < 1e-50);
    let aad = f.a().matmul(f.adag()).unwrap();
    assert!(aad.get(2, 2).sub(&MpComplex::one().sub(&p.q_pow(6))).magnitude() < 1e-50);
}

fn word(p: &Arc<Params<Exact>>, code: &[u8]) -> Osc<Exact> {
    code.iter().fold(Osc::one(p), |acc, c| {
        let g = match c % 4 {
            0 => Osc::a(p),
            1 => Osc::adag(p),
            2 => Osc::qd(p, 1),
            _ => Osc::qd(p, -2),
        };
        acc.mul(&g).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_agrees_with_fock_matrices(x in proptest::collection::vec(0u8..4, 0..5), y in proptest::collection::vec(0u8..4, 0..5)) {
        let p = symbolic();
        let f = make_fock(&p, 12).unwrap();
        let (ox, oy) = (word(&p, &x), word(&p, &y));
        let lhs = ox.mul(&oy).unwrap().to_fock(&f).unwrap();
        let rhs = ox.to_fock(&f).unwrap().matmul(&oy.to_fock(&f).unwrap()).unwrap();
        // Words of length <= 4 climb at most 4 levels.
        prop_assert!(f.band(&lhs.sub(&rhs).unwrap(), 4).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_associative(x in proptest::collection::vec(0u8..4, 0..4), y in proptest::collection::vec(0u8..4, 0..4), z in proptest::collection::vec(0u8..4, 0..4)) {
        let p = symbolic();
        let (a, b, c) = (word(&p, &x), word(&p, &y), word(&p, &z));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn tau_reverses_products(x in proptest::collection::vec(0u8..4, 0..4), y in proptest::collection::vec(0u8..4, 0..4)) {
        let p = symbolic();
        let (a, b) = (word(&p, &x), word(&p, &y));
        prop_assert_eq!(a.mul(&b).unwrap().tau().unwrap(), b.tau().unwrap().mul(&a.tau().unwrap()).unwrap());
        prop_assert_eq!(a.tau().unwrap().tau().unwrap(), a.clone());
        prop_assert_eq!(a.mul(&b).unwrap().sigma().unwrap(), a.sigma().unwrap().mul(&b.sigma().unwrap()).unwrap());
    }
}

#[test]
fn automorphism_group() {
    let p = symbolic();
    let (k1, k2) = (Exact::from_i64(3), Exact::z(0));
    let ada = Osc::adag(&p).mul(&Osc::a(&p)).unwrap();
    let aad = Osc::a(&p).mul(&Osc::adag(&p)).unwrap();
    for (k, xi) in [(k1.clone(), 2), (k2.clone(), -1)] {
        assert_eq!(ada.automorphism(&k, xi).unwrap(), ada);
        assert_eq!(aad.automorphism(&k, xi).unwrap(), aad);
    }
    for w in [word(&p, &[0, 1, 2, 0]), word(&p, &[1, 3, 1]), word(&p, &[0, 0, 2])] {
        let two = w.automorphism(&k2, -1).unwrap().automorphism(&k1, 2).unwrap();
        assert_eq!(two, w.automorphism(&k1.mul(&k2), 1).unwrap());
        assert_eq!(w.automorphism(&Exact::one(), 0).unwrap(), w);
        // sigma twice is the group element (kappa, xi) = (-1, 0).
        assert_eq!(w.sigma().unwrap().sigma().unwrap(), w.automorphism(&Exact::from_i64(-1), 0).unwrap());
    }
    assert!(Osc::a(&p).automorphism(&Exact::zero(), 0).is_err());
    assert_eq!(Osc::qd(&p, 1).sigma().unwrap(), Osc::term(&p, p.q_pow(-1), 0, -1));
}

#[test]
fn homomorphism_weights() {
    let p = symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        for h in [make_chi(&p, &z, c).unwrap(), make_psi(&p, &z, c).unwrap()] {
            assert_eq!(h.weight_residuals().unwrap(), [[0, 0], [0, 0]]);
        }
    }
    let chi = make_chi(&p, &z, conv(1, 0)).unwrap();
    assert_eq!(chi.h_coefficient(1), -1);
    assert_eq!(chi.h_coefficient(0), 2);
}

#[test]
fn chi_root_vectors_match_closed_forms() {
    let p = symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        let chi = make_chi(&p, &z, c).unwrap();
        let rv = chi.root_vectors(6).unwrap();
        for m in 0..=6 {
            let mut fams = vec![Family::Alpha(m), Family::TwoAlpha(m), Family::DeltaMinusAlpha(m)];
            if m >= 1 {
                fams.push(Family::DeltaMinusTwoAlpha(m));
                fams.push(Family::Imaginary(m));
                let primed = chi_primed_closed_form(&p, &z, c, m).unwrap();
                assert_eq!(rv.primed(m).unwrap(), &primed, "e'_{m}d");
            }
            for f in fams {
                assert_eq!(rv.family(f).unwrap(), &chi_closed_form(&p, &z, c, f).unwrap(), "{f:?} in {c:?}");
            }
        }
    }
}

#[test]
fn chi_imaginary_examples() {
    let p = symbolic();
    let z = Exact::z(0);
    let c = conv(1, 0);
    let q = |k| p.q_pow(k);
    let one = Exact::one();
    // e'_delta = q z / ((q-1)(q-q^-1)) [(1-q) - (1-q^3) q^(2D)]
    let pre = q(1).mul(&z).div(&q(1).sub(&one).mul(&p.q_minus_qinv())).unwrap();
    let expect = Osc::constant(&p, one.sub(&q(1)).mul(&pre)).sub(&Osc::term(&p, one.sub(&q(3)).mul(&pre), 0, 2)).unwrap();
    assert_eq!(chi_primed_closed_form(&p, &z, c, 1).unwrap(), expect);
    // e_delta = -(q z/(q-q^-1)) (1 - b_1 q q^(2D))
    let b1 = ik_core::algebra::b_coefficient(&p, 1).unwrap();
    let pre = q(1).mul(&z).div(&p.q_minus_qinv()).unwrap().neg();
    let expect = Osc::constant(&p, pre.clone()).sub(&Osc::term(&p, pre.mul(&b1).mul(&q(1)), 0, 2)).unwrap();
    assert_eq!(chi_closed_form(&p, &z, c, Family::Imaginary(1)).unwrap(), expect);
}

#[test]
fn chi_ed_commutation() {
    let p = symbolic();
    let chi = make_chi(&p, &Exact::z(0), conv(1, 0)).unwrap();
    let rv = chi.root_vectors(4).unwrap();
    for m in 0..=3 {
        for n in 1..=4 - m {
            assert!(check_ed_commutation(&rv, &*p, m, n, 0.0).unwrap(), "({m},{n})");
        }
    }
    // The same on the interior of a truncated Fock space.
    let f = make_fock(&p, 12).unwrap();
    for (m, n) in [(0, 1), (1, 1), (0, 2)] {
        let r = ik_core::algebra::ed_commutation_residual(&rv, &*p, m, n).unwrap();
        assert!(f.band(&r.to_fock(&f).unwrap(), 2).unwrap().is_zero());
    }
}

#[test]
fn serre_relations_in_the_algebra() {
    let p = symbolic();
    let z = Exact::z(0);
    for c in [conv(1, 0), conv(3, 1)] {
        for h in [make_chi(&p, &z, c).unwrap(), make_psi(&p, &z, c).unwrap()] {
            let [cubic, quintic] = h.serre().unwrap();
            assert!(cubic.is_zero(), "{:?}", h.kind);
            assert!(quintic.is_zero(), "{:?}", h.kind);
        }
    }
}

#[test]
fn serre_relations_on_the_fock_band() {
    let (p, z) = numeric(4);
    let f = make_fock(&p, 12).unwrap();
    for h in [make_chi(&p, &z, conv(1, 0)).unwrap(), make_psi(&p, &z, conv(3, 1)).unwrap()] {
        assert_eq!(h.serre_bands().unwrap(), [4, 2]);
        for r in h.serre_on_band(&f).unwrap() {
            assert!(r.max_magnitude() < 1e-40, "{:?}: {}", h.kind, r.max_magnitude());
        }
    }
}
