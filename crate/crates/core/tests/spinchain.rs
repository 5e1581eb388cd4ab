use ik_core::evalrep::SpectralConvention;
use ik_core::matrix::Mat;
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::{Exact, Field, MpComplex, Params};
use ik_core::spinchain::*;
use proptest::prelude::*;

fn sample(seed: u64, n: usize) -> (Params<MpComplex>, Vec<MpComplex>) {
    let (v, z) = Sampler::new(seed).point(n, 1).unwrap();
    lift::<MpComplex>(v, &z).unwrap()
}

fn std_conv() -> SpectralConvention {
    SpectralConvention::standard()
}

#[test]
fn single_site_at_one_is_q() {
    let (p, _) = sample(1, 1);
    let t = transfer_at_one(&p, 1).unwrap();
    assert!(t.sub(&Mat::identity(3).scale(&p.q())).unwrap().max_magnitude() < 1e-30);
}

#[test]
fn transfer_at_one_is_a_scaled_shift() {
    let (p, _) = sample(2, 1);
    for n in 2..=4 {
        let t = transfer_at_one(&p, n).unwrap();
        let s = cyclic_shift::<MpComplex>(n).scale(&p.q_pow(n as i64));
        assert!(t.sub(&s).unwrap().max_magnitude() < 1e-30, "N = {n}");
    }
}

#[test]
fn transfer_matrices_commute() {
    for n in 2..=4 {
        for seed in 0..5 {
            let (p, z) = sample(10 * n as u64 + seed, 2);
            let c = transfer_commutator(&p, &z[0], &z[1], n, std_conv()).unwrap();
            assert!(c.max_magnitude() < 1e-35, "N = {n}: {}", c.max_magnitude());
        }
    }
    // Inhomogeneous chains and a gauged convention.
    let (p, z) = sample(77, 5);
    let xi = &z[2..5];
    for conv in [std_conv(), SpectralConvention::new(3, 1).unwrap()] {
        let t1 = transfer_matrix(&p, &z[0], xi, conv).unwrap();
        let t2 = transfer_matrix(&p, &z[1], xi, conv).unwrap();
        assert!(t1.commutator(&t2).unwrap().max_magnitude() < 1e-35);
    }
}

#[test]
fn exact_two_site_hamiltonian_is_the_closed_form() {
    let he = hamiltonian_exact(2).unwrap();
    let p = Params::symbolic();
    let hc = closed_form_hamiltonian(&p, 2).unwrap().total().unwrap();
    assert_eq!(he, hc);
    // The finite-difference path agrees with the exact derivative.
    let (pn, _) = sample(5, 1);
    let zero = MpComplex::zero();
    let point = [pn.v().clone(), zero.clone(), zero.clone(), zero];
    let he_num = Mat::from_fn(9, 9, |i, j| he.get(i, j).eval(&point, pn.u()).unwrap());
    let hn = hamiltonian_numeric(&pn, 2, 1e-8).unwrap();
    assert!(hn.sub(&he_num).unwrap().max_magnitude() < 1e-25);
}

#[test]
fn numeric_hamiltonian_matches_the_closed_form() {
    for n in [3, 4] {
        let (p, _) = sample(100 + n as u64, 1);
        let h = hamiltonian_numeric(&p, n, 1e-8).unwrap();
        let hc = closed_form_hamiltonian(&p, n).unwrap().total().unwrap();
        let r = compare_up_to_identity(&h, &hc).unwrap();
        println!("N = {n}: raw {:.3e}, identity shift {}, shifted {:.3e}", r.raw, r.shift, r.shifted);
        assert!(r.raw < 1e-25);
        // Translation invariance.
        let s = cyclic_shift::<MpComplex>(n);
        assert!(h.commutator(&s).unwrap().max_magnitude() < 1e-25);
    }
}

#[test]
fn hamiltonian_commutes_with_the_transfer_matrix() {
    let (p, z) = sample(9, 1);
    let h = closed_form_hamiltonian(&p, 3).unwrap().total().unwrap();
    let t = homogeneous_transfer(&p, &z[0], 3, std_conv()).unwrap();
    assert!(h.commutator(&t).unwrap().max_magnitude() < 1e-35);
    let hn = hamiltonian_numeric(&p, 3, 1e-8).unwrap();
    let a = spectrum(&hn).unwrap();
    let b = spectrum(&h).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(x.sub(y).magnitude() < 1e-8);
    }
}

#[test]
fn displayed_coefficients() {
    let p = Params::symbolic();
    let [h12, _, _, h123] = local_densities(&p).unwrap();
    // E_12 (x) E_21 sits at row (0, 1), column (1, 0).
    assert_eq!(h12.get(1, 3), &p.q_minus_qinv().inv().unwrap().neg());
    let half32 = p.v_pow(3).sub(&p.v_pow(-3)).div(&p.q_minus_qinv()).unwrap();
    let expect = half32.div(&p.qnum(3)).unwrap().mul(&p.v_pow(1).sub(&p.v_pow(-1))).mul(&p.qnum(2));
    assert_eq!(h123.get(4, 4), &expect);
}

#[test]
fn spectrum_of_identity() {
    let ev = spectrum(&Mat::<MpComplex>::identity(9)).unwrap();
    assert_eq!(ev.len(), 9);
    assert!(ev.iter().all(|x| x.sub(&ik_core::scalar::C64::one()).magnitude() < 1e-12));
}

#[test]
fn site_limits() {
    let (p, z) = sample(3, 1);
    assert!(homogeneous_transfer(&p, &z[0], 8, std_conv()).is_err());
    assert!(homogeneous_transfer(&Params::symbolic(), &Exact::z(0), 4, std_conv()).is_err());
    assert!(hamiltonian_numeric(&p, 1, 1e-8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn periodic_sums_are_translation_invariant(n in 2usize..5, entries in proptest::collection::vec(-3i64..4, 81)) {
        let h = Mat::from_fn(9, 9, |i, j| Exact::from_i64(entries[9 * i + j]));
        let s = cyclic_shift::<Exact>(n);
        let sum = periodic_sum(&h, n).unwrap();
        prop_assert!(sum.commutator(&s).unwrap().is_zero());
        let mut pw = Mat::identity(s.rows());
        for _ in 0..n {
            pw = pw.matmul(&s).unwrap();
        }
        prop_assert_eq!(pw, Mat::identity(s.rows()));
    }
}
