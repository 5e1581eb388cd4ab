use ik_core::matrix::Mat;
use ik_core::sample::{lift, Sampler};
use ik_core::scalar::qnum::{qbinomial, qexp, qint};
use ik_core::scalar::series::{lambda_identity_residual, prefactor_identity_residual};
use ik_core::scalar::{Exact, Field, MpComplex, Params};
use proptest::prelude::*;

#[test]
fn lambda_identities() {
    let p = Params::symbolic();
    assert!(lambda_identity_residual(&p, 30).unwrap().is_zero());
    // Order 30 in the exact backend runs in the acceptance suite.
    assert!(prefactor_identity_residual(&p, 12).unwrap().is_zero());
    let (v, _) = Sampler::new(4).point(1, 1).unwrap();
    let (pn, _) = lift::<MpComplex>(v, &[]).unwrap();
    assert!(lambda_identity_residual(&pn, 30).unwrap().max_magnitude() < 1e-40);
    assert!(prefactor_identity_residual(&pn, 30).unwrap().max_magnitude() < 1e-40);
}

#[test]
fn q_numbers() {
    let two = Exact::from_i64(2);
    assert_eq!(qint(&two, 3).unwrap(), Exact::from_ratio(21, 4).unwrap());
    let p = Params::symbolic();
    assert_eq!(p.qnum(2), p.q().add(&p.q_pow(-1)));
    assert_eq!(qbinomial(&p.q(), 2, 1).unwrap(), p.qnum(2));
    // u^2 = [2]_q, so even powers of u are u-free.
    let u = Exact::u();
    assert!(u.pow(4).unwrap().is_u_free());
    assert_eq!(u.square(), p.qnum(2));
}

#[test]
fn q_exponential_of_nilpotents() {
    let p = Params::symbolic();
    let x = Mat::from_fn(3, 3, |i, j| if j == i + 1 { Exact::z(0) } else { Exact::zero() });
    let base = p.q_pow(-1);
    let e = qexp(&x, &base, None).unwrap();
    let x2 = x.matmul(&x).unwrap();
    let expect = Mat::identity(3).add(&x).unwrap().add(&x2.scale(&Exact::one().add(&base).inv().unwrap())).unwrap();
    assert_eq!(e, expect);
    let full = Mat::from_fn(2, 2, |_, _| Exact::one());
    assert!(qexp(&full, &base, None).is_err());
}

/// A small expression tree evaluated in both backends.
fn build<F: Field>(ops: &[(u8, i64)], v: &F, z: &F, u: &F) -> ik_core::error::Result<F> {
    let mut acc = z.add(&F::one());
    for &(op, k) in ops {
        let leaf = match k.rem_euclid(3) {
            0 => v.pow(k % 4)?,
            1 => z.add(&F::from_i64(k)),
            _ => u.add(&F::from_i64(k)),
        };
        acc = match op % 4 {
            0 => acc.add(&leaf),
            1 => acc.sub(&leaf),
            2 => acc.mul(&leaf),
            _ => acc.div(&leaf)?,
        };
    }
    Ok(acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exact_and_numeric_agree(seed in 0u64..1000, ops in proptest::collection::vec((0u8..4, -5i64..6), 1..7)) {
        let (v, z) = Sampler::new(seed).point(1, 1).unwrap();
        let (pn, zn) = lift::<MpComplex>(v, &z).unwrap();
        let zero = MpComplex::zero();
        let point = [pn.v().clone(), zn[0].clone(), zero.clone(), zero];
        let exact = build(&ops, &Exact::v(), &Exact::z(0), &Exact::u());
        let numeric = build(&ops, pn.v(), &zn[0], pn.u());
        // A divisor vanishing identically, or too close to zero at the sample, is skipped.
        if let (Ok(x), Ok(y)) = (exact.and_then(|x| x.eval(&point, pn.u())), numeric) {
            prop_assert!(y.sub(&x).magnitude() < 1e-40 * (1.0 + x.magnitude()));
        }
    }

    #[test]
    fn canonical_form_is_stable(a in -20i64..20, b in 1i64..20, c in -5i64..5) {
        let v = Exact::v();
        let x = v.pow(c).unwrap().mul(&Exact::from_ratio(a, b).unwrap()).add(&Exact::z(0));
        let y = x.mul(&v.add(&Exact::one())).div(&v.add(&Exact::one())).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.sub(&y), Exact::zero());
    }
}
