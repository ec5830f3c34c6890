use std::sync::Arc;

use ffl_core::algebra::field::field;
use ffl_core::algebra::{FiniteField, FqPoly, UniPoly};
use ffl_core::lfun::{
    build_lfunction, build_lfunctions, euler_series, local_factor, reduce, sign_of, unitarize, BuildOptions,
    LfunError, Strategy, StrategyChoice,
};
use ffl_core::surfaces::{legendre_curve, quadratic_twist, twisting_space, EllSurface, Place};
use num_bigint::BigInt;

fn poly(k: &FiniteField, v: &[i64]) -> FqPoly {
    UniPoly::new(k, v.iter().map(|&c| k.from_int(c)).collect())
}

fn legendre(p: u32) -> (Arc<FiniteField>, Arc<EllSurface>) {
    let k = field(p, 1).unwrap();
    let e = Arc::new(legendre_curve(k.clone()).unwrap());
    (k, e)
}

fn first_twist(k: &FiniteField, e: &Arc<EllSurface>, d: usize) -> EllSurface {
    let avoid = poly(k, &[0, -1, 1]);
    let f = twisting_space(k, d, &avoid).unwrap().remove(0);
    quadratic_twist(e, &f).unwrap()
}

#[test]
fn legendre_curve_itself_has_trivial_l() {
    let (_, e) = legendre(5);
    let l = build_lfunction(&e, 1, &BuildOptions::default()).unwrap();
    assert_eq!(l.coeffs, vec![BigInt::from(1)]);
}

#[test]
fn quadratic_twist_matches_euler_product() {
    let (k, e) = legendre(5);
    let ef = quadratic_twist(&e, &poly(&k, &[2, 0, 1])).unwrap();
    let l = build_lfunction(&ef, 1, &BuildOptions::default()).unwrap();
    assert_eq!(l.degree(), 4);
    assert_eq!(l.certification.legendre_degree, Some(true));
    let s = euler_series(&ef, 1, 4).unwrap();
    assert_eq!(s, l.coeffs);
}

#[test]
fn cubic_twist_degree_and_reduction() {
    let (k, e) = legendre(5);
    let ef = first_twist(&k, &e, 3);
    let l = build_lfunction(&ef, 1, &BuildOptions::default()).unwrap();
    assert_eq!(l.degree(), 5);
    assert!(l.certification.rh_max_deviation < 1e-9);
    let lu = unitarize(&l);
    assert!(lu.satisfies_functional_equation());
    let r = reduce(&lu).unwrap();
    assert_eq!(r.degree(), 4);
    assert_eq!(r.sign, 1);
}

#[test]
fn sign_matches_coefficient_symmetry() {
    let (k, e) = legendre(5);
    let avoid = poly(&k, &[0, -1, 1]);
    for f in twisting_space(&k, 2, &avoid).unwrap().into_iter().take(6) {
        let ef = quadratic_twist(&e, &f).unwrap();
        let l = build_lfunction(&ef, 1, &BuildOptions::default()).unwrap();
        let eps = sign_of(&l).unwrap();
        // l_ν = ε q^ν and l_{ν-1} q² = l_ν l_1
        let nu = l.degree();
        let lead = BigInt::from(eps) * num_traits::pow(BigInt::from(5), nu);
        assert_eq!(l.coeffs[nu], lead);
        assert_eq!(&l.coeffs[nu - 1] * 25, lead * &l.coeffs[1]);
    }
}

#[test]
fn truncation_is_stable() {
    let (k, e) = legendre(5);
    let ef = quadratic_twist(&e, &poly(&k, &[2, 0, 1])).unwrap();
    let s2 = euler_series(&ef, 1, 2).unwrap();
    let s4 = euler_series(&ef, 1, 4).unwrap();
    assert_eq!(s2[..], s4[..3]);
}

#[test]
fn even_power_of_twist_is_rejected() {
    let (k, e) = legendre(5);
    let ef = quadratic_twist(&e, &poly(&k, &[2, 0, 1])).unwrap();
    assert!(matches!(euler_series(&ef, 2, 2), Err(LfunError::EvenTwist { m: 2 })));
    assert!(matches!(build_lfunction(&ef, 2, &BuildOptions::default()), Err(LfunError::EvenTwist { .. })));
}

#[test]
fn symmetric_square_ignores_the_twist() {
    let (k, e) = legendre(5);
    let f = poly(&k, &[2, 0, 1]);
    let ef = quadratic_twist(&e, &f).unwrap();
    let mut checked = 0;
    for pi in ffl_core::algebra::factor::irreducibles_up_to(&k, 2) {
        // skip t, t - 1 and the twisting place
        if pi == poly(&k, &[0, 1]) || pi == poly(&k, &[-1, 1]) || pi == f {
            continue;
        }
        let place = Place::Finite(pi);
        assert_eq!(local_factor(&ef, &place, 2).unwrap(), local_factor(&e, &place, 2).unwrap());
        checked += 1;
    }
    assert_eq!(checked, 3 + 10 - 1);
}

#[test]
fn symmetric_cube_by_functional_equation() {
    let (k, e) = legendre(5);
    let ef = quadratic_twist(&e, &poly(&k, &[2, 0, 1])).unwrap();
    let opts = BuildOptions {
        strategy: StrategyChoice::Force(Strategy::FunctionalEquation),
        ..BuildOptions::default()
    };
    let ls = build_lfunctions(&ef, &[1, 3], &opts).unwrap();
    assert_eq!(ls[0].coeffs, build_lfunction(&ef, 1, &BuildOptions::default()).unwrap().coeffs);
    let l3 = &ls[1];
    assert_eq!(l3.degree(), 10);
    assert_eq!(l3.certification.strategy, Strategy::FunctionalEquation);
    assert!(l3.certification.rh_max_deviation < 1e-9);
    // the low coefficients agree with the Euler product
    let s = euler_series(&ef, 3, 3).unwrap();
    assert_eq!(s[..], l3.coeffs[..4]);
}
