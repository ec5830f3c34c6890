use ffl_core::algebra::factor::{factor, from_indices};
use ffl_core::algebra::field::field;
use ffl_core::bounds::{
    density_lambda2, gamma_main1, gamma_main2, gamma_prop11, h_sum, kronecker, legendre_degree, sieve_bound,
    SieveParams,
};
use ffl_core::lattice::RelationLattice;
use ffl_core::lfun::sym_local_poly;
use ffl_core::modl::{census_by_pairs, is_odd_prime, theta0_census, ClassModSquares};
use ffl_core::relations::required_precision;
use ffl_core::weyl::{trivial_lattice, SignedPerm};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(qi in 0usize..4, a in 0u32..49, b in 1u32..49, c in 0u32..49) {
        let (p, n) = [(5, 1), (7, 1), (5, 2), (7, 2)][qi];
        let k = field(p, n).unwrap();
        let s = k.size();
        let (a, b, c) = (k.from_index(a % s), k.from_index(b % (s - 1) + 1), k.from_index(c % s));
        prop_assert_eq!(k.fmul(k.fmul(a, b), k.finv(b).unwrap()), a);
        prop_assert_eq!(k.fmul(a, k.fadd(b, c)), k.fadd(k.fmul(a, b), k.fmul(a, c)));
        prop_assert_eq!(k.quad_char(k.fmul(b, b)), 1);
    }

    #[test]
    fn factorization_multiplies_back(coeffs in proptest::collection::vec(0u32..7, 1..8)) {
        let k = field(7, 1).unwrap();
        let mut c = coeffs;
        c.push(1);
        let f = from_indices(&k, &c);
        let fac = factor(&k, &f).unwrap();
        prop_assert_eq!(fac.expand(&k), f);
    }

    #[test]
    fn local_factor_shape(a in -8i64..=8, m in 1u32..6) {
        let q = 17i64;
        let p = sym_local_poly(a, q, m);
        prop_assert_eq!(p.len(), m as usize + 2);
        prop_assert_eq!(&p[0], &BigInt::from(1));
        if m == 1 {
            prop_assert_eq!(p, vec![BigInt::from(1), BigInt::from(-a), BigInt::from(q)]);
        }
    }

    #[test]
    fn signed_perm_group_laws(g in 2usize..7, seed in 0u64..1000, even in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SignedPerm::random(g, even, &mut rng);
        let t = SignedPerm::random(g, even, &mut rng);
        prop_assert_eq!(s.compose(&s.inverse()), SignedPerm::identity(g));
        prop_assert_eq!(s.compose(&t).sgn(), s.sgn() * t.sgn());
        if even {
            prop_assert_eq!(s.sign_changes() % 2, 0);
            prop_assert_eq!(s.compose(&t).sign_changes() % 2, 0);
        }
    }

    #[test]
    fn saturation_contains_generators(rows in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 4), 1..4)) {
        let l = RelationLattice::saturated_from(&rows, 4).unwrap();
        for r in &rows {
            prop_assert!(l.contains(r));
        }
        prop_assert!(l.is_saturated());
        let again = RelationLattice::saturated_from(&l.basis, 4).unwrap();
        prop_assert!(again.same_lattice(&l));
    }

    #[test]
    fn trivial_lattice_rank(nus in proptest::collection::vec(1usize..5, 1..4)) {
        let nu: Vec<usize> = nus.iter().map(|x| 2 * x).collect();
        let t = trivial_lattice(&nu).unwrap();
        prop_assert_eq!(t.rank(), nu.iter().sum::<usize>() / 2);
        prop_assert!(t.is_saturated());
    }

    #[test]
    fn precision_grows_with_height_and_dimension(d in 1usize..40, h in 2u64..1000) {
        prop_assert!(required_precision(d, h) <= required_precision(d + 1, h));
        prop_assert!(required_precision(d, h) <= required_precision(d, h + 1));
    }

    #[test]
    fn square_classes_multiply(a in 1i64..200, b in 1i64..200, pi in 0usize..6) {
        let ell = [3u32, 5, 7, 11, 13, 101][pi];
        let (ca, cb) = (ClassModSquares::of(ell, a), ClassModSquares::of(ell, b));
        prop_assert_eq!(ClassModSquares::of(ell, a * b), ca.mul(cb));
        prop_assert_eq!(kronecker(a * b, ell as u64), kronecker(a, ell as u64) * kronecker(b, ell as u64));
    }

    #[test]
    fn census_partition(ell in 5u32..40) {
        prop_assume!(is_odd_prime(ell));
        let s = theta0_census(4, ell, ClassModSquares::Square).unwrap();
        let ns = theta0_census(4, ell, ClassModSquares::Nonsquare).unwrap();
        prop_assert_eq!(s.total, ns.total);
        prop_assert_eq!(s.count + ns.count, s.total);
        let (ps, pns) = census_by_pairs(4, ell);
        prop_assert_eq!((BigInt::from(s.count), BigInt::from(ns.count)), (ps, pns));
    }

    #[test]
    fn gamma_relations(n in 5u64..200, a in proptest::collection::vec(1u64..30, 1..4), b in proptest::collection::vec(1u64..30, 1..4)) {
        prop_assert!(gamma_prop11(n).gamma < gamma_prop11(n + 1).gamma);
        prop_assert_eq!(gamma_main1(&[n]).unwrap(), gamma_prop11(n));
        let four = BigInt::from(4);
        let ab: Vec<u64> = a.iter().chain(&b).copied().collect();
        let lhs = gamma_main1(&ab).unwrap().two_gamma - &four;
        let rhs = (gamma_main1(&a).unwrap().two_gamma - &four) + (gamma_main1(&b).unwrap().two_gamma - &four);
        prop_assert_eq!(lhs, rhs);
        // the even index carries ν(ν+1)
        prop_assert!(gamma_main2(&[1, n]).unwrap().two_gamma > gamma_main2(&[n, 1]).unwrap().two_gamma);
    }

    #[test]
    fn legendre_degree_parity(d in 1u64..1000) {
        let n = legendre_degree(d).unwrap();
        prop_assert_eq!(n % 2 == 0, d % 2 == 0);
    }

    #[test]
    fn sieve_bound_nonincreasing(h1 in 1i64..100, h2 in 1i64..100, c in 0i64..4) {
        let mut p = SieveParams::new(9, 2, BigInt::from(48), rat(1, 3), 10, 2);
        p.c = rat(c, 1);
        let (lo, hi) = (h1.min(h2), h1.max(h2));
        let a = sieve_bound(&p, &rat(lo, 1)).unwrap().exact.unwrap();
        let b = sieve_bound(&p, &rat(hi, 1)).unwrap().exact.unwrap();
        prop_assert!(b <= a);
    }

    #[test]
    fn h_sum_is_additive(xs in proptest::collection::vec((1i64..50, 51i64..100), 0..5)) {
        let d: Vec<(u32, BigRational)> = xs.iter().map(|&(n, m)| (3, rat(n, m))).collect();
        let whole = h_sum(&d).unwrap();
        let parts: BigRational = d.iter().map(|x| h_sum(std::slice::from_ref(x)).unwrap()).sum();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn lambda2_below_delta0(n1 in 1u64..10, n2 in 1u64..10, num in 1i64..10) {
        let d0 = rat(num, 10);
        prop_assert!(density_lambda2(101, n1, n2, &d0).unwrap() <= d0);
    }
}
