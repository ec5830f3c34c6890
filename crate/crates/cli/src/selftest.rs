//! Aggregated module invariants, with a fault injection that must be caught.

use std::sync::Arc;

use ffl_core::algebra::{irreducibles_up_to, UniPoly};
use ffl_core::lfun::{build_lfunction, euler_series, local_factor, reduce, unitarize, BuildOptions};
use ffl_core::modl::{
    brute_isometry_oracle, census_by_pairs, equidist_check, group_order, theta0_census, ClassModSquares,
    FormType, GroupFamily,
};
use ffl_core::modl::groups::{brute_sp2_order, standard_form};
use ffl_core::surfaces::{bad_places, legendre_curve, quadratic_twist, Place};
use ffl_core::weyl::{decompose_permutation_module, orbits_on_pairs};
use num_bigint::BigInt;
use num_rational::Rational64;
use serde::Serialize;

use crate::scan::base_field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

type Outcome = Result<(Status, String), String>;

fn ok(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, detail.into()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn weyl_orbits() -> Outcome {
    for g in 3..=5usize {
        let mut sizes = orbits_on_pairs(g).map_err(|e| e.to_string())?.sizes();
        sizes.sort();
        let mut want = vec![2 * g, 2 * g, 4 * g * g - 4 * g];
        want.sort();
        ensure(sizes == want, format!("g = {g}: sizes {sizes:?}, expected {want:?}"))?;
    }
    ok("g = 3, 4, 5: (2g, 2g, 4g² - 4g)")
}

fn weyl_boundary() -> Outcome {
    let o = orbits_on_pairs(2).map_err(|e| e.to_string())?;
    Ok(match o.warning {
        Some(w) => (Status::Warn, w),
        None => (Status::Fail, "g = 2 was not flagged".into()),
    })
}

fn weyl_decomposition() -> Outcome {
    for g in 3..=4usize {
        let d = decompose_permutation_module(g).map_err(|e| e.to_string())?;
        let dims: Vec<usize> = d.summands.iter().map(|s| s.dim).collect();
        ensure(dims == vec![1, g - 1, g], format!("g = {g}: dims {dims:?}"))?;
        let norm = d.character_norm.exact_values.map(|(_, m2)| m2);
        ensure(norm == Some(Rational64::from_integer(3)), format!("g = {g}: ⟨χ,χ⟩ = {norm:?}"))?;
    }
    ok("dims (1, g-1, g) and ⟨χ,χ⟩ = 3 for g = 3, 4")
}

fn group_orders() -> Outcome {
    let o3 = brute_isometry_oracle(3, 3, &standard_form(3, 3, FormType::Split)).map_err(|e| e.to_string())?;
    let closed = group_order(3, 3, GroupFamily::O(FormType::Split)).map_err(|e| e.to_string())?;
    ensure(BigInt::from(o3.order()) == closed, format!("#O(3,3): {} vs {closed}", o3.order()))?;
    let sp = brute_sp2_order(3);
    let closed = group_order(2, 3, GroupFamily::Sp).map_err(|e| e.to_string())?;
    ensure(BigInt::from(sp) == closed, format!("#Sp(2,3): {sp} vs {closed}"))?;
    ok(format!("#O(3,F_3) = {}, #Sp(2,F_3) = {sp}", o3.order()))
}

fn spinor_identity() -> Outcome {
    let mut n_checked = 0;
    for ell in [3u32, 5] {
        for t in [FormType::Split, FormType::Nonsplit] {
            let g = brute_isometry_oracle(2, ell, &standard_form(2, ell, t)).map_err(|e| e.to_string())?;
            for iso in g.elements.iter().filter(|i| i.det == 1) {
                let c = iso.f_minus_one_class(ell);
                if c == ClassModSquares::Zero {
                    continue;
                }
                ensure(c == iso.spinor_norm, format!("N = 2, l = {ell}: {:?}", iso.matrix))?;
                n_checked += 1;
            }
        }
    }
    ok(format!("N = 2, l = 3, 5: {n_checked} rotations"))
}

fn census() -> Outcome {
    let eq = equidist_check(11).map_err(|e| e.to_string())?;
    ensure(eq == 4, format!("equidist_check(11) = {eq}"))?;
    let s = theta0_census(4, 11, ClassModSquares::Square).map_err(|e| e.to_string())?;
    let ns = theta0_census(4, 11, ClassModSquares::Nonsquare).map_err(|e| e.to_string())?;
    let (ps, pns) = census_by_pairs(4, 11);
    ensure(
        BigInt::from(s.count) == ps && BigInt::from(ns.count) == pns,
        format!("census ({}, {}) vs pairs ({ps}, {pns})", s.count, ns.count),
    )?;
    ensure(s.root_pair_choices == BigInt::from(6), "binomial count at (11, 4)")?;
    ok(format!("l = 11, N = 4: {} + {} polynomials", s.count, ns.count))
}

fn twist_collapse() -> Outcome {
    let k = base_field(5).map_err(|e| e.to_string())?;
    let e = Arc::new(legendre_curve(k.clone()).map_err(|e| e.to_string())?);
    let f = UniPoly::new(&*k, vec![k.from_int(2), k.from_int(0), k.from_int(1)]);
    let ef = quadratic_twist(&e, &f).map_err(|e| e.to_string())?;
    let mut bad: Vec<Place> = bad_places(&e).map_err(|e| e.to_string())?.into_iter().map(|p| p.place).collect();
    bad.extend(bad_places(&ef).map_err(|e| e.to_string())?.into_iter().map(|p| p.place));
    let mut n = 0;
    for pi in irreducibles_up_to(&k, 2) {
        let place = Place::Finite(pi);
        if bad.contains(&place) {
            continue;
        }
        let a = local_factor(&e, &place, 2).map_err(|e| e.to_string())?;
        let b = local_factor(&ef, &place, 2).map_err(|e| e.to_string())?;
        ensure(a == b, format!("Sym² factors differ at {place:?}"))?;
        n += 1;
    }
    ok(format!("{n} common good places of degree ≤ 2"))
}

fn two_routes() -> Outcome {
    let k = base_field(5).map_err(|e| e.to_string())?;
    let e = Arc::new(legendre_curve(k.clone()).map_err(|e| e.to_string())?);
    let f = UniPoly::new(&*k, vec![k.from_int(2), k.from_int(0), k.from_int(1)]);
    let ef = quadratic_twist(&e, &f).map_err(|e| e.to_string())?;
    let l = build_lfunction(&ef, 1, &BuildOptions::default()).map_err(|e| e.to_string())?;
    let s = euler_series(&ef, 1, l.degree()).map_err(|e| e.to_string())?;
    ensure(s == l.coeffs, format!("Euler product {s:?} vs {:?}", l.coeffs))?;
    ok(format!("ν = {} coefficients agree", l.degree()))
}

fn fault_injection() -> Outcome {
    let k = base_field(5).map_err(|e| e.to_string())?;
    let e = Arc::new(legendre_curve(k.clone()).map_err(|e| e.to_string())?);
    // odd degree twist, so the forced factor depends on the sign
    let f = UniPoly::new(&*k, vec![k.from_int(2), k.from_int(1), k.from_int(0), k.from_int(1)]);
    let ef = quadratic_twist(&e, &f).map_err(|e| e.to_string())?;
    let l = build_lfunction(&ef, 1, &BuildOptions::default()).map_err(|e| e.to_string())?;
    ensure(l.degree() % 2 == 1, "expected odd degree")?;
    let mut lu = unitarize(&l);
    reduce(&lu).map_err(|e| format!("unflipped: {e}"))?;
    lu.sign = -lu.sign;
    match reduce(&lu) {
        Err(_) => ok("flipped ε rejected by reduce"),
        Ok(_) => Err("flipped ε was not detected".into()),
    }
}

pub fn run() -> Vec<Check> {
    let checks: Vec<(&str, fn() -> Outcome)> = vec![
        ("weyl-orbits", weyl_orbits),
        ("weyl-g2-boundary", weyl_boundary),
        ("weyl-decomposition", weyl_decomposition),
        ("group-orders", group_orders),
        ("spinor-identity", spinor_identity),
        ("census", census),
        ("twist-collapse", twist_collapse),
        ("two-route-lfunction", two_routes),
        ("fault-injection", fault_injection),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let (status, detail) = match f() {
                Ok(x) => x,
                Err(msg) => (Status::Fail, msg),
            };
            Check {
                name: name.to_string(),
                status,
                detail,
            }
        })
        .collect()
}
