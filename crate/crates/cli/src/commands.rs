//! Subcommand bodies. Each returns a report; `main` renders it.

use std::sync::Arc;

use ffl_core::algebra::factor::from_indices;
use ffl_core::bounds::{
    char_sum_probe, density_lambda2, density_split_all, gamma_main1, gamma_main2, gamma_prop11, lambda2_empirical,
    legendre_degree, primes_up_to, Gamma,
};
use ffl_core::lfun::{build_lfunctions, estimate_cost};
use ffl_core::modl::{theta0_census, ClassModSquares};
use ffl_core::surfaces::{legendre_curve, quadratic_twist};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::config::RunConfig;
use crate::report::Report;
use crate::scan::{base_field, build_options, rows, scan, Family};
use crate::selftest::{self, Status};
use crate::CliError;

pub struct Outcome {
    pub report: Report,
    /// Exit code after a successful render (1 for failed checks or records).
    pub code: i32,
}

pub fn open_cache(cfg: &RunConfig) -> Result<Cache, CliError> {
    match &cfg.cache {
        Some(p) => Cache::open(p),
        None => Ok(Cache::memory()),
    }
}

pub fn cmd_scan_twists(cfg: &RunConfig, base: Option<Vec<u32>>) -> Result<Outcome, CliError> {
    let family = match base {
        Some(base) => Family::SingleRoot { base },
        None => Family::TwistingSpace,
    };
    let mut cache = open_cache(cfg)?;
    let out = scan(cfg, &family, &mut cache)?;
    eprintln!("cache hits: {} of {}", out.cache_hits, out.records.len());
    let extra = json!({
        "family": family,
        "summary": out.summary,
        "gamma": out.gamma,
        "bound": out.bound,
    });
    let code = if out.summary.failed > 0 { 1 } else { 0 };
    Ok(Outcome {
        report: Report::new("scan-twists", cfg, extra, rows(&out.records))?,
        code,
    })
}

pub fn cmd_selftest(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let checks = selftest::run();
    for c in &checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        eprintln!("{tag} {}: {}", c.name, c.detail);
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    let rows = checks.iter().map(serde_json::to_value).collect::<Result<Vec<_>, _>>()?;
    let extra = json!({ "failed": failed });
    Ok(Outcome {
        report: Report::new("selftest", cfg, extra, rows)?,
        code: if failed.is_empty() { 0 } else { 1 },
    })
}

/// `L(Sym^m E_f)` for the Legendre curve, or the curve itself without `f`.
pub fn cmd_lfun(cfg: &RunConfig, f: Option<Vec<u32>>, ms: &[u32]) -> Result<Outcome, CliError> {
    let k = base_field(cfg.q)?;
    let e = Arc::new(legendre_curve(k.clone()).map_err(|x| CliError::Invalid(x.to_string()))?);
    let target = match &f {
        Some(c) => quadratic_twist(&e, &from_indices(&k, c)).map_err(|x| CliError::Invalid(x.to_string()))?,
        None => (*e).clone(),
    };
    let opts = build_options(cfg);
    let (cost, _) = estimate_cost(&target, ms, &opts).map_err(|x| CliError::Invalid(x.to_string()))?;
    if cost > opts.max_cost {
        return Err(CliError::Infeasible {
            cost,
            limit: opts.max_cost,
        });
    }
    let ls = build_lfunctions(&target, ms, &opts).map_err(|x| CliError::Failure(x.to_string()))?;
    let rows = ls
        .iter()
        .map(|l| {
            json!({
                "m": l.m,
                "coeffs": l.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "nu": l.degree(),
                "sign": l.sign,
                "strategy": l.certification.strategy,
                "rh_max_deviation": format!("{:.3e}", l.certification.rh_max_deviation),
            })
        })
        .collect();
    Ok(Outcome {
        report: Report::new("lfun", cfg, json!({ "f": f }), rows)?,
        code: 0,
    })
}

pub fn cmd_census(cfg: &RunConfig, n: usize, ells: &[u32]) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    for &ell in ells {
        let s = theta0_census(n, ell, ClassModSquares::Square).map_err(|x| CliError::Invalid(x.to_string()))?;
        let ns = theta0_census(n, ell, ClassModSquares::Nonsquare).map_err(|x| CliError::Invalid(x.to_string()))?;
        rows.push(json!({
            "ell": ell,
            "n": n,
            "binom": s.root_pair_choices.to_string(),
            "square": s.count,
            "nonsquare": ns.count,
            "total": s.total,
            "ratio_square": s.ratio.to_string(),
            "ratio_nonsquare": ns.ratio.to_string(),
        }));
    }
    Ok(Outcome {
        report: Report::new("census", cfg, json!({ "density": "polynomial-census" }), rows)?,
        code: 0,
    })
}

fn gamma_row(formula: &str, input: String, g: &Gamma) -> Value {
    json!({
        "formula": formula,
        "input": input,
        "two_gamma": g.two_gamma.to_string(),
        "gamma": g.gamma.to_string(),
        "warning": g.warning,
    })
}

pub fn cmd_bounds(cfg: &RunConfig, ns: &[u64], nu1: &[u64], nu2: &[u64]) -> Result<Outcome, CliError> {
    let invalid = |e: ffl_core::bounds::BoundsError| CliError::Invalid(e.to_string());
    let mut rows = Vec::new();
    for &n in ns {
        rows.push(gamma_row("prop11", format!("N={n}"), &gamma_prop11(n)));
    }
    if !nu1.is_empty() {
        let g = gamma_main1(nu1).map_err(invalid)?;
        rows.push(gamma_row("main1", format!("nu={nu1:?}"), &g));
    }
    if !nu2.is_empty() {
        let g = gamma_main2(nu2).map_err(invalid)?;
        rows.push(gamma_row("main2", format!("nu={nu2:?}"), &g));
    }
    let nleg = legendre_degree(cfg.d as u64).map_err(invalid)?;
    rows.push(json!({
        "formula": "legendre_degree",
        "input": format!("d={}", cfg.d),
        "value": nleg,
    }));
    Ok(Outcome {
        report: Report::new("bounds", cfg, json!({}), rows)?,
        code: 0,
    })
}

pub struct DensityArgs {
    pub p: u64,
    pub n1: u64,
    pub n2: u64,
    pub delta0: BigRational,
    pub x: u64,
    pub discs: Vec<Vec<i64>>,
    pub chars: Vec<i64>,
}

pub fn cmd_densities(cfg: &RunConfig, a: &DensityArgs) -> Result<Outcome, CliError> {
    let invalid = |e: ffl_core::bounds::BoundsError| CliError::Invalid(e.to_string());
    let mut rows = Vec::new();
    let formula = density_lambda2(a.p, a.n1, a.n2, &a.delta0).map_err(invalid)?;
    let lambda0 = primes_up_to(a.x);
    let emp = lambda2_empirical(a.p, a.n1, a.n2, &a.delta0, &lambda0, a.x).map_err(invalid)?;
    rows.push(json!({
        "lemma": "lambda2",
        "input": format!("p={} N1={} N2={} delta0={}", a.p, a.n1, a.n2, a.delta0),
        "formula": formula.to_string(),
        "empirical": emp.density.to_string(),
        "slack": format!("{:.4}", emp.slack),
        "ok": emp.within_slack,
    }));
    for d in &a.discs {
        let r = density_split_all(d, a.x).map_err(invalid)?;
        rows.push(json!({
            "lemma": "split_all",
            "input": format!("discs={d:?} X={}", a.x),
            "formula": r.expected.to_string(),
            "empirical": r.density.to_string(),
            "slack": format!("{:.4}", r.slack),
            "ok": r.within_slack,
        }));
    }
    for &c in &a.chars {
        let r = char_sum_probe(c, a.x).map_err(invalid)?;
        rows.push(json!({
            "lemma": "char_sum",
            "input": format!("a={c} x={}", a.x),
            "empirical": r.sum.to_string(),
            "formula": format!("pi(x)={}", r.prime_count),
            "slack": format!("{:.4}", r.constant),
            "ok": true,
        }));
    }
    let code = if rows.iter().all(|r| r["ok"] == json!(true)) { 0 } else { 1 };
    Ok(Outcome {
        report: Report::new("densities", cfg, json!({}), rows)?,
        code,
    })
}
