//! Scans over a twist family: certified L-functions, relation detection on
//! the concatenated zero system, Galois evidence, all cached per twist.

use std::sync::Arc;
use std::time::Instant;

use ffl_core::algebra::factor::{from_indices, to_indices};
use ffl_core::algebra::field::{field, prime_power};
use ffl_core::algebra::{is_squarefree, FiniteField, FqPoly, UniPoly};
use ffl_core::bounds::{gamma_main1, Gamma};
use ffl_core::lfun::{build_lfunctions, estimate_cost, reduce, unitarize, BuildOptions, LPolynomial, UnitarizedL};
use ffl_core::modl::{maximality_evidence, MaximalityVerdict};
use ffl_core::relations::{classify, find_relations_with, required_precision, zero_system, Triviality};
use ffl_core::surfaces::{legendre_curve, quadratic_twist, twisting_space, EllSurface};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{Cache, LRecord, RelationVerdict, ScanRecord, Timings};
use crate::config::RunConfig;
use crate::CliError;

/// Which twists to scan.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Family {
    /// Monic squarefree `f` of degree `d` coprime to the discriminant.
    TwistingSpace,
    /// `f̃·(t - c)` for `c ∈ F_q`, keeping the members of the twisting space.
    SingleRoot { base: Vec<u32> },
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub trivial: usize,
    pub nontrivial: usize,
    pub suspect: usize,
    pub failed: usize,
}

pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    pub summary: Summary,
    pub gamma: Option<Gamma>,
    /// `q^{d+1-1/γ} log q`
    pub bound: Option<f64>,
    pub cache_hits: usize,
}

pub fn base_field(q: u64) -> Result<Arc<FiniteField>, CliError> {
    let (p, n) = prime_power(q).ok_or_else(|| CliError::Invalid(format!("q = {q} is not a prime power")))?;
    field(p, n).map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn family_members(k: &FiniteField, e: &EllSurface, d: usize, family: &Family) -> Result<Vec<FqPoly>, CliError> {
    let avoid = e.discriminant();
    match family {
        Family::TwistingSpace => twisting_space(k, d, &avoid).map_err(|e| CliError::Invalid(e.to_string())),
        Family::SingleRoot { base } => {
            let b = from_indices(k, base);
            if b.degree().is_none() || !b.is_monic(k) {
                return Err(CliError::Invalid("base factor must be monic".into()));
            }
            if b.degree() != Some(d.saturating_sub(1)) {
                return Err(CliError::Invalid(format!("base factor must have degree d - 1 = {}", d as i64 - 1)));
            }
            Ok(k
                .elements()
                .map(|c| b.mul(k, &UniPoly::new(k, vec![k.fneg(c), k.from_int(1)])))
                .filter(|f| is_squarefree(k, f) && f.gcd(k, &avoid).degree() == Some(0))
                .collect())
        }
    }
}

fn to_i128(c: &BigInt) -> Result<i128, String> {
    c.to_i128().ok_or_else(|| format!("coefficient {c} exceeds the cache range"))
}

/// Clears denominators of a reduced unitarized polynomial with rational
/// coefficients.
fn integral_reciprocal(l: &UnitarizedL) -> Option<Vec<BigInt>> {
    if l.coeffs.iter().any(|c| !c.b.is_zero()) {
        return None;
    }
    let den = l.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()));
    Some(l.coeffs.iter().map(|c| (&c.a * &den).to_integer()).collect())
}

/// Record skeleton; its key is what the cache is probed with.
pub fn empty_record(cfg: &RunConfig, curve: &str, f: Vec<u32>) -> ScanRecord {
    ScanRecord {
        q: cfg.q,
        curve: curve.to_string(),
        f,
        ms: cfg.ms(),
        lfunctions: Vec::new(),
        verdict: None,
        failure: None,
        extra_rank: None,
        lattice: None,
        suspects: 0,
        height: cfg.height,
        precision: cfg.precision_bits,
        prime_budget: cfg.prime_budget,
        maximality: None,
        timings: Timings {
            lfun_ms: 0,
            relations_ms: 0,
        },
    }
}

pub fn scan_one(e: &Arc<EllSurface>, f: &FqPoly, cfg: &RunConfig, opts: &BuildOptions) -> ScanRecord {
    let k = &**e.field();
    let ms = cfg.ms();
    let mut rec = empty_record(cfg, &e.id(), to_indices(k, f));
    let t0 = Instant::now();
    let ls: Result<Vec<LPolynomial>, String> = quadratic_twist(e, f)
        .map_err(|x| x.to_string())
        .and_then(|ef| build_lfunctions(&ef, &ms, opts).map_err(|x| x.to_string()));
    rec.timings.lfun_ms = t0.elapsed().as_millis() as u64;
    let ls = match ls {
        Ok(ls) => ls,
        Err(msg) => {
            rec.failure = Some(format!("certification: {msg}"));
            return rec;
        }
    };
    let t1 = Instant::now();
    let result = relations_for(&ls, cfg, &mut rec);
    rec.timings.relations_ms = t1.elapsed().as_millis() as u64;
    if let Err(msg) = result {
        rec.failure = Some(msg);
        rec.verdict = None;
    }
    rec
}

fn relations_for(ls: &[LPolynomial], cfg: &RunConfig, rec: &mut ScanRecord) -> Result<(), String> {
    let mut lreds = Vec::new();
    for l in ls {
        let lred = reduce(&unitarize(l)).map_err(|x| format!("reduction: {x}"))?;
        rec.lfunctions.push(LRecord {
            m: l.m,
            coeffs: l.coeffs.iter().map(to_i128).collect::<Result<_, _>>()?,
            nu: l.degree(),
            sign: l.sign,
            nu_red: lred.degree(),
            strategy: l.certification.strategy,
        });
        lreds.push(lred);
    }
    if let Some(ints) = integral_reciprocal(&lreds[0]) {
        if ints.len() > 1 {
            rec.maximality = maximality_evidence(&ints, cfg.prime_budget).ok().map(|r| r.verdict);
        } else {
            rec.maximality = Some(MaximalityVerdict::NotMaximal);
        }
    }
    let nu_red: Vec<usize> = lreds.iter().map(|l| l.degree()).collect();
    let z = zero_system(&lreds, cfg.precision_bits).map_err(|x| format!("zeros: {x}"))?;
    let search = find_relations_with(&z, cfg.height, cfg.precision_bits).map_err(|x| format!("relations: {x}"))?;
    let verdict = classify(&search.saturated, &nu_red).map_err(|x| format!("classify: {x}"))?;
    rec.suspects = search.suspects.len();
    rec.extra_rank = Some(verdict.extra_rank);
    rec.verdict = Some(match verdict.triviality {
        Triviality::Nontrivial => {
            rec.lattice = Some(search.saturated.basis.clone());
            RelationVerdict::Nontrivial
        }
        Triviality::Trivial if rec.suspects > 0 => RelationVerdict::Suspect,
        Triviality::Trivial => RelationVerdict::Trivial,
    });
    Ok(())
}

pub fn build_options(cfg: &RunConfig) -> BuildOptions {
    BuildOptions {
        max_cost: cfg.max_cost,
        ..BuildOptions::default()
    }
}

/// Runs the scan, reusing cached records and appending new ones.
pub fn scan(cfg: &RunConfig, family: &Family, cache: &mut Cache) -> Result<ScanOutcome, CliError> {
    cfg.validate()?;
    let k = base_field(cfg.q)?;
    let e = Arc::new(legendre_curve(k.clone()).map_err(|x| CliError::Invalid(x.to_string()))?);
    let members = family_members(&k, &e, cfg.d, family)?;
    let ms = cfg.ms();
    let opts = build_options(cfg);
    let keyed: Vec<(FqPoly, Option<ScanRecord>)> = members
        .into_iter()
        .map(|f| {
            let probe = empty_record(cfg, &e.id(), to_indices(&k, &f));
            let hit = cache.get(&probe.key()).cloned();
            (f, hit)
        })
        .collect();
    let cache_hits = keyed.iter().filter(|(_, h)| h.is_some()).count();
    // estimated only when something has to be computed, so a warm cache
    // touches no fiber at all
    if let Some((f, _)) = keyed.iter().find(|(_, h)| h.is_none()) {
        let ef = quadratic_twist(&e, f).map_err(|x| CliError::Invalid(x.to_string()))?;
        let (cost, nus) = estimate_cost(&ef, &ms, &opts).map_err(|x| CliError::Invalid(x.to_string()))?;
        if cost > opts.max_cost {
            return Err(CliError::Infeasible {
                cost,
                limit: opts.max_cost,
            });
        }
        let dim: usize = nus.iter().sum();
        let need = required_precision(dim, cfg.height);
        if need > cfg.precision_bits {
            return Err(CliError::Invalid(format!(
                "{} bits is below the {need} needed for dimension {dim} at height {}",
                cfg.precision_bits, cfg.height
            )));
        }
    }
    let computed: Vec<(ScanRecord, bool)> = keyed
        .into_par_iter()
        .map(|(f, hit)| match hit {
            Some(r) => (r, false),
            None => (scan_one(&e, &f, cfg, &opts), true),
        })
        .collect();
    let fresh: Vec<ScanRecord> = computed.iter().filter(|(_, n)| *n).map(|(r, _)| r.clone()).collect();
    cache.append(&fresh)?;
    let records: Vec<ScanRecord> = computed.into_iter().map(|(r, _)| r).collect();
    let mut summary = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in &records {
        match r.verdict {
            None => summary.failed += 1,
            Some(RelationVerdict::Trivial) => summary.trivial += 1,
            Some(RelationVerdict::Nontrivial) => summary.nontrivial += 1,
            Some(RelationVerdict::Suspect) => summary.suspect += 1,
        }
    }
    let gamma = records
        .iter()
        .find(|r| r.verdict.is_some())
        .and_then(|r| gamma_main1(&r.lfunctions.iter().map(|l| l.nu as u64).collect::<Vec<_>>()).ok());
    let bound = gamma.as_ref().map(|g| {
        let q = cfg.q as f64;
        q.powf(cfg.d as f64 + 1.0 - 1.0 / g.gamma.to_f64().unwrap()) * q.ln()
    });
    Ok(ScanOutcome {
        records,
        summary,
        gamma,
        bound,
        cache_hits,
    })
}

pub fn rows(records: &[ScanRecord]) -> Vec<Value> {
    records
        .iter()
        .map(|r| {
            json!({
                "f": r.f,
                "verdict": r.verdict,
                "extra_rank": r.extra_rank,
                "nu": r.lfunctions.iter().map(|l| l.nu).collect::<Vec<_>>(),
                "nu_red": r.lfunctions.iter().map(|l| l.nu_red).collect::<Vec<_>>(),
                "sign": r.lfunctions.iter().map(|l| l.sign).collect::<Vec<_>>(),
                "maximality": r.maximality,
                "suspects": r.suspects,
                "failure": r.failure,
            })
        })
        .collect()
}
