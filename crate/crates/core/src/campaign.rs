//! Integral closures of monomial ideals and randomized checks on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{monomial_integral_closure, IdealSubspace, RingPresentation, Workbench};
use crate::kernel::monomial::Monomial;
use crate::kernel::sparse::SparseVec;
use crate::error::{Error, Result};
use crate::session::{analyze, Outcome, SessionConfig, DEFAULT_MAX_ORDER};
use crate::verdict::{Claim, Status, TheoremVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub colength: usize,
    /// Minimal monomial generators of the integral closure.
    pub closure_generators: Vec<String>,
    pub closure_colength: usize,
    pub closed: bool,
}

/// Minimal monomial generators of a certified monomial ideal, in degree-lex order.
fn minimal_monomials(k: &IdealSubspace) -> Result<Vec<Monomial>> {
    let host = k.host();
    let top = k.colength()?.stabilized_at;
    let mut members: Vec<Monomial> = Vec::new();
    for s in 0..host.std_offset(top + 1) {
        if k.contains_vector(&SparseVec::unit(s))? {
            members.push(host.std_monomial(s).clone());
        }
    }
    Ok(members
        .iter()
        .filter(|m| !members.iter().any(|o| o != *m && o.divides(m)))
        .cloned()
        .collect())
}

/// Integral closure of the monomial ideal in `pres.ideal`.
pub fn closure_report(pres: &RingPresentation, max_order: usize) -> Result<ClosureReport> {
    pres.validate()?;
    let gens = pres.ideal_polynomials()?;
    let mut wb = Workbench::new(pres, 8, max_order)?;
    let mut k = wb.ideal(&gens)?;
    let cert = k.colength()?;
    wb.ensure_order(cert.stabilized_at + 1)?;
    wb.refresh(&mut k)?;
    let closure = monomial_integral_closure(&k)?;
    let names = &pres.variables;
    Ok(ClosureReport {
        variables: names.clone(),
        generators: minimal_monomials(&k)?.iter().map(|m| m.fmt_with(names)).collect(),
        colength: cert.value,
        closure_generators: minimal_monomials(&closure)?
            .iter()
            .map(|m| m.fmt_with(names))
            .collect(),
        closure_colength: closure.colength()?.value,
        closed: closure.equals(&k)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub vars: usize,
    pub max_deg: u16,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub claim: Claim,
    pub holds: usize,
    pub violated: usize,
    pub refused: usize,
    pub not_applicable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzTrial {
    pub index: usize,
    pub seed: u64,
    pub generators: Vec<String>,
    pub colength: Option<usize>,
    pub reduction_number: Option<usize>,
    pub coefficients: Vec<i64>,
    /// Claims that came out violated.
    pub violations: Vec<Claim>,
    /// Set when the pipeline itself failed.
    pub error: Option<String>,
    /// Presentation and seed that re-trigger a violation or error.
    pub reproducer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub trials: Vec<FuzzTrial>,
    pub tallies: Vec<ClaimTally>,
    pub violations: usize,
    pub errors: usize,
}

impl FuzzSummary {
    pub fn outcome(&self) -> Outcome {
        if self.violations > 0 || self.errors > 0 {
            Outcome::Violation
        } else {
            Outcome::Consistent
        }
    }
}

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

/// Seed of trial `index`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// A random m-primary monomial ideal, replaced by its integral closure.
pub fn random_closed_ideal(vars: usize, max_deg: u16, seed: u64) -> Result<RingPresentation> {
    if !(1..=VAR_NAMES.len()).contains(&vars) {
        return Err(Error::domain(format!("fuzzing supports 1 to 3 variables, got {vars}")));
    }
    if max_deg == 0 {
        return Err(Error::domain("max degree must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = VAR_NAMES[..vars].iter().map(|s| s.to_string()).collect();
    let mut gens: Vec<String> = (0..vars)
        .map(|i| format!("{}^{}", names[i], rng.gen_range(1..=max_deg)))
        .collect();
    let extra = rng.gen_range(0..=vars + 1);
    for _ in 0..extra {
        let exps: Vec<u16> = (0..vars).map(|_| rng.gen_range(0..max_deg)).collect();
        if exps.iter().all(|&e| e == 0) {
            continue;
        }
        let m: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| format!("{}^{}", names[i], e))
            .collect();
        gens.push(m.join("*"));
    }
    let text = format!(
        "vars: {}\ndim: {vars}\ncm: true\nideal: {}\n",
        names.join(", "),
        gens.join(", ")
    );
    let raw = RingPresentation::parse(&text)?;
    let closure = closure_report(&raw, 64)?;
    RingPresentation::parse(&format!(
        "vars: {}\ndim: {vars}\ncm: true\nideal: {}\n",
        names.join(", "),
        closure.closure_generators.join(", ")
    ))
}

fn run_trial(config: &FuzzConfig, index: usize) -> (FuzzTrial, Vec<TheoremVerdict>) {
    let seed = trial_seed(config.seed, index);
    let mut trial = FuzzTrial {
        index,
        seed,
        generators: Vec::new(),
        colength: None,
        reduction_number: None,
        coefficients: Vec::new(),
        violations: Vec::new(),
        error: None,
        reproducer: None,
    };
    let pres = match random_closed_ideal(config.vars, config.max_deg, seed) {
        Ok(p) => p,
        Err(e) => {
            trial.error = Some(e.to_string());
            return (trial, Vec::new());
        }
    };
    trial.generators = pres.ideal.iter().map(|e| e.to_string()).collect();
    // I^n needs level about n * max_deg for n up to r + 2d + 1
    let session = SessionConfig {
        seed,
        max_order: DEFAULT_MAX_ORDER.max((2 * config.vars + 5) * config.max_deg as usize),
        ..SessionConfig::default()
    };
    let mut verdicts = Vec::new();
    match analyze(&pres, &session) {
        Ok(report) => {
            trial.colength = Some(report.ideal.colength);
            trial.reduction_number = Some(report.analysis.reduction.reduction_number);
            trial.coefficients = report.analysis.hilbert.coefficients.clone();
            trial.violations = report
                .verdicts
                .iter()
                .filter(|v| v.status == Status::Violated)
                .map(|v| v.claim)
                .collect();
            verdicts = report.verdicts;
        }
        Err(e) => trial.error = Some(e.to_string()),
    }
    if !trial.violations.is_empty() || trial.error.is_some() {
        trial.reproducer = Some(format!(
            "# fuzz trial {index}; analyze with --seed {seed}\n{}",
            pres.to_text()
        ));
    }
    (trial, verdicts)
}

fn tally_into(tallies: &mut Vec<ClaimTally>, verdicts: &[TheoremVerdict]) {
    for v in verdicts {
        let pos = match tallies.iter().position(|t| t.claim == v.claim) {
            Some(p) => p,
            None => {
                tallies.push(ClaimTally {
                    claim: v.claim,
                    holds: 0,
                    violated: 0,
                    refused: 0,
                    not_applicable: 0,
                });
                tallies.len() - 1
            }
        };
        let t = &mut tallies[pos];
        match v.status {
            Status::Holds => t.holds += 1,
            Status::Violated => t.violated += 1,
            Status::Refused => t.refused += 1,
            Status::NotApplicable => t.not_applicable += 1,
        }
    }
}

/// Runs `config.trials` trials; the summary depends only on `config`.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    if !(2..=3).contains(&config.vars) {
        return Err(Error::domain(format!(
            "fuzzing runs in 2 or 3 variables, got {}",
            config.vars
        )));
    }
    let results: Vec<(FuzzTrial, Vec<TheoremVerdict>)> = (0..config.trials)
        .into_par_iter()
        .map(|k| run_trial(config, k))
        .collect();
    let mut tallies = Vec::new();
    let mut trials = Vec::with_capacity(results.len());
    for (trial, verdicts) in results {
        tally_into(&mut tallies, &verdicts);
        trials.push(trial);
    }
    let violations = trials.iter().filter(|t| !t.violations.is_empty()).count();
    let errors = trials.iter().filter(|t| t.error.is_some()).count();
    Ok(FuzzSummary {
        config: config.clone(),
        trials,
        tallies,
        violations,
        errors,
    })
}
