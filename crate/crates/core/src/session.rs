//! The analysis pipeline: build, reduce, measure, judge.

use serde::Serialize;

use crate::algebra::{
    monomial_integral_closure, IdealSubspace, Polynomial, RingPresentation, Workbench,
};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_datum, hilbert_table, HilbertDatum};
use crate::reduction::{
    find_minimal_reduction, Closedness, FiltrationLengths, HypothesisFlags, NamedCertificate,
    Powers, ReductionDatum, ReductionSearch, VvEntry,
};
use crate::verdict::{
    inequality_chain, verdict_embedding_dimension, verdicts_for_ideal, InequalityChain,
    Measurements, Status, TheoremVerdict,
};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_MAX_ATTEMPTS: usize = 8;
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionConfig {
    pub seed: u64,
    pub p_override: Option<u32>,
    /// Table depth and reduction search bound; raised to `2d + 2` if lower.
    pub n_max: Option<usize>,
    pub max_attempts: usize,
    /// Largest `n` for the `C_n` and `L_n` tables; `min(r + 2, n_max)` when unset.
    pub filtration_depth: Option<usize>,
    pub assume_integrally_closed: bool,
    /// Ceiling for the truncation order.
    pub max_order: usize,
    /// Further seeds whose reduction numbers are sampled and reported.
    pub extra_seeds: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            seed: DEFAULT_SEED,
            p_override: None,
            n_max: None,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            filtration_depth: None,
            assume_integrally_closed: false,
            max_order: DEFAULT_MAX_ORDER,
            extra_seeds: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Every verdict holds, is not applicable, or was refused for an undecided hypothesis
    /// with no violation elsewhere; see `refusals`.
    Consistent,
    Violation,
    Refusal,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Consistent => 0,
            Outcome::Violation => 1,
            Outcome::Refusal => 2,
        }
    }

    pub fn of(verdicts: &[TheoremVerdict]) -> Outcome {
        if verdicts.iter().any(|v| v.status == Status::Violated) {
            Outcome::Violation
        } else if verdicts.iter().any(|v| v.status == Status::Refused) {
            Outcome::Refusal
        } else {
            Outcome::Consistent
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub generators: Vec<String>,
    pub colength: usize,
    pub stabilized_at: usize,
    pub is_maximal: bool,
    pub integrally_closed: Closedness,
    pub closedness_note: Option<String>,
}

/// Everything measured for one ideal and its reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealAnalysis {
    pub reduction: ReductionDatum,
    pub hilbert: HilbertDatum,
    pub filtration: FiltrationLengths,
    pub hypotheses: HypothesisFlags,
    pub valabrega_valla: Vec<VvEntry>,
    /// All entries hold, so `G(I)` is Cohen-Macaulay.
    pub associated_graded_cohen_macaulay: bool,
    pub certificates: Vec<NamedCertificate>,
}

impl IdealAnalysis {
    pub fn measurements(&self, d: usize, cohen_macaulay: bool) -> Measurements<'_> {
        Measurements {
            d,
            cohen_macaulay,
            hilbert: &self.hilbert,
            lengths: &self.filtration,
            flags: self.hypotheses,
            reduction_number: self.reduction.reduction_number,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalIdealBlock {
    pub embedding_dimension: usize,
    /// Absent when `I = m`; the data of `I` are used instead.
    pub analysis: Option<IdealAnalysis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub presentation: String,
    pub config: SessionConfig,
    pub n_max: usize,
    pub ideal: IdealSummary,
    pub analysis: IdealAnalysis,
    /// Reductions found from `seed + 1, seed + 2, …`.
    pub reduction_spectrum: Vec<ReductionDatum>,
    pub inequality_chain: InequalityChain,
    pub maximal_ideal: MaximalIdealBlock,
    pub verdicts: Vec<TheoremVerdict>,
    pub truncation_order: usize,
    pub outcome: Outcome,
}

/// Hilbert table depth for a reduction number `r`: enough to fit on `[r, r+d]`
/// and validate on `d` further entries.
pub fn table_depth(n_max: usize, r: usize, d: usize) -> usize {
    n_max.max(r + 2 * d)
}

/// Measures `I` given by `generators` against a reduction drawn from `seed`.
pub fn analyze_ideal(
    wb: &mut Workbench,
    i: IdealSubspace,
    generators: &[Polynomial],
    d: usize,
    seed: u64,
    config: &SessionConfig,
    n_max: usize,
    closed: Closedness,
) -> Result<IdealAnalysis> {
    let powers = Powers::new(wb, i);
    let search = ReductionSearch {
        seed,
        max_attempts: config.max_attempts,
        n_max,
    };
    let (mut tower, reduction) = find_minimal_reduction(wb, powers, generators, d, search)?;
    let r = reduction.reduction_number;
    let n_hi = table_depth(n_max, r, d);
    let table = hilbert_table(&mut tower, wb, n_hi)?;
    let hilbert = hilbert_datum(table, d, r)?;
    let depth = config.filtration_depth.unwrap_or((r + 2).min(n_max)).max(2);
    let filtration = tower.filtration_lengths(wb, depth)?;
    let hypotheses = tower.hypotheses(wb, closed)?;
    let valabrega_valla = tower.vv_table(wb, r, n_max)?;
    let associated_graded_cohen_macaulay = valabrega_valla.iter().all(|e| e.holds);
    Ok(IdealAnalysis {
        reduction,
        hilbert,
        filtration,
        hypotheses,
        valabrega_valla,
        associated_graded_cohen_macaulay,
        certificates: tower.certificates().to_vec(),
    })
}

/// Decides integral closedness where possible.
pub fn closedness(
    wb: &mut Workbench,
    i: &IdealSubspace,
    is_maximal: bool,
    asserted: bool,
) -> Result<(Closedness, Option<String>)> {
    if is_maximal {
        return Ok((Closedness::Verified, Some("I is the maximal ideal".into())));
    }
    let mut k = i.clone();
    if k.is_certified() {
        wb.ensure_order(k.level() + 1)?;
        wb.refresh(&mut k)?;
    }
    match monomial_integral_closure(&k) {
        Ok(closure) => {
            let closed = closure.equals(&k)?;
            let note = match (closed, asserted) {
                (false, true) => Some("the closedness assertion is contradicted by the Newton polyhedron".into()),
                (false, false) => Some(format!(
                    "integral closure is ({})",
                    closure.describe_generators().join(", ")
                )),
                (true, _) => Some("checked through the Newton polyhedron".into()),
            };
            Ok((if closed { Closedness::Verified } else { Closedness::Refuted }, note))
        }
        Err(Error::ClosureUndecidable(why)) => {
            if asserted {
                Ok((Closedness::Asserted, Some("asserted by the user".into())))
            } else {
                Ok((Closedness::Undecided, Some(why)))
            }
        }
        Err(e) => Err(e),
    }
}

pub fn effective_n_max(config: &SessionConfig, d: usize) -> usize {
    config.n_max.unwrap_or(0).max(2 * d + 2)
}

/// Runs the whole pipeline on a presentation whose `ideal` field is `I`.
pub fn analyze(presentation: &RingPresentation, config: &SessionConfig) -> Result<AnalysisReport> {
    let pres = match config.p_override {
        Some(p) => presentation.with_characteristic(p)?,
        None => presentation.clone(),
    };
    pres.validate()?;
    if pres.ideal.is_empty() {
        return Err(Error::domain("the presentation has an empty `ideal` field"));
    }
    let d = pres.dimension;
    let n_max = effective_n_max(config, d);
    let generators = pres.ideal_polynomials()?;
    if let Some(g) = generators.iter().find(|g| g.constant_term() != 0) {
        return Err(Error::domain(format!(
            "generator `{}` is a unit; I must lie in m",
            g.fmt_with(&pres.variables)
        )));
    }
    let mut wb = Workbench::new(&pres, 8, config.max_order)?;
    let i = wb.ideal(&generators)?;
    let cert = i.colength()?;
    let m = wb.maximal();
    let is_maximal = wb.equals(&i, &m)?;
    let (closed, closedness_note) = closedness(&mut wb, &i, is_maximal, config.assume_integrally_closed)?;
    let cm = pres.is_cohen_macaulay();

    let analysis = analyze_ideal(&mut wb, i.clone(), &generators, d, config.seed, config, n_max, closed)?;

    let mut reduction_spectrum = Vec::new();
    for k in 1..=config.extra_seeds as u64 {
        let powers = Powers::new(&mut wb, i.clone());
        let search = ReductionSearch {
            seed: config.seed.wrapping_add(k),
            max_attempts: config.max_attempts,
            n_max,
        };
        let (_, datum) = find_minimal_reduction(&mut wb, powers, &generators, d, search)?;
        reduction_spectrum.push(datum);
    }

    let measurements = analysis.measurements(d, cm);
    let mut verdicts = verdicts_for_ideal(&measurements);
    let chain = inequality_chain(&measurements);

    let maximal_ideal = if is_maximal {
        let v = analysis.hilbert.table[1] - analysis.hilbert.table[0];
        verdicts.push(verdict_embedding_dimension(&measurements, v));
        MaximalIdealBlock {
            embedding_dimension: v,
            analysis: None,
        }
    } else {
        let vars: Vec<Polynomial> = (0..pres.nvars())
            .map(|k| Polynomial::variable(pres.field(), pres.nvars(), k))
            .collect();
        let m_analysis = analyze_ideal(
            &mut wb,
            m,
            &vars,
            d,
            config.seed,
            config,
            n_max,
            Closedness::Verified,
        )?;
        let v = m_analysis.hilbert.table[1] - m_analysis.hilbert.table[0];
        verdicts.push(verdict_embedding_dimension(&m_analysis.measurements(d, cm), v));
        MaximalIdealBlock {
            embedding_dimension: v,
            analysis: Some(m_analysis),
        }
    };

    let outcome = Outcome::of(&verdicts);
    Ok(AnalysisReport {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        presentation: pres.to_text(),
        config: config.clone(),
        n_max,
        ideal: IdealSummary {
            generators: generators.iter().map(|g| g.fmt_with(&pres.variables)).collect(),
            colength: cert.value,
            stabilized_at: cert.stabilized_at,
            is_maximal,
            integrally_closed: closed,
            closedness_note,
        },
        analysis,
        reduction_spectrum,
        inequality_chain: chain,
        maximal_ideal,
        verdicts,
        truncation_order: wb.host().order(),
        outcome,
    })
}
