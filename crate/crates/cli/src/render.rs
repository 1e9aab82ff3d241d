//! Plain-text reports.

use std::fmt::Write;

use hilbert_lab::campaign::{ClosureReport, FuzzSummary};
use hilbert_lab::determinantal::DeterminantalReport;
use hilbert_lab::reduction::{FiltrationLengths, VvEntry};
use hilbert_lab::session::{AnalysisReport, IdealAnalysis};
use hilbert_lab::verdict::{Certificate, Status, TheoremVerdict};

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Violated => "VIOLATED",
        Status::Refused => "refused",
        Status::NotApplicable => "not applicable",
    }
}

fn filtration(out: &mut String, f: &FiltrationLengths) {
    let _ = writeln!(out, "  l(I^2/QI) = {}, l(I^3/QI^2) = {}", f.len_i2_qi, f.len_i3_qi2);
    let c: Vec<String> = f.len_c.iter().map(|e| format!("{}:{}", e.n, e.length)).collect();
    let l: Vec<String> = f.len_l.iter().map(|e| format!("{}:{}", e.n, e.length)).collect();
    let _ = writeln!(out, "  l(C_n)  n:len  {}", c.join(" "));
    let _ = writeln!(out, "  l(L_n)  n:len  {}", l.join(" "));
}

fn vv(out: &mut String, entries: &[VvEntry], cm: bool) {
    let row: Vec<String> = entries
        .iter()
        .map(|e| format!("{}:{}", e.n, if e.holds { "yes" } else { "no" }))
        .collect();
    let _ = writeln!(out, "  Q ∩ I^(n+1) = QI^n  {}  (G(I) Cohen-Macaulay: {cm})", row.join(" "));
}

fn ideal_block(out: &mut String, a: &IdealAnalysis) {
    let _ = writeln!(out, "  Q = ({})", a.reduction.q_generators.join(", "));
    let _ = writeln!(
        out,
        "  reduction number {} (seed {}, {} attempt(s))",
        a.reduction.reduction_number, a.reduction.seed, a.reduction.attempts
    );
    let _ = writeln!(out, "  l(A/I^(n+1)), n = 0..  {}", list(&a.hilbert.table));
    let _ = writeln!(out, "  e = ({})", list(&a.hilbert.coefficients));
    if let Some(h) = &a.hilbert.h_vector {
        let _ = writeln!(out, "  h = ({})", list(h));
    }
    let _ = writeln!(
        out,
        "  fit on n = {}..{}, validated on n = {}..{}",
        a.hilbert.fit_window.start,
        a.hilbert.fit_window.end,
        a.hilbert.validation_window.start,
        a.hilbert.validation_window.end
    );
    filtration(out, &a.filtration);
    vv(out, &a.valabrega_valla, a.associated_graded_cohen_macaulay);
    let h = &a.hypotheses;
    let _ = writeln!(
        out,
        "  hypotheses: integrally closed {:?}, I^4 = QI^3 {}, mI^3 ⊆ QI^2 {}, Q ∩ I^2 = QI {}",
        h.integrally_closed, h.i4_eq_qi3, h.mi3_in_qi2, h.q_cap_i2_eq_qi
    );
}

fn verdicts(out: &mut String, vs: &[TheoremVerdict]) {
    let _ = writeln!(out, "verdicts");
    for v in vs {
        let claim = serde_json::to_value(v.claim).ok();
        let name = claim.as_ref().and_then(|c| c.as_str()).unwrap_or("?");
        let _ = write!(out, "  {name:<24} {}", status_word(v.status));
        if let (Some(l), Some(r), Some(rel)) = (&v.lhs, &v.rhs, v.relation) {
            let _ = write!(out, "  {l} {} {r}", rel.symbol());
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "      {}", v.statement);
        if let Some(Certificate::HalfGap { c, claimed_depth, counted_table, .. }) = &v.certificate {
            let _ = writeln!(out, "      c = {c}, depth G(I) = {claimed_depth}, table ({})", list(counted_table));
        }
        if let Some(Certificate::Rank { predicted_table, .. }) = &v.certificate {
            let _ = writeln!(out, "      predicted l(A/I^(n+1)), n = 1..  {}", list(predicted_table));
        }
        for note in &v.notes {
            let _ = writeln!(out, "      note: {note}");
        }
    }
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.tool, r.version);
    let _ = writeln!(out, "presentation");
    for line in r.presentation.lines() {
        let _ = writeln!(out, "  {line}");
    }
    let i = &r.ideal;
    let _ = writeln!(out, "ideal I = ({})", i.generators.join(", "));
    let _ = writeln!(
        out,
        "  l(A/I) = {} (stable from level {}), maximal: {}, integrally closed: {:?}",
        i.colength, i.stabilized_at, i.is_maximal, i.integrally_closed
    );
    if let Some(note) = &i.closedness_note {
        let _ = writeln!(out, "  {note}");
    }
    ideal_block(&mut out, &r.analysis);
    if !r.reduction_spectrum.is_empty() {
        let rs: Vec<String> = r
            .reduction_spectrum
            .iter()
            .map(|d| format!("seed {}: {}", d.seed, d.reduction_number))
            .collect();
        let _ = writeln!(out, "  reduction numbers from further seeds: {}", rs.join(", "));
    }
    let a = &r.analysis;
    let e = |k: usize| a.hilbert.coefficients.get(k).copied().unwrap_or(0);
    let c = &r.inequality_chain;
    let len = a.filtration.len_i2_qi as i64;
    let _ = writeln!(out, "inequality chain");
    let _ = writeln!(
        out,
        "  {} ≥ {} + {}/2 = {}{}",
        c.colength,
        e(0) - e(1),
        e(2) + len,
        c.half_sum_bound,
        if c.colength == c.half_sum_bound { " [EQUALITY]" } else { "" }
    );
    let _ = writeln!(
        out,
        "  e0 - e1 + l(I^2/QI) = {} ≤ {} ≤ l(A/I) = {} ≤ e0 - e1 + e2 = {}  (ordered: {})",
        c.elias_valla_bound, c.half_sum_bound, c.colength, c.itoh_bound, c.ordered
    );
    let _ = writeln!(out, "maximal ideal: v(A) = {}", r.maximal_ideal.embedding_dimension);
    if let Some(m) = &r.maximal_ideal.analysis {
        ideal_block(&mut out, m);
    }
    verdicts(&mut out, &r.verdicts);
    let _ = writeln!(out, "truncation order {}", r.truncation_order);
    let _ = writeln!(out, "outcome: {:?}", r.outcome);
    out
}

pub fn determinantal(r: &DeterminantalReport) -> String {
    let mut out = String::new();
    let (s, t) = (r.shape.s, r.shape.t);
    let _ = writeln!(out, "{} {}", r.tool, r.version);
    let _ = writeln!(out, "maximal minors of a generic {s} x {t} matrix, dimension {}", r.dimension);
    let _ = writeln!(out, "q = ({})", r.q_generators.join(", "));
    let st = &r.straightening;
    let _ = writeln!(
        out,
        "degree-{s} products: {} checked, {} in qI^{}, {} standard, {} failures",
        st.products_checked,
        st.in_qi,
        s - 1,
        st.standard,
        st.failures.len()
    );
    for f in &st.failures {
        let _ = writeln!(out, "  failure: {f}");
    }
    let pe = &r.power_equality;
    let _ = writeln!(
        out,
        "I^{s} = qI^{}: linear algebra {}, induction {} ({} steps)",
        s - 1,
        pe.linear_algebra,
        pe.symbolic,
        pe.steps.len()
    );
    vv(&mut out, &r.valabrega_valla, r.associated_graded_cohen_macaulay);
    let red = &r.reduction;
    let _ = writeln!(
        out,
        "reduction number of m: {}, m^{s} = qm^{} {}, m^{} ≠ qm^{} {}",
        red.reduction_number.map_or("none".into(), |n| n.to_string()),
        s - 1,
        red.top_power_equal,
        s - 1,
        s.saturating_sub(2),
        red.previous_power_differs
    );
    let h = &r.hilbert;
    let _ = writeln!(out, "l(A/m^(n+1)), n = 0..  {}", list(&h.measured));
    let _ = writeln!(out, "h = ({}), e = ({}), fit agrees {}", list(&h.h_vector), list(&h.coefficients), h.fit_agrees);
    filtration(&mut out, &r.filtration);
    verdicts(&mut out, &r.verdicts);
    let _ = writeln!(out, "truncation order {}", r.truncation_order);
    let _ = writeln!(out, "outcome: {:?}", r.outcome);
    out
}

pub fn closure(r: &ClosureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "I = ({}), l(A/I) = {}", r.generators.join(", "), r.colength);
    let _ = writeln!(
        out,
        "closure = ({}), l(A/closure) = {}",
        r.closure_generators.join(", "),
        r.closure_colength
    );
    let _ = writeln!(out, "integrally closed: {}", r.closed);
    out
}

pub fn fuzz(s: &FuzzSummary) -> String {
    let mut out = String::new();
    let c = &s.config;
    let _ = writeln!(
        out,
        "{} trials in {} variables, degree at most {}, seed {}",
        c.trials, c.vars, c.max_deg, c.seed
    );
    let _ = writeln!(out, "{:<24} {:>6} {:>9} {:>8} {:>15}", "claim", "holds", "violated", "refused", "not applicable");
    for t in &s.tallies {
        let claim = serde_json::to_value(t.claim).ok();
        let name = claim.as_ref().and_then(|c| c.as_str()).unwrap_or("?");
        let _ = writeln!(
            out,
            "{name:<24} {:>6} {:>9} {:>8} {:>15}",
            t.holds, t.violated, t.refused, t.not_applicable
        );
    }
    let _ = writeln!(out, "trials with violations: {}, errors: {}", s.violations, s.errors);
    for t in s.trials.iter().filter(|t| t.reproducer.is_some()) {
        let _ = writeln!(out, "trial {} (seed {})", t.index, t.seed);
        if let Some(e) = &t.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for line in t.reproducer.iter().flat_map(|r| r.lines()) {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}
