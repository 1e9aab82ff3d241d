//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p hilbert-lab --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use hilbert_lab::campaign::{fuzz, FuzzConfig, FuzzSummary};
use hilbert_lab::determinantal::{verify_shape, Shape, DEFAULT_ORDER};
use hilbert_lab::kernel::PrimeField;
use hilbert_lab::session::{analyze, AnalysisReport, Outcome, SessionConfig};
use hilbert_lab::verdict::{Certificate, Claim, Status, TheoremVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn verdict(vs: &[TheoremVerdict], claim: Claim) -> &TheoremVerdict {
    vs.iter().find(|v| v.claim == claim).expect("verdict present")
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).unwrap()
}

fn normal_ideal() -> Result<AnalysisReport, String> {
    let config = SessionConfig {
        assume_integrally_closed: true,
        ..SessionConfig::default()
    };
    analyze(&fixture("normal_ideal.ring"), &config).map_err(|e| e.to_string())
}

fn check_normal_ideal(r: &AnalysisReport) -> Check {
    let a = &r.analysis;
    let t = &a.hilbert.table;
    ensure(t[0] == 31, || format!("l(A/I) = {}", t[0]))?;
    ensure(t[1] - t[0] == 136, || format!("l(I/I^2) = {}", t[1] - t[0]))?;
    ensure(a.hilbert.coefficients == [76, 48, 4, 1], || format!("e = {:?}", a.hilbert.coefficients))?;
    ensure(a.hilbert.h_vector.as_deref() == Some(&[31, 43, 1, 1][..]), || {
        format!("h = {:?}", a.hilbert.h_vector)
    })?;
    ensure(a.reduction.reduction_number == 3, || format!("r = {}", a.reduction.reduction_number))?;
    ensure(a.filtration.len_i3_qi2 == 1, || format!("l(I^3/QI^2) = {}", a.filtration.len_i3_qi2))?;
    ensure(a.filtration.len_i2_qi == 2, || format!("l(I^2/QI) = {}", a.filtration.len_i2_qi))?;
    let main = verdict(&r.verdicts, Claim::HalfSum);
    ensure(main.status == Status::Holds && main.equality == Some(true), || {
        format!("main inequality {:?}, equality {:?}", main.status, main.equality)
    })?;
    let Some(Certificate::Rank { rank, predicted_table, .. }) = &main.certificate else {
        return Err("no rank certificate".into());
    };
    let (e0, e1) = (a.hilbert.coefficients[0], a.hilbert.coefficients[1]);
    let identity = e1 - e0 + t[0] as i64 - a.filtration.len_i2_qi as i64;
    ensure(*rank == 1 && identity == 1, || format!("rank {rank}, e1 - e0 + l(A/I) - l(I^2/QI) = {identity}"))?;
    ensure(predicted_table.len() >= 6, || format!("only {} predicted entries", predicted_table.len()))?;
    for n in 1..=6 {
        ensure(predicted_table[n - 1] == t[n] as i64, || {
            format!("n = {n}: predicted {} vs measured {}", predicted_table[n - 1], t[n])
        })?;
    }
    Ok(format!(
        "e = (76, 48, 4, 1), h = (31, 43, 1, 1), r = 3, rank 1 = 48 - 76 + 31 - 2, tables agree on n = 1..6, \
         truncation order {}",
        r.truncation_order
    ))
}

fn depth_zero(name: &str, m: i64, d: i64) -> Result<AnalysisReport, String> {
    let r = analyze(&fixture(name), &SessionConfig::default()).map_err(|e| e.to_string())?;
    let e = &r.analysis.hilbert.coefficients;
    ensure(e[..3] == [m + 2 * d + 1, m + 3 * d + 1, d + 1] && e[3..].iter().all(|&x| x == 0), || {
        format!("({m},{d}): e = {e:?}")
    })?;
    ensure(r.analysis.reduction.reduction_number == 3, || {
        format!("({m},{d}): m^4 = Qm^3 fails or r < 3, r = {}", r.analysis.reduction.reduction_number)
    })?;
    let main = verdict(&r.verdicts, Claim::HalfSum);
    let gap = match (&main.lhs, &main.rhs) {
        (Some(l), Some(rh)) => {
            let l: num::BigRational = l.parse().unwrap();
            let rh: num::BigRational = rh.parse().unwrap();
            l - rh
        }
        _ => return Err(format!("({m},{d}): main inequality has no sides")),
    };
    ensure(gap == num::BigRational::new(1.into(), 2.into()), || format!("({m},{d}): gap {gap}"))?;
    let v = (m + 2 * d) as usize;
    let emb = verdict(&r.verdicts, Claim::EmbeddingDimension);
    ensure(
        r.maximal_ideal.embedding_dimension == v && emb.lhs.as_deref() == Some(&(v - 1).to_string()),
        || format!("({m},{d}): v = {}, lhs {:?}", r.maximal_ideal.embedding_dimension, emb.lhs),
    )?;
    Ok(r)
}

fn criterion_2() -> (Check, Vec<String>) {
    let mut reports = Vec::new();
    for (name, m, d) in [
        ("depth_zero_1_2.ring", 1, 2),
        ("depth_zero_2_2.ring", 2, 2),
        ("depth_zero_1_3.ring", 1, 3),
    ] {
        match depth_zero(name, m, d) {
            Ok(r) => reports.push(json(&r)),
            Err(e) => return (Err(e), reports),
        }
    }
    (Ok("(1,2), (2,2), (1,3): e, m^4 = Qm^3, gap 1/2, lhs v - 1".into()), reports)
}

fn criterion_3() -> (Check, Vec<String>) {
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for (s, t) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
        let shape = Shape::new(s, t).unwrap();
        let r = match verify_shape(shape, 32003, DEFAULT_ORDER, DEFAULT_ORDER) {
            Ok(r) => r,
            Err(e) => return (Err(format!("{s}x{t}: {e}")), reports),
        };
        reports.push(json(&r));
        let problems = [
            (!r.power_equality.linear_algebra || !r.power_equality.symbolic, "I^s = qI^(s-1)"),
            (!r.valabrega_valla.iter().all(|e| e.holds), "Q ∩ I^(n+1) = QI^n"),
            (r.reduction.reduction_number != Some(s - 1), "reduction number"),
            (!r.reduction.top_power_equal || !r.reduction.previous_power_differs, "direct power check"),
            (!r.straightening.certified(), "straightening"),
            (!r.all_checks_pass(), "structural checks"),
        ];
        if let Some((_, what)) = problems.iter().find(|(bad, _)| *bad) {
            return (Err(format!("{s}x{t}: {what}")), reports);
        }
        summary.push(format!("{s}x{t} r = {}", s - 1));
    }
    (Ok(summary.join(", ")), reports)
}

fn check_campaign(s: &FuzzSummary, label: &str) -> Result<String, String> {
    ensure(s.errors == 0, || format!("{label}: {} trials failed to run", s.errors))?;
    if let Some(t) = s.trials.iter().find(|t| !t.violations.is_empty()) {
        return Err(format!(
            "{label}: trial {} violates {:?}\n{}",
            t.index,
            t.violations,
            t.reproducer.clone().unwrap_or_default()
        ));
    }
    let half = s.tallies.iter().find(|t| t.claim == Claim::HalfSum);
    let judged = half.map_or(0, |t| t.holds);
    Ok(format!("{label}: {} trials, main inequality judged on {judged}", s.trials.len()))
}

fn criterion_4() -> (Check, Vec<String>) {
    let configs = [
        FuzzConfig { vars: 2, max_deg: 8, trials: 200, seed: 0x5eed },
        FuzzConfig { vars: 3, max_deg: 4, trials: 50, seed: 0x5eed },
    ];
    let mut reports = Vec::new();
    let mut lines = Vec::new();
    for c in configs {
        let s = match fuzz(&c) {
            Ok(s) => s,
            Err(e) => return (Err(e.to_string()), reports),
        };
        reports.push(json(&s));
        match check_campaign(&s, &format!("{} vars", c.vars)) {
            Ok(l) => lines.push(l),
            Err(e) => return (Err(e), reports),
        }
    }
    (Ok(lines.join("; ")), reports)
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = PrimeField::new(32003).unwrap();
    for k in 0..100 {
        let (r, c) = (rng.gen_range(1..12), rng.gen_range(1..12));
        let rows = random_matrix(&mut rng, 32003, r, c);
        let probes = random_matrix(&mut rng, 32003, 3, c);
        ensure(echelon_matches_gauss(f, &rows, &probes), || format!("echelon instance {k}: {rows:?}"))?;
    }
    let mut members = 0;
    for k in 0..100 {
        let vars = rng.gen_range(2..=3);
        let gens = random_monomial_ideal(&mut rng, vars, 6);
        let point: Vec<u16> = (0..vars).map(|_| rng.gen_range(0..4)).collect();
        let lp = lp_member(&point, &gens);
        members += lp as usize;
        ensure(lp == power_member(&point, &gens, 6), || {
            format!("membership instance {k}: {point:?} against {gens:?}")
        })?;
    }
    for k in 0..100 {
        let vars = rng.gen_range(2..=3);
        let gens = random_monomial_ideal(&mut rng, vars, 5);
        let (a, b) = (engine_colength(vars, &gens), staircase_colength(&gens));
        ensure(a == b, || format!("colength instance {k}: {a} vs {b} for {gens:?}"))?;
    }
    Ok(format!("3 x 100 instances agree ({members} of 100 points integral)"))
}

fn report(n: usize, title: &str, check: &Check, started: Instant) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match check {
        Ok(detail) => println!("criterion {n} PASS  {title}: {detail} ({secs:.1}s)"),
        Err(why) => println!("criterion {n} FAIL  {title}: {why} ({secs:.1}s)"),
    }
    check.is_ok()
}

fn main() -> ExitCode {
    let mut all = true;

    let t = Instant::now();
    let first = normal_ideal();
    let c1 = first.as_ref().map_err(|e| e.clone()).and_then(check_normal_ideal);
    all &= report(1, "normal ideal with h = (31, 43, 1, 1)", &c1, t);

    let t = Instant::now();
    let (c2, r2) = criterion_2();
    all &= report(2, "depth-zero family with gap 1/2", &c2, t);

    let t = Instant::now();
    let (c3, r3) = criterion_3();
    all &= report(3, "maximal minors", &c3, t);

    let t = Instant::now();
    let (c4, r4) = criterion_4();
    all &= report(4, "random integrally closed monomial ideals", &c4, t);

    let t = Instant::now();
    let c5 = criterion_5();
    all &= report(5, "oracle equivalences", &c5, t);

    let t = Instant::now();
    let again = normal_ideal();
    let c6 = (|| {
        let (a, b) = match (&first, &again) {
            (Ok(a), Ok(b)) => (json(a), json(b)),
            _ => return Err("the normal ideal did not run".to_string()),
        };
        ensure(a == b, || "criterion 1 report differs".into())?;
        ensure(r2 == criterion_2().1, || "criterion 2 reports differ".into())?;
        ensure(r3 == criterion_3().1, || "criterion 3 reports differ".into())?;
        ensure(r4 == criterion_4().1, || "criterion 4 reports differ".into())?;
        let outcome = first.as_ref().map(|r| r.outcome.clone()).unwrap();
        ensure(outcome == Outcome::Consistent, || format!("criterion 1 outcome {outcome:?}"))?;
        Ok(format!("{} reports byte-identical on rerun", 1 + r2.len() + r3.len() + r4.len()))
    })();
    all &= report(6, "determinism", &c6, t);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
