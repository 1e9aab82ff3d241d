mod common;

use common::fixture;
use hilbert_lab::algebra::RingPresentation;
use hilbert_lab::campaign::{closure_report, fuzz, FuzzConfig};
use hilbert_lab::determinantal::{verify_shape, Shape, DEFAULT_ORDER};
use hilbert_lab::session::{analyze, Outcome, SessionConfig};
use hilbert_lab::verdict::{Claim, Status, TheoremVerdict};
use hilbert_lab::Error;

fn verdict(vs: &[TheoremVerdict], claim: Claim) -> &TheoremVerdict {
    vs.iter().find(|v| v.claim == claim).unwrap()
}

fn closure_of(text: &str) -> (Vec<String>, bool) {
    let pres = RingPresentation::parse(text).unwrap();
    let r = closure_report(&pres, 64).unwrap();
    (r.closure_generators, r.closed)
}

#[test]
fn closures_of_small_ideals() {
    let (g, closed) = closure_of("vars: x, y\ndim: 2\nideal: x^2, y^2\n");
    assert_eq!(g, ["x^2", "x*y", "y^2"]);
    assert!(!closed);
    let (_, closed) = closure_of("vars: x, y\ndim: 2\nideal: x^3, x^2*y, x*y^2, y^3\n");
    assert!(closed);
    let (g, closed) = closure_of("vars: x, y\ndim: 2\nideal: x^2, y^3\n");
    assert_eq!(g, ["x^2", "x*y^2", "y^3"]);
    assert!(!closed);
}

#[test]
fn closure_refuses_non_monomial_input() {
    let pres = RingPresentation::parse("vars: x, y\ndim: 2\nideal: x^2 + y^3, y^4\n").unwrap();
    let err = closure_report(&pres, 64).unwrap_err();
    assert!(matches!(err, Error::ClosureUndecidable(ref m) if m.contains("--assume-integrally-closed")));
}

#[test]
fn parameter_ideal_is_trivial() {
    let pres = RingPresentation::parse("vars: x, y\ndim: 2\nideal: x^2, y^3\n").unwrap();
    let r = analyze(&pres, &SessionConfig::default()).unwrap();
    assert_eq!(r.analysis.reduction.reduction_number, 0);
    assert_eq!(r.analysis.hilbert.coefficients, [6, 0, 0]);
    assert_eq!(&r.analysis.hilbert.table[..3], &[6, 18, 36]);
    assert_eq!(r.analysis.filtration.len_i2_qi, 0);
    // not integrally closed, so the claims needing it are not applicable
    assert_eq!(verdict(&r.verdicts, Claim::Northcott).status, Status::Holds);
    assert_eq!(verdict(&r.verdicts, Claim::Northcott).equality, Some(true));
    assert_eq!(verdict(&r.verdicts, Claim::Itoh).status, Status::NotApplicable);
}

fn depth_zero(name: &str, m: i64, d: i64) {
    let r = analyze(&fixture(name), &SessionConfig::default()).unwrap();
    let e = &r.analysis.hilbert.coefficients;
    assert_eq!(&e[..3], &[m + 2 * d + 1, m + 3 * d + 1, d + 1], "{name}");
    assert!(e[3..].iter().all(|&x| x == 0));
    assert_eq!(r.analysis.reduction.reduction_number, 3);
    let half = verdict(&r.verdicts, Claim::HalfSum);
    assert_eq!(half.status, Status::Holds);
    let gap = num::BigRational::new(1.into(), 2.into());
    let lhs: num::BigRational = half.lhs.as_ref().unwrap().parse().unwrap();
    let rhs: num::BigRational = half.rhs.as_ref().unwrap().parse().unwrap();
    assert_eq!(lhs - rhs, gap);
    let v = (m + 2 * d) as usize;
    assert_eq!(r.maximal_ideal.embedding_dimension, v);
    let emb = verdict(&r.verdicts, Claim::EmbeddingDimension);
    assert_eq!(emb.lhs.as_deref(), Some((v - 1).to_string().as_str()));
    assert_eq!(verdict(&r.verdicts, Claim::HalfGap).status, Status::Holds);
    assert_eq!(r.outcome, Outcome::Consistent);
}

#[test]
fn depth_zero_family() {
    depth_zero("depth_zero_1_2.ring", 1, 2);
    depth_zero("depth_zero_2_2.ring", 2, 2);
    depth_zero("depth_zero_1_3.ring", 1, 3);
}

#[test]
fn depth_zero_lengths() {
    let r = analyze(&fixture("depth_zero_1_2.ring"), &SessionConfig::default()).unwrap();
    assert_eq!(r.analysis.hilbert.h_vector.as_deref(), Some(&[1, 3, 0, 3, -1][..]));
    assert_eq!(r.analysis.filtration.len_i2_qi, 2);
    assert_eq!(r.analysis.filtration.len_i3_qi2, 2);
    assert_eq!(&r.analysis.hilbert.table[..4], &[1, 6, 15, 31]);
}

#[test]
fn determinantal_shapes() {
    for (s, t, h) in [(2, 2, vec![1, 1]), (2, 3, vec![1, 2]), (3, 3, vec![1, 1, 1])] {
        let r = verify_shape(Shape::new(s, t).unwrap(), 32003, DEFAULT_ORDER, DEFAULT_ORDER).unwrap();
        assert!(r.all_checks_pass(), "{s}x{t}");
        assert_eq!(r.reduction.reduction_number, Some(s - 1));
        assert_eq!(r.hilbert.h_vector, h);
        assert_eq!(r.outcome, Outcome::Consistent);
    }
}

#[test]
fn northcott_is_strict_for_three_by_three() {
    let r = verify_shape(Shape::new(3, 3).unwrap(), 32003, DEFAULT_ORDER, DEFAULT_ORDER).unwrap();
    assert_eq!(&r.hilbert.coefficients[..3], &[3, 3, 1]);
    let n = verdict(&r.verdicts, Claim::Northcott);
    assert_eq!(n.status, Status::Holds);
    assert_eq!(n.equality, Some(false));
    assert_eq!((n.lhs.as_deref(), n.rhs.as_deref()), (Some("1"), Some("0")));
    let r = verify_shape(Shape::new(2, 4).unwrap(), 32003, DEFAULT_ORDER, DEFAULT_ORDER).unwrap();
    assert_eq!(verdict(&r.verdicts, Claim::Northcott).equality, Some(true));
}

#[test]
fn determinantal_shape_errors() {
    assert!(matches!(Shape::new(1, 3), Err(Error::Domain(_))));
    assert!(matches!(Shape::new(3, 2), Err(Error::Domain(_))));
    assert!(matches!(Shape::new(3, 4), Err(Error::Refusal { .. })));
}

#[test]
fn emitted_presentation_reanalyzes() {
    let pres = Shape::new(2, 3).unwrap().presentation(32003).unwrap();
    let again = RingPresentation::parse(&pres.to_text()).unwrap();
    let r = analyze(&again, &SessionConfig::default()).unwrap();
    assert_eq!(r.analysis.reduction.reduction_number, 1);
    assert_eq!(&r.analysis.hilbert.coefficients[..2], &[3, 2]);
}

#[test]
fn empty_campaign() {
    let s = fuzz(&FuzzConfig { vars: 2, max_deg: 4, trials: 0, seed: 1 }).unwrap();
    assert!(s.trials.is_empty() && s.tallies.is_empty());
    assert_eq!(s.outcome(), Outcome::Consistent);
}

#[test]
fn campaign_is_deterministic() {
    let config = FuzzConfig { vars: 2, max_deg: 5, trials: 30, seed: 9 };
    let a = serde_json::to_string(&fuzz(&config).unwrap()).unwrap();
    let b = serde_json::to_string(&fuzz(&config).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn campaign_rejects_one_variable() {
    assert!(fuzz(&FuzzConfig { vars: 1, max_deg: 4, trials: 3, seed: 1 }).is_err());
}
