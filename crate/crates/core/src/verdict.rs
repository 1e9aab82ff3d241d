//! Checks of the classical Hilbert-coefficient bounds against measured data.
//!
//! Every verdict records both sides exactly, the hypotheses it relied on and
//! whether those hypotheses were met, unmet, or could not be decided.

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::hilbert::{fmt_rational, shifted_binomial, HilbertDatum};
use crate::reduction::{Closedness, FiltrationLengths, HypothesisFlags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Northcott,
    Itoh,
    EliasValla,
    IntersectionCondition,
    LengthIdentity,
    FiltrationIdentity,
    HalfSum,
    HalfGap,
    EmbeddingDimension,
}

impl Claim {
    pub fn statement(self) -> &'static str {
        match self {
            Claim::Northcott => "l(A/I) >= e0 - e1, with equality iff I^2 = QI",
            Claim::Itoh => "l(A/I) <= e0 - e1 + e2",
            Claim::EliasValla => "l(A/I) >= e0 - e1 + l(I^2/QI), with equality iff I^3 = QI^2",
            Claim::IntersectionCondition => "I integrally closed implies Q ∩ I^2 = QI",
            Claim::LengthIdentity => "l(I^2/QI) = e0 + (d-1) l(A/I) - l(I/I^2)",
            Claim::FiltrationIdentity => {
                "l(A/I^{n+1}) = e0 C(n+d,d) - [e0 - l(A/I) + l(I^2/QI)] C(n+d-1,d-1) \
                 + l(I^2/QI) C(n+d-2,d-2) - l(C_n)"
            }
            Claim::HalfSum => {
                "l(A/I) >= e0 - e1 + (e2 + l(I^2/QI))/2, with equality iff depth G(I) >= d-1"
            }
            Claim::HalfGap => {
                "a gap of exactly 1/2 forces c = l(I^3/QI^2) - r + 1 >= 2 and depth G(I) = d - c"
            }
            Claim::EmbeddingDimension => {
                "3 e0(m) - 2 e1(m) + e2(m) + d - 3 <= v(A), with equality iff depth G(m) >= d-1"
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
}

impl Relation {
    fn of(a: &BigRational, b: &BigRational) -> Relation {
        match a.cmp(b) {
            std::cmp::Ordering::Less => Relation::Less,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Greater => Relation::Greater,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::Equal => "=",
            Relation::Greater => ">",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    /// A hypothesis could not be decided and was not asserted.
    Refused,
    /// A hypothesis was decided and is false, or the claim's case does not arise.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Rank of the module `C` against the number of its degree-2 generators.
    Rank {
        rank: i64,
        len_i3_qi2: usize,
        m_plus_2: i64,
        gap: String,
        /// Predicted `ℓ(A/I^{n+1})` for `n = 1, 2, …`.
        predicted_table: Vec<i64>,
        predicted_matches: bool,
        depth_at_least_d_minus_1: bool,
    },
    HalfGap {
        rank: i64,
        c: i64,
        claimed_depth: i64,
        /// The closed form as displayed, binomials with negative lower index read as zero.
        predicted_table: Vec<i64>,
        predicted_matches: bool,
        /// Values of `n` where the displayed closed form misses the measured table.
        predicted_mismatches: Vec<usize>,
        /// The same with the monomial count written out; decides the status.
        counted_table: Vec<i64>,
        counted_matches: bool,
    },
    Identity {
        checked: Vec<usize>,
        mismatches: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub claim: Claim,
    pub statement: String,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub relation: Option<Relation>,
    pub equality: Option<bool>,
    pub equality_expected: Option<bool>,
    pub hypotheses: HypothesisFlags,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

impl TheoremVerdict {
    fn new(claim: Claim, hypotheses: HypothesisFlags) -> Self {
        TheoremVerdict {
            claim,
            statement: claim.statement().into(),
            status: Status::Holds,
            lhs: None,
            rhs: None,
            relation: None,
            equality: None,
            equality_expected: None,
            hypotheses,
            certificate: None,
            notes: Vec::new(),
        }
    }

    fn sides(&mut self, lhs: &BigRational, rhs: &BigRational) -> Relation {
        let rel = Relation::of(lhs, rhs);
        self.lhs = Some(fmt_rational(lhs));
        self.rhs = Some(fmt_rational(rhs));
        self.relation = Some(rel);
        self.equality = Some(rel == Relation::Equal);
        rel
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.status = Status::Violated;
        self.notes.push(note.into());
    }
}

/// Everything the verdicts read, for one ideal and one reduction.
#[derive(Clone, Copy, Debug)]
pub struct Measurements<'a> {
    pub d: usize,
    pub cohen_macaulay: bool,
    pub hilbert: &'a HilbertDatum,
    pub lengths: &'a FiltrationLengths,
    pub flags: HypothesisFlags,
    pub reduction_number: usize,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Measurements<'_> {
    fn colength(&self) -> i64 {
        self.hilbert.table[0] as i64
    }

    fn e(&self, i: usize) -> i64 {
        self.hilbert.e(i)
    }

    fn a(&self) -> i64 {
        self.lengths.len_i2_qi as i64
    }

    fn b(&self) -> i64 {
        self.lengths.len_i3_qi2 as i64
    }

    /// `e1 - e0 + ℓ(A/I) - ℓ(I^2/QI)`, the rank of `C` when the
    /// structural hypotheses hold.
    pub fn rank(&self) -> i64 {
        self.e(1) - self.e(0) + self.colength() - self.a()
    }

    /// `e0 - e1 + (e2 + ℓ(I^2/QI))/2`.
    pub fn half_sum_bound(&self) -> BigRational {
        q(self.e(0) - self.e(1)) + q(self.e(2) + self.a()) / q(2)
    }

    fn measured(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.hilbert
            .table
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &v)| (n, v as i64))
    }

    /// The Hilbert function predicted for `n ≥ 1` when `depth G(I) ≥ d-1`.
    pub fn predicted_at_least_d_minus_1(&self, n: usize) -> i64 {
        let (n, d) = (n as i64, self.d as i64);
        let (e0, l, a, b) = (self.e(0), self.colength(), self.a(), self.b());
        e0 * shifted_binomial(n, d) - (e0 - l + a + b) * shifted_binomial(n, d - 1)
            + (a + 2 * b) * shifted_binomial(n, d - 2)
            - b * shifted_binomial(n, d - 3)
    }

    /// The Hilbert function predicted for `n ≥ 1` in the half-gap case.
    pub fn predicted_half_gap(&self, n: usize, c: i64) -> i64 {
        let (n, d) = (n as i64, self.d as i64);
        let (e0, l, a, r) = (self.e(0), self.colength(), self.a(), self.rank());
        e0 * shifted_binomial(n, d) - (e0 - l + a + r) * shifted_binomial(n, d - 1)
            + (a + 2 * r - 1) * shifted_binomial(n, d - 2)
            - (r - 1) * shifted_binomial(n, d - 3)
            + shifted_binomial(n, d - c - 1)
            - shifted_binomial(n, d - c - 2)
    }

    /// The same Hilbert function with the last two binomials replaced by
    /// what they stand for: the number of monomials of degree `n - 1` in
    /// `d - c` variables. The two differ only at `n = 1` when `c = d`.
    pub fn counted_half_gap(&self, n: usize, c: i64) -> i64 {
        let (ni, d) = (n as i64, self.d as i64);
        let (e0, l, a, r) = (self.e(0), self.colength(), self.a(), self.rank());
        let free = d - c;
        let monomials = match free {
            k if k < 0 => 0,
            0 => i64::from(n == 1),
            k => shifted_binomial(ni - 1, k - 1),
        };
        e0 * shifted_binomial(ni, d) - (e0 - l + a + r) * shifted_binomial(ni, d - 1)
            + (a + 2 * r - 1) * shifted_binomial(ni, d - 2)
            - (r - 1) * shifted_binomial(ni, d - 3)
            + monomials
    }
}

/// Reasons a claim cannot be evaluated; `Refused` beats `NotApplicable`.
#[derive(Default)]
struct Gate {
    refused: Vec<String>,
    unmet: Vec<String>,
}

impl Gate {
    fn cm(mut self, m: &Measurements) -> Self {
        if !m.cohen_macaulay {
            self.refused
                .push("A is not known to be Cohen-Macaulay (assert it with `cm: true`)".into());
        }
        self
    }

    fn dim(mut self, m: &Measurements, at_least: usize) -> Self {
        if m.d < at_least {
            self.unmet.push(format!("needs dimension at least {at_least}, have {}", m.d));
        }
        self
    }

    fn closed(mut self, m: &Measurements) -> Self {
        match m.flags.integrally_closed {
            Closedness::Verified | Closedness::Asserted => {}
            Closedness::Refuted => self.unmet.push("I is not integrally closed".into()),
            Closedness::Undecided => self.refused.push(
                "integral closedness of I is undecided (assert it with --assume-integrally-closed)"
                    .into(),
            ),
        }
        self
    }

    fn flag(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.unmet.push(format!("{what} fails"));
        }
        self
    }

    fn structural(self, m: &Measurements) -> Self {
        self.flag(m.flags.i4_eq_qi3, "I^4 = QI^3")
            .flag(m.flags.mi3_in_qi2, "mI^3 ⊆ QI^2")
            .flag(m.flags.q_cap_i2_eq_qi, "Q ∩ I^2 = QI")
    }

    /// Applies the gate; `true` when the claim may be evaluated.
    fn apply(self, v: &mut TheoremVerdict) -> bool {
        if !self.refused.is_empty() {
            v.status = Status::Refused;
            v.notes.extend(self.refused);
            v.notes.extend(self.unmet);
            false
        } else if !self.unmet.is_empty() {
            v.status = Status::NotApplicable;
            v.notes.extend(self.unmet);
            false
        } else {
            true
        }
    }
}

pub fn verdict_northcott(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::Northcott, m.flags);
    if !Gate::default().cm(m).dim(m, 1).apply(&mut v) {
        return v;
    }
    let rel = v.sides(&q(m.colength()), &q(m.e(0) - m.e(1)));
    let expected = m.reduction_number <= 1;
    v.equality_expected = Some(expected);
    if rel == Relation::Less {
        v.fail("the bound fails");
    } else if (rel == Relation::Equal) != expected {
        v.fail(format!(
            "equality is {} but the reduction number is {}",
            rel == Relation::Equal,
            m.reduction_number
        ));
    }
    v
}

pub fn verdict_itoh(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::Itoh, m.flags);
    if !Gate::default().cm(m).dim(m, 2).closed(m).apply(&mut v) {
        return v;
    }
    if v.sides(&q(m.colength()), &q(m.e(0) - m.e(1) + m.e(2))) == Relation::Greater {
        v.fail("the bound fails");
    }
    v
}

pub fn verdict_elias_valla(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::EliasValla, m.flags);
    if !Gate::default().cm(m).dim(m, 2).closed(m).apply(&mut v) {
        return v;
    }
    let rel = v.sides(&q(m.colength()), &q(m.e(0) - m.e(1) + m.a()));
    let expected = m.reduction_number <= 2;
    v.equality_expected = Some(expected);
    if rel == Relation::Less {
        v.fail("the bound fails");
    } else if (rel == Relation::Equal) != expected {
        v.fail(format!(
            "equality is {} but the reduction number is {}",
            rel == Relation::Equal,
            m.reduction_number
        ));
    } else if rel == Relation::Equal {
        if m.e(2) == m.a() {
            v.notes.push(format!("e2 = l(I^2/QI) = {}", m.a()));
        } else {
            v.fail(format!("equality holds but e2 = {} differs from l(I^2/QI) = {}", m.e(2), m.a()));
        }
    }
    v
}

pub fn verdict_intersection(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::IntersectionCondition, m.flags);
    if !Gate::default().cm(m).closed(m).apply(&mut v) {
        return v;
    }
    if !m.flags.q_cap_i2_eq_qi {
        v.fail("Q ∩ I^2 differs from QI");
    }
    v
}

pub fn verdict_length_identity(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::LengthIdentity, m.flags);
    if !Gate::default().cm(m).dim(m, 1).apply(&mut v) {
        return v;
    }
    let l_i_i2 = m.hilbert.table[1] as i64 - m.colength();
    let rhs = m.e(0) + (m.d as i64 - 1) * m.colength() - l_i_i2;
    if v.sides(&q(m.a()), &q(rhs)) != Relation::Equal {
        v.fail("the identity fails");
    }
    v
}

pub fn verdict_filtration_identity(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::FiltrationIdentity, m.flags);
    let gate = Gate::default()
        .cm(m)
        .dim(m, 2)
        .flag(m.flags.q_cap_i2_eq_qi, "Q ∩ I^2 = QI");
    if !gate.apply(&mut v) {
        return v;
    }
    let (d, e0, l, a) = (m.d as i64, m.e(0), m.colength(), m.a());
    let mut checked = Vec::new();
    let mut mismatches = Vec::new();
    for (n, &t) in m.hilbert.table.iter().enumerate() {
        let Some(c) = m.lengths.c(n) else { continue };
        let ni = n as i64;
        let rhs = e0 * shifted_binomial(ni, d) - (e0 - l + a) * shifted_binomial(ni, d - 1)
            + a * shifted_binomial(ni, d - 2)
            - c as i64;
        checked.push(n);
        if rhs != t as i64 {
            mismatches.push(n);
        }
    }
    if !mismatches.is_empty() {
        v.fail(format!("the identity fails at n = {mismatches:?}"));
    }
    v.certificate = Some(Certificate::Identity {
        checked,
        mismatches,
    });
    v
}

pub fn verdict_half_sum(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::HalfSum, m.flags);
    if !Gate::default().cm(m).dim(m, 2).closed(m).structural(m).apply(&mut v) {
        return v;
    }
    let bound = m.half_sum_bound();
    let lhs = q(m.colength());
    let rel = v.sides(&lhs, &bound);
    let rank = m.rank();
    let predicted: Vec<i64> = m.measured().map(|(n, _)| m.predicted_at_least_d_minus_1(n)).collect();
    let predicted_matches = m.measured().zip(&predicted).all(|((_, t), p)| t == *p);
    let free = rank == m.b();
    let equal = rel == Relation::Equal;
    v.equality_expected = Some(free);
    v.certificate = Some(Certificate::Rank {
        rank,
        len_i3_qi2: m.lengths.len_i3_qi2,
        m_plus_2: m.a() + 2 * rank - m.e(2),
        gap: fmt_rational(&(&lhs - &bound)),
        predicted_table: predicted,
        predicted_matches,
        depth_at_least_d_minus_1: equal && free && predicted_matches,
    });
    if rel == Relation::Less {
        v.fail("the bound fails");
    } else if !(equal == free && free == predicted_matches) {
        v.fail(format!(
            "incoherent equality certificate: equality {equal}, rank {rank} vs l(I^3/QI^2) {}, \
             predicted table matches {predicted_matches}",
            m.b()
        ));
    } else if equal {
        v.notes.push(format!(
            "rank certificate {} = {} - {} + {} - {}; depth G(I) >= {}",
            rank,
            m.e(1),
            m.e(0),
            m.colength(),
            m.a(),
            m.d - 1
        ));
    }
    v
}

pub fn verdict_half_gap(m: &Measurements) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::HalfGap, m.flags);
    if !Gate::default().cm(m).dim(m, 2).closed(m).structural(m).apply(&mut v) {
        return v;
    }
    let lhs = q(m.colength());
    let bound = m.half_sum_bound();
    let gap = &lhs - &bound;
    if gap != BigRational::new(1.into(), 2.into()) {
        v.status = Status::NotApplicable;
        v.notes.push(format!("gap is {}, not 1/2", fmt_rational(&gap)));
        return v;
    }
    let rhs = q(m.e(0) - m.e(1)) + q(m.e(2) + m.a() + 1) / q(2);
    v.sides(&lhs, &rhs);
    let rank = m.rank();
    let c = m.b() - rank + 1;
    let claimed_depth = m.d as i64 - c;
    let predicted: Vec<i64> = m.measured().map(|(n, _)| m.predicted_half_gap(n, c)).collect();
    let predicted_mismatches: Vec<usize> = m
        .measured()
        .zip(&predicted)
        .filter(|((_, t), p)| t != *p)
        .map(|((n, _), _)| n)
        .collect();
    let counted: Vec<i64> = m.measured().map(|(n, _)| m.counted_half_gap(n, c)).collect();
    let counted_matches = m.measured().zip(&counted).all(|((_, t), p)| t == *p);
    v.certificate = Some(Certificate::HalfGap {
        rank,
        c,
        claimed_depth,
        predicted_table: predicted,
        predicted_matches: predicted_mismatches.is_empty(),
        predicted_mismatches: predicted_mismatches.clone(),
        counted_table: counted,
        counted_matches,
    });
    if c < 2 {
        v.fail(format!("c = {c} is below 2"));
    } else if claimed_depth < 0 {
        v.fail(format!("c = {c} exceeds d = {}", m.d));
    } else if !counted_matches {
        v.fail("the predicted Hilbert function differs from the measured one");
    } else {
        v.notes.push(format!("depth G(I) = {claimed_depth}"));
        if !predicted_mismatches.is_empty() {
            v.notes.push(format!(
                "the closed form with zero binomials for negative index misses n = {:?}; \
                 with c = d the degree-0 part of P/(X_1, ..., X_c) contributes 1 at n = 1",
                predicted_mismatches
            ));
        }
    }
    v
}

/// The embedding-dimension bound, read off the data of `I = m`.
pub fn verdict_embedding_dimension(m: &Measurements, v_a: usize) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(Claim::EmbeddingDimension, m.flags);
    let gate = Gate::default()
        .cm(m)
        .dim(m, 2)
        .flag(m.flags.i4_eq_qi3, "m^4 = Qm^3")
        .flag(m.flags.q_cap_i2_eq_qi, "Q ∩ m^2 = Qm");
    if !gate.apply(&mut v) {
        return v;
    }
    let lhs = 3 * m.e(0) - 2 * m.e(1) + m.e(2) + m.d as i64 - 3;
    let rel = v.sides(&q(lhs), &q(v_a as i64));
    let rank = m.rank();
    let free = rank == m.b();
    v.equality_expected = Some(free);
    if rel == Relation::Greater {
        v.fail("the bound fails");
    } else if (rel == Relation::Equal) != free {
        v.fail(format!(
            "equality is {} but rank {rank} vs l(m^3/Qm^2) {}",
            rel == Relation::Equal,
            m.b()
        ));
    } else {
        v.notes.push(format!("v(A) - lhs = {}", v_a as i64 - lhs));
    }
    v
}

/// `e0 - e1 + ℓ(I²/QI) ≤ e0 - e1 + (e2 + ℓ(I²/QI))/2 ≤ ℓ(A/I) ≤ e0 - e1 + e2`,
/// with each link reported rather than assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityChain {
    pub elias_valla_bound: String,
    pub half_sum_bound: String,
    pub colength: String,
    pub itoh_bound: String,
    pub e2_at_least_len_i2_qi: bool,
    pub ordered: bool,
}

pub fn inequality_chain(m: &Measurements) -> InequalityChain {
    let ev = q(m.e(0) - m.e(1) + m.a());
    let hs = m.half_sum_bound();
    let l = q(m.colength());
    let it = q(m.e(0) - m.e(1) + m.e(2));
    InequalityChain {
        elias_valla_bound: fmt_rational(&ev),
        half_sum_bound: fmt_rational(&hs),
        colength: fmt_rational(&l),
        itoh_bound: fmt_rational(&it),
        e2_at_least_len_i2_qi: m.e(2) >= m.a(),
        ordered: ev <= hs && hs <= l && l <= it,
    }
}

/// All verdicts about `I` itself, in report order.
pub fn verdicts_for_ideal(m: &Measurements) -> Vec<TheoremVerdict> {
    vec![
        verdict_northcott(m),
        verdict_itoh(m),
        verdict_elias_valla(m),
        verdict_intersection(m),
        verdict_length_identity(m),
        verdict_filtration_identity(m),
        verdict_half_sum(m),
        verdict_half_gap(m),
    ]
}
