//! Generic `s × t` matrices modulo their maximal minors.
//!
//! `A = k[x_ij]/I_s` with `I = m` and the parameter ideal
//!
//! ```text
//! q = (x_ij : j - i < 0 or j - i > t - s) + (x_ij - x_{i-1,j-1} : 2 ≤ i ≤ s, 0 ≤ j - i ≤ t - s)
//! ```
//!
//! Every degree-`s` monomial straightens modulo `q I^{s-1}` to a standard
//! product `x_{1,i_1} ⋯ x_{s,i_s}` with `i_1 < ⋯ < i_s`, and expanding the
//! minors in lexicographic order then pushes every standard product into
//! `q I^{s-1}`. Both steps are replayed here symbolically and checked against
//! linear algebra in a truncation of `A`.

use serde::Serialize;

use crate::algebra::{IdealSubspace, Polynomial, RingPresentation, Workbench};
use crate::error::{Error, Result};
use crate::hilbert::{
    coefficients_from_h, fit_coefficients, h_prefix, table_from_h, HilbertDatum, Window,
};
use crate::kernel::field::PrimeField;
use crate::kernel::monomial::Monomial;
use crate::reduction::{
    check_reduction, Closedness, FiltrationLengths, HypothesisFlags, Powers, Tower, VvEntry,
};
use crate::session::Outcome;
use crate::verdict::{verdict_embedding_dimension, verdicts_for_ideal, Measurements, TheoremVerdict};

/// Largest `s·t` accepted by [`Shape::new`].
pub const MAX_ENTRIES: usize = 9;
/// Default truncation order for determinantal checks.
pub const DEFAULT_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub s: usize,
    pub t: usize,
}

impl Shape {
    /// `2 ≤ s ≤ t` and `s·t ≤ MAX_ENTRIES`.
    pub fn new(s: usize, t: usize) -> Result<Shape> {
        Self::with_cap(s, t, MAX_ENTRIES)
    }

    pub fn with_cap(s: usize, t: usize, cap: usize) -> Result<Shape> {
        if s < 2 || s > t {
            return Err(Error::domain(format!("shape {s}×{t} needs 2 ≤ s ≤ t")));
        }
        if s * t > cap {
            return Err(Error::Refusal {
                claim: "determinantal instance".into(),
                reason: format!("{s}×{t} has {} entries, above the cap of {cap}", s * t),
            });
        }
        Ok(Shape { s, t })
    }

    pub fn nvars(self) -> usize {
        self.s * self.t
    }

    /// `st - (t - s + 1)`.
    pub fn dimension(self) -> usize {
        self.s * self.t - (self.t - self.s + 1)
    }

    /// Variable index of `x_ij`, 1-based `i` and `j`.
    pub fn index(self, e: Entry) -> usize {
        (e.row - 1) * self.t + (e.col - 1)
    }

    pub fn name(self, e: Entry) -> String {
        if self.s < 10 && self.t < 10 {
            format!("x{}{}", e.row, e.col)
        } else {
            format!("x{}_{}", e.row, e.col)
        }
    }

    pub fn entries(self) -> impl Iterator<Item = Entry> {
        let t = self.t;
        (1..=self.s).flat_map(move |row| (1..=t).map(move |col| Entry { row, col }))
    }

    pub fn variable_names(self) -> Vec<String> {
        self.entries().map(|e| self.name(e)).collect()
    }

    /// `x_ij ∈ q` outright.
    pub fn killed(self, e: Entry) -> bool {
        e.col < e.row || e.col - e.row > self.t - self.s
    }

    fn contains(self, e: Entry) -> bool {
        (1..=self.s).contains(&e.row) && (1..=self.t).contains(&e.col)
    }

    /// Column subsets `i_1 < ⋯ < i_s` in lexicographic order.
    pub fn standard_indices(self) -> Vec<Vec<usize>> {
        fn rec(start: usize, t: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for c in start..=t + 1 - left {
                cur.push(c);
                rec(c + 1, t, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, self.t, self.s, &mut Vec::new(), &mut out);
        out
    }

    pub fn product(self, field: PrimeField, factors: &[Entry]) -> Polynomial {
        let mut exps = vec![0u16; self.nvars()];
        for &e in factors {
            exps[self.index(e)] += 1;
        }
        Polynomial::monomial(field, Monomial::new(exps), 1)
    }

    /// The minor on columns `cols`, expanded over all permutations.
    pub fn minor(self, field: PrimeField, cols: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(field, self.nvars());
        for (perm, sign) in permutations(self.s) {
            let factors: Vec<Entry> = perm
                .iter()
                .zip(cols)
                .map(|(&r, &c)| Entry { row: r + 1, col: c })
                .collect();
            let term = self.product(field, &factors);
            out = if sign > 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    pub fn minors(self, field: PrimeField) -> Vec<Polynomial> {
        self.standard_indices()
            .iter()
            .map(|cols| self.minor(field, cols))
            .collect()
    }

    /// Generators of `q`: the entries below the band, those above it, then
    /// the differences along the band.
    pub fn parameter_generators(self, field: PrimeField) -> Vec<Polynomial> {
        let var = |e: Entry| Polynomial::variable(field, self.nvars(), self.index(e));
        let below = self.entries().filter(|e| e.col < e.row).map(var);
        let above = self
            .entries()
            .filter(|e| e.col >= e.row && e.col - e.row > self.t - self.s)
            .map(var);
        let band = self
            .entries()
            .filter(|e| e.row >= 2 && !self.killed(*e))
            .map(|e| {
                var(e).sub(&var(Entry {
                    row: e.row - 1,
                    col: e.col - 1,
                }))
            });
        below.chain(above).chain(band).collect()
    }

    /// The ring with `ideal` set to the maximal ideal.
    pub fn presentation(self, characteristic: u32) -> Result<RingPresentation> {
        let field = PrimeField::new(characteristic)?;
        let names = self.variable_names();
        Ok(RingPresentation {
            characteristic,
            relations: self.minors(field).iter().map(|p| p.to_expr(&names)).collect(),
            dimension: self.dimension(),
            cohen_macaulay: true,
            ideal: names
                .iter()
                .map(|n| crate::algebra::Expr::parse(n))
                .collect::<Result<_>>()?,
            variables: names,
        })
    }
}

/// Permutations of `0..n` with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if cur.len() == n {
            let inversions = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| cur[a] > cur[b])
                .count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `x_{row,col}`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// The factor lies in `q`, so the product lies in `q I^{s-1}`.
    Kill { factor: Entry },
    /// One step along the band, `x_ij ≡ x_{i±1,j±1}`.
    Shift { from: Entry, to: Entry },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StraightenStatus {
    #[serde(rename = "in_qI")]
    InQI,
    #[serde(rename = "standard")]
    Standard,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Straightening {
    pub status: StraightenStatus,
    /// `i_1 < ⋯ < i_s` when standard.
    pub standard_indices: Option<Vec<usize>>,
    pub moves: Vec<Move>,
}

/// Rewrites a product of `s` entries modulo `q I^{s-1}`: kill a factor in
/// `q` if there is one, otherwise slide every factor to row 1, sort the
/// columns and slide factor `u` back down to row `u`.
pub fn straighten(shape: Shape, factors: &[Entry]) -> Result<Straightening> {
    if factors.len() != shape.s {
        return Err(Error::domain(format!(
            "straightening takes {} factors, got {}",
            shape.s,
            factors.len()
        )));
    }
    if let Some(e) = factors.iter().find(|e| !shape.contains(**e)) {
        return Err(Error::domain(format!(
            "entry ({}, {}) is outside the {}×{} matrix",
            e.row, e.col, shape.s, shape.t
        )));
    }
    if let Some(&e) = factors.iter().find(|e| shape.killed(**e)) {
        return Ok(Straightening {
            status: StraightenStatus::InQI,
            standard_indices: None,
            moves: vec![Move::Kill { factor: e }],
        });
    }
    let mut moves = Vec::new();
    let mut top: Vec<usize> = Vec::with_capacity(shape.s);
    for &e in factors {
        let mut cur = e;
        while cur.row > 1 {
            let to = Entry {
                row: cur.row - 1,
                col: cur.col - 1,
            };
            moves.push(Move::Shift { from: cur, to });
            cur = to;
        }
        top.push(cur.col);
    }
    top.sort_unstable();
    let mut indices = Vec::with_capacity(shape.s);
    for (u, &k) in top.iter().enumerate() {
        let mut cur = Entry { row: 1, col: k };
        for _ in 0..u {
            let to = Entry {
                row: cur.row + 1,
                col: cur.col + 1,
            };
            moves.push(Move::Shift { from: cur, to });
            cur = to;
        }
        indices.push(cur.col);
    }
    Ok(Straightening {
        status: StraightenStatus::Standard,
        standard_indices: Some(indices),
        moves,
    })
}

fn standard_product(indices: &[usize]) -> Vec<Entry> {
    indices
        .iter()
        .enumerate()
        .map(|(u, &c)| Entry { row: u + 1, col: c })
        .collect()
}

/// Every multiset of `s` entries, in a fixed order.
pub fn degree_s_products(shape: Shape) -> Vec<Vec<Entry>> {
    let all: Vec<Entry> = shape.entries().collect();
    fn rec(all: &[Entry], start: usize, left: usize, cur: &mut Vec<Entry>, out: &mut Vec<Vec<Entry>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..all.len() {
            cur.push(all[k]);
            rec(all, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&all, 0, shape.s, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StraighteningAudit {
    pub products_checked: usize,
    pub in_qi: usize,
    pub standard: usize,
    /// Products whose rewrite is not a congruence modulo `q I^{s-1}`.
    pub failures: Vec<String>,
}

impl StraighteningAudit {
    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fmt_product(shape: Shape, factors: &[Entry]) -> String {
    factors.iter().map(|&e| shape.name(e)).collect::<Vec<_>>().join("*")
}

/// Checks each straightening against membership in `q I^{s-1}`.
pub fn audit_straightening(shape: Shape, field: PrimeField, q_i: &IdealSubspace) -> Result<StraighteningAudit> {
    let mut audit = StraighteningAudit {
        products_checked: 0,
        in_qi: 0,
        standard: 0,
        failures: Vec::new(),
    };
    for factors in degree_s_products(shape) {
        let st = straighten(shape, &factors)?;
        let lhs = shape.product(field, &factors);
        let diff = match &st.standard_indices {
            None => {
                audit.in_qi += 1;
                lhs
            }
            Some(ix) => {
                audit.standard += 1;
                lhs.sub(&shape.product(field, &standard_product(ix)))
            }
        };
        audit.products_checked += 1;
        if !q_i.contains_polynomial(&diff)? {
            audit.failures.push(fmt_product(shape, &factors));
        }
    }
    Ok(audit)
}

/// One standard product in the lexicographic induction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexStep {
    pub indices: Vec<usize>,
    /// Terms of the minor other than the diagonal one.
    pub terms: usize,
    /// Of those, terms with a factor in `q`.
    pub killed: usize,
    /// Standard products the remaining terms straighten to.
    pub earlier: Vec<Vec<usize>>,
    /// Every remaining term straightens to a lexicographically smaller product.
    pub descends: bool,
}

/// Replays the induction: expand the minor on `i_1 < ⋯ < i_s`, straighten
/// every off-diagonal term, and require each to land strictly below.
pub fn lex_induction(shape: Shape) -> Result<Vec<LexStep>> {
    let perms = permutations(shape.s);
    let mut steps = Vec::new();
    for ix in shape.standard_indices() {
        let mut step = LexStep {
            indices: ix.clone(),
            terms: 0,
            killed: 0,
            earlier: Vec::new(),
            descends: true,
        };
        for (perm, _) in &perms {
            let factors: Vec<Entry> = perm
                .iter()
                .zip(&ix)
                .map(|(&r, &c)| Entry { row: r + 1, col: c })
                .collect();
            let st = straighten(shape, &factors)?;
            let identity = perm.iter().enumerate().all(|(a, &b)| a == b);
            if identity {
                let lands = match &st.standard_indices {
                    Some(j) => *j == ix,
                    None => true,
                };
                if !lands {
                    step.descends = false;
                }
                continue;
            }
            step.terms += 1;
            match st.standard_indices {
                None => step.killed += 1,
                Some(j) => {
                    if j >= ix {
                        step.descends = false;
                    }
                    if !step.earlier.contains(&j) {
                        step.earlier.push(j);
                    }
                }
            }
        }
        step.earlier.sort();
        steps.push(step);
    }
    Ok(steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerEquality {
    /// `I^s = q I^{s-1}` in the truncation.
    pub linear_algebra: bool,
    /// The lexicographic induction closes.
    pub symbolic: bool,
    pub steps: Vec<LexStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    /// Smallest `n` with `m^{n+1} = q m^n`.
    pub reduction_number: Option<usize>,
    pub top_power_equal: bool,
    /// `m^{s-1} ≠ q m^{s-2}`.
    pub previous_power_differs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantalHilbert {
    /// `ℓ(A/m^{n+1})` measured in the truncation.
    pub measured: Vec<usize>,
    /// Exact numerator coefficients over the measured range.
    pub h_prefix: Vec<i64>,
    /// `h_k = 0` for `r < k` throughout the measured range.
    pub h_terminates: bool,
    pub h_vector: Vec<i64>,
    pub coefficients: Vec<i64>,
    /// Binomial fit on the table continued through `h` agrees with `coefficients`.
    pub fit_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantalReport {
    pub tool: String,
    pub version: String,
    pub shape: Shape,
    pub dimension: usize,
    pub truncation_order: usize,
    pub presentation: String,
    pub q_generators: Vec<String>,
    pub parameter_count_matches: bool,
    pub straightening: StraighteningAudit,
    pub power_equality: PowerEquality,
    pub valabrega_valla: Vec<VvEntry>,
    pub associated_graded_cohen_macaulay: bool,
    pub reduction: ReductionCheck,
    pub hilbert: DeterminantalHilbert,
    pub filtration: FiltrationLengths,
    pub hypotheses: HypothesisFlags,
    pub verdicts: Vec<TheoremVerdict>,
    pub outcome: Outcome,
}

impl DeterminantalReport {
    /// Every structural check passed.
    pub fn all_checks_pass(&self) -> bool {
        self.parameter_count_matches
            && self.straightening.certified()
            && self.power_equality.linear_algebra
            && self.power_equality.symbolic
            && self.associated_graded_cohen_macaulay
            && self.reduction.reduction_number == Some(self.shape.s - 1)
            && self.reduction.top_power_equal
            && self.reduction.previous_power_differs
            && self.hilbert.h_terminates
            && self.hilbert.fit_agrees
    }
}

/// Builds the instance and runs every check at truncation order `order`.
pub fn verify_shape(shape: Shape, characteristic: u32, order: usize, n_max: usize) -> Result<DeterminantalReport> {
    let s = shape.s;
    if order < s + 2 {
        return Err(Error::domain(format!("truncation order {order} is below s + 2 = {}", s + 2)));
    }
    let pres = shape.presentation(characteristic)?;
    let field = pres.field();
    let names = pres.variables.clone();
    let mut wb = Workbench::new(&pres, order, order)?;
    let q_polys = shape.parameter_generators(field);
    let parameter_count_matches = q_polys.len() == shape.dimension();
    let m = wb.maximal();
    let q = wb.ideal(&q_polys)?;

    let m_top = wb.power(&m, s)?;
    let m_prev = wb.power(&m, s - 1)?;
    let q_top = wb.product(&q, &m_prev)?;
    let linear_algebra = wb.equals(&m_top, &q_top)?;
    let steps = lex_induction(shape)?;
    let symbolic = steps.iter().all(|st| st.descends);
    if linear_algebra != symbolic {
        return Err(Error::Invariant(format!(
            "I^s = qI^(s-1) is {linear_algebra} by linear algebra but {symbolic} by straightening"
        )));
    }
    let straightening = audit_straightening(shape, field, &q_top)?;

    let m_prev2 = wb.power(&m, s - 2)?;
    let q_prev = wb.product(&q, &m_prev2)?;
    let previous_power_differs = !wb.equals(&m_prev, &q_prev)?;
    let reduction_number = check_reduction(&mut wb, &m, &q, n_max)?;
    let reduction = ReductionCheck {
        reduction_number,
        top_power_equal: linear_algebra,
        previous_power_differs,
    };
    let r = reduction_number.unwrap_or(s - 1);

    let powers = Powers::new(&mut wb, m.clone());
    let mut tower = Tower::new(powers, q.clone());
    let valabrega_valla = tower.vv_table(&mut wb, r, n_max)?;
    let associated_graded_cohen_macaulay = valabrega_valla.iter().all(|e| e.holds);
    let filtration = tower.filtration_lengths(&mut wb, (r + 2).min(order - 2).max(2))?;
    let hypotheses = tower.hypotheses(&mut wb, Closedness::Verified)?;

    let d = shape.dimension();
    let host = wb.host().clone();
    let measured: Vec<usize> = (0..order).map(|n| host.std_offset(n + 1)).collect();
    let prefix = h_prefix(&measured, d);
    // with G(m) Cohen-Macaulay and m^{r+1} = q m^r, h vanishes past r
    let h_terminates = associated_graded_cohen_macaulay
        && reduction_number.is_some()
        && prefix.iter().skip(r + 1).all(|&v| v == 0);
    let mut h_vector: Vec<i64> = prefix.iter().take(r + 1).copied().collect();
    while h_vector.len() > 1 && *h_vector.last().unwrap() == 0 {
        h_vector.pop();
    }
    let coefficients = coefficients_from_h(&h_vector, d);
    let extended: Vec<usize> = table_from_h(&h_vector, d, r + 2 * d + 1)
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let fit = fit_coefficients(&extended, d, r);
    let fit_agrees = matches!(&fit, Ok((c, _, _)) if *c == coefficients);
    let (fit_window, validation_window) = match fit {
        Ok((_, f, v)) => (f, v),
        Err(_) => (Window { start: r, end: r + d }, Window { start: r + d + 1, end: r + 2 * d }),
    };
    let hilbert = DeterminantalHilbert {
        measured: measured.clone(),
        h_prefix: prefix,
        h_terminates,
        h_vector: h_vector.clone(),
        coefficients: coefficients.clone(),
        fit_agrees,
    };

    let datum = HilbertDatum {
        table: measured,
        coefficients,
        fit_window,
        validation_window,
        h_vector: Some(h_vector),
    };
    let measurements = Measurements {
        d,
        cohen_macaulay: true,
        hilbert: &datum,
        lengths: &filtration,
        flags: hypotheses,
        reduction_number: r,
    };
    let mut verdicts = verdicts_for_ideal(&measurements);
    verdicts.push(verdict_embedding_dimension(&measurements, shape.nvars()));

    let mut report = DeterminantalReport {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        shape,
        dimension: d,
        truncation_order: wb.host().order(),
        presentation: pres.to_text(),
        q_generators: q_polys.iter().map(|p| p.fmt_with(&names)).collect(),
        parameter_count_matches,
        straightening,
        power_equality: PowerEquality {
            linear_algebra,
            symbolic,
            steps,
        },
        valabrega_valla,
        associated_graded_cohen_macaulay,
        reduction,
        hilbert,
        filtration,
        hypotheses,
        verdicts,
        outcome: Outcome::Consistent,
    };
    report.outcome = match Outcome::of(&report.verdicts) {
        Outcome::Consistent if !report.all_checks_pass() => Outcome::Violation,
        o => o,
    };
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPowerEntry {
    pub i: usize,
    pub j: usize,
    pub holds: bool,
}

/// `I^i ∩ J^j = I^i J^j` for `I`, `J` generated by disjoint groups of
/// variables of a polynomial ring, modulo `m^L` with `L = i_max + j_max + 2`.
pub fn verify_split_powers(x_vars: usize, y_vars: usize, i_max: usize, j_max: usize) -> Result<Vec<SplitPowerEntry>> {
    if x_vars == 0 || y_vars == 0 {
        return Err(Error::domain("both variable groups must be nonempty"));
    }
    let names: Vec<String> = (1..=x_vars)
        .map(|k| format!("x{k}"))
        .chain((1..=y_vars).map(|k| format!("y{k}")))
        .collect();
    let text = format!(
        "vars: {}\ndim: {}\ncm: true\nideal: {}\n",
        names.join(", "),
        names.len(),
        names.join(", ")
    );
    let pres = RingPresentation::parse(&text)?;
    let field = pres.field();
    let n = names.len();
    let order = i_max + j_max + 2;
    let mut wb = Workbench::new(&pres, order, order)?;
    let xs: Vec<Polynomial> = (0..x_vars).map(|k| Polynomial::variable(field, n, k)).collect();
    let ys: Vec<Polynomial> = (x_vars..n).map(|k| Polynomial::variable(field, n, k)).collect();
    let i = wb.ideal(&xs)?;
    let j = wb.ideal(&ys)?;
    let mut out = Vec::new();
    for a in 0..=i_max {
        let ia = wb.power(&i, a)?;
        for b in 0..=j_max {
            let jb = wb.power(&j, b)?;
            let meet = wb.intersect(&ia, &jb)?;
            let prod = wb.product(&ia, &jb)?;
            out.push(SplitPowerEntry {
                i: a,
                j: b,
                holds: wb.equals(&meet, &prod)?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(row: usize, col: usize) -> Entry {
        Entry { row, col }
    }

    #[test]
    fn shapes() {
        assert!(matches!(Shape::new(1, 3), Err(Error::Domain(_))));
        assert!(matches!(Shape::new(3, 2), Err(Error::Domain(_))));
        assert!(matches!(Shape::new(2, 5), Err(Error::Refusal { .. })));
        let sh = Shape::new(3, 3).unwrap();
        assert_eq!(sh.dimension(), 8);
        assert_eq!(sh.parameter_generators(PrimeField::default_field()).len(), 8);
        assert_eq!(sh.minors(PrimeField::default_field())[0].terms().len(), 6);
    }

    #[test]
    fn parameter_ideal_of_two_by_three() {
        let sh = Shape::new(2, 3).unwrap();
        let names = sh.variable_names();
        let gens: Vec<String> = sh
            .parameter_generators(PrimeField::default_field())
            .iter()
            .map(|p| p.fmt_with(&names))
            .collect();
        assert_eq!(gens, vec!["x21", "x13", "-x11 + x22", "-x12 + x23"]);
        let sh = Shape::new(2, 2).unwrap();
        assert_eq!(sh.parameter_generators(PrimeField::default_field()).len(), 3);
    }

    #[test]
    fn straightening_examples() {
        let sh = Shape::new(2, 3).unwrap();
        let st = straighten(sh, &[e(2, 1), e(1, 2)]).unwrap();
        assert_eq!(st.status, StraightenStatus::InQI);
        let st = straighten(sh, &[e(1, 1), e(1, 2)]).unwrap();
        assert_eq!(st.standard_indices, Some(vec![1, 3]));
        assert_eq!(
            st.moves,
            vec![Move::Shift {
                from: e(1, 2),
                to: e(2, 3)
            }]
        );
        let st = straighten(sh, &[e(1, 1), e(2, 2)]).unwrap();
        assert_eq!(st.standard_indices, Some(vec![1, 2]));
        assert!(straighten(sh, &[e(1, 1)]).is_err());
        assert!(straighten(sh, &[e(1, 1), e(3, 1)]).is_err());
    }

    #[test]
    fn induction_descends() {
        for (s, t) in [(2, 2), (2, 3), (2, 4), (3, 3)] {
            let steps = lex_induction(Shape::new(s, t).unwrap()).unwrap();
            assert!(steps.iter().all(|st| st.descends), "{s}x{t}");
        }
    }
}
