//! Minimal reductions, reduction numbers and the lengths along
//! `I^{n+1} ⊇ Q^{n-1}I^2 ⊇ Q^n I`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{ColengthCertificate, IdealSubspace, Polynomial, Workbench};
use crate::error::{Error, Result};

/// `I^0, I^1, …`, extended on demand.
#[derive(Debug)]
pub struct Powers {
    list: Vec<IdealSubspace>,
}

impl Powers {
    pub fn new(wb: &mut Workbench, base: IdealSubspace) -> Powers {
        Powers {
            list: vec![wb.unit(), base],
        }
    }

    pub fn base(&self) -> &IdealSubspace {
        &self.list[1]
    }

    pub fn get(&mut self, wb: &mut Workbench, n: usize) -> Result<&IdealSubspace> {
        while self.list.len() <= n {
            let next = wb.product(self.list.last().unwrap(), &self.list[1])?;
            self.list.push(next);
        }
        Ok(&self.list[n])
    }
}

fn label(q: usize, i: usize) -> String {
    let part = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{e}"),
    };
    match (part("Q", q), part("I", i)) {
        (a, b) if a.is_empty() && b.is_empty() => "A".into(),
        (a, b) if a.is_empty() => b,
        (a, b) if b.is_empty() => a,
        (a, b) => format!("{a}*{b}"),
    }
}

/// A colength tagged with the ideal it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCertificate {
    pub ideal: String,
    pub value: usize,
    pub stabilized_at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionDatum {
    pub q_generators: Vec<String>,
    pub reduction_number: usize,
    pub seed: u64,
    pub attempts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closedness {
    /// Checked through the Newton polyhedron, or `I = m`.
    Verified,
    Asserted,
    Refuted,
    Undecided,
}

impl Closedness {
    pub fn usable(self) -> bool {
        matches!(self, Closedness::Verified | Closedness::Asserted)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    pub integrally_closed: Closedness,
    pub i4_eq_qi3: bool,
    pub mi3_in_qi2: bool,
    pub q_cap_i2_eq_qi: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VvMethod {
    Direct,
    ByReduction,
}

/// One entry of the table `n ↦ [Q ∩ I^{n+1} = QI^n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VvEntry {
    pub n: usize,
    pub holds: bool,
    pub method: VvMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedLength {
    pub n: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationLengths {
    pub len_i2_qi: usize,
    pub len_i3_qi2: usize,
    /// `ℓ(I^{n+1}/Q^{n-1}I^2)` for `n ≥ 2`.
    pub len_c: Vec<IndexedLength>,
    /// `ℓ(Q^{n-1}I^2/Q^n I)` for `n ≥ 1`.
    pub len_l: Vec<IndexedLength>,
}

impl FiltrationLengths {
    /// `ℓ(C_n)`, zero for `n < 2`.
    pub fn c(&self, n: usize) -> Option<usize> {
        if n < 2 {
            return Some(0);
        }
        self.len_c.iter().find(|e| e.n == n).map(|e| e.length)
    }
}

/// An ideal `I`, a candidate reduction `Q ⊆ I` and the products built from
/// them so far.
#[derive(Debug)]
pub struct Tower {
    powers: Powers,
    q: IdealSubspace,
    q_times_power: Vec<IdealSubspace>,
    q_power_times_i2: Vec<IdealSubspace>,
    q_power_times_i: Vec<IdealSubspace>,
    certificates: Vec<NamedCertificate>,
}

impl Tower {
    pub fn new(powers: Powers, q: IdealSubspace) -> Tower {
        Tower {
            powers,
            q,
            q_times_power: Vec::new(),
            q_power_times_i2: Vec::new(),
            q_power_times_i: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn into_powers(self) -> Powers {
        self.powers
    }

    pub fn i(&self) -> &IdealSubspace {
        self.powers.base()
    }

    pub fn q(&self) -> &IdealSubspace {
        &self.q
    }

    /// Every colength computed so far, in the order first asked for.
    pub fn certificates(&self) -> &[NamedCertificate] {
        &self.certificates
    }

    fn record(&mut self, name: String, k: &IdealSubspace) -> Result<usize> {
        let ColengthCertificate {
            value,
            stabilized_at,
        } = k.colength()?;
        if let Some(old) = self.certificates.iter().find(|c| c.ideal == name) {
            if old.value != value {
                return Err(Error::Invariant(format!(
                    "colength of {name} changed from {} to {value}",
                    old.value
                )));
            }
        } else {
            self.certificates.push(NamedCertificate {
                ideal: name,
                value,
                stabilized_at,
            });
        }
        Ok(value)
    }

    pub fn power(&mut self, wb: &mut Workbench, n: usize) -> Result<IdealSubspace> {
        Ok(self.powers.get(wb, n)?.clone())
    }

    /// `ℓ(A/I^n)`.
    pub fn power_colength(&mut self, wb: &mut Workbench, n: usize) -> Result<usize> {
        let k = self.power(wb, n)?;
        self.record(label(0, n), &k)
    }

    /// `QI^n`.
    pub fn q_times_power(&mut self, wb: &mut Workbench, n: usize) -> Result<IdealSubspace> {
        while self.q_times_power.len() <= n {
            let k = self.q_times_power.len();
            let p = self.power(wb, k)?;
            let next = wb.product(&self.q, &p)?;
            self.q_times_power.push(next);
        }
        Ok(self.q_times_power[n].clone())
    }

    pub fn q_times_power_colength(&mut self, wb: &mut Workbench, n: usize) -> Result<usize> {
        let k = self.q_times_power(wb, n)?;
        self.record(label(1, n), &k)
    }

    /// `Q^{n-1}I^2` for `n ≥ 1`.
    pub fn q_power_times_i2(&mut self, wb: &mut Workbench, n: usize) -> Result<IdealSubspace> {
        assert!(n >= 1);
        if self.q_power_times_i2.is_empty() {
            let i2 = self.power(wb, 2)?;
            self.q_power_times_i2.push(i2);
        }
        while self.q_power_times_i2.len() < n {
            let next = wb.product(&self.q, self.q_power_times_i2.last().unwrap())?;
            self.q_power_times_i2.push(next);
        }
        Ok(self.q_power_times_i2[n - 1].clone())
    }

    /// `Q^n I`.
    pub fn q_power_times_i(&mut self, wb: &mut Workbench, n: usize) -> Result<IdealSubspace> {
        if self.q_power_times_i.is_empty() {
            let i = self.i().clone();
            self.q_power_times_i.push(i);
        }
        while self.q_power_times_i.len() <= n {
            let next = wb.product(&self.q, self.q_power_times_i.last().unwrap())?;
            self.q_power_times_i.push(next);
        }
        Ok(self.q_power_times_i[n].clone())
    }

    /// The least `n ≤ n_max` with `I^{n+1} = QI^n`, or `None`.
    pub fn reduction_number(&mut self, wb: &mut Workbench, n_max: usize) -> Result<Option<usize>> {
        let i = self.i().clone();
        if !wb.contains(&i, &self.q)? {
            return Err(Error::domain("Q is not contained in I"));
        }
        if !self.q.is_certified() {
            return Ok(None);
        }
        for n in 0..=n_max {
            // QI^n ⊆ I^{n+1}, so equal colengths mean equal ideals
            let a = self.power_colength(wb, n + 1)?;
            let b = self.q_times_power_colength(wb, n)?;
            if a == b {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// `n ↦ [Q ∩ I^{n+1} = QI^n]` for `0 ≤ n ≤ n_max`; entries past the
    /// reduction number `r` hold because `I^{n+1} = QI^n ⊆ Q` there.
    pub fn vv_table(&mut self, wb: &mut Workbench, r: usize, n_max: usize) -> Result<Vec<VvEntry>> {
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            if n > r {
                out.push(VvEntry {
                    n,
                    holds: true,
                    method: VvMethod::ByReduction,
                });
                continue;
            }
            out.push(VvEntry {
                n,
                holds: self.vv_holds(wb, n)?,
                method: VvMethod::Direct,
            });
        }
        Ok(out)
    }

    fn vv_holds(&mut self, wb: &mut Workbench, n: usize) -> Result<bool> {
        let p = self.power(wb, n + 1)?;
        let meet = wb.intersect(&self.q, &p)?;
        let qi = self.q_times_power(wb, n)?;
        // QI^n ⊆ Q ∩ I^{n+1}
        Ok(meet.colength()?.value == qi.colength()?.value)
    }

    pub fn hypotheses(&mut self, wb: &mut Workbench, closed: Closedness) -> Result<HypothesisFlags> {
        let i4 = self.power_colength(wb, 4)?;
        let qi3 = self.q_times_power_colength(wb, 3)?;
        let m = wb.maximal();
        let i3 = self.power(wb, 3)?;
        let mi3 = wb.product(&m, &i3)?;
        let qi2 = self.q_times_power(wb, 2)?;
        let mi3_in_qi2 = wb.contains(&qi2, &mi3)?;
        Ok(HypothesisFlags {
            integrally_closed: closed,
            i4_eq_qi3: i4 == qi3,
            mi3_in_qi2,
            q_cap_i2_eq_qi: self.vv_holds(wb, 1)?,
        })
    }

    /// All filtration lengths for `n ≤ n_hi`.
    pub fn filtration_lengths(&mut self, wb: &mut Workbench, n_hi: usize) -> Result<FiltrationLengths> {
        let diff = |big: usize, small: usize, what: &str| {
            small.checked_sub(big).ok_or_else(|| {
                Error::Invariant(format!("negative length for {what}: {small} - {big}"))
            })
        };
        let i2 = self.power_colength(wb, 2)?;
        let qi = self.q_times_power_colength(wb, 1)?;
        let i3 = self.power_colength(wb, 3)?;
        let qi2 = self.q_times_power_colength(wb, 2)?;
        let len_i2_qi = diff(i2, qi, "I^2/QI")?;
        let len_i3_qi2 = diff(i3, qi2, "I^3/QI^2")?;
        let mut len_c = Vec::new();
        let mut len_l = Vec::new();
        for n in 1..=n_hi.max(1) {
            let k = self.q_power_times_i2(wb, n)?;
            let mid = self.record(label(n - 1, 2), &k)?;
            let k = self.q_power_times_i(wb, n)?;
            let low = self.record(label(n, 1), &k)?;
            len_l.push(IndexedLength {
                n,
                length: diff(mid, low, &format!("L_{n}"))?,
            });
            if n >= 2 {
                let top = self.power_colength(wb, n + 1)?;
                len_c.push(IndexedLength {
                    n,
                    length: diff(top, mid, &format!("C_{n}"))?,
                });
            }
        }
        Ok(FiltrationLengths {
            len_i2_qi,
            len_i3_qi2,
            len_c,
            len_l,
        })
    }
}

/// A random `k`-linear combination of `polys` with nonzero coefficients.
fn combination(polys: &[Polynomial], rng: &mut ChaCha8Rng) -> Polynomial {
    let field = polys[0].field();
    let mut out = Polynomial::zero(field, polys[0].nvars());
    for p in polys {
        let c = rng.gen_range(1..field.p());
        out = out.add(&p.scale(c));
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct ReductionSearch {
    pub seed: u64,
    pub max_attempts: usize,
    pub n_max: usize,
}

/// Draws `Q` as `d` random combinations of `generators` until one is a
/// reduction of `I` with reduction number at most `n_max`.
pub fn find_minimal_reduction(
    wb: &mut Workbench,
    mut powers: Powers,
    generators: &[Polynomial],
    d: usize,
    search: ReductionSearch,
) -> Result<(Tower, ReductionDatum)> {
    if generators.is_empty() {
        return Err(Error::domain("the ideal has no generators"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for attempt in 1..=search.max_attempts {
        let q_polys: Vec<Polynomial> = (0..d).map(|_| combination(generators, &mut rng)).collect();
        let q = wb.ideal(&q_polys)?;
        let mut tower = Tower::new(powers, q);
        match tower.reduction_number(wb, search.n_max)? {
            Some(r) => {
                let names = wb.presentation().variables.clone();
                let datum = ReductionDatum {
                    q_generators: q_polys.iter().map(|p| p.fmt_with(&names)).collect(),
                    reduction_number: r,
                    seed: search.seed,
                    attempts: attempt,
                };
                return Ok((tower, datum));
            }
            None => powers = tower.into_powers(),
        }
    }
    Err(Error::NoReduction {
        n_max: search.n_max,
        attempts: search.max_attempts,
    })
}

/// The reduction number of `Q` as a reduction of `I`, if at most `n_max`.
pub fn check_reduction(
    wb: &mut Workbench,
    i: &IdealSubspace,
    q: &IdealSubspace,
    n_max: usize,
) -> Result<Option<usize>> {
    let powers = Powers::new(wb, i.clone());
    Tower::new(powers, q.clone()).reduction_number(wb, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingPresentation;

    fn bench(gens: &str) -> (Workbench, Vec<Polynomial>) {
        let p = RingPresentation::parse(&format!("vars: x, y\ndim: 2\nideal: {gens}\n")).unwrap();
        let polys = p.ideal_polynomials().unwrap();
        (Workbench::new(&p, 8, 40).unwrap(), polys)
    }

    fn ideal(wb: &mut Workbench, text: &str) -> IdealSubspace {
        let names = wb.presentation().variables.clone();
        let field = wb.presentation().field();
        let polys: Vec<Polynomial> = text
            .split(',')
            .map(|t| crate::algebra::Expr::parse(t).unwrap().to_polynomial(field, &names).unwrap())
            .collect();
        wb.ideal(&polys).unwrap()
    }

    #[test]
    fn labels() {
        assert_eq!(label(0, 0), "A");
        assert_eq!(label(1, 0), "Q");
        assert_eq!(label(0, 3), "I^3");
        assert_eq!(label(2, 1), "Q^2*I");
        assert_eq!(label(1, 2), "Q*I^2");
    }

    #[test]
    fn square_of_maximal_ideal() {
        let (mut wb, polys) = bench("x^2, x*y, y^2");
        let i = wb.ideal(&polys).unwrap();
        let powers = Powers::new(&mut wb, i);
        let search = ReductionSearch {
            seed: 7,
            max_attempts: 8,
            n_max: 6,
        };
        let (mut tower, datum) = find_minimal_reduction(&mut wb, powers, &polys, 2, search).unwrap();
        assert_eq!(datum.reduction_number, 1);
        assert_eq!(datum.q_generators.len(), 2);
        // direct expansion: I^2 = QI
        let i2 = tower.power(&mut wb, 2).unwrap();
        let qi = tower.q_times_power(&mut wb, 1).unwrap();
        assert!(wb.equals(&i2, &qi).unwrap());
        let f = tower.filtration_lengths(&mut wb, 4).unwrap();
        assert_eq!(f.len_i2_qi, 0);
        assert!(f.len_c.iter().all(|e| e.length == 0));
    }

    #[test]
    fn explicit_reductions() {
        let (mut wb, _) = bench("x^2, x*y, y^2");
        let i = ideal(&mut wb, "x^2, x*y, y^2");
        let q = ideal(&mut wb, "x^2, y^2");
        assert_eq!(check_reduction(&mut wb, &i, &q, 5).unwrap(), Some(1));
        assert_eq!(check_reduction(&mut wb, &i, &i, 5).unwrap(), Some(0));
        let q = ideal(&mut wb, "x^3, y^3");
        assert_eq!(check_reduction(&mut wb, &i, &q, 4).unwrap(), None);
        let q = ideal(&mut wb, "x, y^2");
        assert!(matches!(check_reduction(&mut wb, &i, &q, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn parameter_ideal_is_its_own_reduction() {
        let (mut wb, polys) = bench("x^2, y^3");
        let i = wb.ideal(&polys).unwrap();
        let powers = Powers::new(&mut wb, i);
        let search = ReductionSearch {
            seed: 1,
            max_attempts: 8,
            n_max: 6,
        };
        let (mut tower, datum) = find_minimal_reduction(&mut wb, powers, &polys, 2, search).unwrap();
        assert_eq!(datum.reduction_number, 0);
        let vv = tower.vv_table(&mut wb, 0, 3).unwrap();
        assert!(vv.iter().all(|e| e.holds));
        assert_eq!(vv[0].method, VvMethod::Direct);
        assert_eq!(vv[3].method, VvMethod::ByReduction);
    }

    #[test]
    fn non_closed_monomial_ideal() {
        // (x^4, x y^3, y^4): reduction number 2 for generic Q
        let (mut wb, polys) = bench("x^4, x*y^3, y^4");
        let i = wb.ideal(&polys).unwrap();
        let powers = Powers::new(&mut wb, i);
        let search = ReductionSearch {
            seed: 3,
            max_attempts: 8,
            n_max: 6,
        };
        let (mut tower, datum) = find_minimal_reduction(&mut wb, powers, &polys, 2, search).unwrap();
        let r = datum.reduction_number;
        let flags = tower.hypotheses(&mut wb, Closedness::Undecided).unwrap();
        assert!(flags.i4_eq_qi3 == (r <= 3));
        let f = tower.filtration_lengths(&mut wb, 5).unwrap();
        assert_eq!(f.c(2), Some(f.len_i3_qi2));
        // e0 = 16; the length identity ℓ(I²/QI) = e0 + (d-1)ℓ(A/I) - ℓ(I/I²)
        let a_i = tower.power_colength(&mut wb, 1).unwrap();
        let a_i2 = tower.power_colength(&mut wb, 2).unwrap();
        assert_eq!(f.len_i2_qi + (a_i2 - a_i), 16 + a_i);
    }
}
