//! Ideals of `A/m^N` as subspaces closed under multiplication by variables.
//!
//! An ideal is *certified* once its closure reaches a degree `c` where every
//! standard monomial of degree `c` is a pivot. Then `m^c ⊆ K + m^{c+1}`, so
//! `m^c ⊆ K` by Nakayama's lemma and the truncated data describe `K` exactly:
//! the span over degrees `< c` plus the implicit `m^c`. Certified ideals can
//! be moved to a deeper truncation without recomputation.
//!
//! Ideals whose closure never stabilizes are kept at their truncation level
//! `L`; they describe `K + m^L`, and operations on them are exact only modulo
//! `m^L`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::poly::Polynomial;
use crate::algebra::truncation::TruncatedLocalAlgebra;
use crate::error::{Error, Result};
use crate::kernel::echelon::{EchelonSubspace, Reducer};
use crate::kernel::sparse::{Accumulator, SparseVec};

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    pub stop_at_stabilization: bool,
}

#[derive(Debug)]
pub struct ClosureOutcome {
    pub span: EchelonSubspace,
    /// Indices of the seeds that enlarged the span when processed.
    pub accepted: Vec<usize>,
    pub stabilized_at: Option<usize>,
}

/// Smallest subspace of `A/m^level` containing `seeds` and closed under every
/// variable, processed by ascending order of vanishing.
pub fn closure(
    host: &TruncatedLocalAlgebra,
    seeds: &[SparseVec],
    level: usize,
    opts: ClosureOptions,
) -> Result<ClosureOutcome> {
    if level > host.order() {
        return Err(Error::TruncationExhausted {
            required: level,
            ceiling: host.order(),
        });
    }
    let limit = host.std_offset(level);
    let field = host.field();
    let order_of = |v: &SparseVec| host.std_degree(v.leading().unwrap().0 as usize);
    let mut buckets: Vec<Vec<(SparseVec, usize)>> = vec![Vec::new(); level];
    for (k, s) in seeds.iter().enumerate() {
        let t = s.truncated(limit);
        if !t.is_zero() {
            buckets[order_of(&t)].push((t, k));
        }
    }
    let mut span = EchelonSubspace::new(field, limit);
    let mut reducer = Reducer::new(field, limit);
    let mut acc = Accumulator::new(field, host.dimension());
    let mut accepted = Vec::new();
    let mut stabilized_at = None;
    for n in 0..level {
        let items = std::mem::take(&mut buckets[n]);
        for (v, tag) in items {
            let r = reducer.reduce(&span, &v);
            if r.is_zero() {
                continue;
            }
            if tag != usize::MAX {
                accepted.push(tag);
            }
            span.push_reduced(r);
            let row = span.rows().last().unwrap().clone();
            for i in 0..host.nvars() {
                let w = host.mul_var(i, &row, limit, &mut acc);
                if !w.is_zero() {
                    buckets[order_of(&w)].push((w, usize::MAX));
                }
            }
        }
        let lo = host.std_offset(n);
        let hi = host.std_offset(n + 1);
        if opts.stop_at_stabilization && span.pivots_in_range(lo, hi) == hi - lo {
            stabilized_at = Some(n);
            break;
        }
    }
    if let Some(c) = stabilized_at {
        span = span.restrict(host.std_offset(c));
    }
    Ok(ClosureOutcome {
        span,
        accepted,
        stabilized_at,
    })
}

/// `ℓ(A/K)` together with the degree `c` at which `m^c ⊆ K` was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColengthCertificate {
    pub value: usize,
    pub stabilized_at: usize,
}

#[derive(Clone, Debug)]
pub struct IdealSubspace {
    host: Arc<TruncatedLocalAlgebra>,
    generators: Vec<SparseVec>,
    span: EchelonSubspace,
    level: usize,
    certified: bool,
}

impl IdealSubspace {
    /// The ideal generated by `seeds`, computed in `A/m^level`.
    pub fn from_seeds(
        host: &Arc<TruncatedLocalAlgebra>,
        seeds: &[SparseVec],
        level: usize,
    ) -> Result<IdealSubspace> {
        let out = closure(
            host,
            seeds,
            level,
            ClosureOptions {
                stop_at_stabilization: true,
            },
        )?;
        let (level, certified) = match out.stabilized_at {
            Some(c) => (c, true),
            None => (level, false),
        };
        // certified generators only matter modulo m^{c+1} ⊆ mK
        let precision = host.std_offset(if certified { level + 1 } else { level });
        let generators = out
            .accepted
            .iter()
            .map(|&k| seeds[k].truncated(precision))
            .collect();
        Ok(IdealSubspace {
            host: host.clone(),
            generators,
            span: out.span,
            level,
            certified,
        })
    }

    pub fn from_polynomials(
        host: &Arc<TruncatedLocalAlgebra>,
        polys: &[Polynomial],
    ) -> Result<IdealSubspace> {
        let seeds: Vec<SparseVec> = polys
            .iter()
            .map(|p| host.normal_form(p))
            .collect::<Result<_>>()?;
        Self::from_seeds(host, &seeds, host.order())
    }

    pub fn unit(host: &Arc<TruncatedLocalAlgebra>) -> IdealSubspace {
        Self::from_seeds(host, &[host.one()], host.order()).expect("order >= 2")
    }

    pub fn maximal(host: &Arc<TruncatedLocalAlgebra>) -> IdealSubspace {
        let vars: Vec<SparseVec> = (0..host.nvars()).map(|i| host.variable(i)).collect();
        Self::from_seeds(host, &vars, host.order()).expect("order >= 2")
    }

    pub fn zero(host: &Arc<TruncatedLocalAlgebra>) -> IdealSubspace {
        Self::from_seeds(host, &[], host.order()).expect("order >= 2")
    }

    pub fn host(&self) -> &Arc<TruncatedLocalAlgebra> {
        &self.host
    }

    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    pub fn generator_polynomials(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|g| self.host.to_polynomial(g))
            .collect()
    }

    /// The span over degrees below [`level`](Self::level).
    pub fn span(&self) -> &EchelonSubspace {
        &self.span
    }

    /// For a certified ideal, the least `c` with `m^c ⊆ K`; otherwise the
    /// truncation level the ideal was computed at.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Deepest level at which this ideal can be viewed on its host.
    fn reach(&self) -> usize {
        if self.certified {
            self.host.order()
        } else {
            self.level
        }
    }

    /// The ideal modulo `m^level` as a subspace of `A/m^level`.
    pub fn span_at(&self, level: usize) -> Result<EchelonSubspace> {
        if level > self.reach() {
            return Err(Error::TruncationExhausted {
                required: level,
                ceiling: self.reach(),
            });
        }
        if level <= self.level {
            return Ok(self.span.restrict(self.host.std_offset(level)));
        }
        let limit = self.host.std_offset(level);
        let mut out = self.span.with_ambient(limit)?;
        for s in self.host.std_offset(self.level)..limit {
            out.push_reduced(SparseVec::unit(s));
        }
        Ok(out)
    }

    pub fn colength(&self) -> Result<ColengthCertificate> {
        if !self.certified {
            return Err(Error::NotMPrimary { order: self.level });
        }
        Ok(ColengthCertificate {
            value: self.host.std_offset(self.level) - self.span.dimension(),
            stabilized_at: self.level,
        })
    }

    fn same_host(&self, other: &IdealSubspace) -> Result<()> {
        if Arc::ptr_eq(&self.host, &other.host)
            || (self.host.order() == other.host.order()
                && self.host.presentation().same_ring(other.host.presentation()))
        {
            Ok(())
        } else {
            Err(Error::structural("ideals live on different hosts"))
        }
    }

    /// Truncation level at which a product is guaranteed to certify.
    pub fn product_level(&self, other: &IdealSubspace) -> usize {
        if self.certified && other.certified {
            self.level + other.level + 1
        } else {
            self.reach().min(other.reach())
        }
    }

    /// Largest degree in which a generator starts.
    fn top_generator_degree(&self) -> usize {
        self.generators
            .iter()
            .filter_map(|g| g.leading())
            .map(|(s, _)| self.host.std_degree(s as usize))
            .max()
            .unwrap_or(0)
    }

    /// A level that usually suffices for the product, never above
    /// [`product_level`](Self::product_level).
    pub fn product_level_hint(&self, other: &IdealSubspace) -> usize {
        let bound = self.product_level(other);
        if !(self.certified && other.certified) {
            return bound;
        }
        let guess = (self.level + other.top_generator_degree())
            .max(other.level + self.top_generator_degree())
            + 1;
        guess.min(bound)
    }

    /// The product, computed at the deepest level the host allows up to
    /// [`product_level`](Self::product_level). Fails with
    /// `TruncationExhausted` when certified inputs give an uncertified product
    /// on a host too shallow to be sure.
    pub fn product(&self, other: &IdealSubspace) -> Result<IdealSubspace> {
        self.same_host(other)?;
        if self.certified && self.level == 0 {
            return Ok(other.clone());
        }
        if other.certified && other.level == 0 {
            return Ok(self.clone());
        }
        let bound = self.product_level(other);
        let level = bound.min(self.host.order());
        if level < bound && !(self.certified && other.certified) {
            return Err(Error::TruncationExhausted {
                required: bound,
                ceiling: self.host.order(),
            });
        }
        let limit = self.host.std_offset(level);
        let support = |gens: &[SparseVec]| {
            let mut s: Vec<u32> = gens.iter().flat_map(|g| g.entries().iter().map(|e| e.0)).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let (sa, sb) = (support(&self.generators), support(&other.generators));
        // expand the side with the smaller support as polynomials
        let (left, right, supp) = if sa.len() <= sb.len() {
            (&self.generators, &other.generators, sa)
        } else {
            (&other.generators, &self.generators, sb)
        };
        let mut acc = Accumulator::new(self.host.field(), self.host.dimension());
        let mut seeds = Vec::with_capacity(left.len() * right.len());
        for b in right {
            let memo = self
                .host
                .monomial_multiples(supp.iter().copied(), b, limit, &mut acc);
            for a in left {
                for &(s, c) in a.entries() {
                    acc.add_scaled(&memo[&s], c, limit);
                }
                seeds.push(acc.take());
            }
        }
        let out = Self::from_seeds(&self.host, &seeds, level)?;
        if self.certified && other.certified && !out.certified {
            if level < bound {
                return Err(Error::TruncationExhausted {
                    required: bound,
                    ceiling: self.host.order(),
                });
            }
            return Err(Error::Invariant(
                "product of certified ideals failed to stabilize".into(),
            ));
        }
        Ok(out)
    }

    pub fn power(&self, n: usize) -> Result<IdealSubspace> {
        if n == 0 {
            return Ok(IdealSubspace::unit(&self.host));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &IdealSubspace) -> Result<IdealSubspace> {
        self.same_host(other)?;
        let level = if self.certified && other.certified {
            self.level.min(other.level) + 1
        } else {
            self.reach().min(other.reach())
        };
        let level = level.min(self.host.order());
        let seeds: Vec<SparseVec> = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        Self::from_seeds(&self.host, &seeds, level)
    }

    pub fn intersect(&self, other: &IdealSubspace) -> Result<IdealSubspace> {
        self.same_host(other)?;
        if self.certified && other.certified {
            let c = self.level.max(other.level);
            if c + 1 > self.host.order() {
                return Err(Error::TruncationExhausted {
                    required: c + 1,
                    ceiling: self.host.order(),
                });
            }
            let meet = self.span_at(c)?.intersection(&other.span_at(c)?)?;
            let mut seeds: Vec<SparseVec> = meet.rows().to_vec();
            seeds.extend((self.host.std_offset(c)..self.host.std_offset(c + 1)).map(SparseVec::unit));
            let out = Self::from_seeds(&self.host, &seeds, c + 1)?;
            if !out.certified {
                return Err(Error::Invariant("intersection failed to stabilize".into()));
            }
            return Ok(out);
        }
        let level = self.reach().min(other.reach());
        let meet = self.span_at(level)?.intersection(&other.span_at(level)?)?;
        let out = Self::from_seeds(&self.host, meet.rows(), level)?;
        let expected = if out.certified {
            out.span_at(level)?.dimension()
        } else {
            out.span.dimension()
        };
        if expected != meet.dimension() {
            return Err(Error::Invariant(
                "intersection of ideal subspaces is not closed".into(),
            ));
        }
        Ok(out)
    }

    /// Membership of an element given in host coordinates.
    pub fn contains_vector(&self, v: &SparseVec) -> Result<bool> {
        let limit = self.host.std_offset(self.level);
        self.span.contains(&v.truncated(limit))
    }

    pub fn contains_polynomial(&self, p: &Polynomial) -> Result<bool> {
        self.contains_vector(&self.host.normal_form(p)?)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &IdealSubspace) -> Result<bool> {
        self.same_host(other)?;
        if self.certified && other.certified && other.level < self.level {
            // m^{c(other)} ⊆ other but m^{c(other)} ⊄ self
            return Ok(false);
        }
        let limit = self.host.std_offset(self.level);
        let mut reducer = Reducer::new(self.host.field(), limit);
        Ok(other
            .generators
            .iter()
            .all(|g| reducer.is_member(&self.span, &g.truncated(limit))))
    }

    pub fn equals(&self, other: &IdealSubspace) -> Result<bool> {
        self.same_host(other)?;
        if self.certified && other.certified {
            return Ok(self.level == other.level && self.span.subspace_equal(&other.span)?);
        }
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// The same ideal on a deeper truncation of the same ring.
    pub fn rehost(&self, host: &Arc<TruncatedLocalAlgebra>) -> Result<IdealSubspace> {
        if !host.presentation().same_ring(self.host.presentation()) {
            return Err(Error::structural("rehosting onto a different ring"));
        }
        let need = if self.certified { self.level + 1 } else { self.level };
        if host.order() < need {
            return Err(Error::TruncationExhausted {
                required: need,
                ceiling: host.order(),
            });
        }
        let mut out = self.clone();
        out.host = host.clone();
        Ok(out)
    }

    /// Checks that the span is closed under every variable.
    pub fn verify_closed(&self) -> Result<bool> {
        let limit = self.host.std_offset(self.level);
        let mut acc = Accumulator::new(self.host.field(), self.host.dimension());
        let mut reducer = Reducer::new(self.host.field(), limit);
        for row in self.span.rows() {
            for i in 0..self.host.nvars() {
                let w = self.host.mul_var(i, row, limit, &mut acc);
                if !reducer.is_member(&self.span, &w) {
                    return Ok(false);
                }
            }
        }
        for g in &self.generators {
            if !reducer.is_member(&self.span, &g.truncated(limit)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn describe_generators(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| self.host.fmt_vector(g))
            .collect()
    }
}
