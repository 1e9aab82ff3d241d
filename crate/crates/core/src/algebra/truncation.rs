//! Finite-dimensional models `A/m^N` of a local ring `A = k[x]/(relations)`.
//!
//! Elements are sparse vectors over the standard monomials: the monomials of
//! degree `< N` that are not the lowest-degree leading term of any element of
//! the relation ideal. Standard monomials are ordered by ascending degree, so
//! the prefix of degree `< n` is a basis of `A/m^n` for every `n <= N`, and
//! algebras built at different orders agree on that prefix.

use std::collections::HashMap;

use crate::algebra::ideal::{closure, ClosureOptions};
use crate::algebra::poly::Polynomial;
use crate::algebra::presentation::RingPresentation;
use crate::error::{Error, Result};
use crate::kernel::echelon::{EchelonSubspace, Reducer};
use crate::kernel::field::PrimeField;
use crate::kernel::monomial::{Monomial, MonomialTable};
use crate::kernel::sparse::{Accumulator, SparseVec};

const NOT_STD: u32 = u32::MAX;

#[derive(Debug)]
pub struct TruncatedLocalAlgebra {
    presentation: RingPresentation,
    field: PrimeField,
    order: usize,
    table: MonomialTable,
    relations: EchelonSubspace,
    std_columns: Vec<u32>,
    column_to_std: Vec<u32>,
    std_degree: Vec<u16>,
    std_offsets: Vec<usize>,
    /// `var_table[i][s]` is the normal form of `x_i` times standard monomial `s`.
    var_table: Vec<Vec<SparseVec>>,
    /// For `s != 1`: a variable and a standard monomial whose product is `s`.
    parent: Vec<(u16, u32)>,
}

impl TruncatedLocalAlgebra {
    /// Builds `A/m^order`. Requires `order >= 2`.
    pub fn build(presentation: &RingPresentation, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::domain(format!("truncation order {order} is below 2")));
        }
        presentation.validate()?;
        let field = presentation.field();
        let nvars = presentation.nvars();
        let relations = presentation.relation_polynomials()?;
        let free = Self::polynomial_ring(presentation, order);
        if relations.is_empty() {
            return Ok(free);
        }
        let seeds: Vec<SparseVec> = relations
            .iter()
            .map(|r| free.normal_form(r))
            .collect::<Result<_>>()?;
        let closed = closure(
            &free,
            &seeds,
            order,
            ClosureOptions {
                stop_at_stabilization: false,
            },
        )?;
        let span = closed.span;
        let table = free.table;
        let mut std_columns = Vec::new();
        let mut column_to_std = vec![NOT_STD; table.len()];
        for c in 0..table.len() {
            if !span.has_pivot(c) {
                column_to_std[c] = std_columns.len() as u32;
                std_columns.push(c as u32);
            }
        }
        let mut alg = Self::assemble(
            presentation.clone(),
            field,
            order,
            table,
            span,
            std_columns,
            column_to_std,
        );
        let mut reducer = Reducer::new(field, alg.table.len());
        let mut var_table = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let mut row = Vec::with_capacity(alg.std_columns.len());
            for s in 0..alg.std_columns.len() {
                let m = alg.table.get(alg.std_columns[s] as usize);
                let xm = m.mul(&Monomial::variable(nvars, i));
                if xm.degree() as usize >= order {
                    row.push(SparseVec::new());
                    continue;
                }
                let col = alg.table.index_of(xm.exponents()).unwrap();
                row.push(alg.reduce_column_vector(&mut reducer, &SparseVec::unit(col)));
            }
            var_table.push(row);
        }
        alg.var_table = var_table;
        Ok(alg)
    }

    /// The polynomial ring on the presentation's variables, ignoring relations.
    fn polynomial_ring(presentation: &RingPresentation, order: usize) -> Self {
        let field = presentation.field();
        let nvars = presentation.nvars();
        let table = MonomialTable::new(nvars, order);
        let n = table.len();
        let std_columns: Vec<u32> = (0..n as u32).collect();
        let column_to_std = std_columns.clone();
        let relations = EchelonSubspace::new(field, n);
        let mut alg = Self::assemble(
            presentation.clone(),
            field,
            order,
            table,
            relations,
            std_columns,
            column_to_std,
        );
        let mut var_table = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let mut row = Vec::with_capacity(n);
            let mut e = vec![0u16; nvars];
            for s in 0..n {
                let m = alg.table.get(s);
                if m.degree() as usize + 1 >= order {
                    row.push(SparseVec::new());
                    continue;
                }
                e.copy_from_slice(m.exponents());
                e[i] += 1;
                row.push(SparseVec::unit(alg.table.index_of(&e).unwrap()));
            }
            var_table.push(row);
        }
        alg.var_table = var_table;
        alg
    }

    fn assemble(
        presentation: RingPresentation,
        field: PrimeField,
        order: usize,
        table: MonomialTable,
        relations: EchelonSubspace,
        std_columns: Vec<u32>,
        column_to_std: Vec<u32>,
    ) -> Self {
        let std_degree: Vec<u16> = std_columns
            .iter()
            .map(|&c| table.get(c as usize).degree() as u16)
            .collect();
        let mut std_offsets = vec![0usize; order + 1];
        for d in 0..=order {
            std_offsets[d] = std_degree.partition_point(|&x| (x as usize) < d);
        }
        let mut parent = Vec::with_capacity(std_columns.len());
        for &c in &std_columns {
            let m = table.get(c as usize);
            match m.exponents().iter().position(|&e| e > 0) {
                None => parent.push((0, NOT_STD)),
                Some(i) => {
                    let mut e = m.exponents().to_vec();
                    e[i] -= 1;
                    let pc = table.index_of(&e).unwrap();
                    let ps = column_to_std[pc];
                    // leading terms of the relation ideal are closed under
                    // multiplication, so divisors of standard monomials are standard
                    assert_ne!(ps, NOT_STD, "standard monomials must form an order ideal");
                    parent.push((i as u16, ps));
                }
            }
        }
        TruncatedLocalAlgebra {
            presentation,
            field,
            order,
            table,
            relations,
            std_columns,
            column_to_std,
            std_degree,
            std_offsets,
            var_table: Vec::new(),
            parent,
        }
    }

    fn reduce_column_vector(&self, reducer: &mut Reducer, v: &SparseVec) -> SparseVec {
        let r = reducer.reduce(&self.relations, v);
        SparseVec::from_sorted(
            r.entries()
                .iter()
                .map(|&(c, x)| (self.column_to_std[c as usize], x))
                .collect(),
        )
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.table.nvars()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.presentation.variables
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `dim_k A/m^N`.
    pub fn dimension(&self) -> usize {
        self.std_columns.len()
    }

    pub fn std_monomial(&self, s: usize) -> &Monomial {
        self.table.get(self.std_columns[s] as usize)
    }

    pub fn std_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.std_columns.iter().map(|&c| self.table.get(c as usize))
    }

    #[inline]
    pub fn std_degree(&self, s: usize) -> usize {
        self.std_degree[s] as usize
    }

    /// Number of standard monomials of degree `< d`, i.e. `dim A/m^d`.
    #[inline]
    pub fn std_offset(&self, d: usize) -> usize {
        self.std_offsets[d.min(self.order)]
    }

    /// `dim m^d/m^{d+1}` for `d < N`.
    pub fn std_count_in_degree(&self, d: usize) -> usize {
        self.std_offset(d + 1) - self.std_offset(d)
    }

    pub fn monomial_table(&self) -> &MonomialTable {
        &self.table
    }

    /// The relation ideal's image in `k[x]/(x)^N`, over monomial columns.
    pub fn relation_space(&self) -> &EchelonSubspace {
        &self.relations
    }

    pub fn std_index_of(&self, m: &Monomial) -> Option<usize> {
        let c = self.table.index_of(m.exponents())?;
        match self.column_to_std[c] {
            NOT_STD => None,
            s => Some(s as usize),
        }
    }

    /// Normal form of a polynomial in `A/m^N`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<SparseVec> {
        if p.nvars() != self.nvars() {
            return Err(Error::structural(format!(
                "polynomial has {} variables, algebra has {}",
                p.nvars(),
                self.nvars()
            )));
        }
        if p.field() != self.field {
            return Err(Error::structural("polynomial over a different field"));
        }
        let entries: Vec<(u32, u32)> = p
            .terms()
            .iter()
            .filter(|(m, _)| (m.degree() as usize) < self.order)
            .map(|(m, c)| (self.table.index_of(m.exponents()).unwrap() as u32, *c))
            .collect();
        let v = SparseVec::from_unsorted(self.field, entries);
        let mut reducer = Reducer::new(self.field, self.table.len());
        Ok(self.reduce_column_vector(&mut reducer, &v))
    }

    /// Lifts a vector to a polynomial supported on standard monomials.
    pub fn to_polynomial(&self, v: &SparseVec) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.nvars(),
            v.entries()
                .iter()
                .map(|&(s, c)| (self.std_monomial(s as usize).clone(), c))
                .collect(),
        )
    }

    /// `x_i * v`, dropping every coordinate `>= limit`.
    pub fn mul_var(&self, i: usize, v: &SparseVec, limit: usize, acc: &mut Accumulator) -> SparseVec {
        acc.ensure_len(self.dimension());
        let row = &self.var_table[i];
        for &(s, c) in v.entries() {
            let s = s as usize;
            if self.std_offset(self.std_degree(s) + 1) >= limit {
                break;
            }
            acc.add_scaled(&row[s], c, limit);
        }
        acc.take()
    }

    /// `s * v` for every `s` in `needed` and all of their parents, keyed by
    /// standard index.
    pub(crate) fn monomial_multiples(
        &self,
        needed: impl IntoIterator<Item = u32>,
        v: &SparseVec,
        limit: usize,
        acc: &mut Accumulator,
    ) -> HashMap<u32, SparseVec> {
        let mut want: Vec<u32> = Vec::new();
        let mut seen: HashMap<u32, ()> = HashMap::new();
        let mut stack: Vec<u32> = needed.into_iter().collect();
        while let Some(s) = stack.pop() {
            if seen.insert(s, ()).is_some() {
                continue;
            }
            want.push(s);
            let (_, p) = self.parent[s as usize];
            if p != NOT_STD {
                stack.push(p);
            }
        }
        want.sort_unstable();
        let mut memo: HashMap<u32, SparseVec> = HashMap::with_capacity(want.len());
        for s in want {
            let (var, p) = self.parent[s as usize];
            let value = if p == NOT_STD {
                v.truncated(limit)
            } else if self.std_degree(s as usize) > 0 && self.std_offset(self.std_degree(s as usize)) >= limit {
                SparseVec::new()
            } else {
                let base = &memo[&p];
                self.mul_var(var as usize, base, limit, acc)
            };
            memo.insert(s, value);
        }
        memo
    }

    /// `u * v`, dropping every coordinate `>= limit`.
    pub fn mul_limited(&self, u: &SparseVec, v: &SparseVec, limit: usize) -> SparseVec {
        let mut acc = Accumulator::new(self.field, self.dimension());
        let memo = self.monomial_multiples(u.entries().iter().map(|e| e.0), v, limit, &mut acc);
        for &(s, c) in u.entries() {
            acc.add_scaled(&memo[&s], c, limit);
        }
        acc.take()
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        self.mul_limited(u, v, self.dimension())
    }

    pub fn one(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    pub fn variable(&self, i: usize) -> SparseVec {
        let m = Monomial::variable(self.nvars(), i);
        let p = Polynomial::monomial(self.field, m, 1);
        self.normal_form(&p).expect("variable in range")
    }

    pub fn fmt_vector(&self, v: &SparseVec) -> String {
        self.to_polynomial(v).fmt_with(self.variable_names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> RingPresentation {
        RingPresentation::parse(text).unwrap()
    }

    #[test]
    fn polynomial_ring_basis() {
        let p = pres("vars: x, y\ndim: 2\nideal: x, y\n");
        let a = TruncatedLocalAlgebra::build(&p, 3).unwrap();
        assert_eq!(a.dimension(), 6);
        let names: Vec<String> = a.std_monomials().map(|m| m.fmt_with(a.variable_names())).collect();
        assert_eq!(names, ["1", "x", "y", "x^2", "x*y", "y^2"]);
        assert!(TruncatedLocalAlgebra::build(&p, 1).is_err());
    }

    #[test]
    fn cusp_dimension_matches_staircase() {
        let p = pres("vars: x, y\nrelations: x^2 - y^3\ndim: 1\ncm: true\nideal: x, y\n");
        let a = TruncatedLocalAlgebra::build(&p, 4).unwrap();
        // lowest-degree form of x^2 - y^3 is x^2; leading-term ideal (x^2) below degree 4
        let t = MonomialTable::new(2, 4);
        let staircase = t.iter().filter(|m| m.exponents()[0] < 2).count();
        assert_eq!(a.dimension(), staircase);
        assert_eq!(a.dimension(), 7);
        // x^2 reduces to y^3
        let x = a.variable(0);
        let x2 = a.mul(&x, &x);
        assert_eq!(a.fmt_vector(&x2), "y^3");
    }

    #[test]
    fn normal_form_is_linear_and_products_commute() {
        let p = pres("vars: x, y, z\nrelations: x*y - z^2, x^3 - y*z\ndim: 1\ncm: true\nideal: x\n");
        let a = TruncatedLocalAlgebra::build(&p, 7).unwrap();
        let f = p.field();
        let names = &p.variables;
        let parse = |s: &str| {
            crate::algebra::poly::Expr::parse(s)
                .unwrap()
                .to_polynomial(f, names)
                .unwrap()
        };
        let u = parse("x + y^2 - 3*z");
        let v = parse("2*x*z + y");
        let w = parse("z^2 + x*y*z");
        let nu = a.normal_form(&u).unwrap();
        let nv = a.normal_form(&v).unwrap();
        let nw = a.normal_form(&w).unwrap();
        assert_eq!(a.mul(&nu, &nv), a.mul(&nv, &nu));
        assert_eq!(a.mul(&a.mul(&nu, &nv), &nw), a.mul(&nu, &a.mul(&nv, &nw)));
        assert_eq!(a.mul(&nu, &nv), a.normal_form(&u.mul(&v)).unwrap());
        let again = a.normal_form(&a.to_polynomial(&nu)).unwrap();
        assert_eq!(again, nu);
    }

    #[test]
    fn orders_are_nested() {
        let p = pres("vars: x, y, z\nrelations: x*y - z^2, x^3 - y*z\ndim: 1\ncm: true\nideal: x\n");
        let a = TruncatedLocalAlgebra::build(&p, 5).unwrap();
        let b = TruncatedLocalAlgebra::build(&p, 8).unwrap();
        for s in 0..a.dimension() {
            assert_eq!(a.std_monomial(s), b.std_monomial(s));
        }
        assert_eq!(a.dimension(), b.std_offset(5));
    }
}
