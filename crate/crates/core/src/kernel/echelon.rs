//! Subspaces of `F_p^n` kept in echelon form.
//!
//! Every stored row is monic at its pivot, which is its smallest column, and
//! pivots are pairwise distinct. Rows are reduced against the pivots present
//! when they were inserted; [`EchelonSubspace::rref`] produces the canonical
//! reduced row-echelon form on demand.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::kernel::field::PrimeField;
use crate::kernel::sparse::SparseVec;

const NO_ROW: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct EchelonSubspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
}

impl EchelonSubspace {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        EchelonSubspace {
            field,
            ambient,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; ambient],
        }
    }

    pub fn from_vectors<'a>(
        field: PrimeField,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Result<Self> {
        let mut space = EchelonSubspace::new(field, ambient);
        let mut reducer = Reducer::new(field, ambient);
        for v in vectors {
            space.insert_with(&mut reducer, v)?;
        }
        Ok(space)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self
            .rows
            .iter()
            .map(|r| r.leading().unwrap().0 as usize)
            .collect();
        p.sort_unstable();
        p
    }

    #[inline]
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        match self.pivot_row.get(col) {
            Some(&r) if r != NO_ROW => Some(&self.rows[r as usize]),
            _ => None,
        }
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row(col).is_some()
    }

    fn check(&self, v: &SparseVec) -> Result<()> {
        match v.max_column() {
            Some(c) if c as usize >= self.ambient => Err(Error::structural(format!(
                "vector column {c} outside ambient dimension {}",
                self.ambient
            ))),
            _ => Ok(()),
        }
    }

    /// Adds `v` to the span. Returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        let mut reducer = Reducer::new(self.field, self.ambient);
        self.insert_with(&mut reducer, v)
    }

    pub fn insert_dense(&mut self, v: &[i64]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::structural(format!(
                "vector length {} does not match ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let sv = SparseVec::from_dense(self.field, v);
        self.insert(&sv)
    }

    pub fn insert_with(&mut self, reducer: &mut Reducer, v: &SparseVec) -> Result<bool> {
        self.check(v)?;
        let r = reducer.reduce(self, v);
        Ok(self.push_reduced(r))
    }

    /// Inserts a vector already fully reduced against this space.
    pub(crate) fn push_reduced(&mut self, r: SparseVec) -> bool {
        match r.leading() {
            None => false,
            Some((c, _)) => {
                debug_assert!(self.pivot_row[c as usize] == NO_ROW);
                self.pivot_row[c as usize] = self.rows.len() as u32;
                self.rows.push(r.normalized(self.field));
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        self.check(v)?;
        let mut reducer = Reducer::new(self.field, self.ambient);
        Ok(reducer.is_member(self, v))
    }

    /// Normal form of `v` modulo the span: the unique representative supported
    /// on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        self.check(v)?;
        let mut reducer = Reducer::new(self.field, self.ambient);
        Ok(reducer.reduce(self, v))
    }

    /// Canonical reduced row-echelon form, rows ordered by pivot.
    pub fn rref(&self) -> EchelonSubspace {
        let mut order: Vec<&SparseVec> = self.rows.iter().collect();
        order.sort_by_key(|r| Reverse(r.leading().unwrap().0));
        let mut out = EchelonSubspace::new(self.field, self.ambient);
        let mut reducer = Reducer::new(self.field, self.ambient);
        for row in order {
            // rows already in `out` have larger pivots and are fully reduced,
            // so reducing the whole row leaves its own pivot untouched
            let r = reducer.reduce(&out, row);
            out.push_reduced(r);
        }
        out.rows.sort_by_key(|r| r.leading().unwrap().0);
        for (i, r) in out.rows.iter().enumerate() {
            out.pivot_row[r.leading().unwrap().0 as usize] = i as u32;
        }
        out
    }

    pub fn subspace_equal(&self, other: &EchelonSubspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::structural(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.dimension() != other.dimension() {
            return Ok(false);
        }
        self.is_subspace_of(other)
    }

    pub fn is_subspace_of(&self, other: &EchelonSubspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::structural("ambient dimensions differ"));
        }
        let mut reducer = Reducer::new(self.field, self.ambient);
        Ok(self.rows.iter().all(|r| reducer.is_member(other, r)))
    }

    /// Intersection of two spans (Zassenhaus).
    pub fn intersection(&self, other: &EchelonSubspace) -> Result<EchelonSubspace> {
        if self.ambient != other.ambient {
            return Err(Error::structural("ambient dimensions differ"));
        }
        let n = self.ambient;
        let shift = |v: &SparseVec| -> Vec<(u32, u32)> {
            v.entries().iter().map(|&(c, x)| (c + n as u32, x)).collect()
        };
        let mut doubled = EchelonSubspace::new(self.field, 2 * n);
        let mut reducer = Reducer::new(self.field, 2 * n);
        for a in &self.rows {
            let mut e = a.entries().to_vec();
            e.extend(shift(a));
            doubled.insert_with(&mut reducer, &SparseVec::from_sorted(e))?;
        }
        for b in &other.rows {
            doubled.insert_with(&mut reducer, b)?;
        }
        let mut out = EchelonSubspace::new(self.field, n);
        let mut small = Reducer::new(self.field, n);
        for row in &doubled.rows {
            if row.leading().unwrap().0 as usize >= n {
                let back = row
                    .entries()
                    .iter()
                    .map(|&(c, x)| (c - n as u32, x))
                    .collect();
                out.insert_with(&mut small, &SparseVec::from_sorted(back))?;
            }
        }
        Ok(out)
    }

    /// Projection onto the columns `< limit`.
    pub fn truncated(&self, limit: usize) -> EchelonSubspace {
        let mut out = EchelonSubspace::new(self.field, self.ambient);
        for r in &self.rows {
            if (r.leading().unwrap().0 as usize) < limit {
                out.push_reduced(r.truncated(limit));
            }
        }
        out
    }

    /// Projection onto the columns `< limit`, as a subspace of `F_p^limit`.
    pub fn restrict(&self, limit: usize) -> EchelonSubspace {
        let limit = limit.min(self.ambient);
        let mut out = EchelonSubspace::new(self.field, limit);
        for r in &self.rows {
            if (r.leading().unwrap().0 as usize) < limit {
                out.push_reduced(r.truncated(limit));
            }
        }
        out
    }

    /// Same span, viewed inside a larger ambient space.
    pub fn with_ambient(&self, ambient: usize) -> Result<EchelonSubspace> {
        if ambient < self.ambient {
            return Err(Error::structural("cannot shrink ambient dimension"));
        }
        let mut pivot_row = self.pivot_row.clone();
        pivot_row.resize(ambient, NO_ROW);
        Ok(EchelonSubspace {
            field: self.field,
            ambient,
            rows: self.rows.clone(),
            pivot_row,
        })
    }

    /// Number of pivots in `[lo, hi)`.
    pub fn pivots_in_range(&self, lo: usize, hi: usize) -> usize {
        self.pivot_row[lo.min(self.ambient)..hi.min(self.ambient)]
            .iter()
            .filter(|&&r| r != NO_ROW)
            .count()
    }
}

/// Reusable scratch space for reducing vectors against an echelon basis.
/// Scratch space for reducing vectors against an [`EchelonSubspace`].
///
/// Entries accumulate as unreduced `u64` values and are brought into range
/// only when read or when the next elimination could overflow.
#[derive(Debug)]
pub struct Reducer {
    field: PrimeField,
    dense: Vec<u64>,
    bits: Vec<u64>,
    budget: u64,
}

impl Reducer {
    pub fn new(field: PrimeField, len: usize) -> Self {
        let q = (field.p() as u64 - 1).max(1);
        Reducer {
            field,
            dense: vec![0; len],
            bits: vec![0; len / 64 + 1],
            budget: ((u64::MAX - field.p() as u64) / (q * q)).max(1),
        }
    }

    /// Loads `v`; returns the word range it occupies.
    fn load(&mut self, ambient: usize, v: &SparseVec) -> Option<(usize, usize)> {
        if self.dense.len() < ambient {
            self.dense.resize(ambient, 0);
            self.bits.resize(ambient / 64 + 1, 0);
        }
        for &(c, x) in v.entries() {
            self.dense[c as usize] = x as u64;
            self.bits[c as usize >> 6] |= 1 << (c & 63);
        }
        let lo = v.entries().first()?.0 as usize >> 6;
        let hi = v.entries().last()?.0 as usize >> 6;
        Some((lo, hi))
    }

    #[inline]
    fn eliminate(&mut self, row: &SparseVec, a: u32, hi: &mut usize) {
        let f = self.field.neg(a) as u64;
        let tail = &row.entries()[1..];
        for &(cc, vv) in tail {
            self.dense[cc as usize] += f * vv as u64;
            self.bits[cc as usize >> 6] |= 1 << (cc & 63);
        }
        if let Some(&(last, _)) = tail.last() {
            *hi = (*hi).max(last as usize >> 6);
        }
    }

    fn normalize(&mut self, lo: usize, hi: usize) {
        let p = self.field.p() as u64;
        for w in lo..=hi {
            let mut word = self.bits[w];
            while word != 0 {
                let c = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                self.dense[c] %= p;
            }
        }
    }

    fn clear(&mut self, lo: usize, hi: usize) {
        for w in lo..=hi {
            let mut word = self.bits[w];
            while word != 0 {
                let c = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                self.dense[c] = 0;
            }
            self.bits[w] = 0;
        }
    }

    /// Walks the loaded vector in column order, eliminating pivots. Stops at
    /// the first surviving entry when `stop_early` is set.
    fn run(&mut self, space: &EchelonSubspace, v: &SparseVec, stop_early: bool) -> (Vec<(u32, u32)>, bool) {
        let mut out = Vec::new();
        let Some((mut w, mut hi)) = self.load(space.ambient, v) else {
            return (out, true);
        };
        let p = self.field.p() as u64;
        let mut pending = 0u64;
        while w <= hi {
            let word = self.bits[w];
            if word == 0 {
                w += 1;
                continue;
            }
            let b = word.trailing_zeros();
            self.bits[w] &= !(1u64 << b);
            let c = w * 64 + b as usize;
            let a = (self.dense[c] % p) as u32;
            self.dense[c] = 0;
            if a == 0 {
                continue;
            }
            match space.pivot_row(c) {
                Some(row) => {
                    self.eliminate(row, a, &mut hi);
                    pending += 1;
                    if pending >= self.budget {
                        self.normalize(w, hi);
                        pending = 0;
                    }
                }
                None => {
                    out.push((c as u32, a));
                    if stop_early {
                        self.clear(w, hi);
                        return (out, false);
                    }
                }
            }
        }
        let member = out.is_empty();
        (out, member)
    }

    /// Full reduction: the result has no entries on pivot columns.
    pub fn reduce(&mut self, space: &EchelonSubspace, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(self.run(space, v, false).0)
    }

    /// Leading-term reduction with early exit.
    pub fn is_member(&mut self, space: &EchelonSubspace, v: &SparseVec) -> bool {
        self.run(space, v, true).1
    }
}

/// Rank by plain dense Gaussian elimination; used as an independent check.
pub fn dense_rank(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = field.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = field.neg(m[r][col]);
                for c in 0..ncols {
                    let v = m[rank][c];
                    m[r][c] = field.mul_add(m[r][c], f, v);
                }
            }
        }
        rank += 1;
    }
    rank
}
