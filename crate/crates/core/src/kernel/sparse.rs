use crate::kernel::field::PrimeField;

/// A sparse coefficient vector: strictly increasing columns, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, u32)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds from entries that are already sorted, distinct and nonzero.
    pub fn from_sorted(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, v)| v != 0));
        SparseVec { entries }
    }

    /// Builds from arbitrary `(column, value)` pairs, combining duplicates.
    pub fn from_unsorted(field: PrimeField, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 = field.add(last.1, v),
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVec { entries: out }
    }

    pub fn from_dense(field: PrimeField, dense: &[i64]) -> Self {
        SparseVec {
            entries: dense
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as u32, field.from_i64(v)))
                .filter(|e| e.1 != 0)
                .collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec {
            entries: vec![(col as u32, 1)],
        }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(u32, u32)> {
        self.entries.first().copied()
    }

    pub fn max_column(&self) -> Option<u32> {
        self.entries.last().map(|e| e.0)
    }

    /// Drops every entry at a column `>= limit`.
    pub fn truncated(&self, limit: usize) -> SparseVec {
        let cut = self.entries.partition_point(|e| (e.0 as usize) < limit);
        SparseVec {
            entries: self.entries[..cut].to_vec(),
        }
    }

    pub fn truncate_in_place(&mut self, limit: usize) {
        let cut = self.entries.partition_point(|e| (e.0 as usize) < limit);
        self.entries.truncate(cut);
    }

    pub fn scaled(&self, field: PrimeField, s: u32) -> SparseVec {
        if s == 0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|&(c, v)| (c, field.mul(v, s)))
                .collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn normalized(&self, field: PrimeField) -> SparseVec {
        match self.leading() {
            Some((_, 1)) | None => self.clone(),
            Some((_, v)) => self.scaled(field, field.inv(v)),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for &(c, v) in &self.entries {
            out[c as usize] = v;
        }
        out
    }

    pub fn get(&self, col: u32) -> u32 {
        match self.entries.binary_search_by_key(&col, |e| e.0) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }
}

/// Dense scratch accumulator for sums of sparse vectors.
#[derive(Debug)]
pub struct Accumulator {
    field: PrimeField,
    dense: Vec<u32>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl Accumulator {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Accumulator {
            field,
            dense: vec![0; len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    pub fn ensure_len(&mut self, len: usize) {
        if self.dense.len() < len {
            self.dense.resize(len, 0);
            self.mark.resize(len, false);
        }
    }

    /// `self += s * v`, ignoring columns `>= limit`.
    #[inline]
    pub fn add_scaled(&mut self, v: &SparseVec, s: u32, limit: usize) {
        for &(c, x) in v.entries() {
            let ci = c as usize;
            if ci >= limit {
                break;
            }
            if !self.mark[ci] {
                self.mark[ci] = true;
                self.touched.push(c);
            }
            self.dense[ci] = self.field.mul_add(self.dense[ci], s, x);
        }
    }

    #[inline]
    pub fn add_entry(&mut self, c: u32, x: u32) {
        let ci = c as usize;
        if !self.mark[ci] {
            self.mark[ci] = true;
            self.touched.push(c);
        }
        self.dense[ci] = self.field.add(self.dense[ci], x);
    }

    /// Drains the accumulated sum into a sparse vector and resets.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            let ci = c as usize;
            if self.dense[ci] != 0 {
                entries.push((c, self.dense[ci]));
            }
            self.dense[ci] = 0;
            self.mark[ci] = false;
        }
        self.touched.clear();
        SparseVec { entries }
    }
}
