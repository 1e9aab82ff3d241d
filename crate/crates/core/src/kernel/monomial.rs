use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// A monomial as an exponent vector, with its total degree cached.
///
/// The `Ord` implementation is degree-reverse-lexicographic with respect to
/// the declared variable order (`x_0 > x_1 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        let degree = exponents.iter().map(|&e| e as u32).sum();
        Monomial { exponents, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exponents: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[i] = 1;
        Monomial {
            exponents,
            degree: 1,
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (name, &e) in names.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            // reverse lex: the first difference from the right decides, and a
            // smaller exponent there means a larger monomial
            for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.fmt_with(&names))
    }
}

/// Every monomial of degree `< bound` in `nvars` variables, indexed by
/// ascending degree and, within a degree, descending degrevlex.
///
/// This is the column order used by every echelon computation in the crate:
/// a vector's pivot (its smallest column) is a lowest-degree term, which is
/// what makes truncated computations compatible with the `m`-adic filtration.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    nvars: usize,
    bound: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u16>, u32>,
    degree_offsets: Vec<usize>,
}

impl MonomialTable {
    pub fn new(nvars: usize, bound: usize) -> Self {
        let mut monomials = Vec::new();
        let mut degree_offsets = Vec::with_capacity(bound + 1);
        for d in 0..bound {
            degree_offsets.push(monomials.len());
            let mut layer = monomials_of_degree(nvars, d as u16);
            layer.sort_by(|a, b| b.cmp(a));
            monomials.extend(layer);
        }
        degree_offsets.push(monomials.len());
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents.clone(), i as u32))
            .collect();
        MonomialTable {
            nvars,
            bound,
            monomials,
            index,
            degree_offsets,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Exclusive degree bound.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, exponents: &[u16]) -> Option<usize> {
        self.index.get(exponents).map(|&i| i as usize)
    }

    /// First column of degree `d` (`d <= bound`).
    pub fn degree_offset(&self, d: usize) -> usize {
        self.degree_offsets[d.min(self.bound)]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }
}

pub fn monomials_of_degree(nvars: usize, degree: u16) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    fn rec(pos: usize, left: u16, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in (0..=left).rev() {
            current[pos] = e;
            rec(pos + 1, left - e, current, out);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut current, &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_examples() {
        // x > y > z; x*z < y^2 in degrevlex
        let xz = Monomial::new(vec![1, 0, 1]);
        let yy = Monomial::new(vec![0, 2, 0]);
        assert!(xz < yy);
        let x = Monomial::new(vec![1, 0, 0]);
        let y = Monomial::new(vec![0, 1, 0]);
        assert!(x > y);
        assert!(Monomial::new(vec![0, 0, 2]) > x);
    }

    #[test]
    fn table_counts_and_lookup() {
        let t = MonomialTable::new(3, 5);
        assert_eq!(t.len(), binomial(3 + 4, 3) as usize);
        for d in 0..5 {
            let count = t.degree_offset(d + 1) - t.degree_offset(d);
            assert_eq!(count as u64, binomial(d as u64 + 2, 2));
        }
        for (i, m) in t.iter().enumerate() {
            assert_eq!(t.index_of(m.exponents()), Some(i));
        }
        assert_eq!(t.get(0), &Monomial::one(3));
    }

    #[test]
    fn order_refines_divisibility() {
        let t = MonomialTable::new(2, 6);
        for a in t.iter() {
            for b in t.iter() {
                if a.divides(b) && a != b {
                    assert!(a < b);
                }
            }
        }
    }
}
