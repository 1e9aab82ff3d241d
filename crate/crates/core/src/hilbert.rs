//! Hilbert–Samuel tables, their binomial-basis coefficients and h-vectors.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::Workbench;
use crate::error::{Error, Result};
use crate::reduction::Tower;

/// `C(n + k, k)` as a polynomial in `n`, taken as zero when `k < 0`.
pub fn shifted_binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for j in 1..=k as i128 {
        acc = acc * (n as i128 + j) / j;
    }
    acc as i64
}

/// `n ↦ ℓ(A/I^{n+1})` for `0 ≤ n ≤ n_hi`.
pub fn hilbert_table(tower: &mut Tower, wb: &mut Workbench, n_hi: usize) -> Result<Vec<usize>> {
    (0..=n_hi).map(|n| tower.power_colength(wb, n + 1)).collect()
}

/// Value at `n` of `Σ (-1)^i e_i C(n+d-i, d-i)`.
pub fn hilbert_polynomial(coefficients: &[i64], n: i64) -> i64 {
    let d = coefficients.len() as i64 - 1;
    coefficients
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * e * shifted_binomial(n, d - i as i64)
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertDatum {
    /// `table[n] = ℓ(A/I^{n+1})`.
    pub table: Vec<usize>,
    /// `e_0, …, e_d`.
    pub coefficients: Vec<i64>,
    pub fit_window: Window,
    pub validation_window: Window,
    pub h_vector: Option<Vec<i64>>,
}

impl HilbertDatum {
    pub fn e(&self, i: usize) -> i64 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }
}

fn solve(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Vec<BigRational> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("binomial system is regular");
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = BigRational::one() / &m[col][col];
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
                let t = &rhs[col] * &f;
                rhs[r] -= t;
            }
        }
    }
    rhs
}

/// Fits `e_0 … e_d` on `n ∈ [start, start + d]` and checks every later
/// entry of the table, of which there must be at least `d`.
pub fn fit_coefficients(table: &[usize], d: usize, start: usize) -> Result<(Vec<i64>, Window, Window)> {
    let end = start + d;
    if table.len() < end + d + 1 {
        return Err(Error::domain(format!(
            "table has {} entries; fitting from n = {start} in dimension {d} needs {}",
            table.len(),
            end + d + 1
        )));
    }
    let di = d as i64;
    let mut m = Vec::with_capacity(d + 1);
    let mut rhs = Vec::with_capacity(d + 1);
    for n in start..=end {
        let row: Vec<BigRational> = (0..=d)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                BigRational::from_integer(BigInt::from(sign * shifted_binomial(n as i64, di - i as i64)))
            })
            .collect();
        m.push(row);
        rhs.push(BigRational::from_integer(BigInt::from(table[n])));
    }
    let sol = solve(m, rhs);
    let mut coefficients = Vec::with_capacity(d + 1);
    for v in &sol {
        if !v.is_integer() {
            return Err(Error::RegimeNotReached(format!(
                "fit on n = {start}..{end} gives the non-integral coefficient {v}"
            )));
        }
        coefficients.push(v.to_integer().to_i64().ok_or_else(|| Error::Invariant("coefficient overflow".into()))?);
    }
    if coefficients[0] <= 0 {
        return Err(Error::domain(format!(
            "fitted e0 = {} is not positive; the declared dimension {d} exceeds the dimension of A",
            coefficients[0]
        )));
    }
    for (n, &t) in table.iter().enumerate().skip(end + 1) {
        let p = hilbert_polynomial(&coefficients, n as i64);
        if p != t as i64 {
            return Err(Error::RegimeNotReached(format!(
                "fit on n = {start}..{end} gives {p} at n = {n}, table has {t}"
            )));
        }
    }
    let validation = Window {
        start: end + 1,
        end: table.len() - 1,
    };
    Ok((coefficients, Window { start, end }, validation))
}

/// The first `table.len()` coefficients of `(1-t)^d Σ ℓ(I^n/I^{n+1}) t^n`.
/// Each is exact; nothing is assumed about the rest of the series.
pub fn h_prefix(table: &[usize], d: usize) -> Vec<i64> {
    let graded: Vec<i64> = (0..table.len())
        .map(|k| table[k] as i64 - if k == 0 { 0 } else { table[k - 1] as i64 })
        .collect();
    (0..graded.len())
        .map(|k| {
            (0..=d.min(k))
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * shifted_binomial(j as i64, d as i64 - j as i64) * graded[k - j]
                })
                .sum::<i64>()
        })
        .collect()
}

/// `e_i = Σ_k C(k, i) h_k` for `0 ≤ i ≤ d`.
pub fn coefficients_from_h(h: &[i64], d: usize) -> Vec<i64> {
    (0..=d as i64)
        .map(|i| {
            h.iter()
                .enumerate()
                .map(|(k, &hk)| hk * shifted_binomial(k as i64 - i, i))
                .sum()
        })
        .collect()
}

/// `n ↦ ℓ(A/I^{n+1})` for `n < len` from a terminating numerator.
pub fn table_from_h(h: &[i64], d: usize, len: usize) -> Vec<i64> {
    (0..len as i64)
        .map(|n| {
            h.iter()
                .enumerate()
                .filter(|&(k, _)| k as i64 <= n)
                .map(|(k, &hk)| hk * shifted_binomial(n - k as i64, d as i64))
                .sum()
        })
        .collect()
}

/// Numerator of `Σ ℓ(I^n/I^{n+1}) t^n = h(t)/(1-t)^d`, given that the table
/// is polynomial from `n = regime` on.
pub fn h_vector(table: &[usize], d: usize, regime: usize) -> Result<Vec<i64>> {
    let h = h_prefix(table, d);
    // graded pieces are polynomial from regime + 1, so h vanishes from regime + d + 1
    let cut = regime + d + 1;
    if h.len() <= cut {
        return Err(Error::SeriesNotRational(format!(
            "table of {} entries does not reach n = {cut}",
            table.len()
        )));
    }
    if let Some(k) = (cut..h.len()).find(|&k| h[k] != 0) {
        return Err(Error::SeriesNotRational(format!("h_{k} = {} is nonzero", h[k])));
    }
    let mut h = h[..cut].to_vec();
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }
    Ok(h)
}

/// Table, fit and h-vector in one go. `start` is where the fit begins,
/// normally the reduction number.
pub fn hilbert_datum(table: Vec<usize>, d: usize, start: usize) -> Result<HilbertDatum> {
    let (coefficients, fit_window, validation_window) = fit_coefficients(&table, d, start)?;
    let h = h_vector(&table, d, start)?;
    let sum: i64 = h.iter().sum();
    if sum != coefficients[0] {
        return Err(Error::Invariant(format!(
            "h-vector sums to {sum} but e0 = {}",
            coefficients[0]
        )));
    }
    Ok(HilbertDatum {
        table,
        coefficients,
        fit_window,
        validation_window,
        h_vector: Some(h),
    })
}

/// `a/b` or `a` for integral values.
pub fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        let sign = if v.is_negative() { "-" } else { "" };
        format!("{sign}{}/{}", v.numer().abs(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial_table(d: usize, upto: usize) -> Vec<usize> {
        (0..=upto).map(|n| shifted_binomial(n as i64, d as i64) as usize).collect()
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(shifted_binomial(3, 2), 10);
        assert_eq!(shifted_binomial(5, 0), 1);
        assert_eq!(shifted_binomial(5, -1), 0);
        assert_eq!(shifted_binomial(-1, 1), 0);
        assert_eq!(shifted_binomial(-3, 1), -2);
        assert_eq!(shifted_binomial(-1, 0), 1);
    }

    #[test]
    fn maximal_ideal_of_plane() {
        let t = binomial_table(2, 8);
        assert_eq!(&t[..4], &[1, 3, 6, 10]);
        let hd = hilbert_datum(t, 2, 1).unwrap();
        assert_eq!(hd.coefficients, vec![1, 0, 0]);
        assert_eq!(hd.h_vector, Some(vec![1]));
    }

    #[test]
    fn parameter_ideal_table() {
        let t: Vec<usize> = (0..=8).map(|n| 6 * shifted_binomial(n, 2) as usize).collect();
        assert_eq!(&t[..3], &[6, 18, 36]);
        let hd = hilbert_datum(t, 2, 0).unwrap();
        assert_eq!(hd.coefficients, vec![6, 0, 0]);
        let h = hd.h_vector.unwrap();
        assert_eq!(h.iter().sum::<i64>(), 6);
    }

    #[test]
    fn series_from_numerator() {
        // (31 + 43t + t^2 + t^3)/(1-t)^3
        let h = [31i64, 43, 1, 1];
        let mut graded = vec![0i64; 14];
        for (k, g) in graded.iter_mut().enumerate() {
            *g = h
                .iter()
                .enumerate()
                .filter(|&(i, _)| i <= k)
                .map(|(i, &hi)| hi * shifted_binomial((k - i) as i64, 2))
                .sum();
        }
        let mut table = Vec::new();
        let mut acc = 0;
        for g in graded {
            acc += g as usize;
            table.push(acc);
        }
        assert_eq!(table[0], 31);
        assert_eq!(table[1], 167);
        let hd = hilbert_datum(table, 3, 3).unwrap();
        assert_eq!(hd.coefficients, vec![76, 48, 4, 1]);
        assert_eq!(hd.h_vector, Some(vec![31, 43, 1, 1]));
    }

    #[test]
    fn numerator_round_trip() {
        let h = [31i64, 43, 1, 1];
        let table = table_from_h(&h, 3, 12);
        assert_eq!(&table[..4], &[31, 167, 483, 1055]);
        let as_usize: Vec<usize> = table.iter().map(|&v| v as usize).collect();
        assert_eq!(&h_prefix(&as_usize, 3)[..4], &h);
        assert!(h_prefix(&as_usize, 3)[4..].iter().all(|&v| v == 0));
        assert_eq!(coefficients_from_h(&h, 3), vec![76, 48, 4, 1]);
        // k[x,y,z,w]/(xw - yz)
        assert_eq!(coefficients_from_h(&[1, 1], 3), vec![2, 1, 0, 0]);
    }

    #[test]
    fn regime_and_dimension_errors() {
        let mut t = binomial_table(2, 8);
        t[7] += 1;
        assert!(matches!(fit_coefficients(&t, 2, 1), Err(Error::RegimeNotReached(_))));
        let t = binomial_table(1, 8);
        assert!(matches!(fit_coefficients(&t, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(fit_coefficients(&t[..2], 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_formatting() {
        let v = BigRational::new(61.into(), 2.into());
        assert_eq!(fmt_rational(&v), "61/2");
        assert_eq!(fmt_rational(&-v), "-61/2");
        assert_eq!(fmt_rational(&BigRational::from_integer(4.into())), "4");
    }
}
