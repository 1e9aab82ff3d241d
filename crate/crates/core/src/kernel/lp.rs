//! Exact membership in `conv(generators) + R_{>=0}^v`.
//!
//! Decided by a phase-one simplex over `BigRational` with Bland's rule, which
//! cannot cycle. Desk-scale only: a few variables and at most a few hundred
//! generators.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Whether `point` lies in the convex hull of `generators` plus the
/// non-negative orthant.
///
/// ```
/// use hilbert_lab::kernel::lp::rational_lp_member;
/// use num::BigRational;
///
/// let p = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
/// assert!(rational_lp_member(&p(&[1, 1]), &[vec![2, 0], vec![0, 2]]).unwrap());
/// assert!(!rational_lp_member(&p(&[0, 0]), &[vec![2, 0], vec![0, 2]]).unwrap());
/// ```
pub fn rational_lp_member(point: &[BigRational], generators: &[Vec<i64>]) -> Result<bool> {
    if generators.is_empty() {
        return Err(Error::domain("empty generator list"));
    }
    let v = point.len();
    if v == 0 {
        return Err(Error::domain("zero-length point"));
    }
    if generators.iter().any(|g| g.len() != v) {
        return Err(Error::structural("generator length differs from point length"));
    }
    // Feasibility of: sum_j l_j g_j + s = point, sum_j l_j = 1, l, s >= 0.
    // Columns: l_1..l_k, s_1..s_v, then one artificial per row.
    let k = generators.len();
    let rows = v + 1;
    let structural = k + v;
    let cols = structural + rows;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut b: Vec<BigRational> = Vec::with_capacity(rows);
    for i in 0..v {
        let mut row = vec![BigRational::zero(); cols];
        for (j, g) in generators.iter().enumerate() {
            row[j] = BigRational::from_integer(g[i].into());
        }
        row[k + i] = BigRational::one();
        a.push(row);
        b.push(point[i].clone());
    }
    let mut last = vec![BigRational::zero(); cols];
    for x in last.iter_mut().take(k) {
        *x = BigRational::one();
    }
    a.push(last);
    b.push(BigRational::one());
    for i in 0..rows {
        if b[i].is_negative() {
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
            b[i] = -b[i].clone();
        }
        a[i][structural + i] = BigRational::one();
    }
    let mut basis: Vec<usize> = (structural..cols).collect();

    // reduced costs for minimizing the sum of artificials
    loop {
        let mut entering = None;
        for j in 0..cols {
            if basis.contains(&j) {
                continue;
            }
            let mut reduced = if j >= structural {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for i in 0..rows {
                if basis[i] >= structural {
                    reduced -= &a[i][j];
                }
            }
            if reduced.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if a[i][e].is_positive() {
                let ratio = &b[i] / &a[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur for a phase-one objective
            return Err(Error::Invariant("phase-one simplex unbounded".into()));
        };
        let piv = a[r][e].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &piv;
        }
        b[r] = &b[r] / &piv;
        for i in 0..rows {
            if i != r && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for j in 0..cols {
                    if !a[r][j].is_zero() {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        basis[r] = e;
    }
    let infeasibility: BigRational = (0..rows)
        .filter(|&i| basis[i] >= structural)
        .map(|i| b[i].clone())
        .sum();
    Ok(infeasibility.is_zero())
}

pub fn integer_point(v: &[i64]) -> Vec<BigRational> {
    v.iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect()
}
