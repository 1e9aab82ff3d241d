#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use hilbert_lab::algebra::{RingPresentation, Workbench};
use hilbert_lab::kernel::echelon::dense_rank;
use hilbert_lab::kernel::lp::{integer_point, rational_lp_member};
use hilbert_lab::kernel::{EchelonSubspace, PrimeField, SparseVec};
use rand::Rng;

pub fn fixture(name: &str) -> RingPresentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    RingPresentation::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, p: u32, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..p) })
                .collect()
        })
        .collect()
}

fn sparse(f: PrimeField, row: &[u32]) -> SparseVec {
    SparseVec::from_dense(f, &row.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

/// Echelon dimension and membership against plain dense elimination.
pub fn echelon_matches_gauss(f: PrimeField, rows: &[Vec<u32>], probes: &[Vec<u32>]) -> bool {
    let n = rows[0].len();
    let vecs: Vec<SparseVec> = rows.iter().map(|r| sparse(f, r)).collect();
    let space = EchelonSubspace::from_vectors(f, n, &vecs).unwrap();
    let rank = dense_rank(f, rows);
    if space.dimension() != rank {
        return false;
    }
    probes.iter().all(|v| {
        let mut ext = rows.to_vec();
        ext.push(v.clone());
        space.contains(&sparse(f, v)).unwrap() == (dense_rank(f, &ext) == rank)
    })
}

/// Exponent vectors of an m-primary monomial ideal: pure powers plus random extras.
pub fn random_monomial_ideal(rng: &mut impl Rng, vars: usize, max_deg: u16) -> Vec<Vec<u16>> {
    let mut gens: Vec<Vec<u16>> = (0..vars)
        .map(|i| {
            let mut e = vec![0; vars];
            e[i] = rng.gen_range(1..=max_deg);
            e
        })
        .collect();
    for _ in 0..rng.gen_range(0..=vars + 1) {
        let e: Vec<u16> = (0..vars).map(|_| rng.gen_range(0..max_deg)).collect();
        if e.iter().any(|&x| x > 0) {
            gens.push(e);
        }
    }
    gens
}

pub fn presentation_text(vars: usize, gens: &[Vec<u16>]) -> String {
    let names = ["x", "y", "z"];
    let monomials: Vec<String> = gens
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| format!("{}^{k}", names[i]))
                .collect();
            parts.join("*")
        })
        .collect();
    format!(
        "vars: {}\ndim: {vars}\ncm: true\nideal: {}\n",
        names[..vars].join(", "),
        monomials.join(", ")
    )
}

/// Monomials outside the ideal, counted inside the box of pure powers.
pub fn staircase_colength(gens: &[Vec<u16>]) -> usize {
    let vars = gens[0].len();
    let bound: Vec<u16> = (0..vars)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g[i])
                .min()
                .unwrap()
        })
        .collect();
    let mut count = 0;
    let mut point = vec![0u16; vars];
    loop {
        let inside = gens.iter().any(|g| g.iter().zip(&point).all(|(a, b)| a <= b));
        if !inside {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == vars {
                return count;
            }
            point[i] += 1;
            if point[i] < bound[i] {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

pub fn engine_colength(vars: usize, gens: &[Vec<u16>]) -> usize {
    let pres = RingPresentation::parse(&presentation_text(vars, gens)).unwrap();
    let mut wb = Workbench::new(&pres, 8, 64).unwrap();
    let k = wb.ideal(&pres.ideal_polynomials().unwrap()).unwrap();
    k.colength().unwrap().value
}

/// `x^point` is integral over the ideal if `x^(k point)` lies in `I^k` for some `k <= k_max`.
pub fn power_member(point: &[u16], gens: &[Vec<u16>], k_max: usize) -> bool {
    let cap = |k: usize| -> Vec<u32> { point.iter().map(|&a| a as u32 * k as u32).collect() };
    // exponent sums of k-fold products that can still divide x^(k_max point)
    let top = cap(k_max);
    let mut sums: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; point.len()]]);
    for k in 1..=k_max {
        let mut next = BTreeSet::new();
        for s in &sums {
            for g in gens {
                let t: Vec<u32> = s.iter().zip(g).map(|(a, &b)| a + b as u32).collect();
                if t.iter().zip(&top).all(|(a, b)| a <= b) {
                    next.insert(t);
                }
            }
        }
        let goal = cap(k);
        if next.iter().any(|t| t.iter().zip(&goal).all(|(a, b)| a <= b)) {
            return true;
        }
        sums = next;
    }
    false
}

pub fn lp_member(point: &[u16], gens: &[Vec<u16>]) -> bool {
    let p = integer_point(&point.iter().map(|&a| a as i64).collect::<Vec<_>>());
    let g: Vec<Vec<i64>> = gens.iter().map(|e| e.iter().map(|&a| a as i64).collect()).collect();
    rational_lp_member(&p, &g).unwrap()
}
