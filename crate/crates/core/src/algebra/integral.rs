//! Integral closure of monomial ideals through their Newton polyhedra.

use num::BigRational;

use crate::algebra::ideal::IdealSubspace;
use crate::error::{Error, Result};
use crate::kernel::lp::rational_lp_member;
use crate::kernel::sparse::SparseVec;

fn exponent_vectors(k: &IdealSubspace) -> Result<Vec<Vec<i64>>> {
    let host = k.host();
    if !host.presentation().relations.is_empty() {
        return Err(Error::ClosureUndecidable(
            "the ring has relations; only monomial ideals of a polynomial ring are handled \
             (assert closedness with --assume-integrally-closed)"
                .into(),
        ));
    }
    k.generators()
        .iter()
        .map(|g| {
            if g.nnz() != 1 {
                return Err(Error::ClosureUndecidable(format!(
                    "generator `{}` is not a monomial (assert closedness with \
                     --assume-integrally-closed)",
                    host.fmt_vector(g)
                )));
            }
            let s = g.leading().unwrap().0 as usize;
            Ok(host
                .std_monomial(s)
                .exponents()
                .iter()
                .map(|&e| e as i64)
                .collect())
        })
        .collect()
}

/// The ideal of all monomials whose exponents lie in the Newton polyhedron of
/// `k`, which must be an m-primary monomial ideal of a polynomial ring.
pub fn monomial_integral_closure(k: &IdealSubspace) -> Result<IdealSubspace> {
    let exps = exponent_vectors(k)?;
    let cert = k.colength()?;
    let host = k.host();
    let c = cert.stabilized_at;
    if c + 1 > host.order() {
        return Err(Error::TruncationExhausted {
            required: c + 1,
            ceiling: host.order(),
        });
    }
    let mut seeds: Vec<SparseVec> = k.generators().to_vec();
    if exps.is_empty() {
        // unit ideal or zero ideal; a certified zero ideal means A is Artinian
        return IdealSubspace::from_seeds(host, &seeds, c + 1);
    }
    for s in 0..host.std_offset(c) {
        let v = SparseVec::unit(s);
        if k.contains_vector(&v)? {
            continue;
        }
        let point: Vec<BigRational> = host
            .std_monomial(s)
            .exponents()
            .iter()
            .map(|&e| BigRational::from_integer((e as i64).into()))
            .collect();
        if rational_lp_member(&point, &exps)? {
            seeds.push(v);
        }
    }
    IdealSubspace::from_seeds(host, &seeds, c + 1)
}

/// Whether a monomial ideal equals its integral closure.
pub fn is_integrally_closed(k: &IdealSubspace) -> Result<bool> {
    monomial_integral_closure(k)?.equals(k)
}
