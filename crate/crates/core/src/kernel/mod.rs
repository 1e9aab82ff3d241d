//! Exact arithmetic: prime fields, monomials, sparse vectors, echelon
//! subspaces and rational LP membership.

pub mod echelon;
pub mod field;
pub mod lp;
pub mod monomial;
pub mod sparse;

pub use echelon::{EchelonSubspace, Reducer};
pub use field::{FieldScalar, PrimeField};
pub use monomial::{Monomial, MonomialTable};
pub use sparse::{Accumulator, SparseVec};
