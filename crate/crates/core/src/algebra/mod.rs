//! Local rings, their truncations and ideal arithmetic.

pub mod ideal;
pub mod integral;
pub mod poly;
pub mod presentation;
pub mod truncation;
pub mod workbench;

pub use ideal::{ColengthCertificate, IdealSubspace};
pub use integral::{is_integrally_closed, monomial_integral_closure};
pub use poly::{Expr, Polynomial};
pub use presentation::RingPresentation;
pub use truncation::TruncatedLocalAlgebra;
pub use workbench::Workbench;
