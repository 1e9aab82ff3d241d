//! Hilbert functions, minimal reductions and Sally-module invariants of
//! m-primary ideals, computed exactly in truncations of local rings.

pub mod algebra;
pub mod campaign;
pub mod determinantal;
pub mod error;
pub mod hilbert;
pub mod kernel;
pub mod reduction;
pub mod session;
pub mod verdict;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/truncation.md")]
    mod truncation {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/verdicts.md")]
    mod verdicts {}
    #[doc = include_str!("../../../book/src/integral-closure.md")]
    mod integral_closure {}
    #[doc = include_str!("../../../book/src/determinantal.md")]
    mod determinantal {}
    #[doc = include_str!("../../../book/src/campaigns.md")]
    mod campaigns {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
