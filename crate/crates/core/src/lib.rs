//! Cusp excursions of geodesics on the modular surface and the Hausdorff
//! dimension of the sets of boundary points they single out.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cusp;
pub mod dimension;
pub mod error;
pub mod harness;
pub mod hyperbolic;
pub mod spectra;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    mod hyperbolic {}
    #[doc = include_str!("../../../book/src/cusp_coding.md")]
    mod cusp_coding {}
    #[doc = include_str!("../../../book/src/dimension.md")]
    mod dimension {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
