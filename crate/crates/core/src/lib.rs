//! Exact symbolic engine for θ-deformed toric algebras, the compact quantum
//! group SU(3)_θ and its coactions on deformed spheres.
//!
//! Coefficients are Gaussian rationals times formal phases `exp(πi·L)` with
//! `L` a rational linear form in named parameters, so every check is an
//! equality of normal forms.

pub mod algebra;
pub mod error;
pub mod phase;
pub mod rational;
mod text;

pub use error::{Error, Result};
pub use phase::{Bindings, LinearForm, ParamSymbol, PhaseExponent};
pub use rational::{Gauss, Rat};
pub mod linalg;
pub mod bundle;
pub mod coaction;
pub mod quantumgroup;
pub mod report;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/algebras.md")]
mod book_algebras {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/quantum-group.md")]
mod book_quantum_group {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/coactions.md")]
mod book_coactions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/coinvariants.md")]
mod book_coinvariants {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/bundle.md")]
mod book_bundle {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
