//! θ-deformed toric *-algebras.
//!
//! Elements keep classical monomials; the deformation enters only through
//! the product, `m × n = χ(wt m, wt n)·mn` with `χ(n, m) = exp(πi·nᵀΘm)`.

mod coefficient;
mod element;
mod format;
mod localize;
mod monomial;
mod notation;
mod rewrite;
mod spec;
mod tensor;

pub use coefficient::Coefficient;
pub use element::Element;
pub use localize::{monomials_up_to, Cleared};
pub use monomial::{letter, letter_gen, letter_is_adjoint, Letter, Monomial};
pub use rewrite::{groebner, Poly, RewriteSystem, Rule, DEFAULT_BUDGET};
pub use spec::{AlgebraBuilder, AlgebraSpec, CentralSymbol, GeneratorSpec, Leg};
pub use tensor::tensor_spec;

#[cfg(test)]
mod tests;
