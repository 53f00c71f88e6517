//! Finite monoids, Γ-hemirings, hemirings and their construction
//! combinators.

mod construct;
mod gamma;
mod monoid;
mod product_structure;
mod report;

pub use construct::{boolean_semiring, from_hemiring, matrix_gamma_hemiring, product, zn_ring};
pub use gamma::{axiom_statement, validate_gamma_hemiring, validate_hemiring, GammaHemiring, Hemiring, AXIOMS};
pub use monoid::{validate_monoid, FiniteMonoid};
pub use product_structure::{as_product_structure, hemiring_product_structure, ProductStructure};
pub use report::{ValidationReport, Violation};
