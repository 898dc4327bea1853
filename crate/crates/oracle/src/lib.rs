//! Independent, deliberately naive reference implementations used as
//! ground truth for the `superriccati` library.

pub mod audit;
pub mod brute;
pub mod derive;
pub mod poly;
pub mod quadrature;

pub use audit::{audit_text, psi_relation_check, PsiRelationCheck};
pub use brute::brute_mul;
pub use derive::{
    derive_component_system, derive_inverse, ComponentEntry, SymbolicCoefficientReport, System,
};
pub use poly::{Poly, Var};
pub use quadrature::{quadrature_reference, QuadratureError};
