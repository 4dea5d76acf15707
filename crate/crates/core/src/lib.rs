//! Quadrature beam elements for second-strain-gradient Euler-Bernoulli beams.
//!
//! Two single-element discretizations are provided, one built from Lagrange
//! differential-quadrature matrices with boundary derivative DOFs spliced in
//! and one built from a Hermite basis that interpolates those DOFs exactly.
//! Both share Gauss-Lobatto-Legendre integration, the same boundary handling
//! and the same static, modal and buckling solvers. An independent analytical
//! solver of the governing eighth-order equation is included for validation.

pub mod cli;
pub mod dof;
pub mod element;
pub mod error;
pub mod gll;
pub mod hermite;
pub mod lagrange;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod solve;
mod taylor;

pub use dof::{DofLayout, End, Quantity};
pub use element::{assemble, BasisKind, BeamConfig, ElementMatrices};
pub use error::{Error, Result};
pub use gll::GllRule;
pub use solve::{
    apply_bc, solve_buckling, solve_modal, solve_modal_with, solve_static, BoundaryCondition,
    ModalOptions, ReducedSystem, SolveResult,
};
