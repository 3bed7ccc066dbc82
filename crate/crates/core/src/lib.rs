//! Robin eigenvalues and nodal domains of the square `(-π/2, π/2)²`.
//!
//! The spectrum of the Laplacian with boundary condition `∂u/∂ν + h u = 0`
//! separates into products of one-dimensional Robin modes. This crate solves
//! the one-dimensional branches, orders the two-dimensional spectrum, tracks
//! crossings of eigenvalue curves in `h`, counts nodal domains of
//! two-term eigenfunction families and evaluates the Faber–Krahn / Pleijel
//! inequalities used to rule out Courant-sharp eigenvalues.
//!
//! ```
//! use robin_square::robin1d::{solve_alpha, RobinParam};
//! use robin_square::spectrum2d::{eigenvalue, ModeLabel};
//!
//! let h = RobinParam::new(1.0).unwrap();
//! let a0 = solve_alpha(0, h);
//! assert!(a0.alpha > 0.0 && a0.alpha < std::f64::consts::PI);
//! let lam = eigenvalue(ModeLabel::new(2, 2), RobinParam::DIRICHLET);
//! assert_eq!(lam.value, 18.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod crossings;
mod error;
pub mod exec;
pub mod faberkrahn;
pub mod nodal;
pub mod robin1d;
mod roots;
pub mod spectrum2d;

pub use error::{Error, Result};
pub use exec::Execution;
