//! Entanglement measures and β-power monogamy lower bounds for small
//! multiqubit systems.
//!
//! - [`linalg`]: dense complex matrices, partial trace and transpose, a
//!   Hermitian eigensolver.
//! - [`measures`]: pure and mixed states, concurrence, negativity.
//! - [`gsd`]: the five-parameter three-qubit family with closed-form measures.
//! - [`bounds`]: the bound families on entanglement profiles.
//! - [`harness`]: seeded verification campaigns and figure tables.
//! - [`cli`]: the command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod gsd;
pub mod harness;
pub mod linalg;
pub mod measures;

pub use error::{Error, Result};
