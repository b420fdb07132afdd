//! Finite computations around genus-2 curves over F2 and F3, their Jacobians
//! and 3-torsion, conjugacy atlases for small symplectic groups, the mod-2
//! representation theory of A5, and a rule engine that checks the local
//! conditions of the modularity criteria for abelian surfaces over Q.

pub mod error;
pub mod app;
pub mod classify;
pub mod curves;
pub mod gf;
pub mod jacobian;
pub mod pipelines;
pub mod repthy;
pub mod sympgroups;

pub use error::{Error, Result};
