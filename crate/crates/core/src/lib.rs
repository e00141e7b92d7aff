//! Exact computations with Mathieu subspaces of finite-dimensional
//! associative algebras and of their modules.

pub mod error;
pub mod exactfield;

pub use error::{Error, Result};
pub mod algebra;
pub mod modules;
pub mod mathieu;
pub mod polyspaces;
pub mod io;
pub mod suite;
