//! Extensions of finite-dimensional associative algebras: extending datums,
//! unified products, flag towers, Galois groups and brute-force cross-checks.

pub mod algebra;
pub mod error;
pub mod field;
pub mod flag;
pub mod galois;
pub mod json;
pub mod linalg;
pub mod oracle;
pub mod sample;
pub mod unified;
pub mod util;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Elem, Field};
