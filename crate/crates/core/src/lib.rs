//! Exact verification of commutation factors, quantum commutativity, strong
//! gradings and Hopf-Galois canonical maps for algebras graded by finitely
//! generated abelian groups.
//!
//! All arithmetic is exact, over `Q` or a cyclotomic field `Q(zeta_n)`.

pub mod algebra;
pub mod descriptor;
pub mod error;
pub mod factor;
pub mod galois;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
