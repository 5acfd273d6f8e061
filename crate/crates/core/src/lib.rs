//! Maximal tori and Cartan subalgebras of `gl(n, q)` and `sl(n, q)`.

pub mod census;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod sl;
pub mod subspace;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use field::{field_of_order, make_extension, make_prime_field, FieldElem, FieldSpec};
pub use matrix::MatrixGF;
pub use par::Exec;
pub use poly::PolyGF;
pub use subspace::Subspace;
pub use torus::{Ambient, PartitionType, Torus};
