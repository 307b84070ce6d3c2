//! Hermitian hulls of the generalized Reed–Solomon family C_{λ,τ,ρ,σ}(k)
//! over F_{q^2}, and the entanglement-assisted quantum MDS codes they give.
//!
//! The hull dimension is computed two ways: by closed-form lattice-point
//! counting ([`hull`]) and by the rank of the Hermitian Gram matrix of an
//! explicitly constructed generator matrix ([`grs`]).

pub mod cli;
pub mod gf;
pub mod grs;
pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod quantum;

pub use gf::{make_fields, Elem, Field, FieldError};
pub use grs::{validate_params, CodeError, CodeFamily, CodeFamilyParams, ParamError};
pub use hull::{count_f, hull_dim_formula, Exactness, HullComputation};
pub use lattice::{FirstPoint, Lattice, SublatticePair};
pub use linalg::Matrix;
pub use quantum::{eaqecc_params, singleton_check, MdsStatus, QuantumCodeRecord, SingletonOutcome};
