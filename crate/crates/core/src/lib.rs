//! Exact computations in Lie superalgebras, their loop algebras and
//! enveloping algebras: PBW normal forms, Casimir and Gelfand invariants,
//! anti-invariants, and evaluation modules.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod laurent;
pub mod linalg;
pub mod rational;
pub mod repr;
pub mod uea;

pub use algebra::{
    build_gl, build_rank1, load_algebra, root_decomposition, validate_algebra, AlgebraElement, Parity, Rank1Kind,
    RootDatum, SuperAlgebra, Weight,
};
pub use error::{Error, Result};
pub use invariants::{InvariantKind, VerificationReport};
pub use laurent::LaurentPoly;
pub use linalg::Matrix;
pub use rational::Rational;
pub use uea::{LoopGenerator, Pbw, UeaElement};
