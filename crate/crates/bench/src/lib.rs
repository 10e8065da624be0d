//! Shared fixtures for the benchmarks.

use superlie_core::{build_gl, build_rank1, Rank1Kind, SuperAlgebra};

/// Algebras exercised by the benchmarks, with display names.
pub fn fixtures() -> Vec<(&'static str, SuperAlgebra)> {
    vec![
        ("sl2", build_rank1(Rank1Kind::Sl2)),
        ("osp12", build_rank1(Rank1Kind::Osp12)),
        ("gl21", build_gl(2, 1).expect("gl(2,1)")),
        ("gl22", build_gl(2, 2).expect("gl(2,2)")),
    ]
}
