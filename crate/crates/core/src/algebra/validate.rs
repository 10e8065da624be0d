use std::fmt;

use num::Zero;

use super::{koszul, roots, AlgebraElement, SuperAlgebra};
use crate::linalg::Matrix;
use crate::rational;

/// A violated identity together with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c_ij^k != 0` although `|k| != |i| + |j|`.
    BracketParity {
        i: usize,
        j: usize,
        k: usize,
    },
    /// `[b_j, b_i] != -(-1)^{|i||j|} [b_i, b_j]`.
    Antisymmetry {
        i: usize,
        j: usize,
    },
    /// `[[x,y],z] != [x,[y,z]] - (-1)^{|x||y|} [y,[x,z]]`.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
    },
    CartanNotAbelian {
        i: usize,
        j: usize,
    },
    /// `(b_i, b_j) != 0` across parities.
    FormNotEven {
        i: usize,
        j: usize,
    },
    FormNotSuperSymmetric {
        i: usize,
        j: usize,
    },
    /// `([x,y],z) != (x,[y,z])`.
    FormNotInvariant {
        i: usize,
        j: usize,
        k: usize,
    },
    FormDegenerateOnCartan,
    FormDegenerate,
    /// `(g_a, g_b) != 0` with `a + b != 0`.
    FormRootPairing {
        i: usize,
        j: usize,
    },
    /// Root decomposition was not possible on the supplied basis.
    RootDecomposition(String),
}

impl Violation {
    pub fn describe(&self, alg: &SuperAlgebra) -> String {
        let l = |i: &usize| alg.label(*i).to_string();
        match self {
            Violation::BracketParity { i, j, k } => format!(
                "bracket parity: [{}, {}] has a component along {} of the wrong parity",
                l(i),
                l(j),
                l(k)
            ),
            Violation::Antisymmetry { i, j } => {
                format!("super-antisymmetry fails for ({}, {})", l(i), l(j))
            }
            Violation::Jacobi { i, j, k } => {
                format!("super Jacobi identity fails on ({}, {}, {})", l(i), l(j), l(k))
            }
            Violation::CartanNotAbelian { i, j } => {
                format!("Cartan elements {} and {} do not commute", l(i), l(j))
            }
            Violation::FormNotEven { i, j } => {
                format!("form pairs {} and {} of different parity", l(i), l(j))
            }
            Violation::FormNotSuperSymmetric { i, j } => {
                format!("form is not super-symmetric on ({}, {})", l(i), l(j))
            }
            Violation::FormNotInvariant { i, j, k } => {
                format!(
                    "form invariance ([x,y],z) = (x,[y,z]) fails on ({}, {}, {})",
                    l(i),
                    l(j),
                    l(k)
                )
            }
            Violation::FormDegenerateOnCartan => "form is degenerate on the Cartan subalgebra".into(),
            Violation::FormDegenerate => "form is degenerate".into(),
            Violation::FormRootPairing { i, j } => format!(
                "form pairs root vectors {} and {} whose roots do not sum to zero",
                l(i),
                l(j)
            ),
            Violation::RootDecomposition(msg) => format!("root decomposition: {msg}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, alg: &SuperAlgebra) -> Vec<String> {
        self.violations.iter().map(|v| v.describe(alg)).collect()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())
    }
}

/// Checks the bracket axioms and the five form axioms on all basis pairs and triples.
pub fn validate_algebra(alg: &SuperAlgebra) -> AxiomReport {
    let dim = alg.dim();
    let mut out = Vec::new();
    let par = |i: usize| alg.parity(i);

    for i in 0..dim {
        for j in 0..dim {
            for (k, _) in alg.bracket_basis(i, j).terms() {
                if par(k) != par(i) + par(j) {
                    out.push(Violation::BracketParity { i, j, k });
                }
            }
        }
    }

    for i in 0..dim {
        for j in i..dim {
            let sign = if koszul(par(i), par(j)) {
                rational::one()
            } else {
                -rational::one()
            };
            if *alg.bracket_basis(j, i) != alg.bracket_basis(i, j).scale(&sign) {
                out.push(Violation::Antisymmetry { i, j });
            }
        }
    }

    for i in 0..dim {
        for j in 0..dim {
            let xy = alg.bracket_basis(i, j);
            for k in 0..dim {
                let lhs = alg.bracket(xy, &AlgebraElement::basis(k));
                let yz = alg.bracket_basis(j, k);
                let xz = alg.bracket_basis(i, k);
                let mut rhs = alg.bracket(&AlgebraElement::basis(i), yz);
                let s = if koszul(par(i), par(j)) {
                    rational::one()
                } else {
                    -rational::one()
                };
                rhs.add_scaled(&alg.bracket(&AlgebraElement::basis(j), xz), &s);
                if lhs != rhs {
                    out.push(Violation::Jacobi { i, j, k });
                }
            }
        }
    }

    let cartan = alg.cartan();
    for (a, &i) in cartan.iter().enumerate() {
        for &j in &cartan[a + 1..] {
            if !alg.bracket_basis(i, j).is_zero() {
                out.push(Violation::CartanNotAbelian { i, j });
            }
        }
    }

    let form = alg.form_matrix();
    for i in 0..dim {
        for j in 0..dim {
            let g = &form[(i, j)];
            if par(i) != par(j) && !g.is_zero() {
                out.push(Violation::FormNotEven { i, j });
            }
            if j >= i {
                let s = if koszul(par(i), par(j)) {
                    -rational::one()
                } else {
                    rational::one()
                };
                if *g != &form[(j, i)] * &s {
                    out.push(Violation::FormNotSuperSymmetric { i, j });
                }
            }
        }
    }

    for i in 0..dim {
        for j in 0..dim {
            let xy = alg.bracket_basis(i, j);
            for k in 0..dim {
                let lhs = alg.form(xy, &AlgebraElement::basis(k));
                let rhs = alg.form(&AlgebraElement::basis(i), alg.bracket_basis(j, k));
                if lhs != rhs {
                    out.push(Violation::FormNotInvariant { i, j, k });
                }
            }
        }
    }

    let gram_h = form.select_columns(cartan);
    let rows: Vec<Vec<_>> = cartan.iter().map(|&i| gram_h.row(i).to_vec()).collect();
    if Matrix::from_rows(rows).rank() < cartan.len() {
        out.push(Violation::FormDegenerateOnCartan);
    }
    if form.rank() < dim {
        out.push(Violation::FormDegenerate);
    }

    match roots::basis_weights(alg) {
        Ok(weights) => {
            for i in 0..dim {
                for j in 0..dim {
                    if form[(i, j)].is_zero() {
                        continue;
                    }
                    let sum = weights[i].add(&weights[j]);
                    if !sum.is_zero() {
                        out.push(Violation::FormRootPairing { i, j });
                    }
                }
            }
        }
        Err(e) => out.push(Violation::RootDecomposition(e.to_string())),
    }

    AxiomReport { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_gl, build_rank1, AlgebraDoc, Rank1Kind};

    #[test]
    fn builtins_are_valid() {
        for kind in [Rank1Kind::Sl2, Rank1Kind::Gl11, Rank1Kind::Osp12] {
            let alg = build_rank1(kind);
            let r = validate_algebra(&alg);
            assert!(r.is_valid(), "{:?}: {:?}", kind, r.describe(&alg));
        }
        let g = build_gl(2, 1).unwrap();
        assert!(validate_algebra(&g).is_valid());
    }

    #[test]
    fn sign_flipped_form_is_reported() {
        let alg = build_rank1(Rank1Kind::Gl11);
        let mut doc = AlgebraDoc::from_algebra(&alg);
        let (f, e) = (alg.index_of("f").unwrap(), alg.index_of("e").unwrap());
        for entry in doc.form.iter_mut() {
            if entry.0 == f && entry.1 == e {
                entry.2 = "1".into();
            }
        }
        let bad = doc.to_algebra_unchecked().unwrap();
        let r = validate_algebra(&bad);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FormNotInvariant { .. })));
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FormNotSuperSymmetric { .. })));
    }
}
