//! Exact matrix representations and evaluation modules of loop algebras.

mod evaluation;

use std::collections::BTreeMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{koszul, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational;

pub use evaluation::{
    EvaluationModule, EvenHwvSpace, FactorSpec, GelfandSumReport, HwvOperatorReport, ModuleSpec, StabilityReport,
    WeightHwv,
};

/// A finite-dimensional graded module, given by one action matrix per basis
/// element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    parity: Vec<Parity>,
    actions: Vec<Matrix>,
}

impl Representation {
    /// Checks dimensions, parity and `ρ([x,y]) = ρ(x)ρ(y) - (-1)^{|x||y|} ρ(y)ρ(x)`
    /// on every basis pair.
    pub fn new(alg: &SuperAlgebra, parity: Vec<Parity>, actions: Vec<Matrix>) -> Result<Self> {
        let n = parity.len();
        if actions.len() != alg.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} action matrices, got {}",
                alg.dim(),
                actions.len()
            )));
        }
        for (x, a) in actions.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::InvalidRepresentation(format!(
                    "action of {} is {}x{}, expected {n}x{n}",
                    alg.label(x),
                    a.rows(),
                    a.cols()
                )));
            }
            for (r, c, _) in a.triplets() {
                if parity[r] != parity[c] + alg.parity(x) {
                    return Err(Error::InvalidRepresentation(format!(
                        "action of {} does not respect parity at entry ({r}, {c})",
                        alg.label(x)
                    )));
                }
            }
        }
        let rep = Self { parity, actions };
        if let Some((i, j)) = rep.bracket_failures(alg).into_iter().next() {
            return Err(Error::InvalidRepresentation(format!(
                "bracket compatibility fails for ({}, {})",
                alg.label(i),
                alg.label(j)
            )));
        }
        Ok(rep)
    }

    /// Basis pairs `(i, j)`, `i <= j`, where the action is not a homomorphism.
    pub fn bracket_failures(&self, alg: &SuperAlgebra) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..alg.dim() {
            for j in i..alg.dim() {
                let mut lhs = Matrix::zeros(self.dim(), self.dim());
                for (k, c) in alg.bracket_basis(i, j).terms() {
                    lhs.add_scaled(&self.actions[k], c);
                }
                let ab = &self.actions[i] * &self.actions[j];
                let ba = &self.actions[j] * &self.actions[i];
                let rhs = if koszul(alg.parity(i), alg.parity(j)) {
                    &ab + &ba
                } else {
                    &ab - &ba
                };
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn action(&self, x: usize) -> &Matrix {
        &self.actions[x]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn to_doc(&self, alg: &SuperAlgebra) -> RepresentationDoc {
        RepresentationDoc {
            dimension: self.dim(),
            parity: self.parity.iter().map(|p| p.as_str().to_string()).collect(),
            actions: self
                .actions
                .iter()
                .enumerate()
                .map(|(x, a)| {
                    let entries = a
                        .triplets()
                        .into_iter()
                        .map(|(r, c, q)| (r, c, rational::format(&q)))
                        .collect();
                    (alg.label(x).to_string(), entries)
                })
                .collect(),
        }
    }

    pub fn to_json(&self, alg: &SuperAlgebra) -> String {
        serde_json::to_string_pretty(&self.to_doc(alg)).expect("serializable")
    }
}

/// Serialized form: sparse `[row, col, "coefficient"]` triplets keyed by
/// basis label. Labels not listed act by zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub dimension: usize,
    pub parity: Vec<String>,
    pub actions: BTreeMap<String, Vec<(usize, usize, String)>>,
}

impl RepresentationDoc {
    pub fn to_representation(&self, alg: &SuperAlgebra) -> Result<Representation> {
        if self.parity.len() != self.dimension {
            return Err(Error::Schema(format!(
                "parity lists {} entries for dimension {}",
                self.parity.len(),
                self.dimension
            )));
        }
        let parity = self
            .parity
            .iter()
            .map(|p| match p.as_str() {
                "even" | "0" => Ok(Parity::Even),
                "odd" | "1" => Ok(Parity::Odd),
                other => Err(Error::Schema(format!("unknown parity '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let n = self.dimension;
        let mut actions = vec![Matrix::zeros(n, n); alg.dim()];
        for (label, entries) in &self.actions {
            let x = alg
                .index_of(label)
                .ok_or_else(|| Error::Schema(format!("unknown basis label '{label}'")))?;
            for (r, c, q) in entries {
                if *r >= n || *c >= n {
                    return Err(Error::Schema(format!("entry ({r}, {c}) of '{label}' is out of range")));
                }
                actions[x][(*r, *c)] = rational::parse(q).map_err(|e| Error::Schema(e.to_string()))?;
            }
        }
        Representation::new(alg, parity, actions)
    }
}

pub fn load_representation(alg: &SuperAlgebra, text: &str) -> Result<Representation> {
    let doc: RepresentationDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    doc.to_representation(alg)
}

/// The defining module of `gl(M, N)` (`E_ij ↦` matrix unit), and the 2-dimensional
/// modules of `sl2` and `gl(1,1)`.
pub fn natural_module(alg: &SuperAlgebra) -> Result<Representation> {
    let unit = |n: usize, i: usize, j: usize| {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = rational::one();
        m
    };
    if let Some((m, n)) = alg.gl_shape() {
        let size = m + n;
        let parity = (0..size)
            .map(|i| if i < m { Parity::Even } else { Parity::Odd })
            .collect();
        let mut actions = vec![Matrix::zeros(size, size); alg.dim()];
        for i in 1..=size {
            for j in 1..=size {
                actions[alg.gl_index(i, j).expect("gl index")] = unit(size, i - 1, j - 1);
            }
        }
        return Representation::new(alg, parity, actions);
    }
    let idx = |l: &str| alg.index_of(l);
    let (parity, images): (Vec<Parity>, Vec<(&str, Matrix)>) = match alg.name() {
        "sl2" => {
            let mut h = unit(2, 0, 0);
            h[(1, 1)] = -rational::one();
            (
                vec![Parity::Even; 2],
                vec![("e", unit(2, 0, 1)), ("f", unit(2, 1, 0)), ("h", h)],
            )
        }
        "gl11" => (
            vec![Parity::Even, Parity::Odd],
            vec![
                ("e", unit(2, 0, 1)),
                ("f", unit(2, 1, 0)),
                ("h1", unit(2, 0, 0)),
                ("h2", unit(2, 1, 1)),
            ],
        ),
        other => {
            return Err(Error::InvalidRepresentation(format!(
                "no natural module is known for {other}"
            )));
        }
    };
    let mut actions = vec![Matrix::zeros(2, 2); alg.dim()];
    for (l, m) in images {
        let i = idx(l).ok_or_else(|| Error::InvalidRepresentation(format!("{} has no generator {l}", alg.name())))?;
        actions[i] = m;
    }
    Representation::new(alg, parity, actions)
}

/// `x ↦ ad x` on the basis of the algebra.
pub fn adjoint_module(alg: &SuperAlgebra) -> Result<Representation> {
    let d = alg.dim();
    let actions = (0..d)
        .map(|x| {
            let mut m = Matrix::zeros(d, d);
            for j in 0..d {
                for (k, c) in alg.bracket_basis(x, j).terms() {
                    m[(k, j)] = c.clone();
                }
            }
            m
        })
        .collect();
    Representation::new(alg, alg.parities().to_vec(), actions)
}

/// Tensor basis index of a multi-index, first factor most significant.
pub(crate) fn flat_index(dims: &[usize], multi: &[usize]) -> usize {
    multi.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub(crate) fn multi_index(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

/// Action of `x` through factor `k` only, with the Koszul sign
/// `(-1)^{|x|(|w_1| + ... + |w_{k-1}|)}`.
pub(crate) fn lifted_action(alg: &SuperAlgebra, factors: &[Representation], x: usize, k: usize) -> Matrix {
    let dims: Vec<usize> = factors.iter().map(Representation::dim).collect();
    let total: usize = dims.iter().product();
    let a = factors[k].action(x);
    let px = alg.parity(x);
    let mut out = Matrix::zeros(total, total);
    for col in 0..total {
        let multi = multi_index(&dims, col);
        let before = (0..k).fold(Parity::Even, |p, q| p + factors[q].parity()[multi[q]]);
        let s = rational::sign(koszul(px, before));
        for r in 0..dims[k] {
            let c = &a[(r, multi[k])];
            if c.is_zero() {
                continue;
            }
            let mut target = multi.clone();
            target[k] = r;
            out[(flat_index(&dims, &target), col)] = c * &s;
        }
    }
    out
}

/// `x.(w_1 ⊗ ... ⊗ w_n) = Σ_k (-1)^{|x|(|w_1|+...+|w_{k-1}|)} w_1 ⊗ ... ⊗ x.w_k ⊗ ...`.
pub fn tensor_product(alg: &SuperAlgebra, factors: &[Representation]) -> Result<Representation> {
    if factors.is_empty() {
        return Err(Error::InvalidRepresentation("tensor product of no factors".into()));
    }
    let dims: Vec<usize> = factors.iter().map(Representation::dim).collect();
    let total: usize = dims.iter().product();
    let parity = (0..total)
        .map(|f| {
            multi_index(&dims, f)
                .iter()
                .enumerate()
                .fold(Parity::Even, |p, (k, &i)| p + factors[k].parity()[i])
        })
        .collect();
    let actions = (0..alg.dim())
        .map(|x| {
            let mut m = Matrix::zeros(total, total);
            for k in 0..factors.len() {
                m.add_scaled(&lifted_action(alg, factors, x, k), &rational::one());
            }
            m
        })
        .collect();
    Ok(Representation { parity, actions })
}
