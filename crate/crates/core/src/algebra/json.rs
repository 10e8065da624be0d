//! JSON description of an algebra. Indices are 0-based positions in `basis`;
//! coefficients are exact fraction strings.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{koszul, validate_algebra, AlgebraParts, ChevalleyData, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub label: String,
    pub parity: String,
}

/// `[i, j, [[k, "c"], ...]]`: `[b_i, b_j] = sum c b_k`.
pub type BracketDoc = (usize, usize, Vec<(usize, String)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub basis: Vec<BasisDoc>,
    pub brackets: Vec<BracketDoc>,
    pub form: Vec<(usize, usize, String)>,
    pub cartan: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chevalley: Option<Vec<(usize, usize)>>,
    /// `[M, N]` when the basis is the gl(M,N) matrix-unit basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gl: Option<(usize, usize)>,
}

impl AlgebraDoc {
    /// Brackets are emitted for `i <= j`, plus any `(j, i)` entry that is not
    /// the super-antisymmetric mirror, so the table round-trips exactly.
    pub fn from_algebra(alg: &SuperAlgebra) -> Self {
        let dim = alg.dim();
        let mut brackets = Vec::new();
        let fmt_terms = |v: &super::AlgebraElement| -> Vec<(usize, String)> {
            v.terms().map(|(k, c)| (k, rational::format(c))).collect()
        };
        for i in 0..dim {
            for j in i..dim {
                let a = alg.bracket_basis(i, j);
                let b = alg.bracket_basis(j, i);
                let sign = if koszul(alg.parity(i), alg.parity(j)) {
                    rational::one()
                } else {
                    -rational::one()
                };
                let mirrored = *b == a.scale(&sign);
                if !a.is_zero() || !mirrored {
                    brackets.push((i, j, fmt_terms(a)));
                }
                if !mirrored && i != j {
                    brackets.push((j, i, fmt_terms(b)));
                }
            }
        }
        let mut form = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let c = alg.form_basis(i, j);
                if *c != rational::zero() {
                    form.push((i, j, rational::format(c)));
                }
            }
        }
        AlgebraDoc {
            name: alg.name().to_string(),
            basis: (0..dim)
                .map(|i| BasisDoc {
                    label: alg.label(i).to_string(),
                    parity: alg.parity(i).as_str().to_string(),
                })
                .collect(),
            brackets,
            form,
            cartan: alg.cartan().to_vec(),
            chevalley: alg.chevalley().map(|c| c.generators.clone()),
            gl: alg.gl_shape(),
        }
    }

    /// Builds the table without checking axioms.
    pub fn to_algebra_unchecked(&self) -> Result<SuperAlgebra> {
        let parity = self
            .basis
            .iter()
            .map(|b| match b.parity.as_str() {
                "even" | "0" => Ok(Parity::Even),
                "odd" | "1" => Ok(Parity::Odd),
                other => Err(Error::Schema(format!(
                    "basis element {:?}: parity must be \"even\" or \"odd\", got {other:?}",
                    b.label
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let brackets = self
            .brackets
            .iter()
            .map(|(i, j, terms)| {
                let terms = terms
                    .iter()
                    .map(|(k, c)| Ok((*k, rational::parse(c)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*i, *j, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        let form = self
            .form
            .iter()
            .map(|(i, j, c)| Ok((*i, *j, rational::parse(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let alg = SuperAlgebra::from_parts(AlgebraParts {
            name: self.name.clone(),
            labels: self.basis.iter().map(|b| b.label.clone()).collect(),
            parity,
            brackets,
            form,
            cartan: self.cartan.clone(),
            chevalley: self.chevalley.clone().map(|generators| ChevalleyData { generators }),
            gl_shape: self.gl,
        })?;
        if let Some((m, n)) = self.gl {
            let size = m + n;
            if m == 0 || n == 0 || alg.dim() != size * size {
                return Err(Error::Schema(format!(
                    "\"gl\": [{m}, {n}] does not match the basis size"
                )));
            }
            for i in 1..=size {
                for j in 1..=size {
                    let want = format!("E[{i},{j}]");
                    let at = alg.gl_index(i, j).expect("in range");
                    if alg.label(at) != want {
                        return Err(Error::Schema(format!(
                            "\"gl\" basis must list {want} at position {at}, found {:?}",
                            alg.label(at)
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Parses and validates an algebra description; any axiom failure is an error
/// naming its witnesses.
pub fn load_algebra(text: &str) -> Result<SuperAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let alg = doc.to_algebra_unchecked()?;
    let report = validate_algebra(&alg);
    if !report.is_valid() {
        let mut msgs = report.describe(&alg);
        let total = msgs.len();
        msgs.truncate(5);
        let more = if total > 5 {
            format!(" (and {} more)", total - 5)
        } else {
            String::new()
        };
        return Err(Error::InvalidAlgebra(format!("{}{more}", msgs.join("; "))));
    }
    Ok(alg)
}

impl SuperAlgebra {
    pub fn to_json(&self) -> String {
        AlgebraDoc::from_algebra(self).to_json()
    }

    /// SHA-256 of the canonical JSON description, hex encoded.
    pub fn fingerprint(&self) -> String {
        let canonical = serde_json::to_string(&AlgebraDoc::from_algebra(self)).expect("serializable");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}
