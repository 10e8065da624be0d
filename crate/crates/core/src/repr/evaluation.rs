use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::{adjoint_module, lifted_action, natural_module, tensor_product, Representation, RepresentationDoc};
use crate::algebra::{root_decomposition, Parity, RootDatum, SuperAlgebra, Weight};
use crate::error::{Error, Result};
use crate::invariants::{build_even_gelfand, build_gelfand};
use crate::laurent::{lagrange_basis, validate_points, LaurentPoly};
use crate::linalg::{echelon_rows, in_row_span, row_coordinates, Matrix};
use crate::rational::{self, Rational};
use crate::uea::{LoopGenerator, Pbw, UeaElement};

/// A tensor factor in a module spec: a built-in module name or an inline
/// representation document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorSpec {
    Named(String),
    Inline(RepresentationDoc),
}

/// `{"factors": ["natural", ...], "points": ["1", "2", ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub factors: Vec<FactorSpec>,
    pub points: Vec<String>,
}

impl ModuleSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn build<'a>(&self, alg: &'a SuperAlgebra) -> Result<EvaluationModule<'a>> {
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                FactorSpec::Named(n) if n == "natural" => natural_module(alg),
                FactorSpec::Named(n) if n == "adjoint" => adjoint_module(alg),
                FactorSpec::Named(n) => Err(Error::Schema(format!(
                    "unknown module '{n}' (expected \"natural\", \"adjoint\" or an inline document)"
                ))),
                FactorSpec::Inline(doc) => doc.to_representation(alg),
            })
            .collect::<Result<Vec<_>>>()?;
        let points = self
            .points
            .iter()
            .map(|p| rational::parse(p).map_err(|e| Error::InvalidPoints(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        EvaluationModule::new(alg, factors, points)
    }
}

/// `V_μ⁺` for one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightHwv {
    pub weight: Weight,
    /// Tensor basis indices spanning `V_μ`.
    pub weight_space: Vec<usize>,
    /// Rows are basis vectors in reduced echelon form.
    pub basis: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// `(μ, dim V_μ⁺, images of basis vectors that leave V_μ⁺)`.
    pub per_weight: Vec<(Weight, usize, Vec<Vec<Rational>>)>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.per_weight.iter().all(|(_, _, esc)| esc.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandSumReport {
    pub total: Matrix,
    pub sum: Matrix,
    pub tuples: usize,
}

impl GelfandSumReport {
    pub fn difference(&self) -> Matrix {
        &self.total - &self.sum
    }

    pub fn pass(&self) -> bool {
        self.total == self.sum
    }
}

/// Matrix of an operator on each `V_μ⁺` in its echelon basis, when the space is
/// preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HwvOperatorReport {
    pub per_weight: Vec<(Weight, Option<Matrix>)>,
}

impl HwvOperatorReport {
    /// Whether the operator is a scalar on every `V_μ⁺`.
    pub fn all_scalar(&self) -> bool {
        self.per_weight.iter().all(|(_, m)| m.as_ref().is_some_and(is_scalar))
    }
}

pub(crate) fn is_scalar(m: &Matrix) -> bool {
    m.is_diagonal() && m.diagonal().windows(2).all(|w| w[0] == w[1])
}

/// Highest weight vectors for the even part, with `S_k` restricted to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenHwvSpace {
    pub weight: Weight,
    pub basis: Matrix,
    /// `(k, matrix of S_k on the span)`; `None` if `S_k` leaves the span.
    pub s_k: Vec<(usize, Option<Matrix>)>,
}

/// `V(λ, d) = V_1 ⊗ ... ⊗ V_n` with `x ⊗ t^m` acting through factor `k` scaled by `d_k^m`.
pub struct EvaluationModule<'a> {
    alg: &'a SuperAlgebra,
    roots: RootDatum,
    factors: Vec<Representation>,
    points: Vec<Rational>,
    lagrange: Vec<LaurentPoly>,
    tensor: Representation,
    /// `lifted[x][k]`: action of `x` through factor `k` alone.
    lifted: Vec<Vec<Matrix>>,
    cache: RwLock<HashMap<LoopGenerator, Matrix>>,
}

impl<'a> EvaluationModule<'a> {
    pub fn new(alg: &'a SuperAlgebra, factors: Vec<Representation>, points: Vec<Rational>) -> Result<Self> {
        validate_points(&points)?;
        if factors.len() != points.len() {
            return Err(Error::InvalidPoints(format!(
                "{} factors but {} evaluation points",
                factors.len(),
                points.len()
            )));
        }
        let roots = root_decomposition(alg)?;
        let lagrange = lagrange_basis(&points)?;
        let tensor = tensor_product(alg, &factors)?;
        let lifted = (0..alg.dim())
            .map(|x| (0..factors.len()).map(|k| lifted_action(alg, &factors, x, k)).collect())
            .collect();
        Ok(Self {
            alg,
            roots,
            factors,
            points,
            lagrange,
            tensor,
            lifted,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn algebra(&self) -> &'a SuperAlgebra {
        self.alg
    }

    pub fn roots(&self) -> &RootDatum {
        &self.roots
    }

    pub fn factors(&self) -> &[Representation] {
        &self.factors
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// `p_1, ..., p_n` with `p_i(d_j) = δ_ij`.
    pub fn lagrange(&self) -> &[LaurentPoly] {
        &self.lagrange
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn parity(&self) -> &[Parity] {
        self.tensor.parity()
    }

    /// The `g`-module `V_1 ⊗ ... ⊗ V_n` (`m = 0`).
    pub fn tensor(&self) -> &Representation {
        &self.tensor
    }

    /// Action of `x` on factor `k` alone.
    pub fn factor_action(&self, x: usize, k: usize) -> &Matrix {
        &self.lifted[x][k]
    }

    /// Matrix of `x ⊗ t^m`.
    pub fn evaluation_action(&self, x: usize, m: i64) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (k, d) in self.points.iter().enumerate() {
            let s = rational::pow(d, m).expect("points are nonzero");
            out.add_scaled(&self.lifted[x][k], &s);
        }
        out
    }

    fn generator_matrix(&self, g: LoopGenerator) -> Matrix {
        if let Some(m) = self.cache.read().expect("cache lock").get(&g) {
            return m.clone();
        }
        let m = self.evaluation_action(g.index, g.exponent);
        self.cache.write().expect("cache lock").insert(g, m.clone());
        m
    }

    /// Matrix of a word `g_1 g_2 ... g_r`, i.e. `ρ(g_1) ρ(g_2) ... ρ(g_r)`.
    pub fn act_word(&self, w: &[LoopGenerator]) -> Matrix {
        let mut out = Matrix::identity(self.dim());
        for &g in w.iter().rev() {
            out = &self.generator_matrix(g) * &out;
        }
        out
    }

    pub fn act_uea(&self, u: &UeaElement) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (w, c) in u.terms() {
            out.add_scaled(&self.act_word(w), c);
        }
        out
    }

    /// Matrix of `x ⊗ p(t)`.
    pub fn act_loop(&self, x: usize, p: &LaurentPoly) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (n, c) in p.terms() {
            out.add_scaled(&self.generator_matrix(LoopGenerator::new(x, n)), c);
        }
        out
    }

    /// Tensor basis grouped by weight, weights in increasing order.
    pub fn weight_spaces(&self) -> Result<BTreeMap<Weight, Vec<usize>>> {
        let cartan = self.alg.cartan();
        let mats: Vec<&Matrix> = cartan.iter().map(|&h| self.tensor.action(h)).collect();
        for (m, &h) in mats.iter().zip(cartan) {
            if !m.is_diagonal() {
                return Err(Error::UnsupportedBasis(format!(
                    "{} does not act diagonally on the tensor basis",
                    self.alg.label(h)
                )));
            }
        }
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for j in 0..self.dim() {
            let w = Weight(mats.iter().map(|m| m[(j, j)].clone()).collect());
            out.entry(w).or_default().push(j);
        }
        Ok(out)
    }

    fn joint_kernel(&self, space: &[usize], generators: &[usize]) -> Matrix {
        let n = self.dim();
        let blocks: Vec<Matrix> = generators
            .iter()
            .map(|&x| self.tensor.action(x).select_columns(space))
            .collect();
        let kernel = if blocks.is_empty() {
            Matrix::identity(space.len())
        } else {
            Matrix::vstack(&blocks).kernel()
        };
        let rows = (0..kernel.rows())
            .map(|r| {
                let mut v = vec![Rational::zero(); n];
                for (c, &j) in space.iter().enumerate() {
                    v[j] = kernel[(r, c)].clone();
                }
                v
            })
            .collect();
        echelon_rows(rows, n)
    }

    /// Echelon basis of `V_μ⁺`; empty when `μ` is not a weight.
    pub fn find_hwv(&self, mu: &Weight) -> Result<Matrix> {
        let spaces = self.weight_spaces()?;
        let Some(space) = spaces.get(mu) else {
            return Ok(Matrix::zeros(0, self.dim()));
        };
        Ok(self.joint_kernel(space, &self.roots.positive_root_vectors()))
    }

    /// Every weight with `V_μ⁺ ≠ 0`.
    pub fn hwv_spaces(&self) -> Result<Vec<WeightHwv>> {
        let positive = self.roots.positive_root_vectors();
        Ok(self
            .weight_spaces()?
            .into_iter()
            .filter_map(|(weight, space)| {
                let basis = self.joint_kernel(&space, &positive);
                (basis.rows() > 0).then_some(WeightHwv {
                    weight,
                    weight_space: space,
                    basis,
                })
            })
            .collect())
    }

    /// Whether `op` maps each `V_μ⁺` into itself; escaping images are listed.
    pub fn check_preserves_hwv(&self, op: &Matrix) -> Result<StabilityReport> {
        let per_weight = self
            .hwv_spaces()?
            .into_iter()
            .map(|s| {
                let escaping = (0..s.basis.rows())
                    .map(|r| op.mul_vec(s.basis.row(r)))
                    .filter(|img| !in_row_span(&s.basis, img))
                    .collect();
                (s.weight, s.basis.rows(), escaping)
            })
            .collect();
        Ok(StabilityReport { per_weight })
    }

    /// `T_k(p_{j_1}, ..., p_{j_k})` with 1-based indices into the points.
    pub fn gelfand_tuple(&self, pbw: &Pbw<'_>, tuple: &[usize]) -> Result<UeaElement> {
        let args = tuple
            .iter()
            .map(|&j| {
                j.checked_sub(1)
                    .and_then(|i| self.lagrange.get(i))
                    .cloned()
                    .ok_or_else(|| Error::InvalidPoints(format!("tuple index {j} is not in 1..={}", self.points.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        build_gelfand(pbw, &args)
    }

    pub fn check_hwv_stability(&self, pbw: &Pbw<'_>, tuple: &[usize]) -> Result<StabilityReport> {
        let op = self.act_uea(&self.gelfand_tuple(pbw, tuple)?);
        self.check_preserves_hwv(&op)
    }

    /// All `n^k` tuples in lexicographic order.
    pub fn tuples(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.points.len();
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (1..=n).map(move |j| {
                        let mut t = t.clone();
                        t.push(j);
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// `act(T_k)` against `Σ act(T_k(p_{j_1}, ..., p_{j_k}))`.
    pub fn check_gelfand_sum(&self, pbw: &Pbw<'_>, k: usize) -> Result<GelfandSumReport> {
        let total = self.act_uea(&build_gelfand(pbw, &vec![LaurentPoly::one(); k])?);
        let tuples = self.tuples(k);
        let mut sum = Matrix::zeros(self.dim(), self.dim());
        for t in &tuples {
            sum.add_scaled(&self.act_uea(&self.gelfand_tuple(pbw, t)?), &rational::one());
        }
        Ok(GelfandSumReport {
            total,
            sum,
            tuples: tuples.len(),
        })
    }

    /// Matrices of `op` on each `V_μ⁺` in its echelon basis (columns are images).
    pub fn hwv_operator_matrices(&self, op: &Matrix) -> Result<HwvOperatorReport> {
        let per_weight = self
            .hwv_spaces()?
            .into_iter()
            .map(|s| (s.weight, restrict(op, &s.basis)))
            .collect();
        Ok(HwvOperatorReport { per_weight })
    }

    /// Highest weight vectors for the even subalgebra, with `S_1..S_kmax`
    /// restricted to each space.
    pub fn find_even_hwv(&self, pbw: &Pbw<'_>, kmax: usize) -> Result<Vec<EvenHwvSpace>> {
        let even_positive: Vec<usize> = self
            .roots
            .positive_root_vectors()
            .into_iter()
            .filter(|&x| !self.alg.parity(x).is_odd())
            .collect();
        let s_mats = if self.alg.gl_shape().is_some() {
            (1..=kmax)
                .map(|k| Ok((k, self.act_uea(&build_even_gelfand(pbw, k)?))))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(self
            .weight_spaces()?
            .into_iter()
            .filter_map(|(weight, space)| {
                let basis = self.joint_kernel(&space, &even_positive);
                if basis.rows() == 0 {
                    return None;
                }
                let s_k = s_mats.iter().map(|(k, m)| (*k, restrict(m, &basis))).collect();
                Some(EvenHwvSpace { weight, basis, s_k })
            })
            .collect())
    }
}

/// Matrix of `op` on the row span of `basis` (echelon), or `None` if the span
/// is not preserved.
fn restrict(op: &Matrix, basis: &Matrix) -> Option<Matrix> {
    let r = basis.rows();
    let mut out = Matrix::zeros(r, r);
    for c in 0..r {
        let img = op.mul_vec(basis.row(c));
        let coords = row_coordinates(basis, &img)?;
        for (k, x) in coords.into_iter().enumerate() {
            out[(k, c)] = x;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_gl, build_rank1, Rank1Kind};
    use crate::invariants::build_casimir;
    use crate::rational::{frac, int};
    use num::One;

    fn gl21_vv(gl: &SuperAlgebra) -> EvaluationModule<'_> {
        let v = natural_module(gl).unwrap();
        EvaluationModule::new(gl, vec![v.clone(), v], vec![int(1), int(2)]).unwrap()
    }

    fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    #[test]
    fn rejects_bad_points() {
        let gl = build_gl(2, 1).unwrap();
        let v = natural_module(&gl).unwrap();
        for pts in [vec![int(1), int(1)], vec![int(0), int(2)]] {
            assert!(matches!(
                EvaluationModule::new(&gl, vec![v.clone(), v.clone()], pts),
                Err(Error::InvalidPoints(_))
            ));
        }
        assert!(EvaluationModule::new(&gl, vec![v.clone()], vec![int(1), int(2)]).is_err());
    }

    #[test]
    fn evaluation_action_scales_per_factor() {
        let gl = build_gl(2, 1).unwrap();
        let v = natural_module(&gl).unwrap();
        let m = EvaluationModule::new(&gl, vec![v.clone()], vec![int(3)]).unwrap();
        let x = gl.index_of("E[1,3]").unwrap();
        assert_eq!(m.evaluation_action(x, 2), v.action(x).scale(&int(9)));
        assert_eq!(m.evaluation_action(x, -1), v.action(x).scale(&frac(1, 3)));
        let vv = gl21_vv(&gl);
        assert_eq!(&vv.evaluation_action(x, 0), vv.tensor().action(x));
        for (k, p) in vv.lagrange().iter().enumerate() {
            assert_eq!(&vv.act_loop(x, p), vv.factor_action(x, k));
        }
        let vanishing = LaurentPoly::from_terms([(2, int(1)), (1, int(-3)), (0, int(2))]);
        assert!(vv.act_loop(x, &vanishing).is_zero());
    }

    #[test]
    fn sl2_casimir_on_natural_module() {
        let sl2 = build_rank1(Rank1Kind::Sl2);
        let pbw = Pbw::new(&sl2);
        let roots = root_decomposition(&sl2).unwrap();
        let m = EvaluationModule::new(&sl2, vec![natural_module(&sl2).unwrap()], vec![int(1)]).unwrap();
        let omega = m.act_uea(&build_casimir(&pbw, &roots));
        assert_eq!(omega, Matrix::identity(2).scale(&frac(3, 2)));
        assert_eq!(m.act_uea(&UeaElement::one()), Matrix::identity(2));
    }

    #[test]
    fn weights_and_hwv() {
        let gl = build_gl(2, 1).unwrap();
        let v = natural_module(&gl).unwrap();
        let single = EvaluationModule::new(&gl, vec![v], vec![int(1)]).unwrap();
        let ws = single.weight_spaces().unwrap();
        assert_eq!(ws.len(), 3);
        assert!(ws.values().all(|s| s.len() == 1));
        let eps1 = Weight(vec![int(1), int(0), int(0)]);
        let h = single.find_hwv(&eps1).unwrap();
        assert_eq!(h.rows(), 1);
        assert_eq!(h.row(0), unit_vector(3, 0).as_slice());

        let vv = gl21_vv(&gl);
        let ws = vv.weight_spaces().unwrap();
        assert_eq!(ws.values().map(Vec::len).sum::<usize>(), 9);
        assert_eq!(ws[&Weight(vec![int(1), int(1), int(0)])].len(), 2);
        let h = vv.find_hwv(&Weight(vec![int(2), int(0), int(0)])).unwrap();
        assert_eq!(h.rows(), 1);
        assert_eq!(h.row(0), unit_vector(9, 0).as_slice());
        assert_eq!(vv.find_hwv(&Weight(vec![int(5), int(0), int(0)])).unwrap().rows(), 0);
    }

    #[test]
    fn stability_and_sum() {
        let gl = build_gl(2, 1).unwrap();
        let pbw = Pbw::new(&gl);
        let vv = gl21_vv(&gl);
        for t in vv.tuples(2) {
            assert!(vv.check_hwv_stability(&pbw, &t).unwrap().pass(), "{t:?}");
        }
        assert!(vv.check_hwv_stability(&pbw, &[1]).unwrap().pass());
        let e12 = vv.tensor().action(gl.index_of("E[1,2]").unwrap()).clone();
        let e21 = vv.tensor().action(gl.index_of("E[2,1]").unwrap()).clone();
        // raising operators kill V_μ⁺; lowering ones leave it
        assert!(vv.check_preserves_hwv(&e12).unwrap().pass());
        assert!(!vv.check_preserves_hwv(&e21).unwrap().pass());
        for k in 1..=2 {
            assert!(vv.check_gelfand_sum(&pbw, k).unwrap().pass());
        }
    }

    #[test]
    fn even_hwv_of_natural() {
        let gl = build_gl(2, 1).unwrap();
        let pbw = Pbw::new(&gl);
        let m = EvaluationModule::new(&gl, vec![natural_module(&gl).unwrap()], vec![int(1)]).unwrap();
        let spaces = m.find_even_hwv(&pbw, 2).unwrap();
        let vecs: Vec<Vec<Rational>> = spaces.iter().map(|s| s.basis.row(0).to_vec()).collect();
        assert_eq!(spaces.len(), 2);
        assert!(vecs.contains(&unit_vector(3, 0)));
        assert!(vecs.contains(&unit_vector(3, 2)));
        assert!(spaces.iter().all(|s| s.s_k.iter().all(|(_, m)| m.is_some())));
    }

    #[test]
    fn module_spec_json() {
        let gl = build_gl(2, 1).unwrap();
        let spec = ModuleSpec::from_json(r#"{"factors": ["natural", "natural"], "points": ["1", "2"]}"#).unwrap();
        assert_eq!(spec.build(&gl).unwrap().dim(), 9);
        let bad = ModuleSpec::from_json(r#"{"factors": ["natural", "natural"], "points": ["1", "1"]}"#).unwrap();
        assert!(matches!(bad.build(&gl), Err(Error::InvalidPoints(_))));
        let doc = natural_module(&gl).unwrap().to_doc(&gl);
        let inline = ModuleSpec {
            factors: vec![FactorSpec::Inline(doc)],
            points: vec!["1/2".into()],
        };
        let text = serde_json::to_string(&inline).unwrap();
        assert_eq!(ModuleSpec::from_json(&text).unwrap().build(&gl).unwrap().dim(), 3);
    }
}
