use std::collections::BTreeMap;

use num::Zero;

use super::roots::DualPair;
use super::{AlgebraElement, RootDatum, SuperAlgebra, Weight};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};
use crate::uea::{Pbw, UeaElement};

/// Element of `g ⊗ g` keyed by basis index pairs.
pub type Tensor2 = BTreeMap<(usize, usize), Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub lhs: Tensor2,
    pub rhs: Tensor2,
    pub difference: Tensor2,
    /// `sum [v_i(a), z] u_i(b) - (-1)^{|z|} sum y_i(a) [z, x_i(b)]` in normal form.
    pub corollary_difference: Option<UeaElement>,
}

impl PairingReport {
    pub fn pass(&self) -> bool {
        self.difference.is_empty() && self.corollary_difference.as_ref().is_none_or(UeaElement::is_zero)
    }
}

fn add_tensor(t: &mut Tensor2, x: &AlgebraElement, y: &AlgebraElement, c: &Rational) {
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let slot = t.entry((i, j)).or_insert_with(Rational::zero);
            *slot += a * b * c;
            if slot.is_zero() {
                t.remove(&(i, j));
            }
        }
    }
}

fn pair_for<'r>(roots: &'r RootDatum, w: &Weight) -> Result<&'r DualPair> {
    roots
        .dual
        .root_pairs
        .iter()
        .find(|p| &p.root == w)
        .ok_or_else(|| Error::Precondition(format!("{w} is not a positive root")))
}

/// Checks `sum_i [v_i, z] ⊗ u_i = (-1)^{|z|} sum_i y_i ⊗ [z, x_i]` where
/// `{x_i}`, `{y_i}` are dual bases of `g_alpha`, `g_-alpha` and `{u_i}`, `{v_i}`
/// of `g_beta`, `g_-beta`. With `args = (a, b)` the image in the enveloping
/// algebra under `x ⊗ y -> x(a) y(b)` is compared as well.
pub fn check_dual_pairing_identity(
    alg: &SuperAlgebra,
    roots: &RootDatum,
    alpha: &Weight,
    beta: &Weight,
    z: &AlgebraElement,
    args: Option<(&LaurentPoly, &LaurentPoly)>,
) -> Result<PairingReport> {
    let pa = pair_for(roots, alpha)?;
    let pb = pair_for(roots, beta)?;
    let target = beta.sub(alpha);
    for i in z.support() {
        if roots.weights[i] != target {
            return Err(Error::Precondition(format!(
                "z = {} is not in the root space of {target}",
                alg.element_to_string(z)
            )));
        }
    }
    let z_odd = pa.parity != pb.parity;
    let sign = rational::sign(z_odd);

    let mut lhs = Tensor2::new();
    for (u, v) in pb.e.iter().zip(&pb.f) {
        add_tensor(&mut lhs, &alg.bracket(v, z), u, &rational::one());
    }
    let mut rhs = Tensor2::new();
    for (x, y) in pa.e.iter().zip(&pa.f) {
        add_tensor(&mut rhs, y, &alg.bracket(z, x), &sign);
    }
    let mut difference = lhs.clone();
    for (k, c) in &rhs {
        let slot = difference.entry(*k).or_insert_with(Rational::zero);
        *slot -= c;
        if slot.is_zero() {
            difference.remove(k);
        }
    }

    let corollary_difference = args.map(|(a, b)| {
        let pbw = Pbw::new(alg);
        let mut out = UeaElement::zero();
        for (u, v) in pb.e.iter().zip(&pb.f) {
            let l = UeaElement::embed(&alg.bracket(v, z), a);
            let r = UeaElement::embed(u, b);
            out = out.add(&pbw.mul(&l, &r));
        }
        for (x, y) in pa.e.iter().zip(&pa.f) {
            let l = UeaElement::embed(y, a);
            let r = UeaElement::embed(&alg.bracket(z, x), b);
            out = out.sub(&pbw.mul(&l, &r).scale(&sign));
        }
        out
    });

    Ok(PairingReport {
        lhs,
        rhs,
        difference,
        corollary_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_gl, build_rank1, root_decomposition, Rank1Kind};

    fn all_pairs_pass(alg: &SuperAlgebra) {
        let roots = root_decomposition(alg).unwrap();
        let a = LaurentPoly::from_terms([(1, rational::int(1)), (-1, rational::int(2))]);
        let b = LaurentPoly::from_terms([(0, rational::int(3)), (2, rational::frac(-1, 2))]);
        let pos: Vec<Weight> = roots.positive_roots().cloned().collect();
        for alpha in &pos {
            for beta in &pos {
                let zs = roots.space_basis(&beta.sub(alpha));
                for z in zs {
                    let rep = check_dual_pairing_identity(
                        alg,
                        &roots,
                        alpha,
                        beta,
                        &AlgebraElement::basis(z),
                        Some((&a, &b)),
                    )
                    .unwrap();
                    assert!(rep.pass(), "{} {alpha} {beta} {}", alg.name(), alg.label(z));
                }
            }
        }
    }

    #[test]
    fn holds_on_builtins() {
        for alg in [
            build_rank1(Rank1Kind::Sl2),
            build_rank1(Rank1Kind::Gl11),
            build_rank1(Rank1Kind::Osp12),
            build_gl(2, 1).unwrap(),
        ] {
            all_pairs_pass(&alg);
        }
    }

    #[test]
    fn gl21_example() {
        let alg = build_gl(2, 1).unwrap();
        let roots = root_decomposition(&alg).unwrap();
        let w = |i: &str| roots.weights[alg.index_of(i).unwrap()].clone();
        let z = AlgebraElement::basis(alg.index_of("E[2,3]").unwrap());
        let rep = check_dual_pairing_identity(&alg, &roots, &w("E[1,2]"), &w("E[1,3]"), &z, None).unwrap();
        assert!(rep.pass());
        assert!(!rep.lhs.is_empty());
    }

    #[test]
    fn zero_z_and_bad_z() {
        let alg = build_rank1(Rank1Kind::Sl2);
        let roots = root_decomposition(&alg).unwrap();
        let a = roots.weights[alg.index_of("e").unwrap()].clone();
        let rep = check_dual_pairing_identity(&alg, &roots, &a, &a, &AlgebraElement::zero(), None).unwrap();
        assert!(rep.lhs.is_empty() && rep.rhs.is_empty());
        let e = AlgebraElement::basis(alg.index_of("e").unwrap());
        assert!(matches!(
            check_dual_pairing_identity(&alg, &roots, &a, &a, &e, None),
            Err(Error::Precondition(_))
        ));
    }
}
