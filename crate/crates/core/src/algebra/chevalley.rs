use super::{AlgebraElement, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{solve_in_span, Matrix};
use crate::rational;

/// Linear map on the algebra; column `j` holds the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub matrix: Matrix,
}

impl Automorphism {
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let v = self.matrix.mul_vec(&x.dense(self.matrix.cols()));
        AlgebraElement::from_terms(v.into_iter().enumerate())
    }

    pub fn image(&self, i: usize) -> AlgebraElement {
        AlgebraElement::from_terms(self.matrix.column(i).into_iter().enumerate())
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// Smallest `n <= max` with `self^n = id`.
    pub fn order(&self, max: usize) -> Option<usize> {
        let id = Matrix::identity(self.matrix.rows());
        let mut acc = self.matrix.clone();
        for n in 1..=max {
            if acc == id {
                return Some(n);
            }
            acc = &acc * &self.matrix;
        }
        None
    }

    /// Basis pairs `(i, j)` on which `[w x, w y] != w [x, y]`.
    pub fn bracket_failures(&self, alg: &SuperAlgebra) -> Vec<(usize, usize)> {
        let dim = alg.dim();
        let images: Vec<AlgebraElement> = (0..dim).map(|i| self.image(i)).collect();
        let mut bad = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let lhs = alg.bracket(&images[i], &images[j]);
                let rhs = self.apply(alg.bracket_basis(i, j));
                if lhs != rhs {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

/// The automorphism with `e_i -> -f_i`, `f_i -> -(-1)^{|a_i|} e_i` and
/// `h -> -h` on the Cartan subset, extended through brackets with the generators.
pub fn chevalley_automorphism(alg: &SuperAlgebra) -> Result<Automorphism> {
    let data = alg
        .chevalley()
        .ok_or_else(|| Error::Precondition(format!("{} carries no Chevalley generator data", alg.name())))?;
    let dim = alg.dim();
    let mut seeds: Vec<(AlgebraElement, AlgebraElement)> = Vec::new();
    for &h in alg.cartan() {
        seeds.push((AlgebraElement::basis(h), AlgebraElement::term(h, -rational::one())));
    }
    let mut generators = Vec::new();
    for &(e, f) in &data.generators {
        let odd = alg.parity(e).is_odd();
        let we = AlgebraElement::term(f, -rational::one());
        let wf = AlgebraElement::term(e, if odd { rational::one() } else { -rational::one() });
        generators.push((AlgebraElement::basis(e), we.clone()));
        generators.push((AlgebraElement::basis(f), wf.clone()));
    }
    seeds.extend(generators.iter().cloned());

    let mut known: Vec<(AlgebraElement, AlgebraElement)> = Vec::new();
    let mut rows: Vec<Vec<num::BigRational>> = Vec::new();
    let mut queue = seeds;
    while let Some((x, wx)) = queue.pop() {
        let v = x.dense(dim);
        match solve_in_span(&rows, &v) {
            Some(c) => {
                let mut expected = AlgebraElement::zero();
                for (k, ck) in c.iter().enumerate() {
                    expected.add_scaled(&known[k].1, ck);
                }
                if expected != wx {
                    return Err(Error::InvalidAlgebra(format!(
                        "Chevalley extension is inconsistent at {}",
                        alg.element_to_string(&x)
                    )));
                }
            }
            None => {
                rows.push(v);
                known.push((x.clone(), wx.clone()));
                for (g, wg) in &generators {
                    let y = alg.bracket(g, &x);
                    if !y.is_zero() {
                        queue.push((y, alg.bracket(wg, &wx)));
                    }
                }
            }
        }
    }
    if known.len() < dim {
        return Err(Error::InvalidAlgebra(format!(
            "Chevalley generators and Cartan span only {} of {} dimensions",
            known.len(),
            dim
        )));
    }
    // W X = Y with X, Y holding the known pairs as columns.
    let x_mat = Matrix::from_rows(known.iter().map(|(x, _)| x.dense(dim)).collect()).transpose();
    let y_mat = Matrix::from_rows(known.iter().map(|(_, y)| y.dense(dim)).collect()).transpose();
    let matrix = &y_mat * &x_mat.inverse()?;
    let w = Automorphism { matrix };
    if let Some(&(i, j)) = w.bracket_failures(alg).first() {
        return Err(Error::InvalidAlgebra(format!(
            "Chevalley map does not preserve [{}, {}]",
            alg.label(i),
            alg.label(j)
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_gl, build_rank1, Parity, Rank1Kind};

    #[test]
    fn sl2_order_two() {
        let alg = build_rank1(Rank1Kind::Sl2);
        let w = chevalley_automorphism(&alg).unwrap();
        let (e, f) = (alg.index_of("e").unwrap(), alg.index_of("f").unwrap());
        assert_eq!(w.image(e), AlgebraElement::term(f, -rational::one()));
        assert_eq!(w.order(8), Some(2));
    }

    #[test]
    fn osp12_order_four() {
        let alg = build_rank1(Rank1Kind::Osp12);
        let w = chevalley_automorphism(&alg).unwrap();
        assert_eq!(w.order(8), Some(4));
    }

    #[test]
    fn square_is_parity_sign() {
        for alg in [
            build_rank1(Rank1Kind::Sl2),
            build_rank1(Rank1Kind::Osp12),
            build_rank1(Rank1Kind::Gl11),
            build_gl(2, 1).unwrap(),
            build_gl(2, 2).unwrap(),
        ] {
            let w = chevalley_automorphism(&alg).unwrap();
            let w2 = w.compose(&w);
            for i in 0..alg.dim() {
                let s = match alg.parity(i) {
                    Parity::Even => rational::one(),
                    Parity::Odd => -rational::one(),
                };
                assert_eq!(
                    w2.image(i),
                    AlgebraElement::term(i, s),
                    "{} {}",
                    alg.name(),
                    alg.label(i)
                );
            }
        }
    }
}
