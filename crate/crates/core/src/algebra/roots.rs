//! Root decomposition with respect to the declared Cartan subset, dual bases
//! of opposite root spaces, `h_alpha` and the rho-shift.

use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use super::{AlgebraElement, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

/// Values of a functional on the Cartan basis, in the declared Cartan order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// First nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSpace {
    pub root: Weight,
    pub parity: Parity,
    /// Basis indices spanning the root space.
    pub basis: Vec<usize>,
}

/// Dual bases: for each positive root `{e_i}` of `g_a` and `{f_i}` of `g_-a`
/// with `(e_i, f_j) = delta_ij`, and for the Cartan `{h_i}`, `{h^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBases {
    pub root_pairs: Vec<DualPair>,
    pub cartan: Vec<(AlgebraElement, AlgebraElement)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub root: Weight,
    pub parity: Parity,
    pub e: Vec<AlgebraElement>,
    pub f: Vec<AlgebraElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoCheck {
    pub root: Weight,
    /// `2 (rho, a)`
    pub twice_rho_pairing: Rational,
    /// `(a, a)`
    pub norm: Rational,
}

impl RhoCheck {
    pub fn holds(&self) -> bool {
        self.twice_rho_pairing == self.norm
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    /// Weight of every basis vector.
    pub weights: Vec<Weight>,
    pub positive: Vec<RootSpace>,
    pub negative: Vec<RootSpace>,
    pub simple: Vec<Weight>,
    pub dual: DualBases,
    pub h_rho: AlgebraElement,
    cartan: Vec<usize>,
    gram_h: Matrix,
    gram_h_inv: Matrix,
}

/// Weight of each basis vector; errors if `ad h` is not diagonal on the basis
/// or a non-Cartan vector has weight zero.
pub(crate) fn basis_weights(alg: &SuperAlgebra) -> Result<Vec<Weight>> {
    let cartan = alg.cartan();
    let mut out = Vec::with_capacity(alg.dim());
    for j in 0..alg.dim() {
        let mut w = Vec::with_capacity(cartan.len());
        for &h in cartan {
            let v = alg.bracket_basis(h, j);
            let mut value = Rational::zero();
            for (k, c) in v.terms() {
                if k != j {
                    return Err(Error::UnsupportedBasis(format!(
                        "ad {} is not diagonal: [{}, {}] has a component along {}",
                        alg.label(h),
                        alg.label(h),
                        alg.label(j),
                        alg.label(k)
                    )));
                }
                value = c.clone();
            }
            w.push(value);
        }
        let w = Weight(w);
        if w.is_zero() && !alg.is_cartan(j) {
            return Err(Error::UnsupportedBasis(format!(
                "{} has weight zero but is not in the Cartan subset",
                alg.label(j)
            )));
        }
        out.push(w);
    }
    Ok(out)
}

pub fn root_decomposition(alg: &SuperAlgebra) -> Result<RootDatum> {
    let weights = basis_weights(alg)?;
    let cartan = alg.cartan().to_vec();
    let r = cartan.len();

    let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (j, w) in weights.iter().enumerate() {
        if !w.is_zero() {
            spaces.entry(w.clone()).or_default().push(j);
        }
    }
    let space = |w: &Weight| -> Result<RootSpace> {
        let basis = spaces.get(w).cloned().unwrap_or_default();
        let parity = alg.parity(basis[0]);
        if basis.iter().any(|&b| alg.parity(b) != parity) {
            return Err(Error::UnsupportedBasis(format!("root space {w} mixes parities")));
        }
        Ok(RootSpace {
            root: w.clone(),
            parity,
            basis,
        })
    };
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for w in spaces.keys().filter(|w| w.is_positive()) {
        if !spaces.contains_key(&w.neg()) {
            return Err(Error::UnsupportedBasis(format!("root {w} has no opposite root")));
        }
        positive.push(space(w)?);
        negative.push(space(&w.neg())?);
    }

    let simple = positive
        .iter()
        .map(|s| &s.root)
        .filter(|a| {
            !positive
                .iter()
                .any(|b| positive.iter().any(|c| b.root.add(&c.root) == **a))
        })
        .cloned()
        .collect();

    let mut gram_h = Matrix::zeros(r, r);
    for (a, &i) in cartan.iter().enumerate() {
        for (b, &j) in cartan.iter().enumerate() {
            gram_h[(a, b)] = alg.form_basis(i, j).clone();
        }
    }
    let gram_h_inv = gram_h
        .inverse()
        .map_err(|_| Error::Singular("form is degenerate on the Cartan subalgebra".into()))?;

    let mut datum = RootDatum {
        weights,
        positive,
        negative,
        simple,
        dual: DualBases {
            root_pairs: Vec::new(),
            cartan: Vec::new(),
        },
        h_rho: AlgebraElement::zero(),
        cartan,
        gram_h,
        gram_h_inv,
    };
    datum.dual = dual_basis(alg, &datum)?;
    datum.h_rho = compute_h_rho(alg, &datum)?;
    Ok(datum)
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Weight> + '_ {
        self.positive.iter().map(|s| &s.root)
    }

    /// Root space for `w` (positive or negative); `None` if `w` is not a root.
    pub fn root_space(&self, w: &Weight) -> Option<&RootSpace> {
        self.positive.iter().chain(&self.negative).find(|s| &s.root == w)
    }

    /// Basis indices of `g_w`, with `g_0 = h`.
    pub fn space_basis(&self, w: &Weight) -> Vec<usize> {
        if w.is_zero() {
            return self.cartan.clone();
        }
        self.root_space(w).map(|s| s.basis.clone()).unwrap_or_default()
    }

    pub fn is_positive_root_vector(&self, i: usize) -> bool {
        self.positive.iter().any(|s| s.basis.contains(&i))
    }

    /// Basis indices of all positive root vectors, in basis order.
    pub fn positive_root_vectors(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.positive.iter().flat_map(|s| s.basis.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    /// The unique `h_w` in `h` with `(h_w, h) = w(h)`.
    pub fn h_of(&self, w: &Weight) -> AlgebraElement {
        // sum_a c_a G[a][b] = w_b  =>  c = (G^T)^{-1} w
        let c = self.gram_h_inv.transpose().mul_vec(&w.0);
        AlgebraElement::from_terms(self.cartan.iter().copied().zip(c))
    }

    /// `(a, b) = (h_a, h_b)`.
    pub fn weight_form(&self, a: &Weight, b: &Weight) -> Rational {
        let ha = self.h_of(a).dense_on(&self.cartan);
        let hb = self.h_of(b).dense_on(&self.cartan);
        let g = self.gram_h.mul_vec(&hb);
        ha.iter().zip(&g).map(|(x, y)| x * y).sum()
    }

    /// `(a, b)` computed as `b(h_a)`, independent of the Gram matrix product.
    pub fn weight_form_by_evaluation(&self, a: &Weight, b: &Weight) -> Rational {
        let ha = self.h_of(a).dense_on(&self.cartan);
        ha.iter().zip(&b.0).map(|(x, y)| x * y).sum()
    }

    /// `rho = (sum of even positive roots - sum of odd positive roots) / 2`.
    pub fn rho(&self) -> Weight {
        let mut acc = Weight::zero(self.rank());
        for s in &self.positive {
            acc = match s.parity {
                Parity::Even => acc.add(&s.root),
                Parity::Odd => acc.sub(&s.root),
            };
        }
        acc.scale(&rational::frac(1, 2))
    }

    /// `2 (rho, a_i)` against `(a_i, a_i)` for every simple root.
    pub fn check_rho(&self) -> Vec<RhoCheck> {
        let rho = self.rho();
        self.simple
            .iter()
            .map(|a| RhoCheck {
                root: a.clone(),
                twice_rho_pairing: rational::int(2) * self.weight_form(&rho, a),
                norm: self.weight_form(a, a),
            })
            .collect()
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }
}

impl AlgebraElement {
    fn dense_on(&self, idx: &[usize]) -> Vec<Rational> {
        idx.iter().map(|&i| self.coeff(i)).collect()
    }
}

pub fn compute_h_rho(_alg: &SuperAlgebra, roots: &RootDatum) -> Result<AlgebraElement> {
    Ok(roots.h_of(&roots.rho()))
}

pub fn dual_basis(alg: &SuperAlgebra, roots: &RootDatum) -> Result<DualBases> {
    let mut root_pairs = Vec::with_capacity(roots.positive.len());
    for (pos, neg) in roots.positive.iter().zip(&roots.negative) {
        let k = pos.basis.len();
        if neg.basis.len() != k {
            return Err(Error::Singular(format!(
                "root spaces of {} and its negative differ in dimension",
                pos.root
            )));
        }
        let mut pairing = Matrix::zeros(k, k);
        for (a, &e) in pos.basis.iter().enumerate() {
            for (b, &f) in neg.basis.iter().enumerate() {
                pairing[(a, b)] = alg.form_basis(e, f).clone();
            }
        }
        let inv = pairing
            .inverse()
            .map_err(|_| Error::Singular(format!("form pairing on root {} is singular", pos.root)))?;
        let e = pos.basis.iter().map(|&i| AlgebraElement::basis(i)).collect();
        let f = (0..k)
            .map(|j| AlgebraElement::from_terms((0..k).map(|c| (neg.basis[c], inv[(c, j)].clone()))))
            .collect();
        root_pairs.push(DualPair {
            root: pos.root.clone(),
            parity: pos.parity,
            e,
            f,
        });
    }
    let cartan = roots
        .cartan
        .iter()
        .enumerate()
        .map(|(j, &h)| {
            let dual = AlgebraElement::from_terms(
                roots
                    .cartan
                    .iter()
                    .enumerate()
                    .map(|(c, &hc)| (hc, roots.gram_h_inv[(c, j)].clone())),
            );
            (AlgebraElement::basis(h), dual)
        })
        .collect();
    Ok(DualBases { root_pairs, cartan })
}
