//! Casimir, Gelfand and anti-invariant operators, and their verifiers.

use std::collections::BTreeMap;

use num::Zero;
use rayon::prelude::*;

use crate::algebra::{koszul, AlgebraElement, Parity, RootDatum, SuperAlgebra};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};
use crate::uea::{expand_product, LoopGenerator, Pbw, UeaElement, Word, WordSum};

/// Named operators that can be built from an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    Casimir,
    CasimirC,
    GeneralizedCasimir(LaurentPoly, LaurentPoly),
    /// `T_k(a_1, ..., a_k)`; `k` is the number of arguments.
    Gelfand(Vec<LaurentPoly>),
    EvenGelfand(usize),
    AntiInvariant(usize),
}

impl InvariantKind {
    /// `T_k = T_k(1, ..., 1)`.
    pub fn gelfand_plain(k: usize) -> Self {
        InvariantKind::Gelfand(vec![LaurentPoly::one(); k])
    }
}

/// Options for [`build_invariant`].
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// Allow `D_l` on `gl(M, N)` with `M + N < 3`.
    pub allow_small_anti: bool,
}

pub fn build_invariant(
    pbw: &Pbw<'_>,
    roots: &RootDatum,
    kind: &InvariantKind,
    opts: BuildOptions,
) -> Result<UeaElement> {
    match kind {
        InvariantKind::Casimir => Ok(build_casimir(pbw, roots)),
        InvariantKind::CasimirC => build_casimir_c(pbw),
        InvariantKind::GeneralizedCasimir(a, b) => Ok(build_generalized_casimir(pbw, roots, a, b)),
        InvariantKind::Gelfand(args) => build_gelfand(pbw, args),
        InvariantKind::EvenGelfand(k) => build_even_gelfand(pbw, *k),
        InvariantKind::AntiInvariant(l) => build_anti_invariant(pbw, *l, opts.allow_small_anti),
    }
}

fn lift(x: &AlgebraElement) -> UeaElement {
    UeaElement::embed(x, &LaurentPoly::one())
}

/// `Ω = 2 h_ρ + Σ h_i h^i + Σ_{α>0} 2 Σ_i f_α^i e_α^i`.
pub fn build_casimir(pbw: &Pbw<'_>, roots: &RootDatum) -> UeaElement {
    let two = rational::int(2);
    let mut out = lift(&roots.h_rho).scale(&two);
    for (h, hd) in &roots.dual.cartan {
        out = out.add(&pbw.mul(&lift(h), &lift(hd)));
    }
    for pair in &roots.dual.root_pairs {
        for (e, f) in pair.e.iter().zip(&pair.f) {
            out = out.add(&pbw.mul(&lift(f), &lift(e)).scale(&two));
        }
    }
    out
}

/// `Ω_c = Σ (-1)^{|x_i|} x_i y_i` over the full basis `{x_i}` and its dual
/// `{y_i}`, `(x_i, y_j) = δ_ij`.
pub fn build_casimir_c(pbw: &Pbw<'_>) -> Result<UeaElement> {
    let alg = pbw.algebra();
    let inv = alg
        .form_matrix()
        .inverse()
        .map_err(|_| Error::Singular("invariant form is degenerate".into()))?;
    let mut out = UeaElement::zero();
    for i in 0..alg.dim() {
        let y = AlgebraElement::from_terms((0..alg.dim()).map(|k| (k, inv[(k, i)].clone())));
        let s = rational::sign(alg.parity(i).is_odd());
        out = out.add(&pbw.mul(&lift(&AlgebraElement::basis(i)), &lift(&y)).scale(&s));
    }
    Ok(out)
}

/// `Ω(a,b) = 2 h_ρ(ab) + Σ h_i(a) h^i(b) + Σ_{α>0} Σ_i (f_α^i(a) e_α^i(b) + f_α^i(b) e_α^i(a))`,
/// expanded bilinearly over the monomials of `a` and `b`.
pub fn build_generalized_casimir(pbw: &Pbw<'_>, roots: &RootDatum, a: &LaurentPoly, b: &LaurentPoly) -> UeaElement {
    let emb = UeaElement::embed;
    let mut out = emb(&roots.h_rho, &a.mul(b)).scale(&rational::int(2));
    for (h, hd) in &roots.dual.cartan {
        out = out.add(&pbw.mul(&emb(h, a), &emb(hd, b)));
    }
    for pair in &roots.dual.root_pairs {
        for (e, f) in pair.e.iter().zip(&pair.f) {
            out = out.add(&pbw.mul(&emb(f, a), &emb(e, b)));
            out = out.add(&pbw.mul(&emb(f, b), &emb(e, a)));
        }
    }
    out
}

fn gl_shape(alg: &SuperAlgebra) -> Result<(usize, usize)> {
    alg.gl_shape()
        .ok_or_else(|| Error::Precondition(format!("{} is not a gl(M,N) algebra", alg.name())))
}

/// Index parity `p(i)` for `1 <= i <= M + N`.
fn index_parity(m: usize, i: usize) -> Parity {
    if i <= m {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Clone, Copy)]
enum CycleSign {
    /// `(-1)^{p(i_2) + ... + p(i_k)}`
    Gelfand,
    None,
    /// `(-1)^{p(i_1) + ... + p(i_k)}`
    All,
}

/// Cyclic sums `Σ s(i) E_{i1 i2}(a_1) E_{i2 i3}(a_2) ... E_{ik i1}(a_k)` as
/// unreduced word sums.
fn cyclic_words(alg: &SuperAlgebra, args: &[LaurentPoly], sign: CycleSign) -> Result<WordSum> {
    let (m, n) = gl_shape(alg)?;
    let size = m + n;
    let k = args.len();
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if args.iter().any(LaurentPoly::is_zero) {
        return Err(Error::Precondition("Laurent arguments must be nonzero".into()));
    }
    let mut out = WordSum::new();
    let mut tuple = vec![1usize; k];
    loop {
        let odd = match sign {
            CycleSign::Gelfand => tuple[1..].iter().filter(|&&i| index_parity(m, i).is_odd()).count(),
            CycleSign::None => 0,
            CycleSign::All => tuple.iter().filter(|&&i| index_parity(m, i).is_odd()).count(),
        };
        let s = rational::sign(odd % 2 == 1);
        let factors: Vec<UeaElement> = (0..k)
            .map(|p| {
                let idx = alg.gl_index(tuple[p], tuple[(p + 1) % k]).expect("gl index");
                UeaElement::embed(&AlgebraElement::basis(idx), &args[p])
            })
            .collect();
        for (c, w) in expand_product(&factors) {
            out.push((c * &s, w));
        }
        // odometer over 1..=size
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if tuple[pos] < size {
                tuple[pos] += 1;
                break;
            }
            tuple[pos] = 1;
        }
    }
}

/// `T_k(a_1, ..., a_k)` for `gl(M, N)`.
pub fn build_gelfand(pbw: &Pbw<'_>, args: &[LaurentPoly]) -> Result<UeaElement> {
    Ok(pbw.normal_form(&cyclic_words(pbw.algebra(), args, CycleSign::Gelfand)?))
}

/// `S_k = Σ E_{i1 i2} E_{i2 i3} ... E_{ik i1}` without signs.
pub fn build_even_gelfand(pbw: &Pbw<'_>, k: usize) -> Result<UeaElement> {
    let args = vec![LaurentPoly::one(); k];
    Ok(pbw.normal_form(&cyclic_words(pbw.algebra(), &args, CycleSign::None)?))
}

/// `D_l = Σ (-1)^{p(i_1) + ... + p(i_l)} E_{i1 i2} ... E_{il i1}`.
pub fn build_anti_invariant(pbw: &Pbw<'_>, l: usize, allow_small: bool) -> Result<UeaElement> {
    let (m, n) = gl_shape(pbw.algebra())?;
    if m + n < 3 && !allow_small {
        return Err(Error::Precondition(format!(
            "D_l is defined for gl(M,N) with M+N >= 3, got gl({m},{n})"
        )));
    }
    let args = vec![LaurentPoly::one(); l];
    Ok(pbw.normal_form(&cyclic_words(pbw.algebra(), &args, CycleSign::All)?))
}

/// Exact residuals of a verification. `pass` depends only on `residuals`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked_against: Vec<LoopGenerator>,
    pub residuals: Vec<(LoopGenerator, UeaElement)>,
    /// Residuals reported for inspection only.
    pub informational: Vec<(LoopGenerator, UeaElement)>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(LoopGenerator, UeaElement)> + '_ {
        self.residuals.iter().filter(|(_, r)| !r.is_zero())
    }

    pub fn residual(&self, g: LoopGenerator) -> Option<&UeaElement> {
        self.residuals
            .iter()
            .chain(&self.informational)
            .find(|(h, _)| *h == g)
            .map(|(_, r)| r)
    }
}

fn all_generators(alg: &SuperAlgebra) -> Vec<LoopGenerator> {
    (0..alg.dim()).map(LoopGenerator::constant).collect()
}

fn residuals<F>(gens: &[LoopGenerator], f: F) -> Result<Vec<(LoopGenerator, UeaElement)>>
where
    F: Fn(LoopGenerator) -> Result<UeaElement> + Sync,
{
    gens.par_iter().map(|&g| Ok((g, f(g)?))).collect()
}

/// Residuals `[u, g]` for each generator (the full basis at `t^0` by default).
/// Mixed-parity `u` is handled by linearity.
pub fn verify_central(pbw: &Pbw<'_>, u: &UeaElement, generators: Option<&[LoopGenerator]>) -> VerificationReport {
    let gens = generators
        .map(<[_]>::to_vec)
        .unwrap_or_else(|| all_generators(pbw.algebra()));
    let res = residuals(&gens, |g| Ok(pbw.supercommutator_linear(u, &UeaElement::generator(g)))).expect("infallible");
    VerificationReport {
        checked_against: gens,
        residuals: res,
        informational: Vec::new(),
    }
}

/// Residuals against the even basis; odd residuals are informational.
pub fn verify_even_central(pbw: &Pbw<'_>, u: &UeaElement) -> VerificationReport {
    let alg = pbw.algebra();
    let (even, odd): (Vec<_>, Vec<_>) = all_generators(alg)
        .into_iter()
        .partition(|g| !alg.parity(g.index).is_odd());
    let f = |g: LoopGenerator| Ok(pbw.supercommutator_linear(u, &UeaElement::generator(g)));
    VerificationReport {
        checked_against: even.clone(),
        residuals: residuals(&even, f).expect("infallible"),
        informational: residuals(&odd, f).expect("infallible"),
    }
}

/// Residuals `ad' g . u` over the full basis.
pub fn verify_anti_invariant(pbw: &Pbw<'_>, u: &UeaElement) -> Result<VerificationReport> {
    u.homogeneous_parity(pbw.algebra())?;
    let gens = all_generators(pbw.algebra());
    let res = residuals(&gens, |g| pbw.ad_prime(g, u))?;
    Ok(VerificationReport {
        checked_against: gens,
        residuals: res,
        informational: Vec::new(),
    })
}

/// Element of the tensor algebra `T(g ⊗ B)`: words are not reordered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<Word, Rational>,
}

impl TensorElement {
    pub fn from_word_sum(sum: &[(Rational, Word)]) -> Self {
        let mut t = Self::default();
        for (c, w) in sum {
            t.add_term(w.clone(), c.clone());
        }
        t
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_word_sum(&self) -> WordSum {
        self.terms.iter().map(|(w, c)| (c.clone(), w.clone())).collect()
    }
}

/// `T~_k(a_1, ..., a_k)` in the tensor algebra, before projection.
pub fn gelfand_tensor(alg: &SuperAlgebra, args: &[LaurentPoly]) -> Result<TensorElement> {
    Ok(TensorElement::from_word_sum(&cyclic_words(
        alg,
        args,
        CycleSign::Gelfand,
    )?))
}

/// `ad x` on the tensor algebra: `x.(w_1 ⊗ ... ⊗ w_k) = Σ_j (-1)^{|x|(|w_1|+...+|w_{j-1}|)} w_1 ⊗ ... ⊗ [x, w_j] ⊗ ...`.
pub fn tensor_ad(alg: &SuperAlgebra, x: LoopGenerator, t: &TensorElement) -> TensorElement {
    let px = alg.parity(x.index);
    let mut out = TensorElement::default();
    for (w, c) in &t.terms {
        let mut before = Parity::Even;
        for j in 0..w.len() {
            let s = rational::sign(koszul(px, before));
            for (k, d) in alg.bracket_basis(x.index, w[j].index).terms() {
                let mut nw = w.clone();
                nw[j] = LoopGenerator::new(k, x.exponent + w[j].exponent);
                out.add_term(nw, c * d * &s);
            }
            before = before + alg.parity(w[j].index);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_gl, build_rank1, root_decomposition, Rank1Kind};
    use crate::rational::{frac, int};

    fn g(alg: &SuperAlgebra, l: &str) -> LoopGenerator {
        LoopGenerator::constant(alg.index_of(l).unwrap())
    }

    fn words(alg: &SuperAlgebra, terms: &[(Rational, &[&str])]) -> UeaElement {
        let pbw = Pbw::new(alg);
        let sum: WordSum = terms
            .iter()
            .map(|(c, w)| (c.clone(), w.iter().map(|l| g(alg, l)).collect()))
            .collect();
        pbw.normal_form(&sum)
    }

    #[test]
    fn rank1_casimirs() {
        let sl2 = build_rank1(Rank1Kind::Sl2);
        let osp = build_rank1(Rank1Kind::Osp12);
        let gl11 = build_rank1(Rank1Kind::Gl11);
        let cases = [
            (
                &sl2,
                words(
                    &sl2,
                    &[(int(1), &["h"]), (frac(1, 2), &["h", "h"]), (int(2), &["f", "e"])],
                ),
            ),
            (
                &gl11,
                words(
                    &gl11,
                    &[
                        (int(-1), &["h1"]),
                        (int(-1), &["h2"]),
                        (int(1), &["h1", "h1"]),
                        (int(-1), &["h2", "h2"]),
                        (int(2), &["f", "e"]),
                    ],
                ),
            ),
            (
                &osp,
                words(
                    &osp,
                    &[
                        (int(1), &["h"]),
                        (frac(1, 2), &["h", "h"]),
                        (int(8), &["f'", "e'"]),
                        (int(2), &["f", "e"]),
                    ],
                ),
            ),
        ];
        for (alg, expected) in cases {
            let pbw = Pbw::new(alg);
            let roots = root_decomposition(alg).unwrap();
            let omega = build_casimir(&pbw, &roots);
            assert_eq!(omega, expected, "{}", alg.name());
            assert_eq!(build_casimir_c(&pbw).unwrap(), omega);
            assert!(verify_central(&pbw, &omega, None).pass());
        }
    }

    #[test]
    fn central_fails_for_h() {
        let sl2 = build_rank1(Rank1Kind::Sl2);
        let pbw = Pbw::new(&sl2);
        let h = UeaElement::generator(g(&sl2, "h"));
        let rep = verify_central(&pbw, &h, Some(&[g(&sl2, "e")]));
        assert!(!rep.pass());
        assert_eq!(rep.residuals[0].1, UeaElement::generator(g(&sl2, "e")).scale(&int(2)));
    }

    #[test]
    fn sl2_generalized_casimir() {
        let sl2 = build_rank1(Rank1Kind::Sl2);
        let pbw = Pbw::new(&sl2);
        let roots = root_decomposition(&sl2).unwrap();
        let (a, b) = (LaurentPoly::t_pow(1), LaurentPoly::t_pow(-1));
        let om = build_generalized_casimir(&pbw, &roots, &a, &b);
        let at = |l: &str, n: i64| LoopGenerator::new(sl2.index_of(l).unwrap(), n);
        let expected = pbw.normal_form(&[
            (int(1), vec![at("h", 0)]),
            (frac(1, 2), vec![at("h", 1), at("h", -1)]),
            (int(1), vec![at("f", 1), at("e", -1)]),
            (int(1), vec![at("f", -1), at("e", 1)]),
        ]);
        assert_eq!(om, expected);
        assert_eq!(om, build_generalized_casimir(&pbw, &roots, &b, &a));
        assert!(verify_central(&pbw, &om, None).pass());
        let one = LaurentPoly::one();
        assert_eq!(
            build_generalized_casimir(&pbw, &roots, &one, &one),
            build_casimir(&pbw, &roots)
        );
    }

    #[test]
    fn gelfand_small_cases() {
        let gl = build_gl(2, 1).unwrap();
        let pbw = Pbw::new(&gl);
        let t1 = build_gelfand(&pbw, &[LaurentPoly::one()]).unwrap();
        let trace = words(
            &gl,
            &[(int(1), &["E[1,1]"]), (int(1), &["E[2,2]"]), (int(1), &["E[3,3]"])],
        );
        assert_eq!(t1, trace);
        assert_eq!(build_even_gelfand(&pbw, 1).unwrap(), trace);
        let d1 = build_anti_invariant(&pbw, 1, false).unwrap();
        assert_eq!(
            d1,
            words(
                &gl,
                &[(int(1), &["E[1,1]"]), (int(1), &["E[2,2]"]), (int(-1), &["E[3,3]"])]
            )
        );
        let d2 = build_anti_invariant(&pbw, 2, false).unwrap();
        assert_eq!(d2.parity(&gl), crate::uea::ElementParity::Even);
        let gl11 = build_gl(1, 1).unwrap();
        let pbw11 = Pbw::new(&gl11);
        assert!(build_anti_invariant(&pbw11, 1, false).is_err());
        assert!(build_anti_invariant(&pbw11, 1, true).is_ok());
        let t2 = build_gelfand(&pbw11, &[LaurentPoly::one(), LaurentPoly::one()]).unwrap();
        let s2 = build_even_gelfand(&pbw11, 2).unwrap();
        let expected_t2 = words(
            &gl11,
            &[
                (int(1), &["E[1,1]", "E[1,1]"]),
                (int(-1), &["E[1,2]", "E[2,1]"]),
                (int(1), &["E[2,1]", "E[1,2]"]),
                (int(-1), &["E[2,2]", "E[2,2]"]),
            ],
        );
        assert_eq!(t2, expected_t2);
        assert_ne!(t2, s2);
    }

    #[test]
    fn t2_is_casimir_c_on_gl() {
        let gl = build_gl(2, 1).unwrap();
        let pbw = Pbw::new(&gl);
        let roots = root_decomposition(&gl).unwrap();
        let t2 = build_gelfand(&pbw, &[LaurentPoly::one(), LaurentPoly::one()]).unwrap();
        assert_eq!(t2, build_casimir_c(&pbw).unwrap());
        assert_eq!(t2, build_casimir(&pbw, &roots));
        assert!(verify_central(&pbw, &t2, None).pass());
    }

    #[test]
    fn tensor_gelfand_is_invariant() {
        let gl = build_gl(2, 1).unwrap();
        let args = [LaurentPoly::t_pow(1), LaurentPoly::t_pow(-1)];
        let t = gelfand_tensor(&gl, &args).unwrap();
        for i in 0..gl.dim() {
            assert!(tensor_ad(&gl, LoopGenerator::constant(i), &t).is_zero());
        }
    }

    #[test]
    fn anti_invariant_rejects_mixed() {
        let osp = build_rank1(Rank1Kind::Osp12);
        let pbw = Pbw::new(&osp);
        let mixed = UeaElement::generator(g(&osp, "e")).add(&UeaElement::one());
        assert!(matches!(
            verify_anti_invariant(&pbw, &mixed),
            Err(Error::MixedParity(_))
        ));
        let scas = words(&osp, &[(int(1), &["e", "f"]), (int(-1), &["f", "e"]), (int(1), &[])]);
        assert!(verify_anti_invariant(&pbw, &scas).unwrap().pass());
    }
}
