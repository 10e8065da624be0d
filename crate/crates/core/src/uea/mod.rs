//! Enveloping algebra of the loop algebra `g ⊗ Q[t, t^-1]` in PBW normal form.

mod pbw;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::algebra::{AlgebraElement, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};

pub(crate) use pbw::expand_product;
pub use pbw::Pbw;
pub use rewrite::{normal_form_by_rewriting, RewriteOrder};

/// `b_index ⊗ t^exponent`. The derived order (index, then exponent) is the
/// PBW order of generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopGenerator {
    pub index: usize,
    pub exponent: i64,
}

impl LoopGenerator {
    pub fn new(index: usize, exponent: i64) -> Self {
        Self { index, exponent }
    }

    /// Generator of `g ≅ g ⊗ 1`.
    pub fn constant(index: usize) -> Self {
        Self::new(index, 0)
    }

    pub fn label(&self, alg: &SuperAlgebra) -> String {
        let base = alg.label(self.index);
        match self.exponent {
            0 => base.to_string(),
            1 => format!("{base}(t)"),
            n => format!("{base}(t^{n})"),
        }
    }
}

pub type Word = Vec<LoopGenerator>;

/// A formal, unreduced linear combination of words.
pub type WordSum = Vec<(Rational, Word)>;

pub fn word_parity(alg: &SuperAlgebra, w: &[LoopGenerator]) -> Parity {
    w.iter().fold(Parity::Even, |p, g| p + alg.parity(g.index))
}

/// Parity class of an enveloping-algebra element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementParity {
    Even,
    Odd,
    Mixed,
}

/// Element in PBW normal form: each stored word is weakly increasing with no
/// repeated odd generator, and no coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UeaElement {
    terms: BTreeMap<Word, Rational>,
}

impl UeaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        let mut u = Self::zero();
        u.add_term(Vec::new(), c);
        u
    }

    pub fn generator(g: LoopGenerator) -> Self {
        let mut u = Self::zero();
        u.add_term(vec![g], rational::one());
        u
    }

    /// `x ⊗ a` as a degree-one element.
    pub fn embed(x: &AlgebraElement, a: &LaurentPoly) -> Self {
        let mut u = Self::zero();
        for (i, c) in x.terms() {
            for (n, d) in a.terms() {
                u.add_term(vec![LoopGenerator::new(i, n)], c * d);
            }
        }
        u
    }

    /// Inserts a word assumed to already be in normal form.
    pub(crate) fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &UeaElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[LoopGenerator]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Longest word length; 0 for scalars and for zero.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut u = Self::zero();
        u.add_scaled(self, c);
        u
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut u = self.clone();
        u.add_scaled(other, &rational::one());
        u
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut u = self.clone();
        u.add_scaled(other, &-rational::one());
        u
    }

    /// Zero counts as even.
    pub fn parity(&self, alg: &SuperAlgebra) -> ElementParity {
        let mut seen = [false; 2];
        for w in self.terms.keys() {
            seen[word_parity(alg, w).bit() as usize] = true;
        }
        match seen {
            [_, false] => ElementParity::Even,
            [false, true] => ElementParity::Odd,
            [true, true] => ElementParity::Mixed,
        }
    }

    pub fn homogeneous_parity(&self, alg: &SuperAlgebra) -> Result<Parity> {
        match self.parity(alg) {
            ElementParity::Even => Ok(Parity::Even),
            ElementParity::Odd => Ok(Parity::Odd),
            ElementParity::Mixed => Err(Error::MixedParity(self.display(alg))),
        }
    }

    /// Even and odd parts.
    pub fn split_parity(&self, alg: &SuperAlgebra) -> (UeaElement, UeaElement) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for (w, c) in &self.terms {
            match word_parity(alg, w) {
                Parity::Even => even.add_term(w.clone(), c.clone()),
                Parity::Odd => odd.add_term(w.clone(), c.clone()),
            }
        }
        (even, odd)
    }

    /// Human-readable and re-parseable text, shortest words first:
    /// `h + 1/2*h^2 + 2*f*e`.
    pub fn display(&self, alg: &SuperAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut words: Vec<(&Word, &Rational)> = self.terms.iter().collect();
        words.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (k, (w, c)) in words.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = word_text(alg, w);
            if w.is_empty() {
                out.push_str(&rational::format(&mag));
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&rational::format(&mag));
                out.push('*');
                out.push_str(&body);
            }
        }
        out
    }
}

/// `a*b^2*c` style text for a word, grouping equal neighbours into powers.
pub fn word_text(alg: &SuperAlgebra, w: &[LoopGenerator]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let mut run = 1;
        while k + run < w.len() && w[k + run] == w[k] {
            run += 1;
        }
        let label = w[k].label(alg);
        parts.push(if run == 1 { label } else { format!("{label}^{run}") });
        k += run;
    }
    parts.join("*")
}

/// Display adaptor carrying the algebra for labels.
pub struct Shown<'a>(pub &'a UeaElement, pub &'a SuperAlgebra);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_rank1, Rank1Kind};

    #[test]
    fn parity_classes() {
        let alg = build_rank1(Rank1Kind::Osp12);
        let e = LoopGenerator::constant(alg.index_of("e").unwrap());
        let h = LoopGenerator::constant(alg.index_of("h").unwrap());
        assert_eq!(UeaElement::zero().parity(&alg), ElementParity::Even);
        assert_eq!(UeaElement::generator(e).parity(&alg), ElementParity::Odd);
        let mixed = UeaElement::generator(e).add(&UeaElement::generator(h));
        assert_eq!(mixed.parity(&alg), ElementParity::Mixed);
        assert!(mixed.homogeneous_parity(&alg).is_err());
        let (ev, od) = mixed.split_parity(&alg);
        assert_eq!(ev, UeaElement::generator(h));
        assert_eq!(od, UeaElement::generator(e));
    }

    #[test]
    fn display_groups_powers() {
        let alg = build_rank1(Rank1Kind::Sl2);
        let h = LoopGenerator::constant(alg.index_of("h").unwrap());
        let f = LoopGenerator::new(alg.index_of("f").unwrap(), -1);
        let mut u = UeaElement::zero();
        u.add_term(vec![h, h], rational::frac(1, 2));
        u.add_term(vec![f], rational::int(-3));
        u.add_term(vec![], rational::int(1));
        assert_eq!(u.display(&alg), "1 - 3*f(t^-1) + 1/2*h^2");
    }
}
