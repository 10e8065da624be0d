use std::collections::HashMap;
use std::sync::RwLock;

use super::{word_parity, LoopGenerator, UeaElement, Word, WordSum};
use crate::algebra::{koszul, Parity, SuperAlgebra};
use crate::error::Result;
use crate::rational::{self, Rational};

/// PBW rewriting engine for one algebra.
///
/// Normal forms are built by right multiplication: a normal word times one
/// generator is reduced by moving the generator left past larger letters
/// (`x y = (-1)^{|x||y|} y x + [x, y]`) and collapsing odd squares
/// (`x x = 1/2 [x, x]`). Products `word * generator` are memoised; the cache is
/// shared and safe to use from several threads.
pub struct Pbw<'a> {
    alg: &'a SuperAlgebra,
    cache: RwLock<HashMap<(Word, LoopGenerator), UeaElement>>,
}

impl<'a> Pbw<'a> {
    pub fn new(alg: &'a SuperAlgebra) -> Self {
        Self {
            alg,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &'a SuperAlgebra {
        self.alg
    }

    fn parity(&self, g: LoopGenerator) -> Parity {
        self.alg.parity(g.index)
    }

    /// `[x ⊗ t^m, y ⊗ t^n] = [x, y] ⊗ t^(m+n)`.
    pub fn loop_bracket(&self, x: LoopGenerator, y: LoopGenerator) -> UeaElement {
        let mut out = UeaElement::zero();
        let exp = x.exponent + y.exponent;
        for (k, c) in self.alg.bracket_basis(x.index, y.index).terms() {
            out.add_term(vec![LoopGenerator::new(k, exp)], c.clone());
        }
        out
    }

    /// Normal form of `m * g` for a normal word `m`.
    fn mul_word_gen(&self, m: &[LoopGenerator], g: LoopGenerator) -> UeaElement {
        let Some(&last) = m.last() else {
            return UeaElement::generator(g);
        };
        if last < g || (last == g && !self.parity(g).is_odd()) {
            let mut w = m.to_vec();
            w.push(g);
            let mut u = UeaElement::zero();
            u.add_term(w, rational::one());
            return u;
        }
        let key = (m.to_vec(), g);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let prefix = &m[..m.len() - 1];
        let mut out = UeaElement::zero();
        if last == g {
            // odd square: g g = 1/2 [g, g]
            let half = rational::frac(1, 2);
            for (w, c) in self.loop_bracket(g, g).terms() {
                out.add_scaled(&self.mul_word_gen(prefix, w[0]), &(c * &half));
            }
        } else {
            // last > g: last g = s g last + [last, g]
            let s = if koszul(self.parity(last), self.parity(g)) {
                -rational::one()
            } else {
                rational::one()
            };
            let moved = self.mul_word_gen(prefix, g);
            for (w, c) in moved.terms() {
                out.add_scaled(&self.mul_word_gen(w, last), &(c * &s));
            }
            for (w, c) in self.loop_bracket(last, g).terms() {
                out.add_scaled(&self.mul_word_gen(prefix, w[0]), c);
            }
        }
        self.cache.write().expect("cache lock").insert(key, out.clone());
        out
    }

    /// `u * g` for a generator `g`.
    pub fn mul_gen(&self, u: &UeaElement, g: LoopGenerator) -> UeaElement {
        let mut out = UeaElement::zero();
        for (w, c) in u.terms() {
            out.add_scaled(&self.mul_word_gen(w, g), c);
        }
        out
    }

    pub fn normal_form_word(&self, word: &[LoopGenerator]) -> UeaElement {
        word.iter().fold(UeaElement::one(), |acc, &g| self.mul_gen(&acc, g))
    }

    /// Canonical form of a formal sum of words.
    pub fn normal_form(&self, sum: &[(Rational, Word)]) -> UeaElement {
        let mut out = UeaElement::zero();
        for (c, w) in sum {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    pub fn mul(&self, u: &UeaElement, v: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero();
        for (wv, cv) in v.terms() {
            let mut part = u.clone();
            for &g in wv {
                part = self.mul_gen(&part, g);
            }
            out.add_scaled(&part, cv);
        }
        out
    }

    /// `uv - (-1)^{|u||v|} vu` for homogeneous `u`, `v`.
    pub fn supercommutator(&self, u: &UeaElement, v: &UeaElement) -> Result<UeaElement> {
        let pu = u.homogeneous_parity(self.alg)?;
        let pv = v.homogeneous_parity(self.alg)?;
        Ok(self.commutator_with_sign(u, v, koszul(pu, pv)))
    }

    /// Supercommutator extended linearly over the even and odd parts, so mixed
    /// operands are allowed.
    pub fn supercommutator_linear(&self, u: &UeaElement, v: &UeaElement) -> UeaElement {
        let (ue, uo) = u.split_parity(self.alg);
        let (ve, vo) = v.split_parity(self.alg);
        let mut out = UeaElement::zero();
        for (a, pa) in [(&ue, Parity::Even), (&uo, Parity::Odd)] {
            for (b, pb) in [(&ve, Parity::Even), (&vo, Parity::Odd)] {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                out.add_scaled(&self.commutator_with_sign(a, b, koszul(pa, pb)), &rational::one());
            }
        }
        out
    }

    fn commutator_with_sign(&self, u: &UeaElement, v: &UeaElement, anti: bool) -> UeaElement {
        let uv = self.mul(u, v);
        let vu = self.mul(v, u);
        if anti {
            uv.add(&vu)
        } else {
            uv.sub(&vu)
        }
    }

    /// `ad g . u = [g, u]`.
    pub fn ad(&self, g: LoopGenerator, u: &UeaElement) -> Result<UeaElement> {
        self.supercommutator(&UeaElement::generator(g), u)
    }

    /// Twisted action `ad' g . u = g u - (-1)^{|g|(|u|+1)} u g`.
    pub fn ad_prime(&self, g: LoopGenerator, u: &UeaElement) -> Result<UeaElement> {
        let pu = u.homogeneous_parity(self.alg)?;
        let pg = self.parity(g);
        let gu = self.mul(&UeaElement::generator(g), u);
        let ug = self.mul_gen(u, g);
        Ok(if koszul(pg, pu.flip()) {
            gu.add(&ug)
        } else {
            gu.sub(&ug)
        })
    }

    /// Parity of a word.
    pub fn word_parity(&self, w: &[LoopGenerator]) -> Parity {
        word_parity(self.alg, w)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

/// Expands a product of degree-one factors into a formal word sum.
pub(crate) fn expand_product(factors: &[UeaElement]) -> WordSum {
    let mut acc: WordSum = vec![(rational::one(), Vec::new())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (c, w) in &acc {
            for (fw, fc) in f.terms() {
                let mut word = w.clone();
                word.extend_from_slice(fw);
                next.push((c * fc, word));
            }
        }
        acc = next;
    }
    acc
}
