use std::collections::BTreeMap;

use num::Zero;

use super::{LoopGenerator, UeaElement, Word};
use crate::algebra::{koszul, SuperAlgebra};
use crate::rational::{self, Rational};

/// Which reducible position a rewriting step acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

fn reducible(alg: &SuperAlgebra, a: LoopGenerator, b: LoopGenerator) -> bool {
    a > b || (a == b && alg.parity(a.index).is_odd())
}

fn find_redex(alg: &SuperAlgebra, w: &[LoopGenerator], order: RewriteOrder) -> Option<usize> {
    let mut positions = (0..w.len().saturating_sub(1)).filter(|&k| reducible(alg, w[k], w[k + 1]));
    match order {
        RewriteOrder::Leftmost => positions.next(),
        RewriteOrder::Rightmost => positions.next_back(),
    }
}

fn bracket_word(alg: &SuperAlgebra, a: LoopGenerator, b: LoopGenerator) -> Vec<(LoopGenerator, Rational)> {
    alg.bracket_basis(a.index, b.index)
        .terms()
        .map(|(k, c)| (LoopGenerator::new(k, a.exponent + b.exponent), c.clone()))
        .collect()
}

/// Normal form by repeatedly applying single rewriting rules to adjacent
/// pairs, independent of the insertion engine. Used to cross-check that the
/// result does not depend on the rewriting strategy.
pub fn normal_form_by_rewriting(alg: &SuperAlgebra, sum: &[(Rational, Word)], order: RewriteOrder) -> UeaElement {
    let mut pending: BTreeMap<Word, Rational> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Word, Rational>, w: Word, c: Rational| {
        if c.is_zero() {
            return;
        }
        let slot = pending.entry(w.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            pending.remove(&w);
        }
    };
    for (c, w) in sum {
        push(&mut pending, w.clone(), c.clone());
    }
    let mut out = UeaElement::zero();
    // Longest words first so that lower-order terms produced by a rewrite
    // are merged before they are processed.
    while let Some(w) = pending
        .keys()
        .max_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
        .cloned()
    {
        let c = pending.remove(&w).expect("present");
        let Some(k) = find_redex(alg, &w, order) else {
            out.add_term(w, c);
            continue;
        };
        let (a, b) = (w[k], w[k + 1]);
        let (pre, post) = (&w[..k], &w[k + 2..]);
        let splice = |mid: &[LoopGenerator]| -> Word {
            let mut v = pre.to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(post);
            v
        };
        if a == b {
            let half = rational::frac(1, 2);
            for (g, d) in bracket_word(alg, a, b) {
                push(&mut pending, splice(&[g]), &c * &d * &half);
            }
        } else {
            let s = if koszul(alg.parity(a.index), alg.parity(b.index)) {
                -c.clone()
            } else {
                c.clone()
            };
            push(&mut pending, splice(&[b, a]), s);
            for (g, d) in bracket_word(alg, a, b) {
                push(&mut pending, splice(&[g]), &c * &d);
            }
        }
    }
    out
}
