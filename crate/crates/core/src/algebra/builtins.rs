use super::{AlgebraParts, BracketEntry, ChevalleyData, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank1Kind {
    Sl2,
    Gl11,
    Osp12,
}

impl std::str::FromStr for Rank1Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2" => Ok(Rank1Kind::Sl2),
            "gl11" => Ok(Rank1Kind::Gl11),
            "osp12" => Ok(Rank1Kind::Osp12),
            other => Err(Error::Schema(format!("unknown rank-1 algebra {other:?}"))),
        }
    }
}

/// Position of `E_ij` in the gl basis: Cartan `E_ii` first, then `E_ij` with
/// `i > j`, then `i < j`, each block ordered by `(i, j)`.
pub(crate) fn gl_position(size: usize, i: usize, j: usize) -> usize {
    let lower = size * (size - 1) / 2;
    if i == j {
        i - 1
    } else if i > j {
        size + (i - 1) * (i - 2) / 2 + (j - 1)
    } else {
        let before: usize = (1..i).map(|r| size - r).sum();
        size + lower + before + (j - i - 1)
    }
}

/// gl(M,N) on matrix units with the supertrace form.
pub fn build_gl(m: usize, n: usize) -> Result<SuperAlgebra> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition(format!("gl({m},{n}) needs M, N >= 1")));
    }
    let size = m + n;
    let dim = size * size;
    let p = |i: usize| if i <= m { Parity::Even } else { Parity::Odd };
    let mut units = vec![(0usize, 0usize); dim];
    for i in 1..=size {
        for j in 1..=size {
            units[gl_position(size, i, j)] = (i, j);
        }
    }
    let labels = units.iter().map(|(i, j)| format!("E[{i},{j}]")).collect();
    let parity: Vec<Parity> = units.iter().map(|&(i, j)| p(i) + p(j)).collect();

    let mut brackets: Vec<BracketEntry> = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            // [E_ij, E_kl] = d_jk E_il - (-1)^{|ij||kl|} d_li E_kj
            let mut terms: Vec<(usize, Rational)> = Vec::new();
            if j == k {
                terms.push((gl_position(size, i, l), int(1)));
            }
            if l == i {
                let s = if parity[a].is_odd() && parity[b].is_odd() {
                    1
                } else {
                    -1
                };
                terms.push((gl_position(size, k, j), int(s)));
            }
            if !terms.is_empty() {
                brackets.push((a, b, terms));
            }
        }
    }
    let mut form = Vec::new();
    for (a, &(i, j)) in units.iter().enumerate() {
        // (E_ij, E_ji) = (-1)^{p(i)}
        let b = gl_position(size, j, i);
        form.push((a, b, int(if p(i).is_odd() { -1 } else { 1 })));
    }
    let cartan = (1..=size).map(|i| gl_position(size, i, i)).collect();
    let chevalley = ChevalleyData {
        generators: (1..size)
            .map(|i| (gl_position(size, i, i + 1), gl_position(size, i + 1, i)))
            .collect(),
    };
    SuperAlgebra::from_parts(AlgebraParts {
        name: format!("gl({m},{n})"),
        labels,
        parity,
        brackets,
        form,
        cartan,
        chevalley: Some(chevalley),
        gl_shape: Some((m, n)),
    })
}

/// The three rank-one algebras with their standard tables and forms.
pub fn build_rank1(kind: Rank1Kind) -> SuperAlgebra {
    let parts = match kind {
        Rank1Kind::Sl2 => sl2(),
        Rank1Kind::Gl11 => gl11(),
        Rank1Kind::Osp12 => osp12(),
    };
    SuperAlgebra::from_parts(parts).expect("built-in tables are well formed")
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn sl2() -> AlgebraParts {
    // f < h < e
    let (f, h, e) = (0, 1, 2);
    AlgebraParts {
        name: "sl2".into(),
        labels: labels(&["f", "h", "e"]),
        parity: vec![Parity::Even; 3],
        brackets: vec![
            (e, f, vec![(h, int(1))]),
            (h, e, vec![(e, int(2))]),
            (h, f, vec![(f, int(-2))]),
        ],
        form: vec![(e, f, int(1)), (f, e, int(1)), (h, h, int(2))],
        cartan: vec![h],
        chevalley: Some(ChevalleyData {
            generators: vec![(e, f)],
        }),
        gl_shape: None,
    }
}

fn gl11() -> AlgebraParts {
    let (f, h1, h2, e) = (0, 1, 2, 3);
    let odd = Parity::Odd;
    let even = Parity::Even;
    AlgebraParts {
        name: "gl11".into(),
        labels: labels(&["f", "h1", "h2", "e"]),
        parity: vec![odd, even, even, odd],
        brackets: vec![
            (e, f, vec![(h1, int(1)), (h2, int(1))]),
            (e, h1, vec![(e, int(-1))]),
            (e, h2, vec![(e, int(1))]),
            (f, h1, vec![(f, int(1))]),
            (f, h2, vec![(f, int(-1))]),
        ],
        form: vec![(e, f, int(1)), (f, e, int(-1)), (h1, h1, int(1)), (h2, h2, int(-1))],
        cartan: vec![h1, h2],
        chevalley: Some(ChevalleyData {
            generators: vec![(e, f)],
        }),
        gl_shape: None,
    }
}

fn osp12() -> AlgebraParts {
    let (f, fp, h, ep, e) = (0, 1, 2, 3, 4);
    let odd = Parity::Odd;
    let even = Parity::Even;
    // Full table, row x and column y giving [x, y].
    let brackets = vec![
        (h, ep, vec![(ep, int(4))]),
        (h, fp, vec![(fp, int(-4))]),
        (h, e, vec![(e, int(2))]),
        (h, f, vec![(f, int(-2))]),
        (ep, h, vec![(ep, int(-4))]),
        (ep, fp, vec![(h, frac(1, 2))]),
        (ep, f, vec![(e, int(-1))]),
        (fp, h, vec![(fp, int(4))]),
        (fp, ep, vec![(h, frac(-1, 2))]),
        (fp, e, vec![(f, int(-1))]),
        (e, h, vec![(e, int(-2))]),
        (e, fp, vec![(f, int(1))]),
        (e, e, vec![(ep, int(4))]),
        (e, f, vec![(h, int(1))]),
        // = -[h, f]
        (f, h, vec![(f, int(2))]),
        (f, ep, vec![(e, int(1))]),
        (f, e, vec![(h, int(1))]),
        (f, f, vec![(fp, int(-4))]),
    ];
    AlgebraParts {
        name: "osp12".into(),
        labels: labels(&["f", "f'", "h", "e'", "e"]),
        parity: vec![odd, even, even, even, odd],
        brackets,
        form: vec![
            (e, f, int(1)),
            (f, e, int(-1)),
            (h, h, int(2)),
            (ep, fp, frac(1, 4)),
            (fp, ep, frac(1, 4)),
        ],
        cartan: vec![h],
        chevalley: Some(ChevalleyData {
            generators: vec![(e, f)],
        }),
        gl_shape: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    fn el(alg: &SuperAlgebra, terms: &[(&str, i64)]) -> AlgebraElement {
        AlgebraElement::from_terms(terms.iter().map(|(l, c)| (alg.index_of(l).unwrap(), int(*c))))
    }

    #[test]
    fn gl_positions_are_a_bijection() {
        for size in 2..6 {
            let mut seen = vec![false; size * size];
            for i in 1..=size {
                for j in 1..=size {
                    let p = gl_position(size, i, j);
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
        }
        let g = build_gl(2, 1).unwrap();
        let order: Vec<&str> = g.labels().iter().map(String::as_str).collect();
        assert_eq!(
            order,
            ["E[1,1]", "E[2,2]", "E[3,3]", "E[2,1]", "E[3,1]", "E[3,2]", "E[1,2]", "E[1,3]", "E[2,3]"]
        );
    }

    #[test]
    fn gl21_brackets_and_parities() {
        let g = build_gl(2, 1).unwrap();
        let idx = |l: &str| g.index_of(l).unwrap();
        assert_eq!(g.parity(idx("E[1,3]")), Parity::Odd);
        assert_eq!(g.parity(idx("E[1,2]")), Parity::Even);
        assert_eq!(
            g.bracket_basis(idx("E[1,2]"), idx("E[2,1]")),
            &el(&g, &[("E[1,1]", 1), ("E[2,2]", -1)])
        );
        assert_eq!(
            g.bracket_basis(idx("E[1,3]"), idx("E[3,1]")),
            &el(&g, &[("E[1,1]", 1), ("E[3,3]", 1)])
        );
        assert_eq!(*g.form_basis(idx("E[3,2]"), idx("E[2,3]")), int(-1));
        assert_eq!(*g.form_basis(idx("E[2,3]"), idx("E[3,2]")), int(1));
    }

    #[test]
    fn rank1_tables() {
        let osp = build_rank1(Rank1Kind::Osp12);
        let i = |l: &str| osp.index_of(l).unwrap();
        assert_eq!(osp.bracket_basis(i("h"), i("e'")), &el(&osp, &[("e'", 4)]));
        assert_eq!(osp.bracket_basis(i("e"), i("e")), &el(&osp, &[("e'", 4)]));
        let gl = build_rank1(Rank1Kind::Gl11);
        let j = |l: &str| gl.index_of(l).unwrap();
        assert_eq!(*gl.form_basis(j("h1"), j("h1")), int(1));
        assert_eq!(*gl.form_basis(j("h2"), j("h2")), int(-1));
        assert_eq!(gl.bracket_basis(j("f"), j("e")), &el(&gl, &[("h1", 1), ("h2", 1)]));
    }

    #[test]
    fn gl_rejects_zero_sizes() {
        assert!(build_gl(0, 2).is_err());
        assert!(build_gl(2, 0).is_err());
    }
}
