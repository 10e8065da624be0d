//! Finite-dimensional Lie superalgebras given by structure constants.

mod builtins;
mod chevalley;
mod json;
mod pairing;
mod roots;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};

pub use builtins::{build_gl, build_rank1, Rank1Kind};
pub use chevalley::{chevalley_automorphism, Automorphism};
pub use json::{load_algebra, AlgebraDoc};
pub use pairing::{check_dual_pairing_identity, PairingReport};
pub use roots::{compute_h_rho, dual_basis, root_decomposition, DualBases, RhoCheck, RootDatum, RootSpace, Weight};
pub use validate::{validate_algebra, AxiomReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn flip(self) -> Self {
        Self::from_bit(self.bit() + 1)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// `(-1)^(|a||b|)` as a boolean "is negative".
pub fn koszul(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

/// Element of the algebra in basis coordinates; zero coordinates are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement(BTreeMap<usize, Rational>);

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, rational::one())
    }

    pub fn term(i: usize, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Rational)>>(terms: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Rational) {
        for (i, x) in &other.0 {
            self.add_term(*i, x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut v = Self::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn dense(&self, dim: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); dim];
        for (i, c) in &self.0 {
            v[*i] = c.clone();
        }
        v
    }
}

/// Chevalley generator data: pairs `(e_i, f_i)` of basis indices. Odd simple
/// roots are the pairs whose `e_i` is odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyData {
    pub generators: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    labels: Vec<String>,
    parity: Vec<Parity>,
    table: Vec<AlgebraElement>, // dim*dim, entry (i, j) = [b_i, b_j]
    form: Matrix,
    cartan: Vec<usize>,
    chevalley: Option<ChevalleyData>,
    gl_shape: Option<(usize, usize)>,
}

/// Bracket entries `[b_i, b_j] = sum_k c_k b_k`.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

pub struct AlgebraParts {
    pub name: String,
    pub labels: Vec<String>,
    pub parity: Vec<Parity>,
    /// Pairs not listed are zero; a pair `(i, j)` listed without its mirror
    /// `(j, i)` has the mirror filled in by super-antisymmetry.
    pub brackets: Vec<BracketEntry>,
    pub form: Vec<(usize, usize, Rational)>,
    pub cartan: Vec<usize>,
    pub chevalley: Option<ChevalleyData>,
    pub gl_shape: Option<(usize, usize)>,
}

impl SuperAlgebra {
    /// Assembles the table without checking the axioms; see [`validate_algebra`].
    pub fn from_parts(parts: AlgebraParts) -> Result<Self> {
        let dim = parts.labels.len();
        if parts.parity.len() != dim {
            return Err(Error::Schema(format!(
                "{} labels but {} parities",
                dim,
                parts.parity.len()
            )));
        }
        if dim == 0 {
            return Err(Error::Schema("empty basis".into()));
        }
        for (k, l) in parts.labels.iter().enumerate() {
            if parts.labels[..k].contains(l) {
                return Err(Error::Schema(format!("duplicate basis label {l:?}")));
            }
        }
        let check = |i: usize, what: &str| {
            if i >= dim {
                Err(Error::Schema(format!(
                    "{what} index {i} out of range (dimension {dim})"
                )))
            } else {
                Ok(())
            }
        };
        let mut table = vec![AlgebraElement::zero(); dim * dim];
        let mut given = vec![false; dim * dim];
        for (i, j, terms) in &parts.brackets {
            check(*i, "bracket")?;
            check(*j, "bracket")?;
            if given[i * dim + j] {
                return Err(Error::Schema(format!("bracket ({i}, {j}) listed twice")));
            }
            let mut v = AlgebraElement::zero();
            for (k, c) in terms {
                check(*k, "bracket result")?;
                v.add_term(*k, c.clone());
            }
            table[i * dim + j] = v;
            given[i * dim + j] = true;
        }
        for (i, j, _) in &parts.brackets {
            if !given[j * dim + i] {
                let sign = if koszul(parts.parity[*i], parts.parity[*j]) {
                    rational::one()
                } else {
                    -rational::one()
                };
                table[j * dim + i] = table[i * dim + j].scale(&sign);
                given[j * dim + i] = true;
            }
        }
        let mut form = Matrix::zeros(dim, dim);
        for (i, j, c) in &parts.form {
            check(*i, "form")?;
            check(*j, "form")?;
            form[(*i, *j)] = c.clone();
        }
        for &h in &parts.cartan {
            check(h, "cartan")?;
        }
        if parts.cartan.is_empty() {
            return Err(Error::Schema("empty Cartan subset".into()));
        }
        if let Some(ch) = &parts.chevalley {
            for &(e, f) in &ch.generators {
                check(e, "chevalley")?;
                check(f, "chevalley")?;
            }
        }
        Ok(Self {
            name: parts.name,
            labels: parts.labels,
            parity: parts.parity,
            table,
            form,
            cartan: parts.cartan,
            chevalley: parts.chevalley,
            gl_shape: parts.gl_shape,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn is_cartan(&self, i: usize) -> bool {
        self.cartan.contains(&i)
    }

    pub fn chevalley(&self) -> Option<&ChevalleyData> {
        self.chevalley.as_ref()
    }

    pub fn gl_shape(&self) -> Option<(usize, usize)> {
        self.gl_shape
    }

    /// `[b_i, b_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                out.add_scaled(self.bracket_basis(i, j), &(a * b));
            }
        }
        out
    }

    pub fn form_basis(&self, i: usize, j: usize) -> &Rational {
        &self.form[(i, j)]
    }

    pub fn form_matrix(&self) -> &Matrix {
        &self.form
    }

    pub fn form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let g = &self.form[(i, j)];
                if !g.is_zero() {
                    acc += a * b * g;
                }
            }
        }
        acc
    }

    /// Parity of a nonzero element, `None` if it mixes parities or is zero.
    pub fn element_parity(&self, x: &AlgebraElement) -> Option<Parity> {
        let mut it = x.support().map(|i| self.parity[i]);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Basis index of the matrix unit `E_ij` (1-based) for gl(M,N).
    pub fn gl_index(&self, i: usize, j: usize) -> Option<usize> {
        let (m, n) = self.gl_shape?;
        let size = m + n;
        if i == 0 || j == 0 || i > size || j > size {
            return None;
        }
        Some(builtins::gl_position(size, i, j))
    }

    /// `p(i)` for the gl(M,N) index set.
    pub fn gl_index_parity(&self, i: usize) -> Option<Parity> {
        let (m, _) = self.gl_shape?;
        Some(if i <= m { Parity::Even } else { Parity::Odd })
    }

    pub fn element_to_string(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in x.terms().enumerate() {
            let neg = rational::is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != rational::one() {
                s.push_str(&rational::format(&mag));
                s.push('*');
            }
            s.push_str(&self.labels[i]);
        }
        s
    }
}

impl fmt::Display for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}
