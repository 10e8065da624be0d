//! Text syntax for Laurent polynomials and operator expressions.
//!
//! ```text
//! expr      = product { ("+" | "-") product } ;
//! product   = unary { "*" unary } ;
//! unary     = "-" unary | power ;
//! power     = primary [ "^" uint ] ;
//! primary   = number | invariant | generator | "(" expr ")" ;
//! generator = label [ "(" laurent ")" ] ;
//! invariant = "Omega" [ "(" laurent ";" laurent ")" ] | "OmegaC"
//!           | "T" "[" uint "]" [ "(" laurent { ";" laurent } ")" ]
//!           | "S" "[" uint "]" | "D" "[" uint "]" ;
//! label     = ident { "'" } [ "[" uint { "," uint } "]" ] ;
//! number    = uint [ "/" uint ] ;
//!
//! laurent   = lproduct { ("+" | "-") lproduct } ;
//! lproduct  = lunary { "*" lunary } ;
//! lunary    = "-" lunary | lpower ;
//! lpower    = lprimary [ "^" ( int | "(" int ")" ) ] ;
//! lprimary  = number | "t" | name | "(" laurent ")" ;
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num::{One, Zero};

use crate::algebra::{root_decomposition, AlgebraElement, RootDatum};
use crate::error::{Error, Result};
use crate::invariants::{build_invariant, BuildOptions, InvariantKind};
use crate::laurent::LaurentPoly;
use crate::rational::{self, Rational};
use crate::uea::{Pbw, UeaElement};

/// Source position (1-based). Ignored by equality so that reparsed trees
/// compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

/// Named Laurent polynomials available inside expressions (`p1`, `p2`, ...).
pub type Bindings = BTreeMap<String, LaurentPoly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentExpr {
    Number(Rational),
    T,
    Name(String, Span),
    Neg(Box<LaurentExpr>),
    Add(Box<LaurentExpr>, Box<LaurentExpr>),
    Sub(Box<LaurentExpr>, Box<LaurentExpr>),
    Mul(Box<LaurentExpr>, Box<LaurentExpr>),
    Pow(Box<LaurentExpr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantExpr {
    Omega,
    OmegaC,
    OmegaAB(LaurentExpr, LaurentExpr),
    Gelfand(usize, Option<Vec<LaurentExpr>>),
    EvenGelfand(usize),
    AntiInvariant(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(Rational),
    Generator {
        label: String,
        arg: Option<LaurentExpr>,
        span: Span,
    },
    Invariant(InvariantExpr),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Quote,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Quote => f.write_str("'''"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn parse_error(span: Span, message: impl Into<String>) -> Error {
    Error::Parse {
        line: span.line,
        column: span.column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Int(s), span));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push((Tok::Ident(s), span));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '\'' | '′' => Tok::Quote,
            _ => return Err(parse_error(span, format!("unexpected character '{c}'"))),
        };
        chars.next();
        column += 1;
        out.push((tok, span));
    }
    out.push((Tok::End, Span { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Self {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(parse_error(
                self.span(),
                format!("expected {what}, found {}", self.peek()),
            ))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            Tok::RParen => Err(parse_error(self.span(), "unbalanced ')'")),
            t => Err(parse_error(self.span(), format!("unexpected {t}"))),
        }
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        let span = self.span();
        match self.bump() {
            Tok::Int(s) => s.parse().map_err(|_| parse_error(span, format!("{what} is too large"))),
            t => Err(parse_error(span, format!("expected {what}, found {t}"))),
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let span = self.span();
        let Tok::Int(n) = self.bump() else {
            return Err(parse_error(span, "expected a number"));
        };
        let mut text = n;
        if self.eat(&Tok::Slash) {
            let dspan = self.span();
            match self.bump() {
                Tok::Int(d) => {
                    text.push('/');
                    text.push_str(&d);
                }
                t => return Err(parse_error(dspan, format!("expected a denominator, found {t}"))),
            }
        }
        rational::parse(&text).map_err(|e| parse_error(span, e.to_string()))
    }

    fn closing(&mut self, open: Span) -> Result<()> {
        if self.eat(&Tok::RParen) {
            Ok(())
        } else {
            Err(parse_error(
                self.span(),
                format!(
                    "expected ')' to close '(' at line {}, column {}, found {}",
                    open.line,
                    open.column,
                    self.peek()
                ),
            ))
        }
    }

    // Laurent polynomials

    fn laurent(&mut self) -> Result<LaurentExpr> {
        let mut lhs = self.lproduct()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = LaurentExpr::Add(Box::new(lhs), Box::new(self.lproduct()?));
            } else if self.eat(&Tok::Minus) {
                lhs = LaurentExpr::Sub(Box::new(lhs), Box::new(self.lproduct()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn lproduct(&mut self) -> Result<LaurentExpr> {
        let mut lhs = self.lunary()?;
        while self.eat(&Tok::Star) {
            lhs = LaurentExpr::Mul(Box::new(lhs), Box::new(self.lunary()?));
        }
        Ok(lhs)
    }

    fn lunary(&mut self) -> Result<LaurentExpr> {
        if self.eat(&Tok::Minus) {
            return Ok(LaurentExpr::Neg(Box::new(self.lunary()?)));
        }
        let base = self.lprimary()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let open = self.span();
        let paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        let span = self.span();
        let n = self.uint("an exponent")?;
        let n = i64::try_from(n).map_err(|_| parse_error(span, "exponent is too large"))?;
        if paren {
            self.closing(open)?;
        }
        Ok(LaurentExpr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn lprimary(&mut self) -> Result<LaurentExpr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(_) => Ok(LaurentExpr::Number(self.number()?)),
            Tok::Ident(s) => {
                self.bump();
                Ok(if s == "t" {
                    LaurentExpr::T
                } else {
                    LaurentExpr::Name(s, span)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.laurent()?;
                self.closing(span)?;
                Ok(inner)
            }
            t => Err(parse_error(
                span,
                format!("malformed Laurent polynomial: unexpected {t}"),
            )),
        }
    }

    // Operator expressions

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let span = self.span();
            let n = self.uint("a non-negative exponent")?;
            let n = u32::try_from(n).map_err(|_| parse_error(span, "exponent is too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn laurent_args(&mut self) -> Result<Vec<LaurentExpr>> {
        let open = self.span();
        self.expect(&Tok::LParen, "'('")?;
        let mut args = vec![self.laurent()?];
        while self.eat(&Tok::Semi) {
            args.push(self.laurent()?);
        }
        self.closing(open)?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(_) => Ok(Expr::Number(self.number()?)),
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.closing(span)?;
                Ok(inner)
            }
            Tok::Ident(name) => self.named(name, span),
            t => Err(parse_error(span, format!("unexpected {t}"))),
        }
    }

    fn named(&mut self, name: String, span: Span) -> Result<Expr> {
        self.bump();
        match name.as_str() {
            "Omega" if self.peek() != &Tok::Quote && self.peek() != &Tok::LBracket => {
                if self.peek() != &Tok::LParen {
                    return Ok(Expr::Invariant(InvariantExpr::Omega));
                }
                let args = self.laurent_args()?;
                let [a, b]: [LaurentExpr; 2] = args
                    .try_into()
                    .map_err(|_| parse_error(span, "Omega takes exactly two arguments: Omega(a; b)"))?;
                return Ok(Expr::Invariant(InvariantExpr::OmegaAB(a, b)));
            }
            "OmegaC" if self.peek() != &Tok::Quote && self.peek() != &Tok::LBracket => {
                return Ok(Expr::Invariant(InvariantExpr::OmegaC));
            }
            "T" | "S" | "D"
                if self.peek() == &Tok::LBracket
                    && matches!(self.peek_at(1), Tok::Int(_))
                    && self.peek_at(2) == &Tok::RBracket =>
            {
                self.bump();
                let kspan = self.span();
                let k = self.uint("an order")? as usize;
                self.bump();
                if k == 0 {
                    return Err(parse_error(kspan, "order must be at least 1"));
                }
                let inv = match name.as_str() {
                    "T" => {
                        let args = if self.peek() == &Tok::LParen {
                            Some(self.laurent_args()?)
                        } else {
                            None
                        };
                        InvariantExpr::Gelfand(k, args)
                    }
                    "S" => InvariantExpr::EvenGelfand(k),
                    _ => InvariantExpr::AntiInvariant(k),
                };
                return Ok(Expr::Invariant(inv));
            }
            _ => {}
        }
        let mut label = name;
        while self.eat(&Tok::Quote) {
            label.push('\'');
        }
        if self.peek() == &Tok::LBracket {
            self.bump();
            label.push('[');
            let mut first = true;
            loop {
                if !first {
                    label.push(',');
                }
                first = false;
                label.push_str(&self.uint("an index")?.to_string());
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(&Tok::RBracket, "',' or ']'")?;
                break;
            }
            label.push(']');
        }
        let arg = if self.peek() == &Tok::LParen {
            let open = self.span();
            self.bump();
            let a = self.laurent()?;
            self.closing(open)?;
            Some(a)
        } else {
            None
        };
        Ok(Expr::Generator { label, arg, span })
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    if p.peek() == &Tok::End {
        return Err(parse_error(p.span(), "empty expression"));
    }
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_laurent_expr(src: &str) -> Result<LaurentExpr> {
    let mut p = Parser::new(src)?;
    if p.peek() == &Tok::End {
        return Err(parse_error(p.span(), "empty Laurent polynomial"));
    }
    let e = p.laurent()?;
    p.finish()?;
    Ok(e)
}

/// Parses and evaluates a Laurent polynomial.
pub fn parse_laurent(src: &str, bindings: &Bindings) -> Result<LaurentPoly> {
    eval_laurent(&parse_laurent_expr(src)?, bindings)
}

/// One expression per non-empty line; `#` starts a comment. Error positions
/// refer to the whole file.
pub fn parse_batch(src: &str) -> Result<Vec<(usize, Expr)>> {
    let mut out = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        match parse_expr(line) {
            Ok(e) => out.push((k + 1, e)),
            Err(Error::Parse { column, message, .. }) => {
                return Err(Error::Parse {
                    line: k + 1,
                    column,
                    message,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

pub fn eval_laurent(e: &LaurentExpr, bindings: &Bindings) -> Result<LaurentPoly> {
    Ok(match e {
        LaurentExpr::Number(q) => LaurentPoly::constant(q.clone()),
        LaurentExpr::T => LaurentPoly::t_pow(1),
        LaurentExpr::Name(n, span) => bindings
            .get(n)
            .cloned()
            .ok_or_else(|| parse_error(*span, format!("unknown name '{n}' in Laurent polynomial")))?,
        LaurentExpr::Neg(x) => eval_laurent(x, bindings)?.scale(&-rational::one()),
        LaurentExpr::Add(a, b) => &eval_laurent(a, bindings)? + &eval_laurent(b, bindings)?,
        LaurentExpr::Sub(a, b) => &eval_laurent(a, bindings)? - &eval_laurent(b, bindings)?,
        LaurentExpr::Mul(a, b) => eval_laurent(a, bindings)?.mul(&eval_laurent(b, bindings)?),
        LaurentExpr::Pow(base, n) => {
            let b = eval_laurent(base, bindings)?;
            if *n >= 0 {
                (0..*n).fold(LaurentPoly::one(), |acc, _| acc.mul(&b))
            } else {
                let mut terms = b.terms();
                match (terms.next(), terms.next()) {
                    (Some((m, c)), None) => LaurentPoly::monomial(rational::pow(c, *n)?, m * n),
                    _ => return Err(Error::Eval("negative powers are only defined for monomials".into())),
                }
            }
        }
    })
}

/// Evaluates expressions against one algebra. The root datum is computed on
/// first use.
pub struct Evaluator<'a> {
    pbw: &'a Pbw<'a>,
    bindings: &'a Bindings,
    options: BuildOptions,
    roots: OnceLock<Result<RootDatum>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(pbw: &'a Pbw<'a>, bindings: &'a Bindings) -> Self {
        Self {
            pbw,
            bindings,
            options: BuildOptions::default(),
            roots: OnceLock::new(),
        }
    }

    pub fn with_options(mut self, options: BuildOptions) -> Self {
        self.options = options;
        self
    }

    fn roots(&self) -> Result<&RootDatum> {
        self.roots
            .get_or_init(|| root_decomposition(self.pbw.algebra()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn eval(&self, e: &Expr) -> Result<UeaElement> {
        let alg = self.pbw.algebra();
        Ok(match e {
            Expr::Number(q) => UeaElement::scalar(q.clone()),
            Expr::Generator { label, arg, span } => {
                let i = alg
                    .index_of(label)
                    .ok_or_else(|| parse_error(*span, format!("unknown generator '{label}' in {}", alg.name())))?;
                let a = match arg {
                    Some(a) => eval_laurent(a, self.bindings)?,
                    None => LaurentPoly::one(),
                };
                UeaElement::embed(&AlgebraElement::basis(i), &a)
            }
            Expr::Invariant(inv) => {
                let kind = self.invariant_kind(inv)?;
                build_invariant(self.pbw, self.roots()?, &kind, self.options)?
            }
            Expr::Neg(x) => self.eval(x)?.scale(&-rational::one()),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.pbw.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Pow(x, n) => {
                let base = self.eval(x)?;
                (0..*n).fold(UeaElement::one(), |acc, _| self.pbw.mul(&acc, &base))
            }
        })
    }

    pub fn invariant_kind(&self, inv: &InvariantExpr) -> Result<InvariantKind> {
        let l = |x: &LaurentExpr| -> Result<LaurentPoly> {
            let p = eval_laurent(x, self.bindings)?;
            if p.is_zero() {
                return Err(Error::Eval("Laurent arguments of invariants must be nonzero".into()));
            }
            Ok(p)
        };
        Ok(match inv {
            InvariantExpr::Omega => InvariantKind::Casimir,
            InvariantExpr::OmegaC => InvariantKind::CasimirC,
            InvariantExpr::OmegaAB(a, b) => InvariantKind::GeneralizedCasimir(l(a)?, l(b)?),
            InvariantExpr::Gelfand(k, None) => InvariantKind::gelfand_plain(*k),
            InvariantExpr::Gelfand(k, Some(args)) => {
                if args.len() != *k {
                    return Err(Error::Eval(format!(
                        "arity mismatch: T[{k}] takes {k} arguments, got {}",
                        args.len()
                    )));
                }
                InvariantKind::Gelfand(args.iter().map(l).collect::<Result<_>>()?)
            }
            InvariantExpr::EvenGelfand(k) => InvariantKind::EvenGelfand(*k),
            InvariantExpr::AntiInvariant(k) => InvariantKind::AntiInvariant(*k),
        })
    }
}

/// Convenience wrapper around [`Evaluator`].
pub fn eval_expr(e: &Expr, pbw: &Pbw<'_>, bindings: &Bindings) -> Result<UeaElement> {
    Evaluator::new(pbw, bindings).eval(e)
}

// Printing. Parentheses are emitted exactly where the parser needs them, so
// that printing and reparsing gives back the same tree.

fn fmt_rational(q: &Rational) -> String {
    rational::format(q)
}

impl LaurentExpr {
    fn prec(&self) -> u8 {
        match self {
            LaurentExpr::Add(..) | LaurentExpr::Sub(..) => 1,
            LaurentExpr::Mul(..) => 2,
            LaurentExpr::Neg(..) => 3,
            LaurentExpr::Pow(..) => 4,
            LaurentExpr::Number(q) if !q.denom().is_one() => 2,
            LaurentExpr::Number(q) if q < &Rational::zero() => 3,
            _ => 5,
        }
    }
}

fn wrap<T: fmt::Display>(f: &mut fmt::Formatter<'_>, x: &T, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentExpr::Number(q) => f.write_str(&fmt_rational(q)),
            LaurentExpr::T => f.write_str("t"),
            LaurentExpr::Name(n, _) => f.write_str(n),
            LaurentExpr::Neg(x) => {
                f.write_str("-")?;
                wrap(f, x, x.prec() < 3)
            }
            LaurentExpr::Add(a, b) | LaurentExpr::Sub(a, b) => {
                wrap(f, a, a.prec() < 1)?;
                f.write_str(if matches!(self, LaurentExpr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                wrap(f, b, b.prec() <= 1)
            }
            LaurentExpr::Mul(a, b) => {
                wrap(f, a, a.prec() < 2)?;
                f.write_str("*")?;
                wrap(f, b, b.prec() <= 2)
            }
            LaurentExpr::Pow(x, n) => {
                wrap(f, x, x.prec() < 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Number(q) if !q.denom().is_one() => 2,
            Expr::Number(q) if q < &Rational::zero() => 3,
            _ => 5,
        }
    }
}

fn join_args(args: &[LaurentExpr]) -> String {
    args.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantExpr::Omega => f.write_str("Omega"),
            InvariantExpr::OmegaC => f.write_str("OmegaC"),
            InvariantExpr::OmegaAB(a, b) => write!(f, "Omega({a}; {b})"),
            InvariantExpr::Gelfand(k, None) => write!(f, "T[{k}]"),
            InvariantExpr::Gelfand(k, Some(args)) => write!(f, "T[{k}]({})", join_args(args)),
            InvariantExpr::EvenGelfand(k) => write!(f, "S[{k}]"),
            InvariantExpr::AntiInvariant(k) => write!(f, "D[{k}]"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(q) => f.write_str(&fmt_rational(q)),
            Expr::Generator { label, arg, .. } => {
                f.write_str(label)?;
                match arg {
                    Some(a) => write!(f, "({a})"),
                    None => Ok(()),
                }
            }
            Expr::Invariant(inv) => write!(f, "{inv}"),
            Expr::Neg(x) => {
                f.write_str("-")?;
                wrap(f, x, x.prec() < 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, a.prec() < 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, b.prec() <= 1)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, a.prec() < 2)?;
                f.write_str("*")?;
                wrap(f, b, b.prec() <= 2)
            }
            Expr::Pow(x, n) => {
                wrap(f, x, x.prec() < 5)?;
                write!(f, "^{n}")
            }
        }
    }
}
