//! Ideal-expression grammar: `D`, parenthesized generator lists,
//! intersection `∩` (alias `^`), product `*`, colon `:` (lowest
//! precedence), and the postfix operators `^-1`, `^v`, `^t`.
//!
//! Quadratic elements are written `u+v*w` with `w = sqrt(d)` and
//! rational coefficients `p/q`; semigroup elements are integers.

use num_traits::Zero;
use std::fmt;
use std::sync::Arc;
use videal::backend::Backend;
use videal::lattice::{Int, Rat};
use videal::numsg::NumSemigroup;
use videal::quad::QuadOrder;

#[derive(Debug, Clone)]
pub struct ExprError {
    /// 1-based char column in the source expression.
    pub col: usize,
    pub message: String,
}

impl ExprError {
    /// Two-line caret diagnostic pointing into `src`.
    pub fn render(&self, src: &str) -> String {
        format!(
            "error: {}\n  {}\n  {}^",
            self.message,
            src,
            " ".repeat(self.col.saturating_sub(1))
        )
    }
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col, self.message)
    }
}

impl std::error::Error for ExprError {}

fn err(col: usize, message: impl Into<String>) -> ExprError {
    ExprError {
        col,
        message: message.into(),
    }
}

// ---- tokens ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    W,
    V,
    T,
    D,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Cap,
    Colon,
    LPar,
    RPar,
    Comma,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    i += 1;
                }
                toks.push((Tok::Num(s), col));
                continue;
            }
            'w' => toks.push((Tok::W, col)),
            'v' => toks.push((Tok::V, col)),
            't' => toks.push((Tok::T, col)),
            'D' => toks.push((Tok::D, col)),
            '+' => toks.push((Tok::Plus, col)),
            '-' | '\u{2212}' => toks.push((Tok::Minus, col)),
            '*' => toks.push((Tok::Star, col)),
            '/' => toks.push((Tok::Slash, col)),
            '^' => toks.push((Tok::Caret, col)),
            '\u{2229}' => toks.push((Tok::Cap, col)),
            ':' => toks.push((Tok::Colon, col)),
            '(' => toks.push((Tok::LPar, col)),
            ')' => toks.push((Tok::RPar, col)),
            ',' => toks.push((Tok::Comma, col)),
            other => return Err(err(col, format!("unexpected character `{}`", other))),
        }
        i += 1;
    }
    Ok(toks)
}

// ---- syntax tree ------------------------------------------------------------

/// One additive term of an element literal: `coef` times `w` or 1.
#[derive(Debug, Clone)]
struct ElemTerm {
    coef: Rat,
    w: bool,
}

#[derive(Debug, Clone)]
pub struct ElemAst {
    col: usize,
    terms: Vec<ElemTerm>,
}

#[derive(Debug, Clone)]
pub enum Expr {
    Unit,
    Gens(Vec<ElemAst>),
    Intersect(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Colon(Box<Expr>, Box<Expr>),
    Inverse(Box<Expr>),
    VClosure(Box<Expr>),
    TClosure(Box<Expr>),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, ahead: usize) -> Option<&Tok> {
        self.toks.get(self.pos + ahead).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.col(), format!("expected {}", what)))
        }
    }

    // colon binds loosest: A : B : C = (A : B) : C
    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut node = self.inter()?;
        while self.peek() == Some(&Tok::Colon) {
            self.pos += 1;
            let rhs = self.inter()?;
            node = Expr::Colon(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    // any caret that survives postfix parsing is an intersection
    fn inter(&mut self) -> Result<Expr, ExprError> {
        let mut node = self.prod()?;
        while matches!(self.peek(), Some(Tok::Cap) | Some(Tok::Caret)) {
            self.pos += 1;
            let rhs = self.prod()?;
            node = Expr::Intersect(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn prod(&mut self) -> Result<Expr, ExprError> {
        let mut node = self.postfix()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.postfix()?;
            node = Expr::Mul(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn postfix(&mut self) -> Result<Expr, ExprError> {
        let mut node = self.atom()?;
        loop {
            if self.peek() != Some(&Tok::Caret) {
                return Ok(node);
            }
            match (self.peek_at(1), self.peek_at(2)) {
                (Some(Tok::V), _) => {
                    self.pos += 2;
                    node = Expr::VClosure(Box::new(node));
                }
                (Some(Tok::T), _) => {
                    self.pos += 2;
                    node = Expr::TClosure(Box::new(node));
                }
                (Some(Tok::Minus), Some(Tok::Num(n))) if n == "1" => {
                    self.pos += 3;
                    node = Expr::Inverse(Box::new(node));
                }
                // plain caret: intersection, handled one level up
                _ => return Ok(node),
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Tok::D) => {
                self.pos += 1;
                Ok(Expr::Unit)
            }
            Some(Tok::LPar) => {
                let save = self.pos;
                self.pos += 1;
                if let Some(gens) = self.try_generator_list() {
                    return Ok(Expr::Gens(gens));
                }
                self.pos = save + 1;
                let inner = self.expr()?;
                self.expect(Tok::RPar, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Num(_)) | Some(Tok::Minus) | Some(Tok::Plus) | Some(Tok::W) => {
                let e = self.element()?;
                Ok(Expr::Gens(vec![e]))
            }
            _ => Err(err(
                self.col(),
                "expected `D`, a generator list `(g1, g2, ...)`, or `(`",
            )),
        }
    }

    // committed only if a comma-separated element list closes with `)`
    fn try_generator_list(&mut self) -> Option<Vec<ElemAst>> {
        let save = self.pos;
        let mut gens = Vec::new();
        loop {
            match self.element() {
                Ok(e) => gens.push(e),
                Err(_) => {
                    self.pos = save;
                    return None;
                }
            }
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                }
                Some(Tok::RPar) => {
                    self.pos += 1;
                    return Some(gens);
                }
                _ => {
                    self.pos = save;
                    return None;
                }
            }
        }
    }

    // element := [+|-] term (('+'|'-') term)*
    fn element(&mut self) -> Result<ElemAst, ExprError> {
        let col = self.col();
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coef = -&t.coef;
            }
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    negative = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negative = true;
                }
                _ => return Ok(ElemAst { col, terms }),
            }
        }
    }

    // term := num ['/' num] ['*' w] | num ['/' num] w | w
    fn term(&mut self) -> Result<ElemTerm, ExprError> {
        if self.peek() == Some(&Tok::W) {
            self.pos += 1;
            return Ok(ElemTerm {
                coef: Rat::from_integer(Int::from(1)),
                w: true,
            });
        }
        let col = self.col();
        let Some(Tok::Num(numer)) = self.bump() else {
            return Err(err(col, "expected a number or `w`"));
        };
        let numer: Int = numer.parse().expect("digits parse");
        let mut coef = Rat::from_integer(numer);
        if self.peek() == Some(&Tok::Slash) {
            let dcol = self.col();
            self.pos += 1;
            let Some(Tok::Num(denom)) = self.bump() else {
                return Err(err(self.col(), "expected a denominator after `/`"));
            };
            let denom: Int = denom.parse().expect("digits parse");
            if denom.is_zero() {
                return Err(err(dcol + 1, "zero denominator"));
            }
            coef /= Rat::from_integer(denom);
        }
        let mut w = false;
        if self.peek() == Some(&Tok::Star) {
            if self.peek_at(1) == Some(&Tok::W) {
                self.pos += 2;
                w = true;
            } else {
                return Err(err(self.col() + 1, "expected `w` after `*` in an element"));
            }
        } else if self.peek() == Some(&Tok::W) {
            self.pos += 1;
            w = true;
        }
        Ok(ElemTerm { coef, w })
    }
}

/// Parse a full expression; trailing tokens are an error.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let end_col = src.chars().count() + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

// ---- evaluation --------------------------------------------------------------

/// Backends that can read element literals of this grammar.
pub trait ElemBackend: Backend {
    fn elem_from_ast(&self, e: &ElemAst) -> Result<Self::K, ExprError>;
}

impl ElemBackend for QuadOrder {
    fn elem_from_ast(&self, e: &ElemAst) -> Result<Self::K, ExprError> {
        let mut x = Rat::zero();
        let mut y = Rat::zero();
        for t in &e.terms {
            if t.w {
                y += &t.coef;
            } else {
                x += &t.coef;
            }
        }
        let q = self.from_surd(&x, &y);
        if q.is_zero() {
            return Err(err(e.col, "zero element in an ideal expression"));
        }
        Ok(q)
    }
}

impl ElemBackend for Arc<NumSemigroup> {
    fn elem_from_ast(&self, e: &ElemAst) -> Result<Self::K, ExprError> {
        if e.terms.len() != 1 || e.terms[0].w {
            return Err(err(e.col, "semigroup elements are plain integers"));
        }
        let coef = &e.terms[0].coef;
        if !coef.is_integer() {
            return Err(err(e.col, "semigroup elements are plain integers"));
        }
        i64::try_from(coef.to_integer()).map_err(|_| err(e.col, "element out of range"))
    }
}

/// Evaluate an expression to a canonical ideal of the backend.
pub fn eval<B: ElemBackend>(b: &B, expr: &Expr) -> Result<B::Ideal, ExprError> {
    match expr {
        Expr::Unit => Ok(b.unit_ideal()),
        Expr::Gens(gens) => {
            let mut acc: Option<B::Ideal> = None;
            for g in gens {
                let k = b.elem_from_ast(g)?;
                let p = b.principal(&k);
                acc = Some(match acc {
                    None => p,
                    Some(a) => b.add(&a, &p),
                });
            }
            Ok(acc.expect("generator lists are nonempty"))
        }
        Expr::Intersect(l, r) => Ok(b.intersect(&eval(b, l)?, &eval(b, r)?)),
        Expr::Mul(l, r) => Ok(b.mul(&eval(b, l)?, &eval(b, r)?)),
        Expr::Colon(l, r) => Ok(b.colon(&eval(b, l)?, &eval(b, r)?)),
        Expr::Inverse(a) => Ok(b.inverse(&eval(b, a)?)),
        Expr::VClosure(a) => Ok(b.v_closure(&eval(b, a)?)),
        Expr::TClosure(a) => Ok(b.t_closure(&eval(b, a)?)),
    }
}

/// Evaluate and summarize an expression against its domain: canonical
/// rendering plus the containment relation with the unit ideal.
pub fn describe_ideal<B: ElemBackend>(b: &B, src: &str) -> Result<String, ExprError> {
    let ast = parse(src)?;
    let ideal = eval(b, &ast)?;
    let unit = b.unit_ideal();
    let contains_unit = b.contains(&ideal, &unit);
    let inside_unit = b.contains(&unit, &ideal);
    let verdict = if contains_unit && inside_unit {
        "= D"
    } else {
        "≠ D"
    };
    Ok(format!(
        "domain: {}\nideal: {}\ncontains D: {}\ncontained in D: {}\nequals D: {}  [{}]\n",
        b.describe(),
        b.render_ideal(&ideal),
        if contains_unit { "yes" } else { "no" },
        if inside_unit { "yes" } else { "no" },
        if contains_unit && inside_unit {
            "yes"
        } else {
            "no"
        },
        verdict,
    ))
}
