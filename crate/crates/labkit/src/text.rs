//! Text grammar for scalars, polynomials and noncommutative polynomials.
//!
//! Polynomial grammar (whitespace is ignored everywhere):
//!
//! ```text
//! poly        := [ '+' | '-' ] term { ('+' | '-') term }
//! term        := factor { '*' factor }
//! factor      := rational | 'i' | variable | '(' scalar-expr ')'
//! variable    := 'x' INT [ '^' INT ]
//! rational    := INT [ '/' INT ]
//! scalar-expr := [ '+' | '-' ] scalar-term { ('+' | '-') scalar-term }
//! scalar-term := rational [ '*' 'i' ] | 'i' | '(' scalar-expr ')'
//! ```
//!
//! Noncommutative terms use uppercase generators: `coeff * X0 X2 X2`, letters
//! adjacent or whitespace separated. Formatting always emits terms in
//! descending graded-lex (resp. graded word) order, so output is canonical
//! and `parse(format(p)) == p` holds exactly.

use crate::enveloping::{NCPoly, Word};
use crate::error::Error;
use crate::poly::{Monomial, Poly};
use crate::scalar::GaussScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(u32),
    Gen(u32),
    Imag,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Lexer, Error> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: BigInt = text[i..j].parse().expect("digit run");
                toks.push((start, Tok::Num(n)));
                i = j;
            }
            b'x' | b'X' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(
                        start,
                        format!("expected index digits after '{}'", b as char),
                    ));
                }
                let idx: u32 = text[i + 1..j]
                    .parse()
                    .map_err(|_| err(start, "variable index too large"))?;
                toks.push((
                    start,
                    if b == b'x' {
                        Tok::Var(idx)
                    } else {
                        Tok::Gen(idx)
                    },
                ));
                i = j;
            }
            b'i' => {
                if i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    return Err(err(start, "unexpected identifier"));
                }
                toks.push((start, Tok::Imag));
                i += 1;
            }
            b'+' => {
                toks.push((start, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((start, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((start, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((start, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((start, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((start, Tok::RParen));
                i += 1;
            }
            _ => return Err(err(start, format!("unexpected character '{}'", b as char))),
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), Error> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(err(self.here(), format!("expected {what}")))
        }
    }

    fn expect_end(&self) -> Result<(), Error> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(err(self.here(), "trailing input"))
        }
    }

    /// `INT [ '/' INT ]`, the leading INT already consumed.
    fn rational_tail(&mut self, num: BigInt) -> Result<BigRational, Error> {
        if self.eat(&Tok::Slash) {
            let p = self.here();
            match self.next() {
                Some(Tok::Num(den)) => {
                    if den.is_zero() {
                        return Err(err(p, "zero denominator"));
                    }
                    Ok(BigRational::new(num, den))
                }
                _ => Err(err(p, "expected denominator")),
            }
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// Signed sum of scalar terms, up to (not consuming) a closing paren or
    /// end of input.
    fn scalar_expr(&mut self) -> Result<GaussScalar, Error> {
        let mut acc = GaussScalar::zero();
        let mut sign = match self.peek() {
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
            let term = self.scalar_term()?;
            if sign {
                acc -= &term;
            } else {
                acc += &term;
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn scalar_term(&mut self) -> Result<GaussScalar, Error> {
        let p = self.here();
        match self.next() {
            Some(Tok::Num(n)) => {
                let q = self.rational_tail(n)?;
                if self.eat(&Tok::Star) {
                    self.expect(Tok::Imag, "'i' after '*' in scalar")?;
                    Ok(GaussScalar::new(BigRational::zero(), q))
                } else {
                    Ok(GaussScalar::from_rational(q))
                }
            }
            Some(Tok::Imag) => Ok(GaussScalar::i()),
            Some(Tok::LParen) => {
                let inner = self.scalar_expr()?;
                self.expect(Tok::RParen, "closing ')'")?;
                Ok(inner)
            }
            _ => Err(err(p, "expected scalar")),
        }
    }
}

/// Parses a standalone scalar in the coefficient grammar.
pub fn parse_scalar(text: &str) -> Result<GaussScalar, Error> {
    let mut lx = lex(text)?;
    let v = lx.scalar_expr()?;
    lx.expect_end()?;
    Ok(v)
}

/// Parses a polynomial over `n_vars` variables.
pub fn parse_poly(text: &str, n_vars: usize) -> Result<Poly, Error> {
    let mut lx = lex(text)?;
    let poly = parse_poly_tokens(&mut lx, n_vars)?;
    lx.expect_end()?;
    Ok(poly)
}

/// Parses a polynomial, inferring the variable universe as `max index + 1`.
pub fn parse_poly_infer(text: &str) -> Result<Poly, Error> {
    let wide = parse_poly(text, u32::MAX as usize)?;
    let n = wide
        .terms()
        .filter_map(|(m, _)| m.max_var())
        .max()
        .map_or(0, |v| v + 1);
    Ok(Poly::from_terms(
        n,
        wide.terms().map(|(m, c)| (m.clone(), c.clone())),
    ))
}

fn parse_poly_tokens(lx: &mut Lexer, n_vars: usize) -> Result<Poly, Error> {
    let mut acc = Poly::zero(n_vars);
    if lx.toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut negate = match lx.peek() {
        Some(Tok::Minus) => {
            lx.pos += 1;
            true
        }
        Some(Tok::Plus) => {
            lx.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (coeff, mono) = poly_term(lx, n_vars)?;
        acc.add_term(mono, if negate { -coeff } else { coeff });
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.pos += 1;
                negate = false;
            }
            Some(Tok::Minus) => {
                lx.pos += 1;
                negate = true;
            }
            _ => return Ok(acc),
        }
    }
}

fn poly_term(lx: &mut Lexer, n_vars: usize) -> Result<(GaussScalar, Monomial), Error> {
    let mut coeff = GaussScalar::one();
    let mut exps: Vec<(usize, u32)> = Vec::new();
    loop {
        let p = lx.here();
        match lx.next() {
            Some(Tok::Num(n)) => {
                let q = lx.rational_tail(n)?;
                coeff *= &GaussScalar::from_rational(q);
            }
            Some(Tok::Imag) => coeff *= &GaussScalar::i(),
            Some(Tok::LParen) => {
                let inner = lx.scalar_expr()?;
                lx.expect(Tok::RParen, "closing ')'")?;
                coeff *= &inner;
            }
            Some(Tok::Var(v)) => {
                if (v as usize) >= n_vars {
                    return Err(err(
                        p,
                        format!("unknown variable x{v} (universe has {n_vars} variables)"),
                    ));
                }
                let e = if lx.eat(&Tok::Caret) {
                    let ep = lx.here();
                    match lx.next() {
                        Some(Tok::Num(n)) => {
                            u32::try_from(&n).map_err(|_| err(ep, "exponent too large"))?
                        }
                        _ => return Err(err(ep, "expected exponent")),
                    }
                } else {
                    1
                };
                exps.push((v as usize, e));
            }
            Some(Tok::Gen(_)) => {
                return Err(err(p, "uppercase generator in commutative polynomial"))
            }
            _ => return Err(err(p, "expected term factor")),
        }
        if !lx.eat(&Tok::Star) {
            return Ok((coeff, Monomial::from_exps(exps)));
        }
    }
}

/// Parses a noncommutative polynomial over `dim` generators.
pub fn parse_ncpoly(text: &str, dim: usize) -> Result<NCPoly, Error> {
    let mut lx = lex(text)?;
    if lx.toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    let mut terms: Vec<(Word, GaussScalar)> = Vec::new();
    let mut negate = match lx.peek() {
        Some(Tok::Minus) => {
            lx.pos += 1;
            true
        }
        Some(Tok::Plus) => {
            lx.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (coeff, word) = nc_term(&mut lx, dim)?;
        terms.push((word, if negate { -coeff } else { coeff }));
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.pos += 1;
                negate = false;
            }
            Some(Tok::Minus) => {
                lx.pos += 1;
                negate = true;
            }
            _ => break,
        }
    }
    lx.expect_end()?;
    Ok(NCPoly::from_terms(dim, terms))
}

fn nc_term(lx: &mut Lexer, dim: usize) -> Result<(GaussScalar, Word), Error> {
    let mut coeff = GaussScalar::one();
    let mut have_scalar = false;
    // scalar prefix: factors separated by '*'
    loop {
        match lx.peek() {
            Some(Tok::Num(_)) => {
                if let Some(Tok::Num(n)) = lx.next() {
                    let q = lx.rational_tail(n)?;
                    coeff *= &GaussScalar::from_rational(q);
                }
            }
            Some(Tok::Imag) => {
                lx.pos += 1;
                coeff *= &GaussScalar::i();
            }
            Some(Tok::LParen) => {
                lx.pos += 1;
                let inner = lx.scalar_expr()?;
                lx.expect(Tok::RParen, "closing ')'")?;
                coeff *= &inner;
            }
            _ => break,
        }
        have_scalar = true;
        if !lx.eat(&Tok::Star) {
            break;
        }
    }
    // generator word (possibly empty when a scalar was present)
    let mut letters: Vec<u32> = Vec::new();
    while let Some(Tok::Gen(k)) = lx.peek() {
        let k = *k;
        if (k as usize) >= dim {
            return Err(err(
                lx.here(),
                format!("unknown generator X{k} (algebra dimension {dim})"),
            ));
        }
        lx.pos += 1;
        letters.push(k);
    }
    if letters.is_empty() && !have_scalar {
        return Err(err(lx.here(), "expected coefficient or generator"));
    }
    Ok((coeff, Word::new(letters)))
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

fn rational_atom(q: &BigRational) -> String {
    q.to_string()
}

fn is_negative(c: &GaussScalar) -> bool {
    c.re().is_negative() || (c.re().is_zero() && c.im().is_negative())
}

/// Multiplicative prefix for a positive-normalized coefficient, e.g. ``,
/// `3*`, `(1/2)*`, `i*`, `3*i*`, `(-…)` never appears (sign is handled by the
/// caller).
fn coeff_prefix(c: &GaussScalar) -> String {
    if c.is_one() {
        return String::new();
    }
    if c.is_rational() {
        let q = c.re();
        if q.is_integer() {
            return format!("{q}*");
        }
        return format!("({})*", rational_atom(q));
    }
    if c.re().is_zero() {
        let q = c.im();
        if q.is_one() {
            return "i*".to_string();
        }
        if q.is_integer() {
            return format!("{q}*i*");
        }
        return format!("({})*i*", rational_atom(q));
    }
    format!("({c})*")
}

/// Standalone scalar (constant term) in canonical form.
fn standalone_scalar(c: &GaussScalar) -> String {
    if c.is_rational() {
        return rational_atom(c.re());
    }
    if c.re().is_zero() {
        let q = c.im();
        if q.is_one() {
            return "i".to_string();
        }
        return format!("{}*i", rational_atom(q));
    }
    format!("({c})")
}

pub fn format_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .map(|(v, e)| {
            if e == 1 {
                format!("x{v}")
            } else {
                format!("x{v}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Canonical text form: terms in descending graded-lex order.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let neg = is_negative(c);
        let mag = if neg { -c } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&standalone_scalar(&mag));
        } else {
            out.push_str(&coeff_prefix(&mag));
            out.push_str(&format_monomial(m));
        }
    }
    out
}

pub fn format_word(w: &Word) -> String {
    let parts: Vec<String> = w.letters().iter().map(|k| format!("X{k}")).collect();
    parts.join(" ")
}

/// Canonical text form for noncommutative polynomials; terms in descending
/// graded word order.
pub fn format_ncpoly(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (w, c)) in p.terms().rev().enumerate() {
        let neg = is_negative(c);
        let mag = if neg { -c } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            out.push_str(&standalone_scalar(&mag));
        } else {
            out.push_str(&coeff_prefix(&mag));
            out.push_str(&format_word(w));
        }
    }
    out
}
