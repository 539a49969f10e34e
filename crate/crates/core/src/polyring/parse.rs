//! Text and JSON forms of polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! poly  := ('+'|'-')? term (('+'|'-') term)*
//! term  := coeff ('*'? mono)? | mono
//! mono  := var ('^' uint)? ('*'? var ('^' uint)?)*
//! var   := 'x' uint | 's'
//! coeff := uint ('/' uint)?
//! ```
//!
//! `s` is only accepted when the target ring carries the parameter.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, Rational, Ring};
use crate::error::{Error, ParseError, Result};

/// Parse `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Invalid(format!("`{text}` is not a rational number p/q"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    X(usize),
    S,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    text: String,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            's' => Some(Tok::S),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                text: c.to_string(),
                line: start_line,
                column: start_col,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned {
                tok: Tok::Int(text.parse().expect("digits")),
                text,
                line: start_line,
                column: start_col,
            });
            continue;
        }
        if c == 'x' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            let idx: usize = text[1..].parse().unwrap_or(0);
            if idx == 0 {
                return Err(ParseError {
                    line: start_line,
                    column: start_col,
                    token: text,
                    message: "variables are x1, x2, ...".into(),
                });
            }
            out.push(Spanned {
                tok: Tok::X(idx - 1),
                text,
                line: start_line,
                column: start_col,
            });
            continue;
        }
        return Err(ParseError {
            line: start_line,
            column: start_col,
            token: c.to_string(),
            message: "unexpected character".into(),
        });
    }
    Ok(out)
}

/// Polynomial parsed without a fixed ring; variable indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPoly {
    terms: Vec<(BTreeMap<usize, u32>, u32, Rational)>,
    max_x: Option<usize>,
    uses_s: bool,
}

impl ParsedPoly {
    /// Number of `x` variables the text mentions (highest index).
    pub fn min_nx(&self) -> usize {
        self.max_x.map_or(0, |i| i + 1)
    }

    pub fn uses_s(&self) -> bool {
        self.uses_s
    }

    pub fn into_poly(self, ring: Ring) -> Result<Poly> {
        if self.min_nx() > ring.nx() {
            return Err(Error::ContextMismatch {
                expected: ring.to_string(),
                found: format!("x{} in input", self.min_nx()),
            });
        }
        if self.uses_s && !ring.has_s() {
            return Err(Error::ContextMismatch {
                expected: ring.to_string(),
                found: "s in input".into(),
            });
        }
        let mut p = Poly::zero(ring);
        for (xs, s_exp, c) in self.terms {
            let mut e = vec![0u32; ring.nvars()];
            for (i, k) in xs {
                e[i] = k;
            }
            if let Some(si) = ring.s_index() {
                e[si] = s_exp;
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error(&self, message: &str) -> ParseError {
        match self.toks.get(self.pos) {
            Some(t) => ParseError {
                line: t.line,
                column: t.column,
                token: t.text.clone(),
                message: message.into(),
            },
            None => ParseError {
                line: self.end.0,
                column: self.end.1,
                token: "<end of input>".into(),
                message: message.into(),
            },
        }
    }

    fn uint(&mut self) -> std::result::Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected an unsigned integer")),
        }
    }

    fn small_exponent(&mut self) -> std::result::Result<u32, ParseError> {
        let at = self.pos;
        let v = self.uint()?;
        u32::try_from(v).map_err(|_| {
            self.pos = at;
            self.error("exponent too large")
        })
    }

    fn is_var(&self) -> bool {
        matches!(self.peek(), Some(Tok::X(_)) | Some(Tok::S))
    }

    fn mono(
        &mut self,
        xs: &mut BTreeMap<usize, u32>,
        s_exp: &mut u32,
        out: &mut ParsedPoly,
    ) -> std::result::Result<(), ParseError> {
        loop {
            let var = match self.peek() {
                Some(Tok::X(i)) => Some(*i),
                Some(Tok::S) => None,
                _ => return Err(self.error("expected a variable")),
            };
            self.pos += 1;
            let mut k = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                k = self.small_exponent()?;
            }
            match var {
                Some(i) => {
                    *xs.entry(i).or_insert(0) += k;
                    out.max_x = Some(out.max_x.map_or(i, |m| m.max(i)));
                }
                None => {
                    *s_exp += k;
                    out.uses_s = true;
                }
            }
            // optional '*' followed by another variable; a bare next variable is implicit product
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                if !self.is_var() {
                    return Err(self.error("expected a variable after `*`"));
                }
            } else if !self.is_var() {
                return Ok(());
            }
        }
    }

    fn term(&mut self, sign: i32, out: &mut ParsedPoly) -> std::result::Result<(), ParseError> {
        let mut c = Rational::one();
        let mut xs = BTreeMap::new();
        let mut s_exp = 0;
        if let Some(Tok::Int(_)) = self.peek() {
            let num = self.uint()?;
            let mut den = BigInt::one();
            if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                let at = self.pos;
                den = self.uint()?;
                if den.is_zero() {
                    self.pos = at;
                    return Err(self.error("zero denominator"));
                }
            }
            c = Rational::new(num, den);
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                self.mono(&mut xs, &mut s_exp, out)?;
            } else if self.is_var() {
                self.mono(&mut xs, &mut s_exp, out)?;
            }
        } else {
            self.mono(&mut xs, &mut s_exp, out)?;
        }
        if sign < 0 {
            c = -c;
        }
        out.terms.push((xs, s_exp, c));
        Ok(())
    }

    fn poly(&mut self) -> std::result::Result<ParsedPoly, ParseError> {
        let mut out = ParsedPoly {
            terms: Vec::new(),
            max_x: None,
            uses_s: false,
        };
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            None => return Err(self.error("empty polynomial")),
            _ => {}
        }
        self.term(sign, &mut out)?;
        loop {
            match self.peek() {
                None => return Ok(out),
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Err(self.error("expected `+`, `-` or end of input")),
            }
            self.pos += 1;
            self.term(sign, &mut out)?;
        }
    }
}

/// Parse polynomial text without committing to a ring.
pub fn parse_untyped(text: &str) -> std::result::Result<ParsedPoly, ParseError> {
    let toks = lex(text)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    Parser { toks, pos: 0, end }.poly()
}

/// Parse polynomial text into `ring`.
pub fn parse_poly(text: &str, ring: Ring) -> Result<Poly> {
    parse_untyped(text)?.into_poly(ring)
}

impl std::str::FromStr for ParsedPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_untyped(s)
    }
}

/// `{"vars": ["x1","x2"], "terms": [{"c": "3/2", "e": [2,0]}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.ring().var_names(),
            terms: self
                .display_terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Poly> {
        let with_s = json.vars.last().is_some_and(|v| v == "s");
        let nx = json.vars.len() - usize::from(with_s);
        let ring = if with_s { Ring::with_s(nx) } else { Ring::new(nx) };
        if json.vars != ring.var_names() {
            return Err(Error::Invalid(format!(
                "variables must be {:?}, got {:?}",
                ring.var_names(),
                json.vars
            )));
        }
        let mut p = Poly::zero(ring);
        for t in &json.terms {
            if t.e.len() != ring.nvars() {
                return Err(Error::Invalid(format!(
                    "exponent vector {:?} has wrong length",
                    t.e
                )));
            }
            p.add_term(Monomial::new(t.e.clone()), parse_rational(&t.c)?);
        }
        Ok(p)
    }
}
