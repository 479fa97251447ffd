//! ASCII polynomial grammar.
//!
//! ```text
//! poly   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' poly ')'
//! ```
//! Variables match `[a-zA-Z][a-zA-Z0-9_]*`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CoordinateRing, MonomialOrder, Polynomial, Rational};
use crate::error::{Error, Result};

/// A parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    /// Shifts the position by a line offset, for errors inside multi-line files.
    pub fn at_line(mut self, line: usize, column_offset: usize) -> Self {
        self.line = line;
        self.column += column_offset;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("variable `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().unwrap()), start + 1));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start + 1));
                continue;
            }
            other => {
                return Err(ParseError {
                    line: 1,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                    expected: vec![],
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            line: 1,
            column: self.col(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn poly(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Tok::Star) {
                self.bump();
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            match self.bump() {
                Tok::Int(n) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        line: 1,
                        column: self.toks[self.pos.saturating_sub(1)].1,
                        message: "exponent too large".into(),
                        expected: vec![],
                    })?;
                    Ok(base.pow(e))
                }
                _ => {
                    self.pos -= 1;
                    Err(self.error(&["integer exponent"]))
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if matches!(self.peek(), Tok::Slash) {
                    self.bump();
                    let col = self.col();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(Polynomial::constant(self.nvars(), Rational::new(n, d))),
                        Tok::Int(_) => Err(ParseError {
                            line: 1,
                            column: col,
                            message: "zero denominator".into(),
                            expected: vec![],
                        }),
                        _ => {
                            self.pos -= 1;
                            Err(self.error(&["integer denominator"]))
                        }
                    }
                } else {
                    Ok(Polynomial::constant(self.nvars(), Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var(self.nvars(), i))
                }
                None => Err(ParseError {
                    line: 1,
                    column: self.col(),
                    message: format!("unknown variable `{name}`"),
                    expected: self.vars.iter().map(|v| format!("`{v}`")).collect(),
                }),
            },
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(self.error(&["`)`"]));
                }
                self.bump();
                Ok(p)
            }
            _ => Err(self.error(&["integer", "variable", "`(`"])),
        }
    }
}

/// Parses one polynomial over the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> std::result::Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let f = p.poly()?;
    if !matches!(p.peek(), Tok::End) {
        return Err(p.error(&["`+`", "`-`", "`*`", "end of input"]));
    }
    Ok(f)
}

/// Splits on commas that are not nested in parentheses, tracking the column of each piece.
pub fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses a comma-separated list of polynomials; columns in errors refer to `text`.
pub fn parse_polynomial_list(text: &str, vars: &[String]) -> std::result::Result<Vec<Polynomial>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, ',')
        .into_iter()
        .map(|(off, piece)| parse_polynomial(piece, vars).map_err(|e| e.at_line(1, off)))
        .collect()
}

pub fn parse_order(text: &str, nvars: usize) -> Result<MonomialOrder> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("unknown monomial order `{t}`"));
    match t {
        "lex" => return Ok(MonomialOrder::Lex),
        "degrevlex" | "grevlex" => return Ok(MonomialOrder::DegRevLex),
        _ => {}
    }
    let (head, rest) = t.split_once('(').ok_or_else(bad)?;
    let inner = rest.strip_suffix(')').ok_or_else(bad)?;
    let parts: Vec<&str> = split_top_level(inner, ',').into_iter().map(|(_, s)| s.trim()).collect();
    match head.trim() {
        "weighted" => {
            let weights = parts[0]
                .split_whitespace()
                .map(|w| w.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if weights.len() != nvars {
                return Err(Error::InvalidArgument(format!("weighted order needs {nvars} weights")));
            }
            let tiebreak = match parts.get(1) {
                Some(p) => parse_order(p, nvars)?,
                None => MonomialOrder::DegRevLex,
            };
            Ok(MonomialOrder::Weighted { weights, tiebreak: Box::new(tiebreak) })
        }
        "block" if parts.len() == 3 => {
            let split: usize = parts[0].parse().map_err(|_| bad())?;
            if split > nvars {
                return Err(bad());
            }
            Ok(MonomialOrder::Block {
                split,
                first: Box::new(parse_order(parts[1], split)?),
                second: Box::new(parse_order(parts[2], nvars - split)?),
            })
        }
        _ => Err(bad()),
    }
}

/// `ring x, y | relations: x^3 - y^2 | order: degrevlex | domain`
pub fn parse_ring_header(line: &str) -> Result<CoordinateRing> {
    let body = line
        .trim()
        .strip_prefix("ring")
        .ok_or_else(|| ParseError { line: 1, column: 1, message: "expected ring header".into(), expected: vec!["`ring`".into()] })?;
    let offset = line.len() - body.len();
    let mut sections = split_top_level(body, '|').into_iter();
    let (_, var_text) = sections.next().unwrap();
    let mut vars = Vec::new();
    for (col, v) in split_top_level(var_text, ',') {
        let v = v.trim();
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError {
                line: 1,
                column: offset + col + 1,
                message: format!("invalid variable name `{v}`"),
                expected: vec!["identifier".into()],
            }
            .into());
        }
        vars.push(v.to_string());
    }
    let mut relations_text = None;
    let mut order_text = None;
    let mut domain = false;
    for (col, sec) in sections {
        let s = sec.trim();
        if let Some(r) = s.strip_prefix("relations:") {
            let start = offset + col + (sec.len() - sec.trim_start().len()) + "relations:".len();
            relations_text = Some((start, r));
        } else if let Some(o) = s.strip_prefix("order:") {
            order_text = Some(o);
        } else if s == "domain" {
            domain = true;
        } else {
            return Err(ParseError {
                line: 1,
                column: offset + col + 1,
                message: format!("unknown header section `{s}`"),
                expected: vec!["`relations:`".into(), "`order:`".into(), "`domain`".into()],
            }
            .into());
        }
    }
    let relations = match relations_text {
        Some((col, t)) => parse_polynomial_list(t, &vars).map_err(|e| e.at_line(1, col))?,
        None => Vec::new(),
    };
    let order = match order_text {
        Some(o) => parse_order(o, vars.len())?,
        None => MonomialOrder::DegRevLex,
    };
    let ring = CoordinateRing::new(vars, relations, order)?;
    Ok(if domain { ring.assert_domain() } else { ring })
}
