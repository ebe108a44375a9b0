//! Text form of polynomials.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := '1' | '0' | factor ('*' factor)*
//! factor := 'x' DIGITS
//! ```
//!
//! Whitespace is ignored everywhere. `0` is accepted as a term so that the
//! printed form of the zero polynomial parses back.

use alloc::vec::Vec;
use core::fmt;

use super::{F2Poly, Monomial, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    MissingDigits,
    ZeroIndex,
    IndexOverflow,
    IndexOutOfRange { index: Var, n: u32 },
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at position {}", self.position)
            }
            ParseErrorKind::MissingDigits => {
                write!(f, "expected variable digits after 'x' at position {}", self.position)
            }
            ParseErrorKind::ZeroIndex => {
                write!(f, "variable index must be at least 1 (position {})", self.position)
            }
            ParseErrorKind::IndexOverflow => {
                write!(f, "variable index too large at position {}", self.position)
            }
            ParseErrorKind::IndexOutOfRange { index, n } => write!(
                f,
                "variable x{index} exceeds the declared {n} variables (position {})",
                self.position
            ),
        }
    }
}

impl core::error::Error for ParseError {}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.pos, kind }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c as char)),
            None => self.err(ParseErrorKind::UnexpectedEnd),
        }
    }

    /// Returns `(index, start offset)`.
    fn factor(&mut self) -> Result<(Var, usize), ParseError> {
        if self.peek() != Some(b'x') {
            return Err(self.unexpected());
        }
        let start = self.pos;
        self.pos += 1;
        self.skip_ws();
        let digits_start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.bytes.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(c - b'0');
            if value > u64::from(u32::MAX) {
                return Err(ParseError { position: digits_start, kind: ParseErrorKind::IndexOverflow });
            }
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err(ParseErrorKind::MissingDigits));
        }
        if value == 0 {
            return Err(ParseError { position: start, kind: ParseErrorKind::ZeroIndex });
        }
        Ok((value as Var, start))
    }

    /// `None` means the zero term.
    fn term(&mut self, positions: &mut Vec<(Var, usize)>) -> Result<Option<Monomial>, ParseError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Some(Monomial::one()))
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(None)
            }
            _ => {
                let mut vars = Vec::new();
                loop {
                    let (v, at) = self.factor()?;
                    positions.push((v, at));
                    vars.push(v);
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Ok(Some(Monomial::new(vars)))
            }
        }
    }
}

fn parse_terms(text: &str) -> Result<(Vec<Monomial>, Vec<(Var, usize)>), ParseError> {
    let mut lx = Lexer { bytes: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut positions = Vec::new();
    loop {
        if let Some(m) = lx.term(&mut positions)? {
            terms.push(m);
        }
        match lx.peek() {
            Some(b'+') => lx.pos += 1,
            None => break,
            Some(_) => return Err(lx.unexpected()),
        }
    }
    Ok((terms, positions))
}

/// Parses a polynomial whose variable count is the largest index mentioned.
pub fn parse_poly(text: &str) -> Result<F2Poly, ParseError> {
    let (terms, positions) = parse_terms(text)?;
    let n = positions.iter().map(|&(v, _)| v).max().unwrap_or(0);
    Ok(F2Poly::from_monomials(n, terms).expect("indices bounded by construction"))
}

/// Parses a polynomial on an explicit number of variables.
pub fn parse_poly_in(text: &str, n: u32) -> Result<F2Poly, ParseError> {
    let (terms, positions) = parse_terms(text)?;
    if let Some(&(index, position)) = positions.iter().find(|&&(v, _)| v > n) {
        return Err(ParseError { position, kind: ParseErrorKind::IndexOutOfRange { index, n } });
    }
    Ok(F2Poly::from_monomials(n, terms).expect("indices checked above"))
}
