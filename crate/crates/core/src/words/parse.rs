//! Recursive-descent parser for the word syntax.
//!
//! ```text
//! word   := factor* ;
//! factor := base iter? power? ;
//! base   := IDENT | "[" word "]" | "1" ;
//! iter   := "@" POSINT ;            (only on a bracket)
//! power  := "^" NZINT ;
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Factor, Generator, Sign, Word, MAX_POWER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

pub(super) fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected("a factor or end of input"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::new(self.pos, alloc::format!("expected {expected}, found {:?}", c as char)),
            None => ParseError::new(self.pos, alloc::format!("expected {expected}, found end of input")),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut factors: Vec<Factor> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_lowercase() || c == b'[' || c == b'1' => {
                    let (base, power) = self.factor()?;
                    let letters = if power < 0 { base.invert() } else { base };
                    for _ in 0..power.unsigned_abs() {
                        for f in letters.factors() {
                            super::push_reduced(&mut factors, f.clone());
                        }
                    }
                }
                _ => return Ok(Word::from_reduced(factors)),
            }
        }
    }

    /// A base with its optional iteration, plus the group power to apply.
    fn factor(&mut self) -> Result<(Word, i64), ParseError> {
        let start = self.pos;
        let base = match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let content = self.word()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(self.unexpected("`]`"));
                }
                self.pos += 1;
                let iter = if self.peek() == Some(b'@') {
                    self.pos += 1;
                    let at = self.pos;
                    let n = self.integer()?;
                    if n < 1 {
                        return Err(ParseError::new(at, "operator iteration `@n` needs n >= 1"));
                    }
                    u32::try_from(n).map_err(|_| ParseError::new(at, "iteration count too large"))?
                } else {
                    1
                };
                Word::letter(Factor::bracket(content, iter, Sign::Pos))
            }
            Some(b'1') => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    return Err(ParseError::new(start, "identifiers must start with a lowercase letter"));
                }
                Word::identity()
            }
            _ => {
                let ident = self.identifier();
                let id = Generator::new(ident).map_err(|_| ParseError::new(start, "invalid identifier"))?;
                Word::letter(Factor::generator(id, Sign::Pos))
            }
        };
        if self.peek() == Some(b'@') {
            return Err(ParseError::new(self.pos, "`@n` is only allowed after a bracket"));
        }
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let k = self.integer()?;
            if k == 0 {
                return Err(ParseError::new(at, "group power `^0` is not allowed"));
            }
            if k.unsigned_abs() > MAX_POWER {
                return Err(ParseError::new(at, alloc::format!("group power exceeds {MAX_POWER}")));
            }
            k
        } else {
            1
        };
        Ok((base, power))
    }

    fn identifier(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        // ASCII-only slice of valid UTF-8 input
        core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.unexpected("an integer"));
        }
        let digits = core::str::from_utf8(&self.src[digits_start..self.pos]).unwrap_or("");
        let value: i64 = digits.parse().map_err(|_| ParseError::new(start, "integer out of range"))?;
        Ok(if negative { -value } else { value })
    }
}
