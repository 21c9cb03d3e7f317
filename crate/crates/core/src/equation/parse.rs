//! Text grammar:
//!
//! ```text
//! equation := term ('+' term)* '=' integer
//! term     := [integer '*'] 'x' index '^' integer
//! ```
//!
//! Indices must run `1..=n` in order. Whitespace is ignored everywhere.

use thiserror::Error;

use super::{DiophantineEquation, EquationError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {reason}")]
pub struct ParseError {
    pub position: usize,
    pub reason: String,
}

impl ParseError {
    fn new(position: usize, reason: impl Into<String>) -> Self {
        Self {
            position,
            reason: reason.into(),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&mut self, what: &str) -> ParseError {
        let found = match self.peek() {
            Some(b) => format!("'{}'", b as char),
            None => "end of input".to_string(),
        };
        ParseError::new(self.pos, format!("expected {what}, found {found}"))
    }

    /// Unsigned decimal literal. Returns its start offset too.
    fn integer(&mut self, what: &str) -> Result<(u128, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            return Err(ParseError::new(start, format!("{what} must be positive")));
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected(what));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value = digits
            .parse::<u128>()
            .map_err(|_| ParseError::new(start, format!("{what} is too large")))?;
        Ok((value, start))
    }
}

pub fn parse_equation(text: &str) -> Result<DiophantineEquation, ParseError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    loop {
        terms.push(parse_term(&mut cur, terms.len() + 1)?);
        if !cur.eat(b'+') {
            break;
        }
    }
    cur.expect(b'=', "'+' or '='")?;
    let (target, target_at) = cur.integer("target")?;
    if target == 0 {
        return Err(ParseError::new(target_at, "target must be >= 1"));
    }
    if cur.peek().is_some() {
        return Err(ParseError::new(cur.pos, "trailing input after target"));
    }
    DiophantineEquation::new(terms, target).map_err(|e| match e {
        EquationError::Overflow => ParseError::new(0, "largest feasible value overflows 128-bit arithmetic"),
        other => ParseError::new(0, other.to_string()),
    })
}

fn parse_term(cur: &mut Cursor<'_>, expected_index: usize) -> Result<Term, ParseError> {
    let mut coefficient = 1u64;
    if cur.peek().is_some_and(|b| b.is_ascii_digit() || b == b'-') {
        let (value, at) = cur.integer("coefficient")?;
        if value == 0 {
            return Err(ParseError::new(at, "coefficient must be >= 1"));
        }
        coefficient = u64::try_from(value).map_err(|_| ParseError::new(at, "coefficient is too large"))?;
        cur.expect(b'*', "'*' after coefficient")?;
    }
    cur.expect(b'x', "variable 'x<index>'")?;
    let (index, index_at) = cur.integer("variable index")?;
    if index != expected_index as u128 {
        return Err(ParseError::new(
            index_at,
            format!("variable index {index} out of order, expected x{expected_index}"),
        ));
    }
    cur.expect(b'^', "'^' after variable")?;
    let (power, power_at) = cur.integer("power")?;
    if power == 0 {
        return Err(ParseError::new(power_at, "power must be >= 1"));
    }
    let power = u32::try_from(power).map_err(|_| ParseError::new(power_at, "power is too large"))?;
    Ok(Term::new(coefficient, power))
}
