//! Polynomial expressions in `n` and `k`:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'n' | 'k' | '(' expr ')' | '-' base
//! rational := int ('/' uint)?
//! ```
//!
//! There is no implicit multiplication: `44k` is an error. Unary minus binds
//! tighter than `^`, so `-n^2` is `(-n)^2`.

use crate::algebra::{BigRat, Poly2};
use num_bigint::BigInt;
use num_traits::Zero;

/// Failure inside an expression, with a 0-based character offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ExprError {
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    Semantic {
        offset: usize,
        msg: String,
    },
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("'{c}'"),
        None => "end of expression".into(),
    }
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn syntax(&mut self, expected: &str) -> ExprError {
        let found = describe(self.peek());
        ExprError::Syntax {
            offset: self.pos,
            expected: expected.into(),
            found,
        }
    }

    fn expr(&mut self) -> Result<Poly2, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly2, ExprError> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint().ok_or_else(|| self.syntax("an exponent"))?;
            let e = u32::try_from(&e).map_err(|_| ExprError::Semantic {
                offset: self.pos,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly2, ExprError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.base()?)
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('n') | Some('k') if !self.ident_continues(1) => {
                let c = self.chars[self.pos];
                self.pos += 1;
                Ok(if c == 'n' { Poly2::n() } else { Poly2::k() })
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Err(ExprError::Semantic {
                    offset: start,
                    msg: format!("unknown variable `{name}` (only n and k are allowed)"),
                })
            }
            _ => Err(self.syntax("a number, n, k, '(' or '-'")),
        }
    }

    fn ident_continues(&self, at: usize) -> bool {
        self.chars
            .get(self.pos + at)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn rational(&mut self) -> Result<Poly2, ExprError> {
        let num = self.uint().expect("caller saw a digit");
        let mut value = BigRat::from_integer(num);
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.uint().ok_or_else(|| self.syntax("a denominator"))?;
            if den.is_zero() {
                return Err(ExprError::Semantic {
                    offset: at,
                    msg: "zero denominator".into(),
                });
            }
            value /= BigRat::from_integer(den);
        }
        Ok(Poly2::constant(value))
    }
}

pub(crate) fn parse_poly(src: &str) -> Result<Poly2, ExprError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("'+', '-', '*', '^', ')' or end of expression"));
    }
    Ok(e)
}
