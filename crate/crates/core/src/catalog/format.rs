//! Tokens and values of the `.identity` format.
//!
//! A file is a sequence of `[section]` headers and `key = value` lines.
//! Values are bare words, rationals, quoted strings, `[...]` lists and
//! `(...)` tuples. Newlines end a statement except inside brackets; `#`
//! starts a comment.

use super::CatalogError;
use crate::algebra::BigRat;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(BigInt),
    Str(String),
    Sym(char),
    Newline,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Int(i) => format!("number {i}"),
        Tok::Str(_) => "a string".into(),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of file".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, CatalogError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: li + 1,
                col: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c == '"' {
                let start = i + 1;
                let Some(len) = chars[start..].iter().position(|&x| x == '"') else {
                    return Err(CatalogError::parse(pos, "closing '\"'", "end of line"));
                };
                let s: String = chars[start..start + len].iter().collect();
                out.push((Tok::Str(s), pos));
                i = start + len + 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().unwrap()), pos));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Word(chars[start..i].iter().collect()), pos));
                continue;
            }
            match c {
                '[' | '(' => depth += 1,
                ']' | ')' => depth = depth.saturating_sub(1),
                '=' | ',' | '-' | '/' => {}
                _ => {
                    return Err(CatalogError::parse(
                        pos,
                        "a key, value or punctuation",
                        &format!("'{c}'"),
                    ))
                }
            }
            out.push((Tok::Sym(c), pos));
            i += 1;
        }
        if depth == 0 {
            out.push((
                Tok::Newline,
                Pos {
                    line: li + 1,
                    col: chars.len() + 1,
                },
            ));
        }
    }
    let end = Pos {
        line: text.lines().count() + 1,
        col: 1,
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Word(String),
    Rat(BigRat),
    /// Contents and the position of the first character inside the quotes.
    Str(String, Pos),
    List(Vec<(Value, Pos)>),
    Tuple(Vec<(Value, Pos)>),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Word(_) => "a word",
            Value::Rat(_) => "a number",
            Value::Str(..) => "a string",
            Value::List(_) => "a list",
            Value::Tuple(_) => "a tuple",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Stmt {
    Section(String, Pos),
    Entry(String, Pos, Value, Pos),
}

struct Reader {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Reader {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.i]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> CatalogError {
        let (t, p) = self.peek();
        CatalogError::parse(*p, expected, &describe(t))
    }

    fn expect_sym(&mut self, c: char) -> Result<Pos, CatalogError> {
        match self.peek() {
            (Tok::Sym(x), p) if *x == c => {
                let p = *p;
                self.bump();
                Ok(p)
            }
            _ => Err(self.err(&format!("'{c}'"))),
        }
    }

    fn end_of_statement(&mut self) -> Result<(), CatalogError> {
        match self.peek().0 {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.err("end of line")),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt, CatalogError> {
        let neg = matches!(self.peek().0, Tok::Sym('-'));
        if neg {
            self.bump();
        }
        match self.peek().0.clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("a number")),
        }
    }

    fn value(&mut self) -> Result<(Value, Pos), CatalogError> {
        let (tok, pos) = self.peek().clone();
        let v = match tok {
            Tok::Word(w) => {
                self.bump();
                Value::Word(w)
            }
            Tok::Str(s) => {
                self.bump();
                Value::Str(
                    s,
                    Pos {
                        line: pos.line,
                        col: pos.col + 1,
                    },
                )
            }
            Tok::Int(_) | Tok::Sym('-') => {
                let num = self.signed_int()?;
                let mut v = BigRat::from_integer(num);
                if matches!(self.peek().0, Tok::Sym('/')) {
                    self.bump();
                    let at = self.peek().1;
                    let den = self.signed_int()?;
                    if den.is_zero() {
                        return Err(CatalogError::semantic(at, "zero denominator"));
                    }
                    v /= BigRat::from_integer(den);
                }
                Value::Rat(v)
            }
            Tok::Sym(open @ ('[' | '(')) => {
                self.bump();
                let close = if open == '[' { ']' } else { ')' };
                let mut items = Vec::new();
                loop {
                    if matches!(self.peek().0, Tok::Sym(c) if c == close) {
                        self.bump();
                        break;
                    }
                    items.push(self.value()?);
                    match self.peek().0 {
                        Tok::Sym(',') => {
                            self.bump();
                        }
                        Tok::Sym(c) if c == close => {}
                        _ => return Err(self.err(&format!("',' or '{close}'"))),
                    }
                }
                if open == '[' {
                    Value::List(items)
                } else {
                    Value::Tuple(items)
                }
            }
            _ => return Err(self.err("a value")),
        };
        Ok((v, pos))
    }

    fn statement(&mut self) -> Result<Option<Stmt>, CatalogError> {
        loop {
            match self.peek().0 {
                Tok::Newline => {
                    self.bump();
                }
                Tok::Eof => return Ok(None),
                _ => break,
            }
        }
        let (tok, pos) = self.peek().clone();
        match tok {
            Tok::Sym('[') => {
                self.bump();
                let name = match self.bump() {
                    (Tok::Word(w), _) => w,
                    (t, p) => return Err(CatalogError::parse(p, "a section name", &describe(&t))),
                };
                self.expect_sym(']')?;
                self.end_of_statement()?;
                Ok(Some(Stmt::Section(name, pos)))
            }
            Tok::Word(key) => {
                self.bump();
                self.expect_sym('=')?;
                let (v, vpos) = self.value()?;
                self.end_of_statement()?;
                Ok(Some(Stmt::Entry(key, pos, v, vpos)))
            }
            _ => Err(self.err("a key or a section header")),
        }
    }
}

pub fn statements(text: &str) -> Result<Vec<Stmt>, CatalogError> {
    let mut r = Reader {
        toks: lex(text)?,
        i: 0,
    };
    let mut out = Vec::new();
    while let Some(s) = r.statement()? {
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn values_and_multiline_lists() {
        let s = statements(
            "[identity]\n# note\nz = -3/-6\nl = [(\"n\", 2),\n  (1/2, -1)]\nkind = wz\n",
        )
        .unwrap();
        assert_eq!(s.len(), 4);
        match &s[1] {
            Stmt::Entry(k, _, Value::Rat(v), _) => {
                assert_eq!(k, "z");
                assert_eq!(*v, rat(1, 2));
            }
            other => panic!("{other:?}"),
        }
        match &s[2] {
            Stmt::Entry(_, _, Value::List(items), _) => assert_eq!(items.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match statements("[identity]\nz = 1 2\n") {
            Err(CatalogError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("{other:?}"),
        }
        match statements("a = \"open\n") {
            Err(CatalogError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 5)),
            other => panic!("{other:?}"),
        }
    }
}
