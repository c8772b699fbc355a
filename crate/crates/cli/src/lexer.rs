use std::fmt;

use thiserror::Error;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    Str(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into() }
    }
}

// Longest first.
const SYMBOLS: &[&str] = &[
    ":=", "=>", "->", "/\\", "\\/", "|-", "(", ")", "[", "]", "{", "}", "<", ">", ",", ";", ":",
    ".", "@", "=", "|", "$",
];

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if ident_start(c) {
            let mut j = i;
            // `-` joins words (`izf-r-minus`) but never starts `->`
            while j < chars.len()
                && (ident_char(chars[j])
                    || (chars[j] == '-' && chars.get(j + 1).is_some_and(|d| d.is_ascii_alphanumeric())))
            {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            out.push(Token { tok: Tok::Ident(word), pos });
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let n = digits.parse().map_err(|_| ParseError::new(pos, format!("number `{digits}` is too large")))?;
            out.push(Token { tok: Tok::Num(n), pos });
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
        } else if c == '"' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                j += 1;
            }
            if chars.get(j) != Some(&'"') {
                return Err(ParseError::new(pos, "unterminated string"));
            }
            let s: String = chars[i + 1..j].iter().collect();
            out.push(Token { tok: Tok::Str(s), pos });
            let n = j + 1 - i;
            advance(&mut i, &mut line, &mut col, n);
        } else {
            let sym = SYMBOLS.iter().find(|s| {
                let n = s.chars().count();
                i + n <= chars.len() && chars[i..i + n].iter().copied().eq(s.chars())
            });
            match sym {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), pos });
                    advance(&mut i, &mut line, &mut col, s.chars().count());
                }
                None => return Err(ParseError::new(pos, format!("unexpected character `{c}`"))),
            }
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}
