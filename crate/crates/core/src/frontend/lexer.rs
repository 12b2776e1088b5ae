//! Tokens with source positions.

use num_bigint::BigInt;

use crate::frontend::ast::ParseError;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Hash,
    Wedge,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Eq,
    Semi,
    Colon,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Slash => "/",
            Tok::Hash => "#",
            Tok::Wedge => "/\\",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Semi => ";",
            Tok::Colon => ":",
            _ => "",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let next = chars.get(i + 1).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && next == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                if chars[i] == '\n' {
                    return Err(ParseError::at(pos, "unterminated string"));
                }
                i += 1;
            }
            if i == chars.len() {
                return Err(ParseError::at(pos, "unterminated string"));
            }
            i += 1;
            Tok::Str(chars[start + 1..i - 1].iter().collect())
        } else {
            i += 1;
            match c {
                '/' if next == Some('\\') => {
                    i += 1;
                    Tok::Wedge
                }
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '#' => Tok::Hash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                other => return Err(ParseError::at(pos, format!("unexpected character `{other}`"))),
            }
        };
        col += i - start;
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("a /\\ b // note\n  3/4").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(kinds[1], &Tok::Wedge);
        assert_eq!(toks[3].pos, Pos { line: 2, col: 3 });
        assert_eq!(toks[4].tok, Tok::Slash);
        assert_eq!(toks.last().unwrap().tok, Tok::Eof);
    }

    #[test]
    fn bad_character() {
        let err = tokenize("P0 $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 4));
    }
}
