//! Tokenizer for the theory format. Whitespace separates tokens, `#` starts
//! a line comment, every token carries its 1-based position.

use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    Ident(String),
    Nat(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Equals,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    Eof,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(s) => format!("number `{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Equals => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(super) fn is_valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(super) fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |it: &mut std::iter::Peekable<std::str::Chars>| {
            let c = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut it);
            continue;
        }
        if c == '#' {
            while let Some(&c) = it.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut it);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = it.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(bump(&mut it));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: tline, col: tcol });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = it.peek() {
                if c.is_ascii_digit() {
                    s.push(bump(&mut it));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Nat(s), line: tline, col: tcol });
            continue;
        }
        bump(&mut it);
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '=' => Tok::Equals,
            '+' => Tok::Plus,
            '-' => {
                if it.peek() == Some(&'>') {
                    bump(&mut it);
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            other => {
                return Err(Error::Parse {
                    line: tline,
                    col: tcol,
                    msg: format!("unexpected character {:?}", other),
                })
            }
        };
        out.push(Token { tok, line: tline, col: tcol });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_tokens() {
        let toks = lex("ab 12\n -> -").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("ab".into()));
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        assert_eq!(toks[1].tok, Tok::Nat("12".into()));
        assert_eq!((toks[1].line, toks[1].col), (1, 4));
        assert_eq!(toks[2].tok, Tok::Arrow);
        assert_eq!((toks[2].line, toks[2].col), (2, 2));
        assert_eq!(toks[3].tok, Tok::Minus);
        assert_eq!(toks[4].tok, Tok::Eof);
    }

    #[test]
    fn comments_are_skipped() {
        let toks = lex("a # rest of line ( } .\nb").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("a".into()));
        assert_eq!(toks[1].tok, Tok::Ident("b".into()));
        assert_eq!(toks[1].line, 2);
    }

    #[test]
    fn rejects_decimals_and_strays() {
        let err = lex("1.5").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (1, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(lex("a @ b").is_err());
    }
}
