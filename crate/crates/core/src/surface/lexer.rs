use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Semi,
    Arrow,
    FatArrow,
    Define,
    Fun,
    Type,
    Nat,
    Add,
    Axiom,
    Def,
    Main,
    Label,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Num(n) => write!(f, "number `{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Define => f.write_str("`:=`"),
            Tok::Fun => f.write_str("`fun`"),
            Tok::Type => f.write_str("`Type`"),
            Tok::Nat => f.write_str("`Nat`"),
            Tok::Add => f.write_str("`add`"),
            Tok::Axiom => f.write_str("`axiom`"),
            Tok::Def => f.write_str("`def`"),
            Tok::Main => f.write_str("`main`"),
            Tok::Label => f.write_str("`label`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '=' if chars.get(i + 1) == Some(&'>') => push(Tok::FatArrow, 2, &mut i, &mut col),
            ':' if chars.get(i + 1) == Some(&'=') => push(Tok::Define, 2, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let n = s.parse::<u64>().map_err(|_| ParseError {
                    line,
                    col,
                    msg: format!("number `{s}` out of range"),
                })?;
                push(Tok::Num(n), j - start, &mut i, &mut col);
            }
            c if is_ident_start(c) => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let s: String = chars[start..j].iter().collect();
                let tok = match s.as_str() {
                    "fun" => Tok::Fun,
                    "Type" => Tok::Type,
                    "Nat" => Tok::Nat,
                    "add" => Tok::Add,
                    "axiom" => Tok::Axiom,
                    "def" => Tok::Def,
                    "main" => Tok::Main,
                    "label" => Tok::Label,
                    _ => Tok::Ident(s),
                };
                push(tok, j - start, &mut i, &mut col);
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_symbols_and_comments() {
        let toks: Vec<Tok> = lex("fun (x : A) => x -- comment\n:= -> x'")
            .unwrap()
            .into_iter()
            .map(|s| s.tok)
            .collect();
        assert_eq!(
            toks,
            vec![
                Tok::Fun,
                Tok::LParen,
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Ident("A".into()),
                Tok::RParen,
                Tok::FatArrow,
                Tok::Ident("x".into()),
                Tok::Define,
                Tok::Arrow,
                Tok::Ident("x'".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn reports_position() {
        let e = lex("x\n  #").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }
}
