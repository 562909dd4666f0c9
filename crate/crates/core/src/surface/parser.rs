//! Recursive-descent parsers for `.cc` and `.dcc` source.
//!
//! ```text
//! term  ::= fun binder+ => term | binder+ -> term | app [-> term]
//! app   ::= add atom atom | atom atom*
//! atom  ::= x | lN{term, ...} | Type n | Nat | n | ( term )
//! binder::= ( x+ : term )
//! ```
//!
//! `lN{...}` is only a label in `.dcc` mode and `fun` only in `.cc` mode.

use super::lexer::{lex, ParseError, Spanned, Tok};
use crate::syntax::{cc, dcc, LabelId, Name};

/// A parsed term before it is committed to one calculus.
#[derive(Clone, Debug)]
enum Expr {
    Var(Name),
    Universe(u32),
    Nat,
    Lit(u64),
    Add(Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pi(Name, Box<Expr>, Box<Expr>),
    Lam(u32, Name, Box<Expr>, Box<Expr>),
    Label(LabelId, Vec<Expr>),
}

impl Expr {
    fn to_cc(&self) -> cc::Tm {
        match self {
            Expr::Var(x) => cc::var_n(x.clone()),
            Expr::Universe(i) => cc::universe(*i),
            Expr::Nat => cc::nat(),
            Expr::Lit(n) => cc::lit(*n),
            Expr::Add(a, b) => cc::add(a.to_cc(), b.to_cc()),
            Expr::App(f, a) => cc::app(f.to_cc(), a.to_cc()),
            Expr::Pi(x, a, b) => cc::pi(x.clone(), a.to_cc(), b.to_cc()),
            Expr::Lam(tag, x, a, b) => std::sync::Arc::new(cc::Term::Lam {
                tag: Some(*tag),
                binder: x.clone(),
                domain: a.to_cc(),
                body: b.to_cc(),
            }),
            Expr::Label(..) => unreachable!("labels are rejected in .cc mode"),
        }
    }

    fn to_dcc(&self) -> dcc::Tm {
        match self {
            Expr::Var(x) => dcc::var_n(x.clone()),
            Expr::Universe(i) => dcc::universe(*i),
            Expr::Nat => dcc::nat(),
            Expr::Lit(n) => dcc::lit(*n),
            Expr::Add(a, b) => dcc::add(a.to_dcc(), b.to_dcc()),
            Expr::App(f, a) => dcc::app(f.to_dcc(), a.to_dcc()),
            Expr::Pi(x, a, b) => dcc::pi(x.clone(), a.to_dcc(), b.to_dcc()),
            Expr::Label(l, c) => std::sync::Arc::new(dcc::Term::Label(
                *l,
                c.iter().map(Expr::to_dcc).collect(),
            )),
            Expr::Lam(..) => unreachable!("lambdas are rejected in .dcc mode"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Cc,
    Dcc,
}

/// A top-level declaration of a `.cc` file.
#[derive(Clone, Debug)]
pub enum CcDecl {
    Axiom(Name, cc::Tm),
    Def(Name, cc::Tm, cc::Tm),
    Main(cc::Tm),
}

/// A top-level declaration of a `.dcc` file.
#[derive(Clone, Debug)]
pub enum DccDecl {
    Label {
        id: LabelId,
        fvs: Vec<(Name, dcc::Tm)>,
        arg: Name,
        arg_ty: dcc::Tm,
        ret: dcc::Tm,
        body: dcc::Tm,
    },
    Axiom(Name, dcc::Tm),
    Main(dcc::Tm),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    mode: Mode,
    next_tag: u32,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str, mode: Mode) -> PResult<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            mode,
            next_tag: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError {
            line: s.line,
            col: s.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Name::new(&s))
            }
            t => self.error(format!("expected identifier, found {t}")),
        }
    }

    fn starts_binder(&self) -> bool {
        if *self.peek() != Tok::LParen {
            return false;
        }
        let mut k = 1;
        while matches!(self.peek_at(k), Tok::Ident(_)) {
            k += 1;
        }
        k > 1 && *self.peek_at(k) == Tok::Colon
    }

    fn binders(&mut self) -> PResult<Vec<(Name, Expr)>> {
        let mut out = Vec::new();
        while self.starts_binder() {
            self.bump();
            let mut names = vec![self.ident()?];
            while matches!(self.peek(), Tok::Ident(_)) {
                names.push(self.ident()?);
            }
            self.expect(Tok::Colon)?;
            let ty = self.term()?;
            self.expect(Tok::RParen)?;
            out.extend(names.into_iter().map(|x| (x, ty.clone())));
        }
        Ok(out)
    }

    fn term(&mut self) -> PResult<Expr> {
        if *self.peek() == Tok::Fun {
            if self.mode == Mode::Dcc {
                return self.error("`fun` is not a DCC term; use a label");
            }
            self.bump();
            let bs = self.binders()?;
            if bs.is_empty() {
                return self.error("expected a binder `(x : A)` after `fun`");
            }
            let mut tags = Vec::new();
            for _ in &bs {
                tags.push(self.next_tag);
                self.next_tag += 1;
            }
            self.expect(Tok::FatArrow)?;
            let body = self.term()?;
            return Ok(bs
                .into_iter()
                .zip(tags)
                .rev()
                .fold(body, |acc, ((x, a), tag)| {
                    Expr::Lam(tag, x, Box::new(a), Box::new(acc))
                }));
        }
        if self.starts_binder() {
            let bs = self.binders()?;
            self.expect(Tok::Arrow)?;
            let cod = self.term()?;
            return Ok(bs.into_iter().rev().fold(cod, |acc, (x, a)| {
                Expr::Pi(x, Box::new(a), Box::new(acc))
            }));
        }
        let lhs = self.app()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            return Ok(Expr::Pi(Name::anon(), Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn app(&mut self) -> PResult<Expr> {
        let mut head = if *self.peek() == Tok::Add {
            self.bump();
            let a = self.atom()?;
            let b = self.atom()?;
            Expr::Add(Box::new(a), Box::new(b))
        } else {
            self.atom()?
        };
        while self.starts_atom() {
            let a = self.atom()?;
            head = Expr::App(Box::new(head), Box::new(a));
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Type | Tok::Nat | Tok::Num(_) | Tok::LParen
        )
    }

    fn label_id(s: &str) -> Option<LabelId> {
        let digits = s.strip_prefix('l')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().map(LabelId)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                if self.mode == Mode::Dcc && *self.peek_at(1) == Tok::LBrace {
                    let Some(l) = Self::label_id(&s) else {
                        return self.error(format!("`{s}` is not a label name"));
                    };
                    self.bump();
                    self.bump();
                    let mut closure = Vec::new();
                    if *self.peek() != Tok::RBrace {
                        closure.push(self.term()?);
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            closure.push(self.term()?);
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    return Ok(Expr::Label(l, closure));
                }
                self.bump();
                Ok(Expr::Var(Name::new(&s)))
            }
            Tok::Type => {
                self.bump();
                match self.bump() {
                    Tok::Num(n) => match u32::try_from(n) {
                        Ok(i) => Ok(Expr::Universe(i)),
                        Err(_) => self.error("universe level out of range"),
                    },
                    _ => self.error("expected a universe level after `Type`"),
                }
            }
            Tok::Nat => {
                self.bump();
                Ok(Expr::Nat)
            }
            Tok::Num(n) => {
                self.bump();
                Ok(Expr::Lit(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            t => self.error(format!("expected a term, found {t}")),
        }
    }

    fn end_of_term(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {} after term", self.peek()))
        }
    }

    fn cc_decls(&mut self) -> PResult<Vec<CcDecl>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(out),
                Tok::Axiom => {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let t = self.term()?;
                    self.expect(Tok::Semi)?;
                    out.push(CcDecl::Axiom(x, t.to_cc()));
                }
                Tok::Def => {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let t = self.term()?;
                    self.expect(Tok::Define)?;
                    let m = self.term()?;
                    self.expect(Tok::Semi)?;
                    out.push(CcDecl::Def(x, t.to_cc(), m.to_cc()));
                }
                Tok::Main => {
                    self.bump();
                    let m = self.term()?;
                    self.expect(Tok::Semi)?;
                    out.push(CcDecl::Main(m.to_cc()));
                }
                t => {
                    return self.error(format!(
                        "expected `axiom`, `def` or `main`, found {t}"
                    ))
                }
            }
        }
    }

    fn dcc_decls(&mut self) -> PResult<Vec<DccDecl>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(out),
                Tok::Label => {
                    self.bump();
                    let name = self.ident()?;
                    let Some(id) = Self::label_id(name.as_str()) else {
                        return self.error(format!("`{name}` is not a label name"));
                    };
                    self.expect(Tok::LBrace)?;
                    let mut fvs = Vec::new();
                    if *self.peek() != Tok::RBrace {
                        loop {
                            let x = self.ident()?;
                            self.expect(Tok::Colon)?;
                            fvs.push((x, self.term()?.to_dcc()));
                            if *self.peek() != Tok::Comma {
                                break;
                            }
                            self.bump();
                        }
                    }
                    self.expect(Tok::RBrace)?;
                    self.expect(Tok::LParen)?;
                    let arg = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let arg_ty = self.term()?.to_dcc();
                    self.expect(Tok::RParen)?;
                    self.expect(Tok::Arrow)?;
                    let ret = self.term()?.to_dcc();
                    self.expect(Tok::Define)?;
                    let body = self.term()?.to_dcc();
                    self.expect(Tok::Semi)?;
                    out.push(DccDecl::Label {
                        id,
                        fvs,
                        arg,
                        arg_ty,
                        ret,
                        body,
                    });
                }
                Tok::Axiom => {
                    self.bump();
                    let x = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let t = self.term()?.to_dcc();
                    self.expect(Tok::Semi)?;
                    out.push(DccDecl::Axiom(x, t));
                }
                Tok::Main => {
                    self.bump();
                    let m = self.term()?.to_dcc();
                    self.expect(Tok::Semi)?;
                    out.push(DccDecl::Main(m));
                }
                t => {
                    return self.error(format!(
                        "expected `label`, `axiom` or `main`, found {t}"
                    ))
                }
            }
        }
    }
}

/// Parses a single CC term.
pub fn parse_cc_term(src: &str) -> PResult<cc::Tm> {
    let mut p = Parser::new(src, Mode::Cc)?;
    let t = p.term()?;
    p.end_of_term()?;
    Ok(t.to_cc())
}

/// Parses a single DCC term.
pub fn parse_dcc_term(src: &str) -> PResult<dcc::Tm> {
    let mut p = Parser::new(src, Mode::Dcc)?;
    let t = p.term()?;
    p.end_of_term()?;
    Ok(t.to_dcc())
}

pub fn parse_cc_file(src: &str) -> PResult<Vec<CcDecl>> {
    Parser::new(src, Mode::Cc)?.cc_decls()
}

pub fn parse_dcc_file(src: &str) -> PResult<Vec<DccDecl>> {
    Parser::new(src, Mode::Dcc)?.dcc_decls()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{print_cc, print_dcc};

    #[test]
    fn arrows_associate_right() {
        let t = parse_cc_term("A -> B -> C").unwrap();
        let e = cc::arrow(cc::var("A"), cc::arrow(cc::var("B"), cc::var("C")));
        assert!(cc::alpha_eq(&t, &e));
    }

    #[test]
    fn application_associates_left() {
        let t = parse_cc_term("f x (g y)").unwrap();
        let e = cc::app(
            cc::app(cc::var("f"), cc::var("x")),
            cc::app(cc::var("g"), cc::var("y")),
        );
        assert!(cc::alpha_eq(&t, &e));
    }

    #[test]
    fn grouped_binders() {
        let t = parse_cc_term("fun (A B : Type 0) (x : A) => x").unwrap();
        let e = cc::lam(
            "A",
            cc::universe(0),
            cc::lam("B", cc::universe(0), cc::lam("x", cc::var("A"), cc::var("x"))),
        );
        assert!(cc::alpha_eq(&t, &e));
        let p = parse_cc_term("(x : Nat) (y : Nat) -> Nat").unwrap();
        assert_eq!(print_cc(&p), "Nat -> Nat -> Nat");
    }

    #[test]
    fn parenthesised_term_is_not_a_binder() {
        let t = parse_cc_term("(f x) -> Nat").unwrap();
        assert!(matches!(&*t, cc::Term::Pi(..)));
    }

    #[test]
    fn round_trips_through_printer() {
        for src in [
            "fun (A : Type 0) (x : A) => x",
            "(A : Type 1) -> A -> A",
            "add (f 1) 2",
            "(fun (x : Nat) => x) 3",
            "(Nat -> Nat) -> Type 0",
            "f (Type 0) Nat",
        ] {
            let t = parse_cc_term(src).unwrap();
            let again = parse_cc_term(&print_cc(&t)).unwrap();
            assert!(cc::alpha_eq(&t, &again), "{src}");
        }
    }

    #[test]
    fn dcc_labels() {
        let t = parse_dcc_term("l3{f, g x} y").unwrap();
        assert_eq!(print_dcc(&t), "l3{f, g x} y");
        assert!(parse_dcc_term("fun (x : A) => x").is_err());
        assert!(parse_cc_term("l3{f}").is_err());
        assert!(parse_dcc_term("foo{x}").is_err());
    }

    #[test]
    fn files() {
        let decls = parse_cc_file(
            "-- compose\naxiom A : Type 0;\ndef id : A -> A := fun (x : A) => x;\nmain id;",
        )
        .unwrap();
        assert_eq!(decls.len(), 3);
        let d = parse_dcc_file("label l0 {} (x : Nat) -> Nat := add x 1;\nmain l0{} 2;").unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn error_positions() {
        let e = parse_cc_file("axiom A : Type 0;\naxiom B Type 0;").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        let e = parse_cc_term("fun (x : A) x").unwrap_err();
        assert!(e.msg.contains("`=>`"), "{e}");
    }
}
