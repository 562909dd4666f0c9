//! Pretty-printers producing text the parsers accept back.

use std::fmt;

use crate::syntax::{cc, dcc, Name};

const TOP: u8 = 0;
const APP: u8 = 1;
const ATOM: u8 = 2;

pub fn print_cc(t: &cc::Term) -> String {
    let mut s = String::new();
    write_cc(t, TOP, &mut s);
    s
}

pub fn print_dcc(t: &dcc::Term) -> String {
    let mut s = String::new();
    write_dcc(t, TOP, &mut s);
    s
}

fn open(prec: u8, needed: u8, out: &mut String) -> bool {
    let paren = prec > needed;
    if paren {
        out.push('(');
    }
    paren
}

fn close(paren: bool, out: &mut String) {
    if paren {
        out.push(')');
    }
}

fn write_cc(t: &cc::Term, prec: u8, out: &mut String) {
    use cc::Term::*;
    match t {
        Var(x) => out.push_str(x.as_str()),
        Universe(i) => {
            let p = open(prec, APP, out);
            out.push_str(&format!("Type {i}"));
            close(p, out);
        }
        NatType => out.push_str("Nat"),
        NatLit(n) => out.push_str(&n.to_string()),
        Add(a, b) => {
            let p = open(prec, APP, out);
            out.push_str("add ");
            write_cc(a, ATOM, out);
            out.push(' ');
            write_cc(b, ATOM, out);
            close(p, out);
        }
        App(f, a) => {
            let p = open(prec, APP, out);
            write_cc(f, APP, out);
            out.push(' ');
            write_cc(a, ATOM, out);
            close(p, out);
        }
        Pi(x, a, b) => {
            let p = open(prec, TOP, out);
            if cc::occurs_free(x, b) {
                out.push_str(&format!("({x} : "));
                write_cc(a, TOP, out);
                out.push_str(") -> ");
            } else {
                write_cc(a, APP, out);
                out.push_str(" -> ");
            }
            write_cc(b, TOP, out);
            close(p, out);
        }
        Lam { .. } => {
            let p = open(prec, TOP, out);
            out.push_str("fun");
            let mut cur = t;
            while let Lam {
                binder,
                domain,
                body,
                ..
            } = cur
            {
                out.push_str(&format!(" ({binder} : "));
                write_cc(domain, TOP, out);
                out.push(')');
                cur = body;
            }
            out.push_str(" => ");
            write_cc(cur, TOP, out);
            close(p, out);
        }
        ESubst {
            subject,
            binder,
            replacement,
            ..
        } => {
            write_cc(subject, ATOM, out);
            out.push_str(&format!("{{{binder} := "));
            write_cc(replacement, TOP, out);
            out.push('}');
        }
    }
}

fn write_dcc(t: &dcc::Term, prec: u8, out: &mut String) {
    use dcc::Term::*;
    match t {
        Var(x) => out.push_str(x.as_str()),
        Universe(i) => {
            let p = open(prec, APP, out);
            out.push_str(&format!("Type {i}"));
            close(p, out);
        }
        NatType => out.push_str("Nat"),
        NatLit(n) => out.push_str(&n.to_string()),
        Add(a, b) => {
            let p = open(prec, APP, out);
            out.push_str("add ");
            write_dcc(a, ATOM, out);
            out.push(' ');
            write_dcc(b, ATOM, out);
            close(p, out);
        }
        App(f, a) => {
            let p = open(prec, APP, out);
            write_dcc(f, APP, out);
            out.push(' ');
            write_dcc(a, ATOM, out);
            close(p, out);
        }
        Pi(x, a, b) => {
            let p = open(prec, TOP, out);
            if dcc::free_var_set(b).contains(x) {
                out.push_str(&format!("({x} : "));
                write_dcc(a, TOP, out);
                out.push_str(") -> ");
            } else {
                write_dcc(a, APP, out);
                out.push_str(" -> ");
            }
            write_dcc(b, TOP, out);
            close(p, out);
        }
        Label(l, closure) => {
            out.push_str(&format!("{l}{{"));
            for (i, m) in closure.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_dcc(m, TOP, out);
            }
            out.push('}');
        }
    }
}

impl fmt::Display for cc::Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_cc(self))
    }
}

impl fmt::Display for dcc::Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_dcc(self))
    }
}

/// `x : A` pairs joined by commas.
pub fn print_telescope(entries: &[(Name, dcc::Tm)]) -> String {
    entries
        .iter()
        .map(|(x, a)| format!("{x} : {}", print_dcc(a)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;

    #[test]
    fn prints_arrows_and_binders() {
        let t = pi("A", universe(0), arrow(var("A"), var("A")));
        assert_eq!(print_cc(&t), "(A : Type 0) -> A -> A");
        let t = arrow(arrow(nat(), nat()), universe(0));
        assert_eq!(print_cc(&t), "(Nat -> Nat) -> Type 0");
    }

    #[test]
    fn prints_lambdas_and_applications() {
        let t = lam("x", nat(), add(lit(1), var("x")));
        assert_eq!(print_cc(&t), "fun (x : Nat) => add 1 x");
        let t = app(app(var("f"), var("x")), app(var("g"), var("x")));
        assert_eq!(print_cc(&t), "f x (g x)");
        let t = app(lam("x", nat(), var("x")), lit(2));
        assert_eq!(print_cc(&t), "(fun (x : Nat) => x) 2");
    }

    #[test]
    fn prints_labels() {
        let t = dcc::label(3, vec![dcc::var("f"), dcc::var("g")]);
        assert_eq!(print_dcc(&t), "l3{f, g}");
        assert_eq!(print_dcc(&dcc::label(0, vec![])), "l0{}");
    }
}
