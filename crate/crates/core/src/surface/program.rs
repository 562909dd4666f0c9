//! Whole source files: declarations elaborated into a context and a main term.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use super::lexer::ParseError;
use super::parser::{parse_cc_file, parse_dcc_file, CcDecl, DccDecl};
use crate::error::TypeError;
use crate::kernel::Checker;
use crate::syntax::{cc, dcc, CcContext, DccContext, LabelContext, LabelEntry, Name};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("type error: {0}")]
    Type(#[from] TypeError),
}

impl LoadError {
    /// 1 for type errors, 2 for everything that never got to the checker.
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Type(_) => 1,
            _ => 2,
        }
    }
}

/// A `.cc` file after `def`s are expanded away.
#[derive(Clone, Debug, Default)]
pub struct CcProgram {
    /// The `axiom`s, in order.
    pub ctx: CcContext,
    /// `(name, type, body)` for each `def`, already expanded.
    pub defs: Vec<(Name, cc::Tm, cc::Tm)>,
    pub main: Option<cc::Tm>,
}

#[derive(Clone, Debug, Default)]
pub struct DccProgram {
    pub labels: LabelContext,
    pub ctx: DccContext,
    pub main: Option<dcc::Tm>,
}

fn duplicate(name: &Name, what: &str) -> ParseError {
    ParseError {
        line: 0,
        col: 0,
        msg: format!("`{name}` {what}"),
    }
}

/// Expands definitions by substitution and checks each body against its
/// declared type in the axioms declared so far.
pub fn elaborate_cc(decls: Vec<CcDecl>, checker: &Checker) -> Result<CcProgram, LoadError> {
    let mut prog = CcProgram::default();
    let mut sub: Vec<(Name, cc::Tm)> = Vec::new();
    let taken = |prog: &CcProgram, x: &Name| {
        prog.ctx.contains(x) || prog.defs.iter().any(|(y, _, _)| y == x)
    };
    for d in decls {
        match d {
            CcDecl::Axiom(x, t) => {
                if taken(&prog, &x) {
                    return Err(duplicate(&x, "is declared twice").into());
                }
                let t = cc::subst_many(&t, &sub);
                checker.universe_of(&Arc::new(prog.ctx.clone()), &t)?;
                prog.ctx.push(x, t);
            }
            CcDecl::Def(x, t, m) => {
                if taken(&prog, &x) {
                    return Err(duplicate(&x, "is declared twice").into());
                }
                let t = cc::subst_many(&t, &sub);
                let m = cc::subst_many(&m, &sub);
                checker.universe_of(&Arc::new(prog.ctx.clone()), &t)?;
                checker.check(&prog.ctx, &m, &t)?;
                sub.push((x.clone(), m.clone()));
                prog.defs.push((x, t, m));
            }
            CcDecl::Main(m) => {
                if prog.main.is_some() {
                    return Err(duplicate(&Name::new("main"), "is given twice").into());
                }
                prog.main = Some(cc::subst_many(&m, &sub));
            }
        }
    }
    Ok(prog)
}

pub fn load_cc_str(src: &str) -> Result<CcProgram, LoadError> {
    elaborate_cc(parse_cc_file(src)?, &Checker::cc())
}

/// Collects a `.dcc` file without checking it.
pub fn load_dcc_str(src: &str) -> Result<DccProgram, LoadError> {
    let mut prog = DccProgram::default();
    for d in parse_dcc_file(src)? {
        match d {
            DccDecl::Label {
                id,
                fvs,
                arg,
                arg_ty,
                ret,
                body,
            } => prog.labels.push(LabelEntry {
                id,
                fvs,
                arg,
                arg_ty,
                body,
                ret,
            })?,
            DccDecl::Axiom(x, t) => {
                if prog.ctx.contains(&x) {
                    return Err(duplicate(&x, "is declared twice").into());
                }
                prog.ctx.push(x, t);
            }
            DccDecl::Main(m) => {
                if prog.main.is_some() {
                    return Err(duplicate(&Name::new("main"), "is given twice").into());
                }
                prog.main = Some(m);
            }
        }
    }
    Ok(prog)
}

pub fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_cc(path: &Path) -> Result<CcProgram, LoadError> {
    load_cc_str(&read(path)?)
}

pub fn load_dcc(path: &Path) -> Result<DccProgram, LoadError> {
    load_dcc_str(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definitions_are_expanded() {
        let p = load_cc_str(
            "axiom A : Type 0;\ndef id : A -> A := fun (x : A) => x;\naxiom a : A;\nmain id a;",
        )
        .unwrap();
        assert_eq!(p.ctx.len(), 2);
        let main = p.main.unwrap();
        assert!(cc::alpha_eq(
            &main,
            &cc::app(cc::lam("x", cc::var("A"), cc::var("x")), cc::var("a"))
        ));
    }

    #[test]
    fn ill_typed_definition() {
        let e = load_cc_str("axiom A : Type 0;\ndef bad : A := Type 0;").unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = load_cc_str("axiom A : Type 0").unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn duplicates_are_rejected() {
        assert!(load_cc_str("axiom A : Type 0; axiom A : Type 0;").is_err());
        assert!(load_cc_str("main Nat; main Nat;").is_err());
    }

    #[test]
    fn dcc_file() {
        let p = load_dcc_str("label l0 {} (x : Nat) -> Nat := add x 1;\nmain l0{} 2;").unwrap();
        assert_eq!(p.labels.len(), 1);
        assert!(p.main.is_some());
    }
}
