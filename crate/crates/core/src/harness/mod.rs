//! Executable checks of the translation's metatheory on concrete programs.
//!
//! Each check either passes quietly or returns a [`Failure`] naming the
//! property and the instance that broke it.

pub mod diagram;
pub mod enumerate;

use std::fmt;

use thiserror::Error;

pub use diagram::{check_diagram, DiagramReport};
pub use enumerate::{enumerate_small_terms, seed_contexts, MAX_BUDGET};

use crate::dcc;
use crate::defun::{defun_program, defun_program_with, LabelMinter, TranslationResult};
use crate::error::TypeError;
use crate::kernel::{reduce, Checker};
use crate::refun::refun_checked;
use crate::surface::{print_cc, CcProgram};
use crate::syntax::cc::{self, Tm};
use crate::syntax::{dcc as d, CcContext, LabelEntry, LabelId, Name};

/// Longest CC reduction trace the harness will follow.
pub const MAX_TRACE: usize = 400;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{check}: {detail}")]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

impl Failure {
    pub fn new(check: &str, detail: impl Into<String>) -> Self {
        Failure {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

pub(crate) fn typing(check: &str) -> impl Fn(TypeError) -> Failure + '_ {
    move |e| Failure::new(check, e.to_string())
}

/// `Δ_Γ ∪ Δ_M; ⟦Γ⟧ ⊢ ⟦M⟧ : ⟦A⟧` up to DCC equivalence.
pub fn check_type_preservation(ctx: &CcContext, m: &Tm) -> Outcome<TranslationResult> {
    const C: &str = "type-preservation";
    let r = defun_program(ctx, m).map_err(typing(C))?;
    let defs = r.all_defs().map_err(typing(C))?;
    let ty = dcc::infer(&defs, &r.dcc_ctx, &r.term).map_err(typing(C))?;
    if !dcc::equiv(&defs, &ty, &r.ty).map_err(typing(C))? {
        return Err(Failure::new(
            C,
            format!(
                "`{}` has DCC type `{}`, expected `{}`",
                r.term,
                ty,
                r.ty
            ),
        ));
    }
    if !r.ty_defs.is_subset_of(&r.defs) {
        return Err(Failure::new(C, "definitions of the type are not among the term's"));
    }
    Ok(r)
}

/// `⟪⟦M⟧⟫ ≡ M`, and the refunctionalized judgement still checks in CC.
pub fn check_round_trip(ctx: &CcContext, m: &Tm) -> Outcome {
    const C: &str = "round-trip";
    let r = defun_program(ctx, m).map_err(typing(C))?;
    let defs = r.all_defs().map_err(typing(C))?;
    let (g, back, back_ty) = refun_checked(&defs, &r.dcc_ctx, &r.term).map_err(typing(C))?;
    let cc = Checker::cc();
    if !cc.equiv(&back, m).map_err(typing(C))? {
        return Err(Failure::new(
            C,
            format!("`{}` came back as `{}`", print_cc(m), print_cc(&back)),
        ));
    }
    for ((x, a), (_, b)) in ctx.entries().iter().zip(g.entries()) {
        if !cc.equiv(a, b).map_err(typing(C))? {
            return Err(Failure::new(C, format!("context entry `{x}` changed")));
        }
    }
    let d = cc.infer(&g, &back).map_err(typing(C))?;
    if !cc.equiv(&d.ty, &back_ty).map_err(typing(C))? {
        return Err(Failure::new(
            C,
            format!(
                "`{}` checks at `{}` but its DCC type comes back as `{}`",
                print_cc(&back),
                print_cc(&d.ty),
                print_cc(&back_ty)
            ),
        ));
    }
    Ok(())
}

/// Whether `t` normalizes to `Nat`.
pub fn is_ground(t: &Tm) -> bool {
    matches!(reduce::normalize(t).as_deref(), Ok(cc::Term::NatType))
}

/// The DCC normal form of `⟦M⟧` against `⟦nf(M)⟧`, exact for ground types
/// and up to equivalence otherwise, then the diagram along the CC trace.
pub fn check_reduction_preservation(ctx: &CcContext, m: &Tm) -> Outcome<DiagramReport> {
    const C: &str = "reduction-preservation";
    let checker = Checker::cc();
    let d = checker.infer(ctx, m).map_err(typing(C))?;
    let trace = reduce::trace(m, MAX_TRACE).map_err(typing(C))?;
    let n = trace.last().expect("trace is never empty");
    let mut minter = LabelMinter::new();
    let rm = defun_program_with(&checker, &mut minter, ctx, m).map_err(typing(C))?;
    let rn = defun_program_with(&checker, &mut minter, ctx, n).map_err(typing(C))?;
    let defs = rm
        .all_defs()
        .and_then(|x| x.union(&rn.defs))
        .map_err(typing(C))?;
    let nf = dcc::normalize(&defs, &rm.term).map_err(typing(C))?;
    let ok = if is_ground(&d.ty) {
        d::alpha_eq(&nf, &rn.term)
    } else {
        dcc::equiv(&defs, &nf, &rn.term).map_err(typing(C))?
    };
    if !ok {
        return Err(Failure::new(
            C,
            format!("DCC normal form `{nf}` differs from `{}`", rn.term),
        ));
    }
    check_diagram(ctx, &trace)
}

/// A closed DCC term normalizes to a value: a label, a Π-type, a universe,
/// `Nat` or a literal.
pub fn check_type_safety(ctx: &CcContext, m: &Tm) -> Outcome {
    const C: &str = "type-safety";
    if !ctx.is_empty() {
        return Ok(());
    }
    let r = defun_program(ctx, m).map_err(typing(C))?;
    let defs = r.all_defs().map_err(typing(C))?;
    let nf = dcc::normalize(&defs, &r.term).map_err(typing(C))?;
    match &*nf {
        d::Term::Label(..) | d::Term::Pi(..) | d::Term::Universe(_) | d::Term::NatType | d::Term::NatLit(_) => Ok(()),
        _ => Err(Failure::new(C, format!("`{nf}` is stuck"))),
    }
}

/// Extending Γ with a fresh variable or Δ with an unused label keeps the
/// translated judgement valid.
pub fn check_weakening(ctx: &CcContext, m: &Tm) -> Outcome {
    const C: &str = "weakening";
    let mut avoid = ctx.names();
    cc::all_names(m, &mut avoid);
    let w = Name::new("w").freshen(&avoid);
    let wider = ctx.extended(w, cc::nat());
    check_type_preservation(&wider, m).map_err(|f| Failure::new(C, f.to_string()))?;

    let r = defun_program(ctx, m).map_err(typing(C))?;
    let mut defs = r.all_defs().map_err(typing(C))?;
    let unused = LabelId(defs.ids().iter().map(|l| l.0 + 1).max().unwrap_or(0) + 1000);
    defs.push(LabelEntry {
        id: unused,
        fvs: vec![],
        arg: Name::new("n"),
        arg_ty: d::nat(),
        body: d::var("n"),
        ret: d::nat(),
    })
    .map_err(typing(C))?;
    let ty = dcc::infer(&defs, &r.dcc_ctx, &r.term).map_err(typing(C))?;
    if !dcc::equiv(&defs, &ty, &r.ty).map_err(typing(C))? {
        return Err(Failure::new(C, "an unused label changed the type"));
    }
    Ok(())
}

/// One line of a verification report.
#[derive(Clone, Debug)]
pub struct Line {
    pub instance: String,
    pub check: &'static str,
    pub result: Outcome<String>,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Ok(note) if note.is_empty() => write!(f, "PASS {} {}", self.check, self.instance),
            Ok(note) => write!(f, "PASS {} {} ({note})", self.check, self.instance),
            Err(e) => write!(f, "FAIL {} {}: {e}", self.check, self.instance),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.result.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Line> {
        self.lines.iter().filter(|l| l.result.is_err())
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    fn push(&mut self, instance: &str, check: &'static str, result: Outcome<String>) {
        self.lines.push(Line {
            instance: instance.to_string(),
            check,
            result,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Every check on one judgement `Γ ⊢ M`.
pub fn verify_judgement(instance: &str, ctx: &CcContext, m: &Tm) -> Report {
    let mut rep = Report::default();
    let ty = match Checker::cc().infer(ctx, m) {
        Ok(d) => d.ty,
        Err(e) => {
            rep.push(instance, "typing", Err(Failure::new("typing", e.to_string())));
            return rep;
        }
    };
    rep.push(
        instance,
        "type-preservation",
        check_type_preservation(ctx, m).map(|r| format!("{} labels", r.all_defs().map(|d| d.len()).unwrap_or(0))),
    );
    rep.push(instance, "round-trip", check_round_trip(ctx, m).map(|_| String::new()));
    rep.push(
        instance,
        "reduction-preservation",
        check_reduction_preservation(ctx, m).map(|r| r.to_string()),
    );
    let type_trace = reduce::trace(&ty, MAX_TRACE).map_err(typing("diagram"));
    rep.push(
        instance,
        "type-diagram",
        type_trace
            .and_then(|t| check_diagram(ctx, &t))
            .map(|r| r.to_string()),
    );
    rep.push(instance, "type-safety", check_type_safety(ctx, m).map(|_| String::new()));
    rep.push(instance, "weakening", check_weakening(ctx, m).map(|_| String::new()));
    rep
}

/// Verifies the main term and every definition of a program.
pub fn verify_program(name: &str, prog: &CcProgram) -> Report {
    let mut rep = Report::default();
    for (x, _, body) in &prog.defs {
        rep.extend(verify_judgement(&format!("{name}:{x}"), &prog.ctx, body));
    }
    if let Some(m) = &prog.main {
        rep.extend(verify_judgement(&format!("{name}:main"), &prog.ctx, m));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;

    #[test]
    fn universe_passes_everything() {
        let r = verify_judgement("u0", &CcContext::new(), &universe(0));
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn identity_application() {
        let g = CcContext::from_entries(vec![(Name::new("A"), universe(0)), (Name::new("a"), var("A"))]);
        let m = app(lam("x", var("A"), var("x")), var("a"));
        let r = verify_judgement("id a", &g, &m);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn closed_arithmetic() {
        let m = app(lam("x", nat(), add(var("x"), lit(2))), lit(2));
        let r = verify_judgement("two_plus_two", &CcContext::new(), &m);
        assert!(r.passed(), "{r}");
    }
}
