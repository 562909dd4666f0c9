//! Defunctionalization: CC derivations to DCC terms plus label contexts.

pub mod minter;
pub mod translate;

use std::sync::Arc;

pub use minter::LabelMinter;
pub use translate::{Translated, Translator};

use crate::error::Result;
use crate::kernel::{Checker, Derivation};
use crate::syntax::cc::Tm;
use crate::syntax::{dcc, CcContext, DccContext, LabelContext};

/// Everything produced by translating a program `Γ ⊢ M : A`.
#[derive(Clone, Debug)]
pub struct TranslationResult {
    /// `⟦M⟧`
    pub term: dcc::Tm,
    /// `⟦A⟧`
    pub ty: dcc::Tm,
    /// `⟦M⟧_d`
    pub defs: LabelContext,
    /// `⟦A⟧_d`
    pub ty_defs: LabelContext,
    /// `Δ_Γ`
    pub ctx_defs: LabelContext,
    /// `⟦Γ⟧`
    pub dcc_ctx: DccContext,
    pub derivation: Derivation,
}

impl TranslationResult {
    /// `Δ_Γ ∪ ⟦M⟧_d`, the label context the translated term is checked in.
    pub fn all_defs(&self) -> Result<LabelContext> {
        self.ctx_defs.union(&self.defs)
    }
}

/// Type checks `term` in `ctx` and translates it with a fresh minter.
pub fn defun_program(ctx: &CcContext, term: &Tm) -> Result<TranslationResult> {
    let mut minter = LabelMinter::new();
    defun_program_with(&Checker::cc(), &mut minter, ctx, term)
}

/// As [`defun_program`] with a caller-supplied checker and minter, so that
/// several translations can agree on label ids.
pub fn defun_program_with(
    checker: &Checker,
    minter: &mut LabelMinter,
    ctx: &CcContext,
    term: &Tm,
) -> Result<TranslationResult> {
    let derivation = checker.infer(ctx, term)?;
    let mut tr = Translator::new(checker.clone(), minter);
    let (dcc_ctx, ctx_defs) = tr.translate_context(ctx)?;
    let m = tr.translate(&derivation)?;
    let a = tr.translate_type_in(&Arc::new(ctx.clone()), &derivation.ty)?;
    Ok(TranslationResult {
        term: m.term,
        ty: a.term,
        defs: m.defs,
        ty_defs: a.defs,
        ctx_defs,
        dcc_ctx,
        derivation,
    })
}

/// `⟦M⟧` for a derivation, with a fresh minter.
pub fn defun_expr(d: &Derivation) -> Result<dcc::Tm> {
    let mut minter = LabelMinter::new();
    Ok(Translator::new(Checker::cc(), &mut minter).translate(d)?.term)
}

/// `⟦M⟧_d` for a derivation, with a fresh minter.
pub fn defun_defs(d: &Derivation) -> Result<LabelContext> {
    let mut minter = LabelMinter::new();
    Ok(Translator::new(Checker::cc(), &mut minter).translate(d)?.defs)
}

/// `⟦Γ⟧` and `Δ_Γ`.
pub fn defun_context(ctx: &CcContext) -> Result<(DccContext, LabelContext)> {
    Checker::cc().wf_context(ctx)?;
    let mut minter = LabelMinter::new();
    Translator::new(Checker::cc(), &mut minter).translate_context(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcc;
    use crate::syntax::cc::*;
    use crate::syntax::{LabelId, Name};

    fn ctx(entries: &[(&str, Tm)]) -> CcContext {
        CcContext::from_entries(
            entries
                .iter()
                .map(|(x, t)| (Name::new(x), t.clone()))
                .collect(),
        )
    }

    #[test]
    fn closed_identity_becomes_empty_closure() {
        let t = lam("x", universe(0), var("x"));
        let r = defun_program(&CcContext::new(), &t).unwrap();
        assert!(matches!(&*r.term, crate::syntax::dcc::Term::Label(LabelId(0), c) if c.is_empty()));
        assert_eq!(r.defs.len(), 1);
    }

    #[test]
    fn universe_has_no_definitions() {
        let r = defun_program(&CcContext::new(), &universe(0)).unwrap();
        assert!(r.defs.is_empty());
    }

    #[test]
    fn context_without_lambdas() {
        let g = ctx(&[("A", universe(0)), ("f", arrow(var("A"), var("A")))]);
        let (dctx, defs) = defun_context(&g).unwrap();
        assert_eq!(dctx.len(), 2);
        assert!(defs.is_empty());
    }

    fn nat_example() -> (CcContext, Tm) {
        // A : (Nat → Nat) → U0, a : Πf:(Nat → Nat). A (λn:Nat. 1 + f n)
        let g = ctx(&[
            ("A", arrow(arrow(nat(), nat()), universe(0))),
            (
                "a",
                pi(
                    "f",
                    arrow(nat(), nat()),
                    app(var("A"), lam("n", nat(), add(lit(1), app(var("f"), var("n"))))),
                ),
            ),
        ]);
        let m = app(var("a"), lam("x", nat(), add(lit(1), var("x"))));
        (g, m)
    }

    #[test]
    fn substitution_creates_a_label() {
        let (g, m) = nat_example();
        let r = defun_program(&g, &m).unwrap();
        // Δ_Γ holds λn.1 + f n closed over f.
        assert_eq!(r.ctx_defs.len(), 1);
        assert_eq!(r.ctx_defs.entries()[0].fvs.len(), 1);
        // Δ_M also holds λx.1 + x and the instantiated
        // λn.1 + ((λx.1 + x) n); the Γ label comes in through the type of a.
        assert_eq!(r.defs.len(), 3);
        assert_eq!(r.all_defs().unwrap().len(), 3);
        let closed = r.defs.entries().iter().filter(|e| e.fvs.is_empty()).count();
        assert_eq!(closed, 2);
    }

    #[test]
    fn type_preservation_on_nat_example() {
        let (g, m) = nat_example();
        let r = defun_program(&g, &m).unwrap();
        let defs = r.all_defs().unwrap();
        let ty = dcc::infer(&defs, &r.dcc_ctx, &r.term).unwrap();
        assert!(dcc::equiv(&defs, &ty, &r.ty).unwrap());
        assert!(r.ty_defs.is_subset_of(&r.defs));
    }

    #[test]
    fn translation_is_deterministic() {
        let (g, m) = nat_example();
        let a = defun_program(&g, &m).unwrap();
        let b = defun_program(&g, &m).unwrap();
        assert!(crate::syntax::dcc::alpha_eq(&a.term, &b.term));
        assert_eq!(a.defs.ids(), b.defs.ids());
        assert!(a.defs.is_subset_of(&b.defs) && b.defs.is_subset_of(&a.defs));
    }

    #[test]
    fn same_lambda_twice_shares_a_label() {
        // (λf:Nat→Nat. f) (λx:Nat. x) applied to both copies of λx.x
        let id = lam("x", nat(), var("x"));
        let t = app(app(lam("f", arrow(nat(), nat()), lam("g", arrow(nat(), nat()), var("f"))), id.clone()), id);
        let r = defun_program(&CcContext::new(), &t).unwrap();
        let ids: Vec<LabelId> = r.defs.ids();
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids, dedup);
        assert_eq!(r.defs.len(), 3);
    }
}
