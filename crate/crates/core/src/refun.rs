//! The backward translation DCC → CC. A label becomes the function it
//! stands for, with the closure values substituted for its telescope.

use std::collections::HashMap;
use std::sync::Arc;

use crate::dcc as dcc_kernel;
use crate::error::{Result, TypeError};
use crate::syntax::dcc::Term;
use crate::syntax::{cc, dcc, CcContext, DccContext, LabelContext, LabelId, Name};

pub struct Refunctionalizer<'a> {
    defs: &'a LabelContext,
    /// `λx:⟪A⟫.⟪M⟫` per label, with the telescope still free.
    memo: HashMap<LabelId, cc::Tm>,
}

impl<'a> Refunctionalizer<'a> {
    pub fn new(defs: &'a LabelContext) -> Self {
        Refunctionalizer {
            defs,
            memo: HashMap::new(),
        }
    }

    pub fn expr(&mut self, t: &dcc::Tm) -> Result<cc::Tm> {
        Ok(match &**t {
            Term::Var(x) => cc::var_n(x.clone()),
            Term::Universe(i) => cc::universe(*i),
            Term::NatType => cc::nat(),
            Term::NatLit(n) => cc::lit(*n),
            Term::Add(a, b) => cc::add(self.expr(a)?, self.expr(b)?),
            Term::App(f, a) => cc::app(self.expr(f)?, self.expr(a)?),
            Term::Pi(x, a, b) => cc::pi(x.clone(), self.expr(a)?, self.expr(b)?),
            Term::Label(l, closure) => {
                let lam = self.label(*l)?;
                let e = self.defs.get(*l).ok_or(TypeError::UnknownLabel(*l))?;
                if e.fvs.len() != closure.len() {
                    return Err(TypeError::ClosureArity {
                        label: *l,
                        expected: e.fvs.len(),
                        actual: closure.len(),
                    });
                }
                let names: Vec<Name> = e.fvs.iter().map(|(x, _)| x.clone()).collect();
                let mut pairs = Vec::with_capacity(names.len());
                for (x, m) in names.into_iter().zip(closure) {
                    pairs.push((x, self.expr(m)?));
                }
                cc::subst_many(&lam, &pairs)
            }
        })
    }

    fn label(&mut self, l: LabelId) -> Result<cc::Tm> {
        if let Some(t) = self.memo.get(&l) {
            return Ok(t.clone());
        }
        let e = self.defs.get(l).ok_or(TypeError::UnknownLabel(l))?.clone();
        let lam = Arc::new(cc::Term::Lam {
            tag: Some(l.0 as u32),
            binder: e.arg.clone(),
            domain: self.expr(&e.arg_ty)?,
            body: self.expr(&e.body)?,
        });
        self.memo.insert(l, lam.clone());
        Ok(lam)
    }

    pub fn context(&mut self, ctx: &DccContext) -> Result<CcContext> {
        let mut out = CcContext::new();
        for (x, t) in ctx.entries() {
            out.push(x.clone(), self.expr(t)?);
        }
        Ok(out)
    }
}

/// `⟪M⟫` without checking `M` first.
pub fn refun_expr(defs: &LabelContext, t: &dcc::Tm) -> Result<cc::Tm> {
    Refunctionalizer::new(defs).expr(t)
}

pub fn refun_context(defs: &LabelContext, ctx: &DccContext) -> Result<CcContext> {
    Refunctionalizer::new(defs).context(ctx)
}

/// Checks `Δ; Γ ⊢ M` in DCC, then translates context, term and type back.
pub fn refun_checked(
    defs: &LabelContext,
    ctx: &DccContext,
    t: &dcc::Tm,
) -> Result<(CcContext, cc::Tm, cc::Tm)> {
    let ty = dcc_kernel::infer(defs, ctx, t)?;
    let mut r = Refunctionalizer::new(defs);
    Ok((r.context(ctx)?, r.expr(t)?, r.expr(&ty)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::dcc::{app, label, pi, universe, var};
    use crate::syntax::{LabelEntry, Name};

    fn compose3() -> LabelContext {
        LabelContext::from_entries(vec![LabelEntry {
            id: LabelId(3),
            fvs: vec![
                (Name::new("f"), dcc_arrow("B", "C")),
                (Name::new("g"), dcc_arrow("A", "B")),
            ],
            arg: Name::new("x"),
            arg_ty: var("A"),
            body: app(var("f"), app(var("g"), var("x"))),
            ret: var("C"),
        }])
    }

    fn dcc_arrow(a: &str, b: &str) -> dcc::Tm {
        crate::syntax::dcc::arrow(var(a), var(b))
    }

    #[test]
    fn label_becomes_lambda() {
        let d = compose3();
        let t = refun_expr(&d, &label(3, vec![var("f"), var("g")])).unwrap();
        let expected = cc::lam("x", cc::var("A"), cc::app(cc::var("f"), cc::app(cc::var("g"), cc::var("x"))));
        assert!(cc::alpha_eq(&t, &expected));
        let t = refun_expr(&d, &label(3, vec![var("h"), var("k")])).unwrap();
        let expected = cc::lam("x", cc::var("A"), cc::app(cc::var("h"), cc::app(cc::var("k"), cc::var("x"))));
        assert!(cc::alpha_eq(&t, &expected));
    }

    #[test]
    fn variables_and_false_are_unchanged() {
        let d = LabelContext::new();
        assert!(cc::alpha_eq(&refun_expr(&d, &var("x")).unwrap(), &cc::var("x")));
        let falsity = pi("x", universe(0), var("x"));
        let back = refun_expr(&d, &falsity).unwrap();
        assert_eq!(back.to_string(), "(x : Type 0) -> x");
    }

    #[test]
    fn unknown_label() {
        assert_eq!(
            refun_expr(&LabelContext::new(), &label(0, vec![])).unwrap_err(),
            TypeError::UnknownLabel(LabelId(0))
        );
    }
}
