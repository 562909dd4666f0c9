//! Type checking for DCC.

use std::collections::BTreeSet;

use super::equiv::equiv_with;
use super::reduce::whnf;
use crate::error::{Result, TypeError};
use crate::kernel::reduce::{Budget, DEFAULT_STEP_BUDGET};
use crate::syntax::dcc::{self, Term, Tm};
use crate::syntax::{DccContext, LabelContext, Name};

/// A checker bound to one label context.
#[derive(Clone, Copy, Debug)]
pub struct DccChecker<'a> {
    pub defs: &'a LabelContext,
    pub step_budget: usize,
}

fn show(t: &Tm) -> String {
    t.to_string()
}

impl<'a> DccChecker<'a> {
    pub fn new(defs: &'a LabelContext) -> Self {
        DccChecker {
            defs,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.step_budget)
    }

    pub fn equiv(&self, a: &Tm, b: &Tm) -> Result<bool> {
        equiv_with(self.defs, a, b, &mut self.budget())
    }

    pub fn whnf(&self, t: &Tm) -> Result<Tm> {
        whnf(self.defs, t, &mut self.budget())
    }

    /// Infers the type of `t` in `ctx` assuming `ctx` is well formed.
    pub fn infer(&self, ctx: &DccContext, t: &Tm) -> Result<Tm> {
        match &**t {
            Term::Var(x) => ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
            Term::Universe(i) => Ok(dcc::universe(i + 1)),
            Term::NatType => Ok(dcc::universe(0)),
            Term::NatLit(_) => Ok(dcc::nat()),
            Term::Add(a, b) => {
                self.check(ctx, a, &dcc::nat())?;
                self.check(ctx, b, &dcc::nat())?;
                Ok(dcc::nat())
            }
            Term::Pi(x, a, b) => {
                let i = self.universe_of(ctx, a)?;
                let (x2, b2) = bind(ctx, x, b);
                let j = self.universe_of(&ctx.extended(x2, a.clone()), &b2)?;
                Ok(dcc::universe(i.max(j)))
            }
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                let w = self.whnf(&fty)?;
                let Term::Pi(x, dom, cod) = &*w else {
                    return Err(TypeError::NotAFunction {
                        term: show(f),
                        ty: show(&fty),
                    });
                };
                self.check(ctx, a, dom)?;
                Ok(dcc::subst(cod, x, a))
            }
            Term::Label(l, closure) => {
                let e = self.defs.get(*l).ok_or(TypeError::UnknownLabel(*l))?;
                if e.fvs.len() != closure.len() {
                    return Err(TypeError::ClosureArity {
                        label: *l,
                        expected: e.fvs.len(),
                        actual: closure.len(),
                    });
                }
                let mut sub: Vec<(Name, Tm)> = Vec::new();
                for (i, ((x, a), m)) in e.fvs.iter().zip(closure).enumerate() {
                    let expected = dcc::subst_many(a, &sub);
                    let actual = self.infer(ctx, m)?;
                    if !self.equiv(&actual, &expected)? {
                        return Err(TypeError::ClosureTypeMismatch {
                            label: *l,
                            index: i,
                            expected: show(&expected),
                            actual: show(&actual),
                        });
                    }
                    sub.push((x.clone(), m.clone()));
                }
                Ok(dcc::subst_many(&e.pi_type(), &sub))
            }
        }
    }

    pub fn check(&self, ctx: &DccContext, t: &Tm, expected: &Tm) -> Result<()> {
        let actual = self.infer(ctx, t)?;
        if self.equiv(&actual, expected)? {
            Ok(())
        } else {
            Err(TypeError::TypeMismatch {
                term: show(t),
                expected: show(expected),
                actual: show(&actual),
            })
        }
    }

    pub fn universe_of(&self, ctx: &DccContext, t: &Tm) -> Result<u32> {
        let ty = self.infer(ctx, t)?;
        match &*self.whnf(&ty)? {
            Term::Universe(i) => Ok(*i),
            _ => Err(TypeError::NotAType {
                term: show(t),
                ty: show(&ty),
            }),
        }
    }

    pub fn wf_context(&self, ctx: &DccContext) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, (x, ty)) in ctx.entries().iter().enumerate() {
            if !x.is_anon() && !seen.insert(x.clone()) {
                return Err(TypeError::IllFormedContext {
                    name: x.clone(),
                    reason: "name bound twice".into(),
                });
            }
            self.universe_of(&ctx.prefix(i), ty)
                .map_err(|e| TypeError::IllFormedContext {
                    name: x.clone(),
                    reason: e.to_string(),
                })?;
        }
        Ok(())
    }
}

fn bind(ctx: &DccContext, x: &Name, body: &Tm) -> (Name, Tm) {
    if x.is_anon() || !ctx.contains(x) {
        return (x.clone(), body.clone());
    }
    let mut avoid = ctx.names();
    dcc::all_names(body, &mut avoid);
    let x2 = x.freshen(&avoid);
    (x2.clone(), dcc::subst(body, x, &dcc::var_n(x2)))
}

/// Checks each label entry against the labels before it, then the context.
pub fn wf(defs: &LabelContext, ctx: &DccContext) -> Result<()> {
    wf_labels(defs)?;
    DccChecker::new(defs).wf_context(ctx)
}

pub fn wf_labels(defs: &LabelContext) -> Result<()> {
    let mut prefix = LabelContext::new();
    for e in defs.entries() {
        let bad = |reason: String| TypeError::IllFormedLabel {
            label: e.id,
            reason,
        };
        if prefix.get(e.id).is_some() {
            return Err(bad("label defined twice".into()));
        }
        let chk = DccChecker::new(&prefix);
        let tele = DccContext::from_entries(e.fvs.clone());
        chk.wf_context(&tele).map_err(|err| bad(err.to_string()))?;
        if tele.contains(&e.arg) {
            return Err(bad(format!("argument `{}` repeats a closure variable", e.arg)));
        }
        chk.universe_of(&tele, &e.pi_type())
            .map_err(|err| bad(err.to_string()))?;
        let inner = tele.extended(e.arg.clone(), e.arg_ty.clone());
        chk.check(&inner, &e.body, &e.ret)
            .map_err(|err| bad(err.to_string()))?;
        prefix.push(e.clone())?;
    }
    Ok(())
}

/// `Δ; Γ ⊢ M : ?` with both contexts checked first.
pub fn infer(defs: &LabelContext, ctx: &DccContext, t: &Tm) -> Result<Tm> {
    wf(defs, ctx)?;
    DccChecker::new(defs).infer(ctx, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcc::reduce::tests::simple_compose_defs;
    use crate::syntax::dcc::*;
    use crate::syntax::{LabelEntry, LabelId};

    fn base() -> DccContext {
        DccContext::from_entries(vec![
            (Name::new("A"), universe(0)),
            (Name::new("B"), universe(0)),
            (Name::new("C"), universe(0)),
        ])
    }

    #[test]
    fn simple_compose_type() {
        let d = simple_compose_defs();
        let ty = DccChecker::new(&d).infer(&base(), &label(1, vec![])).unwrap();
        let expected = arrow(
            arrow(var("B"), var("C")),
            arrow(arrow(var("A"), var("B")), arrow(var("A"), var("C"))),
        );
        assert!(alpha_eq(&ty, &expected), "got {ty}");
    }

    #[test]
    fn arity_mismatch() {
        let e = LabelEntry {
            id: LabelId(0),
            fvs: vec![(Name::new("y"), universe(0))],
            arg: Name::new("x"),
            arg_ty: var("y"),
            body: var("x"),
            ret: var("y"),
        };
        let d = LabelContext::from_entries(vec![e]);
        assert!(matches!(
            infer(&d, &DccContext::new(), &label(0, vec![])),
            Err(TypeError::ClosureArity { .. })
        ));
    }

    #[test]
    fn closure_checked_against_telescope() {
        let d = simple_compose_defs();
        let ctx = base().extended(Name::new("h"), arrow(var("A"), var("C")));
        assert!(matches!(
            DccChecker::new(&d).infer(&ctx, &label(2, vec![var("h")])),
            Err(TypeError::ClosureTypeMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn wf_rejects_bad_return_type() {
        let e = LabelEntry {
            id: LabelId(0),
            fvs: vec![],
            arg: Name::new("x"),
            arg_ty: universe(0),
            body: universe(0),
            ret: universe(0),
        };
        let d = LabelContext::from_entries(vec![e]);
        assert!(matches!(wf_labels(&d), Err(TypeError::IllFormedLabel { .. })));
        assert!(wf(&LabelContext::new(), &DccContext::new()).is_ok());
    }

    #[test]
    fn entries_must_close_over_base_types() {
        // The hand-written entries mention A, B, C without binding them.
        assert!(wf_labels(&simple_compose_defs()).is_err());
    }
}
