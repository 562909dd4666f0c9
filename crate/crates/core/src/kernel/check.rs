//! Type inference for CC, producing derivation trees. The same checker runs
//! CC^σ when built in [`Mode::Ccs`]: applications then get the type
//! `B{x ↦ N}` and explicit substitutions are accepted.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::derivation::{Derivation, Rule};
use super::reduce::{Budget, DEFAULT_STEP_BUDGET};
use crate::ccs;
use crate::error::{Result, TypeError};
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::{CcContext, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Cc,
    Ccs,
}

#[derive(Clone, Debug)]
pub struct Checker {
    pub mode: Mode,
    pub step_budget: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::cc()
    }
}

fn show(t: &Tm) -> String {
    t.to_string()
}

impl Checker {
    pub fn cc() -> Self {
        Checker {
            mode: Mode::Cc,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn ccs() -> Self {
        Checker {
            mode: Mode::Ccs,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_budget(mut self, steps: usize) -> Self {
        self.step_budget = steps;
        self
    }

    fn budget(&self) -> Budget {
        Budget::new(self.step_budget)
    }

    pub fn whnf(&self, t: &Tm) -> Result<Tm> {
        let mut b = self.budget();
        match self.mode {
            Mode::Cc => super::reduce::whnf(t, &mut b),
            Mode::Ccs => ccs::reduce::whnf(t, &mut b),
        }
    }

    pub fn normalize(&self, t: &Tm) -> Result<Tm> {
        let mut b = self.budget();
        match self.mode {
            Mode::Cc => super::reduce::normalize_with(t, &mut b),
            Mode::Ccs => ccs::reduce::normalize_with(t, &mut b),
        }
    }

    /// Replaces every local definition of `ctx` in `t`, innermost first.
    fn unfold(ctx: &CcContext, t: &Tm) -> Tm {
        ctx.definitions()
            .rev()
            .fold(t.clone(), |acc, (x, v)| cc::subst(&acc, x, v))
    }

    /// Equivalence in `ctx`, unfolding its local definitions if the plain
    /// comparison fails.
    fn equiv_in(&self, ctx: &CcContext, a: &Tm, b: &Tm) -> Result<bool> {
        if self.equiv(a, b)? {
            return Ok(true);
        }
        if !ctx.has_definitions() {
            return Ok(false);
        }
        self.equiv(&Self::unfold(ctx, a), &Self::unfold(ctx, b))
    }

    /// Weak head normal form in `ctx`, unfolding local definitions when the
    /// plain head is not `want`.
    fn whnf_in(&self, ctx: &CcContext, t: &Tm, want: fn(&Term) -> bool) -> Result<Tm> {
        let w = self.whnf(t)?;
        if want(&w) || !ctx.has_definitions() {
            return Ok(w);
        }
        self.whnf(&Self::unfold(ctx, t))
    }

    pub fn equiv(&self, a: &Tm, b: &Tm) -> Result<bool> {
        let mut budget = self.budget();
        match self.mode {
            Mode::Cc => super::equiv::equiv_with(a, b, &mut budget),
            Mode::Ccs => ccs::equiv::equiv_with(a, b, &mut budget),
        }
    }

    /// Checks that every entry's type is a type in the preceding prefix and
    /// that names are distinct.
    pub fn wf_context(&self, ctx: &CcContext) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, (x, ty)) in ctx.entries().iter().enumerate() {
            if !x.is_anon() && !seen.insert(x.clone()) {
                return Err(TypeError::IllFormedContext {
                    name: x.clone(),
                    reason: "name bound twice".into(),
                });
            }
            let prefix = Arc::new(ctx.prefix(i));
            self.universe_of(&prefix, ty)
                .map_err(|e| TypeError::IllFormedContext {
                    name: x.clone(),
                    reason: e.to_string(),
                })?;
        }
        Ok(())
    }

    /// Infers the type of `t` in a context that is first checked for
    /// well-formedness.
    pub fn infer(&self, ctx: &CcContext, t: &Tm) -> Result<Derivation> {
        self.wf_context(ctx)?;
        self.infer_in(&Arc::new(ctx.clone()), t)
    }

    /// Checks `t` against `expected`, inserting a conversion if needed.
    pub fn check(&self, ctx: &CcContext, t: &Tm, expected: &Tm) -> Result<Derivation> {
        self.wf_context(ctx)?;
        self.check_in(&Arc::new(ctx.clone()), t, expected)
    }

    /// Inference assuming `ctx` is well formed.
    pub fn infer_in(&self, ctx: &Arc<CcContext>, t: &Tm) -> Result<Derivation> {
        let node = |rule, subject: Tm, ty: Tm, children| Derivation {
            rule,
            ctx: ctx.clone(),
            subject,
            ty,
            children,
        };
        match &**t {
            Term::Var(x) => match ctx.lookup(x) {
                Some(ty) => Ok(node(Rule::Var, t.clone(), ty.clone(), vec![])),
                None => Err(TypeError::UnboundVariable(x.clone())),
            },
            Term::Universe(i) => Ok(node(Rule::Universe, t.clone(), cc::universe(i + 1), vec![])),
            Term::NatType => Ok(node(Rule::Nat, t.clone(), cc::universe(0), vec![])),
            Term::NatLit(_) => Ok(node(Rule::NatLit, t.clone(), cc::nat(), vec![])),
            Term::Add(a, b) => {
                let da = self.check_in(ctx, a, &cc::nat())?;
                let db = self.check_in(ctx, b, &cc::nat())?;
                Ok(node(Rule::Add, t.clone(), cc::nat(), vec![da, db]))
            }
            Term::Pi(x, a, b) => {
                let (i, da) = self.universe_of(ctx, a)?;
                let (x2, b2) = bind(ctx, x, b);
                let inner = Arc::new(ctx.extended(x2.clone(), a.clone()));
                let (j, db) = self.universe_of(&inner, &b2)?;
                let subject = Arc::new(Term::Pi(x2, a.clone(), b2));
                Ok(node(Rule::Pi, subject, cc::universe(i.max(j)), vec![da, db]))
            }
            Term::Lam {
                tag,
                binder,
                domain,
                body,
            } => {
                let (_, da) = self.universe_of(ctx, domain)?;
                let (x2, body2) = bind(ctx, binder, body);
                let inner = Arc::new(ctx.extended(x2.clone(), domain.clone()));
                let dm = self.infer_in(&inner, &body2)?;
                let ty = cc::pi(x2.clone(), domain.clone(), dm.ty.clone());
                let subject = Arc::new(Term::Lam {
                    tag: *tag,
                    binder: x2,
                    domain: domain.clone(),
                    body: body2,
                });
                Ok(node(Rule::Lambda, subject, ty, vec![da, dm]))
            }
            Term::App(f, a) => {
                let df = self.infer_in(ctx, f)?;
                let fty = self.whnf_in(ctx, &df.ty, |t| matches!(t, Term::Pi(..)))?;
                let Term::Pi(x, dom, cod) = &*fty else {
                    return Err(TypeError::NotAFunction {
                        term: show(f),
                        ty: show(&df.ty),
                    });
                };
                let df = convert(df, &fty);
                let da = self.check_in(ctx, a, dom)?;
                let ty = match self.mode {
                    Mode::Cc => cc::subst(cod, x, a),
                    Mode::Ccs => cc::esubst(cod.clone(), x.clone(), dom.clone(), a.clone()),
                };
                Ok(node(Rule::Apply, t.clone(), ty, vec![df, da]))
            }
            Term::ESubst {
                subject,
                binder,
                binder_ty,
                replacement,
            } => {
                if self.mode != Mode::Ccs {
                    return Err(TypeError::UnexpectedSubstitution(show(t)));
                }
                let dn = self.check_in(ctx, replacement, binder_ty)?;
                let (x2, subject2, inner) =
                    substitution_context(ctx, binder, binder_ty, replacement, subject);
                let dm = self.infer_in(&Arc::new(inner), &subject2)?;
                let ty = cc::esubst(dm.ty.clone(), x2.clone(), binder_ty.clone(), replacement.clone());
                let subj = cc::esubst(subject2, x2, binder_ty.clone(), replacement.clone());
                Ok(node(Rule::Subst, subj, ty, vec![dn, dm]))
            }
        }
    }

    pub fn check_in(&self, ctx: &Arc<CcContext>, t: &Tm, expected: &Tm) -> Result<Derivation> {
        let d = self.infer_in(ctx, t)?;
        if cc::alpha_eq(&d.ty, expected) {
            return Ok(d);
        }
        if self.equiv_in(ctx, &d.ty, expected)? {
            return Ok(convert(d, expected));
        }
        let nf = |x: &Tm| self.normalize(x).map(|n| show(&n)).unwrap_or_else(|_| show(x));
        Err(TypeError::TypeMismatch {
            term: show(t),
            expected: nf(expected),
            actual: nf(&d.ty),
        })
    }

    /// The level `i` with `Γ ⊢ t : U_i`, and a derivation ending in that
    /// judgement.
    pub fn universe_of(&self, ctx: &Arc<CcContext>, t: &Tm) -> Result<(u32, Derivation)> {
        let d = self.infer_in(ctx, t)?;
        if let Term::Universe(i) = &*d.ty {
            return Ok((*i, d));
        }
        let w = self.whnf_in(ctx, &d.ty, |t| matches!(t, Term::Universe(_)))?;
        match &*w {
            Term::Universe(i) => Ok((*i, convert(d, &w))),
            _ => Err(TypeError::NotAType {
                term: show(t),
                ty: show(&d.ty),
            }),
        }
    }
}

/// Wraps `d` in a conversion node unless its type already is `target`.
fn convert(d: Derivation, target: &Tm) -> Derivation {
    if cc::alpha_eq(&d.ty, target) {
        return d;
    }
    Derivation {
        rule: Rule::Equiv,
        ctx: d.ctx.clone(),
        subject: d.subject.clone(),
        ty: target.clone(),
        children: vec![d],
    }
}

/// Renames a binder that would shadow a context entry.
fn bind(ctx: &CcContext, x: &Name, body: &Tm) -> (Name, Tm) {
    if x.is_anon() || !ctx.contains(x) {
        return (x.clone(), body.clone());
    }
    let mut avoid = ctx.names();
    cc::all_names(body, &mut avoid);
    let x2 = x.freshen(&avoid);
    let body2 = cc::rename(body, x, &x2);
    (x2, body2)
}

/// The context in which the subject of `M{x : T ↦ N}` is typed.
///
/// Pushing a substitution under a Π leaves binders typed `C{x : T ↦ N}` in
/// the context. Those entries are moved after `x : T` with their original
/// type `C`, recovering the context the subject was written in. If that
/// reordering would leave a kept entry depending on a moved one, the plain
/// extension `Γ, x : T` is used.
fn substitution_context(
    ctx: &CcContext,
    x: &Name,
    x_ty: &Tm,
    n: &Tm,
    subject: &Tm,
) -> (Name, Tm, CcContext) {
    let mut kept = Vec::new();
    let mut moved = Vec::new();
    for (y, ty) in ctx.entries() {
        match &**ty {
            Term::ESubst {
                subject: c,
                binder,
                binder_ty,
                replacement,
            } if binder == x
                && cc::alpha_eq(binder_ty, x_ty)
                && cc::alpha_eq(replacement, n) =>
            {
                moved.push((y.clone(), c.clone()));
            }
            _ => kept.push((y.clone(), ty.clone())),
        }
    }
    let moved_names: BTreeSet<Name> = moved.iter().map(|(y, _)| y.clone()).collect();
    let reorder_ok = !moved.is_empty()
        && kept.iter().all(|(_, ty)| {
            cc::free_var_set(ty).is_disjoint(&moved_names)
        })
        && cc::free_var_set(x_ty).is_disjoint(&moved_names);
    if !reorder_ok {
        let (x2, s2) = bind(ctx, x, subject);
        let mut inner = ctx.clone();
        inner.define(x2.clone(), x_ty.clone(), n.clone());
        return (x2, s2, inner);
    }
    let kept_ctx = ctx.without(&moved_names);
    let mut avoid = ctx.names();
    cc::all_names(subject, &mut avoid);
    for (_, c) in &moved {
        cc::all_names(c, &mut avoid);
    }
    let (x2, subject2, moved) = if kept_ctx.contains(x) || moved_names.contains(x) {
        let x2 = x.freshen(&avoid);
        let moved = moved
            .into_iter()
            .map(|(y, c)| (y, cc::rename(&c, x, &x2)))
            .collect();
        (x2.clone(), cc::rename(subject, x, &x2), moved)
    } else {
        (x.clone(), subject.clone(), moved)
    };
    let mut inner = kept_ctx;
    inner.define(x2.clone(), x_ty.clone(), n.clone());
    for (y, c) in moved {
        inner.push(y, c);
    }
    (x2, subject2, inner)
}
