//! Reduction for CC^σ. β creates an explicit substitution instead of
//! substituting; substitutions are pushed through everything except
//! lambdas, where they wait until the resulting closure is applied.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::kernel::reduce::Budget;
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::Name;

/// One explicit-substitution layer `{x : T ↦ N}`.
#[derive(Clone, Debug)]
pub struct Layer {
    pub binder: Name,
    pub binder_ty: Tm,
    pub replacement: Tm,
}

/// Splits `(λz:C.P){y₁↦R₁}⋯{yₙ↦Rₙ}` into the lambda and its layers,
/// innermost first. Returns `None` unless the term is such a closure with
/// at least one layer.
pub fn as_closure(t: &Tm) -> Option<(Tm, Vec<Layer>)> {
    let mut layers = Vec::new();
    let mut cur = t.clone();
    loop {
        let next = match &*cur {
            Term::ESubst {
                subject,
                binder,
                binder_ty,
                replacement,
            } => {
                layers.push(Layer {
                    binder: binder.clone(),
                    binder_ty: binder_ty.clone(),
                    replacement: replacement.clone(),
                });
                subject.clone()
            }
            Term::Lam { .. } if !layers.is_empty() => {
                layers.reverse();
                return Some((cur, layers));
            }
            _ => return None,
        };
        cur = next;
    }
}

/// A lambda or a closure: the values of function type.
pub fn is_function_value(t: &Tm) -> bool {
    t.is_lam() || as_closure(t).is_some()
}

pub fn wrap_layers(t: Tm, layers: &[Layer]) -> Tm {
    layers.iter().fold(t, |acc, l| {
        cc::esubst(acc, l.binder.clone(), l.binder_ty.clone(), l.replacement.clone())
    })
}

/// s-red-Closure: `((λz:C.P){ȳ↦R̄}) L ▷ (P{ȳ↦R̄}){z : C{ȳ↦R̄} ↦ L}`.
fn apply_closure(lam: &Tm, layers: &[Layer], arg: &Tm) -> Tm {
    let Term::Lam {
        binder, domain, body, ..
    } = &**lam
    else {
        unreachable!("closure without a lambda");
    };
    let mut clash: BTreeSet<Name> = BTreeSet::new();
    for l in layers {
        clash.insert(l.binder.clone());
        clash.extend(cc::free_var_set(&l.replacement));
    }
    let (z, body) = if clash.contains(binder) {
        let mut avoid = clash;
        cc::all_names(body, &mut avoid);
        cc::all_names(domain, &mut avoid);
        let z = binder.freshen(&avoid);
        let b = cc::rename(body, binder, &z);
        (z, b)
    } else {
        (binder.clone(), body.clone())
    };
    cc::esubst(
        wrap_layers(body, layers),
        z,
        wrap_layers(domain.clone(), layers),
        arg.clone(),
    )
}

/// The s-red rules that fire at the root of `subject{x : ty ↦ n}`.
/// `None` when the substitution is stuck on a lambda or waits on an inner
/// substitution.
fn push(subject: &Tm, x: &Name, ty: &Tm, n: &Tm) -> Option<Tm> {
    let es = |t: &Tm| cc::esubst(t.clone(), x.clone(), ty.clone(), n.clone());
    match &**subject {
        Term::Var(y) if y == x => Some(n.clone()),
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => {
            Some(subject.clone())
        }
        Term::App(a, b) => Some(cc::app(es(a), es(b))),
        Term::Add(a, b) => Some(cc::add(es(a), es(b))),
        Term::Pi(y, c, d) => {
            let n_fv = cc::free_var_set(n);
            let (y2, d2) = if y == x || n_fv.contains(y) {
                let mut avoid = n_fv;
                avoid.insert(x.clone());
                cc::all_names(d, &mut avoid);
                let y2 = y.freshen(&avoid);
                let d2 = cc::rename(d, y, &y2);
                (y2, d2)
            } else {
                (y.clone(), d.clone())
            };
            Some(Arc::new(Term::Pi(y2, es(c), es(&d2))))
        }
        Term::Lam { .. } | Term::ESubst { .. } => None,
    }
}

/// One leftmost-outermost CC^σ step, or `None` for a normal form.
pub fn reduce_step(t: &Tm) -> Option<Tm> {
    step(t, true)
}

/// As [`reduce_step`] but never inside a λ, so every λ of the result is a λ
/// of `t` or of a substitution in it.
pub fn weak_step(t: &Tm) -> Option<Tm> {
    step(t, false)
}

fn step(t: &Tm, under_lam: bool) -> Option<Tm> {
    let reduce_step = |t: &Tm| step(t, under_lam);
    match &**t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => None,
        Term::App(f, a) => {
            if let Term::Lam {
                binder,
                domain,
                body,
                ..
            } = &**f
            {
                return Some(cc::esubst(body.clone(), binder.clone(), domain.clone(), a.clone()));
            }
            if let Some((lam, layers)) = as_closure(f) {
                return Some(apply_closure(&lam, &layers, a));
            }
            if let Some(f2) = reduce_step(f) {
                return Some(cc::app(f2, a.clone()));
            }
            reduce_step(a).map(|a2| cc::app(f.clone(), a2))
        }
        Term::Add(a, b) => {
            if let (Term::NatLit(m), Term::NatLit(n)) = (&**a, &**b) {
                return Some(cc::lit(m + n));
            }
            if let Some(a2) = reduce_step(a) {
                return Some(cc::add(a2, b.clone()));
            }
            reduce_step(b).map(|b2| cc::add(a.clone(), b2))
        }
        Term::Pi(x, a, b) => {
            if let Some(a2) = reduce_step(a) {
                return Some(Arc::new(Term::Pi(x.clone(), a2, b.clone())));
            }
            reduce_step(b).map(|b2| Arc::new(Term::Pi(x.clone(), a.clone(), b2)))
        }
        Term::Lam { .. } if !under_lam => None,
        Term::Lam {
            tag,
            binder,
            domain,
            body,
        } => {
            if let Some(d2) = reduce_step(domain) {
                return Some(Arc::new(Term::Lam {
                    tag: *tag,
                    binder: binder.clone(),
                    domain: d2,
                    body: body.clone(),
                }));
            }
            reduce_step(body).map(|b2| {
                Arc::new(Term::Lam {
                    tag: *tag,
                    binder: binder.clone(),
                    domain: domain.clone(),
                    body: b2,
                })
            })
        }
        Term::ESubst {
            subject,
            binder,
            binder_ty,
            replacement,
        } => {
            if let Some(r) = push(subject, binder, binder_ty, replacement) {
                return Some(r);
            }
            if let Some(s2) = reduce_step(subject) {
                return Some(cc::esubst(s2, binder.clone(), binder_ty.clone(), replacement.clone()));
            }
            reduce_step(replacement)
                .map(|r2| cc::esubst(subject.clone(), binder.clone(), binder_ty.clone(), r2))
        }
    }
}

pub fn whnf(t: &Tm, budget: &mut Budget) -> Result<Tm> {
    match &**t {
        Term::App(f, a) => {
            let f2 = whnf(f, budget)?;
            if let Term::Lam {
                binder,
                domain,
                body,
                ..
            } = &*f2
            {
                budget.tick()?;
                return whnf(
                    &cc::esubst(body.clone(), binder.clone(), domain.clone(), a.clone()),
                    budget,
                );
            }
            if let Some((lam, layers)) = as_closure(&f2) {
                budget.tick()?;
                return whnf(&apply_closure(&lam, &layers, a), budget);
            }
            if Arc::ptr_eq(f, &f2) {
                Ok(t.clone())
            } else {
                Ok(cc::app(f2, a.clone()))
            }
        }
        Term::Add(a, b) => {
            let a2 = whnf(a, budget)?;
            let b2 = whnf(b, budget)?;
            if let (Term::NatLit(m), Term::NatLit(n)) = (&*a2, &*b2) {
                budget.tick()?;
                Ok(cc::lit(m + n))
            } else {
                Ok(cc::add(a2, b2))
            }
        }
        Term::ESubst {
            subject,
            binder,
            binder_ty,
            replacement,
        } => {
            let s2 = whnf(subject, budget)?;
            match push(&s2, binder, binder_ty, replacement) {
                Some(r) => {
                    budget.tick()?;
                    whnf(&r, budget)
                }
                None => Ok(cc::esubst(s2, binder.clone(), binder_ty.clone(), replacement.clone())),
            }
        }
        _ => Ok(t.clone()),
    }
}

pub fn normalize_with(t: &Tm, budget: &mut Budget) -> Result<Tm> {
    let w = whnf(t, budget)?;
    Ok(match &*w {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => w,
        Term::App(f, a) => cc::app(normalize_with(f, budget)?, normalize_with(a, budget)?),
        Term::Add(a, b) => cc::add(normalize_with(a, budget)?, normalize_with(b, budget)?),
        Term::Pi(x, a, b) => Arc::new(Term::Pi(
            x.clone(),
            normalize_with(a, budget)?,
            normalize_with(b, budget)?,
        )),
        Term::Lam {
            tag,
            binder,
            domain,
            body,
        } => Arc::new(Term::Lam {
            tag: *tag,
            binder: binder.clone(),
            domain: normalize_with(domain, budget)?,
            body: normalize_with(body, budget)?,
        }),
        // A closure; annotations are left alone.
        Term::ESubst {
            subject,
            binder,
            binder_ty,
            replacement,
        } => cc::esubst(
            normalize_with(subject, budget)?,
            binder.clone(),
            binder_ty.clone(),
            normalize_with(replacement, budget)?,
        ),
    })
}

pub fn normalize(t: &Tm) -> Result<Tm> {
    normalize_with(t, &mut Budget::default())
}

/// Leftmost-outermost CC^σ steps to normal form, `t` included.
pub fn trace(t: &Tm, max_steps: usize) -> Result<Vec<Tm>> {
    trace_by(t, max_steps, reduce_step)
}

/// [`weak_step`]s until none applies, `t` included.
pub fn weak_trace(t: &Tm, max_steps: usize) -> Result<Vec<Tm>> {
    trace_by(t, max_steps, weak_step)
}

fn trace_by(t: &Tm, max_steps: usize, next_of: fn(&Tm) -> Option<Tm>) -> Result<Vec<Tm>> {
    let mut out = vec![t.clone()];
    let mut cur = t.clone();
    while let Some(next) = next_of(&cur) {
        if out.len() > max_steps {
            return Err(crate::error::TypeError::StepBudgetExceeded(max_steps));
        }
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}
