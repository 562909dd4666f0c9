//! Evaluation in DCC: applying a label runs its body with the closure
//! substituted for the telescope.

use std::sync::Arc;

use crate::error::{Result, TypeError};
use crate::kernel::reduce::Budget;
use crate::syntax::dcc::{self, Term, Tm};
use crate::syntax::{LabelContext, LabelEntry, LabelId, Name};

fn entry<'a>(defs: &'a LabelContext, l: LabelId) -> Result<&'a LabelEntry> {
    defs.get(l).ok_or(TypeError::UnknownLabel(l))
}

/// `body[M̄/x̄, N/x]` for the entry of `ℓ`, or an arity error.
pub fn instantiate(defs: &LabelContext, l: LabelId, closure: &[Tm], arg: &Tm) -> Result<Tm> {
    let e = entry(defs, l)?;
    if e.fvs.len() != closure.len() {
        return Err(TypeError::ClosureArity {
            label: l,
            expected: e.fvs.len(),
            actual: closure.len(),
        });
    }
    let mut pairs: Vec<(Name, Tm)> = e
        .fvs
        .iter()
        .zip(closure)
        .map(|((x, _), m)| (x.clone(), m.clone()))
        .collect();
    pairs.push((e.arg.clone(), arg.clone()));
    Ok(dcc::subst_many(&e.body, &pairs))
}

/// One leftmost-outermost step.
pub fn reduce_step(defs: &LabelContext, t: &Tm) -> Result<Option<Tm>> {
    Ok(match &**t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => None,
        Term::App(f, a) => {
            if let Term::Label(l, closure) = &**f {
                return instantiate(defs, *l, closure, a).map(Some);
            }
            if let Some(f2) = reduce_step(defs, f)? {
                Some(dcc::app(f2, a.clone()))
            } else {
                reduce_step(defs, a)?.map(|a2| dcc::app(f.clone(), a2))
            }
        }
        Term::Add(a, b) => {
            if let (Term::NatLit(m), Term::NatLit(n)) = (&**a, &**b) {
                return Ok(Some(dcc::lit(m + n)));
            }
            if let Some(a2) = reduce_step(defs, a)? {
                Some(dcc::add(a2, b.clone()))
            } else {
                reduce_step(defs, b)?.map(|b2| dcc::add(a.clone(), b2))
            }
        }
        Term::Pi(x, a, b) => {
            if let Some(a2) = reduce_step(defs, a)? {
                Some(dcc::pi(x.clone(), a2, b.clone()))
            } else {
                reduce_step(defs, b)?.map(|b2| dcc::pi(x.clone(), a.clone(), b2))
            }
        }
        Term::Label(l, closure) => {
            for (i, m) in closure.iter().enumerate() {
                if let Some(m2) = reduce_step(defs, m)? {
                    let mut c = closure.clone();
                    c[i] = m2;
                    return Ok(Some(Arc::new(Term::Label(*l, c))));
                }
            }
            None
        }
    })
}

pub fn whnf(defs: &LabelContext, t: &Tm, budget: &mut Budget) -> Result<Tm> {
    match &**t {
        Term::App(f, a) => {
            let f2 = whnf(defs, f, budget)?;
            if let Term::Label(l, closure) = &*f2 {
                budget.tick()?;
                let r = instantiate(defs, *l, closure, a)?;
                whnf(defs, &r, budget)
            } else if Arc::ptr_eq(f, &f2) {
                Ok(t.clone())
            } else {
                Ok(dcc::app(f2, a.clone()))
            }
        }
        Term::Add(a, b) => {
            let a2 = whnf(defs, a, budget)?;
            let b2 = whnf(defs, b, budget)?;
            if let (Term::NatLit(m), Term::NatLit(n)) = (&*a2, &*b2) {
                budget.tick()?;
                Ok(dcc::lit(m + n))
            } else {
                Ok(dcc::add(a2, b2))
            }
        }
        _ => Ok(t.clone()),
    }
}

pub fn normalize_with(defs: &LabelContext, t: &Tm, budget: &mut Budget) -> Result<Tm> {
    let w = whnf(defs, t, budget)?;
    Ok(match &*w {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => w,
        Term::App(f, a) => dcc::app(
            normalize_with(defs, f, budget)?,
            normalize_with(defs, a, budget)?,
        ),
        Term::Add(a, b) => dcc::add(
            normalize_with(defs, a, budget)?,
            normalize_with(defs, b, budget)?,
        ),
        Term::Pi(x, a, b) => dcc::pi(
            x.clone(),
            normalize_with(defs, a, budget)?,
            normalize_with(defs, b, budget)?,
        ),
        Term::Label(l, closure) => Arc::new(Term::Label(
            *l,
            closure
                .iter()
                .map(|m| normalize_with(defs, m, budget))
                .collect::<Result<_>>()?,
        )),
    })
}

pub fn normalize(defs: &LabelContext, t: &Tm) -> Result<Tm> {
    normalize_with(defs, t, &mut Budget::default())
}

pub fn trace(defs: &LabelContext, t: &Tm, max_steps: usize) -> Result<Vec<Tm>> {
    let mut out = vec![t.clone()];
    let mut cur = t.clone();
    while let Some(next) = reduce_step(defs, &cur)? {
        if out.len() > max_steps {
            return Err(TypeError::StepBudgetExceeded(max_steps));
        }
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}
