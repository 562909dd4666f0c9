//! β-reduction and Nat-δ for CC.

use std::sync::Arc;

use crate::error::{Result, TypeError};
use crate::syntax::cc::{self, Term, Tm};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// Counts contraction steps; running out signals a kernel bug or ill-typed
/// input, since well-typed terms are strongly normalizing.
#[derive(Debug)]
pub struct Budget {
    limit: usize,
    used: usize,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(TypeError::StepBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> usize {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_STEP_BUDGET)
    }
}

/// One leftmost-outermost step, or `None` for a normal form.
pub fn reduce_step(t: &Tm) -> Option<Tm> {
    match &**t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => None,
        Term::App(f, a) => {
            if let Term::Lam { binder, body, .. } = &**f {
                return Some(cc::subst(body, binder, a));
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
        // Explicit substitutions belong to the CC^σ reduction.
        Term::ESubst { .. } => None,
    }
}

/// Head reduction to weak-head normal form.
pub fn whnf(t: &Tm, budget: &mut Budget) -> Result<Tm> {
    match &**t {
        Term::App(f, a) => {
            let f2 = whnf(f, budget)?;
            if let Term::Lam { binder, body, .. } = &*f2 {
                budget.tick()?;
                whnf(&cc::subst(body, binder, a), budget)
            } else if Arc::ptr_eq(f, &f2) {
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
        Term::ESubst { .. } => w,
    })
}

/// β/δ-normal form under the default budget.
pub fn normalize(t: &Tm) -> Result<Tm> {
    normalize_with(t, &mut Budget::default())
}

/// The sequence `t ▷ t₁ ▷ … ▷ tₙ` of leftmost-outermost steps to normal form,
/// `t` included.
pub fn trace(t: &Tm, max_steps: usize) -> Result<Vec<Tm>> {
    let mut out = vec![t.clone()];
    let mut cur = t.clone();
    while let Some(next) = reduce_step(&cur) {
        if out.len() > max_steps {
            return Err(TypeError::StepBudgetExceeded(max_steps));
        }
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}
