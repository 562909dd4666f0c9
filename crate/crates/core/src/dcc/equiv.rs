//! Equivalence for DCC: normalize, compare structurally, and bridge labels
//! with η by comparing the label body against the other side applied to a
//! fresh variable.

use std::collections::BTreeSet;

use super::reduce::{instantiate, normalize_with};
use crate::error::Result;
use crate::kernel::reduce::Budget;
use crate::syntax::dcc::{self, Term, Tm};
use crate::syntax::{LabelContext, Name};

pub fn equiv(defs: &LabelContext, a: &Tm, b: &Tm) -> Result<bool> {
    equiv_with(defs, a, b, &mut Budget::default())
}

pub fn equiv_with(defs: &LabelContext, a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if dcc::alpha_eq(a, b) {
        return Ok(true);
    }
    let na = normalize_with(defs, a, budget)?;
    let nb = normalize_with(defs, b, budget)?;
    eq_nf(defs, &na, &nb, budget)
}

fn fresh(a: &Tm, b: &Tm) -> Name {
    let mut avoid = BTreeSet::new();
    dcc::all_names(a, &mut avoid);
    dcc::all_names(b, &mut avoid);
    Name::new("z").freshen(&avoid)
}

fn eq_nf(defs: &LabelContext, a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if dcc::alpha_eq(a, b) {
        return Ok(true);
    }
    match (&**a, &**b) {
        (Term::Label(l1, c1), Term::Label(l2, c2)) if l1 == l2 && c1.len() == c2.len() => {
            let mut pointwise = true;
            for (m, n) in c1.iter().zip(c2) {
                if !eq_nf(defs, m, n, budget)? {
                    pointwise = false;
                    break;
                }
            }
            if pointwise {
                return Ok(true);
            }
            eta(defs, a, b, budget)
        }
        (Term::Label(..), _) | (_, Term::Label(..)) => eta(defs, a, b, budget),
        (Term::Pi(x, a1, b1), Term::Pi(y, a2, b2)) => {
            if !eq_nf(defs, a1, a2, budget)? {
                return Ok(false);
            }
            let z = dcc::var_n(fresh(a, b));
            let l = normalize_with(defs, &dcc::subst(b1, x, &z), budget)?;
            let r = normalize_with(defs, &dcc::subst(b2, y, &z), budget)?;
            eq_nf(defs, &l, &r, budget)
        }
        (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Add(f1, a1), Term::Add(f2, a2)) => {
            Ok(eq_nf(defs, f1, f2, budget)? && eq_nf(defs, a1, a2, budget)?)
        }
        _ => Ok(false),
    }
}

/// Applies both sides to a fresh variable and compares the results. A side
/// that is a label is unfolded directly, so unknown labels just compare
/// unequal.
fn eta(defs: &LabelContext, a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    let z = dcc::var_n(fresh(a, b));
    let apply = |t: &Tm, budget: &mut Budget| -> Result<Option<Tm>> {
        match &**t {
            Term::Label(l, c) => match instantiate(defs, *l, c, &z) {
                Ok(r) => normalize_with(defs, &r, budget).map(Some),
                Err(_) => Ok(None),
            },
            _ => normalize_with(defs, &dcc::app(t.clone(), z.clone()), budget).map(Some),
        }
    };
    let (Some(la), Some(lb)) = (apply(a, budget)?, apply(b, budget)?) else {
        return Ok(false);
    };
    eq_nf(defs, &la, &lb, budget)
}
