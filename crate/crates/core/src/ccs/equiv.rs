//! Equivalence for CC^σ. Normal forms may contain closures, which are
//! compared by applying both sides to a fresh variable.

use std::collections::BTreeSet;

use super::reduce::{is_function_value, normalize_with, reduce_step};
use crate::error::Result;
use crate::kernel::reduce::Budget;
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::Name;

pub fn equiv(a: &Tm, b: &Tm) -> Result<bool> {
    equiv_with(a, b, &mut Budget::default())
}

pub fn equiv_with(a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if cc::alpha_eq(a, b) {
        return Ok(true);
    }
    let na = normalize_with(a, budget)?;
    let nb = normalize_with(b, budget)?;
    eq_nf(&na, &nb, budget)
}

fn fresh(a: &Tm, b: &Tm) -> Name {
    let mut avoid = BTreeSet::new();
    cc::all_names(a, &mut avoid);
    cc::all_names(b, &mut avoid);
    Name::new("z").freshen(&avoid)
}

fn eq_nf(a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if cc::alpha_eq(a, b) {
        return Ok(true);
    }
    if is_function_value(a) || is_function_value(b) {
        // s-eq-Closure and η: compare the results of applying both sides.
        let z = cc::var_n(fresh(a, b));
        let la = normalize_with(&cc::app(a.clone(), z.clone()), budget)?;
        let lb = normalize_with(&cc::app(b.clone(), z), budget)?;
        return eq_nf(&la, &lb, budget);
    }
    match (&**a, &**b) {
        (Term::Pi(x, a1, b1), Term::Pi(y, a2, b2)) => {
            if !eq_nf(a1, a2, budget)? {
                return Ok(false);
            }
            let z = cc::var_n(fresh(a, b));
            let l = normalize_with(&cc::subst(b1, x, &z), budget)?;
            let r = normalize_with(&cc::subst(b2, y, &z), budget)?;
            eq_nf(&l, &r, budget)
        }
        (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Add(f1, a1), Term::Add(f2, a2)) => {
            Ok(eq_nf(f1, f2, budget)? && eq_nf(a1, a2, budget)?)
        }
        _ => Ok(false),
    }
}

/// Bounded joinability: do the reduction sequences of `a` and `b` meet
/// within `max_steps` steps each, up to α after flattening substitutions?
/// A cross-check for `equiv` on small terms, not a decision procedure.
pub fn joinable(a: &Tm, b: &Tm, max_steps: usize) -> bool {
    let reducts = |t: &Tm| {
        let mut out = vec![cc::flatten(t)];
        let mut cur = t.clone();
        for _ in 0..max_steps {
            match reduce_step(&cur) {
                Some(n) => {
                    out.push(cc::flatten(&n));
                    cur = n;
                }
                None => break,
            }
        }
        out
    };
    let ra = reducts(a);
    let rb = reducts(b);
    ra.iter().any(|x| rb.iter().any(|y| cc::alpha_eq(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;

    #[test]
    fn closure_equals_its_flattening() {
        let c = esubst(
            lam("z", var("A"), app(var("y"), var("z"))),
            Name::new("y"),
            var("B"),
            var("N"),
        );
        let l = lam("z", var("A"), app(var("N"), var("z")));
        assert!(equiv(&c, &l).unwrap());
        assert!(equiv(&c, &var("N")).unwrap());
    }

    #[test]
    fn distinct_closures_differ() {
        let c1 = esubst(lam("z", var("A"), var("y")), Name::new("y"), var("B"), var("N"));
        let c2 = esubst(lam("z", var("A"), var("y")), Name::new("y"), var("B"), var("M"));
        assert!(!equiv(&c1, &c2).unwrap());
    }

    #[test]
    fn joinability_agrees_on_beta() {
        let t = app(lam("x", var("A"), var("x")), var("y"));
        assert!(joinable(&t, &var("y"), 5));
        assert!(!joinable(&t, &var("w"), 5));
    }
}
