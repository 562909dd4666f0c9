//! Definitional equivalence for CC: normalize, then compare up to α and η.

use std::collections::BTreeSet;

use super::reduce::{normalize_with, Budget};
use crate::error::Result;
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::Name;

pub fn equiv(a: &Tm, b: &Tm) -> Result<bool> {
    let mut budget = Budget::default();
    equiv_with(a, b, &mut budget)
}

pub fn equiv_with(a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if cc::alpha_eq(a, b) {
        return Ok(true);
    }
    let na = normalize_with(a, budget)?;
    let nb = normalize_with(b, budget)?;
    eq_nf(&na, &nb, budget)
}

fn fresh_for(hint: &Name, a: &Tm, b: &Tm) -> Name {
    let mut avoid = BTreeSet::new();
    cc::all_names(a, &mut avoid);
    cc::all_names(b, &mut avoid);
    let base = if hint.is_anon() { Name::new("z") } else { hint.clone() };
    base.freshen(&avoid)
}

/// Both arguments are normal forms.
fn eq_nf(a: &Tm, b: &Tm, budget: &mut Budget) -> Result<bool> {
    if cc::alpha_eq(a, b) {
        return Ok(true);
    }
    match (&**a, &**b) {
        (
            Term::Lam {
                binder: x, body: m, ..
            },
            Term::Lam {
                binder: y, body: n, ..
            },
        ) => {
            let z = fresh_for(x, a, b);
            let zv = cc::var_n(z);
            eq_nf(&cc::subst(m, x, &zv), &cc::subst(n, y, &zv), budget)
        }
        (Term::Lam { binder, body, .. }, _) => eta(binder, body, b, budget),
        (_, Term::Lam { binder, body, .. }) => eta(binder, body, a, budget),
        (Term::Pi(x, a1, b1), Term::Pi(y, a2, b2)) => {
            if !eq_nf(a1, a2, budget)? {
                return Ok(false);
            }
            let z = cc::var_n(fresh_for(x, a, b));
            eq_nf(&cc::subst(b1, x, &z), &cc::subst(b2, y, &z), budget)
        }
        (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Add(f1, a1), Term::Add(f2, a2)) => {
            Ok(eq_nf(f1, f2, budget)? && eq_nf(a1, a2, budget)?)
        }
        _ => Ok(false),
    }
}

/// `λx.M ≡ N` iff `M[z/x] ≡ N z` for a fresh `z`.
fn eta(x: &Name, body: &Tm, other: &Tm, budget: &mut Budget) -> Result<bool> {
    let z = fresh_for(x, body, other);
    let zv = cc::var_n(z);
    let lhs = cc::subst(body, x, &zv);
    let rhs = normalize_with(&cc::app(other.clone(), zv), budget)?;
    eq_nf(&lhs, &rhs, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;

    #[test]
    fn eta_expansion_is_equivalent() {
        let l = lam("x", var("A"), app(var("f"), var("x")));
        assert!(equiv(&l, &var("f")).unwrap());
        assert!(equiv(&var("f"), &l).unwrap());
    }

    #[test]
    fn beta_is_equivalent() {
        let t = app(lam("x", var("A"), var("x")), var("y"));
        assert!(equiv(&t, &var("y")).unwrap());
    }

    #[test]
    fn distinct_universes() {
        assert!(!equiv(&universe(0), &universe(1)).unwrap());
    }

    #[test]
    fn pi_compares_under_binder() {
        let a = pi("x", var("A"), app(var("B"), var("x")));
        let b = pi("y", var("A"), app(var("B"), var("y")));
        assert!(equiv(&a, &b).unwrap());
        let c = pi("y", var("A"), app(var("B"), var("A")));
        assert!(!equiv(&a, &c).unwrap());
    }

    #[test]
    fn open_add_is_stuck() {
        assert!(!equiv(&add(lit(2), var("n")), &add(lit(1), add(lit(1), var("n")))).unwrap());
        assert!(equiv(&add(lit(1), lit(1)), &lit(2)).unwrap());
    }
}
