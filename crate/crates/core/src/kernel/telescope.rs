use std::collections::BTreeSet;

use super::derivation::Derivation;
use crate::syntax::cc::{self, Tm};
use crate::syntax::{CcContext, Name};

/// `FV(M)` for a judgement `Γ ⊢ M : A`: the free variables of `M` and `A`,
/// closed under the types of those variables, in context order.
pub fn fv_telescope(d: &Derivation) -> CcContext {
    fv_telescope_of(&d.ctx, &[&d.subject, &d.ty])
}

pub fn fv_telescope_of(ctx: &CcContext, terms: &[&Tm]) -> CcContext {
    let mut needed: BTreeSet<Name> = BTreeSet::new();
    let mut work: Vec<Name> = Vec::new();
    for t in terms {
        work.extend(cc::free_vars(t).into_vec());
    }
    while let Some(x) = work.pop() {
        if !needed.insert(x.clone()) {
            continue;
        }
        // Only the innermost binding of a name is visible.
        if let Some(i) = ctx.position(&x) {
            let ty = &ctx.entries()[i].1;
            for y in cc::free_vars(ty).into_vec() {
                if !needed.contains(&y) {
                    work.push(y);
                }
            }
        }
    }
    let entries = ctx
        .entries()
        .iter()
        .enumerate()
        .filter(|(i, (x, _))| needed.contains(x) && ctx.position(x) == Some(*i))
        .map(|(_, e)| e.clone())
        .collect();
    CcContext::from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;

    fn ctx(entries: &[(&str, Tm)]) -> CcContext {
        CcContext::from_entries(
            entries
                .iter()
                .map(|(x, t)| (Name::new(x), t.clone()))
                .collect(),
        )
    }

    #[test]
    fn closed_term_has_empty_telescope() {
        let g = ctx(&[("A", universe(0))]);
        let t = lam("x", universe(0), var("x"));
        let ty = pi("x", universe(0), universe(0));
        assert!(fv_telescope_of(&g, &[&t, &ty]).is_empty());
    }

    #[test]
    fn types_pull_in_dependencies() {
        let g = ctx(&[
            ("A", universe(0)),
            ("B", universe(0)),
            ("f", arrow(var("A"), var("A"))),
            ("x", var("A")),
        ]);
        let t = app(var("f"), var("x"));
        let tel = fv_telescope_of(&g, &[&t, &var("A")]);
        let names: Vec<_> = tel.iter().map(|(x, _)| x.as_str().to_string()).collect();
        assert_eq!(names, ["A", "f", "x"]);
    }
}
