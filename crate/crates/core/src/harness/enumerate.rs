//! Bounded exhaustive enumeration of small well-typed terms.
//!
//! Terms are built from the leaves of a seed context (its variables, the
//! variables bound so far, `Type 0`, `Type 1`, `Nat`, `0`, `1`) and the four
//! binary forms Π, λ, application and `add`. A term's size is its node
//! count, so every term has odd size. Binders are named after their depth,
//! which makes the output α-distinct by construction.

use crate::kernel::Checker;
use crate::syntax::cc::{self, Tm};
use crate::syntax::{CcContext, Name};

/// Largest size budget the enumerator accepts.
pub const MAX_BUDGET: usize = 8;

/// Reduction budget for filtering candidates; small terms need very little.
const CHECK_STEPS: usize = 10_000;

/// The fixed contexts terms are enumerated in.
pub fn seed_contexts() -> Vec<CcContext> {
    let entry = |x: &str, t: Tm| (Name::new(x), t);
    vec![
        CcContext::new(),
        CcContext::from_entries(vec![entry("A", cc::universe(0)), entry("a", cc::var("A"))]),
        CcContext::from_entries(vec![entry("f", cc::arrow(cc::nat(), cc::nat()))]),
    ]
}

fn binder(depth: usize) -> Name {
    Name::new(&format!("x{depth}"))
}

/// All raw terms of exactly `size` nodes over `scope`.
fn raw(size: usize, scope: &[Name], depth: usize) -> Vec<Tm> {
    let mut out = Vec::new();
    if size == 1 {
        out.extend(scope.iter().cloned().map(cc::var_n));
        out.extend([
            cc::universe(0),
            cc::universe(1),
            cc::nat(),
            cc::lit(0),
            cc::lit(1),
        ]);
        return out;
    }
    if size < 3 || size % 2 == 0 {
        return out;
    }
    let x = binder(depth);
    let mut inner = scope.to_vec();
    inner.push(x.clone());
    for left in (1..size - 1).step_by(2) {
        let right = size - 1 - left;
        let ls = raw(left, scope, depth);
        let rs = raw(right, scope, depth);
        let bodies = raw(right, &inner, depth + 1);
        for a in &ls {
            for b in &bodies {
                out.push(cc::pi(x.clone(), a.clone(), b.clone()));
                out.push(cc::lam(x.clone(), a.clone(), b.clone()));
            }
            for b in &rs {
                out.push(cc::app(a.clone(), b.clone()));
                out.push(cc::add(a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Every well-typed `(Γ, M)` with `|M| ≤ budget` over the seed contexts,
/// in a fixed order: by context, then size, then construction order.
pub fn enumerate_small_terms(budget: usize) -> Vec<(CcContext, Tm)> {
    assert!(budget <= MAX_BUDGET, "size budget {budget} exceeds {MAX_BUDGET}");
    let checker = Checker::cc().with_budget(CHECK_STEPS);
    let mut out = Vec::new();
    for ctx in seed_contexts() {
        let scope: Vec<Name> = ctx.entries().iter().map(|(x, _)| x.clone()).collect();
        for size in 1..=budget {
            for t in raw(size, &scope, 0) {
                if checker.infer(&ctx, &t).is_ok() {
                    out.push((ctx.clone(), t));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_is_variables_and_constants() {
        let terms = enumerate_small_terms(1);
        assert!(terms
            .iter()
            .all(|(_, t)| !matches!(&**t, cc::Term::Lam { .. } | cc::Term::App(..))));
        // U1 has no type without a U2 in scope; it still checks as U1 : U2.
        assert!(terms.iter().any(|(_, t)| matches!(&**t, cc::Term::Universe(0))));
        assert!(terms.iter().any(|(_, t)| matches!(&**t, cc::Term::Var(_))));
    }

    #[test]
    fn size_three_has_polymorphic_identity_body() {
        let terms = enumerate_small_terms(3);
        let id = cc::lam("x0", cc::universe(0), cc::var("x0"));
        assert!(terms.iter().any(|(g, t)| g.is_empty() && cc::alpha_eq(t, &id)));
    }

    #[test]
    fn deterministic() {
        let a = enumerate_small_terms(3);
        let b = enumerate_small_terms(3);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| cc::alpha_eq(&x.1, &y.1)));
    }
}
