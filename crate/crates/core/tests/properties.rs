//! Invariants checked over the enumerated terms.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use depdefun::defun::defun_program;
use depdefun::harness::enumerate_small_terms;
use depdefun::kernel::Checker;
use depdefun::surface::{parse_cc_term, parse_dcc_term, print_cc, print_dcc};
use depdefun::syntax::{cc, dcc, CcContext, Name};

fn terms() -> &'static [(CcContext, cc::Tm)] {
    static T: OnceLock<Vec<(CcContext, cc::Tm)>> = OnceLock::new();
    T.get_or_init(|| enumerate_small_terms(5))
}

fn judgement() -> impl Strategy<Value = (CcContext, cc::Tm)> {
    (0..terms().len()).prop_map(|i| terms()[i].clone())
}

fn names(ctx: &CcContext) -> BTreeSet<Name> {
    ctx.names()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_round_trips((_, m) in judgement()) {
        let back = parse_cc_term(&print_cc(&m)).unwrap();
        prop_assert!(cc::alpha_eq(&back, &m));
    }

    #[test]
    fn free_variables_are_bound_by_context((g, m) in judgement()) {
        prop_assert!(cc::free_var_set(&m).is_subset(&names(&g)));
        let r = defun_program(&g, &m).unwrap();
        let dom: BTreeSet<Name> = r.dcc_ctx.names();
        prop_assert!(dcc::free_var_set(&r.term).is_subset(&dom));
        prop_assert!(dcc::free_var_set(&r.ty).is_subset(&dom));
        for e in r.all_defs().unwrap().entries() {
            let mut scope: BTreeSet<Name> = e.fvs.iter().map(|(x, _)| x.clone()).collect();
            prop_assert!(dcc::free_var_set(&e.arg_ty).is_subset(&scope));
            scope.insert(e.arg.clone());
            prop_assert!(dcc::free_var_set(&e.body).is_subset(&scope));
            prop_assert!(dcc::free_var_set(&e.ret).is_subset(&scope));
        }
    }

    #[test]
    fn translation_prints_and_parses((g, m) in judgement()) {
        let r = defun_program(&g, &m).unwrap();
        let back = parse_dcc_term(&print_dcc(&r.term)).unwrap();
        prop_assert!(dcc::alpha_eq(&back, &r.term));
    }

    #[test]
    fn renaming_binders_is_invisible((g, m) in judgement()) {
        // Binders are x0, x1, ...; context names never start with x.
        let renamed = parse_cc_term(&print_cc(&m).replace('x', "v")).unwrap();
        prop_assert!(cc::alpha_eq(&renamed, &m));
        let a = defun_program(&g, &m).unwrap();
        let b = defun_program(&g, &renamed).unwrap();
        prop_assert!(dcc::alpha_eq(&a.term, &b.term));
        prop_assert_eq!(a.all_defs().unwrap().len(), b.all_defs().unwrap().len());
    }

    #[test]
    fn substitution_preserves_typing((g, m) in judgement(), k in 0u64..3) {
        // Γ, f : Nat → Nat ⊢ M : B  and  ⊢ N : Nat → Nat  give  M[N/f] : B[N/f].
        let f = Name::new("f");
        prop_assume!(g.contains(&f));
        let n = cc::lam("n", cc::nat(), cc::add(cc::var("n"), cc::lit(k)));
        let checker = Checker::cc();
        let ty = checker.infer(&g, &m).unwrap().ty;
        let empty = CcContext::new();
        let d = checker.infer(&empty, &cc::subst(&m, &f, &n)).unwrap();
        prop_assert!(checker.equiv(&d.ty, &cc::subst(&ty, &f, &n)).unwrap());
    }

    #[test]
    fn translation_is_deterministic((g, m) in judgement()) {
        let a = defun_program(&g, &m).unwrap();
        let b = defun_program(&g, &m).unwrap();
        prop_assert!(dcc::alpha_eq(&a.term, &b.term));
        let (da, db) = (a.all_defs().unwrap(), b.all_defs().unwrap());
        prop_assert!(da.is_subset_of(&db) && db.is_subset_of(&da));
    }
}
