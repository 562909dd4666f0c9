//! Source terms: the Calculus of Constructions with built-in naturals, plus
//! the explicit-substitution node used only by the CC^σ machinery.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use super::name::{Name, OrderedNames};

pub type Tm = Arc<Term>;

#[derive(Clone, Debug)]
pub enum Term {
    Var(Name),
    Universe(u32),
    Pi(Name, Tm, Tm),
    /// `tag` is a parser-assigned identifier for the source lambda; it never
    /// takes part in typing or equality.
    Lam {
        tag: Option<u32>,
        binder: Name,
        domain: Tm,
        body: Tm,
    },
    App(Tm, Tm),
    /// `subject{binder : binder_ty ↦ replacement}`. `binder` is bound in
    /// `subject`; `binder_ty` records the type the binder had where the
    /// substitution was created.
    ESubst {
        subject: Tm,
        binder: Name,
        binder_ty: Tm,
        replacement: Tm,
    },
    NatType,
    NatLit(u64),
    Add(Tm, Tm),
}

pub fn var(name: &str) -> Tm {
    Arc::new(Term::Var(Name::new(name)))
}

pub fn var_n(name: Name) -> Tm {
    Arc::new(Term::Var(name))
}

pub fn universe(level: u32) -> Tm {
    Arc::new(Term::Universe(level))
}

pub fn pi(binder: impl Into<Name>, domain: Tm, codomain: Tm) -> Tm {
    Arc::new(Term::Pi(binder.into(), domain, codomain))
}

pub fn arrow(domain: Tm, codomain: Tm) -> Tm {
    Arc::new(Term::Pi(Name::anon(), domain, codomain))
}

pub fn lam(binder: impl Into<Name>, domain: Tm, body: Tm) -> Tm {
    Arc::new(Term::Lam {
        tag: None,
        binder: binder.into(),
        domain,
        body,
    })
}

pub fn app(f: Tm, a: Tm) -> Tm {
    Arc::new(Term::App(f, a))
}

pub fn apps(f: Tm, args: impl IntoIterator<Item = Tm>) -> Tm {
    args.into_iter().fold(f, app)
}

pub fn nat() -> Tm {
    Arc::new(Term::NatType)
}

pub fn lit(n: u64) -> Tm {
    Arc::new(Term::NatLit(n))
}

pub fn add(a: Tm, b: Tm) -> Tm {
    Arc::new(Term::Add(a, b))
}

pub fn esubst(subject: Tm, binder: Name, binder_ty: Tm, replacement: Tm) -> Tm {
    Arc::new(Term::ESubst {
        subject,
        binder,
        binder_ty,
        replacement,
    })
}

impl Term {
    pub fn is_lam(&self) -> bool {
        matches!(self, Term::Lam { .. })
    }

    pub fn contains_esubst(&self) -> bool {
        match self {
            Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => false,
            Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => {
                a.contains_esubst() || b.contains_esubst()
            }
            Term::Lam { domain, body, .. } => domain.contains_esubst() || body.contains_esubst(),
            Term::ESubst { .. } => true,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => 1,
            Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => 1 + a.size() + b.size(),
            Term::Lam { domain, body, .. } => 1 + domain.size() + body.size(),
            Term::ESubst {
                subject,
                binder_ty,
                replacement,
                ..
            } => 1 + subject.size() + binder_ty.size() + replacement.size(),
        }
    }
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

/// Unbound variables in left-to-right first-occurrence order.
///
/// For `M{x ↦ N}` the replacement contributes only when `x` actually occurs
/// in `M`, so the result is invariant under pushing the substitution.
pub fn free_vars(t: &Term) -> OrderedNames {
    let mut out = OrderedNames::new();
    collect_fv(t, &mut Vec::new(), &mut out);
    out
}

pub fn free_var_set(t: &Term) -> BTreeSet<Name> {
    free_vars(t).as_set().clone()
}

pub fn occurs_free(x: &Name, t: &Term) -> bool {
    match t {
        Term::Var(y) => x == y,
        Term::Universe(_) | Term::NatType | Term::NatLit(_) => false,
        Term::App(a, b) | Term::Add(a, b) => occurs_free(x, a) || occurs_free(x, b),
        Term::Pi(y, a, b) => occurs_free(x, a) || (y != x && occurs_free(x, b)),
        Term::Lam {
            binder,
            domain,
            body,
            ..
        } => occurs_free(x, domain) || (binder != x && occurs_free(x, body)),
        Term::ESubst {
            subject,
            binder,
            replacement,
            ..
        } => {
            (binder != x && occurs_free(x, subject))
                || (occurs_free(binder, subject) && occurs_free(x, replacement))
        }
    }
}

fn collect_fv(t: &Term, bound: &mut Vec<Name>, out: &mut OrderedNames) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Universe(_) | Term::NatType | Term::NatLit(_) => {}
        Term::App(a, b) | Term::Add(a, b) => {
            collect_fv(a, bound, out);
            collect_fv(b, bound, out);
        }
        Term::Pi(x, a, b) => {
            collect_fv(a, bound, out);
            bound.push(x.clone());
            collect_fv(b, bound, out);
            bound.pop();
        }
        Term::Lam {
            binder,
            domain,
            body,
            ..
        } => {
            collect_fv(domain, bound, out);
            bound.push(binder.clone());
            collect_fv(body, bound, out);
            bound.pop();
        }
        Term::ESubst {
            subject,
            binder,
            replacement,
            ..
        } => {
            bound.push(binder.clone());
            collect_fv(subject, bound, out);
            bound.pop();
            if occurs_free(binder, subject) {
                collect_fv(replacement, bound, out);
            }
        }
    }
}

/// Every name appearing anywhere in the term, bound or free.
pub fn all_names(t: &Term, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Universe(_) | Term::NatType | Term::NatLit(_) => {}
        Term::App(a, b) | Term::Add(a, b) => {
            all_names(a, out);
            all_names(b, out);
        }
        Term::Pi(x, a, b) => {
            out.insert(x.clone());
            all_names(a, out);
            all_names(b, out);
        }
        Term::Lam {
            binder,
            domain,
            body,
            ..
        } => {
            out.insert(binder.clone());
            all_names(domain, out);
            all_names(body, out);
        }
        Term::ESubst {
            subject,
            binder,
            binder_ty,
            replacement,
        } => {
            out.insert(binder.clone());
            all_names(subject, out);
            all_names(binder_ty, out);
            all_names(replacement, out);
        }
    }
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// Capture-avoiding `t[replacement/name]`.
pub fn subst(t: &Tm, name: &Name, replacement: &Tm) -> Tm {
    subst_many(t, &[(name.clone(), replacement.clone())])
}

/// Simultaneous capture-avoiding substitution `t[N₁/x₁, …, Nₙ/xₙ]`.
pub fn subst_many(t: &Tm, pairs: &[(Name, Tm)]) -> Tm {
    if pairs.is_empty() {
        return t.clone();
    }
    let map: BTreeMap<Name, Tm> = pairs.iter().cloned().collect();
    Substitution::new(map).apply(t)
}

struct Substitution {
    map: BTreeMap<Name, Tm>,
    range_fv: BTreeSet<Name>,
}

impl Substitution {
    fn new(map: BTreeMap<Name, Tm>) -> Self {
        let mut range_fv = BTreeSet::new();
        for v in map.values() {
            range_fv.extend(free_var_set(v));
        }
        Substitution { map, range_fv }
    }

    fn apply(&self, t: &Tm) -> Tm {
        match &**t {
            Term::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::Universe(_) | Term::NatType | Term::NatLit(_) => t.clone(),
            Term::App(a, b) => share2(t, a, b, self.apply(a), self.apply(b), |a, b| Term::App(a, b)),
            Term::Add(a, b) => share2(t, a, b, self.apply(a), self.apply(b), |a, b| Term::Add(a, b)),
            Term::Pi(x, a, b) => {
                let a2 = self.apply(a);
                let (x2, b2) = self.under_binder(x, b);
                Arc::new(Term::Pi(x2, a2, b2))
            }
            Term::Lam {
                tag,
                binder,
                domain,
                body,
            } => {
                let d2 = self.apply(domain);
                let (x2, b2) = self.under_binder(binder, body);
                Arc::new(Term::Lam {
                    tag: *tag,
                    binder: x2,
                    domain: d2,
                    body: b2,
                })
            }
            Term::ESubst {
                subject,
                binder,
                binder_ty,
                replacement,
            } => {
                let ty2 = self.apply(binder_ty);
                let r2 = self.apply(replacement);
                let (x2, s2) = self.under_binder(binder, subject);
                Arc::new(Term::ESubst {
                    subject: s2,
                    binder: x2,
                    binder_ty: ty2,
                    replacement: r2,
                })
            }
        }
    }

    fn under_binder(&self, x: &Name, body: &Tm) -> (Name, Tm) {
        let body_fv = free_var_set(body);
        let relevant: BTreeMap<Name, Tm> = self
            .map
            .iter()
            .filter(|(k, _)| *k != x && body_fv.contains(*k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        if relevant.is_empty() {
            return (x.clone(), body.clone());
        }
        let inner = Substitution::new(relevant);
        if inner.range_fv.contains(x) {
            let mut avoid = inner.range_fv.clone();
            avoid.extend(body_fv);
            avoid.extend(inner.map.keys().cloned());
            let fresh = x.freshen(&avoid);
            let mut map = inner.map;
            map.insert(x.clone(), var_n(fresh.clone()));
            (fresh, Substitution::new(map).apply(body))
        } else {
            (x.clone(), inner.apply(body))
        }
    }
}

fn share2(orig: &Tm, a: &Tm, b: &Tm, a2: Tm, b2: Tm, mk: impl FnOnce(Tm, Tm) -> Term) -> Tm {
    if Arc::ptr_eq(a, &a2) && Arc::ptr_eq(b, &b2) {
        orig.clone()
    } else {
        Arc::new(mk(a2, b2))
    }
}

/// Renames a bound variable's occurrences; `to` must be fresh for `t`.
pub fn rename(t: &Tm, from: &Name, to: &Name) -> Tm {
    subst(t, from, &var_n(to.clone()))
}

// ---------------------------------------------------------------------------
// α-equivalence
// ---------------------------------------------------------------------------

/// Equality up to consistent renaming of bound variables. Lambda tags are
/// ignored.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha_eq_in(a, b, &mut Vec::new(), &mut Vec::new())
}

fn lookup(stack: &[Name], x: &Name) -> Option<usize> {
    stack.iter().rev().position(|y| y == x)
}

fn alpha_eq_in(a: &Term, b: &Term, la: &mut Vec<Name>, lb: &mut Vec<Name>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (lookup(la, x), lookup(lb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Term::Universe(i), Term::Universe(j)) => i == j,
        (Term::NatType, Term::NatType) => true,
        (Term::NatLit(m), Term::NatLit(n)) => m == n,
        (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Add(f1, a1), Term::Add(f2, a2)) => {
            alpha_eq_in(f1, f2, la, lb) && alpha_eq_in(a1, a2, la, lb)
        }
        (Term::Pi(x, a1, b1), Term::Pi(y, a2, b2)) => {
            alpha_eq_in(a1, a2, la, lb) && binder_eq(x, b1, y, b2, la, lb)
        }
        (
            Term::Lam {
                binder: x,
                domain: a1,
                body: b1,
                ..
            },
            Term::Lam {
                binder: y,
                domain: a2,
                body: b2,
                ..
            },
        ) => alpha_eq_in(a1, a2, la, lb) && binder_eq(x, b1, y, b2, la, lb),
        (
            Term::ESubst {
                subject: s1,
                binder: x,
                binder_ty: t1,
                replacement: r1,
            },
            Term::ESubst {
                subject: s2,
                binder: y,
                binder_ty: t2,
                replacement: r2,
            },
        ) => {
            alpha_eq_in(t1, t2, la, lb)
                && alpha_eq_in(r1, r2, la, lb)
                && binder_eq(x, s1, y, s2, la, lb)
        }
        _ => false,
    }
}

fn binder_eq(x: &Name, b1: &Term, y: &Name, b2: &Term, la: &mut Vec<Name>, lb: &mut Vec<Name>) -> bool {
    la.push(x.clone());
    lb.push(y.clone());
    let r = alpha_eq_in(b1, b2, la, lb);
    la.pop();
    lb.pop();
    r
}

/// A string that is equal for two terms iff they are α-equivalent: bound
/// variables become de Bruijn indices, free variables keep their names.
pub fn canonical_key(t: &Term) -> String {
    let mut out = String::new();
    write_key(t, &mut Vec::new(), &mut out);
    out
}

fn write_key(t: &Term, bound: &mut Vec<Name>, out: &mut String) {
    match t {
        Term::Var(x) => match lookup(bound, x) {
            Some(i) => {
                let _ = write!(out, "#{i}");
            }
            None => {
                let _ = write!(out, "${x}");
            }
        },
        Term::Universe(i) => {
            let _ = write!(out, "U{i}");
        }
        Term::NatType => out.push('N'),
        Term::NatLit(n) => {
            let _ = write!(out, "n{n}");
        }
        Term::App(a, b) => {
            out.push_str("(@ ");
            write_key(a, bound, out);
            out.push(' ');
            write_key(b, bound, out);
            out.push(')');
        }
        Term::Add(a, b) => {
            out.push_str("(+ ");
            write_key(a, bound, out);
            out.push(' ');
            write_key(b, bound, out);
            out.push(')');
        }
        Term::Pi(x, a, b) => {
            out.push_str("(P ");
            write_key(a, bound, out);
            out.push(' ');
            bound.push(x.clone());
            write_key(b, bound, out);
            bound.pop();
            out.push(')');
        }
        Term::Lam {
            binder,
            domain,
            body,
            ..
        } => {
            out.push_str("(L ");
            write_key(domain, bound, out);
            out.push(' ');
            bound.push(binder.clone());
            write_key(body, bound, out);
            bound.pop();
            out.push(')');
        }
        Term::ESubst {
            subject,
            binder,
            binder_ty,
            replacement,
        } => {
            out.push_str("(S ");
            write_key(binder_ty, bound, out);
            out.push(' ');
            write_key(replacement, bound, out);
            out.push(' ');
            bound.push(binder.clone());
            write_key(subject, bound, out);
            bound.pop();
            out.push(')');
        }
    }
}

/// Replaces every explicit substitution by the corresponding
/// meta-level substitution, yielding a plain CC term.
pub fn flatten(t: &Tm) -> Tm {
    match &**t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => t.clone(),
        Term::App(a, b) => share2(t, a, b, flatten(a), flatten(b), |a, b| Term::App(a, b)),
        Term::Add(a, b) => share2(t, a, b, flatten(a), flatten(b), |a, b| Term::Add(a, b)),
        Term::Pi(x, a, b) => Arc::new(Term::Pi(x.clone(), flatten(a), flatten(b))),
        Term::Lam {
            tag,
            binder,
            domain,
            body,
        } => Arc::new(Term::Lam {
            tag: *tag,
            binder: binder.clone(),
            domain: flatten(domain),
            body: flatten(body),
        }),
        Term::ESubst {
            subject,
            binder,
            replacement,
            ..
        } => subst(&flatten(subject), binder, &flatten(replacement)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(t: &Term) -> Vec<String> {
        free_vars(t).iter().map(|n| n.to_string()).collect()
    }

    #[test]
    fn subst_variable_hit() {
        let r = subst(&var("x"), &Name::new("x"), &universe(0));
        assert!(alpha_eq(&r, &universe(0)));
    }

    #[test]
    fn subst_not_free_is_identity() {
        let t = lam("y", var("A"), var("y"));
        let r = subst(&t, &Name::new("x"), &var("N"));
        assert!(alpha_eq(&r, &t));
    }

    #[test]
    fn subst_avoids_capture() {
        // (λy:A. x)[y/x] must not capture y
        let t = lam("y", var("A"), var("x"));
        let r = subst(&t, &Name::new("x"), &var("y"));
        match &*r {
            Term::Lam { binder, body, .. } => {
                assert_ne!(binder.as_str(), "y");
                assert!(matches!(&**body, Term::Var(v) if v.as_str() == "y"));
            }
            _ => panic!("expected lambda"),
        }
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        // (x y)[y/x, z/y] = y z
        let t = app(var("x"), var("y"));
        let r = subst_many(
            &t,
            &[(Name::new("x"), var("y")), (Name::new("y"), var("z"))],
        );
        assert!(alpha_eq(&r, &app(var("y"), var("z"))));
    }

    #[test]
    fn alpha_eq_examples() {
        assert!(alpha_eq(
            &lam("x", universe(0), var("x")),
            &lam("y", universe(0), var("y"))
        ));
        assert!(!alpha_eq(
            &pi("x", var("A"), var("x")),
            &pi("x", var("A"), var("A"))
        ));
        assert!(!alpha_eq(&lam("x", universe(0), var("y")), &lam("y", universe(0), var("y"))));
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(names(&lam("x", var("A"), app(var("f"), var("x")))), ["A", "f"]);
        assert!(names(&universe(0)).is_empty());
        let t = app(app(var("f"), var("x")), app(var("g"), var("x")));
        assert_eq!(names(&t), ["f", "x", "g"]);
    }

    #[test]
    fn esubst_free_vars_are_semantic() {
        // (y){x ↦ z}: x does not occur, so z is not free
        let t = esubst(var("y"), Name::new("x"), var("T"), var("z"));
        assert_eq!(names(&t), ["y"]);
        let t = esubst(var("x"), Name::new("x"), var("T"), var("z"));
        assert_eq!(names(&t), ["z"]);
    }

    #[test]
    fn flatten_performs_substitution() {
        let t = esubst(app(var("f"), var("x")), Name::new("x"), nat(), lit(3));
        assert!(alpha_eq(&flatten(&t), &app(var("f"), lit(3))));
    }

    #[test]
    fn canonical_key_matches_alpha() {
        let a = lam("x", universe(0), lam("y", var("x"), var("y")));
        let b = lam("p", universe(0), lam("q", var("p"), var("q")));
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = lam("p", universe(0), lam("q", var("p"), var("p")));
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }
}
