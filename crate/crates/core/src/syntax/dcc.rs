//! Target terms: the defunctionalized calculus, where lambdas are replaced by
//! label expressions `ℓ{M₁, …, Mₙ}` pointing into a label context.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::name::{LabelId, Name, OrderedNames};

pub type Tm = Arc<Term>;

#[derive(Clone, Debug)]
pub enum Term {
    Var(Name),
    Universe(u32),
    Pi(Name, Tm, Tm),
    App(Tm, Tm),
    Label(LabelId, Vec<Tm>),
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

pub fn app(f: Tm, a: Tm) -> Tm {
    Arc::new(Term::App(f, a))
}

pub fn label(id: usize, closure: Vec<Tm>) -> Tm {
    Arc::new(Term::Label(LabelId(id), closure))
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

impl Term {
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => 1,
            Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => 1 + a.size() + b.size(),
            Term::Label(_, c) => 1 + c.iter().map(|m| m.size()).sum::<usize>(),
        }
    }

    /// Label ids mentioned anywhere in the term.
    pub fn labels(&self, out: &mut BTreeSet<LabelId>) {
        match self {
            Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => {}
            Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => {
                a.labels(out);
                b.labels(out);
            }
            Term::Label(l, c) => {
                out.insert(*l);
                for m in c {
                    m.labels(out);
                }
            }
        }
    }
}

pub fn free_vars(t: &Term) -> OrderedNames {
    let mut out = OrderedNames::new();
    collect_fv(t, &mut Vec::new(), &mut out);
    out
}

pub fn free_var_set(t: &Term) -> BTreeSet<Name> {
    free_vars(t).as_set().clone()
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
        Term::Label(_, closure) => {
            for m in closure {
                collect_fv(m, bound, out);
            }
        }
    }
}

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
        Term::Label(_, c) => {
            for m in c {
                all_names(m, out);
            }
        }
    }
}

/// Capture-avoiding `t[replacement/name]`; label closures are substituted
/// pointwise.
pub fn subst(t: &Tm, name: &Name, replacement: &Tm) -> Tm {
    subst_many(t, &[(name.clone(), replacement.clone())])
}

/// Simultaneous substitution `t[N̄/x̄]`.
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
            Term::App(a, b) => Arc::new(Term::App(self.apply(a), self.apply(b))),
            Term::Add(a, b) => Arc::new(Term::Add(self.apply(a), self.apply(b))),
            Term::Label(l, closure) => {
                Arc::new(Term::Label(*l, closure.iter().map(|m| self.apply(m)).collect()))
            }
            Term::Pi(x, a, b) => {
                let a2 = self.apply(a);
                let body_fv = free_var_set(b);
                let relevant: BTreeMap<Name, Tm> = self
                    .map
                    .iter()
                    .filter(|(k, _)| *k != x && body_fv.contains(*k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                if relevant.is_empty() {
                    return Arc::new(Term::Pi(x.clone(), a2, b.clone()));
                }
                let inner = Substitution::new(relevant);
                if inner.range_fv.contains(x) {
                    let mut avoid = inner.range_fv.clone();
                    avoid.extend(body_fv);
                    avoid.extend(inner.map.keys().cloned());
                    let fresh = x.freshen(&avoid);
                    let mut map = inner.map;
                    map.insert(x.clone(), var_n(fresh.clone()));
                    Arc::new(Term::Pi(fresh, a2, Substitution::new(map).apply(b)))
                } else {
                    Arc::new(Term::Pi(x.clone(), a2, inner.apply(b)))
                }
            }
        }
    }
}

/// α-equivalence; label ids compare nominally.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha_eq_in(a, b, &mut Vec::new(), &mut Vec::new())
}

fn lookup(stack: &[Name], x: &Name) -> Option<usize> {
    stack.iter().rev().position(|y| y == x)
}

pub(crate) fn alpha_eq_in(a: &Term, b: &Term, la: &mut Vec<Name>, lb: &mut Vec<Name>) -> bool {
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
            if !alpha_eq_in(a1, a2, la, lb) {
                return false;
            }
            la.push(x.clone());
            lb.push(y.clone());
            let r = alpha_eq_in(b1, b2, la, lb);
            la.pop();
            lb.pop();
            r
        }
        (Term::Label(l1, c1), Term::Label(l2, c2)) => {
            l1 == l2
                && c1.len() == c2.len()
                && c1.iter().zip(c2).all(|(m, n)| alpha_eq_in(m, n, la, lb))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_substitution_is_pointwise() {
        let t = label(3, vec![var("f"), var("g")]);
        let r = subst(&t, &Name::new("g"), &var("h"));
        assert!(alpha_eq(&r, &label(3, vec![var("f"), var("h")])));
    }

    #[test]
    fn distinct_label_ids_differ() {
        assert!(!alpha_eq(&label(1, vec![]), &label(2, vec![])));
    }

    #[test]
    fn pi_substitution_avoids_capture() {
        let t = pi("y", var("A"), app(var("x"), var("y")));
        let r = subst(&t, &Name::new("x"), &var("y"));
        match &*r {
            Term::Pi(b, _, body) => {
                assert_ne!(b.as_str(), "y");
                assert!(alpha_eq(body, &app(var("y"), var_n(b.clone()))));
            }
            _ => panic!(),
        }
    }
}
