use std::fmt;
use std::sync::Arc;

use crate::syntax::cc::Tm;
use crate::syntax::CcContext;

/// The typing rule concluding a derivation node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Var,
    Universe,
    Pi,
    Apply,
    Lambda,
    Equiv,
    Nat,
    NatLit,
    Add,
    /// The explicit-substitution rule of CC^σ.
    Subst,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Var => "ty-Var",
            Rule::Universe => "ty-Universe",
            Rule::Pi => "ty-Pi",
            Rule::Apply => "ty-Apply",
            Rule::Lambda => "ty-Lambda",
            Rule::Equiv => "ty-Equiv",
            Rule::Nat => "ty-Nat",
            Rule::NatLit => "ty-NatLit",
            Rule::Add => "ty-Add",
            Rule::Subst => "s-ty-Subst",
        };
        f.write_str(s)
    }
}

/// A node `Γ ⊢ subject : ty` with the sub-derivations of its premises.
///
/// Children by rule:
/// - `Pi`: domain, codomain (under the binder)
/// - `Lambda`: domain, body (under the binder)
/// - `Apply`: function, argument
/// - `Add`: both operands
/// - `Equiv`: the derivation whose type was converted to `ty`
/// - `Subst`: replacement, subject (in the rearranged context)
/// - `Var`, `Universe`, `Nat`, `NatLit`: none
///
/// When a binder had to be renamed to keep the context free of duplicates,
/// `subject` holds the renamed (α-equivalent) term.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub rule: Rule,
    pub ctx: Arc<CcContext>,
    pub subject: Tm,
    pub ty: Tm,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }

    /// Pre-order walk over all nodes.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Derivation)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    pub fn count_rule(&self, rule: Rule) -> usize {
        let mut n = 0;
        self.walk(&mut |d| {
            if d.rule == rule {
                n += 1;
            }
        });
        n
    }
}
