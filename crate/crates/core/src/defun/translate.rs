//! The defunctionalization translation over typing derivations: each node
//! yields its DCC term `⟦M⟧` together with the label definitions `⟦M⟧_d`
//! it needs.

use std::sync::Arc;

use super::minter::{lambda_key, LabelMinter, Reservation};
use crate::error::Result;
use crate::kernel::{fv_telescope, Checker, Derivation, Rule};
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::{dcc, CcContext, DccContext, LabelContext, LabelEntry};

#[derive(Clone, Debug)]
pub struct Translated {
    pub term: dcc::Tm,
    pub defs: LabelContext,
}

/// One translation run. The minter is borrowed so several related
/// translations can share label ids.
pub struct Translator<'m> {
    checker: Checker,
    minter: &'m mut LabelMinter,
}

impl<'m> Translator<'m> {
    pub fn new(checker: Checker, minter: &'m mut LabelMinter) -> Self {
        Translator { checker, minter }
    }

    pub fn checker(&self) -> &Checker {
        &self.checker
    }

    pub fn translate(&mut self, d: &Derivation) -> Result<Translated> {
        match d.rule {
            Rule::Var => {
                let Term::Var(x) = &*d.subject else {
                    unreachable!("ty-Var on a non-variable")
                };
                let pos = d.ctx.position(x).expect("variable in context");
                let prefix = Arc::new(d.ctx.prefix(pos));
                let ty = self.translate_type_in(&prefix, &d.ctx.entries()[pos].1)?;
                Ok(Translated {
                    term: dcc::var_n(x.clone()),
                    defs: ty.defs,
                })
            }
            Rule::Universe => {
                let Term::Universe(i) = &*d.subject else {
                    unreachable!()
                };
                Ok(leaf(dcc::universe(*i)))
            }
            Rule::Nat => Ok(leaf(dcc::nat())),
            Rule::NatLit => {
                let Term::NatLit(n) = &*d.subject else {
                    unreachable!()
                };
                Ok(leaf(dcc::lit(*n)))
            }
            Rule::Add => {
                let a = self.translate(&d.children[0])?;
                let b = self.translate(&d.children[1])?;
                Ok(Translated {
                    term: dcc::add(a.term, b.term),
                    defs: a.defs.union(&b.defs)?,
                })
            }
            Rule::Pi => {
                let Term::Pi(x, _, _) = &*d.subject else {
                    unreachable!()
                };
                let a = self.translate(&d.children[0])?;
                let b = self.translate(&d.children[1])?;
                Ok(Translated {
                    term: dcc::pi(x.clone(), a.term, b.term),
                    defs: a.defs.union(&b.defs)?,
                })
            }
            Rule::Apply => {
                let f = self.translate(&d.children[0])?;
                let a = self.translate(&d.children[1])?;
                let ty = self.translate_type_in(&d.ctx, &d.ty)?;
                let mut defs = f.defs;
                defs.union_in_place(&a.defs)?;
                defs.union_in_place(&ty.defs)?;
                Ok(Translated {
                    term: dcc::app(f.term, a.term),
                    defs,
                })
            }
            Rule::Equiv => {
                let inner = self.translate(&d.children[0])?;
                let ty = self.translate_type_in(&d.ctx, &d.ty)?;
                Ok(Translated {
                    term: inner.term,
                    defs: inner.defs.union(&ty.defs)?,
                })
            }
            Rule::Lambda => self.lambda(d),
            Rule::Subst => {
                let Term::ESubst { binder, .. } = &*d.subject else {
                    unreachable!()
                };
                let n = self.translate(&d.children[0])?;
                let m = self.translate(&d.children[1])?;
                Ok(Translated {
                    term: dcc::subst(&m.term, binder, &n.term),
                    defs: m.defs.union(&n.defs)?,
                })
            }
        }
    }

    fn lambda(&mut self, d: &Derivation) -> Result<Translated> {
        let Term::Lam {
            binder: x,
            domain: a,
            ..
        } = &*d.subject
        else {
            unreachable!()
        };
        let Term::Pi(_, _, ret) = &*d.ty else {
            unreachable!("lambda typed by a non-Π")
        };
        let tele = fv_telescope(d);
        let closure: Vec<dcc::Tm> = tele
            .entries()
            .iter()
            .map(|(y, _)| dcc::var_n(y.clone()))
            .collect();
        let id = match self.minter.reserve(lambda_key(&tele, &d.subject))? {
            Reservation::Known { entry, deps } => {
                return Ok(Translated {
                    term: Arc::new(dcc::Term::Label(entry.id, closure)),
                    defs: deps,
                })
            }
            Reservation::Fresh(id) => id,
        };
        let mut defs = LabelContext::new();
        let mut fvs = Vec::new();
        for (i, (y, c)) in tele.entries().iter().enumerate() {
            let t = self.translate_type_in(&Arc::new(tele.prefix(i)), c)?;
            defs.union_in_place(&t.defs)?;
            fvs.push((y.clone(), t.term));
        }
        let tele = Arc::new(tele);
        let arg_ty = self.translate_type_in(&tele, a)?;
        defs.union_in_place(&arg_ty.defs)?;
        let body = self.translate(&d.children[1])?;
        defs.union_in_place(&body.defs)?;
        let inner = Arc::new(tele.extended(x.clone(), a.clone()));
        let ret = self.translate_type_in(&inner, ret)?;
        defs.union_in_place(&ret.defs)?;
        let entry = LabelEntry {
            id,
            fvs,
            arg: x.clone(),
            arg_ty: arg_ty.term,
            body: body.term,
            ret: ret.term,
        };
        defs.push(entry.clone())?;
        self.minter.complete(entry, defs.clone());
        Ok(Translated {
            term: Arc::new(dcc::Term::Label(id, closure)),
            defs,
        })
    }

    /// Translates a term by re-inferring its derivation in `ctx`.
    pub fn translate_type_in(&mut self, ctx: &Arc<CcContext>, t: &Tm) -> Result<Translated> {
        if is_atomic(t) {
            return Ok(leaf(atomic(t)));
        }
        let d = self.checker.infer_in(ctx, t)?;
        self.translate(&d)
    }

    /// `⟦Γ⟧` pointwise together with `Δ_Γ`.
    pub fn translate_context(&mut self, ctx: &CcContext) -> Result<(DccContext, LabelContext)> {
        let mut out = DccContext::new();
        let mut defs = LabelContext::new();
        for (i, (x, ty)) in ctx.entries().iter().enumerate() {
            let t = self.translate_type_in(&Arc::new(ctx.prefix(i)), ty)?;
            defs.union_in_place(&t.defs)?;
            out.push(x.clone(), t.term);
        }
        Ok((out, defs))
    }
}

fn leaf(term: dcc::Tm) -> Translated {
    Translated {
        term,
        defs: LabelContext::new(),
    }
}

/// Universes and Nat translate to themselves with no definitions; skipping
/// the re-inference for them saves most of the work on types.
fn is_atomic(t: &Tm) -> bool {
    matches!(&**t, Term::Universe(_) | Term::NatType | Term::NatLit(_))
}

fn atomic(t: &Tm) -> dcc::Tm {
    match &**t {
        Term::Universe(i) => dcc::universe(*i),
        Term::NatType => dcc::nat(),
        Term::NatLit(n) => dcc::lit(*n),
        _ => unreachable!(),
    }
}

/// The translation of a closed-over-context term, for callers that only
/// need the output term and not the derivation.
pub fn translate_term(
    checker: &Checker,
    minter: &mut LabelMinter,
    ctx: &CcContext,
    t: &Tm,
) -> Result<Translated> {
    let d = checker.infer_in(&Arc::new(ctx.clone()), t)?;
    Translator::new(checker.clone(), minter).translate(&d)
}

/// Checks that a term is free of explicit substitutions, as required of
/// plain CC input.
pub fn is_plain(t: &Tm) -> bool {
    !cc::Term::contains_esubst(t)
}
