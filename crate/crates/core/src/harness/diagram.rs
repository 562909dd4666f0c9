//! The commuting diagram between CC reduction, its CC^σ image and DCC
//! reduction, checked edge by edge on one concrete trace.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{Failure, Outcome, MAX_TRACE};
use crate::ccs::{self, sigma_embed};
use crate::dcc;
use crate::defun::{defun_program_with, LabelMinter, TranslationResult, Translator};
use crate::kernel::{Checker, Derivation, Rule};
use crate::surface::print_cc;
use crate::syntax::cc::{self, Term, Tm};
use crate::syntax::{dcc as d, CcContext, LabelContext};

/// Steps a stuck-closure check may take on either side.
const JOIN_STEPS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramReport {
    /// CC steps in the trace.
    pub cc_steps: usize,
    /// CC^σ steps taken from `σ(M)`.
    pub ccs_steps: usize,
    /// Distinct substitution nodes whose translation was checked separately.
    pub substitutions: usize,
    /// Stuck closures compared through application to a fresh variable.
    pub closures: usize,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} CC steps, {} CC^σ steps, {} substitutions, {} closures",
            self.cc_steps, self.ccs_steps, self.substitutions, self.closures
        )
    }
}

fn edge(name: &str, i: usize, detail: impl fmt::Display) -> Failure {
    Failure::new("diagram", format!("edge {name} at step {i}: {detail}"))
}

/// Checks one CC trace `M ▷ … ▷ N` in `ctx`:
///
/// * `⟦σ(Mᵢ)⟧ = ⟦Mᵢ⟧` with `⟦σ(Mᵢ)⟧_d ⊆ ⟦Mᵢ⟧_d`;
/// * (i) `σ(Mᵢ) ≡σ σ(Mᵢ₊₁)`;
/// * (ii) `⟦Mᵢ⟧ ▷* ≡ ⟦Mᵢ₊₁⟧` in DCC, and along the CC^σ trace of `σ(M)`
///   each step shrinks the definitions, keeps the DCC image equivalent and
///   translates every substitution as a meta-substitution;
/// * (iii) `⟦M⟧ ▷* ≡ ⟦N⟧` in `Δ_Γ ∪ Δ_M ∪ Δ_N`.
pub fn check_diagram(ctx: &CcContext, trace: &[Tm]) -> Outcome<DiagramReport> {
    let cc_checker = Checker::cc();
    let ccs_checker = Checker::ccs();
    let mut minter = LabelMinter::new();
    let mut report = DiagramReport {
        cc_steps: trace.len().saturating_sub(1),
        ..Default::default()
    };

    let mut images: Vec<TranslationResult> = Vec::with_capacity(trace.len());
    for (i, m) in trace.iter().enumerate() {
        let r = defun_program_with(&cc_checker, &mut minter, ctx, m)
            .map_err(|e| edge("typing", i, e))?;
        let s = defun_program_with(&ccs_checker, &mut minter, ctx, &sigma_embed(m))
            .map_err(|e| edge("σ", i, e))?;
        if !d::alpha_eq(&r.term, &s.term) {
            return Err(edge("σ", i, format!("⟦σ(M)⟧ = `{}` but ⟦M⟧ = `{}`", s.term, r.term)));
        }
        if !s.defs.is_subset_of(&r.defs) {
            return Err(edge("σ", i, "⟦σ(M)⟧_d is not within ⟦M⟧_d"));
        }
        images.push(r);
    }

    for i in 0..trace.len().saturating_sub(1) {
        let (a, b) = (&trace[i], &trace[i + 1]);
        if !ccs::equiv::equiv(&sigma_embed(a), &sigma_embed(b)).map_err(|e| edge("(i)", i, e))? {
            return Err(edge(
                "(i)",
                i,
                format!("`{}` and `{}` are not CC^σ-equivalent", print_cc(a), print_cc(b)),
            ));
        }
        let defs = union(&[&images[i].ctx_defs, &images[i].defs, &images[i + 1].defs])
            .map_err(|e| edge("(ii)", i, e))?;
        if !dcc::equiv(&defs, &images[i].term, &images[i + 1].term).map_err(|e| edge("(ii)", i, e))? {
            return Err(edge(
                "(ii)",
                i,
                format!("`{}` does not reach `{}`", images[i].term, images[i + 1].term),
            ));
        }
    }

    sigma_trace(ctx, &trace[0], &trace[trace.len() - 1], &mut minter, &mut report)?;

    let (first, last) = (&images[0], &images[images.len() - 1]);
    let defs = union(&[&first.ctx_defs, &first.defs, &last.defs]).map_err(|e| edge("(iii)", 0, e))?;
    let nf = dcc::normalize(&defs, &first.term).map_err(|e| edge("(iii)", 0, e))?;
    if !dcc::equiv(&defs, &nf, &last.term).map_err(|e| edge("(iii)", 0, e))? {
        return Err(edge("(iii)", 0, format!("`{nf}` is not `{}`", last.term)));
    }
    Ok(report)
}

/// The CC^σ side: reduce `σ(M)` outside λs until stuck, checking
/// monotonicity, coherence and the substitution equation at each step, then
/// compare the result with `σ(N)`.
///
/// Labels are keyed by structure, so a step inside a λ body yields a new
/// λ and a new label; monotonicity is a property of the other steps.
fn sigma_trace(
    ctx: &CcContext,
    m: &Tm,
    n: &Tm,
    minter: &mut LabelMinter,
    report: &mut DiagramReport,
) -> Outcome {
    let checker = Checker::ccs();
    let steps = ccs::reduce::weak_trace(&sigma_embed(m), MAX_TRACE).map_err(|e| edge("σ-trace", 0, e))?;
    report.ccs_steps = steps.len() - 1;
    let mut prev: Option<TranslationResult> = None;
    let mut seen = HashSet::new();
    for (j, s) in steps.iter().enumerate() {
        let r = defun_program_with(&checker, minter, ctx, s)
            .map_err(|e| edge("σ-typing", j, format!("`{}`: {e}", print_cc(s))))?;
        report.substitutions += check_substitutions(&checker, minter, &r.derivation, j, &mut seen)?;
        report.closures += check_closures(s, j)?;
        if let Some(p) = &prev {
            if !r.defs.is_subset_of(&p.defs) {
                let extra: Vec<String> = r
                    .defs
                    .entries()
                    .iter()
                    .filter(|e| p.defs.get(e.id).is_none())
                    .map(|e| e.id.to_string())
                    .collect();
                return Err(edge(
                    "monotonicity",
                    j,
                    format!("`{}` needs new labels {}", print_cc(s), extra.join(", ")),
                ));
            }
            let defs = union(&[&p.ctx_defs, &p.defs]).map_err(|e| edge("coherence", j, e))?;
            if !dcc::equiv(&defs, &p.term, &r.term).map_err(|e| edge("coherence", j, e))? {
                return Err(edge(
                    "coherence",
                    j,
                    format!("`{}` does not reach `{}`", p.term, r.term),
                ));
            }
        }
        prev = Some(r);
    }
    let last = steps.last().expect("trace is never empty");
    if !ccs::equiv::equiv(last, &sigma_embed(n)).map_err(|e| edge("(i)", steps.len(), e))? {
        return Err(edge(
            "(i)",
            steps.len(),
            format!("CC^σ normal form `{}` is not `{}`", print_cc(last), print_cc(n)),
        ));
    }
    Ok(())
}

/// `⟦M{x↦N}⟧ = ⟦M⟧[⟦N⟧/x]` for every substitution node, with `M` and `N`
/// re-checked and translated on their own.
fn check_substitutions(
    checker: &Checker,
    minter: &mut LabelMinter,
    root: &Derivation,
    j: usize,
    seen: &mut HashSet<String>,
) -> Outcome<usize> {
    // Most nodes survive unchanged from one step to the next.
    let mut nodes = Vec::new();
    root.walk(&mut |n| {
        if n.rule == Rule::Subst && seen.insert(format!("{:?}{:?}", n.ctx, n.subject)) {
            nodes.push(n);
        }
    });
    for node in &nodes {
        let Term::ESubst {
            subject,
            binder,
            replacement,
            ..
        } = &*node.subject
        else {
            unreachable!()
        };
        let mut tr = Translator::new(checker.clone(), minter);
        let whole = tr.translate(node).map_err(|e| edge("Eq. subst", j, e))?;
        let inner_ctx = Arc::clone(&node.children[1].ctx);
        let m = tr
            .translate_type_in(&inner_ctx, subject)
            .map_err(|e| edge("Eq. subst", j, e))?;
        let n = tr
            .translate_type_in(&node.ctx, replacement)
            .map_err(|e| edge("Eq. subst", j, e))?;
        let expected = d::subst(&m.term, binder, &n.term);
        if !d::alpha_eq(&whole.term, &expected) {
            return Err(edge(
                "Eq. subst",
                j,
                format!("⟦M{{x↦N}}⟧ = `{}` but ⟦M⟧[⟦N⟧/x] = `{expected}`", whole.term),
            ));
        }
    }
    Ok(nodes.len())
}

/// For each stuck closure `(λx:A.M){ȳ↦N̄}` inside `t`, applying it to a
/// fresh variable must agree with the equivalence check.
fn check_closures(t: &Tm, j: usize) -> Outcome<usize> {
    let mut closures = Vec::new();
    collect_closures(t, &mut closures);
    let mut avoid = Default::default();
    cc::all_names(t, &mut avoid);
    for c in &closures {
        let Some((lam, layers)) = ccs::reduce::as_closure(c) else {
            continue;
        };
        let Term::Lam { binder, domain, .. } = &*lam else {
            continue;
        };
        let z = binder.freshen(&avoid);
        let dom = ccs::reduce::wrap_layers(domain.clone(), &layers);
        let expanded = cc::lam(z.clone(), dom, cc::app(c.clone(), cc::var_n(z)));
        let eq = ccs::equiv::equiv(c, &expanded).map_err(|e| edge("closure", j, e))?;
        if !eq && !ccs::equiv::joinable(c, &expanded, JOIN_STEPS) {
            return Err(edge(
                "closure",
                j,
                format!("`{}` is not its own η-expansion", print_cc(c)),
            ));
        }
    }
    Ok(closures.len())
}

fn collect_closures(t: &Tm, out: &mut Vec<Tm>) {
    if matches!(&**t, Term::ESubst { .. }) && ccs::reduce::as_closure(t).is_some() {
        out.push(t.clone());
        return;
    }
    match &**t {
        Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => {
            collect_closures(a, out);
            collect_closures(b, out);
        }
        Term::Lam { domain, body, .. } => {
            collect_closures(domain, out);
            collect_closures(body, out);
        }
        Term::ESubst {
            subject,
            replacement,
            ..
        } => {
            collect_closures(subject, out);
            collect_closures(replacement, out);
        }
        _ => {}
    }
}

fn union(parts: &[&LabelContext]) -> crate::error::Result<LabelContext> {
    let mut out = LabelContext::new();
    for p in parts {
        out.union_in_place(p)?;
    }
    Ok(out)
}
