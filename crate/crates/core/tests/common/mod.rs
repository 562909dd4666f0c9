//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use depdefun::surface::{load_cc, CcProgram};
use depdefun::syntax::cc;
use depdefun::syntax::dcc::{self, Term, Tm};
use depdefun::syntax::{CcContext, LabelContext, LabelEntry, LabelId};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_depdefun")
}

/// Every `.cc` file of the corpus with its stem, sorted.
pub fn corpus() -> Vec<(String, CcProgram)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "cc"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let prog = load_cc(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (name, prog)
        })
        .collect()
}

/// Every judgement of the corpus: each definition body and each main.
pub fn corpus_judgements() -> Vec<(String, CcContext, cc::Tm)> {
    let mut out = Vec::new();
    for (name, prog) in corpus() {
        for (x, _, body) in &prog.defs {
            out.push((format!("{name}:{x}"), prog.ctx.clone(), body.clone()));
        }
        if let Some(m) = &prog.main {
            out.push((format!("{name}:main"), prog.ctx.clone(), m.clone()));
        }
    }
    out
}

fn walk(t: &Term, out: &mut Vec<LabelId>) {
    match t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => {}
        Term::Pi(_, a, b) | Term::App(a, b) | Term::Add(a, b) => {
            walk(a, out);
            walk(b, out);
        }
        Term::Label(l, args) => {
            out.push(*l);
            args.iter().for_each(|a| walk(a, out));
        }
    }
}

fn map_labels(t: &Tm, f: &dyn Fn(LabelId, &[Tm]) -> (LabelId, Vec<Tm>)) -> Tm {
    match &**t {
        Term::Var(_) | Term::Universe(_) | Term::NatType | Term::NatLit(_) => t.clone(),
        Term::Pi(x, a, b) => Tm::new(Term::Pi(x.clone(), map_labels(a, f), map_labels(b, f))),
        Term::App(a, b) => dcc::app(map_labels(a, f), map_labels(b, f)),
        Term::Add(a, b) => dcc::add(map_labels(a, f), map_labels(b, f)),
        Term::Label(l, args) => {
            let args: Vec<Tm> = args.iter().map(|a| map_labels(a, f)).collect();
            let (l, args) = f(*l, &args);
            Tm::new(Term::Label(l, args))
        }
    }
}

fn map_entry(e: &LabelEntry, f: &dyn Fn(LabelId, &[Tm]) -> (LabelId, Vec<Tm>)) -> LabelEntry {
    LabelEntry {
        id: e.id,
        fvs: e.fvs.iter().map(|(x, t)| (x.clone(), map_labels(t, f))).collect(),
        arg: e.arg.clone(),
        arg_ty: map_labels(&e.arg_ty, f),
        body: map_labels(&e.body, f),
        ret: map_labels(&e.ret, f),
    }
}

/// Renumbers labels in order of first occurrence from `main`, following
/// each definition's telescope, argument type, result type and body.
pub fn canonical(defs: &LabelContext, main: &Tm) -> (Vec<LabelEntry>, Tm) {
    let mut order = Vec::new();
    walk(main, &mut order);
    let mut seen: Vec<LabelId> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let l = order[i];
        i += 1;
        if seen.contains(&l) {
            continue;
        }
        seen.push(l);
        if let Some(e) = defs.get(l) {
            e.fvs.iter().for_each(|(_, t)| walk(t, &mut order));
            walk(&e.arg_ty, &mut order);
            walk(&e.ret, &mut order);
            walk(&e.body, &mut order);
        }
    }
    let index: HashMap<LabelId, usize> = seen.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let rename = |l: LabelId, args: &[Tm]| (LabelId(index[&l]), args.to_vec());
    let entries = seen
        .iter()
        .filter_map(|l| defs.get(*l))
        .map(|e| {
            let mut e = map_entry(e, &rename);
            e.id = LabelId(index[&e.id]);
            e
        })
        .collect();
    (entries, map_labels(main, &rename))
}

/// Whether two programs agree up to α-equivalence and label renumbering.
pub fn same_up_to_renumbering(a: (&LabelContext, &Tm), b: (&LabelContext, &Tm)) -> Result<(), String> {
    let (ea, ma) = canonical(a.0, a.1);
    let (eb, mb) = canonical(b.0, b.1);
    if !dcc::alpha_eq(&ma, &mb) {
        return Err(format!("terms differ: `{ma}` vs `{mb}`"));
    }
    if ea.len() != eb.len() {
        return Err(format!("{} labels vs {}", ea.len(), eb.len()));
    }
    for (x, y) in ea.iter().zip(&eb) {
        if !x.alpha_eq(y) {
            return Err(format!(
                "label {} differs:\n  {}\n  {}",
                x.id,
                depdefun::surface::emit::label_to_text(x),
                depdefun::surface::emit::label_to_text(y)
            ));
        }
    }
    Ok(())
}

/// Drops closure entries whose type is a universe, together with the
/// matching closure arguments.
pub fn erase_universe_closures(defs: &LabelContext, main: &Tm) -> (LabelContext, Tm) {
    let keep: HashMap<LabelId, Vec<bool>> = defs
        .entries()
        .iter()
        .map(|e| (e.id, e.fvs.iter().map(|(_, t)| !matches!(**t, Term::Universe(_))).collect()))
        .collect();
    let drop = |l: LabelId, args: &[Tm]| {
        let args = match keep.get(&l) {
            Some(k) => args.iter().zip(k).filter(|(_, k)| **k).map(|(a, _)| a.clone()).collect(),
            None => args.to_vec(),
        };
        (l, args)
    };
    let entries = defs
        .entries()
        .iter()
        .map(|e| {
            let mut e = map_entry(e, &drop);
            e.fvs.retain(|(_, t)| !matches!(**t, Term::Universe(_)));
            e
        })
        .collect();
    (LabelContext::from_entries(entries), map_labels(main, &drop))
}
