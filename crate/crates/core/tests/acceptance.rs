//! One PASS/FAIL line per acceptance criterion, each under its time limit.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use depdefun::dcc;
use depdefun::defun::{defun_program, defun_program_with, LabelMinter};
use depdefun::harness::{self, check_diagram, enumerate_small_terms, is_ground};
use depdefun::kernel::{reduce, Checker};
use depdefun::surface::{load_cc, load_dcc, parse_cc_term};
use depdefun::syntax::CcContext;

type Check = Result<String, String>;

fn load_main(file: &str) -> (CcContext, depdefun::syntax::cc::Tm) {
    let p = load_cc(&corpus_dir().join(file)).unwrap();
    (p.ctx, p.main.unwrap())
}

fn dependent_compose() -> Check {
    let (ctx, m) = load_main("compose_dep.cc");
    let r = defun_program(&ctx, &m).map_err(|e| e.to_string())?;
    let defs = r.all_defs().map_err(|e| e.to_string())?;
    if defs.len() != 6 {
        return Err(format!("{} labels", defs.len()));
    }
    let (entries, term) = canonical(&defs, &r.term);
    let want: [&[&str]; 6] = [&[], &["A"], &["A", "B"], &["A", "B", "C"], &["A", "B", "C", "f"], &["A", "B", "C", "f", "g"]];
    for (e, w) in entries.iter().zip(want) {
        let got: BTreeSet<String> = e.fvs.iter().map(|(x, _)| x.to_string()).collect();
        let w: BTreeSet<String> = w.iter().map(|s| s.to_string()).collect();
        if got != w {
            return Err(format!("closure {:?}, expected {:?}", got, w));
        }
    }
    if term.to_string() != "l0{}" {
        return Err(format!("term `{term}`"));
    }
    let g = load_dcc(&golden("compose_dep.dcc")).map_err(|e| e.to_string())?;
    same_up_to_renumbering((&defs, &r.term), (&g.labels, g.main.as_ref().unwrap()))?;
    Ok("6 labels match".into())
}

fn simple_compose() -> Check {
    let (ctx, m) = load_main("compose_simple.cc");
    let r = defun_program(&ctx, &m).map_err(|e| e.to_string())?;
    let defs = r.all_defs().map_err(|e| e.to_string())?;
    let (defs, term) = erase_universe_closures(&defs, &r.term);
    let g = load_dcc(&golden("compose_simple.dcc")).map_err(|e| e.to_string())?;
    same_up_to_renumbering((&defs, &term), (&g.labels, g.main.as_ref().unwrap()))?;
    let (entries, _) = canonical(&defs, &term);
    let body = entries.last().unwrap().body.to_string();
    if body != "f (g x)" {
        return Err(format!("innermost body `{body}`"));
    }
    Ok(format!("{} labels match", entries.len()))
}

fn type_preservation() -> Check {
    let mut files = BTreeSet::new();
    let mut failed = BTreeSet::new();
    for (inst, ctx, m) in corpus_judgements() {
        let file = inst.split(':').next().unwrap().to_string();
        if harness::check_type_preservation(&ctx, &m).is_err() {
            failed.insert(file.clone());
        }
        files.insert(file);
    }
    let passing = files.difference(&failed).count();
    if passing < 20 {
        return Err(format!("{passing} corpus files pass, failing: {failed:?}"));
    }
    let terms = enumerate_small_terms(6);
    if terms.len() < 200 {
        return Err(format!("only {} enumerated judgements", terms.len()));
    }
    for (ctx, m) in &terms {
        harness::check_type_preservation(ctx, m).map_err(|e| format!("{m}: {e}", m = depdefun::surface::print_cc(m)))?;
    }
    Ok(format!("{passing} files, {} enumerated judgements", terms.len()))
}

fn ground_agreement() -> Check {
    let mut ground = 0;
    for (inst, ctx, m) in corpus_judgements() {
        let ty = Checker::cc().infer(&ctx, &m).map_err(|e| format!("{inst}: {e}"))?.ty;
        if !is_ground(&ty) {
            continue;
        }
        ground += 1;
        harness::check_reduction_preservation(&ctx, &m).map_err(|e| format!("{inst}: {e}"))?;
    }
    if ground == 0 {
        return Err("no ground programs".into());
    }
    let (ctx, m) = load_main("nat_family.cc");
    let ty = Checker::cc().infer(&ctx, &m).map_err(|e| e.to_string())?.ty;
    let nf = Checker::cc().normalize(&ty).map_err(|e| e.to_string())?;
    let want = parse_cc_term("A (fun (n : Nat) => add 1 (add 1 n))").map_err(|e| e.to_string())?;
    if !depdefun::syntax::cc::alpha_eq(&nf, &want) {
        return Err(format!("nat_family type normalizes to `{}`", depdefun::surface::print_cc(&nf)));
    }
    harness::check_type_preservation(&ctx, &m).map_err(|e| e.to_string())?;
    let mut minter = LabelMinter::new();
    let checker = Checker::cc();
    let r = defun_program_with(&checker, &mut minter, &ctx, &m).map_err(|e| e.to_string())?;
    let defs = r.all_defs().map_err(|e| e.to_string())?;
    let expected = defun_program_with(&checker, &mut minter, &ctx, &want).map_err(|e| e.to_string())?;
    let defs = defs.union(&expected.defs).map_err(|e| e.to_string())?;
    if !dcc::equiv(&defs, &r.ty, &expected.term).map_err(|e| e.to_string())? {
        return Err(format!("translated type `{}` is not `{}`", r.ty, expected.term));
    }
    Ok(format!("{ground} ground programs agree, nat_family type checked"))
}

fn diagrams() -> Check {
    let mut steps = 0;
    for (inst, ctx, m) in corpus_judgements() {
        let ty = Checker::cc().infer(&ctx, &m).map_err(|e| format!("{inst}: {e}"))?.ty;
        for t in [m, ty] {
            let trace = reduce::trace(&t, harness::MAX_TRACE).map_err(|e| format!("{inst}: {e}"))?;
            let r = check_diagram(&ctx, &trace).map_err(|e| format!("{inst}: {e}"))?;
            steps += r.cc_steps + r.ccs_steps;
        }
    }
    Ok(format!("{steps} steps"))
}

fn round_trip() -> Check {
    let judgements = corpus_judgements();
    for (inst, ctx, m) in &judgements {
        harness::check_round_trip(ctx, m).map_err(|e| format!("{inst}: {e}"))?;
    }
    let terms = enumerate_small_terms(6);
    for (ctx, m) in &terms {
        harness::check_round_trip(ctx, m).map_err(|e| e.to_string())?;
    }
    Ok(format!("{} corpus and {} enumerated judgements", judgements.len(), terms.len()))
}

fn safety() -> Check {
    let mut closed = 0;
    let corpus = corpus_judgements();
    let terms = enumerate_small_terms(6);
    let all = corpus
        .into_iter()
        .map(|(_, c, m)| (c, m))
        .chain(terms);
    for (ctx, m) in all {
        if ctx.is_empty() {
            closed += 1;
            harness::check_type_safety(&ctx, &m).map_err(|e| e.to_string())?;
        }
    }
    let bad = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/bad");
    let mut rejected = 0;
    for f in std::fs::read_dir(&bad).map_err(|e| e.to_string())? {
        let p = f.map_err(|e| e.to_string())?.path();
        if p.extension().is_some_and(|e| e == "dcc") {
            let out = Command::new(bin()).arg("checkdcc").arg(&p).output().map_err(|e| e.to_string())?;
            if out.status.code() != Some(1) {
                return Err(format!("{}: exit {:?}", p.display(), out.status.code()));
            }
            rejected += 1;
        }
    }
    if rejected != 5 {
        return Err(format!("{rejected} bad .dcc files"));
    }
    Ok(format!("{closed} closed terms reach values, {rejected} bad files rejected"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 7] = [
        ("1 dependent-compose", 1, dependent_compose),
        ("2 simple-compose", 1, simple_compose),
        ("3 type-preservation", 60, type_preservation),
        ("4 ground-agreement", 30, ground_agreement),
        ("5 diagram", 60, diagrams),
        ("6 round-trip", 60, round_trip),
        ("7 safety", 60, safety),
    ];
    let mut ok = true;
    println!();
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let r = f();
        let took = start.elapsed();
        let r = match r {
            Ok(note) if took <= Duration::from_secs(limit) => Ok(note),
            Ok(note) => Err(format!("{note}, but took {took:.2?} (limit {limit} s)")),
            Err(e) => Err(e),
        };
        match r {
            Ok(note) => println!("PASS {name}: {note} [{took:.2?}]"),
            Err(e) => {
                ok = false;
                println!("FAIL {name}: {e} [{took:.2?}]");
            }
        }
    }
    if !ok {
        std::process::exit(1);
    }
}
