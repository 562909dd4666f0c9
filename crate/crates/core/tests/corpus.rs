mod common;

use common::*;
use depdefun::defun::defun_program;
use depdefun::harness::verify_program;
use depdefun::surface::emit::to_text;
use depdefun::surface::load_dcc_str;

#[test]
fn every_program_verifies() {
    for (name, prog) in corpus() {
        let rep = verify_program(&name, &prog);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn translations_reload_and_check() {
    for (name, prog) in corpus() {
        let Some(m) = &prog.main else { continue };
        let r = defun_program(&prog.ctx, m).unwrap();
        let defs = r.all_defs().unwrap();
        let text = to_text(&defs, &r.dcc_ctx, &r.term, &r.ty);
        let back = load_dcc_str(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        depdefun::dcc::wf(&back.labels, &back.ctx).unwrap_or_else(|e| panic!("{name}: {e}"));
        let ty = depdefun::dcc::infer(&back.labels, &back.ctx, back.main.as_ref().unwrap()).unwrap();
        assert!(depdefun::dcc::equiv(&back.labels, &ty, &r.ty).unwrap(), "{name}");
    }
}

#[test]
fn corpus_is_large_enough() {
    assert!(corpus().len() >= 20);
}
