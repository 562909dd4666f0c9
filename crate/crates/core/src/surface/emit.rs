//! Output formats for translated programs: `.dcc` text and JSON.

use serde::{Deserialize, Serialize};

use super::lexer::ParseError;
use super::parser::parse_dcc_term;
use super::print_dcc;
use crate::syntax::{dcc, DccContext, LabelContext, LabelEntry, LabelId, Name};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub x: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLabel {
    pub name: String,
    pub fvs: Vec<Binding>,
    pub arg: Binding,
    pub body: String,
    pub ret: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonProgram {
    pub labels: Vec<JsonLabel>,
    pub context: Vec<Binding>,
    pub term: String,
    #[serde(rename = "type")]
    pub ty: String,
}

fn binding(x: &Name, t: &dcc::Tm) -> Binding {
    Binding {
        x: x.to_string(),
        ty: print_dcc(t),
    }
}

pub fn label_to_json(e: &LabelEntry) -> JsonLabel {
    JsonLabel {
        name: e.id.to_string(),
        fvs: e.fvs.iter().map(|(x, t)| binding(x, t)).collect(),
        arg: binding(&e.arg, &e.arg_ty),
        body: print_dcc(&e.body),
        ret: print_dcc(&e.ret),
    }
}

pub fn to_json(labels: &LabelContext, ctx: &DccContext, term: &dcc::Tm, ty: &dcc::Tm) -> JsonProgram {
    JsonProgram {
        labels: labels.entries().iter().map(label_to_json).collect(),
        context: ctx.entries().iter().map(|(x, t)| binding(x, t)).collect(),
        term: print_dcc(term),
        ty: print_dcc(ty),
    }
}

pub fn to_json_string(labels: &LabelContext, ctx: &DccContext, term: &dcc::Tm, ty: &dcc::Tm) -> String {
    serde_json::to_string_pretty(&to_json(labels, ctx, term, ty)).expect("plain data serializes")
}

/// Reads the label context back out of the JSON form.
pub fn labels_from_json(p: &JsonProgram) -> Result<LabelContext, ParseError> {
    let mut out = LabelContext::new();
    for l in &p.labels {
        let id = l
            .name
            .strip_prefix('l')
            .and_then(|d| d.parse().ok())
            .map(LabelId)
            .ok_or_else(|| ParseError {
                line: 0,
                col: 0,
                msg: format!("`{}` is not a label name", l.name),
            })?;
        let mut fvs = Vec::new();
        for b in &l.fvs {
            fvs.push((Name::new(&b.x), parse_dcc_term(&b.ty)?));
        }
        out.push(LabelEntry {
            id,
            fvs,
            arg: Name::new(&l.arg.x),
            arg_ty: parse_dcc_term(&l.arg.ty)?,
            body: parse_dcc_term(&l.body)?,
            ret: parse_dcc_term(&l.ret)?,
        })
        .map_err(|e| ParseError {
            line: 0,
            col: 0,
            msg: e.to_string(),
        })?;
    }
    Ok(out)
}

pub fn label_to_text(e: &LabelEntry) -> String {
    let fvs: Vec<String> = e
        .fvs
        .iter()
        .map(|(x, t)| format!("{x} : {}", print_dcc(t)))
        .collect();
    format!(
        "label {} {{{}}} ({} : {}) -> {} := {};",
        e.id,
        fvs.join(", "),
        e.arg,
        print_dcc(&e.arg_ty),
        print_dcc(&e.ret),
        print_dcc(&e.body)
    )
}

/// The `.dcc` text form; `checkdcc` accepts it back.
pub fn to_text(labels: &LabelContext, ctx: &DccContext, term: &dcc::Tm, ty: &dcc::Tm) -> String {
    let mut out = String::new();
    for e in labels.entries() {
        out.push_str(&label_to_text(e));
        out.push('\n');
    }
    for (x, t) in ctx.entries() {
        out.push_str(&format!("axiom {x} : {};\n", print_dcc(t)));
    }
    out.push_str(&format!("main {};\n", print_dcc(term)));
    out.push_str(&format!("-- : {}\n", print_dcc(ty)));
    out
}
