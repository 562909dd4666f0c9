use std::collections::BTreeSet;

use super::dcc;
use super::name::{LabelId, Name};
use crate::error::TypeError;

/// An ordered telescope `x₁:A₁, …, xₙ:Aₙ`. An entry may also carry a
/// value, making it a local definition `x := N : A`; only the CC^σ checker
/// creates those.
#[derive(Clone, Debug)]
pub struct TypeContext<T> {
    entries: Vec<(Name, T)>,
    values: Vec<Option<T>>,
}

impl<T> Default for TypeContext<T> {
    fn default() -> Self {
        TypeContext {
            entries: Vec::new(),
            values: Vec::new(),
        }
    }
}

impl<T: Clone> TypeContext<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<(Name, T)>) -> Self {
        let values = vec![None; entries.len()];
        TypeContext { entries, values }
    }

    pub fn entries(&self) -> &[(Name, T)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, x: &Name) -> Option<&T> {
        self.entries.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn position(&self, x: &Name) -> Option<usize> {
        self.entries.iter().rposition(|(y, _)| y == x)
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.entries.iter().any(|(y, _)| y == x)
    }

    pub fn names(&self) -> BTreeSet<Name> {
        self.entries.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn push(&mut self, x: Name, ty: T) {
        self.entries.push((x, ty));
        self.values.push(None);
    }

    /// Pushes the local definition `x := value : ty`.
    pub fn define(&mut self, x: Name, ty: T, value: T) {
        self.entries.push((x, ty));
        self.values.push(Some(value));
    }

    pub fn extended(&self, x: Name, ty: T) -> Self {
        let mut c = self.clone();
        c.push(x, ty);
        c
    }

    /// The local definitions, innermost last.
    pub fn definitions(&self) -> impl DoubleEndedIterator<Item = (&Name, &T)> {
        self.entries
            .iter()
            .zip(&self.values)
            .filter_map(|((x, _), v)| v.as_ref().map(|v| (x, v)))
    }

    pub fn has_definitions(&self) -> bool {
        self.values.iter().any(Option::is_some)
    }

    /// The context with the entries named in `names` dropped.
    pub fn without(&self, names: &BTreeSet<Name>) -> Self {
        let (entries, values) = self
            .entries
            .iter()
            .zip(&self.values)
            .filter(|((x, _), _)| !names.contains(x))
            .map(|(e, v)| (e.clone(), v.clone()))
            .unzip();
        TypeContext { entries, values }
    }

    /// The entries strictly before position `i`.
    pub fn prefix(&self, i: usize) -> Self {
        TypeContext {
            entries: self.entries[..i].to_vec(),
            values: self.values[..i].to_vec(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, T)> {
        self.entries.iter()
    }
}

/// One label definition `ℓ({x̄:Ā}, x:A ↦ M : B)`.
#[derive(Clone, Debug)]
pub struct LabelEntry {
    pub id: LabelId,
    pub fvs: Vec<(Name, dcc::Tm)>,
    pub arg: Name,
    pub arg_ty: dcc::Tm,
    pub body: dcc::Tm,
    pub ret: dcc::Tm,
}

impl LabelEntry {
    /// Entries are compared up to renaming of the telescope and argument.
    pub fn alpha_eq(&self, other: &LabelEntry) -> bool {
        if self.id != other.id || self.fvs.len() != other.fvs.len() {
            return false;
        }
        let mut la = Vec::new();
        let mut lb = Vec::new();
        for ((x, a), (y, b)) in self.fvs.iter().zip(&other.fvs) {
            if !dcc::alpha_eq_in(a, b, &mut la, &mut lb) {
                return false;
            }
            la.push(x.clone());
            lb.push(y.clone());
        }
        if !dcc::alpha_eq_in(&self.arg_ty, &other.arg_ty, &mut la, &mut lb) {
            return false;
        }
        la.push(self.arg.clone());
        lb.push(other.arg.clone());
        dcc::alpha_eq_in(&self.body, &other.body, &mut la, &mut lb)
            && dcc::alpha_eq_in(&self.ret, &other.ret, &mut la, &mut lb)
    }

    /// `Πx:A.B` with the telescope still free.
    pub fn pi_type(&self) -> dcc::Tm {
        dcc::pi(self.arg.clone(), self.arg_ty.clone(), self.ret.clone())
    }

    pub fn referenced_labels(&self) -> BTreeSet<LabelId> {
        let mut out = BTreeSet::new();
        for (_, t) in &self.fvs {
            t.labels(&mut out);
        }
        self.arg_ty.labels(&mut out);
        self.body.labels(&mut out);
        self.ret.labels(&mut out);
        out
    }
}

/// An ordered label context Δ. Later entries may mention earlier labels.
#[derive(Clone, Debug, Default)]
pub struct LabelContext {
    entries: Vec<LabelEntry>,
}

impl LabelContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<LabelEntry>) -> Self {
        LabelContext { entries }
    }

    pub fn entries(&self) -> &[LabelEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: LabelId) -> Option<&LabelEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn ids(&self) -> Vec<LabelId> {
        self.entries.iter().map(|e| e.id).collect()
    }

    /// Appends an entry; a duplicate id must carry an α-equal definition.
    pub fn push(&mut self, entry: LabelEntry) -> Result<(), TypeError> {
        match self.get(entry.id) {
            Some(existing) if existing.alpha_eq(&entry) => Ok(()),
            Some(_) => Err(TypeError::LabelClash(entry.id)),
            None => {
                self.entries.push(entry);
                Ok(())
            }
        }
    }

    /// `self ∪ other`: `self` followed by the entries only in `other`, order
    /// preserved.
    pub fn union(&self, other: &LabelContext) -> Result<LabelContext, TypeError> {
        let mut out = self.clone();
        out.union_in_place(other)?;
        Ok(out)
    }

    pub fn union_in_place(&mut self, other: &LabelContext) -> Result<(), TypeError> {
        for e in &other.entries {
            self.push(e.clone())?;
        }
        Ok(())
    }

    /// Every entry of `self` occurs in `other` with an α-equal definition.
    pub fn is_subset_of(&self, other: &LabelContext) -> bool {
        self.entries
            .iter()
            .all(|e| other.get(e.id).is_some_and(|o| o.alpha_eq(e)))
    }

    /// The entries before the one with the given id.
    pub fn prefix_before(&self, id: LabelId) -> LabelContext {
        let end = self
            .entries
            .iter()
            .position(|e| e.id == id)
            .unwrap_or(self.entries.len());
        LabelContext {
            entries: self.entries[..end].to_vec(),
        }
    }
}

pub fn label_union(d1: &LabelContext, d2: &LabelContext) -> Result<LabelContext, TypeError> {
    d1.union(d2)
}

pub fn label_subset(d1: &LabelContext, d2: &LabelContext) -> bool {
    d1.is_subset_of(d2)
}
