use std::collections::HashMap;

use crate::error::{Result, TypeError};
use crate::syntax::cc::{self, Tm};
use crate::syntax::{CcContext, LabelContext, LabelEntry, LabelId};

/// Assigns label ids to lambdas by structure.
///
/// The key of `Γ ⊢ λx:A.M` is the telescope length `n` with the α-canonical
/// form of `λ(y₁:C₁)…λ(yₙ:Cₙ).λx:A.M` over its free-variable telescope, so
/// the same function under the same telescope types always gets the same
/// label no matter what the variables are called. Ids are handed out densely
/// in the order lambdas are first met.
#[derive(Debug, Default)]
pub struct LabelMinter {
    table: HashMap<String, LabelId>,
    slots: Vec<Option<Minted>>,
}

#[derive(Clone, Debug)]
struct Minted {
    entry: LabelEntry,
    /// Every definition the entry needs, the entry itself last.
    deps: LabelContext,
}

#[derive(Debug)]
pub enum Reservation {
    Fresh(LabelId),
    Known {
        entry: LabelEntry,
        deps: LabelContext,
    },
}

pub fn lambda_key(telescope: &CcContext, lam: &Tm) -> String {
    let closed = telescope
        .entries()
        .iter()
        .rev()
        .fold(lam.clone(), |acc, (y, c)| cc::lam(y.clone(), c.clone(), acc));
    format!("{}|{}", telescope.len(), cc::canonical_key(&closed))
}

impl LabelMinter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn reserve(&mut self, key: String) -> Result<Reservation> {
        if let Some(&id) = self.table.get(&key) {
            return match &self.slots[id.0] {
                Some(m) => Ok(Reservation::Known {
                    entry: m.entry.clone(),
                    deps: m.deps.clone(),
                }),
                None => Err(TypeError::IllFormedLabel {
                    label: id,
                    reason: "lambda occurs inside its own definition".into(),
                }),
            };
        }
        let id = LabelId(self.slots.len());
        self.slots.push(None);
        self.table.insert(key, id);
        Ok(Reservation::Fresh(id))
    }

    pub fn complete(&mut self, entry: LabelEntry, deps: LabelContext) {
        let id = entry.id;
        self.slots[id.0] = Some(Minted { entry, deps });
    }

    /// Every completed entry, in id order.
    pub fn entries(&self) -> Vec<LabelEntry> {
        self.slots
            .iter()
            .flatten()
            .map(|m| m.entry.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::cc::*;
    use crate::syntax::Name;

    #[test]
    fn key_ignores_variable_names() {
        let t1 = CcContext::from_entries(vec![(Name::new("A"), universe(0))]);
        let t2 = CcContext::from_entries(vec![(Name::new("B"), universe(0))]);
        let l1 = lam("x", var("A"), var("x"));
        let l2 = lam("y", var("B"), var("y"));
        assert_eq!(lambda_key(&t1, &l1), lambda_key(&t2, &l2));
        let l3 = lam("y", var("B"), var("B"));
        assert_ne!(lambda_key(&t1, &l1), lambda_key(&t2, &l3));
    }

    #[test]
    fn key_separates_telescope_from_binders() {
        // λg.f over {f} is not the closed λf.λg.f.
        let n2n = arrow(nat(), nat());
        let tele = CcContext::from_entries(vec![(Name::new("f"), n2n.clone())]);
        let inner = lam("g", n2n.clone(), var("f"));
        let outer = lam("f", n2n.clone(), inner.clone());
        assert_ne!(lambda_key(&tele, &inner), lambda_key(&CcContext::new(), &outer));
    }

    #[test]
    fn reserve_is_dense_and_stable() {
        let mut m = LabelMinter::new();
        assert!(matches!(m.reserve("a".into()).unwrap(), Reservation::Fresh(LabelId(0))));
        assert!(matches!(m.reserve("b".into()).unwrap(), Reservation::Fresh(LabelId(1))));
        // "a" is still pending.
        assert!(m.reserve("a".into()).is_err());
    }
}
