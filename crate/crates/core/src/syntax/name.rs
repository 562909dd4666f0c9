use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A variable name. Cheap to clone and safe to share across threads.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The binder used for non-dependent arrows.
    pub fn anon() -> Self {
        Name::new("_")
    }

    pub fn is_anon(&self) -> bool {
        &*self.0 == "_"
    }

    /// Appends primes until the name avoids everything in `avoid`.
    pub fn freshen(&self, avoid: &BTreeSet<Name>) -> Name {
        if !avoid.contains(self) {
            return self.clone();
        }
        let mut candidate = format!("{}'", self.0);
        loop {
            let n = Name::new(&candidate);
            if !avoid.contains(&n) {
                return n;
            }
            candidate.push('\'');
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Identifier of a label in a label context. Printed as `l<n>`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelId(pub usize);

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

/// Names in left-to-right first-occurrence order without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedNames {
    order: Vec<Name>,
    seen: BTreeSet<Name>,
}

impl OrderedNames {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: Name) {
        if self.seen.insert(name.clone()) {
            self.order.push(name);
        }
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.seen.contains(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Name> {
        self.order.iter()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn as_set(&self) -> &BTreeSet<Name> {
        &self.seen
    }

    pub fn into_vec(self) -> Vec<Name> {
        self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freshen_appends_primes() {
        let avoid: BTreeSet<Name> = ["x", "x'"].iter().map(|s| Name::new(s)).collect();
        assert_eq!(Name::new("x").freshen(&avoid).as_str(), "x''");
        assert_eq!(Name::new("y").freshen(&avoid).as_str(), "y");
    }

    #[test]
    fn ordered_names_dedup() {
        let mut names = OrderedNames::new();
        for n in ["f", "x", "g", "x"] {
            names.insert(Name::new(n));
        }
        let v: Vec<_> = names.iter().map(|n| n.as_str()).collect();
        assert_eq!(v, ["f", "x", "g"]);
    }
}
