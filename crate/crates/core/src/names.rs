//! Fresh-name supply shared by the whole pipeline.
//!
//! All type variables in a run come from one supply, so binders are
//! renamed apart by construction and every variable has a stable
//! allocation stamp. The stamp order is what the canonical equation
//! orientation and the unifier's binding direction are based on.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
pub struct NameSupply {
    stamps: BTreeMap<String, usize>,
    next: usize,
    next_t: usize,
}

impl NameSupply {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a name that already appears in the source (data declaration
    /// parameters, annotation variables). First claim wins.
    pub fn claim(&mut self, name: &str) {
        if !self.stamps.contains_key(name) {
            self.stamps.insert(name.to_string(), self.next);
            self.next += 1;
        }
    }

    /// Fresh variable with a naming hint. The hint itself is used when
    /// still unused, otherwise a numeric suffix is appended.
    pub fn fresh(&mut self, hint: &str) -> String {
        if !self.stamps.contains_key(hint) {
            self.claim(hint);
            return hint.to_string();
        }
        let mut i = 1;
        loop {
            let cand = format!("{hint}{i}");
            if !self.stamps.contains_key(&cand) {
                self.claim(&cand);
                return cand;
            }
            i += 1;
        }
    }

    /// Fresh numbered variable in the `t` family: t1, t2, ...
    pub fn fresh_t(&mut self) -> String {
        loop {
            self.next_t += 1;
            let cand = format!("t{}", self.next_t);
            if !self.stamps.contains_key(&cand) {
                self.claim(&cand);
                return cand;
            }
        }
    }

    pub fn stamp(&self, name: &str) -> Option<usize> {
        self.stamps.get(name).copied()
    }

    /// Total order used for orientation: allocation stamp when known,
    /// otherwise name order (unknown names sort after all known ones).
    pub fn order(&self) -> NameOrder {
        NameOrder {
            stamps: self.stamps.clone(),
        }
    }
}

/// Snapshot of allocation order, usable without the supply itself.
#[derive(Debug, Clone, Default)]
pub struct NameOrder {
    stamps: BTreeMap<String, usize>,
}

impl NameOrder {
    pub fn from_names<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Self {
        let mut stamps = BTreeMap::new();
        for (i, n) in names.into_iter().enumerate() {
            stamps.entry(n.to_string()).or_insert(i);
        }
        Self { stamps }
    }

    /// True when `a` was allocated before `b`.
    pub fn older(&self, a: &str, b: &str) -> bool {
        match (self.stamps.get(a), self.stamps.get(b)) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => a < b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_never_collides_with_claimed() {
        let mut s = NameSupply::new();
        s.claim("a");
        s.claim("t1");
        assert_eq!(s.fresh("a"), "a1");
        assert_eq!(s.fresh_t(), "t2");
        assert_eq!(s.fresh("b"), "b");
    }

    #[test]
    fn order_follows_allocation() {
        let mut s = NameSupply::new();
        s.claim("ty");
        let a = s.fresh("a");
        let ord = s.order();
        assert!(ord.older("ty", &a));
        assert!(!ord.older(&a, "ty"));
    }
}
