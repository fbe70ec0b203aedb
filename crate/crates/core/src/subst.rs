//! Idempotent substitutions and their equation form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::formula::Formula;
use crate::types::{ConstraintExpr, Equation, TypeExpr};

/// Variable-to-type map in solved (idempotent) form: no image mentions a
/// domain variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<String, TypeExpr>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from raw bindings, resolving until idempotent. Callers must
    /// guarantee the triangular form is acyclic (the unifier does, via its
    /// occurs check).
    pub fn from_triangular(raw: BTreeMap<String, TypeExpr>) -> Self {
        let mut out = Substitution::new();
        for (v, t) in &raw {
            let resolved = resolve(t, &raw);
            if resolved.as_var() != Some(v.as_str()) {
                out.bindings.insert(v.clone(), resolved);
            }
        }
        out
    }

    pub fn bindings(&self) -> &BTreeMap<String, TypeExpr> {
        &self.bindings
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<String> {
        self.bindings.keys().cloned().collect()
    }

    pub fn get(&self, v: &str) -> Option<&TypeExpr> {
        self.bindings.get(v)
    }

    /// Image of a single variable (the variable itself when unbound).
    pub fn lookup(&self, v: &str) -> TypeExpr {
        self.bindings
            .get(v)
            .cloned()
            .unwrap_or_else(|| TypeExpr::var(v))
    }

    pub fn apply(&self, t: &TypeExpr) -> TypeExpr {
        match t {
            TypeExpr::Var(v) => self.lookup(v),
            TypeExpr::Arrow(a, b) => TypeExpr::arrow(self.apply(a), self.apply(b)),
            TypeExpr::Pair(a, b) => TypeExpr::pair(self.apply(a), self.apply(b)),
            TypeExpr::Con(n, args) => {
                TypeExpr::con(n.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn apply_eq(&self, eq: &Equation) -> Equation {
        Equation::new(self.apply(&eq.lhs), self.apply(&eq.rhs))
    }

    pub fn apply_constraint(&self, c: &ConstraintExpr) -> ConstraintExpr {
        ConstraintExpr::from_eqs(c.eqs.iter().map(|e| self.apply_eq(e)).collect())
    }

    /// Homomorphic application to a formula. Bound variables are globally
    /// unique by construction, so no capture handling is needed beyond not
    /// touching binder lists (domains never intersect binders in practice;
    /// bindings on a binder are dropped under it).
    pub fn apply_formula(&self, f: &Formula) -> Formula {
        match f {
            Formula::Truth => Formula::Truth,
            Formula::Eq(a, b) => Formula::Eq(self.apply(a), self.apply(b)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| self.apply_formula(g)).collect()),
            Formula::Implies(h, c) => {
                Formula::Implies(self.apply_constraint(h), Box::new(self.apply_formula(c)))
            }
            Formula::Or(l, r) => Formula::Or(
                Box::new(self.apply_formula(l)),
                Box::new(self.apply_formula(r)),
            ),
            Formula::Forall(vs, g) => {
                let inner = self.without(vs).apply_formula(g);
                Formula::Forall(vs.clone(), Box::new(inner))
            }
            Formula::Exists(vs, g) => {
                let inner = self.without(vs).apply_formula(g);
                Formula::Exists(vs.clone(), Box::new(inner))
            }
            Formula::Known(t) => Formula::Known(self.apply(t)),
        }
    }

    fn without(&self, vars: &[String]) -> Substitution {
        if vars.iter().any(|v| self.bindings.contains_key(v)) {
            let mut b = self.bindings.clone();
            for v in vars {
                b.remove(v);
            }
            Substitution { bindings: b }
        } else {
            self.clone()
        }
    }

    /// `E_psi`: one equation `a = psi(a)` per binding.
    pub fn to_equations(&self) -> ConstraintExpr {
        ConstraintExpr::from_eqs(
            self.bindings
                .iter()
                .map(|(v, t)| Equation::new(TypeExpr::var(v.clone()), t.clone()))
                .collect(),
        )
    }

    pub fn restrict(&self, vars: &BTreeSet<String>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        }
    }

    /// `self` then `other` (other ∘ self composition applied to self's
    /// images, plus other's bindings on fresh variables).
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut b: BTreeMap<String, TypeExpr> = BTreeMap::new();
        for (v, t) in &self.bindings {
            b.insert(v.clone(), other.apply(t));
        }
        for (v, t) in &other.bindings {
            b.entry(v.clone()).or_insert_with(|| t.clone());
        }
        let mut out = Substitution { bindings: b };
        // then() of idempotent parts can leave var->itself entries
        out.bindings.retain(|v, t| t.as_var() != Some(v.as_str()));
        out
    }
}

fn resolve(t: &TypeExpr, raw: &BTreeMap<String, TypeExpr>) -> TypeExpr {
    match t {
        TypeExpr::Var(v) => match raw.get(v) {
            Some(next) => resolve(next, raw),
            None => t.clone(),
        },
        TypeExpr::Arrow(a, b) => TypeExpr::arrow(resolve(a, raw), resolve(b, raw)),
        TypeExpr::Pair(a, b) => TypeExpr::pair(resolve(a, raw), resolve(b, raw)),
        TypeExpr::Con(n, args) => {
            TypeExpr::con(n.clone(), args.iter().map(|a| resolve(a, raw)).collect())
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .bindings
            .iter()
            .map(|(v, t)| format!("{t}/{v}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl serde::Serialize for Substitution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            self.bindings
                .iter()
                .map(|(v, t)| serde_json::json!({ "var": v, "type": t.to_string() })),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> TypeExpr {
        TypeExpr::var(n)
    }

    #[test]
    fn apply_basic() {
        let mut raw = BTreeMap::new();
        raw.insert("a".to_string(), TypeExpr::int());
        let s = Substitution::from_triangular(raw);
        let t = TypeExpr::arrow(v("a"), v("a"));
        assert_eq!(s.apply(&t).to_string(), "Int -> Int");
    }

    #[test]
    fn identity_is_noop() {
        let s = Substitution::new();
        let t = TypeExpr::arrow(v("a"), v("b"));
        assert_eq!(s.apply(&t), t);
    }

    #[test]
    fn idempotent_after_resolution() {
        let mut raw = BTreeMap::new();
        raw.insert("a".to_string(), v("b"));
        raw.insert("b".to_string(), TypeExpr::int());
        let s = Substitution::from_triangular(raw);
        let t = TypeExpr::pair(v("a"), v("b"));
        assert_eq!(s.apply(&t), s.apply(&s.apply(&t)));
        assert_eq!(s.apply(&t).to_string(), "(Int, Int)");
    }

    #[test]
    fn to_equations_form() {
        let mut raw = BTreeMap::new();
        raw.insert("t1".to_string(), TypeExpr::int());
        let s = Substitution::from_triangular(raw);
        assert_eq!(s.to_equations().to_string(), "t1 = Int");
        assert!(Substitution::new().to_equations().is_truth());
    }
}
