//! Types, simple equation constraints and type schemes.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub const INT: &str = "Int";
pub const BOOL: &str = "Bool";

/// Prefix marking skolem constructor heads; not expressible in source syntax.
pub const SKOLEM_PREFIX: &str = "%sk";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeExpr {
    Var(String),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Con(String, Vec<TypeExpr>),
    Pair(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn var(n: impl Into<String>) -> Self {
        TypeExpr::Var(n.into())
    }

    pub fn arrow(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Arrow(Box::new(a), Box::new(b))
    }

    pub fn pair(a: TypeExpr, b: TypeExpr) -> Self {
        TypeExpr::Pair(Box::new(a), Box::new(b))
    }

    pub fn con(n: impl Into<String>, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Con(n.into(), args)
    }

    pub fn int() -> Self {
        TypeExpr::con(INT, vec![])
    }

    pub fn boolean() -> Self {
        TypeExpr::con(BOOL, vec![])
    }

    pub fn is_var(&self) -> bool {
        matches!(self, TypeExpr::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            TypeExpr::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            TypeExpr::Var(v) => {
                out.insert(v.clone());
            }
            TypeExpr::Arrow(a, b) | TypeExpr::Pair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            TypeExpr::Con(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            TypeExpr::Var(v) => v == name,
            TypeExpr::Arrow(a, b) | TypeExpr::Pair(a, b) => {
                a.contains_var(name) || b.contains_var(name)
            }
            TypeExpr::Con(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }

    /// All subterms including the term itself, outermost first.
    pub fn subterms(&self) -> Vec<&TypeExpr> {
        let mut out = vec![self];
        match self {
            TypeExpr::Var(_) => {}
            TypeExpr::Arrow(a, b) | TypeExpr::Pair(a, b) => {
                out.extend(a.subterms());
                out.extend(b.subterms());
            }
            TypeExpr::Con(_, args) => {
                for a in args {
                    out.extend(a.subterms());
                }
            }
        }
        out
    }

    /// Head symbol name used in clash reports.
    pub fn head(&self) -> String {
        match self {
            TypeExpr::Var(v) => v.clone(),
            TypeExpr::Arrow(..) => "->".to_string(),
            TypeExpr::Pair(..) => "(,)".to_string(),
            TypeExpr::Con(n, _) => n.clone(),
        }
    }

    pub fn is_skolem(&self) -> bool {
        matches!(self, TypeExpr::Con(n, _) if n.starts_with(SKOLEM_PREFIX))
    }
}

fn needs_parens_arrow_lhs(t: &TypeExpr) -> bool {
    matches!(t, TypeExpr::Arrow(..))
}

fn needs_parens_con_arg(t: &TypeExpr) -> bool {
    match t {
        TypeExpr::Arrow(..) => true,
        TypeExpr::Con(_, args) => !args.is_empty(),
        _ => false,
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Var(v) => write!(f, "{v}"),
            TypeExpr::Arrow(a, b) => {
                if needs_parens_arrow_lhs(a) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
            TypeExpr::Pair(a, b) => write!(f, "({a}, {b})"),
            TypeExpr::Con(n, args) => {
                let shown = n.strip_prefix('%').unwrap_or(n);
                write!(f, "{shown}")?;
                for a in args {
                    if needs_parens_con_arg(a) {
                        write!(f, " ({a})")?;
                    } else {
                        write!(f, " {a}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub lhs: TypeExpr,
    pub rhs: TypeExpr,
}

impl Equation {
    pub fn new(lhs: TypeExpr, rhs: TypeExpr) -> Self {
        Equation { lhs, rhs }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.lhs.free_vars();
        self.rhs.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Conjunction of equations. The empty conjunction is True. Order is kept
/// for display but all comparisons treat the conjuncts as a set.
#[derive(Debug, Clone, Default)]
pub struct ConstraintExpr {
    pub eqs: Vec<Equation>,
}

impl ConstraintExpr {
    pub fn truth() -> Self {
        ConstraintExpr { eqs: vec![] }
    }

    pub fn single(lhs: TypeExpr, rhs: TypeExpr) -> Self {
        ConstraintExpr {
            eqs: vec![Equation::new(lhs, rhs)],
        }
    }

    pub fn from_eqs(eqs: Vec<Equation>) -> Self {
        ConstraintExpr { eqs }
    }

    pub fn is_truth(&self) -> bool {
        self.eqs.is_empty()
    }

    pub fn push(&mut self, eq: Equation) {
        self.eqs.push(eq);
    }

    pub fn extend(&mut self, other: &ConstraintExpr) {
        self.eqs.extend(other.eqs.iter().cloned());
    }

    pub fn and(mut self, other: &ConstraintExpr) -> Self {
        self.extend(other);
        self
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for eq in &self.eqs {
            eq.lhs.collect_vars(&mut out);
            eq.rhs.collect_vars(&mut out);
        }
        out
    }

    fn as_multiset(&self) -> Vec<&Equation> {
        let mut v: Vec<&Equation> = self.eqs.iter().collect();
        v.sort();
        v
    }
}

impl PartialEq for ConstraintExpr {
    fn eq(&self, other: &Self) -> bool {
        self.as_multiset() == other.as_multiset()
    }
}

impl Eq for ConstraintExpr {}

impl fmt::Display for ConstraintExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eqs.is_empty() {
            return write!(f, "True");
        }
        let parts: Vec<String> = self.eqs.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Type scheme `forall bound. context => body`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    pub bound: Vec<String>,
    pub context: ConstraintExpr,
    pub body: TypeExpr,
}

impl Scheme {
    pub fn mono(body: TypeExpr) -> Self {
        Scheme {
            bound: vec![],
            context: ConstraintExpr::truth(),
            body,
        }
    }

    pub fn poly(bound: Vec<String>, body: TypeExpr) -> Self {
        Scheme {
            bound,
            context: ConstraintExpr::truth(),
            body,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.context.free_vars();
        self.body.collect_vars(&mut out);
        for b in &self.bound {
            out.remove(b);
        }
        out
    }

    /// Canonical display form: bound variables renamed a, b, c, ... in
    /// order of first occurrence, so equal-up-to-alpha schemes print
    /// identically.
    pub fn display_canonical(&self) -> String {
        let letters = [
            "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n",
        ];
        let free = self.free_vars();
        let mut order: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        let visit = |t: &TypeExpr, order: &mut Vec<String>, seen: &mut BTreeSet<String>| {
            for s in t.subterms() {
                if let TypeExpr::Var(v) = s {
                    if self.bound.contains(v) && seen.insert(v.clone()) {
                        order.push(v.clone());
                    }
                }
            }
        };
        for eq in &self.context.eqs {
            visit(&eq.lhs, &mut order, &mut seen);
            visit(&eq.rhs, &mut order, &mut seen);
        }
        visit(&self.body, &mut order, &mut seen);
        // bound vars that never occur still need names
        for b in &self.bound {
            if seen.insert(b.clone()) {
                order.push(b.clone());
            }
        }
        let mut renaming = std::collections::BTreeMap::new();
        let mut next = 0;
        for v in &order {
            loop {
                let cand = if next < letters.len() {
                    letters[next].to_string()
                } else {
                    format!("a{}", next - letters.len() + 1)
                };
                next += 1;
                if !free.contains(&cand) {
                    renaming.insert(v.clone(), cand);
                    break;
                }
            }
        }
        let ren = |t: &TypeExpr| rename_vars(t, &renaming);
        let body = ren(&self.body);
        let ctx = ConstraintExpr::from_eqs(
            self.context
                .eqs
                .iter()
                .map(|e| Equation::new(ren(&e.lhs), ren(&e.rhs)))
                .collect(),
        );
        let mut out = String::new();
        if !order.is_empty() {
            let names: Vec<&str> = order.iter().map(|v| renaming[v].as_str()).collect();
            out.push_str(&format!("forall {}. ", names.join(" ")));
        }
        if !ctx.is_truth() {
            out.push_str(&format!("({ctx}) => "));
        }
        out.push_str(&body.to_string());
        out
    }
}

pub fn rename_vars(
    t: &TypeExpr,
    renaming: &std::collections::BTreeMap<String, String>,
) -> TypeExpr {
    match t {
        TypeExpr::Var(v) => match renaming.get(v) {
            Some(n) => TypeExpr::var(n.clone()),
            None => t.clone(),
        },
        TypeExpr::Arrow(a, b) => TypeExpr::arrow(rename_vars(a, renaming), rename_vars(b, renaming)),
        TypeExpr::Pair(a, b) => TypeExpr::pair(rename_vars(a, renaming), rename_vars(b, renaming)),
        TypeExpr::Con(n, args) => {
            TypeExpr::con(n.clone(), args.iter().map(|a| rename_vars(a, renaming)).collect())
        }
    }
}

/// Alpha-equivalence of schemes via mutual canonical display.
pub fn alpha_eq(a: &Scheme, b: &Scheme) -> bool {
    a.display_canonical() == b.display_canonical()
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_canonical())
    }
}

impl Serialize for TypeExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for Equation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ConstraintExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.eqs.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_arrow_parens() {
        let t = TypeExpr::arrow(
            TypeExpr::arrow(TypeExpr::var("a"), TypeExpr::var("b")),
            TypeExpr::var("c"),
        );
        assert_eq!(t.to_string(), "(a -> b) -> c");
        let u = TypeExpr::arrow(
            TypeExpr::var("a"),
            TypeExpr::arrow(TypeExpr::var("b"), TypeExpr::var("c")),
        );
        assert_eq!(u.to_string(), "a -> b -> c");
    }

    #[test]
    fn display_con_args() {
        let t = TypeExpr::con(
            "Erk",
            vec![TypeExpr::arrow(TypeExpr::int(), TypeExpr::int())],
        );
        assert_eq!(t.to_string(), "Erk (Int -> Int)");
        let r = TypeExpr::con(
            "R",
            vec![TypeExpr::pair(TypeExpr::var("b"), TypeExpr::var("c"))],
        );
        assert_eq!(r.to_string(), "R (b, c)");
    }

    #[test]
    fn constraint_set_equality() {
        let a = ConstraintExpr::from_eqs(vec![
            Equation::new(TypeExpr::var("a"), TypeExpr::int()),
            Equation::new(TypeExpr::var("b"), TypeExpr::boolean()),
        ]);
        let b = ConstraintExpr::from_eqs(vec![
            Equation::new(TypeExpr::var("b"), TypeExpr::boolean()),
            Equation::new(TypeExpr::var("a"), TypeExpr::int()),
        ]);
        assert_eq!(a, b);
    }

    #[test]
    fn scheme_canonical_display() {
        let s = Scheme::poly(
            vec!["x9".into()],
            TypeExpr::arrow(
                TypeExpr::con("Erk", vec![TypeExpr::var("x9")]),
                TypeExpr::var("x9"),
            ),
        );
        assert_eq!(s.display_canonical(), "forall a. Erk a -> a");
        let t = Scheme::poly(
            vec!["q".into()],
            TypeExpr::arrow(TypeExpr::con("Erk", vec![TypeExpr::var("q")]), TypeExpr::var("q")),
        );
        assert!(alpha_eq(&s, &t));
    }
}
