//! The enriched constraint language and its prefix normal form.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::types::{ConstraintExpr, TypeExpr};

/// First-order formulas as produced by constraint generation: equations,
/// conjunction, implication with a simple hypothesis, disjunction (only
/// `known(t) \/ E` shapes are generated), quantifiers and known-atoms.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Truth,
    Eq(TypeExpr, TypeExpr),
    And(Vec<Formula>),
    Implies(ConstraintExpr, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Known(TypeExpr),
}

impl Formula {
    pub fn and(fs: Vec<Formula>) -> Formula {
        let mut flat = Vec::new();
        for f in fs {
            match f {
                Formula::Truth => {}
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::Truth,
            1 => flat.into_iter().next().unwrap(),
            _ => Formula::And(flat),
        }
    }

    pub fn implies(hyp: ConstraintExpr, concl: Formula) -> Formula {
        if hyp.is_truth() {
            concl
        } else {
            Formula::Implies(hyp, Box::new(concl))
        }
    }

    pub fn forall(vars: Vec<String>, f: Formula) -> Formula {
        if vars.is_empty() {
            f
        } else {
            Formula::Forall(vars, Box::new(f))
        }
    }

    pub fn exists(vars: Vec<String>, f: Formula) -> Formula {
        if vars.is_empty() {
            f
        } else {
            Formula::Exists(vars, Box::new(f))
        }
    }

    pub fn from_constraint(c: &ConstraintExpr) -> Formula {
        Formula::and(
            c.eqs
                .iter()
                .map(|e| Formula::Eq(e.lhs.clone(), e.rhs.clone()))
                .collect(),
        )
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Truth => {}
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::And(fs) => {
                for f in fs {
                    f.collect_free(out);
                }
            }
            Formula::Implies(h, c) => {
                out.extend(h.free_vars());
                c.collect_free(out);
            }
            Formula::Or(l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
            Formula::Forall(vs, f) | Formula::Exists(vs, f) => {
                let mut inner = BTreeSet::new();
                f.collect_free(&mut inner);
                for v in vs {
                    inner.remove(v);
                }
                out.extend(inner);
            }
            Formula::Known(t) => t.collect_vars(out),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Truth => write!(f, "True"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::And(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join(", "))
            }
            Formula::Implies(h, c) => write!(f, "({h} => {c})"),
            Formula::Or(l, r) => write!(f, "({l} \\/ {r})"),
            Formula::Forall(vs, g) => write!(f, "forall {}. ({g})", vs.join(" ")),
            Formula::Exists(vs, g) => write!(f, "exists {}. ({g})", vs.join(" ")),
            Formula::Known(t) => write!(f, "known({t})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quant {
    Forall,
    Exists,
}

/// Mixed quantifier prefix: alternating blocks, variables pairwise distinct.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Prefix {
    pub blocks: Vec<(Quant, Vec<String>)>,
}

impl Prefix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, q: Quant, vars: Vec<String>) {
        if vars.is_empty() {
            return;
        }
        if let Some((last_q, last_vars)) = self.blocks.last_mut() {
            if *last_q == q {
                last_vars.extend(vars);
                return;
            }
        }
        self.blocks.push((q, vars));
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.blocks.iter().flat_map(|(_, vs)| vs.iter())
    }

    pub fn universals(&self) -> BTreeSet<String> {
        self.blocks
            .iter()
            .filter(|(q, _)| *q == Quant::Forall)
            .flat_map(|(_, vs)| vs.iter().cloned())
            .collect()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vars().any(|x| x == v)
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Same prefix with the given universal variables turned existential
    /// (used to enter a branch's world, where the pattern existentials are
    /// witnesses rather than rigid).
    pub fn flip_to_exists(&self, vars: &BTreeSet<String>) -> Prefix {
        let mut out = Prefix::new();
        for (q, vs) in &self.blocks {
            if *q == Quant::Exists {
                out.push(Quant::Exists, vs.clone());
            } else {
                let (flip, keep): (Vec<String>, Vec<String>) =
                    vs.iter().cloned().partition(|v| vars.contains(v));
                // keep relative order: flipped vars stay at the same depth
                out.push(Quant::Exists, flip);
                out.push(Quant::Forall, keep);
            }
        }
        out
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, vs) in &self.blocks {
            let kw = match q {
                Quant::Forall => "forall",
                Quant::Exists => "exists",
            };
            write!(f, "{kw} {}. ", vs.join(" "))?;
        }
        Ok(())
    }
}

/// One guarded implication `D => C` with the universal variables that
/// scoped it in the source formula (the pattern existentials of its branch).
#[derive(Debug, Clone, PartialEq)]
pub struct GuardedImplication {
    pub univs: Vec<String>,
    pub guard: ConstraintExpr,
    pub body: ConstraintExpr,
}

/// One `known(subject) \/ alt` entry. `alt: None` is a bare known-atom.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownEntry {
    pub subject: TypeExpr,
    pub alt: Option<ConstraintExpr>,
}

/// Prefix normal form `Q. C0 /\ (D1 => C1) /\ ... /\ (Dn => Cn) /\ K`.
#[derive(Debug, Clone, Default)]
pub struct NormalForm {
    pub prefix: Prefix,
    pub c0: ConstraintExpr,
    pub guarded: Vec<GuardedImplication>,
    pub known_part: Vec<KnownEntry>,
}

impl NormalForm {
    /// Free variables: everything mentioned minus the prefix.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.c0.free_vars();
        for g in &self.guarded {
            out.extend(g.guard.free_vars());
            out.extend(g.body.free_vars());
        }
        for k in &self.known_part {
            k.subject.collect_vars(&mut out);
            if let Some(alt) = &k.alt {
                out.extend(alt.free_vars());
            }
        }
        for v in self.prefix.vars() {
            out.remove(v);
        }
        out
    }

    /// The formula this normal form denotes.
    pub fn to_formula(&self) -> Formula {
        let mut parts = vec![Formula::from_constraint(&self.c0)];
        for g in &self.guarded {
            parts.push(Formula::implies(
                g.guard.clone(),
                Formula::from_constraint(&g.body),
            ));
        }
        for k in &self.known_part {
            let known = Formula::Known(k.subject.clone());
            match &k.alt {
                None => parts.push(known),
                Some(alt) => parts.push(Formula::Or(
                    Box::new(known),
                    Box::new(Formula::from_constraint(alt)),
                )),
            }
        }
        let mut f = Formula::and(parts);
        for (q, vs) in self.prefix.blocks.iter().rev() {
            f = match q {
                Quant::Forall => Formula::forall(vs.clone(), f),
                Quant::Exists => Formula::exists(vs.clone(), f),
            };
        }
        f
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefix)?;
        let mut parts = vec![self.c0.to_string()];
        for g in &self.guarded {
            parts.push(format!("({} => {})", g.guard, g.body));
        }
        for k in &self.known_part {
            match &k.alt {
                None => parts.push(format!("known({})", k.subject)),
                Some(alt) => parts.push(format!("(known({}) \\/ ({}))", k.subject, alt)),
            }
        }
        write!(f, "{}", parts.join(" /\\ "))
    }
}

impl Serialize for NormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let prefix: Vec<serde_json::Value> = self
            .prefix
            .blocks
            .iter()
            .map(|(q, vs)| {
                serde_json::json!({
                    "quant": match q { Quant::Forall => "forall", Quant::Exists => "exists" },
                    "vars": vs,
                })
            })
            .collect();
        let guarded: Vec<serde_json::Value> = self
            .guarded
            .iter()
            .map(|g| {
                serde_json::json!({
                    "guard": g.guard.eqs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    "body": g.body.eqs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let known: Vec<serde_json::Value> = self
            .known_part
            .iter()
            .map(|k| {
                serde_json::json!({
                    "subject": k.subject.to_string(),
                    "alt": k.alt.as_ref().map(|a| {
                        a.eqs.iter().map(|e| e.to_string()).collect::<Vec<_>>()
                    }),
                })
            })
            .collect();
        let v = serde_json::json!({
            "prefix": prefix,
            "base": self.c0.eqs.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "guarded": guarded,
            "known": known,
        });
        v.serialize(s)
    }
}
