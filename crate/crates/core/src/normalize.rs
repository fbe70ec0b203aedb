//! Normalization of inferred formulas into prefix form.
//!
//! Applies, left to right and to exhaustion, the first-order identities
//!   (1) (F1 => Q a. F2)  <->  Q a. (F1 => F2)        a not free in F1
//!   (2) (Q a. F1) /\ (Q b. F2)  <->  Q a b. (F1 /\ F2)
//!   (3) C1 => (C2 => C3)  <->  (C1 /\ C2) => C3
//! together with distribution of an implication over a conjunction
//! (F => (G /\ H)) <-> (F => G) /\ (F => H), and, for the known-augmented
//! mode, (F1 \/ F2) /\ (F1 \/ F3) <-> (F1 \/ (F2 /\ F3)) and
//! (F1 \/ exists a. F2) <-> exists a. (F1 \/ F2).
//!
//! Bound variables are renamed apart by generation, so hoisting a
//! quantifier over a sibling conjunct can never capture.

use thiserror::Error;

use crate::formula::{Formula, GuardedImplication, KnownEntry, NormalForm, Prefix, Quant};
use crate::types::{ConstraintExpr, Equation};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum NormalizeError {
    /// A shape outside the generator's output grammar. Signals an internal
    /// bug rather than a user error.
    #[error("formula not normalizable: {0}")]
    NotNormalizable(String),
}

pub fn normalize(f: &Formula) -> Result<NormalForm, NormalizeError> {
    let mut nf = NormalForm::default();
    walk(f, &ConstraintExpr::truth(), &[], &mut nf)?;
    merge_known(&mut nf);
    Ok(nf)
}

/// Traverse under an accumulated implication hypothesis. Quantifiers met on
/// the way are hoisted onto the prefix in traversal order, which preserves
/// every original nesting relation.
fn walk(
    f: &Formula,
    hyp: &ConstraintExpr,
    univs: &[String],
    nf: &mut NormalForm,
) -> Result<(), NormalizeError> {
    match f {
        Formula::Truth => Ok(()),
        Formula::Eq(a, b) => {
            emit(nf, hyp, univs, Equation::new(a.clone(), b.clone()));
            Ok(())
        }
        Formula::And(fs) => {
            for g in fs {
                walk(g, hyp, univs, nf)?;
            }
            Ok(())
        }
        Formula::Implies(h, c) => {
            // identity (3) plus distribution over the conclusion
            let combined = hyp.clone().and(h);
            walk(c, &combined, univs, nf)
        }
        Formula::Forall(vs, g) => {
            nf.prefix.push(Quant::Forall, vs.clone());
            let mut inner = univs.to_vec();
            inner.extend(vs.iter().cloned());
            walk(g, hyp, &inner, nf)
        }
        Formula::Exists(vs, g) => {
            nf.prefix.push(Quant::Exists, vs.clone());
            walk(g, hyp, univs, nf)
        }
        Formula::Known(t) => {
            if !hyp.is_truth() {
                return Err(NormalizeError::NotNormalizable(
                    "known atom under an implication".to_string(),
                ));
            }
            nf.known_part.push(KnownEntry {
                subject: t.clone(),
                alt: None,
            });
            Ok(())
        }
        Formula::Or(l, r) => {
            if !hyp.is_truth() {
                return Err(NormalizeError::NotNormalizable(
                    "disjunction under an implication".to_string(),
                ));
            }
            let (subject, alt) = match (l.as_ref(), r.as_ref()) {
                (Formula::Known(t), alt) => (t.clone(), alt),
                (alt, Formula::Known(t)) => (t.clone(), alt),
                _ => {
                    return Err(NormalizeError::NotNormalizable(
                        "disjunction without a known side".to_string(),
                    ))
                }
            };
            let alt_c = flatten_alt(alt, nf)?;
            nf.known_part.push(KnownEntry {
                subject,
                alt: Some(alt_c),
            });
            Ok(())
        }
    }
}

/// Alternative of a known-disjunction: existentials are hoisted onto the
/// prefix, the rest must be a plain conjunction of equations.
fn flatten_alt(f: &Formula, nf: &mut NormalForm) -> Result<ConstraintExpr, NormalizeError> {
    match f {
        Formula::Truth => Ok(ConstraintExpr::truth()),
        Formula::Eq(a, b) => Ok(ConstraintExpr::single(a.clone(), b.clone())),
        Formula::And(fs) => {
            let mut out = ConstraintExpr::truth();
            for g in fs {
                out.extend(&flatten_alt(g, nf)?);
            }
            Ok(out)
        }
        Formula::Exists(vs, g) => {
            nf.prefix.push(Quant::Exists, vs.clone());
            flatten_alt(g, nf)
        }
        other => Err(NormalizeError::NotNormalizable(format!(
            "known alternative is not a simple constraint: {other}"
        ))),
    }
}

fn emit(nf: &mut NormalForm, hyp: &ConstraintExpr, univs: &[String], eq: Equation) {
    if hyp.is_truth() {
        nf.c0.push(eq);
        return;
    }
    // group consecutive equations under the same hypothesis
    if let Some(last) = nf.guarded.last_mut() {
        if &last.guard == hyp && last.univs == univs {
            last.body.push(eq);
            return;
        }
    }
    nf.guarded.push(GuardedImplication {
        univs: univs.to_vec(),
        guard: hyp.clone(),
        body: ConstraintExpr::from_eqs(vec![eq]),
    });
}

/// (known(a) \/ E1) /\ (known(a) \/ E2) -> known(a) \/ (E1 /\ E2);
/// a bare known(a) absorbs every other entry on the same subject.
fn merge_known(nf: &mut NormalForm) {
    let mut merged: Vec<KnownEntry> = Vec::new();
    for entry in nf.known_part.drain(..) {
        if let Some(existing) = merged.iter_mut().find(|e| e.subject == entry.subject) {
            existing.alt = match (existing.alt.take(), entry.alt) {
                (Some(a), Some(b)) => Some(a.and(&b)),
                _ => None,
            };
        } else {
            merged.push(entry);
        }
    }
    nf.known_part = merged;
}

/// Drop prefix variables that no longer occur anywhere in the matrix
/// (notably after solve-oriented restriction); keeps display tidy.
pub fn prune_prefix(nf: &mut NormalForm) {
    let mut used = nf.c0.free_vars();
    for g in &nf.guarded {
        used.extend(g.guard.free_vars());
        used.extend(g.body.free_vars());
        used.extend(g.univs.iter().cloned());
    }
    for k in &nf.known_part {
        k.subject.collect_vars(&mut used);
        if let Some(a) = &k.alt {
            used.extend(a.free_vars());
        }
    }
    let mut pruned = Prefix::new();
    for (q, vs) in &nf.prefix.blocks {
        let kept: Vec<String> = vs.iter().filter(|v| used.contains(*v)).cloned().collect();
        pruned.push(*q, kept);
    }
    nf.prefix = pruned;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::TypeExpr;

    fn v(n: &str) -> TypeExpr {
        TypeExpr::var(n)
    }

    #[test]
    fn bare_conjunction_is_base() {
        let f = Formula::and(vec![
            Formula::Eq(v("a"), TypeExpr::int()),
            Formula::Eq(v("b"), v("a")),
        ]);
        let nf = normalize(&f).unwrap();
        assert!(nf.prefix.is_empty());
        assert!(nf.guarded.is_empty());
        assert!(nf.known_part.is_empty());
        assert_eq!(nf.c0.eqs.len(), 2);
    }

    #[test]
    fn nested_implications_fuse() {
        // C1 => (C2 => s=t) becomes one guarded entry (C1 /\ C2, s=t)
        let f = Formula::implies(
            ConstraintExpr::single(v("a"), TypeExpr::int()),
            Formula::implies(
                ConstraintExpr::single(v("b"), TypeExpr::boolean()),
                Formula::Eq(v("s"), v("t")),
            ),
        );
        let nf = normalize(&f).unwrap();
        assert!(nf.c0.is_truth());
        assert_eq!(nf.guarded.len(), 1);
        let g = &nf.guarded[0];
        assert_eq!(g.guard.eqs.len(), 2);
        assert_eq!(g.body.to_string(), "s = t");
    }

    #[test]
    fn quantifiers_hoist_in_order() {
        // forall b. (D => exists r. F) keeps b before r in the prefix
        let f = Formula::forall(
            vec!["b".into()],
            Formula::implies(
                ConstraintExpr::single(v("a"), v("b")),
                Formula::exists(vec!["r".into()], Formula::Eq(v("r"), v("b"))),
            ),
        );
        let nf = normalize(&f).unwrap();
        assert_eq!(
            nf.prefix.blocks,
            vec![
                (Quant::Forall, vec!["b".to_string()]),
                (Quant::Exists, vec!["r".to_string()])
            ]
        );
        assert_eq!(nf.guarded.len(), 1);
        assert_eq!(nf.guarded[0].univs, vec!["b".to_string()]);
    }

    #[test]
    fn implication_distributes_over_conjunction() {
        let f = Formula::implies(
            ConstraintExpr::single(v("a"), TypeExpr::int()),
            Formula::and(vec![
                Formula::Eq(v("x"), TypeExpr::int()),
                Formula::implies(
                    ConstraintExpr::single(v("b"), TypeExpr::boolean()),
                    Formula::Eq(v("y"), TypeExpr::boolean()),
                ),
            ]),
        );
        let nf = normalize(&f).unwrap();
        assert_eq!(nf.guarded.len(), 2);
        assert_eq!(nf.guarded[0].guard.eqs.len(), 1);
        assert_eq!(nf.guarded[1].guard.eqs.len(), 2);
    }

    #[test]
    fn known_entries_merge_per_subject() {
        let e1 = Formula::Or(
            Box::new(Formula::Known(v("t1"))),
            Box::new(Formula::Eq(v("t1"), TypeExpr::int())),
        );
        let e2 = Formula::Or(
            Box::new(Formula::Known(v("t1"))),
            Box::new(Formula::Eq(v("t1"), TypeExpr::boolean())),
        );
        let nf = normalize(&Formula::and(vec![e1, e2])).unwrap();
        assert_eq!(nf.known_part.len(), 1);
        let alt = nf.known_part[0].alt.as_ref().unwrap();
        assert_eq!(alt.eqs.len(), 2);
    }

    #[test]
    fn output_shape_no_nested_guards() {
        // normalize output: guards are simple, bodies are simple
        let f = Formula::forall(
            vec!["b".into()],
            Formula::implies(
                ConstraintExpr::single(v("a"), v("b")),
                Formula::implies(
                    ConstraintExpr::single(v("c"), TypeExpr::int()),
                    Formula::and(vec![
                        Formula::Eq(v("x"), v("b")),
                        Formula::Eq(v("y"), v("c")),
                    ]),
                ),
            ),
        );
        let nf = normalize(&f).unwrap();
        for g in &nf.guarded {
            assert!(!g.guard.eqs.is_empty());
            assert!(!g.body.eqs.is_empty());
        }
    }
}
