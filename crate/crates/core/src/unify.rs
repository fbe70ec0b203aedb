//! Unification under a mixed prefix, the three-step solve procedure,
//! skolemization, entailment and equivalence checks.
//!
//! Scope discipline: an existential variable may only be bound to a term
//! whose universal variables are quantified before it; universal variables
//! are rigid. Variables free in the constraint are treated as outermost
//! existentials. Guard discharge (solve step 2, branch refinement) instead
//! uses plain unification: inside an implication hypothesis every variable
//! is a refinement unknown.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{GuardedImplication, NormalForm, Prefix, Quant};
use crate::names::NameOrder;
use crate::subst::Substitution;
use crate::types::{ConstraintExpr, Equation, TypeExpr, SKOLEM_PREFIX};

/// Positions of prefix variables. Free variables sit at position 0,
/// blocks count from 1 outside in.
#[derive(Debug, Clone, Default)]
pub struct PrefixInfo {
    pos: BTreeMap<String, usize>,
    universal: BTreeSet<String>,
}

impl PrefixInfo {
    pub fn new(prefix: &Prefix) -> Self {
        let mut pos = BTreeMap::new();
        let mut universal = BTreeSet::new();
        for (i, (q, vars)) in prefix.blocks.iter().enumerate() {
            for v in vars {
                pos.insert(v.clone(), i + 1);
                if *q == Quant::Forall {
                    universal.insert(v.clone());
                }
            }
        }
        PrefixInfo { pos, universal }
    }

    /// Everything flexible: plain first-order unification.
    pub fn all_flexible() -> Self {
        PrefixInfo::default()
    }

    fn position(&self, v: &str) -> usize {
        self.pos.get(v).copied().unwrap_or(0)
    }

    fn is_universal(&self, v: &str) -> bool {
        self.universal.contains(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailCause {
    OccursCheck,
    Clash(String, String),
    ScopeViolation(String, String),
}

impl fmt::Display for FailCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailCause::OccursCheck => write!(f, "occurs check"),
            FailCause::Clash(a, b) => write!(f, "cannot match {a} against {b}"),
            FailCause::ScopeViolation(v, u) => {
                write!(f, "{v} cannot mention {u} (quantified later)")
            }
        }
    }
}

/// Unification failure with the derived offending equation and the input
/// equation it decomposed from.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("{cause}: in {equation} (from {origin})")]
pub struct UnifyFail {
    pub cause: FailCause,
    pub equation: Equation,
    pub origin: Equation,
}

impl UnifyFail {
    /// Minimal offending chain, outermost origin first.
    pub fn chain(&self) -> Vec<Equation> {
        if self.origin == self.equation {
            vec![self.equation.clone()]
        } else {
            vec![self.origin.clone(), self.equation.clone()]
        }
    }
}

struct Unifier<'a> {
    info: &'a PrefixInfo,
    order: &'a NameOrder,
    bind: BTreeMap<String, TypeExpr>,
}

impl<'a> Unifier<'a> {
    fn resolve(&self, t: &TypeExpr) -> TypeExpr {
        match t {
            TypeExpr::Var(v) => match self.bind.get(v) {
                Some(next) => self.resolve(next),
                None => t.clone(),
            },
            TypeExpr::Arrow(a, b) => TypeExpr::arrow(self.resolve(a), self.resolve(b)),
            TypeExpr::Pair(a, b) => TypeExpr::pair(self.resolve(a), self.resolve(b)),
            TypeExpr::Con(n, args) => {
                TypeExpr::con(n.clone(), args.iter().map(|x| self.resolve(x)).collect())
            }
        }
    }

    fn fail(&self, cause: FailCause, eq: &Equation, origin: &Equation) -> UnifyFail {
        UnifyFail {
            cause,
            equation: eq.clone(),
            origin: origin.clone(),
        }
    }

    fn bind_var(
        &mut self,
        v: &str,
        t: TypeExpr,
        eq: &Equation,
        origin: &Equation,
    ) -> Result<(), UnifyFail> {
        if t.contains_var(v) {
            return Err(self.fail(FailCause::OccursCheck, eq, origin));
        }
        if self.info.is_universal(v) {
            // rigid: only reachable when t is a non-variable term
            return Err(self.fail(FailCause::Clash(v.to_string(), t.head()), eq, origin));
        }
        let vpos = self.info.position(v);
        for u in t.free_vars() {
            if self.info.is_universal(&u) && self.info.position(&u) >= vpos {
                return Err(self.fail(
                    FailCause::ScopeViolation(v.to_string(), u.clone()),
                    eq,
                    origin,
                ));
            }
        }
        self.bind.insert(v.to_string(), t);
        Ok(())
    }

    fn unify_pair(
        &mut self,
        lhs: &TypeExpr,
        rhs: &TypeExpr,
        origin: &Equation,
    ) -> Result<(), UnifyFail> {
        let a = self.resolve(lhs);
        let b = self.resolve(rhs);
        if a == b {
            return Ok(());
        }
        let eq = Equation::new(a.clone(), b.clone());
        match (&a, &b) {
            (TypeExpr::Var(x), TypeExpr::Var(y)) => {
                let xu = self.info.is_universal(x);
                let yu = self.info.is_universal(y);
                match (xu, yu) {
                    (true, true) => {
                        Err(self.fail(FailCause::Clash(x.clone(), y.clone()), &eq, origin))
                    }
                    (true, false) => self.bind_var(y, a.clone(), &eq, origin),
                    (false, true) => self.bind_var(x, b.clone(), &eq, origin),
                    (false, false) => {
                        // bind the newer variable, keep the older as representative
                        if self.order.older(x, y) {
                            self.bind_var(y, a.clone(), &eq, origin)
                        } else {
                            self.bind_var(x, b.clone(), &eq, origin)
                        }
                    }
                }
            }
            (TypeExpr::Var(x), _) => self.bind_var(x, b.clone(), &eq, origin),
            (_, TypeExpr::Var(y)) => self.bind_var(y, a.clone(), &eq, origin),
            (TypeExpr::Arrow(a1, b1), TypeExpr::Arrow(a2, b2))
            | (TypeExpr::Pair(a1, b1), TypeExpr::Pair(a2, b2)) => {
                self.unify_pair(a1, a2, origin)?;
                self.unify_pair(b1, b2, origin)
            }
            (TypeExpr::Con(n1, args1), TypeExpr::Con(n2, args2))
                if n1 == n2 && args1.len() == args2.len() =>
            {
                for (x, y) in args1.iter().zip(args2.iter()) {
                    self.unify_pair(x, y, origin)?;
                }
                Ok(())
            }
            _ => Err(self.fail(FailCause::Clash(a.head(), b.head()), &eq, origin)),
        }
    }
}

pub fn unify_with(
    eqs: &[Equation],
    info: &PrefixInfo,
    order: &NameOrder,
) -> Result<Substitution, UnifyFail> {
    let mut u = Unifier {
        info,
        order,
        bind: BTreeMap::new(),
    };
    for eq in eqs {
        u.unify_pair(&eq.lhs, &eq.rhs, eq)?;
    }
    Ok(Substitution::from_triangular(u.bind))
}

/// M.g.u. under a mixed prefix. Free variables are outermost existentials.
pub fn mgu_mixed(
    prefix: &Prefix,
    c: &ConstraintExpr,
    order: &NameOrder,
) -> Result<Substitution, UnifyFail> {
    let info = PrefixInfo::new(prefix);
    unify_with(&c.eqs, &info, order)
}

/// Plain syntactic m.g.u., every variable flexible. Used to discharge
/// implication hypotheses, where universals are refinement unknowns.
pub fn plain_mgu(c: &ConstraintExpr, order: &NameOrder) -> Option<Substitution> {
    let info = PrefixInfo::all_flexible();
    unify_with(&c.eqs, &info, order).ok()
}

pub fn satisfiable(prefix: &Prefix, c: &ConstraintExpr, order: &NameOrder) -> bool {
    mgu_mixed(prefix, c, order).is_ok()
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("solve failed at step {step}: {fail}")]
pub struct SolveFail {
    /// 1 or 3; step-2 guard failures are not errors.
    pub step: u8,
    pub fail: UnifyFail,
}

/// Everything the diagnostics need from a solve run: the conjunction the
/// failing (or final) unification attempted, and the outcome.
#[derive(Debug, Clone)]
pub struct SolveTrace {
    pub attempted: ConstraintExpr,
    pub result: Result<Substitution, SolveFail>,
}

/// Three-step solve of a normal form:
/// (1) m.g.u. phi of C0 under the prefix,
/// (2) E_i = phi_i . phi (C_i) when phi(D_i) has a plain m.g.u. phi_i,
///     E_i = True otherwise,
/// (3) m.g.u. psi of C0 /\ E_1 /\ ... /\ E_n under the prefix.
pub fn solve(nf: &NormalForm, order: &NameOrder) -> Result<Substitution, SolveFail> {
    solve_trace(nf, order).result
}

pub fn solve_trace(nf: &NormalForm, order: &NameOrder) -> SolveTrace {
    let phi = match mgu_mixed(&nf.prefix, &nf.c0, order) {
        Ok(s) => s,
        Err(fail) => {
            return SolveTrace {
                attempted: nf.c0.clone(),
                result: Err(SolveFail { step: 1, fail }),
            }
        }
    };
    let mut step3 = nf.c0.clone();
    for g in &nf.guarded {
        let guard = phi.apply_constraint(&g.guard);
        if let Some(rho) = plain_mgu(&guard, order) {
            let body = rho.apply_constraint(&phi.apply_constraint(&g.body));
            step3.extend(&body);
        }
    }
    let result = mgu_mixed(&nf.prefix, &step3, order)
        .map_err(|fail| SolveFail { step: 3, fail });
    SolveTrace {
        attempted: step3,
        result,
    }
}

/// Replace universals by skolem terms over the existentials in scope
/// (free variables count as outermost existentials); existentials are
/// freed. Returns the quantifier-free matrix and the skolem map.
pub fn skolemize(nf: &NormalForm) -> (NormalForm, BTreeMap<String, TypeExpr>) {
    let mut seen_exists: Vec<TypeExpr> = nf
        .free_vars()
        .into_iter()
        .map(TypeExpr::var)
        .collect();
    let mut map: BTreeMap<String, TypeExpr> = BTreeMap::new();
    let mut counter = 0usize;
    for (q, vars) in &nf.prefix.blocks {
        match q {
            Quant::Exists => {
                seen_exists.extend(vars.iter().map(|v| TypeExpr::var(v.clone())));
            }
            Quant::Forall => {
                for v in vars {
                    counter += 1;
                    map.insert(
                        v.clone(),
                        TypeExpr::con(format!("{SKOLEM_PREFIX}{counter}"), seen_exists.clone()),
                    );
                }
            }
        }
    }
    let sk = Substitution::from_triangular(map.clone());
    let matrix = NormalForm {
        prefix: Prefix::new(),
        c0: sk.apply_constraint(&nf.c0),
        guarded: nf
            .guarded
            .iter()
            .map(|g| GuardedImplication {
                univs: vec![],
                guard: sk.apply_constraint(&g.guard),
                body: sk.apply_constraint(&g.body),
            })
            .collect(),
        known_part: nf
            .known_part
            .iter()
            .map(|k| crate::formula::KnownEntry {
                subject: sk.apply(&k.subject),
                alt: k.alt.as_ref().map(|a| sk.apply_constraint(a)),
            })
            .collect(),
    };
    (matrix, map)
}

#[derive(Debug, Clone, Error, PartialEq)]
#[error("unsatisfiable: {0}")]
pub struct Unsatisfiable(pub UnifyFail);

/// True iff Q.(c => e) is valid: the m.g.u. of c maps both sides of every
/// equation of e to identical terms.
pub fn entails_eq(
    prefix: &Prefix,
    c: &ConstraintExpr,
    e: &ConstraintExpr,
    order: &NameOrder,
) -> Result<bool, Unsatisfiable> {
    let phi = mgu_mixed(prefix, c, order).map_err(Unsatisfiable)?;
    Ok(e.eqs
        .iter()
        .all(|eq| phi.apply(&eq.lhs) == phi.apply(&eq.rhs)))
}

/// Equivalence of two constraints with respect to a variable set: their
/// m.g.u.s agree on every variable of `vars`, up to a consistent renaming
/// of variables outside `vars`. Both unsatisfiable counts as equivalent.
pub fn equiv_wrt(
    c1: &ConstraintExpr,
    c2: &ConstraintExpr,
    vars: &BTreeSet<String>,
    order: &NameOrder,
) -> bool {
    match (plain_mgu(c1, order), plain_mgu(c2, order)) {
        (None, None) => true,
        (Some(m1), Some(m2)) => {
            let mut fwd: BTreeMap<String, String> = BTreeMap::new();
            let mut bwd: BTreeMap<String, String> = BTreeMap::new();
            vars.iter().all(|v| {
                match_mod_renaming(&m1.lookup(v), &m2.lookup(v), vars, &mut fwd, &mut bwd)
            })
        }
        _ => false,
    }
}

fn match_mod_renaming(
    a: &TypeExpr,
    b: &TypeExpr,
    fixed: &BTreeSet<String>,
    fwd: &mut BTreeMap<String, String>,
    bwd: &mut BTreeMap<String, String>,
) -> bool {
    match (a, b) {
        (TypeExpr::Var(x), TypeExpr::Var(y)) => {
            if fixed.contains(x) || fixed.contains(y) {
                x == y
            } else {
                let ok_f = fwd.entry(x.clone()).or_insert_with(|| y.clone()) == y;
                let ok_b = bwd.entry(y.clone()).or_insert_with(|| x.clone()) == x;
                ok_f && ok_b
            }
        }
        (TypeExpr::Arrow(a1, b1), TypeExpr::Arrow(a2, b2))
        | (TypeExpr::Pair(a1, b1), TypeExpr::Pair(a2, b2)) => {
            match_mod_renaming(a1, a2, fixed, fwd, bwd)
                && match_mod_renaming(b1, b2, fixed, fwd, bwd)
        }
        (TypeExpr::Con(n1, args1), TypeExpr::Con(n2, args2)) => {
            n1 == n2
                && args1.len() == args2.len()
                && args1
                    .iter()
                    .zip(args2)
                    .all(|(x, y)| match_mod_renaming(x, y, fixed, fwd, bwd))
        }
        _ => false,
    }
}

/// Why a candidate solution (or annotation) fails to validate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum HoldsFailure {
    #[error("base constraints unsolvable: {0}")]
    Base(UnifyFail),
    #[error("branch {index} not satisfiable under its guard: {fail}")]
    Branch { index: usize, fail: UnifyFail },
    #[error("branch requirements conflict: {0}")]
    Consistency(UnifyFail),
}

/// Validity check for `Q. base /\ (D_i => C_i)` with the base forced:
/// solve the base under the prefix, then for every branch discharge the
/// guard by plain m.g.u. (refinement of rigid variables is allowed inside
/// a hypothesis) and require the transported body solvable under the
/// prefix; finally re-check all branch bindings jointly against the base.
pub fn holds(
    prefix: &Prefix,
    base: &ConstraintExpr,
    guarded: &[GuardedImplication],
    order: &NameOrder,
) -> Result<(), HoldsFailure> {
    let phi = mgu_mixed(prefix, base, order).map_err(HoldsFailure::Base)?;
    let mut commits = base.clone();
    for (index, g) in guarded.iter().enumerate() {
        let guard = phi.apply_constraint(&g.guard);
        let rho = match plain_mgu(&guard, order) {
            Some(r) => r,
            None => continue, // guard can never fire
        };
        let body = rho.apply_constraint(&phi.apply_constraint(&g.body));
        let sigma = mgu_mixed(prefix, &body, order)
            .map_err(|fail| HoldsFailure::Branch { index, fail })?;
        commits.extend(&sigma.to_equations());
    }
    mgu_mixed(prefix, &commits, order)
        .map(|_| ())
        .map_err(HoldsFailure::Consistency)
}

/// Deletion-based minimal unsatisfiable subset of `c` under the prefix.
/// None when satisfiable.
pub fn min_unsat_subset(
    prefix: &Prefix,
    c: &ConstraintExpr,
    order: &NameOrder,
) -> Option<Vec<Equation>> {
    if satisfiable(prefix, c, order) {
        return None;
    }
    let mut kept: Vec<Equation> = c.eqs.clone();
    let mut i = 0;
    while i < kept.len() {
        let mut trial = kept.clone();
        trial.remove(i);
        if !satisfiable(prefix, &ConstraintExpr::from_eqs(trial.clone()), order) {
            kept = trial;
        } else {
            i += 1;
        }
    }
    Some(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> TypeExpr {
        TypeExpr::var(n)
    }

    fn eqs(list: Vec<(TypeExpr, TypeExpr)>) -> ConstraintExpr {
        ConstraintExpr::from_eqs(list.into_iter().map(|(a, b)| Equation::new(a, b)).collect())
    }

    fn ord(names: &[&str]) -> NameOrder {
        NameOrder::from_names(names.iter().copied())
    }

    #[test]
    fn identity_under_universal() {
        // forall a: a=a has the identity m.g.u.
        let mut p = Prefix::new();
        p.push(Quant::Forall, vec!["a".into()]);
        let s = mgu_mixed(&p, &eqs(vec![(v("a"), v("a"))]), &ord(&["a"])).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn universal_rigid_against_structure() {
        let mut p = Prefix::new();
        p.push(Quant::Forall, vec!["b".into(), "c".into()]);
        let c = eqs(vec![(
            TypeExpr::con("R", vec![TypeExpr::pair(v("b"), v("c"))]),
            TypeExpr::con("R", vec![v("b")]),
        )]);
        let err = mgu_mixed(&p, &c, &ord(&["b", "c"])).unwrap_err();
        // (b,c) against rigid b: decomposes to a pair-vs-universal clash
        assert!(matches!(
            err.cause,
            FailCause::Clash(..) | FailCause::OccursCheck
        ));
        assert_eq!(err.origin.to_string(), "R (b, c) = R b");
    }

    #[test]
    fn scope_violation_exists_before_forall() {
        // exists t. forall b: t=b has no unifier
        let mut p = Prefix::new();
        p.push(Quant::Exists, vec!["t".into()]);
        p.push(Quant::Forall, vec!["b".into()]);
        let err = mgu_mixed(&p, &eqs(vec![(v("t"), v("b"))]), &ord(&["t", "b"])).unwrap_err();
        assert_eq!(
            err.cause,
            FailCause::ScopeViolation("t".into(), "b".into())
        );
    }

    #[test]
    fn free_var_is_outermost() {
        // free t, forall b: t=b fails; within-branch a5=b succeeds when a5
        // is quantified after b
        let mut p = Prefix::new();
        p.push(Quant::Forall, vec!["b".into()]);
        p.push(Quant::Exists, vec!["a5".into()]);
        assert!(mgu_mixed(&p, &eqs(vec![(v("t"), v("b"))]), &ord(&["t", "b"])).is_err());
        let s = mgu_mixed(&p, &eqs(vec![(v("a5"), v("b"))]), &ord(&["b", "a5"])).unwrap();
        assert_eq!(s.lookup("a5"), v("b"));
    }

    #[test]
    fn occurs_check_fires() {
        let p = Prefix::new();
        let c = eqs(vec![(v("t"), TypeExpr::arrow(v("t"), v("u")))]);
        let err = mgu_mixed(&p, &c, &ord(&["t", "u"])).unwrap_err();
        assert_eq!(err.cause, FailCause::OccursCheck);
    }

    #[test]
    fn soundness_result_yields_identities() {
        let p = Prefix::new();
        let c = eqs(vec![
            (v("t"), TypeExpr::arrow(v("a"), v("b"))),
            (v("a"), TypeExpr::int()),
            (TypeExpr::arrow(v("a"), v("b")), TypeExpr::arrow(v("a"), TypeExpr::boolean())),
        ]);
        let s = mgu_mixed(&p, &c, &ord(&["t", "a", "b"])).unwrap();
        for eq in &c.eqs {
            assert_eq!(s.apply(&eq.lhs), s.apply(&eq.rhs));
        }
    }

    #[test]
    fn plain_mgu_refines_universals() {
        // guard discharge: a=(b,c) with a outer existential, b c universal
        let mut p = Prefix::new();
        p.push(Quant::Exists, vec!["a".into()]);
        p.push(Quant::Forall, vec!["b".into(), "c".into()]);
        let c = eqs(vec![(v("a"), TypeExpr::pair(v("b"), v("c")))]);
        assert!(mgu_mixed(&p, &c, &ord(&["a", "b", "c"])).is_err());
        let rho = plain_mgu(&c, &ord(&["a", "b", "c"])).unwrap();
        assert_eq!(rho.lookup("a"), TypeExpr::pair(v("b"), v("c")));
    }

    #[test]
    fn skolemize_zero_ary() {
        // forall a. exists b. b=a->a
        let mut nf = NormalForm::default();
        nf.prefix.push(Quant::Forall, vec!["a".into()]);
        nf.prefix.push(Quant::Exists, vec!["b".into()]);
        nf.c0 = eqs(vec![(v("b"), TypeExpr::arrow(v("a"), v("a")))]);
        let (matrix, map) = skolemize(&nf);
        let sk = &map["a"];
        assert!(sk.is_skolem());
        assert!(matches!(sk, TypeExpr::Con(_, args) if args.is_empty()));
        assert_eq!(
            matrix.c0.eqs[0].rhs,
            TypeExpr::arrow(sk.clone(), sk.clone())
        );
        assert!(matrix.prefix.is_empty());
    }

    #[test]
    fn skolemize_depends_on_prior_exists() {
        // exists b. forall a. ...a...: a becomes sk(b); b = sk(b) then
        // fails the occurs check, like the scoped problem it encodes
        let mut nf = NormalForm::default();
        nf.prefix.push(Quant::Exists, vec!["b".into()]);
        nf.prefix.push(Quant::Forall, vec!["a".into()]);
        nf.c0 = eqs(vec![(v("b"), v("a"))]);
        let (matrix, map) = skolemize(&nf);
        match &map["a"] {
            TypeExpr::Con(_, args) => assert_eq!(args, &vec![v("b")]),
            _ => panic!("expected skolem term"),
        }
        assert!(plain_mgu(&matrix.c0, &ord(&["b", "a"])).is_none());
    }

    #[test]
    fn prefix_free_constraint_unchanged_by_skolemize() {
        let mut nf = NormalForm::default();
        nf.c0 = eqs(vec![(v("x"), TypeExpr::int())]);
        let (matrix, map) = skolemize(&nf);
        assert!(map.is_empty());
        assert_eq!(matrix.c0, nf.c0);
    }

    #[test]
    fn entails_reflexive_and_strict() {
        let p = Prefix::new();
        let o = ord(&["t", "a", "b"]);
        let c = eqs(vec![(v("t"), TypeExpr::pair(v("a"), v("b")))]);
        assert!(entails_eq(&p, &c, &c, &o).unwrap());
        let c2 = eqs(vec![(v("a"), TypeExpr::int())]);
        let e2 = eqs(vec![(v("a"), TypeExpr::boolean())]);
        assert!(!entails_eq(&p, &c2, &e2, &o).unwrap());
    }

    #[test]
    fn equiv_wrt_projects() {
        let o = ord(&["a", "z", "b"]);
        let c1 = eqs(vec![
            (v("a"), TypeExpr::int()),
            (v("z"), TypeExpr::boolean()),
        ]);
        let c2 = eqs(vec![(v("a"), TypeExpr::int())]);
        let vars: BTreeSet<String> = ["a".to_string()].into_iter().collect();
        assert!(equiv_wrt(&c1, &c2, &vars, &o));

        let c3 = eqs(vec![(v("a"), v("b"))]);
        let c4 = eqs(vec![
            (v("a"), TypeExpr::int()),
            (v("b"), TypeExpr::int()),
        ]);
        let vars2: BTreeSet<String> = ["a".to_string(), "b".to_string()].into_iter().collect();
        assert!(!equiv_wrt(&c3, &c4, &vars2, &o));
    }

    #[test]
    fn min_unsat_subset_examples() {
        let p = Prefix::new();
        let o = ord(&["t", "a", "t1"]);
        let c = eqs(vec![
            (v("t"), TypeExpr::arrow(TypeExpr::con("Erk", vec![v("a")]), v("t1"))),
            (v("t1"), TypeExpr::int()),
            (v("t1"), TypeExpr::boolean()),
        ]);
        let mus = min_unsat_subset(&p, &c, &o).unwrap();
        assert_eq!(mus.len(), 2);
        assert!(mus.iter().any(|e| e.to_string() == "t1 = Int"));
        assert!(mus.iter().any(|e| e.to_string() == "t1 = Bool"));

        let sat = eqs(vec![(v("a"), TypeExpr::int())]);
        assert!(min_unsat_subset(&p, &sat, &o).is_none());
    }
}
