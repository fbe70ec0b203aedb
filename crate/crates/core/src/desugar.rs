//! Desugaring: clause groups become `rec f in \args. case ...`, constructor
//! applications are saturated, multi-argument constructors are packed into
//! nested pairs.

use thiserror::Error;

use crate::ast::{Binding, Expr, Pattern, Program};
use crate::env::Environment;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DesugarError {
    #[error("clauses of '{name}' differ in argument count ({first} vs {second})")]
    ClauseArityMismatch {
        name: String,
        first: usize,
        second: usize,
    },
    #[error("constructor '{con}' expects {expected} arguments, got {got}")]
    ArityError {
        con: String,
        expected: usize,
        got: usize,
    },
    #[error("unbound constructor '{0}'")]
    UnboundConstructor(String),
    #[error("duplicate variable '{0}' in pattern")]
    NonLinearPattern(String),
}

/// Desugar every binding in the program. Bodies end up wrapped in `Rec`
/// regardless of self-reference; the monomorphic rule makes the wrapper
/// harmless for non-recursive bodies.
pub fn desugar(program: &Program, env: &Environment) -> Result<Program, DesugarError> {
    let mut out = program.clone();
    for b in &mut out.bindings {
        let body = desugar_binding(b, env)?;
        b.body = Some(Expr::Rec(
            b.name.clone(),
            Box::new(body),
            b.annot.clone(),
        ));
    }
    Ok(out)
}

fn desugar_binding(b: &Binding, env: &Environment) -> Result<Expr, DesugarError> {
    let arity = b.clauses[0].0.len();
    for (pats, _) in &b.clauses {
        if pats.len() != arity {
            return Err(DesugarError::ClauseArityMismatch {
                name: b.name.clone(),
                first: arity,
                second: pats.len(),
            });
        }
    }
    // single clause, all-variable patterns: a plain lambda chain
    if b.clauses.len() == 1 && b.clauses[0].0.iter().all(|p| p.is_var()) {
        let (pats, rhs) = &b.clauses[0];
        let mut body = desugar_expr(rhs, env)?;
        for p in pats.iter().rev() {
            match p {
                Pattern::PVar(v) => body = Expr::lam(v.clone(), body),
                _ => unreachable!(),
            }
        }
        return Ok(body);
    }
    if arity == 0 {
        // several clauses with no arguments makes no sense; treat as a
        // clause arity problem
        if b.clauses.len() > 1 {
            return Err(DesugarError::ClauseArityMismatch {
                name: b.name.clone(),
                first: 0,
                second: 0,
            });
        }
        return desugar_expr(&b.clauses[0].1, env);
    }
    let mut used: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    for (pats, rhs) in &b.clauses {
        used.extend(rhs.free_idents());
        for p in pats {
            p.collect_vars(&mut used);
        }
    }
    let binders: Vec<String> = (1..=arity)
        .map(|i| {
            let mut name = format!("v{i}");
            while used.contains(&name) {
                name.push('\'');
            }
            name
        })
        .collect();
    let scrutinee = pack_exprs(binders.iter().map(|v| Expr::Var(v.clone())).collect());
    let mut clauses = Vec::new();
    for (pats, rhs) in &b.clauses {
        let packed = pack_patterns(
            pats.iter()
                .map(|p| desugar_pattern(p, env))
                .collect::<Result<Vec<_>, _>>()?,
        );
        check_linear(&packed)?;
        clauses.push((packed, desugar_expr(rhs, env)?));
    }
    let mut body = Expr::Case(Box::new(scrutinee), clauses);
    for v in binders.iter().rev() {
        body = Expr::lam(v.clone(), body);
    }
    Ok(body)
}

fn check_linear(p: &Pattern) -> Result<(), DesugarError> {
    let mut seen = std::collections::BTreeSet::new();
    fn walk(
        p: &Pattern,
        seen: &mut std::collections::BTreeSet<String>,
    ) -> Result<(), DesugarError> {
        match p {
            Pattern::PVar(v) => {
                if !seen.insert(v.clone()) {
                    return Err(DesugarError::NonLinearPattern(v.clone()));
                }
                Ok(())
            }
            Pattern::PPair(a, b) => {
                walk(a, seen)?;
                walk(b, seen)
            }
            Pattern::PCon(_, args) => {
                for a in args {
                    walk(a, seen)?;
                }
                Ok(())
            }
        }
    }
    walk(p, &mut seen)
}

fn pack_exprs(mut items: Vec<Expr>) -> Expr {
    let last = items.pop().unwrap();
    items
        .into_iter()
        .rev()
        .fold(last, |acc, e| Expr::PairE(Box::new(e), Box::new(acc)))
}

fn pack_patterns(mut items: Vec<Pattern>) -> Pattern {
    let last = items.pop().unwrap();
    items
        .into_iter()
        .rev()
        .fold(last, |acc, p| Pattern::PPair(Box::new(p), Box::new(acc)))
}

/// Pack a constructor pattern's arguments; checks declared arity.
fn desugar_pattern(p: &Pattern, env: &Environment) -> Result<Pattern, DesugarError> {
    match p {
        Pattern::PVar(_) => Ok(p.clone()),
        Pattern::PPair(a, b) => Ok(Pattern::PPair(
            Box::new(desugar_pattern(a, env)?),
            Box::new(desugar_pattern(b, env)?),
        )),
        Pattern::PCon(k, args) => {
            let sig = env
                .lookup_constructor(k)
                .ok_or_else(|| DesugarError::UnboundConstructor(k.clone()))?;
            if sig.arity != args.len() {
                return Err(DesugarError::ArityError {
                    con: k.clone(),
                    expected: sig.arity,
                    got: args.len(),
                });
            }
            let packed = args
                .iter()
                .map(|a| desugar_pattern(a, env))
                .collect::<Result<Vec<_>, _>>()?;
            if packed.is_empty() {
                Ok(Pattern::PCon(k.clone(), vec![]))
            } else {
                Ok(Pattern::PCon(k.clone(), vec![pack_patterns(packed)]))
            }
        }
    }
}

/// Saturate constructor uses: an application spine headed by a constructor
/// must supply exactly the declared argument count, which is then packed
/// into nested pairs.
fn desugar_expr(e: &Expr, env: &Environment) -> Result<Expr, DesugarError> {
    // collect the application spine
    let mut spine = Vec::new();
    let mut head = e;
    while let Expr::App(f, a) = head {
        spine.push(a.as_ref());
        head = f;
    }
    spine.reverse();
    if let Expr::ConUse(k, None) = head {
        let sig = env
            .lookup_constructor(k)
            .ok_or_else(|| DesugarError::UnboundConstructor(k.clone()))?;
        if sig.arity != spine.len() {
            return Err(DesugarError::ArityError {
                con: k.clone(),
                expected: sig.arity,
                got: spine.len(),
            });
        }
        let args = spine
            .iter()
            .map(|a| desugar_expr(a, env))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(if args.is_empty() {
            Expr::ConUse(k.clone(), None)
        } else {
            Expr::ConUse(k.clone(), Some(Box::new(pack_exprs(args))))
        });
    }
    match e {
        Expr::App(f, a) => Ok(Expr::app(desugar_expr(f, env)?, desugar_expr(a, env)?)),
        Expr::Var(_) | Expr::IntLit(_) | Expr::BoolLit(_) => Ok(e.clone()),
        Expr::ConUse(k, None) => {
            // nullary use outside an application spine is handled above;
            // reaching here means head position with zero args
            let sig = env
                .lookup_constructor(k)
                .ok_or_else(|| DesugarError::UnboundConstructor(k.clone()))?;
            if sig.arity != 0 {
                return Err(DesugarError::ArityError {
                    con: k.clone(),
                    expected: sig.arity,
                    got: 0,
                });
            }
            Ok(e.clone())
        }
        Expr::ConUse(k, Some(arg)) => Ok(Expr::ConUse(
            k.clone(),
            Some(Box::new(desugar_expr(arg, env)?)),
        )),
        Expr::Lam(x, b) => Ok(Expr::lam(x.clone(), desugar_expr(b, env)?)),
        Expr::Case(scrut, clauses) => {
            let s = desugar_expr(scrut, env)?;
            let cs = clauses
                .iter()
                .map(|(p, body)| {
                    let dp = desugar_pattern(p, env)?;
                    check_linear(&dp)?;
                    Ok((dp, desugar_expr(body, env)?))
                })
                .collect::<Result<Vec<_>, DesugarError>>()?;
            Ok(Expr::Case(Box::new(s), cs))
        }
        Expr::Rec(f, b, annot) => Ok(Expr::Rec(
            f.clone(),
            Box::new(desugar_expr(b, env)?),
            annot.clone(),
        )),
        Expr::Annot(inner, s) => Ok(Expr::Annot(
            Box::new(desugar_expr(inner, env)?),
            s.clone(),
        )),
        Expr::PairE(a, b) => Ok(Expr::PairE(
            Box::new(desugar_expr(a, env)?),
            Box::new(desugar_expr(b, env)?),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::constructor_env;
    use crate::parser::parse_program;

    fn run(src: &str) -> Result<Program, DesugarError> {
        let p = parse_program(src).unwrap();
        let env = constructor_env(&p).unwrap();
        desugar(&p, &env)
    }

    #[test]
    fn single_clause_becomes_rec_lambda() {
        let p = run("g x = x").unwrap();
        match p.bindings[0].body.as_ref().unwrap() {
            Expr::Rec(name, body, None) => {
                assert_eq!(name, "g");
                assert_eq!(**body, Expr::lam("x", Expr::Var("x".into())));
            }
            other => panic!("unexpected desugaring: {other:?}"),
        }
    }

    #[test]
    fn two_clauses_become_case() {
        let src = "data Erk a = (a=Int) => I a | (a=Bool) => B a\nf (I x) = x + 1\nf (B x) = x && True";
        let p = run(src).unwrap();
        match p.bindings[0].body.as_ref().unwrap() {
            Expr::Rec(_, body, _) => match body.as_ref() {
                Expr::Lam(v, inner) => match inner.as_ref() {
                    Expr::Case(scrut, clauses) => {
                        assert_eq!(**scrut, Expr::Var(v.clone()));
                        assert_eq!(clauses.len(), 2);
                    }
                    other => panic!("expected case, got {other:?}"),
                },
                other => panic!("expected lambda, got {other:?}"),
            },
            other => panic!("expected rec, got {other:?}"),
        }
    }

    #[test]
    fn eval_clauses_form_three_branches() {
        let src = "data Exp a = (a=Int) => Zero | (a=Int) => Succ (Exp Int) | forall b c. (a=(b,c)) => Pair (Exp b) (Exp c)\n\
                   eval Zero = 0\neval (Succ e) = (eval e) + 1\neval (Pair x y) = (eval x, eval y)";
        let p = run(src).unwrap();
        match p.bindings[0].body.as_ref().unwrap() {
            Expr::Rec(_, body, _) => match body.as_ref() {
                Expr::Lam(_, inner) => match inner.as_ref() {
                    Expr::Case(_, clauses) => {
                        assert_eq!(clauses.len(), 3);
                        // Pair pattern packs its two arguments
                        match &clauses[2].0 {
                            Pattern::PCon(k, args) => {
                                assert_eq!(k, "Pair");
                                assert!(matches!(args[0], Pattern::PPair(..)));
                            }
                            other => panic!("unexpected pattern {other:?}"),
                        }
                    }
                    other => panic!("expected case, got {other:?}"),
                },
                other => panic!("expected lambda, got {other:?}"),
            },
            other => panic!("expected rec, got {other:?}"),
        }
    }

    #[test]
    fn free_idents_preserved() {
        let src = "data Erk a = (a=Int) => I a | (a=Bool) => B a\nf (I x) = g (x + 1)\nf (B x) = x && h";
        let parsed = parse_program(src).unwrap();
        let env = constructor_env(&parsed).unwrap();
        let before: std::collections::BTreeSet<String> = parsed.bindings[0]
            .clauses
            .iter()
            .flat_map(|(pats, rhs)| {
                let mut bound = std::collections::BTreeSet::new();
                for p in pats {
                    p.collect_vars(&mut bound);
                }
                rhs.free_idents()
                    .into_iter()
                    .filter(move |v| !bound.contains(v))
                    .collect::<Vec<_>>()
            })
            .collect();
        let after = desugar(&parsed, &env).unwrap().bindings[0]
            .body
            .as_ref()
            .unwrap()
            .free_idents();
        // desugaring may add the function's own name (rec) but no other ids
        for v in &before {
            assert!(after.contains(v) || v == "f", "lost identifier {v}");
        }
        for v in &after {
            assert!(
                before.contains(v) || v == "f" || v == "I" || v == "B",
                "invented identifier {v}"
            );
        }
    }

    #[test]
    fn clause_arity_mismatch_detected() {
        let err = run("f x y = x\nf z = z").unwrap_err();
        assert!(matches!(err, DesugarError::ClauseArityMismatch { .. }));
    }

    #[test]
    fn constructor_arity_checked_in_expressions() {
        let src = "data Exp a = (a=Int) => Succ (Exp Int)\nf = \\x -> Succ";
        let err = run(src).unwrap_err();
        assert_eq!(
            err,
            DesugarError::ArityError {
                con: "Succ".into(),
                expected: 1,
                got: 0
            }
        );
    }

    #[test]
    fn nonlinear_pattern_rejected() {
        let src = "data T a = K (a, a)\nf (K (x, x)) = x";
        let err = run(src).unwrap_err();
        assert_eq!(err, DesugarError::NonLinearPattern("x".into()));
    }
}
