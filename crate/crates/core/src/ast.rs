//! Surface abstract syntax.

use std::collections::BTreeSet;

use crate::types::{ConstraintExpr, Scheme, TypeExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Loc {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Loc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    /// Constructor used as a value, fully saturated by the desugarer.
    ConUse(String, Option<Box<Expr>>),
    App(Box<Expr>, Box<Expr>),
    Lam(String, Box<Expr>),
    Case(Box<Expr>, Vec<(Pattern, Expr)>),
    Rec(String, Box<Expr>, Option<Annotation>),
    Annot(Box<Expr>, Scheme),
    PairE(Box<Expr>, Box<Expr>),
    IntLit(i64),
    BoolLit(bool),
}

impl Expr {
    pub fn app(f: Expr, a: Expr) -> Expr {
        Expr::App(Box::new(f), Box::new(a))
    }

    pub fn lam(x: impl Into<String>, body: Expr) -> Expr {
        Expr::Lam(x.into(), Box::new(body))
    }

    /// Free program identifiers (variables and constructor names).
    pub fn free_idents(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Expr::ConUse(k, arg) => {
                out.insert(k.clone());
                if let Some(a) = arg {
                    a.collect_free(bound, out);
                }
            }
            Expr::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Expr::Lam(x, b) => {
                let added = bound.insert(x.clone());
                b.collect_free(bound, out);
                if added {
                    bound.remove(x);
                }
            }
            Expr::Case(scrut, clauses) => {
                scrut.collect_free(bound, out);
                for (p, e) in clauses {
                    let mut vars = BTreeSet::new();
                    p.collect_vars(&mut vars);
                    for k in p.constructors() {
                        out.insert(k);
                    }
                    let added: Vec<String> =
                        vars.into_iter().filter(|v| bound.insert(v.clone())).collect();
                    e.collect_free(bound, out);
                    for v in added {
                        bound.remove(&v);
                    }
                }
            }
            Expr::Rec(f, b, _) => {
                let added = bound.insert(f.clone());
                b.collect_free(bound, out);
                if added {
                    bound.remove(f);
                }
            }
            Expr::Annot(e, _) => e.collect_free(bound, out),
            Expr::PairE(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Expr::IntLit(_) | Expr::BoolLit(_) => {}
        }
    }

    /// True when a case expression occurs inside a case clause body.
    pub fn has_nested_case(&self) -> Option<Loc> {
        self.nested_case_walk(false)
    }

    fn nested_case_walk(&self, in_clause: bool) -> Option<Loc> {
        match self {
            Expr::Case(scrut, clauses) => {
                if in_clause {
                    return Some(Loc::default());
                }
                if let Some(l) = scrut.nested_case_walk(in_clause) {
                    return Some(l);
                }
                for (_, e) in clauses {
                    if let Some(l) = e.nested_case_walk(true) {
                        return Some(l);
                    }
                }
                None
            }
            Expr::App(f, a) => f
                .nested_case_walk(in_clause)
                .or_else(|| a.nested_case_walk(in_clause)),
            Expr::Lam(_, b) | Expr::Rec(_, b, _) | Expr::Annot(b, _) => {
                b.nested_case_walk(in_clause)
            }
            Expr::ConUse(_, Some(a)) => a.nested_case_walk(in_clause),
            Expr::PairE(a, b) => a
                .nested_case_walk(in_clause)
                .or_else(|| b.nested_case_walk(in_clause)),
            _ => None,
        }
    }

    pub fn has_annotation(&self) -> bool {
        match self {
            Expr::Annot(..) => true,
            Expr::App(f, a) => f.has_annotation() || a.has_annotation(),
            Expr::Lam(_, b) => b.has_annotation(),
            Expr::Rec(_, b, annot) => annot.is_some() || b.has_annotation(),
            Expr::Case(s, cs) => {
                s.has_annotation() || cs.iter().any(|(_, e)| e.has_annotation())
            }
            Expr::ConUse(_, Some(a)) => a.has_annotation(),
            Expr::PairE(a, b) => a.has_annotation() || b.has_annotation(),
            _ => false,
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.free_idents().contains(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pattern {
    PVar(String),
    PPair(Box<Pattern>, Box<Pattern>),
    /// Constructor pattern; after desugaring the argument list is empty
    /// (nullary) or a single packed pattern.
    PCon(String, Vec<Pattern>),
}

impl Pattern {
    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Pattern::PVar(v) => {
                out.insert(v.clone());
            }
            Pattern::PPair(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Pattern::PCon(_, args) => {
                for p in args {
                    p.collect_vars(out);
                }
            }
        }
    }

    pub fn constructors(&self) -> Vec<String> {
        match self {
            Pattern::PVar(_) => vec![],
            Pattern::PPair(a, b) => {
                let mut out = a.constructors();
                out.extend(b.constructors());
                out
            }
            Pattern::PCon(k, args) => {
                let mut out = vec![k.clone()];
                for p in args {
                    out.extend(p.constructors());
                }
                out
            }
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Pattern::PVar(_))
    }
}

/// A closed scheme or a partial shape with holes.
#[derive(Debug, Clone, PartialEq)]
pub enum Annotation {
    Closed(Scheme),
    Partial(PartialType),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartialType {
    Hole,
    Var(String),
    Arrow(Box<PartialType>, Box<PartialType>),
    Con(String, Vec<PartialType>),
    Pair(Box<PartialType>, Box<PartialType>),
}

impl PartialType {
    pub fn has_hole(&self) -> bool {
        match self {
            PartialType::Hole => true,
            PartialType::Var(_) => false,
            PartialType::Arrow(a, b) | PartialType::Pair(a, b) => a.has_hole() || b.has_hole(),
            PartialType::Con(_, args) => args.iter().any(|a| a.has_hole()),
        }
    }

    pub fn named_vars(&self) -> BTreeSet<String> {
        match self {
            PartialType::Hole => BTreeSet::new(),
            PartialType::Var(v) => [v.clone()].into_iter().collect(),
            PartialType::Arrow(a, b) | PartialType::Pair(a, b) => {
                let mut out = a.named_vars();
                out.extend(b.named_vars());
                out
            }
            PartialType::Con(_, args) => {
                args.iter().flat_map(|a| a.named_vars()).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructorSig {
    pub name: String,
    /// Result-type parameters of the data declaration.
    pub universals: Vec<String>,
    /// Per-constructor existentials.
    pub existentials: Vec<String>,
    pub guard: ConstraintExpr,
    /// Declared argument count before pair-packing.
    pub arity: usize,
    pub argument: Option<TypeExpr>,
    /// Head of the result: Con(decl-name, params).
    pub result: TypeExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadtDecl {
    pub name: String,
    pub params: Vec<String>,
    pub constructors: Vec<ConstructorSig>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: String,
    pub loc: Loc,
    /// Clause list as parsed: argument patterns and right-hand side.
    pub clauses: Vec<(Vec<Pattern>, Expr)>,
    pub annot: Option<Annotation>,
    /// Desugared body, filled by `desugar`.
    pub body: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Program {
    pub decls: Vec<GadtDecl>,
    /// `primitive name :: type` declarations.
    pub primitives: Vec<(String, Scheme)>,
    pub bindings: Vec<Binding>,
}
