//! Type inference for a small functional language with guarded recursive
//! data types: constraint generation, unification under a mixed prefix,
//! missing-annotation diagnostics, incremental solution building and
//! principal-type testing.

pub mod ast;
pub mod desugar;
pub mod enumerate;
pub mod env;
pub mod formula;
pub mod gen;
pub mod known;
pub mod lexer;
pub mod names;
pub mod normalize;
pub mod parser;
pub mod pipeline;
pub mod principal;
pub mod subst;
pub mod types;
pub mod unify;

pub use formula::{Formula, NormalForm, Prefix, Quant};
pub use names::{NameOrder, NameSupply};
pub use subst::Substitution;
pub use types::{ConstraintExpr, Equation, Scheme, TypeExpr};
