//! Initial type environment: constructor schemes, built-in primitives and
//! declared primitive signatures.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ast::{ConstructorSig, Program};
use crate::types::{ConstraintExpr, Scheme, TypeExpr};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EnvError {
    #[error("duplicate constructor '{0}'")]
    DuplicateConstructor(String),
    #[error("duplicate binding '{0}'")]
    DuplicateBinding(String),
}

#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub constructors: BTreeMap<String, ConstructorSig>,
    pub values: BTreeMap<String, Scheme>,
}

impl Environment {
    pub fn lookup_value(&self, name: &str) -> Option<&Scheme> {
        self.values.get(name)
    }

    pub fn lookup_constructor(&self, name: &str) -> Option<&ConstructorSig> {
        self.constructors.get(name)
    }

    pub fn bind_value(&mut self, name: impl Into<String>, scheme: Scheme) {
        self.values.insert(name.into(), scheme);
    }

    /// Scheme form of a constructor: forall a-bar b-bar. D => t -> T a-bar
    /// (nullary constructors drop the argument).
    pub fn constructor_scheme(sig: &ConstructorSig) -> Scheme {
        let body = match &sig.argument {
            Some(arg) => TypeExpr::arrow(arg.clone(), sig.result.clone()),
            None => sig.result.clone(),
        };
        let mut bound = sig.universals.clone();
        bound.extend(sig.existentials.iter().cloned());
        Scheme {
            bound,
            context: sig.guard.clone(),
            body,
        }
    }

    /// Free type variables of every monomorphic value binding; polymorphic
    /// schemes contribute their residual free variables.
    pub fn free_type_vars(&self) -> std::collections::BTreeSet<String> {
        self.values
            .values()
            .flat_map(|s| s.free_vars())
            .collect()
    }
}

/// Build the initial environment from a parsed program: constructor
/// signatures, built-in primitives and declared `primitive` bindings.
pub fn constructor_env(program: &Program) -> Result<Environment, EnvError> {
    let mut env = Environment::default();
    for decl in &program.decls {
        for sig in &decl.constructors {
            if env
                .constructors
                .insert(sig.name.clone(), sig.clone())
                .is_some()
            {
                return Err(EnvError::DuplicateConstructor(sig.name.clone()));
            }
        }
    }
    let int = TypeExpr::int;
    let boolean = TypeExpr::boolean;
    env.bind_value(
        "+",
        Scheme::mono(TypeExpr::arrow(int(), TypeExpr::arrow(int(), int()))),
    );
    env.bind_value(
        "&&",
        Scheme::mono(TypeExpr::arrow(
            boolean(),
            TypeExpr::arrow(boolean(), boolean()),
        )),
    );
    env.bind_value(
        ">",
        Scheme::mono(TypeExpr::arrow(int(), TypeExpr::arrow(int(), boolean()))),
    );
    for (name, scheme) in &program.primitives {
        if env.values.contains_key(name) {
            return Err(EnvError::DuplicateBinding(name.clone()));
        }
        env.bind_value(name.clone(), scheme.clone());
    }
    Ok(env)
}

/// Declared argument count of a constructor (before pair-packing).
pub fn constructor_arity(sig: &ConstructorSig) -> usize {
    sig.arity
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    #[test]
    fn example_constructor_schemes() {
        let p = parse_program("data Exp a = (a=Int) => Zero | (a=Int) => Succ (Exp Int)").unwrap();
        let env = constructor_env(&p).unwrap();
        let zero = Environment::constructor_scheme(env.lookup_constructor("Zero").unwrap());
        assert_eq!(zero.display_canonical(), "forall a. (a = Int) => Exp a");
        let succ = Environment::constructor_scheme(env.lookup_constructor("Succ").unwrap());
        assert_eq!(
            succ.display_canonical(),
            "forall a. (a = Int) => Exp Int -> Exp a"
        );
    }

    #[test]
    fn erk_constructor_scheme() {
        let p = parse_program("data Erk a = (a=Int) => I a | (a=Bool) => B a").unwrap();
        let env = constructor_env(&p).unwrap();
        let i = Environment::constructor_scheme(env.lookup_constructor("I").unwrap());
        assert_eq!(i.display_canonical(), "forall a. (a = Int) => a -> Erk a");
    }

    #[test]
    fn plain_adt_gets_empty_guard() {
        let p = parse_program("data T a = K a").unwrap();
        let env = constructor_env(&p).unwrap();
        let k = Environment::constructor_scheme(env.lookup_constructor("K").unwrap());
        assert_eq!(k.display_canonical(), "forall a. a -> T a");
        assert!(k.context.is_truth());
    }

    #[test]
    fn duplicate_constructor_rejected() {
        let p = parse_program("data T a = K a\ndata U b = K b").unwrap();
        assert_eq!(
            constructor_env(&p).unwrap_err(),
            EnvError::DuplicateConstructor("K".into())
        );
    }
}
