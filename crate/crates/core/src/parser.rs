//! Recursive-descent parser for the mini-language.
//!
//! Haskell-flavored concrete syntax: `data` declarations with per-constructor
//! guards, `primitive` signatures, closed and partial (`_`) annotations and
//! clause-style function definitions. One item per line at bracket depth
//! zero; `;` and `{ }` work as explicit separators.

use std::collections::BTreeSet;

use crate::ast::{
    Annotation, Binding, ConstructorSig, Expr, GadtDecl, Loc, PartialType, Pattern, Program,
};
use crate::lexer::{tokenize, ParseError, Tok, Token};
use crate::types::{ConstraintExpr, Equation, Scheme, TypeExpr};

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    p.program()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn loc(&self) -> Loc {
        self.tokens
            .get(self.pos)
            .map(|t| t.loc)
            .unwrap_or_default()
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            loc: self.loc(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Tok::Newline) | Some(Tok::Semi)) {
            self.pos += 1;
        }
    }

    fn at_item_end(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Newline) | Some(Tok::Semi))
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut prog = Program::default();
        let mut pending_annots: Vec<(String, Annotation)> = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None => break,
                Some(Tok::KwData) => {
                    let d = self.data_decl()?;
                    prog.decls.push(d);
                }
                Some(Tok::KwPrimitive) => {
                    self.next();
                    let name = self.lident("primitive name")?;
                    self.expect(Tok::DColon, "'::'")?;
                    let scheme = self.closed_scheme()?;
                    prog.primitives.push((name, scheme));
                }
                Some(Tok::LIdent(_)) if self.peek2() == Some(&Tok::DColon) => {
                    let name = self.lident("binding name")?;
                    self.next(); // ::
                    let annot = self.annotation()?;
                    pending_annots.push((name, annot));
                }
                Some(Tok::LIdent(_)) => {
                    let loc = self.loc();
                    let name = self.lident("binding name")?;
                    let mut pats = Vec::new();
                    while self.peek() != Some(&Tok::Eq) {
                        pats.push(self.atomic_pattern()?);
                    }
                    self.expect(Tok::Eq, "'='")?;
                    let body = self.expr()?;
                    if !self.at_item_end() {
                        return self.err("expected end of definition");
                    }
                    if let Some(b) = prog.bindings.iter_mut().find(|b| b.name == name) {
                        b.clauses.push((pats, body));
                    } else {
                        prog.bindings.push(Binding {
                            name,
                            loc,
                            clauses: vec![(pats, body)],
                            annot: None,
                            body: None,
                        });
                    }
                }
                _ => return self.err("expected a declaration or definition"),
            }
        }
        for (name, annot) in pending_annots {
            match prog.bindings.iter_mut().find(|b| b.name == name) {
                Some(b) => b.annot = Some(annot),
                None => {
                    return Err(ParseError {
                        loc: Loc::default(),
                        msg: format!("annotation for '{name}' has no matching definition"),
                    })
                }
            }
        }
        Ok(prog)
    }

    fn lident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LIdent(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn uident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().cloned() {
            Some(Tok::UIdent(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn data_decl(&mut self) -> Result<GadtDecl, ParseError> {
        self.expect(Tok::KwData, "'data'")?;
        let name = self.uident("type constructor name")?;
        let mut params = Vec::new();
        while let Some(Tok::LIdent(_)) = self.peek() {
            params.push(self.lident("type parameter")?);
        }
        let distinct: BTreeSet<&String> = params.iter().collect();
        if distinct.len() != params.len() {
            return self.err("data parameters must be pairwise distinct");
        }
        self.expect(Tok::Eq, "'='")?;
        let mut constructors = Vec::new();
        loop {
            constructors.push(self.con_decl(&name, &params)?);
            // allow a line break before a continuing '|'
            let save = self.pos;
            self.skip_separators();
            if self.peek() == Some(&Tok::Bar) {
                self.next();
            } else {
                self.pos = save;
                break;
            }
        }
        Ok(GadtDecl {
            name,
            params,
            constructors,
        })
    }

    fn con_decl(&mut self, ty_name: &str, params: &[String]) -> Result<ConstructorSig, ParseError> {
        let mut existentials = Vec::new();
        if self.peek() == Some(&Tok::KwForall) {
            self.next();
            while let Some(Tok::LIdent(_)) = self.peek() {
                existentials.push(self.lident("existential variable")?);
            }
            self.expect(Tok::Dot, "'.'")?;
        }
        for e in &existentials {
            if params.contains(e) {
                return self.err(format!(
                    "existential '{e}' clashes with a parameter of {ty_name}"
                ));
            }
        }
        let mut guard = ConstraintExpr::truth();
        // lookahead: '(' constraint ')' '=>'
        let save = self.pos;
        if self.peek() == Some(&Tok::LParen) {
            if let Ok(c) = self.parenthesized_constraint() {
                if self.peek() == Some(&Tok::FatArrow) {
                    self.next();
                    guard = c;
                } else {
                    self.pos = save;
                }
            } else {
                self.pos = save;
            }
        }
        let name = self.uident("constructor name")?;
        let mut arg_types = Vec::new();
        while self.starts_atype() {
            arg_types.push(self.atype_closed()?);
        }
        let scope: BTreeSet<String> = params
            .iter()
            .chain(existentials.iter())
            .cloned()
            .collect();
        let mut used = guard.free_vars();
        for t in &arg_types {
            used.extend(t.free_vars());
        }
        for v in used {
            if !scope.contains(&v) {
                return self.err(format!(
                    "variable '{v}' in constructor {name} is not bound by the declaration"
                ));
            }
        }
        let arity = arg_types.len();
        let argument = pack_types(arg_types);
        let result = TypeExpr::con(
            ty_name,
            params.iter().map(|p| TypeExpr::var(p.clone())).collect(),
        );
        Ok(ConstructorSig {
            name,
            universals: params.to_vec(),
            existentials,
            guard,
            arity,
            argument,
            result,
        })
    }

    fn parenthesized_constraint(&mut self) -> Result<ConstraintExpr, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut eqs = Vec::new();
        loop {
            let lhs = self.type_expr_closed()?;
            self.expect(Tok::Eq, "'=' in constraint")?;
            let rhs = self.type_expr_closed()?;
            eqs.push(Equation::new(lhs, rhs));
            if self.peek() == Some(&Tok::Comma) {
                self.next();
            } else {
                break;
            }
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(ConstraintExpr::from_eqs(eqs))
    }

    fn annotation(&mut self) -> Result<Annotation, ParseError> {
        let save = self.pos;
        // explicit forall or a guard implies a closed scheme
        if matches!(self.peek(), Some(Tok::KwForall)) {
            return Ok(Annotation::Closed(self.closed_scheme()?));
        }
        let pt = self.partial_type()?;
        if pt.has_hole() {
            if !self.at_item_end() {
                return self.err("unexpected token after annotation");
            }
            return Ok(Annotation::Partial(pt));
        }
        self.pos = save;
        Ok(Annotation::Closed(self.closed_scheme()?))
    }

    /// Closed scheme: optional `forall vs.`, optional `(C) =>`, body type.
    /// Without an explicit forall every named variable is bound.
    fn closed_scheme(&mut self) -> Result<Scheme, ParseError> {
        let mut explicit: Option<Vec<String>> = None;
        if self.peek() == Some(&Tok::KwForall) {
            self.next();
            let mut vs = Vec::new();
            while let Some(Tok::LIdent(_)) = self.peek() {
                vs.push(self.lident("bound variable")?);
            }
            self.expect(Tok::Dot, "'.'")?;
            explicit = Some(vs);
        }
        let mut context = ConstraintExpr::truth();
        let save = self.pos;
        if self.peek() == Some(&Tok::LParen) {
            if let Ok(c) = self.parenthesized_constraint() {
                if self.peek() == Some(&Tok::FatArrow) {
                    self.next();
                    context = c;
                } else {
                    self.pos = save;
                }
            } else {
                self.pos = save;
            }
        }
        let body = self.type_expr_closed()?;
        let mut fv = context.free_vars();
        body.collect_vars(&mut fv);
        let bound = match explicit {
            Some(vs) => {
                for v in &fv {
                    if !vs.contains(v) {
                        return self.err(format!("annotation is not closed: '{v}' is unbound"));
                    }
                }
                vs
            }
            None => fv.into_iter().collect(),
        };
        Ok(Scheme {
            bound,
            context,
            body,
        })
    }

    fn starts_atype(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::LIdent(_)) | Some(Tok::UIdent(_)) | Some(Tok::LParen) | Some(Tok::Underscore)
        )
    }

    fn type_expr_closed(&mut self) -> Result<TypeExpr, ParseError> {
        let pt = self.partial_type()?;
        partial_to_type(&pt).ok_or_else(|| ParseError {
            loc: self.loc(),
            msg: "'_' is only allowed in partial annotations".to_string(),
        })
    }

    fn atype_closed(&mut self) -> Result<TypeExpr, ParseError> {
        let pt = self.partial_atype()?;
        partial_to_type(&pt).ok_or_else(|| ParseError {
            loc: self.loc(),
            msg: "'_' is only allowed in partial annotations".to_string(),
        })
    }

    fn partial_type(&mut self) -> Result<PartialType, ParseError> {
        let lhs = self.partial_btype()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.partial_type()?;
            Ok(PartialType::Arrow(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn partial_btype(&mut self) -> Result<PartialType, ParseError> {
        if let Some(Tok::UIdent(_)) = self.peek() {
            let name = self.uident("type constructor")?;
            let mut args = Vec::new();
            while self.starts_atype() {
                args.push(self.partial_atype()?);
            }
            Ok(PartialType::Con(name, args))
        } else {
            self.partial_atype()
        }
    }

    fn partial_atype(&mut self) -> Result<PartialType, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LIdent(v)) => {
                self.pos += 1;
                Ok(PartialType::Var(v))
            }
            Some(Tok::UIdent(n)) => {
                self.pos += 1;
                Ok(PartialType::Con(n, vec![]))
            }
            Some(Tok::Underscore) => {
                self.pos += 1;
                Ok(PartialType::Hole)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.partial_type()?;
                if self.peek() == Some(&Tok::Comma) {
                    self.next();
                    let second = self.partial_type()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(PartialType::Pair(Box::new(first), Box::new(second)))
                } else {
                    self.expect(Tok::RParen, "')'")?;
                    Ok(first)
                }
            }
            _ => self.err("expected a type"),
        }
    }

    // patterns -------------------------------------------------------------

    fn atomic_pattern(&mut self) -> Result<Pattern, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LIdent(v)) => {
                self.pos += 1;
                Ok(Pattern::PVar(v))
            }
            Some(Tok::UIdent(k)) => {
                self.pos += 1;
                Ok(Pattern::PCon(k, vec![]))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.pattern()?;
                if self.peek() == Some(&Tok::Comma) {
                    self.next();
                    let second = self.pattern()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Pattern::PPair(Box::new(first), Box::new(second)))
                } else {
                    self.expect(Tok::RParen, "')'")?;
                    Ok(first)
                }
            }
            _ => self.err("expected a pattern"),
        }
    }

    fn pattern(&mut self) -> Result<Pattern, ParseError> {
        if let Some(Tok::UIdent(_)) = self.peek() {
            let k = self.uident("constructor")?;
            let mut args = Vec::new();
            while matches!(
                self.peek(),
                Some(Tok::LIdent(_)) | Some(Tok::UIdent(_)) | Some(Tok::LParen)
            ) {
                args.push(self.atomic_pattern()?);
            }
            Ok(Pattern::PCon(k, args))
        } else {
            self.atomic_pattern()
        }
    }

    // expressions ----------------------------------------------------------

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Lambda) => {
                self.next();
                let mut binders = Vec::new();
                while let Some(Tok::LIdent(_)) = self.peek() {
                    binders.push(self.lident("lambda binder")?);
                }
                if binders.is_empty() {
                    return self.err("expected a binder after '\\'");
                }
                self.expect(Tok::Arrow, "'->'")?;
                let mut body = self.expr()?;
                for b in binders.into_iter().rev() {
                    body = Expr::lam(b, body);
                }
                Ok(body)
            }
            Some(Tok::KwCase) => {
                self.next();
                let scrut = self.expr_op()?;
                self.expect(Tok::KwOf, "'of'")?;
                let braced = self.peek() == Some(&Tok::LBrace);
                if braced {
                    self.next();
                }
                let mut clauses = Vec::new();
                loop {
                    let pat = self.pattern()?;
                    self.expect(Tok::Arrow, "'->'")?;
                    let body = self.expr()?;
                    clauses.push((pat, body));
                    if self.peek() == Some(&Tok::Semi) {
                        self.next();
                        continue;
                    }
                    break;
                }
                if braced {
                    self.expect(Tok::RBrace, "'}'")?;
                }
                Ok(Expr::Case(Box::new(scrut), clauses))
            }
            _ => self.expr_op(),
        }
    }

    /// Operator layers: `&&` (lowest), then `>`, then `+`, then application.
    fn expr_op(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.expr_cmp()?;
        if self.peek() == Some(&Tok::AndAnd) {
            self.next();
            let rhs = self.expr_op()?;
            Ok(Expr::app(Expr::app(Expr::Var("&&".into()), lhs), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn expr_cmp(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.expr_add()?;
        if self.peek() == Some(&Tok::Gt) {
            self.next();
            let rhs = self.expr_add()?;
            Ok(Expr::app(Expr::app(Expr::Var(">".into()), lhs), rhs))
        } else {
            Ok(lhs)
        }
    }

    fn expr_add(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.expr_app()?;
        while self.peek() == Some(&Tok::Plus) {
            self.next();
            let rhs = self.expr_app()?;
            lhs = Expr::app(Expr::app(Expr::Var("+".into()), lhs), rhs);
        }
        Ok(lhs)
    }

    fn expr_app(&mut self) -> Result<Expr, ParseError> {
        let mut head = self.expr_atom()?;
        while self.starts_atom() {
            let arg = self.expr_atom()?;
            head = Expr::app(head, arg);
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::LIdent(_))
                | Some(Tok::UIdent(_))
                | Some(Tok::Int(_))
                | Some(Tok::Bool(_))
                | Some(Tok::LParen)
        )
    }

    fn expr_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LIdent(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::UIdent(k)) => {
                self.pos += 1;
                Ok(Expr::ConUse(k, None))
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::IntLit(n))
            }
            Some(Tok::Bool(b)) => {
                self.pos += 1;
                Ok(Expr::BoolLit(b))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.expr()?;
                match self.peek() {
                    Some(Tok::Comma) => {
                        self.next();
                        let second = self.expr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::PairE(Box::new(first), Box::new(second)))
                    }
                    Some(Tok::DColon) => {
                        self.next();
                        let scheme = self.closed_scheme()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Annot(Box::new(first), scheme))
                    }
                    _ => {
                        self.expect(Tok::RParen, "')'")?;
                        Ok(first)
                    }
                }
            }
            _ => self.err("expected an expression"),
        }
    }
}

fn pack_types(mut types: Vec<TypeExpr>) -> Option<TypeExpr> {
    match types.len() {
        0 => None,
        1 => Some(types.remove(0)),
        _ => {
            let last = types.pop().unwrap();
            Some(
                types
                    .into_iter()
                    .rev()
                    .fold(last, |acc, t| TypeExpr::pair(t, acc)),
            )
        }
    }
}

fn partial_to_type(pt: &PartialType) -> Option<TypeExpr> {
    match pt {
        PartialType::Hole => None,
        PartialType::Var(v) => Some(TypeExpr::var(v.clone())),
        PartialType::Arrow(a, b) => Some(TypeExpr::arrow(partial_to_type(a)?, partial_to_type(b)?)),
        PartialType::Pair(a, b) => Some(TypeExpr::pair(partial_to_type(a)?, partial_to_type(b)?)),
        PartialType::Con(n, args) => Some(TypeExpr::con(
            n.clone(),
            args.iter()
                .map(partial_to_type)
                .collect::<Option<Vec<_>>>()?,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_gadt_declaration() {
        let p = parse_program(
            "data Exp a = (a=Int) => Zero | (a=Int) => Succ (Exp Int) | forall b c. (a=(b,c)) => Pair (Exp b) (Exp c)",
        )
        .unwrap();
        assert_eq!(p.decls.len(), 1);
        let d = &p.decls[0];
        assert_eq!(d.constructors.len(), 3);
        let pair = &d.constructors[2];
        assert_eq!(pair.existentials, vec!["b".to_string(), "c".to_string()]);
        assert_eq!(pair.guard.to_string(), "a = (b, c)");
        assert_eq!(
            pair.argument.as_ref().unwrap().to_string(),
            "(Exp b, Exp c)"
        );
    }

    #[test]
    fn parses_identity_binding() {
        let p = parse_program("f = \\x -> x").unwrap();
        assert_eq!(p.bindings.len(), 1);
        assert_eq!(
            p.bindings[0].clauses[0].1,
            Expr::lam("x", Expr::Var("x".into()))
        );
    }

    #[test]
    fn parses_partial_annotation() {
        let p = parse_program("size :: R a -> _\nsize x = 1").unwrap();
        match p.bindings[0].annot.as_ref().unwrap() {
            Annotation::Partial(pt) => {
                assert!(pt.has_hole());
                match pt {
                    PartialType::Arrow(dom, hole) => {
                        assert_eq!(**dom, PartialType::Con("R".into(), vec![PartialType::Var("a".into())]));
                        assert_eq!(**hole, PartialType::Hole);
                    }
                    _ => panic!("expected arrow shape"),
                }
            }
            _ => panic!("expected partial annotation"),
        }
    }

    #[test]
    fn parses_closed_annotation_as_scheme() {
        let p = parse_program("eval :: Exp a -> a\neval x = x").unwrap();
        match p.bindings[0].annot.as_ref().unwrap() {
            Annotation::Closed(s) => {
                assert_eq!(s.bound, vec!["a".to_string()]);
                assert_eq!(s.body.to_string(), "Exp a -> a");
            }
            _ => panic!("expected closed annotation"),
        }
    }

    #[test]
    fn parses_multi_clause_definition() {
        let src = "data Erk a = (a=Int) => I a | (a=Bool) => B a\nf (I x) = x + 1\nf (B x) = x && True";
        let p = parse_program(src).unwrap();
        assert_eq!(p.bindings.len(), 1);
        assert_eq!(p.bindings[0].clauses.len(), 2);
    }

    #[test]
    fn parses_case_with_braces() {
        let src = "h = \\x -> case x of { I z -> z + 1 ; B z -> z && True }";
        let p = parse_program(src).unwrap();
        match &p.bindings[0].clauses[0].1 {
            Expr::Lam(_, body) => match body.as_ref() {
                Expr::Case(_, clauses) => assert_eq!(clauses.len(), 2),
                _ => panic!("expected case"),
            },
            _ => panic!("expected lambda"),
        }
    }

    #[test]
    fn rejects_unbound_constructor_variable() {
        let err = parse_program("data T a = (b=Int) => K a").unwrap_err();
        assert!(err.msg.contains("not bound"));
    }

    #[test]
    fn parses_operator_precedence() {
        // z + 1 > 0 && b  parses as ((z+1) > 0) && b
        let p = parse_program("g = \\z b -> z + 1 > 0 && b").unwrap();
        let body = match &p.bindings[0].clauses[0].1 {
            Expr::Lam(_, b1) => match b1.as_ref() {
                Expr::Lam(_, b2) => b2.as_ref().clone(),
                _ => panic!(),
            },
            _ => panic!(),
        };
        match body {
            Expr::App(f, _) => match *f {
                Expr::App(op, _) => assert_eq!(*op, Expr::Var("&&".into())),
                _ => panic!("expected && at top"),
            },
            _ => panic!("expected application"),
        }
    }
}
