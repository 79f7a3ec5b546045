//! Church-style λ-terms.

use std::collections::BTreeSet;
use std::fmt;

use crate::signature::inner_op_scheme;
use crate::types::Type;

/// Inner-monad unit, `unit1 : a -> M1 a`.
pub const INNER_UNIT: &str = "unit1";
/// Inner-monad bind, `bind1 : M1 a -> (a -> M1 b) -> M1 b`.
pub const INNER_BIND: &str = "bind1";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// A signature constant together with the type it is used at.
    Const(String, Type),
    Abs(String, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// The terminal term `!`.
    Unit,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str, ty: Type) -> Term {
        Term::Const(name.to_string(), ty)
    }

    pub fn lam(binder: &str, ty: Type, body: Term) -> Term {
        Term::Abs(binder.to_string(), ty, Box::new(body))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(fun: Term, args: I) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    /// `unit1` instantiated at `alpha`.
    pub fn inner_unit(alpha: Type) -> Term {
        let ty = Type::arrow(alpha.clone(), Type::inner(alpha));
        Term::Const(INNER_UNIT.to_string(), ty)
    }

    /// `bind1` instantiated at `alpha`, `beta`.
    pub fn inner_bind(alpha: Type, beta: Type) -> Term {
        let ty = Type::arrows(
            [
                Type::inner(alpha.clone()),
                Type::arrow(alpha, Type::inner(beta.clone())),
            ],
            Type::inner(beta),
        );
        Term::Const(INNER_BIND.to_string(), ty)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Abs(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Const(..) | Term::Unit => {}
        }
    }

    pub fn occurs_free(&self, name: &str) -> bool {
        match self {
            Term::Var(x) => x == name,
            Term::Abs(x, _, b) => x != name && b.occurs_free(name),
            Term::App(f, a) => f.occurs_free(name) || a.occurs_free(name),
            Term::Const(..) | Term::Unit => false,
        }
    }

    /// Every variable, binder and constant name appearing in the term.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) | Term::Const(x, _) => {
                out.insert(x.clone());
            }
            Term::Abs(x, _, b) => {
                out.insert(x.clone());
                b.collect_names(out);
            }
            Term::App(f, a) => {
                f.collect_names(out);
                a.collect_names(out);
            }
            Term::Unit => {}
        }
    }

    fn mentions_const(&self, name: &str) -> bool {
        match self {
            Term::Const(c, _) => c == name,
            Term::Abs(_, _, b) => b.mentions_const(name),
            Term::App(f, a) => f.mentions_const(name) || a.mentions_const(name),
            Term::Var(_) | Term::Unit => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Abs(_, _, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    /// Applies `f` to every type annotation (binder types and constant types).
    pub fn map_types(&self, f: &dyn Fn(&Type) -> Type) -> Term {
        match self {
            Term::Var(_) | Term::Unit => self.clone(),
            Term::Const(c, ty) => Term::Const(c.clone(), f(ty)),
            Term::Abs(x, ty, b) => Term::Abs(x.clone(), f(ty), Box::new(b.map_types(f))),
            Term::App(g, a) => Term::app(g.map_types(f), a.map_types(f)),
        }
    }

    /// Head and arguments of an application spine.
    pub fn unapply(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Renders the term in conventional mathematical notation, e.g.
    /// `λc.∀x.c(smoke(x))`. Not re-parsable; see `Display` for that.
    pub fn gloss(&self) -> String {
        let mut s = String::new();
        gloss_into(self, &mut s);
        s
    }
}

/// Renames free occurrences of `from` to `to`. `to` must not occur anywhere in
/// `term`, which makes capture impossible.
fn rename_fresh(term: &Term, from: &str, to: &str) -> Term {
    match term {
        Term::Var(x) if x == from => Term::Var(to.to_string()),
        Term::Abs(x, ty, b) if x != from => Term::Abs(x.clone(), ty.clone(), Box::new(rename_fresh(b, from, to))),
        Term::App(f, a) => Term::app(rename_fresh(f, from, to), rename_fresh(a, from, to)),
        _ => term.clone(),
    }
}

fn fmt_term(term: &Term, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
    match term {
        Term::Var(x) => f.write_str(x),
        Term::Unit => f.write_str("!"),
        Term::Const(c, ty) => match inner_op_scheme(c).and_then(|s| s.instance_args(ty)) {
            Some(args) => {
                write!(f, "{c}[")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")
            }
            None => f.write_str(c),
        },
        Term::Abs(x, ty, body) => {
            if prec > 0 {
                f.write_str("(")?;
            }
            if body.mentions_const(x) {
                // a binder must not shadow a constant it scopes over
                let names = body.all_names();
                let mut fresh = format!("{x}'");
                while names.contains(&fresh) {
                    fresh.push('\'');
                }
                let renamed = rename_fresh(body, x, &fresh);
                write!(f, "\\{fresh}:{ty}. ")?;
                fmt_term(&renamed, f, 0)?;
            } else {
                write!(f, "\\{x}:{ty}. ")?;
                fmt_term(body, f, 0)?;
            }
            if prec > 0 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::App(fun, arg) => {
            if prec > 1 {
                f.write_str("(")?;
            }
            fmt_term(fun, f, 1)?;
            f.write_str(" ")?;
            fmt_term(arg, f, 2)?;
            if prec > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, f, 0)
    }
}

fn gloss_into(term: &Term, out: &mut String) {
    let (head, args) = term.unapply();
    match (head, args.as_slice()) {
        (Term::Const(q, _), [Term::Abs(x, _, body)]) if q == "forall" || q == "exists" => {
            out.push(if q == "forall" { '∀' } else { '∃' });
            out.push_str(x);
            out.push('.');
            gloss_into(body, out);
        }
        (Term::Const(b, _), [m, k]) if b == INNER_BIND => {
            out.push('[');
            gloss_into(m, out);
            out.push_str(" ⋆₁ ");
            gloss_into(k, out);
            out.push(']');
        }
        (_, []) => match head {
            Term::Var(x) => out.push_str(x),
            Term::Const(c, _) if c == INNER_UNIT => out.push_str("η₁"),
            Term::Const(c, _) if c == INNER_BIND => out.push_str("⋆₁"),
            Term::Const(c, _) => out.push_str(c),
            Term::Unit => out.push('!'),
            Term::Abs(x, _, b) => {
                out.push('λ');
                out.push_str(x);
                out.push('.');
                gloss_into(b, out);
            }
            Term::App(..) => unreachable!("unapply strips applications"),
        },
        (_, args) => {
            if matches!(head, Term::Abs(..)) {
                out.push('(');
                gloss_into(head, out);
                out.push(')');
            } else {
                gloss_into(head, out);
            }
            for a in args {
                out.push('(');
                gloss_into(a, out);
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn everyone_smokes() -> Term {
        let et = Type::arrow(Type::e(), Type::t());
        Term::lam(
            "c",
            Type::arrow(Type::t(), Type::t()),
            Term::app(
                Term::constant("forall", Type::arrow(et.clone(), Type::t())),
                Term::lam(
                    "x",
                    Type::e(),
                    Term::app(Term::var("c"), Term::app(Term::constant("smoke", et), Term::var("x"))),
                ),
            ),
        )
    }

    #[test]
    fn concrete_syntax_printing() {
        assert_eq!(everyone_smokes().to_string(), "\\c:t -> t. forall (\\x:e. c (smoke x))");
        let t = Term::app(Term::inner_unit(Type::var("a")), Term::var("x"));
        assert_eq!(t.to_string(), "unit1[a] x");
        let t = Term::inner_bind(Type::e(), Type::t());
        assert_eq!(t.to_string(), "bind1[e, t]");
    }

    #[test]
    fn gloss_matches_conventional_notation() {
        assert_eq!(everyone_smokes().gloss(), "λc.∀x.c(smoke(x))");
    }

    #[test]
    fn binder_shadowing_a_constant_is_renamed_when_printed() {
        let t = Term::lam("smoke", Type::e(), Term::constant("smoke", Type::e()));
        assert_eq!(t.to_string(), "\\smoke':e. smoke");
    }

    #[test]
    fn free_vars_respect_binding() {
        let t = Term::lam("x", Type::e(), Term::app(Term::var("f"), Term::var("x")));
        assert_eq!(t.free_vars().into_iter().collect::<Vec<_>>(), vec!["f".to_string()]);
        assert!(!t.occurs_free("x"));
    }
}
