//! Simple types.
//!
//! Types are built from base types (`e`, `t`, `s`, `g` and any declared
//! bases), type variables, the terminal type `1`, arrows, and applications
//! of an opaque monad constructor such as the inner `M1` of a morphism
//! schema. Arrows are kept as a binary tree; the printer renders them
//! right-associated.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Name of the opaque inner-monad constructor used by morphism schemas.
pub const INNER_CTOR: &str = "M1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(String),
    Var(String),
    Terminal,
    Arrow(Box<Type>, Box<Type>),
    /// An unresolved type constructor applied to an argument, e.g. `M1 a`.
    Con(String, Box<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(name.to_string())
    }

    pub fn var(name: &str) -> Type {
        Type::Var(name.to_string())
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), Box::new(cod))
    }

    /// `M1 arg`.
    pub fn inner(arg: Type) -> Type {
        Type::Con(INNER_CTOR.to_string(), Box::new(arg))
    }

    /// Builds `t1 -> t2 -> ... -> cod`.
    pub fn arrows<I: IntoIterator<Item = Type>>(doms: I, cod: Type) -> Type
    where
        I::IntoIter: DoubleEndedIterator,
    {
        doms.into_iter().rev().fold(cod, |acc, d| Type::arrow(d, acc))
    }

    pub fn e() -> Type {
        Type::base("e")
    }

    pub fn t() -> Type {
        Type::base("t")
    }

    pub fn s() -> Type {
        Type::base("s")
    }

    pub fn g() -> Type {
        Type::base("g")
    }

    /// Base types, type variables and the terminal type are all "base" for
    /// the purposes of the monadic translations.
    pub fn is_base(&self) -> bool {
        matches!(self, Type::Base(_) | Type::Var(_) | Type::Terminal)
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }

    /// Splits `t1 -> ... -> tn -> r` into `([t1..tn], r)` with `r` not an arrow.
    pub fn spine(&self) -> (Vec<&Type>, &Type) {
        let mut doms = Vec::new();
        let mut cur = self;
        while let Type::Arrow(d, c) = cur {
            doms.push(d.as_ref());
            cur = c;
        }
        (doms, cur)
    }

    pub fn mentions_con(&self) -> bool {
        match self {
            Type::Con(..) => true,
            Type::Arrow(d, c) => d.mentions_con() || c.mentions_con(),
            _ => false,
        }
    }

    pub fn type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Var(v) => {
                out.insert(v.clone());
            }
            Type::Arrow(d, c) => {
                d.collect_vars(out);
                c.collect_vars(out);
            }
            Type::Con(_, a) => a.collect_vars(out),
            Type::Base(_) | Type::Terminal => {}
        }
    }

    /// Simultaneous substitution of type variables.
    pub fn subst_vars(&self, map: &HashMap<String, Type>) -> Type {
        match self {
            Type::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Type::Arrow(d, c) => Type::arrow(d.subst_vars(map), c.subst_vars(map)),
            Type::Con(n, a) => Type::Con(n.clone(), Box::new(a.subst_vars(map))),
            Type::Base(_) | Type::Terminal => self.clone(),
        }
    }

    /// Replaces every constructor application bottom-up. `f` receives the
    /// constructor name and the already-rewritten argument.
    pub fn map_cons(&self, f: &dyn Fn(&str, Type) -> Type) -> Type {
        match self {
            Type::Con(n, a) => f(n, a.map_cons(f)),
            Type::Arrow(d, c) => Type::arrow(d.map_cons(f), c.map_cons(f)),
            _ => self.clone(),
        }
    }

    /// One-way matching of `self` (a pattern whose variables are bindable)
    /// against `actual`. Bindings accumulate in `map`.
    pub fn match_against(&self, actual: &Type, map: &mut HashMap<String, Type>) -> bool {
        match (self, actual) {
            (Type::Var(v), _) => match map.get(v) {
                Some(bound) => bound == actual,
                None => {
                    map.insert(v.clone(), actual.clone());
                    true
                }
            },
            (Type::Arrow(pd, pc), Type::Arrow(ad, ac)) => pd.match_against(ad, map) && pc.match_against(ac, map),
            (Type::Con(pn, pa), Type::Con(an, aa)) => pn == an && pa.match_against(aa, map),
            _ => self == actual,
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Arrow(..) | Type::Con(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) | Type::Var(n) => f.write_str(n),
            Type::Terminal => f.write_str("1"),
            Type::Con(n, a) => {
                write!(f, "{n} ")?;
                a.fmt_atom(f)
            }
            Type::Arrow(d, c) => {
                match d.as_ref() {
                    Type::Arrow(..) => write!(f, "({d})")?,
                    _ => write!(f, "{d}")?,
                }
                write!(f, " -> {c}")
            }
        }
    }
}

/// A possibly polymorphic type: `vars` may be instantiated freely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    pub vars: Vec<String>,
    pub ty: Type,
}

impl Scheme {
    pub fn mono(ty: Type) -> Scheme {
        Scheme { vars: Vec::new(), ty }
    }

    /// Generalizes over every type variable, in order of first occurrence.
    pub fn poly(ty: Type) -> Scheme {
        let mut vars = Vec::new();
        first_occurrence(&ty, &mut vars);
        Scheme { vars, ty }
    }

    pub fn is_mono(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn instantiate(&self, args: &[Type]) -> Option<Type> {
        if args.len() != self.vars.len() {
            return None;
        }
        let map: HashMap<String, Type> = self.vars.iter().cloned().zip(args.iter().cloned()).collect();
        Some(self.ty.subst_vars(&map))
    }

    /// Recovers the instantiation arguments that produce `actual`, if any.
    pub fn instance_args(&self, actual: &Type) -> Option<Vec<Type>> {
        let mut map = HashMap::new();
        let pattern = self.ty.clone();
        // only scheme variables are bindable; other variables must match literally
        let frozen: HashMap<String, Type> = pattern
            .type_vars()
            .into_iter()
            .filter(|v| !self.vars.contains(v))
            .map(|v| (v.clone(), Type::Var(v)))
            .collect();
        map.extend(frozen);
        if !pattern.match_against(actual, &mut map) {
            return None;
        }
        self.vars.iter().map(|v| map.get(v).cloned()).collect()
    }
}

fn first_occurrence(ty: &Type, out: &mut Vec<String>) {
    match ty {
        Type::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Type::Arrow(d, c) => {
            first_occurrence(d, out);
            first_occurrence(c, out);
        }
        Type::Con(_, a) => first_occurrence(a, out),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_print_right_associated() {
        let ty = Type::arrow(Type::arrow(Type::e(), Type::t()), Type::t());
        assert_eq!(ty.to_string(), "(e -> t) -> t");
        let ty = Type::arrows([Type::e(), Type::e()], Type::t());
        assert_eq!(ty.to_string(), "e -> e -> t");
        assert_eq!(
            Type::arrow(Type::inner(Type::var("a")), Type::Terminal).to_string(),
            "M1 a -> 1"
        );
        assert_eq!(
            Type::inner(Type::arrow(Type::var("a"), Type::t())).to_string(),
            "M1 (a -> t)"
        );
    }

    #[test]
    fn spine_peels_to_first_non_arrow() {
        let ty = Type::arrows([Type::e(), Type::s()], Type::t());
        let (doms, cod) = ty.spine();
        assert_eq!(doms, vec![&Type::e(), &Type::s()]);
        assert_eq!(cod, &Type::t());
    }

    #[test]
    fn scheme_instance_args_roundtrip() {
        let scheme = Scheme::poly(Type::arrows(
            [
                Type::inner(Type::var("a")),
                Type::arrow(Type::var("a"), Type::inner(Type::var("b"))),
            ],
            Type::inner(Type::var("b")),
        ));
        assert_eq!(scheme.vars, vec!["a", "b"]);
        let inst = scheme.instantiate(&[Type::e(), Type::var("a")]).unwrap();
        assert_eq!(scheme.instance_args(&inst).unwrap(), vec![Type::e(), Type::var("a")]);
        assert!(scheme.instance_args(&Type::e()).is_none());
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        let ty = Type::arrow(Type::var("a"), Type::var("b"));
        let map = HashMap::from([("a".to_string(), Type::var("b")), ("b".to_string(), Type::var("a"))]);
        assert_eq!(ty.subst_vars(&map), Type::arrow(Type::var("b"), Type::var("a")));
    }
}
