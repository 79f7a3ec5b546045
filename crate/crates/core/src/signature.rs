use std::collections::{BTreeMap, BTreeSet};

use crate::term::{INNER_BIND, INNER_UNIT};
use crate::types::{Scheme, Type};

/// Base types every signature knows about.
pub const STANDARD_BASES: [&str; 4] = ["e", "t", "s", "g"];

/// Declared base types and typed constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    bases: BTreeSet<String>,
    constants: BTreeMap<String, Type>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::empty()
    }
}

impl Signature {
    /// The standard bases and no constants.
    pub fn empty() -> Signature {
        Signature {
            bases: STANDARD_BASES.iter().map(|b| b.to_string()).collect(),
            constants: BTreeMap::new(),
        }
    }

    /// The constants used throughout the examples and shipped corpus.
    pub fn standard() -> Signature {
        let e = Type::e;
        let t = Type::t;
        let et = || Type::arrow(e(), t());
        let mut sig = Signature::empty();
        for name in ["John", "Mary", "Bill"] {
            sig.insert(name, e());
        }
        sig.insert("smoke", et());
        sig.insert("like", Type::arrows([e(), e()], t()));
        sig.insert("hate", Type::arrows([e(), e()], t()));
        sig.insert("forall", Type::arrow(et(), t()));
        sig.insert("exists", Type::arrow(et(), t()));
        sig.insert("true", t());
        sig.insert("false", t());
        sig.insert("not", Type::arrow(t(), t()));
        sig.insert("and", Type::arrows([t(), t()], t()));
        sig.insert("or", Type::arrows([t(), t()], t()));
        sig.insert("know", Type::arrows([Type::s(), Type::arrow(Type::s(), t()), e()], t()));
        sig.insert("pro", Type::arrow(Type::g(), e()));
        sig
    }

    pub fn declare_base(&mut self, name: &str) {
        self.bases.insert(name.to_string());
    }

    pub fn insert(&mut self, name: &str, ty: Type) -> Option<Type> {
        self.constants.insert(name.to_string(), ty)
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.constants.get(name)
    }

    pub fn is_base(&self, name: &str) -> bool {
        self.bases.contains(name)
    }

    pub fn bases(&self) -> impl Iterator<Item = &str> {
        self.bases.iter().map(String::as_str)
    }

    pub fn constants(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.constants.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Base names mentioned by `ty` that were never declared.
    pub fn undeclared_bases(&self, ty: &Type) -> Vec<String> {
        let mut out = Vec::new();
        collect_bases(ty, &mut out);
        out.retain(|b| !self.is_base(b));
        out
    }
}

fn collect_bases(ty: &Type, out: &mut Vec<String>) {
    match ty {
        Type::Base(b) => {
            if !out.contains(b) {
                out.push(b.clone());
            }
        }
        Type::Arrow(d, c) => {
            collect_bases(d, out);
            collect_bases(c, out);
        }
        Type::Con(_, a) => collect_bases(a, out),
        Type::Var(_) | Type::Terminal => {}
    }
}

/// Polymorphic schemes of the symbolic inner-monad operators.
pub fn inner_op_scheme(name: &str) -> Option<Scheme> {
    let a = || Type::var("a");
    let b = || Type::var("b");
    match name {
        INNER_UNIT => Some(Scheme::poly(Type::arrow(a(), Type::inner(a())))),
        INNER_BIND => Some(Scheme::poly(Type::arrows(
            [Type::inner(a()), Type::arrow(a(), Type::inner(b()))],
            Type::inner(b()),
        ))),
        _ => None,
    }
}
