//! Monads and the monad-generic composition operators.
//!
//! A monad is either a *term monad*, whose unit and bind are λ-term schemas
//! in the type variables `a` and `b`, or a *set monad* (powerset and pointed
//! powerset), which exists only at the level of model values.

mod carrier;
mod cont;
mod laws;
mod set;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use carrier::{apply_a, apply_am, apply_am_prime, Body, Carrier, SymbolicCarrier, ValueCarrier};
pub use cont::{eps, eps_in, everyone, reset, shift};
pub use laws::{check_monad_laws, symbolic_laws, Exhaustive, Law, LawReport, LawResult};
pub use set::{PointedPowerset, Powerset, SetMonad};

use crate::kernel::{beta, type_of_closed, KernelError};
use crate::model::{ModelError, SemType};
use crate::signature::Signature;
use crate::syntax::{parse_term, parse_type, ParseError};
use crate::term::Term;
use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MonadError {
    #[error("unknown monad `{0}`")]
    UnknownMonad(String),
    #[error("`{0}` is not a term monad")]
    NotATermMonad(String),
    #[error("`{0}` is not a continuation monad")]
    NotContinuation(String),
    #[error("expected {expected}, got {got}")]
    TypeMismatch { expected: String, got: String },
    #[error("{0} is not a type of the form M a for this monad")]
    NotMonadic(String),
    #[error("bad monad parameter: {0}")]
    BadParameter(#[from] ParseError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl MonadError {
    pub(crate) fn mismatch(expected: impl fmt::Display, got: impl fmt::Display) -> MonadError {
        MonadError::TypeMismatch {
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }
}

/// Which family a term monad belongs to; the parameter is ρ or ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    Identity,
    Reader(Type),
    Cont(Type),
    /// Produced by applying a monad morphism.
    Derived,
}

/// A monad given by a type constructor and λ-term schemas.
///
/// `ctor` mentions the type variable `a`; `unit` is polymorphic in `a` and
/// `bind` in `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermMonad {
    name: String,
    kind: TermKind,
    ctor: Type,
    unit: Term,
    bind: Term,
}

pub(crate) fn schema_map(alpha: &Type, beta: Option<&Type>) -> HashMap<String, Type> {
    let mut map = HashMap::from([("a".to_string(), alpha.clone())]);
    if let Some(beta) = beta {
        map.insert("b".to_string(), beta.clone());
    }
    map
}

impl TermMonad {
    /// Builds a monad and checks that its schemas have the unit and bind
    /// types for the given constructor.
    pub fn new(name: &str, kind: TermKind, ctor: Type, unit: Term, bind: Term) -> Result<TermMonad, MonadError> {
        let m = TermMonad {
            name: name.to_string(),
            kind,
            ctor,
            unit,
            bind,
        };
        let a = Type::var("a");
        let b = Type::var("b");
        let unit_ty = type_of_closed(&m.unit)?;
        let expected = Type::arrow(a.clone(), m.ctor_at(&a));
        if unit_ty != expected {
            return Err(MonadError::mismatch(expected, unit_ty));
        }
        let bind_ty = type_of_closed(&m.bind)?;
        let expected = Type::arrows([m.ctor_at(&a), Type::arrow(a.clone(), m.ctor_at(&b))], m.ctor_at(&b));
        if bind_ty != expected {
            return Err(MonadError::mismatch(expected, bind_ty));
        }
        Ok(m)
    }

    fn from_source(name: &str, kind: TermKind, ctor: &str, unit: &str, bind: &str) -> TermMonad {
        let sig = Signature::standard();
        let ctor = parse_type(ctor, &sig).expect("valid constructor");
        let unit = parse_term(unit, &sig).expect("valid unit");
        let bind = parse_term(bind, &sig).expect("valid bind");
        TermMonad::new(name, kind, ctor, unit, bind).expect("well-typed monad")
    }

    /// `M a = a`, `η(x) = x`, `m ⋆ k = k m`.
    pub fn identity() -> TermMonad {
        TermMonad::from_source(
            "identity",
            TermKind::Identity,
            "a",
            "\\x:a. x",
            "\\m:a. \\k:a -> b. k m",
        )
    }

    /// `M a = ρ -> a`, `η(x) = λw.x`, `m ⋆ k = λw.k (m w) w`.
    pub fn reader(rho: Type) -> TermMonad {
        TermMonad::from_source(
            &format!("reader:{rho}"),
            TermKind::Reader(rho.clone()),
            &format!("{rho} -> a"),
            &format!("\\x:a. \\w:{rho}. x"),
            &format!("\\m:{rho} -> a. \\k:a -> {rho} -> b. \\w:{rho}. k (m w) w"),
        )
    }

    /// `M a = (a -> ω) -> ω`, `η(x) = λc.c x`, `m ⋆ k = λc.m (λx.k x c)`.
    pub fn cont(omega: Type) -> TermMonad {
        TermMonad::from_source(
            &format!("cont:{omega}"),
            TermKind::Cont(omega.clone()),
            &format!("(a -> {omega}) -> {omega}"),
            &format!("\\x:a. \\c:a -> {omega}. c x"),
            &format!(
                "\\m:(a -> {omega}) -> {omega}. \\k:a -> (b -> {omega}) -> {omega}. \\c:b -> {omega}. m (\\x:a. k x c)"
            ),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &TermKind {
        &self.kind
    }

    /// The constructor as a type in the variable `a`.
    pub fn ctor(&self) -> &Type {
        &self.ctor
    }

    pub fn unit_schema(&self) -> &Term {
        &self.unit
    }

    pub fn bind_schema(&self) -> &Term {
        &self.bind
    }

    pub fn ctor_at(&self, alpha: &Type) -> Type {
        self.ctor.subst_vars(&schema_map(alpha, None))
    }

    /// `η` at type `alpha`.
    pub fn unit_at(&self, alpha: &Type) -> Term {
        let map = schema_map(alpha, None);
        self.unit.map_types(&|t| t.subst_vars(&map))
    }

    /// `⋆` at types `alpha`, `beta`.
    pub fn bind_at(&self, alpha: &Type, beta: &Type) -> Term {
        let map = schema_map(alpha, Some(beta));
        self.bind.map_types(&|t| t.subst_vars(&map))
    }

    /// Recovers `a` from a type of the form `M a`.
    pub fn unwrap_type(&self, ty: &Type) -> Option<Type> {
        let mut map = HashMap::new();
        if self.ctor.match_against(ty, &mut map) {
            map.remove("a")
        } else {
            None
        }
    }

    /// Renames the monad, e.g. after building it from a morphism.
    pub fn renamed(mut self, name: &str) -> TermMonad {
        self.name = name.to_string();
        self
    }

    pub fn with_kind(mut self, kind: TermKind) -> TermMonad {
        self.kind = kind;
        self
    }
}

impl fmt::Display for TermMonad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M a = {}", self.ctor)?;
        writeln!(f, "unit = {}", self.unit)?;
        write!(f, "bind = {}", self.bind)
    }
}

/// One of the registered monads.
#[derive(Clone, Debug)]
pub enum MonadDef {
    Term(Arc<TermMonad>),
    Set(Arc<dyn SetMonad>),
}

impl MonadDef {
    pub fn term(m: TermMonad) -> MonadDef {
        MonadDef::Term(Arc::new(m))
    }

    pub fn identity() -> MonadDef {
        MonadDef::term(TermMonad::identity())
    }

    pub fn reader(rho: Type) -> MonadDef {
        MonadDef::term(TermMonad::reader(rho))
    }

    pub fn cont(omega: Type) -> MonadDef {
        MonadDef::term(TermMonad::cont(omega))
    }

    pub fn powerset() -> MonadDef {
        MonadDef::Set(Arc::new(Powerset))
    }

    pub fn pointed_powerset() -> MonadDef {
        MonadDef::Set(Arc::new(PointedPowerset))
    }

    /// Looks up `identity`, `powerset`, `pointed-powerset`, `reader:X` or
    /// `cont:X`, where `X` is a type.
    pub fn lookup(name: &str) -> Result<MonadDef, MonadError> {
        let sig = Signature::standard();
        match name.split_once(':') {
            Some(("reader", p)) => Ok(MonadDef::reader(parse_type(p, &sig)?)),
            Some(("cont", p)) => Ok(MonadDef::cont(parse_type(p, &sig)?)),
            None => match name {
                "identity" => Ok(MonadDef::identity()),
                "powerset" => Ok(MonadDef::powerset()),
                "pointed-powerset" => Ok(MonadDef::pointed_powerset()),
                _ => Err(MonadError::UnknownMonad(name.to_string())),
            },
            _ => Err(MonadError::UnknownMonad(name.to_string())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonadDef::Term(m) => m.name().to_string(),
            MonadDef::Set(m) => m.name().to_string(),
        }
    }

    pub fn as_term(&self) -> Result<&TermMonad, MonadError> {
        match self {
            MonadDef::Term(m) => Ok(m),
            MonadDef::Set(m) => Err(MonadError::NotATermMonad(m.name().to_string())),
        }
    }

    pub fn is_set(&self) -> bool {
        matches!(self, MonadDef::Set(_))
    }

    /// `M α` in the model.
    pub fn carrier(&self, alpha: &SemType) -> Result<SemType, MonadError> {
        match self {
            MonadDef::Set(m) => Ok(m.carrier(alpha)),
            MonadDef::Term(m) => {
                let ty = alpha
                    .to_type()
                    .ok_or_else(|| MonadError::NotMonadic(alpha.to_string()))?;
                Ok(SemType::from_type(&m.ctor_at(&ty))?)
            }
        }
    }
}

/// `η(a)` for a term monad, β-normalized.
pub fn unit(m: &TermMonad, a: &Term, alpha: &Type) -> Result<Term, MonadError> {
    let ty = type_of_term(a)?;
    if &ty != alpha {
        return Err(MonadError::mismatch(alpha, ty));
    }
    Ok(beta(&Term::app(m.unit_at(alpha), a.clone())))
}

/// `mv ⋆ k` for a term monad, β-normalized.
pub fn bind(m: &TermMonad, mv: &Term, k: &Term, alpha: &Type, beta_ty: &Type) -> Result<Term, MonadError> {
    let expected = m.ctor_at(alpha);
    let got = type_of_term(mv)?;
    if got != expected {
        return Err(MonadError::mismatch(expected, got));
    }
    let expected = Type::arrow(alpha.clone(), m.ctor_at(beta_ty));
    let got = type_of_term(k)?;
    if got != expected {
        return Err(MonadError::mismatch(expected, got));
    }
    Ok(beta(&Term::apps(m.bind_at(alpha, beta_ty), [mv.clone(), k.clone()])))
}

/// The intension (up) operator and variable abstraction are both the
/// reader monad's unit.
pub fn intension(m: &TermMonad, a: &Term, alpha: &Type) -> Result<Term, MonadError> {
    match m.kind() {
        TermKind::Reader(_) => unit(m, a, alpha),
        _ => Err(MonadError::NotATermMonad(format!("{} (not a reader)", m.name()))),
    }
}

/// Type of a term whose free variables carry no types of their own: free
/// variables are not allowed.
fn type_of_term(t: &Term) -> Result<Type, MonadError> {
    Ok(type_of_closed(t)?)
}
