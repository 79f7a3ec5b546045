//! Mechanical translations of λ-terms over an abstract inner monad
//! `(M1, unit1, bind1)`.
//!
//! The call-by-value translation turns a term monad into a monad morphism.
//! Effects happen only at base types: type variables, the terminal type and
//! declared bases all count as base. The call-by-name (Algol) translation is
//! provided at the level of types and homomorphic terms, together with the
//! check that its output is not a monad unless the inner monad is trivial.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::kernel::{beta, fresh_prime, type_of, type_of_closed, KernelError, TypeEnv};
use crate::monads::{MonadDef, TermMonad};
use crate::term::{Term, INNER_BIND, INNER_UNIT};
use crate::transformers::{instantiate_term, instantiate_type, MonadMorphism, MorphismError};
use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("cannot translate type {0}: only base types and arrows are allowed")]
    UntranslatableType(Type),
    #[error("cannot translate constant `{0}` of function type {1}")]
    UntranslatableConstant(String, Type),
    #[error("`{0}` is not a term monad; only λ-defined monads can be translated")]
    NotATermMonad(String),
    #[error("the translation of {monad} is not a monad morphism: {reason}")]
    NotAMorphism { monad: String, reason: String },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

fn is_base(ty: &Type) -> bool {
    matches!(ty, Type::Base(_) | Type::Var(_) | Type::Terminal)
}

/// The computation translation `⌈τ⌉`.
pub fn cbv_type_comp(ty: &Type) -> Result<Type, TranslationError> {
    match ty {
        Type::Arrow(..) => cbv_type_val(ty),
        Type::Con(..) => Err(TranslationError::UntranslatableType(ty.clone())),
        _ => Ok(Type::inner(ty.clone())),
    }
}

/// The value translation `⌊τ⌋`.
pub fn cbv_type_val(ty: &Type) -> Result<Type, TranslationError> {
    match ty {
        Type::Arrow(d, c) => Ok(Type::arrow(cbv_type_val(d)?, cbv_type_comp(c)?)),
        Type::Con(..) => Err(TranslationError::UntranslatableType(ty.clone())),
        _ => Ok(ty.clone()),
    }
}

/// Typing context for the translation: the source types of free and bound
/// variables.
struct Ctx {
    env: TypeEnv,
}

impl Ctx {
    fn type_of(&self, t: &Term) -> Result<Type, TranslationError> {
        Ok(type_of(t, &self.env)?)
    }

    fn with<T>(&mut self, x: &str, ty: &Type, f: impl FnOnce(&mut Ctx) -> T) -> T {
        let old = self.env.insert(x.to_string(), ty.clone());
        let out = f(self);
        match old {
            Some(old) => self.env.insert(x.to_string(), old),
            None => self.env.remove(x),
        };
        out
    }
}

/// `⌈e⌉` for a term whose free variables are typed by `env`. Fresh
/// variables are `y0`, `y1`, ... at each application node, primed when a
/// name is already free in the operands.
pub fn cbv_term(e: &Term, env: &TypeEnv) -> Result<Term, TranslationError> {
    cbv(e, &mut Ctx { env: env.clone() })
}

pub fn cbv_term_closed(e: &Term) -> Result<Term, TranslationError> {
    cbv_term(e, &TypeEnv::new())
}

fn cbv(e: &Term, ctx: &mut Ctx) -> Result<Term, TranslationError> {
    match e {
        Term::Unit => Ok(Term::app(Term::inner_unit(Type::Terminal), Term::Unit)),
        Term::Var(x) => {
            let ty = ctx.type_of(e)?;
            if ty.as_arrow().is_some() {
                Ok(e.clone())
            } else if is_base(&ty) {
                Ok(Term::app(Term::inner_unit(ty), Term::var(x)))
            } else {
                Err(TranslationError::UntranslatableType(ty))
            }
        }
        Term::Const(c, ty) => {
            if is_base(ty) {
                Ok(Term::app(Term::inner_unit(ty.clone()), e.clone()))
            } else {
                Err(TranslationError::UntranslatableConstant(c.clone(), ty.clone()))
            }
        }
        Term::Abs(x, ty, body) => {
            let dom = cbv_type_val(ty)?;
            let body = ctx.with(x, ty, |ctx| cbv(body, ctx))?;
            Ok(Term::lam(x, dom, body))
        }
        Term::App(e1, e2) => {
            let arg_ty = ctx.type_of(e2)?;
            if arg_ty.as_arrow().is_some() {
                return Ok(Term::app(cbv(e1, ctx)?, cbv(e2, ctx)?));
            }
            if !is_base(&arg_ty) {
                return Err(TranslationError::UntranslatableType(arg_ty));
            }
            let fun_ty = ctx.type_of(e1)?;
            let (_, rest) = fun_ty.as_arrow().expect("well-typed application");
            // rest = τ1 -> ... -> τn -> ι'
            let mut taus = Vec::new();
            let mut cur = rest;
            while let Some((d, c)) = cur.as_arrow() {
                taus.push(d.clone());
                cur = c;
            }
            if !is_base(cur) {
                return Err(TranslationError::UntranslatableType(cur.clone()));
            }
            let result_base = cur.clone();
            let mut taken: BTreeSet<String> = e1.free_vars();
            taken.extend(e2.free_vars());
            let mut names = Vec::with_capacity(taus.len() + 1);
            for i in 0..=taus.len() {
                let base = format!("y{i}");
                let name = if taken.contains(&base) {
                    fresh_prime(&base, &taken)
                } else {
                    base
                };
                taken.insert(name.clone());
                names.push(name);
            }
            let t1 = cbv(e1, ctx)?;
            let t2 = cbv(e2, ctx)?;
            let applied = Term::apps(t1, names.iter().map(|n| Term::var(n)));
            let k = Term::lam(&names[0], arg_ty.clone(), applied);
            let mut out = Term::apps(Term::inner_bind(arg_ty, result_base), [t2, k]);
            for (name, tau) in names[1..].iter().zip(&taus).rev() {
                out = Term::lam(name, cbv_type_val(tau)?, out);
            }
            Ok(out)
        }
    }
}

/// The morphism obtained by translating a term monad: `M2 a = ⌈M0 a⌉`,
/// `unit2 = ⌈unit0⌉`, `bind2 = ⌈bind0⌉` and
/// `lift m = ⌈λf:1 -> a. unit0 (f !)⌉ (λu:1. m)`. The schemas are returned
/// as translated, without any simplification.
pub fn cbv_translate_monad(m0: &MonadDef) -> Result<MonadMorphism, TranslationError> {
    let m0 = match m0 {
        MonadDef::Term(m) => m,
        MonadDef::Set(s) => return Err(TranslationError::NotATermMonad(s.name().to_string())),
    };
    let a = Type::var("a");
    let ctor = cbv_type_comp(m0.ctor())?;
    let unit = cbv_term_closed(m0.unit_schema())?;
    let bind = cbv_term_closed(m0.bind_schema())?;
    let thunk_ty = Type::arrow(Type::Terminal, a.clone());
    let source_lift = Term::lam(
        "f",
        thunk_ty,
        Term::app(m0.unit_at(&a), Term::app(Term::var("f"), Term::Unit)),
    );
    let thunk = Term::lam("u", Type::Terminal, Term::var("m"));
    let lift = Term::lam(
        "m",
        Type::inner(a.clone()),
        Term::app(cbv_term_closed(&source_lift)?, thunk),
    );
    let name = format!("cbv({})", m0.name());
    MonadMorphism::new(&name, ctor, unit, bind, lift).map_err(|e| match e {
        MorphismError::TypeMismatch { what, expected, got } => TranslationError::NotAMorphism {
            monad: m0.name().to_string(),
            reason: format!("{what} should have type {expected} but has type {got}"),
        },
        e => e.into(),
    })
}

/// The same morphism with every schema rewritten by [`law_rewrite`].
pub fn rewrite_morphism(m: &MonadMorphism) -> Result<MonadMorphism, TranslationError> {
    Ok(MonadMorphism::new(
        m.name(),
        m.ctor().clone(),
        law_rewrite(m.unit_schema()),
        law_rewrite(m.bind_schema()),
        law_rewrite(m.lift_schema()),
    )?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Redex {
    Beta,
    /// `bind1 (unit1 a) k → k a`
    LeftUnit,
    /// `bind1 m unit1 → m`, also with `λx. unit1 x`
    RightUnit,
}

fn is_const(t: &Term, name: &str) -> bool {
    matches!(t, Term::Const(c, _) if c == name)
}

fn is_unit1(t: &Term) -> bool {
    match t {
        Term::Const(..) => is_const(t, INNER_UNIT),
        Term::Abs(x, _, body) => match body.as_ref() {
            Term::App(f, arg) => is_const(f, INNER_UNIT) && matches!(arg.as_ref(), Term::Var(v) if v == x),
            _ => false,
        },
        _ => false,
    }
}

/// `(m, k)` when `t` is `bind1 m k`.
fn as_bind(t: &Term) -> Option<(&Term, &Term)> {
    let Term::App(f, k) = t else { return None };
    let Term::App(b, m) = f.as_ref() else { return None };
    is_const(b, INNER_BIND).then_some((m, k))
}

fn redex_at(t: &Term) -> Option<Redex> {
    if let Term::App(f, _) = t {
        if matches!(f.as_ref(), Term::Abs(..)) {
            return Some(Redex::Beta);
        }
    }
    let (m, k) = as_bind(t)?;
    if let Term::App(u, _) = m {
        if is_const(u, INNER_UNIT) {
            return Some(Redex::LeftUnit);
        }
    }
    is_unit1(k).then_some(Redex::RightUnit)
}

fn contract(t: &Term, r: Redex) -> Term {
    match r {
        Redex::Beta => {
            let Term::App(f, a) = t else { unreachable!() };
            let Term::Abs(x, _, body) = f.as_ref() else {
                unreachable!()
            };
            crate::kernel::substitute(body, x, a)
        }
        Redex::LeftUnit => {
            let (m, k) = as_bind(t).expect("bind");
            let Term::App(_, a) = m else { unreachable!() };
            Term::app(k.clone(), (**a).clone())
        }
        Redex::RightUnit => as_bind(t).expect("bind").0.clone(),
    }
}

/// Paths to every redex, outermost and leftmost first. `0` steps into the
/// function or body, `1` into the argument.
fn redexes(t: &Term, path: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, Redex)>) {
    if let Some(r) = redex_at(t) {
        out.push((path.clone(), r));
    }
    match t {
        Term::App(f, a) => {
            path.push(0);
            redexes(f, path, out);
            path.pop();
            path.push(1);
            redexes(a, path, out);
            path.pop();
        }
        Term::Abs(_, _, body) => {
            path.push(0);
            redexes(body, path, out);
            path.pop();
        }
        _ => {}
    }
}

fn rewrite_at(t: &Term, path: &[u8], r: Redex) -> Term {
    let Some((&step, rest)) = path.split_first() else {
        return contract(t, r);
    };
    match (t, step) {
        (Term::App(f, a), 0) => Term::app(rewrite_at(f, rest, r), (**a).clone()),
        (Term::App(f, a), _) => Term::app((**f).clone(), rewrite_at(a, rest, r)),
        (Term::Abs(x, ty, body), _) => Term::lam(x, ty.clone(), rewrite_at(body, rest, r)),
        _ => unreachable!("path leads into a leaf"),
    }
}

/// Normalizes by β and the unit laws of the inner monad read left to right:
/// `bind1 (unit1 a) k = k a` and `bind1 m unit1 = m`.
pub fn law_rewrite(t: &Term) -> Term {
    // β first, then the unit laws, repeated until neither applies
    let mut cur = beta(t);
    loop {
        let mut found = Vec::new();
        redexes(&cur, &mut Vec::new(), &mut found);
        let Some((path, r)) = found.into_iter().find(|(_, r)| *r != Redex::Beta) else {
            return cur;
        };
        cur = beta(&rewrite_at(&cur, &path, r));
    }
}

/// [`law_rewrite`] contracting one redex at a time, with `choose` picking
/// which of the `n` current redexes goes next. Used to test that the result
/// does not depend on the order.
pub fn law_rewrite_by(t: &Term, choose: &mut dyn FnMut(usize) -> usize) -> Term {
    let mut cur = t.clone();
    loop {
        let mut found = Vec::new();
        redexes(&cur, &mut Vec::new(), &mut found);
        if found.is_empty() {
            return cur;
        }
        let (path, r) = &found[choose(found.len()) % found.len()];
        cur = rewrite_at(&cur, path, *r);
    }
}

/// The call-by-name type translation `⟦τ⟧`.
pub fn cbn_type(ty: &Type) -> Result<Type, TranslationError> {
    match ty {
        Type::Arrow(d, c) => Ok(Type::arrow(cbn_type(d)?, cbn_type(c)?)),
        Type::Con(..) => Err(TranslationError::UntranslatableType(ty.clone())),
        _ => Ok(Type::inner(ty.clone())),
    }
}

/// The homomorphic call-by-name term translation; `!` becomes `unit1 !`.
pub fn cbn_term(e: &Term) -> Result<Term, TranslationError> {
    match e {
        Term::Unit => Ok(Term::app(Term::inner_unit(Type::Terminal), Term::Unit)),
        Term::Var(_) => Ok(e.clone()),
        Term::Const(c, ty) => {
            if is_base(ty) {
                Ok(Term::app(Term::inner_unit(ty.clone()), e.clone()))
            } else {
                Err(TranslationError::UntranslatableConstant(c.clone(), ty.clone()))
            }
        }
        Term::Abs(x, ty, body) => Ok(Term::lam(x, cbn_type(ty)?, cbn_term(body)?)),
        Term::App(f, a) => Ok(Term::app(cbn_term(f)?, cbn_term(a)?)),
    }
}

/// Types of the call-by-name translated unit and bind, schematic in `M1`
/// and concrete for a given inner monad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbnReport {
    pub source: String,
    pub inner: String,
    /// `⟦M0 a⟧`
    pub ctor: Type,
    pub unit_type: Type,
    pub bind_type: Type,
    /// `M1 a -> ⟦M0 a⟧`
    pub expected_unit: Type,
    /// `⟦M0 a⟧ -> (M1 a -> ⟦M0 b⟧) -> ⟦M0 b⟧`
    pub expected_bind: Type,
    /// `⟦M0 a⟧` with the inner monad substituted.
    pub concrete_ctor: Type,
    pub concrete_unit_type: Type,
    pub concrete_bind_type: Type,
    /// Whether the concrete types are those of a monad's unit and bind.
    pub monad_signature: bool,
}

impl CbnReport {
    pub fn matches_expected_shapes(&self) -> bool {
        self.unit_type == self.expected_unit && self.bind_type == self.expected_bind
    }
}

impl fmt::Display for CbnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "call-by-name translation of {} over {}", self.source, self.inner)?;
        writeln!(f, "[[M0 a]] = {}  =  {}", self.ctor, self.concrete_ctor)?;
        writeln!(f, "[[unit0]] : {}  =  {}", self.unit_type, self.concrete_unit_type)?;
        writeln!(f, "[[bind0]] : {}  =  {}", self.bind_type, self.concrete_bind_type)?;
        writeln!(f, "shapes as expected: {}", self.matches_expected_shapes())?;
        write!(f, "monad signature: {}", self.monad_signature)
    }
}

/// Translates `m0`'s unit and bind by name, typechecks them and decides
/// whether, over `m1`, they have the types of a monad.
pub fn cbn_check_not_morphism(m0: &TermMonad, m1: &TermMonad) -> Result<CbnReport, TranslationError> {
    let a = Type::var("a");
    let b = Type::var("b");
    let n = |t: &Type| cbn_type(&m0.ctor_at(t));
    let ctor = n(&a)?;
    let unit = cbn_term(m0.unit_schema())?;
    let bind = cbn_term(m0.bind_schema())?;
    let unit_type = type_of_closed(&unit)?;
    let bind_type = type_of_closed(&bind)?;
    let expected_unit = Type::arrow(Type::inner(a.clone()), ctor.clone());
    let expected_bind = Type::arrows([ctor.clone(), Type::arrow(Type::inner(a.clone()), n(&b)?)], n(&b)?);

    let concrete_ctor = instantiate_type(&ctor, m1);
    let concrete_unit_type = type_of_closed(&beta(&instantiate_term(&unit, m1)?))?;
    let concrete_bind_type = type_of_closed(&beta(&instantiate_term(&bind, m1)?))?;
    let nc = |t: &Type| -> Result<Type, TranslationError> { Ok(instantiate_type(&n(t)?, m1)) };
    let monad_unit = Type::arrow(a.clone(), nc(&a)?);
    let monad_bind = Type::arrows([nc(&a)?, Type::arrow(a.clone(), nc(&b)?)], nc(&b)?);
    let monad_signature = concrete_unit_type == monad_unit && concrete_bind_type == monad_bind;
    Ok(CbnReport {
        source: m0.name().to_string(),
        inner: m1.name().to_string(),
        ctor,
        unit_type,
        bind_type,
        expected_unit,
        expected_bind,
        concrete_ctor,
        concrete_unit_type,
        concrete_bind_type,
        monad_signature,
    })
}
