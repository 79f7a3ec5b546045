//! Evaluation and control operators of the continuation monad.

use super::{MonadError, TermKind, TermMonad};
use crate::kernel::{beta, type_of, type_of_closed, TypeEnv};
use crate::signature::Signature;
use crate::syntax::parse_term;
use crate::term::Term;
use crate::types::Type;

fn answer_type(m: &TermMonad) -> Result<&Type, MonadError> {
    match m.kind() {
        TermKind::Cont(omega) => Ok(omega),
        _ => Err(MonadError::NotContinuation(m.name().to_string())),
    }
}

/// `ε(m)` as a term, unnormalized.
fn eps_raw(omega: &Type, mv: Term) -> Term {
    Term::app(mv, Term::lam("y", omega.clone(), Term::var("y")))
}

/// `ε(m) = m(id)`, β-normalized.
pub fn eps(m: &TermMonad, mv: &Term) -> Result<Term, MonadError> {
    eps_in(m, mv, &TypeEnv::new())
}

/// [`eps`] for a term whose free variables are typed by `env`.
pub fn eps_in(m: &TermMonad, mv: &Term, env: &TypeEnv) -> Result<Term, MonadError> {
    let omega = answer_type(m)?;
    let expected = m.ctor_at(omega);
    let got = type_of(mv, env)?;
    if got != expected {
        return Err(MonadError::mismatch(expected, got));
    }
    Ok(beta(&eps_raw(omega, mv.clone())))
}

/// `shift(h) = λc.ε(h(λa.λc′.c′(c a)))` for `h : (α → M ω) → M ω`.
pub fn shift(m: &TermMonad, h: &Term) -> Result<Term, MonadError> {
    let omega = answer_type(m)?.clone();
    let m_omega = m.ctor_at(&omega);
    let hty = type_of_closed(h)?;
    let alpha = match hty.as_arrow() {
        Some((dom, cod)) if *cod == m_omega => match dom.as_arrow() {
            Some((alpha, k_cod)) if *k_cod == m_omega => alpha.clone(),
            _ => return Err(MonadError::mismatch(format!("(_ -> {m_omega}) -> {m_omega}"), hty)),
        },
        _ => return Err(MonadError::mismatch(format!("(_ -> {m_omega}) -> {m_omega}"), hty)),
    };
    let oo = Type::arrow(omega.clone(), omega.clone());
    // λa.λc′.c′(c a)
    let k = Term::lam(
        "a",
        alpha.clone(),
        Term::lam(
            "c'",
            oo,
            Term::app(Term::var("c'"), Term::app(Term::var("c"), Term::var("a"))),
        ),
    );
    let body = eps_raw(&omega, Term::app(h.clone(), k));
    Ok(beta(&Term::lam("c", Type::arrow(alpha, omega), body)))
}

/// `reset(m) = λc.c(ε m)` for `m : M ω`.
pub fn reset(m: &TermMonad, mv: &Term) -> Result<Term, MonadError> {
    let omega = answer_type(m)?.clone();
    let inner = eps(m, mv)?;
    let c = Type::arrow(omega.clone(), omega);
    Ok(beta(&Term::lam("c", c, Term::app(Term::var("c"), inner))))
}

/// The quantificational meaning of *everyone*, `λc.∀x.c(x)`.
pub fn everyone() -> Term {
    parse_term("\\c:e -> t. forall (\\x:e. c x)", &Signature::standard()).expect("valid term")
}
