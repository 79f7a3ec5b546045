//! Typechecking, capture-avoiding substitution, normalization and
//! equivalence for the simply typed λ-calculus.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::signature::{inner_op_scheme, Signature};
use crate::term::Term;
use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("constant `{name}` used at {used} but declared as {declared}")]
    ConstantType { name: String, used: Type, declared: Type },
    #[error("argument mismatch: function expects {expected}, argument has {got}")]
    ArrowMismatch { expected: Type, got: Type },
    #[error("not a function: term of type {0} applied to an argument")]
    NotAFunction(Type),
    #[error("type mismatch: {left} vs {right}")]
    TypeMismatch { left: Type, right: Type },
    #[error("type mentions undeclared base `{0}`")]
    UndeclaredBase(String),
}

/// Typing context for free variables.
pub type TypeEnv = HashMap<String, Type>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalMode {
    Beta,
    BetaEta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqMode {
    Alpha,
    AlphaBeta,
    AlphaBetaEta,
}

/// Full typecheck: constants must be declared in `sig` (or be instances of
/// the inner-monad operator schemes) and every base must be declared.
pub fn type_check(term: &Term, sig: &Signature, env: &TypeEnv) -> Result<Type, KernelError> {
    let mut scope = Vec::new();
    synth(term, env, &mut scope, Some(sig))
}

/// Typechecks trusting the type annotation carried by each constant.
pub fn type_of(term: &Term, env: &TypeEnv) -> Result<Type, KernelError> {
    let mut scope = Vec::new();
    synth(term, env, &mut scope, None)
}

pub fn type_of_closed(term: &Term) -> Result<Type, KernelError> {
    type_of(term, &TypeEnv::new())
}

fn synth(
    term: &Term,
    env: &TypeEnv,
    scope: &mut Vec<(String, Type)>,
    sig: Option<&Signature>,
) -> Result<Type, KernelError> {
    match term {
        Term::Var(x) => scope
            .iter()
            .rev()
            .find(|(n, _)| n == x)
            .map(|(_, t)| t.clone())
            .or_else(|| env.get(x).cloned())
            .ok_or_else(|| KernelError::UnboundVariable(x.clone())),
        Term::Const(c, ty) => {
            if let Some(sig) = sig {
                check_const(c, ty, sig)?;
            }
            Ok(ty.clone())
        }
        Term::Unit => Ok(Type::Terminal),
        Term::Abs(x, ty, body) => {
            if let Some(sig) = sig {
                if let Some(b) = sig.undeclared_bases(ty).into_iter().next() {
                    return Err(KernelError::UndeclaredBase(b));
                }
            }
            scope.push((x.clone(), ty.clone()));
            let cod = synth(body, env, scope, sig);
            scope.pop();
            Ok(Type::arrow(ty.clone(), cod?))
        }
        Term::App(f, a) => {
            let fty = synth(f, env, scope, sig)?;
            let aty = synth(a, env, scope, sig)?;
            match fty {
                Type::Arrow(dom, cod) => {
                    if *dom == aty {
                        Ok(*cod)
                    } else {
                        Err(KernelError::ArrowMismatch {
                            expected: *dom,
                            got: aty,
                        })
                    }
                }
                other => Err(KernelError::NotAFunction(other)),
            }
        }
    }
}

fn check_const(name: &str, ty: &Type, sig: &Signature) -> Result<(), KernelError> {
    if let Some(scheme) = inner_op_scheme(name) {
        return match scheme.instance_args(ty) {
            Some(_) => Ok(()),
            None => Err(KernelError::ConstantType {
                name: name.to_string(),
                used: ty.clone(),
                declared: scheme.ty,
            }),
        };
    }
    match sig.lookup(name) {
        None => Err(KernelError::UnknownConstant(name.to_string())),
        Some(declared) if declared != ty => Err(KernelError::ConstantType {
            name: name.to_string(),
            used: ty.clone(),
            declared: declared.clone(),
        }),
        Some(_) => Ok(()),
    }
}

/// Picks `base`, `base'`, `base''`, ... avoiding `taken`.
pub fn fresh_prime(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Capture-avoiding substitution of `replacement` for free `var` in `term`.
///
/// A binder that would capture a free variable of `replacement` is renamed by
/// priming it; the choice depends only on the inputs.
pub fn substitute(term: &Term, var: &str, replacement: &Term) -> Term {
    let repl_fv = replacement.free_vars();
    subst_rec(term, var, replacement, &repl_fv)
}

fn subst_rec(term: &Term, var: &str, repl: &Term, repl_fv: &BTreeSet<String>) -> Term {
    match term {
        Term::Var(x) if x == var => repl.clone(),
        Term::Var(_) | Term::Const(..) | Term::Unit => term.clone(),
        Term::App(f, a) => Term::app(subst_rec(f, var, repl, repl_fv), subst_rec(a, var, repl, repl_fv)),
        Term::Abs(x, ty, body) => {
            if x == var || !body.occurs_free(var) {
                return term.clone();
            }
            if repl_fv.contains(x) {
                let mut taken = body.free_vars();
                taken.extend(repl_fv.iter().cloned());
                taken.insert(var.to_string());
                let fresh = fresh_prime(x, &taken);
                let renamed = subst_rec(body, x, &Term::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                Term::Abs(fresh, ty.clone(), Box::new(subst_rec(&renamed, var, repl, repl_fv)))
            } else {
                Term::Abs(x.clone(), ty.clone(), Box::new(subst_rec(body, var, repl, repl_fv)))
            }
        }
    }
}

/// Normal-order reduction to full β (or βη) normal form.
pub fn normalize(term: &Term, mode: NormalMode) -> Term {
    match term {
        Term::Var(_) | Term::Const(..) | Term::Unit => term.clone(),
        Term::App(f, a) => {
            let f = normalize(f, mode);
            match f {
                Term::Abs(x, _, body) => normalize(&substitute(&body, &x, a), mode),
                f => Term::app(f, normalize(a, mode)),
            }
        }
        Term::Abs(x, ty, body) => {
            let body = normalize(body, mode);
            if mode == NormalMode::BetaEta {
                if let Term::App(f, a) = &body {
                    if matches!(a.as_ref(), Term::Var(v) if v == x) && !f.occurs_free(x) {
                        return (**f).clone();
                    }
                }
            }
            Term::Abs(x.clone(), ty.clone(), Box::new(body))
        }
    }
}

pub fn beta(term: &Term) -> Term {
    normalize(term, NormalMode::Beta)
}

pub fn beta_eta(term: &Term) -> Term {
    normalize(term, NormalMode::BetaEta)
}

/// α-equivalence, including binder type annotations.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    let mut left = Vec::new();
    let mut right = Vec::new();
    alpha_rec(a, b, &mut left, &mut right)
}

fn alpha_rec<'a>(a: &'a Term, b: &'a Term, left: &mut Vec<&'a str>, right: &mut Vec<&'a str>) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = left.iter().rposition(|n| *n == x);
            let iy = right.iter().rposition(|n| *n == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Const(c, s), Term::Const(d, t)) => c == d && s == t,
        (Term::Unit, Term::Unit) => true,
        (Term::App(f, x), Term::App(g, y)) => alpha_rec(f, g, left, right) && alpha_rec(x, y, left, right),
        (Term::Abs(x, s, m), Term::Abs(y, t, n)) => {
            if s != t {
                return false;
            }
            left.push(x);
            right.push(y);
            let eq = alpha_rec(m, n, left, right);
            left.pop();
            right.pop();
            eq
        }
        _ => false,
    }
}

/// Equality modulo α and, depending on `mode`, β or βη conversion. Both
/// terms must have the same type under `env`.
pub fn term_eq(a: &Term, b: &Term, mode: EqMode, env: &TypeEnv) -> Result<bool, KernelError> {
    let ta = type_of(a, env)?;
    let tb = type_of(b, env)?;
    if ta != tb {
        return Err(KernelError::TypeMismatch { left: ta, right: tb });
    }
    Ok(match mode {
        EqMode::Alpha => alpha_eq(a, b),
        EqMode::AlphaBeta => alpha_eq(&beta(a), &beta(b)),
        EqMode::AlphaBetaEta => alpha_eq(&beta_eta(a), &beta_eta(b)),
    })
}
