//! The composition operators, written once against an abstract carrier so
//! the same definitions produce λ-terms and model values.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use super::{MonadDef, MonadError, TermMonad};
use crate::kernel::{alpha_eq, beta, beta_eta, fresh_prime, type_of_closed};
use crate::model::{Compiled, Model, SemType, Value};
use crate::term::Term;
use crate::types::Type;

/// The body of an abstraction, as a function of its bound variable.
pub type Body<'a, R> = dyn FnMut(&R) -> Result<R, MonadError> + 'a;

/// Something that can represent a monad's unit and bind, application and
/// abstraction.
pub trait Carrier {
    type Ty: Clone + PartialEq + fmt::Display;
    type Repr: Clone;

    fn monad_ty(&self, alpha: &Self::Ty) -> Result<Self::Ty, MonadError>;
    /// The `α` with `M α = ty`, if there is one.
    fn unwrap_monad(&self, ty: &Self::Ty) -> Option<Self::Ty>;
    fn arrow(&self, dom: &Self::Ty, cod: &Self::Ty) -> Self::Ty;
    fn split_arrow(&self, ty: &Self::Ty) -> Option<(Self::Ty, Self::Ty)>;
    /// Whether two results denote the same thing.
    fn same(&self, a: &Self::Repr, b: &Self::Repr) -> bool;
    fn unit(&self, alpha: &Self::Ty, a: &Self::Repr) -> Result<Self::Repr, MonadError>;
    fn bind(&self, alpha: &Self::Ty, beta: &Self::Ty, m: &Self::Repr, k: &Self::Repr)
        -> Result<Self::Repr, MonadError>;
    fn apply(&self, f: &Self::Repr, x: &Self::Repr, dom: &Self::Ty) -> Result<Self::Repr, MonadError>;
    /// Abstraction over `dom`; `hint` names the bound variable where names
    /// matter.
    fn lambda(&self, hint: &str, dom: &Self::Ty, body: &mut Body<'_, Self::Repr>) -> Result<Self::Repr, MonadError>;
    /// Final clean-up of a result.
    fn finish(&self, r: Self::Repr) -> Self::Repr {
        r
    }
}

/// `A(f)(x) = f(x)`.
pub fn apply_a(f: &Term, x: &Term) -> Result<Term, MonadError> {
    let fty = type_of_closed(f)?;
    let xty = type_of_closed(x)?;
    match fty.as_arrow() {
        Some((dom, _)) if *dom == xty => Ok(Term::app(f.clone(), x.clone())),
        _ => Err(MonadError::mismatch(Type::arrow(xty, Type::var("?")), fty)),
    }
}

/// `A_M(f)(x) = f ⋆ λa. x ⋆ λb. η(a b)` for `f : M(α → β)`, `x : M α`.
pub fn apply_am<C: Carrier>(
    c: &C,
    f: &C::Repr,
    x: &C::Repr,
    alpha: &C::Ty,
    beta: &C::Ty,
) -> Result<C::Repr, MonadError> {
    let ab = c.arrow(alpha, beta);
    let k = c.lambda("a", &ab, &mut |a| {
        let inner = c.lambda("b", alpha, &mut |b| {
            let ab_v = c.apply(a, b, alpha)?;
            c.unit(beta, &ab_v)
        })?;
        c.bind(alpha, beta, x, &inner)
    })?;
    Ok(c.finish(c.bind(&ab, beta, f, &k)?))
}

/// `A_M′(f)(x) = f ⋆ λa. η(a x)` for `f : M(M α → β)`, `x : M α`.
pub fn apply_am_prime<C: Carrier>(
    c: &C,
    f: &C::Repr,
    x: &C::Repr,
    alpha: &C::Ty,
    beta: &C::Ty,
) -> Result<C::Repr, MonadError> {
    let ma = c.monad_ty(alpha)?;
    let fa = c.arrow(&ma, beta);
    let k = c.lambda("a", &fa, &mut |a| {
        let ax = c.apply(a, x, &ma)?;
        c.unit(beta, &ax)
    })?;
    Ok(c.finish(c.bind(&fa, beta, f, &k)?))
}

/// Term monads as λ-terms. Results are β-normalized by [`Carrier::finish`].
pub struct SymbolicCarrier<'m> {
    monad: &'m TermMonad,
    used: RefCell<BTreeSet<String>>,
}

impl<'m> SymbolicCarrier<'m> {
    /// A carrier whose fresh variables avoid every name in `avoid`.
    pub fn new<'t>(monad: &'m TermMonad, avoid: impl IntoIterator<Item = &'t Term>) -> SymbolicCarrier<'m> {
        let mut used = BTreeSet::new();
        for t in avoid {
            used.extend(t.all_names());
        }
        SymbolicCarrier {
            monad,
            used: RefCell::new(used),
        }
    }

    pub fn monad(&self) -> &TermMonad {
        self.monad
    }
}

impl Carrier for SymbolicCarrier<'_> {
    type Ty = Type;
    type Repr = Term;

    fn monad_ty(&self, alpha: &Type) -> Result<Type, MonadError> {
        Ok(self.monad.ctor_at(alpha))
    }

    fn unwrap_monad(&self, ty: &Type) -> Option<Type> {
        self.monad.unwrap_type(ty)
    }

    fn arrow(&self, dom: &Type, cod: &Type) -> Type {
        Type::arrow(dom.clone(), cod.clone())
    }

    fn split_arrow(&self, ty: &Type) -> Option<(Type, Type)> {
        ty.as_arrow().map(|(d, c)| (d.clone(), c.clone()))
    }

    fn same(&self, a: &Term, b: &Term) -> bool {
        alpha_eq(&beta_eta(a), &beta_eta(b))
    }

    fn unit(&self, alpha: &Type, a: &Term) -> Result<Term, MonadError> {
        Ok(Term::app(self.monad.unit_at(alpha), a.clone()))
    }

    fn bind(&self, alpha: &Type, beta: &Type, m: &Term, k: &Term) -> Result<Term, MonadError> {
        Ok(Term::apps(self.monad.bind_at(alpha, beta), [m.clone(), k.clone()]))
    }

    fn apply(&self, f: &Term, x: &Term, _dom: &Type) -> Result<Term, MonadError> {
        Ok(Term::app(f.clone(), x.clone()))
    }

    fn lambda(&self, hint: &str, dom: &Type, body: &mut Body<'_, Term>) -> Result<Term, MonadError> {
        let name = {
            let mut used = self.used.borrow_mut();
            let name = if used.contains(hint) {
                fresh_prime(hint, &used)
            } else {
                hint.to_string()
            };
            used.insert(name.clone());
            name
        };
        let b = body(&Term::Var(name.clone()))?;
        Ok(Term::lam(&name, dom.clone(), b))
    }

    fn finish(&self, r: Term) -> Term {
        beta(&r)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum OpKey {
    Unit(Type),
    Bind(Type, Type),
}

/// Any registered monad over the values of a finite model.
pub struct ValueCarrier<'m> {
    monad: &'m MonadDef,
    model: &'m Model,
    compiled: RefCell<HashMap<OpKey, Rc<Compiled>>>,
    domains: RefCell<HashMap<SemType, Rc<[Value]>>>,
}

impl<'m> ValueCarrier<'m> {
    pub fn new(monad: &'m MonadDef, model: &'m Model) -> ValueCarrier<'m> {
        ValueCarrier {
            monad,
            model,
            compiled: RefCell::new(HashMap::new()),
            domains: RefCell::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &Model {
        self.model
    }

    pub fn monad(&self) -> &MonadDef {
        self.monad
    }

    /// The enumerated inhabitants of `ty`, computed once per carrier.
    fn domain(&self, ty: &SemType) -> Result<Rc<[Value]>, MonadError> {
        if let Some(d) = self.domains.borrow().get(ty) {
            return Ok(d.clone());
        }
        let d: Rc<[Value]> = self.model.enumerate(ty)?.into();
        self.domains.borrow_mut().insert(ty.clone(), d.clone());
        Ok(d)
    }

    fn kernel_type(ty: &SemType) -> Result<Type, MonadError> {
        ty.to_type().ok_or_else(|| MonadError::NotMonadic(ty.to_string()))
    }

    fn op(&self, m: &TermMonad, key: OpKey) -> Result<Rc<Compiled>, MonadError> {
        if let Some(c) = self.compiled.borrow().get(&key) {
            return Ok(c.clone());
        }
        let compiled = match &key {
            OpKey::Unit(alpha) => {
                let body = beta(&Term::app(m.unit_at(alpha), Term::var("%a")));
                Compiled::new(&body, self.model, &[("%a".into(), alpha.clone())])?
            }
            OpKey::Bind(alpha, beta_ty) => {
                let body = beta(&Term::apps(
                    m.bind_at(alpha, beta_ty),
                    [Term::var("%m"), Term::var("%k")],
                ));
                let vars = [
                    ("%m".to_string(), m.ctor_at(alpha)),
                    ("%k".to_string(), Type::arrow(alpha.clone(), m.ctor_at(beta_ty))),
                ];
                Compiled::new(&body, self.model, &vars)?
            }
        };
        let compiled = Rc::new(compiled);
        self.compiled.borrow_mut().insert(key, compiled.clone());
        Ok(compiled)
    }
}

impl Carrier for ValueCarrier<'_> {
    type Ty = SemType;
    type Repr = Value;

    fn monad_ty(&self, alpha: &SemType) -> Result<SemType, MonadError> {
        self.monad.carrier(alpha)
    }

    fn unwrap_monad(&self, ty: &SemType) -> Option<SemType> {
        let alpha = match (self.monad, ty) {
            (MonadDef::Set(_), SemType::Set(a) | SemType::Pointed(a)) => (**a).clone(),
            (MonadDef::Term(m), _) => SemType::from_type(&m.unwrap_type(&ty.to_type()?)?).ok()?,
            _ => return None,
        };
        (self.monad.carrier(&alpha).ok()? == *ty).then_some(alpha)
    }

    fn arrow(&self, dom: &SemType, cod: &SemType) -> SemType {
        SemType::arrow(dom.clone(), cod.clone())
    }

    fn split_arrow(&self, ty: &SemType) -> Option<(SemType, SemType)> {
        ty.as_arrow().map(|(d, c)| (d.clone(), c.clone()))
    }

    fn same(&self, a: &Value, b: &Value) -> bool {
        a == b
    }

    fn unit(&self, alpha: &SemType, a: &Value) -> Result<Value, MonadError> {
        match self.monad {
            MonadDef::Set(m) => Ok(m.unit(self.model, alpha, a)?),
            MonadDef::Term(m) => {
                let op = self.op(m, OpKey::Unit(Self::kernel_type(alpha)?))?;
                Ok(op.run(self.model, std::slice::from_ref(a))?)
            }
        }
    }

    fn bind(&self, alpha: &SemType, beta: &SemType, m: &Value, k: &Value) -> Result<Value, MonadError> {
        match self.monad {
            MonadDef::Set(s) => Ok(s.bind(self.model, alpha, beta, m, k)?),
            MonadDef::Term(t) => {
                let key = OpKey::Bind(Self::kernel_type(alpha)?, Self::kernel_type(beta)?);
                let op = self.op(t, key)?;
                Ok(op.run(self.model, &[m.clone(), k.clone()])?)
            }
        }
    }

    fn apply(&self, f: &Value, x: &Value, dom: &SemType) -> Result<Value, MonadError> {
        Ok(self.model.apply(f, x, dom)?)
    }

    fn lambda(&self, _hint: &str, dom: &SemType, body: &mut Body<'_, Value>) -> Result<Value, MonadError> {
        let dom = self.domain(dom)?;
        let outs = dom.iter().map(&mut *body).collect::<Result<Vec<_>, _>>()?;
        Ok(Value::Func(outs.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{term_eq, EqMode, TypeEnv};
    use crate::signature::Signature;
    use crate::syntax::parse_term;

    fn p(src: &str) -> Term {
        parse_term(src, &Signature::standard()).unwrap()
    }

    #[test]
    fn john_smokes_under_continuations() {
        let m = TermMonad::cont(Type::t());
        let c = SymbolicCarrier::new(&m, []);
        let f = c.unit(&Type::arrow(Type::e(), Type::t()), &p("smoke")).unwrap();
        let x = c.unit(&Type::e(), &p("John")).unwrap();
        let out = apply_am(&c, &f, &x, &Type::e(), &Type::t()).unwrap();
        let expected = p("\\c:t -> t. c (smoke John)");
        assert!(term_eq(&out, &expected, EqMode::Alpha, &TypeEnv::new()).unwrap());
    }

    #[test]
    fn fresh_names_avoid_the_inputs() {
        let m = TermMonad::identity();
        let f = p("\\a:e. smoke a");
        let c = SymbolicCarrier::new(&m, [&f]);
        let x = p("John");
        let out = apply_am(&c, &f, &x, &Type::e(), &Type::t()).unwrap();
        assert_eq!(out, p("smoke John"));
    }

    #[test]
    fn apply_a_is_application() {
        assert_eq!(apply_a(&p("smoke"), &p("John")).unwrap(), p("smoke John"));
        assert_eq!(apply_a(&p("like"), &p("John")).unwrap(), p("like John"));
        assert!(apply_a(&p("smoke"), &p("smoke")).is_err());
    }

    #[test]
    fn powerset_application_over_values() {
        let model = Model::standard();
        let monad = MonadDef::powerset();
        let c = ValueCarrier::new(&monad, &model);
        let e = SemType::base("e");
        let t = SemType::base("t");
        let smoke = model.interpretation("smoke").unwrap().1.clone();
        let f = c.unit(&SemType::arrow(e.clone(), t.clone()), &smoke).unwrap();
        let who = Value::set(model.enumerate(&e).unwrap());
        let out = apply_am(&c, &f, &who, &e, &t).unwrap();
        assert_eq!(out, Value::set(vec![Value::Bool(true), Value::Bool(false)]));
    }
}
