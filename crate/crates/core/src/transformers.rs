//! Monad morphisms: schemas over an abstract inner monad `(M1, unit1, bind1)`
//! that turn any term monad into a new one, together with a lift
//! `M1 a -> M2 a`.

use std::fmt;

use thiserror::Error;

use crate::kernel::{beta, term_eq, type_of_closed, EqMode, KernelError, TypeEnv};
use crate::model::{Compiled, Model, ModelError, SemType, Value};
use crate::monads::{schema_map, Exhaustive, MonadDef, MonadError, TermKind, TermMonad};
use crate::signature::{inner_op_scheme, Signature};
use crate::syntax::{parse_term, parse_type};
use crate::term::{Term, INNER_BIND, INNER_UNIT};
use crate::types::{Type, INNER_CTOR};

/// Largest enumeration attempted by the naturality check.
const MAX_CASES: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("unknown monad morphism `{0}`")]
    UnknownMorphism(String),
    #[error("`{0}` is a set monad; morphisms apply to term monads only")]
    SetMonadNotLiftable(String),
    #[error("{what}: expected {expected}, got {got}")]
    TypeMismatch {
        what: String,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl From<ModelError> for MorphismError {
    fn from(e: ModelError) -> Self {
        MorphismError::Monad(e.into())
    }
}

/// Something with a constructor, unit and bind that schemas can be
/// instantiated with.
pub trait InnerMonad {
    fn ctor_at(&self, alpha: &Type) -> Type;
    fn unit_at(&self, alpha: &Type) -> Term;
    fn bind_at(&self, alpha: &Type, beta: &Type) -> Term;
}

impl InnerMonad for TermMonad {
    fn ctor_at(&self, alpha: &Type) -> Type {
        TermMonad::ctor_at(self, alpha)
    }

    fn unit_at(&self, alpha: &Type) -> Term {
        TermMonad::unit_at(self, alpha)
    }

    fn bind_at(&self, alpha: &Type, beta: &Type) -> Term {
        TermMonad::bind_at(self, alpha, beta)
    }
}

/// A monad morphism. The constructor mentions `M1` and the type variable
/// `a`; the term schemas use `unit1[..]` and `bind1[..]` for the inner
/// monad's operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadMorphism {
    name: String,
    ctor: Type,
    unit: Term,
    bind: Term,
    lift: Term,
}

impl MonadMorphism {
    /// Builds a morphism, checking every schema against its expected type.
    pub fn new(name: &str, ctor: Type, unit: Term, bind: Term, lift: Term) -> Result<MonadMorphism, MorphismError> {
        let m = MonadMorphism {
            name: name.to_string(),
            ctor,
            unit,
            bind,
            lift,
        };
        let a = Type::var("a");
        let b = Type::var("b");
        let m2 = |t: &Type| m.ctor_at(t);
        let expect = |what: &str, term: &Term, expected: Type| -> Result<(), MorphismError> {
            let got = type_of_closed(term)?;
            if got == expected {
                Ok(())
            } else {
                Err(MorphismError::TypeMismatch {
                    what: format!("{name}: {what}"),
                    expected: expected.to_string(),
                    got: got.to_string(),
                })
            }
        };
        expect("unit", &m.unit, Type::arrow(a.clone(), m2(&a)))?;
        expect(
            "bind",
            &m.bind,
            Type::arrows([m2(&a), Type::arrow(a.clone(), m2(&b))], m2(&b)),
        )?;
        expect("lift", &m.lift, Type::arrow(Type::inner(a.clone()), m2(&a)))?;
        Ok(m)
    }

    fn from_source(name: &str, ctor: &str, unit: &str, bind: &str, lift: &str) -> MonadMorphism {
        let sig = Signature::standard();
        MonadMorphism::new(
            name,
            parse_type(ctor, &sig).expect("valid constructor"),
            parse_term(unit, &sig).expect("valid unit"),
            parse_term(bind, &sig).expect("valid bind"),
            parse_term(lift, &sig).expect("valid lift"),
        )
        .expect("well-typed morphism")
    }

    /// Leaves the inner monad unchanged.
    pub fn identity() -> MonadMorphism {
        MonadMorphism::from_source(
            "idT",
            "M1 a",
            "\\x:a. unit1[a] x",
            "\\m:M1 a. \\k:a -> M1 b. bind1[a, b] m k",
            "\\m:M1 a. m",
        )
    }

    /// `M2 a = ρ -> M1 a`, `lift m = λw.m`.
    pub fn reader(rho: &Type) -> MonadMorphism {
        MonadMorphism::from_source(
            &format!("readerT:{rho}"),
            &format!("{rho} -> M1 a"),
            &format!("\\x:a. \\w:{rho}. unit1[a] x"),
            &format!("\\m:{rho} -> M1 a. \\k:a -> {rho} -> M1 b. \\w:{rho}. bind1[a, b] (m w) (\\x:a. k x w)"),
            &format!("\\m:M1 a. \\w:{rho}. m"),
        )
    }

    /// `M2 a = (a -> M1 ω) -> M1 ω`, `lift m = λc. m ⋆₁ c`.
    pub fn cont(omega: &Type) -> MonadMorphism {
        MonadMorphism::from_source(
            &format!("contT:{omega}"),
            &format!("(a -> M1 {omega}) -> M1 {omega}"),
            &format!("\\x:a. \\c:a -> M1 {omega}. c x"),
            &format!(
                "\\m:(a -> M1 {omega}) -> M1 {omega}. \\k:a -> (b -> M1 {omega}) -> M1 {omega}. \
                 \\c:b -> M1 {omega}. m (\\x:a. k x c)"
            ),
            &format!("\\m:M1 a. \\c:a -> M1 {omega}. bind1[a, {omega}] m c"),
        )
    }

    /// `idT`, `readerT:X`, `contT:X`, or a composition `F . G . ...`
    /// (outermost first).
    pub fn lookup(name: &str) -> Result<MonadMorphism, MorphismError> {
        let parts: Vec<&str> = name.split('.').map(str::trim).collect();
        if parts.len() > 1 {
            let mut out = MonadMorphism::lookup(parts[parts.len() - 1])?;
            for outer in parts[..parts.len() - 1].iter().rev() {
                out = compose_morphisms(&MonadMorphism::lookup(outer)?, &out)?;
            }
            return Ok(out);
        }
        let sig = Signature::standard();
        let param = |p: &str| parse_type(p, &sig).map_err(|e| MorphismError::Monad(e.into()));
        match name.split_once(':') {
            Some(("readerT", p)) => Ok(MonadMorphism::reader(&param(p)?)),
            Some(("contT", p)) => Ok(MonadMorphism::cont(&param(p)?)),
            None if name == "idT" => Ok(MonadMorphism::identity()),
            _ => Err(MorphismError::UnknownMorphism(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ctor(&self) -> &Type {
        &self.ctor
    }

    pub fn unit_schema(&self) -> &Term {
        &self.unit
    }

    pub fn bind_schema(&self) -> &Term {
        &self.bind
    }

    pub fn lift_schema(&self) -> &Term {
        &self.lift
    }

    pub fn lift_at(&self, alpha: &Type) -> Term {
        let map = schema_map(alpha, None);
        self.lift.map_types(&|t| t.subst_vars(&map))
    }

    pub fn renamed(mut self, name: &str) -> MonadMorphism {
        self.name = name.to_string();
        self
    }

    /// The same morphism with another lift, e.g. to test that a broken lift
    /// is caught.
    pub fn with_lift(self, lift: Term) -> Result<MonadMorphism, MorphismError> {
        MonadMorphism::new(&self.name, self.ctor, self.unit, self.bind, lift)
    }
}

impl InnerMonad for MonadMorphism {
    fn ctor_at(&self, alpha: &Type) -> Type {
        self.ctor.subst_vars(&schema_map(alpha, None))
    }

    fn unit_at(&self, alpha: &Type) -> Term {
        let map = schema_map(alpha, None);
        self.unit.map_types(&|t| t.subst_vars(&map))
    }

    fn bind_at(&self, alpha: &Type, beta: &Type) -> Term {
        let map = schema_map(alpha, Some(beta));
        self.bind.map_types(&|t| t.subst_vars(&map))
    }
}

impl fmt::Display for MonadMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "M2 a = {}", self.ctor)?;
        writeln!(f, "unit = {}", self.unit)?;
        writeln!(f, "bind = {}", self.bind)?;
        write!(f, "lift = {}", self.lift)
    }
}

/// Replaces `M1 τ` by the inner constructor at `τ`.
pub fn instantiate_type(ty: &Type, inner: &dyn InnerMonad) -> Type {
    ty.map_cons(&|name, arg| {
        if name == INNER_CTOR {
            inner.ctor_at(&arg)
        } else {
            Type::Con(name.to_string(), Box::new(arg))
        }
    })
}

/// Replaces the inner-monad symbols of a schema by `inner`'s operations.
/// The result is not normalized.
pub fn instantiate_term(term: &Term, inner: &dyn InnerMonad) -> Result<Term, MorphismError> {
    Ok(match term {
        Term::Const(name, ty) if name == INNER_UNIT || name == INNER_BIND => {
            let scheme = inner_op_scheme(name).expect("inner operator");
            let args = scheme.instance_args(ty).ok_or_else(|| KernelError::ConstantType {
                name: name.clone(),
                used: ty.clone(),
                declared: scheme.ty.clone(),
            })?;
            let args: Vec<Type> = args.iter().map(|t| instantiate_type(t, inner)).collect();
            if name == INNER_UNIT {
                inner.unit_at(&args[0])
            } else {
                inner.bind_at(&args[0], &args[1])
            }
        }
        Term::Const(name, ty) => Term::Const(name.clone(), instantiate_type(ty, inner)),
        Term::Var(_) | Term::Unit => term.clone(),
        Term::Abs(x, ty, body) => Term::lam(x, instantiate_type(ty, inner), instantiate_term(body, inner)?),
        Term::App(f, a) => Term::app(instantiate_term(f, inner)?, instantiate_term(a, inner)?),
    })
}

fn term_inner(inner: &MonadDef) -> Result<&TermMonad, MorphismError> {
    match inner {
        MonadDef::Term(m) => Ok(m),
        MonadDef::Set(s) => Err(MorphismError::SetMonadNotLiftable(s.name().to_string())),
    }
}

/// The monad `morph` builds on top of `inner`, with β-normal schemas.
pub fn apply_morphism(morph: &MonadMorphism, inner: &MonadDef) -> Result<TermMonad, MorphismError> {
    apply_to(morph, term_inner(inner)?)
}

pub fn apply_to(morph: &MonadMorphism, inner: &TermMonad) -> Result<TermMonad, MorphismError> {
    let ctor = instantiate_type(&morph.ctor, inner);
    let unit = beta(&instantiate_term(&morph.unit, inner)?);
    let bind = beta(&instantiate_term(&morph.bind, inner)?);
    let name = format!("{}({})", morph.name, inner.name());
    Ok(TermMonad::new(&name, TermKind::Derived, ctor, unit, bind)?)
}

/// The lift of `morph` over `inner` at `alpha`, as a closed β-normal term.
pub fn lift_term(morph: &MonadMorphism, inner: &TermMonad, alpha: &Type) -> Result<Term, MorphismError> {
    Ok(beta(&instantiate_term(&morph.lift_at(alpha), inner)?))
}

/// `lift(mv)` for `mv : M1 alpha`, β-normalized.
pub fn lift(morph: &MonadMorphism, inner: &MonadDef, mv: &Term, alpha: &Type) -> Result<Term, MorphismError> {
    let inner = term_inner(inner)?;
    let expected = inner.ctor_at(alpha);
    let got = type_of_closed(mv)?;
    if got != expected {
        return Err(MorphismError::TypeMismatch {
            what: "lift argument".into(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    Ok(beta(&Term::app(lift_term(morph, inner, alpha)?, mv.clone())))
}

/// The morphism that applies `inner` first and then `outer`.
pub fn compose_morphisms(outer: &MonadMorphism, inner: &MonadMorphism) -> Result<MonadMorphism, MorphismError> {
    let a = Type::var("a");
    let ctor = instantiate_type(&outer.ctor, inner);
    let unit = beta(&instantiate_term(&outer.unit, inner)?);
    let bind = beta(&instantiate_term(&outer.bind, inner)?);
    let outer_lift = instantiate_term(&outer.lift_at(&a), inner)?;
    let body = Term::app(outer_lift, Term::app(inner.lift_at(&a), Term::var("m")));
    let lift = beta(&Term::lam("m", Type::inner(a), body));
    MonadMorphism::new(&format!("{} . {}", outer.name, inner.name), ctor, unit, bind, lift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalityLaw {
    /// `lift (unit1 a) = unit2 a`
    Unit,
    /// `lift (m ⋆₁ k) = lift m ⋆₂ (lift ∘ k)`
    Bind,
}

impl fmt::Display for NaturalityLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NaturalityLaw::Unit => "lift preserves unit",
            NaturalityLaw::Bind => "lift preserves bind",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityResult {
    pub law: NaturalityLaw,
    pub exhaustive: Exhaustive,
    pub symbolic: Option<bool>,
}

impl NaturalityResult {
    pub fn holds(&self) -> bool {
        match &self.exhaustive {
            Exhaustive::Passed { .. } => true,
            Exhaustive::Counterexample(_) => false,
            Exhaustive::TooLarge(_) => self.symbolic == Some(true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub morphism: String,
    pub inner: String,
    pub types: [String; 2],
    pub results: Vec<NaturalityResult>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(NaturalityResult::holds)
    }

    pub fn counterexample(&self) -> Option<&str> {
        self.results.iter().find_map(|r| match &r.exhaustive {
            Exhaustive::Counterexample(c) => Some(c.as_str()),
            _ => None,
        })
    }
}

impl fmt::Display for NaturalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = &self.types;
        writeln!(f, "{} over {} at ({a}, {b})", self.morphism, self.inner)?;
        for r in &self.results {
            let status = if r.holds() { "ok" } else { "FAILED" };
            let exhaustive = match &r.exhaustive {
                Exhaustive::Passed { cases } => format!("{cases} cases enumerated"),
                Exhaustive::Counterexample(c) => format!("counterexample: {c}"),
                Exhaustive::TooLarge(why) => format!("not enumerated: {why}"),
            };
            let symbolic = match r.symbolic {
                Some(true) => "; proved by conversion",
                Some(false) => "; not provable by conversion",
                None => "",
            };
            writeln!(f, "  {status} {}: {exhaustive}{symbolic}", r.law)?;
        }
        Ok(())
    }
}

/// Both sides of each naturality equation, with `a`, `m` and `k` free.
struct Sides {
    env: Vec<(String, Type)>,
    lhs: Term,
    rhs: Term,
}

fn naturality_sides(
    morph: &MonadMorphism,
    inner: &TermMonad,
    outer: &TermMonad,
    alpha: &Type,
    beta_ty: &Type,
) -> Result<[Sides; 2], MorphismError> {
    let v = Term::var;
    let lift_a = lift_term(morph, inner, alpha)?;
    let lift_b = lift_term(morph, inner, beta_ty)?;

    let unit = Sides {
        env: vec![("a".into(), alpha.clone())],
        lhs: Term::app(lift_a.clone(), Term::app(inner.unit_at(alpha), v("a"))),
        rhs: Term::app(outer.unit_at(alpha), v("a")),
    };

    let m1_bind = Term::apps(inner.bind_at(alpha, beta_ty), [v("m"), v("k")]);
    let lifted_k = Term::lam("x", alpha.clone(), Term::app(lift_b.clone(), Term::app(v("k"), v("x"))));
    let bind = Sides {
        env: vec![
            ("m".into(), inner.ctor_at(alpha)),
            ("k".into(), Type::arrow(alpha.clone(), inner.ctor_at(beta_ty))),
        ],
        lhs: Term::app(lift_b, m1_bind),
        rhs: Term::apps(outer.bind_at(alpha, beta_ty), [Term::app(lift_a, v("m")), lifted_k]),
    };
    Ok([unit, bind])
}

/// Checks that `morph`'s lift over `inner` is natural: exhaustively over
/// `model` at `a : alpha`, `m : M1 alpha`, `k : alpha -> M1 beta`, and by
/// βη-conversion with those variables free.
pub fn check_naturality(
    morph: &MonadMorphism,
    inner: &MonadDef,
    model: &Model,
    alpha: &SemType,
    beta_ty: &SemType,
) -> Result<NaturalityReport, MorphismError> {
    let inner_m = term_inner(inner)?;
    let outer = apply_to(morph, inner_m)?;
    let ground = |t: &SemType| t.to_type().ok_or_else(|| MonadError::NotMonadic(t.to_string()));
    let (a, b) = (ground(alpha)?, ground(beta_ty)?);
    let sides = naturality_sides(morph, inner_m, &outer, &a, &b)?;
    let mut results = Vec::new();
    for (law, s) in [NaturalityLaw::Unit, NaturalityLaw::Bind].into_iter().zip(sides) {
        let env: TypeEnv = s.env.iter().cloned().collect();
        let symbolic = term_eq(&s.lhs, &s.rhs, EqMode::AlphaBetaEta, &env).ok();
        let exhaustive = match enumerate(model, &s) {
            Ok(n) => Exhaustive::Passed { cases: n },
            Err(Stop::Counter(c)) => Exhaustive::Counterexample(c),
            Err(Stop::TooLarge(why)) => Exhaustive::TooLarge(why),
            Err(Stop::Error(e)) => return Err(e.into()),
        };
        results.push(NaturalityResult {
            law,
            exhaustive,
            symbolic,
        });
    }
    Ok(NaturalityReport {
        morphism: morph.name.clone(),
        inner: inner_m.name().to_string(),
        types: [alpha.to_string(), beta_ty.to_string()],
        results,
    })
}

enum Stop {
    Counter(String),
    TooLarge(String),
    Error(ModelError),
}

impl From<ModelError> for Stop {
    fn from(e: ModelError) -> Stop {
        match e {
            ModelError::DomainTooLarge { .. } => Stop::TooLarge(e.to_string()),
            e => Stop::Error(e),
        }
    }
}

fn enumerate(model: &Model, s: &Sides) -> Result<u64, Stop> {
    let lhs = Compiled::new(&beta(&s.lhs), model, &s.env)?;
    let rhs = Compiled::new(&beta(&s.rhs), model, &s.env)?;
    let out_ty = SemType::from_type(lhs.ty())?;
    let doms: Vec<SemType> = s
        .env
        .iter()
        .map(|(_, t)| SemType::from_type(t))
        .collect::<Result<_, _>>()?;
    let sizes: Vec<usize> = doms.iter().map(|d| model.cardinality(d)).collect::<Result<_, _>>()?;
    let total: u128 = sizes.iter().map(|&n| n as u128).product();
    if total > MAX_CASES {
        return Err(Stop::TooLarge(format!("{total} cases")));
    }
    let mut idx = vec![0usize; sizes.len()];
    let mut cases = 0;
    loop {
        let args: Vec<Value> = idx
            .iter()
            .zip(&doms)
            .map(|(&i, d)| model.nth(d, i))
            .collect::<Result<_, _>>()?;
        let l = lhs.run(model, &args)?;
        let r = rhs.run(model, &args)?;
        if l != r {
            let shown: Vec<String> = s
                .env
                .iter()
                .zip(&args)
                .zip(&doms)
                .map(|(((n, _), v), d)| format!("{n} = {}", model.show(v, d)))
                .collect();
            return Err(Stop::Counter(format!(
                "{}: {} vs {}",
                shown.join(", "),
                model.show(&l, &out_ty),
                model.show(&r, &out_ty)
            )));
        }
        cases += 1;
        // odometer over the argument indices
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(cases);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}
