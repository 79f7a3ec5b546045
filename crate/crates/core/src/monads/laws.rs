//! Checking the monad laws: symbolically by βη-conversion for term monads,
//! and exhaustively over a finite model for every monad.
//!
//! The exhaustive check tabulates bind once per pair of types, keyed by the
//! canonical indices of its arguments, so associativity over all `(m, k, l)`
//! reduces to table lookups.

use std::fmt;

use super::{Carrier, MonadDef, MonadError, TermMonad, ValueCarrier};
use crate::kernel::{term_eq, EqMode, TypeEnv};
use crate::model::{Model, ModelError, SemType, Value};
use crate::term::Term;
use crate::types::Type;

/// Upper bound on the number of `(m, k, l)` triples checked for associativity.
const MAX_TRIPLES: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    LeftIdentity,
    RightIdentity,
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::LeftIdentity => "left identity",
            Law::RightIdentity => "right identity",
            Law::Associativity => "associativity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exhaustive {
    Passed {
        cases: u64,
    },
    Counterexample(String),
    /// The enumeration exceeds the model's bounds.
    TooLarge(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: Law,
    pub exhaustive: Exhaustive,
    /// βη-convertibility of the two sides, for term monads.
    pub symbolic: Option<bool>,
}

impl LawResult {
    /// True when no counterexample was found and the law was either
    /// enumerated in full or proved by conversion.
    pub fn holds(&self) -> bool {
        match &self.exhaustive {
            Exhaustive::Passed { .. } => true,
            Exhaustive::Counterexample(_) => false,
            Exhaustive::TooLarge(_) => self.symbolic == Some(true),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub monad: String,
    pub types: [String; 3],
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(LawResult::holds)
    }

    pub fn counterexample(&self) -> Option<(Law, &str)> {
        self.results.iter().find_map(|r| match &r.exhaustive {
            Exhaustive::Counterexample(c) => Some((r.law, c.as_str())),
            _ => None,
        })
    }

    pub fn result(&self, law: Law) -> &LawResult {
        self.results
            .iter()
            .find(|r| r.law == law)
            .expect("every law is reported")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.types;
        writeln!(f, "{} at ({a}, {b}, {c})", self.monad)?;
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

/// Checks `η a ⋆ k = k a`, `m ⋆ η = m` and `(m ⋆ k) ⋆ l = m ⋆ (λx. k x ⋆ l)`
/// with `a : α`, `m : M α`, `k : α → M β`, `l : β → M γ`.
pub fn check_monad_laws(
    monad: &MonadDef,
    model: &Model,
    alpha: &SemType,
    beta: &SemType,
    gamma: &SemType,
) -> Result<LawReport, MonadError> {
    let symbolic = match (monad, alpha.to_type(), beta.to_type(), gamma.to_type()) {
        (MonadDef::Term(m), Some(a), Some(b), Some(c)) => Some(symbolic_laws(m, &a, &b, &c)?),
        _ => None,
    };
    let carrier = ValueCarrier::new(monad, model);
    let check = Checker {
        c: &carrier,
        model,
        alpha,
        beta,
        gamma,
    };
    let exhaustive = [check.left_identity()?, check.right_identity()?, check.associativity()?];
    let laws = [Law::LeftIdentity, Law::RightIdentity, Law::Associativity];
    let results = laws
        .iter()
        .zip(exhaustive)
        .enumerate()
        .map(|(i, (&law, exhaustive))| LawResult {
            law,
            exhaustive,
            symbolic: symbolic.map(|s| s[i]),
        })
        .collect();
    Ok(LawReport {
        monad: monad.name(),
        types: [alpha.to_string(), beta.to_string(), gamma.to_string()],
        results,
    })
}

/// βη-convertibility of both sides of each law, with the quantified
/// variables left free.
pub fn symbolic_laws(m: &TermMonad, alpha: &Type, beta: &Type, gamma: &Type) -> Result<[bool; 3], MonadError> {
    let env = TypeEnv::from([
        ("a".to_string(), alpha.clone()),
        ("m".to_string(), m.ctor_at(alpha)),
        ("k".to_string(), Type::arrow(alpha.clone(), m.ctor_at(beta))),
        ("l".to_string(), Type::arrow(beta.clone(), m.ctor_at(gamma))),
    ]);
    let v = Term::var;
    let bind = |x: &Type, y: &Type, mv: Term, k: Term| Term::apps(m.bind_at(x, y), [mv, k]);
    let eq = |l: &Term, r: &Term| term_eq(l, r, EqMode::AlphaBetaEta, &env);

    let unit_a = Term::app(m.unit_at(alpha), v("a"));
    let left = eq(&bind(alpha, beta, unit_a, v("k")), &Term::app(v("k"), v("a")))?;
    let right = eq(&bind(alpha, alpha, v("m"), m.unit_at(alpha)), &v("m"))?;
    let lhs = bind(beta, gamma, bind(alpha, beta, v("m"), v("k")), v("l"));
    let kl = Term::lam("x", alpha.clone(), bind(beta, gamma, Term::app(v("k"), v("x")), v("l")));
    let rhs = bind(alpha, gamma, v("m"), kl);
    let assoc = eq(&lhs, &rhs)?;
    Ok([left, right, assoc])
}

struct Checker<'a> {
    c: &'a ValueCarrier<'a>,
    model: &'a Model,
    alpha: &'a SemType,
    beta: &'a SemType,
    gamma: &'a SemType,
}

enum Stop {
    Counter(String),
    TooLarge(String),
    Error(MonadError),
}

impl From<MonadError> for Stop {
    fn from(e: MonadError) -> Stop {
        match e {
            MonadError::Model(ModelError::DomainTooLarge { .. }) => Stop::TooLarge(e.to_string()),
            // an operation that leaves the carrier is a failure of the monad
            MonadError::Model(ModelError::IllTyped(_)) => Stop::Counter(format!("operation left the carrier: {e}")),
            e => Stop::Error(e),
        }
    }
}

impl From<ModelError> for Stop {
    fn from(e: ModelError) -> Stop {
        Stop::from(MonadError::from(e))
    }
}

fn finish(r: Result<u64, Stop>) -> Result<Exhaustive, MonadError> {
    match r {
        Ok(cases) => Ok(Exhaustive::Passed { cases }),
        Err(Stop::Counter(c)) => Ok(Exhaustive::Counterexample(c)),
        Err(Stop::TooLarge(why)) => Ok(Exhaustive::TooLarge(why)),
        Err(Stop::Error(e)) => Err(e),
    }
}

impl Checker<'_> {
    fn show(&self, v: &Value, ty: &SemType) -> String {
        self.model.show(v, ty)
    }

    fn left_identity(&self) -> Result<Exhaustive, MonadError> {
        finish(self.left_identity_cases())
    }

    fn left_identity_cases(&self) -> Result<u64, Stop> {
        let (a_ty, b_ty) = (self.alpha, self.beta);
        let mb = self.c.monad_ty(b_ty)?;
        let k_ty = SemType::arrow(a_ty.clone(), mb.clone());
        let n_k = self.model.cardinality(&k_ty)?;
        let n_a = self.model.cardinality(a_ty)?;
        let units: Vec<Value> = (0..n_a)
            .map(|i| {
                let a = self.model.nth(a_ty, i)?;
                Ok::<_, Stop>(self.c.unit(a_ty, &a)?)
            })
            .collect::<Result<_, _>>()?;
        let mut cases = 0;
        for ki in 0..n_k {
            let k = self.model.nth(&k_ty, ki)?;
            for (ai, u) in units.iter().enumerate() {
                let lhs = self.c.bind(a_ty, b_ty, u, &k)?;
                let rhs = self.model.apply(&k, &self.model.nth(a_ty, ai)?, a_ty)?;
                if lhs != rhs {
                    return Err(Stop::Counter(format!(
                        "a = {}, k = {}: η a ⋆ k = {} but k a = {}",
                        self.show(&self.model.nth(a_ty, ai)?, a_ty),
                        self.show(&k, &k_ty),
                        self.show(&lhs, &mb),
                        self.show(&rhs, &mb)
                    )));
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    fn right_identity(&self) -> Result<Exhaustive, MonadError> {
        finish(self.right_identity_cases())
    }

    fn right_identity_cases(&self) -> Result<u64, Stop> {
        let a_ty = self.alpha;
        let ma = self.c.monad_ty(a_ty)?;
        let unit_fn = self.c.lambda("x", a_ty, &mut |x| self.c.unit(a_ty, x))?;
        let n = self.model.cardinality(&ma)?;
        for i in 0..n {
            let m = self.model.nth(&ma, i)?;
            let out = self.c.bind(a_ty, a_ty, &m, &unit_fn)?;
            if out != m {
                return Err(Stop::Counter(format!(
                    "m = {}: m ⋆ η = {}",
                    self.show(&m, &ma),
                    self.show(&out, &ma)
                )));
            }
        }
        Ok(n as u64)
    }

    fn associativity(&self) -> Result<Exhaustive, MonadError> {
        finish(self.associativity_cases())
    }

    /// Table of `m ⋆ k` as indices into `M y`, for every `m : M x` and every
    /// `k : x → M y`, indexed `[m * n_k + k]`.
    fn bind_table(&self, x: &SemType, y: &SemType) -> Result<(Vec<u32>, usize), Stop> {
        let mx = self.c.monad_ty(x)?;
        let my = self.c.monad_ty(y)?;
        let k_ty = SemType::arrow(x.clone(), my.clone());
        let n_m = self.model.cardinality(&mx)?;
        let n_k = self.model.cardinality(&k_ty)?;
        if (n_m as u128) * (n_k as u128) > self.model.cap() as u128 * 4 {
            return Err(Stop::TooLarge(format!(
                "bind table for {mx} and {k_ty} has {} entries",
                n_m as u128 * n_k as u128
            )));
        }
        let ms: Vec<Value> = (0..n_m).map(|i| self.model.nth(&mx, i)).collect::<Result<_, _>>()?;
        let mut table = vec![0u32; n_m * n_k];
        for ki in 0..n_k {
            let k = self.model.nth(&k_ty, ki)?;
            for (mi, m) in ms.iter().enumerate() {
                let out = self.c.bind(x, y, m, &k)?;
                table[mi * n_k + ki] = self.model.index_of(&my, &out)? as u32;
            }
        }
        Ok((table, n_k))
    }

    fn associativity_cases(&self) -> Result<u64, Stop> {
        let (a_ty, b_ty, g_ty) = (self.alpha, self.beta, self.gamma);
        let ma = self.c.monad_ty(a_ty)?;
        let mb = self.c.monad_ty(b_ty)?;
        let mg = self.c.monad_ty(g_ty)?;
        let k_ty = SemType::arrow(a_ty.clone(), mb.clone());
        let l_ty = SemType::arrow(b_ty.clone(), mg.clone());
        let n_a = self.model.cardinality(a_ty)?;
        let n_ma = self.model.cardinality(&ma)?;
        let n_mg = self.model.cardinality(&mg)?;
        let n_k = self.model.cardinality(&k_ty)?;
        let n_l = self.model.cardinality(&l_ty)?;
        let triples = n_ma as u128 * n_k as u128 * n_l as u128;
        if triples > MAX_TRIPLES {
            return Err(Stop::TooLarge(format!("{triples} (m, k, l) triples")));
        }
        let (b_ab, _) = self.bind_table(a_ty, b_ty)?;
        let (b_bg, n_l2) = self.bind_table(b_ty, g_ty)?;
        let (b_ag, n_kl) = self.bind_table(a_ty, g_ty)?;
        debug_assert_eq!(n_l, n_l2);

        // k as the indices of its outputs
        let k_digits: Vec<Vec<u32>> = (0..n_k)
            .map(|ki| match self.model.nth(&k_ty, ki)? {
                Value::Func(outs) => outs
                    .iter()
                    .map(|o| Ok(self.model.index_of(&mb, o)? as u32))
                    .collect::<Result<Vec<u32>, Stop>>(),
                _ => unreachable!("arrow inhabitants are tables"),
            })
            .collect::<Result<_, _>>()?;
        let weights: Vec<usize> = (0..n_a).map(|i| n_mg.pow(i as u32)).collect();

        for (ki, digits) in k_digits.iter().enumerate() {
            for li in 0..n_l {
                // index of λx. k x ⋆ l
                let kl: usize = digits
                    .iter()
                    .zip(&weights)
                    .map(|(&d, &w)| b_bg[d as usize * n_l + li] as usize * w)
                    .sum();
                for mi in 0..n_ma {
                    let mk = b_ab[mi * n_k + ki] as usize;
                    let lhs = b_bg[mk * n_l + li];
                    let rhs = b_ag[mi * n_kl + kl];
                    if lhs != rhs {
                        let show = |ty: &SemType, i: usize| -> Result<String, Stop> {
                            Ok(self.show(&self.model.nth(ty, i)?, ty))
                        };
                        return Err(Stop::Counter(format!(
                            "m = {}, k = {}, l = {}: (m ⋆ k) ⋆ l = {} but m ⋆ (λx. k x ⋆ l) = {}",
                            show(&ma, mi)?,
                            show(&k_ty, ki)?,
                            show(&l_ty, li)?,
                            show(&mg, lhs as usize)?,
                            show(&mg, rhs as usize)?
                        )));
                    }
                }
            }
        }
        Ok(triples as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> SemType {
        SemType::base("e")
    }

    fn t() -> SemType {
        SemType::base("t")
    }

    #[test]
    fn identity_and_powerset_pass_on_a_small_model() {
        let model = Model::standard_sized(2, 2, 2);
        for m in [MonadDef::identity(), MonadDef::powerset(), MonadDef::pointed_powerset()] {
            let r = check_monad_laws(&m, &model, &e(), &e(), &e()).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r
                .results
                .iter()
                .all(|x| matches!(x.exhaustive, Exhaustive::Passed { .. })));
        }
    }

    #[test]
    fn reader_passes_symbolically_and_exhaustively() {
        let model = Model::standard_sized(2, 2, 2);
        let m = MonadDef::reader(Type::s());
        let r = check_monad_laws(&m, &model, &e(), &t(), &e()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.results.iter().all(|x| x.symbolic == Some(true)));
    }

    #[test]
    fn non_monad_is_caught() {
        // unit that forgets its argument's world dependence is fine, but a
        // bind that ignores k is not
        use crate::monads::{TermKind, TermMonad};
        use crate::signature::Signature;
        use crate::syntax::{parse_term, parse_type};
        let sig = Signature::standard();
        let bad = TermMonad::new(
            "bad",
            TermKind::Derived,
            parse_type("t -> a", &sig).unwrap(),
            parse_term("\\x:a. \\w:t. x", &sig).unwrap(),
            parse_term("\\m:t -> a. \\k:a -> t -> b. \\w:t. k (m true) w", &sig).unwrap(),
        )
        .unwrap();
        let model = Model::standard_sized(2, 1, 1);
        let r = check_monad_laws(&MonadDef::term(bad), &model, &e(), &e(), &e()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.counterexample().unwrap().0, Law::RightIdentity);
        assert_eq!(r.result(Law::RightIdentity).symbolic, Some(false));
    }
}
