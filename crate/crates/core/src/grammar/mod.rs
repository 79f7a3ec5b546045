//! Type-directed monadic composition over binary syntax trees.
//!
//! Each leaf is looked up in a lexicon and lifted into the active monad;
//! each branching node combines its children with `A_M` or `A_M′`, trying
//! the function on either side.

mod corpus;
mod lexicon;

use std::fmt;

use thiserror::Error;

pub use corpus::{parse_corpus, run_corpus, CorpusError, CorpusItem, CorpusReport, ItemStatus};
pub use lexicon::{Denotation, LexEntry, Lexicon, LexiconError, Mode};

use crate::kernel::{type_check, type_of_closed, TypeEnv};
use crate::model::{eval_closed, Model, SemType, Value};
use crate::monads::{
    apply_am, apply_am_prime, eps, Carrier, MonadDef, MonadError, SymbolicCarrier, TermKind, TermMonad, ValueCarrier,
};
use crate::signature::Signature;
use crate::syntax::{ParseError, Parser, Token};
use crate::term::Term;
use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("no composition rule applies to {left} : {left_ty} and {right} : {right_ty}")]
    NoRuleApplies {
        left: String,
        right: String,
        left_ty: String,
        right_ty: String,
    },
    #[error("ambiguous composition at {node}: {first} and {second} give different results")]
    AmbiguousComposition {
        node: String,
        first: String,
        second: String,
    },
    #[error("entry `{word}` does not fit {monad}: {reason}")]
    BadEntry {
        word: String,
        monad: String,
        reason: String,
    },
    #[error("{0} needs a model")]
    ModelRequired(String),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error("tree: {0}")]
    Parse(#[from] ParseError),
}

/// A binary-branching syntax tree with words at the leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SynTree {
    Leaf(String),
    Node(Box<SynTree>, Box<SynTree>),
}

impl SynTree {
    pub fn node(left: SynTree, right: SynTree) -> SynTree {
        SynTree::Node(Box::new(left), Box::new(right))
    }

    /// Parses `(John (likes everyone))`; a bare word is a leaf.
    pub fn parse(src: &str) -> Result<SynTree, ParseError> {
        let sig = Signature::empty();
        let mut p = Parser::new(src, &sig)?;
        let tree = parse_tree(&mut p)?;
        p.expect_end()?;
        Ok(tree)
    }

    pub fn words(&self) -> Vec<&str> {
        match self {
            SynTree::Leaf(w) => vec![w],
            SynTree::Node(l, r) => {
                let mut out = l.words();
                out.extend(r.words());
                out
            }
        }
    }
}

fn parse_tree(p: &mut Parser<'_>) -> Result<SynTree, ParseError> {
    if p.eat(&Token::LParen) {
        let left = parse_tree(p)?;
        let right = parse_tree(p)?;
        p.expect(&Token::RParen)?;
        Ok(SynTree::node(left, right))
    } else {
        Ok(SynTree::Leaf(p.expect_ident()?))
    }
}

impl fmt::Display for SynTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynTree::Leaf(w) => f.write_str(w),
            SynTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `A_M`, lifted in both arguments.
    Am,
    /// `A_M′`, lifted in the function only.
    AmPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    LeftFunction,
    RightFunction,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Am => "A_M",
            Rule::AmPrime => "A_M'",
        })
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::LeftFunction => "function left",
            Order::RightFunction => "function right",
        })
    }
}

/// One node of a derivation. `ty` is the underlying type `α` of a meaning
/// of type `M α`.
#[derive(Clone, Debug)]
pub enum DerivNode<T, R> {
    Leaf {
        word: String,
        ty: T,
        meaning: R,
    },
    Node {
        rule: Rule,
        order: Order,
        /// How many (rule, order) combinations typechecked here.
        applicable: usize,
        ty: T,
        meaning: R,
        left: Box<DerivNode<T, R>>,
        right: Box<DerivNode<T, R>>,
    },
}

impl<T, R> DerivNode<T, R> {
    pub fn ty(&self) -> &T {
        match self {
            DerivNode::Leaf { ty, .. } | DerivNode::Node { ty, .. } => ty,
        }
    }

    pub fn meaning(&self) -> &R {
        match self {
            DerivNode::Leaf { meaning, .. } | DerivNode::Node { meaning, .. } => meaning,
        }
    }

    /// Every node, children before parents.
    pub fn nodes(&self) -> Vec<&DerivNode<T, R>> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a DerivNode<T, R>>) {
        if let DerivNode::Node { left, right, .. } = self {
            left.collect(out);
            right.collect(out);
        }
        out.push(self);
    }

    /// The largest number of applicable rule choices at any node.
    pub fn max_applicable(&self) -> usize {
        self.nodes()
            .iter()
            .map(|n| match n {
                DerivNode::Node { applicable, .. } => *applicable,
                DerivNode::Leaf { .. } => 1,
            })
            .max()
            .unwrap_or(1)
    }
}

#[derive(Clone, Debug)]
pub struct Derivation<T, R> {
    pub tree: SynTree,
    pub root: DerivNode<T, R>,
    /// `ε` of the meaning, for continuation monads at the answer type.
    pub answer: Option<Term>,
}

impl<T, R> Derivation<T, R> {
    pub fn meaning(&self) -> &R {
        self.root.meaning()
    }

    pub fn ty(&self) -> &T {
        self.root.ty()
    }
}

/// A derivation in either representation.
#[derive(Clone, Debug)]
pub enum Interpretation {
    Symbolic(Derivation<Type, Term>),
    Values(Derivation<SemType, Value>),
}

impl Interpretation {
    pub fn max_applicable(&self) -> usize {
        match self {
            Interpretation::Symbolic(d) => d.root.max_applicable(),
            Interpretation::Values(d) => d.root.max_applicable(),
        }
    }
}

/// Lifting lexicon entries into a carrier.
pub trait Lexical: Carrier {
    fn entry_type(&self, entry: &LexEntry) -> Result<Self::Ty, GrammarError>;
    fn entry_meaning(&self, entry: &LexEntry) -> Result<Self::Repr, GrammarError>;
    fn describe(&self, r: &Self::Repr) -> String;
}

fn bad_entry(entry: &LexEntry, monad: &str, reason: impl Into<String>) -> GrammarError {
    GrammarError::BadEntry {
        word: entry.word.clone(),
        monad: monad.to_string(),
        reason: reason.into(),
    }
}

impl Lexical for SymbolicCarrier<'_> {
    fn entry_type(&self, entry: &LexEntry) -> Result<Type, GrammarError> {
        Ok(entry.ty.clone())
    }

    fn entry_meaning(&self, entry: &LexEntry) -> Result<Term, GrammarError> {
        let m = self.monad();
        match (&entry.denotation, entry.mode) {
            (Denotation::Term(t), Mode::Plain) => Ok(self.finish(self.unit(&entry.ty, t)?)),
            (Denotation::Term(t), Mode::Monadic) => {
                let expected = m.ctor_at(&entry.ty);
                let got = type_of_closed(t).map_err(MonadError::from)?;
                if got != expected {
                    return Err(bad_entry(
                        entry,
                        m.name(),
                        format!("has type {got}, expected {expected}"),
                    ));
                }
                Ok(t.clone())
            }
            _ => Err(bad_entry(entry, m.name(), "sets of alternatives need a set monad")),
        }
    }

    fn describe(&self, r: &Term) -> String {
        r.to_string()
    }
}

impl Lexical for ValueCarrier<'_> {
    fn entry_type(&self, entry: &LexEntry) -> Result<SemType, GrammarError> {
        Ok(SemType::from_type(&entry.ty).map_err(MonadError::from)?)
    }

    fn entry_meaning(&self, entry: &LexEntry) -> Result<Value, GrammarError> {
        let alpha = self.entry_type(entry)?;
        let monad = self.monad();
        let eval = |t: &Term| eval_closed(t, self.model()).map_err(|e| GrammarError::from(MonadError::from(e)));
        match (&entry.denotation, entry.mode, monad) {
            (Denotation::Term(t), Mode::Plain, _) => Ok(self.unit(&alpha, &eval(t)?)?),
            (Denotation::Term(t), Mode::Monadic, MonadDef::Term(m)) => {
                let expected = m.ctor_at(&entry.ty);
                let got = type_of_closed(t).map_err(MonadError::from)?;
                if got != expected {
                    return Err(bad_entry(
                        entry,
                        m.name(),
                        format!("has type {got}, expected {expected}"),
                    ));
                }
                eval(t)
            }
            (Denotation::Set(alts), Mode::Monadic, MonadDef::Set(s)) if s.name() == "powerset" => {
                Ok(Value::set(alts.iter().map(eval).collect::<Result<_, _>>()?))
            }
            (Denotation::Pointed(point, alts), Mode::Monadic, MonadDef::Set(s)) if s.name() == "pointed-powerset" => {
                let set = Value::set(alts.iter().map(eval).collect::<Result<_, _>>()?);
                Ok(Value::pair(eval(point)?, set))
            }
            _ => Err(bad_entry(entry, &monad.name(), "denotation does not fit this monad")),
        }
    }

    fn describe(&self, r: &Value) -> String {
        format!("{r:?}")
    }
}

/// Interprets `tree` in any carrier.
pub fn derive<C: Lexical>(c: &C, tree: &SynTree, lexicon: &Lexicon) -> Result<DerivNode<C::Ty, C::Repr>, GrammarError> {
    match tree {
        SynTree::Leaf(word) => {
            let entry = lexicon
                .get(word)
                .ok_or_else(|| GrammarError::UnknownWord(word.clone()))?;
            Ok(DerivNode::Leaf {
                word: word.clone(),
                ty: c.entry_type(entry)?,
                meaning: c.entry_meaning(entry)?,
            })
        }
        SynTree::Node(l, r) => {
            let left = derive(c, l, lexicon)?;
            let right = derive(c, r, lexicon)?;
            compose(c, tree, left, right)
        }
    }
}

type Success<C> = (Rule, Order, <C as Carrier>::Ty, <C as Carrier>::Repr);

fn compose<C: Lexical>(
    c: &C,
    tree: &SynTree,
    left: DerivNode<C::Ty, C::Repr>,
    right: DerivNode<C::Ty, C::Repr>,
) -> Result<DerivNode<C::Ty, C::Repr>, GrammarError> {
    let mut successes: Vec<Success<C>> = Vec::new();
    for rule in [Rule::Am, Rule::AmPrime] {
        for order in [Order::LeftFunction, Order::RightFunction] {
            let (f, x) = match order {
                Order::LeftFunction => (&left, &right),
                Order::RightFunction => (&right, &left),
            };
            let Some((dom, cod)) = c.split_arrow(f.ty()) else {
                continue;
            };
            let out = match rule {
                Rule::Am if dom == *x.ty() => apply_am(c, f.meaning(), x.meaning(), x.ty(), &cod)?,
                Rule::AmPrime if c.unwrap_monad(&dom).as_ref() == Some(x.ty()) => {
                    apply_am_prime(c, f.meaning(), x.meaning(), x.ty(), &cod)?
                }
                _ => continue,
            };
            successes.push((rule, order, cod, out));
        }
    }
    let applicable = successes.len();
    let mut it = successes.into_iter();
    let Some((rule, order, ty, meaning)) = it.next() else {
        let (SynTree::Node(l, r), lt, rt) = (tree, left.ty(), right.ty()) else {
            unreachable!("composition happens at branching nodes")
        };
        return Err(GrammarError::NoRuleApplies {
            left: l.to_string(),
            right: r.to_string(),
            left_ty: lt.to_string(),
            right_ty: rt.to_string(),
        });
    };
    for (other_rule, other_order, _, other) in it {
        if !c.same(&meaning, &other) {
            return Err(GrammarError::AmbiguousComposition {
                node: tree.to_string(),
                first: format!("{rule} ({order}) = {}", c.describe(&meaning)),
                second: format!("{other_rule} ({other_order}) = {}", c.describe(&other)),
            });
        }
    }
    Ok(DerivNode::Node {
        rule,
        order,
        applicable,
        ty,
        meaning,
        left: Box::new(left),
        right: Box::new(right),
    })
}

/// Symbolic interpretation under a term monad. For continuation monads the
/// answer `ε` is computed when the result has the answer type.
pub fn interpret_symbolic(
    tree: &SynTree,
    monad: &TermMonad,
    lexicon: &Lexicon,
) -> Result<Derivation<Type, Term>, GrammarError> {
    let avoid: Vec<&Term> = lexicon
        .entries()
        .filter_map(|e| match &e.denotation {
            Denotation::Term(t) => Some(t),
            _ => None,
        })
        .collect();
    let c = SymbolicCarrier::new(monad, avoid);
    let root = derive(&c, tree, lexicon)?;
    let answer = match monad.kind() {
        TermKind::Cont(omega) if root.ty() == omega => Some(eps(monad, root.meaning())?),
        _ => None,
    };
    Ok(Derivation {
        tree: tree.clone(),
        root,
        answer,
    })
}

/// Interpretation by evaluation in a finite model; works for every monad.
pub fn interpret_values(
    tree: &SynTree,
    monad: &MonadDef,
    lexicon: &Lexicon,
    model: &Model,
) -> Result<Derivation<SemType, Value>, GrammarError> {
    let c = ValueCarrier::new(monad, model);
    let root = derive(&c, tree, lexicon)?;
    Ok(Derivation {
        tree: tree.clone(),
        root,
        answer: None,
    })
}

/// Symbolic for term monads, by evaluation for set monads.
pub fn interpret(
    tree: &SynTree,
    monad: &MonadDef,
    lexicon: &Lexicon,
    model: Option<&Model>,
) -> Result<Interpretation, GrammarError> {
    match monad {
        MonadDef::Term(m) => Ok(Interpretation::Symbolic(interpret_symbolic(tree, m, lexicon)?)),
        MonadDef::Set(_) => {
            let model = model.ok_or_else(|| GrammarError::ModelRequired(monad.name()))?;
            Ok(Interpretation::Values(interpret_values(tree, monad, lexicon, model)?))
        }
    }
}

/// Checks that every recorded term has type `M α` for its recorded `α`.
pub fn check_node_types(d: &Derivation<Type, Term>, monad: &TermMonad, sig: &Signature) -> Result<(), String> {
    for node in d.root.nodes() {
        let got = type_check(node.meaning(), sig, &TypeEnv::new()).map_err(|e| e.to_string())?;
        let expected = monad.ctor_at(node.ty());
        if got != expected {
            return Err(format!("{} has type {got}, recorded {expected}", node.meaning()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{term_eq, EqMode};
    use crate::syntax::parse_term;

    const LEXICON: &str = "\
John : e = John
Mary : e = Mary
smokes : e -> t = smoke
likes : e -> e -> t = like
everyone : e = \\c:e -> t. forall (\\x:e. c x) monadic
";

    fn lex() -> Lexicon {
        Lexicon::parse(LEXICON, &Signature::standard()).unwrap()
    }

    fn p(src: &str) -> Term {
        parse_term(src, &Signature::standard()).unwrap()
    }

    #[test]
    fn trees_round_trip() {
        let t = SynTree::parse("(Mary (likes everyone))").unwrap();
        assert_eq!(t.to_string(), "(Mary (likes everyone))");
        assert_eq!(t.words(), vec!["Mary", "likes", "everyone"]);
        assert!(SynTree::parse("(a b c)").is_err());
    }

    #[test]
    fn everyone_smokes_under_continuations() {
        let m = TermMonad::cont(Type::t());
        let d = interpret_symbolic(&SynTree::parse("(everyone smokes)").unwrap(), &m, &lex()).unwrap();
        let expected = p("\\c:t -> t. forall (\\x:e. c (smoke x))");
        assert!(term_eq(d.meaning(), &expected, EqMode::AlphaBeta, &TypeEnv::new()).unwrap());
        assert!(term_eq(
            d.answer.as_ref().unwrap(),
            &p("forall (\\x:e. smoke x)"),
            EqMode::AlphaBeta,
            &TypeEnv::new()
        )
        .unwrap());
        check_node_types(&d, &m, &Signature::standard()).unwrap();
        assert_eq!(d.root.max_applicable(), 1);
    }

    #[test]
    fn object_quantifier_takes_scope() {
        let m = TermMonad::cont(Type::t());
        let d = interpret_symbolic(&SynTree::parse("(Mary (likes everyone))").unwrap(), &m, &lex()).unwrap();
        let expected = p("\\c:t -> t. forall (\\x:e. c (like x Mary))");
        assert!(term_eq(d.meaning(), &expected, EqMode::AlphaBeta, &TypeEnv::new()).unwrap());
    }

    #[test]
    fn composition_errors() {
        let m = TermMonad::identity();
        let err = interpret_symbolic(&SynTree::parse("(John Mary)").unwrap(), &m, &lex()).unwrap_err();
        assert!(matches!(err, GrammarError::NoRuleApplies { .. }));
        let err = interpret_symbolic(&SynTree::parse("(John dances)").unwrap(), &m, &lex()).unwrap_err();
        assert_eq!(err, GrammarError::UnknownWord("dances".into()));
        let err = interpret_symbolic(&SynTree::parse("(everyone smokes)").unwrap(), &m, &lex()).unwrap_err();
        assert!(matches!(err, GrammarError::BadEntry { .. }));
    }

    #[test]
    fn set_monads_need_a_model() {
        let err = interpret(
            &SynTree::parse("(John smokes)").unwrap(),
            &MonadDef::powerset(),
            &lex(),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, GrammarError::ModelRequired(_)));
    }
}
