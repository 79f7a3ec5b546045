//! Regression corpora: trees with optional golden meanings.
//!
//! ```text
//! @monad cont:t
//! (everyone smokes) => \c:t -> t. forall (\x:e. c (smoke x))
//! @monad powerset
//! (who smokes) => {0, 1}
//! ```
//!
//! Goldens are terms under term monads and model values (in the model file
//! syntax) under set monads. An item without `=>` only has to derive.
//! `@monad` switches the monad for the lines that follow.

use std::fmt;

use thiserror::Error;

use super::{interpret, GrammarError, Interpretation, Lexicon, SynTree};
use crate::kernel::{term_eq, EqMode, TypeEnv};
use crate::model::{parse_value, Model, SemType, Value};
use crate::monads::{MonadDef, MonadError};
use crate::signature::Signature;
use crate::syntax::{parse_term, ParseError, Parser};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusItem {
    pub line: usize,
    pub monad: String,
    pub tree: SynTree,
    pub expected: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ItemStatus {
    Pass { got: String },
    Fail { got: String, expected: String },
    Error(String),
}

impl ItemStatus {
    pub fn passed(&self) -> bool {
        matches!(self, ItemStatus::Pass { .. })
    }
}

#[derive(Clone, Debug, Default)]
pub struct CorpusReport {
    pub items: Vec<(CorpusItem, ItemStatus)>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, s)| s.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(CorpusItem, ItemStatus)> {
        self.items.iter().filter(|(_, s)| !s.passed())
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (item, status) in &self.items {
            let head = format!("line {} [{}] {}", item.line, item.monad, item.tree);
            match status {
                ItemStatus::Pass { got } => writeln!(f, "PASS {head}\n     {got}")?,
                ItemStatus::Fail { got, expected } => {
                    writeln!(f, "FAIL {head}\n     expected {expected}\n     got      {got}")?
                }
                ItemStatus::Error(e) => writeln!(f, "ERROR {head}\n     {e}")?,
            }
        }
        let ok = self.items.iter().filter(|(_, s)| s.passed()).count();
        write!(f, "{ok}/{} passed", self.items.len())
    }
}

/// Reads a corpus. Items before any `@monad` line use `default_monad`.
pub fn parse_corpus(src: &str, default_monad: &str) -> Result<Vec<CorpusItem>, CorpusError> {
    let mut monad = default_monad.to_string();
    let mut items = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let code = raw.split_once('#').map_or(raw, |(c, _)| c).trim();
        if code.is_empty() {
            continue;
        }
        if let Some(rest) = code.strip_prefix("@monad") {
            let name = rest.trim();
            MonadDef::lookup(name).map_err(|e| CorpusError::Parse {
                line,
                message: e.to_string(),
            })?;
            monad = name.to_string();
            continue;
        }
        let (tree_src, expected) = match code.split_once("=>") {
            Some((t, e)) => (t, Some(e.trim().to_string())),
            None => (code, None),
        };
        let tree = SynTree::parse(tree_src).map_err(|e| CorpusError::Parse {
            line,
            message: e.to_string(),
        })?;
        items.push(CorpusItem {
            line,
            monad: monad.clone(),
            tree,
            expected,
        });
    }
    Ok(items)
}

/// Derives every item and compares it with its golden meaning.
pub fn run_corpus(
    src: &str,
    default_monad: &str,
    lexicon: &Lexicon,
    model: Option<&Model>,
    sig: &Signature,
) -> Result<CorpusReport, CorpusError> {
    let items = parse_corpus(src, default_monad)?;
    let mut report = CorpusReport::default();
    for item in items {
        let status = run_item(&item, lexicon, model, sig);
        report.items.push((item, status));
    }
    Ok(report)
}

fn run_item(item: &CorpusItem, lexicon: &Lexicon, model: Option<&Model>, sig: &Signature) -> ItemStatus {
    let monad = match MonadDef::lookup(&item.monad) {
        Ok(m) => m,
        Err(e) => return ItemStatus::Error(e.to_string()),
    };
    let result = match interpret(&item.tree, &monad, lexicon, model) {
        Ok(r) => r,
        Err(e) => return ItemStatus::Error(e.to_string()),
    };
    match compare(&result, &monad, item.expected.as_deref(), model, sig) {
        Ok(status) => status,
        Err(e) => ItemStatus::Error(format!("golden: {e}")),
    }
}

fn compare(
    result: &Interpretation,
    monad: &MonadDef,
    expected: Option<&str>,
    model: Option<&Model>,
    sig: &Signature,
) -> Result<ItemStatus, GrammarError> {
    match result {
        Interpretation::Symbolic(d) => {
            let got = d.meaning().to_string();
            let Some(expected) = expected else {
                return Ok(ItemStatus::Pass { got });
            };
            let want = parse_term(expected, sig)?;
            let same = term_eq(d.meaning(), &want, EqMode::AlphaBeta, &TypeEnv::new()).map_err(MonadError::from)?;
            Ok(if same {
                ItemStatus::Pass { got }
            } else {
                ItemStatus::Fail {
                    got,
                    expected: expected.to_string(),
                }
            })
        }
        Interpretation::Values(d) => {
            let model = model.ok_or_else(|| GrammarError::ModelRequired(monad.name()))?;
            let ty = monad.carrier(d.ty())?;
            let got = model.show(d.meaning(), &ty);
            let Some(expected) = expected else {
                return Ok(ItemStatus::Pass { got });
            };
            let want = parse_golden_value(expected, model, &ty, sig)?;
            Ok(if &want == d.meaning() {
                ItemStatus::Pass { got }
            } else {
                ItemStatus::Fail {
                    got,
                    expected: expected.to_string(),
                }
            })
        }
    }
}

fn parse_golden_value(src: &str, model: &Model, ty: &SemType, sig: &Signature) -> Result<Value, ParseError> {
    let mut p = Parser::new(src, sig)?;
    let v = parse_value(&mut p, model, ty)?;
    p.expect_end()?;
    Ok(v)
}
