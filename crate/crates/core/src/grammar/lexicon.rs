//! Lexicon files.
//!
//! ```text
//! John : e = John plain
//! everyone : e = \c:e -> t. forall (\x:e. c x) monadic
//! who : e = {John, Mary, Bill} monadic   # comments run to end of line
//! ```
//!
//! The type is always the word's underlying type `α`. A plain entry is a
//! term of type `α` that gets η-wrapped; a monadic entry already denotes an
//! `M α`, written either as a term or, for the set monads, as a set literal
//! `{t, ...}` or pointed literal `<t0 | {t, ...}>` of terms of type `α`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::kernel::{type_check, TypeEnv};
use crate::signature::Signature;
use crate::syntax::{ParseError, Parser, Token};
use crate::term::Term;
use crate::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Monadic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Denotation {
    Term(Term),
    /// Alternatives for the powerset monad.
    Set(Vec<Term>),
    /// A distinguished alternative and the full set of alternatives.
    Pointed(Term, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEntry {
    pub word: String,
    /// Underlying type `α`.
    pub ty: Type,
    pub denotation: Denotation,
    pub mode: Mode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, LexEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LexiconError {
    pub line: usize,
    pub message: String,
}

impl Lexicon {
    pub fn new() -> Lexicon {
        Lexicon::default()
    }

    pub fn get(&self, word: &str) -> Option<&LexEntry> {
        self.entries.get(word)
    }

    pub fn insert(&mut self, entry: LexEntry) {
        self.entries.insert(entry.word.clone(), entry);
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds every entry of `other`, replacing entries with the same word.
    pub fn extend(&mut self, other: Lexicon) {
        self.entries.extend(other.entries);
    }

    pub fn parse(src: &str, sig: &Signature) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        for (i, raw) in src.lines().enumerate() {
            let code = raw.split_once('#').map_or(raw, |(code, _)| code);
            if code.trim().is_empty() {
                continue;
            }
            let entry = parse_entry(code, sig).map_err(|message| LexiconError { line: i + 1, message })?;
            lex.insert(entry);
        }
        Ok(lex)
    }
}

fn parse_entry(code: &str, sig: &Signature) -> Result<LexEntry, String> {
    let code = code.trim_end();
    let (body, mode) = match code.rsplit_once(char::is_whitespace) {
        Some((rest, "plain")) => (rest, Mode::Plain),
        Some((rest, "monadic")) => (rest, Mode::Monadic),
        _ => (code, Mode::Plain),
    };
    let pe = |e: ParseError| e.to_string();
    let mut p = Parser::new(body, sig).map_err(pe)?;
    let word = p.expect_ident().map_err(pe)?;
    p.expect(&Token::Colon).map_err(pe)?;
    let ty = p.parse_type().map_err(pe)?;
    p.expect(&Token::Eq).map_err(pe)?;
    if ty.mentions_con() {
        return Err(format!("`{word}`: the type must be the underlying type, without M"));
    }
    let check = |t: &Term| -> Result<(), String> {
        let got = type_check(t, sig, &TypeEnv::new()).map_err(|e| format!("`{word}`: {e}"))?;
        if got == ty {
            Ok(())
        } else {
            Err(format!("`{word}`: {t} has type {got}, not {ty}"))
        }
    };
    let denotation = match p.peek() {
        Some(Token::LBrace) => {
            let alts = parse_alternatives(&mut p).map_err(pe)?;
            alts.iter().try_for_each(check)?;
            Denotation::Set(alts)
        }
        Some(Token::Lt) => {
            p.bump();
            let point = p.parse_term().map_err(pe)?;
            p.expect(&Token::Pipe).map_err(pe)?;
            let alts = parse_alternatives(&mut p).map_err(pe)?;
            p.expect(&Token::Gt).map_err(pe)?;
            check(&point)?;
            alts.iter().try_for_each(check)?;
            if !alts.contains(&point) {
                return Err(format!("`{word}`: the point must be one of the alternatives"));
            }
            Denotation::Pointed(point, alts)
        }
        _ => {
            let t = p.parse_term().map_err(pe)?;
            if mode == Mode::Plain {
                check(&t)?;
            } else {
                // the monadic type depends on the monad; check what we can now
                type_check(&t, sig, &TypeEnv::new()).map_err(|e| format!("`{word}`: {e}"))?;
            }
            Denotation::Term(t)
        }
    };
    p.expect_end().map_err(pe)?;
    if mode == Mode::Plain && !matches!(denotation, Denotation::Term(_)) {
        return Err(format!("`{word}`: a set of alternatives must be marked monadic"));
    }
    Ok(LexEntry {
        word,
        ty,
        denotation,
        mode,
    })
}

fn parse_alternatives(p: &mut Parser<'_>) -> Result<Vec<Term>, ParseError> {
    p.expect(&Token::LBrace)?;
    let mut alts = Vec::new();
    if !p.eat(&Token::RBrace) {
        loop {
            alts.push(p.parse_term()?);
            if p.eat(&Token::RBrace) {
                break;
            }
            p.expect(&Token::Comma)?;
        }
    }
    Ok(alts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(src: &str) -> Term {
        parse_term(src, &Signature::standard()).unwrap()
    }

    #[test]
    fn parses_each_kind_of_entry() {
        let src = "\
John : e = John plain
smokes : e -> t = smoke
everyone : e = \\c:e -> t. forall (\\x:e. c x) monadic
who : e = {John, Mary, Bill} monadic   # everyone is a candidate
JOHN_F : e = <John | {John, Mary}> monadic
";
        let lex = Lexicon::parse(src, &Signature::standard()).unwrap();
        assert_eq!(lex.len(), 5);
        assert_eq!(lex.get("smokes").unwrap().mode, Mode::Plain);
        assert_eq!(lex.get("everyone").unwrap().mode, Mode::Monadic);
        assert_eq!(
            lex.get("who").unwrap().denotation,
            Denotation::Set(vec![p("John"), p("Mary"), p("Bill")])
        );
        assert!(matches!(lex.get("JOHN_F").unwrap().denotation, Denotation::Pointed(..)));
    }

    #[test]
    fn type_errors_carry_the_line() {
        let err = Lexicon::parse("John : e = John\nsmokes : e = smoke\n", &Signature::standard()).unwrap_err();
        assert_eq!(err.line, 2);
        let err = Lexicon::parse("F : e = <Bill | {John}> monadic", &Signature::standard()).unwrap_err();
        assert!(err.message.contains("point"));
    }
}
