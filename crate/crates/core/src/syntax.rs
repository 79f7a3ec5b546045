//! Concrete syntax for types and terms.
//!
//! ```text
//! type ::= app ('->' type)?          arrows associate to the right
//! app  ::= CTOR atom | atom          CTOR is a capitalized name, e.g. M1
//! atom ::= name | '1' | '(' type ')'
//!
//! term ::= '\' name ':' type '.' term | atom+
//! atom ::= name | name '[' type, .. ']' | '!' | '(' term ')'
//! ```
//!
//! Type names declared as bases in the signature parse as base types; every
//! other lowercase name is a type variable. A term name bound by an enclosing
//! λ is a variable, a name found in the signature is a constant, and anything
//! else is a free variable. `λ` and `→` are accepted as synonyms of `\` and
//! `->`. Text after `#` is a comment.

use std::fmt;

use thiserror::Error;

use crate::signature::{inner_op_scheme, Signature};
use crate::term::Term;
use crate::types::Type;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Num(String),
    Lambda,
    Colon,
    Dot,
    Comma,
    Arrow,
    FatArrow,
    Eq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Pipe,
    Bang,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) | Token::Num(s) => write!(f, "`{s}`"),
            Token::Lambda => f.write_str("`\\`"),
            Token::Colon => f.write_str("`:`"),
            Token::Dot => f.write_str("`.`"),
            Token::Comma => f.write_str("`,`"),
            Token::Arrow => f.write_str("`->`"),
            Token::FatArrow => f.write_str("`=>`"),
            Token::Eq => f.write_str("`=`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::LBracket => f.write_str("`[`"),
            Token::RBracket => f.write_str("`]`"),
            Token::LBrace => f.write_str("`{`"),
            Token::RBrace => f.write_str("`}`"),
            Token::Lt => f.write_str("`<`"),
            Token::Gt => f.write_str("`>`"),
            Token::Pipe => f.write_str("`|`"),
            Token::Bang => f.write_str("`!`"),
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == 'λ' {
            out.push((col, Token::Lambda));
            i += 1;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((col, Token::Ident(chars[start..i].iter().collect())));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((col, Token::Num(chars[start..i].iter().collect())));
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, width) = match (c, next) {
            ('-', Some('>')) => (Token::Arrow, 2),
            ('=', Some('>')) => (Token::FatArrow, 2),
            ('→', _) => (Token::Arrow, 1),
            ('\\', _) => (Token::Lambda, 1),
            (':', _) => (Token::Colon, 1),
            ('.', _) => (Token::Dot, 1),
            (',', _) => (Token::Comma, 1),
            ('=', _) => (Token::Eq, 1),
            ('(', _) => (Token::LParen, 1),
            (')', _) => (Token::RParen, 1),
            ('[', _) => (Token::LBracket, 1),
            (']', _) => (Token::RBracket, 1),
            ('{', _) => (Token::LBrace, 1),
            ('}', _) => (Token::RBrace, 1),
            ('<', _) => (Token::Lt, 1),
            ('>', _) => (Token::Gt, 1),
            ('|', _) => (Token::Pipe, 1),
            ('!', _) => (Token::Bang, 1),
            _ => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((col, tok));
        i += width;
    }
    Ok(out)
}

/// A recursive-descent parser over a token stream, shared by every text
/// format in the crate.
pub struct Parser<'s> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
    sig: &'s Signature,
    scope: Vec<String>,
}

impl<'s> Parser<'s> {
    pub fn new(src: &str, sig: &'s Signature) -> Result<Parser<'s>, ParseError> {
        Ok(Parser {
            tokens: tokenize(src)?,
            pos: 0,
            end_column: src.chars().count() + 1,
            sig,
            scope: Vec::new(),
        })
    }

    pub fn signature(&self) -> &Signature {
        self.sig
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    pub fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset).map(|(_, t)| t)
    }

    pub fn column(&self) -> usize {
        self.tokens.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_column)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    pub fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    pub fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Token) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected {tok}, found {found}")),
                None => self.error(format!("expected {tok}, found end of input")),
            }
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            Some(found) => self.error(format!("expected a name, found {found}")),
            None => self.error("expected a name, found end of input"),
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => self.error(format!("unexpected {tok}")),
        }
    }

    pub fn parse_type(&mut self) -> Result<Type, ParseError> {
        let dom = self.parse_type_app()?;
        if self.eat(&Token::Arrow) {
            let cod = self.parse_type()?;
            Ok(Type::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn parse_type_app(&mut self) -> Result<Type, ParseError> {
        if let Some(Token::Ident(name)) = self.peek() {
            if name.starts_with(|c: char| c.is_uppercase()) {
                let name = name.clone();
                self.pos += 1;
                let arg = self.parse_type_atom()?;
                return Ok(Type::Con(name, Box::new(arg)));
            }
        }
        self.parse_type_atom()
    }

    fn parse_type_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                if name.starts_with(|c: char| c.is_uppercase()) {
                    return self.error(format!("constructor `{name}` needs an argument here; parenthesize it"));
                }
                self.pos += 1;
                if self.sig.is_base(&name) {
                    Ok(Type::Base(name))
                } else {
                    Ok(Type::Var(name))
                }
            }
            Some(Token::Num(n)) if n == "1" => {
                self.pos += 1;
                Ok(Type::Terminal)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let ty = self.parse_type()?;
                self.expect(&Token::RParen)?;
                Ok(ty)
            }
            Some(tok) => self.error(format!("expected a type, found {tok}")),
            None => self.error("expected a type, found end of input"),
        }
    }

    pub fn parse_term(&mut self) -> Result<Term, ParseError> {
        if self.peek() == Some(&Token::Lambda) {
            return self.parse_lambda();
        }
        let mut term = self.parse_term_atom()?;
        loop {
            match self.peek() {
                Some(Token::Ident(_)) | Some(Token::Bang) | Some(Token::LParen) => {
                    let arg = self.parse_term_atom()?;
                    term = Term::app(term, arg);
                }
                Some(Token::Lambda) => {
                    let arg = self.parse_lambda()?;
                    term = Term::app(term, arg);
                }
                _ => return Ok(term),
            }
        }
    }

    fn parse_lambda(&mut self) -> Result<Term, ParseError> {
        self.expect(&Token::Lambda)?;
        let binder = self.expect_ident()?;
        self.expect(&Token::Colon)?;
        let ty = self.parse_type()?;
        self.expect(&Token::Dot)?;
        self.scope.push(binder.clone());
        let body = self.parse_term();
        self.scope.pop();
        Ok(Term::lam(&binder, ty, body?))
    }

    fn parse_term_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.resolve_name(name)
            }
            Some(Token::Bang) => {
                self.pos += 1;
                Ok(Term::Unit)
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let t = self.parse_term()?;
                self.expect(&Token::RParen)?;
                Ok(t)
            }
            Some(tok) => self.error(format!("expected a term, found {tok}")),
            None => self.error("expected a term, found end of input"),
        }
    }

    fn resolve_name(&mut self, name: String) -> Result<Term, ParseError> {
        if self.scope.contains(&name) {
            return Ok(Term::Var(name));
        }
        if let Some(scheme) = inner_op_scheme(&name) {
            if !self.eat(&Token::LBracket) {
                return self.error(format!("`{name}` is polymorphic; write `{name}[T, ..]`"));
            }
            let mut args = vec![self.parse_type()?];
            while self.eat(&Token::Comma) {
                args.push(self.parse_type()?);
            }
            self.expect(&Token::RBracket)?;
            return match scheme.instantiate(&args) {
                Some(ty) => Ok(Term::Const(name, ty)),
                None => self.error(format!(
                    "`{name}` takes {} type argument(s), got {}",
                    scheme.vars.len(),
                    args.len()
                )),
            };
        }
        if let Some(ty) = self.sig.lookup(&name) {
            return Ok(Term::Const(name, ty.clone()));
        }
        Ok(Term::Var(name))
    }
}

pub fn parse_type(src: &str, sig: &Signature) -> Result<Type, ParseError> {
    let mut p = Parser::new(src, sig)?;
    let ty = p.parse_type()?;
    p.expect_end()?;
    Ok(ty)
}

pub fn parse_term(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, sig)?;
    let t = p.parse_term()?;
    p.expect_end()?;
    Ok(t)
}
