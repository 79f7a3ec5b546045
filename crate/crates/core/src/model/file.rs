//! Text format for models and values.
//!
//! ```text
//! e = {j, m, b}
//! John = j
//! smoke = {j:1, m:0, b:1}
//! like = {(j,j):1, (j,m):0, ...}
//! ```
//!
//! Values are read against their type: truth values are `0`/`1`, functions
//! are tables keyed by (tuples of) arguments, sets are `{x, ...}` and pointed
//! sets `<x0 | {x, ...}>`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{Model, SemType, Value, LOGICAL_CONSTANTS};
use crate::signature::Signature;
use crate::syntax::{ParseError, Parser, Token};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ModelFileError {
    pub line: usize,
    pub message: String,
}

/// Reads a model for `sig`. Every non-logical constant of `sig` must be
/// interpreted.
pub fn parse_model(src: &str, sig: &Signature) -> Result<Model, ModelFileError> {
    let mut model = Model::new();
    let mut atom_names = BTreeSet::new();
    for (i, line) in src.lines().enumerate() {
        let line_no = i + 1;
        let fail = |e: ParseError| ModelFileError {
            line: line_no,
            message: e.to_string(),
        };
        let mut p = Parser::new(line, sig).map_err(fail)?;
        if p.at_end() {
            continue;
        }
        let name = p.expect_ident().map_err(fail)?;
        p.expect(&Token::Eq).map_err(fail)?;
        if sig.is_base(&name) {
            if name == "t" {
                return Err(fail(ParseError {
                    column: 1,
                    message: "the truth values are fixed".into(),
                }));
            }
            let atoms = parse_atoms(&mut p).map_err(fail)?;
            for a in &atoms {
                if !atom_names.insert(a.clone()) {
                    return Err(fail(ParseError {
                        column: 1,
                        message: format!("atom `{a}` declared twice"),
                    }));
                }
            }
            model.add_sort(&name, atoms);
            continue;
        }
        if LOGICAL_CONSTANTS.contains(&name.as_str()) {
            return Err(fail(ParseError {
                column: 1,
                message: format!("`{name}` is interpreted by the model itself"),
            }));
        }
        let Some(ty) = sig.lookup(&name).cloned() else {
            return Err(fail(ParseError {
                column: 1,
                message: format!("unknown constant `{name}`"),
            }));
        };
        let st = SemType::from_type(&ty).map_err(|e| ModelFileError {
            line: line_no,
            message: e.to_string(),
        })?;
        let value = parse_value(&mut p, &model, &st).map_err(fail)?;
        p.expect_end().map_err(fail)?;
        model.interpret(&name, ty, value).map_err(|e| ModelFileError {
            line: line_no,
            message: e.to_string(),
        })?;
    }
    model.covers(sig).map_err(|e| ModelFileError {
        line: src.lines().count(),
        message: e.to_string(),
    })?;
    Ok(model)
}

fn parse_atoms(p: &mut Parser<'_>) -> Result<Vec<String>, ParseError> {
    p.expect(&Token::LBrace)?;
    let mut atoms = Vec::new();
    if !p.eat(&Token::RBrace) {
        loop {
            atoms.push(p.expect_ident()?);
            if p.eat(&Token::RBrace) {
                break;
            }
            p.expect(&Token::Comma)?;
        }
    }
    p.expect_end()?;
    if atoms.is_empty() {
        return p.error("a domain needs at least one individual");
    }
    Ok(atoms)
}

/// Reads one value of type `ty`.
pub fn parse_value(p: &mut Parser<'_>, model: &Model, ty: &SemType) -> Result<Value, ParseError> {
    match ty {
        SemType::Base(b) if b == "t" => match p.bump() {
            Some(Token::Num(n)) if n == "0" => Ok(Value::Bool(false)),
            Some(Token::Num(n)) if n == "1" => Ok(Value::Bool(true)),
            Some(Token::Ident(n)) if n == "false" => Ok(Value::Bool(false)),
            Some(Token::Ident(n)) if n == "true" => Ok(Value::Bool(true)),
            _ => p.error("expected a truth value (0 or 1)"),
        },
        SemType::Base(b) => {
            let name = p.expect_ident()?;
            match model.atom_by_name(&name) {
                Some(Value::Atom(a)) if a.sort.as_ref() == b => Ok(Value::Atom(a)),
                _ => p.error(format!("`{name}` is not an individual of {b}")),
            }
        }
        SemType::Terminal => {
            p.expect(&Token::Bang)?;
            Ok(Value::Unit)
        }
        SemType::Set(a) => parse_set(p, model, a),
        SemType::Pointed(a) => {
            p.expect(&Token::Lt)?;
            let point = parse_value(p, model, a)?;
            p.expect(&Token::Pipe)?;
            let set = parse_set(p, model, a)?;
            p.expect(&Token::Gt)?;
            if !set.as_set().is_some_and(|xs| xs.contains(&point)) {
                return p.error("the point must belong to the set");
            }
            Ok(Value::pair(point, set))
        }
        SemType::Arrow(..) => parse_table(p, model, ty),
    }
}

fn parse_set(p: &mut Parser<'_>, model: &Model, elem: &SemType) -> Result<Value, ParseError> {
    p.expect(&Token::LBrace)?;
    let mut elems = Vec::new();
    if !p.eat(&Token::RBrace) {
        loop {
            elems.push(parse_value(p, model, elem)?);
            if p.eat(&Token::RBrace) {
                break;
            }
            p.expect(&Token::Comma)?;
        }
    }
    Ok(Value::set(elems))
}

/// Argument types and result type of an uncurried table.
fn table_shape(ty: &SemType) -> (Vec<&SemType>, &SemType) {
    let mut doms = Vec::new();
    let mut cur = ty;
    while let SemType::Arrow(d, c) = cur {
        doms.push(d.as_ref());
        cur = c;
    }
    (doms, cur)
}

fn parse_table(p: &mut Parser<'_>, model: &Model, ty: &SemType) -> Result<Value, ParseError> {
    let (doms, result) = table_shape(ty);
    let mut entries: HashMap<Vec<usize>, Value> = HashMap::new();
    p.expect(&Token::LBrace)?;
    if !p.eat(&Token::RBrace) {
        loop {
            let key_col = p.column();
            let key = if doms.len() == 1 {
                vec![parse_value(p, model, doms[0])?]
            } else {
                p.expect(&Token::LParen)?;
                let mut key = Vec::new();
                for (i, d) in doms.iter().enumerate() {
                    if i > 0 {
                        p.expect(&Token::Comma)?;
                    }
                    key.push(parse_value(p, model, d)?);
                }
                p.expect(&Token::RParen)?;
                key
            };
            p.expect(&Token::Colon)?;
            let out = parse_value(p, model, result)?;
            let ix: Vec<usize> = key
                .iter()
                .zip(&doms)
                .map(|(v, d)| model.index_of(d, v))
                .collect::<Result<_, _>>()
                .map_err(|e| ParseError {
                    column: key_col,
                    message: e.to_string(),
                })?;
            if entries.insert(ix, out).is_some() {
                return Err(ParseError {
                    column: key_col,
                    message: "argument listed twice".into(),
                });
            }
            if p.eat(&Token::RBrace) {
                break;
            }
            p.expect(&Token::Comma)?;
        }
    }
    let sizes: Vec<usize> = doms
        .iter()
        .map(|d| model.cardinality(d))
        .collect::<Result<_, _>>()
        .map_err(|e| ParseError {
            column: p.column(),
            message: e.to_string(),
        })?;
    let expected: usize = sizes.iter().product();
    if entries.len() != expected {
        return p.error(format!("table has {} entries, expected {expected}", entries.len()));
    }
    fn build(sizes: &[usize], prefix: &mut Vec<usize>, entries: &HashMap<Vec<usize>, Value>) -> Value {
        if prefix.len() == sizes.len() {
            return entries[prefix.as_slice()].clone();
        }
        let mut outs = Vec::with_capacity(sizes[prefix.len()]);
        for i in 0..sizes[prefix.len()] {
            prefix.push(i);
            outs.push(build(sizes, prefix, entries));
            prefix.pop();
        }
        Value::Func(Arc::from(outs))
    }
    Ok(build(&sizes, &mut Vec::new(), &entries))
}

pub(super) fn show_value(model: &Model, value: &Value, ty: &SemType) -> String {
    let mut out = String::new();
    write_value(model, value, ty, &mut out);
    out
}

fn write_value(model: &Model, value: &Value, ty: &SemType, out: &mut String) {
    match (ty, value) {
        (_, Value::Unit) => out.push('!'),
        (_, Value::Bool(b)) => out.push(if *b { '1' } else { '0' }),
        (_, Value::Atom(a)) => match model.atom_name(a) {
            Some(name) => out.push_str(name),
            None => out.push_str(&format!("{}#{}", a.sort, a.index)),
        },
        (SemType::Set(elem), Value::Set(xs)) => write_set(model, xs, elem, out),
        (SemType::Pointed(elem), Value::Pair(pair)) => {
            out.push('<');
            write_value(model, &pair.0, elem, out);
            out.push_str(" | ");
            match &pair.1 {
                Value::Set(xs) => write_set(model, xs, elem, out),
                other => write_value(model, other, elem, out),
            }
            out.push('>');
        }
        (SemType::Arrow(..), Value::Func(_)) => {
            let (doms, result) = table_shape(ty);
            let mut keys = Vec::new();
            let mut first = true;
            out.push('{');
            write_rows(model, value, &doms, result, &mut keys, &mut first, out);
            out.push('}');
        }
        _ => out.push('?'),
    }
}

fn write_set(model: &Model, xs: &[Value], elem: &SemType, out: &mut String) {
    out.push('{');
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_value(model, x, elem, out);
    }
    out.push('}');
}

fn write_rows(
    model: &Model,
    value: &Value,
    doms: &[&SemType],
    result: &SemType,
    keys: &mut Vec<String>,
    first: &mut bool,
    out: &mut String,
) {
    if keys.len() == doms.len() {
        if !*first {
            out.push_str(", ");
        }
        *first = false;
        if keys.len() == 1 {
            out.push_str(&keys[0]);
        } else {
            out.push('(');
            out.push_str(&keys.join(", "));
            out.push(')');
        }
        out.push(':');
        write_value(model, value, result, out);
        return;
    }
    let dom = doms[keys.len()];
    let Value::Func(outs) = value else {
        out.push('?');
        return;
    };
    for (i, v) in outs.iter().enumerate() {
        let arg = model.nth(dom, i).expect("enumerable domain");
        keys.push(show_value(model, &arg, dom));
        write_rows(model, v, doms, result, keys, first, out);
        keys.pop();
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (sort, atoms) in self.sorts() {
            writeln!(f, "{sort} = {{{}}}", atoms.join(", "))?;
        }
        for (name, ty, value) in self.interpretations() {
            match SemType::from_type(ty) {
                Ok(st) => writeln!(f, "{name} = {}", self.show(value, &st))?,
                Err(_) => writeln!(f, "# {name} : {ty} cannot be tabulated")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_model_round_trips() {
        let m = Model::standard();
        let text = m.to_string();
        let back = parse_model(&text, &Signature::standard()).unwrap();
        assert_eq!(back, m);
        assert!(text.contains("smoke = {j:1, m:0, b:1}"));
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let src = "e = {j, m, b}\ns = {w1}\ng = {g1}\nJohn = j\nMary = m\nBill = b\nsmoke = {j:1, m:0}\n";
        let err = parse_model(src, &Signature::standard()).unwrap_err();
        assert_eq!(err.line, 7);
        assert!(err.message.contains("expected 3"), "{err}");
    }

    #[test]
    fn missing_interpretations_are_reported() {
        let err = parse_model("e = {j}\n", &Signature::standard()).unwrap_err();
        assert!(err.message.contains("no interpretation"), "{err}");
    }

    #[test]
    fn pointed_sets_parse_and_print() {
        let m = Model::standard();
        let sig = Signature::standard();
        let ty = SemType::pointed(SemType::base("e"));
        let mut p = Parser::new("<j | {m, j}>", &sig).unwrap();
        let v = parse_value(&mut p, &m, &ty).unwrap();
        assert_eq!(m.show(&v, &ty), "<j | {j, m}>");
        let mut p = Parser::new("<b | {m, j}>", &sig).unwrap();
        assert!(parse_value(&mut p, &m, &ty).is_err());
    }
}
