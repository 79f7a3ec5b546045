//! Finite models: a set-theoretic reading of the type system over small
//! domains, used as a brute-force equality oracle.
//!
//! Every enumerable type has a dense, canonical numbering of its
//! inhabitants. [`Model::nth`] decodes an index to a value and
//! [`Model::index_of`] encodes it back; functions are numbered in mixed
//! radix (the output at the first domain element is the least significant
//! digit), sets by bitmask, pointed sets by their point followed by the
//! remaining elements.

mod eval;
mod file;
mod value;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use eval::{eval, eval_closed, Compiled, ValueEnv};
pub use file::{parse_model, parse_value, ModelFileError};
pub use value::{value_eq, Atom, Value};

use crate::kernel::KernelError;
use crate::signature::Signature;
use crate::types::Type;

/// Default bound on the number of inhabitants a single enumeration may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain too large: {ty} has {count} inhabitants (cap {cap})")]
    DomainTooLarge { ty: String, count: String, cap: usize },
    #[error("type {0} cannot be enumerated in a finite model")]
    NotEnumerable(String),
    #[error("constant `{0}` has no interpretation")]
    Uninterpreted(String),
    #[error("value does not inhabit {0}")]
    IllTyped(String),
    #[error("values of different types compared")]
    TypeMismatch,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Types as the model sees them: kernel types plus the carriers of the
/// set-valued monads.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemType {
    Base(String),
    Terminal,
    Arrow(Box<SemType>, Box<SemType>),
    /// All subsets of the argument type.
    Set(Box<SemType>),
    /// Pairs `(x0, x1)` with `x0 ∈ x1 ⊆` the argument type.
    Pointed(Box<SemType>),
}

impl SemType {
    pub fn base(name: &str) -> SemType {
        SemType::Base(name.to_string())
    }

    pub fn arrow(dom: SemType, cod: SemType) -> SemType {
        SemType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn set(elem: SemType) -> SemType {
        SemType::Set(Box::new(elem))
    }

    pub fn pointed(elem: SemType) -> SemType {
        SemType::Pointed(Box::new(elem))
    }

    /// Kernel types without variables or constructors.
    pub fn from_type(ty: &Type) -> Result<SemType, ModelError> {
        match ty {
            Type::Base(b) => Ok(SemType::Base(b.clone())),
            Type::Terminal => Ok(SemType::Terminal),
            Type::Arrow(d, c) => Ok(SemType::arrow(SemType::from_type(d)?, SemType::from_type(c)?)),
            Type::Var(_) | Type::Con(..) => Err(ModelError::NotEnumerable(ty.to_string())),
        }
    }

    /// The kernel type this denotes, if it has no set-monad carriers.
    pub fn to_type(&self) -> Option<Type> {
        match self {
            SemType::Base(b) => Some(Type::Base(b.clone())),
            SemType::Terminal => Some(Type::Terminal),
            SemType::Arrow(d, c) => Some(Type::arrow(d.to_type()?, c.to_type()?)),
            SemType::Set(_) | SemType::Pointed(_) => None,
        }
    }

    pub fn as_arrow(&self) -> Option<(&SemType, &SemType)> {
        match self {
            SemType::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }
}

impl From<Type> for SemType {
    /// Panics on type variables and constructors; use [`SemType::from_type`]
    /// when the input is not known to be ground.
    fn from(ty: Type) -> SemType {
        SemType::from_type(&ty).expect("ground type")
    }
}

impl fmt::Display for SemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemType::Base(b) => f.write_str(b),
            SemType::Terminal => f.write_str("1"),
            SemType::Set(a) => match a.as_ref() {
                SemType::Arrow(..) | SemType::Set(_) | SemType::Pointed(_) => write!(f, "Set ({a})"),
                _ => write!(f, "Set {a}"),
            },
            SemType::Pointed(a) => match a.as_ref() {
                SemType::Arrow(..) | SemType::Set(_) | SemType::Pointed(_) => write!(f, "Pointed ({a})"),
                _ => write!(f, "Pointed {a}"),
            },
            SemType::Arrow(d, c) => match d.as_ref() {
                SemType::Arrow(..) => write!(f, "({d}) -> {c}"),
                _ => write!(f, "{d} -> {c}"),
            },
        }
    }
}

/// A finite model: atoms for every non-boolean base type and an
/// interpretation for every non-logical constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    sorts: BTreeMap<String, Arc<[String]>>,
    sort_names: BTreeMap<String, Arc<str>>,
    interpretations: BTreeMap<String, (Type, Value)>,
    cap: usize,
}

/// Constants interpreted by the model itself rather than by a table.
pub const LOGICAL_CONSTANTS: [&str; 7] = ["forall", "exists", "true", "false", "not", "and", "or"];

impl Model {
    pub fn new() -> Model {
        Model {
            sorts: BTreeMap::new(),
            sort_names: BTreeMap::new(),
            interpretations: BTreeMap::new(),
            cap: DEFAULT_CAP,
        }
    }

    /// The standard model: `e = {j, m, b}`, `s = {w1, w2}`, `g = {g1, g2}`.
    pub fn standard() -> Model {
        Model::standard_sized(3, 2, 2)
    }

    /// A standard-shaped model with the given domain sizes. The first three
    /// individuals are `j`, `m`, `b`; further ones are `d3`, `d4`, ...
    pub fn standard_sized(n_e: usize, n_s: usize, n_g: usize) -> Model {
        assert!(n_e > 0 && n_s > 0 && n_g > 0, "domains must be nonempty");
        let mut model = Model::new();
        let people: Vec<String> = (0..n_e)
            .map(|i| match i {
                0 => "j".to_string(),
                1 => "m".to_string(),
                2 => "b".to_string(),
                _ => format!("d{i}"),
            })
            .collect();
        model.add_sort("e", people);
        model.add_sort("s", (1..=n_s).map(|i| format!("w{i}")).collect());
        model.add_sort("g", (1..=n_g).map(|i| format!("g{i}")).collect());

        let e = SemType::base("e");
        let atom = |sort: &str, i: usize| model.atom(sort, i % model.sort_size(sort).unwrap()).unwrap();
        let john = atom("e", 0);
        let mary = atom("e", 1);
        let bill = atom("e", 2);
        let smoke = tabulate(&model, &[&e], |ix| Value::Bool(ix[0] % 2 == 0));
        // like(object)(subject): j likes everyone, m likes only herself, b likes no one
        let like = tabulate(&model, &[&e, &e], |ix| {
            let (object, subject) = (ix[0], ix[1]);
            Value::Bool(subject == 0 || (subject == 1 && object == 1))
        });
        let hate = tabulate(&model, &[&e, &e], |ix| Value::Bool(ix[0] != ix[1] && ix[1] == 2));
        // know(w)(p)(x) holds when p is true at w
        let st = SemType::arrow(SemType::base("s"), SemType::base("t"));
        let know = {
            let s = SemType::base("s");
            let props = model.enumerate(&st).unwrap();
            tabulate(&model, &[&s, &st, &e], |ix| match &props[ix[1]] {
                Value::Func(outs) => outs[ix[0]].clone(),
                _ => unreachable!(),
            })
        };
        let n_people = n_e;
        let pro = tabulate(&model, &[&SemType::base("g")], |ix| {
            model.atom("e", ix[0] % n_people).unwrap()
        });

        let sig = Signature::standard();
        let mut set = |name: &str, v: Value| {
            let ty = sig.lookup(name).unwrap().clone();
            model.interpretations.insert(name.to_string(), (ty, v));
        };
        set("John", john);
        set("Mary", mary);
        set("Bill", bill);
        set("smoke", smoke);
        set("like", like);
        set("hate", hate);
        set("know", know);
        set("pro", pro);
        model
    }

    pub fn with_cap(mut self, cap: usize) -> Model {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn add_sort(&mut self, name: &str, atoms: Vec<String>) {
        self.sort_names.insert(name.to_string(), Arc::from(name));
        self.sorts.insert(name.to_string(), Arc::from(atoms));
    }

    pub fn sorts(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.sorts.iter().map(|(k, v)| (k.as_str(), v.as_ref()))
    }

    pub fn sort_size(&self, sort: &str) -> Option<usize> {
        self.sorts.get(sort).map(|a| a.len())
    }

    pub fn atom(&self, sort: &str, index: usize) -> Option<Value> {
        let atoms = self.sorts.get(sort)?;
        if index >= atoms.len() {
            return None;
        }
        Some(Value::Atom(Atom {
            sort: self.sort_names[sort].clone(),
            index: index as u32,
        }))
    }

    pub fn atom_by_name(&self, name: &str) -> Option<Value> {
        self.sorts
            .iter()
            .find_map(|(sort, atoms)| atoms.iter().position(|a| a == name).and_then(|i| self.atom(sort, i)))
    }

    pub fn atom_name(&self, atom: &Atom) -> Option<&str> {
        self.sorts
            .get(atom.sort.as_ref())
            .and_then(|atoms| atoms.get(atom.index as usize))
            .map(String::as_str)
    }

    pub fn interpret(&mut self, name: &str, ty: Type, value: Value) -> Result<(), ModelError> {
        let st = SemType::from_type(&ty)?;
        if !self.inhabits(&value, &st) {
            return Err(ModelError::IllTyped(st.to_string()));
        }
        self.interpretations.insert(name.to_string(), (ty, value));
        Ok(())
    }

    pub fn interpretation(&self, name: &str) -> Option<&(Type, Value)> {
        self.interpretations.get(name)
    }

    pub fn interpretations(&self) -> impl Iterator<Item = (&str, &Type, &Value)> {
        self.interpretations.iter().map(|(k, (t, v))| (k.as_str(), t, v))
    }

    /// Value of constant `name` at type `ty`, including the logical constants.
    pub fn constant(&self, name: &str, ty: &Type) -> Result<Value, ModelError> {
        if let Some((declared, v)) = self.interpretations.get(name) {
            if declared == ty {
                return Ok(v.clone());
            }
        }
        if let Some(v) = self.logical_constant(name, ty)? {
            return Ok(v);
        }
        Err(ModelError::Uninterpreted(name.to_string()))
    }

    fn logical_constant(&self, name: &str, ty: &Type) -> Result<Option<Value>, ModelError> {
        let st = SemType::from_type(ty)?;
        let t = SemType::base("t");
        let truth = |b: &Value| matches!(b, Value::Bool(true));
        let v = match name {
            "true" if st == t => Value::Bool(true),
            "false" if st == t => Value::Bool(false),
            "not" if st == SemType::arrow(t.clone(), t.clone()) => tabulate(self, &[&t], |ix| Value::Bool(ix[0] == 0)),
            "and" | "or" if st == SemType::arrow(t.clone(), SemType::arrow(t.clone(), t.clone())) => {
                let conj = name == "and";
                tabulate(self, &[&t, &t], |ix| {
                    let (x, y) = (ix[0] == 1, ix[1] == 1);
                    Value::Bool(if conj { x && y } else { x || y })
                })
            }
            "forall" | "exists" => {
                let Some((pred, res)) = st.as_arrow() else {
                    return Ok(None);
                };
                let Some((_, pred_cod)) = pred.as_arrow() else {
                    return Ok(None);
                };
                if *res != t || *pred_cod != t {
                    return Ok(None);
                }
                let universal = name == "forall";
                let preds = self.enumerate(pred)?;
                let outs: Vec<Value> = preds
                    .iter()
                    .map(|p| match p {
                        Value::Func(outs) => Value::Bool(if universal {
                            outs.iter().all(truth)
                        } else {
                            outs.iter().any(truth)
                        }),
                        _ => unreachable!("predicates are tables"),
                    })
                    .collect();
                Value::Func(Arc::from(outs))
            }
            _ => return Ok(None),
        };
        Ok(Some(v))
    }

    /// Checks that every constant of `sig` is interpreted.
    pub fn covers(&self, sig: &Signature) -> Result<(), ModelError> {
        for (name, ty) in sig.constants() {
            self.constant(name, ty)?;
        }
        Ok(())
    }

    fn too_large(&self, ty: &SemType, count: impl fmt::Display) -> ModelError {
        ModelError::DomainTooLarge {
            ty: ty.to_string(),
            count: count.to_string(),
            cap: self.cap,
        }
    }

    fn bounded(&self, ty: &SemType, count: Option<u128>) -> Result<usize, ModelError> {
        match count {
            Some(n) if n <= self.cap as u128 => Ok(n as usize),
            Some(n) => Err(self.too_large(ty, n)),
            None => Err(self.too_large(ty, "more than 2^128")),
        }
    }

    /// Number of inhabitants of `ty`.
    pub fn cardinality(&self, ty: &SemType) -> Result<usize, ModelError> {
        match ty {
            SemType::Base(b) if b == "t" => Ok(2),
            SemType::Base(b) => self.sort_size(b).ok_or_else(|| ModelError::NotEnumerable(b.clone())),
            SemType::Terminal => Ok(1),
            SemType::Arrow(d, c) => {
                let d = self.cardinality(d)?;
                let c = self.cardinality(c)?;
                let count = u32::try_from(d).ok().and_then(|d| (c as u128).checked_pow(d));
                self.bounded(ty, count)
            }
            SemType::Set(a) => {
                let n = self.cardinality(a)?;
                let count = u32::try_from(n).ok().and_then(|n| 2u128.checked_pow(n));
                self.bounded(ty, count)
            }
            SemType::Pointed(a) => {
                let n = self.cardinality(a)?;
                let count = u32::try_from(n)
                    .ok()
                    .and_then(|n| 2u128.checked_pow(n.saturating_sub(1)))
                    .and_then(|h| h.checked_mul(n as u128));
                self.bounded(ty, count)
            }
        }
    }

    /// The `index`-th inhabitant of `ty` in canonical order.
    pub fn nth(&self, ty: &SemType, index: usize) -> Result<Value, ModelError> {
        let n = self.cardinality(ty)?;
        if index >= n {
            return Err(ModelError::IllTyped(ty.to_string()));
        }
        Ok(match ty {
            SemType::Base(b) if b == "t" => Value::Bool(index == 1),
            SemType::Base(b) => self.atom(b, index).expect("index within sort"),
            SemType::Terminal => Value::Unit,
            SemType::Arrow(d, c) => {
                let dn = self.cardinality(d)?;
                let cn = self.cardinality(c)?;
                let mut rest = index;
                let mut outs = Vec::with_capacity(dn);
                for _ in 0..dn {
                    outs.push(self.nth(c, rest % cn)?);
                    rest /= cn;
                }
                Value::Func(Arc::from(outs))
            }
            SemType::Set(a) => self.subset(a, index as u64)?,
            SemType::Pointed(a) => {
                let n = self.cardinality(a)?;
                let half = 1usize << (n - 1);
                let point = index / half;
                let rest = (index % half) as u64;
                let low = rest & ((1u64 << point) - 1);
                let high = rest >> point;
                let mask = low | (high << (point + 1)) | (1u64 << point);
                Value::Pair(Arc::new((self.nth(a, point)?, self.subset(a, mask)?)))
            }
        })
    }

    fn subset(&self, elem: &SemType, mask: u64) -> Result<Value, ModelError> {
        let n = self.cardinality(elem)?;
        let mut elems = Vec::new();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                elems.push(self.nth(elem, i)?);
            }
        }
        elems.sort();
        Ok(Value::Set(Arc::from(elems)))
    }

    /// Position of `value` in the canonical enumeration of `ty`.
    pub fn index_of(&self, ty: &SemType, value: &Value) -> Result<usize, ModelError> {
        let bad = || ModelError::IllTyped(ty.to_string());
        match (ty, value) {
            (SemType::Base(b), Value::Bool(x)) if b == "t" => Ok(*x as usize),
            (SemType::Base(b), Value::Atom(a)) if a.sort.as_ref() == b => {
                let n = self.sort_size(b).ok_or_else(bad)?;
                if (a.index as usize) < n {
                    Ok(a.index as usize)
                } else {
                    Err(bad())
                }
            }
            (SemType::Terminal, Value::Unit) => Ok(0),
            (SemType::Arrow(d, c), Value::Func(outs)) => {
                if outs.len() != self.cardinality(d)? {
                    return Err(bad());
                }
                let cn = self.cardinality(c)? as u128;
                let mut index: u128 = 0;
                let mut weight: u128 = 1;
                for out in outs.iter() {
                    index += self.index_of(c, out)? as u128 * weight;
                    weight = weight.saturating_mul(cn);
                }
                usize::try_from(index).map_err(|_| self.too_large(ty, index))
            }
            (SemType::Set(a), Value::Set(elems)) => Ok(self.mask_of(a, elems)? as usize),
            (SemType::Pointed(a), Value::Pair(pair)) => {
                let (point, set) = pair.as_ref();
                let Value::Set(elems) = set else { return Err(bad()) };
                let n = self.cardinality(a)?;
                let p = self.index_of(a, point)?;
                let mask = self.mask_of(a, elems)?;
                if mask & (1 << p) == 0 {
                    return Err(bad());
                }
                let low = mask & ((1u64 << p) - 1);
                let high = mask >> (p + 1);
                let rest = low | (high << p);
                Ok(p * (1usize << (n - 1)) + rest as usize)
            }
            _ => Err(bad()),
        }
    }

    fn mask_of(&self, elem: &SemType, elems: &[Value]) -> Result<u64, ModelError> {
        let mut mask = 0u64;
        for v in elems {
            let i = self.index_of(elem, v)?;
            if i >= 64 {
                return Err(self.too_large(elem, i));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Every inhabitant of `ty`, duplicate-free, in canonical order.
    pub fn enumerate(&self, ty: &SemType) -> Result<Vec<Value>, ModelError> {
        let n = self.cardinality(ty)?;
        (0..n).map(|i| self.nth(ty, i)).collect()
    }

    pub fn inhabits(&self, value: &Value, ty: &SemType) -> bool {
        match (ty, value) {
            (SemType::Set(a), Value::Set(elems)) => {
                elems.windows(2).all(|w| w[0] < w[1]) && elems.iter().all(|v| self.inhabits(v, a))
            }
            (SemType::Pointed(a), Value::Pair(pair)) => {
                let (point, set) = pair.as_ref();
                self.inhabits(point, a)
                    && self.inhabits(set, &SemType::set((**a).clone()))
                    && matches!(set, Value::Set(xs) if xs.contains(point))
            }
            (SemType::Arrow(d, c), Value::Func(outs)) => {
                self.cardinality(d).map(|n| n == outs.len()).unwrap_or(false)
                    && outs.iter().all(|v| self.inhabits(v, c))
            }
            _ => self.index_of(ty, value).is_ok(),
        }
    }

    /// Applies a function table to an argument of type `dom`.
    pub fn apply(&self, fun: &Value, arg: &Value, dom: &SemType) -> Result<Value, ModelError> {
        let Value::Func(outs) = fun else {
            return Err(ModelError::IllTyped(format!("{dom} -> _")));
        };
        let i = self.index_of(dom, arg)?;
        outs.get(i)
            .cloned()
            .ok_or_else(|| ModelError::IllTyped(format!("{dom} -> _")))
    }

    /// Builds the table of `f` over the enumerated domain.
    pub fn tabulate_fn(
        &self,
        dom: &SemType,
        mut f: impl FnMut(&Value) -> Result<Value, ModelError>,
    ) -> Result<Value, ModelError> {
        let n = self.cardinality(dom)?;
        let mut outs = Vec::with_capacity(n);
        for i in 0..n {
            outs.push(f(&self.nth(dom, i)?)?);
        }
        Ok(Value::Func(Arc::from(outs)))
    }

    /// Renders a value in the model-file value syntax.
    pub fn show(&self, value: &Value, ty: &SemType) -> String {
        file::show_value(self, value, ty)
    }
}

impl Default for Model {
    fn default() -> Self {
        Model::standard()
    }
}

/// Builds a curried table over `doms` from a function of argument indices.
fn tabulate(model: &Model, doms: &[&SemType], f: impl Fn(&[usize]) -> Value) -> Value {
    fn go(model: &Model, doms: &[&SemType], prefix: &mut Vec<usize>, f: &dyn Fn(&[usize]) -> Value) -> Value {
        if prefix.len() == doms.len() {
            return f(prefix);
        }
        let n = model.cardinality(doms[prefix.len()]).expect("small domain");
        let mut outs = Vec::with_capacity(n);
        for i in 0..n {
            prefix.push(i);
            outs.push(go(model, doms, prefix, f));
            prefix.pop();
        }
        Value::Func(Arc::from(outs))
    }
    go(model, doms, &mut Vec::new(), &f)
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
    fn small_enumerations() {
        let m = Model::standard();
        assert_eq!(m.enumerate(&t()).unwrap(), vec![Value::Bool(false), Value::Bool(true)]);
        assert_eq!(m.enumerate(&e()).unwrap().len(), 3);
        assert_eq!(m.enumerate(&SemType::arrow(e(), t())).unwrap().len(), 8);
        assert_eq!(m.enumerate(&SemType::Terminal).unwrap(), vec![Value::Unit]);
    }

    #[test]
    fn arrow_counts_follow_the_power_formula() {
        let m = Model::standard();
        for (d, c) in [
            (e(), t()),
            (t(), e()),
            (SemType::arrow(t(), t()), e()),
            (e(), SemType::arrow(e(), t())),
        ] {
            let expected = m
                .enumerate(&c)
                .unwrap()
                .len()
                .pow(m.enumerate(&d).unwrap().len() as u32);
            let all = m.enumerate(&SemType::arrow(d, c)).unwrap();
            assert_eq!(all.len(), expected);
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), expected);
        }
    }

    #[test]
    fn set_and_pointed_counts() {
        let m = Model::standard();
        assert_eq!(m.cardinality(&SemType::set(e())).unwrap(), 8);
        assert_eq!(m.cardinality(&SemType::pointed(e())).unwrap(), 12);
        for v in m.enumerate(&SemType::pointed(e())).unwrap() {
            assert!(m.inhabits(&v, &SemType::pointed(e())));
        }
    }

    #[test]
    fn index_roundtrip_on_every_inhabitant() {
        let m = Model::standard();
        let types = [
            SemType::arrow(e(), t()),
            SemType::arrow(SemType::arrow(e(), t()), t()),
            SemType::set(e()),
            SemType::pointed(e()),
            SemType::arrow(e(), SemType::pointed(e())),
            SemType::set(SemType::arrow(t(), t())),
        ];
        for ty in types {
            for (i, v) in m.enumerate(&ty).unwrap().iter().enumerate() {
                assert_eq!(m.index_of(&ty, v).unwrap(), i, "{ty}");
            }
        }
    }

    #[test]
    fn too_large_domains_are_refused() {
        let m = Model::standard();
        let huge = SemType::arrow(SemType::arrow(e(), SemType::arrow(SemType::arrow(e(), t()), t())), t());
        assert!(matches!(m.cardinality(&huge), Err(ModelError::DomainTooLarge { .. })));
        let m = Model::standard().with_cap(7);
        assert!(matches!(
            m.enumerate(&SemType::arrow(e(), t())),
            Err(ModelError::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn standard_model_covers_standard_signature() {
        Model::standard().covers(&Signature::standard()).unwrap();
        Model::standard_sized(2, 1, 1).covers(&Signature::standard()).unwrap();
    }

    #[test]
    fn forall_is_conjunction_over_individuals() {
        let m = Model::standard();
        let et = SemType::arrow(e(), t());
        let forall = m
            .constant("forall", &Type::arrow(Type::arrow(Type::e(), Type::t()), Type::t()))
            .unwrap();
        for p in m.enumerate(&et).unwrap() {
            let Value::Func(outs) = &p else { unreachable!() };
            let expected = outs.iter().all(|b| *b == Value::Bool(true));
            assert_eq!(m.apply(&forall, &p, &et).unwrap(), Value::Bool(expected));
        }
    }
}
