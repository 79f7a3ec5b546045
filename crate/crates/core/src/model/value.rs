use std::sync::Arc;

use super::ModelError;

/// An individual of a non-boolean base sort.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub sort: Arc<str>,
    pub index: u32,
}

/// Denotations in a finite model.
///
/// Functions are stored as their output table in the canonical order of the
/// domain, so two functions are equal exactly when they are extensionally
/// equal. Sets are kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Unit,
    Bool(bool),
    Atom(Atom),
    Func(Arc<[Value]>),
    Set(Arc<[Value]>),
    Pair(Arc<(Value, Value)>),
}

impl Value {
    pub fn set(mut elems: Vec<Value>) -> Value {
        elems.sort();
        elems.dedup();
        Value::Set(Arc::from(elems))
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Arc::new((a, b)))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&[Value]> {
        match self {
            Value::Set(xs) => Some(xs),
            _ => None,
        }
    }
}

/// Extensional equality of two denotations. Values whose shapes cannot
/// belong to one type are reported as a mismatch rather than as unequal.
pub fn value_eq(a: &Value, b: &Value) -> Result<bool, ModelError> {
    if !same_shape(a, b) {
        return Err(ModelError::TypeMismatch);
    }
    Ok(a == b)
}

fn same_shape(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Unit, Value::Unit) | (Value::Bool(_), Value::Bool(_)) => true,
        (Value::Atom(x), Value::Atom(y)) => x.sort == y.sort,
        (Value::Func(xs), Value::Func(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys.iter()).all(|(x, y)| same_shape(x, y))
        }
        (Value::Set(xs), Value::Set(ys)) => match (xs.first(), ys.first()) {
            (Some(x), Some(y)) => same_shape(x, y),
            _ => true,
        },
        (Value::Pair(p), Value::Pair(q)) => same_shape(&p.0, &q.0) && same_shape(&p.1, &q.1),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_shapes_are_errors() {
        assert_eq!(
            value_eq(&Value::Bool(true), &Value::Unit),
            Err(ModelError::TypeMismatch)
        );
        assert_eq!(value_eq(&Value::Bool(true), &Value::Bool(false)), Ok(false));
        let s = Value::set(vec![Value::Bool(true), Value::Bool(false), Value::Bool(true)]);
        assert_eq!(s.as_set().unwrap().len(), 2);
    }
}
