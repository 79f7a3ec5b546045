use std::fmt;

use crate::model::{Model, ModelError, SemType, Value};

/// A monad that exists only over model values.
pub trait SetMonad: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;

    /// `M α`.
    fn carrier(&self, alpha: &SemType) -> SemType;

    fn unit(&self, model: &Model, alpha: &SemType, a: &Value) -> Result<Value, ModelError>;

    /// `m ⋆ k` where `k` is a table over `alpha`.
    fn bind(&self, model: &Model, alpha: &SemType, beta: &SemType, m: &Value, k: &Value) -> Result<Value, ModelError>;
}

fn elements<'v>(v: &'v Value, ty: &SemType) -> Result<&'v [Value], ModelError> {
    v.as_set().ok_or_else(|| ModelError::IllTyped(ty.to_string()))
}

fn pair<'v>(v: &'v Value, ty: &SemType) -> Result<(&'v Value, &'v Value), ModelError> {
    match v {
        Value::Pair(p) => Ok((&p.0, &p.1)),
        _ => Err(ModelError::IllTyped(ty.to_string())),
    }
}

/// Sets of alternatives: `η(a) = {a}`, `m ⋆ k = ⋃_{a∈m} k(a)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Powerset;

impl SetMonad for Powerset {
    fn name(&self) -> &str {
        "powerset"
    }

    fn carrier(&self, alpha: &SemType) -> SemType {
        SemType::set(alpha.clone())
    }

    fn unit(&self, _model: &Model, _alpha: &SemType, a: &Value) -> Result<Value, ModelError> {
        Ok(Value::set(vec![a.clone()]))
    }

    fn bind(&self, model: &Model, alpha: &SemType, beta: &SemType, m: &Value, k: &Value) -> Result<Value, ModelError> {
        let mut out = Vec::new();
        for a in elements(m, &self.carrier(alpha))? {
            let ka = model.apply(k, a, alpha)?;
            out.extend(elements(&ka, &self.carrier(beta))?.iter().cloned());
        }
        Ok(Value::set(out))
    }
}

/// A distinguished alternative together with a set containing it:
/// `η(a) = (a, {a})`, `m ⋆ k = ([k(m₀)]₀, ⋃_{a∈m₁} [k(a)]₁)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PointedPowerset;

impl SetMonad for PointedPowerset {
    fn name(&self) -> &str {
        "pointed-powerset"
    }

    fn carrier(&self, alpha: &SemType) -> SemType {
        SemType::pointed(alpha.clone())
    }

    fn unit(&self, _model: &Model, _alpha: &SemType, a: &Value) -> Result<Value, ModelError> {
        Ok(Value::pair(a.clone(), Value::set(vec![a.clone()])))
    }

    fn bind(&self, model: &Model, alpha: &SemType, beta: &SemType, m: &Value, k: &Value) -> Result<Value, ModelError> {
        let (m0, m1) = pair(m, &self.carrier(alpha))?;
        let out_ty = self.carrier(beta);
        let k0 = model.apply(k, m0, alpha)?;
        let point = pair(&k0, &out_ty)?.0.clone();
        let mut alts = Vec::new();
        for a in elements(m1, &self.carrier(alpha))? {
            let ka = model.apply(k, a, alpha)?;
            alts.extend(elements(pair(&ka, &out_ty)?.1, &out_ty)?.iter().cloned());
        }
        Ok(Value::pair(point, Value::set(alts)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerset_unit_is_a_singleton() {
        let m = Model::standard();
        let e = SemType::base("e");
        let john = m.atom("e", 0).unwrap();
        assert_eq!(Powerset.unit(&m, &e, &john).unwrap(), Value::set(vec![john.clone()]));
        assert_eq!(
            PointedPowerset.unit(&m, &e, &john).unwrap(),
            Value::pair(john.clone(), Value::set(vec![john]))
        );
    }

    #[test]
    fn pointed_bind_keeps_the_point_in_the_set() {
        let m = Model::standard();
        let e = SemType::base("e");
        let ty = SemType::pointed(e.clone());
        let ks = m.enumerate(&SemType::arrow(e.clone(), ty.clone())).unwrap();
        for mv in m.enumerate(&ty).unwrap() {
            for k in ks.iter().step_by(7) {
                let out = PointedPowerset.bind(&m, &e, &e, &mv, k).unwrap();
                assert!(m.inhabits(&out, &ty));
            }
        }
    }
}
