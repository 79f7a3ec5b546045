//! Denotations of kernel terms, computed by compiling the term once and
//! running it against a value stack.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Model, ModelError, SemType, Value};
use crate::kernel::KernelError;
use crate::term::Term;
use crate::types::Type;

/// Free variables with their types and values.
pub type ValueEnv = [(String, Type, Value)];

#[derive(Debug)]
enum Code {
    /// Absolute stack slot.
    Var(usize),
    Lit(Value),
    Lam {
        domain: Arc<[Value]>,
        body: Box<Code>,
    },
    /// A direct β-redex: evaluate the argument once and bind it.
    Let {
        arg: Box<Code>,
        body: Box<Code>,
    },
    App {
        fun: Box<Code>,
        arg: Box<Code>,
        dom: SemType,
    },
}

/// A term compiled against a model, ready to run with values for its free
/// variables.
#[derive(Debug)]
pub struct Compiled {
    code: Code,
    ty: Type,
    arity: usize,
}

struct Compiler<'m> {
    model: &'m Model,
    scope: Vec<(String, Type)>,
    domains: HashMap<SemType, Arc<[Value]>>,
}

impl Compiled {
    /// Compiles `term` whose free variables are `vars`, in order.
    pub fn new(term: &Term, model: &Model, vars: &[(String, Type)]) -> Result<Compiled, ModelError> {
        let mut c = Compiler {
            model,
            scope: vars.to_vec(),
            domains: HashMap::new(),
        };
        let (code, ty) = c.compile(term)?;
        Ok(Compiled {
            code,
            ty,
            arity: vars.len(),
        })
    }

    pub fn ty(&self) -> &Type {
        &self.ty
    }

    pub fn run(&self, model: &Model, args: &[Value]) -> Result<Value, ModelError> {
        assert_eq!(args.len(), self.arity, "one value per free variable");
        let mut stack = args.to_vec();
        run(&self.code, model, &mut stack)
    }
}

impl Compiler<'_> {
    fn domain(&mut self, ty: &Type) -> Result<Arc<[Value]>, ModelError> {
        let st = SemType::from_type(ty)?;
        if let Some(d) = self.domains.get(&st) {
            return Ok(d.clone());
        }
        let d: Arc<[Value]> = Arc::from(self.model.enumerate(&st)?);
        self.domains.insert(st, d.clone());
        Ok(d)
    }

    fn compile(&mut self, term: &Term) -> Result<(Code, Type), ModelError> {
        match term {
            Term::Var(x) => {
                let slot = self
                    .scope
                    .iter()
                    .rposition(|(n, _)| n == x)
                    .ok_or_else(|| KernelError::UnboundVariable(x.clone()))?;
                Ok((Code::Var(slot), self.scope[slot].1.clone()))
            }
            Term::Const(c, ty) => Ok((Code::Lit(self.model.constant(c, ty)?), ty.clone())),
            Term::Unit => Ok((Code::Lit(Value::Unit), Type::Terminal)),
            Term::Abs(x, ty, body) => {
                let domain = self.domain(ty)?;
                self.scope.push((x.clone(), ty.clone()));
                let body = self.compile(body);
                self.scope.pop();
                let (body, cod) = body?;
                Ok((
                    Code::Lam {
                        domain,
                        body: Box::new(body),
                    },
                    Type::arrow(ty.clone(), cod),
                ))
            }
            Term::App(f, a) => {
                let (arg, aty) = self.compile(a)?;
                if let Term::Abs(x, ty, body) = f.as_ref() {
                    check_arg(ty, &aty)?;
                    self.scope.push((x.clone(), ty.clone()));
                    let body = self.compile(body);
                    self.scope.pop();
                    let (body, cod) = body?;
                    return Ok((
                        Code::Let {
                            arg: Box::new(arg),
                            body: Box::new(body),
                        },
                        cod,
                    ));
                }
                let (fun, fty) = self.compile(f)?;
                let Type::Arrow(dom, cod) = fty else {
                    return Err(KernelError::NotAFunction(fty).into());
                };
                check_arg(&dom, &aty)?;
                Ok((
                    Code::App {
                        fun: Box::new(fun),
                        arg: Box::new(arg),
                        dom: SemType::from_type(&dom)?,
                    },
                    *cod,
                ))
            }
        }
    }
}

fn check_arg(dom: &Type, arg: &Type) -> Result<(), ModelError> {
    if dom == arg {
        Ok(())
    } else {
        Err(KernelError::ArrowMismatch {
            expected: dom.clone(),
            got: arg.clone(),
        }
        .into())
    }
}

fn run(code: &Code, model: &Model, stack: &mut Vec<Value>) -> Result<Value, ModelError> {
    match code {
        Code::Var(slot) => Ok(stack[*slot].clone()),
        Code::Lit(v) => Ok(v.clone()),
        Code::Lam { domain, body } => {
            let mut outs = Vec::with_capacity(domain.len());
            for v in domain.iter() {
                stack.push(v.clone());
                let out = run(body, model, stack);
                stack.pop();
                outs.push(out?);
            }
            Ok(Value::Func(Arc::from(outs)))
        }
        Code::Let { arg, body } => {
            let v = run(arg, model, stack)?;
            stack.push(v);
            let out = run(body, model, stack);
            stack.pop();
            out
        }
        Code::App { fun, arg, dom } => {
            let f = run(fun, model, stack)?;
            let a = run(arg, model, stack)?;
            model.apply(&f, &a, dom)
        }
    }
}

/// Denotation of `term` with its free variables taken from `env`.
pub fn eval(term: &Term, model: &Model, env: &ValueEnv) -> Result<Value, ModelError> {
    let vars: Vec<(String, Type)> = env.iter().map(|(n, t, _)| (n.clone(), t.clone())).collect();
    let values: Vec<Value> = env.iter().map(|(_, _, v)| v.clone()).collect();
    Compiled::new(term, model, &vars)?.run(model, &values)
}

pub fn eval_closed(term: &Term, model: &Model) -> Result<Value, ModelError> {
    eval(term, model, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;
    use crate::syntax::parse_term;

    fn p(src: &str) -> Term {
        parse_term(src, &Signature::standard()).unwrap()
    }

    #[test]
    fn john_smokes() {
        let m = Model::standard();
        assert_eq!(eval_closed(&p("smoke John"), &m).unwrap(), Value::Bool(true));
        assert_eq!(eval_closed(&p("smoke Mary"), &m).unwrap(), Value::Bool(false));
    }

    #[test]
    fn quantifiers_agree_with_conjunction() {
        let m = Model::standard();
        let all = eval_closed(&p("forall (\\x:e. smoke x)"), &m).unwrap();
        let conj = eval_closed(&p("and (smoke John) (and (smoke Mary) (smoke Bill))"), &m).unwrap();
        assert_eq!(all, conj);
        let some = eval_closed(&p("exists (\\x:e. smoke x)"), &m).unwrap();
        assert_eq!(some, Value::Bool(true));
    }

    #[test]
    fn reader_unit_is_a_constant_function() {
        let m = Model::standard();
        let v = eval_closed(&p("(\\x:e. \\w:s. x) John"), &m).unwrap();
        let john = eval_closed(&p("John"), &m).unwrap();
        assert_eq!(v, Value::Func(Arc::from(vec![john.clone(), john])));
    }

    #[test]
    fn free_variables_come_from_the_environment() {
        let m = Model::standard();
        let et = Type::arrow(Type::e(), Type::t());
        let negated = m.tabulate_fn(&SemType::base("e"), |_| Ok(Value::Bool(false))).unwrap();
        let env = [("c".to_string(), et, negated)];
        assert_eq!(eval(&p("c John"), &m, &env).unwrap(), Value::Bool(false));
        assert!(matches!(
            eval(&p("d John"), &m, &env),
            Err(ModelError::Kernel(KernelError::UnboundVariable(_)))
        ));
    }

    #[test]
    fn know_holds_when_the_proposition_holds_at_the_world() {
        let m = Model::standard();
        let t = p("know w (\\v:s. smoke Mary) John");
        let env_at = |i| [("w".to_string(), Type::s(), m.atom("s", i).unwrap())];
        assert_eq!(eval(&t, &m, &env_at(0)).unwrap(), Value::Bool(false));
        let t = p("know w (\\v:s. smoke Bill) John");
        assert_eq!(eval(&t, &m, &env_at(1)).unwrap(), Value::Bool(true));
    }
}
