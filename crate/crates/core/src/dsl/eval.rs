use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{binom, Rational};
use crate::sequence::{make_sequence, Named, Sequence, TermTable, Terms};

use super::ast::{Declaration, Expr, IdentityAst};

/// Sequences addressable by name: the six named ones under both their
/// symbol and id, plus any declared with `let`.
#[derive(Clone, Debug)]
pub struct Registry {
    seqs: BTreeMap<String, Sequence>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut seqs = BTreeMap::new();
        for n in Named::ALL {
            seqs.insert(n.symbol().to_string(), n.sequence());
            seqs.insert(n.id().to_string(), n.sequence());
        }
        Registry { seqs }
    }
}

impl Registry {
    pub fn get(&self, name: &str) -> Option<&Sequence> {
        self.seqs.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, seq: Sequence) -> Result<()> {
        let name = name.into();
        if self.seqs.contains_key(&name) {
            return Err(Error::Usage(format!("sequence {name} is already defined")));
        }
        self.seqs.insert(name, seq);
        Ok(())
    }

    pub fn declare(&mut self, d: &Declaration) -> Result<()> {
        let seq = make_sequence(d.p.clone(), d.q.clone(), d.g0.clone(), d.g1.clone())?.with_name(d.name.clone());
        self.insert(d.name.clone(), seq)
    }

    /// This registry plus the identity's own declarations.
    pub fn with_declarations(&self, ast: &IdentityAst) -> Result<Registry> {
        let mut r = self.clone();
        for d in &ast.declarations {
            r.declare(d)?;
        }
        Ok(r)
    }

    pub fn resolve(&self, name: &str) -> Result<&Sequence> {
        self.get(name).ok_or_else(|| Error::UnknownSequence(name.to_string()))
    }
}

/// Variable bindings: the case's free variables followed by any active
/// summation variables.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: Vec<(String, i64)>,
}

impl Env {
    pub fn new(bindings: &[(String, i64)]) -> Self {
        Env {
            vars: bindings.to_vec(),
        }
    }

    fn get(&self, name: &str) -> Result<i64> {
        self.vars
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }
}

/// Evaluates expressions against a registry, reading sequence terms from
/// cached windows where available.
pub struct Evaluator<'r> {
    registry: &'r Registry,
    tables: BTreeMap<String, TermTable>,
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("integer overflow in {what}"))
}

impl<'r> Evaluator<'r> {
    pub fn new(registry: &'r Registry) -> Self {
        Evaluator {
            registry,
            tables: BTreeMap::new(),
        }
    }

    /// Caches `[lo, hi]` for every sequence the identity names.
    pub fn with_window(registry: &'r Registry, ast: &IdentityAst, lo: i64, hi: i64) -> Result<Self> {
        let mut tables = BTreeMap::new();
        for name in ast.sequences() {
            let seq = registry.resolve(&name)?;
            tables.insert(name, TermTable::new(seq, lo, hi)?);
        }
        Ok(Evaluator { registry, tables })
    }

    fn term(&self, seq: &str, n: i64) -> Result<Rational> {
        if let Some(t) = self.tables.get(seq) {
            return Ok(t.at(n).into_owned());
        }
        Ok(self.registry.resolve(seq)?.term(n))
    }

    pub fn eval(&self, e: &Expr, env: &mut Env) -> Result<Rational> {
        Ok(match e {
            Expr::Int(n) => Rational::from(*n),
            Expr::Var(v) => Rational::from(env.get(v)?),
            Expr::Term { seq, index } => {
                let i = self.eval_int(index, env)?;
                self.term(seq, i)?
            }
            Expr::Neg(x) => -self.eval(x, env)?,
            Expr::Add(l, r) => self.eval(l, env)? + self.eval(r, env)?,
            Expr::Sub(l, r) => self.eval(l, env)? - self.eval(r, env)?,
            Expr::Mul(l, r) => self.eval(l, env)? * self.eval(r, env)?,
            Expr::Pow { base, exp } => {
                let b = self.eval(base, env)?;
                b.pow(self.eval_int(exp, env)?)?
            }
            Expr::SignPow(x) => Rational::sign_power(self.eval_int(x, env)?),
            Expr::Binom(k, j) => binom(self.eval_int(k, env)?, self.eval_int(j, env)?)?,
            Expr::Sum { var, lo, hi, body } => {
                let (lo, hi) = (self.eval_int(lo, env)?, self.eval_int(hi, env)?);
                let mut acc = Rational::zero();
                for j in lo..=hi {
                    env.vars.push((var.clone(), j));
                    let v = self.eval(body, env);
                    env.vars.pop();
                    acc += &v?;
                }
                acc
            }
        })
    }

    /// Evaluates an integer context with checked machine arithmetic.
    pub fn eval_int(&self, e: &Expr, env: &mut Env) -> Result<i64> {
        Ok(match e {
            Expr::Int(n) => *n,
            Expr::Var(v) => env.get(v)?,
            Expr::Term { .. } => {
                let v = self.eval(e, env)?;
                return v.to_i64().ok_or_else(|| Error::NonIntegerIndex(format!("{e} = {v}")));
            }
            Expr::Neg(x) => self
                .eval_int(x, env)?
                .checked_neg()
                .ok_or_else(|| overflow("negation"))?,
            Expr::Add(l, r) => self
                .eval_int(l, env)?
                .checked_add(self.eval_int(r, env)?)
                .ok_or_else(|| overflow("addition"))?,
            Expr::Sub(l, r) => self
                .eval_int(l, env)?
                .checked_sub(self.eval_int(r, env)?)
                .ok_or_else(|| overflow("subtraction"))?,
            Expr::Mul(l, r) => self
                .eval_int(l, env)?
                .checked_mul(self.eval_int(r, env)?)
                .ok_or_else(|| overflow("multiplication"))?,
            Expr::Pow { base, exp } => {
                let (b, x) = (self.eval_int(base, env)?, self.eval_int(exp, env)?);
                match (b, x) {
                    (1, _) => 1,
                    (-1, _) => {
                        if x % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    }
                    (0, x) if x < 0 => return Err(Error::DivisionByZero),
                    (_, x) if x < 0 => return Err(Error::NonIntegerIndex(format!("{e} with exponent {x}"))),
                    (b, x) => {
                        let x = u32::try_from(x).map_err(|_| overflow("power"))?;
                        b.checked_pow(x).ok_or_else(|| overflow("power"))?
                    }
                }
            }
            Expr::SignPow(x) => {
                if self.eval_int(x, env)?.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                }
            }
            Expr::Binom(..) | Expr::Sum { .. } => {
                let v = self.eval(e, env)?;
                v.to_i64().ok_or_else(|| overflow("integer context"))?
            }
        })
    }
}
