use std::fmt;

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal; negative values are `Neg(Int(_))`.
    Int(i64),
    Var(String),
    Term {
        seq: String,
        index: Box<Expr>,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow {
        base: Box<Expr>,
        exp: Box<Expr>,
    },
    /// `(-1)^(e)`
    SignPow(Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Sum {
        var: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

/// `let NAME = (p, q, g0, g1)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub p: Rational,
    pub q: Rational,
    pub g0: Rational,
    pub g1: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityAst {
    pub declarations: Vec<Declaration>,
    pub lhs: Expr,
    pub rhs: Expr,
    pub free_vars: Vec<String>,
}

impl IdentityAst {
    /// Both sides as `lhs = rhs`, without declarations.
    pub fn equation(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }

    /// Sequence names referenced by either side, in first-appearance order.
    pub fn sequences(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.visit(&mut |e| {
            if let Expr::Term { seq, .. } = e {
                if !out.contains(seq) {
                    out.push(seq.clone());
                }
            }
        });
        self.rhs.visit(&mut |e| {
            if let Expr::Term { seq, .. } = e {
                if !out.contains(seq) {
                    out.push(seq.clone());
                }
            }
        });
        out
    }
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(n)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Direct children in source order, each flagged when it lies in the
    /// scope of this node's summation variable.
    pub fn children(&self) -> Vec<(&Expr, bool)> {
        match self {
            Expr::Int(_) | Expr::Var(_) => vec![],
            Expr::Term { index, .. } => vec![(index, false)],
            Expr::Neg(e) | Expr::SignPow(e) => vec![(e, false)],
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Binom(l, r) => {
                vec![(l, false), (r, false)]
            }
            Expr::Pow { base, exp } => vec![(base, false), (exp, false)],
            Expr::Sum { lo, hi, body, .. } => vec![(lo, false), (hi, false), (body, true)],
        }
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        for (c, _) in self.children() {
            c.visit(f);
        }
    }

    /// Appends variables not bound by an enclosing `sum`, first appearance
    /// first.
    pub fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        if let Expr::Var(v) = self {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        }
        for (c, binds) in self.children() {
            if let (true, Expr::Sum { var, .. }) = (binds, self) {
                bound.push(var.clone());
                c.collect_free(bound, out);
                bound.pop();
            } else {
                c.collect_free(bound, out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow { .. } | Expr::SignPow(_) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Term { seq, index } => {
                write!(f, "{seq}[")?;
                index.write_at(f, 0)?;
                write!(f, "]")
            }
            Expr::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                l.write_at(f, 1)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                r.write_at(f, 2)
            }
            Expr::Mul(l, r) => {
                l.write_at(f, 2)?;
                write!(f, "*")?;
                r.write_at(f, 3)
            }
            Expr::Pow { base, exp } => {
                // a parenthesized `-1` base would read back as `(-1)^(...)`
                if **base == Expr::Neg(Box::new(Expr::Int(1))) {
                    write!(f, "(-(1))")?;
                } else {
                    base.write_at(f, 5)?;
                }
                write!(f, "^(")?;
                exp.write_at(f, 0)?;
                write!(f, ")")
            }
            Expr::SignPow(e) => {
                write!(f, "(-1)^(")?;
                e.write_at(f, 0)?;
                write!(f, ")")
            }
            Expr::Binom(k, j) => {
                write!(f, "binom(")?;
                k.write_at(f, 0)?;
                write!(f, ", ")?;
                j.write_at(f, 0)?;
                write!(f, ")")
            }
            Expr::Sum { var, lo, hi, body } => {
                write!(f, "sum({var}, ")?;
                lo.write_at(f, 0)?;
                write!(f, ", ")?;
                hi.write_at(f, 0)?;
                write!(f, ", ")?;
                body.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "let {} = ({}, {}, {}, {})",
            self.name, self.p, self.q, self.g0, self.g1
        )
    }
}

impl fmt::Display for IdentityAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.declarations {
            writeln!(f, "{d}")?;
        }
        write!(f, "{}", self.equation())
    }
}
