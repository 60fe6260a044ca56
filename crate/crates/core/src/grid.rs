//! Integer parameter grids: `"n=-2..2,m=0..4;m<=n"`.
//!
//! Ranges are inclusive; a single value may be written `k=3`. Constraints
//! after `;` are linear integer comparisons and only filter cases.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::VerificationCase;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarRange {
    pub var: String,
    pub lo: i64,
    pub hi: i64,
}

impl VarRange {
    pub fn new(var: impl Into<String>, lo: i64, hi: i64) -> Self {
        VarRange {
            var: var.into(),
            lo,
            hi,
        }
    }

    fn len(&self) -> u128 {
        if self.lo > self.hi {
            0
        } else {
            (self.hi as i128 - self.lo as i128 + 1) as u128
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
            Relation::Ne => "!=",
        }
    }

    fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

/// `Σ coeff·var + constant`
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearExpr {
    pub terms: Vec<(i64, String)>,
    pub constant: i64,
}

impl LinearExpr {
    fn eval(&self, case: &VerificationCase) -> Result<i128> {
        let mut acc = self.constant as i128;
        for (c, v) in &self.terms {
            let x = case
                .get(v)
                .ok_or_else(|| Error::Grid(format!("constraint variable {v:?} has no range")))?;
            acc += *c as i128 * x as i128;
        }
        Ok(acc)
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in &self.terms {
            let (sign, mag) = if *c < 0 {
                ("-", c.unsigned_abs())
            } else {
                ("+", *c as u64)
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if self.constant != 0 {
            if self.constant < 0 {
                write!(f, "-{}", self.constant.unsigned_abs())?;
            } else {
                write!(f, "+{}", self.constant)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: LinearExpr,
    pub rel: Relation,
    pub rhs: LinearExpr,
}

impl Constraint {
    pub fn holds(&self, case: &VerificationCase) -> Result<bool> {
        Ok(self.rel.holds(self.lhs.eval(case)?, self.rhs.eval(case)?))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

/// Per-variable inclusive ranges plus filtering constraints.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GridSpec {
    pub ranges: Vec<VarRange>,
    pub constraints: Vec<Constraint>,
}

const MAX_CASES: u128 = 50_000_000;

impl GridSpec {
    pub fn new(ranges: Vec<VarRange>) -> Result<Self> {
        let g = GridSpec {
            ranges,
            constraints: Vec::new(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_constraint(mut self, c: Constraint) -> Result<Self> {
        self.constraints.push(c);
        self.validate()?;
        Ok(self)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (ranges_text, constraint_text) = match text.split_once(';') {
            Some((r, c)) => (r, Some(c)),
            None => (text, None),
        };
        let mut ranges = Vec::new();
        for part in ranges_text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            ranges.push(parse_range(part)?);
        }
        let mut constraints = Vec::new();
        if let Some(ct) = constraint_text {
            for part in ct.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()) {
                constraints.push(parse_constraint(part)?);
            }
        }
        let g = GridSpec { ranges, constraints };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        for (i, r) in self.ranges.iter().enumerate() {
            if !is_identifier(&r.var) {
                return Err(Error::Grid(format!("invalid variable name {:?}", r.var)));
            }
            if self.ranges[..i].iter().any(|o| o.var == r.var) {
                return Err(Error::Grid(format!("variable {:?} given twice", r.var)));
            }
        }
        for c in &self.constraints {
            for (_, v) in c.lhs.terms.iter().chain(&c.rhs.terms) {
                if self.range(v).is_none() {
                    return Err(Error::Grid(format!("constraint {c} uses {v:?}, which has no range")));
                }
            }
        }
        if self.raw_case_count() > MAX_CASES {
            return Err(Error::Grid(format!(
                "grid has {} cases; the limit is {MAX_CASES}",
                self.raw_case_count()
            )));
        }
        Ok(())
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.ranges.iter().map(|r| r.var.as_str())
    }

    pub fn range(&self, var: &str) -> Option<&VarRange> {
        self.ranges.iter().find(|r| r.var == var)
    }

    /// Cases before constraint filtering.
    pub fn raw_case_count(&self) -> u128 {
        self.ranges.iter().map(VarRange::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.raw_case_count() == 0
    }

    /// Fails unless every one of `required` has a range.
    pub fn require(&self, required: &[&str]) -> Result<()> {
        let missing: Vec<&str> = required.iter().copied().filter(|v| self.range(v).is_none()).collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::Grid(format!("no range for variable(s) {}", missing.join(", "))))
        }
    }

    /// Keeps this grid's ranges and fills in any missing variable from `defaults`.
    pub fn filled_from(&self, defaults: &GridSpec) -> GridSpec {
        let mut out = self.clone();
        for r in &defaults.ranges {
            if out.range(&r.var).is_none() {
                out.ranges.push(r.clone());
            }
        }
        out
    }

    /// Every case in odometer order (last variable fastest), constraints applied.
    pub fn cases(&self) -> Result<Vec<VerificationCase>> {
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        let mut current: Vec<i64> = self.ranges.iter().map(|r| r.lo).collect();
        loop {
            let case = VerificationCase::new(
                self.ranges
                    .iter()
                    .zip(&current)
                    .map(|(r, v)| (r.var.clone(), *v))
                    .collect(),
            );
            let mut keep = true;
            for c in &self.constraints {
                if !c.holds(&case)? {
                    keep = false;
                    break;
                }
            }
            if keep {
                out.push(case);
            }
            // advance
            let mut i = self.ranges.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if current[i] < self.ranges[i].hi {
                    current[i] += 1;
                    for (j, r) in self.ranges.iter().enumerate().skip(i + 1) {
                        current[j] = r.lo;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.ranges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}={}..{}", r.var, r.lo, r.hi)?;
        }
        for c in &self.constraints {
            write!(f, ";{c}")?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Grid(format!("bad {what} {:?}", s.trim())))
}

fn parse_range(part: &str) -> Result<VarRange> {
    let (var, spec) = part
        .split_once('=')
        .ok_or_else(|| Error::Grid(format!("expected var=lo..hi, got {part:?}")))?;
    let var = var.trim();
    if !is_identifier(var) {
        return Err(Error::Grid(format!("invalid variable name {var:?}")));
    }
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (parse_int(lo, "lower bound")?, parse_int(hi, "upper bound")?),
        None => {
            let v = parse_int(spec, "value")?;
            (v, v)
        }
    };
    Ok(VarRange::new(var, lo, hi))
}

fn parse_constraint(text: &str) -> Result<Constraint> {
    const OPS: [(&str, Relation); 7] = [
        ("<=", Relation::Le),
        (">=", Relation::Ge),
        ("!=", Relation::Ne),
        ("==", Relation::Eq),
        ("<", Relation::Lt),
        (">", Relation::Gt),
        ("=", Relation::Eq),
    ];
    for (sym, rel) in OPS {
        if let Some((l, r)) = text.split_once(sym) {
            return Ok(Constraint {
                lhs: parse_linear(l)?,
                rel,
                rhs: parse_linear(r)?,
            });
        }
    }
    Err(Error::Grid(format!("constraint {text:?} has no comparison")))
}

fn parse_linear(text: &str) -> Result<LinearExpr> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Grid("empty side in constraint".into()));
    }
    let signed = if compact.starts_with(['+', '-']) {
        compact
    } else {
        format!("+{compact}")
    };
    let mut expr = LinearExpr::default();
    let mut rest = signed.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1i64, &rest[1..]),
            _ => (-1i64, &rest[1..]),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let token = &body[..end];
        rest = &body[end..];
        if token.is_empty() {
            return Err(Error::Grid(format!("malformed linear expression {text:?}")));
        }
        let (coeff, var) = match token.split_once('*') {
            Some((c, v)) => (parse_int(c, "coefficient")?, Some(v)),
            None if token.bytes().all(|b| b.is_ascii_digit()) => {
                expr.constant += sign * parse_int(token, "constant")?;
                continue;
            }
            None => (1, Some(token)),
        };
        let var = var.unwrap_or_default();
        if !is_identifier(var) {
            return Err(Error::Grid(format!("invalid variable {var:?} in constraint")));
        }
        expr.terms.push((sign * coeff, var.to_string()));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_counts() {
        let g = GridSpec::parse("n=-2..2,m=-2..2,a=0..1,b=0..1,c=0..1,d=0..1").unwrap();
        assert_eq!(g.raw_case_count(), 400);
        assert_eq!(g.cases().unwrap().len(), 400);
        assert_eq!(g.to_string(), "n=-2..2,m=-2..2,a=0..1,b=0..1,c=0..1,d=0..1");
    }

    #[test]
    fn odometer_order() {
        let g = GridSpec::parse("a=0..1, b=5..6").unwrap();
        let cases: Vec<String> = g.cases().unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(cases, ["a=0,b=5", "a=0,b=6", "a=1,b=5", "a=1,b=6"]);
    }

    #[test]
    fn constraints_filter() {
        let g = GridSpec::parse("n=0..3,m=0..3;m<=n").unwrap();
        assert_eq!(g.cases().unwrap().len(), 10);
        let g = GridSpec::parse("n=0..3,m=0..3;2*m-n>=1;n!=3").unwrap();
        for c in g.cases().unwrap() {
            let (n, m) = (c.get("n").unwrap(), c.get("m").unwrap());
            assert!(2 * m - n >= 1 && n != 3);
        }
        assert_eq!(g.to_string(), "n=0..3,m=0..3;2*m-n>=1;n!=3");
    }

    #[test]
    fn single_values_and_empty() {
        let g = GridSpec::parse("k=3").unwrap();
        assert_eq!(g.range("k"), Some(&VarRange::new("k", 3, 3)));
        let e = GridSpec::parse("n=1..0").unwrap();
        assert!(e.is_empty());
        assert!(e.cases().unwrap().is_empty());
        let none = GridSpec::parse("").unwrap();
        assert_eq!(none.cases().unwrap().len(), 1);
    }

    #[test]
    fn malformed_grids() {
        for bad in [
            "n",
            "n=a..b",
            "n=1..2,n=3..4",
            "1x=0..1",
            "n=0..1;m<=n",
            "n=0..1;n",
            "n=0..1;n<=",
            "n=0..1;n<=2**n",
        ] {
            assert!(matches!(GridSpec::parse(bad), Err(Error::Grid(_))), "{bad}");
        }
    }

    #[test]
    fn fill_and_require() {
        let defaults = GridSpec::parse("n=-4..4,m=-4..4").unwrap();
        let g = GridSpec::parse("m=1").unwrap().filled_from(&defaults);
        assert_eq!(g.to_string(), "m=1..1,n=-4..4");
        assert!(g.require(&["n", "m"]).is_ok());
        assert!(g.require(&["k"]).is_err());
    }
}
