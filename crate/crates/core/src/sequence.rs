//! Second-order linear recurrences `G_n = p·G_{n-1} + q·G_{n-2}` over the
//! rationals, extended to negative indices through `G_{n-2} = (G_n - p·G_{n-1}) / q`.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{mat_pow, Mat2, Rational};

/// The coefficient pair `(p, q)`; both nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceParams {
    p: Rational,
    q: Rational,
}

impl RecurrenceParams {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParams("p must be nonzero".into()));
        }
        if q.is_zero() {
            return Err(Error::InvalidParams("q must be nonzero".into()));
        }
        Ok(RecurrenceParams { p, q })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `[[p, q], [1, 0]]`, mapping `(G_{n-1}, G_{n-2})` to `(G_n, G_{n-1})`.
    pub fn companion(&self) -> Mat2 {
        Mat2::new(self.p.clone(), self.q.clone(), Rational::one(), Rational::zero())
    }

    fn step_forward(&self, prev2: &Rational, prev1: &Rational) -> Rational {
        &self.p * prev1 + &self.q * prev2
    }

    fn step_backward(&self, next1: &Rational, next2: &Rational) -> Rational {
        // q is nonzero by construction.
        (next2 - &self.p * next1).checked_div(&self.q).expect("q is nonzero")
    }
}

/// A Horadam-type sequence: recurrence parameters plus `(G_0, G_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence {
    params: RecurrenceParams,
    g0: Rational,
    g1: Rational,
    name: Option<String>,
}

pub fn make_sequence(p: Rational, q: Rational, g0: Rational, g1: Rational) -> Result<Sequence> {
    Sequence::new(RecurrenceParams::new(p, q)?, g0, g1)
}

impl Sequence {
    pub fn new(params: RecurrenceParams, g0: Rational, g1: Rational) -> Result<Self> {
        if g0.is_zero() && g1.is_zero() {
            return Err(Error::InvalidParams("initial terms must not both be zero".into()));
        }
        Ok(Sequence {
            params,
            g0,
            g1,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn params(&self) -> &RecurrenceParams {
        &self.params
    }

    pub fn g0(&self) -> &Rational {
        &self.g0
    }

    pub fn g1(&self) -> &Rational {
        &self.g1
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// A sequence with the same recurrence and different initial terms.
    pub fn with_initials(&self, g0: Rational, g1: Rational) -> Result<Sequence> {
        Sequence::new(self.params.clone(), g0, g1)
    }

    /// Exact `G_n` in O(log |n|) matrix products:
    /// `(G_n, G_{n-1})ᵀ = M^{n-1} (G_1, G_0)ᵀ`.
    pub fn term(&self, n: i64) -> Rational {
        match n {
            0 => return self.g0.clone(),
            1 => return self.g1.clone(),
            _ => {}
        }
        // det M = -q is nonzero, so negative powers always exist.
        let m = mat_pow(&self.params.companion(), n - 1).expect("companion matrix is invertible");
        &m.a11 * &self.g1 + &m.a12 * &self.g0
    }

    /// `[G_lo, ..., G_hi]`, seeded at `lo` and iterated forward.
    pub fn term_range(&self, lo: i64, hi: i64) -> Result<Vec<Rational>> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        let len = usize::try_from(hi - lo)
            .ok()
            .and_then(|l| l.checked_add(1))
            .ok_or_else(|| Error::Overflow(format!("range {lo}..{hi}")))?;
        let mut out = Vec::with_capacity(len);
        out.push(self.term(lo));
        if len > 1 {
            out.push(self.term(lo + 1));
        }
        while out.len() < len {
            let k = out.len();
            let next = self.params.step_forward(&out[k - 2], &out[k - 1]);
            out.push(next);
        }
        Ok(out)
    }

    /// `G_n` by |n| single steps from the initial terms. Slow; used as an
    /// independent check on [`Sequence::term`].
    pub fn term_iterative_oracle(&self, n: i64) -> Rational {
        self.oracle_walk(n.min(0), n.max(0))
            .swap_remove((n - n.min(0)) as usize)
    }

    /// `[G_lo, ..., G_hi]` for `lo <= 0 <= hi`, recording every value the
    /// oracle's single steps pass through: down from index 0 and up from
    /// index 1.
    pub fn oracle_walk(&self, lo: i64, hi: i64) -> Vec<Rational> {
        assert!(lo <= 0 && 0 <= hi, "oracle walk must contain index 0");
        let mut below = Vec::with_capacity(lo.unsigned_abs() as usize);
        // (a, b) = (G_i, G_{i+1}) walking down
        let (mut a, mut b) = (self.g0.clone(), self.g1.clone());
        for _ in 0..lo.unsigned_abs() {
            let prev = self.params.step_backward(&a, &b);
            b = std::mem::replace(&mut a, prev);
            below.push(a.clone());
        }
        below.reverse();
        below.push(self.g0.clone());
        // (a, b) = (G_i, G_{i+1}) walking up
        let (mut a, mut b) = (self.g0.clone(), self.g1.clone());
        for _ in 0..hi {
            let next = self.params.step_forward(&a, &b);
            a = std::mem::replace(&mut b, next);
            below.push(a.clone());
        }
        below
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(
                f,
                "(p={}, q={}, G0={}, G1={})",
                self.params.p, self.params.q, self.g0, self.g1
            ),
        }
    }
}

/// Anything that can produce exact terms of a fixed recurrence.
pub trait Terms {
    fn at(&self, n: i64) -> Cow<'_, Rational>;
    fn params(&self) -> &RecurrenceParams;
}

impl Terms for Sequence {
    fn at(&self, n: i64) -> Cow<'_, Rational> {
        Cow::Owned(self.term(n))
    }

    fn params(&self) -> &RecurrenceParams {
        &self.params
    }
}

/// Precomputed window of terms with fallback to [`Sequence::term`] outside it.
#[derive(Clone, Debug)]
pub struct TermTable {
    seq: Sequence,
    lo: i64,
    values: Vec<Rational>,
}

impl TermTable {
    pub fn new(seq: &Sequence, lo: i64, hi: i64) -> Result<Self> {
        Ok(TermTable {
            seq: seq.clone(),
            lo,
            values: seq.term_range(lo, hi)?,
        })
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }
}

impl Terms for TermTable {
    fn at(&self, n: i64) -> Cow<'_, Rational> {
        let idx = n.checked_sub(self.lo).and_then(|i| usize::try_from(i).ok());
        match idx.and_then(|i| self.values.get(i)) {
            Some(v) => Cow::Borrowed(v),
            None => Cow::Owned(self.seq.term(n)),
        }
    }

    fn params(&self) -> &RecurrenceParams {
        self.seq.params()
    }
}

/// The six classical sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    Fibonacci,
    Lucas,
    Pell,
    PellLucas,
    Jacobsthal,
    JacobsthalLucas,
}

impl Named {
    pub const ALL: [Named; 6] = [
        Named::Fibonacci,
        Named::Lucas,
        Named::Pell,
        Named::PellLucas,
        Named::Jacobsthal,
        Named::JacobsthalLucas,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Named::Fibonacci => "fibonacci",
            Named::Lucas => "lucas",
            Named::Pell => "pell",
            Named::PellLucas => "pell-lucas",
            Named::Jacobsthal => "jacobsthal",
            Named::JacobsthalLucas => "jacobsthal-lucas",
        }
    }

    /// Single-letter symbol used in identity text.
    pub fn symbol(self) -> &'static str {
        match self {
            Named::Fibonacci => "F",
            Named::Lucas => "L",
            Named::Pell => "P",
            Named::PellLucas => "Q",
            Named::Jacobsthal => "J",
            Named::JacobsthalLucas => "j",
        }
    }

    pub fn from_id(id: &str) -> Option<Named> {
        Named::ALL.into_iter().find(|n| n.id() == id)
    }

    /// `(p, q, G_0, G_1)`
    pub fn definition(self) -> (i64, i64, i64, i64) {
        match self {
            Named::Fibonacci => (1, 1, 0, 1),
            Named::Lucas => (1, 1, 2, 1),
            Named::Pell => (2, 1, 0, 1),
            Named::PellLucas => (2, 1, 2, 2),
            Named::Jacobsthal => (1, 2, 0, 1),
            Named::JacobsthalLucas => (1, 2, 2, 1),
        }
    }

    pub fn sequence(self) -> Sequence {
        let (p, q, g0, g1) = self.definition();
        make_sequence(p.into(), q.into(), g0.into(), g1.into())
            .expect("named sequences are well formed")
            .with_name(self.id())
    }
}

/// Name-indexed access to the six classical sequences.
#[derive(Clone, Debug)]
pub struct NamedRegistry {
    entries: Vec<(&'static str, Sequence)>,
}

impl Default for NamedRegistry {
    fn default() -> Self {
        NamedRegistry {
            entries: Named::ALL.iter().map(|n| (n.id(), n.sequence())).collect(),
        }
    }
}

impl NamedRegistry {
    pub fn get(&self, name: &str) -> Option<&Sequence> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, s)| s)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|(n, _)| *n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Sequence)> {
        self.entries.iter().map(|(n, s)| (*n, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    #[test]
    fn make_sequence_validates() {
        let f = make_sequence(1.into(), 1.into(), 0.into(), 1.into()).unwrap();
        assert_eq!(f.term(8), r(21, 1));
        let jl = make_sequence(1.into(), 2.into(), 2.into(), 1.into()).unwrap();
        assert_eq!(
            jl,
            Named::JacobsthalLucas
                .sequence()
                .with_initials(2.into(), 1.into())
                .unwrap()
        );
        assert!(matches!(
            make_sequence(1.into(), 0.into(), 0.into(), 1.into()),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            make_sequence(0.into(), 1.into(), 0.into(), 1.into()),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            make_sequence(1.into(), 1.into(), 0.into(), 0.into()),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn term_spot_values() {
        assert_eq!(Named::Fibonacci.sequence().term(8), r(21, 1));
        assert_eq!(Named::Jacobsthal.sequence().term(-5), r(11, 32));
        assert_eq!(Named::PellLucas.sequence().term(-5), r(-82, 1));
        let s = make_sequence(r(3, 2), r(-1, 7), r(5, 3), r(2, 1)).unwrap();
        assert_eq!(s.term(0), r(5, 3));
        assert_eq!(s.term(1), r(2, 1));
    }

    #[test]
    fn term_range_matches_lucas_row() {
        let got: Vec<String> = Named::Lucas
            .sequence()
            .term_range(-5, 8)
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(
            got,
            ["-11", "7", "-4", "3", "-1", "2", "1", "3", "4", "7", "11", "18", "29", "47"]
        );
        let s = Named::Pell.sequence();
        assert_eq!(s.term_range(0, 0).unwrap(), vec![s.g0().clone()]);
        assert_eq!(
            Named::JacobsthalLucas.sequence().term_range(-4, -4).unwrap(),
            vec![r(17, 16)]
        );
        assert_eq!(s.term_range(3, 2), Err(Error::EmptyRange { lo: 3, hi: 2 }));
    }

    #[test]
    fn iterative_oracle_spot_values() {
        assert_eq!(Named::Pell.sequence().term_iterative_oracle(7), r(169, 1));
        assert_eq!(Named::Fibonacci.sequence().term_iterative_oracle(-4), r(-3, 1));
        let s = make_sequence(r(3, 2), r(-1, 7), r(5, 3), r(2, 1)).unwrap();
        assert_eq!(s.term_iterative_oracle(1), r(2, 1));
        assert_eq!(s.term_iterative_oracle(0), r(5, 3));
    }

    #[test]
    fn recurrence_holds_both_directions() {
        let s = make_sequence(r(-5, 4), r(2, 9), r(1, 1), r(-3, 2)).unwrap();
        let (p, q) = (s.params().p().clone(), s.params().q().clone());
        for n in -50..=50 {
            assert_eq!(s.term(n), &p * &s.term(n - 1) + &q * &s.term(n - 2), "n={n}");
        }
    }

    #[test]
    fn table_window_falls_back_outside() {
        let s = Named::Fibonacci.sequence();
        let t = TermTable::new(&s, -3, 3).unwrap();
        assert!(matches!(t.at(2), Cow::Borrowed(_)));
        assert!(matches!(t.at(10), Cow::Owned(_)));
        assert_eq!(*t.at(10), r(55, 1));
        assert_eq!(*t.at(-3), r(2, 1));
    }

    #[test]
    fn registry_lookup() {
        let reg = NamedRegistry::default();
        assert_eq!(reg.names().count(), 6);
        assert_eq!(reg.get("pell-lucas").unwrap().term(2), r(6, 1));
        assert!(reg.get("tribonacci").is_none());
        assert_eq!(Named::from_id("jacobsthal-lucas"), Some(Named::JacobsthalLucas));
    }
}
