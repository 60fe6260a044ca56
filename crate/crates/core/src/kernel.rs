//! The antisymmetric kernel `f_G(u,v;s,t) = G_{u-s}G_{v-t} - G_{u-t}G_{v-s}`
//! and exact checkers for the three-term relation between two sequences of
//! the same recurrence, its corollary, and the summation identities built on
//! top of it.
//!
//! Every `evaluate_*` function computes both sides of one instance and
//! returns an [`Outcome`]; the `check_*` wrappers turn a single case into a
//! [`VerificationReport`], and [`sweep`] runs an identity over a grid.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::report::{Outcome, VerificationCase, VerificationReport};
use crate::scalar::{binom, Rational};
use crate::sequence::{Sequence, TermTable, Terms};

/// Arguments `(u, v; s, t)` of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelArgs {
    pub u: i64,
    pub v: i64,
    pub s: i64,
    pub t: i64,
}

impl KernelArgs {
    pub fn new(u: i64, v: i64, s: i64, t: i64) -> Self {
        KernelArgs { u, v, s, t }
    }
}

pub fn f_g<G: Terms + ?Sized>(g: &G, args: KernelArgs) -> Rational {
    let KernelArgs { u, v, s, t } = args;
    &*g.at(u - s) * &*g.at(v - t) - &*g.at(u - t) * &*g.at(v - s)
}

fn fk<G: Terms + ?Sized>(g: &G, u: i64, v: i64, s: i64, t: i64) -> Rational {
    f_g(g, KernelArgs::new(u, v, s, t))
}

/// `X_n = f1·X_{n-a} + f2·Y_{n-b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTermRelation {
    f1: Rational,
    f2: Rational,
    a: i64,
    b: i64,
}

impl ThreeTermRelation {
    pub fn new(f1: Rational, f2: Rational, a: i64, b: i64) -> Result<Self> {
        if f1.is_zero() || f2.is_zero() {
            return Err(Error::InvalidParams("relation coefficients must be nonzero".into()));
        }
        if a == b {
            return Err(Error::InvalidParams("relation shifts must differ".into()));
        }
        Ok(ThreeTermRelation { f1, f2, a, b })
    }

    /// `X_n = p·X_{n-1} + q·X_{n-2}` for the sequence's own recurrence.
    pub fn of_recurrence(seq: &Sequence) -> Self {
        ThreeTermRelation {
            f1: seq.params().p().clone(),
            f2: seq.params().q().clone(),
            a: 1,
            b: 2,
        }
    }

    pub fn f1(&self) -> &Rational {
        &self.f1
    }

    pub fn f2(&self) -> &Rational {
        &self.f2
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Checks the relation at every `i` in `lo..=hi`.
    fn verify_window<X, Y>(&self, x: &X, y: &Y, lo: i64, hi: i64) -> Result<()>
    where
        X: Terms + ?Sized,
        Y: Terms + ?Sized,
    {
        for i in lo..=hi {
            let rhs = &self.f1 * &*x.at(i - self.a) + &self.f2 * &*y.at(i - self.b);
            if *x.at(i) != rhs {
                return Err(Error::Precondition(format!(
                    "relation X_n = ({})X_(n-{}) + ({})Y_(n-{}) fails at n = {i}",
                    self.f1, self.a, self.f2, self.b
                )));
            }
        }
        Ok(())
    }
}

/// Selects one of the three displayed forms of a lemma or theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    One,
    Two,
    Three,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::One, Variant::Two, Variant::Three];

    pub fn number(self) -> u8 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
            Variant::Three => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Variant> {
        match n {
            1 => Some(Variant::One),
            2 => Some(Variant::Two),
            3 => Some(Variant::Three),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

fn same_recurrence<G, H>(g: &G, h: &H) -> Result<()>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    if g.params() != h.params() {
        return Err(Error::Usage("both sequences must satisfy the same recurrence".into()));
    }
    Ok(())
}

fn non_negative_k(k: i64) -> Result<i64> {
    if k < 0 {
        Err(Error::Usage(format!("k must be non-negative, got {k}")))
    } else {
        Ok(k)
    }
}

/// `Σ_{j=0..k} weight(j)·X_{index(j)}` where `weight(j) = coeff(j)·ratio^j`.
fn geometric_sum<X, I, C>(x: &X, k: i64, ratio: &Rational, index: I, coeff: C) -> Result<Rational>
where
    X: Terms + ?Sized,
    I: Fn(i64) -> i64,
    C: Fn(i64) -> Result<Rational>,
{
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for j in 0..=k {
        let c = coeff(j)?;
        if !c.is_zero() {
            acc += &(&c * &power * &*x.at(index(j)));
        }
        power *= ratio;
    }
    Ok(acc)
}

fn unit(_: i64) -> Result<Rational> {
    Ok(Rational::one())
}

/// `(λ1, λ2)` with `H_{n+m} = λ1·G_{m-a} + λ2·G_{m-b}` for every `m`,
/// solved from the instances `m = c` and `m = d` and then confirmed on
/// every `m` in `window`.
#[allow(clippy::too_many_arguments)]
pub fn basis_coefficients<G, H>(
    g: &G,
    h: &H,
    n: i64,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    window: std::ops::RangeInclusive<i64>,
) -> Result<(Rational, Rational)>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    same_recurrence(g, h)?;
    let det = fk(g, d, c, b, a);
    if det.is_zero() {
        return Err(Error::Degenerate(format!(
            "f_G(d,c;b,a) = 0 for a={a}, b={b}, c={c}, d={d}"
        )));
    }
    let (hc, hd) = (h.at(n + c), h.at(n + d));
    let l1 = (&*hc * &*g.at(d - b) - &*g.at(c - b) * &*hd).checked_div(&det)?;
    let l2 = (&*g.at(c - a) * &*hd - &*g.at(d - a) * &*hc).checked_div(&det)?;
    for m in window {
        let lhs = h.at(n + m).into_owned();
        let rhs = &l1 * &*g.at(m - a) + &l2 * &*g.at(m - b);
        if lhs != rhs {
            return Err(Error::Degenerate(format!(
                "basis coefficients fail to reproduce H_(n+m) at m = {m}"
            )));
        }
    }
    Ok((l1, l2))
}

/// `f_G(d,c;b,a)·H_{n+m} = f_G(d,m;b,a)·H_{n+c} + f_G(c,m;a,b)·H_{n+d}`,
/// checked as stated even when `f_G(d,c;b,a) = 0`.
pub fn evaluate_theorem1<G, H>(g: &G, h: &H, case: &VerificationCase) -> Result<Outcome>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    same_recurrence(g, h)?;
    let [n, m, a, b, c, d] = vars(case, ["n", "m", "a", "b", "c", "d"])?;
    let lhs = fk(g, d, c, b, a) * &*h.at(n + m);
    let rhs = fk(g, d, m, b, a) * &*h.at(n + c) + fk(g, c, m, a, b) * &*h.at(n + d);
    Ok(Outcome::checked(lhs, rhs))
}

/// The `(c, d) = (b, a)` specialization written with `G_0`.
pub fn evaluate_corollary<G, H>(g: &G, h: &H, case: &VerificationCase) -> Result<Outcome>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    same_recurrence(g, h)?;
    let [n, m, a, b] = vars(case, ["n", "m", "a", "b"])?;
    let g0 = g.at(0);
    let (gab, gba) = (g.at(a - b), g.at(b - a));
    let lhs = (&*gab * &*gba - &*g0 * &*g0) * &*h.at(n + m);
    let rhs = (&*gba * &*g.at(m - b) - &*g0 * &*g.at(m - a)) * &*h.at(n + a)
        + (&*gab * &*g.at(m - a) - &*g0 * &*g.at(m - b)) * &*h.at(n + b);
    Ok(Outcome::checked(lhs, rhs))
}

/// `f2·Σ_{j=0..k} Y_{n-ka-b+aj} / f1^j = X_n / f1^k - f1·X_{n-(k+1)a}`
pub fn evaluate_lemma1<X, Y>(x: &X, y: &Y, rel: &ThreeTermRelation, case: &VerificationCase) -> Result<Outcome>
where
    X: Terms + ?Sized,
    Y: Terms + ?Sized,
{
    let [n, k] = vars(case, ["n", "k"])?;
    let k = non_negative_k(k)?;
    let (a, b) = (rel.a, rel.b);
    let instances = (0..=k).map(|j| n - j * a);
    let (lo, hi) = span(instances);
    rel.verify_window(x, y, lo, hi)?;
    let inv_f1 = rel.f1.recip()?;
    let sum = geometric_sum(y, k, &inv_f1, |j| n - k * a - b + a * j, unit)?;
    let lhs = &rel.f2 * &sum;
    let rhs = &*x.at(n) * &inv_f1.pow(k)? - &rel.f1 * &*x.at(n - (k + 1) * a);
    Ok(Outcome::checked(lhs, rhs))
}

fn span(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Relation instances touched by each single-sequence form: the index
/// window on which the relation is verified before summing.
fn lemma_window(rel: &ThreeTermRelation, variant: Variant, binomial: bool, n: i64, k: i64) -> (i64, i64) {
    let (a, b) = (rel.a, rel.b);
    let pts: Vec<i64> = match (binomial, variant) {
        (false, Variant::One) => (0..=k).map(|j| n - j * a).collect(),
        (false, Variant::Two) => (0..=k).map(|j| n - j * b).collect(),
        (false, Variant::Three) => (0..=k).map(|j| n + b - j * (a - b)).collect(),
        (true, Variant::One) => (0..=k).flat_map(|j| [n - b * k + (b - a) * j + b]).chain([n]).collect(),
        (true, Variant::Two) => (0..=k).map(|j| n + (a - b) * k + b * j).chain([n]).collect(),
        (true, Variant::Three) => (0..=k).map(|j| n + (b - a) * k + a * j).chain([n]).collect(),
    };
    // The binomial forms use the relation across the whole band between the
    // extreme indices, so widen to cover every instance in between.
    let (lo, hi) = span(pts.into_iter());
    let reach = a.abs().max(b.abs());
    if binomial {
        (lo - reach, hi + reach)
    } else {
        (lo, hi)
    }
}

/// The three single-sequence sums for `X_n = f1·X_{n-a} + f2·X_{n-b}`.
pub fn evaluate_lemma2<X>(x: &X, rel: &ThreeTermRelation, variant: Variant, case: &VerificationCase) -> Result<Outcome>
where
    X: Terms + ?Sized,
{
    let [n, k] = vars(case, ["n", "k"])?;
    let k = non_negative_k(k)?;
    let (lo, hi) = lemma_window(rel, variant, false, n, k);
    rel.verify_window(x, x, lo, hi)?;
    let (f1, f2, a, b) = (&rel.f1, &rel.f2, rel.a, rel.b);
    let (lhs, rhs) = match variant {
        Variant::One => {
            let inv = f1.recip()?;
            let sum = geometric_sum(x, k, &inv, |j| n - k * a - b + a * j, unit)?;
            (f2 * &sum, &*x.at(n) * &inv.pow(k)? - f1 * &*x.at(n - (k + 1) * a))
        }
        Variant::Two => {
            let inv = f2.recip()?;
            let sum = geometric_sum(x, k, &inv, |j| n - k * b - a + b * j, unit)?;
            (f1 * &sum, &*x.at(n) * &inv.pow(k)? - f2 * &*x.at(n - (k + 1) * b))
        }
        Variant::Three => {
            let r = (-f1).checked_div(f2)?;
            let inv = r.recip()?;
            let d = a - b;
            let sum = geometric_sum(x, k, &inv, |j| n - d * k + b + d * j, unit)?;
            (sum, f2 * &*x.at(n) * &inv.pow(k)? + f1 * &*x.at(n - (k + 1) * d))
        }
    };
    Ok(Outcome::checked(lhs, rhs))
}

/// The three binomial sums for `X_n = f1·X_{n-a} + f2·X_{n-b}`.
pub fn evaluate_lemma3<X>(x: &X, rel: &ThreeTermRelation, variant: Variant, case: &VerificationCase) -> Result<Outcome>
where
    X: Terms + ?Sized,
{
    let [n, k] = vars(case, ["n", "k"])?;
    let k = non_negative_k(k)?;
    let (lo, hi) = lemma_window(rel, variant, true, n, k);
    rel.verify_window(x, x, lo, hi)?;
    let (f1, f2, a, b) = (&rel.f1, &rel.f2, rel.a, rel.b);
    let choose = |j| binom(k, j);
    let (lhs, rhs) = match variant {
        Variant::One => {
            let ratio = f1.checked_div(f2)?;
            let sum = geometric_sum(x, k, &ratio, |j| n - b * k + (b - a) * j, choose)?;
            (sum, &*x.at(n) * &f2.recip()?.pow(k)?)
        }
        Variant::Two => {
            let ratio = (-f2).recip()?;
            let sum = geometric_sum(x, k, &ratio, |j| n + (a - b) * k + b * j, choose)?;
            (sum, (-f1).checked_div(f2)?.pow(k)? * &*x.at(n))
        }
        Variant::Three => {
            let ratio = (-f1).recip()?;
            let sum = geometric_sum(x, k, &ratio, |j| n + (b - a) * k + a * j, choose)?;
            (sum, (-f2).checked_div(f1)?.pow(k)? * &*x.at(n))
        }
    };
    Ok(Outcome::checked(lhs, rhs))
}

const SKIP_FDM: &str = "f_G(d,m;b,a) = 0";
const SKIP_FCM: &str = "f_G(c,m;a,b) = 0";

/// The three kernels `(f_G(d,c;b,a), f_G(d,m;b,a), f_G(c,m;a,b))`.
fn kernels<G: Terms + ?Sized>(g: &G, m: i64, a: i64, b: i64, c: i64, d: i64) -> [Rational; 3] {
    [fk(g, d, c, b, a), fk(g, d, m, b, a), fk(g, c, m, a, b)]
}

/// Ordinary summation identities obtained by feeding the kernel relation
/// into the single-sequence sums. A case is skipped when the kernel the
/// variant divides by vanishes.
pub fn evaluate_sum_ordinary<G, H>(g: &G, h: &H, variant: Variant, case: &VerificationCase) -> Result<Outcome>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    same_recurrence(g, h)?;
    let [n, m, a, b, c, d, k] = vars(case, ["n", "m", "a", "b", "c", "d", "k"])?;
    let k = non_negative_k(k)?;
    let [fdc, fdm, fcm] = kernels(g, m, a, b, c, d);
    let (lhs, rhs) = match variant {
        Variant::One => {
            if fdm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FDM.into()));
            }
            let ratio = fdc.checked_div(&fdm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n - (m - c) * k - (m - d) + (m - c) * j, unit)?;
            let rhs = fdc.pow(k + 1)?.checked_div(&fdm.pow(k)?)? * &*h.at(n) - &fdm * &*h.at(n - (m - c) * (k + 1));
            (&fcm * &sum, rhs)
        }
        Variant::Two => {
            if fcm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FCM.into()));
            }
            let ratio = fdc.checked_div(&fcm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n - (m - d) * k - (m - c) + (m - d) * j, unit)?;
            let rhs = fdc.pow(k + 1)?.checked_div(&fcm.pow(k)?)? * &*h.at(n) - &fcm * &*h.at(n - (m - d) * (k + 1));
            (&fdm * &sum, rhs)
        }
        Variant::Three => {
            if fcm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FCM.into()));
            }
            let ratio = (-&fdm).checked_div(&fcm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n - (c - d) * k + (m - c) + (c - d) * j, unit)?;
            let rhs = Rational::sign_power(k) * fdm.pow(k + 1)?.checked_div(&fcm.pow(k)?)? * &*h.at(n)
                + &fcm * &*h.at(n - (c - d) * (k + 1));
            (&fdc * &sum, rhs)
        }
    };
    Ok(Outcome::checked(lhs, rhs))
}

/// Binomial summation identities obtained from the kernel relation; same
/// skip rule as [`evaluate_sum_ordinary`].
pub fn evaluate_sum_binomial<G, H>(g: &G, h: &H, variant: Variant, case: &VerificationCase) -> Result<Outcome>
where
    G: Terms + ?Sized,
    H: Terms + ?Sized,
{
    same_recurrence(g, h)?;
    let [n, m, a, b, c, d, k] = vars(case, ["n", "m", "a", "b", "c", "d", "k"])?;
    let k = non_negative_k(k)?;
    let [fdc, fdm, fcm] = kernels(g, m, a, b, c, d);
    let choose = |j| binom(k, j);
    let (lhs, rhs) = match variant {
        Variant::One => {
            if fcm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FCM.into()));
            }
            let ratio = fdm.checked_div(&fcm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n - (m - d) * k + (c - d) * j, choose)?;
            (sum, fdc.checked_div(&fcm)?.pow(k)? * &*h.at(n))
        }
        Variant::Two => {
            if fcm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FCM.into()));
            }
            let ratio = (-&fdc).checked_div(&fcm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n - (c - d) * k + (m - d) * j, choose)?;
            (sum, (-&fdm).checked_div(&fcm)?.pow(k)? * &*h.at(n))
        }
        Variant::Three => {
            if fdm.is_zero() {
                return Ok(Outcome::Skipped(SKIP_FDM.into()));
            }
            let ratio = (-&fdc).checked_div(&fdm)?;
            let sum = geometric_sum(h, k, &ratio, |j| n + (c - d) * k + (m - c) * j, choose)?;
            (sum, (-&fcm).checked_div(&fdm)?.pow(k)? * &*h.at(n))
        }
    };
    Ok(Outcome::checked(lhs, rhs))
}

fn vars<const N: usize>(case: &VerificationCase, names: [&str; N]) -> Result<[i64; N]> {
    let mut out = [0i64; N];
    for (slot, name) in out.iter_mut().zip(names) {
        *slot = case.require(name)?;
    }
    Ok(out)
}

fn single(identity: &KernelIdentity, case: &VerificationCase, outcome: Outcome) -> VerificationReport {
    VerificationReport::from_outcomes(identity.to_string(), case.to_string(), [(case.clone(), outcome)])
}

fn case_of(pairs: &[(&str, i64)]) -> VerificationCase {
    VerificationCase::from_pairs(pairs)
}

pub fn check_theorem1(g: &Sequence, h: &Sequence, case: &VerificationCase) -> Result<VerificationReport> {
    let case = case.restricted(KernelIdentity::Theorem1.vars());
    Ok(single(
        &KernelIdentity::Theorem1,
        &case,
        evaluate_theorem1(g, h, &case)?,
    ))
}

pub fn check_corollary(g: &Sequence, h: &Sequence, case: &VerificationCase) -> Result<VerificationReport> {
    let case = case.restricted(KernelIdentity::Corollary.vars());
    Ok(single(
        &KernelIdentity::Corollary,
        &case,
        evaluate_corollary(g, h, &case)?,
    ))
}

pub fn check_lemma1(x: &Sequence, y: &Sequence, rel: &ThreeTermRelation, n: i64, k: i64) -> Result<VerificationReport> {
    let case = case_of(&[("n", n), ("k", k)]);
    Ok(single(
        &KernelIdentity::Lemma1,
        &case,
        evaluate_lemma1(x, y, rel, &case)?,
    ))
}

pub fn check_lemma2(
    x: &Sequence,
    rel: &ThreeTermRelation,
    variant: Variant,
    n: i64,
    k: i64,
) -> Result<VerificationReport> {
    let case = case_of(&[("n", n), ("k", k)]);
    let outcome = evaluate_lemma2(x, rel, variant, &case)?;
    Ok(single(&KernelIdentity::Lemma2(variant), &case, outcome))
}

pub fn check_lemma3(
    x: &Sequence,
    rel: &ThreeTermRelation,
    variant: Variant,
    n: i64,
    k: i64,
) -> Result<VerificationReport> {
    let case = case_of(&[("n", n), ("k", k)]);
    let outcome = evaluate_lemma3(x, rel, variant, &case)?;
    Ok(single(&KernelIdentity::Lemma3(variant), &case, outcome))
}

pub fn check_sum_ordinary(
    g: &Sequence,
    h: &Sequence,
    variant: Variant,
    case: &VerificationCase,
) -> Result<VerificationReport> {
    let id = KernelIdentity::SumOrdinary(variant);
    let case = case.restricted(id.vars());
    Ok(single(&id, &case, evaluate_sum_ordinary(g, h, variant, &case)?))
}

pub fn check_sum_binomial(
    g: &Sequence,
    h: &Sequence,
    variant: Variant,
    case: &VerificationCase,
) -> Result<VerificationReport> {
    let id = KernelIdentity::SumBinomial(variant);
    let case = case.restricted(id.vars());
    Ok(single(&id, &case, evaluate_sum_binomial(g, h, variant, &case)?))
}

/// The generic identities addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelIdentity {
    Theorem1,
    Corollary,
    Lemma1,
    Lemma2(Variant),
    Lemma3(Variant),
    SumOrdinary(Variant),
    SumBinomial(Variant),
}

impl KernelIdentity {
    pub fn all() -> Vec<KernelIdentity> {
        let mut v = vec![
            KernelIdentity::Theorem1,
            KernelIdentity::Corollary,
            KernelIdentity::Lemma1,
        ];
        for ctor in [
            KernelIdentity::Lemma2 as fn(Variant) -> KernelIdentity,
            KernelIdentity::Lemma3,
            KernelIdentity::SumOrdinary,
            KernelIdentity::SumBinomial,
        ] {
            v.extend(Variant::ALL.map(ctor));
        }
        v
    }

    pub fn vars(&self) -> &'static [&'static str] {
        match self {
            KernelIdentity::Theorem1 => &["n", "m", "a", "b", "c", "d"],
            KernelIdentity::Corollary => &["n", "m", "a", "b"],
            KernelIdentity::Lemma1 | KernelIdentity::Lemma2(_) | KernelIdentity::Lemma3(_) => &["n", "k"],
            KernelIdentity::SumOrdinary(_) | KernelIdentity::SumBinomial(_) => &["n", "m", "a", "b", "c", "d", "k"],
        }
    }

    pub fn default_grid(&self) -> GridSpec {
        let text = match self {
            KernelIdentity::Theorem1 => "n=-3..3,m=-3..3,a=-2..2,b=-2..2,c=-2..2,d=-2..2",
            KernelIdentity::Corollary => "n=-4..4,m=-4..4,a=-3..3,b=-3..3",
            KernelIdentity::Lemma1 | KernelIdentity::Lemma2(_) | KernelIdentity::Lemma3(_) => "n=-5..5,k=0..6",
            KernelIdentity::SumOrdinary(_) | KernelIdentity::SumBinomial(_) => {
                "n=-2..2,m=-2..2,a=-1..2,b=-1..2,c=-1..2,d=-1..2,k=0..5"
            }
        };
        GridSpec::parse(text).expect("default grids are well formed")
    }

    /// Whether the identity relates two sequences (`g`, `h`) rather than one.
    pub fn uses_pair(&self) -> bool {
        !matches!(self, KernelIdentity::Lemma2(_) | KernelIdentity::Lemma3(_))
    }

    pub fn uses_relation(&self) -> bool {
        matches!(
            self,
            KernelIdentity::Lemma1 | KernelIdentity::Lemma2(_) | KernelIdentity::Lemma3(_)
        )
    }

    pub fn evaluate<G, H>(&self, g: &G, h: &H, rel: &ThreeTermRelation, case: &VerificationCase) -> Result<Outcome>
    where
        G: Terms + ?Sized,
        H: Terms + ?Sized,
    {
        match *self {
            KernelIdentity::Theorem1 => evaluate_theorem1(g, h, case),
            KernelIdentity::Corollary => evaluate_corollary(g, h, case),
            KernelIdentity::Lemma1 => evaluate_lemma1(g, h, rel, case),
            KernelIdentity::Lemma2(v) => evaluate_lemma2(g, rel, v, case),
            KernelIdentity::Lemma3(v) => evaluate_lemma3(g, rel, v, case),
            KernelIdentity::SumOrdinary(v) => evaluate_sum_ordinary(g, h, v, case),
            KernelIdentity::SumBinomial(v) => evaluate_sum_binomial(g, h, v, case),
        }
    }
}

impl fmt::Display for KernelIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelIdentity::Theorem1 => write!(f, "theorem1"),
            KernelIdentity::Corollary => write!(f, "corollary"),
            KernelIdentity::Lemma1 => write!(f, "lemma1"),
            KernelIdentity::Lemma2(v) => write!(f, "lemma2:{v}"),
            KernelIdentity::Lemma3(v) => write!(f, "lemma3:{v}"),
            KernelIdentity::SumOrdinary(v) => write!(f, "sum-ordinary:{v}"),
            KernelIdentity::SumBinomial(v) => write!(f, "sum-binomial:{v}"),
        }
    }
}

impl FromStr for KernelIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || {
            let names: Vec<String> = KernelIdentity::all().iter().map(|k| k.to_string()).collect();
            Error::UnknownIdentity {
                id: s.to_string(),
                suggestion: crate::catalog::nearest(s, names.iter().map(String::as_str)),
            }
        };
        let (head, variant) = match s.split_once(':') {
            Some((h, v)) => {
                let n: u8 = v.parse().map_err(|_| unknown())?;
                (h, Some(Variant::from_number(n).ok_or_else(unknown)?))
            }
            None => (s, None),
        };
        match (head, variant) {
            ("theorem1", None) => Ok(KernelIdentity::Theorem1),
            ("corollary", None) => Ok(KernelIdentity::Corollary),
            ("lemma1", None) => Ok(KernelIdentity::Lemma1),
            ("lemma2", Some(v)) => Ok(KernelIdentity::Lemma2(v)),
            ("lemma3", Some(v)) => Ok(KernelIdentity::Lemma3(v)),
            ("sum-ordinary", Some(v)) => Ok(KernelIdentity::SumOrdinary(v)),
            ("sum-binomial", Some(v)) => Ok(KernelIdentity::SumBinomial(v)),
            _ => Err(unknown()),
        }
    }
}

/// Half-width of the cached term window needed for a grid: every index an
/// identity touches is a small polynomial in the grid values.
pub fn window_for(grid: &GridSpec) -> i64 {
    let mut reach = 1i64;
    let mut kmax = 1i64;
    for r in &grid.ranges {
        let m = r.lo.unsigned_abs().max(r.hi.unsigned_abs()).min(1 << 20) as i64;
        if r.var == "k" {
            kmax = kmax.max(m);
        } else {
            reach = reach.max(m);
        }
    }
    (4 * reach * (kmax + 2) + 8).min(4096)
}

/// Runs `identity` over every case of `grid`.
///
/// `g` and `h` are the two sequences (for the lemmas, `x = g` and `y = h`);
/// `rel` defaults to the recurrence of `g` with shifts `(1, 2)`.
pub fn sweep(
    identity: KernelIdentity,
    g: &Sequence,
    h: &Sequence,
    rel: Option<&ThreeTermRelation>,
    grid: &GridSpec,
) -> Result<VerificationReport> {
    grid.require(identity.vars())?;
    if let Some(extra) = grid.vars().find(|v| !identity.vars().contains(v)) {
        return Err(Error::Grid(format!("variable {extra:?} is not used by {identity}")));
    }
    if identity.uses_pair() && !identity.uses_relation() {
        same_recurrence(g, h)?;
    }
    let own;
    let rel = match rel {
        Some(r) => r,
        None => {
            own = ThreeTermRelation::of_recurrence(g);
            &own
        }
    };
    let w = window_for(grid);
    let gt = TermTable::new(g, -w, w)?;
    let ht = TermTable::new(h, -w, w)?;
    let mut report = VerificationReport::new(identity.to_string(), grid.to_string());
    for case in grid.cases()? {
        let case = case.restricted(identity.vars());
        let outcome = identity.evaluate(&gt, &ht, rel, &case)?;
        report.record(case, outcome);
    }
    Ok(report)
}
