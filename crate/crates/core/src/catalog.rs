//! Named specializations for the Fibonacci, Pell and Jacobsthal families.
//!
//! Each entry fixes the base sequence `G` of a family, picks which member
//! plays `H` (the base itself, its Lucas companion, or a generalized member
//! with caller-supplied initials) and evaluates one displayed form. The
//! weight `W` is the family's `q`, so the Jacobsthal forms carry `2^e`
//! factors where the other two carry none.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::kernel::{window_for, KernelIdentity, Variant};
use crate::report::{Outcome, VerificationCase, VerificationReport};
use crate::scalar::{binom_row, Rational};
use crate::sequence::{Named, Sequence, TermTable, Terms};

/// Closest candidate by edit distance, if reasonably close.
pub fn nearest<'a>(target: &str, candidates: impl Iterator<Item = &'a str>) -> Option<String> {
    candidates
        .map(|c| (strsim::levenshtein(target, c), c))
        .filter(|(d, c)| *d <= (c.len().max(target.len()) / 2).max(2))
        .min()
        .map(|(_, c)| c.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Fibonacci,
    Pell,
    Jacobsthal,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Fibonacci, Family::Pell, Family::Jacobsthal];

    pub fn prefix(self) -> &'static str {
        match self {
            Family::Fibonacci => "fib",
            Family::Pell => "pell",
            Family::Jacobsthal => "jac",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Fibonacci => "fibonacci",
            Family::Pell => "pell",
            Family::Jacobsthal => "jacobsthal",
        }
    }

    pub fn base(self) -> Named {
        match self {
            Family::Fibonacci => Named::Fibonacci,
            Family::Pell => Named::Pell,
            Family::Jacobsthal => Named::Jacobsthal,
        }
    }

    pub fn lucas(self) -> Named {
        match self {
            Family::Fibonacci => Named::Lucas,
            Family::Pell => Named::PellLucas,
            Family::Jacobsthal => Named::JacobsthalLucas,
        }
    }

    /// `q` of the family recurrence; it appears as `W^e` in the forms.
    pub fn weight(self) -> i64 {
        self.base().definition().1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which sequence plays `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Member {
    Base,
    Lucas,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Master,
    MasterDual,
    CatalanGeneral,
    Catalan,
    DoubleShift,
    Halton,
    Odd,
    Even,
    Vajda8,
    DoubleIndex,
    SumOrdinary(Variant),
    SumBinomial(Variant),
}

impl Form {
    pub fn free_vars(self) -> &'static [&'static str] {
        match self {
            Form::Master | Form::MasterDual => &["n", "m", "a", "b"],
            Form::CatalanGeneral | Form::Catalan | Form::Halton | Form::Vajda8 | Form::DoubleIndex => &["n", "m"],
            Form::DoubleShift => &["n", "m", "a"],
            Form::Odd | Form::Even => &["n", "m", "k"],
            Form::SumOrdinary(_) | Form::SumBinomial(_) => &["n", "m", "a", "b", "k"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub family: Family,
    pub member: Member,
    pub form: Form,
    pub anchor: String,
}

impl CatalogEntry {
    pub fn free_vars(&self) -> &'static [&'static str] {
        self.form.free_vars()
    }

    /// Whether the entry accepts generalized initials.
    pub fn has_slot(&self) -> bool {
        self.member == Member::General
    }

    /// The generic identity this entry specializes, with `(c, d) = (a, b)`
    /// for the sums.
    pub fn kernel(&self) -> Option<KernelIdentity> {
        match self.form {
            Form::Master => Some(KernelIdentity::Corollary),
            Form::SumOrdinary(v) => Some(KernelIdentity::SumOrdinary(v)),
            Form::SumBinomial(v) => Some(KernelIdentity::SumBinomial(v)),
            _ => None,
        }
    }

    /// Every free variable in `[-4, 4]`, except `k` in `[0, 6]`.
    pub fn default_grid(&self) -> GridSpec {
        let text: Vec<String> = self
            .free_vars()
            .iter()
            .map(|v| {
                if *v == "k" {
                    "k=0..6".to_string()
                } else {
                    format!("{v}=-4..4")
                }
            })
            .collect();
        GridSpec::parse(&text.join(",")).expect("default grid is well formed")
    }

    /// `(G, H)` for this entry; `initials` only for entries with a slot.
    pub fn sequences(&self, initials: Option<(Rational, Rational)>) -> Result<(Sequence, Sequence)> {
        let g = self.family.base().sequence();
        let h = match (self.member, initials) {
            (Member::General, Some((h0, h1))) => g.with_initials(h0, h1)?.with_name("H"),
            (Member::General, None) => g.clone().with_name("H"),
            (_, Some(_)) => {
                return Err(Error::Usage(format!(
                    "{} has no generalized sequence; initials are not accepted",
                    self.id
                )))
            }
            (Member::Base, None) => g.clone(),
            (Member::Lucas, None) => self.family.lucas().sequence(),
        };
        Ok((g, h))
    }

    pub fn evaluate<G, H>(&self, g: &G, h: &H, case: &VerificationCase) -> Result<Outcome>
    where
        G: Terms + ?Sized,
        H: Terms + ?Sized,
    {
        let mut vals = [0i64; 5];
        for (slot, var) in vals.iter_mut().zip(self.free_vars()) {
            *slot = case.require(var)?;
        }
        let ctx = Ctx {
            g,
            h,
            w: Rational::from(self.family.weight()),
        };
        ctx.eval(self.form, vals)
    }

    /// The entry as DSL text; a generalized member is declared as `H`.
    pub fn to_dsl(&self, h: &Sequence) -> String {
        let fam = self.family;
        let base = fam.base().symbol();
        let hs = match self.member {
            Member::Base => base,
            Member::Lucas => fam.lucas().symbol(),
            Member::General => "H",
        };
        let body = render(self.form, base, hs, fam.weight());
        if self.member == Member::General {
            let (p, q, _, _) = fam.base().definition();
            format!("let H = ({p}, {q}, {}, {})\n{body}", h.g0(), h.g1())
        } else {
            body
        }
    }
}

struct Ctx<'a, G: ?Sized, H: ?Sized> {
    g: &'a G,
    h: &'a H,
    w: Rational,
}

fn sign(e: i64) -> Rational {
    Rational::sign_power(e)
}

fn powers(x: &Rational, k: i64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = Rational::one();
    for _ in 0..=k {
        out.push(acc.clone());
        acc *= x;
    }
    out
}

impl<G: Terms + ?Sized, H: Terms + ?Sized> Ctx<'_, G, H> {
    fn g(&self, i: i64) -> Rational {
        self.g.at(i).into_owned()
    }

    fn h(&self, i: i64) -> Rational {
        self.h.at(i).into_owned()
    }

    fn wp(&self, e: i64) -> Result<Rational> {
        self.w.pow(e)
    }

    /// `Σ_{j=0..k} c_j·x^{k-j}·y^j·H_{idx(j)}` with `c_j = C(k,j)` or `1`.
    fn mixed_sum(
        &self,
        x: &Rational,
        y: &Rational,
        k: i64,
        binomial: bool,
        idx: impl Fn(i64) -> i64,
    ) -> Result<Rational> {
        let (xs, ys) = (powers(x, k), powers(y, k));
        let row = if binomial { Some(binom_row(k)?) } else { None };
        let mut acc = Rational::zero();
        for j in 0..=k {
            let mut t = &xs[(k - j) as usize] * &ys[j as usize];
            if t.is_zero() {
                continue;
            }
            if let Some(row) = &row {
                t *= &row[j as usize];
            }
            acc += &(t * &*self.h.at(idx(j)));
        }
        Ok(acc)
    }

    fn eval(&self, form: Form, v: [i64; 5]) -> Result<Outcome> {
        let (lhs, rhs) = match form {
            Form::Master => {
                let [n, m, a, b, _] = v;
                (
                    self.g(a - b) * self.h(n + m),
                    self.g(m - b) * self.h(n + a) - sign(a - b) * self.wp(a - b)? * self.g(m - a) * self.h(n + b),
                )
            }
            Form::MasterDual => {
                let [n, m, a, b, _] = v;
                (
                    self.g(a - b) * self.h(n + m),
                    self.h(m - b) * self.g(n + a) - sign(a - b) * self.wp(a - b)? * self.h(m - a) * self.g(n + b),
                )
            }
            Form::CatalanGeneral => {
                let [n, m, ..] = v;
                (
                    self.g(n - m) * self.h(n + m),
                    self.g(n) * self.h(n) - sign(n - m) * self.wp(n - m)? * self.g(m) * self.h(m),
                )
            }
            Form::Catalan => {
                let [n, m, ..] = v;
                let (gn, gm) = (self.g(n), self.g(m));
                (
                    self.g(n - m) * self.g(n + m),
                    &gn * &gn + sign(n + m + 1) * self.wp(n - m)? * &gm * &gm,
                )
            }
            Form::DoubleShift => {
                let [n, m, a, ..] = v;
                (
                    self.g(2 * a) * self.h(n + m),
                    self.g(m + a) * self.h(n + a) - self.wp(2 * a)? * self.g(m - a) * self.h(n - a),
                )
            }
            Form::Halton => {
                let [n, m, ..] = v;
                (
                    self.g(2) * self.h(n + m),
                    self.g(m + 1) * self.h(n + 1) - self.wp(2)? * self.g(m - 1) * self.h(n - 1),
                )
            }
            Form::Odd => {
                let [n, m, k, ..] = v;
                (
                    self.g(2 * k - 1) * self.h(n + m),
                    self.wp(2 * k - 1)? * self.g(m - 2 * k) * self.h(n + 1) + self.g(m - 1) * self.h(n + 2 * k),
                )
            }
            Form::Even => {
                let [n, m, k, ..] = v;
                (
                    self.g(2 * k) * self.h(n + m),
                    self.g(m) * self.h(n + 2 * k) - self.wp(2 * k)? * self.g(m - 2 * k) * self.h(n),
                )
            }
            Form::Vajda8 => {
                let [n, m, ..] = v;
                (self.h(n + m), self.g(m - 1) * self.h(n) + self.g(m) * self.h(n + 1))
            }
            Form::DoubleIndex => {
                let [n, m, ..] = v;
                (
                    self.g(2 * m) * self.h(2 * n),
                    self.g(n + m) * self.h(n + m) - self.wp(2 * m)? * self.g(n - m) * self.h(n - m),
                )
            }
            Form::SumOrdinary(var) => self.sum_ordinary(var, v)?,
            Form::SumBinomial(var) => self.sum_binomial(var, v)?,
        };
        Ok(Outcome::checked(lhs, rhs))
    }

    fn sum_ordinary(&self, var: Variant, v: [i64; 5]) -> Result<(Rational, Rational)> {
        let [n, m, a, b, k] = v;
        let k = sum_k(k)?;
        let (gab, gma, gmb) = (self.g(a - b), self.g(m - a), self.g(m - b));
        let wab = self.wp(a - b)?;
        Ok(match var {
            Variant::One => {
                let s = self.mixed_sum(&gmb, &gab, k, false, |j| n - (m - a) * k - (m - b) + (m - a) * j)?;
                (
                    sign(a + b + 1) * &wab * &gma * s,
                    gab.pow(k + 1)? * self.h(n) - gmb.pow(k + 1)? * self.h(n - (m - a) * (k + 1)),
                )
            }
            Variant::Two => {
                let u = sign(a + b + 1) * &wab * &gma;
                let s = self.mixed_sum(&u, &gab, k, false, |j| n - (m - b) * k - (m - a) + (m - b) * j)?;
                (
                    &gmb * s,
                    gab.pow(k + 1)? * self.h(n) - u.pow(k + 1)? * self.h(n - (m - b) * (k + 1)),
                )
            }
            Variant::Three => {
                let x = &wab * &gma;
                let y = sign(a + b) * &gmb;
                let s = self.mixed_sum(&x, &y, k, false, |j| n - (a - b) * k + (m - a) + (a - b) * j)?;
                (
                    &gab * s,
                    sign((a + b) * k) * gmb.pow(k + 1)? * self.h(n)
                        + sign(a + b + 1) * x.pow(k + 1)? * self.h(n - (a - b) * (k + 1)),
                )
            }
        })
    }

    fn sum_binomial(&self, var: Variant, v: [i64; 5]) -> Result<(Rational, Rational)> {
        let [n, m, a, b, k] = v;
        let k = sum_k(k)?;
        let (gab, gma, gmb) = (self.g(a - b), self.g(m - a), self.g(m - b));
        let wab = self.wp(a - b)?;
        Ok(match var {
            Variant::One => {
                let u = sign(a + b + 1) * &wab * &gma;
                let s = self.mixed_sum(&u, &gmb, k, true, |j| n - (m - b) * k + (a - b) * j)?;
                (s, gab.pow(k)? * self.h(n))
            }
            Variant::Two => {
                let x = &wab * &gma;
                let y = sign(a + b) * &gab;
                let s = self.mixed_sum(&x, &y, k, true, |j| n - (a - b) * k + (m - b) * j)?;
                (s, sign((a + b) * k) * gmb.pow(k)? * self.h(n))
            }
            Variant::Three => {
                let y = -&gab;
                let s = self.mixed_sum(&gmb, &y, k, true, |j| n + (a - b) * k + (m - a) * j)?;
                (s, sign((a + b) * k) * (&wab * &gma).pow(k)? * self.h(n))
            }
        })
    }
}

fn sum_k(k: i64) -> Result<i64> {
    if k < 0 {
        Err(Error::Usage(format!("k must be non-negative, got {k}")))
    } else {
        Ok(k)
    }
}

/// DSL text of a form: `g` is the base symbol, `h` the member symbol.
fn render(form: Form, g: &str, h: &str, w: i64) -> String {
    // `W^(e)*` prefix, or nothing when the weight is 1.
    let wp = |e: &str| if w == 1 { String::new() } else { format!("{w}^({e})*") };
    match form {
        Form::Master => format!(
            "{g}[a-b]*{h}[n+m] = {g}[m-b]*{h}[n+a] - (-1)^(a-b)*{}{g}[m-a]*{h}[n+b]",
            wp("a-b")
        ),
        Form::MasterDual => format!(
            "{g}[a-b]*{h}[n+m] = {h}[m-b]*{g}[n+a] - (-1)^(a-b)*{}{h}[m-a]*{g}[n+b]",
            wp("a-b")
        ),
        Form::CatalanGeneral => format!(
            "{g}[n-m]*{h}[n+m] = {g}[n]*{h}[n] - (-1)^(n-m)*{}{g}[m]*{h}[m]",
            wp("n-m")
        ),
        Form::Catalan => format!("{g}[n-m]*{g}[n+m] = {g}[n]^(2) + (-1)^(n+m+1)*{}{g}[m]^(2)", wp("n-m")),
        Form::DoubleShift => format!("{g}[2*a]*{h}[n+m] = {g}[m+a]*{h}[n+a] - {}{g}[m-a]*{h}[n-a]", wp("2*a")),
        Form::Halton => {
            // G_2 is 1 for Fibonacci and 2 for Pell
            let lhs = if g == "F" {
                format!("{h}[n+m]")
            } else {
                format!("2*{h}[n+m]")
            };
            format!("{lhs} = {g}[m+1]*{h}[n+1] - {}{g}[m-1]*{h}[n-1]", wp("2"))
        }
        Form::Odd => format!(
            "{g}[2*k-1]*{h}[n+m] = {}{g}[m-2*k]*{h}[n+1] + {g}[m-1]*{h}[n+2*k]",
            wp("2*k-1")
        ),
        Form::Even => format!("{g}[2*k]*{h}[n+m] = {g}[m]*{h}[n+2*k] - {}{g}[m-2*k]*{h}[n]", wp("2*k")),
        Form::Vajda8 => format!("{h}[n+m] = {g}[m-1]*{h}[n] + {g}[m]*{h}[n+1]"),
        Form::DoubleIndex => format!("{g}[2*m]*{h}[2*n] = {g}[n+m]*{h}[n+m] - {}{g}[n-m]*{h}[n-m]", wp("2*m")),
        Form::SumOrdinary(Variant::One) => format!(
            "(-1)^(a+b+1)*{}{g}[m-a]*sum(j, 0, k, {g}[m-b]^(k-j)*{g}[a-b]^(j)*{h}[n-(m-a)*k-(m-b)+(m-a)*j]) \
             = {g}[a-b]^(k+1)*{h}[n] - {g}[m-b]^(k+1)*{h}[n-(m-a)*(k+1)]",
            wp("a-b")
        ),
        Form::SumOrdinary(Variant::Two) => format!(
            "{g}[m-b]*sum(j, 0, k, (-1)^((a+b+1)*(k-j))*{}{g}[m-a]^(k-j)*{g}[a-b]^(j)*{h}[n-(m-b)*k-(m-a)+(m-b)*j]) \
             = {g}[a-b]^(k+1)*{h}[n] - (-1)^((a+b+1)*(k+1))*{}{g}[m-a]^(k+1)*{h}[n-(m-b)*(k+1)]",
            wp("(a-b)*(k-j)"),
            wp("(a-b)*(k+1)")
        ),
        Form::SumOrdinary(Variant::Three) => format!(
            "{g}[a-b]*sum(j, 0, k, (-1)^((a+b)*j)*{}{g}[m-a]^(k-j)*{g}[m-b]^(j)*{h}[n-(a-b)*k+(m-a)+(a-b)*j]) \
             = (-1)^((a+b)*k)*{g}[m-b]^(k+1)*{h}[n] + (-1)^(a+b+1)*{}{g}[m-a]^(k+1)*{h}[n-(a-b)*(k+1)]",
            wp("(a-b)*(k-j)"),
            wp("(a-b)*(k+1)")
        ),
        Form::SumBinomial(Variant::One) => format!(
            "sum(j, 0, k, (-1)^((a+b+1)*(k-j))*binom(k, j)*{g}[m-b]^(j)*{}{g}[m-a]^(k-j)*{h}[n-(m-b)*k+(a-b)*j]) \
             = {g}[a-b]^(k)*{h}[n]",
            wp("(a-b)*(k-j)")
        ),
        Form::SumBinomial(Variant::Two) => format!(
            "sum(j, 0, k, (-1)^((a+b)*j)*binom(k, j)*{g}[a-b]^(j)*{}{g}[m-a]^(k-j)*{h}[n-(a-b)*k+(m-b)*j]) \
             = (-1)^((a+b)*k)*{g}[m-b]^(k)*{h}[n]",
            wp("(a-b)*(k-j)")
        ),
        Form::SumBinomial(Variant::Three) => format!(
            "sum(j, 0, k, (-1)^(j)*binom(k, j)*{g}[a-b]^(j)*{g}[m-b]^(k-j)*{h}[n+(a-b)*k+(m-a)*j]) \
             = (-1)^((a+b)*k)*{}{g}[m-a]^(k)*{h}[n]",
            wp("(a-b)*k")
        ),
    }
}

fn describe(form: Form) -> (&'static str, &'static str) {
    match form {
        Form::Master => (
            "three-term relation G_(a-b)H_(n+m) = G_(m-b)H_(n+a) - (-1)^(a-b)W^(a-b)G_(m-a)H_(n+b)",
            "master three-term recurrence relation",
        ),
        Form::MasterDual => (
            "master relation with the roles of G and H exchanged on the right",
            "master relation, dual form",
        ),
        Form::CatalanGeneral => (
            "generalized Catalan identity (a = 0, b = m - n)",
            "generalization of Catalan's identity",
        ),
        Form::Catalan => ("Catalan's identity", "Catalan's identity"),
        Form::DoubleShift => (
            "b = -a: G_(2a)H_(n+m) in terms of H_(n+a), H_(n-a)",
            "master relation at b = -a",
        ),
        Form::Halton => ("a = 1 evaluation of the b = -a relation", "Halton, Identity (63)"),
        Form::Odd => (
            "G_(2k-1)H_(n+m) split (a = 1, b = 2k)",
            "master relation at a = 1, b = 2k",
        ),
        Form::Even => (
            "G_(2k)H_(n+m) split (a = 0, b = 2k)",
            "master relation at a = 0, b = 2k",
        ),
        Form::Vajda8 => ("H_(n+m) = G_(m-1)H_n + G_mH_(n+1)", "Vajda, Formula (8)"),
        Form::DoubleIndex => ("G_(2m)H_(2n) (a = n, b = -m)", "master relation at a = n, b = -m"),
        Form::SumOrdinary(_) => ("ordinary summation identity", "ordinary summation theorem"),
        Form::SumBinomial(_) => ("binomial summation identity", "binomial summation theorem"),
    }
}

fn build() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let p = fam.prefix();
        let mut push = |suffix: String, member: Member, form: Form| {
            let (desc, anchor) = describe(form);
            let who = match member {
                Member::Base => fam.base().id().to_string(),
                Member::Lucas => fam.lucas().id().to_string(),
                Member::General => format!("generalized {}", fam.name()),
            };
            let variant = match form {
                Form::SumOrdinary(v) | Form::SumBinomial(v) => format!(" {v}"),
                _ => String::new(),
            };
            out.push(CatalogEntry {
                id: format!("{p}.{suffix}"),
                description: format!("{desc}{variant}; G = {}, H = {who}", fam.base().id()),
                family: fam,
                member,
                form,
                anchor: format!("{} {anchor}{variant}", fam.name()),
            });
        };
        push("master".into(), Member::General, Form::Master);
        push("catalan-general".into(), Member::General, Form::CatalanGeneral);
        push("catalan".into(), Member::Base, Form::Catalan);
        push("double-shift".into(), Member::General, Form::DoubleShift);
        push("odd-even-split.odd".into(), Member::General, Form::Odd);
        push("odd-even-split.even".into(), Member::General, Form::Even);
        push("double-index".into(), Member::General, Form::DoubleIndex);
        match fam {
            Family::Fibonacci => {
                push("master-dual".into(), Member::General, Form::MasterDual);
                push("halton-general".into(), Member::General, Form::Halton);
                push("halton".into(), Member::Base, Form::Halton);
                push("vajda8".into(), Member::General, Form::Vajda8);
            }
            Family::Pell => {
                push("double-shift.pell".into(), Member::Base, Form::DoubleShift);
                push("double-shift.pell-lucas".into(), Member::Lucas, Form::DoubleShift);
                push("halton.pell".into(), Member::Base, Form::Halton);
                push("halton.pell-lucas".into(), Member::Lucas, Form::Halton);
            }
            Family::Jacobsthal => {}
        }
        for v in Variant::ALL {
            for (kind, form) in [("ordinary", Form::SumOrdinary(v)), ("binomial", Form::SumBinomial(v))] {
                push(format!("sum.{kind}.{v}"), Member::General, form);
                push(format!("sum.{kind}.{v}.{}", fam.base().id()), Member::Base, form);
                push(format!("sum.{kind}.{v}.{}", fam.lucas().id()), Member::Lucas, form);
            }
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// All entries, sorted by id.
pub fn catalog_list() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static CatalogEntry> {
    let entries = catalog_list();
    entries
        .binary_search_by(|e| e.id.as_str().cmp(id))
        .map(|i| &entries[i])
        .map_err(|_| Error::UnknownIdentity {
            id: id.to_string(),
            suggestion: nearest(id, entries.iter().map(|e| e.id.as_str())),
        })
}

/// Resolves the grid for an entry: missing variables come from the default
/// grid and variables the entry does not use are rejected.
pub fn entry_grid(entry: &CatalogEntry, grid: Option<&GridSpec>) -> Result<GridSpec> {
    let default = entry.default_grid();
    let Some(grid) = grid else {
        return Ok(default);
    };
    if let Some(extra) = grid.vars().find(|v| !entry.free_vars().contains(v)) {
        return Err(Error::Grid(format!(
            "variable {extra:?} is not used by {} (free variables: {})",
            entry.id,
            entry.free_vars().join(", ")
        )));
    }
    Ok(grid.filled_from(&default))
}

pub fn run_entry(
    entry: &CatalogEntry,
    grid: Option<&GridSpec>,
    initials: Option<(Rational, Rational)>,
) -> Result<VerificationReport> {
    let grid = entry_grid(entry, grid)?;
    let (g, h) = entry.sequences(initials)?;
    let w = window_for(&grid);
    let (gt, ht) = (TermTable::new(&g, -w, w)?, TermTable::new(&h, -w, w)?);
    let mut report = VerificationReport::new(entry.id.clone(), grid.to_string());
    for case in grid.cases()? {
        let case = case.restricted(entry.free_vars());
        let outcome = entry.evaluate(&gt, &ht, &case)?;
        report.record(case, outcome);
    }
    Ok(report)
}

pub fn catalog_run(
    id: &str,
    grid: Option<&GridSpec>,
    initials: Option<(Rational, Rational)>,
) -> Result<VerificationReport> {
    run_entry(find(id)?, grid, initials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn grid(s: &str) -> GridSpec {
        GridSpec::parse(s).unwrap()
    }

    #[test]
    fn listing() {
        let ids: Vec<&str> = catalog_list().iter().map(|e| e.id.as_str()).collect();
        assert!(ids.contains(&"fib.catalan"));
        assert!(ids.contains(&"jac.sum.binomial.3"));
        assert!(ids.len() >= 40);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, ids);
    }

    #[test]
    fn fib_catalan_grid() {
        let rep = catalog_run("fib.catalan", Some(&grid("n=0..8,m=0..8")), None).unwrap();
        assert_eq!(rep.cases_total, 81);
        assert!(rep.holds());
        let e = find("fib.catalan").unwrap();
        let f = Named::Fibonacci.sequence();
        let out = e
            .evaluate(&f, &f, &VerificationCase::from_pairs(&[("n", 5), ("m", 3)]))
            .unwrap();
        assert_eq!(out, Outcome::checked(21.into(), 21.into()));
        assert_eq!(f.term(5) * f.term(5) - f.term(3) * f.term(3), Rational::from(21));
    }

    #[test]
    fn vajda_at_m_one() {
        let rep = catalog_run(
            "fib.vajda8",
            Some(&grid("m=1,n=-6..6")),
            Some((rat(3, 1).unwrap(), rat(-5, 1).unwrap())),
        )
        .unwrap();
        assert_eq!(rep.cases_total, 13);
        assert!(rep.holds());
    }

    #[test]
    fn jac_master() {
        let rep = catalog_run(
            "jac.master",
            Some(&grid("n=-3..3,m=-3..3,a=-2..2,b=-2..2")),
            Some((3.into(), 5.into())),
        )
        .unwrap();
        assert_eq!(rep.cases_total, 7 * 7 * 5 * 5);
        assert!(rep.holds());
    }

    #[test]
    fn pell_double_shift_spot() {
        let e = find("pell.double-shift").unwrap();
        let (g, h) = e.sequences(None).unwrap();
        let case = VerificationCase::from_pairs(&[("n", 2), ("m", 4), ("a", 1)]);
        assert_eq!(
            e.evaluate(&g, &h, &case).unwrap(),
            Outcome::checked(140.into(), 140.into())
        );
        assert_eq!(g.term(5) * g.term(3) - g.term(3) * g.term(1), Rational::from(140));
    }

    #[test]
    fn errors() {
        match catalog_run("fib.catalna", None, None) {
            Err(Error::UnknownIdentity { suggestion, .. }) => {
                assert_eq!(suggestion.as_deref(), Some("fib.catalan"))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            catalog_run("fib.catalan", None, Some((0.into(), 1.into()))),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            catalog_run("fib.catalan", Some(&grid("a=0..1")), None),
            Err(Error::Grid(_))
        ));
        let rep = catalog_run("fib.catalan", Some(&grid("n=1..0")), None).unwrap();
        assert_eq!(rep.cases_total, 0);
    }

    #[test]
    fn weights() {
        assert_eq!(Family::Fibonacci.weight(), 1);
        assert_eq!(Family::Pell.weight(), 1);
        assert_eq!(Family::Jacobsthal.weight(), 2);
    }

    #[test]
    fn every_entry_on_a_small_grid() {
        for e in catalog_list() {
            let g = e.default_grid();
            let small: Vec<String> = g
                .ranges
                .iter()
                .map(|r| {
                    if r.var == "k" {
                        "k=0..3".into()
                    } else {
                        format!("{}=-2..2", r.var)
                    }
                })
                .collect();
            let inits = if e.has_slot() { Some((2.into(), 1.into())) } else { None };
            let rep = run_entry(e, Some(&grid(&small.join(","))), inits).unwrap();
            assert!(rep.holds(), "{}: {}", e.id, rep.to_text());
            assert_eq!(rep.cases_skipped_precondition, 0);
        }
    }
}
