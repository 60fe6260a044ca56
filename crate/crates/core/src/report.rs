//! Verification cases, per-case outcomes and the aggregate report.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Integer bindings for one case, in grid order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VerificationCase {
    bindings: Vec<(String, i64)>,
}

impl VerificationCase {
    pub fn new(bindings: Vec<(String, i64)>) -> Self {
        VerificationCase { bindings }
    }

    pub fn from_pairs(pairs: &[(&str, i64)]) -> Self {
        VerificationCase::new(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    pub fn get(&self, var: &str) -> Option<i64> {
        self.bindings.iter().find(|(k, _)| k == var).map(|(_, v)| *v)
    }

    /// Like [`get`](Self::get) but a missing variable is a usage error.
    pub fn require(&self, var: &str) -> Result<i64> {
        self.get(var)
            .ok_or_else(|| Error::Usage(format!("case {self} has no binding for {var:?}")))
    }

    pub fn bindings(&self) -> &[(String, i64)] {
        &self.bindings
    }

    /// Keeps only the named variables, in the given order.
    pub fn restricted(&self, vars: &[&str]) -> VerificationCase {
        VerificationCase::new(
            vars.iter()
                .filter_map(|v| self.get(v).map(|x| (v.to_string(), x)))
                .collect(),
        )
    }
}

impl fmt::Display for VerificationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for VerificationCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.bindings.len()))?;
        for (k, v) in &self.bindings {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Result of evaluating one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Checked { lhs: Rational, rhs: Rational },
    Skipped(String),
}

impl Outcome {
    pub fn checked(lhs: Rational, rhs: Rational) -> Self {
        Outcome::Checked { lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        match self {
            Outcome::Checked { lhs, rhs } => lhs == rhs,
            Outcome::Skipped(_) => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub bindings: VerificationCase,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub grid: String,
    pub cases_total: usize,
    pub cases_checked: usize,
    pub cases_skipped_precondition: usize,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub skip_reasons: BTreeMap<String, usize>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, grid: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            grid: grid.into(),
            cases_total: 0,
            cases_checked: 0,
            cases_skipped_precondition: 0,
            counterexamples: Vec::new(),
            skip_reasons: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, case: VerificationCase, outcome: Outcome) {
        self.cases_total += 1;
        match outcome {
            Outcome::Checked { lhs, rhs } => {
                self.cases_checked += 1;
                if lhs != rhs {
                    self.counterexamples.push(Counterexample {
                        bindings: case,
                        lhs,
                        rhs,
                    });
                }
            }
            Outcome::Skipped(reason) => {
                self.cases_skipped_precondition += 1;
                *self.skip_reasons.entry(reason).or_default() += 1;
            }
        }
    }

    pub fn from_outcomes(
        identity: impl Into<String>,
        grid: impl Into<String>,
        outcomes: impl IntoIterator<Item = (VerificationCase, Outcome)>,
    ) -> Self {
        let mut report = VerificationReport::new(identity, grid);
        for (case, outcome) in outcomes {
            report.record(case, outcome);
        }
        report
    }

    /// True iff no checked case failed.
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn skipped_fraction(&self) -> f64 {
        if self.cases_total == 0 {
            0.0
        } else {
            self.cases_skipped_precondition as f64 / self.cases_total as f64
        }
    }

    /// Folds another report's counts into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases_total += other.cases_total;
        self.cases_checked += other.cases_checked;
        self.cases_skipped_precondition += other.cases_skipped_precondition;
        self.counterexamples.extend(other.counterexamples);
        for (k, v) in other.skip_reasons {
            *self.skip_reasons.entry(k).or_default() += v;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per counterexample: the case bindings, then lhs and rhs.
    pub fn to_csv(&self) -> String {
        let mut vars: Vec<&str> = Vec::new();
        for ce in &self.counterexamples {
            for (k, _) in ce.bindings.bindings() {
                if !vars.contains(&k.as_str()) {
                    vars.push(k);
                }
            }
        }
        let mut out = String::new();
        for v in &vars {
            out.push_str(v);
            out.push(',');
        }
        out.push_str("lhs,rhs\n");
        for ce in &self.counterexamples {
            for v in &vars {
                if let Some(x) = ce.bindings.get(v) {
                    out.push_str(&x.to_string());
                }
                out.push(',');
            }
            out.push_str(&format!("{},{}\n", ce.lhs, ce.rhs));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "identity: {}\ngrid: {}\ncases: {} total, {} checked, {} skipped\nresult: {}\n",
            self.identity,
            self.grid,
            self.cases_total,
            self.cases_checked,
            self.cases_skipped_precondition,
            if self.holds() { "holds" } else { "FAILS" }
        );
        for (reason, n) in &self.skip_reasons {
            out.push_str(&format!("skipped ({reason}): {n}\n"));
        }
        for ce in &self.counterexamples {
            out.push_str(&format!(
                "counterexample {}: lhs = {}, rhs = {}\n",
                ce.bindings, ce.lhs, ce.rhs
            ));
        }
        out
    }
}
