//! Per-function results and their order-independent aggregation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::checks::{Check, CheckKind, Outcome, REGISTRY_VERSION};
use super::population::Population;

/// How many failing or flagged members are kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
    Skipped { reason: String },
}

/// One check evaluated on one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub function: String,
    #[serde(flatten)]
    pub status: Status,
    pub observed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

impl CheckResult {
    pub fn from_outcome(check: &Check, function: String, outcome: Outcome) -> Self {
        let (status, observed, ratio) = match outcome {
            Outcome::Pass(v) => (Status::Pass, v, None),
            Outcome::Fail(v) => (Status::Fail, v, None),
            Outcome::Skip(reason) => (Status::Skipped { reason }, Value::Null, None),
            Outcome::Ratio(r, v) => (Status::Pass, v, Some(r)),
            Outcome::Flag(true, v) => (Status::Flagged, v, None),
            Outcome::Flag(false, v) => (Status::Pass, v, None),
        };
        Self {
            check: check.name.to_string(),
            function,
            status,
            observed,
            ratio,
        }
    }
}

/// A population member singled out by a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Position of the member in the population.
    pub index: u64,
    pub function: String,
    pub observed: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioWitness {
    pub value: f64,
    #[serde(flatten)]
    pub witness: Witness,
}

/// Counts and extremes of one check over a population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckAggregate {
    pub name: String,
    pub kind: CheckKind,
    pub statement: String,
    pub pass: u64,
    pub fail: u64,
    pub flagged: u64,
    pub skipped: u64,
    pub skip_reasons: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<RatioWitness>,
    /// Failing (or flagged) members with the smallest indices.
    pub counterexamples: Vec<Witness>,
}

impl CheckAggregate {
    pub fn empty(check: &Check) -> Self {
        Self {
            name: check.name.to_string(),
            kind: check.kind,
            statement: check.statement.to_string(),
            pass: 0,
            fail: 0,
            flagged: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
            max_ratio: None,
            counterexamples: Vec::new(),
        }
    }

    pub fn record(&mut self, index: u64, result: CheckResult) {
        let witness = |observed| Witness {
            index,
            function: result.function.clone(),
            observed,
        };
        match &result.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Flagged => self.flagged += 1,
            Status::Skipped { reason } => {
                self.skipped += 1;
                *self.skip_reasons.entry(reason.clone()).or_default() += 1;
            }
        }
        if matches!(result.status, Status::Fail | Status::Flagged) {
            self.add_counterexamples(vec![witness(result.observed.clone())]);
        }
        if let Some(value) = result.ratio {
            let candidate = RatioWitness {
                value,
                witness: witness(result.observed.clone()),
            };
            self.max_ratio = better_ratio(self.max_ratio.take(), Some(candidate));
        }
    }

    fn add_counterexamples(&mut self, more: Vec<Witness>) {
        self.counterexamples.extend(more);
        self.counterexamples.sort_by_key(|w| w.index);
        self.counterexamples.truncate(MAX_COUNTEREXAMPLES);
    }

    /// Combines two partial aggregates of the same check. The result does not
    /// depend on the order of merging.
    pub fn merge(mut self, other: Self) -> Self {
        debug_assert_eq!(self.name, other.name);
        self.pass += other.pass;
        self.fail += other.fail;
        self.flagged += other.flagged;
        self.skipped += other.skipped;
        for (reason, count) in other.skip_reasons {
            *self.skip_reasons.entry(reason).or_default() += count;
        }
        self.max_ratio = better_ratio(self.max_ratio.take(), other.max_ratio);
        self.add_counterexamples(other.counterexamples);
        self
    }
}

fn better_ratio(a: Option<RatioWitness>, b: Option<RatioWitness>) -> Option<RatioWitness> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let b_wins =
                b.value > a.value || (b.value == a.value && b.witness.index < a.witness.index);
            Some(if b_wins { b } else { a })
        }
    }
}

/// Summary of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub registry_version: String,
    pub population: Population,
    pub members: u64,
    pub checks: Vec<CheckAggregate>,
    /// Total failures over all assertion checks.
    pub assertion_failures: u64,
}

impl SweepReport {
    pub fn new(population: Population, members: u64, checks: Vec<CheckAggregate>) -> Self {
        let assertion_failures = checks
            .iter()
            .filter(|c| c.kind == CheckKind::Assert)
            .map(|c| c.fail)
            .sum();
        Self {
            registry_version: REGISTRY_VERSION.to_string(),
            population,
            members,
            checks,
            assertion_failures,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.assertion_failures == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckAggregate> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "registry {}; {} functions; {} assertion failures",
            self.registry_version, self.members, self.assertion_failures
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "{:<24} {:<6} pass {:>7} fail {:>5} flagged {:>5} skipped {:>7}",
                c.name,
                format!("{:?}", c.kind).to_lowercase(),
                c.pass,
                c.fail,
                c.flagged,
                c.skipped
            );
            if let Some(r) = &c.max_ratio {
                let _ = write!(out, " max {:.4} at {}", r.value, r.witness.function);
            }
            out.push('\n');
            for w in &c.counterexamples {
                let _ = writeln!(out, "    #{} {} {}", w.index, w.function, w.observed);
            }
        }
        out
    }
}
