//! Verification reports and their JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::valuedomain::{Mode, Witness};

/// Status of the statement a case instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A theorem: a failure is a defect in this crate.
    Proved,
    /// An open conjecture: a failure is a falsification candidate.
    Conjectural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseVerdict {
    /// Proved equal (grid proof or exact coefficient comparison).
    Equal,
    ProbablyEqual,
    NotEqual,
    Skipped,
    /// The evaluation itself failed.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub check: String,
    pub word: String,
    pub dual: String,
    pub n: Option<u32>,
    pub kind: Kind,
    pub verdict: CaseVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

impl Case {
    pub fn new(check: &str, word: impl ToString, dual: impl ToString, n: Option<u32>, kind: Kind) -> Case {
        Case {
            check: check.to_string(),
            word: word.to_string(),
            dual: dual.to_string(),
            n,
            kind,
            verdict: CaseVerdict::Skipped,
            witness: None,
            note: None,
            ms: None,
        }
    }

    pub fn with(mut self, verdict: CaseVerdict, witness: Option<Witness>, note: Option<String>) -> Case {
        self.verdict = verdict;
        self.witness = witness;
        self.note = note;
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, CaseVerdict::Equal | CaseVerdict::ProbablyEqual | CaseVerdict::Skipped)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub mode: Mode,
    pub seed: u64,
    pub prime: u64,
    pub budgets: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub equal: usize,
    pub probable: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// How a report should end the process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    /// A conjectural case failed.
    Falsification,
    /// A proved case failed or errored.
    InternalFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: ReportConfig,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, config: ReportConfig, cases: Vec<Case>) -> Report {
        let mut s = Summary { total: cases.len(), ..Summary::default() };
        for c in &cases {
            match c.verdict {
                CaseVerdict::Equal => s.equal += 1,
                CaseVerdict::ProbablyEqual => s.probable += 1,
                CaseVerdict::Skipped => s.skipped += 1,
                CaseVerdict::NotEqual | CaseVerdict::Error => s.failed += 1,
            }
        }
        Report { suite: suite.to_string(), config, cases, summary: s }
    }

    /// Concatenates reports under a new suite name.
    pub fn merge(suite: &str, config: ReportConfig, parts: Vec<Report>) -> Report {
        Report::new(suite, config, parts.into_iter().flat_map(|r| r.cases).collect())
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn outcome(&self) -> Outcome {
        let failed = |k: Kind| self.cases.iter().any(|c| c.kind == k && !c.passed());
        if failed(Kind::Proved) {
            Outcome::InternalFailure
        } else if failed(Kind::Conjectural) {
            Outcome::Falsification
        } else {
            Outcome::Clean
        }
    }

    /// Cases whose `check` field equals `name`.
    pub fn cases_of<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Case> + 'a {
        self.cases.iter().filter(move |c| c.check == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }
}
