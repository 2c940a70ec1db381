//! Validation reports: pass/fail verdicts with named witnesses, rendered as
//! text or as a structured document.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::NotApplicable => write!(f, "not-applicable"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    /// Names of the offending morphisms/objects.
    pub items: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub property: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Informational entries (e.g. skipped unsigned factorizations); never failures.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(property: &str) -> ValidationReport {
        ValidationReport {
            property: property.to_string(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn fail(&mut self, items: Vec<String>, detail: impl Into<String>) {
        self.verdict = Verdict::Fail;
        self.witnesses.push(Witness {
            items,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Merge itemized sub-reports into a conjunction.
    pub fn conjunction(property: &str, parts: Vec<ValidationReport>) -> ValidationReport {
        let mut report = ValidationReport::new(property);
        for part in parts {
            if part.verdict == Verdict::Fail {
                report.verdict = Verdict::Fail;
            }
            for w in &part.witnesses {
                report.witnesses.push(Witness {
                    items: w.items.clone(),
                    detail: format!("{}: {}", part.property, w.detail),
                });
            }
            for n in &part.notes {
                report.notes.push(format!("{}: {}", part.property, n));
            }
        }
        report
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.property, self.verdict)?;
        for w in &self.witnesses {
            writeln!(f, "  witness [{}]: {}", w.items.join(", "), w.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
