//! Structured verdicts for identity checks.

use std::fmt;

use serde::Serialize;

use crate::field::Scalar;

/// First failing basis tuple of an identity, with its residual coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Zero-based basis indices, in the order the identity quantifies them.
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub id: String,
    pub pass: bool,
    /// Number of basis tuples evaluated.
    pub tuples: usize,
    /// Number of tuples with a nonzero residual.
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityCheck {
    pub fn new(id: impl Into<String>) -> Self {
        IdentityCheck {
            id: id.into(),
            pass: true,
            tuples: 0,
            failures: 0,
            witness: None,
            note: None,
        }
    }

    /// Records one evaluated tuple. Tuples must be fed in lexicographic order so that the
    /// kept witness is the lexicographically first failure.
    pub fn record(&mut self, indices: &[usize], residual: Vec<Scalar>) {
        self.tuples += 1;
        if residual.iter().all(Scalar::is_zero) {
            return;
        }
        self.pass = false;
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(Witness {
                indices: indices.to_vec(),
                residual,
            });
        }
    }

    /// A check whose verdict comes from elsewhere (e.g. a boolean comparison).
    pub fn verdict(id: impl Into<String>, pass: bool, note: impl Into<String>) -> Self {
        let mut c = IdentityCheck::new(id);
        c.tuples = 1;
        c.pass = pass;
        c.failures = usize::from(!pass);
        c.note = Some(note.into());
        c
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            pass: true,
            checks: Vec::new(),
        }
    }

    pub fn from_checks(checks: Vec<IdentityCheck>) -> Self {
        let mut r = Report::new();
        for c in checks {
            r.push(c);
        }
        r
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    /// Prefixes every identity id, used when nesting sub-reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}{}", c.id);
        }
        self
    }

    pub fn check(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.pass { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {} ({} tuples",
                if c.pass { "ok" } else { "FAIL" },
                c.id,
                c.tuples
            )?;
            if c.failures > 0 {
                write!(f, ", {} failing", c.failures)?;
            }
            write!(f, ")")?;
            if let Some(n) = &c.note {
                write!(f, " {n}")?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                let res: Vec<String> = w.residual.iter().map(ToString::to_string).collect();
                writeln!(f, "      witness {:?} residual [{}]", w.indices, res.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn keeps_first_witness_only() {
        let q = FieldSpec::Rationals;
        let mut c = IdentityCheck::new("x");
        c.record(&[0, 0], vec![q.zero()]);
        c.record(&[0, 1], vec![q.one()]);
        c.record(&[1, 0], vec![q.from_i64(2)]);
        assert!(!c.pass);
        assert_eq!(c.failures, 2);
        assert_eq!(c.witness.as_ref().unwrap().indices, vec![0, 1]);
        let r = Report::from_checks(vec![c, IdentityCheck::new("y")]);
        assert!(!r.pass);
        assert!(r.to_json().contains("\"residual\": [\n"));
    }
}
