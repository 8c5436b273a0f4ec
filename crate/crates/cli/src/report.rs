use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub kind: String,
    pub subject: String,
    pub status: Status,
    /// Degree bound used by bounded computations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// Iteration bound reached by an inconclusive search.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub detail: String,
    /// Exact counterexample for a failure, or the certifying element for a pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Options {
    pub degree: u32,
    pub max_steps: u32,
    pub order: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub fixture: String,
    pub title: String,
    pub status: Status,
    pub options: Options,
    pub claims: Vec<ClaimReport>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Overall status: any failure fails, otherwise any inconclusive claim
/// leaves the whole report inconclusive.
pub fn overall(claims: &[ClaimReport]) -> Status {
    if claims.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if claims.iter().any(|c| c.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixture {}: {}", self.fixture, self.title)?;
        for c in &self.claims {
            write!(f, "  [{}] {} {}", c.status, c.kind, c.subject)?;
            if let Some(d) = c.degree {
                write!(f, " (d={d})")?;
            }
            writeln!(f, ": {}", c.detail)?;
            if let Some(w) = &c.witness {
                writeln!(f, "      witness: {w}")?;
            }
        }
        write!(
            f,
            "  => {} ({} pass, {} fail, {} inconclusive, {} ms)",
            self.status,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive),
            self.millis
        )
    }
}
