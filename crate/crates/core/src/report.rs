use std::fmt;

use serde::Serialize;

/// Outcome of one checked claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Violated,
    Degenerate,
}

impl Verdict {
    pub fn is_violation(self) -> bool {
        self == Verdict::Violated
    }

    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsWithEquality)
    }

    /// Severity order used when folding many verdicts into one.
    fn rank(self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::HoldsWithEquality => 0,
            Verdict::Degenerate => 1,
            Verdict::Violated => 2,
        }
    }

    /// The worse of two verdicts; equal ranks keep `self`.
    pub fn worst(self, other: Verdict) -> Verdict {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithEquality => "holds-with-equality",
            Verdict::Violated => "violated",
            Verdict::Degenerate => "degenerate",
        })
    }
}
