//! Verdict and diagnostics types shared by all checking engines.

use crate::statespace::{ReachVerdict, Reason};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Outcome of a check. `Holds`/`Fails` are claims about the exact
/// semantics; any truncation forces `Inconclusive`, and `truncated` records
/// whether a capped sub-search was hit along the way (audited by tests:
/// definitive verdicts must never rest on one).
#[derive(Clone, Debug)]
pub struct CheckVerdict {
    pub verdict: Verdict,
    pub engine: &'static str,
    /// Why the verdict is inconclusive, when it is.
    pub reason: Option<String>,
    /// Witness valuation or counterexample node, when applicable.
    pub witness: Option<String>,
    /// True iff some internal exploration hit its cap.
    pub truncated: bool,
}

impl CheckVerdict {
    pub fn holds(engine: &'static str) -> Self {
        CheckVerdict { verdict: Verdict::Holds, engine, reason: None, witness: None, truncated: false }
    }

    pub fn fails(engine: &'static str) -> Self {
        CheckVerdict { verdict: Verdict::Fails, engine, reason: None, witness: None, truncated: false }
    }

    pub fn from_bool(engine: &'static str, b: bool) -> Self {
        if b {
            Self::holds(engine)
        } else {
            Self::fails(engine)
        }
    }

    pub fn inconclusive(engine: &'static str, reason: impl Into<String>) -> Self {
        CheckVerdict {
            verdict: Verdict::Inconclusive,
            engine,
            reason: Some(reason.into()),
            witness: None,
            truncated: true,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn is_definitive(&self) -> bool {
        !matches!(self.verdict, Verdict::Inconclusive)
    }

    /// Stable line format: `HOLDS|FAILS|INCONCLUSIVE <engine> <reason?> <witness?>`.
    pub fn line(&self) -> String {
        let mut s = match self.verdict {
            Verdict::Holds => format!("HOLDS {}", self.engine),
            Verdict::Fails => format!("FAILS {}", self.engine),
            Verdict::Inconclusive => format!("INCONCLUSIVE {}", self.engine),
        };
        if let Some(r) = &self.reason {
            s.push_str(&format!(" reason={r}"));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness={w}"));
        }
        s
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.line())
    }
}

/// Three-valued truth used internally while caps may interfere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Three {
    True,
    False,
    Unknown,
}

impl Three {
    pub fn from_bool(b: bool) -> Three {
        if b {
            Three::True
        } else {
            Three::False
        }
    }

    pub fn not(self) -> Three {
        match self {
            Three::True => Three::False,
            Three::False => Three::True,
            Three::Unknown => Three::Unknown,
        }
    }

    pub fn and(self, other: Three) -> Three {
        match (self, other) {
            (Three::False, _) | (_, Three::False) => Three::False,
            (Three::True, Three::True) => Three::True,
            _ => Three::Unknown,
        }
    }

    pub fn or(self, other: Three) -> Three {
        match (self, other) {
            (Three::True, _) | (_, Three::True) => Three::True,
            (Three::False, Three::False) => Three::False,
            _ => Three::Unknown,
        }
    }

    pub fn from_reach(v: ReachVerdict) -> Three {
        match v {
            ReachVerdict::Yes => Three::True,
            ReachVerdict::No => Three::False,
            ReachVerdict::Inconclusive(_) => Three::Unknown,
        }
    }
}

/// Converts a reachability verdict about a "bad set" into a validity-style
/// verdict: reachable bad marking = Fails.
pub fn verdict_from_bad_reach(engine: &'static str, v: ReachVerdict) -> CheckVerdict {
    match v {
        ReachVerdict::Yes => CheckVerdict::fails(engine),
        ReachVerdict::No => CheckVerdict::holds(engine),
        ReachVerdict::Inconclusive(Reason::CapExceeded) => {
            CheckVerdict::inconclusive(engine, "cap-exceeded")
        }
        ReachVerdict::Inconclusive(Reason::Unsupported) => {
            CheckVerdict::inconclusive(engine, "unsupported")
        }
    }
}
