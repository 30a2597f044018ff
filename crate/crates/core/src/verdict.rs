use std::fmt;

/// Outcome of a single certification: either exact success or a rendered
/// witness describing the first discrepancy found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict::Fail(witness.into())
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Keeps the first failure.
    pub fn and(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Pass => next(),
            fail => fail,
        }
    }

    pub fn check(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(iter: I) -> Verdict {
        for v in iter {
            if !v.is_pass() {
                return v;
            }
        }
        Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(w) => write!(f, "fail: {w}"),
        }
    }
}
