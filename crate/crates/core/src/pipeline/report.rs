use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Stages in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StageId {
    N,
    Curve(u32),
    Q,
    Boundary,
    MPlus,
    M,
    Cycles,
    Donaldson,
    Conjecture,
}

impl StageId {
    pub const ALL: [StageId; 11] = [
        StageId::N,
        StageId::Curve(1),
        StageId::Curve(3),
        StageId::Curve(4),
        StageId::Q,
        StageId::Boundary,
        StageId::MPlus,
        StageId::M,
        StageId::Cycles,
        StageId::Donaldson,
        StageId::Conjecture,
    ];

    pub fn prerequisites(self) -> Vec<StageId> {
        use StageId::*;
        match self {
            N | Curve(_) => Vec::new(),
            Q => alloc::vec![N],
            Boundary => alloc::vec![N, Q, Curve(1)],
            MPlus => alloc::vec![Boundary],
            M => alloc::vec![MPlus, Curve(4)],
            Cycles => alloc::vec![M],
            Donaldson => alloc::vec![M],
            Conjecture => alloc::vec![Curve(3), M],
        }
    }

    /// Accepts `N`, `Q`, `boundary`, `Mplus`, `M`, `cycles`, `donaldson`,
    /// `conjecture` and `curveD` for a positive `D` (case-insensitive).
    pub fn parse(name: &str) -> Option<StageId> {
        let lower = name.to_ascii_lowercase();
        if let Some(d) = lower.strip_prefix("curve") {
            return d.parse().ok().filter(|&d| d >= 1).map(StageId::Curve);
        }
        Some(match lower.as_str() {
            "n" => StageId::N,
            "q" => StageId::Q,
            "boundary" => StageId::Boundary,
            "mplus" | "m+" => StageId::MPlus,
            "m" => StageId::M,
            "cycles" => StageId::Cycles,
            "donaldson" => StageId::Donaldson,
            "conjecture" => StageId::Conjecture,
            _ => return None,
        })
    }
}

impl fmt::Display for StageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageId::N => f.write_str("N"),
            StageId::Curve(d) => write!(f, "curve{d}"),
            StageId::Q => f.write_str("Q"),
            StageId::Boundary => f.write_str("boundary"),
            StageId::MPlus => f.write_str("Mplus"),
            StageId::M => f.write_str("M"),
            StageId::Cycles => f.write_str("cycles"),
            StageId::Donaldson => f.write_str("donaldson"),
            StageId::Conjecture => f.write_str("conjecture"),
        }
    }
}

/// One expected-versus-computed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub stage: StageId,
    pub checks: Vec<Check>,
    /// Informational lines that do not affect the verdict.
    pub notes: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl StageReport {
    pub fn new(stage: StageId) -> Self {
        StageReport { stage, checks: Vec::new(), notes: Vec::new(), elapsed_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&mut self, name: &str, expected: impl fmt::Display, computed: impl fmt::Display, pass: bool) -> bool {
        self.checks.push(Check { name: name.into(), expected: expected.to_string(), computed: computed.to_string(), pass });
        pass
    }

    /// Records `expected == computed`.
    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, name: &str, expected: &T, computed: &T) -> bool {
        self.check(name, expected, computed, expected == computed)
    }

    pub fn check_true(&mut self, name: &str, holds: bool) -> bool {
        self.check(name, true, holds, holds)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Comma-separated rendering of a vector of scalars.
pub(crate) fn join(v: &[crate::exactpoly::Scalar]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
}
