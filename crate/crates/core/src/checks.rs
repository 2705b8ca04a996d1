use std::fmt;

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Check { name: name.into(), pass, details: details.into() }
    }

    /// Pass iff `got == want`, with both shown in the details.
    pub fn equal<T: PartialEq + fmt::Debug>(name: impl Into<String>, got: T, want: T) -> Self {
        let pass = got == want;
        Check::new(name, pass, format!("got {got:?}, expected {want:?}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.details)
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}
