//! Structured pass/fail records.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    NotDecidedAtBound,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotDecidedAtBound => "not-decided-at-bound",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Status::Pass),
            "fail" => Some(Status::Fail),
            "not-decided-at-bound" => Some(Status::NotDecidedAtBound),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The offending input and the nonzero residue it produced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub input: String,
    pub residue: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub bound: Option<u32>,
    /// Number of cases examined.
    pub cases: usize,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Report {
    pub name: String,
    pub config: Vec<(String, String)>,
    pub entries: Vec<CheckEntry>,
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), ..Default::default() }
    }

    /// Sets a configuration value, replacing any earlier value for `key`.
    pub fn config(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.config.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.config.push((key.to_string(), value)),
        }
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    /// Appends another report's entries under `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            e.name = alloc::format!("{prefix}/{}", e.name);
            self.entries.push(e);
        }
    }

    pub fn status(&self) -> Status {
        self.entries.iter().map(|e| e.status).max().unwrap_or(Status::Pass)
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status != Status::Pass)
    }

    /// Records a boolean fact without a case loop.
    pub fn assert(&mut self, name: &str, ok: bool, bound: Option<u32>, why: impl FnOnce() -> Witness) {
        let mut c = Check::new(name, bound);
        if ok {
            c.ok();
        } else {
            c.fail_with(why());
        }
        self.push(c.finish());
    }

    pub fn note(&mut self, name: &str, note: impl Into<String>) {
        self.push(CheckEntry {
            name: name.into(),
            status: Status::Pass,
            bound: None,
            cases: 0,
            witness: None,
            note: Some(note.into()),
        });
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.name)?;
        if let Some(b) = self.bound {
            write!(f, " (bound {b})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, ": {} -> {}", w.input, w.residue)?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.status())?;
        for e in &self.entries {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

/// Accumulates cases of one named property, keeping the first witness.
#[derive(Debug)]
pub struct Check {
    entry: CheckEntry,
    failures: usize,
}

impl Check {
    pub fn new(name: impl Into<String>, bound: Option<u32>) -> Self {
        Check {
            entry: CheckEntry {
                name: name.into(),
                status: Status::Pass,
                bound,
                cases: 0,
                witness: None,
                note: None,
            },
            failures: 0,
        }
    }

    pub fn ok(&mut self) {
        self.entry.cases += 1;
    }

    pub fn fail(&mut self, input: impl Into<String>, residue: impl Into<String>) {
        self.fail_with(Witness { input: input.into(), residue: residue.into() });
    }

    pub fn fail_with(&mut self, w: Witness) {
        self.entry.cases += 1;
        self.failures += 1;
        self.entry.status = Status::Fail;
        if self.entry.witness.is_none() {
            self.entry.witness = Some(w);
        }
    }

    /// A case whose truth could not be settled within the bound.
    pub fn undecided(&mut self, input: impl Into<String>, residue: impl Into<String>) {
        self.entry.cases += 1;
        self.failures += 1;
        if self.entry.status == Status::Pass {
            self.entry.status = Status::NotDecidedAtBound;
        }
        if self.entry.witness.is_none() {
            self.entry.witness = Some(Witness { input: input.into(), residue: residue.into() });
        }
    }

    /// Runs one case: `residue` is `None` when the identity holds.
    pub fn case(&mut self, input: impl FnOnce() -> String, residue: Option<String>) {
        match residue {
            None => self.ok(),
            Some(r) => self.fail(input(), r),
        }
    }

    /// Like [`Check::case`], where an evaluation error also counts as a failure.
    pub fn case_result<E: fmt::Display>(
        &mut self,
        input: impl FnOnce() -> String,
        r: core::result::Result<Option<String>, E>,
    ) {
        match r {
            Ok(res) => self.case(input, res),
            Err(e) => self.fail(input(), e.to_string()),
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.entry.note = Some(n.into());
    }

    pub fn is_ok(&self) -> bool {
        self.entry.status == Status::Pass
    }

    pub fn finish(mut self) -> CheckEntry {
        if self.failures > 1 {
            let extra = alloc::format!("{} failing cases", self.failures);
            self.entry.note = Some(match self.entry.note.take() {
                Some(n) => alloc::format!("{n}; {extra}"),
                None => extra,
            });
        }
        self.entry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_status_wins() {
        let mut r = Report::new("r");
        let mut a = Check::new("a", Some(2));
        a.ok();
        r.push(a.finish());
        assert!(r.passed());
        let mut b = Check::new("b", Some(2));
        b.undecided("x", "y");
        r.push(b.finish());
        assert_eq!(r.status(), Status::NotDecidedAtBound);
        let mut c = Check::new("c", None);
        c.fail("in", "res");
        c.fail("in2", "res2");
        let e = c.finish();
        assert_eq!(e.witness.as_ref().unwrap().input, "in");
        r.push(e);
        assert_eq!(r.status(), Status::Fail);
    }
}
