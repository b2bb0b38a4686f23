//! Pass/fail records produced by the checks.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    /// What was checked, or the first counterexample on failure.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub title: String,
    pub items: Vec<CheckItem>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(title: &str) -> CheckReport {
        CheckReport { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }

    /// Records the outcome of checking `count` cases with an optional first failure.
    pub fn push_cases(&mut self, name: &str, count: usize, failure: Option<String>) {
        match failure {
            None => self.push(name, true, format!("{count} cases")),
            Some(w) => self.push(name, false, w),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: CheckReport) {
        let prefix = other.title.clone();
        for mut item in other.items {
            if !prefix.is_empty() {
                item.name = format!("{prefix}: {}", item.name);
            }
            self.items.push(item);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        for i in &self.items {
            writeln!(f, "  [{}] {}: {}", if i.passed { "pass" } else { "FAIL" }, i.name, i.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
