use std::fmt;

use serde::Serialize;

/// One checked step of an argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok  " } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "[{mark}] {}", self.name)
        } else {
            write!(f, "[{mark}] {} ({})", self.name, self.detail)
        }
    }
}

/// Ordered list of checked facts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Ledger {
    facts: Vec<Fact>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) -> bool {
        self.facts.push(Fact {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
        holds
    }

    /// Records `lhs <= rhs`.
    pub fn le(&mut self, name: impl Into<String>, lhs: usize, rhs: usize) -> bool {
        self.check(name, lhs <= rhs, format!("{lhs} <= {rhs}"))
    }

    /// Records `lhs == rhs`.
    pub fn equal(&mut self, name: impl Into<String>, lhs: usize, rhs: usize) -> bool {
        self.check(name, lhs == rhs, format!("{lhs} = {rhs}"))
    }

    /// Records a chain `a_0 <= a_1 <= ...`.
    pub fn chain(&mut self, name: impl Into<String>, values: &[usize]) -> bool {
        let holds = values.windows(2).all(|w| w[0] <= w[1]);
        let detail = values.iter().map(usize::to_string).collect::<Vec<_>>().join(" <= ");
        self.check(name, holds, detail)
    }

    /// Appends `other`, prefixing each fact name with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Ledger) {
        for mut fact in other.facts {
            fact.name = format!("{prefix}{}", fact.name);
            self.facts.push(fact);
        }
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn all_hold(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(|f| !f.holds)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }
}
