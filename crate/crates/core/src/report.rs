//! Pass/fail records produced by the verification routines.

use alloc::string::String;
use alloc::vec::Vec;

use crate::freealg::FreeElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub suite: String,
    pub cell: Vec<i64>,
    pub passed: bool,
    pub residual: Option<FreeElem>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub datum: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(datum: impl Into<String>) -> Self {
        Report { datum: datum.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, suite: &str, cell: Vec<i64>, passed: bool, residual: Option<FreeElem>) {
        self.entries.push(Entry { suite: suite.into(), cell, passed, residual, note: None });
    }

    pub fn push_note(&mut self, suite: &str, cell: Vec<i64>, passed: bool, note: impl Into<String>) {
        self.entries.push(Entry { suite: suite.into(), cell, passed, residual: None, note: Some(note.into()) });
    }

    /// Records a residual check: passes iff the residual is zero.
    pub fn push_residual(&mut self, suite: &str, cell: Vec<i64>, residual: FreeElem) {
        let ok = residual.is_zero();
        self.push(suite, cell, ok, Some(residual));
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
