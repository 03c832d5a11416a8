//! Witness-carrying check results.
//!
//! Verification failures always carry the two sides of a matrix identity
//! that does not hold, so every reported failure can be re-checked in
//! isolation from the run that produced it.

use alloc::string::String;
use alloc::vec::Vec;

use crate::exactlin::Mat;

/// A failed matrix identity: `lhs` should equal `rhs` but does not.
#[derive(Debug, Clone)]
pub struct Witness {
    pub label: String,
    pub lhs: Mat,
    pub rhs: Mat,
}

impl Witness {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compares two matrices, producing a witness on mismatch.
pub fn expect_eq(label: &str, lhs: &Mat, rhs: &Mat) -> Option<Witness> {
    if lhs == rhs {
        None
    } else {
        Some(Witness { label: String::from(label), lhs: lhs.clone(), rhs: rhs.clone() })
    }
}

/// Expects a zero matrix.
pub fn expect_zero(label: &str, m: &Mat) -> Option<Witness> {
    expect_eq(label, m, &Mat::zeros(m.p(), m.rows, m.cols))
}

/// Outcome of one named check, with the Ext bound used where relevant.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub bound: Option<usize>,
    pub details: String,
    pub witness: Option<Witness>,
}

impl CheckItem {
    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: true,
            bound: None,
            details: details.into(),
            witness: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        details: impl Into<String>,
        witness: Option<Witness>,
    ) -> CheckItem {
        CheckItem {
            name: name.into(),
            passed: false,
            bound: None,
            details: details.into(),
            witness,
        }
    }

    pub fn with_bound(mut self, bound: usize) -> CheckItem {
        self.bound = Some(bound);
        self
    }

    pub fn from_witness(
        name: impl Into<String>,
        details: impl Into<String>,
        witness: Option<Witness>,
    ) -> CheckItem {
        match witness {
            None => CheckItem::pass(name, details),
            Some(w) => CheckItem::fail(name, details, Some(w)),
        }
    }
}

/// Collects check items and tracks overall success.
#[derive(Debug, Default)]
pub struct CheckSet {
    pub items: Vec<CheckItem>,
}

impl CheckSet {
    pub fn new() -> CheckSet {
        CheckSet { items: Vec::new() }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}
