//! Structured verdicts shared by validation, model checks and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dbl::Sort;

/// A reference to a cell by sort and id. Reports never carry raw indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CellRef {
    pub sort: Sort,
    pub id: String,
}

impl CellRef {
    pub fn new(sort: Sort, id: impl Into<String>) -> Self {
        CellRef { sort, id: id.into() }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.sort, self.id)
    }
}

/// One failed law instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub cells: Vec<CellRef>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, cells: Vec<CellRef>) {
        self.violations.push(Violation { law: law.into(), cells });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {} at [", v.law)?;
            for (i, c) in v.cells.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Condition labels of the 2-categorical and double-categorical checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    B1,
    B2,
    B3,
    F1,
    F2,
    Db1,
    Db2,
    Db3,
    Db4,
    Df1,
    Df2,
    Df3,
    Dt1,
    Dt2,
    Dt3,
    Dt4,
    Hb3,
    Vb2,
    Vb3,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        use Condition::*;
        match self {
            B1 => "b1",
            B2 => "b2",
            B3 => "b3",
            F1 => "f1",
            F2 => "f2",
            Db1 => "db1",
            Db2 => "db2",
            Db3 => "db3",
            Db4 => "db4",
            Df1 => "df1",
            Df2 => "df2",
            Df3 => "df3",
            Dt1 => "dt1",
            Dt2 => "dt2",
            Dt3 => "dt3",
            Dt4 => "dt4",
            Hb3 => "hb3",
            Vb2 => "vb2",
            Vb3 => "vb3",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub cells: Vec<CellRef>,
    pub missing: String,
}

/// Per-condition verdicts. `verdicts` decide the overall result; `auxiliary`
/// carries informational conditions computed alongside.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdicts: BTreeMap<Condition, bool>,
    pub counterexamples: BTreeMap<Condition, Counterexample>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub auxiliary: BTreeMap<Condition, bool>,
}

impl CheckReport {
    pub fn passes(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn verdict(&self, c: Condition) -> Option<bool> {
        self.verdicts.get(&c).or_else(|| self.auxiliary.get(&c)).copied()
    }

    pub fn failed(&self) -> Vec<Condition> {
        self.verdicts.iter().filter(|(_, &v)| !v).map(|(&c, _)| c).collect()
    }

    /// Records a verdict; a failure carries its counterexample.
    pub fn record(&mut self, c: Condition, outcome: Option<Counterexample>) {
        self.verdicts.insert(c, outcome.is_none());
        if let Some(ce) = outcome {
            self.counterexamples.insert(c, ce);
        }
    }

    pub fn record_aux(&mut self, c: Condition, outcome: Option<Counterexample>) {
        self.auxiliary.insert(c, outcome.is_none());
        if let Some(ce) = outcome {
            self.counterexamples.insert(c, ce);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in self.verdicts.iter().chain(self.auxiliary.iter()) {
            write!(f, "{c}: {}", if *v { "pass" } else { "fail" })?;
            if let Some(ce) = self.counterexamples.get(c) {
                write!(f, " (")?;
                for (i, cell) in ce.cells.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{cell}")?;
                }
                write!(f, "; {})", ce.missing)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of a property scan over a structure (e.g. the invertibility scan).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub checked: usize,
    pub discrepancies: Vec<Violation>,
}

impl PropertyReport {
    pub fn passes(&self) -> bool {
        self.discrepancies.is_empty()
    }
}
