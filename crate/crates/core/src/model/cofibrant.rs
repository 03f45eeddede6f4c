use std::collections::BTreeSet;

use serde::Serialize;

use crate::construct::{underlying_horizontal_category, underlying_vertical_category};
use crate::dbl::{DoubleCategory, DoubleFunctor, Sort};
use crate::fincat::{is_disjoint_union_1_2, is_free_category, FreenessReport};
use crate::report::CellRef;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofibrancyReport {
    pub horizontal: FreenessReport,
    /// U𝐕A is a disjoint union of copies of 𝟙 and 𝟚.
    pub vertical_1_2: bool,
    pub cofibrant: bool,
}

pub fn is_cofibrant(a: &DoubleCategory) -> CofibrancyReport {
    let horizontal = is_free_category(&underlying_horizontal_category(a));
    let vertical_1_2 = is_disjoint_union_1_2(&underlying_vertical_category(a));
    let cofibrant = horizontal.free && vertical_1_2;
    CofibrancyReport { horizontal, vertical_1_2, cofibrant }
}

/// Necessary conditions for a cofibration: injective on objects and
/// faithful on horizontal and vertical morphisms. Passing them does not
/// make `f` a cofibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub injective_on_objects: bool,
    pub faithful_horizontal: bool,
    pub faithful_vertical: bool,
    /// First pair of cells witnessing a failure.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<CellRef>,
}

impl NecessaryConditions {
    pub fn passes(&self) -> bool {
        self.injective_on_objects && self.faithful_horizontal && self.faithful_vertical
    }
}

/// Two distinct cells of `sort` with the same image (and, for morphisms,
/// the same endpoints).
fn collision(f: &DoubleFunctor, sort: Sort) -> Option<(usize, usize)> {
    let a = f.source();
    let key = |x: usize| match sort {
        Sort::HMor => (a.hmor(x).src, a.hmor(x).tgt),
        Sort::VMor => (a.vmor(x).src, a.vmor(x).tgt),
        _ => (0, 0),
    };
    let mut seen = BTreeSet::new();
    let mut first = std::collections::BTreeMap::new();
    for x in 0..a.count(sort) {
        let k = (key(x), f.map(sort)[x]);
        if !seen.insert(k) {
            return Some((first[&k], x));
        }
        first.insert(k, x);
    }
    None
}

pub fn cofibration_necessary_conditions(f: &DoubleFunctor) -> NecessaryConditions {
    let a = f.source();
    let mut witness = Vec::new();
    let mut check = |sort: Sort| match collision(f, sort) {
        Some((x, y)) => {
            if witness.is_empty() {
                witness = vec![a.cell_ref(sort, x), a.cell_ref(sort, y)];
            }
            false
        }
        None => true,
    };
    let injective_on_objects = check(Sort::Object);
    let faithful_horizontal = check(Sort::HMor);
    let faithful_vertical = check(Sort::VMor);
    NecessaryConditions { injective_on_objects, faithful_horizontal, faithful_vertical, witness }
}
