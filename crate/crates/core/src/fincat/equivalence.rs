//! Equivalences in 2-categories, biequivalences, Lack fibrations, and the
//! 1-categorical counterparts (equivalences of categories, isofibrations).

use super::{CatFunctor, FinCategory, TwoCategory, TwoFunctor};
use crate::dbl::Sort;
use crate::report::{CellRef, CheckReport, Condition, Counterexample};

/// `f: x -> y` with `g: y -> x`, an invertible `unit: id ⇒ g∘f` and an
/// invertible `counit: f∘g ⇒ id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness2 {
    pub f: usize,
    pub g: usize,
    pub unit: usize,
    pub counit: usize,
}

/// Two-sided inverse of a 2-cell, by scanning the 2-cells in the opposite
/// direction.
pub fn invertible_cell(a: &TwoCategory, s: usize) -> Option<usize> {
    let c = a.cell(s);
    a.cells_between(c.bottom, c.top).iter().copied().find(|&t| {
        a.vcomp(t, s) == Some(a.identity_cell(c.top)) && a.vcomp(s, t) == Some(a.identity_cell(c.bottom))
    })
}

fn has_invertible_cell(a: &TwoCategory, f: usize, g: usize) -> Option<usize> {
    a.cells_between(f, g).iter().copied().find(|&s| invertible_cell(a, s).is_some())
}

/// First equivalence witness for `f` in name order of `(g, unit, counit)`.
pub fn is_equivalence_morphism(a: &TwoCategory, f: usize) -> Option<EquivalenceWitness2> {
    let (x, y) = (a.morphism(f).src, a.morphism(f).tgt);
    for &g in a.hom(y, x) {
        let (Some(gf), Some(fg)) = (a.compose(g, f), a.compose(f, g)) else {
            continue;
        };
        let Some(unit) = has_invertible_cell(a, a.identity(x), gf) else {
            continue;
        };
        if let Some(counit) = has_invertible_cell(a, fg, a.identity(y)) {
            return Some(EquivalenceWitness2 { f, g, unit, counit });
        }
    }
    None
}

/// Which morphisms are equivalences.
pub fn equivalences_from(a: &TwoCategory) -> Vec<bool> {
    (0..a.num_morphisms()).map(|f| is_equivalence_morphism(a, f).is_some()).collect()
}

fn ce(cells: Vec<CellRef>, missing: impl Into<String>) -> Option<Counterexample> {
    Some(Counterexample { cells, missing: missing.into() })
}

/// Conditions b1-b3, with b2 and b3 quantified over all pairs of source
/// objects.
pub fn check_biequivalence(f: &TwoFunctor) -> CheckReport {
    let (s, t) = (f.source(), f.target());
    let (sd, td) = (s.as_double(), t.as_double());
    let equiv = equivalences_from(&t);
    let mut report = CheckReport::default();

    let b1 = (0..t.num_objects()).find_map(|b| {
        let ok = (0..s.num_objects()).any(|a| t.hom(b, f.obj(a)).iter().any(|&e| equiv[e]));
        (!ok).then(|| ce(vec![td.cell_ref(Sort::Object, b)], "no equivalence B -> FA")).flatten()
    });
    report.record(Condition::B1, b1);

    let mut b2 = None;
    'b2: for a in 0..s.num_objects() {
        for c in 0..s.num_objects() {
            for &b in t.hom(f.obj(a), f.obj(c)) {
                let ok = s.hom(a, c).iter().any(|&x| has_invertible_cell(&t, b, f.mor(x)).is_some());
                if !ok {
                    b2 = ce(
                        vec![sd.cell_ref(Sort::Object, a), sd.cell_ref(Sort::Object, c), td.cell_ref(Sort::HMor, b)],
                        "no a: A -> C with an invertible 2-cell b => Fa",
                    );
                    break 'b2;
                }
            }
        }
    }
    report.record(Condition::B2, b2);

    let mut b3 = None;
    'b3: for x in 0..s.num_morphisms() {
        let (a, c) = (s.morphism(x).src, s.morphism(x).tgt);
        for &y in s.hom(a, c) {
            let sources = s.cells_between(x, y);
            for &beta in t.cells_between(f.mor(x), f.mor(y)) {
                let n = sources.iter().filter(|&&al| f.cell(al) == beta).count();
                if n != 1 {
                    let what = if n == 0 { "no 2-cell a => c over beta" } else { "several 2-cells a => c over beta" };
                    b3 = ce(
                        vec![sd.cell_ref(Sort::HMor, x), sd.cell_ref(Sort::HMor, y), td.cell_ref(Sort::Square, beta)],
                        what,
                    );
                    break 'b3;
                }
            }
        }
    }
    report.record(Condition::B3, b3);
    report
}

/// Conditions f1-f2.
pub fn check_lack_fibration(f: &TwoFunctor) -> CheckReport {
    let (s, t) = (f.source(), f.target());
    let (sd, td) = (s.as_double(), t.as_double());
    let s_equiv = equivalences_from(&s);
    let t_equiv = equivalences_from(&t);
    let mut report = CheckReport::default();

    let mut f1 = None;
    'f1: for c in 0..s.num_objects() {
        for bo in 0..t.num_objects() {
            for &b in t.hom(bo, f.obj(c)) {
                if !t_equiv[b] {
                    continue;
                }
                let lifted =
                    (0..s.num_objects()).any(|a| s.hom(a, c).iter().any(|&x| s_equiv[x] && f.mor(x) == b));
                if !lifted {
                    f1 = ce(
                        vec![td.cell_ref(Sort::HMor, b), sd.cell_ref(Sort::Object, c)],
                        "no equivalence a: A -> C with Fa = b",
                    );
                    break 'f1;
                }
            }
        }
    }
    report.record(Condition::F1, f1);

    let mut f2 = None;
    'f2: for c in 0..s.num_morphisms() {
        let (a0, c0) = (s.morphism(c).src, s.morphism(c).tgt);
        for &b in t.hom(f.obj(a0), f.obj(c0)) {
            for &beta in t.cells_between(b, f.mor(c)) {
                if invertible_cell(&t, beta).is_none() {
                    continue;
                }
                let lifted = s.hom(a0, c0).iter().any(|&x| {
                    f.mor(x) == b
                        && s.cells_between(x, c)
                            .iter()
                            .any(|&al| f.cell(al) == beta && invertible_cell(&s, al).is_some())
                });
                if !lifted {
                    f2 = ce(
                        vec![sd.cell_ref(Sort::HMor, c), td.cell_ref(Sort::Square, beta)],
                        "no invertible 2-cell a => c with F alpha = beta",
                    );
                    break 'f2;
                }
            }
        }
    }
    report.record(Condition::F2, f2);
    report
}

/// Inverse of a morphism in a category.
pub fn is_isomorphism(c: &FinCategory, f: usize) -> Option<usize> {
    let (x, y) = (c.morphism(f).src, c.morphism(f).tgt);
    c.hom(y, x)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == Some(c.identity(x)) && c.compose(f, g) == Some(c.identity(y)))
}

/// Essentially surjective, full and faithful.
pub fn is_category_equivalence(f: &CatFunctor) -> bool {
    let (s, t) = (f.source(), f.target());
    let ess_surj = (0..t.num_objects()).all(|b| {
        (0..s.num_objects()).any(|a| t.hom(b, f.obj(a)).iter().any(|&g| is_isomorphism(&t, g).is_some()))
    });
    ess_surj
        && (0..s.num_objects()).all(|a| {
            (0..s.num_objects()).all(|c| {
                let mut images: Vec<usize> = s.hom(a, c).iter().map(|&x| f.mor(x)).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == s.hom(a, c).len() && images.len() == t.hom(f.obj(a), f.obj(c)).len()
            })
        })
}

/// Every isomorphism `b: B -> FC` lifts to an isomorphism `a: A -> C`.
pub fn is_isofibration(f: &CatFunctor) -> bool {
    let (s, t) = (f.source(), f.target());
    (0..s.num_objects()).all(|c| {
        (0..t.num_objects()).all(|bo| {
            t.hom(bo, f.obj(c)).iter().all(|&b| {
                is_isomorphism(&t, b).is_none()
                    || (0..s.num_objects())
                        .any(|a| s.hom(a, c).iter().any(|&x| f.mor(x) == b && is_isomorphism(&s, x).is_some()))
            })
        })
    })
}
