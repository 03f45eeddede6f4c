//! Decision procedures for the model structure on double categories:
//! double biequivalences, double (trivial) fibrations, cofibrancy and
//! lifting problems.

mod cofibrant;
mod lifting;

pub use cofibrant::{cofibration_necessary_conditions, is_cofibrant, CofibrancyReport, NecessaryConditions};
pub use lifting::{failing_generating_cofibration, generating_cofibrations, has_rlp, has_rlp_generating_cofibrations, has_rlp_j2, solve_lifting};

use crate::construct::{underlying_horizontal_functor, vertical_morphism_functor};
use crate::dbl::{DoubleCategory, DoubleFunctor, Sort};
use crate::equiv::{horizontal_equivalences, weakly_invertible_squares};
use crate::error::Result;
use crate::fincat::check_biequivalence;
use crate::report::{CellRef, CheckReport, Condition, Counterexample};

fn counterexample(cells: Vec<CellRef>, missing: impl Into<String>) -> Option<Counterexample> {
    Some(Counterexample { cells, missing: missing.into() })
}

/// Preimages of each cell of the target, per sort.
fn preimages(f: &DoubleFunctor, sort: Sort) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); f.target().count(sort)];
    for (x, &y) in f.map(sort).iter().enumerate() {
        out[y].push(x);
    }
    out
}

/// Every square boundary `(a, c, u, u')` of `a`, in deterministic order.
fn boundaries(a: &DoubleCategory) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (u, l) in a.vmors().iter().enumerate() {
        for (u2, r) in a.vmors().iter().enumerate() {
            for &top in a.hom_h(l.src, r.src) {
                for &bottom in a.hom_h(l.tgt, r.tgt) {
                    out.push((top, bottom, u, u2));
                }
            }
        }
    }
    out
}

/// db1 and dt1 share the quantifier over target objects.
fn db1(f: &DoubleFunctor, equivalences: &[bool]) -> Option<Counterexample> {
    let b = f.target();
    let image: Vec<bool> = (0..b.num_objects()).map(|y| f.map(Sort::Object).contains(&y)).collect();
    (0..b.num_objects()).find_map(|y| {
        let reached = b
            .hmors()
            .iter()
            .enumerate()
            .any(|(m, arrow)| arrow.src == y && image[arrow.tgt] && equivalences[m]);
        if reached {
            None
        } else {
            counterexample(vec![b.cell_ref(Sort::Object, y)], "no horizontal equivalence into the image")
        }
    })
}

fn db2(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    for x in 0..a.num_objects() {
        for z in 0..a.num_objects() {
            for &m in b.hom_h(f.obj(x), f.obj(z)) {
                let found = a.hom_h(x, z).iter().any(|&n| {
                    b.globular_squares(m, f.hmor(n)).iter().any(|&s| b.vertical_inverse(s).is_some())
                });
                if !found {
                    return counterexample(
                        vec![a.cell_ref(Sort::Object, x), a.cell_ref(Sort::Object, z), b.cell_ref(Sort::HMor, m)],
                        "no a with a vertically invertible square b => Fa",
                    );
                }
            }
        }
    }
    None
}

fn db3(f: &DoubleFunctor, weakly_invertible: &[bool]) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    (0..b.num_vmors()).find_map(|v| {
        let found = (0..a.num_vmors()).any(|u| {
            b.squares_with_left(v).iter().any(|&s| b.square(s).right == f.vmor(u) && weakly_invertible[s])
        });
        if found {
            None
        } else {
            counterexample(vec![b.cell_ref(Sort::VMor, v)], "no weakly horizontally invertible square v => Fu")
        }
    })
}

/// Exactly one preimage of every square on an image boundary (db4, dt4).
fn db4(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    for (top, bottom, u, u2) in boundaries(a) {
        let over = a.squares_with(top, bottom, u, u2);
        for &beta in b.squares_with(f.hmor(top), f.hmor(bottom), f.vmor(u), f.vmor(u2)) {
            let n = over.iter().filter(|&&s| f.sq(s) == beta).count();
            if n != 1 {
                let cells = vec![
                    a.cell_ref(Sort::HMor, top),
                    a.cell_ref(Sort::HMor, bottom),
                    a.cell_ref(Sort::VMor, u),
                    a.cell_ref(Sort::VMor, u2),
                    b.cell_ref(Sort::Square, beta),
                ];
                let missing = if n == 0 { "no preimage".to_string() } else { format!("{n} preimages") };
                return counterexample(cells, missing);
            }
        }
    }
    None
}

/// db1-db4.
pub fn check_double_biequivalence(f: &DoubleFunctor) -> CheckReport {
    let b = f.target();
    let mut report = CheckReport::default();
    report.record(Condition::Db1, db1(f, &horizontal_equivalences(b)));
    report.record(Condition::Db2, db2(f));
    report.record(Condition::Db3, db3(f, &weakly_invertible_squares(b)));
    report.record(Condition::Db4, db4(f));
    report
}

/// hb3, vb2 and vb3, read off the 2-functors 𝐇F and 𝒱F.
pub fn add_auxiliary(f: &DoubleFunctor, report: &mut CheckReport) -> Result<()> {
    let h = check_biequivalence(&underlying_horizontal_functor(f)?);
    let v = check_biequivalence(&vertical_morphism_functor(f)?);
    for (tag, r, c) in [(Condition::Hb3, &h, Condition::B3), (Condition::Vb2, &v, Condition::B2), (Condition::Vb3, &v, Condition::B3)] {
        report.record_aux(tag, r.counterexamples.get(&c).cloned());
    }
    Ok(())
}

fn df1(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    let (eq_a, eq_b) = (horizontal_equivalences(a), horizontal_equivalences(b));
    let pre = preimages(f, Sort::HMor);
    for z in 0..a.num_objects() {
        for (m, arrow) in b.hmors().iter().enumerate() {
            if arrow.tgt != f.obj(z) || !eq_b[m] {
                continue;
            }
            if !pre[m].iter().any(|&n| a.hmor(n).tgt == z && eq_a[n]) {
                return counterexample(
                    vec![a.cell_ref(Sort::Object, z), b.cell_ref(Sort::HMor, m)],
                    "no horizontal equivalence a into C with Fa = b",
                );
            }
        }
    }
    None
}

fn df2(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    let pre = preimages(f, Sort::Square);
    for (c, arrow) in a.hmors().iter().enumerate() {
        let (fx, fz) = (f.obj(arrow.src), f.obj(arrow.tgt));
        for &bm in b.hom_h(fx, fz) {
            for &beta in b.globular_squares(bm, f.hmor(c)) {
                if b.vertical_inverse(beta).is_none() {
                    continue;
                }
                let lifted = pre[beta].iter().any(|&s| {
                    let q = a.square(s);
                    q.bottom == c && a.is_globular(s) && a.vertical_inverse(s).is_some()
                });
                if !lifted {
                    return counterexample(
                        vec![a.cell_ref(Sort::HMor, c), b.cell_ref(Sort::Square, beta)],
                        "no vertically invertible square a => c with F alpha = beta",
                    );
                }
            }
        }
    }
    None
}

fn df3(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    let (wi_a, wi_b) = (weakly_invertible_squares(a), weakly_invertible_squares(b));
    let pre = preimages(f, Sort::Square);
    for u2 in 0..a.num_vmors() {
        for &beta in b.squares_with_right(f.vmor(u2)) {
            if !wi_b[beta] {
                continue;
            }
            if !pre[beta].iter().any(|&s| a.square(s).right == u2 && wi_a[s]) {
                return counterexample(
                    vec![a.cell_ref(Sort::VMor, u2), b.cell_ref(Sort::Square, beta)],
                    "no weakly horizontally invertible square with right u' over beta",
                );
            }
        }
    }
    None
}

/// df1-df3.
pub fn check_double_fibration(f: &DoubleFunctor) -> CheckReport {
    let mut report = CheckReport::default();
    report.record(Condition::Df1, df1(f));
    report.record(Condition::Df2, df2(f));
    report.record(Condition::Df3, df3(f));
    report
}

fn surjective(f: &DoubleFunctor, sort: Sort, what: &str) -> Option<Counterexample> {
    let b = f.target();
    let pre = preimages(f, sort);
    (0..b.count(sort))
        .find(|&y| pre[y].is_empty())
        .and_then(|y| counterexample(vec![b.cell_ref(sort, y)], what))
}

fn dt2(f: &DoubleFunctor) -> Option<Counterexample> {
    let (a, b) = (f.source(), f.target());
    for x in 0..a.num_objects() {
        for z in 0..a.num_objects() {
            for &m in b.hom_h(f.obj(x), f.obj(z)) {
                if !a.hom_h(x, z).iter().any(|&n| f.hmor(n) == m) {
                    return counterexample(
                        vec![a.cell_ref(Sort::Object, x), a.cell_ref(Sort::Object, z), b.cell_ref(Sort::HMor, m)],
                        "no a: A -> C with Fa = b",
                    );
                }
            }
        }
    }
    None
}

/// dt1-dt4.
pub fn check_double_trivial_fibration(f: &DoubleFunctor) -> CheckReport {
    let mut report = CheckReport::default();
    report.record(Condition::Dt1, surjective(f, Sort::Object, "no preimage object"));
    report.record(Condition::Dt2, dt2(f));
    report.record(Condition::Dt3, surjective(f, Sort::VMor, "no preimage vertical morphism"));
    report.record(Condition::Dt4, db4(f));
    report
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::*;
    use crate::dbl::enumerate::enumerate_double_functors;
    use crate::dbl::ops::terminal;
    use crate::search::Budget;

    fn to_one(a: DoubleCategory) -> DoubleFunctor {
        let t = Arc::new(terminal("One"));
        enumerate_double_functors(&Arc::new(a), &t, &Budget::default()).unwrap().remove(0)
    }

    #[test]
    fn identities_pass_everything() {
        for d in double_categories() {
            let id = DoubleFunctor::identity(Arc::new(d));
            assert!(check_double_biequivalence(&id).passes());
            assert!(check_double_fibration(&id).passes());
            assert!(check_double_trivial_fibration(&id).passes());
        }
    }

    #[test]
    fn endpoints_of_vertical_arrow() {
        let f = eps_v2();
        let r = check_double_biequivalence(&f);
        assert_eq!(r.failed(), vec![Condition::Db3]);
        assert_eq!(r.counterexamples[&Condition::Db3].cells, vec![CellRef::new(Sort::VMor, "u")]);
        assert_eq!(check_double_trivial_fibration(&f).failed(), vec![Condition::Dt3]);
    }

    #[test]
    fn collapsing_parallel_squares() {
        let f = i5();
        assert_eq!(check_double_biequivalence(&f).failed(), vec![Condition::Db4]);
        let t = check_double_trivial_fibration(&f);
        assert_eq!(t.failed(), vec![Condition::Dt4]);
        assert_eq!(t.counterexamples[&Condition::Dt4].missing, "2 preimages");
    }

    #[test]
    fn everything_is_fibrant() {
        for d in double_categories() {
            let name = d.name().to_string();
            assert!(check_double_fibration(&to_one(d)).passes(), "{name}");
        }
    }

    #[test]
    fn point_into_free_isomorphism() {
        let pairs = [(Sort::Object, "0".to_string(), "0".to_string())];
        let f = DoubleFunctor::from_names("pt", Arc::new(one()), Arc::new(iso_h()), &pairs).unwrap();
        let r = check_double_fibration(&f);
        assert_eq!(r.failed(), vec![Condition::Df1, Condition::Df3]);
        assert_eq!(r.counterexamples[&Condition::Df1].cells[1], CellRef::new(Sort::HMor, "g"));
        assert!(check_double_biequivalence(&f).passes());
    }

    #[test]
    fn auxiliary_conditions_follow_db4() {
        let f = i5();
        let mut r = check_double_biequivalence(&f);
        add_auxiliary(&f, &mut r).unwrap();
        assert_eq!(r.verdict(Condition::Hb3), Some(true));
        assert_eq!(r.verdict(Condition::Vb3), Some(false));
    }
}
