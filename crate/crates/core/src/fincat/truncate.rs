//! The functors D: Cat -> 2Cat (identity 2-cells only) and P: 2Cat -> Cat
//! (connected components of hom-categories).

use super::{FinCategory, TwoCategory};

pub fn discrete_2cat(c: &FinCategory) -> TwoCategory {
    TwoCategory(c.as_double().clone())
}

/// Quotients each hom-category by its connected components. A class is
/// named after its least member.
pub fn pi0_truncate(a: &TwoCategory) -> FinCategory {
    let n = a.num_morphisms();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in 0..a.num_cells() {
        let c = a.cell(s);
        let (x, y) = (root(&mut parent, c.top), root(&mut parent, c.bottom));
        // keep the smaller index (= smaller name) as root
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        parent[hi] = lo;
    }
    let rep: Vec<usize> = (0..n).map(|f| root(&mut parent, f)).collect();
    let name = |f: usize| a.morphism(rep[f]).name.as_str();
    let obj = |o: usize| a.object(o);

    let mut b = FinCategory::builder(a.name());
    for o in 0..a.num_objects() {
        b.object(obj(o));
    }
    for f in (0..n).filter(|&f| rep[f] == f) {
        let m = a.morphism(f);
        b.morphism(&m.name, obj(m.src), obj(m.tgt));
    }
    for o in 0..a.num_objects() {
        b.identity(obj(o), name(a.identity(o)));
    }
    for ((g, f), h) in a.as_double().hcomp_m_entries() {
        b.compose(name(g), name(f), name(h));
    }
    b.build().expect("composition is well defined on components of a valid 2-category")
}
