//! Exhaustive enumeration of double functors by backtracking over a
//! generator skeleton: identities and composites of already-placed cells
//! are determined, only generators branch.

use std::ops::ControlFlow;
use std::sync::Arc;

use super::{DoubleCategory, DoubleFunctor, Sort};
use crate::error::Result;
use crate::search::{solve, Budget, Problem};

#[derive(Clone, Copy, Debug)]
enum Rule {
    Free,
    /// Identity of the image of an object (hmor/vmor) or of a morphism
    /// (square); the payload is the cell whose image is used.
    IdH(usize),
    IdV(usize),
    ESq(usize),
    IdSq(usize),
    Composite(Table, usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Table {
    HM,
    VM,
    HS,
    VS,
}

impl Table {
    fn sort(self) -> Sort {
        match self {
            Table::HM => Sort::HMor,
            Table::VM => Sort::VMor,
            Table::HS | Table::VS => Sort::Square,
        }
    }

    fn eval(self, d: &DoubleCategory, x: usize, y: usize) -> Option<usize> {
        match self {
            Table::HM => d.hcomp_m(x, y),
            Table::VM => d.vcomp_m(x, y),
            Table::HS => d.hcomp_sq(x, y),
            Table::VS => d.vcomp_sq(x, y),
        }
    }
}

/// Extra constraints on the functors to enumerate.
#[derive(Default)]
pub struct Constraints<'a> {
    /// Prescribed images, per sort and source cell.
    pub fixed: Option<[Vec<Option<usize>>; 4]>,
    /// Admissible `(sort, source cell, target cell)` triples.
    pub allowed: Option<&'a dyn Fn(Sort, usize, usize) -> bool>,
    /// Injective on every sort.
    pub injective: bool,
}

struct FunctorProblem<'a> {
    src: &'a DoubleCategory,
    tgt: &'a DoubleCategory,
    vars: Vec<(Sort, usize)>,
    rules: Vec<Rule>,
    pos: [Vec<usize>; 4],
    checks: Vec<Vec<(Table, usize, usize, usize)>>,
    cons: &'a Constraints<'a>,
}

impl<'a> FunctorProblem<'a> {
    fn new(src: &'a DoubleCategory, tgt: &'a DoubleCategory, cons: &'a Constraints<'a>) -> Self {
        let mut vars = Vec::new();
        let mut rules = Vec::new();
        let mut pos: [Vec<usize>; 4] = std::array::from_fn(|k| vec![usize::MAX; src.count(Sort::ALL[k])]);
        let place = |vars: &mut Vec<(Sort, usize)>, rules: &mut Vec<Rule>, pos: &mut [Vec<usize>; 4], s: Sort, i: usize, r: Rule| {
            pos[s.index()][i] = vars.len();
            vars.push((s, i));
            rules.push(r);
        };
        for o in 0..src.num_objects() {
            place(&mut vars, &mut rules, &mut pos, Sort::Object, o, Rule::Free);
        }
        for o in 0..src.num_objects() {
            place(&mut vars, &mut rules, &mut pos, Sort::HMor, src.id_h(o), Rule::IdH(o));
            place(&mut vars, &mut rules, &mut pos, Sort::VMor, src.id_v(o), Rule::IdV(o));
        }
        let hm: Vec<_> = src.hcomp_m_entries();
        let vm: Vec<_> = src.vcomp_m_entries();
        let hs: Vec<_> = src.hcomp_sq_entries();
        let vs: Vec<_> = src.vcomp_sq_entries();
        for (sort, tables) in [
            (Sort::HMor, vec![(Table::HM, &hm)]),
            (Sort::VMor, vec![(Table::VM, &vm)]),
        ] {
            let n = src.count(sort);
            let decomps = decompositions(n, &tables);
            let snapshot = pos.clone();
            skeleton(sort, n, &decomps, &mut |i, r| place(&mut vars, &mut rules, &mut pos, sort, i, r), &snapshot);
        }
        // Squares: identity squares first, then the skeleton.
        for a in 0..src.num_hmors() {
            let s = src.e_sq(a);
            if pos[3][s] == usize::MAX {
                place(&mut vars, &mut rules, &mut pos, Sort::Square, s, Rule::ESq(a));
            }
        }
        for u in 0..src.num_vmors() {
            let s = src.id_sq(u);
            if pos[3][s] == usize::MAX {
                place(&mut vars, &mut rules, &mut pos, Sort::Square, s, Rule::IdSq(u));
            }
        }
        let decomps = decompositions(src.num_squares(), &[(Table::HS, &hs), (Table::VS, &vs)]);
        let snapshot = pos.clone();
        skeleton(
            Sort::Square,
            src.num_squares(),
            &decomps,
            &mut |i, r| place(&mut vars, &mut rules, &mut pos, Sort::Square, i, r),
            &snapshot,
        );

        let mut checks = vec![Vec::new(); vars.len()];
        for (t, entries) in [(Table::HM, &hm), (Table::VM, &vm), (Table::HS, &hs), (Table::VS, &vs)] {
            let p = &pos[t.sort().index()];
            for &((x, y), z) in entries.iter() {
                let last = p[x].max(p[y]).max(p[z]);
                checks[last].push((t, x, y, z));
            }
        }
        FunctorProblem { src, tgt, vars, rules, pos, checks, cons }
    }

    fn image(&self, assigned: &[usize], sort: Sort, cell: usize) -> usize {
        assigned[self.pos[sort.index()][cell]]
    }

    fn determined(&self, var: usize, assigned: &[usize]) -> Option<Option<usize>> {
        let t = self.tgt;
        Some(match self.rules[var] {
            Rule::Free => return None,
            Rule::IdH(o) => Some(t.id_h(self.image(assigned, Sort::Object, o))),
            Rule::IdV(o) => Some(t.id_v(self.image(assigned, Sort::Object, o))),
            Rule::ESq(a) => Some(t.e_sq(self.image(assigned, Sort::HMor, a))),
            Rule::IdSq(u) => Some(t.id_sq(self.image(assigned, Sort::VMor, u))),
            Rule::Composite(tb, x, y) => {
                let s = tb.sort();
                tb.eval(t, self.image(assigned, s, x), self.image(assigned, s, y))
            }
        })
    }

    fn boundary_ok(&self, sort: Sort, cell: usize, value: usize, assigned: &[usize]) -> bool {
        let (s, t) = (self.src, self.tgt);
        match sort {
            Sort::Object => true,
            Sort::HMor => {
                let (a, b) = (s.hmor(cell), t.hmor(value));
                b.src == self.image(assigned, Sort::Object, a.src) && b.tgt == self.image(assigned, Sort::Object, a.tgt)
            }
            Sort::VMor => {
                let (a, b) = (s.vmor(cell), t.vmor(value));
                b.src == self.image(assigned, Sort::Object, a.src) && b.tgt == self.image(assigned, Sort::Object, a.tgt)
            }
            Sort::Square => {
                let (q, r) = (s.square(cell), t.square(value));
                r.top == self.image(assigned, Sort::HMor, q.top)
                    && r.bottom == self.image(assigned, Sort::HMor, q.bottom)
                    && r.left == self.image(assigned, Sort::VMor, q.left)
                    && r.right == self.image(assigned, Sort::VMor, q.right)
            }
        }
    }
}

/// For each cell, the pairs it is a composite of.
fn decompositions(n: usize, tables: &[(Table, &Vec<((usize, usize), usize)>)]) -> Vec<Vec<(Table, usize, usize)>> {
    let mut out = vec![Vec::new(); n];
    for (t, entries) in tables {
        for &((x, y), z) in entries.iter() {
            if x != z && y != z {
                out[z].push((*t, x, y));
            }
        }
    }
    out
}

/// Places the not-yet-placed cells of a sort: a cell with both factors of
/// some decomposition already placed is determined, otherwise the first
/// remaining cell becomes a generator.
fn skeleton(
    sort: Sort,
    n: usize,
    decomps: &[Vec<(Table, usize, usize)>],
    place: &mut dyn FnMut(usize, Rule),
    initial: &[Vec<usize>; 4],
) {
    let mut placed: Vec<bool> = (0..n).map(|i| initial[sort.index()][i] != usize::MAX).collect();
    let mut remaining: Vec<usize> = (0..n).filter(|&i| !placed[i]).collect();
    while !remaining.is_empty() {
        let found = remaining.iter().enumerate().find_map(|(k, &c)| {
            decomps[c].iter().find(|&&(_, x, y)| placed[x] && placed[y]).map(|&(t, x, y)| (k, c, Rule::Composite(t, x, y)))
        });
        let (k, c, rule) = found.unwrap_or((0, remaining[0], Rule::Free));
        remaining.remove(k);
        placed[c] = true;
        place(c, rule);
    }
}

impl Problem for FunctorProblem<'_> {
    fn len(&self) -> usize {
        self.vars.len()
    }

    fn candidates(&self, var: usize, assigned: &[usize]) -> Vec<usize> {
        let (sort, cell) = self.vars[var];
        let fixed = self.cons.fixed.as_ref().and_then(|f| f[sort.index()][cell]);
        if let Some(d) = self.determined(var, assigned) {
            return d.into_iter().collect();
        }
        if let Some(v) = fixed {
            return vec![v];
        }
        let (s, t) = (self.src, self.tgt);
        let obj = |o| self.image(assigned, Sort::Object, o);
        match sort {
            Sort::Object => (0..t.num_objects()).collect(),
            Sort::HMor => t.hom_h(obj(s.hmor(cell).src), obj(s.hmor(cell).tgt)).to_vec(),
            Sort::VMor => t.hom_v(obj(s.vmor(cell).src), obj(s.vmor(cell).tgt)).to_vec(),
            Sort::Square => {
                let q = s.square(cell);
                t.squares_with(
                    self.image(assigned, Sort::HMor, q.top),
                    self.image(assigned, Sort::HMor, q.bottom),
                    self.image(assigned, Sort::VMor, q.left),
                    self.image(assigned, Sort::VMor, q.right),
                )
                .to_vec()
            }
        }
    }

    fn accept(&self, var: usize, assigned: &[usize]) -> bool {
        let (sort, cell) = self.vars[var];
        let value = assigned[var];
        if let Some(f) = &self.cons.fixed {
            if let Some(v) = f[sort.index()][cell] {
                if v != value {
                    return false;
                }
            }
        }
        if !matches!(self.rules[var], Rule::Free) && !self.boundary_ok(sort, cell, value, assigned) {
            return false;
        }
        if let Some(allowed) = self.cons.allowed {
            if !allowed(sort, cell, value) {
                return false;
            }
        }
        if self.cons.injective {
            let p = &self.pos[sort.index()];
            if p.iter().any(|&pv| pv < var && assigned[pv] == value) {
                return false;
            }
        }
        let t = self.tgt;
        self.checks[var].iter().all(|&(tb, x, y, z)| {
            let s = tb.sort();
            tb.eval(t, self.image(assigned, s, x), self.image(assigned, s, y)) == Some(self.image(assigned, s, z))
        })
    }
}

/// Calls `visit` on every double functor `a -> b` satisfying `cons`, in
/// deterministic order.
pub fn for_each_functor<F>(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    cons: &Constraints<'_>,
    budget: &Budget,
    mut visit: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(DoubleFunctor) -> ControlFlow<()>,
{
    let p = FunctorProblem::new(a, b, cons);
    let mut k = 0usize;
    solve(&p, budget, "functor enumeration", |assigned| {
        let mut maps: [Vec<usize>; 4] = std::array::from_fn(|s| vec![0; a.count(Sort::ALL[s])]);
        for (v, &(sort, cell)) in p.vars.iter().enumerate() {
            maps[sort.index()][cell] = assigned[v];
        }
        k += 1;
        let f = DoubleFunctor::new(format!("F{k:04}"), a.clone(), b.clone(), maps)
            .expect("enumerated maps respect boundaries");
        visit(f)
    })
}

pub fn enumerate_double_functors(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    budget: &Budget,
) -> Result<Vec<DoubleFunctor>> {
    enumerate_with(a, b, &Constraints::default(), budget)
}

pub fn enumerate_with(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    cons: &Constraints<'_>,
    budget: &Budget,
) -> Result<Vec<DoubleFunctor>> {
    let mut out = Vec::new();
    let _ = for_each_functor(a, b, cons, budget, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn first_functor(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    cons: &Constraints<'_>,
    budget: &Budget,
) -> Result<Option<DoubleFunctor>> {
    let mut found = None;
    let _ = for_each_functor(a, b, cons, budget, |f| {
        found = Some(f);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbl::DoubleCategoryBuilder;

    fn one() -> Arc<DoubleCategory> {
        let mut b = DoubleCategoryBuilder::new("One");
        b.object("0");
        Arc::new(b.build().unwrap())
    }

    fn v2() -> Arc<DoubleCategory> {
        let mut b = DoubleCategoryBuilder::new("TwoV");
        b.object("0").object("1").vmor("u", "0", "1");
        Arc::new(b.build().unwrap())
    }

    fn h2() -> Arc<DoubleCategory> {
        let mut b = DoubleCategoryBuilder::new("TwoH");
        b.object("0").object("1").hmor("a", "0", "1");
        Arc::new(b.build().unwrap())
    }

    fn free_square() -> Arc<DoubleCategory> {
        let mut b = DoubleCategoryBuilder::new("Sq");
        b.object("0").object("1").object("0'").object("1'");
        b.hmor("a", "0", "1").hmor("b", "0'", "1'").vmor("u", "0", "0'").vmor("v", "1", "1'");
        b.square("alpha", "a", "b", "u", "v");
        Arc::new(b.build().unwrap())
    }

    /// Unpruned oracle: every boundary-respecting assignment, then full
    /// validation.
    fn brute_force_count(a: &DoubleCategory, b: &DoubleCategory) -> usize {
        fn rec(
            a: &DoubleCategory,
            b: &DoubleCategory,
            cells: &[(Sort, usize)],
            k: usize,
            maps: &mut [Vec<usize>; 4],
            count: &mut usize,
        ) {
            if k == cells.len() {
                let arc_a = Arc::new(a.clone());
                let arc_b = Arc::new(b.clone());
                if let Ok(f) = DoubleFunctor::new("x", arc_a, arc_b, maps.clone()) {
                    if f.validate().is_valid() {
                        *count += 1;
                    }
                }
                return;
            }
            let (sort, i) = cells[k];
            for x in 0..b.count(sort) {
                maps[sort.index()][i] = x;
                rec(a, b, cells, k + 1, maps, count);
            }
        }
        let cells: Vec<(Sort, usize)> =
            Sort::ALL.iter().flat_map(|&s| (0..a.count(s)).map(move |i| (s, i))).collect();
        let mut maps: [Vec<usize>; 4] = std::array::from_fn(|s| vec![0; a.count(Sort::ALL[s])]);
        let mut count = 0;
        rec(a, b, &cells, 0, &mut maps, &mut count);
        count
    }

    #[test]
    fn one_into_anything_picks_an_object() {
        let b = free_square();
        let fs = enumerate_double_functors(&one(), &b, &Budget::default()).unwrap();
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn v2_endofunctors() {
        let fs = enumerate_double_functors(&v2(), &v2(), &Budget::default()).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(brute_force_count(&v2(), &v2()), 3);
    }

    #[test]
    fn h2_into_free_square() {
        let fs = enumerate_double_functors(&h2(), &free_square(), &Budget::default()).unwrap();
        assert_eq!(fs.len(), 6);
        for f in &fs {
            assert!(f.validate().is_valid());
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_pairs() {
        let objs = [one(), v2(), h2()];
        for a in &objs {
            for b in &objs {
                let n = enumerate_double_functors(a, b, &Budget::default()).unwrap().len();
                assert_eq!(n, brute_force_count(a, b), "{} -> {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn injective_constraint_gives_automorphisms() {
        let sq = free_square();
        let cons = Constraints { injective: true, ..Default::default() };
        let fs = enumerate_with(&sq, &sq, &cons, &Budget::default()).unwrap();
        assert_eq!(fs.len(), 1);
    }
}
