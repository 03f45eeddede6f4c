//! The 2-category Ps[A, B] of 2-functors, pseudo natural transformations
//! and modifications.

use std::collections::HashMap;
use std::sync::Arc;

use super::equivalence::invertible_cell;
use super::TwoCategory;
use crate::dbl::enumerate::enumerate_double_functors;
use crate::dbl::{DoubleCategoryBuilder, DoubleFunctor};
use crate::error::Result;
use crate::search::{all, Budget, Problem};

/// Components `h_A: FA -> GA` and invertible 2-cells
/// `h_a: Ga∘h_A ⇒ h_B∘Fa`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoTransformation2 {
    pub components: Vec<usize>,
    pub cells: Vec<usize>,
}

struct TransformationSearch<'a> {
    a: &'a TwoCategory,
    b: &'a TwoCategory,
    f: &'a DoubleFunctor,
    g: &'a DoubleFunctor,
    checks: Vec<Vec<Check>>,
}

#[derive(Clone, Copy)]
enum Check {
    /// `h_{y∘x} = (h_y ∘ e_{Fx}) · (e_{Gy} ∘ h_x)`.
    Composite(usize, usize, usize),
    /// Naturality in a 2-cell.
    Natural(usize),
}

impl TransformationSearch<'_> {
    fn n(&self) -> usize {
        self.a.num_objects()
    }

    fn holds(&self, check: Check, v: &[usize]) -> bool {
        let (a, b, f, g) = (self.a, self.b, self.f, self.g);
        let n = self.n();
        let comp = |o: usize| v[o];
        let cell = |m: usize| v[n + m];
        match check {
            Check::Composite(y, x, yx) => {
                let left = b.hcomp(cell(y), b.identity_cell(f.hmor(x)));
                let right = b.hcomp(b.identity_cell(g.hmor(y)), cell(x));
                match (left, right) {
                    (Some(l), Some(r)) => b.vcomp(l, r) == Some(cell(yx)),
                    _ => false,
                }
            }
            Check::Natural(s) => {
                let c = a.cell(s);
                let src = a.morphism(c.top).src;
                let tgt = a.morphism(c.top).tgt;
                let lhs = b.hcomp(g.sq(s), b.identity_cell(comp(src))).and_then(|x| b.vcomp(cell(c.bottom), x));
                let rhs = b.hcomp(b.identity_cell(comp(tgt)), f.sq(s)).and_then(|x| b.vcomp(x, cell(c.top)));
                lhs.is_some() && lhs == rhs
            }
        }
    }
}

impl Problem for TransformationSearch<'_> {
    fn len(&self) -> usize {
        self.n() + self.a.num_morphisms()
    }

    fn candidates(&self, var: usize, v: &[usize]) -> Vec<usize> {
        let (a, b, f, g) = (self.a, self.b, self.f, self.g);
        let n = self.n();
        if var < n {
            return b.hom(f.obj(var), g.obj(var)).to_vec();
        }
        let m = var - n;
        let arrow = a.morphism(m);
        let (h_src, h_tgt) = (v[arrow.src], v[arrow.tgt]);
        if a.as_double().is_identity_hmor(m) {
            return vec![b.identity_cell(h_src)];
        }
        let (Some(top), Some(bottom)) = (b.compose(g.hmor(m), h_src), b.compose(h_tgt, f.hmor(m))) else {
            return vec![];
        };
        b.cells_between(top, bottom).iter().copied().filter(|&s| invertible_cell(b, s).is_some()).collect()
    }

    fn accept(&self, var: usize, v: &[usize]) -> bool {
        self.checks[var].iter().all(|&c| self.holds(c, v))
    }
}

/// All pseudo natural transformations `f ⇒ g`.
pub fn pseudo_transformations(
    a: &TwoCategory,
    b: &TwoCategory,
    f: &DoubleFunctor,
    g: &DoubleFunctor,
    budget: &Budget,
) -> Result<Vec<PseudoTransformation2>> {
    let n = a.num_objects();
    let mut checks = vec![Vec::new(); n + a.num_morphisms()];
    for ((y, x), yx) in a.as_double().hcomp_m_entries() {
        checks[n + y.max(x).max(yx)].push(Check::Composite(y, x, yx));
    }
    for s in 0..a.num_cells() {
        let c = a.cell(s);
        checks[n + c.top.max(c.bottom)].push(Check::Natural(s));
    }
    let p = TransformationSearch { a, b, f, g, checks };
    Ok(all(&p, budget, "pseudo natural transformations")?
        .into_iter()
        .map(|v| PseudoTransformation2 { components: v[..n].to_vec(), cells: v[n..].to_vec() })
        .collect())
}

struct ModificationSearch<'a> {
    a: &'a TwoCategory,
    b: &'a TwoCategory,
    f: &'a DoubleFunctor,
    g: &'a DoubleFunctor,
    h: &'a PseudoTransformation2,
    k: &'a PseudoTransformation2,
    checks: Vec<Vec<usize>>,
}

impl Problem for ModificationSearch<'_> {
    fn len(&self) -> usize {
        self.a.num_objects()
    }

    fn candidates(&self, var: usize, _v: &[usize]) -> Vec<usize> {
        self.b.cells_between(self.h.components[var], self.k.components[var]).to_vec()
    }

    fn accept(&self, var: usize, v: &[usize]) -> bool {
        let (a, b, f, g, h, k) = (self.a, self.b, self.f, self.g, self.h, self.k);
        self.checks[var].iter().all(|&m| {
            let arrow = a.morphism(m);
            let lhs = b.hcomp(b.identity_cell(g.hmor(m)), v[arrow.src]).and_then(|x| b.vcomp(k.cells[m], x));
            let rhs = b.hcomp(v[arrow.tgt], b.identity_cell(f.hmor(m))).and_then(|x| b.vcomp(x, h.cells[m]));
            lhs.is_some() && lhs == rhs
        })
    }
}

/// Modifications `h ⇛ k` between transformations `f ⇒ g`.
pub fn modifications(
    a: &TwoCategory,
    b: &TwoCategory,
    f: &DoubleFunctor,
    g: &DoubleFunctor,
    h: &PseudoTransformation2,
    k: &PseudoTransformation2,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let mut checks = vec![Vec::new(); a.num_objects()];
    for (m, arrow) in a.morphisms().iter().enumerate() {
        checks[arrow.src.max(arrow.tgt)].push(m);
    }
    let p = ModificationSearch { a, b, f, g, h, k, checks };
    all(&p, budget, "modifications")
}

/// Ps[A, B]: objects `F1, F2, ...` are the 2-functors in enumeration order,
/// morphisms `t1, ...` the pseudo natural transformations and 2-cells
/// `m1, ...` the modifications.
pub fn pseudo_hom_2cat(a: &TwoCategory, b: &TwoCategory, budget: &Budget) -> Result<TwoCategory> {
    let (ad, bd) = (Arc::new(a.as_double().clone()), Arc::new(b.as_double().clone()));
    let functors = enumerate_double_functors(&ad, &bd, budget)?;
    let nf = functors.len();

    // (source functor, target functor, data)
    let mut trans: Vec<(usize, usize, PseudoTransformation2)> = Vec::new();
    let mut trans_index: HashMap<(usize, usize, PseudoTransformation2), usize> = HashMap::new();
    for i in 0..nf {
        for j in 0..nf {
            for t in pseudo_transformations(a, b, &functors[i], &functors[j], budget)? {
                trans_index.insert((i, j, t.clone()), trans.len());
                trans.push((i, j, t));
            }
        }
    }
    let identity_of = |i: usize| -> usize {
        let f = &functors[i];
        let t = PseudoTransformation2 {
            components: (0..a.num_objects()).map(|o| b.identity(f.obj(o))).collect(),
            cells: (0..a.num_morphisms()).map(|m| b.identity_cell(f.hmor(m))).collect(),
        };
        trans_index[&(i, i, t)]
    };

    // (source transformation, target transformation, components)
    let mut mods: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut mod_index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (x, (fi, gi, h)) in trans.iter().enumerate() {
        for (y, (fj, gj, k)) in trans.iter().enumerate() {
            if (fi, gi) != (fj, gj) {
                continue;
            }
            for m in modifications(a, b, &functors[*fi], &functors[*gi], h, k, budget)? {
                mod_index.insert((x, y, m.clone()), mods.len());
                mods.push((x, y, m));
            }
        }
    }

    let obj_name = |i: usize| format!("F{}", i + 1);
    let mor_name = |i: usize| format!("t{}", i + 1);
    let cell_name = |i: usize| format!("m{}", i + 1);
    let mut bl = DoubleCategoryBuilder::new(format!("Ps[{},{}]", a.name(), b.name()));
    for i in 0..nf {
        bl.object(&obj_name(i));
    }
    for (x, (i, j, _)) in trans.iter().enumerate() {
        bl.hmor(&mor_name(x), &obj_name(*i), &obj_name(*j));
    }
    for (z, (x, y, _)) in mods.iter().enumerate() {
        bl.globular(&cell_name(z), &mor_name(*x), &mor_name(*y));
    }
    for i in 0..nf {
        bl.id_h(&obj_name(i), &mor_name(identity_of(i)));
    }
    for (x, (_, _, h)) in trans.iter().enumerate() {
        let id = mod_index[&(x, x, h.components.iter().map(|&c| b.identity_cell(c)).collect())];
        bl.e_sq(&mor_name(x), &cell_name(id));
    }

    let compose_t = |h: &PseudoTransformation2, k: &PseudoTransformation2| -> Option<PseudoTransformation2> {
        let components: Option<Vec<usize>> =
            h.components.iter().zip(&k.components).map(|(&x, &y)| b.compose(y, x)).collect();
        let cells: Option<Vec<usize>> = a
            .morphisms()
            .iter()
            .enumerate()
            .map(|(m, arrow)| {
                let upper = b.hcomp(k.cells[m], b.identity_cell(h.components[arrow.src]))?;
                let lower = b.hcomp(b.identity_cell(k.components[arrow.tgt]), h.cells[m])?;
                b.vcomp(lower, upper)
            })
            .collect();
        Some(PseudoTransformation2 { components: components?, cells: cells? })
    };
    let mut hcomp_t: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, (i, j, h)) in trans.iter().enumerate() {
        for (y, (j2, l, k)) in trans.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let kh = compose_t(h, k).expect("composites exist in a 2-category");
            let z = trans_index[&(*i, *l, kh)];
            hcomp_t.insert((y, x), z);
            bl.hcomp_m(&mor_name(y), &mor_name(x), &mor_name(z));
        }
    }
    for (z1, (x1, y1, m1)) in mods.iter().enumerate() {
        for (z2, (x2, y2, m2)) in mods.iter().enumerate() {
            if y1 == x2 {
                let c: Vec<usize> = m1.iter().zip(m2).map(|(&p, &q)| b.vcomp(q, p).expect("vertical composite")).collect();
                let z = mod_index[&(*x1, *y2, c)];
                bl.vcomp_sq(&cell_name(z2), &cell_name(z1), &cell_name(z));
            }
            if trans[*x1].1 == trans[*x2].0 {
                let c: Vec<usize> =
                    m1.iter().zip(m2).map(|(&p, &q)| b.hcomp(q, p).expect("horizontal composite")).collect();
                let (src, tgt) = (hcomp_t[&(*x2, *x1)], hcomp_t[&(*y2, *y1)]);
                let z = mod_index[&(src, tgt, c)];
                bl.hcomp_sq(&cell_name(z2), &cell_name(z1), &cell_name(z));
            }
        }
    }
    TwoCategory::from_double(bl.build()?)
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::super::{discrete_2cat, validate_two_category};
    use super::*;
    use crate::dbl::iso::are_isomorphic;
    use crate::dbl::ops::{coproduct, product};

    #[test]
    fn ps_from_one_is_the_target() {
        for b in [discrete_2cat(&two()), discrete_2cat(&iso()), cinv()] {
            let p = pseudo_hom_2cat(&discrete_2cat(&one()), &b, &Budget::default()).unwrap();
            assert!(validate_two_category(&p).is_valid());
            assert!(are_isomorphic(p.as_double(), b.as_double(), &Budget::default()).unwrap(), "{}", b.name());
        }
    }

    #[test]
    fn ps_from_two_points_is_a_product() {
        let oo = coproduct(one().as_double(), one().as_double()).unwrap();
        let oo = TwoCategory::from_double(oo).unwrap();
        let b = cinv();
        let p = pseudo_hom_2cat(&oo, &b, &Budget::default()).unwrap();
        let bb = product(b.as_double(), b.as_double()).unwrap();
        assert!(are_isomorphic(p.as_double(), &bb, &Budget::default()).unwrap());
    }

    #[test]
    fn ps_of_two_into_two_has_three_objects() {
        let d2 = discrete_2cat(&two());
        let p = pseudo_hom_2cat(&d2, &d2, &Budget::default()).unwrap();
        assert_eq!(p.num_objects(), 3);
        assert!(validate_two_category(&p).is_valid());
    }
}
