//! The double categories [A, B] (strict transformations) and [A, B]_ps
//! (pseudo transformations) by exhaustive search.
//!
//! Vertical transformations are found as horizontal transformations between
//! the transposed functors; the cell indices of a double category and its
//! transpose agree, so their data is used unchanged.

use std::collections::HashMap;
use std::sync::Arc;

use crate::dbl::enumerate::enumerate_double_functors;
use crate::dbl::ops::transpose;
use crate::dbl::{DoubleCategory, DoubleCategoryBuilder, DoubleFunctor};
use crate::error::{Error, Result};
use crate::search::{all, Budget, Problem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    /// Transformations natural on the nose.
    Strict,
    /// Naturality in horizontal morphisms up to vertically invertible
    /// squares (horizontal transformations), dually for vertical ones.
    Pseudo,
}

/// A horizontal transformation `h: F ⇒ G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transformation {
    /// `h_A: FA -> GA` for each object.
    pub components: Vec<usize>,
    /// `h_u: [h_A; h_A'; Fu; Gu]` for each vertical morphism.
    pub naturality: Vec<usize>,
    /// `h_a: Ga∘h_A ⇒ h_B∘Fa` for each horizontal morphism, vertically
    /// invertible; a vertical identity square in the strict case.
    pub pseudo: Vec<usize>,
}

/// A modification in `[A, B]`, as indices into the transformation lists
/// of its [`hom_double_category`] and one square per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modification {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub components: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Check {
    VComp(usize, usize, usize),
    HComp(usize, usize, usize),
    Natural(usize),
}

struct TransformationSearch<'a> {
    f: &'a DoubleFunctor,
    g: &'a DoubleFunctor,
    kind: HomKind,
    checks: Vec<Vec<Check>>,
}

impl TransformationSearch<'_> {
    fn a(&self) -> &DoubleCategory {
        self.f.source()
    }
    fn b(&self) -> &DoubleCategory {
        self.f.target()
    }

    fn holds(&self, check: Check, v: &[usize]) -> bool {
        let (b, f, g) = (self.b(), self.f, self.g);
        let no = self.a().num_objects();
        let nat = |u: usize| v[no + u];
        let ps = |m: usize| v[no + self.a().num_vmors() + m];
        match check {
            Check::VComp(y, x, yx) => b.vcomp_sq(nat(y), nat(x)) == Some(nat(yx)),
            Check::HComp(y, x, yx) => {
                let lower = b.hcomp_sq(ps(y), b.e_sq(f.hmor(x)));
                let upper = b.hcomp_sq(b.e_sq(g.hmor(y)), ps(x));
                match (lower, upper) {
                    (Some(l), Some(u)) => b.vcomp_sq(l, u) == Some(ps(yx)),
                    _ => false,
                }
            }
            Check::Natural(s) => {
                let q = self.a().square(s);
                let lhs = b.hcomp_sq(g.sq(s), nat(q.left)).and_then(|x| b.vcomp_sq(ps(q.bottom), x));
                let rhs = b.hcomp_sq(nat(q.right), f.sq(s)).and_then(|x| b.vcomp_sq(x, ps(q.top)));
                lhs.is_some() && lhs == rhs
            }
        }
    }
}

impl Problem for TransformationSearch<'_> {
    fn len(&self) -> usize {
        let a = self.a();
        a.num_objects() + a.num_vmors() + a.num_hmors()
    }

    fn candidates(&self, var: usize, v: &[usize]) -> Vec<usize> {
        let (a, b, f, g) = (self.a(), self.b(), self.f, self.g);
        let (no, nv) = (a.num_objects(), a.num_vmors());
        if var < no {
            return b.hom_h(f.obj(var), g.obj(var)).to_vec();
        }
        if var < no + nv {
            let u = var - no;
            let arrow = a.vmor(u);
            if a.is_identity_vmor(u) {
                return vec![b.e_sq(v[arrow.src])];
            }
            return b.squares_with(v[arrow.src], v[arrow.tgt], f.vmor(u), g.vmor(u)).to_vec();
        }
        let m = var - no - nv;
        let arrow = a.hmor(m);
        if a.is_identity_hmor(m) {
            return vec![b.e_sq(v[arrow.src])];
        }
        let (Some(top), Some(bottom)) = (b.hcomp_m(g.hmor(m), v[arrow.src]), b.hcomp_m(v[arrow.tgt], f.hmor(m))) else {
            return vec![];
        };
        match self.kind {
            HomKind::Strict if top == bottom => vec![b.e_sq(top)],
            HomKind::Strict => vec![],
            HomKind::Pseudo => b
                .squares_with(top, bottom, b.id_v(f.obj(arrow.src)), b.id_v(g.obj(arrow.tgt)))
                .iter()
                .copied()
                .filter(|&s| b.vertical_inverse(s).is_some())
                .collect(),
        }
    }

    fn accept(&self, var: usize, v: &[usize]) -> bool {
        self.checks[var].iter().all(|&c| self.holds(c, v))
    }
}

/// All horizontal transformations `f ⇒ g` of the given kind.
pub fn horizontal_transformations(
    f: &DoubleFunctor,
    g: &DoubleFunctor,
    kind: HomKind,
    budget: &Budget,
) -> Result<Vec<Transformation>> {
    let a = f.source();
    let (no, nv) = (a.num_objects(), a.num_vmors());
    let mut checks = vec![Vec::new(); no + nv + a.num_hmors()];
    for ((y, x), yx) in a.vcomp_m_entries() {
        checks[no + y.max(x).max(yx)].push(Check::VComp(y, x, yx));
    }
    for ((y, x), yx) in a.hcomp_m_entries() {
        checks[no + nv + y.max(x).max(yx)].push(Check::HComp(y, x, yx));
    }
    for (s, q) in a.squares().iter().enumerate() {
        checks[no + nv + q.top.max(q.bottom)].push(Check::Natural(s));
    }
    let p = TransformationSearch { f, g, kind, checks };
    Ok(all(&p, budget, "transformation search")?
        .into_iter()
        .map(|v| Transformation {
            components: v[..no].to_vec(),
            naturality: v[no..no + nv].to_vec(),
            pseudo: v[no + nv..].to_vec(),
        })
        .collect())
}

/// The same functor between the transposed double categories.
pub fn transpose_functor(f: &DoubleFunctor, at: &Arc<DoubleCategory>, bt: &Arc<DoubleCategory>) -> DoubleFunctor {
    let [o, h, v, s] = f.maps().clone();
    DoubleFunctor::new(format!("{}T", f.name()), at.clone(), bt.clone(), [o, v, h, s])
        .expect("transposition preserves boundaries")
}

fn identity_transformation(f: &DoubleFunctor) -> Transformation {
    let (a, b) = (f.source(), f.target());
    Transformation {
        components: (0..a.num_objects()).map(|o| b.id_h(f.obj(o))).collect(),
        naturality: (0..a.num_vmors()).map(|u| b.id_sq(f.vmor(u))).collect(),
        pseudo: (0..a.num_hmors()).map(|m| b.e_sq(f.hmor(m))).collect(),
    }
}

/// `k ∘ h` for `h: F ⇒ G`, `k: G ⇒ H`.
fn compose(a: &DoubleCategory, b: &DoubleCategory, h: &Transformation, k: &Transformation) -> Option<Transformation> {
    let components = h.components.iter().zip(&k.components).map(|(&x, &y)| b.hcomp_m(y, x)).collect::<Option<_>>()?;
    let naturality =
        h.naturality.iter().zip(&k.naturality).map(|(&x, &y)| b.hcomp_sq(y, x)).collect::<Option<_>>()?;
    let pseudo = a
        .hmors()
        .iter()
        .enumerate()
        .map(|(m, arrow)| {
            let upper = b.hcomp_sq(k.pseudo[m], b.e_sq(h.components[arrow.src]))?;
            let lower = b.hcomp_sq(b.e_sq(k.components[arrow.tgt]), h.pseudo[m])?;
            b.vcomp_sq(lower, upper)
        })
        .collect::<Option<_>>()?;
    Some(Transformation { components, naturality, pseudo })
}

struct ModificationSearch<'a> {
    a: &'a DoubleCategory,
    b: &'a DoubleCategory,
    h: &'a Transformation,
    k: &'a Transformation,
    r: &'a Transformation,
    s: &'a Transformation,
    /// Horizontal and vertical morphisms whose condition closes at each object.
    checks: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Problem for ModificationSearch<'_> {
    fn len(&self) -> usize {
        self.a.num_objects()
    }

    fn candidates(&self, var: usize, _v: &[usize]) -> Vec<usize> {
        let (h, k, r, s) = (self.h, self.k, self.r, self.s);
        self.b.squares_with(h.components[var], k.components[var], r.components[var], s.components[var]).to_vec()
    }

    fn accept(&self, var: usize, mu: &[usize]) -> bool {
        let (a, b, h, k, r, s) = (self.a, self.b, self.h, self.k, self.r, self.s);
        let (hm, vm) = &self.checks[var];
        hm.iter().all(|&m| {
            let arrow = a.hmor(m);
            let lhs = b.hcomp_sq(s.naturality[m], mu[arrow.src]).and_then(|x| b.vcomp_sq(k.pseudo[m], x));
            let rhs = b.hcomp_sq(mu[arrow.tgt], r.naturality[m]).and_then(|x| b.vcomp_sq(x, h.pseudo[m]));
            lhs.is_some() && lhs == rhs
        }) && vm.iter().all(|&u| {
            let arrow = a.vmor(u);
            let lhs = b.vcomp_sq(k.naturality[u], mu[arrow.src]).and_then(|x| b.hcomp_sq(s.pseudo[u], x));
            let rhs = b.vcomp_sq(mu[arrow.tgt], h.naturality[u]).and_then(|x| b.hcomp_sq(x, r.pseudo[u]));
            lhs.is_some() && lhs == rhs
        })
    }
}

/// Modifications with horizontal boundaries `h: F ⇒ G`, `k: F' ⇒ G'` and
/// vertical boundaries `r: F ⇒ F'`, `s: G ⇒ G'`. The vertical
/// transformations are given in transposed form.
pub fn modifications(
    a: &DoubleCategory,
    b: &DoubleCategory,
    [h, k, r, s]: [&Transformation; 4],
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let mut checks = vec![(Vec::new(), Vec::new()); a.num_objects()];
    for (m, arrow) in a.hmors().iter().enumerate() {
        checks[arrow.src.max(arrow.tgt)].0.push(m);
    }
    for (u, arrow) in a.vmors().iter().enumerate() {
        checks[arrow.src.max(arrow.tgt)].1.push(u);
    }
    let p = ModificationSearch { a, b, h, k, r, s, checks };
    all(&p, budget, "modification search")
}

/// [A, B] with double functors as objects, horizontal and vertical
/// transformations of the given kind, and modifications. Cells are named
/// `F1.., h1.., r1.., m1..` in enumeration order.
pub fn hom_double_category(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    kind: HomKind,
    budget: &Budget,
) -> Result<DoubleCategory> {
    let at = Arc::new(transpose(a)?);
    let bt = Arc::new(transpose(b)?);
    let functors = enumerate_double_functors(a, b, budget)?;
    let transposed: Vec<DoubleFunctor> = functors.iter().map(|f| transpose_functor(f, &at, &bt)).collect();
    let nf = functors.len();

    let mut horizontal: Vec<(usize, usize, Transformation)> = Vec::new();
    let mut vertical: Vec<(usize, usize, Transformation)> = Vec::new();
    for i in 0..nf {
        for j in 0..nf {
            for t in horizontal_transformations(&functors[i], &functors[j], kind, budget)? {
                horizontal.push((i, j, t));
            }
            for t in horizontal_transformations(&transposed[i], &transposed[j], kind, budget)? {
                vertical.push((i, j, t));
            }
        }
    }
    let h_index: HashMap<&(usize, usize, Transformation), usize> =
        horizontal.iter().enumerate().map(|(x, t)| (t, x)).collect();
    let v_index: HashMap<&(usize, usize, Transformation), usize> =
        vertical.iter().enumerate().map(|(x, t)| (t, x)).collect();
    let inconsistent = |what: &str| Error::InternalInconsistency(format!("hom [{}, {}]: {what}", a.name(), b.name()));
    let lookup = |index: &HashMap<&(usize, usize, Transformation), usize>, key: (usize, usize, Transformation), what: &str| {
        index.get(&key).copied().ok_or_else(|| inconsistent(what))
    };

    let id_h: Vec<usize> = (0..nf)
        .map(|i| lookup(&h_index, (i, i, identity_transformation(&functors[i])), "identity horizontal transformation"))
        .collect::<Result<_>>()?;
    let id_v: Vec<usize> = (0..nf)
        .map(|i| lookup(&v_index, (i, i, identity_transformation(&transposed[i])), "identity vertical transformation"))
        .collect::<Result<_>>()?;

    let mut mods: Vec<Modification> = Vec::new();
    for (x, (fi, gi, h)) in horizontal.iter().enumerate() {
        for (z, (_, fj, r)) in vertical.iter().enumerate().filter(|(_, t)| t.0 == *fi) {
            for (w, (_, gj, s)) in vertical.iter().enumerate().filter(|(_, t)| t.0 == *gi) {
                for (y, (_, _, k)) in horizontal.iter().enumerate().filter(|(_, t)| (t.0, t.1) == (*fj, *gj)) {
                    for components in modifications(a, b, [h, k, r, s], budget)? {
                        mods.push(Modification { top: x, bottom: y, left: z, right: w, components });
                    }
                }
            }
        }
    }
    let m_index: HashMap<&Modification, usize> = mods.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let find_mod = |m: Modification, what: &str| m_index.get(&m).copied().ok_or_else(|| inconsistent(what));

    let obj = |i: usize| format!("F{}", i + 1);
    let hn = |i: usize| format!("h{}", i + 1);
    let vn = |i: usize| format!("r{}", i + 1);
    let mn = |i: usize| format!("m{}", i + 1);
    let prefix = if kind == HomKind::Strict { "Hom" } else { "PsHom" };
    let mut bl = DoubleCategoryBuilder::new(format!("{prefix}({},{})", a.name(), b.name()));
    for i in 0..nf {
        bl.object(&obj(i));
    }
    for (x, (i, j, _)) in horizontal.iter().enumerate() {
        bl.hmor(&hn(x), &obj(*i), &obj(*j));
    }
    for (x, (i, j, _)) in vertical.iter().enumerate() {
        bl.vmor(&vn(x), &obj(*i), &obj(*j));
    }
    for (z, m) in mods.iter().enumerate() {
        bl.square(&mn(z), &hn(m.top), &hn(m.bottom), &vn(m.left), &vn(m.right));
    }
    for i in 0..nf {
        bl.id_h(&obj(i), &hn(id_h[i]));
        bl.id_v(&obj(i), &vn(id_v[i]));
    }
    for (x, (i, j, h)) in horizontal.iter().enumerate() {
        let components = h.components.iter().map(|&c| b.e_sq(c)).collect();
        let m = find_mod(Modification { top: x, bottom: x, left: id_v[*i], right: id_v[*j], components }, "identity modification")?;
        bl.e_sq(&hn(x), &mn(m));
    }
    for (x, (i, j, r)) in vertical.iter().enumerate() {
        let components = r.components.iter().map(|&c| b.id_sq(c)).collect();
        let m = find_mod(Modification { top: id_h[*i], bottom: id_h[*j], left: x, right: x, components }, "identity modification")?;
        bl.id_sq(&vn(x), &mn(m));
    }

    let mut h_comp: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, (i, j, h)) in horizontal.iter().enumerate() {
        for (y, (_, l, k)) in horizontal.iter().enumerate().filter(|(_, t)| t.0 == *j) {
            let c = compose(a, b, h, k).ok_or_else(|| inconsistent("missing composite in horizontal composition"))?;
            let z = lookup(&h_index, (*i, *l, c), "horizontal composite transformation")?;
            h_comp.insert((y, x), z);
            bl.hcomp_m(&hn(y), &hn(x), &hn(z));
        }
    }
    let mut v_comp: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, (i, j, r)) in vertical.iter().enumerate() {
        for (y, (_, l, s)) in vertical.iter().enumerate().filter(|(_, t)| t.0 == *j) {
            let c = compose(&at, &bt, r, s).ok_or_else(|| inconsistent("missing composite in vertical composition"))?;
            let z = lookup(&v_index, (*i, *l, c), "vertical composite transformation")?;
            v_comp.insert((y, x), z);
            bl.vcomp_m(&vn(y), &vn(x), &vn(z));
        }
    }
    for (x, mu) in mods.iter().enumerate() {
        for (y, nu) in mods.iter().enumerate() {
            if nu.left == mu.right {
                let components = mu
                    .components
                    .iter()
                    .zip(&nu.components)
                    .map(|(&p, &q)| b.hcomp_sq(q, p))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| inconsistent("missing square composite"))?;
                let m = Modification {
                    top: h_comp[&(nu.top, mu.top)],
                    bottom: h_comp[&(nu.bottom, mu.bottom)],
                    left: mu.left,
                    right: nu.right,
                    components,
                };
                bl.hcomp_sq(&mn(y), &mn(x), &mn(find_mod(m, "horizontal composite modification")?));
            }
            if nu.top == mu.bottom {
                let components = mu
                    .components
                    .iter()
                    .zip(&nu.components)
                    .map(|(&p, &q)| b.vcomp_sq(q, p))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| inconsistent("missing square composite"))?;
                let m = Modification {
                    top: mu.top,
                    bottom: nu.bottom,
                    left: v_comp[&(nu.left, mu.left)],
                    right: v_comp[&(nu.right, mu.right)],
                    components,
                };
                bl.vcomp_sq(&mn(y), &mn(x), &mn(find_mod(m, "vertical composite modification")?));
            }
        }
    }
    bl.build()
}

/// [A, B]: double functors, strict horizontal and vertical natural
/// transformations, and modifications.
pub fn internal_hom(a: &Arc<DoubleCategory>, b: &Arc<DoubleCategory>, budget: &Budget) -> Result<DoubleCategory> {
    hom_double_category(a, b, HomKind::Strict, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{underlying_horizontal, vertical_morphism_2cat};
    use crate::corpus::*;
    use crate::dbl::iso::are_isomorphic;
    use crate::dbl::validate::validate_double_category;

    fn hom(a: DoubleCategory, b: DoubleCategory) -> DoubleCategory {
        internal_hom(&Arc::new(a), &Arc::new(b), &Budget::default()).unwrap()
    }

    #[test]
    fn hom_from_point_is_target() {
        for b in [sq(), two_v(), cinv_h()] {
            let h = hom(one(), b.clone());
            assert!(validate_double_category(&h).is_valid(), "{}", b.name());
            assert!(are_isomorphic(&h, &b, &Budget::default()).unwrap(), "{}", b.name());
        }
    }

    #[test]
    fn hom_of_vertical_arrow_is_discrete() {
        let h = hom(two_v(), two_v());
        assert_eq!((h.num_objects(), h.num_hmors(), h.num_vmors()), (3, 3, 6));
        let hh = underlying_horizontal(&h);
        assert!(are_isomorphic(hh.as_double(), vertical_morphism_2cat(&two_v()).unwrap().as_double(), &Budget::default()).unwrap());
    }

    #[test]
    fn vertical_arrow_hom_matches_v() {
        for a in [sq(), cinv_h(), d_sq()] {
            let hh = underlying_horizontal(&hom(two_v(), a.clone()));
            let v = vertical_morphism_2cat(&a).unwrap();
            assert!(are_isomorphic(hh.as_double(), v.as_double(), &Budget::default()).unwrap(), "{}", a.name());
        }
    }

    #[test]
    fn pseudo_hom_is_valid() {
        let h = hom_double_category(&Arc::new(two_h()), &Arc::new(cinv_h()), HomKind::Pseudo, &Budget::default()).unwrap();
        assert!(validate_double_category(&h).is_valid());
        // strict transformations are among the pseudo ones
        let s = hom(two_h(), cinv_h());
        assert!(h.num_hmors() >= s.num_hmors());
    }
}
