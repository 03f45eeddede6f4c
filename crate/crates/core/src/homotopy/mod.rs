//! Horizontal pseudo transformations and equivalences, horizontally pseudo
//! double functors, and homotopy inverses of double biequivalences.
//!
//! The verifiers here evaluate every coherence law with the pasting
//! evaluator; the searches in [`crate::construct`] use the tables directly.

mod functor;
mod strict;
mod whitehead;

pub use functor::HorizontallyPseudoDoubleFunctor;
pub use strict::{hom_adjunction_horizontal, hom_adjunction_vertical, strict_homotopy_inverse, StrictHomotopyInverse};
pub use whitehead::{verify_whitehead_data, whitehead_inverse, WhiteheadData};

use std::sync::Arc;

use serde::Serialize;

pub use crate::construct::{HomKind, Transformation as HorizontalTransformation};
use crate::construct::{hom_double_category, horizontal_transformations};
use crate::dbl::{DoubleCategory, DoubleFunctor, Sort};
use crate::equiv::{
    find_horizontal_equivalence, find_weak_horizontal_inverse, promote_to_adjoint, triangle_identities,
    verify_equivalence, verify_weak_inverse, EquivalenceWitness, WeakInverseWitness,
};
use crate::error::Result;
use crate::paste::{cell, equal, h, is_vertical_inverse, v};
use crate::report::ValidationReport;
use crate::search::Budget;

/// [A, B]_ps.
pub fn pseudo_hom(a: &Arc<DoubleCategory>, b: &Arc<DoubleCategory>, budget: &Budget) -> Result<DoubleCategory> {
    hom_double_category(a, b, HomKind::Pseudo, budget)
}

/// Checks `t: p ⇒ q` against every law of a horizontal transformation of
/// the given kind.
pub fn verify_transformation(
    p: &HorizontallyPseudoDoubleFunctor,
    q: &HorizontallyPseudoDoubleFunctor,
    t: &HorizontalTransformation,
    kind: HomKind,
) -> ValidationReport {
    let (a, b) = (p.source(), p.target());
    let mut report = ValidationReport::default();
    let sizes = (t.components.len(), t.naturality.len(), t.pseudo.len());
    if sizes != (a.num_objects(), a.num_vmors(), a.num_hmors()) {
        report.push("transformation shape", vec![]);
        return report;
    }
    let mut fail = |law: &str, sort: Sort, x: usize| report.push(law, vec![a.cell_ref(sort, x)]);

    for x in 0..a.num_objects() {
        let m = b.hmor(t.components[x]);
        if (m.src, m.tgt) != (p.obj(x), q.obj(x)) {
            fail("component boundary", Sort::Object, x);
        }
    }
    for (u, arrow) in a.vmors().iter().enumerate() {
        let s = b.square(t.naturality[u]);
        let expect = (t.components[arrow.src], t.components[arrow.tgt], p.vmor(u), q.vmor(u));
        if (s.top, s.bottom, s.left, s.right) != expect {
            fail("naturality boundary", Sort::VMor, u);
        }
        if a.is_identity_vmor(u) && t.naturality[u] != b.e_sq(t.components[arrow.src]) {
            fail("vertical unit", Sort::VMor, u);
        }
    }
    for ((y, x), yx) in a.vcomp_m_entries() {
        if !equal(b, &v(cell(t.naturality[y]), cell(t.naturality[x])), &cell(t.naturality[yx])) {
            fail("vertical functoriality", Sort::VMor, yx);
        }
    }
    for (m, arrow) in a.hmors().iter().enumerate() {
        let s = t.pseudo[m];
        let q_sq = b.square(s);
        let top = b.hcomp_m(q.hmor(m), t.components[arrow.src]);
        let bottom = b.hcomp_m(t.components[arrow.tgt], p.hmor(m));
        let sides = (b.id_v(p.obj(arrow.src)), b.id_v(q.obj(arrow.tgt)));
        if (Some(q_sq.top), Some(q_sq.bottom), q_sq.left, q_sq.right) != (top, bottom, sides.0, sides.1) {
            fail("pseudo boundary", Sort::HMor, m);
            continue;
        }
        let invertible = b.vertical_inverse(s).is_some_and(|i| is_vertical_inverse(b, s, i));
        let ok = match kind {
            HomKind::Strict => q_sq.top == q_sq.bottom && s == b.e_sq(q_sq.top),
            HomKind::Pseudo => invertible,
        };
        if !ok {
            fail("pseudo invertibility", Sort::HMor, m);
        }
        if a.is_identity_hmor(m) && s != b.e_sq(t.components[arrow.src]) {
            fail("horizontal unit", Sort::HMor, m);
        }
    }
    if !report.is_valid() {
        return report;
    }
    let mut fail = |law: &str, sort: Sort, x: usize| report.push(law, vec![a.cell_ref(sort, x)]);
    for ((y, x), yx) in a.hcomp_m_entries() {
        let (ax, ay) = (a.hmor(x), a.hmor(y));
        let lhs = v(
            h(cell(b.e_sq(t.components[ay.tgt])), p.compositor_paste(y, x)),
            v(h(cell(t.pseudo[y]), cell(b.e_sq(p.hmor(x)))), h(cell(b.e_sq(q.hmor(y))), cell(t.pseudo[x]))),
        );
        let rhs = v(cell(t.pseudo[yx]), h(q.compositor_paste(y, x), cell(b.e_sq(t.components[ax.src]))));
        if !equal(b, &lhs, &rhs) {
            fail("horizontal functoriality", Sort::HMor, yx);
        }
    }
    for (s, sq) in a.squares().iter().enumerate() {
        let lhs = v(cell(t.pseudo[sq.bottom]), h(cell(q.sq(s)), cell(t.naturality[sq.left])));
        let rhs = v(h(cell(t.naturality[sq.right]), cell(p.sq(s))), cell(t.pseudo[sq.top]));
        if !equal(b, &lhs, &rhs) {
            fail("naturality in squares", Sort::Square, s);
        }
    }
    report
}

/// A horizontal pseudo natural equivalence with its witnesses: equivalence
/// data per object and a weak inverse per vertical morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoEquivalence {
    #[serde(skip)]
    pub transformation: HorizontalTransformation,
    pub components: Vec<EquivalenceWitness>,
    pub squares: Vec<WeakInverseWitness>,
    /// Every component witness satisfies the triangle identities.
    pub adjoint: bool,
}

/// Adds witnesses to `t`, promoting component data to adjoint data when
/// `adjoint` is set. `None` if some component or square is not invertible.
pub fn equivalence_witnesses_for(
    b: &DoubleCategory,
    t: &HorizontalTransformation,
    adjoint: bool,
) -> Result<Option<PseudoEquivalence>> {
    let mut components = Vec::with_capacity(t.components.len());
    for &m in &t.components {
        let Some(w) = find_horizontal_equivalence(b, m) else { return Ok(None) };
        components.push(if adjoint { promote_to_adjoint(b, &w)?.data } else { w });
    }
    let mut squares = Vec::with_capacity(t.naturality.len());
    for &s in &t.naturality {
        let Some(w) = find_weak_horizontal_inverse(b, s) else { return Ok(None) };
        squares.push(w);
    }
    Ok(Some(PseudoEquivalence { transformation: t.clone(), components, squares, adjoint }))
}

pub fn verify_pseudo_equivalence(
    p: &HorizontallyPseudoDoubleFunctor,
    q: &HorizontallyPseudoDoubleFunctor,
    e: &PseudoEquivalence,
) -> ValidationReport {
    let (a, b) = (p.source(), p.target());
    let t = &e.transformation;
    let mut report = verify_transformation(p, q, t, HomKind::Pseudo);
    if !report.is_valid() {
        return report;
    }
    if e.components.len() != t.components.len() || e.squares.len() != t.naturality.len() {
        report.push("witness shape", vec![]);
        return report;
    }
    for (x, w) in e.components.iter().enumerate() {
        let adjoint_ok = !e.adjoint || triangle_identities(b, w) == (true, true);
        if w.a != t.components[x] || !verify_equivalence(b, w) || !adjoint_ok {
            report.push("component equivalence", vec![a.cell_ref(Sort::Object, x)]);
        }
    }
    for (u, w) in e.squares.iter().enumerate() {
        if w.alpha != t.naturality[u] || !verify_weak_inverse(b, w) {
            report.push("weakly invertible naturality square", vec![a.cell_ref(Sort::VMor, u)]);
        }
    }
    report
}

/// The first horizontal pseudo natural adjoint equivalence `f ≃ g`, in
/// enumeration order of transformations.
pub fn find_pseudo_equivalence(f: &DoubleFunctor, g: &DoubleFunctor, budget: &Budget) -> Result<Option<PseudoEquivalence>> {
    for t in horizontal_transformations(f, g, HomKind::Pseudo, budget)? {
        if let Some(e) = equivalence_witnesses_for(f.target(), &t, true)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::dbl::enumerate::enumerate_double_functors;

    fn strict(f: &DoubleFunctor) -> HorizontallyPseudoDoubleFunctor {
        HorizontallyPseudoDoubleFunctor::from_strict(f)
    }

    fn identity_transformation(f: &DoubleFunctor) -> HorizontalTransformation {
        let (a, b) = (f.source(), f.target());
        HorizontalTransformation {
            components: (0..a.num_objects()).map(|o| b.id_h(f.obj(o))).collect(),
            naturality: (0..a.num_vmors()).map(|u| b.id_sq(f.vmor(u))).collect(),
            pseudo: (0..a.num_hmors()).map(|m| b.e_sq(f.hmor(m))).collect(),
        }
    }

    #[test]
    fn identity_transformations_verify() {
        for f in functors() {
            let t = identity_transformation(&f);
            let p = strict(&f);
            assert!(verify_transformation(&p, &p, &t, HomKind::Strict).is_valid(), "{}", f.name());
            assert!(verify_transformation(&p, &p, &t, HomKind::Pseudo).is_valid(), "{}", f.name());
        }
    }

    #[test]
    fn perturbed_square_is_reported() {
        let f = i4();
        let mut t = identity_transformation(&f);
        let b = f.target();
        let u = f.source().find(Sort::VMor, "u").unwrap();
        t.naturality[u] = b.find(Sort::Square, "alpha").unwrap();
        let p = strict(&f);
        let r = verify_transformation(&p, &p, &t, HomKind::Strict);
        assert!(r.has_law("naturality boundary"));
    }

    #[test]
    fn searched_transformations_verify() {
        let b = Budget::default();
        let (a, t) = (Arc::new(two_h()), Arc::new(cinv_h()));
        let fs = enumerate_double_functors(&a, &t, &b).unwrap();
        for f in &fs {
            for g in &fs {
                for kind in [HomKind::Strict, HomKind::Pseudo] {
                    for x in horizontal_transformations(f, g, kind, &b).unwrap() {
                        assert!(verify_transformation(&strict(f), &strict(g), &x, kind).is_valid());
                    }
                }
            }
        }
    }

    #[test]
    fn whiskering_preserves_validity() {
        let b = Budget::default();
        let (a, t) = (Arc::new(two_h()), Arc::new(cinv_h()));
        let fs = enumerate_double_functors(&a, &t, &b).unwrap();
        let (f, g) = (&fs[0], &fs[1]);
        let x = horizontal_transformations(f, g, HomKind::Pseudo, &b).unwrap().remove(0);
        // precompose with the two endpoints of the arrow
        let ends = i2();
        let (fe, ge) = (ends.then(f).unwrap(), ends.then(g).unwrap());
        let src = ends.source();
        let whiskered = HorizontalTransformation {
            components: (0..src.num_objects()).map(|o| x.components[ends.obj(o)]).collect(),
            naturality: (0..src.num_vmors()).map(|u| x.naturality[ends.vmor(u)]).collect(),
            pseudo: (0..src.num_hmors()).map(|m| x.pseudo[ends.hmor(m)]).collect(),
        };
        assert!(verify_transformation(&strict(&fe), &strict(&ge), &whiskered, HomKind::Pseudo).is_valid());
    }

    #[test]
    fn point_inclusions_into_free_isomorphism_are_equivalent() {
        let b = Budget::default();
        let fs = enumerate_double_functors(&Arc::new(one()), &Arc::new(iso_h()), &b).unwrap();
        assert_eq!(fs.len(), 2);
        let e = find_pseudo_equivalence(&fs[0], &fs[1], &b).unwrap().unwrap();
        assert!(e.adjoint);
        let r = verify_pseudo_equivalence(&strict(&fs[0]), &strict(&fs[1]), &e);
        assert!(r.is_valid(), "{r}");
        assert!(find_pseudo_equivalence(&fs[0], &fs[0], &b).unwrap().is_some());
    }

    #[test]
    fn point_inclusions_into_two_points_are_not() {
        let b = Budget::default();
        let fs = enumerate_double_functors(&Arc::new(one()), &Arc::new(one_one()), &b).unwrap();
        assert!(find_pseudo_equivalence(&fs[0], &fs[1], &b).unwrap().is_none());
    }

    #[test]
    fn pseudo_hom_from_point() {
        let b = Budget::default();
        let p = pseudo_hom(&Arc::new(one()), &Arc::new(cinv_h()), &b).unwrap();
        assert!(crate::dbl::iso::are_isomorphic(&p, &cinv_h(), &b).unwrap());
    }
}
