//! Horizontal equivalences, adjoint promotion and weakly horizontally
//! invertible squares.
//!
//! Searches read the square tables directly; every witness they return is
//! re-checked with the pasting evaluator in [`crate::paste`].

use serde::Serialize;

use crate::dbl::{DoubleCategory, Sort};
use crate::error::{Error, Result};
use crate::paste::{cell, equal, h, is_vertical_inverse, v};
use crate::report::{PropertyReport, Violation};

/// `a: A -> B` with `a′: B -> A`, `η: id_A ⇒ a′∘a` and `ε: a∘a′ ⇒ id_B`,
/// both vertically invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EquivalenceWitness {
    pub a: usize,
    pub a_inv: usize,
    pub eta: usize,
    pub eps: usize,
}

/// Equivalence data satisfying both triangle identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AdjointEquivalenceWitness {
    pub data: EquivalenceWitness,
    pub left_triangle: bool,
    pub right_triangle: bool,
}

/// A weak inverse `β` of `α`, with equivalence data on the top and bottom
/// morphisms of `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeakInverseWitness {
    pub alpha: usize,
    pub beta: usize,
    pub top: EquivalenceWitness,
    pub bottom: EquivalenceWitness,
}

fn invertible(d: &DoubleCategory, s: usize) -> bool {
    d.vertical_inverse(s).is_some()
}

/// Every equivalence witness for `a`, in deterministic order.
pub fn equivalence_witnesses(d: &DoubleCategory, a: usize) -> Vec<EquivalenceWitness> {
    let arrow = d.hmor(a);
    let mut out = Vec::new();
    for &a_inv in d.hom_h(arrow.tgt, arrow.src) {
        let (Some(aa), Some(bb)) = (d.hcomp_m(a_inv, a), d.hcomp_m(a, a_inv)) else { continue };
        let etas: Vec<usize> =
            d.globular_squares(d.id_h(arrow.src), aa).iter().copied().filter(|&s| invertible(d, s)).collect();
        if etas.is_empty() {
            continue;
        }
        for &eps in d.globular_squares(bb, d.id_h(arrow.tgt)).iter().filter(|&&s| invertible(d, s)) {
            out.extend(etas.iter().map(|&eta| EquivalenceWitness { a, a_inv, eta, eps }));
        }
    }
    out.sort_by_key(|w| (w.a_inv, w.eta, w.eps));
    out
}

/// The first equivalence witness for `a`, if `a` is a horizontal
/// equivalence.
pub fn find_horizontal_equivalence(d: &DoubleCategory, a: usize) -> Option<EquivalenceWitness> {
    equivalence_witnesses(d, a).into_iter().next()
}

/// Which horizontal morphisms are equivalences.
pub fn horizontal_equivalences(d: &DoubleCategory) -> Vec<bool> {
    (0..d.num_hmors()).map(|a| find_horizontal_equivalence(d, a).is_some()).collect()
}

/// Re-checks a witness's boundaries and invertibility with the pasting
/// evaluator.
pub fn verify_equivalence(d: &DoubleCategory, w: &EquivalenceWitness) -> bool {
    let arrow = d.hmor(w.a);
    let inv = d.hmor(w.a_inv);
    if inv.src != arrow.tgt || inv.tgt != arrow.src {
        return false;
    }
    let (eta, eps) = (d.square(w.eta), d.square(w.eps));
    let globular = |s: usize| d.is_globular(s);
    globular(w.eta)
        && globular(w.eps)
        && eta.top == d.id_h(arrow.src)
        && Some(eta.bottom) == d.hcomp_m(w.a_inv, w.a)
        && Some(eps.top) == d.hcomp_m(w.a, w.a_inv)
        && eps.bottom == d.id_h(arrow.tgt)
        && [w.eta, w.eps].iter().all(|&s| d.vertical_inverse(s).is_some_and(|i| is_vertical_inverse(d, s, i)))
}

/// `(ε a)·(a η) = e_a` and `(a′ ε)·(η a′) = e_a′`, evaluated by pasting.
pub fn triangle_identities(d: &DoubleCategory, w: &EquivalenceWitness) -> (bool, bool) {
    let (ea, eb) = (cell(d.e_sq(w.a)), cell(d.e_sq(w.a_inv)));
    let left = v(h(cell(w.eps), ea.clone()), h(ea.clone(), cell(w.eta)));
    let right = v(h(eb.clone(), cell(w.eps)), h(cell(w.eta), eb.clone()));
    (equal(d, &left, &ea), equal(d, &right, &eb))
}

/// Replaces `ε` by `ε · (a η⁻¹ a′) · (ε⁻¹ a a′)`, which satisfies both
/// triangle identities. Data that is already adjoint is returned unchanged.
pub fn promote_to_adjoint(d: &DoubleCategory, w: &EquivalenceWitness) -> Result<AdjointEquivalenceWitness> {
    let inconsistent = |what: &str| {
        Error::InternalInconsistency(format!("promoting {} in {}: {what}", d.hmor(w.a).name, d.name()))
    };
    if let (true, true) = triangle_identities(d, w) {
        return Ok(AdjointEquivalenceWitness { data: *w, left_triangle: true, right_triangle: true });
    }
    let eta_inv = d.vertical_inverse(w.eta).ok_or_else(|| inconsistent("eta is not invertible"))?;
    let eps_inv = d.vertical_inverse(w.eps).ok_or_else(|| inconsistent("eps is not invertible"))?;
    let aa = d.hcomp_m(w.a, w.a_inv).ok_or_else(|| inconsistent("a a' is missing"))?;
    let pasted = v(
        cell(w.eps),
        v(
            h(cell(d.e_sq(w.a)), h(cell(eta_inv), cell(d.e_sq(w.a_inv)))),
            h(cell(eps_inv), cell(d.e_sq(aa))),
        ),
    );
    let eps = pasted.eval(d).map_err(|e| inconsistent(&e.to_string()))?;
    let data = EquivalenceWitness { eps, ..*w };
    let (left_triangle, right_triangle) = triangle_identities(d, &data);
    if !(left_triangle && right_triangle && verify_equivalence(d, &data)) {
        return Err(inconsistent("promoted data fails the triangle identities"));
    }
    Ok(AdjointEquivalenceWitness { data, left_triangle, right_triangle })
}

/// The two defining equalities of a weak inverse, from the tables:
/// `(β∘α)·η_a = η_b·id_u` and `id_v·ε_a = ε_b·(α∘β)`.
fn weak_inverse_holds(d: &DoubleCategory, alpha: usize, beta: usize, top: &EquivalenceWitness, bottom: &EquivalenceWitness) -> bool {
    let p = d.square(alpha);
    let first = d.hcomp_sq(beta, alpha).and_then(|x| d.vcomp_sq(x, top.eta));
    let second = d.vcomp_sq(bottom.eta, d.id_sq(p.left));
    let third = d.vcomp_sq(d.id_sq(p.right), top.eps);
    let fourth = d.hcomp_sq(alpha, beta).and_then(|x| d.vcomp_sq(bottom.eps, x));
    first.is_some() && first == second && third.is_some() && third == fourth
}

fn weak_inverse_candidates<'a>(d: &'a DoubleCategory, alpha: usize, top: &EquivalenceWitness, bottom: &EquivalenceWitness) -> &'a [usize] {
    let p = d.square(alpha);
    d.squares_with(top.a_inv, bottom.a_inv, p.right, p.left)
}

/// Searches equivalence data for the top and bottom of `alpha` and then a
/// square `β` with the forced boundary satisfying both equalities.
pub fn find_weak_horizontal_inverse(d: &DoubleCategory, alpha: usize) -> Option<WeakInverseWitness> {
    let p = d.square(alpha);
    let tops = equivalence_witnesses(d, p.top);
    if tops.is_empty() {
        return None;
    }
    let bottoms = equivalence_witnesses(d, p.bottom);
    for top in &tops {
        for bottom in &bottoms {
            for &beta in weak_inverse_candidates(d, alpha, top, bottom) {
                if weak_inverse_holds(d, alpha, beta, top, bottom) {
                    return Some(WeakInverseWitness { alpha, beta, top: *top, bottom: *bottom });
                }
            }
        }
    }
    None
}

/// Which squares are weakly horizontally invertible.
pub fn weakly_invertible_squares(d: &DoubleCategory) -> Vec<bool> {
    let eq = horizontal_equivalences(d);
    (0..d.num_squares())
        .map(|s| {
            let p = d.square(s);
            eq[p.top] && eq[p.bottom] && find_weak_horizontal_inverse(d, s).is_some()
        })
        .collect()
}

/// Re-checks a weak inverse witness with the pasting evaluator.
pub fn verify_weak_inverse(d: &DoubleCategory, w: &WeakInverseWitness) -> bool {
    let (p, q) = (d.square(w.alpha), d.square(w.beta));
    if (q.top, q.bottom, q.left, q.right) != (w.top.a_inv, w.bottom.a_inv, p.right, p.left)
        || w.top.a != p.top
        || w.bottom.a != p.bottom
        || !verify_equivalence(d, &w.top)
        || !verify_equivalence(d, &w.bottom)
    {
        return false;
    }
    let (al, be) = (cell(w.alpha), cell(w.beta));
    equal(d, &v(h(be.clone(), al.clone()), cell(w.top.eta)), &v(cell(w.bottom.eta), cell(d.id_sq(p.left))))
        && equal(d, &v(cell(d.id_sq(p.right)), cell(w.top.eps)), &v(cell(w.bottom.eps), h(al, be)))
}

/// The weak inverse of `alpha` determined by adjoint data on its top and
/// bottom. Exactly one is expected; two or more signals an inconsistent
/// structure.
pub fn unique_weak_inverse(
    d: &DoubleCategory,
    alpha: usize,
    top: &AdjointEquivalenceWitness,
    bottom: &AdjointEquivalenceWitness,
) -> Result<usize> {
    let found: Vec<usize> = weak_inverse_candidates(d, alpha, &top.data, &bottom.data)
        .iter()
        .copied()
        .filter(|&beta| weak_inverse_holds(d, alpha, beta, &top.data, &bottom.data))
        .collect();
    let name = &d.square(alpha).name;
    match found.as_slice() {
        [] => Err(Error::NotInvertible(format!("{name} has no weak inverse for the given adjoint data"))),
        [beta] => Ok(*beta),
        _ => Err(Error::NonUnique(format!("{name} has {} weak inverses for the given adjoint data", found.len()))),
    }
}

/// For every globular square whose top and bottom are horizontal
/// equivalences: weakly horizontally invertible iff vertically invertible.
pub fn check_lemma_220(d: &DoubleCategory) -> PropertyReport {
    let eq = horizontal_equivalences(d);
    let mut report = PropertyReport::default();
    for s in (0..d.num_squares()).filter(|&s| d.is_globular(s)) {
        let p = d.square(s);
        if !(eq[p.top] && eq[p.bottom]) {
            continue;
        }
        report.checked += 1;
        let weak = find_weak_horizontal_inverse(d, s).is_some();
        let vertical = d.vertical_inverse(s).is_some();
        if weak != vertical {
            let law = if weak { "weakly invertible but not vertically invertible" } else { "vertically invertible but not weakly invertible" };
            report.discrepancies.push(Violation { law: law.to_string(), cells: vec![d.cell_ref(Sort::Square, s)] });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    fn find(d: &DoubleCategory, sort: Sort, name: &str) -> usize {
        d.find(sort, name).unwrap()
    }

    #[test]
    fn identities_are_equivalences() {
        let d = sq();
        for o in 0..d.num_objects() {
            let w = find_horizontal_equivalence(&d, d.id_h(o)).unwrap();
            let boxed = d.box_sq(o);
            assert_eq!(w, EquivalenceWitness { a: d.id_h(o), a_inv: d.id_h(o), eta: boxed, eps: boxed });
            assert!(verify_equivalence(&d, &w));
        }
    }

    #[test]
    fn free_isomorphism_is_an_adjoint_equivalence() {
        let d = iso_h();
        let f = find(&d, Sort::HMor, "f");
        let w = find_horizontal_equivalence(&d, f).unwrap();
        assert_eq!(w.a_inv, find(&d, Sort::HMor, "g"));
        assert!(d.is_identity_square(w.eta) && d.is_identity_square(w.eps));
        let adj = promote_to_adjoint(&d, &w).unwrap();
        assert_eq!(adj.data, w);
    }

    #[test]
    fn square_generators_are_not_equivalences() {
        let d = sq();
        assert!(find_horizontal_equivalence(&d, find(&d, Sort::HMor, "a")).is_none());
        assert!(find_weak_horizontal_inverse(&d, find(&d, Sort::Square, "alpha")).is_none());
    }

    #[test]
    fn identity_squares_are_weakly_invertible() {
        let d = sq();
        for u in 0..d.num_vmors() {
            let w = find_weak_horizontal_inverse(&d, d.id_sq(u)).unwrap();
            assert_eq!(w.beta, d.id_sq(u));
            assert!(verify_weak_inverse(&d, &w));
        }
    }

    #[test]
    fn unique_inverse_of_identities() {
        let d = two_v();
        let u = find(&d, Sort::VMor, "u");
        let s = d.id_sq(u);
        let top = promote_to_adjoint(&d, &find_horizontal_equivalence(&d, d.square(s).top).unwrap()).unwrap();
        let bottom = promote_to_adjoint(&d, &find_horizontal_equivalence(&d, d.square(s).bottom).unwrap()).unwrap();
        assert_eq!(unique_weak_inverse(&d, s, &top, &bottom).unwrap(), s);
    }

    #[test]
    fn invertibility_scan_passes_on_corpus() {
        for d in double_categories() {
            assert!(check_lemma_220(&d).passes(), "{}", d.name());
        }
        // only the boxes qualify in CinvH: f and g are not equivalences
        assert_eq!(check_lemma_220(&cinv_h()).checked, 2);
    }

    #[test]
    fn cinv_cell_is_only_vertically_invertible() {
        let d = cinv_h();
        let t = find(&d, Sort::Square, "t");
        assert!(d.vertical_inverse(t).is_some());
        assert!(find_weak_horizontal_inverse(&d, t).is_none());
    }
}
