//! A normal horizontally pseudo inverse `G` of a double biequivalence
//! `F: A -> B` whose target has no composites of vertical morphisms,
//! together with `η: id ≃ GF` and `ε: FG ≃ id`.
//!
//! Every choice is the first one in index order. The result is checked by
//! [`verify_whitehead_data`] before it is returned.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{equivalence_witnesses_for, verify_pseudo_equivalence, HorizontallyPseudoDoubleFunctor, PseudoEquivalence};
use crate::construct::{underlying_vertical_category, Transformation};
use crate::dbl::functor::same_presentation;
use crate::dbl::{DoubleCategory, DoubleFunctor};
use crate::equiv::{equivalence_witnesses, promote_to_adjoint, unique_weak_inverse, weakly_invertible_squares, AdjointEquivalenceWitness};
use crate::error::{Error, Result};
use crate::fincat::is_disjoint_union_1_2;
use crate::model::check_double_biequivalence;
use crate::paste::{cell, h, v, Paste};

#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadData {
    #[serde(skip)]
    pub g: HorizontallyPseudoDoubleFunctor,
    pub eta: PseudoEquivalence,
    pub eps: PseudoEquivalence,
    /// `ε′: id ⇒ FG`, built from the adjoint data of `ε`.
    #[serde(skip)]
    pub eps_prime: Transformation,
}

fn inconsistent(what: impl std::fmt::Display) -> Error {
    Error::InternalInconsistency(format!("whitehead inverse: {what}"))
}

fn eval(d: &DoubleCategory, p: &Paste, what: &str) -> Result<usize> {
    p.eval(d).map_err(|e| inconsistent(format!("{what}: {e}")))
}

fn comp(d: &DoubleCategory, y: usize, x: usize) -> Result<usize> {
    d.hcomp_m(y, x).ok_or_else(|| inconsistent("missing horizontal composite"))
}

fn vinv(d: &DoubleCategory, s: usize) -> Result<usize> {
    d.vertical_inverse(s).ok_or_else(|| inconsistent(format!("{} is not vertically invertible", d.square(s).name)))
}

/// The unique square of `a` on the given boundary sent to `target` by `f`.
fn unique_preimage(f: &DoubleFunctor, boundary: (usize, usize, usize, usize), target: usize, what: &str) -> Result<usize> {
    let a = f.source();
    let (top, bottom, left, right) = boundary;
    let found: Vec<usize> = a.squares_with(top, bottom, left, right).iter().copied().filter(|&s| f.sq(s) == target).collect();
    match found.as_slice() {
        [s] => Ok(*s),
        [] => Err(inconsistent(format!("{what}: no preimage of {}", f.target().square(target).name))),
        _ => Err(Error::NonUnique(format!("{what}: {} preimages of {}", found.len(), f.target().square(target).name))),
    }
}

/// Object and vertical-morphism part of `G` with `ε` on those cells.
struct VerticalPart {
    g_obj: Vec<usize>,
    g_vmor: Vec<usize>,
    eps_comp: Vec<usize>,
    eps_nat: Vec<usize>,
}

fn vertical_part(f: &DoubleFunctor) -> Result<VerticalPart> {
    let (a, b) = (f.source(), f.target());
    let none = usize::MAX;
    let mut g_obj = vec![none; b.num_objects()];
    let mut g_vmor = vec![none; b.num_vmors()];
    let mut eps_comp = vec![none; b.num_objects()];
    let mut eps_nat = vec![none; b.num_vmors()];
    let weak = weakly_invertible_squares(b);
    // copies of 𝟚: one db3 choice for the whole component
    for (w, arrow) in b.vmors().iter().enumerate() {
        if b.is_identity_vmor(w) {
            continue;
        }
        let choice = (0..a.num_vmors()).find_map(|u| {
            b.squares_with_right(w).iter().copied().find(|&s| weak[s] && b.square(s).left == f.vmor(u)).map(|s| (u, s))
        });
        let (u, s) = choice.ok_or_else(|| Error::precondition("db3", format!("no weakly invertible square onto {}", arrow.name)))?;
        let q = b.square(s);
        g_obj[arrow.src] = a.vmor(u).src;
        g_obj[arrow.tgt] = a.vmor(u).tgt;
        eps_comp[arrow.src] = q.top;
        eps_comp[arrow.tgt] = q.bottom;
        g_vmor[w] = u;
        eps_nat[w] = s;
    }
    // copies of 𝟙: db1
    for y in 0..b.num_objects() {
        if g_obj[y] != none {
            continue;
        }
        let choice = (0..a.num_objects()).find_map(|x| {
            b.hom_h(f.obj(x), y).iter().copied().find(|&m| !equivalence_witnesses(b, m).is_empty()).map(|m| (x, m))
        });
        let (x, m) = choice.ok_or_else(|| Error::precondition("db1", format!("no equivalence onto {}", b.object(y))))?;
        g_obj[y] = x;
        eps_comp[y] = m;
    }
    for y in 0..b.num_objects() {
        let e = b.id_v(y);
        g_vmor[e] = a.id_v(g_obj[y]);
        eps_nat[e] = b.e_sq(eps_comp[y]);
    }
    Ok(VerticalPart { g_obj, g_vmor, eps_comp, eps_nat })
}

/// Builds `G`, `η` and `ε` for a double biequivalence whose target's
/// underlying vertical category is a disjoint union of copies of 𝟙 and 𝟚.
pub fn whitehead_inverse(f: &DoubleFunctor) -> Result<WhiteheadData> {
    let report = check_double_biequivalence(f);
    if let Some(c) = report.failed().first() {
        let detail = report.counterexamples.get(c).map(|ce| ce.missing.clone()).unwrap_or_default();
        return Err(Error::precondition(c.tag(), detail));
    }
    let (a, b) = (f.source().clone(), f.target().clone());
    if !is_disjoint_union_1_2(&underlying_vertical_category(&b)) {
        return Err(Error::precondition(
            "vertical shape",
            format!("the vertical category of {} has composable non-identity morphisms", b.name()),
        ));
    }

    let VerticalPart { g_obj, g_vmor, eps_comp, eps_nat } = vertical_part(f)?;
    let adj: Vec<AdjointEquivalenceWitness> = eps_comp
        .iter()
        .map(|&m| {
            let w = equivalence_witnesses(&b, m).into_iter().next().ok_or_else(|| inconsistent("lost equivalence data"))?;
            promote_to_adjoint(&b, &w)
        })
        .collect::<Result<_>>()?;
    let eps_inv_comp: Vec<usize> = adj.iter().map(|w| w.data.a_inv).collect();
    let mu: Vec<usize> = adj.iter().map(|w| w.data.eta).collect();
    let nu: Vec<usize> = adj.iter().map(|w| w.data.eps).collect();
    let mut eps_prime_nat = vec![0; b.num_vmors()];
    for (w, arrow) in b.vmors().iter().enumerate() {
        eps_prime_nat[w] = if b.is_identity_vmor(w) {
            b.e_sq(eps_inv_comp[arrow.src])
        } else {
            unique_weak_inverse(&b, eps_nat[w], &adj[arrow.src], &adj[arrow.tgt])?
        };
    }

    // horizontal morphisms: db2 on ε′_C∘b∘ε_B
    let mut g_hmor = vec![0; b.num_hmors()];
    let mut ebar = vec![0; b.num_hmors()];
    for (m, arrow) in b.hmors().iter().enumerate() {
        let (x, z) = (g_obj[arrow.src], g_obj[arrow.tgt]);
        if b.is_identity_hmor(m) {
            g_hmor[m] = a.id_h(x);
            ebar[m] = vinv(&b, mu[arrow.src])?;
            continue;
        }
        let k = comp(&b, eps_inv_comp[arrow.tgt], comp(&b, m, eps_comp[arrow.src])?)?;
        let choice = a.hom_h(x, z).iter().find_map(|&n| {
            b.globular_squares(k, f.hmor(n)).iter().copied().find(|&s| b.vertical_inverse(s).is_some()).map(|s| (n, s))
        });
        let (n, s) = choice.ok_or_else(|| inconsistent(format!("db2 has no lift for {}", arrow.name)))?;
        g_hmor[m] = n;
        ebar[m] = s;
    }
    let ebar_inv: Vec<usize> = ebar.iter().map(|&s| vinv(&b, s)).collect::<Result<_>>()?;
    let mut eps_pseudo = vec![0; b.num_hmors()];
    for (m, arrow) in b.hmors().iter().enumerate() {
        let (src, tgt) = (arrow.src, arrow.tgt);
        let upper = h(cell(vinv(&b, nu[tgt])?), cell(b.e_sq(comp(&b, m, eps_comp[src])?)));
        let lower = h(cell(b.e_sq(eps_comp[tgt])), cell(ebar[m]));
        eps_pseudo[m] = eval(&b, &v(lower, upper), "pseudo naturality of eps")?;
    }

    // compositors via db4
    let mut compositors = BTreeMap::new();
    for ((c, bm), cb) in b.hcomp_m_entries() {
        let (ab, ac) = (b.hmor(bm), b.hmor(c));
        let upper = h(cell(ebar_inv[c]), cell(ebar_inv[bm]));
        let middle = h(
            cell(b.e_sq(comp(&b, eps_inv_comp[ac.tgt], c)?)),
            h(cell(nu[ab.tgt]), cell(b.e_sq(comp(&b, bm, eps_comp[ab.src])?))),
        );
        let pasted = eval(&b, &v(cell(ebar[cb]), v(middle, upper)), "compositor pasting")?;
        let boundary = (comp(&a, g_hmor[c], g_hmor[bm])?, g_hmor[cb], a.id_v(g_obj[ab.src]), a.id_v(g_obj[ac.tgt]));
        compositors.insert((c, bm), unique_preimage(f, boundary, pasted, "compositor")?);
    }

    // squares via db4
    let mut g_sq = vec![0; b.num_squares()];
    for (s, q) in b.squares().iter().enumerate() {
        let middle = h(cell(eps_prime_nat[q.right]), h(cell(s), cell(eps_nat[q.left])));
        let pasted = eval(&b, &v(cell(ebar[q.bottom]), v(middle, cell(ebar_inv[q.top]))), "square pasting")?;
        let boundary = (g_hmor[q.top], g_hmor[q.bottom], g_vmor[q.left], g_vmor[q.right]);
        g_sq[s] = unique_preimage(f, boundary, pasted, "square")?;
    }

    let g = HorizontallyPseudoDoubleFunctor::new(
        format!("G{}", f.name()),
        b.clone(),
        a.clone(),
        [g_obj.clone(), g_hmor.clone(), g_vmor, g_sq],
        compositors,
    )?;
    let eps_t = Transformation { components: eps_comp.clone(), naturality: eps_nat, pseudo: eps_pseudo };

    // ε′: id ⇒ FG on horizontal morphisms
    let mut eps_prime_pseudo = vec![0; b.num_hmors()];
    for (m, arrow) in b.hmors().iter().enumerate() {
        let (src, tgt) = (arrow.src, arrow.tgt);
        let upper = h(cell(ebar_inv[m]), cell(b.e_sq(eps_inv_comp[src])));
        let lower = h(cell(b.e_sq(comp(&b, eps_inv_comp[tgt], m)?)), cell(nu[src]));
        eps_prime_pseudo[m] = eval(&b, &v(lower, upper), "pseudo naturality of eps'")?;
    }
    let eps_prime = Transformation { components: eps_inv_comp.clone(), naturality: eps_prime_nat.clone(), pseudo: eps_prime_pseudo };

    // η: id ⇒ GF from db2 on ε′_{FA}, squares via db4
    let mut eta_comp = vec![0; a.num_objects()];
    let mut theta = vec![0; a.num_objects()];
    for x in 0..a.num_objects() {
        let k = eps_inv_comp[f.obj(x)];
        let choice = a.hom_h(x, g_obj[f.obj(x)]).iter().find_map(|&n| {
            b.globular_squares(k, f.hmor(n)).iter().copied().find(|&s| b.vertical_inverse(s).is_some()).map(|s| (n, s))
        });
        let (n, s) = choice.ok_or_else(|| inconsistent(format!("db2 has no lift for eps' at {}", a.object(x))))?;
        eta_comp[x] = n;
        theta[x] = s;
    }
    let theta_inv: Vec<usize> = theta.iter().map(|&s| vinv(&b, s)).collect::<Result<_>>()?;
    let gf = g.after_strict(f);
    let mut eta_nat = vec![0; a.num_vmors()];
    for (u, arrow) in a.vmors().iter().enumerate() {
        let pasted = eval(
            &b,
            &v(cell(theta[arrow.tgt]), v(cell(eps_prime_nat[f.vmor(u)]), cell(theta_inv[arrow.src]))),
            "eta on vertical morphisms",
        )?;
        let boundary = (eta_comp[arrow.src], eta_comp[arrow.tgt], u, gf.vmor(u));
        eta_nat[u] = unique_preimage(f, boundary, pasted, "eta square")?;
    }
    let mut eta_pseudo = vec![0; a.num_hmors()];
    for (m, arrow) in a.hmors().iter().enumerate() {
        let fa = f.hmor(m);
        let upper = h(cell(b.e_sq(f.hmor(gf.hmor(m)))), cell(theta_inv[arrow.src]));
        let lower = h(cell(theta[arrow.tgt]), cell(b.e_sq(fa)));
        let pasted = eval(&b, &v(lower, v(cell(eps_prime.pseudo[fa]), upper)), "eta on horizontal morphisms")?;
        let boundary = (
            comp(&a, gf.hmor(m), eta_comp[arrow.src])?,
            comp(&a, eta_comp[arrow.tgt], m)?,
            a.id_v(arrow.src),
            a.id_v(gf.obj(arrow.tgt)),
        );
        eta_pseudo[m] = unique_preimage(f, boundary, pasted, "eta pseudo square")?;
    }
    let eta_t = Transformation { components: eta_comp, naturality: eta_nat, pseudo: eta_pseudo };

    let eps = PseudoEquivalence {
        components: adj.iter().map(|w| w.data).collect(),
        squares: b
            .vmors()
            .iter()
            .enumerate()
            .map(|(w, arrow)| crate::equiv::WeakInverseWitness {
                alpha: eps_t.naturality[w],
                beta: eps_prime_nat[w],
                top: adj[arrow.src].data,
                bottom: adj[arrow.tgt].data,
            })
            .collect(),
        transformation: eps_t,
        adjoint: true,
    };
    let eta = equivalence_witnesses_for(&a, &eta_t, false)?
        .ok_or_else(|| inconsistent("eta is not a pseudo natural equivalence"))?;
    let data = WhiteheadData { g, eta, eps, eps_prime };
    if !verify_whitehead_data(f, &data.g, &data.eta, &data.eps) {
        return Err(inconsistent("constructed data fails verification"));
    }
    Ok(data)
}

fn same(x: &Arc<DoubleCategory>, y: &Arc<DoubleCategory>) -> bool {
    Arc::ptr_eq(x, y) || same_presentation(x, y)
}

/// `g` is a valid normal horizontally pseudo double functor and `η`, `ε`
/// are horizontal pseudo natural equivalences `id ≃ GF`, `FG ≃ id`.
pub fn verify_whitehead_data(
    f: &DoubleFunctor,
    g: &HorizontallyPseudoDoubleFunctor,
    eta: &PseudoEquivalence,
    eps: &PseudoEquivalence,
) -> bool {
    if !same(g.source(), f.target()) || !same(g.target(), f.source()) {
        return false;
    }
    if !g.is_normal() || !g.verify().is_valid() {
        return false;
    }
    let id_a = HorizontallyPseudoDoubleFunctor::from_strict(&DoubleFunctor::identity(f.source().clone()));
    let id_b = HorizontallyPseudoDoubleFunctor::from_strict(&DoubleFunctor::identity(f.target().clone()));
    verify_pseudo_equivalence(&id_a, &g.after_strict(f), eta).is_valid()
        && verify_pseudo_equivalence(&g.then_strict(f), &id_b, eps).is_valid()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::dbl::enumerate::enumerate_double_functors;
    use crate::homotopy::verify_transformation;
    use crate::construct::HomKind;
    use crate::search::Budget;

    #[test]
    fn identity_has_identity_inverse() {
        for d in [one(), two_h(), two_v(), sq()] {
            let f = DoubleFunctor::identity(Arc::new(d));
            let w = whitehead_inverse(&f).unwrap();
            assert!(w.g.to_strict().unwrap().is_identity_on_cells(), "{}", f.source().name());
        }
        // g ≅ f in CinvH, and the first choice for G(g) is f
        let f = DoubleFunctor::identity(Arc::new(cinv_h()));
        let w = whitehead_inverse(&f).unwrap();
        let g = f.source().find(crate::dbl::Sort::HMor, "g").unwrap();
        assert_eq!(f.source().hmor(w.g.hmor(g)).name, "f");
    }

    #[test]
    fn free_isomorphism_to_point() {
        let f = enumerate_double_functors(&Arc::new(iso_h()), &Arc::new(one()), &Budget::default()).unwrap().remove(0);
        let w = whitehead_inverse(&f).unwrap();
        assert_eq!(w.g.obj(0), 0);
        let eps = &w.eps.transformation;
        assert!(f.target().is_identity_hmor(eps.components[0]));
        // η_1 is the isomorphism 1 -> 0
        assert_eq!(f.source().hmor(w.eta.transformation.components[1]).name, "g");
        let fg = w.g.then_strict(&f);
        let id_b = HorizontallyPseudoDoubleFunctor::from_strict(&DoubleFunctor::identity(f.target().clone()));
        assert!(verify_transformation(&id_b, &fg, &w.eps_prime, HomKind::Pseudo).is_valid());
    }

    #[test]
    fn endpoints_fail_db3() {
        match whitehead_inverse(&eps_v2()) {
            Err(Error::PreconditionFailed { tag, .. }) => assert_eq!(tag, "db3"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn composable_vertical_morphisms_are_rejected() {
        let f = DoubleFunctor::identity(Arc::new(v_three()));
        match whitehead_inverse(&f) {
            Err(Error::PreconditionFailed { tag, .. }) => assert_eq!(tag, "vertical shape"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn perturbed_counit_fails_verification() {
        let f = enumerate_double_functors(&Arc::new(iso_h()), &Arc::new(one()), &Budget::default()).unwrap().remove(0);
        let w = whitehead_inverse(&f).unwrap();
        let mut eta = w.eta.clone();
        eta.components[1].eta = eta.components[1].eps;
        assert!(!verify_whitehead_data(&f, &w.g, &eta, &w.eps));
    }
}
