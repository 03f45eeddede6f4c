//! The functors relating Cat, 2Cat and DblCat: ℍ, 𝐇, 𝕍, 𝐕, 𝒱, 𝕃, the
//! underlying categories, and internal homs.

mod hom;

pub use hom::{
    hom_double_category, horizontal_transformations, internal_hom, modifications, HomKind, Modification,
    Transformation,
};

use std::collections::HashMap;
use std::sync::Arc;

use crate::corpus;
use crate::dbl::ops::{product, transpose};
use crate::dbl::{DoubleCategory, DoubleCategoryBuilder, DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, TwoCategory, TwoFunctor};

/// ℍ: a 2-category as a double category with only identity vertical
/// morphisms. The stored presentation already has this shape.
pub fn horizontal_embed(a: &TwoCategory) -> DoubleCategory {
    a.as_double().clone()
}

/// ℍ on 2-functors.
pub fn horizontal_embed_functor(f: &TwoFunctor) -> DoubleFunctor {
    f.as_double().clone()
}

/// 𝐇: objects, horizontal morphisms and globular squares.
pub fn underlying_horizontal(a: &DoubleCategory) -> TwoCategory {
    let globular: Vec<bool> = (0..a.num_squares()).map(|s| a.is_globular(s)).collect();
    let mut b = DoubleCategoryBuilder::new(a.name());
    b.set_weak_horizontal(a.is_weak_horizontal());
    for o in a.objects() {
        b.object(o);
    }
    for h in a.hmors() {
        b.hmor(&h.name, a.object(h.src), a.object(h.tgt));
    }
    for (_, q) in a.squares().iter().enumerate().filter(|&(s, _)| globular[s]) {
        b.globular(&q.name, &a.hmor(q.top).name, &a.hmor(q.bottom).name);
    }
    for (o, name) in a.objects().iter().enumerate() {
        b.id_h(name, &a.hmor(a.id_h(o)).name);
        b.id_v(name, &a.vmor(a.id_v(o)).name);
    }
    for (h, arrow) in a.hmors().iter().enumerate() {
        b.e_sq(&arrow.name, &a.square(a.e_sq(h)).name);
    }
    for ((y, x), z) in a.hcomp_m_entries() {
        b.hcomp_m(&a.hmor(y).name, &a.hmor(x).name, &a.hmor(z).name);
    }
    for ((y, x), z) in a.hcomp_sq_entries() {
        if globular[x] && globular[y] {
            b.hcomp_sq(&a.square(y).name, &a.square(x).name, &a.square(z).name);
        }
    }
    for ((y, x), z) in a.vcomp_sq_entries() {
        if globular[x] && globular[y] {
            b.vcomp_sq(&a.square(y).name, &a.square(x).name, &a.square(z).name);
        }
    }
    let d = b.build().expect("globular part of a valid double category");
    TwoCategory::from_double(d).expect("globular part has 2-category shape")
}

/// 𝐇 on double functors.
pub fn underlying_horizontal_functor(f: &DoubleFunctor) -> Result<TwoFunctor> {
    let (a, b) = (f.source(), f.target());
    let (ha, hb) = (Arc::new(underlying_horizontal(a).into_double()), Arc::new(underlying_horizontal(b).into_double()));
    let mut pairs = Vec::new();
    for o in 0..a.num_objects() {
        pairs.push((Sort::Object, a.object(o).to_string(), b.object(f.obj(o)).to_string()));
    }
    for h in 0..a.num_hmors() {
        pairs.push((Sort::HMor, a.hmor(h).name.clone(), b.hmor(f.hmor(h)).name.clone()));
    }
    for s in (0..a.num_squares()).filter(|&s| a.is_globular(s)) {
        pairs.push((Sort::Square, a.square(s).name.clone(), b.square(f.sq(s)).name.clone()));
    }
    TwoFunctor::new(DoubleFunctor::from_names(format!("H{}", f.name()), ha, hb, &pairs)?)
}

/// 𝕍: a 2-category with its morphisms placed vertically.
pub fn vertical_embed(c: &TwoCategory) -> DoubleCategory {
    transpose(c.as_double()).expect("transpose of a valid 2-category")
}

/// 𝐕: the underlying vertical 2-category, 𝐇 of the transpose.
pub fn underlying_vertical(a: &DoubleCategory) -> TwoCategory {
    underlying_horizontal(&transpose(a).expect("transpose of a valid double category"))
}

/// U𝐇: objects and horizontal morphisms.
pub fn underlying_horizontal_category(a: &DoubleCategory) -> FinCategory {
    let mut b = FinCategory::builder(a.name());
    for o in a.objects() {
        b.object(o);
    }
    for h in a.hmors() {
        b.morphism(&h.name, a.object(h.src), a.object(h.tgt));
    }
    for (o, name) in a.objects().iter().enumerate() {
        b.identity(name, &a.hmor(a.id_h(o)).name);
    }
    for ((y, x), z) in a.hcomp_m_entries() {
        b.compose(&a.hmor(y).name, &a.hmor(x).name, &a.hmor(z).name);
    }
    b.build().expect("horizontal category of a valid double category")
}

/// U𝐕: objects and vertical morphisms.
pub fn underlying_vertical_category(a: &DoubleCategory) -> FinCategory {
    underlying_horizontal_category(&transpose(a).expect("transpose of a valid double category"))
}

/// Name of the 2-cell `(s0, s1): alpha ⇒ beta` of 𝒱A.
pub(crate) fn cell_pair_name(a: &DoubleCategory, alpha: usize, beta: usize, s0: usize, s1: usize) -> String {
    let n = |s: usize| a.square(s).name.as_str();
    format!("{{{}|{}|{}|{}}}", n(s0), n(s1), n(alpha), n(beta))
}

/// 2-cells of 𝒱A as `(alpha, beta, s0, s1)`: globular `s0: a ⇒ c` and
/// `s1: b ⇒ d` with `beta · s0 = s1 · alpha`, where `alpha` has top `a` and
/// bottom `b` and `beta` has top `c` and bottom `d`.
fn vertical_cells(a: &DoubleCategory) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (alpha, p) in a.squares().iter().enumerate() {
        for &beta in a.squares_with_left(p.left) {
            let q = a.square(beta);
            if q.right != p.right {
                continue;
            }
            for &s0 in a.globular_squares(p.top, q.top) {
                for &s1 in a.globular_squares(p.bottom, q.bottom) {
                    let lhs = a.vcomp_sq(beta, s0);
                    if lhs.is_some() && lhs == a.vcomp_sq(s1, alpha) {
                        out.push((alpha, beta, s0, s1));
                    }
                }
            }
        }
    }
    out
}

/// 𝒱A: vertical morphisms, squares under horizontal composition, and pairs
/// of globular squares compatible with the squares they connect.
pub fn vertical_morphism_2cat(a: &DoubleCategory) -> Result<TwoCategory> {
    let cells = vertical_cells(a);
    let index: HashMap<(usize, usize, usize, usize), usize> =
        cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let sq = |s: usize| a.square(s).name.as_str();
    let name = |i: usize| {
        let (x, y, s0, s1) = cells[i];
        cell_pair_name(a, x, y, s0, s1)
    };
    let find = |c: (usize, usize, usize, usize)| {
        index.get(&c).copied().ok_or_else(|| {
            Error::InternalInconsistency(format!("V({}): composite 2-cell missing over {} => {}", a.name(), sq(c.0), sq(c.1)))
        })
    };

    let mut b = DoubleCategoryBuilder::new(format!("V({})", a.name()));
    b.set_weak_horizontal(a.is_weak_horizontal());
    for u in a.vmors() {
        b.object(&u.name);
    }
    for q in a.squares() {
        b.hmor(&q.name, &a.vmor(q.left).name, &a.vmor(q.right).name);
    }
    for i in 0..cells.len() {
        let (x, y, _, _) = cells[i];
        b.globular(&name(i), sq(x), sq(y));
    }
    for (u, arrow) in a.vmors().iter().enumerate() {
        b.id_h(&arrow.name, sq(a.id_sq(u)));
    }
    for (s, q) in a.squares().iter().enumerate() {
        let id = find((s, s, a.e_sq(q.top), a.e_sq(q.bottom)))?;
        b.e_sq(sq(s), &name(id));
    }
    for ((y, x), z) in a.hcomp_sq_entries() {
        b.hcomp_m(sq(y), sq(x), sq(z));
    }
    let missing = || Error::InternalInconsistency(format!("V({}): a composite square is missing", a.name()));
    // cell i: x ⇒ y, cell j: x2 ⇒ y2
    for (i, &(x, y, s0, s1)) in cells.iter().enumerate() {
        for (j, &(x2, y2, t0, t1)) in cells.iter().enumerate() {
            if x2 == y {
                let c = (x, y2, a.vcomp_sq(t0, s0).ok_or_else(missing)?, a.vcomp_sq(t1, s1).ok_or_else(missing)?);
                b.vcomp_sq(&name(j), &name(i), &name(find(c)?));
            }
            if a.square(x).right == a.square(x2).left {
                let c = (
                    a.hcomp_sq(x2, x).ok_or_else(missing)?,
                    a.hcomp_sq(y2, y).ok_or_else(missing)?,
                    a.hcomp_sq(t0, s0).ok_or_else(missing)?,
                    a.hcomp_sq(t1, s1).ok_or_else(missing)?,
                );
                b.hcomp_sq(&name(j), &name(i), &name(find(c)?));
            }
        }
    }
    TwoCategory::from_double(b.build()?)
}

/// 𝒱 on double functors.
pub fn vertical_morphism_functor(f: &DoubleFunctor) -> Result<TwoFunctor> {
    let (a, b) = (f.source(), f.target());
    let (va, vb) = (Arc::new(vertical_morphism_2cat(a)?.into_double()), Arc::new(vertical_morphism_2cat(b)?.into_double()));
    let mut pairs = Vec::new();
    for u in 0..a.num_vmors() {
        pairs.push((Sort::Object, a.vmor(u).name.clone(), b.vmor(f.vmor(u)).name.clone()));
    }
    for s in 0..a.num_squares() {
        pairs.push((Sort::HMor, a.square(s).name.clone(), b.square(f.sq(s)).name.clone()));
    }
    for (x, y, s0, s1) in vertical_cells(a) {
        pairs.push((
            Sort::Square,
            cell_pair_name(a, x, y, s0, s1),
            cell_pair_name(b, f.sq(x), f.sq(y), f.sq(s0), f.sq(s1)),
        ));
    }
    TwoFunctor::new(DoubleFunctor::from_names(format!("V{}", f.name()), va, vb, &pairs)?)
}

/// 𝕃 = ℍ(−) × 𝕍𝟚.
pub fn left_adjoint_l(a: &TwoCategory) -> DoubleCategory {
    product(&horizontal_embed(a), &corpus::two_v())
        .expect("product of valid double categories")
        .renamed(format!("L({})", a.name()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::dbl::functor::same_presentation;
    use crate::dbl::iso::are_isomorphic;
    use crate::dbl::ops::coproduct;
    use crate::dbl::validate::validate_double_category;
    use crate::fincat::discrete_2cat;
    use crate::search::Budget;

    fn iso(a: &DoubleCategory, b: &DoubleCategory) -> bool {
        are_isomorphic(a, b, &Budget::default()).unwrap()
    }

    fn two_categories() -> Vec<TwoCategory> {
        vec![
            TwoCategory::from(discrete_2cat(&corpus::three())),
            cinv(),
            TwoCategory::from(corpus::iso()),
            underlying_horizontal(&sq()),
        ]
    }

    #[test]
    fn h_after_embedding_is_identity() {
        for a in two_categories() {
            let back = underlying_horizontal(&horizontal_embed(&a));
            assert!(same_presentation(back.as_double(), a.as_double()), "{}", a.name());
        }
    }

    #[test]
    fn h_of_vertical_arrow_is_two_points() {
        let h = underlying_horizontal(&two_v());
        assert!(iso(h.as_double(), &one_one()));
    }

    #[test]
    fn h_of_square_is_two_arrows() {
        let h = underlying_horizontal(&sq());
        let d2 = two_h();
        assert!(iso(h.as_double(), &coproduct(&d2, &d2).unwrap()));
        let v = underlying_vertical_category(&sq());
        assert!(iso(v.as_double(), &coproduct(&d2, &d2).unwrap()));
    }

    #[test]
    fn vertical_embedding_is_transposed_horizontal() {
        let two = TwoCategory::from_double(two_h()).unwrap();
        assert!(iso(&vertical_embed(&two), &two_v()));
        let v = underlying_vertical(&horizontal_embed(&two));
        assert_eq!(v.num_objects(), 2);
        assert!((0..v.num_morphisms()).all(|m| v.as_double().is_identity_hmor(m)));
    }

    #[test]
    fn v_of_vertical_arrow_is_discrete() {
        let v = vertical_morphism_2cat(&two_v()).unwrap();
        assert_eq!((v.num_objects(), v.num_morphisms(), v.num_cells()), (3, 3, 3));
        let v1 = vertical_morphism_2cat(&one()).unwrap();
        assert_eq!((v1.num_objects(), v1.num_morphisms(), v1.num_cells()), (1, 1, 1));
    }

    #[test]
    fn v_of_square() {
        let v = vertical_morphism_2cat(&sq()).unwrap();
        assert_eq!(v.num_objects(), 6);
        assert_eq!(v.num_morphisms(), sq().num_squares());
        assert!(validate_double_category(v.as_double()).is_valid());
    }

    #[test]
    fn l_counts() {
        let l1 = left_adjoint_l(&TwoCategory::from_double(one()).unwrap());
        assert!(iso(&l1, &two_v()));
        let l2 = left_adjoint_l(&TwoCategory::from_double(two_h()).unwrap());
        assert_eq!(l2.num_objects(), 4);
        let gens = (0..l2.num_vmors()).filter(|&u| !l2.is_identity_vmor(u)).count();
        assert_eq!(gens, 2);
    }

    #[test]
    fn functor_actions_are_valid() {
        for f in corpus::functors() {
            assert!(underlying_horizontal_functor(&f).unwrap().validate().is_valid(), "H{}", f.name());
            assert!(vertical_morphism_functor(&f).unwrap().validate().is_valid(), "V{}", f.name());
        }
    }

    #[test]
    fn v_is_functorial_on_composites() {
        let f = i4();
        let g = DoubleFunctor::identity(f.target().clone());
        let vf = vertical_morphism_functor(&f.then(&g).unwrap()).unwrap();
        let composed = vertical_morphism_functor(&f).unwrap().then(&vertical_morphism_functor(&g).unwrap()).unwrap();
        assert!(vf.as_double().same_maps(composed.as_double()));
    }
}
