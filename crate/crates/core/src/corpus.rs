//! Builtin double categories and double functors.

use std::sync::Arc;

use crate::dbl::ops::{coproduct, empty, tagged_name, terminal, transpose};
use crate::dbl::{DoubleCategory, DoubleCategoryBuilder, DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, TwoCategory};
use crate::weak::WeakDoubleCategory;

pub fn one() -> DoubleCategory {
    terminal("One")
}

/// ℍ𝟚: one horizontal arrow `f: 0 -> 1`.
pub fn two_h() -> DoubleCategory {
    let mut b = DoubleCategoryBuilder::new("TwoH");
    b.object("0").object("1").hmor("f", "0", "1");
    b.build().expect("TwoH")
}

/// 𝕍𝟚: one vertical arrow `u: 0 => 1`.
pub fn two_v() -> DoubleCategory {
    let mut b = DoubleCategoryBuilder::new("TwoV");
    b.object("0").object("1").vmor("u", "0", "1");
    b.build().expect("TwoV")
}

fn square_boundary(name: &str) -> DoubleCategoryBuilder {
    let mut b = DoubleCategoryBuilder::new(name);
    b.object("00").object("01").object("10").object("11");
    b.hmor("a", "00", "01").hmor("b", "10", "11");
    b.vmor("u", "00", "10").vmor("v", "01", "11");
    b
}

/// 𝕊: the free square `alpha: [a; b; u; v]`.
pub fn sq() -> DoubleCategory {
    let mut b = square_boundary("Sq");
    b.square("alpha", "a", "b", "u", "v");
    b.build().expect("Sq")
}

/// δ𝕊: the boundary of 𝕊 without its square.
pub fn d_sq() -> DoubleCategory {
    square_boundary("dSq").build().expect("dSq")
}

/// 𝕊₂: two squares `alpha0`, `alpha1` with the boundary of 𝕊.
pub fn sq2() -> DoubleCategory {
    let mut b = square_boundary("Sq2");
    b.square("alpha0", "a", "b", "u", "v").square("alpha1", "a", "b", "u", "v");
    b.build().expect("Sq2")
}

/// C_inv: parallel `f, g: 0 -> 1` with inverse 2-cells `t: f ⇒ g`, `s: g ⇒ f`.
pub fn cinv() -> TwoCategory {
    let mut b = TwoCategory::builder("Cinv");
    b.object("0").object("1").morphism("f", "0", "1").morphism("g", "0", "1");
    b.cell("t", "f", "g").cell("s", "g", "f");
    b.vcomp("s", "t", "e_f").vcomp("t", "s", "e_g");
    b.build().expect("Cinv")
}

/// The free isomorphism `f: 0 -> 1`, `g: 1 -> 0`.
pub fn iso() -> FinCategory {
    let mut b = FinCategory::builder("Iso");
    b.object("0").object("1").morphism("f", "0", "1").morphism("g", "1", "0");
    b.compose("g", "f", "id_0").compose("f", "g", "id_1");
    b.build().expect("Iso")
}

/// 𝟛: `f: 0 -> 1`, `g: 1 -> 2` and `gf`.
pub fn three() -> FinCategory {
    let mut b = FinCategory::builder("Three");
    b.object("0").object("1").object("2");
    b.morphism("f", "0", "1").morphism("g", "1", "2").morphism("gf", "0", "2");
    b.compose("g", "f", "gf");
    b.build().expect("Three")
}

pub fn cinv_h() -> DoubleCategory {
    cinv().into_double().renamed("CinvH")
}

pub fn iso_h() -> DoubleCategory {
    iso().into_double().renamed("IsoH")
}

/// 𝕍𝟛: vertical `f`, `g` and `gf`.
pub fn v_three() -> DoubleCategory {
    transpose(three().as_double()).expect("transpose of a valid category").renamed("VThree")
}

/// 𝟙⊔𝟙 with objects `0#0` and `0#1`.
pub fn one_one() -> DoubleCategory {
    coproduct(&one(), &one()).expect("coproduct").renamed("OneOne")
}

fn functor(name: &str, a: DoubleCategory, b: DoubleCategory, pairs: &[(Sort, &str, &str)]) -> DoubleFunctor {
    let pairs: Vec<(Sort, String, String)> = pairs.iter().map(|(s, x, y)| (*s, x.to_string(), y.to_string())).collect();
    DoubleFunctor::from_names(name, Arc::new(a), Arc::new(b), &pairs).unwrap_or_else(|e| panic!("corpus {name}: {e}"))
}

/// I₁: ∅ -> 𝟙.
pub fn i1() -> DoubleFunctor {
    functor("I1", empty("Empty"), one(), &[])
}

/// I₂: 𝟙⊔𝟙 -> ℍ𝟚, the two endpoints.
pub fn i2() -> DoubleFunctor {
    let (x, y) = (tagged_name("0", 0), tagged_name("0", 1));
    functor("I2", one_one(), two_h(), &[(Sort::Object, &x, "0"), (Sort::Object, &y, "1")])
}

/// I₃: ∅ -> 𝕍𝟚.
pub fn i3() -> DoubleFunctor {
    functor("I3", empty("Empty"), two_v(), &[])
}

fn square_boundary_pairs() -> Vec<(Sort, &'static str, &'static str)> {
    let mut p: Vec<(Sort, &str, &str)> = ["00", "01", "10", "11"].iter().map(|o| (Sort::Object, *o, *o)).collect();
    p.extend([(Sort::HMor, "a", "a"), (Sort::HMor, "b", "b"), (Sort::VMor, "u", "u"), (Sort::VMor, "v", "v")]);
    p
}

/// I₄: δ𝕊 -> 𝕊, the boundary inclusion.
pub fn i4() -> DoubleFunctor {
    functor("I4", d_sq(), sq(), &square_boundary_pairs())
}

/// I₅: 𝕊₂ -> 𝕊, both squares to `alpha`.
pub fn i5() -> DoubleFunctor {
    let mut p = square_boundary_pairs();
    p.extend([(Sort::Square, "alpha0", "alpha"), (Sort::Square, "alpha1", "alpha")]);
    functor("I5", sq2(), sq(), &p)
}

/// J₂: ℍ𝟚 -> ℍC_inv, `f` to `f`.
pub fn j2() -> DoubleFunctor {
    functor("J2", two_h(), cinv_h(), &[(Sort::Object, "0", "0"), (Sort::Object, "1", "1"), (Sort::HMor, "f", "f")])
}

/// ε_{𝕍𝟚}: 𝟙⊔𝟙 -> 𝕍𝟚, the two endpoints.
pub fn eps_v2() -> DoubleFunctor {
    let (x, y) = (tagged_name("0", 0), tagged_name("0", 1));
    functor("epsV2", one_one(), two_v(), &[(Sort::Object, &x, "0"), (Sort::Object, &y, "1")])
}

/// The strict double categories of the corpus, in listing order.
pub fn double_categories() -> Vec<DoubleCategory> {
    vec![one(), two_h(), two_v(), sq(), d_sq(), sq2(), cinv_h(), iso_h(), v_three()]
}

pub fn functors() -> Vec<DoubleFunctor> {
    vec![i1(), i2(), i3(), i4(), i5(), j2(), eps_v2()]
}

/// W: one object, squares `box_0` and `delta` on `id_0`, `delta.delta =
/// box_0`, both unitors `delta`, trivial associator.
pub fn w() -> WeakDoubleCategory {
    let mut b = DoubleCategoryBuilder::new("W");
    b.set_weak_horizontal(true);
    b.object("0").globular("delta", "id_0", "id_0");
    b.hcomp_m("id_0", "id_0", "id_0");
    b.vcomp_sq("delta", "delta", "box_0");
    b.hcomp_sq("delta", "delta", "box_0").hcomp_sq("delta", "box_0", "delta").hcomp_sq("box_0", "delta", "delta");
    let base = b.build().expect("W");
    WeakDoubleCategory::from_names(base, &[(["id_0", "id_0", "id_0"], "box_0")], &[("id_0", "delta")], &[("id_0", "delta")])
        .expect("W")
}

/// WU: ℍ𝟚 with `id_1∘a = a2` a separate morphism and left unitor
/// `l: a2 ⇒ a` (inverse `m`); every other coherence square is an identity.
pub fn wu() -> WeakDoubleCategory {
    let mut b = DoubleCategoryBuilder::new("WU");
    b.set_weak_horizontal(true);
    b.object("0").object("1").hmor("a", "0", "1").hmor("a2", "0", "1");
    b.globular("l", "a2", "a").globular("m", "a", "a2");
    b.vcomp_sq("l", "m", "e_a").vcomp_sq("m", "l", "e_a2");
    b.hcomp_m("id_0", "id_0", "id_0").hcomp_m("id_1", "id_1", "id_1");
    b.hcomp_m("a", "id_0", "a").hcomp_m("a2", "id_0", "a2");
    b.hcomp_m("id_1", "a", "a2").hcomp_m("id_1", "a2", "a2");
    for x in ["l", "m"] {
        b.hcomp_sq("box_1", x, "e_a2").hcomp_sq(x, "box_0", x);
    }
    let base = b.build().expect("WU");
    let hmors = ["id_0", "id_1", "a", "a2"];
    fn composite(y: &'static str, x: &'static str) -> &'static str {
        match (y, x) {
            ("id_1", "a" | "a2") => "a2",
            (_, "id_0" | "id_1") => y,
            _ => unreachable!("not composable"),
        }
    }
    let mut assoc = Vec::new();
    for a in hmors {
        for bb in hmors {
            for c in hmors {
                let ends = |m: &str| match m {
                    "id_0" => ("0", "0"),
                    "id_1" => ("1", "1"),
                    _ => ("0", "1"),
                };
                if ends(a).1 != ends(bb).0 || ends(bb).1 != ends(c).0 {
                    continue;
                }
                let top = composite(composite(c, bb), a);
                assoc.push(([a, bb, c], top));
            }
        }
    }
    let e = |m: &str| match m {
        "id_0" => "box_0",
        "id_1" => "box_1",
        "a" => "e_a",
        _ => "e_a2",
    };
    let assoc: Vec<([&str; 3], &str)> = assoc.into_iter().map(|(k, top)| (k, e(top))).collect();
    let lunit: Vec<(&str, &str)> = hmors.iter().map(|&m| (m, if m == "a" { "l" } else { e(m) })).collect();
    let runit: Vec<(&str, &str)> = hmors.iter().map(|&m| (m, e(m))).collect();
    WeakDoubleCategory::from_names(base, &assoc, &lunit, &runit).expect("WU")
}

/// The weak double categories of the corpus that are not strict.
pub fn weak_double_categories() -> Vec<WeakDoubleCategory> {
    vec![w(), wu()]
}

pub fn weak_double_category(name: &str) -> Result<WeakDoubleCategory> {
    weak_double_categories()
        .into_iter()
        .find(|d| d.name() == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn double_category(name: &str) -> Result<DoubleCategory> {
    double_categories()
        .into_iter()
        .find(|d| d.name() == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn functor_named(name: &str) -> Result<DoubleFunctor> {
    functors().into_iter().find(|f| f.name() == name).ok_or_else(|| Error::UnknownName(name.to_string()))
}
