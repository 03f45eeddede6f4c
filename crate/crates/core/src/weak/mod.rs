//! Weak double categories: horizontal composition is associative and
//! unital only up to vertically invertible globular coherence squares.
//!
//! Orientation of the coherence data, for `a: A -> B`, `b: B -> C`,
//! `c: C -> D`:
//! - associator `α_{a,b,c}: (c∘b)∘a ⇒ c∘(b∘a)`
//! - left unitor `λ_a: id_B∘a ⇒ a`
//! - right unitor `ρ_a: a∘id_A ⇒ a`

mod strictify;

pub use strictify::{
    check_double_biequivalence_weak, coherence_closure, strictify, weak_cofibrancy, StrictificationResult,
    WeakCofibrancy, WeakCofibrancyReport,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::construct::{cell_pair_name, underlying_horizontal, vertical_morphism_2cat};
use crate::dbl::validate::validate_laws;
use crate::dbl::{DoubleCategory, DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::paste::{cell, equal, h, is_vertical_inverse, v};
use crate::report::ValidationReport;

/// A tabled weak double category. The skeleton is a [`DoubleCategory`]
/// presentation whose horizontal unit and associativity laws are not
/// assumed; the coherence squares are indices into its squares.
#[derive(Clone, Debug)]
pub struct WeakDoubleCategory {
    base: Arc<DoubleCategory>,
    /// Keyed by `(a, b, c)` for the composable triple `c∘b∘a`.
    assoc: BTreeMap<(usize, usize, usize), usize>,
    lunit: Vec<usize>,
    runit: Vec<usize>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedTable(msg.into())
}

/// Every composable triple `(a, b, c)` of hmors, in index order.
fn composable_triples(d: &DoubleCategory) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for ((b, a), _) in d.hcomp_m_entries() {
        let end = d.hmor(b).tgt;
        for c in (0..d.num_hmors()).filter(|&c| d.hmor(c).src == end) {
            out.push((a, b, c));
        }
    }
    out.sort_unstable();
    out
}

impl WeakDoubleCategory {
    /// Checks that the coherence tables are total and in range; the laws
    /// are checked by [`validate_weak`].
    pub fn new(
        base: DoubleCategory,
        assoc: BTreeMap<(usize, usize, usize), usize>,
        lunit: Vec<usize>,
        runit: Vec<usize>,
    ) -> Result<Self> {
        let name = base.name().to_string();
        let triples = composable_triples(&base);
        if let Some(t) = triples.iter().find(|t| !assoc.contains_key(t)) {
            let n = |i: usize| base.hmor(i).name.clone();
            return Err(malformed(format!("{name}: ASSOC ({},{},{}) is missing", n(t.0), n(t.1), n(t.2))));
        }
        if assoc.len() != triples.len() {
            return Err(malformed(format!("{name}: ASSOC entry for a non-composable triple")));
        }
        for (table, label) in [(&lunit, "LUNIT"), (&runit, "RUNIT")] {
            if table.len() != base.num_hmors() {
                return Err(malformed(format!("{name}: {label} must have one entry per hmor")));
            }
        }
        let n = base.num_squares();
        if assoc.values().chain(&lunit).chain(&runit).any(|&s| s >= n) {
            return Err(malformed(format!("{name}: coherence square out of range")));
        }
        Ok(Self { base: Arc::new(base), assoc, lunit, runit })
    }

    /// The same, with cells given by id. Associator keys are `[a, b, c]`.
    pub fn from_names(
        base: DoubleCategory,
        assoc: &[([&str; 3], &str)],
        lunit: &[(&str, &str)],
        runit: &[(&str, &str)],
    ) -> Result<Self> {
        let hm = |x: &str| base.find(Sort::HMor, x).ok_or_else(|| Error::UnknownName(format!("hmor '{x}'")));
        let sq = |x: &str| base.find(Sort::Square, x).ok_or_else(|| Error::UnknownName(format!("square '{x}'")));
        let mut table = BTreeMap::new();
        for ([a, b, c], s) in assoc {
            if table.insert((hm(a)?, hm(b)?, hm(c)?), sq(s)?).is_some() {
                return Err(malformed(format!("duplicate ASSOC ({a},{b},{c})")));
            }
        }
        let unitors = |pairs: &[(&str, &str)], label: &str| -> Result<Vec<usize>> {
            let mut out = vec![None; base.num_hmors()];
            for (a, s) in pairs {
                let slot = &mut out[hm(a)?];
                if slot.replace(sq(s)?).is_some() {
                    return Err(malformed(format!("duplicate {label} {a}")));
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(a, s)| s.ok_or_else(|| malformed(format!("{label} {} is missing", base.hmor(a).name))))
                .collect()
        };
        let (l, r) = (unitors(lunit, "LUNIT")?, unitors(runit, "RUNIT")?);
        Self::new(base, table, l, r)
    }

    /// A strict double category with identity coherence squares.
    pub fn from_strict(d: DoubleCategory) -> Self {
        let assoc = composable_triples(&d)
            .into_iter()
            .map(|(a, b, c)| {
                let top = d.hcomp_m(c, b).and_then(|cb| d.hcomp_m(cb, a)).expect("composable triple");
                ((a, b, c), d.e_sq(top))
            })
            .collect();
        let units: Vec<usize> = (0..d.num_hmors()).map(|a| d.e_sq(a)).collect();
        Self { base: Arc::new(d), assoc, lunit: units.clone(), runit: units }
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.base = Arc::new(self.base.as_ref().clone().renamed(name));
        self
    }

    pub fn base(&self) -> &Arc<DoubleCategory> {
        &self.base
    }

    /// `α_{a,b,c}`.
    pub fn assoc(&self, a: usize, b: usize, c: usize) -> usize {
        self.assoc[&(a, b, c)]
    }

    pub fn associators(&self) -> &BTreeMap<(usize, usize, usize), usize> {
        &self.assoc
    }

    /// `λ_a`.
    pub fn lunit(&self, a: usize) -> usize {
        self.lunit[a]
    }

    /// `ρ_a`.
    pub fn runit(&self, a: usize) -> usize {
        self.runit[a]
    }

    /// Associators, then left and right unitors.
    pub fn coherence_squares(&self) -> Vec<usize> {
        self.assoc.values().chain(&self.lunit).chain(&self.runit).copied().collect()
    }

    /// Every coherence square is an identity and the horizontal unit and
    /// associativity laws hold on the nose.
    pub fn is_strict(&self) -> bool {
        self.coherence_squares().iter().all(|&s| self.base.is_identity_square(s))
            && validate_laws(&self.base, true).is_valid()
    }

    /// Only identity vertical morphisms: a bicategory.
    pub fn is_bicategory(&self) -> bool {
        (0..self.base.num_vmors()).all(|u| self.base.is_identity_vmor(u))
    }
}

pub const COHERENCE_BOUNDARY: &str = "coherence boundary";
pub const COHERENCE_INVERTIBILITY: &str = "coherence invertibility";
pub const ASSOCIATOR_NATURALITY: &str = "associator naturality";
pub const LEFT_UNITOR_NATURALITY: &str = "left unitor naturality";
pub const RIGHT_UNITOR_NATURALITY: &str = "right unitor naturality";
pub const PENTAGON: &str = "pentagon";
pub const TRIANGLE: &str = "triangle";

/// The strict vertical laws, interchange, and the boundary, invertibility,
/// naturality, pentagon and triangle laws of the coherence squares.
pub fn validate_weak(w: &WeakDoubleCategory) -> ValidationReport {
    let d = &*w.base;
    let mut r = validate_laws(d, false);
    if !r.is_valid() {
        return r;
    }
    let hr = |i: usize| d.cell_ref(Sort::HMor, i);
    let sr = |i: usize| d.cell_ref(Sort::Square, i);

    let mut coherence: Vec<(usize, Option<usize>, Option<usize>, Vec<usize>)> = Vec::new();
    for (&(a, b, c), &s) in &w.assoc {
        let top = d.hcomp_m(c, b).and_then(|cb| d.hcomp_m(cb, a));
        let bottom = d.hcomp_m(b, a).and_then(|ba| d.hcomp_m(c, ba));
        coherence.push((s, top, bottom, vec![a, b, c]));
    }
    for a in 0..d.num_hmors() {
        let arrow = d.hmor(a);
        coherence.push((w.lunit[a], d.hcomp_m(d.id_h(arrow.tgt), a), Some(a), vec![a]));
        coherence.push((w.runit[a], d.hcomp_m(a, d.id_h(arrow.src)), Some(a), vec![a]));
    }
    for (s, top, bottom, hmors) in coherence {
        let q = d.square(s);
        let mut cells: Vec<_> = hmors.into_iter().map(hr).collect();
        cells.push(sr(s));
        if Some(q.top) != top || Some(q.bottom) != bottom || !d.is_globular(s) {
            r.push(COHERENCE_BOUNDARY, cells);
        } else if !d.vertical_inverse(s).is_some_and(|i| is_vertical_inverse(d, s, i)) {
            r.push(COHERENCE_INVERTIBILITY, cells);
        }
    }
    if !r.is_valid() {
        return r;
    }

    for (x, qx) in d.squares().iter().enumerate() {
        for &y in d.squares_with_left(qx.right) {
            let qy = d.square(y);
            for &z in d.squares_with_left(qy.right) {
                let qz = d.square(z);
                let tops = w.assoc(qx.top, qy.top, qz.top);
                let bottoms = w.assoc(qx.bottom, qy.bottom, qz.bottom);
                let lhs = v(cell(bottoms), h(h(cell(z), cell(y)), cell(x)));
                let rhs = v(h(cell(z), h(cell(y), cell(x))), cell(tops));
                if !equal(d, &lhs, &rhs) {
                    r.push(ASSOCIATOR_NATURALITY, vec![sr(x), sr(y), sr(z)]);
                }
            }
        }
        let lhs = v(cell(w.lunit[qx.bottom]), h(cell(d.id_sq(qx.right)), cell(x)));
        if !equal(d, &lhs, &v(cell(x), cell(w.lunit[qx.top]))) {
            r.push(LEFT_UNITOR_NATURALITY, vec![sr(x)]);
        }
        let lhs = v(cell(w.runit[qx.bottom]), h(cell(x), cell(d.id_sq(qx.left))));
        if !equal(d, &lhs, &v(cell(x), cell(w.runit[qx.top]))) {
            r.push(RIGHT_UNITOR_NATURALITY, vec![sr(x)]);
        }
    }

    for &(a, b, c) in w.assoc.keys() {
        let (cb, ba) = (d.hcomp_m(c, b).expect("total"), d.hcomp_m(b, a).expect("total"));
        for dd in (0..d.num_hmors()).filter(|&m| d.hmor(m).src == d.hmor(c).tgt) {
            let dc = d.hcomp_m(dd, c).expect("total");
            let e = |m: usize| cell(d.e_sq(m));
            let lhs = v(cell(w.assoc(ba, c, dd)), cell(w.assoc(a, b, dc)));
            let rhs = v(
                h(e(dd), cell(w.assoc(a, b, c))),
                v(cell(w.assoc(a, cb, dd)), h(cell(w.assoc(b, c, dd)), e(a))),
            );
            if !equal(d, &lhs, &rhs) {
                r.push(PENTAGON, vec![hr(a), hr(b), hr(c), hr(dd)]);
            }
        }
    }
    for ((b, a), _) in d.hcomp_m_entries() {
        let id = d.id_h(d.hmor(a).tgt);
        let lhs = v(h(cell(d.e_sq(b)), cell(w.lunit[a])), cell(w.assoc(a, id, b)));
        let rhs = h(cell(w.runit[b]), cell(d.e_sq(a)));
        if !equal(d, &lhs, &rhs) {
            r.push(TRIANGLE, vec![hr(a), hr(b)]);
        }
    }
    r
}

/// A strict double functor between weak double categories: it preserves
/// the skeleton's tables and sends coherence squares to coherence squares.
#[derive(Clone, Debug)]
pub struct WeakDoubleFunctor {
    source: Arc<WeakDoubleCategory>,
    target: Arc<WeakDoubleCategory>,
    functor: DoubleFunctor,
}

impl WeakDoubleFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<WeakDoubleCategory>,
        target: Arc<WeakDoubleCategory>,
        maps: [Vec<usize>; 4],
    ) -> Result<Self> {
        let functor = DoubleFunctor::new(name, source.base.clone(), target.base.clone(), maps)?;
        Ok(Self { source, target, functor })
    }

    pub fn identity(w: Arc<WeakDoubleCategory>) -> Self {
        let functor = DoubleFunctor::identity(w.base.clone());
        Self { source: w.clone(), target: w, functor }
    }

    pub fn name(&self) -> &str {
        self.functor.name()
    }
    pub fn source(&self) -> &Arc<WeakDoubleCategory> {
        &self.source
    }
    pub fn target(&self) -> &Arc<WeakDoubleCategory> {
        &self.target
    }
    /// The underlying map of skeletons.
    pub fn functor(&self) -> &DoubleFunctor {
        &self.functor
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = self.functor.validate();
        let (a, b, f) = (&self.source, &self.target, &self.functor);
        for (&(x, y, z), &s) in &a.assoc {
            if f.sq(s) != b.assoc(f.hmor(x), f.hmor(y), f.hmor(z)) {
                r.push("preserves associators", vec![a.base.cell_ref(Sort::Square, s)]);
            }
        }
        for m in 0..a.base.num_hmors() {
            if f.sq(a.lunit[m]) != b.lunit[f.hmor(m)] || f.sq(a.runit[m]) != b.runit[f.hmor(m)] {
                r.push("preserves unitors", vec![a.base.cell_ref(Sort::HMor, m)]);
            }
        }
        r
    }
}

/// ℍ^w: a bicategory (a weak double category with identity vertical
/// morphisms only) is stored in exactly this shape.
pub fn horizontal_embed_weak(b: &WeakDoubleCategory) -> Result<WeakDoubleCategory> {
    if !b.is_bicategory() {
        return Err(Error::precondition("bicategory", format!("{} has non-identity vertical morphisms", b.name())));
    }
    Ok(b.clone())
}

/// Re-indexes coherence data of `w` into `target` by cell ids.
fn carry_coherence(
    w: &WeakDoubleCategory,
    target: DoubleCategory,
    square_name: impl Fn(usize) -> String,
) -> Result<WeakDoubleCategory> {
    let d = &w.base;
    let hm = |i: usize| {
        target
            .find(Sort::HMor, &d.hmor(i).name)
            .ok_or_else(|| Error::InternalInconsistency(format!("hmor '{}' was not carried along", d.hmor(i).name)))
    };
    let sq = |s: usize| {
        let name = square_name(s);
        target
            .find(Sort::Square, &name)
            .ok_or_else(|| Error::InternalInconsistency(format!("coherence square '{name}' was not carried along")))
    };
    let mut assoc = BTreeMap::new();
    for (&(a, b, c), &s) in &w.assoc {
        assoc.insert((hm(a)?, hm(b)?, hm(c)?), sq(s)?);
    }
    let mut lunit = vec![0; target.num_hmors()];
    let mut runit = vec![0; target.num_hmors()];
    for a in 0..d.num_hmors() {
        lunit[hm(a)?] = sq(w.lunit[a])?;
        runit[hm(a)?] = sq(w.runit[a])?;
    }
    WeakDoubleCategory::new(target, assoc, lunit, runit)
}

/// 𝐇^w: objects, horizontal morphisms and globular squares, with the
/// coherence squares (which are globular) carried along.
pub fn underlying_horizontal_weak(w: &WeakDoubleCategory) -> Result<WeakDoubleCategory> {
    let target = underlying_horizontal(&w.base).into_double();
    carry_coherence(w, target, |s| w.base.square(s).name.clone())
}

/// 𝒱^w: vertical morphisms, squares under horizontal composition, and
/// compatible pairs of globular squares. The associator of squares
/// `x, y, z` is the pair of associators on their tops and bottoms; the
/// unitors likewise.
pub fn vertical_morphism_weak(w: &WeakDoubleCategory) -> Result<WeakDoubleCategory> {
    let d = &*w.base;
    let target = vertical_morphism_2cat(d)?.into_double();
    let missing = || Error::InternalInconsistency(format!("V({}): a composite square is missing", d.name()));
    let mut assoc = BTreeMap::new();
    let mut lunit = vec![0; target.num_hmors()];
    let mut runit = vec![0; target.num_hmors()];
    let hm = |s: usize| target.find(Sort::HMor, &d.square(s).name).ok_or_else(missing);
    let cell2 = |x: usize, y: usize, s0: usize, s1: usize| {
        let name = cell_pair_name(d, x, y, s0, s1);
        target.find(Sort::Square, &name).ok_or_else(|| {
            Error::InternalInconsistency(format!("V({}): coherence 2-cell {name} is not a 2-cell", d.name()))
        })
    };
    for (x, qx) in d.squares().iter().enumerate() {
        for &y in d.squares_with_left(qx.right) {
            let qy = d.square(y);
            for &z in d.squares_with_left(qy.right) {
                let qz = d.square(z);
                let zy_x = d.hcomp_sq(z, y).and_then(|zy| d.hcomp_sq(zy, x)).ok_or_else(missing)?;
                let z_yx = d.hcomp_sq(y, x).and_then(|yx| d.hcomp_sq(z, yx)).ok_or_else(missing)?;
                let s0 = w.assoc(qx.top, qy.top, qz.top);
                let s1 = w.assoc(qx.bottom, qy.bottom, qz.bottom);
                assoc.insert((hm(x)?, hm(y)?, hm(z)?), cell2(zy_x, z_yx, s0, s1)?);
            }
        }
        let l = d.hcomp_sq(d.id_sq(qx.right), x).ok_or_else(missing)?;
        lunit[hm(x)?] = cell2(l, x, w.lunit[qx.top], w.lunit[qx.bottom])?;
        let r = d.hcomp_sq(x, d.id_sq(qx.left)).ok_or_else(missing)?;
        runit[hm(x)?] = cell2(r, x, w.runit[qx.top], w.runit[qx.bottom])?;
    }
    WeakDoubleCategory::new(target, assoc, lunit, runit)
}
