use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dbl::{DoubleCategory, DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::paste::{cell, equal, h, is_vertical_inverse, v, Paste};
use crate::report::ValidationReport;

/// A double functor that preserves horizontal composition only up to
/// vertically invertible compositor squares `Φ_{b,c}: Gc∘Gb ⇒ G(c∘b)`.
#[derive(Clone, Debug)]
pub struct HorizontallyPseudoDoubleFunctor {
    name: String,
    source: Arc<DoubleCategory>,
    target: Arc<DoubleCategory>,
    maps: [Vec<usize>; 4],
    /// Keyed by `(c, b)` for every composable pair of the source.
    compositors: BTreeMap<(usize, usize), usize>,
}

impl HorizontallyPseudoDoubleFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<DoubleCategory>,
        target: Arc<DoubleCategory>,
        maps: [Vec<usize>; 4],
        compositors: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let name = name.into();
        for sort in Sort::ALL {
            let m = &maps[sort.index()];
            if m.len() != source.count(sort) || m.iter().any(|&y| y >= target.count(sort)) {
                return Err(Error::MalformedMap(format!("{name}: {sort:?} map has the wrong shape")));
            }
        }
        let pairs: Vec<(usize, usize)> = source.hcomp_m_entries().into_iter().map(|(k, _)| k).collect();
        if pairs.len() != compositors.len() || pairs.iter().any(|k| !compositors.contains_key(k)) {
            return Err(Error::MalformedMap(format!("{name}: compositors must cover exactly the composable pairs")));
        }
        if compositors.values().any(|&s| s >= target.num_squares()) {
            return Err(Error::MalformedMap(format!("{name}: compositor out of range")));
        }
        Ok(Self { name, source, target, maps, compositors })
    }

    /// A strict double functor, with identity compositors.
    pub fn from_strict(f: &DoubleFunctor) -> Self {
        let b = f.target();
        let compositors = f
            .source()
            .hcomp_m_entries()
            .into_iter()
            .map(|(k, yx)| (k, b.e_sq(f.hmor(yx))))
            .collect();
        Self {
            name: f.name().to_string(),
            source: f.source().clone(),
            target: f.target().clone(),
            maps: f.maps().clone(),
            compositors,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn source(&self) -> &Arc<DoubleCategory> {
        &self.source
    }
    pub fn target(&self) -> &Arc<DoubleCategory> {
        &self.target
    }
    pub fn maps(&self) -> &[Vec<usize>; 4] {
        &self.maps
    }
    pub fn compositors(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.compositors
    }

    pub fn obj(&self, i: usize) -> usize {
        self.maps[0][i]
    }
    pub fn hmor(&self, i: usize) -> usize {
        self.maps[1][i]
    }
    pub fn vmor(&self, i: usize) -> usize {
        self.maps[2][i]
    }
    pub fn sq(&self, i: usize) -> usize {
        self.maps[3][i]
    }

    /// `Φ_{x,y}` for the composable pair `y∘x`.
    pub fn compositor(&self, y: usize, x: usize) -> usize {
        self.compositors[&(y, x)]
    }

    pub(crate) fn compositor_paste(&self, y: usize, x: usize) -> Paste {
        cell(self.compositor(y, x))
    }

    /// Horizontal identities are preserved on the nose.
    pub fn is_normal(&self) -> bool {
        let (a, b) = (&self.source, &self.target);
        (0..a.num_objects()).all(|o| self.hmor(a.id_h(o)) == b.id_h(self.obj(o)))
    }

    /// The underlying strict double functor when every compositor is an
    /// identity square.
    pub fn to_strict(&self) -> Option<DoubleFunctor> {
        let b = &self.target;
        let strict = self.compositors.values().all(|&s| s == b.e_sq(b.square(s).top));
        if !strict {
            return None;
        }
        DoubleFunctor::new(self.name.clone(), self.source.clone(), self.target.clone(), self.maps.clone()).ok()
    }

    /// `f ∘ self` for a strict `f`.
    pub fn then_strict(&self, f: &DoubleFunctor) -> Self {
        let maps = std::array::from_fn(|k| self.maps[k].iter().map(|&x| f.maps()[k][x]).collect());
        let compositors = self.compositors.iter().map(|(&k, &s)| (k, f.sq(s))).collect();
        Self {
            name: format!("{}{}", f.name(), self.name),
            source: self.source.clone(),
            target: f.target().clone(),
            maps,
            compositors,
        }
    }

    /// `self ∘ f` for a strict `f`.
    pub fn after_strict(&self, f: &DoubleFunctor) -> Self {
        let maps = std::array::from_fn(|k| f.maps()[k].iter().map(|&x| self.maps[k][x]).collect());
        let compositors = f
            .source()
            .hcomp_m_entries()
            .into_iter()
            .map(|((y, x), _)| ((y, x), self.compositor(f.hmor(y), f.hmor(x))))
            .collect();
        Self {
            name: format!("{}{}", self.name, f.name()),
            source: f.source().clone(),
            target: self.target.clone(),
            maps,
            compositors,
        }
    }

    /// Boundaries, strict vertical structure, normality, and the
    /// invertibility, unit, associativity and naturality laws of the
    /// compositors.
    pub fn verify(&self) -> ValidationReport {
        let (a, b) = (&*self.source, &*self.target);
        let mut report = ValidationReport::default();
        let mut fail = |law: &str, sort: Sort, x: usize| report.push(law, vec![a.cell_ref(sort, x)]);
        for (m, arrow) in a.hmors().iter().enumerate() {
            let y = b.hmor(self.hmor(m));
            if (y.src, y.tgt) != (self.obj(arrow.src), self.obj(arrow.tgt)) {
                fail("hmor boundary", Sort::HMor, m);
            }
        }
        for (u, arrow) in a.vmors().iter().enumerate() {
            let y = b.vmor(self.vmor(u));
            if (y.src, y.tgt) != (self.obj(arrow.src), self.obj(arrow.tgt)) {
                fail("vmor boundary", Sort::VMor, u);
            }
        }
        for (s, q) in a.squares().iter().enumerate() {
            let y = b.square(self.sq(s));
            let expect = (self.hmor(q.top), self.hmor(q.bottom), self.vmor(q.left), self.vmor(q.right));
            if (y.top, y.bottom, y.left, y.right) != expect {
                fail("square boundary", Sort::Square, s);
            }
        }
        for o in 0..a.num_objects() {
            if self.hmor(a.id_h(o)) != b.id_h(self.obj(o)) {
                fail("normal", Sort::Object, o);
            }
            if self.vmor(a.id_v(o)) != b.id_v(self.obj(o)) {
                fail("vertical identity", Sort::Object, o);
            }
        }
        if !report.is_valid() {
            return report;
        }
        let mut fail = |law: &str, sort: Sort, x: usize| report.push(law, vec![a.cell_ref(sort, x)]);
        for ((y, x), yx) in a.vcomp_m_entries() {
            if b.vcomp_m(self.vmor(y), self.vmor(x)) != Some(self.vmor(yx)) {
                fail("vertical composition", Sort::VMor, yx);
            }
        }
        for ((y, x), yx) in a.vcomp_sq_entries() {
            if b.vcomp_sq(self.sq(y), self.sq(x)) != Some(self.sq(yx)) {
                fail("vertical composition of squares", Sort::Square, yx);
            }
        }
        for u in 0..a.num_vmors() {
            if self.sq(a.id_sq(u)) != b.id_sq(self.vmor(u)) {
                fail("identity square", Sort::VMor, u);
            }
        }
        for m in 0..a.num_hmors() {
            if self.sq(a.e_sq(m)) != b.e_sq(self.hmor(m)) {
                fail("vertical identity square", Sort::HMor, m);
            }
        }
        for ((y, x), yx) in a.hcomp_m_entries() {
            let phi = self.compositor(y, x);
            let q = b.square(phi);
            let expect = (
                b.hcomp_m(self.hmor(y), self.hmor(x)),
                Some(self.hmor(yx)),
                b.id_v(self.obj(a.hmor(x).src)),
                b.id_v(self.obj(a.hmor(y).tgt)),
            );
            if (Some(q.top), Some(q.bottom), q.left, q.right) != expect {
                fail("compositor boundary", Sort::HMor, yx);
                continue;
            }
            if !b.vertical_inverse(phi).is_some_and(|i| is_vertical_inverse(b, phi, i)) {
                fail("compositor invertibility", Sort::HMor, yx);
            }
            if (a.is_identity_hmor(x) || a.is_identity_hmor(y)) && phi != b.e_sq(self.hmor(yx)) {
                fail("compositor unit", Sort::HMor, yx);
            }
        }
        if !report.is_valid() {
            return report;
        }
        let mut fail = |law: &str, cells: Vec<usize>| {
            report.push(law, cells.into_iter().map(|m| a.cell_ref(Sort::HMor, m)).collect())
        };
        // associativity for x, then y, then z
        for ((y, x), yx) in a.hcomp_m_entries() {
            for z in a.hmors().iter().enumerate().filter(|(_, m)| m.src == a.hmor(y).tgt).map(|(z, _)| z) {
                let (Some(zy), Some(zyx)) = (a.hcomp_m(z, y), a.hcomp_m(z, yx)) else { continue };
                let lhs = v(cell(self.compositor(z, yx)), h(cell(b.e_sq(self.hmor(z))), cell(self.compositor(y, x))));
                let rhs = v(cell(self.compositor(zy, x)), h(cell(self.compositor(z, y)), cell(b.e_sq(self.hmor(x)))));
                if !equal(b, &lhs, &rhs) {
                    fail("compositor associativity", vec![x, y, z, zyx]);
                }
            }
        }
        // naturality in pairs of horizontally composable squares
        for ((t, s), ts) in a.hcomp_sq_entries() {
            let (qs, qt) = (a.square(s), a.square(t));
            let lhs = v(cell(self.compositor(qt.bottom, qs.bottom)), h(cell(self.sq(t)), cell(self.sq(s))));
            let rhs = v(cell(self.sq(ts)), cell(self.compositor(qt.top, qs.top)));
            if !equal(b, &lhs, &rhs) {
                report.push("compositor naturality", vec![a.cell_ref(Sort::Square, s), a.cell_ref(Sort::Square, t)]);
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    #[test]
    fn strict_functors_are_normal_and_valid() {
        for f in functors() {
            let g = HorizontallyPseudoDoubleFunctor::from_strict(&f);
            assert!(g.is_normal());
            let r = g.verify();
            assert!(r.is_valid(), "{}: {r}", f.name());
            assert!(g.to_strict().unwrap().same_maps(&f));
        }
    }

    #[test]
    fn composites_with_strict_functors() {
        let (f, g) = (i2(), j2());
        let p = HorizontallyPseudoDoubleFunctor::from_strict(&f);
        let fg = f.then(&g).unwrap();
        assert!(p.then_strict(&g).to_strict().unwrap().same_maps(&fg));
        let q = HorizontallyPseudoDoubleFunctor::from_strict(&g);
        assert!(q.after_strict(&f).to_strict().unwrap().same_maps(&fg));
    }

    #[test]
    fn broken_compositor_is_reported() {
        let f = DoubleFunctor::identity(Arc::new(cinv_h()));
        let p = HorizontallyPseudoDoubleFunctor::from_strict(&f);
        let a = f.source();
        let fm = a.find(Sort::HMor, "f").unwrap();
        let key = (a.id_h(a.hmor(fm).tgt), fm);
        let mut compositors = p.compositors().clone();
        compositors.insert(key, a.find(Sort::Square, "t").unwrap());
        let broken = HorizontallyPseudoDoubleFunctor::new("G", p.source().clone(), p.target().clone(), p.maps().clone(), compositors).unwrap();
        assert!(broken.verify().has_law("compositor boundary"));
    }
}
