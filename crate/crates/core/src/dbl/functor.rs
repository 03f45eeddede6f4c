use std::sync::Arc;

use super::{DoubleCategory, Sort};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// A map of double categories given on all four sorts.
///
/// Construction checks totality and boundary compatibility; preservation of
/// compositions and identities is checked by [`DoubleFunctor::validate`].
#[derive(Clone, Debug)]
pub struct DoubleFunctor {
    name: String,
    source: Arc<DoubleCategory>,
    target: Arc<DoubleCategory>,
    maps: [Vec<usize>; 4],
}

fn bad_map(msg: impl Into<String>) -> Error {
    Error::MalformedMap(msg.into())
}

impl DoubleFunctor {
    pub fn new(
        name: impl Into<String>,
        source: Arc<DoubleCategory>,
        target: Arc<DoubleCategory>,
        maps: [Vec<usize>; 4],
    ) -> Result<Self> {
        let f = DoubleFunctor { name: name.into(), source, target, maps };
        f.check_shape()?;
        Ok(f)
    }

    /// Builds from name pairs; identity cells left out are sent to the
    /// identity on the image of their boundary.
    pub fn from_names(
        name: impl Into<String>,
        source: Arc<DoubleCategory>,
        target: Arc<DoubleCategory>,
        pairs: &[(Sort, String, String)],
    ) -> Result<Self> {
        let name = name.into();
        let mut maps: [Vec<Option<usize>>; 4] = [
            vec![None; source.num_objects()],
            vec![None; source.num_hmors()],
            vec![None; source.num_vmors()],
            vec![None; source.num_squares()],
        ];
        for (sort, x, y) in pairs {
            let i = source
                .find(*sort, x)
                .ok_or_else(|| bad_map(format!("{name}: unknown source {sort} '{x}'")))?;
            let j = target
                .find(*sort, y)
                .ok_or_else(|| bad_map(format!("{name}: unknown target {sort} '{y}'")))?;
            match maps[sort.index()][i] {
                Some(prev) if prev != j => {
                    return Err(bad_map(format!("{name}: {sort} '{x}' mapped twice")));
                }
                _ => maps[sort.index()][i] = Some(j),
            }
        }
        let missing = |sort: Sort, i: usize| bad_map(format!("{name}: no image for {sort} '{}'", source.cell_name(sort, i)));
        let obj: Vec<usize> = (0..source.num_objects())
            .map(|i| maps[0][i].ok_or_else(|| missing(Sort::Object, i)))
            .collect::<Result<_>>()?;
        for a in 0..source.num_objects() {
            let ih = source.id_h(a);
            maps[1][ih].get_or_insert(target.id_h(obj[a]));
            let iv = source.id_v(a);
            maps[2][iv].get_or_insert(target.id_v(obj[a]));
        }
        let hmor: Vec<usize> = (0..source.num_hmors())
            .map(|i| maps[1][i].ok_or_else(|| missing(Sort::HMor, i)))
            .collect::<Result<_>>()?;
        let vmor: Vec<usize> = (0..source.num_vmors())
            .map(|i| maps[2][i].ok_or_else(|| missing(Sort::VMor, i)))
            .collect::<Result<_>>()?;
        for a in 0..source.num_hmors() {
            maps[3][source.e_sq(a)].get_or_insert(target.e_sq(hmor[a]));
        }
        for u in 0..source.num_vmors() {
            maps[3][source.id_sq(u)].get_or_insert(target.id_sq(vmor[u]));
        }
        let sq: Vec<usize> = (0..source.num_squares())
            .map(|i| maps[3][i].ok_or_else(|| missing(Sort::Square, i)))
            .collect::<Result<_>>()?;
        DoubleFunctor::new(name, source, target, [obj, hmor, vmor, sq])
    }

    pub fn identity(a: Arc<DoubleCategory>) -> Self {
        let maps = [
            (0..a.num_objects()).collect(),
            (0..a.num_hmors()).collect(),
            (0..a.num_vmors()).collect(),
            (0..a.num_squares()).collect(),
        ];
        DoubleFunctor { name: format!("id_{}", a.name()), source: a.clone(), target: a, maps }
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &DoubleFunctor) -> Result<DoubleFunctor> {
        if !Arc::ptr_eq(&self.target, &g.source) && !same_presentation(&self.target, &g.source) {
            return Err(bad_map(format!("cannot compose {} with {}: target/source differ", self.name, g.name)));
        }
        let maps = std::array::from_fn(|k| self.maps[k].iter().map(|&x| g.maps[k][x]).collect());
        DoubleFunctor::new(format!("{}{}", g.name, self.name), self.source.clone(), g.target.clone(), maps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn source(&self) -> &Arc<DoubleCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DoubleCategory> {
        &self.target
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

    pub fn map(&self, sort: Sort) -> &[usize] {
        &self.maps[sort.index()]
    }

    pub fn maps(&self) -> &[Vec<usize>; 4] {
        &self.maps
    }

    fn check_shape(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        for sort in Sort::ALL {
            let m = &self.maps[sort.index()];
            if m.len() != s.count(sort) {
                return Err(bad_map(format!("{}: {sort} map has wrong length", self.name)));
            }
            if let Some(&x) = m.iter().find(|&&x| x >= t.count(sort)) {
                return Err(bad_map(format!("{}: {sort} image {x} out of range", self.name)));
            }
        }
        for (i, a) in s.hmors().iter().enumerate() {
            let b = t.hmor(self.hmor(i));
            if b.src != self.obj(a.src) || b.tgt != self.obj(a.tgt) {
                return Err(bad_map(format!("{}: boundary mismatch at hmor '{}'", self.name, a.name)));
            }
        }
        for (i, a) in s.vmors().iter().enumerate() {
            let b = t.vmor(self.vmor(i));
            if b.src != self.obj(a.src) || b.tgt != self.obj(a.tgt) {
                return Err(bad_map(format!("{}: boundary mismatch at vmor '{}'", self.name, a.name)));
            }
        }
        for (i, q) in s.squares().iter().enumerate() {
            let r = t.square(self.sq(i));
            if r.top != self.hmor(q.top)
                || r.bottom != self.hmor(q.bottom)
                || r.left != self.vmor(q.left)
                || r.right != self.vmor(q.right)
            {
                return Err(bad_map(format!("{}: boundary mismatch at square '{}'", self.name, q.name)));
            }
        }
        Ok(())
    }

    /// Preservation of identities and all four compositions.
    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&*self.source, &*self.target);
        let mut r = ValidationReport::default();
        for a in 0..s.num_objects() {
            let fa = self.obj(a);
            if self.hmor(s.id_h(a)) != t.id_h(fa) || self.vmor(s.id_v(a)) != t.id_v(fa) {
                r.push("preserves identities", vec![s.cell_ref(Sort::Object, a)]);
            }
        }
        for a in 0..s.num_hmors() {
            if self.sq(s.e_sq(a)) != t.e_sq(self.hmor(a)) {
                r.push("preserves identities", vec![s.cell_ref(Sort::HMor, a)]);
            }
        }
        for u in 0..s.num_vmors() {
            if self.sq(s.id_sq(u)) != t.id_sq(self.vmor(u)) {
                r.push("preserves identities", vec![s.cell_ref(Sort::VMor, u)]);
            }
        }
        let tables = [
            (Sort::HMor, s.hcomp_m_entries(), "preserves hcomp of hmors"),
            (Sort::VMor, s.vcomp_m_entries(), "preserves vcomp of vmors"),
            (Sort::Square, s.hcomp_sq_entries(), "preserves hcomp of squares"),
            (Sort::Square, s.vcomp_sq_entries(), "preserves vcomp of squares"),
        ];
        for (k, (sort, entries, law)) in tables.into_iter().enumerate() {
            let m = self.map(sort);
            for ((x, y), z) in entries {
                let image = match k {
                    0 => t.hcomp_m(m[x], m[y]),
                    1 => t.vcomp_m(m[x], m[y]),
                    2 => t.hcomp_sq(m[x], m[y]),
                    _ => t.vcomp_sq(m[x], m[y]),
                };
                if image != Some(m[z]) {
                    r.push(law, vec![s.cell_ref(sort, x), s.cell_ref(sort, y)]);
                }
            }
        }
        r
    }

    pub fn is_identity_on_cells(&self) -> bool {
        same_presentation(&self.source, &self.target)
            && self.maps.iter().all(|m| m.iter().enumerate().all(|(i, &x)| i == x))
    }

    /// Equality of the underlying maps (ignoring names).
    pub fn same_maps(&self, other: &DoubleFunctor) -> bool {
        self.maps == other.maps
    }
}

/// Same cells and tables up to the structure's name.
pub fn same_presentation(a: &DoubleCategory, b: &DoubleCategory) -> bool {
    a.objects() == b.objects()
        && a.hmors() == b.hmors()
        && a.vmors() == b.vmors()
        && a.squares() == b.squares()
        && a.hcomp_m_entries() == b.hcomp_m_entries()
        && a.vcomp_m_entries() == b.vcomp_m_entries()
        && a.hcomp_sq_entries() == b.hcomp_sq_entries()
        && a.vcomp_sq_entries() == b.vcomp_sq_entries()
}
