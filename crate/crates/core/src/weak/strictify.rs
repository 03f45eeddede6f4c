use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{validate_weak, WeakDoubleCategory, WeakDoubleFunctor};
use crate::construct::{underlying_horizontal_category, underlying_vertical_category};
use crate::dbl::validate::validate_double_category;
use crate::dbl::{DoubleCategory, DoubleCategoryBuilder, Sort};
use crate::error::{Error, Result};
use crate::fincat::{is_disjoint_union_1_2, is_free_category};
use crate::model::check_double_biequivalence;
use crate::report::CheckReport;

/// Union-find whose representative is always the least member.
struct Classes(Vec<usize>);

impl Classes {
    fn new(n: usize) -> Self {
        Classes((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// True when two classes were merged.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (x, y) = (self.find(x), self.find(y));
        if x == y {
            return false;
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        self.0[hi] = lo;
        true
    }

    fn roots(&mut self) -> Vec<usize> {
        (0..self.0.len()).map(|x| self.find(x)).collect()
    }
}

/// The coherence squares closed under both compositions: associators,
/// unitors, their vertical inverses and the squares `e_a`.
pub fn coherence_closure(w: &WeakDoubleCategory) -> Vec<bool> {
    let d = &**w.base();
    let mut member = vec![false; d.num_squares()];
    let mut list = Vec::new();
    let add = |s: usize, member: &mut Vec<bool>, list: &mut Vec<usize>| {
        if !member[s] {
            member[s] = true;
            list.push(s);
        }
    };
    for s in w.coherence_squares() {
        add(s, &mut member, &mut list);
        if let Some(i) = d.vertical_inverse(s) {
            add(i, &mut member, &mut list);
        }
    }
    for a in 0..d.num_hmors() {
        add(d.e_sq(a), &mut member, &mut list);
    }
    let mut next = 0;
    while next < list.len() {
        let x = list[next];
        next += 1;
        let mut found = Vec::new();
        for &y in &list[..next] {
            for (p, q) in [(x, y), (y, x)] {
                found.extend(d.hcomp_sq(p, q));
                found.extend(d.vcomp_sq(p, q));
            }
        }
        for s in found {
            add(s, &mut member, &mut list);
        }
    }
    member
}

/// S(B) with its quotient unit `B -> S(B)`.
#[derive(Clone, Debug)]
pub struct StrictificationResult {
    pub strict: Arc<DoubleCategory>,
    /// Bijective on objects and vertical morphisms.
    pub unit: WeakDoubleFunctor,
}

/// Quotient of `w` by the congruence that makes every associator and
/// unitor an identity.
///
/// Horizontal morphisms are identified along the boundaries of coherence
/// squares, closed under composition. Squares are identified by
/// `κ ~ e_{top κ}` for every square `κ` of [`coherence_closure`] and by
/// `e_a ~ e_a'` for identified `a, a'`, saturated under both compositions.
/// Two squares whose boundaries only agree up to identified morphisms
/// compose vertically through a coherence square inserted between them.
pub fn strictify(w: &WeakDoubleCategory) -> Result<StrictificationResult> {
    let report = validate_weak(w);
    if !report.is_valid() {
        return Err(Error::Validation { name: w.name().to_string(), report });
    }
    let d = &**w.base();
    let closure = coherence_closure(w);
    let coherence: Vec<usize> = (0..d.num_squares()).filter(|&s| closure[s]).collect();

    let mut hm = Classes::new(d.num_hmors());
    for &k in &coherence {
        hm.union(d.square(k).top, d.square(k).bottom);
    }
    let hcomp_m = d.hcomp_m_entries();
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &((y, x), z) in &hcomp_m {
            let key = (hm.find(y), hm.find(x));
            match seen.get(&key) {
                Some(&z0) => changed |= hm.union(z0, z),
                None => {
                    seen.insert(key, z);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let hroot = hm.roots();

    // A coherence square p ⇒ q for every pair of identified morphisms;
    // e_p comes first among the endomorphisms of p.
    let mut path: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..d.num_hmors() {
        path.insert((a, a), d.e_sq(a));
    }
    for &k in &coherence {
        let q = d.square(k);
        path.entry((q.top, q.bottom)).or_insert(k);
    }
    for p in 0..d.num_hmors() {
        for q in (0..d.num_hmors()).filter(|&q| hroot[q] == hroot[p]) {
            if !path.contains_key(&(p, q)) {
                return Err(Error::InternalInconsistency(format!(
                    "{}: no coherence square {} => {}",
                    d.name(),
                    d.hmor(p).name,
                    d.hmor(q).name
                )));
            }
        }
    }
    let vcomp_through = |y: usize, x: usize| -> Option<usize> {
        let k = *path.get(&(d.square(x).bottom, d.square(y).top))?;
        d.vcomp_sq(k, x).and_then(|kx| d.vcomp_sq(y, kx))
    };

    let mut sq = Classes::new(d.num_squares());
    for &k in &coherence {
        sq.union(k, d.e_sq(d.square(k).top));
    }
    for a in 0..d.num_hmors() {
        sq.union(d.e_sq(a), d.e_sq(hroot[a]));
    }
    let mut by_top_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, q) in d.squares().iter().enumerate() {
        by_top_class.entry(hroot[q.top]).or_default().push(s);
    }
    let hcomp_sq = d.hcomp_sq_entries();
    loop {
        let mut changed = false;
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for &((y, x), z) in &hcomp_sq {
            let key = (sq.find(y), sq.find(x));
            match seen.get(&key) {
                Some(&z0) => changed |= sq.union(z0, z),
                None => {
                    seen.insert(key, z);
                }
            }
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (x, qx) in d.squares().iter().enumerate() {
            let Some(above) = by_top_class.get(&hroot[qx.bottom]) else { continue };
            for &y in above {
                let z = vcomp_through(y, x).ok_or_else(|| {
                    Error::InternalInconsistency(format!(
                        "{}: {} . {} has no composite through coherence",
                        d.name(),
                        d.square(y).name,
                        d.square(x).name
                    ))
                })?;
                let key = (sq.find(y), sq.find(x));
                match seen.get(&key) {
                    Some(&z0) => changed |= sq.union(z0, z),
                    None => {
                        seen.insert(key, z);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let sroot = sq.roots();

    let strict = quotient(d, &hroot, &sroot, &vcomp_through)?;
    let report = validate_double_category(&strict);
    if !report.is_valid() {
        return Err(Error::Validation { name: strict.name().to_string(), report });
    }
    let strict = Arc::new(strict);
    let locate = |sort: Sort, name: &str| {
        strict
            .find(sort, name)
            .ok_or_else(|| Error::InternalInconsistency(format!("S({}): '{name}' is missing", d.name())))
    };
    let maps = [
        (0..d.num_objects()).map(|o| locate(Sort::Object, d.object(o))).collect::<Result<Vec<_>>>()?,
        (0..d.num_hmors()).map(|a| locate(Sort::HMor, &d.hmor(hroot[a]).name)).collect::<Result<Vec<_>>>()?,
        (0..d.num_vmors()).map(|u| locate(Sort::VMor, &d.vmor(u).name)).collect::<Result<Vec<_>>>()?,
        (0..d.num_squares()).map(|s| locate(Sort::Square, &d.square(sroot[s]).name)).collect::<Result<Vec<_>>>()?,
    ];
    let target = Arc::new(WeakDoubleCategory::from_strict(strict.as_ref().clone()));
    let unit = WeakDoubleFunctor::new(format!("eta_{}", d.name()), Arc::new(w.clone()), target, maps)?;
    let report = unit.validate();
    if !report.is_valid() {
        return Err(Error::Validation { name: unit.name().to_string(), report });
    }
    Ok(StrictificationResult { strict, unit })
}

/// The strict double category on the classes, named by their least member.
fn quotient(
    d: &DoubleCategory,
    hroot: &[usize],
    sroot: &[usize],
    vcomp_through: &dyn Fn(usize, usize) -> Option<usize>,
) -> Result<DoubleCategory> {
    let hn = |a: usize| d.hmor(hroot[a]).name.as_str();
    let sn = |s: usize| d.square(sroot[s]).name.as_str();
    let hreps: Vec<usize> = (0..d.num_hmors()).filter(|&a| hroot[a] == a).collect();
    let sreps: Vec<usize> = (0..d.num_squares()).filter(|&s| sroot[s] == s).collect();
    let missing = |what: &str| Error::InternalInconsistency(format!("S({}): missing composite of {what}", d.name()));

    let mut b = DoubleCategoryBuilder::new(format!("S({})", d.name()));
    for o in d.objects() {
        b.object(o);
    }
    for &a in &hreps {
        b.hmor(hn(a), d.object(d.hmor(a).src), d.object(d.hmor(a).tgt));
    }
    for v in d.vmors() {
        b.vmor(&v.name, d.object(v.src), d.object(v.tgt));
    }
    for &s in &sreps {
        let q = d.square(s);
        b.square(sn(s), hn(q.top), hn(q.bottom), &d.vmor(q.left).name, &d.vmor(q.right).name);
    }
    for (o, name) in d.objects().iter().enumerate() {
        b.id_h(name, hn(d.id_h(o)));
        b.id_v(name, &d.vmor(d.id_v(o)).name);
    }
    for &a in &hreps {
        b.e_sq(hn(a), sn(d.e_sq(a)));
    }
    for (u, v) in d.vmors().iter().enumerate() {
        b.id_sq(&v.name, sn(d.id_sq(u)));
    }
    for &x in &hreps {
        for &y in hreps.iter().filter(|&&y| d.hmor(y).src == d.hmor(x).tgt) {
            let z = d.hcomp_m(y, x).ok_or_else(|| missing("hmors"))?;
            b.hcomp_m(hn(y), hn(x), hn(z));
        }
    }
    for ((y, x), z) in d.vcomp_m_entries() {
        b.vcomp_m(&d.vmor(y).name, &d.vmor(x).name, &d.vmor(z).name);
    }
    for &x in &sreps {
        let qx = d.square(x);
        for &y in &sreps {
            let qy = d.square(y);
            if qy.left == qx.right {
                let z = d.hcomp_sq(y, x).ok_or_else(|| missing("squares"))?;
                b.hcomp_sq(sn(y), sn(x), sn(z));
            }
            if hroot[qy.top] == hroot[qx.bottom] {
                let z = vcomp_through(y, x).ok_or_else(|| missing("squares"))?;
                b.vcomp_sq(sn(y), sn(x), sn(z));
            }
        }
    }
    b.build()
}

/// Verdict of the finite sufficient cofibrancy test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeakCofibrancy {
    #[serde(rename = "cofibrant (sufficient test)")]
    CofibrantSufficient,
    #[serde(rename = "unknown")]
    Unknown,
}

impl std::fmt::Display for WeakCofibrancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeakCofibrancy::CofibrantSufficient => "cofibrant (sufficient test)",
            WeakCofibrancy::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakCofibrancyReport {
    /// The vertical category is a disjoint union of copies of 𝟙 and 𝟚.
    pub vertical_1_2: bool,
    /// Every endomorphism in the coherence closure is an identity square.
    pub coherence_thin: bool,
    /// The horizontal category of S(B) is free.
    pub strict_horizontal_free: bool,
    pub verdict: WeakCofibrancy,
}

/// A free horizontal compositional graph is infinite, so a finite table
/// can only be tested for what freeness provides: a thin coherence
/// closure, a free horizontal category after strictification, and a
/// vertical category that is a disjoint union of 𝟙s and 𝟚s. Passing
/// reports "cofibrant (sufficient test)", anything else "unknown".
pub fn weak_cofibrancy(w: &WeakDoubleCategory) -> Result<WeakCofibrancyReport> {
    let d = &**w.base();
    let vertical_1_2 = is_disjoint_union_1_2(&underlying_vertical_category(d));
    let closure = coherence_closure(w);
    let coherence_thin = (0..d.num_squares())
        .filter(|&s| closure[s])
        .all(|s| d.square(s).top != d.square(s).bottom || s == d.e_sq(d.square(s).top));
    let s = strictify(w)?;
    let strict_horizontal_free = is_free_category(&underlying_horizontal_category(&s.strict)).free;
    let verdict = if vertical_1_2 && coherence_thin && strict_horizontal_free {
        WeakCofibrancy::CofibrantSufficient
    } else {
        WeakCofibrancy::Unknown
    };
    Ok(WeakCofibrancyReport { vertical_1_2, coherence_thin, strict_horizontal_free, verdict })
}

/// db1-db4 for a strict double functor of weak double categories.
/// Horizontal equivalences and weak inverses are read off the skeleton:
/// their defining equations only compose squares whose boundaries already
/// match, so no coherence square has to be pasted in.
pub fn check_double_biequivalence_weak(f: &WeakDoubleFunctor) -> CheckReport {
    check_double_biequivalence(f.functor())
}
