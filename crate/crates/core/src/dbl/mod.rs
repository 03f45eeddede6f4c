//! Finite double categories presented by explicit composition tables.
//!
//! Categories and 2-categories are stored in the same presentation (with
//! identity-only vertical structure, see [`crate::fincat`]), so the builder,
//! validation, functor enumeration and isomorphism search are shared.

mod builder;
pub mod enumerate;
pub mod functor;
pub mod iso;
pub mod ops;
pub mod validate;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::report::CellRef;

pub use builder::DoubleCategoryBuilder;
pub use functor::DoubleFunctor;

/// The four kinds of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Object,
    HMor,
    VMor,
    Square,
}

impl Sort {
    pub const ALL: [Sort; 4] = [Sort::Object, Sort::HMor, Sort::VMor, Sort::Square];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Object => "object",
            Sort::HMor => "hmor",
            Sort::VMor => "vmor",
            Sort::Square => "square",
        })
    }
}

/// A horizontal or vertical morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A square with its boundary: `top: src(left) -> src(right)` and
/// `bottom: tgt(left) -> tgt(right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub name: String,
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Square {
    pub fn boundary(&self) -> Boundary {
        Boundary { top: self.top, bottom: self.bottom, left: self.left, right: self.right }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boundary {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

/// Whether ids may use the given character.
pub fn is_id_char(c: char) -> bool {
    c.is_alphanumeric() || "_'#@|~!$%&+^{}".contains(c)
}

pub fn is_valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_id_char)
}

type Table = HashMap<(usize, usize), usize>;

#[derive(Clone, Debug)]
pub struct DoubleCategory {
    name: String,
    weak_horizontal: bool,
    objects: Vec<String>,
    hmors: Vec<Arrow>,
    vmors: Vec<Arrow>,
    squares: Vec<Square>,
    id_h: Vec<usize>,
    id_v: Vec<usize>,
    e_sq: Vec<usize>,
    id_sq: Vec<usize>,
    hcomp_m: Table,
    vcomp_m: Table,
    hcomp_sq: Table,
    vcomp_sq: Table,
    names: [HashMap<String, usize>; 4],
    hom_h: HashMap<(usize, usize), Vec<usize>>,
    hom_v: HashMap<(usize, usize), Vec<usize>>,
    by_boundary: HashMap<Boundary, Vec<usize>>,
    by_left: Vec<Vec<usize>>,
    by_right: Vec<Vec<usize>>,
    by_top: Vec<Vec<usize>>,
    by_bottom: Vec<Vec<usize>>,
    vinv: Vec<Option<usize>>,
    hinv: Vec<Option<usize>>,
}

const EMPTY: &[usize] = &[];

impl DoubleCategory {
    pub fn builder(name: impl Into<String>) -> DoubleCategoryBuilder {
        DoubleCategoryBuilder::new(name)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Built without horizontal unit autofill (weak presentations).
    pub fn is_weak_horizontal(&self) -> bool {
        self.weak_horizontal
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_hmors(&self) -> usize {
        self.hmors.len()
    }
    pub fn num_vmors(&self) -> usize {
        self.vmors.len()
    }
    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn count(&self, sort: Sort) -> usize {
        match sort {
            Sort::Object => self.objects.len(),
            Sort::HMor => self.hmors.len(),
            Sort::VMor => self.vmors.len(),
            Sort::Square => self.squares.len(),
        }
    }

    /// Total number of cells of all sorts.
    pub fn cell_count(&self) -> usize {
        Sort::ALL.iter().map(|&s| self.count(s)).sum()
    }

    pub fn object(&self, i: usize) -> &str {
        &self.objects[i]
    }
    pub fn hmor(&self, i: usize) -> &Arrow {
        &self.hmors[i]
    }
    pub fn vmor(&self, i: usize) -> &Arrow {
        &self.vmors[i]
    }
    pub fn square(&self, i: usize) -> &Square {
        &self.squares[i]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }
    pub fn hmors(&self) -> &[Arrow] {
        &self.hmors
    }
    pub fn vmors(&self) -> &[Arrow] {
        &self.vmors
    }
    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn cell_name(&self, sort: Sort, i: usize) -> &str {
        match sort {
            Sort::Object => &self.objects[i],
            Sort::HMor => &self.hmors[i].name,
            Sort::VMor => &self.vmors[i].name,
            Sort::Square => &self.squares[i].name,
        }
    }

    pub fn cell_ref(&self, sort: Sort, i: usize) -> CellRef {
        CellRef::new(sort, self.cell_name(sort, i))
    }

    pub fn find(&self, sort: Sort, name: &str) -> Option<usize> {
        self.names[sort.index()].get(name).copied()
    }

    pub fn id_h(&self, obj: usize) -> usize {
        self.id_h[obj]
    }
    pub fn id_v(&self, obj: usize) -> usize {
        self.id_v[obj]
    }
    /// Vertical identity square `e_a` of a horizontal morphism.
    pub fn e_sq(&self, hmor: usize) -> usize {
        self.e_sq[hmor]
    }
    /// Horizontal identity square `id_u` of a vertical morphism.
    pub fn id_sq(&self, vmor: usize) -> usize {
        self.id_sq[vmor]
    }
    pub fn box_sq(&self, obj: usize) -> usize {
        self.e_sq[self.id_h[obj]]
    }

    pub fn is_identity_hmor(&self, a: usize) -> bool {
        self.id_h[self.hmors[a].src] == a
    }
    pub fn is_identity_vmor(&self, u: usize) -> bool {
        self.id_v[self.vmors[u].src] == u
    }
    pub fn is_identity_square(&self, s: usize) -> bool {
        let sq = &self.squares[s];
        self.e_sq[sq.top] == s || self.id_sq[sq.left] == s
    }
    /// Left and right boundaries are vertical identities.
    pub fn is_globular(&self, s: usize) -> bool {
        let sq = &self.squares[s];
        self.is_identity_vmor(sq.left) && self.is_identity_vmor(sq.right)
    }
    /// Top and bottom boundaries are horizontal identities.
    pub fn is_vertically_globular(&self, s: usize) -> bool {
        let sq = &self.squares[s];
        self.is_identity_hmor(sq.top) && self.is_identity_hmor(sq.bottom)
    }

    /// `b ∘ a`.
    pub fn hcomp_m(&self, b: usize, a: usize) -> Option<usize> {
        self.hcomp_m.get(&(b, a)).copied()
    }
    /// `v • u`.
    pub fn vcomp_m(&self, v: usize, u: usize) -> Option<usize> {
        self.vcomp_m.get(&(v, u)).copied()
    }
    /// Horizontal composite with `alpha` on the left.
    pub fn hcomp_sq(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.hcomp_sq.get(&(beta, alpha)).copied()
    }
    /// Vertical composite with `alpha` on top.
    pub fn vcomp_sq(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.vcomp_sq.get(&(beta, alpha)).copied()
    }

    /// Sorted table entries `((second, first), composite)`.
    pub fn hcomp_m_entries(&self) -> Vec<((usize, usize), usize)> {
        sorted(&self.hcomp_m)
    }
    pub fn vcomp_m_entries(&self) -> Vec<((usize, usize), usize)> {
        sorted(&self.vcomp_m)
    }
    pub fn hcomp_sq_entries(&self) -> Vec<((usize, usize), usize)> {
        sorted(&self.hcomp_sq)
    }
    pub fn vcomp_sq_entries(&self) -> Vec<((usize, usize), usize)> {
        sorted(&self.vcomp_sq)
    }

    pub fn hom_h(&self, a: usize, b: usize) -> &[usize] {
        self.hom_h.get(&(a, b)).map_or(EMPTY, |v| v.as_slice())
    }
    pub fn hom_v(&self, a: usize, b: usize) -> &[usize] {
        self.hom_v.get(&(a, b)).map_or(EMPTY, |v| v.as_slice())
    }

    pub fn squares_with(&self, top: usize, bottom: usize, left: usize, right: usize) -> &[usize] {
        self.by_boundary
            .get(&Boundary { top, bottom, left, right })
            .map_or(EMPTY, |v| v.as_slice())
    }
    pub fn squares_with_left(&self, u: usize) -> &[usize] {
        &self.by_left[u]
    }
    pub fn squares_with_right(&self, u: usize) -> &[usize] {
        &self.by_right[u]
    }
    pub fn squares_with_top(&self, a: usize) -> &[usize] {
        &self.by_top[a]
    }
    pub fn squares_with_bottom(&self, a: usize) -> &[usize] {
        &self.by_bottom[a]
    }

    /// Globular squares `a ⇒ b` between parallel hmors.
    pub fn globular_squares(&self, a: usize, b: usize) -> &[usize] {
        let src = self.hmors[a].src;
        let tgt = self.hmors[a].tgt;
        self.squares_with(a, b, self.id_v[src], self.id_v[tgt])
    }

    /// Two-sided inverse for vertical composition.
    pub fn vertical_inverse(&self, s: usize) -> Option<usize> {
        self.vinv[s]
    }
    /// Two-sided inverse for horizontal composition.
    pub fn horizontal_inverse(&self, s: usize) -> Option<usize> {
        self.hinv[s]
    }

    /// Horizontal morphism `b`'s vertical identity square whiskered on the
    /// left of `sigma`: `hcomp(e_b, sigma)`.
    pub fn whisker_left(&self, b: usize, sigma: usize) -> Option<usize> {
        self.hcomp_sq(self.e_sq[b], sigma)
    }
    /// `hcomp(sigma, e_a)`.
    pub fn whisker_right(&self, sigma: usize, a: usize) -> Option<usize> {
        self.hcomp_sq(sigma, self.e_sq[a])
    }

    /// A builder preloaded with every cell and table entry of `self`.
    pub fn to_builder(&self) -> DoubleCategoryBuilder {
        let mut b = DoubleCategoryBuilder::new(self.name.clone());
        b.set_weak_horizontal(self.weak_horizontal);
        for o in &self.objects {
            b.object(o);
        }
        for h in &self.hmors {
            b.hmor(&h.name, &self.objects[h.src], &self.objects[h.tgt]);
        }
        for v in &self.vmors {
            b.vmor(&v.name, &self.objects[v.src], &self.objects[v.tgt]);
        }
        for s in &self.squares {
            b.square(
                &s.name,
                &self.hmors[s.top].name,
                &self.hmors[s.bottom].name,
                &self.vmors[s.left].name,
                &self.vmors[s.right].name,
            );
        }
        for (i, o) in self.objects.iter().enumerate() {
            b.id_h(o, &self.hmors[self.id_h[i]].name);
            b.id_v(o, &self.vmors[self.id_v[i]].name);
        }
        for (i, h) in self.hmors.iter().enumerate() {
            b.e_sq(&h.name, &self.squares[self.e_sq[i]].name);
        }
        for (i, v) in self.vmors.iter().enumerate() {
            b.id_sq(&v.name, &self.squares[self.id_sq[i]].name);
        }
        for ((x, y), z) in self.hcomp_m_entries() {
            b.hcomp_m(&self.hmors[x].name, &self.hmors[y].name, &self.hmors[z].name);
        }
        for ((x, y), z) in self.vcomp_m_entries() {
            b.vcomp_m(&self.vmors[x].name, &self.vmors[y].name, &self.vmors[z].name);
        }
        for ((x, y), z) in self.hcomp_sq_entries() {
            b.hcomp_sq(&self.squares[x].name, &self.squares[y].name, &self.squares[z].name);
        }
        for ((x, y), z) in self.vcomp_sq_entries() {
            b.vcomp_sq(&self.squares[x].name, &self.squares[y].name, &self.squares[z].name);
        }
        b
    }
}

fn sorted(t: &Table) -> Vec<((usize, usize), usize)> {
    let mut v: Vec<_> = t.iter().map(|(&k, &z)| (k, z)).collect();
    v.sort_unstable();
    v
}

impl fmt::Display for DoubleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} hmors, {} vmors, {} squares)",
            self.name,
            self.objects.len(),
            self.hmors.len(),
            self.vmors.len(),
            self.squares.len()
        )
    }
}
