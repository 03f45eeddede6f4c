//! Finite 1-categories and 2-categories.
//!
//! Both are stored as double categories with identity-only vertical
//! structure: a category additionally has only identity squares, and the
//! squares of a 2-category are its 2-cells (globular squares). The
//! 2-categorical decision procedures in this module are written against the
//! 2-cell vocabulary and do not call into the double-categorical checks.

mod equivalence;
mod free;
mod pseudo;
mod truncate;

use std::sync::Arc;

use crate::dbl::validate::validate_double_category;
use crate::dbl::{Arrow, DoubleCategory, DoubleCategoryBuilder, DoubleFunctor, Sort, Square};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

pub use equivalence::{
    check_biequivalence, check_lack_fibration, equivalences_from, invertible_cell, is_category_equivalence,
    is_equivalence_morphism, is_isofibration, is_isomorphism, EquivalenceWitness2,
};
pub use free::{is_disjoint_union_1_2, is_free_category, is_free_category_brute_force, FreenessReport};
pub use pseudo::{pseudo_hom_2cat, PseudoTransformation2};
pub use truncate::{discrete_2cat, pi0_truncate};

/// A finite category.
#[derive(Clone, Debug)]
pub struct FinCategory(DoubleCategory);

/// A finite strict 2-category.
#[derive(Clone, Debug)]
pub struct TwoCategory(DoubleCategory);

fn shape_error(name: &str, msg: &str) -> Error {
    Error::MalformedTable(format!("{name}: {msg}"))
}

fn check_two_shape(d: &DoubleCategory) -> Result<()> {
    if (0..d.num_vmors()).any(|u| !d.is_identity_vmor(u)) {
        return Err(shape_error(d.name(), "a 2-category has no non-identity vertical morphisms"));
    }
    if (0..d.num_squares()).any(|s| !d.is_globular(s)) {
        return Err(shape_error(d.name(), "every 2-cell must be globular"));
    }
    Ok(())
}

impl FinCategory {
    pub fn builder(name: impl Into<String>) -> FinCategoryBuilder {
        FinCategoryBuilder(DoubleCategoryBuilder::new(name))
    }

    /// Views a double category as a category; fails unless its vertical
    /// structure and squares are identities only.
    pub fn from_double(d: DoubleCategory) -> Result<Self> {
        check_two_shape(&d)?;
        if (0..d.num_squares()).any(|s| !d.is_identity_square(s)) {
            return Err(shape_error(d.name(), "a category has only identity squares"));
        }
        Ok(FinCategory(d))
    }

    pub fn as_double(&self) -> &DoubleCategory {
        &self.0
    }
    pub fn into_double(self) -> DoubleCategory {
        self.0
    }
    pub fn name(&self) -> &str {
        self.0.name()
    }
    pub fn num_objects(&self) -> usize {
        self.0.num_objects()
    }
    pub fn num_morphisms(&self) -> usize {
        self.0.num_hmors()
    }
    pub fn object(&self, i: usize) -> &str {
        self.0.object(i)
    }
    pub fn morphism(&self, f: usize) -> &Arrow {
        self.0.hmor(f)
    }
    pub fn morphisms(&self) -> &[Arrow] {
        self.0.hmors()
    }
    pub fn identity(&self, obj: usize) -> usize {
        self.0.id_h(obj)
    }
    pub fn is_identity(&self, f: usize) -> bool {
        self.0.is_identity_hmor(f)
    }
    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.0.hcomp_m(g, f)
    }
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.0.hom_h(a, b)
    }
    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.0.find(Sort::Object, name)
    }
    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.0.find(Sort::HMor, name)
    }
}

/// Unit and associativity laws; an empty report means valid.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    validate_double_category(&c.0)
}

pub struct FinCategoryBuilder(DoubleCategoryBuilder);

impl FinCategoryBuilder {
    pub fn object(&mut self, name: &str) -> &mut Self {
        self.0.object(name);
        self
    }
    pub fn morphism(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.0.hmor(name, src, tgt);
        self
    }
    pub fn identity(&mut self, obj: &str, name: &str) -> &mut Self {
        self.0.id_h(obj, name);
        self
    }
    /// `g ∘ f = gf`.
    pub fn compose(&mut self, g: &str, f: &str, gf: &str) -> &mut Self {
        self.0.hcomp_m(g, f, gf);
        self
    }
    pub fn build(&self) -> Result<FinCategory> {
        FinCategory::from_double(self.0.build()?)
    }
}

impl TwoCategory {
    pub fn builder(name: impl Into<String>) -> TwoCategoryBuilder {
        TwoCategoryBuilder(DoubleCategoryBuilder::new(name))
    }

    /// Views a double category as a 2-category; fails unless its vertical
    /// structure is identities only (so every square is globular).
    pub fn from_double(d: DoubleCategory) -> Result<Self> {
        check_two_shape(&d)?;
        Ok(TwoCategory(d))
    }

    pub fn as_double(&self) -> &DoubleCategory {
        &self.0
    }
    pub fn into_double(self) -> DoubleCategory {
        self.0
    }
    pub fn name(&self) -> &str {
        self.0.name()
    }
    pub fn num_objects(&self) -> usize {
        self.0.num_objects()
    }
    pub fn num_morphisms(&self) -> usize {
        self.0.num_hmors()
    }
    pub fn num_cells(&self) -> usize {
        self.0.num_squares()
    }
    pub fn object(&self, i: usize) -> &str {
        self.0.object(i)
    }
    pub fn morphism(&self, f: usize) -> &Arrow {
        self.0.hmor(f)
    }
    pub fn morphisms(&self) -> &[Arrow] {
        self.0.hmors()
    }
    /// A 2-cell `top ⇒ bottom`.
    pub fn cell(&self, s: usize) -> &Square {
        self.0.square(s)
    }
    pub fn identity(&self, obj: usize) -> usize {
        self.0.id_h(obj)
    }
    pub fn identity_cell(&self, f: usize) -> usize {
        self.0.e_sq(f)
    }
    pub fn is_identity_cell(&self, s: usize) -> bool {
        self.0.is_identity_square(s)
    }
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.0.hcomp_m(g, f)
    }
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.0.hom_h(a, b)
    }
    /// 2-cells `f ⇒ g`.
    pub fn cells_between(&self, f: usize, g: usize) -> &[usize] {
        self.0.globular_squares(f, g)
    }
    /// `beta · alpha`, alpha first.
    pub fn vcomp(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.0.vcomp_sq(beta, alpha)
    }
    /// Horizontal composite, alpha on the left (applied first).
    pub fn hcomp(&self, beta: usize, alpha: usize) -> Option<usize> {
        self.0.hcomp_sq(beta, alpha)
    }
    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.0.find(Sort::Object, name)
    }
    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.0.find(Sort::HMor, name)
    }
    pub fn find_cell(&self, name: &str) -> Option<usize> {
        self.0.find(Sort::Square, name)
    }
}

pub fn validate_two_category(a: &TwoCategory) -> ValidationReport {
    validate_double_category(&a.0)
}

pub struct TwoCategoryBuilder(DoubleCategoryBuilder);

impl TwoCategoryBuilder {
    pub fn object(&mut self, name: &str) -> &mut Self {
        self.0.object(name);
        self
    }
    pub fn morphism(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.0.hmor(name, src, tgt);
        self
    }
    pub fn identity(&mut self, obj: &str, name: &str) -> &mut Self {
        self.0.id_h(obj, name);
        self
    }
    pub fn compose(&mut self, g: &str, f: &str, gf: &str) -> &mut Self {
        self.0.hcomp_m(g, f, gf);
        self
    }
    /// A 2-cell `f ⇒ g`.
    pub fn cell(&mut self, name: &str, f: &str, g: &str) -> &mut Self {
        self.0.globular(name, f, g);
        self
    }
    pub fn identity_cell(&mut self, f: &str, name: &str) -> &mut Self {
        self.0.e_sq(f, name);
        self
    }
    /// `beta · alpha = r`.
    pub fn vcomp(&mut self, beta: &str, alpha: &str, r: &str) -> &mut Self {
        self.0.vcomp_sq(beta, alpha, r);
        self
    }
    /// `beta * alpha = r`, alpha on the left.
    pub fn hcomp(&mut self, beta: &str, alpha: &str, r: &str) -> &mut Self {
        self.0.hcomp_sq(beta, alpha, r);
        self
    }
    pub fn build(&self) -> Result<TwoCategory> {
        TwoCategory::from_double(self.0.build()?)
    }
}

impl From<FinCategory> for TwoCategory {
    fn from(c: FinCategory) -> Self {
        TwoCategory(c.0)
    }
}

/// A functor of finite categories.
#[derive(Clone, Debug)]
pub struct CatFunctor(DoubleFunctor);

/// A strict 2-functor.
#[derive(Clone, Debug)]
pub struct TwoFunctor(DoubleFunctor);

impl CatFunctor {
    pub fn new(f: DoubleFunctor) -> Result<Self> {
        FinCategory::from_double(f.source().as_ref().clone())?;
        FinCategory::from_double(f.target().as_ref().clone())?;
        Ok(CatFunctor(f))
    }
    pub fn as_double(&self) -> &DoubleFunctor {
        &self.0
    }
    pub fn obj(&self, i: usize) -> usize {
        self.0.obj(i)
    }
    pub fn mor(&self, f: usize) -> usize {
        self.0.hmor(f)
    }
    pub fn source(&self) -> FinCategory {
        FinCategory(self.0.source().as_ref().clone())
    }
    pub fn target(&self) -> FinCategory {
        FinCategory(self.0.target().as_ref().clone())
    }
    pub fn validate(&self) -> ValidationReport {
        self.0.validate()
    }
}

impl TwoFunctor {
    pub fn new(f: DoubleFunctor) -> Result<Self> {
        check_two_shape(f.source())?;
        check_two_shape(f.target())?;
        Ok(TwoFunctor(f))
    }
    pub fn identity(a: &TwoCategory) -> Self {
        TwoFunctor(DoubleFunctor::identity(Arc::new(a.0.clone())))
    }
    pub fn as_double(&self) -> &DoubleFunctor {
        &self.0
    }
    pub fn into_double(self) -> DoubleFunctor {
        self.0
    }
    pub fn name(&self) -> &str {
        self.0.name()
    }
    pub fn obj(&self, i: usize) -> usize {
        self.0.obj(i)
    }
    pub fn mor(&self, f: usize) -> usize {
        self.0.hmor(f)
    }
    pub fn cell(&self, s: usize) -> usize {
        self.0.sq(s)
    }
    pub fn source(&self) -> TwoCategory {
        TwoCategory(self.0.source().as_ref().clone())
    }
    pub fn target(&self) -> TwoCategory {
        TwoCategory(self.0.target().as_ref().clone())
    }
    pub fn then(&self, g: &TwoFunctor) -> Result<TwoFunctor> {
        Ok(TwoFunctor(self.0.then(&g.0)?))
    }
    pub fn validate(&self) -> ValidationReport {
        self.0.validate()
    }
}

impl From<CatFunctor> for TwoFunctor {
    fn from(f: CatFunctor) -> Self {
        TwoFunctor(f.0)
    }
}

#[cfg(test)]
pub(crate) mod samples {
    use super::*;

    pub fn one() -> FinCategory {
        let mut b = FinCategory::builder("One");
        b.object("0");
        b.build().unwrap()
    }

    pub fn two() -> FinCategory {
        let mut b = FinCategory::builder("Two");
        b.object("0").object("1").morphism("f", "0", "1");
        b.build().unwrap()
    }

    /// 0 -> 1 -> 2 with the composite.
    pub fn three() -> FinCategory {
        let mut b = FinCategory::builder("Three");
        b.object("0").object("1").object("2");
        b.morphism("f", "0", "1").morphism("g", "1", "2").morphism("gf", "0", "2");
        b.compose("g", "f", "gf");
        b.build().unwrap()
    }

    /// The free isomorphism f: 0 -> 1, g: 1 -> 0.
    pub fn iso() -> FinCategory {
        let mut b = FinCategory::builder("Iso");
        b.object("0").object("1").morphism("f", "0", "1").morphism("g", "1", "0");
        b.compose("g", "f", "id_0").compose("f", "g", "id_1");
        b.build().unwrap()
    }

    /// Two parallel morphisms and an invertible 2-cell between them.
    pub fn cinv() -> TwoCategory {
        let mut b = TwoCategory::builder("Cinv");
        b.object("0").object("1").morphism("f", "0", "1").morphism("g", "0", "1");
        b.cell("t", "f", "g").cell("s", "g", "f");
        b.vcomp("s", "t", "e_f").vcomp("t", "s", "e_g");
        b.build().unwrap()
    }

    pub fn functor(name: &str, a: &DoubleCategory, b: &DoubleCategory, pairs: &[(Sort, &str, &str)]) -> DoubleFunctor {
        let pairs: Vec<(Sort, String, String)> =
            pairs.iter().map(|(s, x, y)| (*s, x.to_string(), y.to_string())).collect();
        DoubleFunctor::from_names(name, Arc::new(a.clone()), Arc::new(b.clone()), &pairs).unwrap()
    }
}
