//! Pasting expressions over a double category's square tables.
//!
//! Verifiers evaluate their coherence equations through this module: every
//! node recomputes the boundary of its operands from the morphism tables and
//! checks that the composite square found in the table carries exactly that
//! boundary. The searches that produce witnesses use the square tables
//! directly, so a table inconsistency shows up as a disagreement between the
//! two.

use std::fmt;

use crate::dbl::{Boundary, DoubleCategory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Paste {
    Cell(usize),
    /// Horizontal composite `(right, left)`.
    H(Box<Paste>, Box<Paste>),
    /// Vertical composite `(bottom, top)`.
    V(Box<Paste>, Box<Paste>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PasteError {
    /// The operands do not share an edge.
    NotComposable(String),
    /// A composite of morphisms or squares is missing from the tables.
    Missing(String),
    /// The table entry has a different boundary than its operands predict.
    WrongBoundary(String),
}

impl fmt::Display for PasteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PasteError::NotComposable(s) => write!(f, "not composable: {s}"),
            PasteError::Missing(s) => write!(f, "missing composite: {s}"),
            PasteError::WrongBoundary(s) => write!(f, "composite with wrong boundary: {s}"),
        }
    }
}

pub fn cell(s: usize) -> Paste {
    Paste::Cell(s)
}

/// Horizontal composite with `left` applied first.
pub fn h(right: Paste, left: Paste) -> Paste {
    Paste::H(Box::new(right), Box::new(left))
}

/// Vertical composite with `top` applied first.
pub fn v(bottom: Paste, top: Paste) -> Paste {
    Paste::V(Box::new(bottom), Box::new(top))
}

/// Left-to-right horizontal pasting of a row.
pub fn h_row(cells: impl IntoIterator<Item = Paste>) -> Paste {
    let mut it = cells.into_iter();
    let first = it.next().expect("nonempty row");
    it.fold(first, |acc, c| h(c, acc))
}

/// Top-to-bottom vertical pasting of a column.
pub fn v_col(cells: impl IntoIterator<Item = Paste>) -> Paste {
    let mut it = cells.into_iter();
    let first = it.next().expect("nonempty column");
    it.fold(first, |acc, c| v(c, acc))
}

impl Paste {
    /// Evaluates to a square of `d`, checking every boundary on the way.
    pub fn eval(&self, d: &DoubleCategory) -> Result<usize, PasteError> {
        self.eval_with_boundary(d).map(|(s, _)| s)
    }

    fn eval_with_boundary(&self, d: &DoubleCategory) -> Result<(usize, Boundary), PasteError> {
        match self {
            Paste::Cell(s) => Ok((*s, d.square(*s).boundary())),
            Paste::H(r, l) => {
                let (x, bx) = r.eval_with_boundary(d)?;
                let (y, by) = l.eval_with_boundary(d)?;
                let names = || format!("{} * {}", d.square(x).name, d.square(y).name);
                if by.right != bx.left {
                    return Err(PasteError::NotComposable(names()));
                }
                let top = d.hcomp_m(bx.top, by.top).ok_or_else(|| PasteError::Missing(names()))?;
                let bottom = d.hcomp_m(bx.bottom, by.bottom).ok_or_else(|| PasteError::Missing(names()))?;
                let expect = Boundary { top, bottom, left: by.left, right: bx.right };
                let z = d.hcomp_sq(x, y).ok_or_else(|| PasteError::Missing(names()))?;
                if d.square(z).boundary() != expect {
                    return Err(PasteError::WrongBoundary(names()));
                }
                Ok((z, expect))
            }
            Paste::V(b, t) => {
                let (x, bx) = b.eval_with_boundary(d)?;
                let (y, by) = t.eval_with_boundary(d)?;
                let names = || format!("{} . {}", d.square(x).name, d.square(y).name);
                if by.bottom != bx.top {
                    return Err(PasteError::NotComposable(names()));
                }
                let left = d.vcomp_m(bx.left, by.left).ok_or_else(|| PasteError::Missing(names()))?;
                let right = d.vcomp_m(bx.right, by.right).ok_or_else(|| PasteError::Missing(names()))?;
                let expect = Boundary { top: by.top, bottom: bx.bottom, left, right };
                let z = d.vcomp_sq(x, y).ok_or_else(|| PasteError::Missing(names()))?;
                if d.square(z).boundary() != expect {
                    return Err(PasteError::WrongBoundary(names()));
                }
                Ok((z, expect))
            }
        }
    }
}

/// Both sides evaluate, to the same square.
pub fn equal(d: &DoubleCategory, lhs: &Paste, rhs: &Paste) -> bool {
    matches!((lhs.eval(d), rhs.eval(d)), (Ok(x), Ok(y)) if x == y)
}

/// `inv` is a two-sided vertical inverse of `s`.
pub fn is_vertical_inverse(d: &DoubleCategory, s: usize, inv: usize) -> bool {
    let q = d.square(s);
    equal(d, &v(cell(inv), cell(s)), &cell(d.e_sq(q.top))) && equal(d, &v(cell(s), cell(inv)), &cell(d.e_sq(q.bottom)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbl::{DoubleCategoryBuilder, Sort};

    fn sq() -> DoubleCategory {
        let mut b = DoubleCategoryBuilder::new("Sq");
        b.object("0").object("1").object("0'").object("1'");
        b.hmor("a", "0", "1").hmor("b", "0'", "1'").vmor("u", "0", "0'").vmor("v", "1", "1'");
        b.square("alpha", "a", "b", "u", "v");
        b.build().unwrap()
    }

    #[test]
    fn units_evaluate() {
        let d = sq();
        let al = d.find(Sort::Square, "alpha").unwrap();
        let q = d.square(al).clone();
        assert_eq!(h(cell(d.id_sq(q.right)), cell(al)).eval(&d), Ok(al));
        assert_eq!(v_col([cell(d.e_sq(q.top)), cell(al), cell(d.e_sq(q.bottom))]).eval(&d), Ok(al));
    }

    #[test]
    fn mismatched_edges_are_reported() {
        let d = sq();
        let al = d.find(Sort::Square, "alpha").unwrap();
        assert!(matches!(h(cell(al), cell(al)).eval(&d), Err(PasteError::NotComposable(_))));
    }

    #[test]
    fn identities_are_their_own_inverses() {
        let d = sq();
        let a = d.find(Sort::HMor, "a").unwrap();
        assert!(is_vertical_inverse(&d, d.e_sq(a), d.e_sq(a)));
    }
}
