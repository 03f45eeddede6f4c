//! Finite strict and weak double categories with decision procedures for
//! their homotopy theory: double biequivalences, double (trivial)
//! fibrations, cofibrancy, weak horizontal invertibility, Whitehead
//! pseudo-inverses and strictification.

pub mod construct;
pub mod corpus;
pub mod dbl;
pub mod dblx;
pub mod equiv;
pub mod error;
pub mod fincat;
pub mod homotopy;
pub mod model;
pub mod paste;
pub mod report;
pub mod sample;
pub mod search;
pub mod weak;

pub use dbl::{DoubleCategory, DoubleCategoryBuilder, DoubleFunctor, Sort};
pub use error::{Error, Result};
pub use search::Budget;
