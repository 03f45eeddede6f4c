//! Command inputs: DBLX files or names of builtin corpus entries.

use std::path::Path;

use dblcat::corpus;
use dblcat::dblx::{self, Document, FunctorDoc};
use dblcat::fincat::TwoCategory;
use dblcat::weak::WeakDoubleCategory;
use dblcat::{DoubleCategory, DoubleFunctor};

use crate::error::CliError;

/// Builtin corpus entries in listing order.
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "One", "TwoH", "TwoV", "Sq", "dSq", "Sq2", "CinvH", "IsoH", "VThree", "OneOne", "Cinv", "Iso", "Three", "W",
        "WU", "I1", "I2", "I3", "I4", "I5", "J2", "epsV2",
    ]
}

pub fn builtin(name: &str) -> Option<Document> {
    use corpus::*;
    let doc = match name {
        "OneOne" => Document::DoubleCategory(one_one()),
        "Cinv" => Document::TwoCategory(cinv()),
        "Iso" => Document::Category(iso()),
        "Three" => Document::Category(three()),
        _ => {
            if let Ok(d) = double_category(name) {
                Document::DoubleCategory(d)
            } else if let Ok(w) = weak_double_category(name) {
                Document::Weak(w)
            } else if let Ok(f) = functor_named(name) {
                Document::Functor(FunctorDoc::Strict(f))
            } else {
                return None;
            }
        }
    };
    Some(doc)
}

/// An existing file is parsed; anything else must name a builtin.
pub fn load(arg: &str) -> Result<Document, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(arg.to_string(), e))?;
        return Ok(dblx::parse(&text)?);
    }
    builtin(arg).ok_or_else(|| dblcat::Error::UnknownName(arg.to_string()).into())
}

fn wrong_kind(doc: &Document, want: &str) -> CliError {
    CliError::Usage(format!("{} is a {}, expected {want}", doc.name(), doc.kind().keyword()))
}

pub fn strict_double(doc: &Document) -> Result<DoubleCategory, CliError> {
    doc.as_double().cloned().ok_or_else(|| wrong_kind(doc, "a strict double category"))
}

pub fn two_category(doc: &Document) -> Result<TwoCategory, CliError> {
    let d = doc.as_double().ok_or_else(|| wrong_kind(doc, "a 2-category"))?;
    TwoCategory::from_double(d.clone()).map_err(|_| wrong_kind(doc, "a 2-category"))
}

pub fn weak_double(doc: &Document) -> Result<WeakDoubleCategory, CliError> {
    match doc {
        Document::Weak(w) => Ok(w.clone()),
        _ => Ok(WeakDoubleCategory::from_strict(strict_double(doc)?)),
    }
}

pub fn strict_functor(doc: &Document) -> Result<DoubleFunctor, CliError> {
    match doc {
        Document::Functor(FunctorDoc::Strict(f)) => Ok(f.clone()),
        _ => Err(wrong_kind(doc, "a strict double functor")),
    }
}
