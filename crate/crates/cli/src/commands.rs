use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use dblcat::construct::{
    horizontal_embed, internal_hom, left_adjoint_l, underlying_horizontal, vertical_embed, vertical_morphism_2cat,
};
use dblcat::dbl::ops::{coproduct, product, transpose};
use dblcat::dblx::{emit, Document, FunctorDoc, TransformationDoc};
use dblcat::equiv::check_lemma_220;
use dblcat::fincat::TwoCategory;
use dblcat::homotopy::{verify_whitehead_data, whitehead_inverse};
use dblcat::homotopy::{pseudo_hom, HorizontallyPseudoDoubleFunctor, PseudoEquivalence};
use dblcat::model::is_cofibrant;
use dblcat::model::solve_lifting;
use dblcat::model::{check_double_biequivalence, check_double_fibration, check_double_trivial_fibration};
use dblcat::report::CheckReport;
use dblcat::weak::{check_double_biequivalence_weak, strictify, weak_cofibrancy, WeakCofibrancy};
use dblcat::weak::{horizontal_embed_weak, underlying_horizontal_weak, vertical_morphism_weak};
use dblcat::{sample, Budget, DoubleCategory, DoubleFunctor, Sort};

use crate::error::CliError;
use crate::input::{builtin, builtin_names, load, strict_double, strict_functor, two_category, weak_double};

/// What a command produced, before it is rendered as text or JSON.
#[derive(Default)]
pub struct Outcome {
    pub passed: bool,
    pub inputs: Vec<String>,
    /// Human-readable lines for stdout.
    pub text: String,
    pub details: Value,
    /// A DBLX document that goes to stdout when no output file was given.
    pub document: Option<String>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Biequivalence,
    Fibration,
    TrivialFibration,
    Cofibrant,
    Lemma220,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstructOp {
    /// ℍ: 2-category to double category with identity vertical structure.
    #[value(name = "H")]
    H,
    /// 𝒱: double category to its 2-category of vertical morphisms.
    #[value(name = "V")]
    V,
    /// 𝕍: 2-category to double category with identity horizontal structure.
    #[value(name = "VV")]
    VV,
    /// 𝐇: double category to its underlying horizontal 2-category.
    #[value(name = "HH")]
    HH,
    /// 𝕃: 2-category A to ℍA × 𝕍𝟚.
    #[value(name = "L")]
    L,
    Prod,
    Coprod,
    /// Internal hom [A, B] of strict double functors.
    Hom,
    /// [A, B]_ps of horizontally pseudo double functors.
    Pshom,
    Transpose,
    Strictify,
}

impl ConstructOp {
    fn label(self) -> &'static str {
        match self {
            ConstructOp::H => "H",
            ConstructOp::V => "V",
            ConstructOp::VV => "VV",
            ConstructOp::HH => "HH",
            ConstructOp::L => "L",
            ConstructOp::Prod => "prod",
            ConstructOp::Coprod => "coprod",
            ConstructOp::Hom => "hom",
            ConstructOp::Pshom => "pshom",
            ConstructOp::Transpose => "transpose",
            ConstructOp::Strictify => "strictify",
        }
    }

    fn arity(self) -> usize {
        match self {
            ConstructOp::Prod | ConstructOp::Coprod | ConstructOp::Hom | ConstructOp::Pshom => 2,
            _ => 1,
        }
    }
}

fn verdict_line(what: &str, name: &str, passed: bool) -> String {
    format!("{what} {name}: {}\n", if passed { "pass" } else { "fail" })
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn check(kind: CheckKind, input: &str) -> Result<Outcome, CliError> {
    let doc = load(input)?;
    let name = doc.name().to_string();
    let label = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut out = Outcome { inputs: vec![name.clone()], ..Outcome::default() };
    let report: CheckReport = match kind {
        CheckKind::Biequivalence => match &doc {
            Document::Functor(FunctorDoc::Weak(f)) => check_double_biequivalence_weak(f),
            _ => check_double_biequivalence(&strict_functor(&doc)?),
        },
        CheckKind::Fibration => check_double_fibration(&strict_functor(&doc)?),
        CheckKind::TrivialFibration => check_double_trivial_fibration(&strict_functor(&doc)?),
        CheckKind::Cofibrant => {
            if let Document::Weak(w) = &doc {
                let r = weak_cofibrancy(w)?;
                out.passed = r.verdict == WeakCofibrancy::CofibrantSufficient;
                out.text = format!(
                    "check cofibrant {name}: {}\nvertical 1/2: {}\ncoherence thin: {}\nstrict horizontal free: {}\n",
                    r.verdict, r.vertical_1_2, r.coherence_thin, r.strict_horizontal_free
                );
                out.details = to_json(&r);
                return Ok(out);
            }
            let r = is_cofibrant(&strict_double(&doc)?);
            out.passed = r.cofibrant;
            out.text = verdict_line("check cofibrant", &name, r.cofibrant);
            out.text += &format!("horizontal free: {}\nvertical 1/2: {}\n", r.horizontal.free, r.vertical_1_2);
            if let Some(reason) = &r.horizontal.reason {
                out.text += &format!("reason: {reason}\n");
            }
            out.details = to_json(&r);
            return Ok(out);
        }
        CheckKind::Lemma220 => {
            let d = match &doc {
                Document::Weak(w) => w.base().as_ref().clone(),
                _ => strict_double(&doc)?,
            };
            let r = check_lemma_220(&d);
            out.passed = r.passes();
            out.text = verdict_line("check lemma220", &name, r.passes());
            out.text += &format!("checked: {}\n", r.checked);
            for v in &r.discrepancies {
                let cells: Vec<String> = v.cells.iter().map(ToString::to_string).collect();
                out.text += &format!("{}: {}\n", v.law, cells.join(", "));
            }
            out.details = to_json(&r);
            return Ok(out);
        }
    };
    out.passed = report.passes();
    out.text = verdict_line(&format!("check {label}"), &name, out.passed) + &report.to_string();
    out.details = to_json(&report);
    Ok(out)
}

fn write_file(path: &Path, text: &str) -> Result<String, CliError> {
    let shown = path.display().to_string();
    std::fs::write(path, text).map_err(|e| CliError::Io(shown.clone(), e))?;
    Ok(shown)
}

/// Puts a document in `path`, or leaves it for stdout.
fn deliver(out: &mut Outcome, doc: &Document, path: Option<&Path>) -> Result<(), CliError> {
    let text = emit(doc);
    match path {
        Some(p) => {
            let shown = write_file(p, &text)?;
            out.text += &format!("wrote {shown}\n");
            out.outputs.push(shown);
        }
        None => out.document = Some(text),
    }
    Ok(())
}

fn two(d: DoubleCategory) -> Result<TwoCategory, CliError> {
    Ok(TwoCategory::from_double(d)?)
}

pub fn construct(
    op: ConstructOp,
    inputs: &[String],
    out_path: Option<&Path>,
    unit_path: Option<&Path>,
    budget: &Budget,
) -> Result<Outcome, CliError> {
    if inputs.len() != op.arity() {
        return Err(CliError::Usage(format!("construct {} takes {} input(s)", op.label(), op.arity())));
    }
    let docs = inputs.iter().map(|i| load(i)).collect::<Result<Vec<_>, _>>()?;
    let names: Vec<String> = docs.iter().map(|d| d.name().to_string()).collect();
    let title = format!("{}({})", op.label(), names.join(","));
    let mut out = Outcome { passed: true, inputs: names, ..Outcome::default() };
    let doc = &docs[0];
    let result = match op {
        ConstructOp::H => match doc {
            Document::Weak(w) => Document::Weak(horizontal_embed_weak(w)?.renamed(&title)),
            _ => Document::DoubleCategory(horizontal_embed(&two_category(doc)?).renamed(&title)),
        },
        ConstructOp::V => match doc {
            Document::Weak(w) => Document::Weak(vertical_morphism_weak(w)?.renamed(&title)),
            _ => Document::TwoCategory(two(vertical_morphism_2cat(&strict_double(doc)?)?.into_double().renamed(&title))?),
        },
        ConstructOp::VV => Document::DoubleCategory(vertical_embed(&two_category(doc)?).renamed(&title)),
        ConstructOp::HH => match doc {
            Document::Weak(w) => Document::Weak(underlying_horizontal_weak(w)?.renamed(&title)),
            _ => Document::TwoCategory(two(underlying_horizontal(&strict_double(doc)?).into_double().renamed(&title))?),
        },
        ConstructOp::L => Document::DoubleCategory(left_adjoint_l(&two_category(doc)?).renamed(&title)),
        ConstructOp::Prod | ConstructOp::Coprod | ConstructOp::Hom | ConstructOp::Pshom => {
            let a = strict_double(doc)?;
            let b = strict_double(&docs[1])?;
            let d = match op {
                ConstructOp::Prod => product(&a, &b)?,
                ConstructOp::Coprod => coproduct(&a, &b)?,
                ConstructOp::Hom => internal_hom(&Arc::new(a), &Arc::new(b), budget)?,
                _ => pseudo_hom(&Arc::new(a), &Arc::new(b), budget)?,
            };
            Document::DoubleCategory(d.renamed(&title))
        }
        ConstructOp::Transpose => Document::DoubleCategory(transpose(&strict_double(doc)?)?.renamed(&title)),
        ConstructOp::Strictify => {
            let w = weak_double(doc)?;
            let r = strictify(&w)?;
            let unit_path = match (unit_path, out_path) {
                (Some(p), _) => p.to_path_buf(),
                (None, Some(p)) => p.with_extension("unit.dblx"),
                (None, None) => PathBuf::from(format!("{}.unit.dblx", sanitize(w.name()))),
            };
            let unit = Document::Functor(FunctorDoc::Weak(r.unit.clone()));
            let shown = write_file(&unit_path, &emit(&unit))?;
            out.text += &format!("wrote {shown}\n");
            out.outputs.push(shown);
            Document::DoubleCategory(r.strict.as_ref().clone())
        }
    };
    let d = match &result {
        Document::Weak(w) => w.base().as_ref(),
        other => other.as_double().expect("constructions are category-like"),
    };
    out.details = json!({
        "name": result.name(),
        "kind": result.kind().keyword(),
        "cells": { "objects": d.num_objects(), "hmors": d.num_hmors(), "vmors": d.num_vmors(), "squares": d.num_squares() },
    });
    deliver(&mut out, &result, out_path)?;
    Ok(out)
}

/// File-name stem for a structure name.
fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn names_of(d: &DoubleCategory, sort: Sort, image: &DoubleCategory, image_sort: Sort, map: &[usize]) -> Value {
    let m: Map<String, Value> =
        map.iter().enumerate().map(|(x, &y)| (d.cell_name(sort, x).to_string(), image.cell_name(image_sort, y).into())).collect();
    Value::Object(m)
}

fn equivalence_json(a: &DoubleCategory, b: &DoubleCategory, e: &PseudoEquivalence) -> Value {
    let t = &e.transformation;
    json!({
        "components": names_of(a, Sort::Object, b, Sort::HMor, &t.components),
        "naturality": names_of(a, Sort::VMor, b, Sort::Square, &t.naturality),
        "adjoint": e.adjoint,
    })
}

pub fn whitehead(input: &str, out_dir: &Path) -> Result<Outcome, CliError> {
    let f = strict_functor(&load(input)?)?;
    let w = whitehead_inverse(&f)?;
    let verified = verify_whitehead_data(&f, &w.g, &w.eta, &w.eps);
    let (a, b) = (f.source(), f.target());
    let mut out = Outcome { passed: verified, inputs: vec![f.name().to_string()], ..Outcome::default() };
    out.text = format!("whitehead {}: {}\n", f.name(), if verified { "verified" } else { "not verified" });
    let id = |d: &Arc<DoubleCategory>| HorizontallyPseudoDoubleFunctor::from_strict(&DoubleFunctor::identity(d.clone()));
    let eta = TransformationDoc {
        name: "eta".into(),
        from: id(a),
        to: w.g.after_strict(&f),
        data: w.eta.transformation.clone(),
    };
    let eps = TransformationDoc {
        name: "eps".into(),
        from: w.g.then_strict(&f),
        to: id(b),
        data: w.eps.transformation.clone(),
    };
    let stem = sanitize(f.name());
    let files = [
        ("G", Document::Functor(FunctorDoc::Pseudo(w.g.clone()))),
        ("eta", Document::Transformation(eta)),
        ("eps", Document::Transformation(eps)),
    ];
    for (suffix, doc) in &files {
        let shown = write_file(&out_dir.join(format!("{stem}.{suffix}.dblx")), &emit(doc))?;
        out.text += &format!("wrote {shown}\n");
        out.outputs.push(shown);
    }
    out.details = json!({
        "verified": verified,
        "g": {
            "objects": names_of(b, Sort::Object, a, Sort::Object, &w.g.maps()[0]),
            "hmors": names_of(b, Sort::HMor, a, Sort::HMor, &w.g.maps()[1]),
            "vmors": names_of(b, Sort::VMor, a, Sort::VMor, &w.g.maps()[2]),
        },
        "eta": equivalence_json(a, a, &w.eta),
        "eps": equivalence_json(b, b, &w.eps),
    });
    Ok(out)
}

fn functor_or_identity(arg: &str, on: &Arc<DoubleCategory>) -> Result<DoubleFunctor, CliError> {
    if arg == "id" {
        Ok(DoubleFunctor::identity(on.clone()))
    } else {
        strict_functor(&load(arg)?)
    }
}

pub fn lift(i: &str, p: &str, top: &str, bottom: &str, out_path: Option<&Path>, budget: &Budget) -> Result<Outcome, CliError> {
    let i = strict_functor(&load(i)?)?;
    let p = strict_functor(&load(p)?)?;
    let top = functor_or_identity(top, i.source())?;
    let bottom = functor_or_identity(bottom, i.target())?;
    let inputs = [&i, &p, &top, &bottom].iter().map(|f| f.name().to_string()).collect();
    let mut out = Outcome { inputs, ..Outcome::default() };
    match solve_lifting(&i, &p, &top, &bottom, budget)? {
        Some(l) => {
            out.passed = true;
            let b = l.source();
            out.details = json!({ "lift": {
                "objects": names_of(b, Sort::Object, l.target(), Sort::Object, l.map(Sort::Object)),
                "hmors": names_of(b, Sort::HMor, l.target(), Sort::HMor, l.map(Sort::HMor)),
                "vmors": names_of(b, Sort::VMor, l.target(), Sort::VMor, l.map(Sort::VMor)),
                "squares": names_of(b, Sort::Square, l.target(), Sort::Square, l.map(Sort::Square)),
            }});
            deliver(&mut out, &Document::Functor(FunctorDoc::Strict(l)), out_path)?;
        }
        None => {
            out.text = "none\n".into();
            out.details = json!({ "lift": null });
        }
    }
    Ok(out)
}

pub fn corpus_list() -> Outcome {
    let entries: Vec<(String, &'static str)> = builtin_names()
        .into_iter()
        .map(|n| (n.to_string(), builtin(n).expect("listed builtins exist").kind().keyword()))
        .collect();
    let text = entries.iter().map(|(n, k)| format!("{n}\t{k}\n")).collect();
    let details = Value::Array(entries.iter().map(|(n, k)| json!({ "name": n, "kind": k })).collect());
    Outcome { passed: true, text, details, ..Outcome::default() }
}

pub fn corpus_export(name: &str, out_path: Option<&Path>) -> Result<Outcome, CliError> {
    let doc = builtin(name).ok_or_else(|| dblcat::Error::UnknownName(name.to_string()))?;
    let mut out = Outcome { passed: true, inputs: vec![name.to_string()], ..Outcome::default() };
    out.details = json!({ "name": doc.name(), "kind": doc.kind().keyword() });
    deliver(&mut out, &doc, out_path)?;
    Ok(out)
}

/// One random functor between pool objects, drawn from `seed`.
pub fn corpus_sample(seed: u64, out_path: Option<&Path>) -> Result<Outcome, CliError> {
    let f = sample::functor_population(seed, 1)?.remove(0);
    let mut out = Outcome { passed: true, ..Outcome::default() };
    out.details = json!({ "seed": seed, "source": f.source().name(), "target": f.target().name() });
    deliver(&mut out, &Document::Functor(FunctorDoc::Strict(f)), out_path)?;
    Ok(out)
}
