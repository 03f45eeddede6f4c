//! DBLX: a line-oriented text format for every structure of this crate.
//!
//! ```text
//! DBLX 1 dblcat Sq
//! OBJECTS: 00 01 10 11
//! HMOR a: 00 -> 01
//! VMOR u: 00 => 10
//! SQ alpha: [a; b; u; v]
//! IDH 00 = id_00
//! HCOMP b*a = c
//! SQV t.s = r
//! ```
//!
//! Identity declarations are `IDH A = x`, `IDV A = x` (identity morphisms
//! of an object), `ESQ a = x` (vertical identity square on `a`) and
//! `IDSQ u = x` (horizontal identity square on `u`). Undeclared identities
//! and unit-law table entries are generated as in the builder. Weak double
//! categories add `ASSOC (a,b,c) = s`, `LUNIT a = s`, `RUNIT a = s`.
//!
//! Functors nest their source and target as indented blocks and list
//! `OB A -> X`, `HM a -> x`, `VM u -> x`, `SQ s -> x`, plus `PHI b*a -> s`
//! compositors for horizontally pseudo functors. Transformations nest
//! `FROM` and `TO` functor blocks and list `COMP A -> x`, `NAT u -> s`,
//! `PS a -> s`. Lines starting with `#` are comments.
//!
//! [`emit`] writes every cell and table entry, so `emit(parse(emit(x)))`
//! equals `emit(x)` byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::construct::Transformation;
use crate::dbl::validate::validate_double_category;
use crate::dbl::{is_id_char, DoubleCategory, DoubleCategoryBuilder, DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, validate_two_category, FinCategory, TwoCategory};
use crate::homotopy::{verify_transformation, HomKind, HorizontallyPseudoDoubleFunctor};
use crate::weak::{validate_weak, WeakDoubleCategory, WeakDoubleFunctor};

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Category,
    TwoCategory,
    DblCat,
    WeakDblCat,
    Functor,
    Transformation,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::TwoCategory => "2category",
            Kind::DblCat => "dblcat",
            Kind::WeakDblCat => "weakdblcat",
            Kind::Functor => "functor",
            Kind::Transformation => "transformation",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        [Kind::Category, Kind::TwoCategory, Kind::DblCat, Kind::WeakDblCat, Kind::Functor, Kind::Transformation]
            .into_iter()
            .find(|k| k.keyword() == s)
    }
}

#[derive(Clone, Debug)]
pub enum FunctorDoc {
    Strict(DoubleFunctor),
    Pseudo(HorizontallyPseudoDoubleFunctor),
    Weak(WeakDoubleFunctor),
}

impl FunctorDoc {
    pub fn name(&self) -> &str {
        match self {
            FunctorDoc::Strict(f) => f.name(),
            FunctorDoc::Pseudo(f) => f.name(),
            FunctorDoc::Weak(f) => f.name(),
        }
    }

    /// The functor as a horizontally pseudo functor; weak functors have no
    /// such reading.
    pub fn as_pseudo(&self) -> Option<HorizontallyPseudoDoubleFunctor> {
        match self {
            FunctorDoc::Strict(f) => Some(HorizontallyPseudoDoubleFunctor::from_strict(f)),
            FunctorDoc::Pseudo(f) => Some(f.clone()),
            FunctorDoc::Weak(_) => None,
        }
    }
}

/// A horizontal transformation together with its endpoints.
#[derive(Clone, Debug)]
pub struct TransformationDoc {
    pub name: String,
    pub from: HorizontallyPseudoDoubleFunctor,
    pub to: HorizontallyPseudoDoubleFunctor,
    pub data: Transformation,
}

#[derive(Clone, Debug)]
pub enum Document {
    Category(FinCategory),
    TwoCategory(TwoCategory),
    DoubleCategory(DoubleCategory),
    Weak(WeakDoubleCategory),
    Functor(FunctorDoc),
    Transformation(TransformationDoc),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Category(_) => Kind::Category,
            Document::TwoCategory(_) => Kind::TwoCategory,
            Document::DoubleCategory(_) => Kind::DblCat,
            Document::Weak(_) => Kind::WeakDblCat,
            Document::Functor(_) => Kind::Functor,
            Document::Transformation(_) => Kind::Transformation,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Document::Category(c) => c.name(),
            Document::TwoCategory(c) => c.name(),
            Document::DoubleCategory(d) => d.name(),
            Document::Weak(w) => w.name(),
            Document::Functor(f) => f.name(),
            Document::Transformation(t) => &t.name,
        }
    }

    /// The underlying strict double category of the three strict kinds.
    pub fn as_double(&self) -> Option<&DoubleCategory> {
        match self {
            Document::Category(c) => Some(c.as_double()),
            Document::TwoCategory(c) => Some(c.as_double()),
            Document::DoubleCategory(d) => Some(d),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Lines and tokens

#[derive(Clone, Copy, Debug)]
struct Line<'a> {
    no: usize,
    indent: usize,
    text: &'a str,
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

struct Cursor<'a> {
    line: Line<'a>,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: Line<'a>) -> Self {
        Cursor { line, chars: line.text.chars().collect(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_error(self.line.no, self.line.indent + self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn keyword(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_uppercase()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).copied().is_some_and(is_id_char) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected {what}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        let n = tok.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(tok.chars()) {
            self.pos += n;
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }

    fn end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn rest(&mut self) -> String {
        self.skip_ws();
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        s.trim_end().to_string()
    }
}

/// A header line with the lines indented below it.
struct Block<'a> {
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

fn lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start_matches(' ');
        if raw.starts_with('\t') || trimmed.starts_with('\t') {
            return Err(parse_error(i + 1, 1, "tabs are not allowed for indentation"));
        }
        let body = trimmed.trim_end();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        out.push(Line { no: i + 1, indent: raw.len() - trimmed.len(), text: body });
    }
    Ok(out)
}

/// Splits lines at `indent` into records and nested blocks.
fn split<'a>(lines: &[Line<'a>], indent: usize) -> Result<Vec<Block<'a>>> {
    let mut out: Vec<Block<'a>> = Vec::new();
    for &l in lines {
        if l.indent == indent {
            out.push(Block { header: l, body: Vec::new() });
        } else if l.indent > indent && !out.is_empty() {
            out.last_mut().expect("nonempty").body.push(l);
        } else {
            return Err(parse_error(l.no, 1, format!("expected indentation of {indent} spaces")));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses a DBLX document and validates the object it describes.
pub fn parse(text: &str) -> Result<Document> {
    let all = lines(text)?;
    let Some((&first, rest)) = all.split_first() else {
        return Err(parse_error(1, 1, "empty document"));
    };
    if first.indent != 0 {
        return Err(parse_error(first.no, 1, "header must not be indented"));
    }
    let (kind, name) = header(first, "DBLX", true)?;
    parse_body(kind, &name, rest, 0)
}

/// `DBLX 1 kind name` at the top, `SOURCE kind name` and friends inside.
fn header(line: Line<'_>, word: &str, versioned: bool) -> Result<(Kind, String)> {
    let mut c = Cursor::new(line);
    let kw = c.keyword();
    if kw != word {
        return Err(c.err(format!("expected '{word}'")));
    }
    if versioned {
        let v = c.ident("version")?;
        if v != VERSION.to_string() {
            return Err(c.err(format!("unsupported version {v}")));
        }
    }
    let k = c.ident("kind")?;
    let kind = Kind::from_keyword(&k).ok_or_else(|| c.err(format!("unknown kind '{k}'")))?;
    let name = c.rest();
    if name.is_empty() {
        return Err(c.err("expected a name"));
    }
    Ok((kind, name))
}

fn parse_body(kind: Kind, name: &str, body: &[Line<'_>], indent: usize) -> Result<Document> {
    match kind {
        Kind::Category => {
            let d = double_category(name, body, indent, false)?;
            let c = FinCategory::from_double(d)?;
            check(c.name(), validate_category(&c))?;
            Ok(Document::Category(c))
        }
        Kind::TwoCategory => {
            let d = double_category(name, body, indent, false)?;
            let c = TwoCategory::from_double(d)?;
            check(c.name(), validate_two_category(&c))?;
            Ok(Document::TwoCategory(c))
        }
        Kind::DblCat => {
            let d = double_category(name, body, indent, false)?;
            check(d.name(), validate_double_category(&d))?;
            Ok(Document::DoubleCategory(d))
        }
        Kind::WeakDblCat => Ok(Document::Weak(weak_double_category(name, body, indent)?)),
        Kind::Functor => Ok(Document::Functor(functor(name, body, indent)?)),
        Kind::Transformation => Ok(Document::Transformation(transformation(name, body, indent)?)),
    }
}

fn check(name: &str, report: crate::report::ValidationReport) -> Result<()> {
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Validation { name: name.to_string(), report })
    }
}

fn records<'a>(body: &[Line<'a>], indent: usize) -> Result<Vec<Line<'a>>> {
    split(body, indent)?
        .into_iter()
        .map(|b| match b.body.first() {
            Some(l) => Err(parse_error(l.no, 1, "unexpected indentation")),
            None => Ok(b.header),
        })
        .collect()
}

#[derive(Default)]
struct Coherence {
    assoc: Vec<([String; 3], String)>,
    lunit: Vec<(String, String)>,
    runit: Vec<(String, String)>,
}

fn double_records(
    name: &str,
    body: &[Line<'_>],
    indent: usize,
    weak: bool,
) -> Result<(DoubleCategoryBuilder, Coherence)> {
    let mut b = DoubleCategoryBuilder::new(name);
    b.set_weak_horizontal(weak);
    let mut coh = Coherence::default();
    for line in records(body, indent)? {
        let mut c = Cursor::new(line);
        let kw = c.keyword();
        match kw.as_str() {
            "OBJECTS" => {
                c.expect(":")?;
                while !c.at_end() {
                    b.object(&c.ident("object id")?);
                }
            }
            "HMOR" | "VMOR" => {
                let x = c.ident("morphism id")?;
                c.expect(":")?;
                let s = c.ident("object id")?;
                c.expect(if kw == "HMOR" { "->" } else { "=>" })?;
                let t = c.ident("object id")?;
                c.end()?;
                if kw == "HMOR" {
                    b.hmor(&x, &s, &t);
                } else {
                    b.vmor(&x, &s, &t);
                }
            }
            "SQ" => {
                let x = c.ident("square id")?;
                c.expect(":")?;
                c.expect("[")?;
                let mut sides = Vec::new();
                for k in 0..4 {
                    if k > 0 {
                        c.expect(";")?;
                    }
                    sides.push(c.ident("boundary id")?);
                }
                c.expect("]")?;
                c.end()?;
                b.square(&x, &sides[0], &sides[1], &sides[2], &sides[3]);
            }
            "IDH" | "IDV" | "ESQ" | "IDSQ" | "LUNIT" | "RUNIT" => {
                let x = c.ident("id")?;
                c.expect("=")?;
                let y = c.ident("id")?;
                c.end()?;
                match kw.as_str() {
                    "IDH" => {
                        b.id_h(&x, &y);
                    }
                    "IDV" => {
                        b.id_v(&x, &y);
                    }
                    "ESQ" => {
                        b.e_sq(&x, &y);
                    }
                    "IDSQ" => {
                        b.id_sq(&x, &y);
                    }
                    _ if !weak => return Err(parse_error(line.no, line.indent + 1, format!("{kw} requires kind weakdblcat"))),
                    "LUNIT" => coh.lunit.push((x, y)),
                    _ => coh.runit.push((x, y)),
                }
            }
            "HCOMP" | "VCOMP" | "SQH" | "SQV" => {
                let y = c.ident("id")?;
                c.expect(if kw == "HCOMP" || kw == "SQH" { "*" } else { "." })?;
                let x = c.ident("id")?;
                c.expect("=")?;
                let z = c.ident("id")?;
                c.end()?;
                match kw.as_str() {
                    "HCOMP" => b.hcomp_m(&y, &x, &z),
                    "VCOMP" => b.vcomp_m(&y, &x, &z),
                    "SQH" => b.hcomp_sq(&y, &x, &z),
                    _ => b.vcomp_sq(&y, &x, &z),
                };
            }
            "ASSOC" => {
                if !weak {
                    return Err(parse_error(line.no, line.indent + 1, "ASSOC requires kind weakdblcat"));
                }
                c.expect("(")?;
                let a = c.ident("hmor id")?;
                c.expect(",")?;
                let bb = c.ident("hmor id")?;
                c.expect(",")?;
                let cc = c.ident("hmor id")?;
                c.expect(")")?;
                c.expect("=")?;
                let s = c.ident("square id")?;
                c.end()?;
                coh.assoc.push(([a, bb, cc], s));
            }
            _ => return Err(parse_error(line.no, line.indent + 1, format!("unknown section '{}'", first_word(line.text)))),
        }
    }
    Ok((b, coh))
}

fn first_word(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or("")
}

fn double_category(name: &str, body: &[Line<'_>], indent: usize, weak: bool) -> Result<DoubleCategory> {
    let (b, _) = double_records(name, body, indent, weak)?;
    b.build()
}

fn weak_double_category(name: &str, body: &[Line<'_>], indent: usize) -> Result<WeakDoubleCategory> {
    let (b, coh) = double_records(name, body, indent, true)?;
    let base = b.build()?;
    let assoc: Vec<([&str; 3], &str)> =
        coh.assoc.iter().map(|([a, b, c], s)| ([a.as_str(), b.as_str(), c.as_str()], s.as_str())).collect();
    let pairs = |v: &[(String, String)]| v.iter().map(|(a, s)| (a.clone(), s.clone())).collect::<Vec<_>>();
    let (l, r) = (pairs(&coh.lunit), pairs(&coh.runit));
    let l: Vec<(&str, &str)> = l.iter().map(|(a, s)| (a.as_str(), s.as_str())).collect();
    let r: Vec<(&str, &str)> = r.iter().map(|(a, s)| (a.as_str(), s.as_str())).collect();
    let w = WeakDoubleCategory::from_names(base, &assoc, &l, &r)?;
    check(w.name(), validate_weak(&w))?;
    Ok(w)
}

/// Either side of a functor.
enum Side {
    Strict(DoubleCategory),
    Weak(WeakDoubleCategory),
}

impl Side {
    fn base(&self) -> DoubleCategory {
        match self {
            Side::Strict(d) => d.clone(),
            Side::Weak(w) => w.base().as_ref().clone(),
        }
    }
    fn into_weak(self) -> WeakDoubleCategory {
        match self {
            Side::Strict(d) => WeakDoubleCategory::from_strict(d),
            Side::Weak(w) => w,
        }
    }
}

fn side(block: &Block<'_>, word: &str, indent: usize) -> Result<Side> {
    let (kind, name) = header(block.header, word, false)?;
    match parse_body(kind, &name, &block.body, indent + 2)? {
        Document::Weak(w) => Ok(Side::Weak(w)),
        doc => match doc.as_double() {
            Some(d) => Ok(Side::Strict(d.clone())),
            None => Err(parse_error(block.header.no, block.header.indent + 1, format!("{word} must be a category-like kind"))),
        },
    }
}

fn functor(name: &str, body: &[Line<'_>], indent: usize) -> Result<FunctorDoc> {
    let mut source = None;
    let mut target = None;
    let mut pairs = Vec::new();
    let mut phi = Vec::new();
    for block in split(body, indent)? {
        let line = block.header;
        let mut c = Cursor::new(line);
        let kw = c.keyword();
        match kw.as_str() {
            "SOURCE" => source = Some(side(&block, "SOURCE", indent)?),
            "TARGET" => target = Some(side(&block, "TARGET", indent)?),
            "OB" | "HM" | "VM" | "SQ" => {
                let sort = match kw.as_str() {
                    "OB" => Sort::Object,
                    "HM" => Sort::HMor,
                    "VM" => Sort::VMor,
                    _ => Sort::Square,
                };
                let x = c.ident("source id")?;
                c.expect("->")?;
                let y = c.ident("target id")?;
                c.end()?;
                pairs.push((sort, x, y));
            }
            "PHI" => {
                let y = c.ident("hmor id")?;
                c.expect("*")?;
                let x = c.ident("hmor id")?;
                c.expect("->")?;
                let s = c.ident("square id")?;
                c.end()?;
                phi.push((line, y, x, s));
            }
            _ => return Err(parse_error(line.no, line.indent + 1, format!("unknown section '{}'", first_word(line.text)))),
        }
        if !matches!(kw.as_str(), "SOURCE" | "TARGET") {
            if let Some(l) = block.body.first() {
                return Err(parse_error(l.no, 1, "unexpected indentation"));
            }
        }
    }
    let missing = |what: &str| parse_error(body.first().map_or(1, |l| l.no), 1, format!("functor {name} has no {what} block"));
    let source = source.ok_or_else(|| missing("SOURCE"))?;
    let target = target.ok_or_else(|| missing("TARGET"))?;
    let weak = matches!(source, Side::Weak(_)) || matches!(target, Side::Weak(_));
    let strict = DoubleFunctor::from_names(name, Arc::new(source.base()), Arc::new(target.base()), &pairs)?;
    if weak {
        if let Some((line, ..)) = phi.first() {
            return Err(parse_error(line.no, line.indent + 1, "PHI is not allowed between weak double categories"));
        }
        let f = WeakDoubleFunctor::new(
            name,
            Arc::new(source.into_weak()),
            Arc::new(target.into_weak()),
            strict.maps().clone(),
        )?;
        check(name, f.validate())?;
        return Ok(FunctorDoc::Weak(f));
    }
    if phi.is_empty() {
        check(name, strict.validate())?;
        return Ok(FunctorDoc::Strict(strict));
    }
    let (a, b) = (strict.source(), strict.target());
    let mut compositors = BTreeMap::new();
    for (line, y, x, s) in &phi {
        let at = |msg: String| parse_error(line.no, line.indent + 1, msg);
        let yi = a.find(Sort::HMor, y).ok_or_else(|| at(format!("unknown hmor '{y}'")))?;
        let xi = a.find(Sort::HMor, x).ok_or_else(|| at(format!("unknown hmor '{x}'")))?;
        let si = b.find(Sort::Square, s).ok_or_else(|| at(format!("unknown square '{s}'")))?;
        if compositors.insert((yi, xi), si).is_some() {
            return Err(at(format!("duplicate PHI {y}*{x}")));
        }
    }
    let f = HorizontallyPseudoDoubleFunctor::new(name, a.clone(), b.clone(), strict.maps().clone(), compositors)?;
    check(name, f.verify())?;
    Ok(FunctorDoc::Pseudo(f))
}

fn transformation(name: &str, body: &[Line<'_>], indent: usize) -> Result<TransformationDoc> {
    let mut from = None;
    let mut to = None;
    let mut entries = Vec::new();
    for block in split(body, indent)? {
        let line = block.header;
        let mut c = Cursor::new(line);
        let kw = c.keyword();
        match kw.as_str() {
            "FROM" | "TO" => {
                let (kind, fname) = header(line, &kw, false)?;
                if kind != Kind::Functor {
                    return Err(parse_error(line.no, line.indent + 1, format!("{kw} must be a functor")));
                }
                let f = functor(&fname, &block.body, indent + 2)?;
                let p = f
                    .as_pseudo()
                    .ok_or_else(|| parse_error(line.no, line.indent + 1, "transformations need strict double categories"))?;
                if kw == "FROM" {
                    from = Some(p);
                } else {
                    to = Some(p);
                }
                continue;
            }
            "COMP" | "NAT" | "PS" => {
                let x = c.ident("source id")?;
                c.expect("->")?;
                let y = c.ident("target id")?;
                c.end()?;
                entries.push((line, kw, x, y));
            }
            _ => return Err(parse_error(line.no, line.indent + 1, format!("unknown section '{}'", first_word(line.text)))),
        }
        if let Some(l) = block.body.first() {
            return Err(parse_error(l.no, 1, "unexpected indentation"));
        }
    }
    let missing = |what: &str| parse_error(body.first().map_or(1, |l| l.no), 1, format!("transformation {name} has no {what} block"));
    let from = from.ok_or_else(|| missing("FROM"))?;
    let to = to.ok_or_else(|| missing("TO"))?;
    let (a, b) = (from.source().clone(), from.target().clone());
    let mut components = vec![None; a.num_objects()];
    let mut naturality = vec![None; a.num_vmors()];
    let mut pseudo = vec![None; a.num_hmors()];
    for (line, kw, x, y) in &entries {
        let at = |msg: String| parse_error(line.no, line.indent + 1, msg);
        let (sort, image, table) = match kw.as_str() {
            "COMP" => (Sort::Object, Sort::HMor, &mut components),
            "NAT" => (Sort::VMor, Sort::Square, &mut naturality),
            _ => (Sort::HMor, Sort::Square, &mut pseudo),
        };
        let i = a.find(sort, x).ok_or_else(|| at(format!("unknown {sort} '{x}'")))?;
        let j = b.find(image, y).ok_or_else(|| at(format!("unknown {image} '{y}'")))?;
        if table[i].replace(j).is_some() {
            return Err(at(format!("duplicate {kw} {x}")));
        }
    }
    let complete = |v: Vec<Option<usize>>, kw: &str, sort: Sort| -> Result<Vec<usize>> {
        v.into_iter()
            .enumerate()
            .map(|(i, y)| y.ok_or_else(|| Error::MalformedMap(format!("{name}: {kw} {} is missing", a.cell_name(sort, i)))))
            .collect()
    };
    let data = Transformation {
        components: complete(components, "COMP", Sort::Object)?,
        naturality: complete(naturality, "NAT", Sort::VMor)?,
        pseudo: complete(pseudo, "PS", Sort::HMor)?,
    };
    check(name, verify_transformation(&from, &to, &data, HomKind::Pseudo))?;
    Ok(TransformationDoc { name: name.to_string(), from, to, data })
}

// ---------------------------------------------------------------------------
// Emission

/// Normalized text of a document: every cell and table entry, in index
/// order.
pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "DBLX {VERSION} {} {}", doc.kind().keyword(), doc.name());
    match doc {
        Document::Category(c) => emit_double(&mut out, c.as_double(), 0),
        Document::TwoCategory(c) => emit_double(&mut out, c.as_double(), 0),
        Document::DoubleCategory(d) => emit_double(&mut out, d, 0),
        Document::Weak(w) => emit_weak(&mut out, w, 0),
        Document::Functor(f) => emit_functor_body(&mut out, f, 0),
        Document::Transformation(t) => emit_transformation_body(&mut out, t, 0),
    }
    out
}

pub fn emit_double_category(d: &DoubleCategory) -> String {
    emit(&Document::DoubleCategory(d.clone()))
}

pub fn emit_functor(f: &DoubleFunctor) -> String {
    emit(&Document::Functor(FunctorDoc::Strict(f.clone())))
}

fn pad(n: usize) -> String {
    " ".repeat(n)
}

fn emit_double(out: &mut String, d: &DoubleCategory, indent: usize) {
    let p = pad(indent);
    let _ = write!(out, "{p}OBJECTS:");
    for o in d.objects() {
        let _ = write!(out, " {o}");
    }
    out.push('\n');
    let obj = |i: usize| d.object(i);
    for m in d.hmors() {
        let _ = writeln!(out, "{p}HMOR {}: {} -> {}", m.name, obj(m.src), obj(m.tgt));
    }
    for m in d.vmors() {
        let _ = writeln!(out, "{p}VMOR {}: {} => {}", m.name, obj(m.src), obj(m.tgt));
    }
    for q in d.squares() {
        let _ = writeln!(
            out,
            "{p}SQ {}: [{}; {}; {}; {}]",
            q.name,
            d.hmor(q.top).name,
            d.hmor(q.bottom).name,
            d.vmor(q.left).name,
            d.vmor(q.right).name
        );
    }
    for (o, name) in d.objects().iter().enumerate() {
        let _ = writeln!(out, "{p}IDH {name} = {}", d.hmor(d.id_h(o)).name);
    }
    for (o, name) in d.objects().iter().enumerate() {
        let _ = writeln!(out, "{p}IDV {name} = {}", d.vmor(d.id_v(o)).name);
    }
    for (a, m) in d.hmors().iter().enumerate() {
        let _ = writeln!(out, "{p}ESQ {} = {}", m.name, d.square(d.e_sq(a)).name);
    }
    for (u, m) in d.vmors().iter().enumerate() {
        let _ = writeln!(out, "{p}IDSQ {} = {}", m.name, d.square(d.id_sq(u)).name);
    }
    let hn = |i: usize| d.hmor(i).name.as_str();
    let vn = |i: usize| d.vmor(i).name.as_str();
    let sn = |i: usize| d.square(i).name.as_str();
    for ((y, x), z) in d.hcomp_m_entries() {
        let _ = writeln!(out, "{p}HCOMP {}*{} = {}", hn(y), hn(x), hn(z));
    }
    for ((y, x), z) in d.vcomp_m_entries() {
        let _ = writeln!(out, "{p}VCOMP {}.{} = {}", vn(y), vn(x), vn(z));
    }
    for ((y, x), z) in d.hcomp_sq_entries() {
        let _ = writeln!(out, "{p}SQH {}*{} = {}", sn(y), sn(x), sn(z));
    }
    for ((y, x), z) in d.vcomp_sq_entries() {
        let _ = writeln!(out, "{p}SQV {}.{} = {}", sn(y), sn(x), sn(z));
    }
}

fn emit_weak(out: &mut String, w: &WeakDoubleCategory, indent: usize) {
    let d = w.base();
    emit_double(out, d, indent);
    let p = pad(indent);
    let hn = |i: usize| d.hmor(i).name.as_str();
    let sn = |i: usize| d.square(i).name.as_str();
    for (&(a, b, c), &s) in w.associators() {
        let _ = writeln!(out, "{p}ASSOC ({},{},{}) = {}", hn(a), hn(b), hn(c), sn(s));
    }
    for a in 0..d.num_hmors() {
        let _ = writeln!(out, "{p}LUNIT {} = {}", hn(a), sn(w.lunit(a)));
    }
    for a in 0..d.num_hmors() {
        let _ = writeln!(out, "{p}RUNIT {} = {}", hn(a), sn(w.runit(a)));
    }
}

enum SideRef<'a> {
    Strict(&'a DoubleCategory),
    Weak(&'a WeakDoubleCategory),
}

fn emit_side(out: &mut String, word: &str, side: SideRef<'_>, indent: usize) {
    let p = pad(indent);
    match side {
        SideRef::Strict(d) => {
            let _ = writeln!(out, "{p}{word} {} {}", Kind::DblCat.keyword(), d.name());
            emit_double(out, d, indent + 2);
        }
        SideRef::Weak(w) => {
            let _ = writeln!(out, "{p}{word} {} {}", Kind::WeakDblCat.keyword(), w.name());
            emit_weak(out, w, indent + 2);
        }
    }
}

fn emit_maps(out: &mut String, a: &DoubleCategory, b: &DoubleCategory, maps: &[Vec<usize>; 4], indent: usize) {
    let p = pad(indent);
    for (sort, kw) in [(Sort::Object, "OB"), (Sort::HMor, "HM"), (Sort::VMor, "VM"), (Sort::Square, "SQ")] {
        for (x, &y) in maps[sort.index()].iter().enumerate() {
            let _ = writeln!(out, "{p}{kw} {} -> {}", a.cell_name(sort, x), b.cell_name(sort, y));
        }
    }
}

fn emit_functor_body(out: &mut String, f: &FunctorDoc, indent: usize) {
    match f {
        FunctorDoc::Strict(f) => {
            emit_side(out, "SOURCE", SideRef::Strict(f.source()), indent);
            emit_side(out, "TARGET", SideRef::Strict(f.target()), indent);
            emit_maps(out, f.source(), f.target(), f.maps(), indent);
        }
        FunctorDoc::Pseudo(f) => {
            emit_side(out, "SOURCE", SideRef::Strict(f.source()), indent);
            emit_side(out, "TARGET", SideRef::Strict(f.target()), indent);
            emit_maps(out, f.source(), f.target(), f.maps(), indent);
            let (a, b) = (f.source(), f.target());
            let p = pad(indent);
            for (&(y, x), &s) in f.compositors() {
                let _ = writeln!(out, "{p}PHI {}*{} -> {}", a.hmor(y).name, a.hmor(x).name, b.square(s).name);
            }
        }
        FunctorDoc::Weak(f) => {
            emit_side(out, "SOURCE", SideRef::Weak(f.source()), indent);
            emit_side(out, "TARGET", SideRef::Weak(f.target()), indent);
            emit_maps(out, f.source().base(), f.target().base(), f.functor().maps(), indent);
        }
    }
}

fn emit_transformation_body(out: &mut String, t: &TransformationDoc, indent: usize) {
    let p = pad(indent);
    for (word, f) in [("FROM", &t.from), ("TO", &t.to)] {
        let _ = writeln!(out, "{p}{word} {} {}", Kind::Functor.keyword(), f.name());
        emit_functor_body(out, &FunctorDoc::Pseudo(f.clone()), indent + 2);
    }
    let (a, b) = (t.from.source(), t.from.target());
    for (x, &y) in t.data.components.iter().enumerate() {
        let _ = writeln!(out, "{p}COMP {} -> {}", a.object(x), b.hmor(y).name);
    }
    for (u, &s) in t.data.naturality.iter().enumerate() {
        let _ = writeln!(out, "{p}NAT {} -> {}", a.vmor(u).name, b.square(s).name);
    }
    for (m, &s) in t.data.pseudo.iter().enumerate() {
        let _ = writeln!(out, "{p}PS {} -> {}", a.hmor(m).name, b.square(s).name);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::dbl::functor::same_presentation;

    fn round_trip(doc: &Document) -> String {
        let text = emit(doc);
        let again = emit(&parse(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", doc.name())));
        assert_eq!(text, again, "{}", doc.name());
        text
    }

    #[test]
    fn corpus_round_trips() {
        for d in double_categories() {
            round_trip(&Document::DoubleCategory(d));
        }
        for w in weak_double_categories() {
            round_trip(&Document::Weak(w));
        }
        for f in functors() {
            round_trip(&Document::Functor(FunctorDoc::Strict(f)));
        }
        round_trip(&Document::TwoCategory(cinv()));
        round_trip(&Document::Category(iso()));
    }

    #[test]
    fn hand_written_square() {
        let text = "DBLX 1 dblcat Sq\n\
                    # the free square\n\
                    OBJECTS: 00 01 10 11\n\
                    HMOR a: 00 -> 01\n\
                    HMOR b: 10 -> 11\n\
                    VMOR u: 00 => 10\n\
                    VMOR v: 01 => 11\n\
                    SQ alpha: [a; b; u; v]\n";
        let Document::DoubleCategory(d) = parse(text).unwrap() else { panic!("kind") };
        assert_eq!((d.num_objects(), d.num_hmors(), d.num_vmors()), (4, 6, 6));
        assert!(d.find(Sort::Square, "alpha").is_some());
        assert!(same_presentation(&d, &sq()));
    }

    #[test]
    fn boundary_mismatch_is_a_validation_error() {
        let text = "DBLX 1 dblcat Bad\nOBJECTS: 00 01 10 11\nHMOR a: 00 -> 01\nHMOR b: 10 -> 11\n\
                    VMOR u: 00 => 10\nVMOR v: 01 => 11\nSQ s: [a; b; v; u]\n";
        assert!(matches!(parse(text), Err(Error::Validation { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("DBLX 1 dblcat X\nOBJECTS: A\nFOO A\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 1, .. }), "{err}");
        let err = parse("DBLX 1 dblcat X\nOBJECTS: A B\nHMOR f: A => B\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 11, .. }), "{err}");
        let err = parse("DBLX 2 dblcat X\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse("DBLX 1 dblcat X\nOBJECTS: A\nASSOC (a,a,a) = s\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn functor_keeps_its_maps() {
        let f = i5();
        let Document::Functor(FunctorDoc::Strict(g)) = parse(&emit_functor(&f)).unwrap() else { panic!("kind") };
        assert!(g.same_maps(&f));
        assert!(same_presentation(g.source(), f.source()));
        assert_eq!(g.name(), "I5");
    }

    #[test]
    fn pseudo_functors_and_transformations_round_trip() {
        let f = HorizontallyPseudoDoubleFunctor::from_strict(&j2());
        let text = round_trip(&Document::Functor(FunctorDoc::Pseudo(f.clone())));
        assert!(text.contains("PHI "));
        let id = HorizontallyPseudoDoubleFunctor::from_strict(&DoubleFunctor::identity(f.target().clone()));
        let b = f.target();
        let t = Transformation {
            components: (0..b.num_objects()).map(|o| b.id_h(o)).collect(),
            naturality: (0..b.num_vmors()).map(|u| b.id_sq(u)).collect(),
            pseudo: (0..b.num_hmors()).map(|m| b.e_sq(m)).collect(),
        };
        let doc = TransformationDoc { name: "one".into(), from: id.clone(), to: id, data: t };
        round_trip(&Document::Transformation(doc));
    }
}
