use std::collections::HashMap;

use super::{is_valid_id, Arrow, DoubleCategory, Square};
use crate::error::{Error, Result};

/// Incremental, name-based construction of a [`DoubleCategory`].
///
/// Identity cells that are not declared are generated (`id_A`, `e_A`,
/// `e_a`, `id_u`, `box_A`). Unit-law and identity-coherence table entries
/// are filled in when absent; with `weak_horizontal` set, the horizontal
/// unit laws are left to the declared tables.
#[derive(Clone, Debug, Default)]
pub struct DoubleCategoryBuilder {
    name: String,
    weak_horizontal: bool,
    objects: Vec<String>,
    hmors: Vec<(String, String, String)>,
    vmors: Vec<(String, String, String)>,
    squares: Vec<(String, [String; 4])>,
    globular: Vec<(String, String, String)>,
    id_h: Vec<(String, String)>,
    id_v: Vec<(String, String)>,
    e_sq: Vec<(String, String)>,
    id_sq: Vec<(String, String)>,
    hcomp_m: Vec<[String; 3]>,
    vcomp_m: Vec<[String; 3]>,
    hcomp_sq: Vec<[String; 3]>,
    vcomp_sq: Vec<[String; 3]>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedTable(msg.into())
}

impl DoubleCategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        DoubleCategoryBuilder { name: name.into(), ..Default::default() }
    }

    pub fn set_weak_horizontal(&mut self, weak: bool) -> &mut Self {
        self.weak_horizontal = weak;
        self
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn hmor(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.hmors.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn vmor(&mut self, name: &str, src: &str, tgt: &str) -> &mut Self {
        self.vmors.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn square(&mut self, name: &str, top: &str, bottom: &str, left: &str, right: &str) -> &mut Self {
        self.squares.push((name.into(), [top.into(), bottom.into(), left.into(), right.into()]));
        self
    }

    /// A square `top ⇒ bottom` whose vertical sides are the identities on
    /// the ends of `top`.
    pub fn globular(&mut self, name: &str, top: &str, bottom: &str) -> &mut Self {
        self.globular.push((name.into(), top.into(), bottom.into()));
        self
    }

    pub fn id_h(&mut self, obj: &str, name: &str) -> &mut Self {
        self.id_h.push((obj.into(), name.into()));
        self
    }

    pub fn id_v(&mut self, obj: &str, name: &str) -> &mut Self {
        self.id_v.push((obj.into(), name.into()));
        self
    }

    pub fn e_sq(&mut self, hmor: &str, name: &str) -> &mut Self {
        self.e_sq.push((hmor.into(), name.into()));
        self
    }

    pub fn id_sq(&mut self, vmor: &str, name: &str) -> &mut Self {
        self.id_sq.push((vmor.into(), name.into()));
        self
    }

    /// `second ∘ first = composite`.
    pub fn hcomp_m(&mut self, second: &str, first: &str, composite: &str) -> &mut Self {
        self.hcomp_m.push([second.into(), first.into(), composite.into()]);
        self
    }

    pub fn vcomp_m(&mut self, second: &str, first: &str, composite: &str) -> &mut Self {
        self.vcomp_m.push([second.into(), first.into(), composite.into()]);
        self
    }

    /// `right * left = composite` for squares side by side.
    pub fn hcomp_sq(&mut self, right: &str, left: &str, composite: &str) -> &mut Self {
        self.hcomp_sq.push([right.into(), left.into(), composite.into()]);
        self
    }

    /// `bottom . top = composite` for stacked squares.
    pub fn vcomp_sq(&mut self, bottom: &str, top: &str, composite: &str) -> &mut Self {
        self.vcomp_sq.push([bottom.into(), top.into(), composite.into()]);
        self
    }

    pub fn build(&self) -> Result<DoubleCategory> {
        Assembly::run(self)
    }
}

struct Pending {
    name: String,
    ends: Vec<usize>,
}

/// Cells of one sort keyed by name, in insertion order until sorted.
#[derive(Default)]
struct Pool {
    cells: Vec<Pending>,
    index: HashMap<String, usize>,
}

impl Pool {
    fn add(&mut self, kind: &str, name: &str, ends: Vec<usize>) -> Result<usize> {
        if !is_valid_id(name) {
            return Err(malformed(format!("invalid {kind} id '{name}'")));
        }
        if self.index.contains_key(name) {
            return Err(malformed(format!("duplicate {kind} id '{name}'")));
        }
        let i = self.cells.len();
        self.cells.push(Pending { name: name.to_string(), ends });
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    fn get(&self, kind: &str, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| malformed(format!("unknown {kind} id '{name}'")))
    }

    /// Permutation old index -> sorted index.
    fn sort(&mut self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.cells.len()).collect();
        order.sort_by(|&a, &b| self.cells[a].name.cmp(&self.cells[b].name));
        let mut perm = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let mut cells: Vec<Option<Pending>> = std::mem::take(&mut self.cells).into_iter().map(Some).collect();
        self.cells = order.iter().map(|&old| cells[old].take().unwrap()).collect();
        self.index = self.cells.iter().enumerate().map(|(i, c)| (c.name.clone(), i)).collect();
        perm
    }
}

struct Assembly;

impl Assembly {
    fn run(b: &DoubleCategoryBuilder) -> Result<DoubleCategory> {
        let mut objs = Pool::default();
        let mut obj_names = b.objects.clone();
        obj_names.sort();
        for o in &obj_names {
            objs.add("object", o, vec![])?;
        }
        let mut hm = Pool::default();
        for (n, s, t) in &b.hmors {
            hm.add("hmor", n, vec![objs.get("object", s)?, objs.get("object", t)?])?;
        }
        let mut vm = Pool::default();
        for (n, s, t) in &b.vmors {
            vm.add("vmor", n, vec![objs.get("object", s)?, objs.get("object", t)?])?;
        }
        let nobj = obj_names.len();
        let id_h = identities("hmor", "id_", &objs, &mut hm, &b.id_h)?;
        let id_v = identities("vmor", "e_", &objs, &mut vm, &b.id_v)?;

        let mut sq = Pool::default();
        for (n, [t, bo, l, r]) in &b.squares {
            let ends = vec![hm.get("hmor", t)?, hm.get("hmor", bo)?, vm.get("vmor", l)?, vm.get("vmor", r)?];
            sq.add("square", n, ends)?;
        }
        for (n, t, bo) in &b.globular {
            let (t, bo) = (hm.get("hmor", t)?, hm.get("hmor", bo)?);
            let ends = hm.cells[t].ends.clone();
            sq.add("square", n, vec![t, bo, id_v[ends[0]], id_v[ends[1]]])?;
        }

        let decl = |pairs: &[(String, String)], pool: &Pool, kind: &str| -> Result<HashMap<usize, String>> {
            let mut m: HashMap<usize, String> = HashMap::new();
            for (cell, name) in pairs {
                let i = pool.get(kind, cell)?;
                if let Some(prev) = m.insert(i, name.clone()) {
                    if prev != *name {
                        return Err(malformed(format!("conflicting identity squares for {kind} '{cell}'")));
                    }
                }
            }
            Ok(m)
        };
        let e_decl = decl(&b.e_sq, &hm, "hmor")?;
        let id_decl = decl(&b.id_sq, &vm, "vmor")?;

        let mut e_sq = vec![usize::MAX; hm.cells.len()];
        let mut id_sq = vec![usize::MAX; vm.cells.len()];
        for o in 0..nobj {
            let (ih, iv) = (id_h[o], id_v[o]);
            let name = match (e_decl.get(&ih), id_decl.get(&iv)) {
                (Some(x), Some(y)) if x != y => {
                    return Err(malformed(format!(
                        "identity squares of '{}' and '{}' must coincide",
                        hm.cells[ih].name, vm.cells[iv].name
                    )))
                }
                (Some(x), _) | (None, Some(x)) => x.clone(),
                (None, None) => format!("box_{}", objs.cells[o].name),
            };
            let s = ensure_square(&mut sq, &name, [ih, ih, iv, iv])?;
            e_sq[ih] = s;
            id_sq[iv] = s;
        }
        for a in 0..hm.cells.len() {
            if e_sq[a] != usize::MAX {
                continue;
            }
            let (s, t) = (hm.cells[a].ends[0], hm.cells[a].ends[1]);
            let name = e_decl.get(&a).cloned().unwrap_or_else(|| format!("e_{}", hm.cells[a].name));
            e_sq[a] = ensure_square(&mut sq, &name, [a, a, id_v[s], id_v[t]])?;
        }
        for u in 0..vm.cells.len() {
            if id_sq[u] != usize::MAX {
                continue;
            }
            let (s, t) = (vm.cells[u].ends[0], vm.cells[u].ends[1]);
            let name = id_decl.get(&u).cloned().unwrap_or_else(|| format!("id_{}", vm.cells[u].name));
            id_sq[u] = ensure_square(&mut sq, &name, [id_h[s], id_h[t], u, u])?;
        }

        // Sort every sort by name and remap.
        let ph = hm.sort();
        let pv = vm.sort();
        let ps = sq.sort();
        let remap = |v: &[usize], p: &[usize]| -> Vec<usize> {
            let mut out = vec![0; v.len()];
            for (old, &x) in v.iter().enumerate() {
                out[p[old]] = x;
            }
            out
        };
        let id_h: Vec<usize> = id_h.iter().map(|&x| ph[x]).collect();
        let id_v: Vec<usize> = id_v.iter().map(|&x| pv[x]).collect();
        let e_sq: Vec<usize> = remap(&e_sq, &ph).into_iter().map(|x| ps[x]).collect();
        let id_sq: Vec<usize> = remap(&id_sq, &pv).into_iter().map(|x| ps[x]).collect();
        let hmors: Vec<Arrow> = hm
            .cells
            .iter()
            .map(|c| Arrow { name: c.name.clone(), src: c.ends[0], tgt: c.ends[1] })
            .collect();
        let vmors: Vec<Arrow> = vm
            .cells
            .iter()
            .map(|c| Arrow { name: c.name.clone(), src: c.ends[0], tgt: c.ends[1] })
            .collect();
        let squares: Vec<Square> = sq
            .cells
            .iter()
            .map(|c| Square {
                name: c.name.clone(),
                top: ph[c.ends[0]],
                bottom: ph[c.ends[1]],
                left: pv[c.ends[2]],
                right: pv[c.ends[3]],
            })
            .collect();

        let mut hcomp_m = HashMap::new();
        for [x, y, z] in &b.hcomp_m {
            let (x, y, z) = (hm.get("hmor", x)?, hm.get("hmor", y)?, hm.get("hmor", z)?);
            if hmors[y].tgt != hmors[x].src {
                return Err(malformed(format!(
                    "HCOMP {}*{}: '{}' is not composable after '{}'",
                    hmors[x].name, hmors[y].name, hmors[x].name, hmors[y].name
                )));
            }
            put(&mut hcomp_m, (x, y), z, "HCOMP", &hmors[x].name, &hmors[y].name)?;
        }
        let mut vcomp_m = HashMap::new();
        for [x, y, z] in &b.vcomp_m {
            let (x, y, z) = (vm.get("vmor", x)?, vm.get("vmor", y)?, vm.get("vmor", z)?);
            if vmors[y].tgt != vmors[x].src {
                return Err(malformed(format!(
                    "VCOMP {}.{}: '{}' is not composable after '{}'",
                    vmors[x].name, vmors[y].name, vmors[x].name, vmors[y].name
                )));
            }
            put(&mut vcomp_m, (x, y), z, "VCOMP", &vmors[x].name, &vmors[y].name)?;
        }
        let mut hcomp_sq = HashMap::new();
        for [x, y, z] in &b.hcomp_sq {
            let (x, y, z) = (sq.get("square", x)?, sq.get("square", y)?, sq.get("square", z)?);
            if squares[y].right != squares[x].left {
                return Err(malformed(format!(
                    "SQH {}*{}: right edge of '{}' is not the left edge of '{}'",
                    squares[x].name, squares[y].name, squares[y].name, squares[x].name
                )));
            }
            put(&mut hcomp_sq, (x, y), z, "SQH", &squares[x].name, &squares[y].name)?;
        }
        let mut vcomp_sq = HashMap::new();
        for [x, y, z] in &b.vcomp_sq {
            let (x, y, z) = (sq.get("square", x)?, sq.get("square", y)?, sq.get("square", z)?);
            if squares[y].bottom != squares[x].top {
                return Err(malformed(format!(
                    "SQV {}.{}: bottom edge of '{}' is not the top edge of '{}'",
                    squares[x].name, squares[y].name, squares[y].name, squares[x].name
                )));
            }
            put(&mut vcomp_sq, (x, y), z, "SQV", &squares[x].name, &squares[y].name)?;
        }

        // Unit laws and identity coherence.
        if !b.weak_horizontal {
            for (a, h) in hmors.iter().enumerate() {
                hcomp_m.entry((id_h[h.tgt], a)).or_insert(a);
                hcomp_m.entry((a, id_h[h.src])).or_insert(a);
            }
            for (s, q) in squares.iter().enumerate() {
                hcomp_sq.entry((id_sq[q.right], s)).or_insert(s);
                hcomp_sq.entry((s, id_sq[q.left])).or_insert(s);
            }
        }
        for (u, v) in vmors.iter().enumerate() {
            vcomp_m.entry((id_v[v.tgt], u)).or_insert(u);
            vcomp_m.entry((u, id_v[v.src])).or_insert(u);
        }
        for (s, q) in squares.iter().enumerate() {
            vcomp_sq.entry((e_sq[q.bottom], s)).or_insert(s);
            vcomp_sq.entry((s, e_sq[q.top])).or_insert(s);
        }
        let hm_entries: Vec<_> = hcomp_m.iter().map(|(&k, &v)| (k, v)).collect();
        for ((x, y), z) in hm_entries {
            hcomp_sq.entry((e_sq[x], e_sq[y])).or_insert(e_sq[z]);
        }
        let vm_entries: Vec<_> = vcomp_m.iter().map(|(&k, &v)| (k, v)).collect();
        for ((x, y), z) in vm_entries {
            vcomp_sq.entry((id_sq[x], id_sq[y])).or_insert(id_sq[z]);
        }

        let names = [
            objs.index.clone(),
            hm.index.clone(),
            vm.index.clone(),
            sq.index.clone(),
        ];
        let mut d = DoubleCategory {
            name: b.name.clone(),
            weak_horizontal: b.weak_horizontal,
            objects: obj_names,
            hmors,
            vmors,
            squares,
            id_h,
            id_v,
            e_sq,
            id_sq,
            hcomp_m,
            vcomp_m,
            hcomp_sq,
            vcomp_sq,
            names,
            hom_h: HashMap::new(),
            hom_v: HashMap::new(),
            by_boundary: HashMap::new(),
            by_left: vec![],
            by_right: vec![],
            by_top: vec![],
            by_bottom: vec![],
            vinv: vec![],
            hinv: vec![],
        };
        index(&mut d);
        Ok(d)
    }
}

fn put(
    t: &mut HashMap<(usize, usize), usize>,
    k: (usize, usize),
    v: usize,
    what: &str,
    x: &str,
    y: &str,
) -> Result<()> {
    match t.insert(k, v) {
        Some(prev) if prev != v => Err(malformed(format!("conflicting {what} entries for {x}, {y}"))),
        _ => Ok(()),
    }
}

fn identities(
    kind: &str,
    prefix: &str,
    objs: &Pool,
    pool: &mut Pool,
    declared: &[(String, String)],
) -> Result<Vec<usize>> {
    let mut chosen: Vec<Option<String>> = vec![None; objs.cells.len()];
    for (o, name) in declared {
        let oi = objs.get("object", o)?;
        match &chosen[oi] {
            Some(prev) if prev != name => {
                return Err(malformed(format!("conflicting identity {kind}s for object '{o}'")))
            }
            _ => chosen[oi] = Some(name.clone()),
        }
    }
    let mut out = Vec::with_capacity(objs.cells.len());
    for (oi, c) in chosen.into_iter().enumerate() {
        let name = c.unwrap_or_else(|| format!("{prefix}{}", objs.cells[oi].name));
        let i = match pool.index.get(&name) {
            Some(&i) => {
                if pool.cells[i].ends != [oi, oi] {
                    return Err(malformed(format!(
                        "identity {kind} '{name}' of '{}' is not an endomorphism of it",
                        objs.cells[oi].name
                    )));
                }
                i
            }
            None => pool.add(kind, &name, vec![oi, oi])?,
        };
        out.push(i);
    }
    Ok(out)
}

fn ensure_square(sq: &mut Pool, name: &str, ends: [usize; 4]) -> Result<usize> {
    match sq.index.get(name) {
        Some(&i) => {
            if sq.cells[i].ends != ends {
                return Err(malformed(format!("identity square '{name}' has the wrong boundary")));
            }
            Ok(i)
        }
        None => sq.add("square", name, ends.to_vec()),
    }
}

fn index(d: &mut DoubleCategory) {
    for (i, h) in d.hmors.iter().enumerate() {
        d.hom_h.entry((h.src, h.tgt)).or_default().push(i);
    }
    for (i, v) in d.vmors.iter().enumerate() {
        d.hom_v.entry((v.src, v.tgt)).or_default().push(i);
    }
    d.by_left = vec![vec![]; d.vmors.len()];
    d.by_right = vec![vec![]; d.vmors.len()];
    d.by_top = vec![vec![]; d.hmors.len()];
    d.by_bottom = vec![vec![]; d.hmors.len()];
    for (i, s) in d.squares.iter().enumerate() {
        d.by_boundary.entry(s.boundary()).or_default().push(i);
        d.by_left[s.left].push(i);
        d.by_right[s.right].push(i);
        d.by_top[s.top].push(i);
        d.by_bottom[s.bottom].push(i);
    }
    let n = d.squares.len();
    let mut vinv = vec![None; n];
    let mut hinv = vec![None; n];
    for s in 0..n {
        let q = &d.squares[s];
        vinv[s] = d.by_top[q.bottom].iter().copied().find(|&t| {
            d.squares[t].bottom == q.top
                && d.vcomp_sq(t, s) == Some(d.e_sq[q.top])
                && d.vcomp_sq(s, t) == Some(d.e_sq[q.bottom])
        });
        hinv[s] = d.by_left[q.right].iter().copied().find(|&t| {
            d.squares[t].right == q.left
                && d.hcomp_sq(t, s) == Some(d.id_sq[q.left])
                && d.hcomp_sq(s, t) == Some(d.id_sq[q.right])
        });
    }
    d.vinv = vinv;
    d.hinv = hinv;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_two() -> DoubleCategoryBuilder {
        let mut b = DoubleCategoryBuilder::new("TwoH");
        b.object("0").object("1").hmor("a", "0", "1");
        b
    }

    #[test]
    fn identities_are_generated() {
        let d = arrow_two().build().unwrap();
        assert_eq!(d.num_objects(), 2);
        assert_eq!(d.num_hmors(), 3);
        assert_eq!(d.num_vmors(), 2);
        assert_eq!(d.num_squares(), 3);
        let a = d.find(super::super::Sort::HMor, "a").unwrap();
        assert_eq!(d.square(d.e_sq(a)).name, "e_a");
        assert_eq!(d.square(d.box_sq(0)).name, "box_0");
        assert_eq!(d.id_sq(d.id_v(1)), d.box_sq(1));
        let id0 = d.id_h(0);
        assert_eq!(d.hcomp_m(a, id0), Some(a));
        assert_eq!(d.hcomp_sq(d.e_sq(a), d.box_sq(0)), Some(d.e_sq(a)));
    }

    #[test]
    fn names_are_sorted() {
        let mut b = DoubleCategoryBuilder::new("x");
        b.object("z").object("b").object("m");
        let d = b.build().unwrap();
        assert_eq!(d.objects(), &["b".to_string(), "m".into(), "z".into()]);
    }

    #[test]
    fn non_composable_entry_is_rejected() {
        let mut b = arrow_two();
        b.hcomp_m("a", "a", "a");
        assert!(matches!(b.build(), Err(Error::MalformedTable(_))));
    }

    #[test]
    fn unknown_reference_is_rejected() {
        let mut b = arrow_two();
        b.square("s", "a", "nope", "e_0", "e_1");
        assert!(matches!(b.build(), Err(Error::MalformedTable(_))));
    }

    #[test]
    fn invalid_ids_are_rejected() {
        let mut b = DoubleCategoryBuilder::new("x");
        b.object("a b");
        assert!(b.build().is_err());
    }

    #[test]
    fn identity_squares_are_their_own_inverses() {
        let d = arrow_two().build().unwrap();
        for s in 0..d.num_squares() {
            assert_eq!(d.vertical_inverse(s), Some(s));
        }
    }
}
