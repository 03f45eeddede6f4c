//! Isomorphism search: bijective functor enumeration pruned by local
//! invariants, refined jointly on both sides by iterated colour refinement
//! over boundaries and composition tables.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{DoubleCategory, DoubleFunctor, Sort};
use crate::error::Result;
use crate::search::Budget;

type Signature = Vec<usize>;

fn signatures(d: &DoubleCategory) -> [Vec<Signature>; 4] {
    let mut obj = vec![vec![0usize; 6]; d.num_objects()];
    for a in d.hmors() {
        obj[a.src][0] += 1;
        obj[a.tgt][1] += 1;
    }
    for u in d.vmors() {
        obj[u.src][2] += 1;
        obj[u.tgt][3] += 1;
    }
    for q in d.squares() {
        obj[d.hmor(q.top).src][4] += 1;
        obj[d.hmor(q.bottom).tgt][5] += 1;
    }
    let mut hm: Vec<Signature> = (0..d.num_hmors())
        .map(|a| {
            let h = d.hmor(a);
            vec![
                d.is_identity_hmor(a) as usize,
                (h.src == h.tgt) as usize,
                d.squares_with_top(a).len(),
                d.squares_with_bottom(a).len(),
                0,
                0,
            ]
        })
        .collect();
    for ((x, y), z) in d.hcomp_m_entries() {
        hm[x][4] += 1;
        hm[y][4] += 1;
        hm[z][5] += 1;
    }
    let mut vm: Vec<Signature> = (0..d.num_vmors())
        .map(|u| {
            let v = d.vmor(u);
            vec![
                d.is_identity_vmor(u) as usize,
                (v.src == v.tgt) as usize,
                d.squares_with_left(u).len(),
                d.squares_with_right(u).len(),
                0,
                0,
            ]
        })
        .collect();
    for ((x, y), z) in d.vcomp_m_entries() {
        vm[x][4] += 1;
        vm[y][4] += 1;
        vm[z][5] += 1;
    }
    let mut sq: Vec<Signature> = (0..d.num_squares())
        .map(|s| {
            vec![
                d.is_identity_square(s) as usize,
                d.is_globular(s) as usize,
                d.vertical_inverse(s).is_some() as usize,
                d.horizontal_inverse(s).is_some() as usize,
                0,
                0,
                0,
                0,
            ]
        })
        .collect();
    for ((x, y), z) in d.hcomp_sq_entries() {
        sq[x][4] += 1;
        sq[y][4] += 1;
        sq[z][5] += 1;
    }
    for ((x, y), z) in d.vcomp_sq_entries() {
        sq[x][6] += 1;
        sq[y][6] += 1;
        sq[z][7] += 1;
    }
    [obj, hm, vm, sq]
}

fn table_sizes(d: &DoubleCategory) -> [usize; 4] {
    [
        d.hcomp_m_entries().len(),
        d.vcomp_m_entries().len(),
        d.hcomp_sq_entries().len(),
        d.vcomp_sq_entries().len(),
    ]
}

type Colours = [Vec<usize>; 4];

/// Neighbourhood of every cell under the current colouring: boundary
/// cells and composition-table partners, tagged by role.
fn neighbourhoods(d: &DoubleCategory, c: &Colours) -> Neighbourhoods {
    let [o, hm, vm, sq] = c;
    let mut out: Neighbourhoods = std::array::from_fn(|k| vec![Vec::new(); d.count(Sort::ALL[k])]);
    for (m, a) in d.hmors().iter().enumerate() {
        out[0][a.src].push((0, hm[m], 0));
        out[0][a.tgt].push((1, hm[m], 0));
        out[1][m].push((0, o[a.src], o[a.tgt]));
    }
    for (u, a) in d.vmors().iter().enumerate() {
        out[0][a.src].push((2, vm[u], 0));
        out[0][a.tgt].push((3, vm[u], 0));
        out[2][u].push((0, o[a.src], o[a.tgt]));
    }
    for (s, q) in d.squares().iter().enumerate() {
        out[3][s].push((0, hm[q.top], hm[q.bottom]));
        out[3][s].push((1, vm[q.left], vm[q.right]));
        out[1][q.top].push((1, sq[s], 0));
        out[1][q.bottom].push((2, sq[s], 0));
        out[2][q.left].push((1, sq[s], 0));
        out[2][q.right].push((2, sq[s], 0));
    }
    let tables: [(usize, &Vec<usize>, Vec<((usize, usize), usize)>); 4] = [
        (1, hm, d.hcomp_m_entries()),
        (2, vm, d.vcomp_m_entries()),
        (3, sq, d.hcomp_sq_entries()),
        (3, sq, d.vcomp_sq_entries()),
    ];
    for (t, (k, col, entries)) in tables.iter().enumerate() {
        let r = 10 + 3 * t;
        for &((y, x), z) in entries {
            out[*k][y].push((r, col[x], col[z]));
            out[*k][x].push((r + 1, col[y], col[z]));
            out[*k][z].push((r + 2, col[y], col[x]));
        }
    }
    for list in out.iter_mut().flatten() {
        list.sort_unstable();
    }
    out
}

type Neighbourhoods = [Vec<Vec<(usize, usize, usize)>>; 4];

fn recolour<'n>(intern: &mut HashMap<(usize, usize, &'n [(usize, usize, usize)]), usize>, c: &Colours, n: &'n Neighbourhoods) -> Colours {
    std::array::from_fn(|k| {
        (0..c[k].len())
            .map(|i| {
                let next = intern.len();
                *intern.entry((k, c[k][i], n[k][i].as_slice())).or_insert(next)
            })
            .collect()
    })
}

fn initial_colours(a: &DoubleCategory, b: &DoubleCategory) -> (Colours, Colours) {
    let mut intern: HashMap<(usize, Signature), usize> = HashMap::new();
    let mut colour = |d: &DoubleCategory| -> Colours {
        let sig = signatures(d);
        std::array::from_fn(|k| {
            sig[k]
                .iter()
                .map(|s| {
                    let n = intern.len();
                    *intern.entry((k, s.clone())).or_insert(n)
                })
                .collect()
        })
    };
    (colour(a), colour(b))
}

fn class_count(c: &Colours, e: &Colours) -> usize {
    (0..4).map(|k| c[k].iter().chain(&e[k]).collect::<HashSet<_>>().len()).sum()
}

/// Refines a joint colouring of `a` and `b` until it is stable. Colours
/// stay comparable across the two sides.
fn refine(a: &DoubleCategory, b: &DoubleCategory, (mut ca, mut cb): (Colours, Colours)) -> (Colours, Colours) {
    let mut count = class_count(&ca, &cb);
    loop {
        let (na, nb) = (neighbourhoods(a, &ca), neighbourhoods(b, &cb));
        let mut intern = HashMap::new();
        let ra = recolour(&mut intern, &ca, &na);
        let rb = recolour(&mut intern, &cb, &nb);
        let next = class_count(&ra, &rb);
        ca = ra;
        cb = rb;
        if next == count {
            return (ca, cb);
        }
        count = next;
    }
}

fn same_histograms(ca: &Colours, cb: &Colours) -> bool {
    (0..4).all(|k| {
        let (mut x, mut y) = (ca[k].clone(), cb[k].clone());
        x.sort_unstable();
        y.sort_unstable();
        x == y
    })
}

/// Individualise-and-refine: pick the first cell in a smallest
/// non-singleton class, try each partner of the same colour.
fn search(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    colours: (Colours, Colours),
    budget: &Budget,
) -> Result<Option<DoubleFunctor>> {
    budget.tick("isomorphism search")?;
    let (ca, cb) = refine(a, b, colours);
    if !same_histograms(&ca, &cb) {
        return Ok(None);
    }
    let mut sizes: HashMap<(usize, usize), usize> = HashMap::new();
    for k in 0..4 {
        for &c in &ca[k] {
            *sizes.entry((k, c)).or_default() += 1;
        }
    }
    let pick = (0..4)
        .flat_map(|k| (0..ca[k].len()).map(move |i| (k, i)))
        .filter(|&(k, i)| sizes[&(k, ca[k][i])] > 1)
        .min_by_key(|&(k, i)| (sizes[&(k, ca[k][i])], k, i));
    let Some((k, x)) = pick else {
        let position: [HashMap<usize, usize>; 4] =
            std::array::from_fn(|k| cb[k].iter().enumerate().map(|(j, &c)| (c, j)).collect());
        let maps = std::array::from_fn(|k| ca[k].iter().map(|c| position[k][c]).collect());
        let Ok(f) = DoubleFunctor::new("iso", a.clone(), b.clone(), maps) else { return Ok(None) };
        return Ok(f.validate().is_valid().then_some(f));
    };
    let fresh = 1 + (0..4).flat_map(|k| ca[k].iter().chain(&cb[k])).copied().max().unwrap_or(0);
    for y in (0..cb[k].len()).filter(|&y| cb[k][y] == ca[k][x]) {
        let (mut na, mut nb) = (ca.clone(), cb.clone());
        na[k][x] = fresh;
        nb[k][y] = fresh;
        if let Some(f) = search(a, b, (na, nb), budget)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(
    a: &Arc<DoubleCategory>,
    b: &Arc<DoubleCategory>,
    budget: &Budget,
) -> Result<Option<DoubleFunctor>> {
    if Sort::ALL.iter().any(|&s| a.count(s) != b.count(s)) || table_sizes(a) != table_sizes(b) {
        return Ok(None);
    }
    search(a, b, initial_colours(a, b), budget)
}

pub fn are_isomorphic(a: &DoubleCategory, b: &DoubleCategory, budget: &Budget) -> Result<bool> {
    let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
    Ok(find_isomorphism(&a, &b, budget)?.is_some())
}
