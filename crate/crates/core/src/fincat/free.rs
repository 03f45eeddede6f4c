//! Freeness of finite categories and the `⊔ 𝟙/𝟚` shape test.

use std::collections::BTreeMap;

use serde::Serialize;

use super::FinCategory;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub free: bool,
    /// Indecomposable morphisms (the generating graph on success).
    pub generators: Vec<String>,
    /// Each non-identity morphism as its path of generators, first applied
    /// first. Only filled in on success.
    pub factorization: BTreeMap<String, Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn non_identities(c: &FinCategory) -> Vec<usize> {
    (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect()
}

/// Whether the graph on `edges` has a directed cycle (self-loops count).
fn has_cycle(c: &FinCategory, edges: &[usize]) -> bool {
    let n = c.num_objects();
    let mut out = vec![Vec::new(); n];
    for &e in edges {
        out[c.morphism(e).src].push(c.morphism(e).tgt);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    fn visit(v: usize, out: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &out[v] {
            if state[w] == 1 || (state[w] == 0 && visit(w, out, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    (0..n).any(|v| state[v] == 0 && visit(v, &out, &mut state))
}

/// Paths of length >= 1 in an acyclic graph, with their composites, cut
/// off after `cap + 1` paths. `None` if a composite is missing.
fn paths(c: &FinCategory, edges: &[usize], cap: usize) -> Option<Vec<(Vec<usize>, usize)>> {
    let mut out_edges = vec![Vec::new(); c.num_objects()];
    for &e in edges {
        out_edges[c.morphism(e).src].push(e);
    }
    let mut result = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = edges.iter().map(|&e| (vec![e], e)).collect();
    stack.reverse();
    while let Some((path, comp)) = stack.pop() {
        result.push((path.clone(), comp));
        if result.len() > cap {
            break;
        }
        let end = c.morphism(comp).tgt;
        for &e in out_edges[end].iter().rev() {
            let next = c.compose(e, comp)?;
            let mut p = path.clone();
            p.push(e);
            stack.push((p, next));
        }
    }
    Some(result)
}

/// Decides whether `c` is free on a graph: the indecomposable morphisms
/// must form an acyclic graph whose paths evaluate bijectively onto the
/// non-identity morphisms.
pub fn is_free_category(c: &FinCategory) -> FreenessReport {
    let nonid = non_identities(c);
    let decomposable = |f: usize| {
        nonid.iter().any(|&x| nonid.iter().any(|&y| c.compose(y, x) == Some(f)))
    };
    let gens: Vec<usize> = nonid.iter().copied().filter(|&f| !decomposable(f)).collect();
    let names = |v: &[usize]| v.iter().map(|&f| c.morphism(f).name.clone()).collect::<Vec<_>>();
    let fail = |reason: &str| FreenessReport {
        free: false,
        generators: names(&gens),
        factorization: BTreeMap::new(),
        reason: Some(reason.to_string()),
    };
    if has_cycle(c, &gens) {
        return fail("indecomposable morphisms form a cycle");
    }
    let Some(ps) = paths(c, &gens, nonid.len()) else {
        return fail("a composite of generators is missing");
    };
    let mut hit = vec![None; c.num_morphisms()];
    for (p, comp) in &ps {
        if c.is_identity(*comp) {
            return fail("a generator path composes to an identity");
        }
        if hit[*comp].replace(p.clone()).is_some() {
            return fail(&format!("'{}' has two factorizations", c.morphism(*comp).name));
        }
    }
    if let Some(&f) = nonid.iter().find(|&&f| hit[f].is_none()) {
        return fail(&format!("'{}' is not a composite of generators", c.morphism(f).name));
    }
    let factorization =
        nonid.iter().map(|&f| (c.morphism(f).name.clone(), names(hit[f].as_ref().unwrap()))).collect();
    FreenessReport { free: true, generators: names(&gens), factorization, reason: None }
}

/// Reference decision by exhaustive search over candidate generating sets:
/// `c` is free iff for some set `S` of non-identity morphisms the free
/// category on `S` evaluates bijectively onto `c`. Exponential; meant for
/// cross-checks on small categories.
pub fn is_free_category_brute_force(c: &FinCategory) -> bool {
    let nonid = non_identities(c);
    assert!(nonid.len() <= 20, "brute-force freeness limited to 20 morphisms");
    (0u32..1 << nonid.len()).any(|mask| {
        let s: Vec<usize> = (0..nonid.len()).filter(|i| mask >> i & 1 == 1).map(|i| nonid[i]).collect();
        if has_cycle(c, &s) {
            return false;
        }
        let Some(ps) = paths(c, &s, nonid.len()) else { return false };
        let mut images: Vec<usize> = ps.iter().map(|&(_, comp)| comp).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == ps.len() && images.len() == nonid.len() && images.iter().all(|&f| !c.is_identity(f))
    })
}

/// Every connected component is a single object with only its identity, or
/// two distinct objects with exactly one non-identity morphism.
pub fn is_disjoint_union_1_2(c: &FinCategory) -> bool {
    let n = c.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let nonid = non_identities(c);
    for &f in &nonid {
        let (a, b) = (root(&mut parent, c.morphism(f).src), root(&mut parent, c.morphism(f).tgt));
        parent[a] = b;
    }
    let mut objects = vec![0usize; n];
    let mut morphisms = vec![0usize; n];
    for o in 0..n {
        let r = root(&mut parent, o);
        objects[r] += 1;
    }
    for &f in &nonid {
        let r = root(&mut parent, c.morphism(f).src);
        morphisms[r] += 1;
        if c.morphism(f).src == c.morphism(f).tgt {
            return false;
        }
    }
    (0..n).filter(|&o| root(&mut parent, o) == o).all(|r| {
        (objects[r] == 1 && morphisms[r] == 0) || (objects[r] == 2 && morphisms[r] == 1)
    })
}

#[cfg(test)]
mod tests {
    use super::super::samples::*;
    use super::*;
    use crate::dbl::ops::coproduct;

    fn commutative_square() -> FinCategory {
        let mut b = FinCategory::builder("CSq");
        b.object("0").object("1").object("2").object("3");
        b.morphism("f", "0", "1").morphism("g", "1", "3").morphism("h", "0", "2").morphism("k", "2", "3");
        b.morphism("d", "0", "3").compose("g", "f", "d").compose("k", "h", "d");
        b.build().unwrap()
    }

    fn idempotent() -> FinCategory {
        let mut b = FinCategory::builder("Idem");
        b.object("0").morphism("x", "0", "0").compose("x", "x", "x");
        b.build().unwrap()
    }

    #[test]
    fn chain_is_free() {
        let r = is_free_category(&three());
        assert!(r.free);
        assert_eq!(r.generators, vec!["f", "g"]);
        assert_eq!(r.factorization["gf"], vec!["f", "g"]);
    }

    #[test]
    fn commutative_square_is_not_free() {
        let r = is_free_category(&commutative_square());
        assert!(!r.free);
        assert!(r.reason.unwrap().contains("two factorizations"));
    }

    #[test]
    fn idempotent_is_not_free() {
        let r = is_free_category(&idempotent());
        // x = x∘x is decomposable, so nothing generates it
        assert!(!r.free);
        assert!(r.generators.is_empty());
    }

    #[test]
    fn agrees_with_brute_force() {
        for c in [one(), two(), three(), iso(), commutative_square(), idempotent()] {
            assert_eq!(is_free_category(&c).free, is_free_category_brute_force(&c), "{}", c.name());
        }
    }

    #[test]
    fn disjoint_unions() {
        let u = FinCategory::from_double(coproduct(one().as_double(), two().as_double()).unwrap()).unwrap();
        assert!(is_disjoint_union_1_2(&u));
        assert!(!is_disjoint_union_1_2(&three()));
        assert!(!is_disjoint_union_1_2(&iso()));
        assert!(is_disjoint_union_1_2(&one()));
    }
}
