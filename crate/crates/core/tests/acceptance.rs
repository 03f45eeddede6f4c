//! Acceptance gate. Each criterion prints one `pass`/`fail` line to the
//! terminal (bypassing output capture) and the test fails if any criterion
//! does.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use dblcat::construct::{
    horizontal_embed_functor, internal_hom, underlying_horizontal, underlying_horizontal_functor,
    underlying_vertical_category, vertical_morphism_2cat, vertical_morphism_functor,
};
use dblcat::corpus;
use dblcat::dbl::enumerate::enumerate_double_functors;
use dblcat::dbl::iso::are_isomorphic;
use dblcat::dblx::{emit, parse, Document, FunctorDoc};
use dblcat::equiv::{
    check_lemma_220, equivalence_witnesses, promote_to_adjoint, triangle_identities, unique_weak_inverse,
    verify_equivalence, weakly_invertible_squares,
};
use dblcat::fincat::{
    check_biequivalence, check_lack_fibration, discrete_2cat, is_category_equivalence, is_disjoint_union_1_2,
    is_isofibration, CatFunctor, TwoCategory, TwoFunctor,
};
use dblcat::homotopy::{
    hom_adjunction_horizontal, hom_adjunction_vertical, strict_homotopy_inverse, verify_whitehead_data,
    whitehead_inverse, HorizontallyPseudoDoubleFunctor, PseudoEquivalence,
};
use dblcat::model::{
    check_double_biequivalence, check_double_fibration, check_double_trivial_fibration, failing_generating_cofibration,
    is_cofibrant,
};
use dblcat::report::Condition;
use dblcat::sample;
use dblcat::weak::{check_double_biequivalence_weak, strictify, weak_cofibrancy, WeakCofibrancy, WeakDoubleCategory};
use dblcat::{Budget, DoubleCategory, DoubleFunctor, Error, Sort};

const SEED: u64 = 0x5EED_D0B1;
const RANDOM_FUNCTORS: usize = 200;
const RANDOM_TWO_FUNCTORS: usize = 100;
const RANDOM_CAT_FUNCTORS: usize = 60;
const CHARACTERIZATION_LIMIT: Duration = Duration::from_secs(120);
const SUITE_LIMIT: Duration = Duration::from_secs(600);
const WHITEHEAD_CASES: usize = 20;
const PERTURBED_CASES: usize = 10;
const STRICT_INVERSE_PAIRS: usize = 5;
const ORACLE_BUDGET: u64 = 1_000_000;
const LIFTING_BUDGET: u64 = 10_000_000;

/// Population counts of the characterization suite for `SEED`, frozen from
/// the first full run: (double biequivalences, double fibrations, double
/// trivial fibrations).
const FROZEN_POPULATION: (usize, usize, usize) = (30, 189, 23);

type Outcome = Result<String, String>;

fn report(n: usize, title: &str, outcome: &Outcome) {
    let line = match outcome {
        Ok(detail) => format!("acceptance criterion {n:2} ({title}): pass [{detail}]"),
        Err(detail) => format!("acceptance criterion {n:2} ({title}): FAIL [{detail}]"),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn run(n: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        }
    };
    report(n, title, &outcome);
    outcome.is_ok()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Corpus functors followed by the seeded random population.
fn population() -> Result<Vec<DoubleFunctor>, String> {
    let mut fs = corpus::functors();
    fs.extend(sample::functor_population(SEED, RANDOM_FUNCTORS).map_err(err)?);
    Ok(fs)
}

/// Trivial fibration of 2-categories, read off the definition: surjective
/// on objects, full on 1-cells, fully faithful on 2-cells.
fn lack_trivial_fibration(f: &TwoFunctor) -> bool {
    let (a, b) = (f.source(), f.target());
    let surjective = (0..b.num_objects()).all(|y| (0..a.num_objects()).any(|x| f.obj(x) == y));
    let full = (0..a.num_objects()).all(|x| {
        (0..a.num_objects())
            .all(|z| b.hom(f.obj(x), f.obj(z)).iter().all(|&g| a.hom(x, z).iter().any(|&m| f.mor(m) == g)))
    });
    let fully_faithful = (0..a.num_morphisms()).all(|m| {
        a.hom(a.morphism(m).src, a.morphism(m).tgt).iter().all(|&n| {
            b.cells_between(f.mor(m), f.mor(n))
                .iter()
                .all(|&beta| a.cells_between(m, n).iter().filter(|&&s| f.cell(s) == beta).count() == 1)
        })
    });
    surjective && full && fully_faithful
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fs = population()?;
    let mut counts = (0, 0, 0);
    let mut discrepancies = Vec::new();
    for f in &fs {
        let h = underlying_horizontal_functor(f).map_err(err)?;
        let v = vertical_morphism_functor(f).map_err(err)?;
        let db = check_double_biequivalence(f).passes();
        let df = check_double_fibration(f).passes();
        let dt = check_double_trivial_fibration(f).passes();
        let (hb, vb) = (check_biequivalence(&h).passes(), check_biequivalence(&v).passes());
        let (hf, vf) = (check_lack_fibration(&h).passes(), check_lack_fibration(&v).passes());
        let (ht, vt) = (lack_trivial_fibration(&h), lack_trivial_fibration(&v));
        if ht != (hb && hf) || vt != (vb && vf) {
            discrepancies.push(format!("{}: 2-categorical trivial fibration oracle", f.name()));
        }
        for (what, lhs, rhs) in [("db", db, hb && vb), ("df", df, hf && vf), ("dt", dt, ht && vt)] {
            if lhs != rhs {
                discrepancies.push(format!("{}: {what}={lhs}, via H/V {rhs}", f.name()));
            }
        }
        counts.0 += db as usize;
        counts.1 += df as usize;
        counts.2 += dt as usize;
    }
    let elapsed = start.elapsed();
    ensure(discrepancies.is_empty(), || format!("{} discrepancies: {}", discrepancies.len(), discrepancies.join("; ")))?;
    ensure(elapsed < CHARACTERIZATION_LIMIT, || format!("took {elapsed:?}"))?;
    ensure(counts == FROZEN_POPULATION, || format!("population counts {counts:?} differ from frozen {FROZEN_POPULATION:?}"))?;
    Ok(format!(
        "{} functors, 0 discrepancies, db {} df {} dt {}, {:.1}s",
        fs.len(),
        counts.0,
        counts.1,
        counts.2,
        elapsed.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let fs = population()?;
    let budget = Budget::new(LIFTING_BUDGET);
    let mut discrepancies = Vec::new();
    for f in &fs {
        let dt = check_double_trivial_fibration(f).passes();
        let rlp = failing_generating_cofibration(f, &budget).map_err(err)?.is_none();
        if dt != rlp {
            discrepancies.push(format!("{}: dt={dt}, rlp={rlp}", f.name()));
        }
    }
    ensure(discrepancies.is_empty(), || discrepancies.join("; "))?;
    let i5 = corpus::i5();
    let eps = corpus::eps_v2();
    let i5_failed = check_double_trivial_fibration(&i5).failed();
    let eps_failed = check_double_trivial_fibration(&eps).failed();
    let eps_db = check_double_biequivalence(&eps).failed();
    ensure(i5_failed == [Condition::Dt4], || format!("I5 fails {i5_failed:?}"))?;
    ensure(eps_failed == [Condition::Dt3], || format!("epsV2 fails {eps_failed:?}"))?;
    ensure(eps_db == [Condition::Db3], || format!("epsV2 db fails {eps_db:?}"))?;
    let i5_gen = failing_generating_cofibration(&i5, &budget).map_err(err)?;
    let eps_gen = failing_generating_cofibration(&eps, &budget).map_err(err)?;
    ensure(i5_gen.is_some() && eps_gen.is_some(), || "counterexamples lift against every generator".into())?;
    Ok(format!(
        "{} functors, 0 discrepancies; I5 fails dt4 (no lift against {}), epsV2 fails dt3 and db3 (no lift against {})",
        fs.len(),
        i5_gen.unwrap_or_default(),
        eps_gen.unwrap_or_default()
    ))
}

fn criterion_3() -> Outcome {
    let fs = sample::two_functor_population(SEED ^ 3, RANDOM_TWO_FUNCTORS).map_err(err)?;
    let mut discrepancies = Vec::new();
    let (mut b, mut l) = (0, 0);
    for f in &fs {
        let hf = horizontal_embed_functor(f);
        let biequiv = check_biequivalence(f).passes();
        let lack = check_lack_fibration(f).passes();
        if biequiv != check_double_biequivalence(&hf).passes() {
            discrepancies.push(format!("{}: biequivalence", f.name()));
        }
        if lack != check_double_fibration(&hf).passes() {
            discrepancies.push(format!("{}: fibration", f.name()));
        }
        b += biequiv as usize;
        l += lack as usize;
    }
    ensure(discrepancies.is_empty(), || discrepancies.join("; "))?;
    Ok(format!("{} 2-functors, 0 discrepancies, {b} biequivalences, {l} Lack fibrations", fs.len()))
}

fn corpus_objects() -> Vec<Arc<DoubleCategory>> {
    sample::double_pool()
}

fn criterion_4() -> Outcome {
    let one = Arc::new(corpus::one());
    let objects = corpus_objects();
    for a in &objects {
        let fs = enumerate_double_functors(a, &one, &Budget::default()).map_err(err)?;
        ensure(fs.len() == 1, || format!("{} has {} functors to One", a.name(), fs.len()))?;
        let r = check_double_fibration(&fs[0]);
        ensure(r.passes(), || format!("{} -> One fails {:?}", a.name(), r.failed()))?;
    }
    Ok(format!("{} objects", objects.len()))
}

fn criterion_5() -> Outcome {
    let mut objects: Vec<DoubleCategory> = corpus_objects().iter().map(|d| d.as_ref().clone()).collect();
    let budget = Budget::default();
    let hom = |a: DoubleCategory, b: DoubleCategory| internal_hom(&Arc::new(a), &Arc::new(b), &budget);
    objects.push(hom(corpus::two_v(), corpus::iso_h()).map_err(err)?.renamed("[TwoV,IsoH]"));
    objects.push(hom(corpus::two_h(), corpus::iso_h()).map_err(err)?.renamed("[TwoH,IsoH]"));
    let (mut scanned, mut promoted, mut inverses, mut non_unique, mut missing) = (0, 0, 0, 0, 0);
    for d in &objects {
        let r = check_lemma_220(d);
        ensure(r.passes(), || format!("{}: {:?}", d.name(), r.discrepancies))?;
        scanned += r.checked;
        for a in 0..d.num_hmors() {
            for w in equivalence_witnesses(d, a) {
                let adj = promote_to_adjoint(d, &w).map_err(err)?;
                let ok = triangle_identities(d, &adj.data) == (true, true) && verify_equivalence(d, &adj.data);
                ensure(ok, || format!("{}: promotion of {} fails the triangle identities", d.name(), d.hmor(a).name))?;
                promoted += 1;
            }
        }
        let weak = weakly_invertible_squares(d);
        for alpha in (0..d.num_squares()).filter(|&s| weak[s]) {
            let p = d.square(alpha);
            let adjoint = |m: usize| -> Result<Vec<_>, String> {
                equivalence_witnesses(d, m).iter().map(|w| promote_to_adjoint(d, w).map_err(err)).collect()
            };
            let (tops, bottoms) = (adjoint(p.top)?, adjoint(p.bottom)?);
            for top in &tops {
                for bottom in &bottoms {
                    match unique_weak_inverse(d, alpha, top, bottom) {
                        Ok(_) => inverses += 1,
                        Err(Error::NonUnique(_)) => non_unique += 1,
                        Err(Error::NotInvertible(_)) => missing += 1,
                        Err(e) => return Err(err(e)),
                    }
                }
            }
        }
    }
    ensure(non_unique == 0 && missing == 0, || format!("{non_unique} NonUnique, {missing} without inverse"))?;
    Ok(format!(
        "{} objects, {scanned} globular squares scanned, {promoted} promotions, {inverses} unique weak inverses, 0 NonUnique",
        objects.len()
    ))
}

fn vertical_1_2(d: &DoubleCategory) -> bool {
    is_disjoint_union_1_2(&underlying_vertical_category(d))
}

struct Case {
    f: DoubleFunctor,
    g: HorizontallyPseudoDoubleFunctor,
    eta: PseudoEquivalence,
    eps: PseudoEquivalence,
}

/// Double biequivalences between pool objects whose targets pass the 𝟙/𝟚
/// condition, at most three per pair, skipping identities after the first.
fn whitehead_cases() -> Result<Vec<DoubleFunctor>, String> {
    let pool = corpus_objects();
    let mut out = Vec::new();
    for a in &pool {
        for b in pool.iter().filter(|b| vertical_1_2(b)) {
            let fs = enumerate_double_functors(a, b, &Budget::new(ORACLE_BUDGET)).map_err(err)?;
            let dbs: Vec<DoubleFunctor> = fs.into_iter().filter(|f| check_double_biequivalence(f).passes()).take(3).collect();
            out.extend(dbs);
        }
    }
    Ok(out)
}

fn perturbations(cases: &[Case]) -> Vec<(String, Case)> {
    let mut out = Vec::new();
    for c in cases {
        let (a, b) = (c.f.source(), c.f.target());
        // a functor that is not a double biequivalence, with the same data
        if let Ok(fs) = enumerate_double_functors(a, b, &Budget::new(ORACLE_BUDGET)) {
            if let Some(f2) = fs.into_iter().find(|f| !check_double_biequivalence(f).passes()) {
                out.push((format!("{}: F replaced by {}", c.f.name(), f2.name()), Case { f: f2, ..clone_case(c) }));
            }
        }
        // another η component, with the same endpoints when one exists
        let parallel = |m: usize| {
            let arrow = a.hmor(m);
            a.hom_h(arrow.src, arrow.tgt).iter().copied().find(|&n| n != m)
        };
        let same_source = |m: usize| (0..a.num_hmors()).find(|&n| n != m && a.hmor(n).src == a.hmor(m).src);
        let comps = &c.eta.transformation.components;
        let choice = comps
            .iter()
            .enumerate()
            .find_map(|(x, &m)| parallel(m).map(|n| (x, n)))
            .or_else(|| comps.iter().enumerate().find_map(|(x, &m)| same_source(m).map(|n| (x, n))));
        if let Some((x, m2)) = choice {
            let mut eta = c.eta.clone();
            eta.transformation.components[x] = m2;
            out.push((format!("{}: eta component at {}", c.f.name(), a.object(x)), Case { eta, ..clone_case(c) }));
        }
        // another ε naturality square, on the same boundary when one exists
        let parallel = |s: usize| {
            let q = b.square(s);
            b.squares_with(q.top, q.bottom, q.left, q.right).iter().copied().find(|&t| t != s)
        };
        let same_left = |s: usize| (0..b.num_squares()).find(|&t| t != s && b.square(t).left == b.square(s).left);
        let nats = &c.eps.transformation.naturality;
        let choice = nats
            .iter()
            .enumerate()
            .find_map(|(u, &s)| parallel(s).map(|t| (u, t)))
            .or_else(|| nats.iter().enumerate().find_map(|(u, &s)| same_left(s).map(|t| (u, t))));
        if let Some((u, s2)) = choice {
            let mut eps = c.eps.clone();
            eps.transformation.naturality[u] = s2;
            out.push((format!("{}: eps naturality at {}", c.f.name(), b.vmor(u).name), Case { eps, ..clone_case(c) }));
        }
        // G sends one horizontal morphism elsewhere
        for k in 0..b.num_hmors() {
            let m = c.g.hmor(k);
            let arrow = a.hmor(m);
            let Some(&m2) = a.hom_h(arrow.src, arrow.tgt).iter().find(|&&n| n != m) else { continue };
            let mut maps = c.g.maps().clone();
            maps[Sort::HMor.index()][k] = m2;
            if let Ok(g) = HorizontallyPseudoDoubleFunctor::new("G'", b.clone(), a.clone(), maps, c.g.compositors().clone()) {
                out.push((format!("{}: G on {}", c.f.name(), b.hmor(k).name), Case { g, ..clone_case(c) }));
                break;
            }
        }
    }
    out
}

fn clone_case(c: &Case) -> Case {
    Case { f: c.f.clone(), g: c.g.clone(), eta: c.eta.clone(), eps: c.eps.clone() }
}

fn criterion_6() -> Outcome {
    let fs = whitehead_cases()?;
    ensure(fs.len() >= WHITEHEAD_CASES, || format!("only {} constructed biequivalences", fs.len()))?;
    let mut cases = Vec::new();
    for f in fs {
        let w = whitehead_inverse(&f).map_err(|e| format!("{}: {e}", f.name()))?;
        ensure(verify_whitehead_data(&f, &w.g, &w.eta, &w.eps), || format!("{}: data fails verification", f.name()))?;
        cases.push(Case { f, g: w.g, eta: w.eta, eps: w.eps });
    }
    for c in &cases {
        ensure(check_double_biequivalence(&c.f).passes(), || format!("{}: verified but not db", c.f.name()))?;
    }
    let perturbed = perturbations(&cases);
    ensure(perturbed.len() >= PERTURBED_CASES, || format!("only {} perturbed quadruples", perturbed.len()))?;
    for kind in [": F replaced by", ": eta component", ": eps naturality", ": G on"] {
        ensure(perturbed.iter().any(|(w, _)| w.contains(kind)), || format!("no perturbation of kind `{kind}`"))?;
    }
    let mut rejected = 0;
    for (what, c) in &perturbed {
        let verified = verify_whitehead_data(&c.f, &c.g, &c.eta, &c.eps);
        ensure(!verified || check_double_biequivalence(&c.f).passes(), || format!("{what}: verified but not db"))?;
        rejected += !verified as usize;
    }

    let pool: Vec<Arc<DoubleCategory>> = corpus_objects().into_iter().filter(|d| is_cofibrant(d).cofibrant).collect();
    let budget = Budget::new(LIFTING_BUDGET);
    let (mut pairs, mut positive, mut negative) = (0, 0, 0);
    'outer: for a in &pool {
        for b in &pool {
            let fs = enumerate_double_functors(a, b, &Budget::new(ORACLE_BUDGET)).map_err(err)?;
            let db = fs.iter().find(|f| check_double_biequivalence(f).passes());
            let not_db = fs.iter().find(|f| !check_double_biequivalence(f).passes());
            for f in db.into_iter().chain(not_db) {
                let found = strict_homotopy_inverse(f, &budget).map_err(err)?.is_some();
                let expected = check_double_biequivalence(f).passes();
                ensure(found == expected, || format!("{}: strict inverse {found}, db {expected}", f.name()))?;
                if expected {
                    positive += 1;
                } else {
                    negative += 1;
                }
            }
            if db.is_some() || not_db.is_some() {
                pairs += 1;
            }
            if pairs >= 3 * STRICT_INVERSE_PAIRS && positive > 0 && negative > 0 {
                break 'outer;
            }
        }
    }
    ensure(pairs >= STRICT_INVERSE_PAIRS && positive > 0 && negative > 0, || {
        format!("strict-inverse search covered {pairs} pairs, {positive} db, {negative} not db")
    })?;
    Ok(format!(
        "{} inverses verified; {} perturbed quadruples ({rejected} rejected); strict inverses agree on {pairs} cofibrant pairs ({positive} db, {negative} not)",
        cases.len(),
        perturbed.len()
    ))
}

/// D on functors: the same assignment between the locally discrete
/// 2-categories.
fn discrete_functor(f: &CatFunctor) -> Result<TwoFunctor, String> {
    let a = Arc::new(discrete_2cat(&f.source()).into_double());
    let b = Arc::new(discrete_2cat(&f.target()).into_double());
    let g = DoubleFunctor::new(f.as_double().name(), a, b, f.as_double().maps().clone()).map_err(err)?;
    TwoFunctor::new(g).map_err(err)
}

fn criterion_7() -> Outcome {
    let fs = sample::cat_functor_population(SEED ^ 7, RANDOM_CAT_FUNCTORS).map_err(err)?;
    let mut discrepancies = Vec::new();
    let (mut eq, mut iso) = (0, 0);
    for f in &fs {
        let df = discrete_functor(f)?;
        let e = is_category_equivalence(f);
        if e != check_biequivalence(&df).passes() {
            discrepancies.push(format!("{}: equivalence", f.as_double().name()));
        }
        let i = is_isofibration(f);
        if i != check_lack_fibration(&df).passes() {
            discrepancies.push(format!("{}: isofibration", f.as_double().name()));
        }
        eq += e as usize;
        iso += i as usize;
    }
    ensure(discrepancies.is_empty(), || discrepancies.join("; "))?;
    Ok(format!("{} functors, 0 discrepancies, {eq} equivalences, {iso} isofibrations", fs.len()))
}

fn bijective(map: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    map.len() == n && map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
}

fn surjective(map: &[usize], n: usize) -> bool {
    (0..n).all(|y| map.contains(&y))
}

fn criterion_8() -> Outcome {
    let budget = Budget::default();
    let strict_inputs = corpus::double_categories();
    for d in &strict_inputs {
        let r = strictify(&WeakDoubleCategory::from_strict(d.clone())).map_err(err)?;
        ensure(are_isomorphic(&r.strict, d, &budget).map_err(err)?, || format!("S({}) is not isomorphic to it", d.name()))?;
    }
    let mut weak_inputs = corpus::weak_double_categories();
    weak_inputs.extend(strict_inputs.iter().cloned().map(WeakDoubleCategory::from_strict));
    let mut cofibrant = Vec::new();
    for w in &weak_inputs {
        let r = strictify(w).map_err(err)?;
        let (u, s) = (r.unit.functor(), &r.strict);
        let shape = bijective(u.map(Sort::Object), s.num_objects())
            && bijective(u.map(Sort::VMor), s.num_vmors())
            && surjective(u.map(Sort::HMor), s.num_hmors())
            && surjective(u.map(Sort::Square), s.num_squares());
        ensure(shape, || format!("unit of {} has the wrong shape", w.name()))?;
        if weak_cofibrancy(w).map_err(err)?.verdict == WeakCofibrancy::CofibrantSufficient {
            let rep = check_double_biequivalence_weak(&r.unit);
            ensure(rep.passes(), || format!("unit of {} fails {:?}", w.name(), rep.failed()))?;
            cofibrant.push(w.name().to_string());
        }
    }
    ensure(cofibrant.iter().any(|n| n == "WU"), || "WU is not cofibrant-shaped".into())?;
    let sw = strictify(&corpus::w()).map_err(err)?;
    ensure(are_isomorphic(&sw.strict, &corpus::one(), &budget).map_err(err)?, || "S(W) is not One".into())?;
    Ok(format!(
        "{} strict inputs fixed up to iso; {} units well-shaped; units are biequivalences on {} cofibrant inputs; S(W) = One",
        strict_inputs.len(),
        weak_inputs.len(),
        cofibrant.len()
    ))
}

fn two_categories() -> Vec<TwoCategory> {
    let two = |d: DoubleCategory| TwoCategory::from_double(d).expect("2-category");
    vec![
        two(corpus::one()),
        two(corpus::two_h()),
        corpus::cinv(),
        two(corpus::iso().into_double()),
        two(corpus::three().into_double()),
    ]
}

fn criterion_9() -> Outcome {
    let objects = corpus::double_categories();
    let two_v = Arc::new(corpus::two_v());
    let mut checks = 0;
    let mut peak = 0;
    for a in &objects {
        let a = Arc::new(a.clone());
        let budget = Budget::new(ORACLE_BUDGET);
        let lhs = vertical_morphism_2cat(&a).map_err(err)?;
        let rhs = underlying_horizontal(&internal_hom(&two_v, &a, &budget).map_err(err)?);
        let iso = are_isomorphic(lhs.as_double(), rhs.as_double(), &budget).map_err(err)?;
        ensure(iso, || format!("V({}) differs from H[TwoV, {}]", a.name(), a.name()))?;
        peak = peak.max(budget.used());
        checks += 1;
        for b in two_categories() {
            for which in ["H", "V"] {
                let budget = Budget::new(ORACLE_BUDGET);
                let ok = if which == "H" {
                    hom_adjunction_horizontal(&b, &a, &budget)
                } else {
                    hom_adjunction_vertical(&b, &a, &budget)
                };
                let ok = ok.map_err(|e| format!("{which}[H{}, {}]: {e}", b.name(), a.name()))?;
                ensure(ok, || format!("{which}[H{}, {}]_ps differs", b.name(), a.name()))?;
                peak = peak.max(budget.used());
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} isomorphisms found, peak {peak} of {ORACLE_BUDGET} nodes"))
}

fn documents() -> Vec<Document> {
    let mut docs: Vec<Document> = corpus::double_categories().into_iter().map(Document::DoubleCategory).collect();
    docs.push(Document::DoubleCategory(corpus::one_one()));
    docs.push(Document::TwoCategory(corpus::cinv()));
    docs.push(Document::Category(corpus::iso()));
    docs.push(Document::Category(corpus::three()));
    docs.extend(corpus::weak_double_categories().into_iter().map(Document::Weak));
    docs.extend(corpus::functors().into_iter().map(|f| Document::Functor(FunctorDoc::Strict(f))));
    for w in corpus::weak_double_categories() {
        let r = strictify(&w).expect("corpus strictifies");
        docs.push(Document::Functor(FunctorDoc::Weak(r.unit)));
    }
    let w = whitehead_inverse(&corpus::j2()).expect("J2 is a biequivalence");
    docs.push(Document::Functor(FunctorDoc::Pseudo(w.g)));
    docs
}

fn criterion_10(started: Instant) -> Outcome {
    let docs = documents();
    for d in &docs {
        let text = emit(d);
        let again = emit(&parse(&text).map_err(|e| format!("{}: {e}", d.name()))?);
        ensure(again == text, || format!("{} is not byte-stable", d.name()))?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < SUITE_LIMIT, || format!("acceptance run took {elapsed:?}"))?;
    Ok(format!("{} documents byte-stable; acceptance run {:.1}s", docs.len(), elapsed.as_secs_f64()))
}

#[test]
fn acceptance_criteria() {
    let started = Instant::now();
    let results = [
        run(1, "characterization via H and V", criterion_1),
        run(2, "generating cofibrations", criterion_2),
        run(3, "H creates biequivalences and fibrations", criterion_3),
        run(4, "fibrancy", criterion_4),
        run(5, "weak invertibility", criterion_5),
        run(6, "Whitehead", criterion_6),
        run(7, "Cat embedding", criterion_7),
        run(8, "strictification", criterion_8),
        run(9, "hom isomorphisms", criterion_9),
        run(10, "DBLX round trip and runtime", || criterion_10(started)),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "acceptance criteria failed: {failed:?}");
}
