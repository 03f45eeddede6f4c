use std::ops::ControlFlow;
use std::sync::Arc;

use crate::corpus;
use crate::dbl::enumerate::{first_functor, for_each_functor, Constraints};
use crate::dbl::functor::same_presentation;
use crate::dbl::{DoubleFunctor, Sort};
use crate::error::{Error, Result};
use crate::search::Budget;

fn same_object(a: &Arc<crate::dbl::DoubleCategory>, b: &Arc<crate::dbl::DoubleCategory>) -> bool {
    Arc::ptr_eq(a, b) || same_presentation(a, b)
}

/// A diagonal filler `l` with `l∘i = top` and `p∘l = bottom`, if one exists.
pub fn solve_lifting(
    i: &DoubleFunctor,
    p: &DoubleFunctor,
    top: &DoubleFunctor,
    bottom: &DoubleFunctor,
    budget: &Budget,
) -> Result<Option<DoubleFunctor>> {
    let shapes = same_object(i.source(), top.source())
        && same_object(i.target(), bottom.source())
        && same_object(top.target(), p.source())
        && same_object(p.target(), bottom.target());
    if !shapes {
        return Err(Error::precondition("lifting", "the square of functors does not fit together"));
    }
    if !top.then(p)?.same_maps(&i.then(bottom)?) {
        return Err(Error::precondition("lifting", "p∘top differs from bottom∘i"));
    }
    let b = i.target();
    let mut fixed: [Vec<Option<usize>>; 4] = std::array::from_fn(|k| vec![None; b.count(Sort::ALL[k])]);
    for sort in Sort::ALL {
        for (x, &y) in i.map(sort).iter().enumerate() {
            let want = top.map(sort)[x];
            match fixed[sort.index()][y] {
                Some(prev) if prev != want => return Ok(None),
                _ => fixed[sort.index()][y] = Some(want),
            }
        }
    }
    let over = |sort: Sort, c: usize, x: usize| p.map(sort)[x] == bottom.map(sort)[c];
    let cons = Constraints { fixed: Some(fixed), allowed: Some(&over), injective: false };
    Ok(first_functor(b, p.source(), &cons, budget)?.map(|l| l.renamed("lift")))
}

/// Whether every lifting problem of `j` against `p` has a solution.
pub fn has_rlp(j: &DoubleFunctor, p: &DoubleFunctor, budget: &Budget) -> Result<bool> {
    let mut ok = true;
    let mut failure = None;
    let _ = for_each_functor(j.target(), p.target(), &Constraints::default(), budget, |bottom| {
        let target_of = |sort: Sort, x: usize, t: usize| p.map(sort)[t] == bottom.map(sort)[j.map(sort)[x]];
        let cons = Constraints { fixed: None, allowed: Some(&target_of), injective: false };
        let flow = for_each_functor(j.source(), p.source(), &cons, budget, |top| {
            match solve_lifting(j, p, &top, &bottom, budget) {
                Ok(Some(_)) => ControlFlow::Continue(()),
                Ok(None) => {
                    ok = false;
                    ControlFlow::Break(())
                }
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        match flow {
            Ok(ControlFlow::Continue(())) => ControlFlow::Continue(()),
            Ok(ControlFlow::Break(())) => ControlFlow::Break(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// I₁..I₅.
pub fn generating_cofibrations() -> Vec<DoubleFunctor> {
    vec![corpus::i1(), corpus::i2(), corpus::i3(), corpus::i4(), corpus::i5()]
}

/// The first generating cofibration `p` fails to lift against, if any.
pub fn failing_generating_cofibration(p: &DoubleFunctor, budget: &Budget) -> Result<Option<String>> {
    for i in generating_cofibrations() {
        if !has_rlp(&i, p, budget)? {
            return Ok(Some(i.name().to_string()));
        }
    }
    Ok(None)
}

pub fn has_rlp_generating_cofibrations(p: &DoubleFunctor, budget: &Budget) -> Result<bool> {
    Ok(failing_generating_cofibration(p, budget)?.is_none())
}

/// Lifting against J₂: ℍ𝟚 -> ℍC_inv.
pub fn has_rlp_j2(p: &DoubleFunctor, budget: &Budget) -> Result<bool> {
    has_rlp(&corpus::j2(), p, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::dbl::enumerate::enumerate_double_functors;

    fn id(d: crate::dbl::DoubleCategory) -> DoubleFunctor {
        DoubleFunctor::identity(Arc::new(d))
    }

    #[test]
    fn missing_vertical_preimage_blocks_lift() {
        let p = eps_v2();
        let top = DoubleFunctor::new("top", i3().source().clone(), p.source().clone(), Default::default()).unwrap();
        let bottom = id(two_v());
        assert!(solve_lifting(&i3(), &p, &top, &bottom, &Budget::default()).unwrap().is_none());
    }

    #[test]
    fn boundary_lifts_against_collapse() {
        let p = i5();
        let top = DoubleFunctor::new("top", i4().source().clone(), p.source().clone(), d_sq_into_sq2()).unwrap();
        let l = solve_lifting(&i4(), &p, &top, &id(sq()), &Budget::default()).unwrap().unwrap();
        assert!(l.validate().is_valid());
        assert!(l.then(&p).unwrap().same_maps(&id(sq())));
    }

    fn d_sq_into_sq2() -> [Vec<usize>; 4] {
        let (a, b) = (d_sq(), sq2());
        std::array::from_fn(|k| {
            let sort = Sort::ALL[k];
            (0..a.count(sort)).map(|x| b.find(sort, a.cell_name(sort, x)).unwrap()).collect()
        })
    }

    #[test]
    fn commutativity_is_checked() {
        let p = i5();
        let top = DoubleFunctor::new("top", i4().source().clone(), p.source().clone(), d_sq_into_sq2()).unwrap();
        let b = Budget::default();
        let t = Arc::new(one());
        let bottom = enumerate_double_functors(&Arc::new(sq()), &t, &b).unwrap().remove(0);
        assert!(solve_lifting(&i4(), &p, &top, &bottom, &b).is_err());
    }

    #[test]
    fn generating_set() {
        let b = Budget::default();
        assert!(has_rlp_generating_cofibrations(&id(sq()), &b).unwrap());
        assert_eq!(failing_generating_cofibration(&i5(), &b).unwrap().as_deref(), Some("I5"));
        assert_eq!(failing_generating_cofibration(&eps_v2(), &b).unwrap().as_deref(), Some("I3"));
        let t = Arc::new(one());
        let to_one = enumerate_double_functors(&Arc::new(sq()), &t, &b).unwrap().remove(0);
        let verdict = has_rlp_generating_cofibrations(&to_one, &b).unwrap();
        assert_eq!(verdict, super::super::check_double_trivial_fibration(&to_one).passes());
    }

    #[test]
    fn free_isomorphism_lifts_along_j2() {
        let b = Budget::default();
        assert!(has_rlp_j2(&id(cinv_h()), &b).unwrap());
        let t = Arc::new(one());
        let to_one = enumerate_double_functors(&Arc::new(two_h()), &t, &b).unwrap().remove(0);
        assert!(has_rlp_j2(&to_one, &b).unwrap());
        assert!(!has_rlp_j2(&j2(), &b).unwrap());
    }
}
