//! Seeded random populations of small functors, for property-test drivers.
//!
//! Functors are drawn uniformly from the full enumeration of functors
//! between a random pair of objects from a fixed pool. The pools hold
//! corpus objects and small objects derived from them, each with at most
//! [`MAX_CELLS`] cells.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::dbl::enumerate::enumerate_double_functors;
use crate::dbl::ops::{coproduct, transpose};
use crate::dbl::{DoubleCategory, DoubleFunctor};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCategory, TwoCategory, TwoFunctor};
use crate::search::Budget;

pub const MAX_CELLS: usize = 25;

/// Node budget for enumerating the functors between one pair.
const PAIR_BUDGET: u64 = 200_000;

const ATTEMPTS: usize = 1_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sum(a: &DoubleCategory, b: &DoubleCategory, name: &str) -> DoubleCategory {
    coproduct(a, b).expect("coproduct of valid double categories").renamed(name)
}

pub fn double_pool() -> Vec<Arc<DoubleCategory>> {
    use corpus::*;
    let mut pool = double_categories();
    pool.push(one_one());
    pool.push(sum(&one(), &two_h(), "One_TwoH"));
    pool.push(sum(&one(), &two_v(), "One_TwoV"));
    pool.push(sum(&two_h(), &two_v(), "TwoH_TwoV"));
    pool.push(sum(&two_h(), &two_h(), "TwoH_TwoH"));
    pool.push(transpose(&cinv_h()).expect("transpose").renamed("CinvV"));
    pool.push(transpose(&iso_h()).expect("transpose").renamed("IsoV"));
    pool.push(three().into_double().renamed("ThreeH"));
    pool.into_iter().filter(|d| d.cell_count() <= MAX_CELLS).map(Arc::new).collect()
}

pub fn two_pool() -> Vec<TwoCategory> {
    use corpus::*;
    let two = |d: DoubleCategory| TwoCategory::from_double(d).expect("2-category shape");
    let mut pool = vec![
        two(one()),
        two(two_h()),
        two(three().into_double()),
        two(iso().into_double()),
        cinv(),
        two(one_one()),
        two(sum(&one(), &two_h(), "One_TwoH")),
        two(sum(&two_h(), &two_h(), "TwoH_TwoH")),
        two(sum(&one(), &iso().into_double(), "One_Iso")),
        two(sum(&one(), cinv().as_double(), "One_Cinv")),
    ];
    pool.retain(|c| c.as_double().cell_count() <= MAX_CELLS);
    pool
}

/// Finite categories, as double categories with identity vertical structure
/// and identity squares.
pub fn cat_pool() -> Vec<FinCategory> {
    use corpus::*;
    let cat = |d: DoubleCategory| FinCategory::from_double(d).expect("category shape");
    let iso_d = iso().into_double();
    let mut pool = vec![
        cat(one()),
        cat(two_h()),
        three(),
        iso(),
        cat(one_one()),
        cat(sum(&one(), &two_h(), "One_TwoH")),
        cat(sum(&two_h(), &two_h(), "TwoH_TwoH")),
        cat(sum(&one(), &iso_d, "One_Iso")),
        cat(sum(&two_h(), &iso_d, "TwoH_Iso")),
    ];
    pool.retain(|c| c.as_double().cell_count() <= MAX_CELLS);
    pool
}

/// A functor drawn from the enumeration of all functors between a random
/// pair of pool objects; pairs whose enumeration is empty or too large are
/// redrawn. A third of the draws use the same object on both sides.
pub fn random_functor<R: Rng>(rng: &mut R, pool: &[Arc<DoubleCategory>], name: &str) -> Result<DoubleFunctor> {
    for _ in 0..ATTEMPTS {
        let a = pool.choose(rng).expect("nonempty pool");
        let b = if rng.gen_ratio(1, 3) { a } else { pool.choose(rng).expect("nonempty pool") };
        let Ok(all) = enumerate_double_functors(a, b, &Budget::new(PAIR_BUDGET)) else { continue };
        if let Some(f) = all.choose(rng) {
            return Ok(f.clone().renamed(name));
        }
    }
    Err(Error::BudgetExceeded { limit: PAIR_BUDGET, context: "no pool pair admits a functor".into() })
}

/// A strict 2-functor between objects of [`two_pool`], drawn like
/// [`random_functor`].
pub fn random_two_functor<R: Rng>(rng: &mut R, pool: &[TwoCategory], name: &str) -> Result<TwoFunctor> {
    let doubles: Vec<Arc<DoubleCategory>> = pool.iter().map(|c| Arc::new(c.as_double().clone())).collect();
    TwoFunctor::new(random_functor(rng, &doubles, name)?)
}

pub fn random_cat_functor<R: Rng>(rng: &mut R, pool: &[FinCategory], name: &str) -> Result<CatFunctor> {
    let doubles: Vec<Arc<DoubleCategory>> = pool.iter().map(|c| Arc::new(c.as_double().clone())).collect();
    CatFunctor::new(random_functor(rng, &doubles, name)?)
}

/// `n` functors from one seed.
pub fn functor_population(seed: u64, n: usize) -> Result<Vec<DoubleFunctor>> {
    let pool = double_pool();
    let mut rng = rng(seed);
    (0..n).map(|k| random_functor(&mut rng, &pool, &format!("R{k:03}"))).collect()
}

pub fn two_functor_population(seed: u64, n: usize) -> Result<Vec<TwoFunctor>> {
    let pool = two_pool();
    let mut rng = rng(seed);
    (0..n).map(|k| random_two_functor(&mut rng, &pool, &format!("T{k:03}"))).collect()
}

pub fn cat_functor_population(seed: u64, n: usize) -> Result<Vec<CatFunctor>> {
    let pool = cat_pool();
    let mut rng = rng(seed);
    (0..n).map(|k| random_cat_functor(&mut rng, &pool, &format!("C{k:03}"))).collect()
}
