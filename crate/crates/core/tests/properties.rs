//! Invariants over seeded random functors.

use proptest::prelude::*;

use dblcat::construct::{horizontal_embed_functor, underlying_horizontal_functor};
use dblcat::dbl::iso::are_isomorphic;
use dblcat::dbl::ops::transpose;
use dblcat::dblx::{emit, emit_functor, parse, Document, FunctorDoc};
use dblcat::fincat::check_biequivalence;
use dblcat::model::{check_double_biequivalence, check_double_fibration, check_double_trivial_fibration};
use dblcat::{sample, Budget, DoubleFunctor};

fn one_functor(seed: u64) -> DoubleFunctor {
    sample::functor_population(seed, 1).unwrap().remove(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functors_round_trip_through_dblx(seed in any::<u64>()) {
        let f = one_functor(seed);
        let text = emit_functor(&f);
        let doc = parse(&text).unwrap();
        prop_assert_eq!(emit(&doc), text);
        let Document::Functor(FunctorDoc::Strict(g)) = doc else { panic!("strict functor expected") };
        prop_assert!(g.same_maps(&f));
    }

    #[test]
    fn trivial_fibrations_are_biequivalent_fibrations(seed in any::<u64>()) {
        let f = one_functor(seed);
        let dt = check_double_trivial_fibration(&f).passes();
        let db = check_double_biequivalence(&f).passes();
        let df = check_double_fibration(&f).passes();
        prop_assert_eq!(dt, db && df);
    }

    #[test]
    fn identities_are_neutral_and_trivial(seed in any::<u64>()) {
        let f = one_functor(seed);
        let id_a = DoubleFunctor::identity(f.source().clone());
        let id_b = DoubleFunctor::identity(f.target().clone());
        prop_assert!(id_a.then(&f).unwrap().same_maps(&f));
        prop_assert!(f.then(&id_b).unwrap().same_maps(&f));
        prop_assert!(check_double_trivial_fibration(&id_a).passes());
    }

    #[test]
    fn horizontal_embedding_is_undone_by_underlying_horizontal(seed in any::<u64>()) {
        let f = sample::two_functor_population(seed, 1).unwrap().remove(0);
        let h = underlying_horizontal_functor(&horizontal_embed_functor(&f)).unwrap();
        let (a, b) = (f.source(), h.source());
        prop_assert_eq!(a.num_objects(), b.num_objects());
        prop_assert_eq!(a.num_morphisms(), b.num_morphisms());
        prop_assert!((0..a.num_objects()).all(|x| f.obj(x) == h.obj(x)));
        prop_assert!((0..a.num_morphisms()).all(|m| f.mor(m) == h.mor(m)));
        prop_assert_eq!(check_biequivalence(&f).passes(), check_biequivalence(&h).passes());
    }
}

#[test]
fn transpose_is_an_involution_on_the_pool() {
    for d in sample::double_pool() {
        let tt = transpose(&transpose(&d).unwrap()).unwrap();
        assert!(are_isomorphic(&tt, &d, &Budget::default()).unwrap(), "{}", d.name());
    }
}
