use std::sync::Arc;

use super::{find_pseudo_equivalence, pseudo_hom, PseudoEquivalence};
use crate::construct::{horizontal_embed, underlying_horizontal, vertical_morphism_2cat};
use crate::dbl::enumerate::enumerate_double_functors;
use crate::dbl::iso::are_isomorphic;
use crate::dbl::{DoubleCategory, DoubleFunctor};
use crate::error::Result;
use crate::fincat::{pseudo_hom_2cat, TwoCategory};
use crate::search::Budget;

/// A strict double functor `g` with horizontal pseudo natural adjoint
/// equivalences `η: id ≃ GF` and `ε: FG ≃ id`.
#[derive(Clone, Debug)]
pub struct StrictHomotopyInverse {
    pub g: DoubleFunctor,
    pub eta: PseudoEquivalence,
    pub eps: PseudoEquivalence,
}

/// Exhaustive search over all double functors `B -> A`.
pub fn strict_homotopy_inverse(f: &DoubleFunctor, budget: &Budget) -> Result<Option<StrictHomotopyInverse>> {
    let (a, b) = (f.source(), f.target());
    let id_a = DoubleFunctor::identity(a.clone());
    let id_b = DoubleFunctor::identity(b.clone());
    for g in enumerate_double_functors(b, a, budget)? {
        let Some(eta) = find_pseudo_equivalence(&id_a, &f.then(&g)?, budget)? else { continue };
        let Some(eps) = find_pseudo_equivalence(&g.then(f)?, &id_b, budget)? else { continue };
        return Ok(Some(StrictHomotopyInverse { g, eta, eps }));
    }
    Ok(None)
}

/// 𝐇[ℍB, A]_ps ≅ Ps[B, 𝐇A].
pub fn hom_adjunction_horizontal(b: &TwoCategory, a: &Arc<DoubleCategory>, budget: &Budget) -> Result<bool> {
    let hom = pseudo_hom(&Arc::new(horizontal_embed(b)), a, budget)?;
    let lhs = underlying_horizontal(&hom);
    let rhs = pseudo_hom_2cat(b, &underlying_horizontal(a), budget)?;
    are_isomorphic(lhs.as_double(), rhs.as_double(), budget)
}

/// 𝒱[ℍB, A]_ps ≅ Ps[B, 𝒱A].
pub fn hom_adjunction_vertical(b: &TwoCategory, a: &Arc<DoubleCategory>, budget: &Budget) -> Result<bool> {
    let hom = pseudo_hom(&Arc::new(horizontal_embed(b)), a, budget)?;
    let lhs = vertical_morphism_2cat(&hom)?;
    let rhs = pseudo_hom_2cat(b, &vertical_morphism_2cat(a)?, budget)?;
    are_isomorphic(lhs.as_double(), rhs.as_double(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;
    use crate::model::check_double_biequivalence;

    #[test]
    fn strict_inverse_of_identity() {
        let f = DoubleFunctor::identity(Arc::new(sq()));
        let r = strict_homotopy_inverse(&f, &Budget::default()).unwrap().unwrap();
        assert!(r.g.same_maps(&f));
    }

    #[test]
    fn strict_inverse_matches_biequivalence_on_cofibrant_pairs() {
        let b = Budget::default();
        for f in [i2(), i3(), i4(), j2(), eps_v2()] {
            let found = strict_homotopy_inverse(&f, &b).unwrap().is_some();
            assert_eq!(found, check_double_biequivalence(&f).passes(), "{}", f.name());
        }
    }

    #[test]
    fn hom_adjunction_on_small_inputs() {
        let b = Budget::default();
        let two = TwoCategory::from_double(two_h()).unwrap();
        for a in [two_v(), sq(), cinv_h()] {
            let a = Arc::new(a);
            assert!(hom_adjunction_horizontal(&two, &a, &b).unwrap(), "{}", a.name());
            assert!(hom_adjunction_vertical(&two, &a, &b).unwrap(), "{}", a.name());
        }
    }
}
