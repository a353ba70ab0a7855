//! The universal ambient group of an additive set.
//!
//! For a set A and order k ≥ 2, take the free abelian group on the
//! elements of A and divide out every difference of two k-multisets with
//! equal sum in A. The image A′ of the basis is k-isomorphic to A, and
//! any k-hom out of A extends uniquely to a group hom out of the quotient.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::addset::{ksum_fibers, AdditiveSet, SetError};
use crate::fgab::{quotient, subgroup_generated_equals, FgaGroup, GroupElement, GroupError, GroupHom, QuotientResult};
use crate::freiman::{compose, FreimanMap, MapError};
use crate::intlat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniversalError {
    #[error("the universal group needs order k ≥ 2, got {0}")]
    OrderTooSmall(usize),
    #[error("map does not start at the set the universal group was built from")]
    SourceMismatch,
    #[error("relation {relation} is sent to {image} instead of 0")]
    RelationNotKilled { relation: String, image: String },
    #[error("basis images coincide, so the unit is not a bijection")]
    UnitNotBijective,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone)]
pub struct UniversalResult {
    pub original: AdditiveSet,
    pub order: usize,
    /// A′, the images of the free basis in the universal group.
    pub embedded: AdditiveSet,
    /// `a ↦` class of the basis vector of `a`.
    pub unit: FreimanMap,
    /// Rows span the relation lattice inside `Z^|A|`.
    pub relation_matrix: IntMatrix,
    /// The free cover `Z^|A|` projected onto the universal group.
    pub quotient: QuotientResult,
}

impl UniversalResult {
    pub fn group(&self) -> &Arc<FgaGroup> {
        &self.quotient.quotient
    }

    pub fn free_cover(&self) -> &Arc<FgaGroup> {
        self.quotient.projection.source()
    }

    /// Whether A′ generates the whole universal group.
    pub fn generated_by_embedded(&self) -> Result<bool, GroupError> {
        subgroup_generated_equals(self.group(), self.embedded.elements())
    }

    /// The inverse of the unit, A′ → A.
    pub fn counit(&self) -> FreimanMap {
        self.unit.inverse().expect("unit is bijective by construction")
    }
}

pub fn build_universal(a: &AdditiveSet, k: usize) -> Result<UniversalResult, UniversalError> {
    if k < 2 {
        return Err(UniversalError::OrderTooSmall(k));
    }
    let n = a.len();
    let indicator = |m: &[usize]| {
        let mut v = vec![BigInt::from(0); n];
        for &i in m {
            v[i] += 1;
        }
        v
    };
    let fibers = ksum_fibers(a, k)?;
    let mut rows = Vec::new();
    for (_, ms) in fibers.nontrivial() {
        let base = indicator(&ms[0]);
        for m in &ms[1..] {
            rows.push(indicator(m).into_iter().zip(&base).map(|(x, y)| x - y).collect::<Vec<_>>());
        }
    }
    let relation_matrix = IntMatrix::from_rows(n, &rows).expect("rows have one entry per element");

    let cover = FgaGroup::free(n);
    let gens = rows
        .iter()
        .map(|r| cover.element(r.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let q = quotient(&cover, &gens)?;
    let images = (0..n)
        .map(|i| q.projection.apply(&cover.generator(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let embedded = AdditiveSet::new(Arc::clone(&q.quotient), images.iter().cloned())?;
    if embedded.len() != n {
        return Err(UniversalError::UnitNotBijective);
    }
    let table = images.iter().map(|x| embedded.index_of(x).unwrap()).collect();
    let unit = FreimanMap::new(a.clone(), embedded.clone(), table, k)?;
    Ok(UniversalResult {
        original: a.clone(),
        order: k,
        embedded,
        unit,
        relation_matrix,
        quotient: q,
    })
}

/// `Σ c_a · g(a)` for a vector `c` in the free cover.
fn free_image(g: &FreimanMap, coeffs: &[BigInt]) -> Result<GroupElement, GroupError> {
    let mut acc = g.target().ambient().zero();
    for (i, c) in coeffs.iter().enumerate() {
        acc = acc.add(&g.image_of_index(i).scale(c))?;
    }
    Ok(acc)
}

/// The unique group hom from the universal group that agrees with `g`
/// on A′. Fails with the offending relation when `g` is not a k-hom.
pub fn extend_hom(u: &UniversalResult, g: &FreimanMap) -> Result<GroupHom, UniversalError> {
    if g.source() != &u.original {
        return Err(UniversalError::SourceMismatch);
    }
    for r in 0..u.relation_matrix.rows() {
        let row = u.relation_matrix.row(r);
        let image = free_image(g, row)?;
        if !image.is_zero() {
            let relation = format!("({})", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            return Err(UniversalError::RelationNotKilled {
                relation,
                image: image.to_string(),
            });
        }
    }
    let target = Arc::clone(g.target().ambient());
    let images = (0..u.group().ngens())
        .map(|t| free_image(g, u.quotient.generator_lift(t).coords()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut m = IntMatrix::zeros(target.ngens(), images.len());
    for (t, img) in images.iter().enumerate() {
        for (s, c) in img.coords().iter().enumerate() {
            m[(s, t)] = c.clone();
        }
    }
    Ok(GroupHom::new(Arc::clone(u.group()), target, m)?)
}

/// Precompose a k-hom out of A′ with the unit, giving a k-hom out of A.
pub fn adjunction_theta(u: &UniversalResult, f: &FreimanMap) -> Result<FreimanMap, UniversalError> {
    Ok(compose(f, &u.unit)?)
}

/// Transport a k-hom out of A to one out of A′ along the unit.
pub fn adjunction_eta(u: &UniversalResult, g: &FreimanMap) -> Result<FreimanMap, UniversalError> {
    if g.source() != &u.original {
        return Err(UniversalError::SourceMismatch);
    }
    Ok(compose(g, &u.counit())?)
}

/// The functor on a morphism `f: A → B`, as a map `A′ → B′`.
pub fn functor_map(ua: &UniversalResult, ub: &UniversalResult, f: &FreimanMap) -> Result<FreimanMap, UniversalError> {
    if f.source() != &ua.original || f.target() != &ub.original {
        return Err(UniversalError::SourceMismatch);
    }
    Ok(compose(&compose(&ub.unit, f)?, &ua.counit())?)
}

/// The functor on a morphism `f: A → B`, as a group hom between the
/// universal groups of A and B.
pub fn functor_group_hom(ua: &UniversalResult, ub: &UniversalResult, f: &FreimanMap) -> Result<GroupHom, UniversalError> {
    if f.target() != &ub.original {
        return Err(UniversalError::SourceMismatch);
    }
    extend_hom(ua, &compose(&ub.unit, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freiman::{enumerate_homs, is_freiman_iso, DEFAULT_BUDGET};

    #[test]
    fn two_points_have_no_relations() {
        let a = AdditiveSet::integers(&[0, 1]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        assert_eq!(u.relation_matrix.rows(), 0);
        assert_eq!(u.group().to_string(), "Z^2");
        assert!(is_freiman_iso(&u.unit));
    }

    #[test]
    fn progression_of_three() {
        let a = AdditiveSet::integers(&[0, 1, 2]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        assert_eq!(u.relation_matrix, IntMatrix::from_i64(&[&[-1, 2, -1]]));
        assert_eq!(u.group().to_string(), "Z^2");
        assert!(is_freiman_iso(&u.unit));
        assert!(u.generated_by_embedded().unwrap());
    }

    #[test]
    fn all_of_z3() {
        let a = AdditiveSet::residues(3, &[0, 1, 2]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        assert_eq!(u.relation_matrix.rows(), 3);
        assert_eq!(u.group().to_string(), "Z ⊕ Z/3");
        assert!(is_freiman_iso(&u.unit));
        assert!(u.generated_by_embedded().unwrap());
    }

    #[test]
    fn order_one_rejected() {
        let a = AdditiveSet::integers(&[0, 1]).unwrap();
        assert_eq!(build_universal(&a, 1).unwrap_err(), UniversalError::OrderTooSmall(1));
    }

    #[test]
    fn extension_of_inclusion() {
        let a = AdditiveSet::integers(&[0, 1, 2]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        let g = FreimanMap::identity(&a, 2).unwrap();
        let h = extend_hom(&u, &g).unwrap();
        for (x, y) in u.unit.pairs() {
            assert_eq!(h.apply(&y).unwrap(), x);
        }
    }

    #[test]
    fn extension_of_zero_map_is_zero() {
        let a = AdditiveSet::integers(&[0, 1, 5]).unwrap();
        let u = build_universal(&a, 3).unwrap();
        let zero = AdditiveSet::integers(&[0]).unwrap();
        let g = FreimanMap::constant(&a, &zero, 0, 3).unwrap();
        let h = extend_hom(&u, &g).unwrap();
        assert!(h.matrix().is_zero());
    }

    #[test]
    fn extension_of_unit_fixes_generators() {
        let a = AdditiveSet::residues(5, &[0, 1, 3]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        let h = extend_hom(&u, &u.unit).unwrap();
        for y in u.embedded.elements() {
            assert_eq!(&h.apply(y).unwrap(), y);
        }
    }

    #[test]
    fn non_hom_gives_relation_witness() {
        let a = AdditiveSet::integers(&[0, 1, 2]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        let b = AdditiveSet::integers(&[0, 1, 3]).unwrap();
        let g = FreimanMap::new(a, b, vec![0, 1, 2], 2).unwrap();
        assert!(matches!(extend_hom(&u, &g), Err(UniversalError::RelationNotKilled { .. })));
    }

    #[test]
    fn theta_and_eta_are_inverse() {
        let a = AdditiveSet::integers(&[0, 1, 3]).unwrap();
        let b = AdditiveSet::residues(4, &[0, 1, 2]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        for g in enumerate_homs(&a, &b, 2, false, DEFAULT_BUDGET).unwrap() {
            assert_eq!(adjunction_theta(&u, &adjunction_eta(&u, &g).unwrap()).unwrap(), g);
        }
        for f in enumerate_homs(&u.embedded, &b, 2, false, DEFAULT_BUDGET).unwrap() {
            assert_eq!(adjunction_eta(&u, &adjunction_theta(&u, &f).unwrap()).unwrap(), f);
        }
        let id = FreimanMap::identity(&u.embedded, 2).unwrap();
        assert_eq!(adjunction_theta(&u, &id).unwrap(), u.unit);
        assert_eq!(adjunction_eta(&u, &u.unit).unwrap(), id);
    }

    #[test]
    fn functor_preserves_identity() {
        let a = AdditiveSet::integers(&[0, 2, 3]).unwrap();
        let u = build_universal(&a, 2).unwrap();
        let id = FreimanMap::identity(&a, 2).unwrap();
        assert_eq!(functor_map(&u, &u, &id).unwrap(), FreimanMap::identity(&u.embedded, 2).unwrap());
        let h = functor_group_hom(&u, &u, &id).unwrap();
        for y in u.embedded.elements() {
            assert_eq!(&h.apply(y).unwrap(), y);
        }
    }
}
