use std::collections::HashMap;
use std::sync::Arc;

use crate::addset::{product_in, AdditiveSet};
use crate::fgab::{direct_sum, FgaGroup};
use crate::freiman::{enumerate_homs, FreimanMap, MapError};

use super::{
    require_normalized_hom, same_order, Carrier, CatError, Category, Cone, ConeResult, Construction,
};

fn category_of(sets: &[&AdditiveSet]) -> Category {
    if sets.iter().all(|s| s.is_normalized()) {
        Category::Normalized
    } else {
        Category::Plain
    }
}

fn projection_legs(
    apex: &AdditiveSet,
    pairs: &[(usize, usize)],
    a: &AdditiveSet,
    b: &AdditiveSet,
    k: usize,
) -> Result<Vec<FreimanMap>, CatError> {
    let p1 = FreimanMap::new(apex.clone(), a.clone(), pairs.iter().map(|p| p.0).collect(), k)?;
    let p2 = FreimanMap::new(apex.clone(), b.clone(), pairs.iter().map(|p| p.1).collect(), k)?;
    Ok(vec![p1, p2])
}

/// `A × B` with its coordinate projections. Lives in `FR_k⁰` when both
/// factors are normalized, otherwise in `FR_k`.
pub fn product(a: &AdditiveSet, b: &AdditiveSet, k: usize) -> Result<ConeResult, CatError> {
    if k == 0 {
        return Err(MapError::ZeroOrder.into());
    }
    let sum = direct_sum(a.ambient(), b.ambient());
    let (apex, pairs) = product_in(&sum, a, b);
    let legs = projection_legs(&apex, &pairs, a, b, k)?;
    Ok(ConeResult {
        construction: Construction::Product,
        category: category_of(&[a, b]),
        order: k,
        apex,
        legs,
        bases: vec![a.clone(), b.clone()],
        diagram: Vec::new(),
        quotient: None,
        carrier: Carrier::Pairs { sum: Box::new(sum), pairs },
    })
}

/// Fibre product `{(a, b) | f(a) = g(b)}` of two maps into a common set.
pub fn pullback0(f: &FreimanMap, g: &FreimanMap) -> Result<ConeResult, CatError> {
    require_normalized_hom(f, "f")?;
    require_normalized_hom(g, "g")?;
    let k = same_order(f, g)?;
    if f.target() != g.target() {
        return Err(CatError::MalformedDiagram("f and g have different targets".into()));
    }
    let (a, b) = (f.source(), g.source());
    let sum = direct_sum(a.ambient(), b.ambient());
    let (full, all_pairs) = product_in(&sum, a, b);
    let keep: Vec<usize> = all_pairs
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| f.table()[i] == g.table()[j])
        .map(|(n, _)| n)
        .collect();
    // (0, 0) always survives, so the subset is non-empty
    let apex = full.subset(&keep)?;
    let pairs: Vec<(usize, usize)> = keep.iter().map(|&n| all_pairs[n]).collect();
    let legs = projection_legs(&apex, &pairs, a, b, k)?;
    Ok(ConeResult {
        construction: Construction::Pullback,
        category: Category::Normalized,
        order: k,
        apex,
        legs,
        bases: vec![a.clone(), b.clone()],
        diagram: vec![f.clone(), g.clone()],
        quotient: None,
        carrier: Carrier::Pairs { sum: Box::new(sum), pairs },
    })
}

/// `{a ∈ A | f(a) = g(a)}` with its inclusion into A.
pub fn equalizer0(f: &FreimanMap, g: &FreimanMap) -> Result<ConeResult, CatError> {
    require_normalized_hom(f, "f")?;
    require_normalized_hom(g, "g")?;
    let k = same_order(f, g)?;
    if f.source() != g.source() || f.target() != g.target() {
        return Err(CatError::MalformedDiagram("f and g are not parallel".into()));
    }
    let a = f.source();
    let keep: Vec<usize> = (0..a.len()).filter(|&i| f.table()[i] == g.table()[i]).collect();
    let apex = a.subset(&keep)?;
    let inclusion = FreimanMap::new(apex.clone(), a.clone(), keep.clone(), k)?;
    Ok(ConeResult {
        construction: Construction::Equalizer,
        category: Category::Normalized,
        order: k,
        apex,
        legs: vec![inclusion],
        bases: vec![a.clone()],
        diagram: vec![f.clone(), g.clone()],
        quotient: None,
        carrier: Carrier::Subset(keep),
    })
}

/// The zero object `{0}` of the given ambient. Terminal in both categories.
pub fn terminal(ambient: &Arc<FgaGroup>, k: usize) -> Result<ConeResult, CatError> {
    if k == 0 {
        return Err(MapError::ZeroOrder.into());
    }
    Ok(ConeResult {
        construction: Construction::Terminal,
        category: Category::Plain,
        order: k,
        apex: AdditiveSet::zero_set(ambient),
        legs: Vec::new(),
        bases: Vec::new(),
        diagram: Vec::new(),
        quotient: None,
        carrier: Carrier::Point,
    })
}

/// All k-homs out of a singleton. In `FR_k` a one-point set only has
/// weakly initial behaviour: there is one such map per element of `b`.
pub fn weak_initial_maps(point: &AdditiveSet, b: &AdditiveSet, k: usize, budget: u64) -> Result<Vec<FreimanMap>, CatError> {
    if point.len() != 1 {
        return Err(CatError::MalformedDiagram(format!("{point} is not a singleton")));
    }
    Ok(enumerate_homs(point, b, k, false, budget)?)
}

pub(super) fn pair_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    let Carrier::Pairs { pairs, .. } = &cone.carrier else {
        unreachable!("product-like constructions carry pairs")
    };
    let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let (d1, d2) = (&competitor.legs[0], &competitor.legs[1]);
    let table = (0..competitor.apex.len())
        .map(|x| {
            let p = (d1.table()[x], d2.table()[x]);
            lookup.get(&p).copied().ok_or_else(|| {
                CatError::MediatorUndefined(format!(
                    "({}, {}) is not in the apex",
                    d1.image_of_index(x),
                    d2.image_of_index(x)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FreimanMap::new(competitor.apex.clone(), cone.apex.clone(), table, cone.order)?)
}

pub(super) fn corestriction_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    let Carrier::Subset(keep) = &cone.carrier else {
        unreachable!("equalizers carry their subset")
    };
    let leg = &competitor.legs[0];
    let table = leg
        .table()
        .iter()
        .map(|t| {
            keep.binary_search(t).map_err(|_| {
                CatError::MediatorUndefined(format!("{} is not in the equalizer", leg.target().get(*t)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FreimanMap::new(competitor.apex.clone(), cone.apex.clone(), table, cone.order)?)
}

pub(super) fn terminal_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    Ok(FreimanMap::constant(&competitor.apex, &cone.apex, 0, cone.order)?)
}
