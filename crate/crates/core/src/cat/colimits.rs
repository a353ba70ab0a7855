use std::collections::HashMap;
use std::sync::Arc;

use crate::addset::{product_in, AdditiveSet};
use crate::fgab::{direct_sum, FgaGroup, GroupElement, QuotientResult};
use crate::freiman::{FreimanMap, MapError};

use super::{
    require_normalized, require_normalized_hom, same_order, Carrier, CatError, Category, Cone, ConeResult,
    Construction, QuotientObject, UnionFind,
};

/// `A × B` with injections `a ↦ (a, 0)` and `b ↦ (0, b)`.
pub fn coproduct0(a: &AdditiveSet, b: &AdditiveSet, k: usize) -> Result<ConeResult, CatError> {
    if k == 0 {
        return Err(MapError::ZeroOrder.into());
    }
    require_normalized(a, "A")?;
    require_normalized(b, "B")?;
    let sum = direct_sum(a.ambient(), b.ambient());
    let (apex, pairs) = product_in(&sum, a, b);
    let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let (za, zb) = (a.zero_index().unwrap(), b.zero_index().unwrap());
    let in1 = FreimanMap::new(a.clone(), apex.clone(), (0..a.len()).map(|i| lookup[&(i, zb)]).collect(), k)?;
    let in2 = FreimanMap::new(b.clone(), apex.clone(), (0..b.len()).map(|j| lookup[&(za, j)]).collect(), k)?;
    Ok(ConeResult {
        construction: Construction::Coproduct,
        category: Category::Normalized,
        order: k,
        apex,
        legs: vec![in1, in2],
        bases: vec![a.clone(), b.clone()],
        diagram: Vec::new(),
        quotient: None,
        carrier: Carrier::Pairs { sum: Box::new(sum), pairs },
    })
}

/// Partition `underlying` by `uf`, push every class into `q`, and collect
/// the images as a set in the quotient group.
fn build_quotient_object(
    underlying: AdditiveSet,
    uf: UnionFind,
    q: QuotientResult,
) -> Result<(AdditiveSet, QuotientObject), CatError> {
    let classes = uf.classes();
    let mut class_images = Vec::with_capacity(classes.len());
    for class in &classes {
        let image = q.projection.apply(underlying.get(class[0]))?;
        for &m in &class[1..] {
            // single steps differ by a generator of the divided subgroup
            assert_eq!(
                q.projection.apply(underlying.get(m))?,
                image,
                "class members must share one image in the quotient group"
            );
        }
        class_images.push(image);
    }
    let mut collapses = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if class_images[i] == class_images[j] {
                collapses.push((i, j));
            }
        }
    }
    let apex = AdditiveSet::new(Arc::clone(&q.quotient), class_images.iter().cloned())?;
    Ok((
        apex,
        QuotientObject {
            underlying,
            classes,
            ambient_quotient: q,
            class_images,
            collapses,
        },
    ))
}

/// For every element of the underlying set, the apex index of its image.
fn underlying_to_apex(q: &QuotientObject, apex: &AdditiveSet) -> Vec<usize> {
    let mut out = vec![0; q.underlying.len()];
    for (class, image) in q.classes.iter().zip(&q.class_images) {
        let at = apex.index_of(image).expect("class images make up the apex");
        for &m in class {
            out[m] = at;
        }
    }
    out
}

/// `(A × B)/∼` inside `(Z ⊕ W)/N`, N generated by `(f(c), −g(c))`.
pub fn pushout0(f: &FreimanMap, g: &FreimanMap) -> Result<ConeResult, CatError> {
    require_normalized_hom(f, "f")?;
    require_normalized_hom(g, "g")?;
    let k = same_order(f, g)?;
    if f.source() != g.source() {
        return Err(CatError::MalformedDiagram("f and g have different sources".into()));
    }
    let (c, a, b) = (f.source(), f.target(), g.target());
    let sum = direct_sum(a.ambient(), b.ambient());
    let gens = (0..c.len())
        .map(|t| sum.pair(f.image_of_index(t), &g.image_of_index(t).neg()))
        .collect::<Result<Vec<_>, _>>()?;
    let q = crate::fgab::quotient(&sum.group, &gens)?;

    let (underlying, pairs) = product_in(&sum, a, b);
    let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let mut uf = UnionFind::new(underlying.len());
    for (n, &(i, j)) in pairs.iter().enumerate() {
        for t in 0..c.len() {
            // (a, b) − (a′, b′) = (f(c), −g(c)); the reverse step is the
            // same relation seen from (a′, b′)
            let a2 = a.get(i).sub(f.image_of_index(t))?;
            let b2 = b.get(j).add(g.image_of_index(t))?;
            if let (Some(i2), Some(j2)) = (a.index_of(&a2), b.index_of(&b2)) {
                uf.union(n, lookup[&(i2, j2)]);
            }
        }
    }
    let (apex, qo) = build_quotient_object(underlying, uf, q)?;
    let to_apex = underlying_to_apex(&qo, &apex);
    let (za, zb) = (a.zero_index().unwrap(), b.zero_index().unwrap());
    let i1 = FreimanMap::new(a.clone(), apex.clone(), (0..a.len()).map(|i| to_apex[lookup[&(i, zb)]]).collect(), k)?;
    let i2 = FreimanMap::new(b.clone(), apex.clone(), (0..b.len()).map(|j| to_apex[lookup[&(za, j)]]).collect(), k)?;
    Ok(ConeResult {
        construction: Construction::Pushout,
        category: Category::Normalized,
        order: k,
        apex,
        legs: vec![i1, i2],
        bases: vec![a.clone(), b.clone()],
        diagram: vec![f.clone(), g.clone()],
        quotient: Some(qo),
        carrier: Carrier::PairClasses { pairs },
    })
}

/// `B/∼` inside `W/⟨f(a) − g(a)⟩`, ∼ generated by `f(a) ∼ g(a)`.
pub fn coequalizer0(f: &FreimanMap, g: &FreimanMap) -> Result<ConeResult, CatError> {
    require_normalized_hom(f, "f")?;
    require_normalized_hom(g, "g")?;
    let k = same_order(f, g)?;
    if f.source() != g.source() || f.target() != g.target() {
        return Err(CatError::MalformedDiagram("f and g are not parallel".into()));
    }
    let (a, b) = (f.source(), f.target());
    let gens = (0..a.len())
        .map(|i| f.image_of_index(i).sub(g.image_of_index(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let q = crate::fgab::quotient(b.ambient(), &gens)?;
    let mut uf = UnionFind::new(b.len());
    for i in 0..a.len() {
        uf.union(f.table()[i], g.table()[i]);
    }
    let (apex, qo) = build_quotient_object(b.clone(), uf, q)?;
    let to_apex = underlying_to_apex(&qo, &apex);
    let leg = FreimanMap::new(b.clone(), apex.clone(), to_apex, k)?;
    Ok(ConeResult {
        construction: Construction::Coequalizer,
        category: Category::Normalized,
        order: k,
        apex,
        legs: vec![leg],
        bases: vec![b.clone()],
        diagram: vec![f.clone(), g.clone()],
        quotient: Some(qo),
        carrier: Carrier::Classes,
    })
}

/// The zero object `{0}` viewed as initial in `FR_k⁰`.
pub fn initial0(ambient: &Arc<FgaGroup>, k: usize) -> Result<ConeResult, CatError> {
    if k == 0 {
        return Err(MapError::ZeroOrder.into());
    }
    Ok(ConeResult {
        construction: Construction::Initial,
        category: Category::Normalized,
        order: k,
        apex: AdditiveSet::zero_set(ambient),
        legs: Vec::new(),
        bases: Vec::new(),
        diagram: Vec::new(),
        quotient: None,
        carrier: Carrier::Point,
    })
}

/// Resolve per-underlying-element values into one value per apex element.
fn collapse_values(
    apex_len: usize,
    owners: &[usize],
    values: Vec<GroupElement>,
) -> Result<Vec<GroupElement>, CatError> {
    let mut chosen: Vec<Option<GroupElement>> = vec![None; apex_len];
    for (owner, v) in owners.iter().zip(values) {
        match &chosen[*owner] {
            None => chosen[*owner] = Some(v),
            Some(prev) if *prev == v => {}
            Some(prev) => {
                return Err(CatError::MediatorUndefined(format!(
                    "one apex element would need two images, {prev} and {v}"
                )))
            }
        }
    }
    Ok(chosen.into_iter().map(|v| v.expect("every apex element has a preimage")).collect())
}

fn into_target(values: &[GroupElement], target: &AdditiveSet) -> Result<Vec<usize>, CatError> {
    values
        .iter()
        .map(|v| {
            target
                .index_of(v)
                .ok_or_else(|| CatError::MediatorUndefined(format!("{v} is not in the competitor's apex {target}")))
        })
        .collect()
}

pub(super) fn sum_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    let (d1, d2) = (&competitor.legs[0], &competitor.legs[1]);
    let (pairs, owners) = match &cone.carrier {
        Carrier::Pairs { pairs, .. } => (pairs, (0..pairs.len()).collect::<Vec<_>>()),
        Carrier::PairClasses { pairs } => {
            let q = cone.quotient.as_ref().expect("pushouts carry their quotient");
            (pairs, underlying_to_apex(q, &cone.apex))
        }
        _ => unreachable!("sum mediators need pairs"),
    };
    let values = pairs
        .iter()
        .map(|&(i, j)| d1.image_of_index(i).add(d2.image_of_index(j)))
        .collect::<Result<Vec<_>, _>>()?;
    let per_apex = collapse_values(cone.apex.len(), &owners, values)?;
    let table = into_target(&per_apex, &competitor.apex)?;
    Ok(FreimanMap::new(cone.apex.clone(), competitor.apex.clone(), table, cone.order)?)
}

pub(super) fn class_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    let q = cone.quotient.as_ref().expect("coequalizers carry their quotient");
    let owners = underlying_to_apex(q, &cone.apex);
    let leg = &competitor.legs[0];
    let values = (0..q.underlying.len()).map(|b| leg.image_of_index(b).clone()).collect();
    let per_apex = collapse_values(cone.apex.len(), &owners, values)?;
    let table = into_target(&per_apex, &competitor.apex)?;
    Ok(FreimanMap::new(cone.apex.clone(), competitor.apex.clone(), table, cone.order)?)
}

pub(super) fn initial_mediator(cone: &ConeResult, competitor: &Cone) -> Result<FreimanMap, CatError> {
    let zero = competitor
        .apex
        .zero_index()
        .ok_or_else(|| CatError::NotNormalized(competitor.apex.to_string()))?;
    Ok(FreimanMap::constant(&cone.apex, &competitor.apex, zero, cone.order)?)
}
