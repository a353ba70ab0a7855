//! Freiman homomorphisms of order k between additive sets.
//!
//! A map φ: A → B is a Freiman k-homomorphism when equal k-fold sums in A
//! have equal k-fold image sums in B. The condition is symmetric in the
//! summands, so it is checked over k-multisets of A grouped by sum (see
//! [`ksum_fibers`]) rather than over ordered k-tuples.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::addset::{ksum_fibers, AdditiveSet, Multiset, SetError};
use crate::fgab::{GroupElement, GroupError, GroupHom};

/// Default cap on the number of candidate maps an exhaustive search may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("image {image} of {element} is not in the target set")]
    NotInTarget { element: String, image: String },
    #[error("{0} is not an element of the source set")]
    NotInSource(String),
    #[error("table has {found} entries but the source has {expected} elements")]
    TableLength { expected: usize, found: usize },
    #[error("table entry {0} is out of range for the target")]
    IndexOutOfRange(usize),
    #[error("source element {0} is assigned twice")]
    DuplicateAssignment(String),
    #[error("maps do not compose: target of the first is not the source of the second")]
    BoundaryMismatch,
    #[error("orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("search space of {candidates} maps exceeds the budget of {budget}")]
    BudgetExceeded { candidates: String, budget: u64 },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A total function between the underlying sets of two additive sets,
/// tagged with the order k at which it is meant to be a Freiman map.
///
/// `table[i]` is the index in `target` of the image of `source[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreimanMap {
    source: AdditiveSet,
    target: AdditiveSet,
    table: Vec<usize>,
    order: usize,
}

impl FreimanMap {
    pub fn new(source: AdditiveSet, target: AdditiveSet, table: Vec<usize>, order: usize) -> Result<Self, MapError> {
        if order == 0 {
            return Err(MapError::ZeroOrder);
        }
        if table.len() != source.len() {
            return Err(MapError::TableLength {
                expected: source.len(),
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(MapError::IndexOutOfRange(bad));
        }
        Ok(FreimanMap {
            source,
            target,
            table,
            order,
        })
    }

    pub fn from_fn<F>(source: AdditiveSet, target: AdditiveSet, order: usize, mut f: F) -> Result<Self, MapError>
    where
        F: FnMut(&GroupElement) -> Result<GroupElement, MapError>,
    {
        let mut table = Vec::with_capacity(source.len());
        for x in source.elements() {
            let y = f(x)?;
            let idx = target.index_of(&y).ok_or_else(|| MapError::NotInTarget {
                element: x.to_string(),
                image: y.to_string(),
            })?;
            table.push(idx);
        }
        Self::new(source, target, table, order)
    }

    /// Build from explicit `(x, φ(x))` pairs; every source element must appear exactly once.
    pub fn from_pairs(
        source: AdditiveSet,
        target: AdditiveSet,
        pairs: &[(GroupElement, GroupElement)],
        order: usize,
    ) -> Result<Self, MapError> {
        let mut table = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x).ok_or_else(|| MapError::NotInSource(x.to_string()))?;
            let j = target.index_of(y).ok_or_else(|| MapError::NotInTarget {
                element: x.to_string(),
                image: y.to_string(),
            })?;
            if table[i].replace(j).is_some() {
                return Err(MapError::DuplicateAssignment(x.to_string()));
            }
        }
        let found = table.iter().filter(|t| t.is_some()).count();
        let table: Option<Vec<usize>> = table.into_iter().collect();
        let table = table.ok_or(MapError::TableLength {
            expected: source.len(),
            found,
        })?;
        Self::new(source, target, table, order)
    }

    pub fn identity(set: &AdditiveSet, order: usize) -> Result<Self, MapError> {
        Self::new(set.clone(), set.clone(), (0..set.len()).collect(), order)
    }

    /// The map sending everything to `target[index]`.
    pub fn constant(source: &AdditiveSet, target: &AdditiveSet, index: usize, order: usize) -> Result<Self, MapError> {
        Self::new(source.clone(), target.clone(), vec![index; source.len()], order)
    }

    /// Restriction of a group homomorphism to `source`, landing in `target`.
    pub fn from_group_hom(hom: &GroupHom, source: &AdditiveSet, target: &AdditiveSet, order: usize) -> Result<Self, MapError> {
        Self::from_fn(source.clone(), target.clone(), order, |x| Ok(hom.apply(x)?))
    }

    /// Restriction of a group homomorphism to `source`, onto its image.
    pub fn restrict_onto(hom: &GroupHom, source: &AdditiveSet, order: usize) -> Result<Self, MapError> {
        let images = source
            .elements()
            .iter()
            .map(|x| hom.apply(x))
            .collect::<Result<Vec<_>, _>>()?;
        let target = AdditiveSet::new(hom.target().clone(), images)?;
        Self::from_group_hom(hom, source, &target, order)
    }

    pub fn source(&self) -> &AdditiveSet {
        &self.source
    }

    pub fn target(&self) -> &AdditiveSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn with_order(&self, order: usize) -> Result<Self, MapError> {
        Self::new(self.source.clone(), self.target.clone(), self.table.clone(), order)
    }

    /// Same table, viewed as a map into a different (super)set.
    pub fn with_target(&self, target: &AdditiveSet) -> Result<Self, MapError> {
        Self::from_fn(self.source.clone(), target.clone(), self.order, |x| Ok(self.apply(x).expect("x from source").clone()))
    }

    pub fn image_of_index(&self, i: usize) -> &GroupElement {
        self.target.get(self.table[i])
    }

    pub fn apply(&self, x: &GroupElement) -> Option<&GroupElement> {
        self.source.index_of(x).map(|i| self.image_of_index(i))
    }

    pub fn pairs(&self) -> Vec<(GroupElement, GroupElement)> {
        (0..self.source.len())
            .map(|i| (self.source.get(i).clone(), self.image_of_index(i).clone()))
            .collect()
    }

    pub fn image_set(&self) -> AdditiveSet {
        AdditiveSet::new(
            self.target.ambient().clone(),
            (0..self.source.len()).map(|i| self.image_of_index(i).clone()),
        )
        .expect("non-empty image")
    }

    pub fn is_bijective(&self) -> bool {
        is_mono(self) && is_epi(self)
    }

    /// The inverse table, if the map is a bijection.
    pub fn inverse(&self) -> Option<FreimanMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t] = i;
        }
        Some(FreimanMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table: inv,
            order: self.order,
        })
    }

    /// Whether 0 maps to 0. Vacuously true when the source has no zero.
    pub fn preserves_zero(&self) -> bool {
        match self.source.zero_index() {
            None => true,
            Some(z) => self.image_of_index(z).is_zero(),
        }
    }

    fn image_sum(&self, m: &[usize]) -> GroupElement {
        GroupElement::sum(m.iter().map(|&i| self.image_of_index(i))).expect("images share the target ambient")
    }
}

impl fmt::Debug for FreimanMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FreimanMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[k={}] ", self.order)?;
        for (i, (x, y)) in self.pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        Ok(())
    }
}

/// Two k-multisets of the source with equal sums whose images have different sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomViolation {
    pub left: Vec<GroupElement>,
    pub right: Vec<GroupElement>,
    pub common_sum: GroupElement,
    pub image_sums: (GroupElement, GroupElement),
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[GroupElement]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join("+");
        write!(
            f,
            "{} = {} = {} but the images sum to {} and {}",
            join(&self.left),
            join(&self.right),
            self.common_sum,
            self.image_sums.0,
            self.image_sums.1
        )
    }
}

/// First violation of the k-hom condition, if any.
///
/// Fibers are scanned in sum order; inside the first bad fiber the witness
/// pairs the lexicographically first multiset with the first later one
/// whose image sum differs.
pub fn hom_violation(f: &FreimanMap) -> Option<HomViolation> {
    let fibers = ksum_fibers(&f.source, f.order).expect("order is at least 1");
    for (sum, multisets) in fibers.nontrivial() {
        let base = f.image_sum(&multisets[0]);
        for m in &multisets[1..] {
            let other = f.image_sum(m);
            if other != base {
                let resolve = |m: &Multiset| m.iter().map(|&i| f.source.get(i).clone()).collect();
                return Some(HomViolation {
                    left: resolve(&multisets[0]),
                    right: resolve(m),
                    common_sum: sum.clone(),
                    image_sums: (base, other),
                });
            }
        }
    }
    None
}

pub fn is_freiman_hom(f: &FreimanMap) -> bool {
    hom_violation(f).is_none()
}

/// Bijective k-hom whose inverse is also a k-hom.
pub fn is_freiman_iso(f: &FreimanMap) -> bool {
    match f.inverse() {
        Some(inv) => is_freiman_hom(f) && is_freiman_hom(&inv),
        None => false,
    }
}

/// Monomorphisms are exactly the injective maps.
pub fn is_mono(f: &FreimanMap) -> bool {
    let mut seen = vec![false; f.target.len()];
    f.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
}

/// Epimorphisms are exactly the surjective maps.
pub fn is_epi(f: &FreimanMap) -> bool {
    let mut seen = vec![false; f.target.len()];
    for &t in &f.table {
        seen[t] = true;
    }
    seen.into_iter().all(|s| s)
}

/// `g ∘ f`.
pub fn compose(g: &FreimanMap, f: &FreimanMap) -> Result<FreimanMap, MapError> {
    if f.target != g.source {
        return Err(MapError::BoundaryMismatch);
    }
    if f.order != g.order {
        return Err(MapError::OrderMismatch(f.order, g.order));
    }
    let table = f.table.iter().map(|&t| g.table[t]).collect();
    FreimanMap::new(f.source.clone(), g.target.clone(), table, f.order)
}

/// Number of total maps A → B, checked against a budget.
pub fn check_budget(source_len: usize, target_len: usize, budget: u64) -> Result<(), MapError> {
    let count = u32::try_from(source_len)
        .ok()
        .and_then(|e| (target_len as u128).checked_pow(e));
    match count {
        Some(c) if c <= budget as u128 => Ok(()),
        _ => Err(MapError::BudgetExceeded {
            candidates: match count {
                Some(c) => c.to_string(),
                None => format!("{target_len}^{source_len}"),
            },
            budget,
        }),
    }
}

/// Sum classes of k-multisets of a set: multisets with equal sums share an id.
struct SumClasses {
    ids: HashMap<Multiset, usize>,
}

impl SumClasses {
    fn new(set: &AdditiveSet, k: usize) -> Self {
        let fibers = ksum_fibers(set, k).expect("order is at least 1");
        let ids = fibers
            .fibers
            .into_values()
            .enumerate()
            .flat_map(|(id, ms)| ms.into_iter().map(move |m| (m, id)))
            .collect();
        SumClasses { ids }
    }

    fn class_of(&self, scratch: &mut Multiset) -> usize {
        scratch.sort_unstable();
        self.ids[scratch.as_slice()]
    }
}

/// A pair of source k-multisets with equal sums, checked once both are
/// fully assigned.
struct Constraint {
    anchor: Multiset,
    other: Multiset,
}

/// All Freiman k-homomorphisms A → B (0-preserving ones only when
/// `preserve_zero`), in lexicographic order of their tables.
///
/// Source elements are assigned in sorted order; every pair of equal-sum
/// multisets is checked at the depth where both become fully assigned.
pub fn enumerate_homs(
    a: &AdditiveSet,
    b: &AdditiveSet,
    k: usize,
    preserve_zero: bool,
    budget: u64,
) -> Result<Vec<FreimanMap>, MapError> {
    if k == 0 {
        return Err(MapError::ZeroOrder);
    }
    check_budget(a.len(), b.len(), budget)?;

    let mut fixed: Vec<Option<usize>> = vec![None; a.len()];
    if preserve_zero {
        if let Some(z) = a.zero_index() {
            match b.zero_index() {
                Some(zb) => fixed[z] = Some(zb),
                None => return Ok(Vec::new()),
            }
        }
    }

    // constraints keyed by the depth at which they become decidable
    let mut by_depth: Vec<Vec<Constraint>> = (0..a.len()).map(|_| Vec::new()).collect();
    let fibers = ksum_fibers(a, k)?;
    for (_, multisets) in fibers.nontrivial() {
        let mut ms = multisets.clone();
        ms.sort_by_key(|m| *m.last().expect("k ≥ 1"));
        let anchor = ms[0].clone();
        for other in ms.into_iter().skip(1) {
            let depth = *other.last().expect("k ≥ 1");
            by_depth[depth].push(Constraint {
                anchor: anchor.clone(),
                other,
            });
        }
    }

    let search = Search {
        target_sums: SumClasses::new(b, k),
        by_depth,
        fixed,
        target_len: b.len(),
    };
    let mut tables = Vec::new();
    let mut table = Vec::with_capacity(a.len());
    search.run(&mut table, &mut tables);
    tables
        .into_iter()
        .map(|t| FreimanMap::new(a.clone(), b.clone(), t, k))
        .collect()
}

struct Search {
    target_sums: SumClasses,
    by_depth: Vec<Vec<Constraint>>,
    fixed: Vec<Option<usize>>,
    target_len: usize,
}

impl Search {
    fn run(&self, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let depth = table.len();
        if depth == self.fixed.len() {
            out.push(table.clone());
            return;
        }
        let choices = match self.fixed[depth] {
            Some(t) => t..t + 1,
            None => 0..self.target_len,
        };
        let mut scratch = Vec::new();
        for t in choices {
            table.push(t);
            if self.consistent(depth, table, &mut scratch) {
                self.run(table, out);
            }
            table.pop();
        }
    }

    fn consistent(&self, depth: usize, table: &[usize], scratch: &mut Multiset) -> bool {
        self.by_depth[depth].iter().all(|c| {
            scratch.clear();
            scratch.extend(c.anchor.iter().map(|&i| table[i]));
            let lhs = self.target_sums.class_of(scratch);
            scratch.clear();
            scratch.extend(c.other.iter().map(|&i| table[i]));
            lhs == self.target_sums.class_of(scratch)
        })
    }
}
