//! Additive sets: finite non-empty subsets of a finitely generated abelian
//! group, with sumsets, signed sumsets, k-sum fibers and doubling constants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::fgab::{direct_sum, DirectSum, FgaGroup, GroupElement, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("additive sets must be non-empty")]
    Empty,
    #[error("ambient groups differ ({left} vs {right})")]
    AmbientMismatch { left: String, right: String },
    #[error("element {element} does not belong to ambient group {ambient}")]
    ForeignElement { element: String, ambient: String },
    #[error("sets are not disjoint (both contain {0})")]
    NotDisjoint(String),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("signed sumset needs at least one term")]
    NoTerms,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A finite non-empty subset of an ambient group, held sorted and
/// deduplicated. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdditiveSet {
    ambient: Arc<FgaGroup>,
    elements: Arc<[GroupElement]>,
}

impl AdditiveSet {
    pub fn new<I>(ambient: Arc<FgaGroup>, elements: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = GroupElement>,
    {
        let mut set = BTreeSet::new();
        for x in elements {
            if *x.group() != ambient {
                return Err(SetError::ForeignElement {
                    element: x.to_string(),
                    ambient: ambient.to_string(),
                });
            }
            set.insert(x);
        }
        if set.is_empty() {
            return Err(SetError::Empty);
        }
        Ok(AdditiveSet {
            ambient,
            elements: set.into_iter().collect(),
        })
    }

    /// A set of integers.
    pub fn integers(values: &[i64]) -> Result<Self, SetError> {
        let z = FgaGroup::integers();
        let elems = values.iter().map(|&v| z.element(vec![v])).collect::<Result<Vec<_>, _>>()?;
        Self::new(z, elems)
    }

    /// A set given by coordinate vectors in `ambient`.
    pub fn from_coords(ambient: &Arc<FgaGroup>, coords: &[&[i64]]) -> Result<Self, SetError> {
        let elems = coords
            .iter()
            .map(|c| ambient.element(c.to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(Arc::clone(ambient), elems)
    }

    /// A set in a cyclic group `Z/n` given by residues.
    pub fn residues(n: u64, values: &[i64]) -> Result<Self, SetError> {
        let g = FgaGroup::cyclic(n);
        let elems = values.iter().map(|&v| g.element(vec![v])).collect::<Result<Vec<_>, _>>()?;
        Self::new(g, elems)
    }

    /// `{0}` in `ambient`.
    pub fn zero_set(ambient: &Arc<FgaGroup>) -> Self {
        AdditiveSet {
            ambient: Arc::clone(ambient),
            elements: vec![ambient.zero()].into(),
        }
    }

    pub fn ambient(&self) -> &Arc<FgaGroup> {
        &self.ambient
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; additive sets are non-empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.index_of(x).is_some()
    }

    /// Index of the ambient zero, if present.
    pub fn zero_index(&self) -> Option<usize> {
        self.index_of(&self.ambient.zero())
    }

    pub fn is_normalized(&self) -> bool {
        self.zero_index().is_some()
    }

    /// The subset at the given indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, SetError> {
        Self::new(Arc::clone(&self.ambient), indices.iter().map(|&i| self.elements[i].clone()))
    }

    pub fn same_ambient(&self, other: &AdditiveSet) -> Result<(), SetError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(SetError::AmbientMismatch {
                left: self.ambient.to_string(),
                right: other.ambient.to_string(),
            })
        }
    }

    /// Lookup table from element to index.
    pub fn index_map(&self) -> HashMap<GroupElement, usize> {
        self.elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect()
    }
}

impl fmt::Debug for AdditiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AdditiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}} ⊂ {}", self.ambient)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A + B.
pub fn sumset(a: &AdditiveSet, b: &AdditiveSet) -> Result<AdditiveSet, SetError> {
    a.same_ambient(b)?;
    let mut out = BTreeSet::new();
    for x in a.elements() {
        for y in b.elements() {
            out.insert(x.add(y)?);
        }
    }
    AdditiveSet::new(Arc::clone(a.ambient()), out)
}

/// ε₁A₁ + ⋯ + ε_kA_k.
pub fn signed_sumset(terms: &[(Sign, &AdditiveSet)]) -> Result<AdditiveSet, SetError> {
    let (first, rest) = terms.split_first().ok_or(SetError::NoTerms)?;
    let signed = |(sign, set): &(Sign, &AdditiveSet)| -> AdditiveSet {
        match sign {
            Sign::Plus => (*set).clone(),
            Sign::Minus => AdditiveSet::new(Arc::clone(set.ambient()), set.elements().iter().map(GroupElement::neg))
                .expect("negation preserves non-emptiness"),
        }
    };
    let mut acc = signed(first);
    for term in rest {
        acc = sumset(&acc, &signed(term))?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingReport {
    pub sigma: BigRational,
    pub sumset_size: usize,
    pub set_size: usize,
}

/// σ[A] = |A+A| / |A|, exactly.
pub fn doubling(a: &AdditiveSet) -> DoublingReport {
    let sumset_size = sumset(a, a).expect("a set shares its own ambient").len();
    DoublingReport {
        sigma: BigRational::new(BigInt::from(sumset_size), BigInt::from(a.len())),
        sumset_size,
        set_size: a.len(),
    }
}

pub fn sigma(a: &AdditiveSet) -> BigRational {
    doubling(a).sigma
}

/// A k-multiset of set elements, as a non-decreasing list of indices.
pub type Multiset = Vec<usize>;

/// All k-multisets of a set, grouped by their sum. Fibers are ordered by
/// sum and the multisets inside each fiber lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumFibers {
    pub order: usize,
    pub fibers: BTreeMap<GroupElement, Vec<Multiset>>,
}

impl SumFibers {
    pub fn multiset_count(&self) -> usize {
        self.fibers.values().map(Vec::len).sum()
    }

    /// Fibers with more than one multiset; only these constrain maps.
    pub fn nontrivial(&self) -> impl Iterator<Item = (&GroupElement, &Vec<Multiset>)> {
        self.fibers.iter().filter(|(_, ms)| ms.len() > 1)
    }
}

pub fn ksum_fibers(a: &AdditiveSet, k: usize) -> Result<SumFibers, SetError> {
    if k == 0 {
        return Err(SetError::ZeroOrder);
    }
    let mut fibers: BTreeMap<GroupElement, Vec<Multiset>> = BTreeMap::new();
    let mut stack = Vec::with_capacity(k);
    collect_multisets(a, k, 0, &a.ambient().zero(), &mut stack, &mut fibers)?;
    Ok(SumFibers { order: k, fibers })
}

// multisets are generated in lexicographic order, so each fiber list ends up sorted
fn collect_multisets(
    a: &AdditiveSet,
    k: usize,
    start: usize,
    partial: &GroupElement,
    stack: &mut Vec<usize>,
    out: &mut BTreeMap<GroupElement, Vec<Multiset>>,
) -> Result<(), GroupError> {
    if stack.len() == k {
        out.entry(partial.clone()).or_default().push(stack.clone());
        return Ok(());
    }
    for i in start..a.len() {
        let next = partial.add(a.get(i))?;
        stack.push(i);
        collect_multisets(a, k, i, &next, stack, out)?;
        stack.pop();
    }
    Ok(())
}

/// A × B inside A's ambient ⊕ B's ambient.
pub fn product_set(a: &AdditiveSet, b: &AdditiveSet) -> AdditiveSet {
    let sum = direct_sum(a.ambient(), b.ambient());
    product_in(&sum, a, b).0
}

/// A × B inside a given direct sum, with the pair behind each element.
pub(crate) fn product_in(sum: &DirectSum, a: &AdditiveSet, b: &AdditiveSet) -> (AdditiveSet, Vec<(usize, usize)>) {
    let mut tagged: Vec<(GroupElement, (usize, usize))> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.elements().iter().enumerate() {
        for (j, y) in b.elements().iter().enumerate() {
            tagged.push((sum.pair(x, y).expect("factors live in the summands"), (i, j)));
        }
    }
    tagged.sort();
    let pairs = tagged.iter().map(|t| t.1).collect();
    let set = AdditiveSet::new(Arc::clone(&sum.group), tagged.into_iter().map(|t| t.0)).expect("non-empty product");
    (set, pairs)
}

/// A ⊎ B for disjoint sets in one ambient.
pub fn union_disjoint(a: &AdditiveSet, b: &AdditiveSet) -> Result<AdditiveSet, SetError> {
    a.same_ambient(b)?;
    if let Some(x) = a.elements().iter().find(|x| b.contains(x)) {
        return Err(SetError::NotDisjoint(x.to_string()));
    }
    AdditiveSet::new(
        Arc::clone(a.ambient()),
        a.elements().iter().chain(b.elements()).cloned(),
    )
}
