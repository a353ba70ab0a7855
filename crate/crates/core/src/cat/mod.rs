//! Limits and colimits in the Freiman categories.
//!
//! `FR_k` has additive sets as objects and Freiman k-homomorphisms as
//! morphisms; `FR_k⁰` restricts to normalized sets (containing 0) and
//! 0-preserving maps. Every builder here returns a [`ConeResult`]: the
//! object, its legs, and enough bookkeeping to produce the mediating map
//! for any competing (co)cone. [`verify_universal_property`] then checks
//! existence and uniqueness of that mediator by exhaustive search over the
//! relevant homset.

mod colimits;
mod limits;
mod structure;

use std::fmt;

use thiserror::Error;

use crate::addset::{AdditiveSet, SetError};
use crate::fgab::{DirectSum, GroupElement, GroupError, QuotientResult};
use crate::freiman::{compose, enumerate_homs, hom_violation, FreimanMap, HomViolation, MapError};

pub use colimits::{coequalizer0, coproduct0, initial0, pushout0};
pub use limits::{equalizer0, product, pullback0, terminal, weak_initial_maps};
pub use structure::{structure_report, union_report, BoundCheck, Relation, StructureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("{0} is not normalized (does not contain 0)")]
    NotNormalized(String),
    #[error("{0} does not preserve 0")]
    NotZeroPreserving(String),
    #[error("{name} is not a Freiman {order}-homomorphism: {violation}")]
    NotAHom {
        name: String,
        order: usize,
        violation: Box<HomViolation>,
    },
    #[error("diagram is malformed: {0}")]
    MalformedDiagram(String),
    #[error("competitor is not a valid (co)cone: {0}")]
    InvalidCompetitor(String),
    #[error("mediating map is undefined: {0}")]
    MediatorUndefined(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    Product,
    Coproduct,
    Pullback,
    Pushout,
    Equalizer,
    Coequalizer,
    Terminal,
    Initial,
}

impl Construction {
    pub fn is_limit(self) -> bool {
        matches!(
            self,
            Construction::Product | Construction::Pullback | Construction::Equalizer | Construction::Terminal
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Construction::Product => "product",
            Construction::Coproduct => "coproduct",
            Construction::Pullback => "pullback",
            Construction::Pushout => "pushout",
            Construction::Equalizer => "equalizer",
            Construction::Coequalizer => "coequalizer",
            Construction::Terminal => "terminal",
            Construction::Initial => "initial",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which Freiman category a construction lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    /// `FR_k`: all additive sets, all k-homs.
    Plain,
    /// `FR_k⁰`: normalized sets, 0-preserving k-homs.
    Normalized,
}

/// An apex with legs. Legs leave the apex for limits and enter it for colimits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub apex: AdditiveSet,
    pub legs: Vec<FreimanMap>,
}

/// Partition of a finite set together with the image of every class in a
/// quotient group. Produced by pushouts and coequalizers.
#[derive(Debug, Clone)]
pub struct QuotientObject {
    /// The set being partitioned (A×B for pushouts, B for coequalizers).
    pub underlying: AdditiveSet,
    /// Classes as sorted index lists into `underlying`, ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub ambient_quotient: QuotientResult,
    pub class_images: Vec<GroupElement>,
    /// Pairs of distinct classes whose images coincide in the quotient group.
    pub collapses: Vec<(usize, usize)>,
}

impl QuotientObject {
    pub fn class_of(&self, underlying_index: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&underlying_index).is_ok())
            .expect("classes partition the underlying set")
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Carrier {
    /// apex element i is the pair (a, b) = pairs[i] embedded in the direct sum
    Pairs { sum: Box<DirectSum>, pairs: Vec<(usize, usize)> },
    /// apex element i is base element subset[i]
    Subset(Vec<usize>),
    /// pushout: pairs of the underlying A×B, classes in the quotient object
    PairClasses { pairs: Vec<(usize, usize)> },
    /// coequalizer: underlying is B itself
    Classes,
    Point,
}

/// A constructed (co)limit.
#[derive(Debug, Clone)]
pub struct ConeResult {
    pub construction: Construction,
    pub category: Category,
    pub order: usize,
    pub apex: AdditiveSet,
    pub legs: Vec<FreimanMap>,
    /// The objects the legs connect the apex to (A, B, ... in leg order).
    pub bases: Vec<AdditiveSet>,
    /// The maps being (co)limited: `[f, g]` for pullbacks, pushouts,
    /// equalizers and coequalizers, empty otherwise.
    pub diagram: Vec<FreimanMap>,
    pub quotient: Option<QuotientObject>,
    pub(crate) carrier: Carrier,
}

impl ConeResult {
    pub fn cone(&self) -> Cone {
        Cone {
            apex: self.apex.clone(),
            legs: self.legs.clone(),
        }
    }

    /// Whether the homsets involved are restricted to 0-preserving maps.
    pub fn preserve_zero(&self) -> bool {
        self.category == Category::Normalized
    }

    /// The `(a, b)` coordinates of an apex element of a product,
    /// coproduct or pullback.
    pub fn components(&self, apex_index: usize) -> Option<(GroupElement, GroupElement)> {
        match &self.carrier {
            Carrier::Pairs { sum, .. } => sum.split(self.apex.get(apex_index)).ok(),
            _ => None,
        }
    }

    /// Check that `competitor` is a (co)cone over the same diagram.
    pub fn validate_competitor(&self, competitor: &Cone) -> Result<(), CatError> {
        let bad = |msg: String| Err(CatError::InvalidCompetitor(msg));
        if competitor.legs.len() != self.bases.len() {
            return bad(format!("expected {} legs, got {}", self.bases.len(), competitor.legs.len()));
        }
        if self.preserve_zero() && !competitor.apex.is_normalized() {
            return bad("apex is not normalized".into());
        }
        for (i, (leg, base)) in competitor.legs.iter().zip(&self.bases).enumerate() {
            let (from, to) = if self.construction.is_limit() {
                (&competitor.apex, base)
            } else {
                (base, &competitor.apex)
            };
            if leg.source() != from || leg.target() != to {
                return bad(format!("leg {i} has the wrong source or target"));
            }
            if leg.order() != self.order {
                return bad(format!("leg {i} has order {}, expected {}", leg.order(), self.order));
            }
            if let Some(v) = hom_violation(leg) {
                return bad(format!("leg {i} is not a k-hom: {v}"));
            }
            if self.preserve_zero() && !leg.preserves_zero() {
                return bad(format!("leg {i} does not preserve 0"));
            }
        }
        let commutes = match self.construction {
            Construction::Pullback => {
                compose(&self.diagram[0], &competitor.legs[0])? == compose(&self.diagram[1], &competitor.legs[1])?
            }
            Construction::Equalizer => {
                compose(&self.diagram[0], &competitor.legs[0])? == compose(&self.diagram[1], &competitor.legs[0])?
            }
            Construction::Pushout => {
                compose(&competitor.legs[0], &self.diagram[0])? == compose(&competitor.legs[1], &self.diagram[1])?
            }
            Construction::Coequalizer => {
                compose(&competitor.legs[0], &self.diagram[0])? == compose(&competitor.legs[0], &self.diagram[1])?
            }
            _ => true,
        };
        if !commutes {
            return bad("the competitor's square does not commute".into());
        }
        Ok(())
    }

    /// Whether `h` (competitor apex → apex for limits, apex → competitor
    /// apex for colimits) makes every triangle commute.
    pub fn commutes(&self, h: &FreimanMap, competitor: &Cone) -> Result<bool, CatError> {
        for (leg, theirs) in self.legs.iter().zip(&competitor.legs) {
            let via = if self.construction.is_limit() {
                compose(leg, h)?
            } else {
                compose(h, leg)?
            };
            if via != *theirs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The mediating map prescribed by the construction.
    pub fn mediator(&self, competitor: &Cone) -> Result<FreimanMap, CatError> {
        self.validate_competitor(competitor)?;
        match self.construction {
            Construction::Product | Construction::Pullback => limits::pair_mediator(self, competitor),
            Construction::Equalizer => limits::corestriction_mediator(self, competitor),
            Construction::Terminal => limits::terminal_mediator(self, competitor),
            Construction::Coproduct | Construction::Pushout => colimits::sum_mediator(self, competitor),
            Construction::Coequalizer => colimits::class_mediator(self, competitor),
            Construction::Initial => colimits::initial_mediator(self, competitor),
        }
    }

    /// Every valid competitor with the given apex, by enumerating legs.
    pub fn enumerate_competitors(&self, apex: &AdditiveSet, budget: u64) -> Result<Vec<Cone>, CatError> {
        if self.preserve_zero() && !apex.is_normalized() {
            return Ok(Vec::new());
        }
        let mut per_leg = Vec::new();
        for base in &self.bases {
            let homs = if self.construction.is_limit() {
                enumerate_homs(apex, base, self.order, self.preserve_zero(), budget)?
            } else {
                enumerate_homs(base, apex, self.order, self.preserve_zero(), budget)?
            };
            per_leg.push(homs);
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_leg.len()];
        if per_leg.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        loop {
            let cone = Cone {
                apex: apex.clone(),
                legs: idx.iter().zip(&per_leg).map(|(&i, homs)| homs[i].clone()).collect(),
            };
            if self.validate_competitor(&cone).is_ok() {
                out.push(cone);
            }
            // odometer over the leg choices
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < per_leg[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// Outcome of an exhaustive universal-property check against one competitor.
#[derive(Debug, Clone)]
pub struct UniversalVerdict {
    /// Maps in the homset that make every triangle commute.
    pub commuting: Vec<FreimanMap>,
    /// The construction's own mediator, when it is defined.
    pub mediator: Option<FreimanMap>,
    /// Why the mediator could not be built, when it could not.
    pub mediator_error: Option<String>,
    /// Exactly one commuting map exists and it is the construction's mediator.
    pub holds: bool,
}

/// Existence and uniqueness of the mediating morphism for `competitor`,
/// decided by enumerating the whole homset between the two apexes.
pub fn verify_universal_property(
    result: &ConeResult,
    competitor: &Cone,
    budget: u64,
) -> Result<UniversalVerdict, CatError> {
    result.validate_competitor(competitor)?;
    let candidates = if result.construction.is_limit() {
        enumerate_homs(&competitor.apex, &result.apex, result.order, result.preserve_zero(), budget)?
    } else {
        enumerate_homs(&result.apex, &competitor.apex, result.order, result.preserve_zero(), budget)?
    };
    let mut commuting = Vec::new();
    for h in candidates {
        if result.commutes(&h, competitor)? {
            commuting.push(h);
        }
    }
    let (mediator, mediator_error) = match result.mediator(competitor) {
        Ok(m) => (Some(m), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let holds = commuting.len() == 1 && mediator.as_ref() == Some(&commuting[0]);
    Ok(UniversalVerdict {
        commuting,
        mediator,
        mediator_error,
        holds,
    })
}

pub(crate) fn require_normalized(set: &AdditiveSet, name: &str) -> Result<(), CatError> {
    if set.is_normalized() {
        Ok(())
    } else {
        Err(CatError::NotNormalized(format!("{name} = {set}")))
    }
}

/// Checks a diagram map is a 0-preserving k-hom between normalized sets.
pub(crate) fn require_normalized_hom(f: &FreimanMap, name: &str) -> Result<(), CatError> {
    require_normalized(f.source(), &format!("source of {name}"))?;
    require_normalized(f.target(), &format!("target of {name}"))?;
    if let Some(v) = hom_violation(f) {
        return Err(CatError::NotAHom {
            name: name.to_string(),
            order: f.order(),
            violation: Box::new(v),
        });
    }
    if !f.preserves_zero() {
        return Err(CatError::NotZeroPreserving(name.to_string()));
    }
    Ok(())
}

pub(crate) fn same_order(f: &FreimanMap, g: &FreimanMap) -> Result<usize, CatError> {
    if f.order() == g.order() {
        Ok(f.order())
    } else {
        Err(CatError::Map(MapError::OrderMismatch(f.order(), g.order())))
    }
}

/// Minimal union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so classes are labelled by their least member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes as sorted index lists, ordered by least member.
    pub fn classes(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}
