#![allow(dead_code)]

use std::ops::RangeInclusive;
use std::sync::Arc;

use addcat::addset::AdditiveSet;
use addcat::fgab::{FgaGroup, GroupElement};
use addcat::freiman::{enumerate_homs, FreimanMap, DEFAULT_BUDGET};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A finite pool of elements to draw sets from. For infinite ambients the
/// pool is a window around 0.
#[derive(Clone)]
pub struct Pool {
    pub name: String,
    pub group: Arc<FgaGroup>,
    pub elements: Vec<GroupElement>,
}

impl Pool {
    pub fn integers(lo: i64, hi: i64) -> Self {
        let g = FgaGroup::integers();
        Pool {
            name: format!("Z[{lo}..{hi}]"),
            elements: (lo..=hi).map(|x| g.element(vec![x]).unwrap()).collect(),
            group: g,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        let g = FgaGroup::cyclic(n);
        Pool {
            name: format!("Z/{n}"),
            elements: g.enumerate_elements().unwrap().collect(),
            group: g,
        }
    }

    /// Z ⊕ Z/m with the free coordinate in a window.
    pub fn mixed(lo: i64, hi: i64, m: u64) -> Self {
        let g = FgaGroup::from_cyclic_orders(1, &[BigInt::from(m)]);
        let mut elements = Vec::new();
        for x in lo..=hi {
            for t in 0..m as i64 {
                elements.push(g.element(vec![x, t]).unwrap());
            }
        }
        Pool {
            name: format!("Z[{lo}..{hi}]⊕Z/{m}"),
            group: g,
            elements,
        }
    }

    pub fn zero(&self) -> GroupElement {
        self.group.zero()
    }

    pub fn nonzero(&self) -> Vec<GroupElement> {
        self.elements.iter().filter(|x| !x.is_zero()).cloned().collect()
    }

    /// Every normalized set of size at most `max` drawn from the pool.
    pub fn normalized_sets(&self, max: usize) -> Vec<AdditiveSet> {
        let others = self.nonzero();
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn go(
            start: usize,
            left: usize,
            others: &[GroupElement],
            pick: &mut Vec<GroupElement>,
            zero: &GroupElement,
            g: &Arc<FgaGroup>,
            out: &mut Vec<AdditiveSet>,
        ) {
            let mut xs = pick.clone();
            xs.push(zero.clone());
            out.push(AdditiveSet::new(Arc::clone(g), xs).unwrap());
            if left == 0 {
                return;
            }
            for i in start..others.len() {
                pick.push(others[i].clone());
                go(i + 1, left - 1, others, pick, zero, g, out);
                pick.pop();
            }
        }
        go(0, max.saturating_sub(1), &others, &mut pick, &self.zero(), &self.group, &mut out);
        out
    }

    pub fn random_set<R: Rng>(&self, rng: &mut R, sizes: RangeInclusive<usize>, normalized: bool) -> AdditiveSet {
        let size = rng.gen_range(sizes);
        let mut xs: Vec<GroupElement> = if normalized {
            let mut rest = self.nonzero();
            rest.shuffle(rng);
            rest.truncate(size.saturating_sub(1));
            rest.push(self.zero());
            rest
        } else {
            let mut all = self.elements.clone();
            all.shuffle(rng);
            all.truncate(size.max(1));
            all
        };
        xs.sort();
        AdditiveSet::new(Arc::clone(&self.group), xs).unwrap()
    }
}

/// The ambients of the universal-property grid.
pub fn grid_pools() -> Vec<Pool> {
    vec![
        Pool::integers(-2, 2),
        Pool::cyclic(2),
        Pool::cyclic(3),
        Pool::cyclic(4),
        Pool::mixed(-1, 1, 2),
    ]
}

/// A mix of integer windows, cyclic groups and Z ⊕ Z/m for random tests.
pub fn random_pool<R: Rng>(rng: &mut R) -> Pool {
    match rng.gen_range(0..3) {
        0 => Pool::integers(-8, 8),
        1 => Pool::cyclic(rng.gen_range(2..=12)),
        _ => Pool::mixed(-3, 3, rng.gen_range(2..=4)),
    }
}

pub fn random_hom<R: Rng>(rng: &mut R, a: &AdditiveSet, b: &AdditiveSet, k: usize, preserve_zero: bool) -> FreimanMap {
    let homs = enumerate_homs(a, b, k, preserve_zero, DEFAULT_BUDGET).unwrap();
    homs.choose(rng).expect("constant maps always exist").clone()
}
