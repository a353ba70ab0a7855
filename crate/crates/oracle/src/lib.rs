//! Slow, obviously-correct reference implementations.
//!
//! Nothing here shares code paths with the library's fast routines beyond
//! the basic data types: hom checks run over ordered tuples, subgroups are
//! closed by fixpoint iteration, invariant factors come from gcds of minors,
//! and homsets are enumerated by trying every table.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use addcat::addset::AdditiveSet;
use addcat::cat::{Cone, ConeResult};
use addcat::fgab::{FgaGroup, GroupElement};
use addcat::freiman::FreimanMap;
use addcat::intlat::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded,
    InfiniteGroup,
}

fn pow_within(base: usize, exp: usize, budget: u64) -> Result<u64, OracleError> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u64).ok_or(OracleError::BudgetExceeded)?;
        if acc > budget {
            return Err(OracleError::BudgetExceeded);
        }
    }
    Ok(acc)
}

/// Calls `visit` with every length-`len` tuple over `0..base`.
fn for_each_tuple(base: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if len > 0 && base == 0 {
        return;
    }
    let mut t = vec![0usize; len];
    loop {
        visit(&t);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < base {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn add_all(zero: GroupElement, items: impl Iterator<Item = GroupElement>) -> GroupElement {
    items.fold(zero, |acc, x| acc.add(&x).expect("same group"))
}

/// The defining condition checked over every pair of ordered k-tuples.
pub fn naive_is_hom(f: &FreimanMap, budget: u64) -> Result<bool, OracleError> {
    let (a, k) = (f.source(), f.order());
    pow_within(a.len(), 2 * k, budget)?;
    let mut tuples = Vec::new();
    for_each_tuple(a.len(), k, |t| tuples.push(t.to_vec()));
    let sum = |t: &[usize]| add_all(a.ambient().zero(), t.iter().map(|&i| a.get(i).clone()));
    let image_sum = |t: &[usize]| add_all(f.target().ambient().zero(), t.iter().map(|&i| f.image_of_index(i).clone()));
    let sums: Vec<_> = tuples.iter().map(|t| (sum(t), image_sum(t))).collect();
    for (s1, i1) in &sums {
        for (s2, i2) in &sums {
            if s1 == s2 && i1 != i2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subgroup generated by `gens`, by repeated addition until nothing new appears.
pub fn naive_subgroup_closure(g: &Arc<FgaGroup>, gens: &[GroupElement]) -> Result<BTreeSet<GroupElement>, OracleError> {
    if !g.is_finite() {
        return Err(OracleError::InfiniteGroup);
    }
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(g.zero());
    let mut frontier = vec![g.zero()];
    while let Some(x) = frontier.pop() {
        for s in gens {
            for y in [x.add(s).unwrap(), x.sub(s).unwrap()] {
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    Ok(seen)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    // (permutation, is_odd)
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at pos moves the new maximum past (len - pos) entries
            let shifts = p.len() - pos;
            out.push((q, odd ^ (shifts % 2 == 1)));
        }
    }
    out
}

/// Determinant by the Leibniz formula.
pub fn leibniz_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut total = BigInt::zero();
    for (p, odd) in permutations(n) {
        let mut term = BigInt::one();
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
        }
        if odd {
            total -= term;
        } else {
            total += term;
        }
    }
    total
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Nonzero invariant factors from `d_1⋯d_i = gcd of all i×i minors`.
pub fn naive_minor_gcd_factors(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let mut factors = Vec::new();
    let mut prev = BigInt::one();
    for size in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), size) {
            for cs in combinations(m.cols(), size) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect()).collect();
                g = g.gcd(&leibniz_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        factors.push(&g / &prev);
        prev = g;
    }
    factors
}

/// Every k-hom `a → b` (0-preserving ones only when asked), by trying all tables.
pub fn naive_homs(
    a: &AdditiveSet,
    b: &AdditiveSet,
    k: usize,
    preserve_zero: bool,
    budget: u64,
) -> Result<Vec<FreimanMap>, OracleError> {
    pow_within(b.len(), a.len(), budget)?;
    let mut tables = Vec::new();
    for_each_tuple(b.len(), a.len(), |t| tables.push(t.to_vec()));
    let mut out = Vec::new();
    for t in tables {
        let f = FreimanMap::new(a.clone(), b.clone(), t, k).expect("tables are in range");
        if preserve_zero && !zero_to_zero(&f) {
            continue;
        }
        if naive_is_hom(&f, u64::MAX)? {
            out.push(f);
        }
    }
    Ok(out)
}

fn zero_to_zero(f: &FreimanMap) -> bool {
    match f.source().zero_index() {
        Some(z) => f.image_of_index(z).is_zero(),
        None => true,
    }
}

/// `(g ∘ f)` as an element-level lookup, independent of the library's composition.
fn composed_pairs(first: &FreimanMap, second: &FreimanMap) -> Option<HashMap<GroupElement, GroupElement>> {
    let second_map: HashMap<GroupElement, GroupElement> = second.pairs().into_iter().collect();
    first
        .pairs()
        .into_iter()
        .map(|(x, y)| second_map.get(&y).map(|z| (x, z.clone())))
        .collect()
}

/// All maps between the apexes that make the (co)cone triangles commute,
/// found by brute force over every table.
pub fn naive_mediator_search(cone: &ConeResult, competitor: &Cone, budget: u64) -> Result<Vec<FreimanMap>, OracleError> {
    let limit = cone.construction.is_limit();
    let (src, tgt) = if limit {
        (&competitor.apex, &cone.apex)
    } else {
        (&cone.apex, &competitor.apex)
    };
    let candidates = naive_homs(src, tgt, cone.order, cone.preserve_zero(), budget)?;
    let mut out = Vec::new();
    for h in candidates {
        let ok = cone.legs.iter().zip(&competitor.legs).all(|(leg, theirs)| {
            let via = if limit { composed_pairs(&h, leg) } else { composed_pairs(leg, &h) };
            let theirs: HashMap<GroupElement, GroupElement> = theirs.pairs().into_iter().collect();
            via.as_ref() == Some(&theirs)
        });
        if ok {
            out.push(h);
        }
    }
    Ok(out)
}
