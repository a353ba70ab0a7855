//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group is `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_m` with `d₁ | d₂ | … | d_m` and every
//! `dᵢ ≥ 2`. Because groups are only ever held in this canonical form, two
//! presentations describe isomorphic groups iff they compare equal. Direct
//! sums and quotients therefore come back with explicit coordinate changes.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intlat::{snf, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("elements belong to different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },
    #[error("torsion list {0:?} is not an invariant-factor chain")]
    InvalidTorsion(Vec<BigInt>),
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateLength { expected: usize, found: usize },
    #[error("group {0} is infinite")]
    InfiniteGroup(String),
    #[error("homomorphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    HomShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}

fn mismatch(a: &FgaGroup, b: &FgaGroup) -> GroupError {
    GroupError::GroupMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgaGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgaGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Arc<Self>, GroupError> {
        let chain_ok = torsion.iter().all(|d| *d >= BigInt::from(2))
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !chain_ok {
            return Err(GroupError::InvalidTorsion(torsion));
        }
        Ok(Arc::new(FgaGroup { free_rank, torsion }))
    }

    pub fn free(rank: usize) -> Arc<Self> {
        Arc::new(FgaGroup {
            free_rank: rank,
            torsion: Vec::new(),
        })
    }

    /// The integers.
    pub fn integers() -> Arc<Self> {
        Self::free(1)
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: u64) -> Arc<Self> {
        match n {
            0 => Self::free(1),
            1 => Self::free(0),
            _ => Arc::new(FgaGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            }),
        }
    }

    /// Canonical form of `Z^free_rank ⊕ Z/o₁ ⊕ … ⊕ Z/o_m` for arbitrary orders
    /// (an order of 0 contributes a free factor, 1 a trivial one).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Arc<Self> {
        let n = free_rank + orders.len();
        let rows: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .map(|(i, o)| unit_row(n, free_rank + i, o.clone()))
            .collect();
        Presentation::canonicalize(n, &rows).group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators (coordinates of an element).
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of canonical generator `i`; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    pub fn reduce_coords(&self, coords: &mut [BigInt]) {
        for (c, d) in coords[self.free_rank..].iter_mut().zip(&self.torsion) {
            if c.is_negative() || &*c >= d {
                *c = c.mod_floor(d);
            }
        }
    }

    pub fn element<T: Into<BigInt>>(self: &Arc<Self>, coords: Vec<T>) -> Result<GroupElement, GroupError> {
        let mut coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        if coords.len() != self.ngens() {
            return Err(GroupError::CoordinateLength {
                expected: self.ngens(),
                found: coords.len(),
            });
        }
        self.reduce_coords(&mut coords);
        Ok(GroupElement {
            coords,
            group: Arc::clone(self),
        })
    }

    pub fn zero(self: &Arc<Self>) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.ngens()],
            group: Arc::clone(self),
        }
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        self.element(coords).expect("generator index in range")
    }

    /// All elements in lexicographic coordinate order. Fails for infinite groups.
    pub fn enumerate_elements(self: &Arc<Self>) -> Result<ElementIter, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::InfiniteGroup(self.to_string()));
        }
        Ok(ElementIter {
            group: Arc::clone(self),
            next: Some(vec![BigInt::zero(); self.ngens()]),
        })
    }
}

impl fmt::Display for FgaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub struct ElementIter {
    group: Arc<FgaGroup>,
    next: Option<Vec<BigInt>>,
}

impl Iterator for ElementIter {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let torsion = self.group.torsion();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < torsion[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = BigInt::zero();
        }
        Some(GroupElement {
            coords: current,
            group: Arc::clone(&self.group),
        })
    }
}

/// An element in canonical coordinates. Ordering is lexicographic on
/// coordinates; equality also requires the same group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<BigInt>,
    group: Arc<FgaGroup>,
}

impl GroupElement {
    pub fn group(&self) -> &Arc<FgaGroup> {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same_group(&self, other: &GroupElement) -> Result<(), GroupError> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(mismatch(&self.group, &other.group))
        }
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.same_group(other)?;
        let mut coords: Vec<BigInt> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.group.reduce_coords(&mut coords);
        Ok(GroupElement {
            coords,
            group: Arc::clone(&self.group),
        })
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupElement {
        let mut coords: Vec<BigInt> = self.coords.iter().map(|c| -c).collect();
        self.group.reduce_coords(&mut coords);
        GroupElement {
            coords,
            group: Arc::clone(&self.group),
        }
    }

    pub fn scale(&self, n: &BigInt) -> GroupElement {
        let mut coords: Vec<BigInt> = self.coords.iter().map(|c| c * n).collect();
        self.group.reduce_coords(&mut coords);
        GroupElement {
            coords,
            group: Arc::clone(&self.group),
        }
    }

    /// Sum of a non-empty iterator of elements of one group.
    pub fn sum<'a, I>(items: I) -> Result<GroupElement, GroupError>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut it = items.into_iter();
        let first = it.next().expect("sum of an empty sequence").clone();
        it.try_fold(first, |acc, x| acc.add(x))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Group homomorphism given by the images of the source's canonical
/// generators: column `j` of `matrix` is the image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FgaGroup>,
    target: Arc<FgaGroup>,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: Arc<FgaGroup>, target: Arc<FgaGroup>, mut matrix: IntMatrix) -> Result<Self, GroupError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(GroupError::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.ngens(),
                expected_cols: source.ngens(),
            });
        }
        for j in 0..matrix.cols() {
            let mut col = matrix.column(j);
            target.reduce_coords(&mut col);
            for (i, c) in col.into_iter().enumerate() {
                matrix[(i, j)] = c;
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    /// Hom sending canonical generator `j` of `source` to `images[j]`.
    pub fn from_images(
        source: Arc<FgaGroup>,
        target: Arc<FgaGroup>,
        images: &[GroupElement],
    ) -> Result<Self, GroupError> {
        if images.len() != source.ngens() {
            return Err(GroupError::CoordinateLength {
                expected: source.ngens(),
                found: images.len(),
            });
        }
        let mut matrix = IntMatrix::zeros(target.ngens(), source.ngens());
        for (j, img) in images.iter().enumerate() {
            if *img.group() != target {
                return Err(mismatch(img.group(), &target));
            }
            for (i, c) in img.coords().iter().enumerate() {
                matrix[(i, j)] = c.clone();
            }
        }
        Self::new(source, target, matrix)
    }

    pub fn identity(g: &Arc<FgaGroup>) -> Self {
        GroupHom {
            source: Arc::clone(g),
            target: Arc::clone(g),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &Arc<FgaGroup>, target: &Arc<FgaGroup>) -> Self {
        GroupHom {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &Arc<FgaGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FgaGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image_of_generator(&self, j: usize) -> GroupElement {
        self.target.element(self.matrix.column(j)).expect("column length matches target")
    }

    /// True iff every torsion relation `dⱼ·eⱼ` of the source maps to zero.
    pub fn is_well_defined(&self) -> bool {
        (self.source.free_rank()..self.source.ngens()).all(|j| {
            self.image_of_generator(j)
                .scale(&self.source.generator_order(j))
                .is_zero()
        })
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        if *x.group() != self.source {
            return Err(mismatch(x.group(), &self.source));
        }
        let y = self.matrix.mul_vec(x.coords()).expect("shape checked at construction");
        self.target.element(y)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if self.target != other.source {
            return Err(mismatch(&self.target, &other.source));
        }
        let m = other.matrix.mul(&self.matrix).expect("shapes agree");
        GroupHom::new(Arc::clone(&self.source), Arc::clone(&other.target), m)
    }
}

fn unit_row(n: usize, i: usize, value: BigInt) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); n];
    row[i] = value;
    row
}

/// Canonical form of `Z^n / ⟨relations⟩` together with the coordinate
/// change in both directions.
#[derive(Debug, Clone)]
pub(crate) struct Presentation {
    pub group: Arc<FgaGroup>,
    /// canonical coordinates = `to_canonical · raw`, then reduced
    pub to_canonical: IntMatrix,
    /// `lifts[t]` is a raw vector mapping to canonical generator `t`
    pub lifts: Vec<Vec<BigInt>>,
}

impl Presentation {
    pub fn canonicalize(n: usize, relations: &[Vec<BigInt>]) -> Presentation {
        let rel = IntMatrix::from_rows(n, relations).expect("relation rows have the cover's width");
        let d = snf(&rel);
        let diag: Vec<BigInt> = (0..n).map(|i| d.diagonal(i)).collect();
        let free: Vec<usize> = (0..n).filter(|&i| diag[i].is_zero()).collect();
        let tors: Vec<usize> = (0..n).filter(|&i| diag[i] > BigInt::one()).collect();
        let kept: Vec<usize> = free.iter().chain(&tors).copied().collect();

        let group = Arc::new(FgaGroup {
            free_rank: free.len(),
            torsion: tors.iter().map(|&i| diag[i].clone()).collect(),
        });
        let mut to_canonical = IntMatrix::zeros(kept.len(), n);
        for (t, &idx) in kept.iter().enumerate() {
            for j in 0..n {
                to_canonical[(t, j)] = d.v[(j, idx)].clone();
            }
        }
        let lifts = kept.iter().map(|&idx| d.v_inv.row(idx).to_vec()).collect();
        Presentation {
            group,
            to_canonical,
            lifts,
        }
    }
}

/// `G ⊕ H` in canonical form with its biproduct structure maps.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub group: Arc<FgaGroup>,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

impl DirectSum {
    /// The element `(a, b)`.
    pub fn pair(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.inj_left.apply(a)?.add(&self.inj_right.apply(b)?)
    }

    pub fn split(&self, x: &GroupElement) -> Result<(GroupElement, GroupElement), GroupError> {
        Ok((self.proj_left.apply(x)?, self.proj_right.apply(x)?))
    }
}

pub fn direct_sum(g: &Arc<FgaGroup>, h: &Arc<FgaGroup>) -> DirectSum {
    let (n1, n2) = (g.ngens(), h.ngens());
    let n = n1 + n2;
    let mut relations = Vec::new();
    for j in g.free_rank()..n1 {
        relations.push(unit_row(n, j, g.generator_order(j)));
    }
    for j in h.free_rank()..n2 {
        relations.push(unit_row(n, n1 + j, h.generator_order(j)));
    }
    let pres = Presentation::canonicalize(n, &relations);
    let sum = Arc::clone(&pres.group);

    let column_block = |offset: usize, width: usize| {
        let mut m = IntMatrix::zeros(sum.ngens(), width);
        for t in 0..sum.ngens() {
            for j in 0..width {
                m[(t, j)] = pres.to_canonical[(t, offset + j)].clone();
            }
        }
        m
    };
    let lift_block = |offset: usize, width: usize| {
        let mut m = IntMatrix::zeros(width, sum.ngens());
        for (t, lift) in pres.lifts.iter().enumerate() {
            for j in 0..width {
                m[(j, t)] = lift[offset + j].clone();
            }
        }
        m
    };
    let hom = |s: &Arc<FgaGroup>, t: &Arc<FgaGroup>, m: IntMatrix| {
        GroupHom::new(Arc::clone(s), Arc::clone(t), m).expect("biproduct map shapes")
    };
    DirectSum {
        inj_left: hom(g, &sum, column_block(0, n1)),
        inj_right: hom(h, &sum, column_block(n1, n2)),
        proj_left: hom(&sum, g, lift_block(0, n1)),
        proj_right: hom(&sum, h, lift_block(n1, n2)),
        group: sum,
    }
}

/// `G / ⟨gens⟩` with its projection.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: Arc<FgaGroup>,
    pub projection: GroupHom,
    lifts: Vec<GroupElement>,
}

impl QuotientResult {
    /// Some preimage of `y` under the projection.
    pub fn lift(&self, y: &GroupElement) -> Result<GroupElement, GroupError> {
        if *y.group() != self.quotient {
            return Err(mismatch(y.group(), &self.quotient));
        }
        let source = self.projection.source();
        let mut acc = source.zero();
        for (c, l) in y.coords().iter().zip(&self.lifts) {
            acc = acc.add(&l.scale(c))?;
        }
        Ok(acc)
    }

    /// Preimage of canonical generator `t` of the quotient.
    pub fn generator_lift(&self, t: usize) -> &GroupElement {
        &self.lifts[t]
    }

    /// Whether `x` lies in the subgroup that was divided out.
    pub fn in_kernel(&self, x: &GroupElement) -> Result<bool, GroupError> {
        Ok(self.projection.apply(x)?.is_zero())
    }
}

pub fn quotient(g: &Arc<FgaGroup>, gens: &[GroupElement]) -> Result<QuotientResult, GroupError> {
    let n = g.ngens();
    let mut relations = Vec::with_capacity(g.torsion().len() + gens.len());
    for j in g.free_rank()..n {
        relations.push(unit_row(n, j, g.generator_order(j)));
    }
    for x in gens {
        if x.group() != g {
            return Err(mismatch(x.group(), g));
        }
        relations.push(x.coords().to_vec());
    }
    let pres = Presentation::canonicalize(n, &relations);
    let projection = GroupHom::new(Arc::clone(g), Arc::clone(&pres.group), pres.to_canonical.clone())?;
    let lifts = pres
        .lifts
        .iter()
        .map(|l| g.element(l.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuotientResult {
        quotient: pres.group,
        projection,
        lifts,
    })
}

/// Whether `gens` generate all of `g`.
pub fn subgroup_generated_equals(g: &Arc<FgaGroup>, gens: &[GroupElement]) -> Result<bool, GroupError> {
    Ok(quotient(g, gens)?.quotient.is_trivial())
}

/// Small helper for element literals: `elem(&g, &[1, 2])`.
pub fn elem(g: &Arc<FgaGroup>, coords: &[i64]) -> GroupElement {
    g.element(coords.to_vec()).expect("coordinate count matches group")
}
