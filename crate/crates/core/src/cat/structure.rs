//! Doubling-constant inequalities audited on constructed objects.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::addset::{sigma, sumset, union_disjoint, AdditiveSet, SetError};

use super::{ConeResult, Construction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "≤",
        })
    }
}

/// One inequality `lhs rel rhs` between exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub label: &'static str,
    pub statement: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: BigRational,
    pub holds: bool,
}

impl BoundCheck {
    fn new(label: &'static str, statement: impl Into<String>, lhs: BigRational, relation: Relation, rhs: BigRational) -> Self {
        let holds = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
        };
        BoundCheck {
            label,
            statement: statement.into(),
            lhs,
            relation,
            rhs,
            holds,
        }
    }
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "ok" } else { "VIOLATED" };
        write!(f, "{}: {} {} {} ({verdict})", self.statement, self.lhs, self.relation, self.rhs)
    }
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub construction: Construction,
    pub sigma_apex: BigRational,
    pub checks: Vec<BoundCheck>,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn one() -> BigRational {
    BigRational::one()
}

/// Both sides of `1 ≤ σ[apex] ≤ σ[reference]`.
fn sandwich(label: &'static str, apex_name: &str, ref_name: &str, s: &BigRational, r: BigRational) -> [BoundCheck; 2] {
    [
        BoundCheck::new(label, format!("1 ≤ σ[{apex_name}]"), one(), Relation::Le, s.clone()),
        BoundCheck::new(label, format!("σ[{apex_name}] ≤ σ[{ref_name}]"), s.clone(), Relation::Le, r),
    ]
}

/// The inequalities that apply to the object a construction produced.
pub fn structure_report(result: &ConeResult) -> StructureReport {
    let s = sigma(&result.apex);
    let sigma_base = |i: usize| sigma(&result.bases[i]);
    let mut checks = Vec::new();
    match result.construction {
        Construction::Product | Construction::Coproduct => {
            let rhs = sigma_base(0) * sigma_base(1);
            checks.push(BoundCheck::new("multiplicative", "σ[A×B] = σ[A]·σ[B]", s.clone(), Relation::Eq, rhs));
        }
        Construction::Pullback => {
            let rhs = sigma_base(0) * sigma_base(1);
            checks.extend(sandwich("sub-product", "A×_C B", "A×B", &s, rhs));
        }
        Construction::Pushout => {
            let rhs = sigma_base(0) * sigma_base(1);
            checks.extend(sandwich("quotient", "(A×B)/∼", "A×B", &s, rhs));
        }
        Construction::Coequalizer => {
            checks.extend(sandwich("quotient", "B/∼", "B", &s, sigma_base(0)));
        }
        Construction::Equalizer => {
            checks.extend(sandwich("subset", "E", "A", &s, sigma_base(0)));
        }
        Construction::Terminal | Construction::Initial => {
            checks.push(BoundCheck::new("point", "σ[{0}] = 1", s.clone(), Relation::Eq, one()));
        }
    }
    StructureReport {
        construction: result.construction,
        sigma_apex: s,
        checks,
    }
}

/// `σ(A⊎B) ≤ σ(A) + σ(B) + |A+B|/(|A|+|B|)` for disjoint sets in one ambient.
pub fn union_report(a: &AdditiveSet, b: &AdditiveSet) -> Result<BoundCheck, SetError> {
    let u = union_disjoint(a, b)?;
    let cross = sumset(a, b)?;
    let tail = BigRational::new(BigInt::from(cross.len()), BigInt::from(a.len() + b.len()));
    Ok(BoundCheck::new(
        "union",
        "σ(A⊎B) ≤ σ(A) + σ(B) + |A+B|/(|A|+|B|)",
        sigma(&u),
        Relation::Le,
        sigma(a) + sigma(b) + tail,
    ))
}
