//! Validation and execution of one request against a loaded document.

use addcat::addset::{doubling, sumset, AdditiveSet, SetError};
use addcat::cat::{
    coequalizer0, coproduct0, equalizer0, product, pullback0, pushout0, structure_report, verify_universal_property,
    CatError, Category, ConeResult, Construction,
};
use addcat::fgab::GroupError;
use addcat::freiman::{enumerate_homs, hom_violation, is_freiman_iso, HomViolation, MapError};
use addcat::json::{
    element_to_json, group_to_json, matrix_to_json, object, pairs_to_json, rational_to_json, set_to_json,
};
use addcat::universal::{build_universal, UniversalError};
use clap::ValueEnum;
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::Document;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Doubling,
    Sumset,
    CheckHom,
    IsoCheck,
    EnumerateHoms,
    Product,
    Coproduct,
    Pullback,
    Pushout,
    Equalizer,
    Coequalizer,
    Universal,
}

impl Task {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    fn construction(self) -> Option<Construction> {
        Some(match self {
            Task::Product => Construction::Product,
            Task::Coproduct => Construction::Coproduct,
            Task::Pullback => Construction::Pullback,
            Task::Pushout => Construction::Pushout,
            Task::Equalizer => Construction::Equalizer,
            Task::Coequalizer => Construction::Coequalizer,
            _ => return None,
        })
    }

    /// Allowed numbers of `--set` and `--map` selections.
    fn arity(self) -> (&'static [usize], usize) {
        match self {
            Task::Doubling | Task::Universal => (&[1], 0),
            Task::Sumset => (&[1, 2], 0),
            Task::CheckHom | Task::IsoCheck => (&[0], 1),
            Task::EnumerateHoms | Task::Product | Task::Coproduct => (&[2], 0),
            Task::Pullback | Task::Pushout | Task::Equalizer | Task::Coequalizer => (&[0], 2),
        }
    }

    /// Lives in the category of normalized sets and 0-preserving maps.
    fn normalized_only(self) -> bool {
        matches!(
            self,
            Task::Coproduct | Task::Pullback | Task::Pushout | Task::Equalizer | Task::Coequalizer
        )
    }
}

#[derive(Debug, Clone)]
pub struct Request {
    pub task: Task,
    /// Report the doubling bounds of the construction instead of the construction.
    pub audit: bool,
    pub sets: Vec<String>,
    pub maps: Vec<String>,
    /// Competitor apexes for the universal-property check. Empty means every
    /// eligible set in the document.
    pub against: Vec<String>,
    pub preserve_zero: bool,
}

impl Request {
    pub fn new(task: Task) -> Self {
        Request {
            task,
            audit: false,
            sets: Vec::new(),
            maps: Vec::new(),
            against: Vec::new(),
            preserve_zero: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<CatError> for CliError {
    fn from(e: CatError) -> Self {
        match e {
            CatError::Map(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<UniversalError> for CliError {
    fn from(e: UniversalError) -> Self {
        match e {
            UniversalError::Map(m) => m.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SetError> for CliError {
    fn from(e: SetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// A finished computation: its JSON report, a short human summary, and
/// whether the property under test failed.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub violated: bool,
}

/// Structural problems with running `req` on `doc`. Never fails.
pub fn validate(doc: &Document, req: &Request) -> Vec<String> {
    let mut out = Vec::new();
    let task = req.task.name();
    let (set_counts, map_count) = req.task.arity();
    if !set_counts.contains(&req.sets.len()) {
        let wanted = set_counts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" or ");
        out.push(format!("{task}: expected {wanted} --set, got {}", req.sets.len()));
    }
    if req.maps.len() != map_count {
        out.push(format!("{task}: expected {map_count} --map, got {}", req.maps.len()));
    }
    if req.audit && req.task.construction().is_none() {
        out.push(format!("structure-report: {task} is not a construction"));
    }
    for name in req.sets.iter().chain(&req.against) {
        if !doc.sets.contains_key(name) {
            out.push(format!("{task}: unknown set {name:?}"));
        }
    }
    for name in &req.maps {
        if !doc.maps.contains_key(name) {
            out.push(format!("{task}: unknown map {name:?}"));
        }
    }
    if req.task == Task::Universal && doc.order < 2 {
        out.push(format!("universal: the universal ambient group needs k ≥ 2, got k = {}", doc.order));
    }
    if req.task.normalized_only() {
        let mut sets: Vec<(String, &AdditiveSet)> = Vec::new();
        for name in req.sets.iter().chain(&req.against) {
            if let Some(s) = doc.sets.get(name) {
                sets.push((format!("set {name:?}"), s));
            }
        }
        for name in &req.maps {
            if let Some(f) = doc.maps.get(name) {
                sets.push((format!("source of map {name:?}"), f.source()));
                sets.push((format!("target of map {name:?}"), f.target()));
            }
        }
        for (what, s) in sets {
            if !s.is_normalized() {
                out.push(format!("{task}: {what} = {s} is not normalized (must contain 0)"));
            }
        }
    }
    out
}

fn violation_json(v: &HomViolation) -> Value {
    json!({
        "left": v.left.iter().map(element_to_json).collect::<Vec<_>>(),
        "right": v.right.iter().map(element_to_json).collect::<Vec<_>>(),
        "common_sum": element_to_json(&v.common_sum),
        "image_sums": [element_to_json(&v.image_sums.0), element_to_json(&v.image_sums.1)],
    })
}

fn optional<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

fn category_name(c: Category) -> &'static str {
    match c {
        Category::Plain => "plain",
        Category::Normalized => "normalized",
    }
}

/// Run a validated request.
pub fn run(doc: &Document, req: &Request, budget: u64) -> Result<Outcome, CliError> {
    let set = |i: usize| &doc.sets[&req.sets[i]];
    let map = |i: usize| &doc.maps[&req.maps[i]];
    let k = doc.order;
    if let Some(construction) = req.task.construction() {
        let cone = build(req.task, doc, req, k)?;
        return if req.audit {
            Ok(audit(construction, &cone))
        } else {
            construction_report(doc, req, &cone, budget)
        };
    }
    match req.task {
        Task::Doubling => {
            let a = set(0);
            let d = doubling(a);
            Ok(Outcome {
                json: json!({
                    "command": "doubling",
                    "set": req.sets[0],
                    "size": d.set_size,
                    "sumset_size": d.sumset_size,
                    "sigma": rational_to_json(&d.sigma),
                }),
                text: format!("σ[{a}] = {} (|A+A| = {}, |A| = {})", d.sigma, d.sumset_size, d.set_size),
                violated: false,
            })
        }
        Task::Sumset => {
            let a = set(0);
            let b = if req.sets.len() == 2 { set(1) } else { a };
            let s = sumset(a, b)?;
            Ok(Outcome {
                json: json!({
                    "command": "sumset",
                    "sets": req.sets,
                    "sumset": set_to_json(&s),
                    "size": s.len(),
                }),
                text: format!("{a} + {b} = {s} ({} elements)", s.len()),
                violated: false,
            })
        }
        Task::CheckHom => {
            let f = map(0);
            let v = hom_violation(f);
            let text = match &v {
                None => format!("{} is a Freiman {}-homomorphism", req.maps[0], f.order()),
                Some(v) => format!("{} is not a Freiman {}-homomorphism: {v}", req.maps[0], f.order()),
            };
            Ok(Outcome {
                json: json!({
                    "command": "check-hom",
                    "map": req.maps[0],
                    "order": f.order(),
                    "hom": v.is_none(),
                    "violation": optional(v.as_ref(), violation_json),
                }),
                text,
                violated: v.is_some(),
            })
        }
        Task::IsoCheck => {
            let f = map(0);
            let forward = hom_violation(f);
            let inverse = f.inverse();
            let backward = inverse.as_ref().and_then(hom_violation);
            let iso = is_freiman_iso(f);
            let mut text = format!(
                "{} {} a Freiman {}-isomorphism",
                req.maps[0],
                if iso { "is" } else { "is not" },
                f.order()
            );
            if !f.is_bijective() {
                text.push_str("\n  not a bijection");
            }
            if let Some(v) = &forward {
                text.push_str(&format!("\n  map fails: {v}"));
            }
            if let Some(v) = &backward {
                text.push_str(&format!("\n  inverse fails: {v}"));
            }
            Ok(Outcome {
                json: json!({
                    "command": "iso-check",
                    "map": req.maps[0],
                    "order": f.order(),
                    "bijective": f.is_bijective(),
                    "hom": forward.is_none(),
                    "inverse_hom": optional(inverse.as_ref(), |_| Value::Bool(backward.is_none())),
                    "iso": iso,
                    "violation": optional(forward.as_ref(), violation_json),
                    "inverse_violation": optional(backward.as_ref(), violation_json),
                }),
                text,
                violated: !iso,
            })
        }
        Task::EnumerateHoms => {
            let (a, b) = (set(0), set(1));
            let homs = enumerate_homs(a, b, k, req.preserve_zero, budget)?;
            let mut text = format!("{} Freiman {k}-homomorphisms {a} → {b}", homs.len());
            for h in &homs {
                text.push_str(&format!("\n  {h}"));
            }
            Ok(Outcome {
                json: json!({
                    "command": "enumerate-homs",
                    "source": req.sets[0],
                    "target": req.sets[1],
                    "order": k,
                    "preserve_zero": req.preserve_zero,
                    "count": homs.len(),
                    "maps": homs.iter().map(pairs_to_json).collect::<Vec<_>>(),
                }),
                text,
                violated: false,
            })
        }
        Task::Universal => {
            let a = set(0);
            let u = build_universal(a, k)?;
            let iso = is_freiman_iso(&u.unit);
            let generated = u.generated_by_embedded()?;
            let mut text = format!("universal group of {a} at k = {k}: {}", u.group());
            for (x, y) in u.unit.pairs() {
                text.push_str(&format!("\n  {x} ↦ {y}"));
            }
            text.push_str(&format!("\n  unit is a {k}-isomorphism: {iso}\n  image generates: {generated}"));
            Ok(Outcome {
                json: json!({
                    "command": "universal",
                    "set": req.sets[0],
                    "order": k,
                    "group": group_to_json(u.group()),
                    "relations": matrix_to_json(&u.relation_matrix),
                    "embedded": set_to_json(&u.embedded),
                    "unit": pairs_to_json(&u.unit),
                    "verification": {
                        "unit_is_isomorphism": iso,
                        "image_generates": generated,
                    },
                }),
                text,
                violated: !(iso && generated),
            })
        }
        _ => unreachable!("constructions are handled above"),
    }
}

fn build(task: Task, doc: &Document, req: &Request, k: usize) -> Result<ConeResult, CliError> {
    let set = |i: usize| &doc.sets[&req.sets[i]];
    let map = |i: usize| &doc.maps[&req.maps[i]];
    Ok(match task {
        Task::Product => product(set(0), set(1), k)?,
        Task::Coproduct => coproduct0(set(0), set(1), k)?,
        Task::Pullback => pullback0(map(0), map(1))?,
        Task::Pushout => pushout0(map(0), map(1))?,
        Task::Equalizer => equalizer0(map(0), map(1))?,
        Task::Coequalizer => coequalizer0(map(0), map(1))?,
        _ => unreachable!("not a construction"),
    })
}

fn audit(construction: Construction, cone: &ConeResult) -> Outcome {
    let report = structure_report(cone);
    let mut text = format!("{construction}: σ = {}", report.sigma_apex);
    for c in &report.checks {
        text.push_str(&format!("\n  ({}) {c}", c.label));
    }
    let checks = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "statement": c.statement,
                "lhs": rational_to_json(&c.lhs),
                "relation": c.relation.to_string(),
                "rhs": rational_to_json(&c.rhs),
                "holds": c.holds,
            })
        })
        .collect::<Vec<_>>();
    Outcome {
        json: json!({
            "command": "structure-report",
            "construction": construction.name(),
            "object": set_to_json(&cone.apex),
            "sigma": rational_to_json(&report.sigma_apex),
            "checks": checks,
            "all_hold": report.all_hold(),
        }),
        text,
        violated: !report.all_hold(),
    }
}

fn construction_report(doc: &Document, req: &Request, cone: &ConeResult, budget: u64) -> Result<Outcome, CliError> {
    let apexes: Vec<&String> = if req.against.is_empty() {
        doc.sets
            .iter()
            .filter(|(_, s)| !cone.preserve_zero() || s.is_normalized())
            .map(|(n, _)| n)
            .collect()
    } else {
        req.against.iter().collect()
    };
    let mut checks = Vec::new();
    let (mut total, mut held) = (0usize, 0usize);
    let mut failures = Vec::new();
    for name in apexes {
        for competitor in cone.enumerate_competitors(&doc.sets[name], budget)? {
            let verdict = verify_universal_property(cone, &competitor, budget)?;
            total += 1;
            if verdict.holds {
                held += 1;
            } else {
                failures.push(format!(
                    "against {name} with legs [{}]: {} commuting maps{}",
                    competitor.legs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
                    verdict.commuting.len(),
                    verdict.mediator_error.as_ref().map(|e| format!(", {e}")).unwrap_or_default(),
                ));
            }
            checks.push(json!({
                "apex": name,
                "legs": competitor.legs.iter().map(pairs_to_json).collect::<Vec<_>>(),
                "mediator": optional(verdict.mediator.as_ref(), pairs_to_json),
                "mediator_error": verdict.mediator_error,
                "commuting": verdict.commuting.len(),
                "holds": verdict.holds,
            }));
        }
    }
    let quotient = optional(cone.quotient.as_ref(), |q| {
        object([
            ("group", group_to_json(&q.ambient_quotient.quotient)),
            (
                "classes",
                Value::Array(
                    q.classes
                        .iter()
                        .map(|c| Value::Array(c.iter().map(|&i| element_to_json(q.underlying.get(i))).collect()))
                        .collect(),
                ),
            ),
            ("collapses", json!(q.collapses)),
        ])
    });
    let mut text = format!(
        "{} ({}, k = {}): {}",
        cone.construction,
        category_name(cone.category),
        cone.order,
        cone.apex
    );
    for (i, leg) in cone.legs.iter().enumerate() {
        text.push_str(&format!("\n  leg {}: {leg}", i + 1));
    }
    text.push_str(&format!("\n  universal property: {held}/{total} competitors"));
    for f in &failures {
        text.push_str(&format!("\n  FAILS {f}"));
    }
    Ok(Outcome {
        json: json!({
            "command": cone.construction.name(),
            "construction": cone.construction.name(),
            "category": category_name(cone.category),
            "order": cone.order,
            "object": set_to_json(&cone.apex),
            "legs": cone.legs.iter().map(pairs_to_json).collect::<Vec<_>>(),
            "quotient": quotient,
            "verification": {
                "competitors": total,
                "holds": held,
                "verdict": held == total,
                "checks": checks,
            },
        }),
        text,
        violated: held != total,
    })
}
