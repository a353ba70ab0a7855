//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.
//!
//! Criteria that fail because the property they assert is false are
//! reported as FAIL and listed in `KNOWN_DEFECTS`; they do not abort the
//! run. Any other failure makes the process exit non-zero.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use addcat::addset::{signed_sumset, sigma, AdditiveSet, Sign};
use addcat::cat::{
    coequalizer0, coproduct0, equalizer0, product, pullback0, pushout0, structure_report, union_report,
    verify_universal_property, Cone, ConeResult,
};
use addcat::fgab::{quotient, FgaGroup, GroupElement, GroupHom};
use addcat::freiman::{
    compose, enumerate_homs, hom_violation, is_freiman_hom, is_freiman_iso, FreimanMap, DEFAULT_BUDGET,
};
use addcat::intlat::{snf, IntMatrix};
use addcat::universal::{adjunction_eta, adjunction_theta, build_universal};
use addcat_oracle::{naive_is_hom, naive_minor_gcd_factors, naive_subgroup_closure};
use common::{grid_pools, random_hom, random_pool, rng, Pool};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Criteria whose statement is false as written; see the project notes.
const KNOWN_DEFECTS: &[u32] = &[4, 7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ints(xs: &[i64]) -> AdditiveSet {
    AdditiveSet::integers(xs).unwrap()
}

fn criterion_1() -> Outcome {
    let a = sigma(&ints(&[1, 2, 3]));
    let b = sigma(&AdditiveSet::residues(3, &[0, 1, 2]).unwrap());
    outcome(
        a == ratio(5, 3) && b == BigRational::one(),
        format!("σ[{{1,2,3}}] = {a}, σ[Z/3] = {b}"),
    )
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=10i64 {
        let geo: Vec<i64> = (0..n).map(|i| 1i64 << i).collect();
        let s = sigma(&ints(&geo));
        if s != ratio(n + 1, 2) {
            bad.push(format!("geometric N={n}: {s}"));
        }
    }
    let mut r = rng(2);
    let mut aps = 0;
    for n in 1..=10i64 {
        for _ in 0..5 {
            let a0 = r.gen_range(-100..=100);
            let step = loop {
                let s = r.gen_range(-20..=20);
                if s != 0 {
                    break s;
                }
            };
            let ap: Vec<i64> = (0..n).map(|i| a0 + i * step).collect();
            let s = sigma(&ints(&ap));
            aps += 1;
            if s != BigRational::from_integer(2.into()) - ratio(1, n) {
                bad.push(format!("AP a={a0} r={step} N={n}: {s}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("10 geometric, {aps} arithmetic progressions; mismatches: {bad:?}"))
}

fn random_size<R: Rng>(r: &mut R, lo: usize, hi: usize) -> usize {
    r.gen_range(lo..=hi)
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut tally: BTreeMap<&str, (usize, usize, Vec<String>)> = BTreeMap::new();
    let mut record = |label: &'static str, result: &ConeResult| {
        let rep = structure_report(result);
        let e = tally.entry(label).or_default();
        e.0 += 1;
        if !rep.all_hold() {
            e.1 += 1;
            if e.2.len() < 3 {
                let failing: Vec<String> = rep.checks.iter().filter(|c| !c.holds).map(|c| c.to_string()).collect();
                e.2.push(format!("{} from {:?}: {}", result.apex, result.bases.iter().map(|b| b.to_string()).collect::<Vec<_>>(), failing.join("; ")));
            }
        }
    };

    // products: any sets, any ambients
    for _ in 0..50 {
        let (p, q) = (random_pool(&mut r), random_pool(&mut r));
        let a = p.random_set(&mut r, 1..=6, false);
        let b = q.random_set(&mut r, 1..=6, false);
        record("product", &product(&a, &b, 2).unwrap());
    }
    // pullback, coequalizer, equalizer: normalized sets and random 0-preserving homs
    for _ in 0..50 {
        let k = r.gen_range(2..=3);
        let (pa, pb, pc) = (random_pool(&mut r), random_pool(&mut r), random_pool(&mut r));
        let a = pa.random_set(&mut r, 1..=5, true);
        let b = pb.random_set(&mut r, 1..=5, true);
        let c = pc.random_set(&mut r, 1..=4, true);
        let f = random_hom(&mut r, &a, &c, k, true);
        let g = random_hom(&mut r, &b, &c, k, true);
        record("pullback", &pullback0(&f, &g).unwrap());
    }
    for _ in 0..50 {
        let k = r.gen_range(2..=3);
        let (pa, pb) = (random_pool(&mut r), random_pool(&mut r));
        let a = pa.random_set(&mut r, 1..=4, true);
        let b = pb.random_set(&mut r, 1..=5, true);
        let f = random_hom(&mut r, &a, &b, k, true);
        let g = random_hom(&mut r, &a, &b, k, true);
        record("coequalizer", &coequalizer0(&f, &g).unwrap());
    }
    for _ in 0..50 {
        let k = r.gen_range(2..=3);
        let (pa, pb) = (random_pool(&mut r), random_pool(&mut r));
        let a = pa.random_set(&mut r, 1..=5, true);
        let b = pb.random_set(&mut r, 1..=4, true);
        let f = random_hom(&mut r, &a, &b, k, true);
        let g = random_hom(&mut r, &a, &b, k, true);
        record("equalizer", &equalizer0(&f, &g).unwrap());
    }
    // unions: disjoint sets in one ambient
    let mut union_fail = Vec::new();
    for _ in 0..50 {
        let p = loop {
            let p = random_pool(&mut r);
            if p.elements.len() >= 4 {
                break p;
            }
        };
        let mut xs = p.elements.clone();
        xs.shuffle(&mut r);
        let na = random_size(&mut r, 1, (xs.len() / 2).min(5));
        let nb = random_size(&mut r, 1, (xs.len() - na).min(5));
        let a = AdditiveSet::new(Arc::clone(&p.group), xs[..na].to_vec()).unwrap();
        let b = AdditiveSet::new(Arc::clone(&p.group), xs[na..na + nb].to_vec()).unwrap();
        let c = union_report(&a, &b).unwrap();
        if !c.holds {
            union_fail.push(format!("{a} ⊎ {b}: {c}"));
        }
    }

    let mut pass = union_fail.is_empty();
    let mut parts = Vec::new();
    for (label, (n, fails, examples)) in &tally {
        pass &= *fails == 0;
        parts.push(format!("{label}: {}/{n} hold{}", n - fails, if examples.is_empty() { String::new() } else { format!(" e.g. {}", examples.join(" | ")) }));
    }
    parts.push(format!("union: {}/50 hold {:?}", 50 - union_fail.len(), union_fail));
    outcome(pass, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut checks: Vec<(String, bool)> = Vec::new();

    let a = ints(&[0, 1, 2]);
    let b = ints(&[10, 13, 16]);
    for k in 2..=4 {
        let phi = FreimanMap::new(a.clone(), b.clone(), vec![0, 1, 2], k).unwrap();
        checks.push((format!("{{0,1,2}}→{{10,13,16}} is a {k}-iso"), is_freiman_iso(&phi)));
    }

    let c = ints(&[0, 1, 4]);
    let d = ints(&[0, 1, 3]);
    let phi2 = FreimanMap::new(c.clone(), d.clone(), vec![0, 1, 2], 2).unwrap();
    checks.push(("{0,1,4}→{0,1,3} is a 2-iso".into(), is_freiman_iso(&phi2)));
    let phi3 = phi2.with_order(3).unwrap();
    let witness = hom_violation(&phi3);
    checks.push((
        format!(
            "{{0,1,4}}→{{0,1,3}} is not a 3-hom, witness emitted (got: {})",
            witness.as_ref().map(|w| w.to_string()).unwrap_or_else(|| "none, it is a 3-hom".into())
        ),
        witness.is_some(),
    ));
    let inv_witness = hom_violation(&phi3.inverse().unwrap());
    checks.push((
        format!(
            "(its inverse is not a 3-hom: {})",
            inv_witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
        ),
        inv_witness.is_some(),
    ));
    let homs = enumerate_homs(&c, &d, 3, false, DEFAULT_BUDGET).unwrap();
    let constant = homs.iter().filter(|h| h.table().iter().all(|&t| t == h.table()[0])).count();
    checks.push((
        format!("enumerate_homs(C, D, 3) is exactly the 3 constant maps (got {} maps, {constant} constant)", homs.len()),
        homs.len() == 3 && constant == 3,
    ));
    let back = enumerate_homs(&d, &c, 3, false, DEFAULT_BUDGET).unwrap();
    checks.push((
        format!("(enumerate_homs(D, C, 3): {} maps, all constant)", back.len()),
        back.len() == 3 && back.iter().all(|h| h.table().iter().all(|&t| t == h.table()[0])),
    ));

    let e = ints(&[0, 2, 4]);
    let psi = FreimanMap::new(c.clone(), e.clone(), vec![0, 1, 2], 2).unwrap();
    let w = hom_violation(&psi.inverse().unwrap());
    let ok = is_freiman_hom(&psi)
        && w.as_ref().is_some_and(|w| {
            let mut sides = [w.left.clone(), w.right.clone()];
            sides.sort();
            w.common_sum.to_string() == "4"
                && sides == [vec![ints(&[0]).get(0).clone(), e.get(2).clone()], vec![e.get(1).clone(); 2]]
        });
    checks.push((
        format!("{{0,1,4}}→{{0,2,4}} is a 2-hom, inverse witness 2+2 = 0+4 (got {})", w.map(|w| w.to_string()).unwrap_or_default()),
        ok,
    ));

    let left = ints(&[0, 1]);
    let right = ints(&[3, 4]);
    let tgt = ints(&[1, 2]);
    let u = addcat::addset::union_disjoint(&left, &right).unwrap();
    let copair = FreimanMap::new(u, tgt, vec![0, 1, 1, 0], 2).unwrap();
    let w = hom_violation(&copair);
    let ok = w.as_ref().is_some_and(|w| {
        let mut sides = [w.left.clone(), w.right.clone()];
        sides.sort();
        w.common_sum.to_string() == "4" && sides == [vec![ints(&[0]).get(0).clone(), ints(&[4]).get(0).clone()], vec![ints(&[1]).get(0).clone(), ints(&[3]).get(0).clone()]]
    });
    checks.push((format!("disjoint-union copair fails at k=2, witness 0+4 = 1+3 (got {})", w.map(|w| w.to_string()).unwrap_or_default()), ok));

    // parenthesised checks are context for the report, not part of the criterion
    let pass = checks.iter().filter(|(s, _)| !s.starts_with('(')).all(|(_, ok)| *ok);
    let detail = checks
        .iter()
        .map(|(s, ok)| format!("[{}] {s}", if *ok { "ok" } else { "no" }))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn random_group_hom<R: Rng>(r: &mut R) -> (Pool, GroupHom) {
    loop {
        let source = match r.gen_range(0..3) {
            0 => Pool::integers(-6, 6),
            1 => Pool::cyclic(r.gen_range(2..=12)),
            _ => Pool::mixed(-3, 3, 2),
        };
        let target = match r.gen_range(0..3) {
            0 => FgaGroup::integers(),
            1 => FgaGroup::cyclic(r.gen_range(2..=12)),
            _ => FgaGroup::from_cyclic_orders(1, &[BigInt::from(2)]),
        };
        let images: Vec<GroupElement> = (0..source.group.ngens())
            .map(|_| {
                let coords: Vec<i64> = (0..target.ngens()).map(|_| r.gen_range(-4..=4)).collect();
                target.element(coords).unwrap()
            })
            .collect();
        let hom = GroupHom::from_images(Arc::clone(&source.group), target, &images).unwrap();
        if hom.is_well_defined() {
            return (source, hom);
        }
    }
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let (mut trials, mut isos, mut bad) = (0, 0, Vec::new());
    while trials < 100 {
        let k = if trials % 2 == 0 { 2 } else { 3 };
        let (pool, hom) = random_group_hom(&mut r);
        let a = pool.random_set(&mut r, 2..=6, false);
        let phi = FreimanMap::restrict_onto(&hom, &a, k).unwrap();
        trials += 1;
        let iso = is_freiman_iso(&phi);
        isos += iso as usize;
        for _ in 0..5 {
            let mut src_terms = Vec::new();
            let mut img_terms = Vec::new();
            for _ in 0..k {
                let mut idx: Vec<usize> = (0..a.len()).collect();
                idx.shuffle(&mut r);
                idx.truncate(r.gen_range(1..=a.len()));
                let sign = if r.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                let sub = a.subset(&{
                    let mut s = idx.clone();
                    s.sort();
                    s
                })
                .unwrap();
                let img = AdditiveSet::new(Arc::clone(phi.target().ambient()), sub.elements().iter().map(|x| phi.apply(x).unwrap().clone())).unwrap();
                src_terms.push((sign, sub));
                img_terms.push((sign, img));
            }
            let lhs = signed_sumset(&img_terms.iter().map(|(s, x)| (*s, x)).collect::<Vec<_>>()).unwrap().len();
            let rhs = signed_sumset(&src_terms.iter().map(|(s, x)| (*s, x)).collect::<Vec<_>>()).unwrap().len();
            if lhs > rhs || (iso && lhs != rhs) {
                bad.push(format!("{phi}: {lhs} vs {rhs}"));
            }
        }
    }
    outcome(
        bad.is_empty() && isos > 0,
        format!("{trials} surjective homs ({isos} isomorphisms), 5 signed sums each; violations: {bad:?}"),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut bad = Vec::new();
    for t in 0..150 {
        let (rows, cols) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-9..=9)).collect()).collect();
        let m = IntMatrix::from_rows(cols, &data).unwrap();
        let d = snf(&m);
        let mut ok = d.u.mul(&m).unwrap().mul(&d.v).unwrap() == d.s;
        ok &= d.u.is_unimodular() && d.v.is_unimodular();
        ok &= d.v.mul(&d.v_inv).unwrap() == IntMatrix::identity(cols);
        for i in 0..rows {
            for j in 0..cols {
                ok &= i == j || d.s[(i, j)].is_zero();
            }
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| d.diagonal(i)).collect();
        ok &= diag.iter().all(|x| !x.is_negative());
        for w in diag.windows(2) {
            ok &= if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        }
        ok &= d.invariant_factors == naive_minor_gcd_factors(&m);
        if !ok {
            bad.push(format!("#{t}: {data:?}"));
        }
    }
    outcome(bad.is_empty(), format!("150 random matrices up to 4×4; failures: {bad:?}"))
}

#[derive(Default)]
struct GridTally {
    instances: usize,
    holds: usize,
    undefined: usize,
    none_commute: usize,
    many_commute: usize,
    mismatch: usize,
    example: Option<String>,
}

impl GridTally {
    fn add(&mut self, result: &ConeResult, competitor: &Cone) {
        let v = verify_universal_property(result, competitor, DEFAULT_BUDGET).unwrap();
        self.instances += 1;
        if v.holds {
            self.holds += 1;
            return;
        }
        if v.mediator.is_none() {
            self.undefined += 1;
        }
        match v.commuting.len() {
            0 => self.none_commute += 1,
            1 => self.mismatch += 1,
            _ => self.many_commute += 1,
        }
        if self.example.is_none() {
            self.example = Some(format!(
                "bases {:?}, diagram {:?}, competitor apex {} legs {:?}: {} commuting, mediator {}",
                result.bases.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                result.diagram.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                competitor.apex,
                competitor.legs.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                v.commuting.len(),
                v.mediator_error.unwrap_or_else(|| "defined".into())
            ));
        }
    }
}

fn pick<R: Rng, T: Clone>(r: &mut R, xs: &[T]) -> T {
    xs.choose(r).unwrap().clone()
}

fn homs0(a: &AdditiveSet, b: &AdditiveSet, k: usize) -> Vec<FreimanMap> {
    enumerate_homs(a, b, k, true, DEFAULT_BUDGET).unwrap()
}

/// A random competitor with apex `d`: the first leg is random, the rest are
/// drawn among choices that make the diagram commute.
fn sample_competitor<R: Rng>(r: &mut R, result: &ConeResult, d: &AdditiveSet) -> Cone {
    let k = result.order;
    let name = result.construction.name();
    let legs = match name {
        "product" => vec![pick(r, &homs0(d, &result.bases[0], k)), pick(r, &homs0(d, &result.bases[1], k))],
        "coproduct" => vec![pick(r, &homs0(&result.bases[0], d, k)), pick(r, &homs0(&result.bases[1], d, k))],
        "pullback" => {
            let (f, g) = (&result.diagram[0], &result.diagram[1]);
            let d1 = pick(r, &homs0(d, &result.bases[0], k));
            let fd1 = compose(f, &d1).unwrap();
            let options: Vec<_> = homs0(d, &result.bases[1], k).into_iter().filter(|d2| compose(g, d2).unwrap() == fd1).collect();
            if options.is_empty() {
                vec![
                    FreimanMap::constant(d, &result.bases[0], result.bases[0].zero_index().unwrap(), k).unwrap(),
                    FreimanMap::constant(d, &result.bases[1], result.bases[1].zero_index().unwrap(), k).unwrap(),
                ]
            } else {
                vec![d1, pick(r, &options)]
            }
        }
        "pushout" => {
            let (f, g) = (&result.diagram[0], &result.diagram[1]);
            let d1 = pick(r, &homs0(&result.bases[0], d, k));
            let d1f = compose(&d1, f).unwrap();
            let options: Vec<_> = homs0(&result.bases[1], d, k).into_iter().filter(|d2| compose(d2, g).unwrap() == d1f).collect();
            if options.is_empty() {
                vec![
                    FreimanMap::constant(&result.bases[0], d, d.zero_index().unwrap(), k).unwrap(),
                    FreimanMap::constant(&result.bases[1], d, d.zero_index().unwrap(), k).unwrap(),
                ]
            } else {
                vec![d1, pick(r, &options)]
            }
        }
        "equalizer" => {
            let (f, g) = (&result.diagram[0], &result.diagram[1]);
            let options: Vec<_> = homs0(d, &result.bases[0], k)
                .into_iter()
                .filter(|m| compose(f, m).unwrap() == compose(g, m).unwrap())
                .collect();
            vec![pick(r, &options)]
        }
        "coequalizer" => {
            let (f, g) = (&result.diagram[0], &result.diagram[1]);
            let options: Vec<_> = homs0(&result.bases[0], d, k)
                .into_iter()
                .filter(|m| compose(m, f).unwrap() == compose(m, g).unwrap())
                .collect();
            vec![pick(r, &options)]
        }
        _ => unreachable!(),
    };
    Cone { apex: d.clone(), legs }
}

const COMPETITORS_PER_INSTANCE: usize = 2;

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut tallies: BTreeMap<&'static str, GridTally> = BTreeMap::new();
    for pool in grid_pools() {
        let sets = pool.normalized_sets(3);
        for k in 2..=3 {
            let check = |r: &mut rand::rngs::StdRng, result: ConeResult, tallies: &mut BTreeMap<&'static str, GridTally>| {
                for _ in 0..COMPETITORS_PER_INSTANCE {
                    let d = pick(r, &sets);
                    let cone = sample_competitor(r, &result, &d);
                    tallies.entry(result.construction.name()).or_default().add(&result, &cone);
                }
            };
            for a in &sets {
                for b in &sets {
                    check(&mut r, product(a, b, k).unwrap(), &mut tallies);
                    check(&mut r, coproduct0(a, b, k).unwrap(), &mut tallies);
                    let f = pick(&mut r, &homs0(a, b, k));
                    let g = pick(&mut r, &homs0(a, b, k));
                    check(&mut r, equalizer0(&f, &g).unwrap(), &mut tallies);
                    check(&mut r, coequalizer0(&f, &g).unwrap(), &mut tallies);
                    for c in &sets {
                        // pullback over A → C ← B, pushout over A ← C → B
                        let f = pick(&mut r, &homs0(a, c, k));
                        let g = pick(&mut r, &homs0(b, c, k));
                        check(&mut r, pullback0(&f, &g).unwrap(), &mut tallies);
                        let f = pick(&mut r, &homs0(c, a, k));
                        let g = pick(&mut r, &homs0(c, b, k));
                        check(&mut r, pushout0(&f, &g).unwrap(), &mut tallies);
                    }
                }
            }
        }
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, t) in &tallies {
        pass &= t.holds == t.instances;
        let mut line = format!("{name} {}/{}", t.holds, t.instances);
        if t.holds != t.instances {
            line += &format!(
                " (mediator undefined {}, no commuting map {}, several {}, mismatch {}; e.g. {})",
                t.undefined,
                t.none_commute,
                t.many_commute,
                t.mismatch,
                t.example.as_deref().unwrap_or("")
            );
        }
        parts.push(line);
    }
    outcome(pass, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let mut bad = Vec::new();
    let expect = [
        (ints(&[0, 1]), "Z^2"),
        (ints(&[0, 1, 2]), "Z^2"),
        (AdditiveSet::residues(3, &[0, 1, 2]).unwrap(), "Z ⊕ Z/3"),
    ];
    for (a, want) in &expect {
        let u = build_universal(a, 2).unwrap();
        if u.group().to_string() != *want {
            bad.push(format!("{a}: got {}", u.group()));
        }
    }
    // the Z/3 presentation against gcds of minors
    let u = build_universal(&expect[2].0, 2).unwrap();
    let factors = naive_minor_gcd_factors(&u.relation_matrix);
    let torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    let free = u.relation_matrix.cols() - factors.len();
    if free != 1 || torsion != vec![BigInt::from(3)] {
        bad.push(format!("minor-gcd factors {factors:?}"));
    }

    let mut r = rng(8);
    let mut tested = 0;
    for _ in 0..120 {
        let pool = match r.gen_range(0..3) {
            0 => Pool::integers(-10, 10),
            1 => Pool::cyclic(r.gen_range(2..=13)),
            _ => Pool::mixed(-3, 3, r.gen_range(2..=3)),
        };
        let a = pool.random_set(&mut r, 1..=5, false);
        for k in 2..=3 {
            let u = build_universal(&a, k).unwrap();
            tested += 1;
            if !is_freiman_iso(&u.unit) || !u.generated_by_embedded().unwrap() {
                bad.push(format!("{a} k={k}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("3 presentations, {tested} random sets; failures: {bad:?}"))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let (mut pairs, mut maps, mut bad) = (0, 0, Vec::new());
    for _ in 0..60 {
        let pa = random_pool(&mut r);
        let pb = random_pool(&mut r);
        let a = pa.random_set(&mut r, 1..=4, false);
        let b = pb.random_set(&mut r, 1..=3, false);
        let u = build_universal(&a, 2).unwrap();
        pairs += 1;
        for g in enumerate_homs(&a, &b, 2, false, DEFAULT_BUDGET).unwrap() {
            maps += 1;
            if adjunction_theta(&u, &adjunction_eta(&u, &g).unwrap()).unwrap() != g {
                bad.push(format!("θη ≠ id at {g}"));
            }
        }
        for f in enumerate_homs(&u.embedded, &b, 2, false, DEFAULT_BUDGET).unwrap() {
            maps += 1;
            if adjunction_eta(&u, &adjunction_theta(&u, &f).unwrap()).unwrap() != f {
                bad.push(format!("ηθ ≠ id at {f}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} (A, B) pairs, {maps} maps; failures: {bad:?}"))
}

fn all_tables(src: usize, tgt: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..src {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..tgt).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn finite_groups_up_to(limit: u64) -> Vec<Arc<FgaGroup>> {
    let mut out = Vec::new();
    // every invariant-factor chain d1 | d2 | ... with product ≤ limit
    fn go(prev: u64, prod: u64, limit: u64, chain: &mut Vec<u64>, out: &mut Vec<Arc<FgaGroup>>) {
        if !chain.is_empty() {
            let orders: Vec<BigInt> = chain.iter().map(|&d| BigInt::from(d)).collect();
            out.push(FgaGroup::from_cyclic_orders(0, &orders));
        }
        let mut d = if chain.is_empty() { 2 } else { prev };
        while prod * d <= limit {
            if chain.is_empty() || d % prev == 0 {
                chain.push(d);
                go(d, prod * d, limit, chain, out);
                chain.pop();
            }
            d += 1;
        }
    }
    go(1, 1, limit, &mut Vec::new(), &mut out);
    out
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let pools = [Pool::integers(-4, 4), Pool::cyclic(5), Pool::cyclic(6), Pool::mixed(-1, 1, 2)];
    let (mut maps, mut bad) = (0usize, Vec::new());
    for _ in 0..24 {
        let pa = pick(&mut r, &pools);
        let pb = pick(&mut r, &pools);
        let a = pa.random_set(&mut r, 1..=4, false);
        let b = pb.random_set(&mut r, 1..=4, false);
        for table in all_tables(a.len(), b.len()) {
            for k in 1..=3 {
                let f = FreimanMap::new(a.clone(), b.clone(), table.clone(), k).unwrap();
                maps += 1;
                if is_freiman_hom(&f) != naive_is_hom(&f, u64::MAX).unwrap() {
                    bad.push(format!("hom check disagrees on {f}"));
                }
            }
        }
    }
    let groups = finite_groups_up_to(36);
    let mut quotients = 0;
    for g in &groups {
        let elements: Vec<GroupElement> = g.enumerate_elements().unwrap().collect();
        for _ in 0..4 {
            let gens: Vec<GroupElement> = (0..r.gen_range(0..=3)).map(|_| pick(&mut r, &elements)).collect();
            let q = quotient(g, &gens).unwrap();
            let closure = naive_subgroup_closure(g, &gens).unwrap();
            quotients += 1;
            let order_ok = q.quotient.order().unwrap() * BigInt::from(closure.len()) == g.order().unwrap();
            let mut same_ok = true;
            for x in &elements {
                for y in &elements {
                    let same = q.projection.apply(x).unwrap() == q.projection.apply(y).unwrap();
                    same_ok &= same == closure.contains(&x.sub(y).unwrap());
                }
            }
            if !order_ok || !same_ok {
                bad.push(format!("{g} / {gens:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{maps} maps compared, {quotients} quotients of {} groups; failures: {bad:?}", groups.len()),
    )
}

/// Number, check and time limit.
type Criterion = (u32, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(5)),
        (3, criterion_3, Duration::from_secs(30)),
        (4, criterion_4, Duration::from_secs(5)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(10)),
        (7, criterion_7, Duration::from_secs(600)),
        (8, criterion_8, Duration::from_secs(30)),
        (9, criterion_9, Duration::from_secs(300)),
        (10, criterion_10, Duration::from_secs(300)),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut unexpected = 0;
    for (n, run, limit) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= limit;
        let pass = out.pass && in_time;
        let known = KNOWN_DEFECTS.contains(&n);
        println!(
            "criterion {n}: {} ({:.2}s / limit {}s){} - {}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs(),
            if !pass && known { " [known defect]" } else { "" },
            out.detail
        );
        if !pass && !known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
