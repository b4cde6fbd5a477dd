//! The acceptance suite: thirteen end-to-end checks, each with a time budget.
//!
//! Every check returns a verdict and a one-line detail; errors raised while
//! running a check count as failures. A check that overruns its budget fails.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colimit::{collapse, is_eden, pushout, standard_pair, Subcomplex};
use crate::corpus::{generate, random_eden, random_map, random_poset, random_subcomplex, rng, CorpusSpec};
use crate::delta::Operator;
use crate::desing::{desing_oracle, desingularize, desingularize_with, verify_collapse_structure, TieBreak};
use crate::error::{Error, Result};
use crate::format::{
    map_from_json, map_to_json, poset_from_json, poset_to_json, set_from_json, set_to_json, subcomplex_from_json,
    subcomplex_to_json,
};
use crate::hom::enumerate_maps;
use crate::homology::{chains, homology, homology_of_map, iso_degrees};
use crate::iso::are_isomorphic;
use crate::poset::{nerve, pc, poset_iso};
use crate::quotient::descend;
use crate::sset::{simplex, FinSimpSet, NormalSimplex, SimpMap, SimplexId, StandardKind};
use crate::strom::{
    cobase_change_strom, lemma61_check, strom_from_barratt_eden, strom_sd2, verify_strom, StromStructure,
};
use crate::subdivision::{b_map, last_vertex, sd_iter, sd_map, Subdivision};

/// Committed f-vector of `D(Sd²(Δ[2]/∂Δ[2]))`.
pub const SUSPENDED_POLYGON_F_VECTOR: [usize; 3] = [14, 36, 24];

/// Above this many simplices, `homology_of_map` (dense Smith forms with
/// transforms) is skipped in favour of the mapping-cone flags alone.
const INDUCED_MATRIX_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct AcceptOptions {
    pub seed: u64,
    /// skip `Δ[3]/∂Δ[3]` in the unit check
    pub skip_slow: bool,
}


#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {} ({} ms of {} ms): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptReport {
    pub criteria: Vec<CriterionResult>,
}

impl AcceptReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

impl fmt::Display for AcceptReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        let n = self.criteria.iter().filter(|c| c.passed).count();
        write!(f, "{n}/{} criteria passed", self.criteria.len())
    }
}

type Check = fn(&AcceptOptions) -> Result<(bool, String)>;

const CRITERIA: [(&str, u64, Check); 13] = [
    ("sphere collapse", 1, sphere_collapse),
    ("once-subdivided collapse", 5, once_subdivided),
    ("suspended 12-gon", 30, suspended_polygon),
    ("b dichotomy", 60, b_dichotomy),
    ("sd creates edens", 60, sd_creates_edens),
    ("strom constructors", 120, strom_constructors),
    ("cobase-change closure", 120, cobase_closure),
    ("homotopy-cocartesian proxy", 60, cocartesian_proxy),
    ("unit homology iso", 300, unit_iso),
    ("collapse structure", 60, collapse_structure),
    ("desingularization universal property", 120, universal_property),
    ("poset bridge", 60, poset_bridge),
    ("kernel invariants", 60, kernel_invariants),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, opts: &AcceptOptions) -> Result<CriterionResult> {
    let (name, secs, check) =
        *CRITERIA.get(id.wrapping_sub(1)).ok_or_else(|| Error::Params(format!("no criterion {id}")))?;
    let budget = Duration::from_secs(secs);
    let start = Instant::now();
    let outcome = check(opts);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > budget {
        passed = false;
        detail = format!("over budget; {detail}");
    }
    Ok(CriterionResult { id, name, passed, detail, elapsed_ms: elapsed.as_millis(), budget_ms: budget.as_millis() })
}

pub fn run(opts: &AcceptOptions) -> AcceptReport {
    let criteria = (1..=CRITERIA.len()).map(|id| run_criterion(id, opts).expect("known criterion")).collect();
    AcceptReport { criteria }
}

/// `Δ[n]` with a standard subset collapsed to a point.
pub fn standard_collapse(kind: StandardKind, n: usize, k: Option<usize>) -> Result<Arc<FinSimpSet>> {
    let (_, a) = standard_pair(kind, n, k)?;
    Ok(collapse(&a)?.apex)
}

fn point() -> Arc<FinSimpSet> {
    Arc::new(simplex(0))
}

fn iso(x: &Arc<FinSimpSet>, y: &Arc<FinSimpSet>) -> bool {
    are_isomorphic(x, y).is_some()
}

fn tally(failures: &[String], total: usize, what: &str) -> (bool, String) {
    if failures.is_empty() {
        (true, format!("{total} {what}"))
    } else {
        (false, format!("{} of {total} {what} failed: {}", failures.len(), failures.join("; ")))
    }
}

fn corpus(opts: &AcceptOptions, count: usize) -> Result<Vec<Arc<FinSimpSet>>> {
    Ok(generate(&CorpusSpec::new(opts.seed, count))?.into_iter().map(Arc::new).collect())
}

fn nonsingular_corpus(opts: &AcceptOptions, count: usize) -> Result<Vec<Arc<FinSimpSet>>> {
    // every other corpus item is non-singular
    Ok(corpus(opts, 2 * count)?.into_iter().filter(|x| x.is_nonsingular()).take(count).collect())
}

/// `Sd A` as a simplicial subset of `Sd X`.
pub fn subdivided_subset(a: &Subcomplex) -> Result<(Subdivision, Subcomplex)> {
    let (a_set, a_inc) = a.inclusion();
    let sx = Subdivision::new(a.ambient())?;
    let sa = Subdivision::new(&a_set)?;
    let image = Subcomplex::image(&sa.map(&a_inc, &sx)?);
    Ok((sx, image))
}

fn sphere_collapse(_: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 1..=3 {
        let d = desingularize(&standard_collapse(StandardKind::Boundary, n, None)?)?;
        if !iso(&d.dx, &point()) {
            failures.push(format!("n = {n}: D has counts {:?}", d.dx.counts()));
        }
    }
    Ok(tally(&failures, 3, "spheres D(Δ[n]/∂Δ[n]) ≅ Δ[0]"))
}

fn once_subdivided(_: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let d1 = Arc::new(simplex(1));
    for n in 2..=3 {
        let s = sd_iter(&standard_collapse(StandardKind::Boundary, n, None)?, 1)?;
        let d = desingularize(&s)?;
        if !iso(&d.dx, &d1) {
            failures.push(format!("n = {n}: D Sd has counts {:?}", d.dx.counts()));
        }
    }
    let s1 = sd_iter(&standard_collapse(StandardKind::Boundary, 1, None)?, 1)?;
    let d = desingularize(&s1)?;
    if !s1.is_nonsingular() || !d.steps.is_empty() || !d.eta.is_isomorphism() {
        failures.push("Sd(Δ[1]/∂Δ[1]) is not left alone by D".into());
    }
    Ok(tally(&failures, 3, "cases"))
}

fn suspended_polygon(_: &AcceptOptions) -> Result<(bool, String)> {
    let x = sd_iter(&standard_collapse(StandardKind::Boundary, 2, None)?, 2)?;
    let d = desingularize(&x)?;
    let h = homology(&d.dx);
    let fv = d.dx.f_vector();
    let chi = d.dx.euler_characteristic();
    let groups: Vec<String> = (0..3).map(|n| h.group(n)).collect();
    let ok = groups == ["Z", "0", "Z"]
        && h.betti.len() == 3
        && chi == 2
        && h.euler_characteristic() == 2
        && fv.first() == Some(&14)
        && fv == SUSPENDED_POLYGON_F_VECTOR;
    Ok((ok, format!("H = ({}), χ = {chi}, f-vector {fv:?}", groups.join(", "))))
}

fn b_dichotomy(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let sets = corpus(opts, 50)?;
    let singular = sets.iter().filter(|x| !x.is_nonsingular()).count();
    for (k, x) in sets.iter().enumerate() {
        let b = b_map(x)?;
        if b.is_isomorphism() != x.is_nonsingular() {
            failures.push(format!("item {k}"));
        }
    }
    let (ok, detail) = tally(&failures, sets.len(), "corpus sets");
    Ok((ok, format!("{detail} ({singular} singular)")))
}

fn sd_creates_edens(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut r = rng(opts.seed.wrapping_add(1));
    let mut failures = Vec::new();
    let sets = corpus(opts, 50)?;
    for (k, x) in sets.iter().enumerate() {
        let a = random_subcomplex(&mut r, x);
        let (inc_set, inc) = a.inclusion();
        let _ = inc_set;
        let sd_a = Subcomplex::image(&sd_map(&inc)?);
        if !is_eden(&sd_a) {
            failures.push(format!("item {k}"));
        }
    }
    Ok(tally(&failures, sets.len(), "pairs"))
}

fn strom_report(label: &str, s: Result<StromStructure>, failures: &mut Vec<String>) -> Result<()> {
    let rep = verify_strom(&s?)?;
    if !rep.passed() {
        failures.push(format!("{label}: {:?}", rep.as_array()));
    }
    Ok(())
}

/// `(Δ[n], ∂Δ[n])` for `n <= 3` and all horns `(Δ[n], Λ^k[n])` for `1 <= n <= 3`.
pub fn standard_family() -> Result<Vec<(String, Arc<FinSimpSet>, Subcomplex)>> {
    let mut out = Vec::new();
    for n in 0..=3 {
        let (d, a) = standard_pair(StandardKind::Boundary, n, None)?;
        out.push((format!("∂Δ[{n}]"), d, a));
    }
    for n in 1..=3 {
        for k in 0..=n {
            let (d, a) = standard_pair(StandardKind::Horn, n, Some(k))?;
            out.push((format!("Λ^{k}[{n}]"), d, a));
        }
    }
    Ok(out)
}

fn strom_constructors(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut count = 0;
    // the standard pairs are not edens themselves, but their subdivisions are
    for (label, x, a) in standard_family()? {
        let (sx, sa) = subdivided_subset(&a)?;
        strom_report(&format!("B on Sd of {label}"), strom_from_barratt_eden(&sx.set, &sa), &mut failures)?;
        strom_report(&format!("Sd² of {label}"), strom_sd2(&x, &a), &mut failures)?;
        count += 2;
    }
    let mut r = rng(opts.seed.wrapping_add(2));
    for (k, x) in nonsingular_corpus(opts, 20)?.iter().enumerate() {
        let a = random_eden(&mut r, x);
        strom_report(&format!("B on corpus {k}"), strom_from_barratt_eden(x, &a), &mut failures)?;
        strom_report(&format!("Sd² on corpus {k}"), strom_sd2(x, &a), &mut failures)?;
        count += 2;
    }
    Ok(tally(&failures, count, "structures"))
}

/// Twenty Strøm structures with maps out of their sources into non-singular
/// sets: constant maps, the Strøm map itself, last-vertex maps and random maps.
pub fn cobase_instances(opts: &AcceptOptions) -> Result<Vec<(String, StromStructure, SimpMap)>> {
    let mut r = rng(opts.seed.wrapping_add(3));
    let ambients = nonsingular_corpus(opts, 20)?;
    let targets = nonsingular_corpus(&AcceptOptions { seed: opts.seed.wrapping_add(4), ..*opts }, 20)?;
    let mut out = Vec::new();
    for (k, x) in ambients.iter().enumerate() {
        // keep a few empty edens, otherwise retry for a non-empty one
        let mut a = random_eden(&mut r, x);
        for _ in 0..10 {
            if !a.is_empty() || k % 5 == 0 {
                break;
            }
            a = random_eden(&mut r, x);
        }
        let s = strom_sd2(x, &a)?;
        let (kind, f) = cobase_map(k % 4, &s, &a, &targets[k], &mut r)?;
        out.push((format!("corpus {k}, {kind}"), s, f));
    }
    Ok(out)
}

fn cobase_map(
    kind: usize,
    s: &StromStructure,
    a: &Subcomplex,
    c: &Arc<FinSimpSet>,
    r: &mut ChaCha8Rng,
) -> Result<(&'static str, SimpMap)> {
    let source = s.source();
    if source.is_empty() {
        return Ok(("from empty", SimpMap::from_empty(c).with_source(source)?));
    }
    match kind {
        0 => Ok(("to a point", SimpMap::to_point(source, &point())?)),
        1 => Ok(("along itself", s.k.clone())),
        _ => {
            // Sd² A -> Sd A -> A by last-vertex maps
            let (a_set, a_inc) = a.inclusion();
            let (sx, sd_a) = subdivided_subset(a)?;
            let (sd_a_set, _) = sd_a.inclusion();
            let to_sd_a = last_vertex(&sd_a_set)?.with_source(source)?;
            if kind == 2 {
                return Ok(("last vertex", to_sd_a));
            }
            let sa = Subdivision::new(&a_set)?;
            let theta = sd_a.corestrict(&sa.map(&a_inc, &sx)?, &sd_a_set)?;
            let to_a = sa.last_vertex()?.compose(&theta.inverse()?)?.compose(&to_sd_a)?;
            let g = random_map(r, &Arc::new((*a_set).clone()), c)
                .ok_or_else(|| Error::Internal("no map into a non-empty target".into()))?
                .with_source(&a_set)?;
            Ok(("random through A", g.compose(&to_a)?))
        }
    }
}

fn cobase_closure(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let instances = cobase_instances(opts)?;
    for (label, s, f) in &instances {
        let rep = verify_strom(&cobase_change_strom(s, f)?)?;
        if !rep.passed() {
            failures.push(format!("{label}: {:?}", rep.as_array()));
        }
        if !lemma61_check(s, f)? {
            failures.push(format!("{label}: B ⊔_W D(W ⊔_A C) ≇ D(B ⊔_A C)"));
        }
    }
    Ok(tally(&failures, instances.len(), "instances"))
}

fn cocartesian_proxy(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let instances = cobase_instances(opts)?;
    for (label, s, f) in &instances {
        let p = pushout(&s.k, f)?;
        let d = desingularize(&p.apex)?;
        let (h, hd) = (homology(&p.apex), homology(&d.dx));
        if h != hd {
            failures.push(format!("{label}: {h:?} vs {hd:?}"));
        }
    }
    Ok(tally(&failures, instances.len(), "pushouts"))
}

/// Whether `η : Sd² X -> D Sd² X` induces isomorphisms in every degree.
fn unit_is_iso(x: &Arc<FinSimpSet>) -> Result<bool> {
    let s2 = sd_iter(x, 2)?;
    let d = desingularize(&s2)?;
    let flags = iso_degrees(&d.eta);
    let mut ok = flags.iter().all(|&b| b) && homology(&s2) == homology(&d.dx);
    if ok && s2.total_nondegenerate() + d.dx.total_nondegenerate() <= INDUCED_MATRIX_LIMIT {
        ok = homology_of_map(&d.eta).is_isomorphism();
    }
    Ok(ok)
}

fn unit_iso(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut cases: Vec<(String, Arc<FinSimpSet>)> = vec![
        ("Δ[2]/∂Δ[2]".into(), standard_collapse(StandardKind::Boundary, 2, None)?),
        ("Δ[2]/Λ^0[2]".into(), standard_collapse(StandardKind::Horn, 2, Some(0))?),
    ];
    if !opts.skip_slow {
        cases.push(("Δ[3]/∂Δ[3]".into(), standard_collapse(StandardKind::Boundary, 3, None)?));
    }
    for (k, x) in corpus(opts, 10)?.into_iter().enumerate() {
        cases.push((format!("corpus {k}"), x));
    }
    for (label, x) in &cases {
        if !unit_is_iso(x)? {
            failures.push(label.clone());
        }
    }
    let (ok, detail) = tally(&failures, cases.len(), "units");
    Ok((ok, if opts.skip_slow { format!("{detail} (Δ[3]/∂Δ[3] skipped)") } else { detail }))
}

fn collapse_structure(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut pairs: Vec<(String, Subcomplex)> = Vec::new();
    let d2 = Arc::new(simplex(2));
    pairs.push(("(Δ[2], 01)".into(), Subcomplex::generated(&d2, [SimplexId::new(1, 0)])?));
    let (d, bd) = standard_pair(StandardKind::Boundary, 2, None)?;
    let (_, bd_inc) = bd.inclusion();
    let sdd = sd_map(&sd_map(&bd_inc)?)?;
    let _ = d;
    pairs.push(("(Sd²Δ[2], Sd²∂Δ[2])".into(), Subcomplex::image(&sdd)));
    let mut r = rng(opts.seed.wrapping_add(5));
    let mut found = 0;
    for (k, x) in nonsingular_corpus(opts, 40)?.iter().enumerate() {
        if found == 10 {
            break;
        }
        let a = random_eden(&mut r, x);
        if !a.is_empty() {
            pairs.push((format!("corpus {k}"), a));
            found += 1;
        }
    }
    for (label, a) in &pairs {
        let rep = verify_collapse_structure(a)?;
        if !rep.passed() {
            failures.push(format!("{label}: {rep:?}"));
        }
    }
    Ok(tally(&failures, pairs.len(), "eden pairs"))
}

fn universal_property(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let sets = corpus(opts, 50)?;
    for (k, x) in sets.iter().enumerate() {
        let d = desingularize(x)?;
        if !desingularize(&d.dx)?.steps.is_empty() || !d.dx.is_nonsingular() {
            failures.push(format!("item {k}: not idempotent"));
        }
        let first = desingularize_with(x, TieBreak::First)?;
        let last = desingularize_with(x, TieBreak::Last)?;
        if !iso(&first.dx, &last.dx) || !iso(&first.dx, &d.dx) {
            failures.push(format!("item {k}: tie-breaking changes the result"));
        }
    }
    // oracle agreement on every guard-sized input of a small corpus
    let small = generate(&CorpusSpec { seed: opts.seed, max_dim: 2, max_cells: 6, count: 30 })?;
    let mut oracle_runs = 0;
    for (k, x) in small.into_iter().enumerate() {
        let x = Arc::new(x);
        if x.total_nondegenerate() > 6 || x.dim().unwrap_or(0) > 2 {
            continue;
        }
        oracle_runs += 1;
        if !iso(&desingularize(&x)?.dx, &desing_oracle(&x)?) {
            failures.push(format!("small item {k}: disagrees with the oracle"));
        }
    }
    // every map into a non-singular corpus set factors through η
    let targets: Vec<&Arc<FinSimpSet>> = sets.iter().filter(|z| z.is_nonsingular()).take(5).collect();
    let mut maps = 0;
    for (k, x) in sets.iter().enumerate().take(10) {
        let d = desingularize(x)?;
        for z in &targets {
            for f in enumerate_maps(x, z, 50) {
                maps += 1;
                let g = descend(&d.eta, &f)?;
                if g.compose(&d.eta)? != f {
                    failures.push(format!("item {k}: a map does not factor"));
                }
            }
        }
    }
    let (ok, detail) = tally(&failures, sets.len(), "sets");
    Ok((ok, format!("{detail}; {oracle_runs} oracle runs; {maps} maps factored")))
}

fn poset_bridge(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut r = rng(opts.seed.wrapping_add(6));
    for k in 0..20 {
        let size = r.gen_range(1..=7);
        let p = random_poset(&mut r, size);
        if poset_iso(&pc(&nerve(&p)), &p).is_none() {
            failures.push(format!("poset {k}"));
        }
    }
    for (k, x) in corpus(opts, 20)?.iter().enumerate() {
        let d = desingularize(x)?;
        if poset_iso(&pc(x), &pc(&d.dx)).is_none() {
            failures.push(format!("corpus {k}"));
        }
    }
    Ok(tally(&failures, 40, "instances"))
}

/// `x·α·β = x·(αβ)` for all simplices of degree `<= 3` and operators between
/// `[0..3]`.
pub fn check_associativity(x: &FinSimpSet) -> Result<bool> {
    for n in 0..=3 {
        for s in x.simplices_of_degree(n) {
            for m in 0..=3 {
                for alpha in Operator::all(m, n) {
                    let xa = x.act(&s, &alpha)?;
                    for l in 0..=3 {
                        for beta in Operator::all(l, m) {
                            if x.act(&xa, &beta)? != x.act(&s, &alpha.compose(&beta)?)? {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every simplex of degree `n <= dim + 2` has exactly one normal form: the
/// degenerations `x·σ` of nondegenerate `x` by surjections `σ` are pairwise
/// distinct, are their own normal forms, and exhaust degree `n`.
pub fn check_normal_forms(x: &FinSimpSet) -> Result<bool> {
    let top = x.dim().map_or(0, |d| d + 2);
    for n in 0..=top {
        let listed = x.simplices_of_degree(n);
        let expected: usize = x.counts().iter().enumerate().map(|(k, &c)| c * binomial(n, k)).sum();
        let mut seen = std::collections::HashSet::new();
        for id in x.ids().filter(|id| id.dim <= n) {
            for sigma in Operator::surjections(n, id.dim) {
                let s = x.act(&NormalSimplex::nondegenerate(id), &sigma)?;
                if s.base != id || s.degeneracy != sigma || !seen.insert(s) {
                    return Ok(false);
                }
            }
        }
        if listed.len() != expected || seen.len() != expected || !listed.iter().all(|s| seen.contains(s)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The representing map `Δ[n] -> X` of a nondegenerate simplex.
pub fn representing_map(x: &Arc<FinSimpSet>, id: SimplexId) -> Result<SimpMap> {
    let d = Arc::new(simplex(id.dim));
    let images = d
        .counts()
        .iter()
        .enumerate()
        .map(|(m, &c)| {
            (0..c)
                .map(|i| {
                    let face = Operator::face_from_set(id.dim, d.vertices(SimplexId::new(m, i)))?;
                    x.act(&NormalSimplex::nondegenerate(id), &face)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimpMap::new(d, x.clone(), images)
}

/// `is_embedded` agrees with injectivity of the representing map.
pub fn check_embeddedness(x: &Arc<FinSimpSet>) -> Result<bool> {
    for id in x.ids() {
        if x.is_embedded(id)? != representing_map(x, id)?.is_degreewise_injective() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sets, maps, subsets and posets survive a trip through their file formats
/// with identical bytes.
pub fn check_round_trips(x: &Arc<FinSimpSet>, r: &mut ChaCha8Rng) -> Result<bool> {
    let text = set_to_json(x);
    let back = Arc::new(set_from_json(&text)?);
    if *back != **x || set_to_json(&back) != text {
        return Ok(false);
    }
    let a = random_subcomplex(r, x);
    let a_text = subcomplex_to_json(&a, "x.json");
    if subcomplex_from_json(&a_text, x)?.members() != a.members() {
        return Ok(false);
    }
    let (a_set, inc) = a.inclusion();
    let m_text = map_to_json(&inc, "a.json", "x.json");
    if map_from_json(&m_text, &a_set, x)? != inc {
        return Ok(false);
    }
    let p = pc(x);
    Ok(poset_iso(&poset_from_json(&poset_to_json(&p, true))?, &p).is_some()
        && poset_from_json(&poset_to_json(&p, false))? == p)
}

fn kernel_invariants(opts: &AcceptOptions) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut sets: Vec<(String, Arc<FinSimpSet>)> = Vec::new();
    for n in 0..=3 {
        sets.push((format!("Δ[{n}]"), Arc::new(simplex(n))));
        if n > 0 {
            sets.push((format!("Δ[{n}]/∂Δ[{n}]"), standard_collapse(StandardKind::Boundary, n, None)?));
        }
    }
    for (k, x) in corpus(opts, 20)?.into_iter().enumerate() {
        sets.push((format!("corpus {k}"), x));
    }
    let mut r = rng(opts.seed.wrapping_add(7));
    for (label, x) in &sets {
        let checks = [
            ("associativity", check_associativity(x)?),
            ("normal forms", check_normal_forms(x)?),
            ("embeddedness", check_embeddedness(x)?),
            ("∂∂ = 0", chains(x).is_complex() && chains(&*sd_iter(x, 1)?).is_complex()),
            ("round trip", check_round_trips(x, &mut r)?),
        ];
        for (what, ok) in checks {
            if !ok {
                failures.push(format!("{label}: {what}"));
            }
        }
    }
    // negative control: a face table with a face out of range is refused
    let corrupted = r#"{"counts": [1, 1], "dim": 1, "faces": {"1/0/0": "0/3 : 0", "1/0/1": "0/0 : 0"}, "labels": {}}"#;
    if set_from_json(corrupted).is_ok() {
        failures.push("a corrupted face table was accepted".into());
    }
    Ok(tally(&failures, sets.len(), "sets"))
}
