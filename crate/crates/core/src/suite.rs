//! End-to-end property suite over a seeded corpus.
//!
//! The corpus holds the named fixtures and seeded shelled trees of dimension
//! 1, 2 and 3 with at most 30 vertices each. Every criterion reports a
//! pass/fail line, a short detail string and the list of failing cases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Complex;
use crate::construction::bounds::closed_form_twice_k;
use crate::construction::{bounds, grow_edges, localize, mapping_telescope, Localization, RayPolicy};
use crate::homology::{homology, induced_map_homology, Coefficients};
use crate::verify::{
    check_pseudofibration_with, check_telescope_lemmas, collapse_onto, degree_audit, generate, surjective_on_simplices,
    FiberStatus, GeneratorSpec, DEFAULT_RESTARTS,
};
use crate::{Error, Result};

/// Largest vertex count of an input tree.
pub const MAX_INPUT_VERTICES: usize = 30;

/// Above this many vertices a grown complex is checked through its census only.
pub const GROWTH_MATERIALIZE_LIMIT: usize = 50_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Full,
    /// A reduced corpus for quick runs.
    Tiny,
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Scale::Full),
            "tiny" => Ok(Scale::Tiny),
            _ => Err(format!("unknown scale {s:?}; expected full or tiny")),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Full => "full",
            Scale::Tiny => "tiny",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub scale: Scale,
}

/// How many cases each criterion looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub trees_per_dim: usize,
    /// Largest number of tetrahedra in a 3-dimensional tree.
    pub max_tets: usize,
    pub homology_per_dim: usize,
    pub fibers_per_dim: usize,
    pub lemma_intermediates: usize,
    pub lemma_subsets: usize,
    pub growth_per_dim: usize,
    pub telescopes: (usize, usize),
    pub stability_runs: usize,
}

impl Scale {
    pub fn plan(self) -> Plan {
        match self {
            Scale::Full => Plan {
                trees_per_dim: 200,
                max_tets: 4,
                homology_per_dim: 50,
                fibers_per_dim: 20,
                lemma_intermediates: 25,
                lemma_subsets: 4,
                growth_per_dim: 20,
                telescopes: (10, 3),
                stability_runs: 20,
            },
            Scale::Tiny => Plan {
                trees_per_dim: 12,
                max_tets: 2,
                homology_per_dim: 3,
                fibers_per_dim: 2,
                lemma_intermediates: 5,
                lemma_subsets: 4,
                growth_per_dim: 2,
                telescopes: (2, 1),
                stability_runs: 4,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub dim: usize,
    /// Position among the trees of this dimension, `None` for fixtures.
    pub index: Option<usize>,
    pub spec: GeneratorSpec,
}

impl CorpusEntry {
    pub fn complex(&self) -> Result<Complex> {
        generate(&self.spec)
    }

    fn size(&self) -> usize {
        match self.spec {
            GeneratorSpec::ShelledTree { size, .. } => size,
            _ => 0,
        }
    }
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn fixtures_of_dim(dim: usize) -> &'static [&'static str] {
    match dim {
        1 => &["circle_3", "path_8", "star_6"],
        2 => &["sphere2_4", "torus7", "rp2_6", "klein8"],
        _ => &[],
    }
}

fn fixture_entry(name: &str, dim: usize) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), dim, index: None, spec: GeneratorSpec::Fixture { name: name.to_string() } }
}

/// Tree `i` of dimension `dim`. Sizes cycle through every admissible value.
pub fn tree_entry(cfg: &SuiteConfig, dim: usize, i: usize) -> CorpusEntry {
    let max = if dim == 3 { cfg.scale.plan().max_tets } else { MAX_INPUT_VERTICES - dim };
    let size = 1 + i % max;
    let seed = mix(cfg.seed, dim as u64, i as u64);
    CorpusEntry {
        name: format!("tree{dim}_{size}#{i}"),
        dim,
        index: Some(i),
        spec: GeneratorSpec::ShelledTree { dim, size, seed },
    }
}

/// Fixtures, then trees, dimension by dimension.
pub fn corpus(cfg: &SuiteConfig) -> Vec<CorpusEntry> {
    let plan = cfg.scale.plan();
    (1..=3)
        .flat_map(|dim| {
            fixtures_of_dim(dim)
                .iter()
                .map(move |name| fixture_entry(name, dim))
                .chain((0..plan.trees_per_dim).map(move |i| tree_entry(cfg, dim, i)))
        })
        .collect()
}

fn in_subset(e: &CorpusEntry, per_dim: usize) -> bool {
    e.index.is_none_or(|i| i < per_dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: u8, name: &str, failures: Vec<String>, detail: String) -> Self {
        Self { id, name: name.to_string(), passed: failures.is_empty(), detail, failures }
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] criterion {:>2} {}: {}", self.id, self.name, self.detail)?;
        for failure in self.failures.iter().take(5) {
            write!(f, "\n       - {failure}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n       - ... {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub scale: Scale,
    pub criteria: Vec<CriterionOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CriterionOutcome> {
        self.criteria.iter().filter(|c| !c.passed)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "bound constants"),
    (2, "degree bound"),
    (3, "dimension preservation"),
    (4, "homology preservation"),
    (5, "fiber certification"),
    (6, "surjectivity"),
    (7, "telescope lemmas"),
    (8, "exact-degree growth"),
    (9, "mapping telescope"),
    (10, "truncation stability"),
];

fn criterion_name(id: u8) -> &'static str {
    CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n)
}

/// Runs every criterion.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_criteria(cfg, &CRITERIA.map(|(id, _)| id))
}

/// Runs the listed criteria, in the order given. Criteria 2 to 6 share one
/// pass over the corpus.
pub fn run_criteria(cfg: &SuiteConfig, ids: &[u8]) -> SuiteReport {
    let shared = if ids.iter().any(|id| (2..=6).contains(id)) { Some(corpus_pass(cfg)) } else { None };
    let criteria = ids
        .iter()
        .map(|&id| match id {
            1 => criterion_bounds(),
            2..=6 => shared.as_ref().expect("corpus pass").outcome(id),
            7 => criterion_lemmas(cfg),
            8 => criterion_growth(cfg),
            9 => criterion_mapping_telescope(cfg),
            10 => criterion_stability(cfg),
            _ => CriterionOutcome::new(id, "unknown", vec![format!("no criterion {id}")], String::new()),
        })
        .collect();
    SuiteReport { seed: cfg.seed, scale: cfg.scale, criteria }
}

fn criterion_bounds() -> CriterionOutcome {
    let mut failures = Vec::new();
    for (n, k, m) in [(1, 3, 4), (2, 12, 22)] {
        match bounds(n) {
            Ok(b) if (b.k, b.m) == (k, m) => {}
            other => failures.push(format!("bounds({n}) = {other:?}, expected K = {k}, M = {m}")),
        }
    }
    for n in 1..=20 {
        let b = match bounds(n) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("bounds({n}): {e}"));
                continue;
            }
        };
        if closed_form_twice_k(n) != Some(2 * b.k as u128) {
            failures.push(format!("n = {n}: 2K = {} but closed form gives {:?}", 2 * b.k, closed_form_twice_k(n)));
        }
        if b.m != 2 * (b.k - 1) {
            failures.push(format!("n = {n}: M = {} is not 2(K - 1)", b.m));
        }
    }
    let m20 = bounds(20).map(|b| b.m.to_string()).unwrap_or_default();
    CriterionOutcome::new(1, criterion_name(1), failures, format!("n = 1..=20 exact, M_20 = {m20}"))
}

/// Findings of one localization in the shared pass.
#[derive(Debug, Default)]
struct RunRecord {
    name: String,
    error: Option<String>,
    degree: Option<(usize, usize, Vec<String>)>,
    dims: (Option<usize>, Option<usize>),
    homology: Option<Vec<String>>,
    fibers: Option<(usize, Vec<String>)>,
    unhit: Vec<String>,
    localize_time: Duration,
}

struct CorpusPass {
    runs: usize,
    per_dim: BTreeMap<usize, usize>,
    records: Vec<RunRecord>,
}

fn corpus_pass(cfg: &SuiteConfig) -> CorpusPass {
    let plan = cfg.scale.plan();
    let entries = corpus(cfg);
    let mut per_dim = BTreeMap::new();
    for e in &entries {
        *per_dim.entry(e.dim).or_insert(0) += 1;
    }
    let records = entries
        .par_iter()
        .map(|e| {
            let mut rec = RunRecord { name: e.name.clone(), ..RunRecord::default() };
            if let Err(err) = examine(e, cfg, &plan, &mut rec) {
                rec.error = Some(err.to_string());
            }
            rec
        })
        .collect();
    CorpusPass { runs: entries.len(), per_dim, records }
}

fn examine(e: &CorpusEntry, cfg: &SuiteConfig, plan: &Plan, rec: &mut RunRecord) -> Result<()> {
    let s = e.complex()?;
    let fiber_seed =
        in_subset(e, plan.fibers_per_dim).then(|| mix(cfg.seed, 5, e.index.map_or(u64::MAX, |i| i as u64)));
    examine_complex(&e.name, &s, in_subset(e, plan.homology_per_dim), fiber_seed, rec)
}

/// Every per-run check of the corpus pass on one input: degree bound,
/// dimension, homology and induced maps, fibers and surjectivity. Returns
/// the failures.
pub fn check_localization(name: &str, s: &Complex, seed: u64) -> Result<Vec<String>> {
    let mut rec = RunRecord { name: name.to_string(), ..RunRecord::default() };
    examine_complex(name, s, true, Some(seed), &mut rec)?;
    let mut out = Vec::new();
    if let Some((n, _, violators)) = rec.degree {
        out.extend(violators.iter().map(|v| format!("{name}: {v} exceeds M_{n}")));
    }
    if rec.dims.0 != rec.dims.1 {
        out.push(format!("{name}: dim S = {:?}, dim T = {:?}", rec.dims.0, rec.dims.1));
    }
    out.extend(rec.homology.into_iter().flatten().map(|f| format!("{name}: {f}")));
    out.extend(rec.fibers.into_iter().flat_map(|(_, f)| f));
    out.extend(rec.unhit);
    Ok(out)
}

fn examine_complex(
    name: &str,
    s: &Complex,
    check_homology: bool,
    fiber_seed: Option<u64>,
    rec: &mut RunRecord,
) -> Result<()> {
    let started = Instant::now();
    let loc = localize(s, &RayPolicy::Default)?;
    let t = &loc.complex;
    rec.dims = (s.dim(), t.dim());
    let n = s.dim().unwrap_or(0).max(1);
    let audit = degree_audit(t, bounds(n)?.m as usize);
    rec.degree = Some((n, audit.max_degree, audit.violators));
    rec.localize_time = started.elapsed();

    if check_homology {
        rec.homology = Some(homology_findings(s, &loc)?);
    }
    let tower = &loc.tower;
    if let Some(seed) = fiber_seed {
        let mut checked = 0;
        let mut failures = Vec::new();
        for k in 0..=tower.top() {
            let mut maps = vec![(format!("p_{k}"), tower.projection(k)?)];
            if let Some(p) = tower.prime_projection(k) {
                maps.push((format!("p_{k}'"), p?));
            }
            for (label, map) in maps {
                let report = check_pseudofibration_with(&map, DEFAULT_RESTARTS, seed);
                checked += report.entries.len();
                for f in report.failures() {
                    let status = match f.status {
                        FiberStatus::AcyclicOnly => "acyclic only",
                        _ => "not acyclic",
                    };
                    failures.push(format!("{}: {label} over {}: {status}", name, f.simplex));
                }
                rec.unhit.extend(report.unhit.iter().map(|u| format!("{}: {label} misses {u}", name)));
            }
        }
        rec.fibers = Some((checked, failures));
    } else {
        for k in 0..=tower.top() {
            if !surjective_on_simplices(&tower.projection(k)?) {
                rec.unhit.push(format!("{}: p_{k} is not surjective on simplices", name));
            }
        }
    }
    Ok(())
}

fn homology_findings(s: &Complex, loc: &Localization) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let (hs, ht) = (homology(s, false), homology(&loc.complex, false));
    if hs != ht {
        out.push(format!("H(S) = {hs} but H(T) = {ht}"));
    }
    for coeff in [Coefficients::Rationals, Coefficients::Mod(2)] {
        let induced = induced_map_homology(&loc.projection, coeff)?;
        for d in induced.dims.iter().filter(|d| !d.isomorphism) {
            out.push(format!(
                "over {coeff}, p_* in dim {} has rank {} between ranks {} and {}",
                d.dim, d.rank, d.source_rank, d.target_rank
            ));
        }
    }
    Ok(out)
}

impl CorpusPass {
    fn errors(&self) -> Vec<String> {
        self.records.iter().filter_map(|r| r.error.as_ref().map(|e| format!("{}: {e}", r.name))).collect()
    }

    fn outcome(&self, id: u8) -> CriterionOutcome {
        let mut failures = self.errors();
        let counts: Vec<String> = self.per_dim.iter().map(|(d, c)| format!("{c} in dim {d}")).collect();
        let detail = match id {
            2 => {
                let mut worst: BTreeMap<usize, usize> = BTreeMap::new();
                for r in &self.records {
                    if let Some((n, max, violators)) = &r.degree {
                        let w = worst.entry(*n).or_insert(0);
                        *w = (*w).max(*max);
                        failures.extend(violators.iter().map(|v| format!("{}: {v} exceeds M_{n}", r.name)));
                    }
                }
                let maxes: Vec<String> = worst
                    .iter()
                    .map(|(n, m)| format!("max degree {m} <= M_{n} = {}", bounds(*n).map_or(0, |b| b.m)))
                    .collect();
                let spent: Duration = self.records.iter().map(|r| r.localize_time).sum();
                format!(
                    "{} runs ({}); {}; localize and audit {:.1}s summed over runs",
                    self.runs,
                    counts.join(", "),
                    maxes.join(", "),
                    spent.as_secs_f64()
                )
            }
            3 => {
                for r in self.records.iter().filter(|r| r.error.is_none()) {
                    if r.dims.0 != r.dims.1 {
                        failures.push(format!("{}: dim S = {:?}, dim T = {:?}", r.name, r.dims.0, r.dims.1));
                    }
                }
                format!("{} runs", self.runs)
            }
            4 => {
                let mut runs = 0;
                for r in &self.records {
                    if let Some(h) = &r.homology {
                        runs += 1;
                        failures.extend(h.iter().map(|f| format!("{}: {f}", r.name)));
                    }
                }
                format!("{runs} runs, integer homology plus induced maps over Q and Z/2")
            }
            5 => {
                let (mut runs, mut fibers) = (0, 0);
                for r in &self.records {
                    if let Some((checked, f)) = &r.fibers {
                        runs += 1;
                        fibers += checked;
                        failures.extend(f.iter().cloned());
                    }
                }
                format!("{runs} runs, {fibers} fibers, {DEFAULT_RESTARTS} restarts")
            }
            _ => {
                for r in &self.records {
                    failures.extend(r.unhit.iter().cloned());
                }
                format!("{} runs, every tower level", self.runs)
            }
        };
        CriterionOutcome::new(id, criterion_name(id), failures, detail)
    }
}

fn criterion_lemmas(cfg: &SuiteConfig) -> CriterionOutcome {
    let plan = cfg.scale.plan();
    let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, 7, 0));
    let mut pool: Vec<CorpusEntry> = fixtures_of_dim(2).iter().map(|n| fixture_entry(n, 2)).collect();
    let (mut i2, mut i3) = (0, 0);
    while pool.len() < plan.lemma_intermediates {
        if pool.len().is_multiple_of(2) {
            pool.push(tree_entry(cfg, 2, i2));
            i2 += 1;
        } else {
            pool.push(tree_entry(cfg, 3, i3));
            i3 += 1;
        }
    }
    pool.truncate(plan.lemma_intermediates);
    let draws: Vec<(CorpusEntry, u64, u64)> = pool.into_iter().map(|e| (e, rng.gen(), rng.gen())).collect();
    let results: Vec<Result<(String, usize, Vec<String>)>> = draws
        .par_iter()
        .map(|(e, pick, seed)| {
            let s = e.complex()?;
            let loc = localize(&s, &RayPolicy::Default)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*pick);
            let top = loc.tower.top();
            let k = rng.gen_range(1..top.max(2));
            let simplices: Vec<_> = s.simplices_of_dim(k + 1).collect();
            let simplex = simplices.choose(&mut rng).ok_or(Error::EmptyComplex)?;
            let t = loc.tower.level(k).induced_on_bases(&simplex.base_indices());
            let report = check_telescope_lemmas(&t, k, &loc.tower.ray_bounds()[..k], plan.lemma_subsets, *seed)?;
            let where_ = format!("{}: T_{k}|{} (seed {seed})", e.name, s.describe(simplex));
            let mut failures = Vec::new();
            if !report.contains_input {
                failures.push(format!("{where_}: T is not contained in its telescope"));
            }
            for z in &report.restriction_failures {
                failures.push(format!("{where_}: restriction to {z:?} does not commute"));
            }
            if !report.dimension_bound {
                failures
                    .push(format!("{where_}: dim {:?} exceeds dim {:?} + 1", report.telescope_dim, report.input_dim));
            }
            Ok((where_, report.samples.len(), failures))
        })
        .collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for r in results {
        match r {
            Ok((_, n, f)) => {
                pairs += n;
                failures.extend(f);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let detail = format!("{pairs} (T, Z) pairs from {} intermediates", plan.lemma_intermediates);
    CriterionOutcome::new(7, criterion_name(7), failures, detail)
}

#[derive(Default)]
struct GrowthFindings {
    failures: Vec<String>,
    full_materializations: usize,
    partial_materializations: usize,
}

fn criterion_growth(cfg: &SuiteConfig) -> CriterionOutcome {
    let plan = cfg.scale.plan();
    let entries: Vec<CorpusEntry> =
        (1..=3).flat_map(|dim| (0..plan.growth_per_dim).map(move |i| tree_entry(cfg, dim, i))).collect();
    let results: Vec<GrowthFindings> = entries
        .par_iter()
        .map(|e| {
            let mut g = GrowthFindings::default();
            if let Err(err) = growth_case(e, cfg, &mut g) {
                g.failures.push(format!("{}: {err}", e.name));
            }
            g
        })
        .collect();
    let mut failures = Vec::new();
    let (mut full, mut partial) = (0, 0);
    for g in results {
        failures.extend(g.failures);
        full += g.full_materializations;
        partial += g.partial_materializations;
    }
    let detail = format!(
        "{} runs, rounds = M_n + 3; census on all, simulated in full on {full}, up to the last round under {} vertices on {partial}",
        entries.len(),
        GROWTH_MATERIALIZE_LIMIT
    );
    CriterionOutcome::new(8, criterion_name(8), failures, detail)
}

fn growth_case(e: &CorpusEntry, cfg: &SuiteConfig, g: &mut GrowthFindings) -> Result<()> {
    let s = e.complex()?;
    let t = localize(&s, &RayPolicy::Default)?.complex;
    let m = bounds(e.dim)?.m as usize;
    let rounds = m + 3;
    let grown = grow_edges(&t, m, rounds)?;
    for class in grown.classes() {
        if class.completion_round <= rounds && class.degree != m {
            g.failures.push(format!("{}: class {:?} ends with degree {} != {m}", e.name, class.kind, class.degree));
        }
    }
    let (collapses, rest) = grown.collapse_pendants()?;
    if collapses != grown.pendant_count() || rest != t {
        g.failures.push(format!("{}: pendant collapse does not return T", e.name));
    }
    // Simulate the largest prefix of rounds that fits in memory. Births in a
    // round do not depend on how many rounds follow.
    let limit = BigUint::from(GROWTH_MATERIALIZE_LIMIT);
    let mut total = BigUint::from(t.counts().first().copied().unwrap_or(0));
    let mut r = 0;
    while r < rounds && &total + &grown.births()[r + 1] <= limit {
        total += &grown.births()[r + 1];
        r += 1;
    }
    let prefix = if r == rounds { grown.clone() } else { grow_edges(&t, m, r)? };
    if r == rounds {
        g.full_materializations += 1;
    } else {
        g.partial_materializations += 1;
    }
    let mat = prefix.materialize(GROWTH_MATERIALIZE_LIMIT)?;
    if BigUint::from(mat.complex.vertex_count()) != prefix.vertex_count() {
        g.failures.push(format!("{}: simulation and census disagree on the vertex count", e.name));
    }
    let mut degree = vec![0usize; mat.complex.vertex_count()];
    for edge in mat.complex.simplices(1) {
        degree[edge[0] as usize] += 1;
        degree[edge[1] as usize] += 1;
    }
    let core_n = mat.core_vertices.len();
    let mut core_degree = vec![0usize; core_n];
    for edge in mat.core.simplices(1) {
        core_degree[edge[0] as usize] += 1;
        core_degree[edge[1] as usize] += 1;
    }
    for (v, &d) in degree.iter().enumerate() {
        let completion = if v < core_n { m - core_degree[v] } else { mat.birth_round(v as u32) + m - 1 };
        if d > m || (completion <= r && d != m) {
            g.failures.push(format!("{}: vertex {v} has degree {d} after {r} rounds (M = {m})", e.name));
            break;
        }
    }
    let back = collapse_onto(&mat.complex, |_, s| s.iter().all(|&v| (v as usize) < core_n), 1, mix(cfg.seed, 8, 0));
    if !back.collapsible() {
        g.failures
            .push(format!("{}: grown complex does not collapse onto T ({} simplices left)", e.name, back.remaining));
    }
    Ok(())
}

fn criterion_mapping_telescope(cfg: &SuiteConfig) -> CriterionOutcome {
    let plan = cfg.scale.plan();
    let (n2, n3) = plan.telescopes;
    let mut entries: Vec<CorpusEntry> = fixtures_of_dim(2).iter().map(|n| fixture_entry(n, 2)).collect();
    entries.extend((0..n2).map(|i| tree_entry(cfg, 2, i)));
    entries.extend((0..n3).map(|i| tree_entry(cfg, 3, i)));
    let results: Vec<Result<(usize, usize, usize, Vec<String>)>> = entries
        .par_iter()
        .map(|e| {
            let s = e.complex()?;
            let loc = localize(&s, &RayPolicy::Default)?;
            let mt = mapping_telescope(&loc.tower)?;
            let mut failures = Vec::new();
            let (hs, hm) = (homology(&s, false), homology(&mt.complex, false));
            if hs != hm {
                failures.push(format!("{}: H(S) = {hs} but H(mapping telescope) = {hm}", e.name));
            }
            let b = bounds(e.dim)?;
            let bound = (b.m + 2 * b.k) as usize;
            let max = mt.complex.edge_degrees().values().copied().max().unwrap_or(0);
            if max > bound {
                failures.push(format!("{}: max degree {max} exceeds M + 2K = {bound}", e.name));
            }
            Ok((e.dim, max, bound, failures))
        })
        .collect();
    let mut failures = Vec::new();
    let mut worst: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in results {
        match r {
            Ok((dim, max, bound, f)) => {
                let w = worst.entry(dim).or_insert((0, bound));
                w.0 = w.0.max(max);
                failures.extend(f);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let degrees: Vec<String> =
        worst.iter().map(|(d, (max, bound))| format!("dim {d}: max degree {max} <= {bound}")).collect();
    let detail = format!("{} runs; {}", entries.len(), degrees.join(", "));
    CriterionOutcome::new(9, criterion_name(9), failures, detail)
}

/// The corpus entries used for the truncation comparison, spread over the
/// three dimensions. Three-dimensional runs use trees of at most two
/// tetrahedra, since doubling every bound multiplies the output size by about
/// eight.
fn stability_entries(cfg: &SuiteConfig, runs: usize) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut next = [0usize; 4];
    let mut dim = 1;
    while out.len() < runs {
        loop {
            let e = tree_entry(cfg, dim, next[dim]);
            next[dim] += 1;
            if dim < 3 || e.size() <= 2 {
                out.push(e);
                break;
            }
        }
        dim = dim % 3 + 1;
    }
    out
}

fn criterion_stability(cfg: &SuiteConfig) -> CriterionOutcome {
    let plan = cfg.scale.plan();
    let entries = stability_entries(cfg, plan.stability_runs);
    let results: Vec<Result<(usize, usize, Vec<String>)>> = entries.par_iter().map(stability_case).collect();
    let mut failures = Vec::new();
    let (mut compared, mut boundary_changes) = (0, 0);
    for r in results {
        match r {
            Ok((c, b, f)) => {
                compared += c;
                boundary_changes += b;
                failures.extend(f);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let detail = format!(
        "{} runs, {compared} interior vertices compared, {boundary_changes} vertices on the truncation boundary gain edges",
        entries.len()
    );
    CriterionOutcome::new(10, criterion_name(10), failures, detail)
}

/// Compares the default run with one where every `R_k` is doubled.
/// Degrees are compared at vertices strictly inside the smaller truncation;
/// a vertex with some coordinate equal to `R_k` is an end of a truncated ray
/// and gains its next ray edge in the larger run.
fn stability_case(e: &CorpusEntry) -> Result<(usize, usize, Vec<String>)> {
    let s = e.complex()?;
    let small = localize(&s, &RayPolicy::Default)?;
    let bounds_small = small.tower.ray_bounds().to_vec();
    let doubled = RayPolicy::Explicit(bounds_small.iter().map(|r| 2 * r).collect());
    let large = localize(&s, &doubled)?;
    let mut failures = Vec::new();
    let (h_small, h_large) = (homology(&small.complex, false), homology(&large.complex, false));
    if h_small != h_large {
        failures.push(format!("{}: homology changes from {h_small} to {h_large}", e.name));
    }
    let d_small = small.complex.edge_degrees();
    let d_large = large.complex.edge_degrees();
    let (mut compared, mut boundary) = (0, 0);
    for (v, d) in &d_small {
        let interior = v.coords.iter().zip(&bounds_small).all(|(c, r)| c < r);
        match d_large.get(v) {
            None => failures.push(format!("{}: vertex {} disappears", e.name, small.complex.label(v))),
            Some(dl) if interior => {
                compared += 1;
                if dl != d {
                    failures.push(format!("{}: degree of {} changes from {d} to {dl}", e.name, small.complex.label(v)));
                }
            }
            Some(dl) => boundary += usize::from(dl != d),
        }
    }
    Ok((compared, boundary, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_respects_the_vertex_cap() {
        let cfg = SuiteConfig { seed: 3, scale: Scale::Full };
        let entries = corpus(&cfg);
        assert_eq!(entries.iter().filter(|e| e.index.is_some()).count(), 600);
        for e in entries.iter().filter(|e| e.dim < 3 || e.index.is_none_or(|i| i < 8)) {
            let c = e.complex().unwrap();
            assert!(c.counts()[0] <= MAX_INPUT_VERTICES, "{}", e.name);
            assert_eq!(c.dim(), Some(e.dim));
        }
        assert_eq!(corpus(&cfg), corpus(&cfg));
        assert_ne!(tree_entry(&cfg, 2, 0).spec, tree_entry(&SuiteConfig { seed: 4, ..cfg }, 2, 0).spec);
    }

    #[test]
    fn scale_parses() {
        assert_eq!("tiny".parse::<Scale>(), Ok(Scale::Tiny));
        assert_eq!("FULL".parse::<Scale>(), Ok(Scale::Full));
        assert!("huge".parse::<Scale>().is_err());
    }

    #[test]
    fn stability_entries_alternate_dimensions() {
        let cfg = SuiteConfig { seed: 0, scale: Scale::Full };
        let e = stability_entries(&cfg, 20);
        assert_eq!(e.len(), 20);
        assert_eq!(e.iter().filter(|e| e.dim == 1).count(), 7);
        assert!(e.iter().filter(|e| e.dim == 3).all(|e| e.size() <= 2));
    }

    #[test]
    fn bounds_criterion_passes() {
        let c = criterion_bounds();
        assert!(c.passed, "{c}");
    }

    #[test]
    fn stability_on_an_edge() {
        let e = fixture_entry("path_1", 1);
        let (compared, boundary, failures) = stability_case(&e).unwrap();
        assert!(failures.is_empty(), "{failures:?}");
        assert!(compared > 0);
        assert!(boundary > 0);
    }
}
