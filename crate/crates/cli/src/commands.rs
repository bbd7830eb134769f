use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use locfin::construction::{bounds, grow_edges, localize, mapping_telescope, telescope, GrownComplex, RayPolicy};
use locfin::homology::{homology, homology_with, induced_map_homology, Coefficients, HomologyResult};
use locfin::suite::{check_localization, run_suite, SuiteConfig};
use locfin::verify::{
    check_pseudofibration_with, check_telescope_lemmas, degree_audit, one_sided_audit, surjective_on_simplices,
    FiberStatus, DEFAULT_RESTARTS,
};
use locfin::Complex;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{lines, ComplexFile, FormatError};
use crate::{Cli, Command};

/// Largest grown complex written by `grow --out`.
const GROW_WRITE_LIMIT: usize = 1_000_000;

/// A problem with the command line or an input file.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(String);

/// Errors about the files or flags given, as opposed to failed checks.
pub fn is_input_error(e: &anyhow::Error) -> bool {
    use locfin::Error as E;
    e.chain().any(|c| {
        c.is::<InputError>()
            || c.is::<FormatError>()
            || c.is::<std::io::Error>()
            || matches!(
                c.downcast_ref::<E>(),
                Some(
                    E::NotPlain(_)
                        | E::StagedVertex(_)
                        | E::LevelMismatch { .. }
                        | E::UniverseMismatch
                        | E::MissingRayBound(_)
                        | E::RayBoundTooSmall { .. }
                        | E::TelescopePrecondition { .. }
                        | E::NotPrime(_)
                        | E::BadCoefficients(_)
                        | E::BoundsOverflow(_)
                )
            )
    })
}

pub struct Report {
    pub passed: bool,
    pub text: String,
    pub machine: Value,
}

pub fn run(cli: &Cli) -> Result<Report> {
    let strict = cli.strict;
    match &cli.command {
        Command::Validate { input } => validate(input, strict),
        Command::Localize { input, ray_bound, grow, fibers, seed, out } => {
            localize_cmd(&load(input, strict)?, ray_bound, *grow, *fibers, *seed, out.as_deref())
        }
        Command::Homology { input, coeff, reduced } => homology_cmd(&load(input, strict)?, *coeff, *reduced),
        Command::Audit { input, dim, bound } => audit(&load(input, strict)?, *dim, *bound),
        Command::Grow { input, rounds, dim, bound, out } => {
            grow(&load(input, strict)?, *rounds, *dim, *bound, out.as_deref())
        }
        Command::Telescope { input, dim, ray_bound, samples, seed, out } => {
            telescope_cmd(&load(input, strict)?, *dim, ray_bound, *samples, *seed, out.as_deref())
        }
        Command::Product { left, right, out } => product(&load(left, strict)?, &load(right, strict)?, out.as_deref()),
        Command::Mtel { input, ray_bound, out } => mtel(&load(input, strict)?, ray_bound, out.as_deref()),
        Command::Selftest { seed, sizes, fixtures } => {
            let loaded =
                fixtures.iter().map(|p| Ok((p.display().to_string(), load(p, strict)?))).collect::<Result<Vec<_>>>()?;
            selftest(SuiteConfig { seed: *seed, scale: *sizes }, &loaded)
        }
    }
}

fn read(path: &Path) -> Result<ComplexFile> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    ComplexFile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load(path: &Path, strict: bool) -> Result<Complex> {
    read(path)?.to_complex(strict).with_context(|| format!("loading {}", path.display()))
}

fn write_complex(path: &Path, file: &ComplexFile) -> Result<()> {
    fs::write(path, file.to_json()).with_context(|| format!("writing {}", path.display()))
}

fn ray_policy(ray_bound: &[u32]) -> RayPolicy {
    if ray_bound.is_empty() {
        RayPolicy::Default
    } else {
        RayPolicy::Explicit(ray_bound.to_vec())
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn shape(c: &Complex) -> Value {
    json!({ "dim": c.dim(), "counts": c.counts(), "simplices": c.len() })
}

fn counts_text(c: &Complex) -> String {
    match c.dim() {
        Some(d) => format!("dim {d}, counts {:?}", c.counts()),
        None => "empty".to_string(),
    }
}

fn homology_json(h: &HomologyResult) -> Value {
    json!({
        "coefficients": h.coefficients.to_string(),
        "reduced": h.reduced,
        "dims": h.dims.iter().map(|d| json!({
            "dim": d.dim,
            "betti": d.betti,
            "torsion": d.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "text": h.to_string(),
    })
}

/// `M_n` for `n >= 1`; no edges are allowed in dimension 0.
fn degree_bound(n: usize) -> Result<usize> {
    if n == 0 {
        return Ok(0);
    }
    Ok(bounds(n).map_err(|e| InputError(e.to_string()))?.m as usize)
}

fn validate(input: &Path, strict: bool) -> Result<Report> {
    let file = read(input)?;
    let listed = file.maximal_simplices.len() + file.simplices.as_ref().map_or(0, Vec::len);
    let c = file.to_complex(strict).with_context(|| format!("loading {}", input.display()))?;
    let report = c.validate(true);
    let mut text = format!("{}: {}\n", input.display(), counts_text(&c));
    let _ = writeln!(text, "simplices listed: {listed}, in the complex: {}", c.len());
    if !strict && file.simplices.is_some() {
        let _ = writeln!(text, "simplex list closed under faces (use --strict to check it as given)");
    }
    for v in &report.violations {
        let _ = writeln!(text, "violation: {}", serde_json::to_string(v).expect("json"));
    }
    let _ = writeln!(text, "valid: {}", yes(report.is_valid()));
    Ok(Report {
        passed: report.is_valid(),
        machine: json!({
            "file": input.display().to_string(),
            "strict": strict,
            "listed": listed,
            "complex": shape(&c),
            "valid": report.is_valid(),
            "violations": report.violations,
        }),
        text,
    })
}

#[derive(Serialize)]
struct FiberSummary {
    maps: usize,
    fibers: usize,
    collapsed: usize,
    acyclic_only: usize,
    failed: usize,
    unhit: usize,
}

fn localize_cmd(
    s: &Complex,
    ray_bound: &[u32],
    grow_rounds: Option<usize>,
    fibers: bool,
    seed: u64,
    out: Option<&Path>,
) -> Result<Report> {
    let loc = localize(s, &ray_policy(ray_bound))?;
    let t = &loc.complex;
    let n = s.dim().unwrap_or(0);
    let bound = degree_bound(n)?;
    let audit = degree_audit(t, bound);
    let (hs, ht) = (homology(s, false), homology(t, false));
    let homology_preserved = hs == ht;
    let induced = if s.is_empty() {
        None
    } else {
        let q = induced_map_homology(&loc.projection, Coefficients::Rationals)?.is_isomorphism();
        let two = induced_map_homology(&loc.projection, Coefficients::Mod(2))?.is_isomorphism();
        Some((q, two))
    };
    let tower = &loc.tower;
    let mut surjective = true;
    let mut fiber_summary = None;
    if fibers {
        let mut f = FiberSummary { maps: 0, fibers: 0, collapsed: 0, acyclic_only: 0, failed: 0, unhit: 0 };
        for k in 0..=tower.top() {
            let mut maps = vec![tower.projection(k)?];
            if let Some(p) = tower.prime_projection(k) {
                maps.push(p?);
            }
            for map in maps {
                let r = check_pseudofibration_with(&map, DEFAULT_RESTARTS, seed);
                f.maps += 1;
                f.fibers += r.entries.len();
                f.collapsed += r.count(FiberStatus::Collapsed);
                f.acyclic_only += r.count(FiberStatus::AcyclicOnly);
                f.failed += r.count(FiberStatus::Failed);
                f.unhit += r.unhit.len();
            }
        }
        surjective = f.unhit == 0;
        fiber_summary = Some(f);
    } else {
        for k in 0..=tower.top() {
            surjective &= surjective_on_simplices(&tower.projection(k)?);
        }
    }
    let growth = match grow_rounds {
        Some(rounds) => Some(growth_json(&grow_edges(t, bound, rounds)?)?),
        None => None,
    };
    let fibers_ok = fiber_summary.as_ref().is_none_or(|f| f.collapsed == f.fibers);
    let growth_ok =
        growth.as_ref().is_none_or(|g| g["exact_degree"] == json!(true) && g["collapses_back"] == json!(true));
    let passed = audit.passes()
        && homology_preserved
        && induced.is_none_or(|(q, two)| q && two)
        && surjective
        && fibers_ok
        && growth_ok;

    let summary = json!({
        "input": shape(s),
        "output": shape(t),
        "ray_bounds": tower.ray_bounds(),
        "max_degree": audit.max_degree,
        "bound": bound,
        "degree_ok": audit.passes(),
        "homology_input": homology_json(&hs),
        "homology_output": homology_json(&ht),
        "homology_preserved": homology_preserved,
        "induced_isomorphism_q": induced.map(|x| x.0),
        "induced_isomorphism_mod2": induced.map(|x| x.1),
        "surjective": surjective,
        "fibers": fiber_summary,
        "growth": growth,
        "levels": tower.stats(),
        "passed": passed,
    });

    let mut text = String::new();
    let _ = writeln!(text, "input: {}", counts_text(s));
    let _ = writeln!(text, "output: {}", counts_text(t));
    let _ = writeln!(text, "ray_bounds: {:?}", tower.ray_bounds());
    let _ = writeln!(text, "max_degree: {}", audit.max_degree);
    let _ = writeln!(text, "bound: {bound}");
    let _ = writeln!(text, "degree_ok: {}", audit.passes());
    let _ = writeln!(text, "homology: {hs}");
    let _ = writeln!(text, "homology_preserved: {homology_preserved}");
    if let Some((q, two)) = induced {
        let _ = writeln!(text, "induced_isomorphism: Q {q}, Z/2 {two}");
    }
    let _ = writeln!(text, "surjective: {surjective}");
    if let Some(f) = &summary["fibers"].as_object() {
        let _ = writeln!(
            text,
            "fibers: {} over {} maps, {} collapsed, {} acyclic only, {} failed",
            f["fibers"], f["maps"], f["collapsed"], f["acyclic_only"], f["failed"]
        );
    }
    if let Some(g) = summary["growth"].as_object() {
        let _ = writeln!(
            text,
            "growth: {} rounds, {} vertices, exact degree {}, collapses back {}",
            g["rounds"], g["vertices"], g["exact_degree"], g["collapses_back"]
        );
    }
    let _ = writeln!(text, "passed: {passed}");

    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let file = ComplexFile::from_complex(t, false).with_tower(tower);
        write_complex(&dir.join("complex.json"), &file)?;
        let vertices: Vec<_> = t.vertices().collect();
        let table: Vec<[u32; 2]> = vertices.iter().zip(0..).map(|(v, i)| [i, loc.projection.apply(v).base]).collect();
        let projection = format!(
            "{{\n  \"source\": \"complex.json\",\n  \"target_vertices\": {},\n  \"map\": {}\n}}\n",
            serde_json::to_string(&s.universe()[..])?,
            lines(&table, "  ")
        );
        fs::write(dir.join("projection.json"), projection)?;
        fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
        let _ = writeln!(text, "wrote {}", dir.display());
    }
    Ok(Report { passed, text, machine: summary })
}

fn growth_json(g: &GrownComplex) -> Result<Value> {
    let m = g.bound();
    let classes = g.classes();
    let exact = classes.iter().all(|c| c.completion_round > g.rounds() || c.degree == m);
    let (collapses, rest) = g.collapse_pendants()?;
    let collapses_back = collapses == g.pendant_count() && &rest == g.core();
    let class_json: Vec<Value> = classes
        .iter()
        .filter(|c| !c.count.is_zero())
        .map(|c| {
            let kind = match &c.kind {
                locfin::construction::grow::VertexKind::Core(v) => g.core().label(v),
                locfin::construction::grow::VertexKind::Pendant { birth } => format!("pendants born in round {birth}"),
            };
            json!({ "kind": kind, "count": c.count.to_string(), "degree": c.degree, "completion_round": c.completion_round })
        })
        .collect();
    Ok(json!({
        "bound": m,
        "rounds": g.rounds(),
        "pendants": g.pendant_count().to_string(),
        "vertices": g.vertex_count().to_string(),
        "births": g.births().iter().skip(1).map(ToString::to_string).collect::<Vec<_>>(),
        "classes": class_json,
        "exact_degree": exact,
        "collapses_back": collapses_back,
    }))
}

fn homology_cmd(c: &Complex, coeff: Coefficients, reduced: bool) -> Result<Report> {
    let h = homology_with(c, coeff, reduced)?;
    let mut text = format!("{h}\n");
    for d in &h.dims {
        let torsion: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  dim {}: betti {}, torsion [{}]", d.dim, d.betti, torsion.join(", "));
    }
    Ok(Report { passed: true, text, machine: homology_json(&h) })
}

fn audit(c: &Complex, dim: Option<usize>, bound: Option<usize>) -> Result<Report> {
    let n = dim.or(c.dim()).unwrap_or(0);
    let m = match bound {
        Some(m) => m,
        None => degree_bound(n)?,
    };
    let a = degree_audit(c, m);
    let one_sided = (n > 0).then(|| bounds(n).map(|b| one_sided_audit(c, b.k as usize))).transpose()?;
    let mut text = format!("vertices: {}\nmax_degree: {}\nbound: {m}\n", a.vertices, a.max_degree);
    let hist: Vec<String> = a.histogram.iter().map(|(d, k)| format!("{d}:{k}")).collect();
    let _ = writeln!(text, "histogram: {}", hist.join(" "));
    if let Some(o) = &one_sided {
        let _ = writeln!(text, "one_sided: up {}, down {}, K = {}", o.max_up, o.max_down, o.bound);
    }
    for v in &a.violators {
        let _ = writeln!(text, "violator: {v}");
    }
    let _ = writeln!(text, "passed: {}", a.passes());
    Ok(Report { passed: a.passes(), machine: json!({ "degree": a, "one_sided": one_sided }), text })
}

fn grow(c: &Complex, rounds: usize, dim: Option<usize>, bound: Option<usize>, out: Option<&Path>) -> Result<Report> {
    let m = match bound {
        Some(m) => m,
        None => degree_bound(dim.or(c.dim()).unwrap_or(0))?,
    };
    let g = grow_edges(c, m, rounds)?;
    let summary = growth_json(&g)?;
    let passed = summary["exact_degree"] == json!(true) && summary["collapses_back"] == json!(true);
    let mut text = format!("bound: {m}\nrounds: {rounds}\n");
    let _ = writeln!(text, "pendants: {}\nvertices: {}", g.pendant_count(), g.vertex_count());
    for class in summary["classes"].as_array().into_iter().flatten() {
        let _ = writeln!(
            text,
            "  {}: {} vertices, degree {}, complete after round {}",
            class["kind"].as_str().unwrap_or_default(),
            class["count"].as_str().unwrap_or_default(),
            class["degree"],
            class["completion_round"]
        );
    }
    let _ = writeln!(text, "exact_degree: {}", summary["exact_degree"]);
    let _ = writeln!(text, "collapses_back: {}", summary["collapses_back"]);
    if let Some(path) = out {
        let mat = g.materialize(GROW_WRITE_LIMIT).map_err(|e| InputError(format!("cannot write: {e}")))?;
        let plain = c.level() == 0;
        let mut labels: Vec<String> = mat
            .core_vertices
            .iter()
            .map(|v| if plain && v.stage.is_none() { c.universe()[v.base as usize].clone() } else { c.label(v) })
            .collect();
        labels.extend(mat.pendants.iter().map(|p| format!("p{}", p.id)));
        let lists: Vec<Vec<u32>> =
            (0..mat.complex.counts().len()).flat_map(|d| mat.complex.simplices(d).iter().map(|s| s.to_vec())).collect();
        let grown = Complex::closure_of_indices(&lists, labels)?;
        write_complex(path, &ComplexFile::from_complex(&grown, false))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(Report { passed, text, machine: summary })
}

fn telescope_cmd(
    t: &Complex,
    dim: Option<usize>,
    ray_bound: &[u32],
    samples: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<Report> {
    let n = dim.unwrap_or(t.level());
    let tel = telescope(t, n, ray_bound)?;
    let lemmas = check_telescope_lemmas(t, n, ray_bound, samples, seed)?;
    let mut text = format!("input: {}\ntelescope: {}\n", counts_text(t), counts_text(&tel));
    let _ = writeln!(text, "contains_input: {}", lemmas.contains_input);
    let _ = writeln!(
        text,
        "restriction: {} of {} sampled subsets commute (seed {seed})",
        lemmas.samples.len() - lemmas.restriction_failures.len(),
        lemmas.samples.len()
    );
    let _ = writeln!(text, "dimension_bound: {}", lemmas.dimension_bound);
    if let Some(path) = out {
        write_complex(path, &ComplexFile::from_complex(&tel, false))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(Report { passed: lemmas.passes(), machine: json!({ "telescope": shape(&tel), "lemmas": lemmas }), text })
}

fn product(a: &Complex, b: &Complex, out: Option<&Path>) -> Result<Report> {
    let p = a.product(b)?;
    let mut text = format!("product: {}\n", counts_text(&p));
    let valid = p.validate(true).is_valid();
    let _ = writeln!(text, "valid: {}", yes(valid));
    if let Some(path) = out {
        write_complex(path, &ComplexFile::from_complex(&p, false))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(Report { passed: valid, machine: json!({ "product": shape(&p), "valid": valid }), text })
}

fn mtel(s: &Complex, ray_bound: &[u32], out: Option<&Path>) -> Result<Report> {
    let loc = localize(s, &ray_policy(ray_bound))?;
    let mt = mapping_telescope(&loc.tower)?;
    let (hs, hm) = (homology(s, false), homology(&mt.complex, false));
    let max = mt.complex.edge_degrees().values().copied().max().unwrap_or(0);
    let reference = s.dim().filter(|&d| d > 0).map(|d| bounds(d).map(|b| (b.m + 2 * b.k) as usize)).transpose()?;
    let mut text = format!("mapping telescope: {}\n", counts_text(&mt.complex));
    let _ = writeln!(text, "homology: {hm}");
    let _ = writeln!(text, "homology_preserved: {}", hs == hm);
    let _ = writeln!(text, "max_degree: {max}");
    if let Some(r) = reference {
        let _ = writeln!(text, "reference_bound: {r} (M_n + 2 K_n, {})", if max <= r { "within" } else { "exceeded" });
    }
    if let Some(path) = out {
        write_complex(path, &ComplexFile::from_complex(&mt.complex, false))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(Report {
        passed: hs == hm,
        machine: json!({
            "complex": shape(&mt.complex),
            "homology": homology_json(&hm),
            "homology_preserved": hs == hm,
            "max_degree": max,
            "reference_bound": reference,
        }),
        text,
    })
}

fn selftest(cfg: SuiteConfig, fixtures: &[(String, Complex)]) -> Result<Report> {
    let report = run_suite(&cfg);
    let mut text = format!("seed {}, sizes {}\n", cfg.seed, cfg.scale);
    let mut failures: Vec<String> = Vec::new();
    for c in &report.criteria {
        let _ = writeln!(text, "{c}");
        failures.extend(c.failures.iter().map(|f| format!("criterion {}: {f}", c.id)));
    }
    let mut fixture_json = Vec::new();
    for (name, complex) in fixtures {
        let found = check_localization(name, complex, cfg.seed)?;
        let _ = writeln!(text, "[{}] fixture {name}", if found.is_empty() { "PASS" } else { "FAIL" });
        for f in &found {
            let _ = writeln!(text, "       - {f}");
        }
        failures.extend(found.iter().map(|f| format!("fixture {f}")));
        fixture_json.push(json!({ "file": name, "failures": found }));
    }
    let passed = failures.is_empty();
    let _ = writeln!(text, "passed: {passed}");
    Ok(Report {
        passed,
        machine: json!({
            "seed": cfg.seed,
            "sizes": cfg.scale,
            "passed": passed,
            "criteria": report.criteria,
            "fixtures": fixture_json,
            "failures": failures,
        }),
        text,
    })
}
