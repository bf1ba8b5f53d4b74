//! Command implementations. Each returns a [`Report`] plus any artifacts to write.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use cyroots_core::bimodcx::ProjBimodComplex;
use cyroots_core::cluster::{classify_dynkin_roots, build_zq, dynkin_quiver, folded_auto, orbit_quiver, DynkinType};
use cyroots_core::completion::{completion, rep_infinite_check};
use cyroots_core::exactlin::Field;
use cyroots_core::gallery;
use cyroots_core::quiveralg::PathBasisAlgebra;
use cyroots_core::rootpair::{check_strict_pair, k0_spanning_check, RootContext, RootPairSpec};
use serde_json::json;

use crate::cache::{Cache, Lookup};
use crate::format::{field_name, BimoduleDoc, QuiverDoc};
use crate::report::{Check, Report};
use crate::CliError;

#[derive(Clone, Debug)]
pub enum GenKind {
    Kronecker { s: i64, eps: i64 },
    TypeA { n: usize, d: i64, eps: i64 },
    Beilinson { d: usize },
    A4,
}

pub fn generate(kind: &GenKind, field: Field) -> Result<(QuiverDoc, BimoduleDoc), CliError> {
    let (a, u): (Arc<PathBasisAlgebra>, ProjBimodComplex) = match *kind {
        GenKind::Kronecker { s, eps } => {
            let a = gallery::kronecker(field);
            let u = gallery::kronecker_u(&a, s, eps);
            (a, u)
        }
        GenKind::TypeA { n, d, eps } => {
            if n == 0 {
                return Err(CliError::Invalid("--n must be positive".into()));
            }
            let a = gallery::type_a(field, n);
            let u = gallery::type_a_u(&a, n, d, eps);
            (a, u)
        }
        GenKind::Beilinson { d } => {
            if d == 0 {
                return Err(CliError::Invalid("--d must be positive".into()));
            }
            let a = gallery::beilinson(field, d);
            let u = gallery::beilinson_root_complex(&a, d);
            (a, u)
        }
        GenKind::A4 => {
            let a = gallery::a4_mod_longest(field);
            let u = gallery::a4_square_root(&a);
            (a, u)
        }
    };
    Ok((QuiverDoc::from_algebra(&a)?, BimoduleDoc::from_complex(&u)?))
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

/// A parsed algebra/bimodule pair together with its raw bytes and canonical text.
pub struct LoadedPair {
    pub algebra: Arc<PathBasisAlgebra>,
    pub u: ProjBimodComplex,
    pub raw: [(String, Vec<u8>); 2],
    pub canonical: [String; 2],
}

pub fn load_pair(algebra: &Path, bimodule: &Path, field: Field) -> Result<LoadedPair, CliError> {
    let (ab, bb) = (read(algebra)?, read(bimodule)?);
    let qd: QuiverDoc = serde_json::from_slice(&ab).map_err(|e| CliError::parse(&algebra.display().to_string(), e.to_string()))?;
    let bd: BimoduleDoc = serde_json::from_slice(&bb).map_err(|e| CliError::parse(&bimodule.display().to_string(), e.to_string()))?;
    let a = qd.to_algebra(field)?;
    let u = bd.to_complex(&a)?;
    let canonical = [serde_json::to_string(&qd).unwrap(), serde_json::to_string(&bd).unwrap()];
    Ok(LoadedPair { algebra: a, u, raw: [("algebra".into(), ab), ("bimodule".into(), bb)], canonical })
}

fn note_cache(cache: &Cache, op: &str, key: &str, l: Lookup) {
    if cache.dir().is_none() {
        return;
    }
    let tag = match l {
        Lookup::Hit => "hit",
        Lookup::Miss => "miss",
    };
    eprintln!("cache {} {} {}", tag, op, &key[..12]);
}

fn check_vertices(a: &PathBasisAlgebra, e: &[usize]) -> Result<(), CliError> {
    if e.is_empty() {
        return Err(CliError::Invalid("--e must name at least one vertex".into()));
    }
    if let Some(v) = e.iter().find(|&&v| v >= a.num_vertices()) {
        return Err(CliError::Invalid(format!("vertex {} out of range", v)));
    }
    Ok(())
}

/// Root-pair axioms, K-theory spanning, cyclic invariance over the quasi-isomorphism
/// family, and the Casimir identity for the map found.
pub fn root_pair_checks(u: &ProjBimodComplex, a: usize, d: i64, e: &[usize], trials: usize, seed: u64) -> Vec<Check> {
    let spec = RootPairSpec { u: u.clone(), a, d, e: e.to_vec() };
    let mut checks: Vec<Check> = check_strict_pair(&spec, trials, seed)
        .axioms
        .into_iter()
        .map(|v| Check::new(&v.name, v.passed, v.detail))
        .collect();
    checks.push(Check::new("k0-spanning", Some(k0_spanning_check(&spec)), ""));
    let ctx = match RootContext::new(u, a) {
        Ok(c) => c,
        Err(err) => {
            checks.push(Check::new("cyclic-invariance", Some(false), err.to_string()));
            checks.push(Check::new("itsumo", Some(false), err.to_string()));
            return checks;
        }
    };
    let fam = ctx.cyclic_invariance_family(d, trials, seed);
    checks.push(
        Check::new("cyclic-invariance", fam.invariant, format!("trials {}", fam.trials_used)).with_witness(json!({
            "closed_dim": fam.closed_dim,
            "boundary_dim": fam.boundary_dim,
            "invariant_dim": fam.invariant_dim,
        })),
    );
    let phi = fam.witness.clone().or_else(|| ctx.find_root_map(d, trials, seed).map);
    match phi {
        None => checks.push(Check::new("itsumo", None, "no quasi-isomorphism found")),
        Some(phi) => match ctx.check_itsumo(&phi) {
            Ok(r) => checks.push(Check::new(
                "itsumo",
                Some(r.holds),
                format!("left cycle {}, right cycle {}{}", r.left_is_cycle, r.right_is_cycle, if r.trivial { ", single factor" } else { "" }),
            )),
            Err(err) => checks.push(Check::new("itsumo", Some(false), err.to_string())),
        },
    }
    checks
}

pub struct RootPairJob<'a> {
    pub algebra: &'a Path,
    pub bimodule: &'a Path,
    pub a: usize,
    pub d: i64,
    pub e: Vec<usize>,
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
}

pub fn check_root_pair(job: &RootPairJob, cache: &Cache) -> Result<Report, CliError> {
    let p = load_pair(job.algebra, job.bimodule, job.field)?;
    if job.a == 0 {
        return Err(CliError::Invalid("--a must be positive".into()));
    }
    check_vertices(&p.algebra, &job.e)?;
    let mut r = Report::new("check-root-pair");
    r.echo("algebra", job.algebra.display().to_string());
    r.echo("bimodule", job.bimodule.display().to_string());
    r.echo("a", job.a);
    r.echo("d", job.d);
    r.echo("e", &job.e);
    r.echo("field", field_name(job.field));
    r.echo("trials", job.trials);
    r.echo("seed", job.seed);
    for (name, bytes) in &p.raw {
        r.add_input(name, bytes);
    }
    let params = format!("{}|{}|{:?}|{}|{}|{}", job.a, job.d, job.e, field_name(job.field), job.trials, job.seed);
    let key = Cache::key("check-root-pair", &[&p.canonical[0], &p.canonical[1], &params]);
    let (payload, l) = cache.get_or_compute::<CliError>(&key, || {
        let checks = root_pair_checks(&p.u, job.a, job.d, &job.e, job.trials, job.seed);
        Ok(serde_json::to_string(&checks).unwrap())
    })?;
    note_cache(cache, "check-root-pair", &key, l);
    r.checks = match serde_json::from_str(&payload) {
        Ok(c) => c,
        Err(_) => root_pair_checks(&p.u, job.a, job.d, &job.e, job.trials, job.seed),
    };
    Ok(r)
}

pub struct CompleteJob<'a> {
    pub algebra: &'a Path,
    pub bimodule: &'a Path,
    pub adams_max: usize,
    pub e: Vec<usize>,
    pub field: Field,
    pub csv: Option<PathBuf>,
}

/// Returns the report and the Hilbert-series CSV.
pub fn complete(job: &CompleteJob, cache: &Cache) -> Result<(Report, String), CliError> {
    let p = load_pair(job.algebra, job.bimodule, job.field)?;
    check_vertices(&p.algebra, &job.e)?;
    let mut r = Report::new("complete");
    r.echo("algebra", job.algebra.display().to_string());
    r.echo("bimodule", job.bimodule.display().to_string());
    r.echo("adams_max", job.adams_max);
    r.echo("e", &job.e);
    r.echo("field", field_name(job.field));
    for (name, bytes) in &p.raw {
        r.add_input(name, bytes);
    }
    let params = format!("{}|{:?}|{}", job.adams_max, job.e, field_name(job.field));
    let key = Cache::key("complete", &[&p.canonical[0], &p.canonical[1], &params]);
    let (payload, l) = cache.get_or_compute(&key, || {
        let c = completion(&p.u, &job.e, job.adams_max).map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok::<_, CliError>(
            json!({
                "csv": c.table.to_csv(),
                "totals": c.table.totals(),
                "concentrated_in_0": rep_infinite_check(&c),
                "algebra_available": c.algebra.is_some(),
            })
            .to_string(),
        )
    })?;
    note_cache(cache, "complete", &key, l);
    let v: serde_json::Value = serde_json::from_str(&payload).map_err(|e| CliError::Invalid(e.to_string()))?;
    let csv = v["csv"].as_str().unwrap_or_default().to_string();
    r.checks.push(Check::new("completion", Some(true), format!("Adams degrees 0..={}", job.adams_max)));
    r.data.insert("totals".into(), v["totals"].clone());
    r.data.insert("concentrated_in_0".into(), v["concentrated_in_0"].clone());
    r.data.insert("algebra_available".into(), v["algebra_available"].clone());
    if let Some(path) = &job.csv {
        r.artifacts.push(path.display().to_string());
    }
    Ok((r, csv))
}

pub struct FoldJob {
    pub kind: DynkinType,
    pub rank: usize,
    pub a: usize,
    pub d: i64,
    pub window: i64,
    pub mark: Vec<(i64, usize)>,
    pub dot: Option<PathBuf>,
}

/// Fundamental domain of `ℤQ / ⟨F[d]⟩` for an `a`-th root `F` of `τ^{-1}`. Returns the report and DOT text.
pub fn fold(job: &FoldJob) -> Result<(Report, Option<String>), CliError> {
    let mut r = Report::new("fold");
    r.echo("type", job.kind.to_string());
    r.echo("rank", job.rank);
    r.echo("a", job.a);
    r.echo("d", job.d);
    r.echo("window", job.window);
    r.echo("mark", &job.mark);
    if job.a == 0 {
        return Err(CliError::Invalid("--a must be positive".into()));
    }
    let err = |e: cyroots_core::cluster::ClusterError| CliError::Invalid(e.to_string());
    let q = dynkin_quiver(job.kind, job.rank).map_err(err)?;
    let search = classify_dynkin_roots(job.kind, job.rank, job.a, job.window.max(4)).map_err(err)?;
    let Some(root) = search.witness else {
        r.checks.push(Check::new("root", Some(false), format!("no {}-th root among {} candidates", job.a, search.candidates)));
        return Ok((r, None));
    };
    r.checks.push(Check::new("root", Some(true), root.name.clone()).with_witness(json!({"shift": root.shift, "perm": root.perm})));
    let g = folded_auto(job.kind, job.rank, &root, job.d).map_err(err)?;
    let slice = build_zq(&q, (0, job.window)).map_err(err)?;
    let o = orbit_quiver(&slice, &g, &job.mark).map_err(err)?;
    r.data.insert("generator".into(), json!({"name": g.name, "shift": g.shift, "perm": g.perm}));
    r.data.insert("vertices".into(), json!(o.num_vertices()));
    r.data.insert("arrows".into(), json!(o.arrows.len()));
    r.data.insert("domain".into(), json!((0..o.num_vertices()).map(|k| o.orbit_name(k)).collect::<Vec<_>>()));
    let dot = o.to_dot();
    if let Some(path) = &job.dot {
        r.artifacts.push(path.display().to_string());
    }
    Ok((r, Some(dot)))
}

pub fn classify(kind: DynkinType, rank: usize, a: usize, window: i64) -> Result<Report, CliError> {
    let mut r = Report::new("classify");
    r.echo("type", kind.to_string());
    r.echo("rank", rank);
    r.echo("a", a);
    r.echo("window", window);
    if a == 0 {
        return Err(CliError::Invalid("--a must be positive".into()));
    }
    let s = classify_dynkin_roots(kind, rank, a, window).map_err(|e| CliError::Invalid(e.to_string()))?;
    r.checks.push(Check::new("search", Some(true), format!("{} candidates", s.candidates)));
    r.data.insert("exists".into(), json!(s.exists));
    if let Some(w) = s.witness {
        r.data.insert("witness".into(), json!({"name": w.name, "shift": w.shift, "perm": w.perm}));
    }
    Ok(r)
}
