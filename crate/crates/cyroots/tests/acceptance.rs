//! End-to-end reproduction suite. Prints one PASS/FAIL line per criterion on stderr.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cyroots_core::bimodcx::{cone, find_quasi_iso, minimize, resolution_of_algebra, tensor_over_a};
use cyroots_core::cluster::{
    build_zq, classify_dynkin_roots, cluster_auto, cluster_tilting_check, dynkin_quiver, folded_auto, make_root_auto,
    orbit_quiver, serre_check, AutoSpec, DynkinType,
};
use cyroots_core::completion::{
    cohomology_algebra, compare_presentation, completion, graded_gorenstein_check, matrix_root_pair, polynomial_ring,
    quasi_veronese, resolve_matrix_root, segre, tensor_algebra, veronese, GorensteinVerdict,
};
use cyroots_core::exactlin::Field;
use cyroots_core::gallery;
use cyroots_core::rootpair::{
    casimir, casimir_homotopic_to_identity, casimir_is_cycle, check_strict_pair, match_small_corner_algebras,
    strict_tensor_algebra, RootContext, RootPairSpec,
};
use cyroots_core::sample::{random_algebra, random_two_term};
use proptest::test_runner::{Config, TestRunner};

const Q: Field = Field::Rational;
const TRIALS: usize = 8;
const SEED: u64 = 7;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("{} took {:?}, limit {:?}", what, e, limit))?;
    Ok(e)
}

// ---------- independent oracles ----------

/// Number of monomials of total degree `l` in `n` commuting variables, by enumeration.
fn monomial_count(n: usize, l: usize) -> usize {
    fn go(n: usize, l: usize) -> usize {
        if n == 1 {
            return 1;
        }
        (0..=l).map(|k| go(n - 1, l - k)).sum()
    }
    go(n, l)
}

const P: u64 = 1_000_000_007;

fn rank_mod_p(rows: &mut [Vec<u64>]) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][c], P - 2);
        for x in rows[r].iter_mut() {
            *x = *x * inv % P;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + P - m * rows[r][j] % P) % P;
                }
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Graded dimensions of `kQ/(rels)` by brute-force path enumeration and ranks mod a large
/// prime. Arrows are `(source, target, degree)`; relation terms are paths in traversal order.
fn path_quotient_dims(nv: usize, arrows: &[(usize, usize, usize)], rels: &[Vec<(i64, Vec<usize>)>], max_deg: usize, max_len: usize) -> Vec<usize> {
    let deg = |p: &[usize]| p.iter().map(|&k| arrows[k].2).sum::<usize>();
    // paths of each length as (start, arrows)
    let mut by_len: Vec<Vec<(usize, Vec<usize>)>> = vec![(0..nv).map(|v| (v, Vec::new())).collect()];
    for l in 1..=max_len {
        let mut next = Vec::new();
        for (s, p) in &by_len[l - 1] {
            let end = p.last().map_or(*s, |&k| arrows[k].1);
            for (k, a) in arrows.iter().enumerate() {
                if a.0 == end {
                    let mut q = p.clone();
                    q.push(k);
                    if deg(&q) <= max_deg {
                        next.push((*s, q));
                    }
                }
            }
        }
        by_len.push(next);
    }
    let end_of = |s: usize, p: &[usize]| p.last().map_or(s, |&k| arrows[k].1);
    let mut dims = vec![0; max_deg + 1];
    for l in 0..=max_len {
        let paths = &by_len[l];
        let index: BTreeMap<(usize, Vec<usize>), usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ideal: Vec<Vec<u64>> = Vec::new();
        for r in rels {
            let m = r[0].1.len();
            if m > l {
                continue;
            }
            let (rs, rt) = (arrows[r[0].1[0]].0, arrows[*r[0].1.last().unwrap()].1);
            for i in 0..=l - m {
                for (ps, pre) in &by_len[i] {
                    if end_of(*ps, pre) != rs {
                        continue;
                    }
                    for (qs, post) in &by_len[l - m - i] {
                        if *qs != rt {
                            continue;
                        }
                        let mut row = vec![0u64; paths.len()];
                        let mut ok = true;
                        for (c, term) in r {
                            let mut w = pre.clone();
                            w.extend(term);
                            w.extend(post);
                            match index.get(&(*ps, w)) {
                                Some(&j) => row[j] = (row[j] + (c.rem_euclid(P as i64) as u64)) % P,
                                None => ok = false,
                            }
                        }
                        if ok {
                            ideal.push(row);
                        }
                    }
                }
            }
        }
        for d in 0..=max_deg {
            let cols: Vec<usize> = (0..paths.len()).filter(|&j| deg(&paths[j].1) == d).collect();
            if cols.is_empty() {
                continue;
            }
            let mut sub: Vec<Vec<u64>> = ideal
                .iter()
                .map(|row| cols.iter().map(|&j| row[j]).collect::<Vec<u64>>())
                .filter(|row: &Vec<u64>| row.iter().any(|&x| x != 0))
                .collect();
            dims[d] += cols.len() - rank_mod_p(&mut sub);
        }
    }
    dims
}

/// Preprojective algebra of the Kronecker quiver graded by the number of reverse arrows.
fn preprojective_oracle(max_deg: usize) -> Vec<usize> {
    // u, v: 0 → 1; a, b: 1 → 0
    let arrows = [(0, 1, 0), (0, 1, 0), (1, 0, 1), (1, 0, 1)];
    let rels = vec![vec![(1, vec![0, 3]), (-1, vec![1, 2])], vec![(1, vec![2, 1]), (-1, vec![3, 0])]];
    path_quotient_dims(2, &arrows, &rels, max_deg, 2 * max_deg + 2)
}

/// The conifold quiver `u, v: 0 → 1`, `p, q: 1 → 0` with commutativity relations, graded by reverse arrows.
fn nccr_oracle(max_deg: usize) -> Vec<usize> {
    let arrows = [(0, 1, 0), (0, 1, 0), (1, 0, 1), (1, 0, 1)];
    let (u, v, p, q) = (0, 1, 2, 3);
    let rels = vec![
        vec![(1, vec![u, p, v]), (-1, vec![v, p, u])],
        vec![(1, vec![u, q, v]), (-1, vec![v, q, u])],
        vec![(1, vec![p, u, q]), (-1, vec![q, u, p])],
        vec![(1, vec![p, v, q]), (-1, vec![q, v, p])],
    ];
    path_quotient_dims(2, &arrows, &rels, max_deg, 2 * max_deg + 2)
}

// ---------- criteria ----------

fn c1_kronecker_root() -> Outcome {
    let a = gallery::kronecker(Q);
    let mut times = Vec::new();
    for s in 0..2i64 {
        for eps in [1i64, -1] {
            let t = Instant::now();
            let ctx = RootContext::new(&gallery::kronecker_u(&a, s, eps), 2).map_err(|e| e.to_string())?;
            let q = ctx.find_root_map(2 * s + 1, TRIALS, SEED);
            ensure(q.map.is_some(), || format!("no quasi-isomorphism for s={} eps={}", s, eps))?;
            times.push(within(t, Duration::from_secs(5), "root search")?);
        }
    }
    Ok(format!("4/4 quasi-isomorphisms found, max {:?}", times.iter().max().unwrap()))
}

fn c2_cyclic_invariance() -> Outcome {
    let t = Instant::now();
    let a = gallery::kronecker(Q);
    let mut agree = 0;
    for s in 0..2i64 {
        for eps in [1i64, -1] {
            let ctx = RootContext::new(&gallery::kronecker_u(&a, s, eps), 2).map_err(|e| e.to_string())?;
            let fam = ctx.cyclic_invariance_family(2 * s + 1, TRIALS, SEED);
            let expect = eps == if s % 2 == 0 { 1 } else { -1 };
            ensure(fam.invariant == Some(expect), || format!("s={} eps={}: got {:?}, expected {}", s, eps, fam.invariant, expect))?;
            agree += 1;
        }
    }
    let e = within(t, Duration::from_secs(30), "family scan")?;
    Ok(format!("{}/4 verdicts match eps = (-1)^s, {:?}", agree, e))
}

fn c3_itsumo() -> Outcome {
    let mut cases: Vec<(String, cyroots_core::bimodcx::ProjBimodComplex, i64)> = Vec::new();
    let k = gallery::kronecker(Q);
    for s in 0..2i64 {
        for eps in [1, -1] {
            cases.push((format!("Kronecker s={} eps={}", s, eps), gallery::kronecker_u(&k, s, eps), 2 * s + 1));
        }
    }
    for n in 1..=2usize {
        let a = gallery::type_a(Q, n);
        for eps in [1, -1] {
            cases.push((format!("A{} eps={}", 2 * n, eps), gallery::type_a_u(&a, n, 1, eps), 3));
        }
    }
    let mut checked = 0;
    for (name, u, d) in &cases {
        let ctx = RootContext::new(u, 2).map_err(|e| e.to_string())?;
        let fam = ctx.cyclic_invariance_family(*d, TRIALS, SEED);
        let mut phis = Vec::new();
        phis.extend(ctx.find_root_map(*d, TRIALS, SEED).map);
        phis.extend(fam.witness);
        ensure(!phis.is_empty(), || format!("{}: no φ constructed", name))?;
        for phi in &phis {
            let r = ctx.check_itsumo(phi).map_err(|e| format!("{}: {}", name, e))?;
            ensure(r.holds && r.left_is_cycle && r.right_is_cycle, || format!("{}: identity fails ({:?})", name, r))?;
            checked += 1;
        }
    }
    Ok(format!("{} maps over {} inputs", checked, cases.len()))
}

fn c4_completion_series() -> Outcome {
    let t = Instant::now();
    let n = 6;
    let k = gallery::kronecker(Q);
    let b = gallery::beilinson(Q, 1);
    let inputs = [("Kronecker", gallery::kronecker_u(&k, 0, 1)), ("Beilinson d=1", gallery::beilinson_root_complex(&b, 1))];
    let oracle: Vec<usize> = (0..=n).map(|l| monomial_count(2, l)).collect();
    for (name, u) in &inputs {
        let c = completion(u, &[0], n).map_err(|e| e.to_string())?;
        ensure(c.table.concentrated_in(0), || format!("{}: cohomology outside degree 0: {:?}", name, c.table))?;
        ensure(c.table.totals() == oracle, || format!("{}: {:?} vs oracle {:?}", name, c.table.totals(), oracle))?;
    }
    let e = within(t, Duration::from_secs(60), "completion")?;
    Ok(format!("dims {:?} for both, {:?}", oracle, e))
}

fn c5_presentations() -> Outcome {
    let t = Instant::now();
    for (n, d) in [(1usize, 1i64), (2, 1)] {
        let a = gallery::type_a(Q, n);
        let c = completion(&gallery::type_a_u(&a, n, d, 1), &(0..n).collect::<Vec<_>>(), 3).map_err(|e| e.to_string())?;
        let p = gallery::type_a_presentation(Q, n, d, 1);
        ensure(compare_presentation(&c, &p, 3).map_err(|e| e.to_string())?, || format!("(n,d)=({},{}) disagrees", n, d))?;
        if n == 2 {
            let bad = gallery::type_a_presentation(Q, n, d, 0);
            ensure(!compare_presentation(&c, &bad, 3).map_err(|e| e.to_string())?, || "perturbed presentation not detected".into())?;
        }
    }
    let e = within(t, Duration::from_secs(120), "presentation comparison")?;
    Ok(format!("(1,1) and (2,1) agree to Adams 3, perturbation detected, {:?}", e))
}

fn c6_veronese_segre() -> Outcome {
    let a = gallery::kronecker(Q);
    let t = tensor_algebra(&gallery::kronecker_u(&a, 0, 1), 10).map_err(|e| e.to_string())?;
    let sigma = cohomology_algebra(&t).ok_or("tensor algebra not formal in window")?;
    let v = veronese(&sigma, 2, 5);
    v.check()?;
    let pre = preprojective_oracle(5);
    ensure(v.dims() == pre, || format!("Veronese {:?} vs preprojective {:?}", v.dims(), pre))?;
    let s = segre(&polynomial_ring(Q, 2, 4), &sigma, 4);
    s.check()?;
    let nccr = nccr_oracle(4);
    ensure(s.dims() == nccr, || format!("Segre {:?} vs quiver {:?}", s.dims(), nccr))?;
    Ok(format!("Veronese {:?}, Segre {:?}", pre, nccr))
}

fn c7_matrix_round_trip() -> Outcome {
    let p = polynomial_ring(Q, 2, 5);
    let m = matrix_root_pair(&p, 2).map_err(|e| e.to_string())?;
    let up = resolve_matrix_root(&m).map_err(|e| e.to_string())?;
    let x = m.basis_at(&p, 1, 0, "x").ok_or("no x")?;
    let y = m.basis_at(&p, 1, 0, "y").ok_or("no y")?;
    let reference = gallery::kronecker_u_on(&m.algebra, x, y, 0, 1);
    ensure(find_quasi_iso(&up, &reference, 0, TRIALS, SEED).map.is_some(), || "U' not certified".into())?;
    let c = completion(&up, &m.e, 4).map_err(|e| e.to_string())?;
    let oracle: Vec<usize> = (0..=4).map(|l| monomial_count(2, l)).collect();
    ensure(c.table.totals() == oracle, || format!("{:?} vs {:?}", c.table.totals(), oracle))?;
    Ok(format!("quasi-isomorphic to the Kronecker root; dims {:?}", oracle))
}

fn c8_classification() -> Outcome {
    let t = Instant::now();
    let mut types = Vec::new();
    types.extend((2..=8).map(|n| (DynkinType::A, n)));
    types.extend((4..=8).map(|n| (DynkinType::D, n)));
    types.extend((6..=8).map(|n| (DynkinType::E, n)));
    let mut cases = 0;
    for (ty, n) in types {
        for a in [2usize, 3] {
            let r = classify_dynkin_roots(ty, n, a, 4).map_err(|e| e.to_string())?;
            let expect = a == 2 && ty == DynkinType::A && n % 2 == 0;
            ensure(r.exists == expect, || format!("{}{} a={}: got {}", ty, n, a, r.exists))?;
            cases += 1;
        }
    }
    let e = within(t, Duration::from_secs(60), "classification")?;
    Ok(format!("{} cases, {:?}", cases, e))
}

fn c9_fundamental_domains() -> Outcome {
    let e = |x: cyroots_core::cluster::ClusterError| x.to_string();
    let d4 = dynkin_quiver(DynkinType::D, 4).map_err(e)?;
    let s = build_zq(&d4, (0, 12)).map_err(e)?;
    let full = orbit_quiver(&s, &cluster_auto(DynkinType::D, 4, 2).map_err(e)?, &[]).map_err(e)?.num_vertices();
    let half = orbit_quiver(&s, &make_root_auto(&d4, &AutoSpec::Tau(-2)).map_err(e)?, &[]).map_err(e)?.num_vertices();
    ensure((full, half) == (16, 8), || format!("D4 folding {} -> {}", full, half))?;
    let mut counts = Vec::new();
    for n in [2usize, 4] {
        let q = dynkin_quiver(DynkinType::A, n).map_err(e)?;
        let s = build_zq(&q, (0, 12)).map_err(e)?;
        let f = make_root_auto(&q, &AutoSpec::HalfStepFlip).map_err(e)?;
        let g = folded_auto(DynkinType::A, n, &f, 1).map_err(e)?;
        counts.push(orbit_quiver(&s, &g, &[]).map_err(e)?.num_vertices());
    }
    ensure(counts == vec![4, 12], || format!("A2, A4 domains {:?}", counts))?;
    Ok(format!("16 -> 8, A2: {}, A4: {}", counts[0], counts[1]))
}

fn c10_strict_and_cluster_tilting() -> Outcome {
    let c = gallery::a4_mod_longest(Q);
    let u = gallery::a4_square_root(&c);
    let spec = RootPairSpec { u: u.clone(), a: 2, d: 2, e: vec![0, 1] };
    let rep = check_strict_pair(&spec, TRIALS, SEED);
    ensure(rep.all_passed(), || format!("strict pair: {:?}", rep))?;
    let ct = cluster_tilting_check(&u, &[0, 1], 2, 6);
    ensure(ct.holds && ct.converged, || format!("cluster tilting: {:?}", ct))?;
    let sr = serre_check(&u, 2, 10, 12, SEED);
    ensure(sr.holds && sr.converged, || format!("Serre duality: {:?}", sr.pairs))?;
    Ok(format!("strict, Hom(P,P[1]) = 0 with dim End = {}, 10 Serre samples", ct.end_dim))
}

fn c11_strict_tensor() -> Outcome {
    let a = gallery::linear_a(Q, 2);
    let u = gallery::dual_resolution(&a);
    let spec = RootPairSpec { u: u.clone(), a: 2, d: 1, e: vec![0] };
    let st = strict_tensor_algebra(&spec, &u).map_err(|e| e.to_string())?;
    ensure(st.algebra.dim() == 9, || format!("dimension {}", st.algebra.dim()))?;
    let target = gallery::a4_mod_longest(Q);
    let m = match_small_corner_algebras(&st.algebra, &target).ok_or("no vertex matching")?;
    Ok(format!("dim 9, vertex matching {:?}", m))
}

fn c12_gorenstein() -> Outcome {
    let p2 = polynomial_ring(Q, 2, 6);
    let p3 = polynomial_ring(Q, 3, 6);
    // Koszul resolution of k: Ext^n(k, Π) is one-dimensional, in Adams degree −n
    for (g, a) in [(&p2, 2i64), (&p3, 3)] {
        let r = graded_gorenstein_check(g, a, 6);
        ensure(r.verdict == GorensteinVerdict::Yes && r.parameter == Some(a), || format!("k[{} vars]: {:?}", a, r))?;
        let ext: usize = r.ext.iter().filter(|(k, _)| **k == (a, -a)).map(|(_, d)| *d).sum();
        ensure(ext == 1 && r.ext.values().sum::<usize>() == 1, || format!("k[{} vars]: Ext {:?}", a, r.ext))?;
    }
    let k = gallery::kronecker(Q);
    let c = completion(&gallery::kronecker_u(&k, 0, 1), &[0], 8).map_err(|e| e.to_string())?;
    let pi = c.algebra.as_ref().ok_or("completion is not formal in window")?;
    let qv = quasi_veronese(pi, 2, 4);
    qv.check()?;
    let r = graded_gorenstein_check(&qv, 1, 6);
    ensure(r.verdict == GorensteinVerdict::Yes && r.parameter == Some(1), || format!("quasi-Veronese: {:?}", r))?;
    Ok(format!("k[x,y]: 2, k[x0,x1,x2]: 3, quasi-Veronese: 1 ({})", r.note))
}

fn c13_properties() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, rng_seed: proptest::test_runner::RngSeed::Fixed(SEED), ..Config::default() });
    let strategy = (0usize..3, proptest::prelude::any::<[u64; 4]>());
    runner
        .run(&strategy, |(fi, s)| {
            let f = [Field::Rational, Field::Prime(5), Field::Prime(101)][fi];
            let a = random_algebra(f, s[0]);
            let (x, y, z) = (random_two_term(&a, s[1], 2, 0), random_two_term(&a, s[2], 2, 0), random_two_term(&a, s[3], 2, -1));
            let xy = tensor_over_a(&x, &y).complex;
            proptest::prop_assert!(x.d_squared_is_zero() && xy.d_squared_is_zero());
            proptest::prop_assert!(cone(&x, &x, &x.identity_map()).is_acyclic());
            let cas = casimir(&xy);
            proptest::prop_assert!(casimir_is_cycle(&xy, &cas) && casimir_homotopic_to_identity(&xy, &cas));
            let h = resolution_of_algebra(&a).unwrap().complex.cohomology();
            let n = a.num_vertices();
            proptest::prop_assert!(h.concentrated_in(0));
            for i in 0..n {
                for j in 0..n {
                    proptest::prop_assert_eq!(h.corner(0, i, j), a.corner_indices(i, j).len());
                }
            }
            proptest::prop_assert_eq!(minimize(&xy).cohomology(), xy.cohomology());
            let l = tensor_over_a(&xy, &z).complex;
            let r = tensor_over_a(&x, &tensor_over_a(&y, &z).complex).complex;
            proptest::prop_assert_eq!(l.summand_multiset(), r.summand_multiset());
            proptest::prop_assert_eq!(l.cohomology(), r.cohomology());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("100 seeded cases".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("Kronecker root", c1_kronecker_root),
        ("Kronecker cyclic invariance", c2_cyclic_invariance),
        ("Casimir identity", c3_itsumo),
        ("completion Hilbert series", c4_completion_series),
        ("dg presentation comparison", c5_presentations),
        ("Veronese and Segre", c6_veronese_segre),
        ("matrix correspondence", c7_matrix_round_trip),
        ("Dynkin classification", c8_classification),
        ("fundamental domains", c9_fundamental_domains),
        ("strictness and cluster tilting", c10_strict_and_cluster_tilting),
        ("strict tensor instance", c11_strict_tensor),
        ("Gorenstein parameter", c12_gorenstein),
        ("property suites", c13_properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let line = match out {
            Ok(msg) => format!("criterion {:>2} PASS  {}: {} [{:.2?}]", i + 1, name, msg, t.elapsed()),
            Err(msg) => {
                failed.push(i + 1);
                format!("criterion {:>2} FAIL  {}: {} [{:.2?}]", i + 1, name, msg, t.elapsed())
            }
        };
        // written past the test harness capture so the summary always shows
        let _ = writeln!(std::io::stderr().lock(), "{}", line);
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
