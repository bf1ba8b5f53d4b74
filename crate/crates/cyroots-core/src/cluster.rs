//! Translation quivers `ℤQ`, combinatorial roots of `τ^{-1}`, orbit quotients, and
//! Hom dimensions in orbit categories `D^b(A)/(−⊗U)`.
//!
//! A vertex `(m, v)` of `ℤQ` has coordinate `x = 2m + h(v)`, where `h` is a height
//! function on `Q` with `h(target) = h(source) + 1`. Every arrow raises `x` by one
//! and joins neighbours of the underlying graph; `τ^{-1}` is `x ↦ x + 2`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bimodcx::{minimize_one_sided, rhom_right, right_tensor, ProjBimodComplex, RightComplex};
use crate::exactlin::SplitMix64;
use crate::quiveralg::Quiver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterError {
    NotAcyclic,
    NotConnected,
    UnknownType(String),
    InvalidAuto(String),
    WindowTooSmall,
    NonFreeAction { witness: (i64, usize), power: usize },
}

impl fmt::Display for ClusterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClusterError::NotAcyclic => write!(f, "quiver has an oriented cycle"),
            ClusterError::NotConnected => write!(f, "quiver is not connected"),
            ClusterError::UnknownType(s) => write!(f, "unknown Dynkin type {}", s),
            ClusterError::InvalidAuto(s) => write!(f, "not an automorphism of the translation quiver: {}", s),
            ClusterError::WindowTooSmall => write!(f, "window too small for the requested check"),
            ClusterError::NonFreeAction { witness, power } => {
                write!(f, "action is not free: power {} fixes ({},{})", power, witness.0, witness.1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl DynkinType {
    pub fn parse(s: &str) -> Result<DynkinType, ClusterError> {
        match s {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            "E" | "e" => Ok(DynkinType::E),
            _ => Err(ClusterError::UnknownType(String::from(s))),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            DynkinType::A => "A",
            DynkinType::D => "D",
            DynkinType::E => "E",
        };
        write!(f, "{}", c)
    }
}

fn check_rank(t: DynkinType, n: usize) -> Result<(), ClusterError> {
    let ok = match t {
        DynkinType::A => n >= 1,
        DynkinType::D => n >= 4,
        DynkinType::E => (6..=8).contains(&n),
    };
    if ok {
        Ok(())
    } else {
        Err(ClusterError::UnknownType(format!("{}{}", t, n)))
    }
}

/// A Dynkin quiver with a fixed orientation: `A_n` linear; `D_n` a path
/// `0 → ⋯ → n−3` followed by `n−3 → n−2`, `n−3 → n−1`; `E_n` a path `0 → ⋯ → n−2`
/// with `2 → n−1`.
pub fn dynkin_quiver(t: DynkinType, n: usize) -> Result<Quiver, ClusterError> {
    check_rank(t, n)?;
    let mut q = Quiver::with_vertices(n);
    let arrow = |q: &mut Quiver, s: usize, t: usize| {
        let name = format!("a{}", q.arrows.len());
        q.add_arrow(&name, s, t);
    };
    match t {
        DynkinType::A => {
            for i in 0..n - 1 {
                arrow(&mut q, i, i + 1);
            }
        }
        DynkinType::D => {
            for i in 0..n - 3 {
                arrow(&mut q, i, i + 1);
            }
            arrow(&mut q, n - 3, n - 2);
            arrow(&mut q, n - 3, n - 1);
        }
        DynkinType::E => {
            for i in 0..n - 2 {
                arrow(&mut q, i, i + 1);
            }
            arrow(&mut q, 2, n - 1);
        }
    }
    Ok(q)
}

pub fn coxeter_number(t: DynkinType, n: usize) -> Result<i64, ClusterError> {
    check_rank(t, n)?;
    Ok(match (t, n) {
        (DynkinType::A, _) => n as i64 + 1,
        (DynkinType::D, _) => 2 * n as i64 - 2,
        (DynkinType::E, 6) => 12,
        (DynkinType::E, 7) => 18,
        _ => 30,
    })
}

/// Height with `h(target) = h(source) + 1`, normalized to minimum 0.
fn height(q: &Quiver) -> Result<Vec<i64>, ClusterError> {
    let n = q.num_vertices();
    if !q.is_acyclic() {
        return Err(ClusterError::NotAcyclic);
    }
    let mut h: Vec<Option<i64>> = vec![None; n];
    if n == 0 {
        return Ok(Vec::new());
    }
    h[0] = Some(0);
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let hv = h[v].unwrap();
        for a in &q.arrows {
            let (w, hw) = if a.source == v {
                (a.target, hv + 1)
            } else if a.target == v {
                (a.source, hv - 1)
            } else {
                continue;
            };
            match h[w] {
                None => {
                    h[w] = Some(hw);
                    stack.push(w);
                }
                Some(x) if x != hw => {
                    return Err(ClusterError::InvalidAuto(String::from("quiver has no height function")));
                }
                _ => {}
            }
        }
    }
    if h.iter().any(|x| x.is_none()) {
        return Err(ClusterError::NotConnected);
    }
    let min = h.iter().map(|x| x.unwrap()).min().unwrap();
    Ok(h.into_iter().map(|x| x.unwrap() - min).collect())
}

/// Neighbour sets of the underlying graph.
fn neighbours(q: &Quiver) -> Vec<BTreeSet<usize>> {
    let mut nb = vec![BTreeSet::new(); q.num_vertices()];
    for a in &q.arrows {
        nb[a.source].insert(a.target);
        nb[a.target].insert(a.source);
    }
    nb
}

/// The full subquiver of `ℤQ` on columns `m₀ ≤ m ≤ m₁`.
#[derive(Clone, Debug)]
pub struct TransQuiverSlice {
    pub quiver: Quiver,
    pub height: Vec<i64>,
    pub window: (i64, i64),
    pub vertices: Vec<(i64, usize)>,
    pub arrows: Vec<(usize, usize)>,
    index: BTreeMap<(i64, usize), usize>,
}

pub fn build_zq(q: &Quiver, window: (i64, i64)) -> Result<TransQuiverSlice, ClusterError> {
    let height = height(q)?;
    let mut vertices = Vec::new();
    for m in window.0..=window.1 {
        for v in 0..q.num_vertices() {
            vertices.push((m, v));
        }
    }
    let index: BTreeMap<(i64, usize), usize> = vertices.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut arrows = Vec::new();
    for m in window.0..=window.1 {
        for a in &q.arrows {
            arrows.push((index[&(m, a.source)], index[&(m, a.target)]));
            if let Some(&t) = index.get(&(m + 1, a.source)) {
                arrows.push((index[&(m, a.target)], t));
            }
        }
    }
    arrows.sort_unstable();
    Ok(TransQuiverSlice { quiver: q.clone(), height, window, vertices, arrows, index })
}

impl TransQuiverSlice {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, p: (i64, usize)) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn coordinate(&self, p: (i64, usize)) -> i64 {
        2 * p.0 + self.height[p.1]
    }

    pub fn from_coordinate(&self, x: i64, v: usize) -> Option<(i64, usize)> {
        let r = x - self.height[v];
        if r.rem_euclid(2) != 0 {
            None
        } else {
            Some((r.div_euclid(2), v))
        }
    }

    pub fn tau(&self, p: (i64, usize)) -> Option<(i64, usize)> {
        self.index_of((p.0 - 1, p.1)).map(|_| (p.0 - 1, p.1))
    }

    pub fn tau_inverse(&self, p: (i64, usize)) -> Option<(i64, usize)> {
        self.index_of((p.0 + 1, p.1)).map(|_| (p.0 + 1, p.1))
    }

    pub fn has_arrow(&self, s: (i64, usize), t: (i64, usize)) -> bool {
        match (self.index_of(s), self.index_of(t)) {
            (Some(i), Some(j)) => self.arrows.binary_search(&(i, j)).is_ok(),
            _ => false,
        }
    }

    /// Vertices whose τ and τ^{-1} both lie in the slice.
    pub fn interior(&self) -> Vec<(i64, usize)> {
        self.vertices.iter().copied().filter(|p| p.0 > self.window.0 && p.0 < self.window.1).collect()
    }

    /// Arrows of `ℤQ` leaving `p`, whether or not the target lies in the slice.
    pub fn arrows_from(&self, p: (i64, usize)) -> Vec<(i64, usize)> {
        let x = self.coordinate(p);
        let mut out = Vec::new();
        for w in &neighbours(&self.quiver)[p.1] {
            if let Some(t) = self.from_coordinate(x + 1, *w) {
                out.push(t);
            }
        }
        out
    }
}

/// `F(x, v) = (x + shift, perm[v])` for a graph automorphism `perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverAuto {
    pub shift: i64,
    pub perm: Vec<usize>,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoSpec {
    /// `τ^k`
    Tau(i64),
    Graph { perm: Vec<usize>, shift: i64 },
    /// The up-side-down flip of `ℤA_n` with a half-unit translation.
    HalfStepFlip,
}

impl QuiverAuto {
    pub fn identity(n: usize) -> QuiverAuto {
        QuiverAuto { shift: 0, perm: (0..n).collect(), name: String::from("id") }
    }

    pub fn apply(&self, slice: &TransQuiverSlice, p: (i64, usize)) -> (i64, usize) {
        let x = slice.coordinate(p) + self.shift;
        let w = self.perm[p.1];
        slice.from_coordinate(x, w).expect("validated automorphism preserves parity")
    }

    pub fn inverse(&self) -> QuiverAuto {
        let mut inv = vec![0; self.perm.len()];
        for (v, &w) in self.perm.iter().enumerate() {
            inv[w] = v;
        }
        QuiverAuto { shift: -self.shift, perm: inv, name: format!("({})^-1", self.name) }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &QuiverAuto) -> QuiverAuto {
        QuiverAuto {
            shift: self.shift + first.shift,
            perm: first.perm.iter().map(|&v| self.perm[v]).collect(),
            name: format!("{}∘{}", self.name, first.name),
        }
    }

    pub fn power(&self, k: i64) -> QuiverAuto {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = QuiverAuto::identity(self.perm.len());
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out.name = format!("({})^{}", self.name, k);
        out
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.perm.iter().enumerate().all(|(v, &w)| v == w)
    }
}

/// Checks that `perm` is a graph automorphism and the shift respects parities.
pub fn validate_auto(q: &Quiver, f: &QuiverAuto) -> Result<(), ClusterError> {
    let n = q.num_vertices();
    let h = height(q)?;
    if f.perm.len() != n || f.perm.iter().collect::<BTreeSet<_>>().len() != n || f.perm.iter().any(|&w| w >= n) {
        return Err(ClusterError::InvalidAuto(String::from("not a permutation of the vertices")));
    }
    let nb = neighbours(q);
    for v in 0..n {
        let img: BTreeSet<usize> = nb[v].iter().map(|&w| f.perm[w]).collect();
        if img != nb[f.perm[v]] {
            return Err(ClusterError::InvalidAuto(format!("vertex {} loses its neighbours", v)));
        }
        if (f.shift + h[v] - h[f.perm[v]]).rem_euclid(2) != 0 {
            return Err(ClusterError::InvalidAuto(format!("shift {} has the wrong parity at vertex {}", f.shift, v)));
        }
    }
    Ok(())
}

pub fn make_root_auto(q: &Quiver, spec: &AutoSpec) -> Result<QuiverAuto, ClusterError> {
    let n = q.num_vertices();
    let f = match spec {
        AutoSpec::Tau(k) => QuiverAuto { shift: -2 * k, perm: (0..n).collect(), name: format!("tau^{}", k) },
        AutoSpec::Graph { perm, shift } => QuiverAuto { shift: *shift, perm: perm.clone(), name: format!("sigma{:?}+{}", perm, shift) },
        AutoSpec::HalfStepFlip => {
            let nb = neighbours(q);
            if nb.iter().any(|s| s.len() > 2) || q.arrows.len() + 1 != n {
                return Err(ClusterError::InvalidAuto(String::from("the half-step flip needs type A")));
            }
            // order the vertices along the line
            let start = (0..n).find(|&v| nb[v].len() <= 1).unwrap_or(0);
            let mut line = vec![start];
            while line.len() < n {
                let last = *line.last().unwrap();
                let next = nb[last].iter().copied().find(|w| !line.contains(w)).unwrap();
                line.push(next);
            }
            let mut perm = vec![0; n];
            for (k, &v) in line.iter().enumerate() {
                perm[v] = line[n - 1 - k];
            }
            QuiverAuto { shift: 1, perm, name: String::from("flip+1/2") }
        }
    };
    validate_auto(q, &f)?;
    Ok(f)
}

/// Whether `F^a = τ^{-1}` on every vertex of the slice where both sides are defined
/// without leaving it.
pub fn check_combinatorial_root(slice: &TransQuiverSlice, f: &QuiverAuto, a: usize) -> Result<bool, ClusterError> {
    validate_auto(&slice.quiver, f)?;
    let mut tested = 0usize;
    for &p in &slice.vertices {
        let Some(target) = slice.tau_inverse(p) else { continue };
        let mut cur = p;
        let mut inside = true;
        for _ in 0..a {
            cur = f.apply(slice, cur);
            if slice.index_of(cur).is_none() {
                inside = false;
                break;
            }
        }
        if !inside {
            continue;
        }
        tested += 1;
        if cur != target {
            return Ok(false);
        }
    }
    if tested == 0 {
        return Err(ClusterError::WindowTooSmall);
    }
    // arrows must be carried to arrows where both ends stay in the slice
    for &(i, j) in &slice.arrows {
        let (s, t) = (f.apply(slice, slice.vertices[i]), f.apply(slice, slice.vertices[j]));
        if slice.index_of(s).is_some() && slice.index_of(t).is_some() && !slice.has_arrow(s, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All graph automorphisms of the underlying graph of `q`.
pub fn graph_automorphisms(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.num_vertices();
    let nb = neighbours(q);
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(v: usize, n: usize, nb: &[BTreeSet<usize>], perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if v == n {
            out.push(perm.clone());
            return;
        }
        for w in 0..n {
            if used[w] || nb[w].len() != nb[v].len() {
                continue;
            }
            // adjacency with already placed vertices must be preserved
            let ok = (0..v).all(|u| nb[v].contains(&u) == nb[w].contains(&perm[u]));
            if !ok {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            go(v + 1, n, nb, perm, used, out);
            used[w] = false;
        }
        perm[v] = usize::MAX;
    }
    go(0, n, &nb, &mut perm, &mut used, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct RootSearch {
    pub exists: bool,
    pub witness: Option<QuiverAuto>,
    pub candidates: usize,
}

/// Searches `F = (x ↦ x + c, σ)` over graph automorphisms `σ` (the half-step flip of
/// type `A` is the case `σ` = reversal, `c` odd) and `|c| ≤ window` for `F^a = τ^{-1}`.
pub fn classify_dynkin_roots(t: DynkinType, n: usize, a: usize, window: i64) -> Result<RootSearch, ClusterError> {
    let q = dynkin_quiver(t, n)?;
    let cols = a as i64 * window / 2 + 3;
    let slice = build_zq(&q, (0, 2 * cols))?;
    let mut candidates = 0;
    for perm in graph_automorphisms(&q) {
        for c in -window..=window {
            let f = QuiverAuto { shift: c, perm: perm.clone(), name: format!("sigma{:?}+{}", perm, c) };
            if validate_auto(&q, &f).is_err() {
                continue;
            }
            candidates += 1;
            if check_combinatorial_root(&slice, &f, a)? {
                return Ok(RootSearch { exists: true, witness: Some(f), candidates });
            }
        }
    }
    Ok(RootSearch { exists: false, witness: None, candidates })
}

/// The suspension `[1]` of `D^b(kQ)` on `ℤQ`: `x ↦ x + h` composed with the
/// Nakayama permutation (reversal for `A_n`, the leg swap for `D_n` with `n` odd,
/// the flip for `E_6`).
pub fn suspension_auto(t: DynkinType, n: usize) -> Result<QuiverAuto, ClusterError> {
    let q = dynkin_quiver(t, n)?;
    let h = coxeter_number(t, n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    match t {
        DynkinType::A => perm.reverse(),
        DynkinType::D if n % 2 == 1 => perm.swap(n - 2, n - 1),
        DynkinType::E if n == 6 => {
            // path 0-1-2-3-4 with 5 attached at 2
            perm = vec![4, 3, 2, 1, 0, 5];
        }
        _ => {}
    }
    let f = QuiverAuto { shift: h, perm, name: String::from("[1]") };
    validate_auto(&q, &f)?;
    Ok(f)
}

/// The Serre functor `ν = τ[1]`.
pub fn serre_auto(t: DynkinType, n: usize) -> Result<QuiverAuto, ClusterError> {
    let mut s = suspension_auto(t, n)?;
    s.shift -= 2;
    s.name = String::from("nu");
    Ok(s)
}

/// Generator `ν[−d]` of the `d`-cluster category.
pub fn cluster_auto(t: DynkinType, n: usize, d: i64) -> Result<QuiverAuto, ClusterError> {
    let nu = serre_auto(t, n)?;
    let mut g = suspension_auto(t, n)?.power(-d).compose(&nu);
    g.name = format!("nu[-{}]", d);
    Ok(g)
}

/// Generator `F[d]` for a root `F` of `τ^{-1}`.
pub fn folded_auto(t: DynkinType, n: usize, root: &QuiverAuto, d: i64) -> Result<QuiverAuto, ClusterError> {
    let mut g = suspension_auto(t, n)?.power(d).compose(root);
    g.name = format!("{}[{}]", root.name, d);
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct OrbitQuiver {
    /// representatives (m, v) of the orbits, which form the fundamental domain
    pub domain: Vec<(i64, usize)>,
    /// induced arrows between orbit indices, with multiplicity
    pub arrows: Vec<(usize, usize)>,
    /// orbit index of every slice vertex
    pub orbit_of: Vec<usize>,
    pub marked: BTreeSet<usize>,
    pub slice: TransQuiverSlice,
}

/// Quotient of `ℤQ` by `⟨g⟩`. The fundamental domain consists of the slice vertices with
/// `x₀ ≤ x < x₀ + |shift|`, where `x₀` is the largest coordinate in the first column.
pub fn orbit_quiver(slice: &TransQuiverSlice, g: &QuiverAuto, markings: &[(i64, usize)]) -> Result<OrbitQuiver, ClusterError> {
    validate_auto(&slice.quiver, g)?;
    let n = slice.quiver.num_vertices();
    if g.shift == 0 {
        // a finite group: free only if no nontrivial power fixes a vertex
        let mut k = g.clone();
        let mut power = 1;
        while !k.is_identity() {
            if let Some(v) = (0..n).find(|&v| k.perm[v] == v) {
                return Err(ClusterError::NonFreeAction { witness: (slice.window.0, v), power });
            }
            k = g.compose(&k);
            power += 1;
        }
        if power > 1 {
            return Err(ClusterError::InvalidAuto(String::from("quotients by finite vertex permutations are not supported")));
        }
        let domain = slice.vertices.clone();
        let arrows = slice.arrows.clone();
        let orbit_of = (0..slice.len()).collect();
        let marked = markings.iter().filter_map(|p| slice.index_of(*p)).collect();
        return Ok(OrbitQuiver { domain, arrows, orbit_of, marked, slice: slice.clone() });
    }
    let step = g.shift.abs();
    let forward = if g.shift > 0 { g.clone() } else { g.inverse() };
    let back = forward.inverse();
    // every vertex with x₀ ≤ x ≤ x_max lies in the slice
    let x0 = (0..n).map(|v| slice.coordinate((slice.window.0, v))).max().ok_or(ClusterError::WindowTooSmall)?;
    let xmax = (0..n).map(|v| slice.coordinate((slice.window.1, v))).min().ok_or(ClusterError::WindowTooSmall)?;
    if xmax < x0 + step - 1 {
        return Err(ClusterError::WindowTooSmall);
    }
    let domain: Vec<(i64, usize)> = slice
        .vertices
        .iter()
        .copied()
        .filter(|p| {
            let x = slice.coordinate(*p);
            x >= x0 && x < x0 + step
        })
        .collect();
    let dindex: BTreeMap<(i64, usize), usize> = domain.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let rep = |p: (i64, usize)| -> usize {
        let mut cur = p;
        while slice.coordinate(cur) >= x0 + step {
            cur = back.apply(slice, cur);
        }
        while slice.coordinate(cur) < x0 {
            cur = forward.apply(slice, cur);
        }
        dindex[&cur]
    };
    let orbit_of: Vec<usize> = slice.vertices.iter().map(|&p| rep(p)).collect();
    let mut arrows = Vec::new();
    for p in &domain {
        for t in slice.arrows_from(*p) {
            arrows.push((dindex[p], rep(t)));
        }
    }
    arrows.sort_unstable();
    let marked = markings.iter().map(|&p| rep(p)).collect();
    Ok(OrbitQuiver { domain, arrows, orbit_of, marked, slice: slice.clone() })
}

impl OrbitQuiver {
    pub fn num_vertices(&self) -> usize {
        self.domain.len()
    }

    pub fn orbit_name(&self, k: usize) -> String {
        let (m, v) = self.domain[k];
        format!("[{},{}]", m, v)
    }

    /// The slice with vertices named `(m,v)` and labelled by their orbit `[m,v]`;
    /// the fundamental domain is the cluster `cluster_domain` and marked orbits
    /// carry `marked=true`.
    pub fn to_dot(&self) -> String {
        let s = &self.slice;
        let mut out = String::from("digraph orbit {\n  rankdir=LR;\n");
        let name = |p: (i64, usize)| format!("\"({},{})\"", p.0, p.1);
        let node = |k: usize| {
            let p = s.vertices[k];
            let o = self.orbit_of[k];
            let mut attrs = format!("label=\"{}\"", self.orbit_name(o));
            if self.marked.contains(&o) {
                attrs.push_str(", marked=true, shape=doublecircle");
            }
            format!("{} [{}];\n", name(p), attrs)
        };
        let in_domain: BTreeSet<(i64, usize)> = self.domain.iter().copied().collect();
        out.push_str("  subgraph cluster_domain {\n    label=\"fundamental domain\";\n");
        for k in 0..s.len() {
            if in_domain.contains(&s.vertices[k]) {
                out.push_str("    ");
                out.push_str(&node(k));
            }
        }
        out.push_str("  }\n");
        for k in 0..s.len() {
            if !in_domain.contains(&s.vertices[k]) {
                out.push_str("  ");
                out.push_str(&node(k));
            }
        }
        for &(i, j) in &s.arrows {
            out.push_str(&format!("  {} -> {};\n", name(s.vertices[i]), name(s.vertices[j])));
        }
        out.push_str("}\n");
        out
    }
}

/// `Hom_C(X, Y) = ⊕_i Hom_D(X, Y⊗U^i)` truncated to `|i| ≤ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHom {
    pub dim: usize,
    /// `(i, dim Hom_D(X, Y⊗U^i))` for `−W ≤ i ≤ W`
    pub terms: Vec<(i64, usize)>,
    /// the terms with `|i| ∈ {W−1, W}` vanish
    pub converged: bool,
    pub window: usize,
}

fn powers(x: &RightComplex, u: &ProjBimodComplex, w: usize) -> Vec<RightComplex> {
    let mut out = vec![x.clone()];
    for _ in 0..w {
        let next = minimize_one_sided(&right_tensor(out.last().unwrap(), u));
        out.push(next);
    }
    out
}

fn h0(x: &RightComplex, y: &RightComplex) -> usize {
    rhom_right(x, y).cohomology_dim(0)
}

pub fn orbit_hom(u: &ProjBimodComplex, x: &RightComplex, y: &RightComplex, w: usize) -> OrbitHom {
    let w = w.max(1);
    let ys = powers(y, u, w);
    let xs = powers(x, u, w);
    let mut terms = Vec::new();
    for i in (1..=w).rev() {
        terms.push((-(i as i64), h0(&xs[i], y)));
    }
    for (i, yi) in ys.iter().enumerate() {
        terms.push((i as i64, h0(x, yi)));
    }
    let dim = terms.iter().map(|t| t.1).sum();
    let tail = if w >= 2 { w - 1 } else { w };
    let converged = terms.iter().filter(|(i, _)| i.unsigned_abs() as usize >= tail).all(|t| t.1 == 0);
    OrbitHom { dim, terms, converged, window: w }
}

/// Rows `(X, Y, dim Hom_C(X, Y))` with the window used.
#[derive(Clone, Debug, Default)]
pub struct HomTable {
    pub window: usize,
    pub rows: Vec<(String, String, usize)>,
    pub converged: bool,
}

impl HomTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,dim\n");
        for (x, y, d) in &self.rows {
            s.push_str(&format!("{},{},{}\n", x, y, d));
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct ClusterTiltingReport {
    pub holds: bool,
    pub converged: bool,
    /// `(j, dim Hom_C(P, P[j]))`
    pub ext: Vec<(i64, usize)>,
    pub end_dim: usize,
}

/// `Hom_C(eA, eA[j]) = 0` for `1 ≤ j ≤ d − 1`, together with `dim End_C(eA)`.
pub fn cluster_tilting_check(u: &ProjBimodComplex, e: &[usize], d: i64, w: usize) -> ClusterTiltingReport {
    let p = RightComplex::projective(u.base.clone(), e);
    let end = orbit_hom(u, &p, &p, w);
    let mut converged = end.converged;
    let mut ext = Vec::new();
    for j in 1..d {
        let h = orbit_hom(u, &p, &p.shift(j), w);
        converged &= h.converged;
        ext.push((j, h.dim));
    }
    ClusterTiltingReport { holds: ext.iter().all(|e| e.1 == 0), converged, ext, end_dim: end.dim }
}

/// One sampled object `e_vA ⊗ U^i [j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleObject {
    pub vertex: usize,
    pub power: usize,
    pub shift: i64,
}

impl fmt::Display for SampleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}U^{}[{}]", self.vertex, self.power, self.shift)
    }
}

pub fn realize(u: &ProjBimodComplex, s: &SampleObject) -> RightComplex {
    let mut x = RightComplex::projective(u.base.clone(), &[s.vertex]);
    for _ in 0..s.power {
        x = minimize_one_sided(&right_tensor(&x, u));
    }
    x.shift(s.shift)
}

#[derive(Clone, Debug)]
pub struct SerreReport {
    pub holds: bool,
    pub converged: bool,
    pub pairs: Vec<(SampleObject, SampleObject, usize, usize)>,
}

/// `dim Hom_C(X, Y) = dim Hom_C(Y, X[d])` on seeded samples `X, Y = e_vA⊗U^i[j]`
/// with `0 ≤ i ≤ 2`, `|j| ≤ 1`.
pub fn serre_check(u: &ProjBimodComplex, d: i64, samples: usize, w: usize, seed: u64) -> SerreReport {
    let nv = u.base.num_vertices();
    let mut rng = SplitMix64::new(seed);
    let draw = |rng: &mut SplitMix64| SampleObject {
        vertex: rng.below(nv),
        power: rng.below(3),
        shift: rng.range_i64(-1, 1),
    };
    let mut pairs = Vec::new();
    let mut holds = true;
    let mut converged = true;
    for _ in 0..samples {
        let (sx, sy) = (draw(&mut rng), draw(&mut rng));
        let (x, y) = (realize(u, &sx), realize(u, &sy));
        let lhs = orbit_hom(u, &x, &y, w);
        let rhs = orbit_hom(u, &y, &x.shift(d), w);
        holds &= lhs.dim == rhs.dim;
        converged &= lhs.converged && rhs.converged;
        pairs.push((sx, sy, lhs.dim, rhs.dim));
    }
    SerreReport { holds, converged, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::gallery;

    #[test]
    fn zq_slice() {
        let q = dynkin_quiver(DynkinType::A, 2).unwrap();
        let s = build_zq(&q, (0, 2)).unwrap();
        assert_eq!(s.len(), 6);
        // (m,0)→(m,1) and (m,1)→(m+1,0)
        assert_eq!(s.arrows.len(), 5);
        assert!(s.has_arrow((0, 0), (0, 1)) && s.has_arrow((0, 1), (1, 0)));
        let one = build_zq(&q, (0, 0)).unwrap();
        assert_eq!(one.arrows.len(), 1);
        for p in s.interior() {
            assert_eq!(s.tau(s.tau_inverse(p).unwrap()), Some(p));
        }
    }

    #[test]
    fn combinatorial_roots() {
        let q = dynkin_quiver(DynkinType::A, 4).unwrap();
        let s = build_zq(&q, (0, 8)).unwrap();
        let f = make_root_auto(&q, &AutoSpec::HalfStepFlip).unwrap();
        assert!(check_combinatorial_root(&s, &f, 2).unwrap());
        let t = make_root_auto(&q, &AutoSpec::Tau(-1)).unwrap();
        assert!(check_combinatorial_root(&s, &t, 1).unwrap());
        let q3 = dynkin_quiver(DynkinType::A, 3).unwrap();
        assert!(make_root_auto(&q3, &AutoSpec::HalfStepFlip).is_err());
        let tiny = build_zq(&q, (0, 0)).unwrap();
        assert_eq!(check_combinatorial_root(&tiny, &t, 1), Err(ClusterError::WindowTooSmall));
    }

    #[test]
    fn classification() {
        for n in 2..=8 {
            let r = classify_dynkin_roots(DynkinType::A, n, 2, 4).unwrap();
            assert_eq!(r.exists, n % 2 == 0, "A{}", n);
            assert!(!classify_dynkin_roots(DynkinType::A, n, 3, 4).unwrap().exists);
        }
        for n in 4..=8 {
            assert!(!classify_dynkin_roots(DynkinType::D, n, 2, 4).unwrap().exists);
        }
        for n in 6..=8 {
            assert!(!classify_dynkin_roots(DynkinType::E, n, 2, 4).unwrap().exists);
        }
        assert_eq!(graph_automorphisms(&dynkin_quiver(DynkinType::D, 4).unwrap()).len(), 6);
    }

    #[test]
    fn fundamental_domains() {
        let q = dynkin_quiver(DynkinType::D, 4).unwrap();
        let s = build_zq(&q, (0, 12)).unwrap();
        let c2 = orbit_quiver(&s, &cluster_auto(DynkinType::D, 4, 2).unwrap(), &[]).unwrap();
        assert_eq!(c2.num_vertices(), 16);
        let half = make_root_auto(&q, &AutoSpec::Tau(-2)).unwrap();
        assert_eq!(half.power(-2).shift, cluster_auto(DynkinType::D, 4, 2).unwrap().shift);
        assert_eq!(orbit_quiver(&s, &half, &[]).unwrap().num_vertices(), 8);
        for (n, expect) in [(2usize, 4usize), (4, 12)] {
            let q = dynkin_quiver(DynkinType::A, n).unwrap();
            let s = build_zq(&q, (0, 12)).unwrap();
            let f = make_root_auto(&q, &AutoSpec::HalfStepFlip).unwrap();
            let g = folded_auto(DynkinType::A, n, &f, 1).unwrap();
            let o = orbit_quiver(&s, &g, &[(0, 0)]).unwrap();
            assert_eq!(o.num_vertices(), expect);
            // every orbit vertex has the in- and out-degree of ℤQ
            assert_eq!(o.arrows.len(), expect * 2 - expect * 2 / n);
            assert!(o.to_dot().contains("cluster_domain"));
        }
        let id = orbit_quiver(&s, &QuiverAuto::identity(4), &[]).unwrap();
        assert_eq!(id.num_vertices(), s.len());
    }

    #[test]
    fn a4_pair_cluster_tilting_and_serre() {
        let c = gallery::a4_mod_longest(Field::Rational);
        let u = gallery::a4_square_root(&c);
        let ct = cluster_tilting_check(&u, &[0, 1], 2, 6);
        assert!(ct.holds && ct.converged, "{:?}", ct);
        let sr = serre_check(&u, 2, 10, 12, 1);
        assert!(sr.holds && sr.converged, "{:?}", sr);
        let empty = RightComplex::new(c.clone());
        assert_eq!(orbit_hom(&u, &empty, &empty, 3).dim, 0);
        assert!(cluster_tilting_check(&u, &[0, 1], 1, 3).holds);
    }
}
