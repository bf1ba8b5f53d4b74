//! Adams-truncated tensor algebras, completions, dg path algebras and graded constructions.
//!
//! Everything here is computed up to an explicit Adams cutoff `N`; verdicts hold
//! "within the window" only.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bimodcx::{minimize, resolution_of_algebra, resolve_bimodule, tensor_over_a, BimodError, Cohomology, ProjBimodComplex};
use crate::exactlin::{Echelon, Field, Scalar, SparseMap, SparseVec, Subspace};
use crate::quiveralg::{BasisElem, Bimodule, PathBasisAlgebra, Quiver, QuiverError, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionError {
    Bimod(BimodError),
    Quiver(QuiverError),
    /// the computation was stopped; the table holds the Adams degrees finished so far
    ResourceLimit { partial: BidegreeTable, limit: usize },
    NotLocallyFinite(String),
    InsufficientTruncation { needed: usize, have: usize },
    NotConcentrated(String),
    Invalid(String),
}

impl fmt::Display for CompletionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionError::Bimod(e) => write!(f, "{}", e),
            CompletionError::Quiver(e) => write!(f, "{}", e),
            CompletionError::ResourceLimit { partial, limit } => {
                write!(f, "more than {} summands; finished Adams degrees up to {}", limit, partial.cutoff)
            }
            CompletionError::NotLocallyFinite(s) => write!(f, "not locally finite: {}", s),
            CompletionError::InsufficientTruncation { needed, have } => {
                write!(f, "need Adams degrees up to {}, have {}", needed, have)
            }
            CompletionError::NotConcentrated(s) => write!(f, "not concentrated in cohomological degree 0: {}", s),
            CompletionError::Invalid(s) => write!(f, "{}", s),
        }
    }
}

impl From<BimodError> for CompletionError {
    fn from(e: BimodError) -> Self {
        CompletionError::Bimod(e)
    }
}

impl From<QuiverError> for CompletionError {
    fn from(e: QuiverError) -> Self {
        CompletionError::Quiver(e)
    }
}

/// Dimensions indexed by (Adams degree, cohomological degree); zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidegreeTable {
    pub cutoff: usize,
    pub dims: BTreeMap<(usize, i64), usize>,
}

impl BidegreeTable {
    pub fn new(cutoff: usize) -> BidegreeTable {
        BidegreeTable { cutoff, dims: BTreeMap::new() }
    }

    pub fn add(&mut self, adams: usize, cdeg: i64, d: usize) {
        if d > 0 {
            *self.dims.entry((adams, cdeg)).or_insert(0) += d;
        }
    }

    pub fn get(&self, adams: usize, cdeg: i64) -> usize {
        self.dims.get(&(adams, cdeg)).copied().unwrap_or(0)
    }

    /// Total dimension in each Adams degree `0..=cutoff`.
    pub fn totals(&self) -> Vec<usize> {
        let mut v = vec![0; self.cutoff + 1];
        for (&(l, _), &d) in &self.dims {
            if l <= self.cutoff {
                v[l] += d;
            }
        }
        v
    }

    pub fn concentrated_in(&self, p: i64) -> bool {
        self.dims.keys().all(|&(_, q)| q == p)
    }

    pub fn truncate(&self, n: usize) -> BidegreeTable {
        BidegreeTable { cutoff: n.min(self.cutoff), dims: self.dims.iter().filter(|(k, _)| k.0 <= n).map(|(k, v)| (*k, *v)).collect() }
    }

    /// CSV with header `adams,cdeg,dim`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("adams,cdeg,dim\n");
        for (&(l, p), &d) in &self.dims {
            s.push_str(&format!("{},{},{}\n", l, p, d));
        }
        s
    }
}

/// `U^{⊗l}` for `0 ≤ l ≤ N`, with component 0 the bimodule resolution of `A`.
#[derive(Clone, Debug)]
pub struct TruncatedTensorAlgebra {
    pub base: Arc<PathBasisAlgebra>,
    pub u: ProjBimodComplex,
    pub cutoff: usize,
    pub components: Vec<ProjBimodComplex>,
    pub cohomology: Vec<Cohomology>,
}

impl TruncatedTensorAlgebra {
    pub fn table(&self) -> BidegreeTable {
        let mut t = BidegreeTable::new(self.cutoff);
        for (l, h) in self.cohomology.iter().enumerate() {
            for &p in h.by_degree.keys() {
                t.add(l, p, h.total(p));
            }
        }
        t
    }

    pub fn restricted_table(&self, e: &[usize]) -> BidegreeTable {
        let mut t = BidegreeTable::new(self.cutoff);
        for (l, h) in self.cohomology.iter().enumerate() {
            for &p in h.by_degree.keys() {
                let mut d = 0;
                for &a in e {
                    for &b in e {
                        d += h.corner(p, a, b);
                    }
                }
                t.add(l, p, d);
            }
        }
        t
    }
}

/// Default bound on the number of summands of a single component.
pub const DEFAULT_SUMMAND_LIMIT: usize = 20_000;

pub fn tensor_algebra(u: &ProjBimodComplex, n: usize) -> Result<TruncatedTensorAlgebra, CompletionError> {
    tensor_algebra_limited(u, n, DEFAULT_SUMMAND_LIMIT)
}

/// Components are minimized after every tensor step; their cohomology is unchanged.
pub fn tensor_algebra_limited(u: &ProjBimodComplex, n: usize, limit: usize) -> Result<TruncatedTensorAlgebra, CompletionError> {
    let base = u.base.clone();
    let v = u.validate();
    if !v.is_valid() {
        return Err(CompletionError::Invalid(format!("U is not a valid complex: {:?}", v.violations)));
    }
    let res = resolution_of_algebra(&base)?;
    let mut components = vec![res.complex];
    let mut cohomology = vec![components[0].cohomology()];
    let u_min = minimize(u);
    for l in 1..=n {
        let next = if l == 1 { u_min.clone() } else { tensor_over_a(&components[l - 1], &u_min).complex };
        if next.len() > limit {
            let mut partial = BidegreeTable::new(l - 1);
            for (k, h) in cohomology.iter().enumerate() {
                for &p in h.by_degree.keys() {
                    partial.add(k, p, h.total(p));
                }
            }
            return Err(CompletionError::ResourceLimit { partial, limit });
        }
        let next = minimize(&next);
        cohomology.push(next.cohomology());
        components.push(next);
    }
    Ok(TruncatedTensorAlgebra { base, u: u.clone(), cutoff: n, components, cohomology })
}

/// `⊕_l e·U^{⊗l}·e` up to Adams degree `N`.
#[derive(Clone, Debug)]
pub struct CompletionData {
    pub e: Vec<usize>,
    pub cutoff: usize,
    pub table: BidegreeTable,
    /// cohomology-level algebra, present when every `H(U^{⊗l})` sits in degree 0
    /// and agrees with the underived tensor algebra of `H⁰(U)`
    pub algebra: Option<GradedAlgebraData>,
}

pub fn completion(u: &ProjBimodComplex, e: &[usize], n: usize) -> Result<CompletionData, CompletionError> {
    if e.is_empty() {
        return Err(CompletionError::Invalid(String::from("idempotent must be nonempty")));
    }
    let t = tensor_algebra(u, n)?;
    Ok(completion_from(&t, e))
}

pub fn completion_from(t: &TruncatedTensorAlgebra, e: &[usize]) -> CompletionData {
    let table = t.restricted_table(e);
    let algebra = cohomology_algebra(t).map(|g| g.restrict(e));
    CompletionData { e: e.to_vec(), cutoff: t.cutoff, table, algebra }
}

/// `T_A(H⁰U)` when it computes the derived tensor algebra within the window.
pub fn cohomology_algebra(t: &TruncatedTensorAlgebra) -> Option<GradedAlgebraData> {
    if !t.cohomology.iter().all(|h| h.concentrated_in(0)) || !t.base.all_cdeg_zero() {
        return None;
    }
    let v = t.u.cohomology_bimodule(0);
    let g = tensor_algebra_of_bimodule(&t.base, &v, t.cutoff);
    let derived = t.table().totals();
    if g.dims() != derived {
        return None;
    }
    Some(g)
}

/// Whether `e·Σ·e` has cohomology only in degree 0 up to the cutoff.
pub fn rep_infinite_check(c: &CompletionData) -> bool {
    c.table.concentrated_in(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GElem {
    pub adeg: usize,
    pub cdeg: i64,
    pub target: usize,
    pub source: usize,
    pub label: String,
}

/// A graded algebra over finitely many vertices, stored up to an Adams cutoff.
/// Products landing beyond the cutoff are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebraData {
    pub field: Field,
    pub vertex_labels: Vec<String>,
    pub cutoff: usize,
    pub elems: Vec<GElem>,
    /// element indices per Adams degree
    pub blocks: Vec<Vec<usize>>,
    /// vertex idempotents, in block 0
    pub units: Vec<usize>,
    mult: BTreeMap<(usize, usize), SparseVec>,
}

impl GradedAlgebraData {
    fn empty(field: Field, vertex_labels: Vec<String>, cutoff: usize) -> GradedAlgebraData {
        GradedAlgebraData { field, vertex_labels, cutoff, elems: Vec::new(), blocks: vec![Vec::new(); cutoff + 1], units: Vec::new(), mult: BTreeMap::new() }
    }

    fn push(&mut self, e: GElem) -> usize {
        let k = self.elems.len();
        self.blocks[e.adeg].push(k);
        self.elems.push(e);
        k
    }

    fn set(&mut self, i: usize, j: usize, v: SparseVec) {
        if !v.is_empty() {
            self.mult.insert((i, j), v);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Dimension of each Adams block.
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn table(&self) -> BidegreeTable {
        let mut t = BidegreeTable::new(self.cutoff);
        for e in &self.elems {
            t.add(e.adeg, e.cdeg, 1);
        }
        t
    }

    /// `dim e_t·Γ_l·e_s`.
    pub fn corner_dim(&self, l: usize, t: usize, s: usize) -> usize {
        self.blocks[l].iter().filter(|&&i| self.elems[i].target == t && self.elems[i].source == s).count()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.elems.iter().position(|e| e.label == label)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        self.mult.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                if let Some(p) = self.mult.get(&(*i, *j)) {
                    let ab = a.mul(b);
                    for (k, c) in p {
                        acc.entry(*k).or_insert_with(|| Scalar::zero(self.field)).add_mul(&ab, c);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Associativity on every composable triple within the cutoff, and the unit laws.
    pub fn check(&self) -> Result<(), String> {
        for (v, &u) in self.units.iter().enumerate() {
            let e = &self.elems[u];
            if e.adeg != 0 || e.target != v || e.source != v {
                return Err(format!("unit of vertex {} misplaced", v));
            }
        }
        let one = Scalar::one(self.field);
        for (i, x) in self.elems.iter().enumerate() {
            let l = self.mul_basis(self.units[x.target], i);
            let r = self.mul_basis(i, self.units[x.source]);
            if l != vec![(i, one.clone())] || r != vec![(i, one.clone())] {
                return Err(format!("unit law fails at {}", x.label));
            }
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let Some(ij) = self.mult.get(&(i, j)) else { continue };
                for k in 0..self.dim() {
                    if self.elems[j].source != self.elems[k].target {
                        continue;
                    }
                    if self.elems[i].adeg + self.elems[j].adeg + self.elems[k].adeg > self.cutoff {
                        continue;
                    }
                    let lhs = self.mul(ij, &vec![(k, one.clone())]);
                    let rhs = self.mul(&vec![(i, one.clone())], &self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(format!("not associative at ({}, {}, {})", self.elems[i].label, self.elems[j].label, self.elems[k].label));
                    }
                }
            }
        }
        Ok(())
    }

    /// Keeps Adams degrees `≤ n`.
    pub fn truncate(&self, n: usize) -> GradedAlgebraData {
        let n = n.min(self.cutoff);
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| self.elems[i].adeg <= n).collect();
        self.reindex(&keep, n, self.vertex_labels.clone(), |v| Some(v))
    }

    /// `e·Γ·e` for a set of vertices.
    pub fn restrict(&self, e: &[usize]) -> GradedAlgebraData {
        let pos = |v: usize| e.iter().position(|&w| w == v);
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| pos(self.elems[i].target).is_some() && pos(self.elems[i].source).is_some()).collect();
        let labels = e.iter().map(|&v| self.vertex_labels[v].clone()).collect();
        self.reindex(&keep, self.cutoff, labels, pos)
    }

    fn reindex(&self, keep: &[usize], cutoff: usize, labels: Vec<String>, vmap: impl Fn(usize) -> Option<usize>) -> GradedAlgebraData {
        let mut g = GradedAlgebraData::empty(self.field, labels, cutoff);
        let mut new = vec![usize::MAX; self.dim()];
        for &i in keep {
            let mut e = self.elems[i].clone();
            e.target = vmap(e.target).unwrap();
            e.source = vmap(e.source).unwrap();
            new[i] = g.push(e);
        }
        g.units = self.units.iter().enumerate().filter_map(|(v, &u)| vmap(v).map(|_| new[u])).collect();
        for (&(i, j), p) in &self.mult {
            if new[i] == usize::MAX || new[j] == usize::MAX {
                continue;
            }
            let q: SparseVec = p.iter().filter(|(k, _)| new[*k] != usize::MAX).map(|(k, c)| (new[*k], c.clone())).collect();
            g.set(new[i], new[j], q);
        }
        g
    }

    /// The opposite algebra: arrows reversed, products swapped.
    pub fn opposite(&self) -> GradedAlgebraData {
        let mut g = self.clone();
        for e in &mut g.elems {
            core::mem::swap(&mut e.target, &mut e.source);
        }
        g.mult = BTreeMap::new();
        for (&(i, j), p) in &self.mult {
            let s = Scalar::sign(self.field, self.elems[i].cdeg * self.elems[j].cdeg);
            g.mult.insert((j, i), p.iter().map(|(k, c)| (*k, c.mul(&s))).collect());
        }
        g
    }

    /// The Adams degree 0 block as a finite-dimensional algebra.
    pub fn degree_zero_algebra(&self) -> Result<PathBasisAlgebra, CompletionError> {
        let b0 = &self.blocks[0];
        let pos: BTreeMap<usize, usize> = b0.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let n = b0.len();
        let basis = b0
            .iter()
            .map(|&i| {
                let e = &self.elems[i];
                BasisElem { source: e.source, target: e.target, cdeg: e.cdeg, adeg: 0, path: None, label: e.label.clone() }
            })
            .collect();
        let mut mult = vec![Vec::new(); n * n];
        for (a, &i) in b0.iter().enumerate() {
            for (b, &j) in b0.iter().enumerate() {
                mult[a * n + b] = self.mul_basis(i, j).into_iter().map(|(k, c)| (pos[&k], c)).collect();
            }
        }
        let idem = self.units.iter().map(|u| pos[u]).collect();
        Ok(PathBasisAlgebra::from_structure(self.field, self.vertex_labels.clone(), basis, mult, idem)?)
    }
}

/// Quotient of a coordinate space by a subspace, with normal forms on non-pivot coordinates.
struct Quotient {
    ech: Echelon,
    pos: Vec<Option<usize>>,
    kept: Vec<usize>,
}

impl Quotient {
    fn new(field: Field, n: usize, rels: &[SparseVec]) -> Quotient {
        let mut ech = Echelon::new(field, n);
        for r in rels {
            ech.insert(r);
        }
        let piv: BTreeSet<usize> = ech.pivots().into_iter().collect();
        let kept: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
        let mut pos = vec![None; n];
        for (k, &c) in kept.iter().enumerate() {
            pos[c] = Some(k);
        }
        Quotient { ech, pos, kept }
    }

    fn project(&self, v: &SparseVec) -> SparseVec {
        self.ech.reduce(v).into_iter().map(|(c, x)| (self.pos[c].expect("reduced vectors avoid pivots"), x)).collect()
    }
}

/// Paths of total Adams degree `≤ cutoff`, in traversal order, with trivial paths first.
fn enumerate_paths(q: &Quiver, cutoff: usize) -> Result<Vec<(usize, usize, Vec<usize>)>, CompletionError> {
    let zero: Vec<usize> = (0..q.arrows.len()).filter(|&k| q.arrows[k].adeg == 0).collect();
    let mut zq = Quiver { vertices: q.vertices.clone(), arrows: Vec::new() };
    for &k in &zero {
        zq.arrows.push(q.arrows[k].clone());
    }
    if !zq.is_acyclic() {
        return Err(CompletionError::NotLocallyFinite(String::from("arrows of Adams degree 0 form a cycle")));
    }
    let mut out: Vec<(usize, usize, Vec<usize>)> = (0..q.num_vertices()).map(|v| (v, v, Vec::new())).collect();
    let mut frontier: Vec<(usize, usize, Vec<usize>, usize)> = (0..q.num_vertices()).map(|v| (v, v, Vec::new(), 0)).collect();
    while let Some((s, t, p, ad)) = frontier.pop() {
        for (k, a) in q.arrows.iter().enumerate() {
            if a.source != t || ad + a.adeg as usize > cutoff {
                continue;
            }
            let mut np = p.clone();
            np.push(k);
            out.push((s, a.target, np.clone()));
            frontier.push((s, a.target, np, ad + a.adeg as usize));
        }
    }
    out.sort_by(|x, y| x.2.len().cmp(&y.2.len()).then(x.2.cmp(&y.2)).then(x.0.cmp(&y.0)));
    Ok(out)
}

/// The graded quiver algebra `kQ/I` up to Adams degree `cutoff`, with arrow Adams
/// degrees taken from the quiver. Relations must be homogeneous.
pub fn truncated_path_algebra(field: Field, q: &Quiver, rels: &[Relation], cutoff: usize) -> Result<GradedAlgebraData, CompletionError> {
    q.validate()?;
    let paths = enumerate_paths(q, cutoff)?;
    let np = paths.len();
    let index: BTreeMap<(usize, Vec<usize>), usize> = paths.iter().enumerate().map(|(i, p)| ((p.0, p.2.clone()), i)).collect();
    let adeg = |p: &[usize]| -> usize { p.iter().map(|&k| q.arrows[k].adeg as usize).sum() };
    // reversed index order so that longer paths become pivots
    let rev = |i: usize| np - 1 - i;
    let mut rel_vecs = Vec::new();
    for (ri, r) in rels.iter().enumerate() {
        if r.terms.is_empty() {
            continue;
        }
        let ends = q.path_ends(&r.terms[0].1).ok_or_else(|| CompletionError::Invalid(format!("relation {} is not a path", ri)))?;
        let deg = q.path_degrees(&r.terms[0].1);
        for (_, p) in &r.terms {
            if q.path_ends(p) != Some(ends) || q.path_degrees(p) != deg {
                return Err(QuiverError::InhomogeneousRelation(ri).into());
            }
        }
        let rad = deg.1 as usize;
        for pre in paths.iter().filter(|p| p.1 == ends.0) {
            let pa = adeg(&pre.2);
            if pa + rad > cutoff {
                continue;
            }
            for post in paths.iter().filter(|p| p.0 == ends.1) {
                if pa + rad + adeg(&post.2) > cutoff {
                    continue;
                }
                let mut v: Vec<(usize, Scalar)> = Vec::new();
                for (c, p) in &r.terms {
                    let mut w = pre.2.clone();
                    w.extend(p.iter().copied());
                    w.extend(post.2.iter().copied());
                    v.push((rev(index[&(pre.0, w)]), c.clone()));
                }
                v.sort_by_key(|e| e.0);
                let v = merge(field, v);
                if !v.is_empty() {
                    rel_vecs.push(v);
                }
            }
        }
    }
    let quo = Quotient::new(field, np, &rel_vecs);
    let mut g = GradedAlgebraData::empty(field, q.vertices.clone(), cutoff);
    let mut elem_of_col = BTreeMap::new();
    // kept columns are reversed indices; walk paths in increasing order
    let mut order: Vec<usize> = quo.kept.iter().map(|&c| rev(c)).collect();
    order.sort();
    let mut col_to_elem = vec![usize::MAX; np];
    for &pi in &order {
        let (s, t, ref p) = paths[pi];
        let (cd, _) = q.path_degrees(p);
        let label = if p.is_empty() {
            format!("e{}", q.vertices[s])
        } else {
            p.iter().rev().map(|&k| q.arrows[k].name.clone()).collect::<Vec<_>>().join("")
        };
        let k = g.push(GElem { adeg: adeg(p), cdeg: cd, target: t, source: s, label });
        col_to_elem[quo.pos[rev(pi)].unwrap()] = k;
        elem_of_col.insert(pi, k);
        if p.is_empty() {
            while g.units.len() <= s {
                g.units.push(usize::MAX);
            }
            g.units[s] = k;
        }
    }
    let elem_paths: Vec<usize> = order.clone();
    for &pa in &elem_paths {
        for &pb in &elem_paths {
            let (sa, _ta, ref xa) = paths[pa];
            let (_sb, tb, ref xb) = paths[pb];
            if sa != tb {
                continue;
            }
            if adeg(xa) + adeg(xb) > cutoff {
                continue;
            }
            // a·b = a after b: traverse b, then a
            let mut w = xb.clone();
            w.extend(xa.iter().copied());
            let src = paths[pb].0;
            let col = rev(index[&(src, w)]);
            let nf = quo.project(&vec![(col, Scalar::one(field))]);
            let v: SparseVec = nf.into_iter().map(|(c, x)| (col_to_elem[c], x)).collect();
            let mut v = v;
            v.sort_by_key(|e| e.0);
            g.set(elem_of_col[&pa], elem_of_col[&pb], v);
        }
    }
    Ok(g)
}

fn merge(field: Field, v: Vec<(usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in v {
        acc.entry(i).or_insert_with(|| Scalar::zero(field)).add_assign(&c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// One Adams block of an underived tensor algebra, with its bimodule structure.
struct TensorBlock {
    tags: Vec<(usize, usize)>,
    cdeg: Vec<i64>,
    left: Vec<SparseMap>,
    right: Vec<SparseMap>,
    /// preimage of each basis vector in (previous block) ⊗ V
    split: Vec<Vec<(usize, usize, Scalar)>>,
    /// cells of (previous block) ⊗_k V over matching vertices, and their quotient
    cells: BTreeMap<(usize, usize), usize>,
    quo: Option<Quotient>,
}

/// `T_A(V) = ⊕_l V^{⊗_A l}` up to Adams degree `cutoff`, graded by tensor length.
pub fn tensor_algebra_of_bimodule(a: &PathBasisAlgebra, v: &Bimodule, cutoff: usize) -> GradedAlgebraData {
    let f = a.field;
    let reg = Bimodule::regular(a);
    let mut blocks: Vec<TensorBlock> = vec![TensorBlock {
        tags: reg.tags.clone(),
        cdeg: reg.cdeg.clone(),
        left: reg.left.clone(),
        right: reg.right.clone(),
        split: Vec::new(),
        cells: BTreeMap::new(),
        quo: None,
    }];
    for _ in 1..=cutoff {
        let prev = blocks.last().unwrap();
        let mut cells = BTreeMap::new();
        let mut cell_list = Vec::new();
        for (i, &(_, ri)) in prev.tags.iter().enumerate() {
            for (j, &(lj, _)) in v.tags.iter().enumerate() {
                if ri == lj {
                    cells.insert((i, j), cell_list.len());
                    cell_list.push((i, j));
                }
            }
        }
        let n = cell_list.len();
        // (x·r)⊗y − x⊗(r·y)
        let mut rels = Vec::new();
        for &r in &a.radical {
            let (tr, sr) = (a.basis[r].target, a.basis[r].source);
            for (i, &(_, ri)) in prev.tags.iter().enumerate() {
                if ri != tr {
                    continue;
                }
                let xr = prev.right[r].apply(&vec![(i, Scalar::one(f))]);
                for (j, &(lj, _)) in v.tags.iter().enumerate() {
                    if lj != sr {
                        continue;
                    }
                    let ry = v.left[r].apply(&vec![(j, Scalar::one(f))]);
                    let mut w = Vec::new();
                    for (i2, c) in &xr {
                        w.push((cells[&(*i2, j)], c.clone()));
                    }
                    for (j2, c) in &ry {
                        w.push((cells[&(i, *j2)], c.neg()));
                    }
                    let w = merge(f, w);
                    if !w.is_empty() {
                        rels.push(w);
                    }
                }
            }
        }
        let quo = Quotient::new(f, n, &rels);
        let dim = quo.kept.len();
        let tags: Vec<(usize, usize)> = quo.kept.iter().map(|&c| (prev.tags[cell_list[c].0].0, v.tags[cell_list[c].1].1)).collect();
        let cdeg: Vec<i64> = quo.kept.iter().map(|&c| prev.cdeg[cell_list[c].0] + v.cdeg[cell_list[c].1]).collect();
        let split = quo.kept.iter().map(|&c| vec![(cell_list[c].0, cell_list[c].1, Scalar::one(f))]).collect();
        let mut left = Vec::with_capacity(a.dim());
        let mut right = Vec::with_capacity(a.dim());
        for r in 0..a.dim() {
            let mut lm = SparseMap::zero(f, dim, dim);
            let mut rm = SparseMap::zero(f, dim, dim);
            for (k, &c) in quo.kept.iter().enumerate() {
                let (i, j) = cell_list[c];
                let li = prev.left[r].apply(&vec![(i, Scalar::one(f))]);
                let w: SparseVec = merge(f, li.iter().filter_map(|(i2, x)| cells.get(&(*i2, j)).map(|&cc| (cc, x.clone()))).collect());
                for (t, x) in quo.project(&w) {
                    lm.add_entry(t, k, &x);
                }
                let rj = v.right[r].apply(&vec![(j, Scalar::one(f))]);
                let w: SparseVec = merge(f, rj.iter().filter_map(|(j2, x)| cells.get(&(i, *j2)).map(|&cc| (cc, x.clone()))).collect());
                for (t, x) in quo.project(&w) {
                    rm.add_entry(t, k, &x);
                }
            }
            left.push(lm);
            right.push(rm);
        }
        blocks.push(TensorBlock { tags, cdeg, left, right, split, cells, quo: Some(quo) });
    }
    // global numbering
    let mut g = GradedAlgebraData::empty(f, a.vertex_labels.clone(), cutoff);
    let mut offset = Vec::new();
    for (l, b) in blocks.iter().enumerate() {
        offset.push(g.dim());
        for (k, &(t, s)) in b.tags.iter().enumerate() {
            let label = if l == 0 { a.basis[k].label.clone() } else { format!("T{}_{}", l, k) };
            g.push(GElem { adeg: l, cdeg: b.cdeg[k], target: t, source: s, label });
        }
    }
    g.units = a.idempotents.clone();
    // products x·y with x in block m, y in block l, by recursion on l
    let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for l in 0..=cutoff {
        for m in 0..=(cutoff - l) {
            for x in 0..blocks[m].tags.len() {
                for y in 0..blocks[l].tags.len() {
                    if blocks[m].tags[x].1 != blocks[l].tags[y].0 {
                        continue;
                    }
                    let prod: SparseVec = if l == 0 {
                        blocks[m].right[y].apply(&vec![(x, Scalar::one(f))])
                    } else if m == 0 {
                        blocks[l].left[x].apply(&vec![(y, Scalar::one(f))])
                    } else {
                        let tb = &blocks[m + l];
                        let mut w = Vec::new();
                        for (y2, vj, c) in &blocks[l].split[y] {
                            let xy2 = &table[&(offset[m] + x, offset[l - 1] + *y2)];
                            for (z, cz) in xy2 {
                                let zl = z - offset[m + l - 1];
                                w.push((tb.cells[&(zl, *vj)], c.mul(cz)));
                            }
                        }
                        tb.quo.as_ref().unwrap().project(&merge(f, w))
                    };
                    let global: SparseVec = prod.into_iter().map(|(k, c)| (offset[m + l] + k, c)).collect();
                    table.insert((offset[m] + x, offset[l] + y), global);
                }
            }
        }
    }
    for ((i, j), v) in table {
        g.set(i, j, v);
    }
    g
}

/// `⊕_i X_i ⊗ Y_i` on pairs of vertices.
pub fn segre(x: &GradedAlgebraData, y: &GradedAlgebraData, n: usize) -> GradedAlgebraData {
    a_segre(x, y, 1, n)
}

/// `⊕_i X_i ⊗ (Y_{i+j−k})_{j,k}` on vertices `(u, v, j)` with `0 ≤ j < a`.
pub fn a_segre(x: &GradedAlgebraData, y: &GradedAlgebraData, a: usize, n: usize) -> GradedAlgebraData {
    assert!(a >= 1);
    let f = x.field;
    let cut = n.min(x.cutoff).min(y.cutoff.saturating_sub(a - 1));
    let nx = x.num_vertices();
    let ny = y.num_vertices();
    let vid = |u: usize, v: usize, j: usize| (u * ny + v) * a + j;
    let mut labels = Vec::new();
    for u in 0..nx {
        for v in 0..ny {
            for j in 0..a {
                labels.push(if a == 1 { format!("{}|{}", x.vertex_labels[u], y.vertex_labels[v]) } else { format!("{}|{}|{}", x.vertex_labels[u], y.vertex_labels[v], j) });
            }
        }
    }
    let mut g = GradedAlgebraData::empty(f, labels, cut);
    let mut idx: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    for i in 0..=cut {
        for &bx in &x.blocks[i] {
            for j in 0..a {
                for k in 0..a {
                    let dy = i + j;
                    if dy < k {
                        continue;
                    }
                    for &by in &y.blocks[dy - k] {
                        let (ex, ey) = (&x.elems[bx], &y.elems[by]);
                        let id = g.push(GElem {
                            adeg: i,
                            cdeg: ex.cdeg + ey.cdeg,
                            target: vid(ex.target, ey.target, j),
                            source: vid(ex.source, ey.source, k),
                            label: format!("{}#{}", ex.label, ey.label),
                        });
                        idx.insert((bx, by, j, k), id);
                    }
                }
            }
        }
    }
    g.units = vec![usize::MAX; g.num_vertices()];
    for u in 0..nx {
        for v in 0..ny {
            for j in 0..a {
                g.units[vid(u, v, j)] = idx[&(x.units[u], y.units[v], j, j)];
            }
        }
    }
    let keys: Vec<((usize, usize, usize, usize), usize)> = idx.iter().map(|(k, v)| (*k, *v)).collect();
    for &((bx, by, j, k), p) in &keys {
        for &((bx2, by2, j2, k2), q) in &keys {
            if k != j2 || x.elems[bx].source != x.elems[bx2].target || y.elems[by].source != y.elems[by2].target {
                continue;
            }
            if x.elems[bx].adeg + x.elems[bx2].adeg > cut {
                continue;
            }
            let px = x.mul_basis(bx, bx2);
            let py = y.mul_basis(by, by2);
            let s = Scalar::sign(f, y.elems[by].cdeg * x.elems[bx2].cdeg);
            let mut w = Vec::new();
            for (cx, ax) in &px {
                for (cy, ay) in &py {
                    if let Some(&r) = idx.get(&(*cx, *cy, j, k2)) {
                        w.push((r, ax.mul(ay).mul(&s)));
                    }
                }
            }
            g.set(p, q, merge(f, w));
        }
    }
    g
}

/// `⊕_i X_{ai}`, regraded by `i`.
pub fn veronese(x: &GradedAlgebraData, a: usize, n: usize) -> GradedAlgebraData {
    assert!(a >= 1);
    let cut = n.min(x.cutoff / a);
    let keep: Vec<usize> = (0..x.dim()).filter(|&i| x.elems[i].adeg % a == 0 && x.elems[i].adeg / a <= cut).collect();
    let mut g = x.reindex(&keep, x.cutoff, x.vertex_labels.clone(), Some);
    let mut blocks = vec![Vec::new(); cut + 1];
    for (k, e) in g.elems.iter_mut().enumerate() {
        e.adeg /= a;
        blocks[e.adeg].push(k);
    }
    g.blocks = blocks;
    g.cutoff = cut;
    g
}

/// `⊕_i (X_{ai+j−k})_{j,k}` on vertices `(v, j)`, `0 ≤ j < a`.
pub fn quasi_veronese(x: &GradedAlgebraData, a: usize, n: usize) -> GradedAlgebraData {
    assert!(a >= 1);
    let f = x.field;
    let cut = n.min((x.cutoff + 1).saturating_sub(a) / a);
    let nv = x.num_vertices();
    let vid = |v: usize, j: usize| v * a + j;
    let mut labels = Vec::new();
    for v in 0..nv {
        for j in 0..a {
            labels.push(if a == 1 { x.vertex_labels[v].clone() } else { format!("{}|{}", x.vertex_labels[v], j) });
        }
    }
    let mut g = GradedAlgebraData::empty(f, labels, cut);
    let mut idx: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for i in 0..=cut {
        for j in 0..a {
            for k in 0..a {
                let d = a * i + j;
                if d < k {
                    continue;
                }
                for &b in &x.blocks[d - k] {
                    let e = &x.elems[b];
                    let id = g.push(GElem { adeg: i, cdeg: e.cdeg, target: vid(e.target, j), source: vid(e.source, k), label: format!("{}[{},{}]", e.label, j, k) });
                    idx.insert((b, j, k), id);
                }
            }
        }
    }
    g.units = (0..nv * a).map(|w| idx[&(x.units[w / a], w % a, w % a)]).collect();
    let keys: Vec<((usize, usize, usize), usize)> = idx.iter().map(|(k, v)| (*k, *v)).collect();
    for &((b, j, k), p) in &keys {
        for &((b2, j2, k2), q) in &keys {
            if k != j2 || x.elems[b].source != x.elems[b2].target {
                continue;
            }
            if g.elems[p].adeg + g.elems[q].adeg > cut {
                continue;
            }
            let w: Vec<(usize, Scalar)> = x.mul_basis(b, b2).into_iter().filter_map(|(c, s)| idx.get(&(c, j, k2)).map(|&r| (r, s))).collect();
            g.set(p, q, merge(f, w));
        }
    }
    g
}

/// The algebra `A`, bimodule `U` and idempotent `e` obtained from a graded algebra
/// concentrated in cohomological degree 0, via lower-triangular matrices.
#[derive(Clone, Debug)]
pub struct MatrixRootPair {
    pub algebra: Arc<PathBasisAlgebra>,
    pub u: Bimodule,
    pub e: Vec<usize>,
    /// `(row, column, element of Π)` for each basis element of `A`
    pub entries: Vec<(usize, usize, usize)>,
}

impl MatrixRootPair {
    /// Basis index of `A` at matrix position `(i, j)` holding the element labelled `label`.
    pub fn basis_at(&self, pi: &GradedAlgebraData, i: usize, j: usize, label: &str) -> Option<usize> {
        let b = pi.find_label(label)?;
        self.entries.iter().position(|&e| e == (i, j, b))
    }
}

pub fn matrix_root_pair(pi: &GradedAlgebraData, a: usize) -> Result<MatrixRootPair, CompletionError> {
    if a == 0 {
        return Err(CompletionError::Invalid(String::from("a must be positive")));
    }
    if pi.cutoff < a {
        return Err(CompletionError::InsufficientTruncation { needed: a, have: pi.cutoff });
    }
    if pi.elems.iter().any(|e| e.cdeg != 0) {
        return Err(CompletionError::NotConcentrated(String::from("Π has elements outside cohomological degree 0")));
    }
    let f = pi.field;
    let nv = pi.num_vertices();
    let vid = |i: usize, v: usize| i * nv + v;
    let mut labels = Vec::new();
    for i in 0..a {
        for v in 0..nv {
            labels.push(if a == 1 { pi.vertex_labels[v].clone() } else { format!("{}:{}", i, pi.vertex_labels[v]) });
        }
    }
    let mut entries = Vec::new();
    let mut basis = Vec::new();
    let mut idx: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for i in 0..a {
        for j in 0..=i {
            for &b in &pi.blocks[i - j] {
                let e = &pi.elems[b];
                idx.insert((i, j, b), basis.len());
                entries.push((i, j, b));
                basis.push(BasisElem { source: vid(j, e.source), target: vid(i, e.target), cdeg: 0, adeg: 0, path: None, label: format!("{}@{}{}", e.label, i, j) });
            }
        }
    }
    let n = basis.len();
    let mut mult = vec![Vec::new(); n * n];
    for (p, &(i, j, b)) in entries.iter().enumerate() {
        for (q, &(j2, k, b2)) in entries.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let w: Vec<(usize, Scalar)> = pi.mul_basis(b, b2).into_iter().map(|(c, s)| (idx[&(i, k, c)], s)).collect();
            let mut w = w;
            w.sort_by_key(|e| e.0);
            mult[p * n + q] = w;
        }
    }
    let idem: Vec<usize> = (0..a * nv).map(|w| idx[&(w / nv, w / nv, pi.units[w % nv])]).collect();
    let alg = Arc::new(PathBasisAlgebra::from_structure(f, labels, basis, mult, idem)?);
    // U_{ij} = Π_{i−j+1}
    let mut uidx: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut tags = Vec::new();
    let mut ucells = Vec::new();
    for i in 0..a {
        for j in 0..=(i + 1).min(a - 1) {
            for &b in &pi.blocks[i + 1 - j] {
                let e = &pi.elems[b];
                uidx.insert((i, j, b), tags.len());
                ucells.push((i, j, b));
                tags.push((vid(i, e.target), vid(j, e.source)));
            }
        }
    }
    let m = tags.len();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for &(i2, j2, beta) in &entries {
        let mut l = SparseMap::zero(f, m, m);
        let mut r = SparseMap::zero(f, m, m);
        for (c, &(i, j, b)) in ucells.iter().enumerate() {
            if j2 == i {
                for (k, s) in pi.mul_basis(beta, b) {
                    l.add_entry(uidx[&(i2, j, k)], c, &s);
                }
            }
            if j == i2 {
                for (k, s) in pi.mul_basis(b, beta) {
                    r.add_entry(uidx[&(i, j2, k)], c, &s);
                }
            }
        }
        left.push(l);
        right.push(r);
    }
    let u = Bimodule { field: f, tags, cdeg: vec![0; m], adeg: vec![1; m], left, right };
    u.check(&alg).map_err(CompletionError::Invalid)?;
    Ok(MatrixRootPair { algebra: alg, u, e: (0..nv).collect(), entries })
}

/// The projective complex resolving the matrix bimodule `U`.
pub fn resolve_matrix_root(m: &MatrixRootPair) -> Result<ProjBimodComplex, CompletionError> {
    let r = resolve_bimodule(&m.algebra, &m.u, m.algebra.dim() + 2)?;
    Ok(r.complex)
}

/// A path algebra of a graded quiver with a differential on arrows, extended by Leibniz.
#[derive(Clone, Debug)]
pub struct DgPathAlgebra {
    pub field: Field,
    pub quiver: Quiver,
    /// `d(arrow)` as a combination of paths in traversal order
    pub differential: Vec<Vec<(Scalar, Vec<usize>)>>,
}

impl DgPathAlgebra {
    pub fn new(field: Field, quiver: Quiver) -> DgPathAlgebra {
        let n = quiver.arrows.len();
        DgPathAlgebra { field, quiver, differential: vec![Vec::new(); n] }
    }

    pub fn set_differential(&mut self, arrow: usize, terms: Vec<(Scalar, Vec<usize>)>) {
        self.differential[arrow] = terms;
    }

    /// `d(path)`. A path traversing `a_1, …, a_k` is the product `a_k⋯a_1`.
    pub fn d_path(&self, p: &[usize]) -> Vec<(Scalar, Vec<usize>)> {
        let f = self.field;
        let mut out = Vec::new();
        for i in 0..p.len() {
            let after: i64 = p[i + 1..].iter().map(|&k| self.quiver.arrows[k].cdeg).sum();
            let s = Scalar::sign(f, after);
            for (c, q) in &self.differential[p[i]] {
                let mut w = p[..i].to_vec();
                w.extend(q.iter().copied());
                w.extend(p[i + 1..].iter().copied());
                out.push((c.mul(&s), w));
            }
        }
        collect_paths(f, out)
    }

    /// Degree and `d² = 0` conditions on every arrow.
    pub fn check(&self) -> Result<(), String> {
        for (k, a) in self.quiver.arrows.iter().enumerate() {
            for (_, q) in &self.differential[k] {
                let ends = if q.is_empty() { None } else { self.quiver.path_ends(q) };
                if ends != Some((a.source, a.target)) {
                    return Err(format!("d({}) is not parallel to it", a.name));
                }
                let (c, ad) = self.quiver.path_degrees(q);
                if c != a.cdeg + 1 || ad != a.adeg {
                    return Err(format!("d({}) has the wrong degree", a.name));
                }
            }
            let mut dd = Vec::new();
            for (c, q) in &self.differential[k] {
                for (c2, q2) in self.d_path(q) {
                    dd.push((c.mul(&c2), q2));
                }
            }
            if !collect_paths(self.field, dd).is_empty() {
                return Err(format!("d² ≠ 0 on {}", a.name));
            }
        }
        Ok(())
    }
}

fn collect_paths(f: Field, v: Vec<(Scalar, Vec<usize>)>) -> Vec<(Scalar, Vec<usize>)> {
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (c, p) in v {
        acc.entry(p).or_insert_with(|| Scalar::zero(f)).add_assign(&c);
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (c, p)).collect()
}

/// Cohomology of each Adams block, summed over all pairs of vertices.
pub fn dg_path_cohomology(p: &DgPathAlgebra, n: usize) -> Result<BidegreeTable, CompletionError> {
    let f = p.field;
    let q = &p.quiver;
    let paths = enumerate_paths(q, n)?;
    let mut table = BidegreeTable::new(n);
    // group by (Adams, source, target, cdeg)
    let mut groups: BTreeMap<(usize, usize, usize), BTreeMap<i64, Vec<Vec<usize>>>> = BTreeMap::new();
    for (s, t, w) in paths {
        let (c, ad) = if w.is_empty() { (0, 0) } else { q.path_degrees(&w) };
        groups.entry((ad as usize, s, t)).or_default().entry(c).or_default().push(w);
    }
    for ((ad, _, _), by_c) in &groups {
        let index: BTreeMap<&Vec<usize>, (i64, usize)> =
            by_c.iter().flat_map(|(c, ws)| ws.iter().enumerate().map(move |(i, w)| (w, (*c, i)))).collect();
        let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
        for (c, ws) in by_c {
            let dst = by_c.get(&(c + 1)).map_or(0, |v| v.len());
            let mut m = SparseMap::zero(f, ws.len(), dst);
            for (i, w) in ws.iter().enumerate() {
                for (x, w2) in p.d_path(w) {
                    let (c2, j) = *index.get(&w2).expect("differential stays in the block");
                    debug_assert_eq!(c2, c + 1);
                    m.add_entry(j, i, &x);
                }
            }
            ranks.insert(*c, m.rank());
        }
        for (c, ws) in by_c {
            let h = ws.len() - ranks[c] - ranks.get(&(c - 1)).copied().unwrap_or(0);
            table.add(*ad, *c, h);
        }
    }
    Ok(table)
}

/// Whether the completion and the presented dg algebra have the same bidegree table.
pub fn compare_presentation(c: &CompletionData, p: &DgPathAlgebra, n: usize) -> Result<bool, CompletionError> {
    if p.quiver.num_vertices() != c.e.len() {
        return Err(CompletionError::Invalid(String::from("vertex sets differ in size")));
    }
    let n = n.min(c.cutoff);
    let t = dg_path_cohomology(p, n)?;
    Ok(t == c.table.truncate(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorensteinVerdict {
    Yes,
    No,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorensteinSides {
    Right,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub verdict: GorensteinVerdict,
    /// the single Adams degree `−p` carrying all of `RHom(Γ₀, Γ)`, if there is one
    pub parameter: Option<i64>,
    /// `(vertex, Adams degree)` of the generators of each resolution term
    pub generators: Vec<Vec<(usize, usize)>>,
    /// `(cohomological degree, Adams degree)` → dimension of `RHom(Γ₀, Γ)`
    pub ext: BTreeMap<(i64, i64), usize>,
    /// Adams degrees in which the dual complex was fully known
    pub window: (i64, i64),
    pub note: String,
}

/// Free right module `⊕ e_w Γ(−j)` truncated at the cutoff; cells `(generator, element)`.
struct FreeRight {
    gens: Vec<(usize, usize)>,
    cells: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl FreeRight {
    fn new(g: &GradedAlgebraData, gens: Vec<(usize, usize)>) -> FreeRight {
        let mut cells = Vec::new();
        let mut index = BTreeMap::new();
        for (k, &(w, j)) in gens.iter().enumerate() {
            for (b, e) in g.elems.iter().enumerate() {
                if e.target == w && j + e.adeg <= g.cutoff {
                    index.insert((k, b), cells.len());
                    cells.push((k, b));
                }
            }
        }
        FreeRight { gens, cells, index }
    }

    fn degree(&self, g: &GradedAlgebraData, c: usize) -> usize {
        let (k, b) = self.cells[c];
        self.gens[k].1 + g.elems[b].adeg
    }

    fn vertex(&self, g: &GradedAlgebraData, c: usize) -> usize {
        g.elems[self.cells[c].1].source
    }

    fn act(&self, g: &GradedAlgebraData, v: &SparseVec, r: usize) -> SparseVec {
        let mut w = Vec::new();
        for (c, x) in v {
            let (k, b) = self.cells[*c];
            if g.elems[b].source != g.elems[r].target {
                continue;
            }
            for (b2, y) in g.mul_basis(b, r) {
                if let Some(&c2) = self.index.get(&(k, b2)) {
                    w.push((c2, x.mul(&y)));
                }
            }
        }
        merge(g.field, w)
    }
}

/// Splits a subspace of a free module into its homogeneous (degree, vertex) pieces.
fn homogeneous_pieces(g: &GradedAlgebraData, fm: &FreeRight, sub: &Subspace) -> BTreeMap<(usize, usize), Subspace> {
    let mut parts: BTreeMap<(usize, usize), Vec<SparseVec>> = BTreeMap::new();
    for v in sub.basis() {
        let mut split: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (c, x) in v {
            split.entry((fm.degree(g, *c), fm.vertex(g, *c))).or_default().push((*c, x.clone()));
        }
        for (k, w) in split {
            parts.entry(k).or_default().push(w);
        }
    }
    parts.into_iter().map(|(k, vs)| (k, Subspace::span(g.field, fm.cells.len(), &vs))).collect()
}

/// Minimal graded free resolution of `Γ₀` (as a right module) within the cutoff,
/// dualized into `Γ`. Assumes the degree-0 basis consists of vertex idempotents and
/// radical elements.
pub fn graded_gorenstein_check(g: &GradedAlgebraData, a: i64, len_bound: usize) -> GorensteinReport {
    gorenstein_one_side(g, a, len_bound)
}

pub fn graded_gorenstein_check_sides(g: &GradedAlgebraData, a: i64, len_bound: usize, sides: GorensteinSides) -> GorensteinReport {
    let r = gorenstein_one_side(g, a, len_bound);
    if sides == GorensteinSides::Right {
        return r;
    }
    let l = gorenstein_one_side(&g.opposite(), a, len_bound);
    let verdict = match (r.verdict, l.verdict) {
        (GorensteinVerdict::Yes, GorensteinVerdict::Yes) => GorensteinVerdict::Yes,
        (GorensteinVerdict::No, _) | (_, GorensteinVerdict::No) => GorensteinVerdict::No,
        _ => GorensteinVerdict::Inconclusive,
    };
    let mut out = r;
    out.verdict = verdict;
    out.note = format!("right: {}; left: {}", out.note, l.note);
    out
}

fn gorenstein_one_side(g: &GradedAlgebraData, a: i64, len_bound: usize) -> GorensteinReport {
    let f = g.field;
    let mut report = GorensteinReport {
        verdict: GorensteinVerdict::Inconclusive,
        parameter: None,
        generators: Vec::new(),
        ext: BTreeMap::new(),
        window: (0, -1),
        note: String::new(),
    };
    if g.elems.iter().any(|e| e.cdeg != 0) {
        report.note = String::from("only algebras in cohomological degree 0 are handled");
        return report;
    }
    let jac: Vec<usize> = (0..g.dim()).filter(|i| !g.units.contains(i)).collect();
    let nv = g.num_vertices();
    // F_0 = ⊕_v e_vΓ → Γ₀; kernel = positive Adams part
    let mut terms = vec![FreeRight::new(g, (0..nv).map(|v| (v, 0)).collect())];
    // differential: for each generator of F_{i+1}, its image in F_i
    let mut images: Vec<Vec<SparseVec>> = Vec::new();
    let f0 = &terms[0];
    let init: Vec<SparseVec> = (0..f0.cells.len()).filter(|&c| f0.degree(g, c) >= 1).map(|c| vec![(c, Scalar::one(f))]).collect();
    let mut kernel = Subspace::span(f, f0.cells.len(), &init);
    let mut terminated = false;
    for _step in 0..=len_bound {
        if kernel.dim() == 0 {
            terminated = true;
            break;
        }
        let fm = terms.last().unwrap();
        let pieces = homogeneous_pieces(g, fm, &kernel);
        let mut gens = Vec::new();
        let mut gvecs = Vec::new();
        for (&(deg, w), piece) in &pieces {
            // the part of K·J landing in this piece
            let mut kj = Vec::new();
            for (&(d2, w2), p2) in &pieces {
                if d2 > deg {
                    continue;
                }
                for &r in &jac {
                    let e = &g.elems[r];
                    if e.target != w2 || e.source != w || d2 + e.adeg != deg {
                        continue;
                    }
                    for v in p2.basis() {
                        let x = fm.act(g, v, r);
                        if !x.is_empty() {
                            kj.push(x);
                        }
                    }
                }
            }
            let kjs = Subspace::span(f, fm.cells.len(), &kj);
            for v in piece.complement_of(&kjs) {
                gens.push((w, deg));
                gvecs.push(v);
            }
        }
        let next = FreeRight::new(g, gens);
        let mut m = SparseMap::zero(f, next.cells.len(), fm.cells.len());
        for (c, &(k, b)) in next.cells.iter().enumerate() {
            m.columns[c] = fm.act(g, &gvecs[k], b);
        }
        kernel = m.kernel();
        images.push(gvecs);
        terms.push(next);
    }
    report.generators = terms.iter().map(|t| t.gens.clone()).collect();
    if !terminated {
        report.note = format!("resolution did not terminate within {} steps", len_bound);
        return report;
    }
    // Hom(F_i, Γ) in Adams degree k: ⊕_g Γ_{j_g+k} e_{w_g}
    let maxj = terms.iter().flat_map(|t| t.gens.iter().map(|x| x.1)).max().unwrap_or(0) as i64;
    let kmin = -maxj;
    let kmax = g.cutoff as i64 - maxj;
    report.window = (kmin, kmax);
    if kmax < -a {
        report.note = String::from("cutoff too small for the requested parameter");
        return report;
    }
    for k in kmin..=kmax {
        let mut dims = BTreeMap::new();
        let mut cells: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut cidx: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
        for (i, t) in terms.iter().enumerate() {
            let mut cs = Vec::new();
            let mut ix = BTreeMap::new();
            for (gi, &(w, j)) in t.gens.iter().enumerate() {
                let d = j as i64 + k;
                if d < 0 || d > g.cutoff as i64 {
                    continue;
                }
                for &b in &g.blocks[d as usize] {
                    if g.elems[b].source == w {
                        ix.insert((gi, b), cs.len());
                        cs.push((gi, b));
                    }
                }
            }
            dims.insert(i as i64, cs.len());
            cells.push(cs);
            cidx.push(ix);
        }
        let mut maps = BTreeMap::new();
        for i in 0..terms.len().saturating_sub(1) {
            // δ: Hom(F_i) → Hom(F_{i+1}), (δφ)(g) = Σ φ(g')·γ_{g',g}
            let mut m = SparseMap::zero(f, cells[i].len(), cells[i + 1].len());
            for (gi, img) in images[i].iter().enumerate() {
                for (c, x) in img {
                    let (g2, gamma) = terms[i].cells[*c];
                    for (col, &(gg, lam)) in cells[i].iter().enumerate() {
                        if gg != g2 {
                            continue;
                        }
                        for (r, y) in g.mul_basis(lam, gamma) {
                            if let Some(&row) = cidx[i + 1].get(&(gi, r)) {
                                m.add_entry(row, col, &x.mul(&y));
                            }
                        }
                    }
                }
            }
            maps.insert(i as i64, m);
        }
        let vc = crate::bimodcx::VsComplex { field: f, dims, maps };
        for (i, h) in vc.cohomology_dims() {
            if h > 0 {
                report.ext.insert((i, k), h);
            }
        }
    }
    let adams: BTreeSet<i64> = report.ext.keys().map(|x| x.1).collect();
    if adams.len() == 1 {
        report.parameter = Some(-*adams.iter().next().unwrap());
    }
    report.verdict = if report.parameter == Some(a) { GorensteinVerdict::Yes } else { GorensteinVerdict::No };
    report.note = format!("within Adams window {}..{}", kmin, kmax);
    report
}

/// `k⟨x_1…x_n⟩/(commutators)` with every variable in Adams degree 1.
pub fn polynomial_ring(field: Field, nvars: usize, cutoff: usize) -> GradedAlgebraData {
    let mut q = Quiver::new(&["0"]);
    for i in 0..nvars {
        q.add_graded_arrow(&var_name(nvars, i), 0, 0, 0, 1);
    }
    let mut rels = Vec::new();
    for i in 0..nvars {
        for j in i + 1..nvars {
            rels.push(Relation::binomial(field, vec![i, j], vec![j, i]));
        }
    }
    truncated_path_algebra(field, &q, &rels, cutoff).expect("polynomial ring")
}

fn var_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i)
    }
}

/// Free algebra on `nvars` generators of Adams degree 1.
pub fn free_algebra(field: Field, nvars: usize, cutoff: usize) -> GradedAlgebraData {
    let mut q = Quiver::new(&["0"]);
    for i in 0..nvars {
        q.add_graded_arrow(&var_name(nvars, i), 0, 0, 0, 1);
    }
    truncated_path_algebra(field, &q, &[], cutoff).expect("free algebra")
}

/// `k[t]` with `t` in Adams degree `deg ≥ 1`.
pub fn polynomial_one(field: Field, deg: usize, cutoff: usize) -> GradedAlgebraData {
    let mut q = Quiver::new(&["0"]);
    q.add_graded_arrow("t", 0, 0, 0, deg as i64);
    truncated_path_algebra(field, &q, &[], cutoff).expect("k[t]")
}

/// A completion's algebra, or an error explaining why it is unavailable.
pub fn completion_algebra(c: &CompletionData) -> Result<&GradedAlgebraData, CompletionError> {
    c.algebra.as_ref().ok_or_else(|| CompletionError::NotConcentrated(String::from("no cohomology-level algebra for this completion")))
}

/// Total dimension of `Γ` in cohomological degrees other than 0.
pub fn off_zero_dimension(t: &BidegreeTable) -> usize {
    t.dims.iter().filter(|(k, _)| k.1 != 0).map(|(_, v)| *v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{kronecker, kronecker_u, kronecker_u_on, point, type_a, type_a_presentation, type_a_u};
    use crate::bimodcx::find_quasi_iso;
    use std::println;

    #[test]
    fn kronecker_tensor_and_completion() {
        let a = kronecker(Field::Rational);
        let u = kronecker_u(&a, 0, 1);
        let t = tensor_algebra(&u, 4).unwrap();
        assert_eq!(t.table().totals(), vec![4, 8, 12, 16, 20]);
        let c = completion_from(&t, &[0]);
        println!("{:?}", c.table);
        assert_eq!(c.table.totals(), vec![1, 2, 3, 4, 5]);
        assert!(c.table.concentrated_in(0));
        let g = c.algebra.as_ref().unwrap();
        g.check().unwrap();
        assert_eq!(g.dims(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn point_tensor_algebra() {
        let a = point(Field::Rational);
        let mut u = ProjBimodComplex::new(a.clone());
        u.add_summand(0, 0, -2, 1);
        let t = tensor_algebra(&u, 3).unwrap();
        for l in 0..=3 {
            assert_eq!(t.table().get(l, -2 * l as i64), 1);
        }
    }

    #[test]
    fn presentation_type_a() {
        for n in 1..=2usize {
            let a = type_a(Field::Rational, n);
            let u = type_a_u(&a, n, 1, 1);
            let e: Vec<usize> = (0..n).collect();
            let c = completion(&u, &e, 3).unwrap();
            let p = type_a_presentation(Field::Rational, n, 1, 1);
            p.check().unwrap();
            let t = dg_path_cohomology(&p, 3).unwrap();
            println!("n={} completion {:?}\n presentation {:?}", n, c.table, t);
            assert!(compare_presentation(&c, &p, 3).unwrap());
            assert!(!rep_infinite_check(&c));
            if n == 2 {
                let bad = type_a_presentation(Field::Rational, n, 1, 0);
                assert!(!compare_presentation(&c, &bad, 3).unwrap());
            }
        }
    }

    #[test]
    fn graded_algebras() {
        let f = Field::Rational;
        let p = polynomial_ring(f, 2, 5);
        p.check().unwrap();
        assert_eq!(p.dims(), vec![1, 2, 3, 4, 5, 6]);
        let fr = free_algebra(f, 2, 4);
        assert_eq!(fr.dims(), vec![1, 2, 4, 8, 16]);
        let v = veronese(&p, 2, 2);
        assert_eq!(v.dims(), vec![1, 3, 5]);
        let qv = quasi_veronese(&p, 2, 2);
        qv.check().unwrap();
        println!("{:?}", qv.dims());
        let s = segre(&p, &polynomial_one(f, 1, 5), 5);
        assert_eq!(s.dims(), p.dims());
        let r = graded_gorenstein_check(&p, 2, 6);
        println!("{:?}", r);
        assert_eq!(r.verdict, GorensteinVerdict::Yes);
        let p3 = polynomial_ring(f, 3, 6);
        assert_eq!(graded_gorenstein_check(&p3, 3, 6).verdict, GorensteinVerdict::Yes);
        let rf = graded_gorenstein_check(&fr, 1, 6);
        println!("free: {:?}", rf);
        let k1 = polynomial_one(f, 1, 6);
        assert_eq!(graded_gorenstein_check(&k1, 1, 6).verdict, GorensteinVerdict::Yes);
    }

    #[test]
    fn matrix_round_trip() {
        let f = Field::Rational;
        let p = polynomial_ring(f, 2, 5);
        let m = matrix_root_pair(&p, 2).unwrap();
        let up = resolve_matrix_root(&m).unwrap();
        let x = m.basis_at(&p, 1, 0, "x").unwrap();
        let y = m.basis_at(&p, 1, 0, "y").unwrap();
        let ex = kronecker_u_on(&m.algebra, x, y, 0, 1);
        assert!(find_quasi_iso(&up, &ex, 0, 8, 1).map.is_some());
        let c = completion(&up, &m.e, 4).unwrap();
        assert_eq!(c.table.totals(), vec![1, 2, 3, 4, 5]);
        let g = c.algebra.as_ref().unwrap();
        let qv = quasi_veronese(g, 2, 10);
        println!("qv dims {:?}", qv.dims());
        let r = graded_gorenstein_check(&qv, 1, 6);
        println!("{:?}", r);
    }

    #[test]
    fn veronese_and_segre_of_kronecker_tensor_algebra() {
        let f = Field::Rational;
        let a = kronecker(f);
        let t = tensor_algebra(&kronecker_u(&a, 0, 1), 10).unwrap();
        let sigma = cohomology_algebra(&t).unwrap();
        let v = veronese(&sigma, 2, 5);
        v.check().unwrap();
        assert_eq!(v.dims(), vec![4, 12, 20, 28, 36, 44]);
        let s = segre(&polynomial_ring(f, 2, 4), &sigma, 4);
        s.check().unwrap();
        assert_eq!(s.dims(), (0..=4).map(|l| (l + 1) * (4 * l + 4)).collect::<Vec<_>>());
    }

    #[test]
    fn beilinson_plane() {
        let f = Field::Rational;
        let p = polynomial_ring(f, 3, 4);
        let m = matrix_root_pair(&p, 3).unwrap();
        let up = resolve_matrix_root(&m).unwrap();
        let c = completion(&up, &m.e, 3).unwrap();
        assert_eq!(c.table.totals(), vec![1, 3, 6, 10]);
    }
}
