//! Finite-dimensional quiver algebras with structure constants.
//!
//! Conventions: a path is stored in traversal order (first arrow first).
//! The product `a·b` means "a after b", so it is nonzero only when
//! `source(a) = target(b)`, and `e_t·A·e_s` is spanned by paths `s → t`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::exactlin::{sparse_axpy, Echelon, Field, Scalar, SparseMap, SparseVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub cdeg: i64,
    pub adeg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str]) -> Quiver {
        Quiver { vertices: vertices.iter().map(|s| s.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn with_vertices(n: usize) -> Quiver {
        Quiver { vertices: (0..n).map(|i| i.to_string()).collect(), arrows: Vec::new() }
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> usize {
        self.add_graded_arrow(name, source, target, 0, 0)
    }

    pub fn add_graded_arrow(&mut self, name: &str, source: usize, target: usize, cdeg: i64, adeg: i64) -> usize {
        self.arrows.push(Arrow { name: name.to_string(), source, target, cdeg, adeg });
        self.arrows.len() - 1
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(a.name.clone()));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(QuiverError::DuplicateArrow(a.name.clone()));
            }
            if a.adeg < 0 {
                return Err(QuiverError::NegativeAdams(a.name.clone()));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        Ok(())
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// Source vertex of a nonempty path, or `None` if it is not composable.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut t = first.target;
        for &k in &path[1..] {
            let a = self.arrows.get(k)?;
            if a.source != t {
                return None;
            }
            t = a.target;
        }
        Some((first.source, t))
    }

    pub fn path_degrees(&self, path: &[usize]) -> (i64, i64) {
        path.iter().fold((0, 0), |(c, d), &k| (c + self.arrows[k].cdeg, d + self.arrows[k].adeg))
    }
}

/// Linear combination of parallel paths (arrow indices in traversal order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(field: Field, path: Vec<usize>) -> Relation {
        Relation { terms: vec![(Scalar::one(field), path)] }
    }

    pub fn binomial(field: Field, p: Vec<usize>, q: Vec<usize>) -> Relation {
        Relation { terms: vec![(Scalar::one(field), p), (Scalar::from_i64(field, -1), q)] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverError {
    UnknownVertex(String),
    UnknownArrow(String),
    DuplicateArrow(String),
    DuplicateVertex(String),
    NegativeAdams(String),
    NotComposable(usize),
    NotParallel(usize),
    InhomogeneousRelation(usize),
    NotFiniteDimensional { max_len: usize },
    InvalidStructure(String),
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::UnknownVertex(s) => write!(f, "arrow {} uses an undeclared vertex", s),
            QuiverError::UnknownArrow(s) => write!(f, "unknown arrow {}", s),
            QuiverError::DuplicateArrow(s) => write!(f, "duplicate arrow name {}", s),
            QuiverError::DuplicateVertex(s) => write!(f, "duplicate vertex label {}", s),
            QuiverError::NegativeAdams(s) => write!(f, "arrow {} has negative Adams degree", s),
            QuiverError::NotComposable(i) => write!(f, "relation {} contains a non-composable path", i),
            QuiverError::NotParallel(i) => write!(f, "relation {} has non-parallel terms", i),
            QuiverError::InhomogeneousRelation(i) => {
                write!(f, "relation {} is not homogeneous in path length and degrees", i)
            }
            QuiverError::NotFiniteDimensional { max_len } => {
                write!(f, "paths of length {} do not reduce; algebra is not finite-dimensional", max_len + 1)
            }
            QuiverError::InvalidStructure(s) => write!(f, "invalid algebra structure: {}", s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub source: usize,
    pub target: usize,
    pub cdeg: i64,
    pub adeg: i64,
    /// normal-form path for quiver algebras; empty for idempotents
    pub path: Option<Vec<usize>>,
    pub label: String,
}

/// Finite-dimensional algebra with a basis adapted to a complete set of
/// primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct PathBasisAlgebra {
    pub field: Field,
    pub vertex_labels: Vec<String>,
    pub quiver: Option<Quiver>,
    pub relations: Vec<Relation>,
    pub basis: Vec<BasisElem>,
    pub idempotents: Vec<usize>,
    pub radical: Vec<usize>,
    mult: Vec<SparseVec>,
    corners: Vec<Vec<usize>>,
    corner_pos: Vec<usize>,
}

impl PartialEq for PathBasisAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.vertex_labels == o.vertex_labels && self.basis == o.basis && self.mult == o.mult
    }
}

impl PathBasisAlgebra {
    /// Assembles an algebra from structure constants; `mult[i*n+j]` is `b_i·b_j`.
    pub fn from_structure(
        field: Field,
        vertex_labels: Vec<String>,
        basis: Vec<BasisElem>,
        mult: Vec<SparseVec>,
        idempotents: Vec<usize>,
    ) -> Result<PathBasisAlgebra, QuiverError> {
        let n = basis.len();
        if mult.len() != n * n {
            return Err(QuiverError::InvalidStructure("multiplication table has wrong size".to_string()));
        }
        if idempotents.len() != vertex_labels.len() {
            return Err(QuiverError::InvalidStructure("one idempotent per vertex required".to_string()));
        }
        let radical = (0..n).filter(|i| !idempotents.contains(i)).collect();
        let mut alg = PathBasisAlgebra {
            field,
            vertex_labels,
            quiver: None,
            relations: Vec::new(),
            basis,
            idempotents,
            radical,
            mult,
            corners: Vec::new(),
            corner_pos: Vec::new(),
        };
        alg.index_corners();
        Ok(alg)
    }

    fn index_corners(&mut self) {
        let nv = self.vertex_labels.len();
        self.corners = vec![Vec::new(); nv * nv];
        self.corner_pos = vec![0; self.basis.len()];
        for (i, b) in self.basis.iter().enumerate() {
            let c = &mut self.corners[b.target * nv + b.source];
            self.corner_pos[i] = c.len();
            c.push(i);
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn is_idempotent_basis(&self, i: usize) -> bool {
        self.idempotents[self.basis[i].source] == i
    }

    /// `b_i · b_j`
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.basis.len() + j]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                if self.basis[*i].source != self.basis[*j].target {
                    continue;
                }
                let p = self.mul_basis(*i, *j);
                if !p.is_empty() {
                    acc = sparse_axpy(self.field, &acc, &a.mul(b), p);
                }
            }
        }
        acc
    }

    /// Basis indices of `e_t·A·e_s` (paths `s → t`).
    pub fn corner_indices(&self, t: usize, s: usize) -> &[usize] {
        &self.corners[t * self.num_vertices() + s]
    }

    /// Position of basis element `i` inside its corner list.
    pub fn corner_position(&self, i: usize) -> usize {
        self.corner_pos[i]
    }

    /// `e_i·A·e_j` as a subspace of A.
    pub fn corner(&self, i: usize, j: usize) -> Subspace {
        let v: Vec<SparseVec> = self.corner_indices(i, j).iter().map(|&b| vec![(b, Scalar::one(self.field))]).collect();
        Subspace::span(self.field, self.dim(), &v)
    }

    pub fn radical_basis(&self) -> Subspace {
        let v: Vec<SparseVec> = self.radical.iter().map(|&b| vec![(b, Scalar::one(self.field))]).collect();
        Subspace::span(self.field, self.dim(), &v)
    }

    pub fn unit(&self) -> SparseVec {
        let mut u: SparseVec = self.idempotents.iter().map(|&i| (i, Scalar::one(self.field))).collect();
        u.sort_by_key(|e| e.0);
        u
    }

    pub fn is_hereditary_path_algebra(&self) -> bool {
        match &self.quiver {
            Some(q) => self.relations.is_empty() && q.is_acyclic(),
            None => false,
        }
    }

    pub fn all_cdeg_zero(&self) -> bool {
        self.basis.iter().all(|b| b.cdeg == 0)
    }

    /// Element of A given by a path in traversal order; the empty path at `v` is `e_v`.
    pub fn path_element(&self, path: &[usize], empty_vertex: Option<usize>) -> Option<SparseVec> {
        let q = self.quiver.as_ref()?;
        if path.is_empty() {
            return empty_vertex.map(|v| vec![(self.idempotents[v], Scalar::one(self.field))]);
        }
        q.path_ends(path)?;
        let arrow_elem = |k: usize| -> SparseVec {
            let idx = self.basis.iter().position(|b| b.path.as_deref() == Some(&[k][..]));
            match idx {
                Some(i) => vec![(i, Scalar::one(self.field))],
                None => {
                    // an arrow that is itself reducible (unusual); fall back to normal-form search
                    Vec::new()
                }
            }
        };
        let mut acc = arrow_elem(path[0]);
        for &k in &path[1..] {
            acc = self.mul(&arrow_elem(k), &acc);
        }
        Some(acc)
    }

    /// Checks unit, orthogonality, corner typing, associativity and radical nilpotency.
    pub fn check_axioms(&self) -> Result<(), QuiverError> {
        let n = self.dim();
        let one = Scalar::one(self.field);
        for (v, &e) in self.idempotents.iter().enumerate() {
            let b = &self.basis[e];
            if b.source != v || b.target != v {
                return Err(QuiverError::InvalidStructure(format!("idempotent {} misplaced", v)));
            }
            for (w, &f) in self.idempotents.iter().enumerate() {
                let p = self.mul_basis(e, f);
                let want: SparseVec = if v == w { vec![(e, one.clone())] } else { Vec::new() };
                if *p != want {
                    return Err(QuiverError::InvalidStructure(format!("idempotents {} {} not orthogonal", v, w)));
                }
            }
        }
        for i in 0..n {
            let b = &self.basis[i];
            let l = self.mul_basis(self.idempotents[b.target], i);
            let r = self.mul_basis(i, self.idempotents[b.source]);
            let want = vec![(i, one.clone())];
            if *l != want || *r != want {
                return Err(QuiverError::InvalidStructure(format!("basis element {} not corner-homogeneous", i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let p = self.mul_basis(i, j);
                for (k, _) in p {
                    let (bi, bj, bk) = (&self.basis[i], &self.basis[j], &self.basis[*k]);
                    if bk.source != bj.source || bk.target != bi.target {
                        return Err(QuiverError::InvalidStructure(format!("product {}·{} leaves its corner", i, j)));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.basis[i].source != self.basis[j].target {
                    continue;
                }
                let ij = self.mul_basis(i, j).clone();
                for k in 0..n {
                    if self.basis[j].source != self.basis[k].target {
                        continue;
                    }
                    let kk = vec![(k, one.clone())];
                    let lhs = self.mul(&ij, &kk);
                    let rhs = self.mul(&vec![(i, one.clone())], self.mul_basis(j, k));
                    if lhs != rhs {
                        return Err(QuiverError::InvalidStructure(format!("associativity fails on ({},{},{})", i, j, k)));
                    }
                }
            }
        }
        if self.radical_nilpotency_index().is_none() {
            return Err(QuiverError::InvalidStructure("radical is not nilpotent".to_string()));
        }
        Ok(())
    }

    /// Smallest N with rad^N = 0.
    pub fn radical_nilpotency_index(&self) -> Option<usize> {
        let rad = self.radical_basis();
        let mut power = rad.clone();
        for k in 1..=self.dim() + 1 {
            if power.dim() == 0 {
                return Some(k);
            }
            let mut prods = Vec::new();
            for x in power.basis() {
                for r in rad.basis() {
                    let p = self.mul(x, r);
                    if !p.is_empty() {
                        prods.push(p);
                    }
                }
            }
            power = Subspace::span(self.field, self.dim(), &prods);
        }
        None
    }
}

/// Builds `kQ/(rels)` from length-homogeneous relations.
pub fn build_algebra(field: Field, q: &Quiver, rels: &[Relation], max_len: usize) -> Result<PathBasisAlgebra, QuiverError> {
    q.validate()?;
    let nv = q.num_vertices();
    // shape of each relation: (source, target, length, cdeg, adeg)
    let mut shapes = Vec::new();
    for (ri, r) in rels.iter().enumerate() {
        let mut shape: Option<(usize, usize, usize, i64, i64)> = None;
        for (_, p) in &r.terms {
            let (s, t) = q.path_ends(p).ok_or(QuiverError::NotComposable(ri))?;
            let (c, a) = q.path_degrees(p);
            let sh = (s, t, p.len(), c, a);
            match shape {
                None => shape = Some(sh),
                Some(o) if (o.0, o.1) != (s, t) => return Err(QuiverError::NotParallel(ri)),
                Some(o) if o != sh => return Err(QuiverError::InhomogeneousRelation(ri)),
                _ => {}
            }
        }
        shapes.push(shape);
    }

    // paths by length, each grouped by (source, target)
    let mut by_len: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut normal: Vec<BasisElem> = Vec::new();
    for v in 0..nv {
        normal.push(BasisElem {
            source: v,
            target: v,
            cdeg: 0,
            adeg: 0,
            path: Some(Vec::new()),
            label: format!("e{}", q.vertices[v]),
        });
    }
    // ideal information per length: path -> index, echelon of the ideal
    struct Block {
        index: BTreeMap<Vec<usize>, usize>,
        ideal: Echelon,
        normal: Vec<usize>,
    }
    let mut blocks: Vec<Block> = Vec::new();
    blocks.push(Block { index: BTreeMap::new(), ideal: Echelon::new(field, 0), normal: Vec::new() });

    let mut len = 1;
    loop {
        // extend surviving paths by one arrow; paths with a non-normal prefix are still needed
        // since the ideal is spanned by p·r·q for all paths, so enumerate all paths of this length
        let prev: Vec<Vec<usize>> = if len == 1 { Vec::new() } else { by_len[len - 1].clone() };
        let mut cur: Vec<Vec<usize>> = Vec::new();
        if len == 1 {
            for k in 0..q.arrows.len() {
                cur.push(vec![k]);
            }
        } else {
            for p in &prev {
                let t = q.arrows[*p.last().unwrap()].target;
                for (k, a) in q.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut np = p.clone();
                        np.push(k);
                        cur.push(np);
                    }
                }
            }
        }
        // leftmost-longest lexicographic order: larger paths first become pivots
        cur.sort_by(|a, b| b.cmp(a));
        by_len.push(cur.clone());
        let index: BTreeMap<Vec<usize>, usize> = cur.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut ideal = Echelon::new(field, cur.len());
        for (ri, r) in rels.iter().enumerate() {
            let Some(sh) = shapes[ri] else { continue };
            if sh.2 > len {
                continue;
            }
            let extra = len - sh.2;
            for pre in 0..=extra {
                let post = extra - pre;
                // prefix paths ending at source of r (traversed first), suffix paths starting at target
                let prefixes: Vec<Vec<usize>> = if pre == 0 {
                    vec![Vec::new()]
                } else {
                    by_len[pre].iter().filter(|p| q.arrows[*p.last().unwrap()].target == sh.0).cloned().collect()
                };
                let suffixes: Vec<Vec<usize>> = if post == 0 {
                    vec![Vec::new()]
                } else {
                    by_len[post].iter().filter(|p| q.arrows[p[0]].source == sh.1).cloned().collect()
                };
                for a in &prefixes {
                    for b in &suffixes {
                        let mut v: SparseVec = Vec::new();
                        for (c, w) in &r.terms {
                            let mut full = a.clone();
                            full.extend_from_slice(w);
                            full.extend_from_slice(b);
                            let i = index[&full];
                            v = sparse_axpy(field, &v, c, &vec![(i, Scalar::one(field))]);
                        }
                        ideal.insert(&v);
                    }
                }
            }
        }
        let piv = ideal.pivots();
        let mut is_piv = vec![false; cur.len()];
        for p in piv {
            is_piv[p] = true;
        }
        let normals: Vec<usize> = (0..cur.len()).filter(|&i| !is_piv[i]).collect();
        if normals.is_empty() {
            break;
        }
        if len > max_len {
            return Err(QuiverError::NotFiniteDimensional { max_len });
        }
        let mut nidx = Vec::new();
        for &i in &normals {
            let p = &cur[i];
            let (s, t) = q.path_ends(p).unwrap();
            let (c, a) = q.path_degrees(p);
            let label = p.iter().map(|&k| q.arrows[k].name.as_str()).collect::<Vec<_>>().join("");
            normal.push(BasisElem { source: s, target: t, cdeg: c, adeg: a, path: Some(p.clone()), label });
            nidx.push(normal.len() - 1);
        }
        blocks.push(Block { index, ideal, normal: normals.clone() });
        let _ = &nidx;
        len += 1;
    }
    // global index of normal path (length, local idx) -> basis index
    let mut global: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    {
        let mut g = nv;
        for (l, b) in blocks.iter().enumerate().skip(1) {
            for &i in &b.normal {
                global.insert((l, i), g);
                g += 1;
            }
        }
    }
    let n = normal.len();
    let reduce_path = |p: &[usize]| -> SparseVec {
        let l = p.len();
        if l >= blocks.len() {
            return Vec::new();
        }
        let b = &blocks[l];
        let i = b.index[p];
        let red = b.ideal.to_rref_reduce(&vec![(i, Scalar::one(field))]);
        let mut out: SparseVec = red.into_iter().map(|(j, s)| (global[&(l, j)], s)).collect();
        out.sort_by_key(|e| e.0);
        out
    };
    let mut mult = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (&normal[i], &normal[j]);
            if bi.source != bj.target {
                continue;
            }
            let (pi, pj) = (bi.path.as_ref().unwrap(), bj.path.as_ref().unwrap());
            let prod = if pi.is_empty() {
                vec![(j, Scalar::one(field))]
            } else if pj.is_empty() {
                vec![(i, Scalar::one(field))]
            } else {
                let mut full = pj.clone();
                full.extend_from_slice(pi);
                reduce_path(&full)
            };
            mult[i * n + j] = prod;
        }
    }
    let idempotents = (0..nv).collect();
    let mut alg = PathBasisAlgebra::from_structure(field, q.vertices.clone(), normal, mult, idempotents)?;
    alg.quiver = Some(q.clone());
    alg.relations = rels.to_vec();
    Ok(alg)
}

impl Echelon {
    /// Fully reduces `v` modulo the row space, leaving only non-pivot entries.
    pub fn to_rref_reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce(v)
    }
}

/// `A ⊗ A^op`, vertex `(v, w)` stored as `v * n + w`.
///
/// The basis element `(a, b)` acts on bimodules by `m ↦ a·m·b`. As an element of
/// `A^e` its source is `(s(a), t(b))` and its target `(t(a), s(b))`.
pub fn enveloping(a: &PathBasisAlgebra) -> PathBasisAlgebra {
    let n = a.dim();
    let nv = a.num_vertices();
    let f = a.field;
    let mut basis = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (bx, by) = (&a.basis[x], &a.basis[y]);
            basis.push(BasisElem {
                source: bx.source * nv + by.target,
                target: bx.target * nv + by.source,
                cdeg: bx.cdeg + by.cdeg,
                adeg: bx.adeg + by.adeg,
                path: None,
                label: format!("{}⊗{}", bx.label, by.label),
            });
        }
    }
    let nn = n * n;
    let mut mult = vec![Vec::new(); nn * nn];
    for i in 0..nn {
        let (x, y) = (i / n, i % n);
        for j in 0..nn {
            let (x2, y2) = (j / n, j % n);
            if basis[i].source != basis[j].target {
                continue;
            }
            // (x⊗y)(x2⊗y2) = ± x·x2 ⊗ y2·y
            let sx = a.mul_basis(x, x2);
            let sy = a.mul_basis(y2, y);
            if sx.is_empty() || sy.is_empty() {
                continue;
            }
            let (dy, dx2, dy2) = (a.basis[y].cdeg, a.basis[x2].cdeg, a.basis[y2].cdeg);
            let sign = Scalar::sign(f, dy * dx2 + dy * dy2);
            let mut out: SparseVec = Vec::new();
            for (p, c) in sx {
                for (q, d) in sy {
                    out.push((p * n + q, c.mul(d).mul(&sign)));
                }
            }
            out.sort_by_key(|e| e.0);
            mult[i * nn + j] = out;
        }
    }
    let labels = (0..nv * nv).map(|k| format!("({},{})", a.vertex_labels[k / nv], a.vertex_labels[k % nv])).collect();
    let idempotents = (0..nv * nv).map(|k| a.idempotents[k / nv] * n + a.idempotents[k % nv]).collect();
    let mut env = PathBasisAlgebra::from_structure(f, labels, basis, mult, idempotents).expect("enveloping structure");
    env.radical = (0..nn).filter(|&i| !a.is_idempotent_basis(i / n) || !a.is_idempotent_basis(i % n)).collect();
    env
}

/// Finite-dimensional right module: basis vectors each lying in some `M·e_v`.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub field: Field,
    pub vertex: Vec<usize>,
    /// `action[b]` is right multiplication by algebra basis element `b`
    pub action: Vec<SparseMap>,
}

impl RightModule {
    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn zero(a: &PathBasisAlgebra) -> RightModule {
        RightModule { field: a.field, vertex: Vec::new(), action: vec![SparseMap::zero(a.field, 0, 0); a.dim()] }
    }

    pub fn regular(a: &PathBasisAlgebra) -> RightModule {
        let n = a.dim();
        let vertex = a.basis.iter().map(|b| b.source).collect();
        let mut action = Vec::with_capacity(n);
        for r in 0..n {
            let mut m = SparseMap::zero(a.field, n, n);
            for x in 0..n {
                if a.basis[x].source == a.basis[r].target {
                    for (k, c) in a.mul_basis(x, r) {
                        m.add_entry(*k, x, c);
                    }
                }
            }
            action.push(m);
        }
        RightModule { field: a.field, vertex, action }
    }

    pub fn simple(a: &PathBasisAlgebra, v: usize) -> RightModule {
        let mut action = vec![SparseMap::zero(a.field, 1, 1); a.dim()];
        action[a.idempotents[v]].add_entry(0, 0, &Scalar::one(a.field));
        RightModule { field: a.field, vertex: vec![v], action }
    }

    /// Top dimension vector: dims of `(M / M·rad)·e_v`.
    pub fn top_dimension_vector(&self, a: &PathBasisAlgebra) -> Vec<usize> {
        let n = self.dim();
        let mut gens = Vec::new();
        for &r in &a.radical {
            for c in &self.action[r].columns {
                if !c.is_empty() {
                    gens.push(c.clone());
                }
            }
        }
        let mrad = Subspace::span(self.field, n, &gens);
        let mut out = vec![0; a.num_vertices()];
        for v in 0..a.num_vertices() {
            // M·e_v is spanned by the basis vectors tagged v
            let part: Vec<SparseVec> =
                (0..n).filter(|&i| self.vertex[i] == v).map(|i| vec![(i, Scalar::one(self.field))]).collect();
            let pv = Subspace::span(self.field, n, &part);
            out[v] = pv.dim() - pv.intersection(&mrad).dim();
        }
        out
    }
}

pub fn dimension_vector(a: &PathBasisAlgebra, m: &RightModule) -> Vec<usize> {
    let mut out = vec![0; a.num_vertices()];
    for &v in &m.vertex {
        out[v] += 1;
    }
    out
}

/// Finite-dimensional bimodule over a single algebra.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub field: Field,
    /// (left vertex t, right vertex s): the basis vector lies in `e_t·M·e_s`
    pub tags: Vec<(usize, usize)>,
    pub cdeg: Vec<i64>,
    pub adeg: Vec<i64>,
    pub left: Vec<SparseMap>,
    pub right: Vec<SparseMap>,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    /// A as a bimodule over itself.
    pub fn regular(a: &PathBasisAlgebra) -> Bimodule {
        let n = a.dim();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = SparseMap::zero(a.field, n, n);
            let mut rt = SparseMap::zero(a.field, n, n);
            for x in 0..n {
                if a.basis[r].source == a.basis[x].target {
                    for (k, c) in a.mul_basis(r, x) {
                        l.add_entry(*k, x, c);
                    }
                }
                if a.basis[x].source == a.basis[r].target {
                    for (k, c) in a.mul_basis(x, r) {
                        rt.add_entry(*k, x, c);
                    }
                }
            }
            left.push(l);
            right.push(rt);
        }
        Bimodule {
            field: a.field,
            tags: a.basis.iter().map(|b| (b.target, b.source)).collect(),
            cdeg: a.basis.iter().map(|b| b.cdeg).collect(),
            adeg: a.basis.iter().map(|b| b.adeg).collect(),
            left,
            right,
        }
    }

    /// `D(A) = Hom_k(A, k)` with `(a·f·b)(x) = f(b·x·a)`.
    pub fn dual_of_algebra(a: &PathBasisAlgebra) -> Bimodule {
        let n = a.dim();
        let f = a.field;
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = SparseMap::zero(f, n, n);
            let mut rt = SparseMap::zero(f, n, n);
            // (r·x^*)(y) = x^*(y·r): coefficient of x in y·r
            for y in 0..n {
                if a.basis[y].source == a.basis[r].target {
                    for (x, c) in a.mul_basis(y, r) {
                        l.add_entry(y, *x, c);
                    }
                }
                if a.basis[r].source == a.basis[y].target {
                    for (x, c) in a.mul_basis(r, y) {
                        rt.add_entry(y, *x, c);
                    }
                }
            }
            left.push(l);
            right.push(rt);
        }
        // x^* for x in e_t A e_s lies in e_s D(A) e_t
        Bimodule {
            field: f,
            tags: a.basis.iter().map(|b| (b.source, b.target)).collect(),
            cdeg: a.basis.iter().map(|b| -b.cdeg).collect(),
            adeg: a.basis.iter().map(|b| -b.adeg).collect(),
            left,
            right,
        }
    }

    /// Checks the action axioms against `a`.
    pub fn check(&self, a: &PathBasisAlgebra) -> Result<(), String> {
        let n = self.dim();
        let one = Scalar::one(a.field);
        for i in 0..n {
            let (t, s) = self.tags[i];
            let v = vec![(i, one.clone())];
            if self.left[a.idempotents[t]].apply(&v) != v || self.right[a.idempotents[s]].apply(&v) != v {
                return Err(format!("basis vector {} not in its declared corner", i));
            }
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let xy = a.mul_basis(x, y);
                for i in 0..n {
                    let v = vec![(i, one.clone())];
                    // left: x·(y·m) = (xy)·m
                    let lhs = self.left[x].apply(&self.left[y].apply(&v));
                    let rhs = combine(a.field, &self.left, xy, &v);
                    if lhs != rhs {
                        return Err(format!("left action not associative at ({},{},{})", x, y, i));
                    }
                    // right: (m·x)·y = m·(xy)
                    let lhs = self.right[y].apply(&self.right[x].apply(&v));
                    let rhs = combine(a.field, &self.right, xy, &v);
                    if lhs != rhs {
                        return Err(format!("right action not associative at ({},{},{})", x, y, i));
                    }
                    let lhs = self.right[y].apply(&self.left[x].apply(&v));
                    let rhs = self.left[x].apply(&self.right[y].apply(&v));
                    if lhs != rhs {
                        return Err(format!("actions do not commute at ({},{},{})", x, y, i));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Hom_A(M, N)` for right modules. Maps are flattened with entry `(i → j)` at
/// `i·dim N + j`; the returned subspace has a reduced echelon basis, so a
/// one-dimensional endomorphism space is spanned by the identity.
pub fn module_hom(a: &PathBasisAlgebra, m: &RightModule, n: &RightModule) -> Subspace {
    let f = a.field;
    let (dm, dn) = (m.dim(), n.dim());
    let var = |i: usize, j: usize| i * dn + j;
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..dm {
        for j in 0..dn {
            if m.vertex[i] != n.vertex[j] {
                rows.push(vec![(var(i, j), Scalar::one(f))]);
            }
        }
    }
    let nrows = n.action.iter().map(|x| x.rows()).collect::<Vec<_>>();
    for r in 0..a.dim() {
        if a.is_idempotent_basis(r) {
            continue;
        }
        // (φ∘ρ_M(r))(e_i) − (ρ_N(r)∘φ)(e_i), component j
        for i in 0..dm {
            for j in 0..dn {
                let mut row: SparseVec = Vec::new();
                for (k, c) in &m.action[r].columns[i] {
                    row = sparse_axpy(f, &row, c, &vec![(var(*k, j), Scalar::one(f))]);
                }
                for (k, c) in &nrows[r][j] {
                    row = sparse_axpy(f, &row, &c.neg(), &vec![(var(i, *k), Scalar::one(f))]);
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    crate::exactlin::kernel_sparse(f, dm * dn, &rows)
}

/// Unflattens a vector produced by [`module_hom`].
pub fn hom_to_map(field: Field, dm: usize, dn: usize, v: &SparseVec) -> SparseMap {
    let mut out = SparseMap::zero(field, dm, dn);
    for (k, c) in v {
        out.add_entry(k % dn, k / dn, c);
    }
    out
}

pub fn map_to_hom(m: &SparseMap) -> SparseVec {
    let mut v: SparseVec = Vec::new();
    for (i, col) in m.columns.iter().enumerate() {
        for (j, c) in col {
            v.push((i * m.dst_dim + j, c.clone()));
        }
    }
    v
}

/// The bimodule `M = ⊕_v F(e_vA)` of a functor on projectives given by the
/// images `objects[v] = F(e_vA)` and, for each arrow `α: u → v`, a module map
/// `F(e_uA) → F(e_vA)` (the image of left multiplication by `α`).
pub fn bimodule_from_functor(a: &PathBasisAlgebra, objects: &[RightModule], arrow_maps: &[SparseMap]) -> Result<Bimodule, String> {
    let q = a.quiver.as_ref().ok_or_else(|| String::from("algebra has no quiver"))?;
    let f = a.field;
    let nv = a.num_vertices();
    if objects.len() != nv || arrow_maps.len() != q.arrows.len() {
        return Err(String::from("one object per vertex and one map per arrow required"));
    }
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + objects[v].dim();
    }
    let n = offset[nv];
    let mut tags = Vec::with_capacity(n);
    for (v, o) in objects.iter().enumerate() {
        for &w in &o.vertex {
            tags.push((v, w));
        }
    }
    let mut right = Vec::with_capacity(a.dim());
    for r in 0..a.dim() {
        let mut m = SparseMap::zero(f, n, n);
        for v in 0..nv {
            for (i, col) in objects[v].action[r].columns.iter().enumerate() {
                for (j, c) in col {
                    m.add_entry(offset[v] + j, offset[v] + i, c);
                }
            }
        }
        right.push(m);
    }
    let mut left = Vec::with_capacity(a.dim());
    for b in &a.basis {
        let mut m = SparseMap::zero(f, n, n);
        let path = b.path.as_ref().ok_or_else(|| String::from("basis element is not a path"))?;
        let s = b.source;
        let mut g = SparseMap::zero(f, objects[s].dim(), objects[s].dim());
        for i in 0..objects[s].dim() {
            g.add_entry(i, i, &Scalar::one(f));
        }
        for &arr in path {
            g = arrow_maps[arr].compose(&g);
        }
        for (i, col) in g.columns.iter().enumerate() {
            for (j, c) in col {
                m.add_entry(offset[b.target] + j, offset[s] + i, c);
            }
        }
        left.push(m);
    }
    let out = Bimodule { field: f, tags, cdeg: vec![0; n], adeg: vec![0; n], left, right };
    out.check(a)?;
    Ok(out)
}

fn combine(field: Field, maps: &[SparseMap], coeffs: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut acc: SparseVec = Vec::new();
    for (k, c) in coeffs {
        acc = sparse_axpy(field, &acc, c, &maps[*k].apply(v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn kronecker() -> PathBasisAlgebra {
        let mut q = Quiver::with_vertices(2);
        q.add_arrow("x", 0, 1);
        q.add_arrow("y", 0, 1);
        build_algebra(Q, &q, &[], 4).unwrap()
    }

    fn a4_mod_longest() -> PathBasisAlgebra {
        let mut q = Quiver::with_vertices(4);
        for i in 0..3 {
            q.add_arrow(&format!("a{}", i + 1), i, i + 1);
        }
        build_algebra(Q, &q, &[Relation::monomial(Q, vec![0, 1, 2])], 4).unwrap()
    }

    #[test]
    fn build_examples() {
        let k = kronecker();
        assert_eq!(k.dim(), 4);
        k.check_axioms().unwrap();
        let c = a4_mod_longest();
        assert_eq!(c.dim(), 9);
        c.check_axioms().unwrap();
        let mut q = Quiver::with_vertices(1);
        q.add_arrow("t", 0, 0);
        assert_eq!(build_algebra(Q, &q, &[], 5).unwrap_err(), QuiverError::NotFiniteDimensional { max_len: 5 });
    }

    #[test]
    fn commutative_square() {
        let mut q = Quiver::with_vertices(4);
        let a = q.add_arrow("a", 0, 1);
        let b = q.add_arrow("b", 1, 3);
        let c = q.add_arrow("c", 0, 2);
        let d = q.add_arrow("d", 2, 3);
        let alg = build_algebra(Q, &q, &[Relation::binomial(Q, vec![a, b], vec![c, d])], 3).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        alg.check_axioms().unwrap();
    }

    #[test]
    fn enveloping_and_corners() {
        let k = kronecker();
        let e = enveloping(&k);
        assert_eq!(e.dim(), 16);
        e.check_axioms().unwrap();
        assert_eq!(k.corner(1, 0).dim(), 2);
        assert_eq!(k.corner(0, 1).dim(), 0);
        let mut q = Quiver::with_vertices(2);
        q.add_arrow("x", 0, 1);
        let a2 = build_algebra(Q, &q, &[], 3).unwrap();
        assert_eq!(enveloping(&a2).dim(), 9);
    }

    #[test]
    fn modules() {
        let k = kronecker();
        let r = RightModule::regular(&k);
        assert_eq!(dimension_vector(&k, &r), vec![3, 1]);
        assert_eq!(r.top_dimension_vector(&k), vec![1, 1]);
        assert_eq!(dimension_vector(&k, &RightModule::zero(&k)), vec![0, 0]);
        assert_eq!(dimension_vector(&k, &RightModule::simple(&k, 1)), vec![0, 1]);
        Bimodule::regular(&k).check(&k).unwrap();
        Bimodule::dual_of_algebra(&k).check(&k).unwrap();
        Bimodule::dual_of_algebra(&a4_mod_longest()).check(&a4_mod_longest()).unwrap();
    }
}
