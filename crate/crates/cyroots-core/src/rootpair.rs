//! Casimir elements, Hochschild classes, cyclic invariance, `φ⁺`, and root-pair checks.
//!
//! For a complex `X` of projective bimodules, `X ⊗_{A^e} A` is modelled by cells
//! `(s, a)` with `a` a basis element of `e_{right(s)}·A·e_{left(s)}`; the
//! generator of `s` tensored with `a`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bimodcx::{
    bimodule_dual, chain_maps, find_quasi_iso, find_quasi_iso_in, is_closed, minimize_one_sided, one_sided, resolution_of_algebra,
    rhom_right, shift, tensor_over_a, tensor_power, BimodError, ChainMap, ProjBimodComplex, QuasiIsoSearch, Resolution,
    RightComplex, Side, VsComplex, Word, WordComplex,
};
use crate::exactlin::{derive_seed, random_vector_bounded, sparse_axpy, Field, Matrix, Scalar, SparseMap, SparseVec, Subspace};
use crate::quiveralg::{bimodule_from_functor, dimension_vector, hom_to_map, map_to_hom, module_hom, Bimodule, PathBasisAlgebra, RightModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootPairError {
    Bimod(BimodError),
    NotClosed(&'static str),
    LiftFailed(String),
    Degenerate(String),
}

impl fmt::Display for RootPairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootPairError::Bimod(e) => write!(f, "{}", e),
            RootPairError::NotClosed(w) => write!(f, "{} is not a closed morphism", w),
            RootPairError::LiftFailed(s) => write!(f, "lift failed: {}", s),
            RootPairError::Degenerate(s) => write!(f, "{}", s),
        }
    }
}

impl From<BimodError> for RootPairError {
    fn from(e: BimodError) -> Self {
        RootPairError::Bimod(e)
    }
}

/// `X ⊗_{A^e} A` as a complex of vector spaces.
#[derive(Clone, Debug)]
pub struct HochschildModel {
    pub complex: VsComplex,
    pub cells: BTreeMap<i64, Vec<(usize, usize)>>,
    index: BTreeMap<(usize, usize), (i64, usize)>,
}

impl HochschildModel {
    pub fn new(x: &ProjBimodComplex) -> HochschildModel {
        let a = &*x.base;
        let f = a.field;
        let mut cells: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        let mut index = BTreeMap::new();
        for (k, s) in x.summands.iter().enumerate() {
            for &b in a.corner_indices(s.right, s.left) {
                let v = cells.entry(s.cdeg).or_default();
                index.insert((k, b), (s.cdeg, v.len()));
                v.push((k, b));
            }
        }
        let dims: BTreeMap<i64, usize> = cells.iter().map(|(p, v)| (*p, v.len())).collect();
        let mut maps: BTreeMap<i64, SparseMap> = BTreeMap::new();
        for (&(t, s), e) in &x.diff {
            let p = x.summands[s].cdeg;
            let m = maps.entry(p).or_insert_with(|| SparseMap::zero(f, dims.get(&p).copied().unwrap_or(0), dims.get(&(p + 1)).copied().unwrap_or(0)));
            for &b in a.corner_indices(x.summands[s].right, x.summands[s].left) {
                let col = index[&(s, b)].1;
                for (xl, yr, c) in e {
                    // (x g_t y) ⊗ b = g_t ⊗ y·b·x
                    let yb = a.mul_basis(*yr, b);
                    for (k1, c1) in yb {
                        for (k2, c2) in a.mul_basis(*k1, *xl) {
                            m.add_entry(index[&(t, *k2)].1, col, &c.mul(c1).mul(c2));
                        }
                    }
                }
            }
        }
        HochschildModel { complex: VsComplex { field: f, dims, maps }, cells, index }
    }

    pub fn cell(&self, summand: usize, b: usize) -> Option<(i64, usize)> {
        self.index.get(&(summand, b)).copied()
    }

    pub fn is_cycle(&self, c: &HHClass) -> bool {
        self.complex.is_cycle(c.degree, &c.rep)
    }

    pub fn is_boundary(&self, c: &HHClass) -> bool {
        self.complex.is_boundary(c.degree, &c.rep)
    }

    pub fn homologous(&self, x: &HHClass, y: &HHClass) -> bool {
        assert_eq!(x.degree, y.degree);
        let f = self.complex.field;
        let diff = sparse_axpy(f, &x.rep, &Scalar::from_i64(f, -1), &y.rep);
        self.complex.is_boundary(x.degree, &diff)
    }
}

/// A chain-level element of some `X ⊗_{A^e} A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHClass {
    pub degree: i64,
    pub rep: SparseVec,
}

impl HHClass {
    pub fn zero(degree: i64) -> HHClass {
        HHClass { degree, rep: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }
}

/// Accumulates `coef · (summand ⊗ element)` into a cell vector.
fn push_cell(hh: &HochschildModel, f: Field, acc: &mut BTreeMap<usize, Scalar>, summand: usize, elem: &SparseVec, coef: &Scalar) {
    for (b, c) in elem {
        let (_, i) = hh.cell(summand, *b).expect("element lies in the closing corner");
        acc.entry(i).or_insert_with(|| Scalar::zero(f)).add_mul(coef, c);
    }
}

fn finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `Σ_s g_s ⊗ g_s^∨` over the summands of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirElement {
    /// coefficient of `g_s ⊗ g_s^∨`, indexed by summand
    pub coefficients: Vec<Scalar>,
}

pub fn casimir(x: &ProjBimodComplex) -> CasimirElement {
    CasimirElement { coefficients: vec![Scalar::one(x.field()); x.len()] }
}

/// Whether the Casimir element is a cycle of `X ⊗_{A^e} X^∨`.
pub fn casimir_is_cycle(x: &ProjBimodComplex, c: &CasimirElement) -> bool {
    let a = &*x.base;
    let f = a.field;
    let dual = bimodule_dual(x);
    let tp = tensor_over_a(x, &dual);
    let hh = HochschildModel::new(&tp.complex);
    let mut acc = BTreeMap::new();
    for (k, &(s, m, t)) in tp.origin.iter().enumerate() {
        if s == t && m == a.idempotent(x.summands[s].right) {
            let e = vec![(a.idempotent(x.summands[s].left), Scalar::one(f))];
            push_cell(&hh, f, &mut acc, k, &e, &c.coefficients[s]);
        }
    }
    let rep = finish(acc);
    hh.complex.is_cycle(0, &rep)
}

/// Image in `End(X)`: the diagonal map with the Casimir coefficients.
pub fn casimir_image(x: &ProjBimodComplex, c: &CasimirElement) -> ChainMap {
    let a = &*x.base;
    let mut m = ChainMap::zero(0);
    for (k, s) in x.summands.iter().enumerate() {
        m.add_entry(a.field, k, k, &vec![(a.idempotent(s.left), a.idempotent(s.right), c.coefficients[k].clone())]);
    }
    m
}

/// Whether the Casimir image differs from the identity by a null-homotopic map.
pub fn casimir_homotopic_to_identity(x: &ProjBimodComplex, c: &CasimirElement) -> bool {
    let img = casimir_image(x, c);
    if !is_closed(x, x, &img) {
        return false;
    }
    let f = x.field();
    let diff = img.axpy(f, &Scalar::from_i64(f, -1), &x.identity_map());
    if diff.is_zero() {
        return true;
    }
    let sp = chain_maps(x, x, 0);
    match sp.basis.to_vector(&diff) {
        Some(v) => sp.boundaries.contains(&v),
        None => false,
    }
}

/// Everything needed to talk about a candidate root `U` of `A^∨[d]` with `n` factors.
#[derive(Clone, Debug)]
pub struct RootContext {
    pub base: Arc<PathBasisAlgebra>,
    pub resolution: Resolution,
    /// `A^∨`, unshifted
    pub inverse_dualizing: ProjBimodComplex,
    pub u: ProjBimodComplex,
    pub n: usize,
    pub power: WordComplex,
    pub previous: Option<WordComplex>,
    pub hochschild: HochschildModel,
}

impl RootContext {
    pub fn new(u: &ProjBimodComplex, n: usize) -> Result<RootContext, RootPairError> {
        if n == 0 {
            return Err(RootPairError::Degenerate(String::from("need at least one tensor factor")));
        }
        let base = u.base.clone();
        let resolution = resolution_of_algebra(&base)?;
        for (_, e) in &resolution.augmentation {
            if e.len() != 1 || !base.is_idempotent_basis(e[0].0) || !e[0].1.is_one() {
                return Err(RootPairError::Degenerate(String::from("degree-0 generators of the resolution must map to vertex idempotents")));
            }
        }
        let inverse_dualizing = bimodule_dual(&resolution.complex);
        let power = tensor_power(u, n);
        let previous = if n >= 2 { Some(tensor_power(u, n - 1)) } else { None };
        let hochschild = HochschildModel::new(&power.complex);
        Ok(RootContext { base, resolution, inverse_dualizing, u: u.clone(), n, power, previous, hochschild })
    }

    /// Randomized search for `A^∨ → U^{⊗n}` of degree `−d`.
    pub fn find_root_map(&self, d: i64, trials: usize, seed: u64) -> QuasiIsoSearch {
        find_quasi_iso(&self.inverse_dualizing, &self.power.complex, -d, trials, seed)
    }

    /// `Σ_v φ(g_v^∨)·π(g_v)` in `U^{⊗n} ⊗_{A^e} A`.
    pub fn hh_class(&self, phi: &ChainMap) -> HHClass {
        let a = &*self.base;
        let f = a.field;
        let mut acc = BTreeMap::new();
        for (g, m) in &self.resolution.augmentation {
            for (&(w, src), e) in phi.entries.range((0, *g)..) {
                if src != *g {
                    continue;
                }
                for (x, y, c) in e {
                    let ym = a.mul(&vec![(*y, Scalar::one(f))], m);
                    let elem = a.mul(&ym, &vec![(*x, Scalar::one(f))]);
                    push_cell(&self.hochschild, f, &mut acc, w, &elem, c);
                }
            }
        }
        HHClass { degree: phi.degree, rep: finish(acc) }
    }

    /// `Σ_s (−1)^{d|g_s|} g_s ⊗ ψ(g_s^∨)` for `ψ: U^∨ → U^{⊗(n−1)}` of degree `−d`,
    /// moved into `U^{⊗n} ⊗_{A^e} A`.
    pub fn class_through_u(&self, psi: &ChainMap) -> HHClass {
        let prev = self.previous.as_ref().expect("n ≥ 2");
        let a = &*self.base;
        let f = a.field;
        let r = psi.degree;
        let mut acc = BTreeMap::new();
        for (&(w, s), e) in &psi.entries {
            let sg = Scalar::sign(f, r * self.u.summands[s].cdeg);
            let pw = &prev.words[w];
            for (x, y, c) in e {
                let mut factors = vec![s];
                factors.extend(pw.factors.iter().copied());
                let mut middles = vec![*x];
                middles.extend(pw.middles.iter().copied());
                let word = Word { factors, middles };
                let k = self.power.index[&word];
                push_cell(&self.hochschild, f, &mut acc, k, &vec![(*y, Scalar::one(f))], &c.mul(&sg));
            }
        }
        HHClass { degree: r, rep: finish(acc) }
    }

    /// Cyclic rotation `z_1⊗⋯⊗z_n ↦ (−1)^{|z_1|(|z_2|+⋯+|z_n|)} z_2⊗⋯⊗z_n⊗z_1`.
    pub fn rotate(&self, c: &HHClass) -> HHClass {
        if self.n == 1 || c.rep.is_empty() {
            return c.clone();
        }
        let f = self.base.field;
        let cells = &self.hochschild.cells[&c.degree];
        let mut acc = BTreeMap::new();
        for (i, coef) in &c.rep {
            let (k, close) = cells[*i];
            let w = &self.power.words[k];
            let d1 = self.u.summands[w.factors[0]].cdeg;
            let rest: i64 = w.factors[1..].iter().map(|&u| self.u.summands[u].cdeg).sum();
            let sg = Scalar::sign(f, d1 * rest);
            let mut factors: Vec<usize> = w.factors[1..].to_vec();
            factors.push(w.factors[0]);
            let mut middles: Vec<usize> = w.middles[1..].to_vec();
            middles.push(close);
            let nw = Word { factors, middles };
            let nk = self.power.index[&nw];
            push_cell(&self.hochschild, f, &mut acc, nk, &vec![(w.middles[0], Scalar::one(f))], &coef.mul(&sg));
        }
        HHClass { degree: c.degree, rep: finish(acc) }
    }

    /// Whether the rotation commutes with the differential on the cyclic model.
    pub fn rotation_is_chain_map(&self) -> bool {
        let f = self.base.field;
        for (&p, cells) in &self.hochschild.cells {
            for i in 0..cells.len() {
                let c = HHClass { degree: p, rep: vec![(i, Scalar::one(f))] };
                let dc = HHClass { degree: p + 1, rep: self.hochschild.complex.map(p).apply(&c.rep) };
                let lhs = self.rotate(&dc);
                let rc = self.rotate(&c);
                let rhs = HHClass { degree: p + 1, rep: self.hochschild.complex.map(p).apply(&rc.rep) };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_cyclically_invariant(&self, phi: &ChainMap) -> bool {
        if self.n == 1 {
            return true;
        }
        let c = self.hh_class(phi);
        self.hochschild.homologous(&c, &self.rotate(&c))
    }

    /// Searches the closed maps of degree `−d` for a quasi-isomorphism with invariant class.
    pub fn cyclic_invariance_family(&self, d: i64, trials: usize, seed: u64) -> FamilyVerdict {
        let x = &self.inverse_dualizing;
        let y = &self.power.complex;
        let sp = chain_maps(x, y, -d);
        let f = self.base.field;
        let closed = sp.closed.clone();
        if self.n == 1 {
            let q = find_quasi_iso_in(x, y, &sp, &closed, trials, seed);
            return FamilyVerdict {
                invariant: q.map.is_some().then_some(true),
                witness: q.map,
                closed_dim: closed.dim(),
                boundary_dim: sp.boundaries.dim(),
                invariant_dim: closed.dim(),
                trials_used: q.trials_used,
            };
        }
        // the linear map φ ↦ class(φ) − rotate(class(φ)), modulo boundaries
        let deg = -d;
        let amb = self.hochschild.complex.dim(deg);
        let bnd = self.hochschild.complex.boundaries(deg);
        let nz = closed.dim();
        let mut cols: Vec<SparseVec> = Vec::new();
        for z in closed.basis() {
            let phi = sp.basis.sparse_to_map(f, z);
            let c = self.hh_class(&phi);
            let r = self.rotate(&c);
            cols.push(sparse_axpy(f, &c.rep, &Scalar::from_i64(f, -1), &r.rep));
        }
        for b in bnd.basis() {
            cols.push(b.clone());
        }
        let mut m = SparseMap::zero(f, cols.len(), amb);
        m.columns = cols;
        let ker = m.kernel();
        let mut fam = Vec::new();
        for v in ker.basis() {
            let mut combo: SparseVec = Vec::new();
            for (i, c) in v {
                if *i < nz {
                    combo = sparse_axpy(f, &combo, c, &closed.basis()[*i]);
                }
            }
            if !combo.is_empty() {
                fam.push(combo);
            }
        }
        let family = Subspace::span(f, sp.basis.dim(), &fam);
        let q = find_quasi_iso_in(x, y, &sp, &family, trials, seed);
        FamilyVerdict {
            invariant: Some(q.map.is_some()),
            witness: q.map,
            closed_dim: closed.dim(),
            boundary_dim: sp.boundaries.dim(),
            invariant_dim: family.dim(),
            trials_used: q.trials_used,
        }
    }

    /// `U^* ⊗_A Y` for the right dual `U^* = Hom_A(U, A)`.
    pub fn dual_tensor(&self, y: &ProjBimodComplex) -> DualTensor {
        dual_tensor(&self.u, y)
    }

    /// `α: U^∨ → U^*⊗_A A^∨`, `g_s^∨ ↦ Σ_v Σ_{b ∈ e_vAe_{left(s)}} (e⊗b^*⊗g_v^∨)·b`.
    pub fn alpha(&self, t: &DualTensor) -> ChainMap {
        let a = &*self.base;
        let f = a.field;
        let mut m = ChainMap::zero(0);
        for (s, ss) in self.u.summands.iter().enumerate() {
            for (g, _) in &self.resolution.augmentation {
                let v = self.inverse_dualizing.summands[*g].left;
                for &b in a.corner_indices(v, ss.left) {
                    let k = t.index[&(s, b, *g)];
                    m.add_entry(f, k, s, &vec![(a.idempotent(ss.right), b, Scalar::one(f))]);
                }
            }
        }
        m
    }

    /// `1⊗φ: U^*⊗_A A^∨ → U^*⊗_A U^{⊗n}`.
    pub fn one_tensor(&self, src: &DualTensor, dst: &DualTensor, phi: &ChainMap) -> ChainMap {
        let a = &*self.base;
        let f = a.field;
        let r = phi.degree;
        let y = &phi_source_summands(self);
        let mut out = ChainMap::zero(r);
        let mut by_src: BTreeMap<usize, Vec<(usize, &crate::bimodcx::Tensor)>> = BTreeMap::new();
        for (&(w, g), e) in &phi.entries {
            by_src.entry(g).or_default().push((w, e));
        }
        let _ = y;
        for (k, &(s, b, g)) in src.cells.iter().enumerate() {
            let ss = self.u.summands[s];
            let sg = Scalar::sign(f, r * ss.cdeg);
            let Some(list) = by_src.get(&g) else { continue };
            for (w, e) in list {
                let iw = self.power.complex.summands[*w].left;
                for (x, yv, c) in e.iter() {
                    for &b2 in a.corner_indices(iw, ss.left) {
                        for (bb, cb) in a.mul_basis(*x, b2) {
                            if *bb != b {
                                continue;
                            }
                            let tgt = dst.index[&(s, b2, *w)];
                            out.add_entry(f, tgt, k, &vec![(a.idempotent(ss.right), *yv, c.mul(cb).mul(&sg))]);
                        }
                    }
                }
            }
        }
        out
    }

    /// `ev⊗1: U^*⊗_A U^{⊗n} → U^{⊗(n−1)}`.
    pub fn evaluation(&self, t: &DualTensor) -> ChainMap {
        let prev = self.previous.as_ref().expect("n ≥ 2");
        let a = &*self.base;
        let f = a.field;
        let mut m = ChainMap::zero(0);
        for (k, &(s, b, w)) in t.cells.iter().enumerate() {
            let word = &self.power.words[w];
            if word.factors[0] != s || b != a.idempotent(self.u.summands[s].left) {
                continue;
            }
            let rest = Word { factors: word.factors[1..].to_vec(), middles: word.middles[1..].to_vec() };
            let tgt = prev.index[&rest];
            let lw = self.power.complex.summands[w].right;
            m.add_entry(f, tgt, k, &vec![(word.middles[0], a.idempotent(lw), Scalar::one(f))]);
        }
        m
    }

    /// `φ⁺ = (ev⊗1)∘(1⊗φ)∘α`, a closed map `U^∨ → U^{⊗(n−1)}` of the same degree as `φ`.
    pub fn phi_plus(&self, phi: &ChainMap) -> Result<PhiPlus, RootPairError> {
        if self.n < 2 {
            return Err(RootPairError::Degenerate(String::from("φ⁺ lands in A itself when n = 1")));
        }
        if !is_closed(&self.inverse_dualizing, &self.power.complex, phi) {
            return Err(RootPairError::NotClosed("φ"));
        }
        let a = &*self.base;
        let udual = bimodule_dual(&self.u);
        let t_src = self.dual_tensor(&self.inverse_dualizing);
        let t_dst = self.dual_tensor(&self.power.complex);
        let al = self.alpha(&t_src);
        if !is_closed(&udual, &t_src.complex, &al) {
            return Err(RootPairError::LiftFailed(String::from("α is not closed")));
        }
        let one = self.one_tensor(&t_src, &t_dst, phi);
        if !is_closed(&t_src.complex, &t_dst.complex, &one) {
            return Err(RootPairError::NotClosed("1⊗φ"));
        }
        let ev = self.evaluation(&t_dst);
        let prev = self.previous.as_ref().unwrap();
        if !is_closed(&t_dst.complex, &prev.complex, &ev) {
            return Err(RootPairError::NotClosed("ev⊗1"));
        }
        let map = ev.compose(a, &one.compose(a, &al));
        if !is_closed(&udual, &prev.complex, &map) {
            return Err(RootPairError::NotClosed("φ⁺"));
        }
        Ok(PhiPlus { map })
    }

    /// Both sides of the Casimir identity for `φ` and `φ⁺`, compared up to homotopy.
    pub fn check_itsumo(&self, phi: &ChainMap) -> Result<ItsumoReport, RootPairError> {
        if !is_closed(&self.inverse_dualizing, &self.power.complex, phi) {
            return Err(RootPairError::NotClosed("φ"));
        }
        if self.n == 1 {
            return Ok(ItsumoReport { holds: true, left_is_cycle: true, right_is_cycle: true, trivial: true });
        }
        let pp = self.phi_plus(phi)?;
        let lhs = self.hh_class(phi);
        let rhs = self.class_through_u(&pp.map);
        Ok(ItsumoReport {
            holds: self.hochschild.homologous(&lhs, &rhs),
            left_is_cycle: self.hochschild.is_cycle(&lhs),
            right_is_cycle: self.hochschild.is_cycle(&rhs),
            trivial: false,
        })
    }
}

fn phi_source_summands(c: &RootContext) -> usize {
    c.inverse_dualizing.len()
}

#[derive(Clone, Debug)]
pub struct PhiPlus {
    pub map: ChainMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItsumoReport {
    pub holds: bool,
    pub left_is_cycle: bool,
    pub right_is_cycle: bool,
    /// `n = 1`: both sides live in `A ⊗_{A^e} A` and agree by construction
    pub trivial: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyVerdict {
    /// `None` when no quasi-isomorphism was found at all
    pub invariant: Option<bool>,
    pub witness: Option<ChainMap>,
    pub closed_dim: usize,
    pub boundary_dim: usize,
    pub invariant_dim: usize,
    pub trials_used: usize,
}

/// `M^* ⊗_A Y` with cells `(s, b, t)`: `s` a summand of `M`, `b` a basis element of
/// `e_{left(t)}·A·e_{left(s)}` (standing for the functional `b^*`), `t` a summand of `Y`.
#[derive(Clone, Debug)]
pub struct DualTensor {
    pub complex: ProjBimodComplex,
    pub cells: Vec<(usize, usize, usize)>,
    pub index: BTreeMap<(usize, usize, usize), usize>,
}

pub fn dual_tensor(m: &ProjBimodComplex, y: &ProjBimodComplex) -> DualTensor {
    let a = &*m.base;
    let f = a.field;
    let mut c = ProjBimodComplex::new(m.base.clone());
    let mut cells = Vec::new();
    let mut index = BTreeMap::new();
    for (s, ss) in m.summands.iter().enumerate() {
        for (t, tt) in y.summands.iter().enumerate() {
            for &b in a.corner_indices(tt.left, ss.left) {
                let k = c.add_summand(ss.right, tt.right, tt.cdeg - ss.cdeg, tt.adeg - ss.adeg - a.basis[b].adeg);
                index.insert((s, b, t), k);
                cells.push((s, b, t));
            }
        }
    }
    let yo = y.outgoing();
    // entries of M into each summand s: (s' → s)
    let mut m_in: Vec<Vec<(usize, &crate::bimodcx::Tensor)>> = vec![Vec::new(); m.len()];
    for (&(s, s2), e) in &m.diff {
        m_in[s].push((s2, e));
    }
    for (k, &(s, b, t)) in cells.iter().enumerate() {
        let ss = m.summands[s];
        let tt = y.summands[t];
        // −(−1)^{p} f∘d_M
        let sg1 = Scalar::sign(f, ss.cdeg + 1);
        for (s2, e) in &m_in[s] {
            let s2s = m.summands[*s2];
            for (x, yv, cc) in e.iter() {
                for &b2 in a.corner_indices(tt.left, s2s.left) {
                    for (bb, cb) in a.mul_basis(b2, *x) {
                        if *bb != b {
                            continue;
                        }
                        let tgt = index[&(*s2, b2, t)];
                        c.add_entry(tgt, k, &vec![(*yv, a.idempotent(tt.right), cc.mul(cb).mul(&sg1))]);
                    }
                }
            }
        }
        // (−1)^{|f|} f⊗d_Y
        let sg2 = Scalar::sign(f, ss.cdeg);
        for (t2, e) in &yo[t] {
            let t2s = y.summands[*t2];
            for (x, yv, cc) in e.iter() {
                for &b2 in a.corner_indices(t2s.left, ss.left) {
                    for (bb, cb) in a.mul_basis(*x, b2) {
                        if *bb != b {
                            continue;
                        }
                        let tgt = index[&(s, b2, *t2)];
                        c.add_entry(tgt, k, &vec![(a.idempotent(ss.right), *yv, cc.mul(cb).mul(&sg2))]);
                    }
                }
            }
        }
    }
    DualTensor { complex: c, cells, index }
}

/// A root pair candidate `(A, U, a, d, e)` with `P = eA`.
#[derive(Clone, Debug)]
pub struct RootPairSpec {
    pub u: ProjBimodComplex,
    pub a: usize,
    pub d: i64,
    pub e: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub name: String,
    /// `None`: inconclusive (randomized search found nothing)
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub axioms: Vec<AxiomVerdict>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|v| v.passed == Some(true))
    }

    pub fn any_failed(&self) -> bool {
        self.axioms.iter().any(|v| v.passed == Some(false))
    }

    fn push(&mut self, name: &str, passed: Option<bool>, detail: String) {
        self.axioms.push(AxiomVerdict { name: String::from(name), passed, detail });
    }
}

/// `eA ⊗_A U^{⊗i}` as a minimized complex of right projectives.
pub fn translate(spec: &RootPairSpec, i: usize) -> RightComplex {
    let base = spec.u.base.clone();
    if i == 0 {
        return RightComplex::projective(base, &spec.e);
    }
    let p = tensor_power(&spec.u, i);
    minimize_one_sided(&one_sided(&p.complex, &spec.e, Side::Right))
}

/// Strictness: (i) `A^∨[d] ≃ U^{⊗a}`; (ii′) each `eA⊗U^{⊗i}`, `0 ≤ i < a`, is a projective
/// module in degree 0 and together they use every indecomposable projective once;
/// (iii) `RHom(eA⊗U^{⊗i}, eA) = 0` for `1 ≤ i ≤ a − 1`.
pub fn check_strict_pair(spec: &RootPairSpec, trials: usize, seed: u64) -> CheckReport {
    let mut rep = CheckReport::default();
    let base = spec.u.base.clone();
    let a = &*base;
    let nv = a.num_vertices();
    // (i)
    match RootContext::new(&spec.u, spec.a) {
        Ok(ctx) => {
            let q = ctx.find_root_map(spec.d, trials, seed);
            let detail = format!(
                "closed maps {}, null-homotopic {}, trials {}",
                q.closed_dim, q.boundary_dim, q.trials_used
            );
            rep.push("root", if q.map.is_some() { Some(true) } else { None }, detail);
        }
        Err(e) => rep.push("root", Some(false), format!("{}", e)),
    }
    // (ii')
    let mut ok = true;
    let mut tops: Vec<Vec<usize>> = Vec::new();
    let mut detail = String::new();
    for i in 0..spec.a {
        let t = translate(spec, i);
        let h = t.cohomology_dims();
        if h.keys().any(|&p| p != 0) {
            ok = false;
            detail.push_str(&format!("i={}: cohomology outside degree 0; ", i));
            continue;
        }
        let m = t.cohomology_module(0);
        let top = m.top_dimension_vector(a);
        let dv = dimension_vector(a, &m);
        let mut proj = vec![0usize; nv];
        for v in 0..nv {
            for w in 0..nv {
                proj[w] += top[v] * a.corner_indices(v, w).len();
            }
        }
        if proj != dv {
            ok = false;
            detail.push_str(&format!("i={}: not projective (top {:?}, dims {:?}); ", i, top, dv));
        }
        tops.push(top);
    }
    let mut total = vec![0usize; nv];
    for t in &tops {
        for v in 0..nv {
            total[v] += t[v];
        }
    }
    if ok && total != vec![1; nv] {
        ok = false;
        detail.push_str(&format!("projective summands {:?} differ from those of A", total));
    }
    if detail.is_empty() {
        detail = format!("tops {:?}", tops);
    }
    rep.push("strict-generation", Some(ok), detail);
    // (iii)
    let p0 = RightComplex::projective(base.clone(), &spec.e);
    let mut ok3 = true;
    let mut d3 = String::new();
    for i in 1..spec.a {
        let t = translate(spec, i);
        let h = rhom_right(&t, &p0).cohomology_dims();
        let tot: usize = h.values().sum();
        if tot != 0 {
            ok3 = false;
            d3.push_str(&format!("i={}: RHom has total dimension {}; ", i, tot));
        }
    }
    rep.push("vanishing", Some(ok3), d3);
    rep
}

/// Whether the Euler classes of `eA⊗U^{⊗i}`, `0 ≤ i < a`, span `ℚ^{vertices}`.
pub fn k0_spanning_check(spec: &RootPairSpec) -> bool {
    let a = &*spec.u.base;
    let nv = a.num_vertices();
    if spec.e.is_empty() {
        return false;
    }
    let f = Field::Rational;
    let mut rows = Vec::new();
    for i in 0..spec.a {
        let t = translate(spec, i);
        let ec = t.euler_class();
        // class of e_vA is its dimension vector
        let mut dv = vec![0i64; nv];
        for v in 0..nv {
            for w in 0..nv {
                dv[w] += ec[v] * a.corner_indices(v, w).len() as i64;
            }
        }
        rows.push(dv.iter().map(|&x| Scalar::from_i64(f, x)).collect::<Vec<_>>());
    }
    let m = Matrix::from_rows(f, nv, &rows);
    crate::exactlin::rank(&m) == nv
}

/// `A^∨[d]` as the source of a root map.
pub fn shifted_inverse_dualizing(ctx: &RootContext, d: i64) -> ProjBimodComplex {
    shift(&ctx.inverse_dualizing, d)
}

/// `H^0(e_vA ⊗ X)` for a bimodule complex `X`, if that is all of its cohomology.
fn vertex_image(x: &ProjBimodComplex, v: usize) -> Result<RightModule, RootPairError> {
    let c = one_sided(x, &[v], Side::Right);
    if c.cohomology_dims().keys().any(|&p| p != 0) {
        return Err(RootPairError::Degenerate(format!("image of vertex {} is not a module in degree 0", v)));
    }
    Ok(c.cohomology_module(0))
}

fn projective_module(a: &Arc<PathBasisAlgebra>, v: usize) -> RightModule {
    RightComplex::projective(a.clone(), &[v]).cohomology_module(0)
}

/// Square root candidate as a bimodule in degree 0 for a strict pair with `a = 2`:
/// the functor sends `e_vA` to `e_{partner(v)}A` for `v ∈ e` and `e_{partner(v)}A`
/// to `H^0(e_vA ⊗ A^∨[d])`. Arrow images are chosen in the (usually one-dimensional)
/// Hom spaces; a candidate is accepted once the actions satisfy the relations.
/// Whether it is a root is left to [`check_strict_pair`].
pub fn square_root_from_images(
    a: &Arc<PathBasisAlgebra>,
    d: i64,
    e: &[usize],
    partner: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Bimodule, RootPairError> {
    let nv = a.num_vertices();
    let q = a.quiver.as_ref().ok_or_else(|| RootPairError::Degenerate(String::from("algebra has no quiver")))?;
    if e.len() != partner.len() || e.len() * 2 != nv {
        return Err(RootPairError::Degenerate(String::from("e and its partners must cover every vertex once")));
    }
    let res = resolution_of_algebra(a)?;
    let inv = shift(&bimodule_dual(&res.complex), d);
    let mut objects: Vec<Option<RightModule>> = vec![None; nv];
    for (&v, &w) in e.iter().zip(partner) {
        objects[v] = Some(projective_module(a, w));
        objects[w] = Some(vertex_image(&inv, v)?);
    }
    let objects: Vec<RightModule> = objects
        .into_iter()
        .map(|o| o.ok_or_else(|| RootPairError::Degenerate(String::from("e and its partners must cover every vertex once"))))
        .collect::<Result<_, _>>()?;
    let homs: Vec<Subspace> = q.arrows.iter().map(|ar| module_hom(a, &objects[ar.source], &objects[ar.target])).collect();
    if let Some(k) = homs.iter().position(|h| h.dim() == 0) {
        return Err(RootPairError::Degenerate(format!("arrow {} has no nonzero image", q.arrows[k].name)));
    }
    let f = a.field;
    let mut last = String::new();
    for t in 0..trials.max(1) {
        let maps: Vec<SparseMap> = q
            .arrows
            .iter()
            .zip(&homs)
            .enumerate()
            .map(|(k, (ar, h))| {
                let v = if t == 0 {
                    let mut acc: SparseVec = Vec::new();
                    for b in h.basis() {
                        acc = sparse_axpy(f, &acc, &Scalar::one(f), b);
                    }
                    acc
                } else {
                    crate::exactlin::sparse_from_dense(&random_vector_bounded(h, derive_seed(seed, (t * 64 + k) as u64), 3))
                };
                hom_to_map(f, objects[ar.source].dim(), objects[ar.target].dim(), &v)
            })
            .collect();
        match bimodule_from_functor(a, &objects, &maps) {
            Ok(m) => return Ok(m),
            Err(s) => last = s,
        }
    }
    Err(RootPairError::LiftFailed(format!("no functorial choice of arrow images: {}", last)))
}

/// Labels `(i, u, v)` of the summands `(e_uA⊗U^i) ⊠ (e_vB⊗V^i)` of the tilting object.
#[derive(Clone, Debug)]
pub struct StrictTensorAlgebra {
    pub algebra: PathBasisAlgebra,
    pub summands: Vec<(usize, usize, usize)>,
}

/// `End(⊕_i (P⊗U^i) ⊠ (B⊗V^i))` for a strict pair `(U, P)` on `A` and an `a`-th root `V`
/// on `B` with every `V^i` a module. Hom spaces are computed at module level as
/// `Hom_A ⊗ Hom_B`; the absence of higher extensions is checked on the `A` side.
pub fn strict_tensor_algebra(spec: &RootPairSpec, v: &ProjBimodComplex) -> Result<StrictTensorAlgebra, RootPairError> {
    let abase = spec.u.base.clone();
    let bbase = v.base.clone();
    let f = abase.field;
    let mut xs: Vec<Vec<(RightComplex, RightModule)>> = Vec::new();
    let mut ys: Vec<Vec<RightModule>> = Vec::new();
    for i in 0..spec.a {
        let mut row = Vec::new();
        for &u in &spec.e {
            let one = RootPairSpec { u: spec.u.clone(), a: spec.a, d: spec.d, e: vec![u] };
            let t = translate(&one, i);
            if t.cohomology_dims().keys().any(|&p| p != 0) {
                return Err(RootPairError::Degenerate(format!("P⊗U^{} is not a module", i)));
            }
            let m = t.cohomology_module(0);
            row.push((t, m));
        }
        xs.push(row);
        let mut yrow = Vec::new();
        for w in 0..bbase.num_vertices() {
            if i == 0 {
                yrow.push(projective_module(&bbase, w));
            } else {
                yrow.push(vertex_image(&tensor_power(v, i).complex, w)?);
            }
        }
        ys.push(yrow);
    }
    let mut summands = Vec::new();
    for i in 0..spec.a {
        for u in 0..spec.e.len() {
            for w in 0..bbase.num_vertices() {
                summands.push((i, u, w));
            }
        }
    }
    let ns = summands.len();
    // Hom spaces between summands, factor by factor
    let mut ahom: BTreeMap<(usize, usize, usize, usize), Subspace> = BTreeMap::new();
    for i in 0..spec.a {
        for j in 0..spec.a {
            for u in 0..spec.e.len() {
                for u2 in 0..spec.e.len() {
                    let (tx, mx) = &xs[i][u];
                    let (ty, my) = &xs[j][u2];
                    let h = module_hom(&abase, mx, my);
                    let derived = rhom_right(tx, ty).cohomology_dims();
                    let higher: usize = derived.iter().filter(|(p, _)| **p != 0).map(|(_, d)| *d).sum();
                    if higher != 0 || derived.get(&0).copied().unwrap_or(0) != h.dim() {
                        return Err(RootPairError::Degenerate(format!("summands ({},{}) and ({},{}) have higher extensions", i, u, j, u2)));
                    }
                    ahom.insert((i, u, j, u2), h);
                }
            }
        }
    }
    let mut bhom: BTreeMap<(usize, usize, usize, usize), Subspace> = BTreeMap::new();
    for i in 0..spec.a {
        for j in 0..spec.a {
            for w in 0..bbase.num_vertices() {
                for w2 in 0..bbase.num_vertices() {
                    bhom.insert((i, w, j, w2), module_hom(&bbase, &ys[i][w], &ys[j][w2]));
                }
            }
        }
    }
    // basis: (target t, source s, index into A-hom basis, index into B-hom basis)
    let mut basis_cells: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut basis = Vec::new();
    let mut idempotents = vec![usize::MAX; ns];
    for s in 0..ns {
        for t in 0..ns {
            let (i, u, w) = summands[s];
            let (j, u2, w2) = summands[t];
            let ha = &ahom[&(i, u, j, u2)];
            let hb = &bhom[&(i, w, j, w2)];
            if s == t && ha.dim() * hb.dim() != 1 {
                return Err(RootPairError::Degenerate(format!("summand {:?} is not a brick", summands[s])));
            }
            for p in 0..ha.dim() {
                for r in 0..hb.dim() {
                    if s == t {
                        idempotents[s] = basis.len();
                    }
                    basis_cells.push((t, s, p, r));
                    basis.push(crate::quiveralg::BasisElem {
                        source: s,
                        target: t,
                        cdeg: 0,
                        adeg: 0,
                        path: None,
                        label: format!("({},{},{})<-({},{},{})#{}.{}", j, u2, w2, i, u, w, p, r),
                    });
                }
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize, usize), usize> = basis_cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let amap = |key: &(usize, usize, usize, usize), p: usize| {
        let (i, u, j, u2) = *key;
        hom_to_map(f, xs[i][u].1.dim(), xs[j][u2].1.dim(), &ahom[key].basis()[p])
    };
    let bmap = |key: &(usize, usize, usize, usize), r: usize| {
        let (i, w, j, w2) = *key;
        hom_to_map(f, ys[i][w].dim(), ys[j][w2].dim(), &bhom[key].basis()[r])
    };
    let n = basis.len();
    let mut mult = vec![Vec::new(); n * n];
    for (x, &(t, m, p, r)) in basis_cells.iter().enumerate() {
        for (y, &(m2, s, p2, r2)) in basis_cells.iter().enumerate() {
            if m2 != m {
                continue;
            }
            let (i, u, w) = summands[s];
            let (k, um, wm) = summands[m];
            let (j, u2, w2) = summands[t];
            // x: m → t, y: s → m
            let ga = amap(&(k, um, j, u2), p).compose(&amap(&(i, u, k, um), p2));
            let gb = bmap(&(k, wm, j, w2), r).compose(&bmap(&(i, w, k, wm), r2));
            let ca = ahom[&(i, u, j, u2)].coordinates(&map_to_hom(&ga)).expect("composite lies in the Hom space");
            let cb = bhom[&(i, w, j, w2)].coordinates(&map_to_hom(&gb)).expect("composite lies in the Hom space");
            let mut prod: SparseVec = Vec::new();
            for (pa, sa) in ca.iter().enumerate() {
                for (pb, sb) in cb.iter().enumerate() {
                    let c = sa.mul(sb);
                    if !c.is_zero() {
                        prod.push((index[&(t, s, pa, pb)], c));
                    }
                }
            }
            prod.sort_by_key(|e| e.0);
            mult[x * n + y] = prod;
        }
    }
    let labels = summands.iter().map(|(i, u, w)| format!("{}:{}:{}", i, spec.e[*u], w)).collect();
    let algebra = PathBasisAlgebra::from_structure(f, labels, basis, mult, idempotents)
        .map_err(|e| RootPairError::Degenerate(format!("{}", e)))?;
    algebra.check_axioms().map_err(|e| RootPairError::Degenerate(format!("{}", e)))?;
    Ok(StrictTensorAlgebra { algebra, summands })
}

/// A vertex bijection `π` and rescaling `b_k ↦ λ_k b'_k` turning the structure
/// constants of `x` into those of `y`, for algebras whose corners are at most
/// one-dimensional. Returns `π` (`π[v]` is the vertex of `y` matched to `v`).
pub fn match_small_corner_algebras(x: &PathBasisAlgebra, y: &PathBasisAlgebra) -> Option<Vec<usize>> {
    let nv = x.num_vertices();
    if nv != y.num_vertices() || x.dim() != y.dim() || nv > 8 {
        return None;
    }
    let small = |a: &PathBasisAlgebra| (0..nv).all(|t| (0..nv).all(|s| a.corner_indices(t, s).len() <= 1));
    if !small(x) || !small(y) {
        return None;
    }
    let mut perm: Vec<usize> = (0..nv).collect();
    loop {
        if let Some(()) = try_matching(x, y, &perm) {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn try_matching(x: &PathBasisAlgebra, y: &PathBasisAlgebra, perm: &[usize]) -> Option<()> {
    let f = x.field;
    let n = x.dim();
    let nv = x.num_vertices();
    for t in 0..nv {
        for s in 0..nv {
            if x.corner_indices(t, s).len() != y.corner_indices(perm[t], perm[s]).len() {
                return None;
            }
        }
    }
    let image = |k: usize| y.corner_indices(perm[x.basis[k].target], perm[x.basis[k].source])[0];
    let coeff = |a: &PathBasisAlgebra, i: usize, j: usize, k: usize| -> Scalar {
        a.mul_basis(i, j).iter().find(|e| e.0 == k).map(|e| e.1.clone()).unwrap_or(Scalar::zero(f))
    };
    let mut lambda: Vec<Option<Scalar>> = vec![None; n];
    for v in 0..nv {
        if image(x.idempotents[v]) != y.idempotents[perm[v]] {
            return None;
        }
        lambda[x.idempotents[v]] = Some(Scalar::one(f));
    }
    let mut in_square = vec![false; n];
    for &i in &x.radical {
        for &j in &x.radical {
            for (k, _) in x.mul_basis(i, j) {
                in_square[*k] = true;
            }
        }
    }
    for k in 0..n {
        if lambda[k].is_none() && !in_square[k] {
            lambda[k] = Some(Scalar::one(f));
        }
    }
    // propagate through products, then check every structure constant
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                let (Some(li), Some(lj)) = (lambda[i].clone(), lambda[j].clone()) else { continue };
                for (k, c) in x.mul_basis(i, j) {
                    if lambda[*k].is_none() {
                        let c2 = coeff(y, image(i), image(j), image(*k));
                        if c2.is_zero() {
                            return None;
                        }
                        lambda[*k] = Some(c2.mul(&li).mul(&lj).div(c));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let lambda: Vec<Scalar> = lambda.into_iter().map(|l| l.unwrap_or(Scalar::one(f))).collect();
    for i in 0..n {
        for j in 0..n {
            let xs_ = x.mul_basis(i, j);
            let ys_ = y.mul_basis(image(i), image(j));
            if xs_.len() != ys_.len() {
                return None;
            }
            for (k, c) in xs_ {
                let c2 = coeff(y, image(i), image(j), image(*k));
                if c.mul(&lambda[*k]) != c2.mul(&lambda[i]).mul(&lambda[j]) {
                    return None;
                }
            }
        }
    }
    Some(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{kronecker, kronecker_u, type_a, type_a_u};

    #[test]
    fn casimir_cycle_and_identity() {
        let a = kronecker(Field::Rational);
        for s in 0..2 {
            let u = kronecker_u(&a, s, 1);
            let c = casimir(&u);
            assert!(casimir_is_cycle(&u, &c));
            assert!(casimir_homotopic_to_identity(&u, &c));
        }
        let ctx = RootContext::new(&kronecker_u(&a, 0, 1), 1).unwrap();
        let c = casimir(&ctx.inverse_dualizing);
        assert!(casimir_is_cycle(&ctx.inverse_dualizing, &c));
    }

    #[test]
    fn rotation_is_chain_map() {
        let a = kronecker(Field::Rational);
        for s in 0..2 {
            for eps in [1, -1] {
                let ctx = RootContext::new(&kronecker_u(&a, s, eps), 2).unwrap();
                assert!(ctx.rotation_is_chain_map(), "s={} eps={}", s, eps);
            }
        }
    }

    #[test]
    fn kronecker_roots_and_invariance() {
        let a = kronecker(Field::Rational);
        for s in 0..2i64 {
            for eps in [1i64, -1] {
                let ctx = RootContext::new(&kronecker_u(&a, s, eps), 2).unwrap();
                let q = ctx.find_root_map(2 * s + 1, 8, 7);
                let phi = q.map.expect("root map exists");
                let fam = ctx.cyclic_invariance_family(2 * s + 1, 8, 7);
                let expect = eps == if s % 2 == 0 { 1 } else { -1 };
                assert_eq!(fam.invariant, Some(expect), "s={} eps={}", s, eps);
                assert_eq!(ctx.is_cyclically_invariant(&phi), expect);
                let it = ctx.check_itsumo(&phi).unwrap();
                assert!(it.left_is_cycle && it.right_is_cycle);
                assert!(it.holds, "s={} eps={}", s, eps);
            }
        }
    }

    #[test]
    fn type_a_itsumo() {
        for n in 1..=2 {
            let a = type_a(Field::Rational, n);
            for eps in [1, -1] {
                let ctx = RootContext::new(&type_a_u(&a, n, 1, eps), 2).unwrap();
                let phi = ctx.find_root_map(3, 8, 11).map.expect("root map");
                let it = ctx.check_itsumo(&phi).unwrap();
                assert!(it.holds, "n={} eps={}", n, eps);
                assert!(ctx.is_cyclically_invariant(&phi));
            }
        }
    }

    #[test]
    fn strict_pair_and_k0() {
        let a = kronecker(Field::Rational);
        let spec = RootPairSpec { u: kronecker_u(&a, 0, 1), a: 2, d: 1, e: vec![0] };
        let rep = check_strict_pair(&spec, 8, 3);
        assert!(rep.all_passed(), "{:?}", rep);
        assert!(k0_spanning_check(&spec));
        let bad = RootPairSpec { e: vec![0, 1], ..spec };
        assert!(check_strict_pair(&bad, 8, 3).any_failed());
    }

    #[test]
    fn a4_square_root_is_strict() {
        let c = crate::gallery::a4_mod_longest(Field::Rational);
        let u = crate::gallery::a4_square_root(&c);
        let spec = RootPairSpec { u, a: 2, d: 2, e: vec![0, 1] };
        let rep = check_strict_pair(&spec, 8, 11);
        assert!(rep.all_passed(), "{:?}", rep);
    }

    #[test]
    fn strict_tensor_of_a2() {
        let a = crate::gallery::linear_a(Field::Rational, 2);
        let u = crate::gallery::dual_resolution(&a);
        let spec = RootPairSpec { u: u.clone(), a: 2, d: 1, e: vec![0] };
        assert!(check_strict_pair(&spec, 8, 5).all_passed());
        let c = strict_tensor_algebra(&spec, &u).unwrap();
        assert_eq!(c.algebra.dim(), 9);
        let target = crate::gallery::a4_mod_longest(Field::Rational);
        assert!(match_small_corner_algebras(&c.algebra, &target).is_some());
        let lin = crate::gallery::linear_a(Field::Rational, 4);
        assert!(match_small_corner_algebras(&lin, &target).is_none());
    }
}
