//! Example algebras and bimodules used throughout the test suite and CLI.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bimodcx::{ProjBimodComplex, Tensor};
use crate::exactlin::{Field, Scalar};
use crate::completion::DgPathAlgebra;
use crate::quiveralg::{build_algebra, PathBasisAlgebra, Quiver, Relation};

fn arrow_basis(a: &PathBasisAlgebra, name: &str) -> usize {
    let q = a.quiver.as_ref().expect("quiver algebra");
    let k = q.arrow_index(name).expect("arrow exists");
    a.basis.iter().position(|b| b.path.as_deref() == Some(&[k][..])).expect("arrow in basis")
}

/// `0 ⇉ 1` with arrows `x`, `y`.
pub fn kronecker(field: Field) -> Arc<PathBasisAlgebra> {
    let mut q = Quiver::new(&["0", "1"]);
    q.add_arrow("x", 0, 1);
    q.add_arrow("y", 0, 1);
    Arc::new(build_algebra(field, &q, &[], 2).unwrap())
}

/// `Ae_1⊗e_0A → Ae_0⊗e_1A`, `e_1⊗e_0 ↦ (−1)^s (x⊗y − ε y⊗x)`, in degrees `−s−1, −s`.
pub fn kronecker_u(a: &Arc<PathBasisAlgebra>, s: i64, eps: i64) -> ProjBimodComplex {
    let (x, y) = (arrow_basis(a, "x"), arrow_basis(a, "y"));
    kronecker_u_on(a, x, y, s, eps)
}

/// The same complex over any algebra with vertices `0, 1` and chosen basis elements `x, y ∈ e_1Ae_0`.
pub fn kronecker_u_on(a: &Arc<PathBasisAlgebra>, x: usize, y: usize, s: i64, eps: i64) -> ProjBimodComplex {
    let f = a.field;
    let mut u = ProjBimodComplex::new(a.clone());
    let src = u.add_summand(1, 0, -s - 1, 1);
    let tgt = u.add_summand(0, 1, -s, 1);
    let sg = Scalar::sign(f, s);
    let t: Tensor = vec![(x, y, sg.clone()), (y, x, sg.mul(&Scalar::from_i64(f, -eps)))];
    u.add_entry(tgt, src, &crate::bimodcx::tensor_normalize(f, t));
    u
}

/// Type `A_{2n}` with arrows `x_i: i → n+i` and `y_i: i → n+i+1`; vertex `k` has index `k − 1`.
pub fn type_a(field: Field, n: usize) -> Arc<PathBasisAlgebra> {
    let labels: Vec<alloc::string::String> = (1..=2 * n).map(|k| format!("{}", k)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    for i in 1..=n {
        q.add_arrow(&format!("x{}", i), i - 1, n + i - 1);
    }
    for i in 1..n {
        q.add_arrow(&format!("y{}", i), i - 1, n + i);
    }
    Arc::new(build_algebra(field, &q, &[], 2).unwrap())
}

/// `⊕ Ae_{2n+1−i}⊗e_iA → ⊕ Ae_i⊗e_{2n+1−i}A` in degrees `−d−1, −d`, with
/// `e_{2n+1−i}⊗e_i ↦ (−1)^d (x_{n+1−i}⊗x_i + ε y_{n−i}⊗y_i)` and `y_0 = y_n = 0`.
pub fn type_a_u(a: &Arc<PathBasisAlgebra>, n: usize, d: i64, eps: i64) -> ProjBimodComplex {
    let f = a.field;
    let v = |k: usize| k - 1;
    let mut u = ProjBimodComplex::new(a.clone());
    let src: Vec<usize> = (1..=n).map(|i| u.add_summand(v(2 * n + 1 - i), v(i), -d - 1, 1)).collect();
    let tgt: Vec<usize> = (1..=n).map(|i| u.add_summand(v(i), v(2 * n + 1 - i), -d, 1)).collect();
    let sg = Scalar::sign(f, d);
    for i in 1..=n {
        // x_{n+1-i} ⊗ x_i lands in the summand indexed n+1-i
        let xl = arrow_basis(a, &format!("x{}", n + 1 - i));
        let xr = arrow_basis(a, &format!("x{}", i));
        u.add_entry(tgt[n - i], src[i - 1], &vec![(xl, xr, sg.clone())]);
        if i < n {
            let yl = arrow_basis(a, &format!("y{}", n - i));
            let yr = arrow_basis(a, &format!("y{}", i));
            u.add_entry(tgt[n - i - 1], src[i - 1], &vec![(yl, yr, sg.mul(&Scalar::from_i64(f, eps)))]);
        }
    }
    u
}

/// Linear `A_4` modulo the path of length 3.
pub fn a4_mod_longest(field: Field) -> Arc<PathBasisAlgebra> {
    let mut q = Quiver::new(&["1", "2", "3", "4"]);
    for i in 0..3 {
        q.add_arrow(&format!("a{}", i + 1), i, i + 1);
    }
    Arc::new(build_algebra(field, &q, &[Relation::monomial(field, vec![0, 1, 2])], 3).unwrap())
}

/// Linear `A_n`, `1 → 2 → ⋯ → n`.
pub fn linear_a(field: Field, n: usize) -> Arc<PathBasisAlgebra> {
    let labels: Vec<alloc::string::String> = (1..=n).map(|k| format!("{}", k)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    for i in 0..n.saturating_sub(1) {
        q.add_arrow(&format!("a{}", i + 1), i, i + 1);
    }
    Arc::new(build_algebra(field, &q, &[], n).unwrap())
}

/// The ground field as a one-vertex algebra.
pub fn point(field: Field) -> Arc<PathBasisAlgebra> {
    let q = Quiver::new(&["0"]);
    Arc::new(build_algebra(field, &q, &[], 1).unwrap())
}

/// Presentation of the completion at vertices `1..n` of type `A_{2n}`: arrows
/// `a_i: i → n+1−i`, `b_i: i → n−i` in degree `(−d, 1)`, loops `t_i` in degree
/// `(−2d−1, 2)` with `dt_i = a_{n+1−i}a_i + ε b_{n−i}b_i`.
pub fn type_a_presentation(field: Field, n: usize, d: i64, eps: i64) -> DgPathAlgebra {
    let labels: Vec<alloc::string::String> = (1..=n).map(|k| format!("{}", k)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    let a: Vec<usize> = (1..=n).map(|i| q.add_graded_arrow(&format!("a{}", i), i - 1, n - i, -d, 1)).collect();
    let b: Vec<usize> = (1..n).map(|i| q.add_graded_arrow(&format!("b{}", i), i - 1, n - i - 1, -d, 1)).collect();
    let t: Vec<usize> = (1..=n).map(|i| q.add_graded_arrow(&format!("t{}", i), i - 1, i - 1, -2 * d - 1, 2)).collect();
    let mut p = DgPathAlgebra::new(field, q);
    for i in 1..=n {
        let mut terms = vec![(Scalar::one(field), vec![a[i - 1], a[n - i]])];
        if i < n && eps != 0 {
            terms.push((Scalar::from_i64(field, eps), vec![b[i - 1], b[n - i - 1]]));
        }
        p.set_differential(t[i - 1], terms);
    }
    p
}

/// Resolution of `DA` over `A`; for `A = kA_2` this is a square root of `A^∨[1]`.
pub fn dual_resolution(a: &Arc<PathBasisAlgebra>) -> ProjBimodComplex {
    let m = crate::quiveralg::Bimodule::dual_of_algebra(a);
    crate::bimodcx::resolve_bimodule(a, &m, 2 * a.dim()).expect("DA has a finite resolution").complex
}

/// Square root of `C^∨[2]` on `C = a4_mod_longest`, with `e_1C ↦ e_3C` and `e_2C ↦ e_4C`,
/// as a resolved bimodule.
pub fn a4_square_root(c: &Arc<PathBasisAlgebra>) -> ProjBimodComplex {
    let m = crate::rootpair::square_root_from_images(c, 2, &[0, 1], &[2, 3], 16, 7).expect("functorial images");
    let r = crate::bimodcx::resolve_bimodule(c, &m, 2 * c.dim()).expect("finite resolution").complex;
    crate::bimodcx::minimize(&r)
}

/// Beilinson quiver: vertices `0..=d`, arrows `x{k}_{i}: i → i+1` for `0 ≤ k ≤ d`,
/// commutativity relations. Arrow `x{k}_{i}` has index `i(d+1) + k`.
pub fn beilinson(field: Field, d: usize) -> Arc<PathBasisAlgebra> {
    let labels: Vec<alloc::string::String> = (0..=d).map(|k| format!("{}", k)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    for i in 0..d {
        for k in 0..=d {
            q.add_arrow(&format!("x{}_{}", k, i), i, i + 1);
        }
    }
    let arr = |i: usize, k: usize| i * (d + 1) + k;
    let mut rels = Vec::new();
    for i in 0..d.saturating_sub(1) {
        for k in 0..=d {
            for l in k + 1..=d {
                rels.push(Relation::binomial(field, vec![arr(i, k), arr(i + 1, l)], vec![arr(i, l), arr(i + 1, k)]));
            }
        }
    }
    Arc::new(build_algebra(field, &q, &rels, d + 1).unwrap())
}

fn monomials(nvars: usize, deg: usize) -> Vec<Vec<usize>> {
    if nvars == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The bimodule `U` with `e_iUe_j = k[x_0..x_d]_{i−j+1}` over [`beilinson`], acting by
/// multiplication of monomials; a `(d+1)`-th root of `A^∨[d]`.
pub fn beilinson_root(a: &Arc<PathBasisAlgebra>, d: usize) -> crate::quiveralg::Bimodule {
    let f = a.field;
    let nvar = d + 1;
    let mut cells: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for i in 0..=d {
        for j in 0..=(i + 1).min(d) {
            for m in monomials(nvar, i + 1 - j) {
                cells.push((i, j, m));
            }
        }
    }
    let index: alloc::collections::BTreeMap<(usize, usize, Vec<usize>), usize> =
        cells.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
    let n = cells.len();
    let exps = |b: &crate::quiveralg::BasisElem| -> Vec<usize> {
        let mut e = vec![0; nvar];
        for &arr in b.path.as_ref().expect("path basis") {
            e[arr % nvar] += 1;
        }
        e
    };
    let add = |m: &[usize], e: &[usize]| -> Vec<usize> { m.iter().zip(e).map(|(x, y)| x + y).collect() };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for b in &a.basis {
        let e = exps(b);
        let mut l = crate::exactlin::SparseMap::zero(f, n, n);
        let mut r = crate::exactlin::SparseMap::zero(f, n, n);
        for (k, (i, j, m)) in cells.iter().enumerate() {
            if *i == b.source {
                if let Some(&t) = index.get(&(b.target, *j, add(m, &e))) {
                    l.add_entry(t, k, &Scalar::one(f));
                }
            }
            if *j == b.target {
                if let Some(&t) = index.get(&(*i, b.source, add(m, &e))) {
                    r.add_entry(t, k, &Scalar::one(f));
                }
            }
        }
        left.push(l);
        right.push(r);
    }
    crate::quiveralg::Bimodule {
        field: f,
        tags: cells.iter().map(|(i, j, _)| (*i, *j)).collect(),
        cdeg: vec![0; n],
        adeg: vec![0; n],
        left,
        right,
    }
}

/// [`beilinson_root`] resolved and minimized.
pub fn beilinson_root_complex(a: &Arc<PathBasisAlgebra>, d: usize) -> ProjBimodComplex {
    let m = beilinson_root(a, d);
    let r = crate::bimodcx::resolve_bimodule(a, &m, 2 * a.dim()).expect("finite resolution").complex;
    crate::bimodcx::minimize(&r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;

    #[test]
    fn beilinson_line_is_the_kronecker_root() {
        let a = beilinson(Field::Rational, 1);
        assert_eq!(a.dim(), 4);
        let m = beilinson_root(&a, 1);
        m.check(&a).unwrap();
        let u = beilinson_root_complex(&a, 1);
        let x = arrow_basis(&a, "x0_0");
        let y = arrow_basis(&a, "x1_0");
        let k = kronecker_u_on(&a, x, y, 0, 1);
        assert!(crate::bimodcx::find_quasi_iso(&u, &k, 0, 8, 1).map.is_some());
        let p2 = beilinson(Field::Rational, 2);
        assert_eq!(p2.dim(), 3 + 3 + 3 + 6);
        beilinson_root(&p2, 2).check(&p2).unwrap();
    }
}
