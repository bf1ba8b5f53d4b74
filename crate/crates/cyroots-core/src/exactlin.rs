//! Exact linear algebra over the rationals and prime fields.
//!
//! Vectors are column vectors; a `Matrix` with `rows × cols` maps
//! `cols`-dimensional vectors to `rows`-dimensional ones.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rational)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                Scalar::Fp { v: r, p }
            }
        }
    }

    /// `(-1)^k`.
    pub fn sign(field: Field, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            Scalar::one(field)
        } else {
            Scalar::from_i64(field, -1)
        }
    }

    /// Maps `num/den` into `field`; `None` if the denominator vanishes there.
    pub fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match field {
            Field::Rational => Some(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u64()?;
                let d = den.mod_floor(&pb).to_u64()?;
                if d == 0 {
                    return None;
                }
                Some(Scalar::Fp { v: mulmod(n, powmod(d, p - 2, p), p), p })
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => {
                Scalar::Fp { v: ((*a as u128 + *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp { v: mulmod(*a, *b, *p), p: *p },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: powmod(*v, p - 2, *p), p: *p },
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn add_assign(&mut self, o: &Scalar) {
        match (&mut *self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            _ => *self = Scalar::add(self, o),
        }
    }

    /// `self += a * b`
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Q(s), Scalar::Q(x), Scalar::Q(y)) => *s += x * y,
            _ => *self = Scalar::add(self, &a.mul(b)),
        }
    }

    /// Numerator and denominator; the residue and 1 for prime fields.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Q(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Fp { v, .. } => (BigInt::from(*v), BigInt::one()),
        }
    }

    /// Reduction of a rational to `F_p`; `None` if the denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        let (n, d) = self.to_ratio();
        Scalar::from_ratio(Field::Prime(p), &n, &d)
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => i64::try_from(*v).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{}", v),
        }
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_axpy(field: Field, y: &SparseVec, c: &Scalar, x: &SparseVec) -> SparseVec {
    // y + c*x
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i >= y.len() || x[j].0 < y[i].0 {
            let v = c.mul(&x[j].1);
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let mut v = y[i].1.clone();
            v.add_mul(c, &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let _ = field;
    out
}

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())).collect()
}

pub fn dense_from_sparse(field: Field, n: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(field); n];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect()).collect();
        Matrix::from_rows(field, cols, &rs)
    }

    pub fn from_sparse_rows(field: Field, cols: usize, rows: &[SparseVec]) -> Matrix {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn sparse_row(&self, i: usize) -> SparseVec {
        sparse_from_dense(self.row(i))
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| self.sparse_row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    /// Horizontal concatenation `[self | o]`.
    pub fn hcat(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }
}

/// Incremental row echelon form over sparse rows.
///
/// Every stored row has leading coefficient 1 at its pivot column and no
/// entries left of it. Rows are not mutually reduced until `to_rref`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub field: Field,
    pub ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result has no entries in pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = dense_from_sparse(self.field, self.ncols, v);
        let start = v.first().map_or(self.ncols, |e| e.0);
        for c in start..self.ncols {
            if acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = acc[c].neg();
                for (j, x) in &self.rows[r] {
                    acc[*j].add_mul(&f, x);
                }
            }
        }
        sparse_from_dense(&acc)
    }

    /// Reduces `v` and records the combination of stored rows that was subtracted:
    /// `v = reduced + Σ coeff_r * row_r`.
    pub fn reduce_tracking(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut acc = dense_from_sparse(self.field, self.ncols, v);
        let mut coeffs: Vec<(usize, Scalar)> = Vec::new();
        let start = v.first().map_or(self.ncols, |e| e.0);
        for c in start..self.ncols {
            if acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = acc[c].clone();
                let nf = f.neg();
                for (j, x) in &self.rows[r] {
                    acc[*j].add_mul(&nf, x);
                }
                coeffs.push((r, f));
            }
        }
        coeffs.sort_by_key(|e| e.0);
        (sparse_from_dense(&acc), coeffs)
    }

    /// Inserts `v`; returns the index of the new row, or `None` if `v` was dependent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, r: SparseVec) -> Option<usize> {
        let (lead, lc) = match r.first() {
            None => return None,
            Some((c, s)) => (*c, s.clone()),
        };
        let inv = lc.inv();
        let row: SparseVec = r.into_iter().map(|(j, x)| (j, x.mul(&inv))).collect();
        self.rows.push(row);
        self.pivot_row[lead] = Some(self.rows.len() - 1);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Fully reduced rows sorted by pivot column.
    pub fn to_rref(&self) -> Vec<SparseVec> {
        let piv = self.pivots();
        let mut out: Vec<SparseVec> = Vec::with_capacity(piv.len());
        // back substitution from the last pivot
        let mut done = Echelon::new(self.field, self.ncols);
        for &c in piv.iter().rev() {
            let r = &self.rows[self.pivot_row[c].unwrap()];
            let red = done.reduce_keep_lead(r, c);
            done.rows.push(red.clone());
            done.pivot_row[c] = Some(done.rows.len() - 1);
            out.push(red);
        }
        out.reverse();
        out
    }

    fn reduce_keep_lead(&self, v: &SparseVec, lead: usize) -> SparseVec {
        let mut acc = dense_from_sparse(self.field, self.ncols, v);
        for c in lead + 1..self.ncols {
            if acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = acc[c].neg();
                for (j, x) in &self.rows[r] {
                    acc[*j].add_mul(&f, x);
                }
            }
        }
        sparse_from_dense(&acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Rref {
    let mut e = Echelon::new(m.field, m.cols);
    for i in 0..m.rows {
        e.insert(&m.sparse_row(i));
    }
    let rows = e.to_rref();
    let rank = rows.len();
    let mut reduced = Matrix::zeros(m.field, m.rows, m.cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r {
            reduced.set(i, *j, v.clone());
        }
    }
    Rref { reduced, rank, pivots: e.pivots() }
}

/// Dense Gauss-Jordan elimination; kept as the reference path for `rref`.
pub fn rref_dense(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                let t = a.get(p, j).clone();
                let u = a.get(r, j).clone();
                a.set(p, j, u);
                a.set(r, j, t);
            }
        }
        let inv = a.get(r, c).inv();
        for j in 0..a.cols {
            let v = a.get(r, j).mul(&inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).neg();
            for j in 0..a.cols {
                let mut v = a.get(i, j).clone();
                v.add_mul(&f, &a.get(r, j).clone());
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, rank: r, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rank_sparse(m.field, m.cols, &m.sparse_rows())
}

pub fn rank_sparse(field: Field, ncols: usize, rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Row space with a canonical (reduced row echelon) basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub field: Field,
    pub ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        let basis = (0..ambient_dim).map(|i| vec![(i, Scalar::one(field))]).collect();
        Subspace { field, ambient_dim, basis }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[SparseVec]) -> Subspace {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vectors {
            e.insert(v);
        }
        Subspace { field, ambient_dim, basis: e.to_rref() }
    }

    pub fn span_dense(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        let sv: Vec<SparseVec> = vectors.iter().map(|v| sparse_from_dense(v)).collect();
        Subspace::span(field, ambient_dim, &sv)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_sparse_rows(self.field, self.ambient_dim, &self.basis)
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.ambient_dim);
        for v in &self.basis {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        let e = self.echelon();
        o.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(o.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, &all)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        // The basis is in reduced echelon form, so the coordinate of basis row r
        // is the entry of v at that row's pivot column.
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut rest = v.clone();
        for b in &self.basis {
            let p = b[0].0;
            let c = rest.iter().find(|e| e.0 == p).map(|e| e.1.clone()).unwrap_or(Scalar::zero(self.field));
            if !c.is_zero() {
                rest = sparse_axpy(self.field, &rest, &c.neg(), b);
            }
            coords.push(c);
        }
        if rest.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    /// Vectors of `self` completing a basis of `sub` to a basis of `self`.
    /// Requires `sub ⊆ self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<SparseVec> {
        let mut e = sub.echelon();
        let mut out = Vec::new();
        for v in &self.basis {
            if e.insert(v).is_some() {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j w_j.
        let n = self.dim() + o.dim();
        let mut cols: Vec<SparseVec> = Vec::with_capacity(n);
        cols.extend(self.basis.iter().cloned());
        cols.extend(o.basis.iter().map(|w| w.iter().map(|(i, s)| (*i, s.neg())).collect()));
        let m = matrix_from_columns(self.field, self.ambient_dim, &cols);
        let k = kernel_basis(&m);
        let vecs: Vec<SparseVec> = k
            .basis()
            .iter()
            .map(|c| {
                let mut acc: SparseVec = Vec::new();
                for (i, s) in c {
                    if *i < self.dim() {
                        acc = sparse_axpy(self.field, &acc, s, &self.basis[*i]);
                    }
                }
                acc
            })
            .collect();
        Subspace::span(self.field, self.ambient_dim, &vecs)
    }
}

pub fn matrix_from_columns(field: Field, rows: usize, cols: &[SparseVec]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c {
            m.set(*i, j, v.clone());
        }
    }
    m
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    kernel_sparse(m.field, m.cols, &m.sparse_rows())
}

/// Right null space of the matrix with the given sparse rows.
pub fn kernel_sparse(field: Field, ncols: usize, rows: &[SparseVec]) -> Subspace {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    let rr = e.to_rref();
    let piv: Vec<usize> = rr.iter().map(|r| r[0].0).collect();
    let mut is_piv = vec![false; ncols];
    for &p in &piv {
        is_piv[p] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..ncols).filter(|&c| !is_piv[c]) {
        let mut v: SparseVec = Vec::new();
        for (ri, r) in rr.iter().enumerate() {
            if let Some((_, x)) = r.iter().find(|e| e.0 == f) {
                v.push((piv[ri], x.neg()));
            }
        }
        v.push((f, Scalar::one(field)));
        v.sort_by_key(|e| e.0);
        vecs.push(v);
    }
    Subspace::span(field, ncols, &vecs)
}

pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "right-hand side length");
    let bm = Matrix::from_rows(m.field, 1, &b.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
    let aug = m.hcat(&bm);
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(m.field); m.cols];
    for (i, &p) in r.pivots.iter().enumerate() {
        x[p] = r.reduced.get(i, m.cols).clone();
    }
    Some(x)
}

/// Sparse column-oriented linear map, used for large structured systems.
#[derive(Clone, Debug)]
pub struct SparseMap {
    pub field: Field,
    pub src_dim: usize,
    pub dst_dim: usize,
    /// images of the source basis vectors
    pub columns: Vec<SparseVec>,
}

impl SparseMap {
    pub fn zero(field: Field, src_dim: usize, dst_dim: usize) -> SparseMap {
        SparseMap { field, src_dim, dst_dim, columns: vec![Vec::new(); src_dim] }
    }

    pub fn add_entry(&mut self, dst: usize, src: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let col = &mut self.columns[src];
        match col.binary_search_by_key(&dst, |e| e.0) {
            Ok(k) => {
                col[k].1.add_assign(c);
                if col[k].1.is_zero() {
                    col.remove(k);
                }
            }
            Err(k) => col.insert(k, (dst, c.clone())),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (i, s) in v {
            acc = sparse_axpy(self.field, &acc, s, &self.columns[*i]);
        }
        acc
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.dst_dim];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, s) in c {
                rows[*i].push((j, s.clone()));
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        if self.src_dim <= self.dst_dim {
            rank_sparse(self.field, self.dst_dim, &self.columns)
        } else {
            rank_sparse(self.field, self.src_dim, &self.rows())
        }
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.dst_dim, &self.columns)
    }

    pub fn kernel(&self) -> Subspace {
        kernel_sparse(self.field, self.src_dim, &self.rows())
    }

    pub fn to_matrix(&self) -> Matrix {
        matrix_from_columns(self.field, self.dst_dim, &self.columns)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &SparseMap) -> SparseMap {
        assert_eq!(first.dst_dim, self.src_dim);
        SparseMap {
            field: self.field,
            src_dim: first.src_dim,
            dst_dim: self.dst_dim,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Reduction to a prime field; `None` if some denominator vanishes mod p.
    pub fn reduce_mod(&self, p: u64) -> Option<SparseMap> {
        let mut cols = Vec::with_capacity(self.columns.len());
        for c in &self.columns {
            let mut nc = Vec::with_capacity(c.len());
            for (i, s) in c {
                let r = s.reduce_mod(p)?;
                if !r.is_zero() {
                    nc.push((*i, r));
                }
            }
            cols.push(nc);
        }
        Some(SparseMap { field: Field::Prime(p), src_dim: self.src_dim, dst_dim: self.dst_dim, columns: cols })
    }
}

/// splitmix64 generator.
///
/// state += 0x9E3779B97F4A7C15; z = state;
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
/// return z ^ (z >> 31)
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `lo..=hi` (modulo bias is irrelevant here).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Seed for trial `i` derived from a base seed.
pub fn derive_seed(seed: u64, i: u64) -> u64 {
    SplitMix64::new(seed ^ i.wrapping_mul(0xD1B5_4A32_D192_ED03)).next_u64()
}

pub const DEFAULT_COEFF_BOUND: i64 = 10;

/// Random element of `space` with basis coefficients in `-bound..=bound`.
pub fn random_vector_bounded(space: &Subspace, seed: u64, bound: i64) -> Vec<Scalar> {
    let mut rng = SplitMix64::new(seed);
    let mut acc: SparseVec = Vec::new();
    for b in space.basis() {
        let c = Scalar::from_i64(space.field, rng.range_i64(-bound, bound));
        if !c.is_zero() {
            acc = sparse_axpy(space.field, &acc, &c, b);
        }
    }
    dense_from_sparse(space.field, space.ambient_dim, &acc)
}

pub fn random_vector(space: &Subspace, seed: u64) -> Vec<Scalar> {
    random_vector_bounded(space, seed, DEFAULT_COEFF_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let r = rref(&Matrix::identity(Q, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        let r = rref(&Matrix::zeros(Q, 3, 3));
        assert_eq!(r.rank, 0);
        assert!(r.reduced.is_zero());
        let r = rref(&Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]));
        assert_eq!(r.reduced, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(Q, 3)).dim(), 0);
        let k = kernel_basis(&Matrix::from_i64(Q, &[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        let v = dense_from_sparse(Q, 2, &k.basis()[0]);
        assert!(v[0].add(&v[1]).is_zero());
        assert_eq!(kernel_basis(&Matrix::zeros(Q, 2, 3)).dim(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Scalar::from_i64(Q, 3), Scalar::from_i64(Q, -1)];
        assert_eq!(solve_linear(&Matrix::identity(Q, 2), &b), Some(b.clone()));
        let x = solve_linear(&Matrix::from_i64(Q, &[&[1, 1]]), &[Scalar::from_i64(Q, 3)]).unwrap();
        assert_eq!(x[0].add(&x[1]), Scalar::from_i64(Q, 3));
        assert_eq!(solve_linear(&Matrix::from_i64(Q, &[&[1], &[0]]), &[Scalar::zero(Q), Scalar::one(Q)]), None);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = Scalar::from_i64(f, 3);
        assert!(a.mul(&a.inv()).is_one());
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 6));
        let h = Scalar::from_ratio(f, &BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(h, Scalar::from_i64(f, 4));
    }

    #[test]
    fn random_vector_contract() {
        let z = Subspace::zero(Q, 3);
        assert!(random_vector(&z, 5).iter().all(|s| s.is_zero()));
        let line = Subspace::span(Q, 2, &[vec![(0, Scalar::one(Q)), (1, Scalar::from_i64(Q, 2))]]);
        let v = random_vector(&line, 11);
        assert_eq!(v[1], v[0].mul(&Scalar::from_i64(Q, 2)));
        assert_eq!(random_vector(&line, 11), v);
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0 of the reference splitmix64
        let mut g = SplitMix64::new(0);
        assert_eq!(g.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(g.next_u64(), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn intersection_and_complement() {
        let a = Subspace::span(Q, 3, &[vec![(0, Scalar::one(Q))], vec![(1, Scalar::one(Q))]]);
        let b = Subspace::span(Q, 3, &[vec![(1, Scalar::one(Q))], vec![(2, Scalar::one(Q))]]);
        assert_eq!(a.intersection(&b).dim(), 1);
        let full = Subspace::full(Q, 3);
        assert_eq!(full.complement_of(&a).len(), 1);
        assert!(full.contains_subspace(&a.sum(&b)));
    }
}
