//! Exact linear algebra over a small prime field F_p.
//!
//! Matrices are dense and row-major with entries stored as residues in
//! `[0, p)`. Row reduction always produces the reduced row echelon form with
//! pivots taken in column order, so kernel bases and particular solutions are
//! reproducible. Over F_2 the elimination runs on packed 64-bit words.

use std::fmt;

use thiserror::Error;

/// Primes accepted by [`PrimeField::new`].
pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FplaError {
    #[error("unsupported prime {0} (supported: 2, 3, 5, 7)")]
    UnsupportedPrime(u64),
    #[error("entry {value} out of range for F_{p}")]
    EntryOutOfRange { p: u8, value: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("prime mismatch: F_{0} vs F_{1}")]
    PrimeMismatch(u8, u8),
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FplaError> {
        if SUPPORTED_PRIMES.iter().any(|&q| q as u64 == p) {
            Ok(PrimeField { p: p as u8 })
        } else {
            Err(FplaError::UnsupportedPrime(p))
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a % self.p != 0);
        (1..self.p).find(|&x| self.mul(a, x) == 1).expect("nonzero element of a field")
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u8 {
        a.rem_euclid(self.p as i64) as u8
    }
}

fn check_prime(p: u8) -> Result<(), FplaError> {
    PrimeField::new(p as u64).map(|_| ())
}

fn check_entries(p: u8, entries: &[u8]) -> Result<(), FplaError> {
    match entries.iter().find(|&&x| x >= p) {
        Some(&x) => Err(FplaError::EntryOutOfRange { p, value: x as u64 }),
        None => Ok(()),
    }
}

/// A vector in F_p^dim.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVec {
    p: u8,
    coords: Vec<u8>,
}

impl FpVec {
    pub fn new(p: u8, coords: Vec<u8>) -> Result<Self, FplaError> {
        check_prime(p)?;
        check_entries(p, &coords)?;
        Ok(FpVec { p, coords })
    }

    /// Builds a vector from arbitrary integers, reducing each mod p.
    pub fn from_ints(field: PrimeField, ints: &[i64]) -> Self {
        FpVec { p: field.p(), coords: ints.iter().map(|&x| field.reduce(x)).collect() }
    }

    pub(crate) fn from_raw(p: u8, coords: Vec<u8>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < p));
        FpVec { p, coords }
    }

    pub fn zeros(p: u8, dim: usize) -> Self {
        FpVec { p, coords: vec![0; dim] }
    }

    pub fn unit(p: u8, dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(p, dim);
        v.coords[i] = 1;
        v
    }

    /// The vector whose coordinates are the base-p digits of `index`, most
    /// significant digit first. Enumerating `0..p^dim` walks F_p^dim in
    /// lexicographic order.
    pub fn from_index(p: u8, dim: usize, mut index: u64) -> Self {
        let mut coords = vec![0u8; dim];
        for c in coords.iter_mut().rev() {
            *c = (index % p as u64) as u8;
            index /= p as u64;
        }
        FpVec { p, coords }
    }

    /// Inverse of [`FpVec::from_index`].
    pub fn index(&self) -> u64 {
        self.coords.iter().fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u8> {
        self.coords
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVec) -> FpVec {
        let f = self.field();
        debug_assert_eq!(self.dim(), other.dim());
        FpVec {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &FpVec) -> FpVec {
        let f = self.field();
        debug_assert_eq!(self.dim(), other.dim());
        FpVec {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> FpVec {
        let f = self.field();
        FpVec { p: self.p, coords: self.coords.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: u8) -> FpVec {
        let f = self.field();
        FpVec { p: self.p, coords: self.coords.iter().map(|&a| f.mul(a, s)).collect() }
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: u8, other: &FpVec) {
        let f = self.field();
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    pub fn concat(&self, other: &FpVec) -> FpVec {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        FpVec { p: self.p, coords }
    }
}

impl fmt::Display for FpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A dense rows × cols matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMat {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMat {
    pub fn new(p: u8, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self, FplaError> {
        check_prime(p)?;
        if data.len() != rows * cols {
            return Err(FplaError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        check_entries(p, &data)?;
        Ok(FpMat { p, rows, cols, data })
    }

    pub fn zeros(p: u8, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Stacks equal-length vectors as rows. `cols` is needed for the empty case.
    pub fn from_rows(p: u8, cols: usize, rows: &[FpVec]) -> Result<Self, FplaError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(FplaError::DimensionMismatch { expected: cols, found: r.dim() });
            }
            if r.p() != p {
                return Err(FplaError::PrimeMismatch(p, r.p()));
            }
            data.extend_from_slice(r.coords());
        }
        Ok(FpMat { p, rows: rows.len(), cols, data })
    }

    /// Places equal-length vectors as columns.
    pub fn from_columns(p: u8, rows: usize, cols: &[FpVec]) -> Result<Self, FplaError> {
        Ok(Self::from_rows(p, rows, cols)?.transpose())
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        debug_assert!(value < self.p);
        self.data[r * self.cols + c] = value;
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn row(&self, r: usize) -> FpVec {
        FpVec { p: self.p, coords: self.data[r * self.cols..(r + 1) * self.cols].to_vec() }
    }

    pub fn column(&self, c: usize) -> FpVec {
        FpVec { p: self.p, coords: (0..self.rows).map(|r| self.get(r, c)).collect() }
    }

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &FpVec) -> Result<FpVec, FplaError> {
        if x.dim() != self.cols {
            return Err(FplaError::DimensionMismatch { expected: self.cols, found: x.dim() });
        }
        let p = self.p as u32;
        let coords = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let s: u32 = row.iter().zip(x.coords()).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect();
        Ok(FpVec { p: self.p, coords })
    }

    pub fn mul(&self, other: &FpMat) -> Result<FpMat, FplaError> {
        if other.rows != self.cols {
            return Err(FplaError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p as u32;
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s: u32 =
                    (0..self.cols).map(|k| self.get(r, k) as u32 * other.get(k, c) as u32).sum();
                out.data[r * other.cols + c] = (s % p) as u8;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FpMat) -> Result<FpMat, FplaError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FplaError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let f = self.field();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(FpMat { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &FpMat) -> Result<FpMat, FplaError> {
        if self.rows != other.rows {
            return Err(FplaError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Ok(FpMat { p: self.p, rows: self.rows, cols, data })
    }

    pub fn neg(&self) -> FpMat {
        let f = self.field();
        FpMat {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: FpMat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduces `a`. Pivots are chosen column by column, taking the first row
/// at or below the current position with a nonzero entry.
pub fn rref(a: &FpMat) -> Rref {
    if a.p == 2 {
        rref_gf2(a)
    } else {
        rref_generic(a)
    }
}

fn rref_generic(a: &FpMat) -> Rref {
    let f = a.field();
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..cols {
                m.data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(m.data[r * cols + c]);
        for k in c..cols {
            m.data[r * cols + k] = f.mul(m.data[r * cols + k], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.data[i * cols + c];
            if factor == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f.mul(factor, m.data[r * cols + k]);
                m.data[i * cols + k] = f.sub(m.data[i * cols + k], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

fn rref_gf2(a: &FpMat) -> Rref {
    let (rows, cols) = (a.rows, a.cols);
    let words = cols.div_ceil(64).max(1);
    let mut bits = vec![0u64; rows * words];
    for r in 0..rows {
        for c in 0..cols {
            if a.data[r * cols + c] != 0 {
                bits[r * words + c / 64] |= 1u64 << (c % 64);
            }
        }
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (w, mask) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (r..rows).find(|&i| bits[i * words + w] & mask != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..words {
                bits.swap(pr * words + k, r * words + k);
            }
        }
        for i in 0..rows {
            if i != r && bits[i * words + w] & mask != 0 {
                for k in w..words {
                    let v = bits[r * words + k];
                    bits[i * words + k] ^= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut data = vec![0u8; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            data[r * cols + c] = ((bits[r * words + c / 64] >> (c % 64)) & 1) as u8;
        }
    }
    Rref { matrix: FpMat { p: 2, rows, cols, data }, pivots }
}

pub fn rank(a: &FpMat) -> usize {
    rref(a).rank()
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent. Free
/// variables are set to zero.
pub fn solve(a: &FpMat, b: &FpVec) -> Result<Option<FpVec>, FplaError> {
    if b.dim() != a.rows {
        return Err(FplaError::DimensionMismatch { expected: a.rows, found: b.dim() });
    }
    if b.p() != a.p {
        return Err(FplaError::PrimeMismatch(a.p, b.p()));
    }
    let aug = a.hstack(&FpMat::from_columns(a.p, a.rows, std::slice::from_ref(b))?)?;
    let red = rref(&aug);
    if red.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![0u8; a.cols];
    for (r, &c) in red.pivots.iter().enumerate() {
        x[c] = red.matrix.get(r, a.cols);
    }
    Ok(Some(FpVec { p: a.p, coords: x }))
}

/// Basis of the null space of `a`, one vector per free column in increasing
/// column order.
pub fn kernel_basis(a: &FpMat) -> Vec<FpVec> {
    let f = a.field();
    let red = rref(a);
    let mut is_pivot = vec![false; a.cols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    (0..a.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u8; a.cols];
            x[free] = 1;
            for (r, &c) in red.pivots.iter().enumerate() {
                x[c] = f.neg(red.matrix.get(r, free));
            }
            FpVec { p: a.p, coords: x }
        })
        .collect()
}

/// A point of `(c1 + span s1) ∩ (c2 + span s2)`, or `None` if the cosets are
/// disjoint.
pub fn affine_intersect(
    c1: &FpVec,
    s1: &[FpVec],
    c2: &FpVec,
    s2: &[FpVec],
) -> Result<Option<FpVec>, FplaError> {
    let (p, dim) = (c1.p(), c1.dim());
    for v in s1.iter().chain(s2).chain(std::iter::once(c2)) {
        if v.dim() != dim {
            return Err(FplaError::DimensionMismatch { expected: dim, found: v.dim() });
        }
        if v.p() != p {
            return Err(FplaError::PrimeMismatch(p, v.p()));
        }
    }
    // c1 + S1·α = c2 + S2·β  <=>  [S1 | -S2]·(α; β) = c2 - c1
    let left = FpMat::from_columns(p, dim, s1)?;
    let right = FpMat::from_columns(p, dim, s2)?.neg();
    let system = left.hstack(&right)?;
    Ok(solve(&system, &c2.sub(c1))?.map(|coef| {
        let mut point = c1.clone();
        for (k, v) in s1.iter().enumerate() {
            point.axpy(coef.get(k), v);
        }
        point
    }))
}

/// An incrementally built subspace of F_p^dim held in reduced echelon form.
///
/// Each stored row has a leading 1 at its pivot column and zeros at every
/// other stored pivot column, so membership is a single reduction pass.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: PrimeField,
    dim: usize,
    rows: Vec<(usize, Vec<u8>)>,
    pivot_of: Vec<Option<usize>>,
}

impl Subspace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Subspace { field, dim, rows: Vec::new(), pivot_of: vec![None; dim] }
    }

    pub fn spanned_by<'a>(
        field: PrimeField,
        dim: usize,
        vectors: impl IntoIterator<Item = &'a FpVec>,
    ) -> Self {
        let mut s = Self::new(field, dim);
        for v in vectors {
            s.insert(v.coords());
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn reduce_in_place(&self, v: &mut [u8]) {
        let f = self.field;
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            if let Some(idx) = self.pivot_of[c] {
                let factor = v[c];
                let row = &self.rows[idx].1;
                for k in c..self.dim {
                    if row[k] != 0 {
                        v[k] = f.sub(v[k], f.mul(factor, row[k]));
                    }
                }
            }
        }
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep the echelon reduced: clear column pc from existing rows
        for (_, row) in self.rows.iter_mut() {
            let factor = row[pc];
            if factor != 0 {
                for k in 0..self.dim {
                    row[k] = f.sub(row[k], f.mul(factor, w[k]));
                }
            }
        }
        self.pivot_of[pc] = Some(self.rows.len());
        self.rows.push((pc, w));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    /// The canonical basis: rows of the reduced row echelon form, sorted by
    /// pivot column.
    pub fn basis(&self) -> Vec<FpVec> {
        let mut rows: Vec<&(usize, Vec<u8>)> = self.rows.iter().collect();
        rows.sort_by_key(|(c, _)| *c);
        rows.into_iter().map(|(_, r)| FpVec::from_raw(self.field.p(), r.clone())).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|(_, r)| other.contains(r))
    }

    /// Iterates every element of the subspace, in lexicographic order of the
    /// coefficient vector over the canonical basis.
    pub fn elements(&self) -> impl Iterator<Item = FpVec> + '_ {
        let basis = self.basis();
        let p = self.field.p();
        let k = basis.len();
        let count = (p as u64).pow(k as u32);
        (0..count).map(move |idx| {
            let coef = FpVec::from_index(p, k, idx);
            let mut v = FpVec::zeros(p, self.dim);
            for (c, b) in coef.coords().iter().zip(&basis) {
                if *c != 0 {
                    v.axpy(*c, b);
                }
            }
            v
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: u8, rows: usize, cols: usize, data: &[u8]) -> FpMat {
        FpMat::new(p, rows, cols, data.to_vec()).unwrap()
    }

    fn vecp(p: u8, c: &[u8]) -> FpVec {
        FpVec::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&FpMat::identity(2, 2)), 2);
        assert_eq!(rank(&mat(2, 2, 2, &[1, 1, 1, 1])), 1);
        assert_eq!(rank(&FpMat::zeros(3, 3, 3)), 0);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&FpMat::identity(2, 2), &vecp(2, &[1, 0])).unwrap();
        assert_eq!(x, Some(vecp(2, &[1, 0])));
        let x = solve(&mat(2, 1, 2, &[1, 1]), &vecp(2, &[1])).unwrap();
        assert_eq!(x, Some(vecp(2, &[1, 0])));
        let x = solve(&FpMat::zeros(2, 1, 1), &vecp(2, &[1])).unwrap();
        assert_eq!(x, None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = solve(&FpMat::identity(3, 2), &vecp(3, &[1, 0, 0])).unwrap_err();
        assert_eq!(err, FplaError::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&FpMat::identity(2, 2)).is_empty());
        assert_eq!(kernel_basis(&mat(2, 1, 2, &[1, 1])), vec![vecp(2, &[1, 1])]);
        assert_eq!(kernel_basis(&FpMat::zeros(3, 2, 3)).len(), 3);
    }

    #[test]
    fn affine_examples() {
        let r = affine_intersect(
            &vecp(2, &[0, 0]),
            &[vecp(2, &[1, 0])],
            &vecp(2, &[0, 1]),
            &[vecp(2, &[0, 1])],
        )
        .unwrap();
        assert_eq!(r, Some(vecp(2, &[0, 0])));
        let r = affine_intersect(&vecp(2, &[1, 0]), &[], &vecp(2, &[0, 0]), &[]).unwrap();
        assert_eq!(r, None);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(PrimeField::new(4).unwrap_err(), FplaError::UnsupportedPrime(4));
        assert!(FpVec::new(3, vec![3]).is_err());
        assert!(FpMat::new(2, 2, 2, vec![0, 1, 1]).is_err());
    }

    #[test]
    fn gf2_and_generic_paths_agree() {
        // the same 0/1 pattern, reduced over F_2 by both eliminators
        let a = mat(2, 3, 4, &[1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 1, 0]);
        let fast = rref_gf2(&a);
        let slow = rref_generic(&a);
        assert_eq!(fast.pivots, slow.pivots);
        assert_eq!(fast.matrix, slow.matrix);
    }

    #[test]
    fn wide_gf2_matrix_spans_words() {
        let cols = 130;
        let mut a = FpMat::zeros(2, 3, cols);
        a.set(0, 129, 1);
        a.set(1, 64, 1);
        a.set(1, 129, 1);
        a.set(2, 0, 1);
        let red = rref(&a);
        assert_eq!(red.pivots, vec![0, 64, 129]);
        assert_eq!(kernel_basis(&a).len(), cols - 3);
    }

    #[test]
    fn subspace_insert_and_basis() {
        let f = PrimeField::new(3).unwrap();
        let mut s = Subspace::new(f, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(!s.insert(&[2, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.basis(), vec![vecp(3, &[1, 0, 1]), vecp(3, &[0, 1, 1])]);
        assert_eq!(s.elements().count(), 9);
    }

    #[test]
    fn index_round_trip_is_lexicographic() {
        let v = FpVec::from_index(3, 3, 5);
        assert_eq!(v.coords(), &[0, 1, 2]);
        assert_eq!(v.index(), 5);
        let all: Vec<FpVec> = (0..27).map(|i| FpVec::from_index(3, 3, i)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
