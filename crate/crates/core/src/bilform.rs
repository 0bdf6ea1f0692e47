//! Augmented bilinear maps `(V, W, b, ε)` over F_p.
//!
//! A map is stored as its full Gram table: for every ordered pair of
//! V-basis vectors `(i, j)` the W-coordinates of `b(v_i, v_j)`. Bilinearity is
//! structural. The augmentation axioms
//!
//! * (i)  `b(v, ε + v) = 0` for every `v`,
//! * (ii) `2ε = 0`,
//!
//! are checked on the basis only. Over F_2, once the table is symmetric the
//! function `v ↦ b(v, v) + b(v, ε)` is additive, so it vanishes everywhere iff
//! it vanishes on the basis. Over odd p a skew table has zero diagonal, so (i)
//! reduces to `b(v_i, ε) = 0` on the basis, and (ii) forces `ε = 0`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::fpla::{self, FpMat, FpVec, FplaError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilformError {
    #[error("malformed bilinear map: {0}")]
    Malformed(String),
    #[error(transparent)]
    Linear(#[from] FplaError),
    #[error("free product requires ε = 0 in both factors; the ε-amalgamated product is not supported")]
    UnsupportedAmalgamation,
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NotSkew,
    EpsOrder,
    AxiomI,
    Malformed,
}

/// A failed axiom together with the data that exhibits the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `b(v_j, v_i) ≠ -b(v_i, v_j)` (0-based indices, `i <= j`).
    NotSkew { i: usize, j: usize },
    /// `2ε ≠ 0`, only possible for odd p.
    EpsOrder { eps: FpVec },
    /// `b(v, ε + v) = value ≠ 0`.
    AxiomI { v: FpVec, value: FpVec },
    Malformed { detail: String },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::NotSkew { .. } => ViolationKind::NotSkew,
            Violation::EpsOrder { .. } => ViolationKind::EpsOrder,
            Violation::AxiomI { .. } => ViolationKind::AxiomI,
            Violation::Malformed { .. } => ViolationKind::Malformed,
        }
    }

    /// Re-evaluates the witness against `map`.
    pub fn reproduces(&self, map: &AugBilinearMap) -> bool {
        match self {
            Violation::NotSkew { i, j } => {
                let a = map.product(*i, *j);
                let b = map.product(*j, *i);
                a.add(&b) != FpVec::zeros(map.p(), map.m())
            }
            Violation::EpsOrder { eps } => !eps.scale(2 % map.p()).is_zero(),
            Violation::AxiomI { v, value } => {
                let got = map.eval(v, &map.eps().add(v));
                !got.is_zero() && &got == value
            }
            Violation::Malformed { .. } => !map.labels_consistent(),
        }
    }
}

/// A finite-dimensional augmented bilinear map over F_p.
#[derive(Debug, Clone)]
pub struct AugBilinearMap {
    p: u8,
    n: usize,
    m: usize,
    // ((i * n) + j) * m + k  ->  k-th coordinate of b(v_i, v_j)
    gram: Vec<u8>,
    eps: Vec<u8>,
    vlabels: Option<Vec<String>>,
    wlabels: Option<Vec<String>>,
}

impl AugBilinearMap {
    /// Builds a map from its Gram table given row-major as `n * n` vectors of
    /// length `m`.
    pub fn new(p: u8, n: usize, m: usize, gram: &[FpVec], eps: FpVec) -> Result<Self, BilformError> {
        PrimeField::new(p as u64)?;
        if gram.len() != n * n {
            return Err(BilformError::Malformed(format!(
                "expected {} Gram entries, found {}",
                n * n,
                gram.len()
            )));
        }
        if eps.dim() != n {
            return Err(BilformError::Malformed(format!("ε has dimension {}, expected {n}", eps.dim())));
        }
        let mut flat = Vec::with_capacity(n * n * m);
        for (idx, w) in gram.iter().enumerate() {
            if w.dim() != m {
                return Err(BilformError::Malformed(format!(
                    "b(v{}, v{}) has dimension {}, expected {m}",
                    idx / n + 1,
                    idx % n + 1,
                    w.dim()
                )));
            }
            if w.p() != p {
                return Err(FplaError::PrimeMismatch(p, w.p()).into());
            }
            flat.extend_from_slice(w.coords());
        }
        if eps.p() != p {
            return Err(FplaError::PrimeMismatch(p, eps.p()).into());
        }
        Ok(AugBilinearMap { p, n, m, gram: flat, eps: eps.into_coords(), vlabels: None, wlabels: None })
    }

    /// The zero map `F_p^n × F_p^n → F_p^m` with `ε = 0`.
    pub fn zero(p: u8, n: usize, m: usize) -> Self {
        AugBilinearMap {
            p,
            n,
            m,
            gram: vec![0; n * n * m],
            eps: vec![0; n],
            vlabels: None,
            wlabels: None,
        }
    }

    pub fn with_labels(mut self, vlabels: Option<Vec<String>>, wlabels: Option<Vec<String>>) -> Self {
        self.vlabels = vlabels;
        self.wlabels = wlabels;
        self
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p as u64).expect("validated at construction")
    }

    /// Dimension of V.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of W.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vlabels(&self) -> Option<&[String]> {
        self.vlabels.as_deref()
    }

    pub fn wlabels(&self) -> Option<&[String]> {
        self.wlabels.as_deref()
    }

    pub fn eps(&self) -> FpVec {
        FpVec::from_raw(self.p, self.eps.clone())
    }

    #[inline]
    pub(crate) fn entry(&self, i: usize, j: usize) -> &[u8] {
        let start = (i * self.n + j) * self.m;
        &self.gram[start..start + self.m]
    }

    #[inline]
    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut [u8] {
        let start = (i * self.n + j) * self.m;
        &mut self.gram[start..start + self.m]
    }

    /// `b(v_i, v_j)` for basis vectors (0-based).
    pub fn product(&self, i: usize, j: usize) -> FpVec {
        FpVec::from_raw(self.p, self.entry(i, j).to_vec())
    }

    /// `b(v, u)` for arbitrary vectors in coordinates.
    pub fn eval(&self, v: &FpVec, u: &FpVec) -> FpVec {
        debug_assert_eq!(v.dim(), self.n);
        debug_assert_eq!(u.dim(), self.n);
        let p = self.p as u32;
        let mut acc = vec![0u32; self.m];
        for i in 0..self.n {
            let vi = v.get(i) as u32;
            if vi == 0 {
                continue;
            }
            for j in 0..self.n {
                let c = vi * u.get(j) as u32;
                if c == 0 {
                    continue;
                }
                for (a, &g) in acc.iter_mut().zip(self.entry(i, j)) {
                    *a += c * g as u32;
                }
            }
        }
        FpVec::from_raw(self.p, acc.into_iter().map(|a| (a % p) as u8).collect())
    }

    /// The matrix of `u ↦ b(v, u)`, of shape `m × n`.
    pub fn left_matrix(&self, v: &FpVec) -> FpMat {
        let p = self.p as u32;
        let mut mat = FpMat::zeros(self.p, self.m, self.n);
        for j in 0..self.n {
            let mut col = vec![0u32; self.m];
            for i in 0..self.n {
                let vi = v.get(i) as u32;
                if vi != 0 {
                    for (a, &g) in col.iter_mut().zip(self.entry(i, j)) {
                        *a += vi * g as u32;
                    }
                }
            }
            for (k, a) in col.into_iter().enumerate() {
                mat.set(k, j, (a % p) as u8);
            }
        }
        mat
    }

    /// The matrix of the induced map `V ⊗ V → W`, shape `m × n²`; column
    /// `i * n + j` is `b(v_i, v_j)`.
    pub fn tensor_matrix(&self) -> FpMat {
        let mut mat = FpMat::zeros(self.p, self.m, self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, &g) in self.entry(i, j).iter().enumerate() {
                    mat.set(k, i * self.n + j, g);
                }
            }
        }
        mat
    }

    fn labels_consistent(&self) -> bool {
        self.vlabels.as_ref().is_none_or(|l| l.len() == self.n)
            && self.wlabels.as_ref().is_none_or(|l| l.len() == self.m)
    }

    /// Checks both axioms; the result is empty iff the map is augmented.
    pub fn validate(&self) -> Vec<Violation> {
        let f = self.field();
        let mut out = Vec::new();
        if !self.labels_consistent() {
            out.push(Violation::Malformed {
                detail: format!(
                    "label counts ({:?}, {:?}) do not match dimensions ({}, {})",
                    self.vlabels.as_ref().map(Vec::len),
                    self.wlabels.as_ref().map(Vec::len),
                    self.n,
                    self.m
                ),
            });
        }
        for i in 0..self.n {
            for j in i..self.n {
                let skew = self
                    .entry(i, j)
                    .iter()
                    .zip(self.entry(j, i))
                    .all(|(&a, &b)| f.add(a, b) == 0);
                if !skew {
                    out.push(Violation::NotSkew { i, j });
                }
            }
        }
        if self.p != 2 && self.eps.iter().any(|&c| c != 0) {
            out.push(Violation::EpsOrder { eps: self.eps() });
        }
        let eps = self.eps();
        for i in 0..self.n {
            let v = FpVec::unit(self.p, self.n, i);
            let value = self.eval(&v, &eps.add(&v));
            if !value.is_zero() {
                out.push(Violation::AxiomI { v, value });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Whether the products span W.
    pub fn is_surjective(&self) -> bool {
        self.m == 0 || fpla::rank(&self.tensor_matrix()) == self.m
    }

    /// Reorders the V-basis: basis vector `i` of `self` becomes basis vector
    /// `sigma[i]` of the result.
    pub fn permute_v(&self, sigma: &[usize]) -> Result<AugBilinearMap, BilformError> {
        check_permutation(sigma, self.n)?;
        let mut out = AugBilinearMap::zero(self.p, self.n, self.m);
        for i in 0..self.n {
            out.eps[sigma[i]] = self.eps[i];
            for j in 0..self.n {
                out.entry_mut(sigma[i], sigma[j]).copy_from_slice(self.entry(i, j));
            }
        }
        if let Some(l) = &self.vlabels {
            let mut nl = l.clone();
            for i in 0..self.n {
                nl[sigma[i]] = l[i].clone();
            }
            out.vlabels = Some(nl);
        }
        out.wlabels = self.wlabels.clone();
        Ok(out)
    }

    /// Text serialization: header lines, then one `b` line per ordered pair
    /// in row-major order. Indices are 1-based.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p {}", self.p);
        let _ = writeln!(s, "dimV {}", self.n);
        let _ = writeln!(s, "dimW {}", self.m);
        s.push_str("eps");
        for c in &self.eps {
            let _ = write!(s, " {c}");
        }
        s.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                let _ = write!(s, "b {} {}", i + 1, j + 1);
                for c in self.entry(i, j) {
                    let _ = write!(s, " {c}");
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<AugBilinearMap, BilformError> {
        parse_map(text)
    }
}

fn check_permutation(sigma: &[usize], n: usize) -> Result<(), BilformError> {
    let seen: BTreeSet<usize> = sigma.iter().copied().collect();
    if sigma.len() != n || seen.len() != n || seen.iter().any(|&x| x >= n) {
        return Err(BilformError::Malformed(format!("{sigma:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

/// Signed permutation of the W-basis that orders coordinates by the first
/// basis pair `(i, j)` (row-major) where they are nonzero, scaled so that
/// entry is 1. Coordinates that vanish identically go last. On graph maps
/// this is the identity; on maps whose W-basis vectors are single edges up to
/// sign it recovers the edge order and orientation.
pub fn normalize_w(map: &AugBilinearMap) -> AugBilinearMap {
    let (n, m) = (map.n, map.m);
    let f = map.field();
    let lead = |k: usize| (0..n * n).find(|&idx| map.gram[idx * m + k] != 0);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&k| lead(k).unwrap_or(usize::MAX));
    let scale: Vec<u8> = order.iter().map(|&k| lead(k).map_or(1, |idx| f.inv(map.gram[idx * m + k]))).collect();
    let mut out = map.clone();
    for idx in 0..n * n {
        for (new, &old) in order.iter().enumerate() {
            out.gram[idx * m + new] = f.mul(scale[new], map.gram[idx * m + old]);
        }
    }
    out.wlabels = map.wlabels.as_ref().map(|l| order.iter().map(|&k| l[k].clone()).collect());
    out
}

/// Exact equality of `(p, n, m, gram, ε)`; labels are ignored.
pub fn equal(a: &AugBilinearMap, b: &AugBilinearMap) -> bool {
    a.p == b.p && a.n == b.n && a.m == b.m && a.gram == b.gram && a.eps == b.eps
}

/// Equality after moving V-basis vector `i` of `a` to position `sigma[i]`,
/// allowing the W-basis to be relabeled by a signed (monomial) permutation.
///
/// For graph maps this is exactly the relabeling of edges induced by a vertex
/// permutation: an edge `{k, l}` may change orientation, which flips the sign
/// of its coordinate.
pub fn permuted_equal(a: &AugBilinearMap, b: &AugBilinearMap, sigma: &[usize]) -> bool {
    if a.p != b.p || a.n != b.n || a.m != b.m {
        return false;
    }
    let Ok(moved) = a.permute_v(sigma) else {
        return false;
    };
    if moved.eps != b.eps {
        return false;
    }
    let f = a.field();
    let n2 = a.n * a.n;
    let signature = |map: &AugBilinearMap, k: usize| -> Vec<u8> {
        let mut sig: Vec<u8> = (0..n2).map(|idx| map.gram[idx * map.m + k]).collect();
        if let Some(&lead) = sig.iter().find(|&&x| x != 0) {
            let inv = f.inv(lead);
            for x in sig.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        sig
    };
    let mut left: Vec<Vec<u8>> = (0..a.m).map(|k| signature(&moved, k)).collect();
    let mut right: Vec<Vec<u8>> = (0..b.m).map(|k| signature(b, k)).collect();
    left.sort();
    right.sort();
    left == right
}

/// Block sum of two maps with zero cross products: the cohomological model of
/// a free product. Both inputs must have `ε = 0`.
pub fn free_product(a: &AugBilinearMap, b: &AugBilinearMap) -> Result<AugBilinearMap, BilformError> {
    if a.p != b.p {
        return Err(FplaError::PrimeMismatch(a.p, b.p).into());
    }
    if a.eps.iter().chain(&b.eps).any(|&c| c != 0) {
        return Err(BilformError::UnsupportedAmalgamation);
    }
    let (n, m) = (a.n + b.n, a.m + b.m);
    let mut out = AugBilinearMap::zero(a.p, n, m);
    for i in 0..a.n {
        for j in 0..a.n {
            out.entry_mut(i, j)[..a.m].copy_from_slice(a.entry(i, j));
        }
    }
    for i in 0..b.n {
        for j in 0..b.n {
            out.entry_mut(a.n + i, a.n + j)[a.m..].copy_from_slice(b.entry(i, j));
        }
    }
    out.vlabels = concat_labels(a.vlabels.as_deref(), b.vlabels.as_deref(), a.n, b.n, "v");
    out.wlabels = concat_labels(a.wlabels.as_deref(), b.wlabels.as_deref(), a.m, b.m, "w");
    Ok(out)
}

fn concat_labels(
    a: Option<&[String]>,
    b: Option<&[String]>,
    na: usize,
    nb: usize,
    prefix: &str,
) -> Option<Vec<String>> {
    if a.is_none() && b.is_none() {
        return None;
    }
    let fill = |l: Option<&[String]>, len: usize, offset: usize| -> Vec<String> {
        match l {
            Some(l) => l.to_vec(),
            None => (0..len).map(|i| format!("{prefix}{}", offset + i + 1)).collect(),
        }
    };
    let mut out = fill(a, na, 0);
    out.extend(fill(b, nb, na));
    Some(out)
}

/// A pair of linear maps `(f1: V → V', f2: W → W')` compatible with the
/// products and the augmentations.
#[derive(Debug, Clone)]
pub struct Morphism {
    f1: FpMat,
    f2: FpMat,
    source: AugBilinearMap,
    target: AugBilinearMap,
}

impl Morphism {
    /// `f1` has shape `n' × n`, `f2` has shape `m' × m`.
    pub fn new(
        f1: FpMat,
        f2: FpMat,
        source: AugBilinearMap,
        target: AugBilinearMap,
    ) -> Result<Self, BilformError> {
        if source.p != target.p || f1.p() != source.p || f2.p() != source.p {
            return Err(BilformError::NotAMorphism("prime mismatch".into()));
        }
        if f1.rows() != target.n || f1.cols() != source.n {
            return Err(BilformError::NotAMorphism(format!(
                "f1 is {}×{}, expected {}×{}",
                f1.rows(),
                f1.cols(),
                target.n,
                source.n
            )));
        }
        if f2.rows() != target.m || f2.cols() != source.m {
            return Err(BilformError::NotAMorphism(format!(
                "f2 is {}×{}, expected {}×{}",
                f2.rows(),
                f2.cols(),
                target.m,
                source.m
            )));
        }
        if f1.mul_vec(&source.eps())? != target.eps() {
            return Err(BilformError::NotAMorphism("f1(ε) ≠ ε'".into()));
        }
        let images: Vec<FpVec> = (0..source.n).map(|i| f1.column(i)).collect();
        for i in 0..source.n {
            for j in 0..source.n {
                let lhs = f2.mul_vec(&source.product(i, j))?;
                let rhs = target.eval(&images[i], &images[j]);
                if lhs != rhs {
                    return Err(BilformError::NotAMorphism(format!(
                        "f2(b(v{}, v{})) ≠ b'(f1 v{}, f1 v{})",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Morphism { f1, f2, source, target })
    }

    pub fn identity(map: &AugBilinearMap) -> Morphism {
        Morphism {
            f1: FpMat::identity(map.p, map.n),
            f2: FpMat::identity(map.p, map.m),
            source: map.clone(),
            target: map.clone(),
        }
    }

    pub fn f1(&self) -> &FpMat {
        &self.f1
    }

    pub fn f2(&self) -> &FpMat {
        &self.f2
    }

    pub fn source(&self) -> &AugBilinearMap {
        &self.source
    }

    pub fn target(&self) -> &AugBilinearMap {
        &self.target
    }

    /// Both components injective.
    pub fn is_monomorphism(&self) -> bool {
        fpla::rank(&self.f1) == self.source.n && fpla::rank(&self.f2) == self.source.m
    }

    /// Both components bijective.
    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism() && self.source.n == self.target.n && self.source.m == self.target.m
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism, BilformError> {
        let f1 = self.f1.mul(&first.f1)?;
        let f2 = self.f2.mul(&first.f2)?;
        Morphism::new(f1, f2, first.source.clone(), self.target.clone())
    }
}

fn parse_map(text: &str) -> Result<AugBilinearMap, BilformError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let perr = |line: usize, msg: String| BilformError::Parse { line, msg };
    let mut header = |key: &str| -> Result<(usize, Vec<u64>), BilformError> {
        let (ln, l) = lines.next().ok_or_else(|| perr(0, format!("missing `{key}` line")))?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some(key) {
            return Err(perr(ln, format!("expected `{key}`")));
        }
        let vals = toks
            .map(|t| t.parse::<u64>().map_err(|_| perr(ln, format!("bad integer `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((ln, vals))
    };

    let (ln, pv) = header("p")?;
    let [p] = pv[..] else { return Err(perr(ln, "expected one value after `p`".into())) };
    let field = PrimeField::new(p).map_err(|e| perr(ln, e.to_string()))?;
    let p = field.p();
    let (ln, nv) = header("dimV")?;
    let [n] = nv[..] else { return Err(perr(ln, "expected one value after `dimV`".into())) };
    let (ln, mv) = header("dimW")?;
    let [m] = mv[..] else { return Err(perr(ln, "expected one value after `dimW`".into())) };
    let (n, m) = (n as usize, m as usize);
    let residue = |ln: usize, x: u64| -> Result<u8, BilformError> {
        if x < p as u64 {
            Ok(x as u8)
        } else {
            Err(perr(ln, format!("value {x} not in [0, {p})")))
        }
    };
    let (ln, ev) = header("eps")?;
    if ev.len() != n {
        return Err(perr(ln, format!("eps has {} entries, expected {n}", ev.len())));
    }
    let eps = ev.iter().map(|&x| residue(ln, x)).collect::<Result<Vec<_>, _>>()?;

    let mut table: Vec<Option<FpVec>> = vec![None; n * n];
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] != "b" {
            return Err(perr(ln, format!("unexpected line `{l}`")));
        }
        if toks.len() != 3 + m {
            return Err(perr(ln, format!("expected {} fields, found {}", 3 + m, toks.len())));
        }
        let nums = toks[1..]
            .iter()
            .map(|t| t.parse::<u64>().map_err(|_| perr(ln, format!("bad integer `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        let (i, j) = (nums[0] as usize, nums[1] as usize);
        if i == 0 || j == 0 || i > n || j > n {
            return Err(perr(ln, format!("index pair ({i}, {j}) out of range 1..={n}")));
        }
        let slot = &mut table[(i - 1) * n + (j - 1)];
        if slot.is_some() {
            return Err(perr(ln, format!("duplicate entry b {i} {j}")));
        }
        let w = nums[2..].iter().map(|&x| residue(ln, x)).collect::<Result<Vec<_>, _>>()?;
        *slot = Some(FpVec::from_raw(p, w));
    }
    let gram = table
        .into_iter()
        .enumerate()
        .map(|(idx, e)| {
            e.ok_or_else(|| perr(0, format!("missing entry b {} {}", idx / n + 1, idx % n + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    AugBilinearMap::new(p, n, m, &gram, FpVec::from_raw(p, eps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u8, c: &[u8]) -> FpVec {
        FpVec::new(p, c.to_vec()).unwrap()
    }

    /// b(v1, v2) = e1 = -b(v2, v1), ε = 0: the map of a single edge.
    fn edge_map(p: u8) -> AugBilinearMap {
        let minus = p - 1;
        AugBilinearMap::new(p, 2, 1, &[v(p, &[0]), v(p, &[1]), v(p, &[minus]), v(p, &[0])], v(p, &[0, 0]))
            .unwrap()
    }

    #[test]
    fn rank_one_real_closed_shape_validates() {
        // p = 2, b(v1, v1) = 1, ε = v1
        let m = AugBilinearMap::new(2, 1, 1, &[v(2, &[1])], v(2, &[1])).unwrap();
        assert!(m.validate().is_empty());
        // exhaustive: both vectors satisfy b(x, ε + x) = 0
        for idx in 0..2 {
            let x = FpVec::from_index(2, 1, idx);
            assert!(m.eval(&x, &m.eps().add(&x)).is_zero());
        }
    }

    #[test]
    fn odd_prime_nonzero_eps_is_reported() {
        let m = AugBilinearMap::new(3, 1, 0, &[v(3, &[])], v(3, &[1])).unwrap();
        let kinds: Vec<_> = m.validate().iter().map(Violation::kind).collect();
        assert_eq!(kinds, vec![ViolationKind::EpsOrder]);
    }

    #[test]
    fn witnesses_reproduce() {
        let m = AugBilinearMap::new(3, 2, 1, &[v(3, &[1]), v(3, &[1]), v(3, &[1]), v(3, &[0])], v(3, &[0, 0]))
            .unwrap();
        let violations = m.validate();
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|x| x.reproduces(&m)));
        assert!(violations.iter().any(|x| x.kind() == ViolationKind::NotSkew));
        assert!(violations.iter().any(|x| x.kind() == ViolationKind::AxiomI));
    }

    #[test]
    fn mismatched_labels_are_malformed() {
        let m = edge_map(2).with_labels(Some(vec!["a".into()]), None);
        let viol = m.validate();
        assert_eq!(viol.len(), 1);
        assert_eq!(viol[0].kind(), ViolationKind::Malformed);
        assert!(viol[0].reproduces(&m));
    }

    #[test]
    fn construction_rejects_bad_dimensions() {
        assert!(matches!(
            AugBilinearMap::new(2, 2, 1, &[v(2, &[0])], v(2, &[0, 0])),
            Err(BilformError::Malformed(_))
        ));
    }

    #[test]
    fn surjectivity() {
        assert!(edge_map(2).is_surjective());
        assert!(!AugBilinearMap::zero(2, 2, 1).is_surjective());
        assert!(AugBilinearMap::zero(3, 2, 0).is_surjective());
    }

    #[test]
    fn monomorphism_checks() {
        let m = edge_map(3);
        assert!(Morphism::identity(&m).is_monomorphism());
        let zero_f2 = Morphism::new(FpMat::zeros(3, 2, 2), FpMat::zeros(3, 1, 1), m.clone(), m.clone())
            .unwrap();
        assert!(!zero_f2.is_monomorphism());
        // f2 = 0 but f1 = id does not commute with the products
        let bad = Morphism::new(FpMat::identity(3, 2), FpMat::zeros(3, 1, 1), m.clone(), m);
        assert!(matches!(bad, Err(BilformError::NotAMorphism(_))));
    }

    #[test]
    fn free_products() {
        let k2 = edge_map(2);
        let sum = free_product(&k2, &k2).unwrap();
        assert_eq!((sum.n(), sum.m()), (4, 2));
        assert!(sum.validate().is_empty());
        assert!(sum.is_surjective());
        let leaf = AugBilinearMap::zero(2, 1, 0);
        let two = free_product(&leaf, &leaf).unwrap();
        assert!(equal(&two, &AugBilinearMap::zero(2, 2, 0)));
        let real = AugBilinearMap::new(2, 1, 1, &[v(2, &[1])], v(2, &[1])).unwrap();
        assert_eq!(free_product(&real, &leaf).unwrap_err(), BilformError::UnsupportedAmalgamation);
    }

    #[test]
    fn equality_and_permutations() {
        let k2 = edge_map(3);
        assert!(equal(&k2, &k2));
        assert!(!equal(&k2, &AugBilinearMap::zero(3, 2, 1)));
        // swapping the two vertices flips the edge orientation, which is a
        // signed relabeling of W
        assert!(permuted_equal(&k2, &k2, &[1, 0]));
        assert!(!equal(&k2.permute_v(&[1, 0]).unwrap(), &k2));
        assert!(!permuted_equal(&k2, &AugBilinearMap::zero(3, 2, 1), &[0, 1]));
        assert!(!permuted_equal(&k2, &k2, &[0, 0]));
    }

    #[test]
    fn text_round_trip() {
        let m = AugBilinearMap::new(2, 1, 1, &[v(2, &[1])], v(2, &[1])).unwrap();
        let text = m.to_text();
        assert_eq!(text, "p 2\ndimV 1\ndimW 1\neps 1\nb 1 1 1\n");
        assert!(equal(&AugBilinearMap::from_text(&text).unwrap(), &m));
        let e = edge_map(3);
        assert!(equal(&AugBilinearMap::from_text(&e.to_text()).unwrap(), &e));
    }

    #[test]
    fn parser_rejects_duplicates_and_gaps() {
        let dup = "p 2\ndimV 1\ndimW 0\neps 0\nb 1 1\nb 1 1\n";
        assert!(matches!(AugBilinearMap::from_text(dup), Err(BilformError::Parse { line: 6, .. })));
        let missing = "p 2\ndimV 2\ndimW 0\neps 0 0\nb 1 1\nb 1 2\nb 2 1\n";
        let err = AugBilinearMap::from_text(missing).unwrap_err();
        assert!(err.to_string().contains("missing entry b 2 2"), "{err}");
        let range = "p 3\ndimV 1\ndimW 1\neps 0\nb 1 1 3\n";
        assert!(AugBilinearMap::from_text(range).is_err());
        let prime = "p 4\ndimV 0\ndimW 0\neps\n";
        assert!(AugBilinearMap::from_text(prime).is_err());
    }

    #[test]
    fn composition_of_morphisms() {
        let m = edge_map(2);
        let id = Morphism::identity(&m);
        let twice = id.after(&id).unwrap();
        assert!(twice.is_isomorphism());
    }
}
