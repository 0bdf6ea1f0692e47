//! Finite truncations of the purely quadratic hull `T(V) / I`, where `I` is
//! the two-sided ideal generated by the pure tensors `v ⊗ v'` with
//! `b(v, v') = 0`.
//!
//! Tensors in `V^⊗k` use coordinates indexed by words `(i_1, ..., i_k)` in
//! mixed radix with the first factor most significant.

use thiserror::Error;

use crate::bilform::{AugBilinearMap, BilformError, Morphism};
use crate::fpla::{self, FpMat, FpVec, Subspace};

/// Upper bound on the number of `(v, v')` pairs streamed by
/// [`pure_kernel_span`].
pub const PAIR_MAX: u64 = 1 << 16;
/// Upper bound on `n^dmax`.
pub const TENSOR_MAX: u64 = 1 << 14;
/// Hard cap on the truncation degree.
pub const DMAX_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("{what} = {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u64, limit: u64 },
    #[error("degree {0} exceeds the cap {DMAX_CAP}")]
    DegreeCap(usize),
    #[error(transparent)]
    Bilform(#[from] BilformError),
}

/// Basis of `span{ v ⊗ v' : b(v, v') = 0 }` inside `V ⊗ V`, in reduced row
/// echelon form.
///
/// All `p^{2n}` pairs are streamed in lexicographic order. The span always
/// lies in the kernel of `V ⊗ V → W`, so streaming stops once it fills that
/// kernel.
pub fn pure_kernel_span(map: &AugBilinearMap) -> Result<Vec<FpVec>, HullError> {
    Ok(pure_span(map)?.basis())
}

fn pure_span(map: &AugBilinearMap) -> Result<Subspace, HullError> {
    let (p, n) = (map.p(), map.n());
    let size = (p as u64).saturating_pow(n as u32);
    let pairs = size.saturating_mul(size);
    if pairs > PAIR_MAX {
        return Err(HullError::TooLarge { what: "p^(2n)", size: pairs, limit: PAIR_MAX });
    }
    let field = map.field();
    let full_kernel = n * n - fpla::rank(&map.tensor_matrix());
    let mut span = Subspace::new(field, n * n);
    let vecs: Vec<FpVec> = (0..size).map(|i| FpVec::from_index(p, n, i)).collect();
    let mut tensor = vec![0u8; n * n];
    'outer: for v in vecs.iter().skip(1) {
        for u in vecs.iter().skip(1) {
            if span.dim() == full_kernel {
                break 'outer;
            }
            if !map.eval(v, u).is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    tensor[i * n + j] = field.mul(v.get(i), u.get(j));
                }
            }
            span.insert(&tensor);
        }
    }
    Ok(span)
}

/// Dimensions of `A_0, ..., A_dmax` together with bases of the ideal
/// components.
#[derive(Debug, Clone)]
pub struct HullTruncation {
    pub p: u8,
    pub dmax: usize,
    pub dims: Vec<usize>,
    /// `ideal_bases[k]` spans `I ∩ V^⊗k`; empty for `k < 2`.
    pub ideal_bases: Vec<Vec<FpVec>>,
}

impl HullTruncation {
    /// The report line `hull d0 d1 ...`.
    pub fn report_line(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        format!("hull {}", dims.join(" "))
    }
}

/// Degree-k ideal component `Σ_j V^⊗j ⊗ I_2 ⊗ V^⊗(k-2-j)`, dimensions by rank.
pub fn hull_dims(map: &AugBilinearMap, dmax: usize) -> Result<HullTruncation, HullError> {
    if dmax > DMAX_CAP {
        return Err(HullError::DegreeCap(dmax));
    }
    let n = map.n();
    let top = (n as u64).saturating_pow(dmax as u32);
    if top > TENSOR_MAX {
        return Err(HullError::TooLarge { what: "n^dmax", size: top, limit: TENSOR_MAX });
    }
    let field = map.field();
    let i2 = pure_kernel_span(map)?;
    let mut dims = Vec::with_capacity(dmax + 1);
    let mut ideal_bases = Vec::with_capacity(dmax + 1);
    for k in 0..=dmax {
        let total = n.pow(k as u32);
        if k < 2 {
            dims.push(total);
            ideal_bases.push(Vec::new());
            continue;
        }
        let mut ideal = Subspace::new(field, total);
        for left in 0..=k - 2 {
            let right = k - 2 - left;
            let (nl, nr) = (n.pow(left as u32), n.pow(right as u32));
            for r in &i2 {
                for a in 0..nl {
                    for c in 0..nr {
                        let mut t = vec![0u8; total];
                        for (ridx, &x) in r.coords().iter().enumerate() {
                            if x != 0 {
                                t[(a * n * n + ridx) * nr + c] = x;
                            }
                        }
                        ideal.insert(&t);
                    }
                }
            }
        }
        dims.push(total - ideal.dim());
        ideal_bases.push(ideal.basis());
    }
    Ok(HullTruncation { p: map.p(), dmax, dims, ideal_bases })
}

/// `(V, V⊗V / I_2, induced product, ε)`, plus the comparison with the input.
#[derive(Debug, Clone)]
pub struct HullBilinear {
    pub map: AugBilinearMap,
    /// Isomorphism onto the input, present when the pure span equals the
    /// kernel of `V ⊗ V → W` and the input is surjective.
    pub iso: Option<Morphism>,
    /// `dim ker(V⊗V → W) - dim I_2`.
    pub gap: usize,
}

pub fn functor_f_of_g(map: &AugBilinearMap) -> Result<HullBilinear, HullError> {
    let n = map.n();
    let p = map.p();
    let span = pure_span(map)?;
    let beta = map.tensor_matrix();
    let kernel_dim = n * n - fpla::rank(&beta);
    let gap = kernel_dim - span.dim();

    // Echelon form with pivots at trailing positions: the quotient basis is
    // then the classes of the earliest tensors v_i ⊗ v_j, which for graph
    // maps are exactly the edge tensors v_k ⊗ v_l with k < l.
    let nn = n * n;
    let reversed = |v: &[u8]| -> Vec<u8> { v.iter().rev().copied().collect() };
    let mut trailing = Subspace::new(map.field(), nn);
    for b in span.basis() {
        trailing.insert(&reversed(b.coords()));
    }
    let pivots: Vec<usize> = trailing.pivots().into_iter().map(|c| nn - 1 - c).collect();
    let quotient: Vec<usize> = (0..nn).filter(|c| !pivots.contains(c)).collect();
    let q = quotient.len();
    let mut gram = Vec::with_capacity(nn);
    for idx in 0..nn {
        let mut unit = vec![0u8; nn];
        unit[idx] = 1;
        let reduced = reversed(&trailing.reduce(&reversed(&unit)));
        gram.push(FpVec::from_raw(p, quotient.iter().map(|&c| reduced[c]).collect()));
    }
    let vlabels = map.vlabels().map(<[String]>::to_vec);
    let wlabels = quotient.iter().map(|&c| format!("[v{}⊗v{}]", c / n + 1, c % n + 1)).collect();
    let hull = AugBilinearMap::new(p, n, q, &gram, map.eps())?.with_labels(vlabels, Some(wlabels));

    let iso = if gap == 0 && map.is_surjective() {
        let mut f2 = FpMat::zeros(p, map.m(), q);
        for (col, &c) in quotient.iter().enumerate() {
            for row in 0..map.m() {
                f2.set(row, col, beta.get(row, c));
            }
        }
        Some(Morphism::new(FpMat::identity(p, n), f2, hull.clone(), map.clone())?)
    } else {
        None
    };
    Ok(HullBilinear { map: hull, iso, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilform::equal;
    use crate::graphs::{graph_bilinear, SimplicialGraph};

    #[test]
    fn pure_span_examples() {
        let edgeless = graph_bilinear(&SimplicialGraph::empty(2).unwrap(), 2).unwrap();
        assert_eq!(pure_kernel_span(&edgeless).unwrap().len(), 4);
        let k2 = graph_bilinear(&SimplicialGraph::complete(2), 2).unwrap();
        let span = pure_kernel_span(&k2).unwrap();
        assert_eq!(span.len(), 3);
        let s = Subspace::spanned_by(k2.field(), 4, &span);
        assert!(s.contains(&[1, 0, 0, 0]));
        assert!(s.contains(&[0, 0, 0, 1]));
        assert!(s.contains(&[0, 1, 1, 0]));
        assert!(!s.contains(&[0, 1, 0, 0]));
    }

    #[test]
    fn dims_examples() {
        let k2 = graph_bilinear(&SimplicialGraph::complete(2), 2).unwrap();
        assert_eq!(hull_dims(&k2, 3).unwrap().dims, vec![1, 2, 1, 0]);
        let k3 = graph_bilinear(&SimplicialGraph::complete(3), 2).unwrap();
        assert_eq!(hull_dims(&k3, 3).unwrap().report_line(), "hull 1 3 3 1");
        for p in [2, 3, 5, 7] {
            let single = AugBilinearMap::zero(p, 1, 0);
            assert_eq!(hull_dims(&single, 3).unwrap().dims, vec![1, 1, 0, 0]);
        }
    }

    #[test]
    fn guards() {
        assert_eq!(hull_dims(&AugBilinearMap::zero(2, 2, 0), 5).unwrap_err(), HullError::DegreeCap(5));
        assert!(matches!(
            hull_dims(&AugBilinearMap::zero(2, 9, 0), 2),
            Err(HullError::TooLarge { .. })
        ));
    }

    #[test]
    fn f_of_g_examples() {
        let zero = AugBilinearMap::zero(2, 1, 0);
        let out = functor_f_of_g(&zero).unwrap();
        assert_eq!(out.map.m(), 0);
        let k2 = graph_bilinear(&SimplicialGraph::complete(2), 3).unwrap();
        let out = functor_f_of_g(&k2).unwrap();
        assert_eq!(out.map.m(), 1);
        assert_eq!(out.gap, 0);
        // quotient basis is the class of v1⊗v2, so the table matches b_{K2}
        assert!(equal(&out.map, &k2));
        assert!(out.iso.unwrap().is_isomorphism());
    }

    #[test]
    fn augmented_map_with_nonzero_eps() {
        // p = 2: b(v1,v1) = b(v2,v2) = 1, off-diagonal 0, ε = v1 + v2. The zero
        // pure tensors v1⊗v2, v2⊗v1, (v1+v2)⊗(v1+v2) fill the 3-dim kernel.
        let v = |c: &[u8]| FpVec::new(2, c.to_vec()).unwrap();
        let m = AugBilinearMap::new(2, 2, 1, &[v(&[1]), v(&[0]), v(&[0]), v(&[1])], v(&[1, 1])).unwrap();
        assert!(m.validate().is_empty());
        let out = functor_f_of_g(&m).unwrap();
        assert_eq!(out.gap, 0);
        assert_eq!(pure_kernel_span(&m).unwrap().len(), 3);
        assert!(out.iso.unwrap().is_isomorphism());
        assert!(out.map.validate().is_empty());
    }
}
