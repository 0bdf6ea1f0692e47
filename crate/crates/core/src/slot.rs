//! The common slot property.
//!
//! `b` has the property when for all `v, u, v', u'` with `b(v,u) = b(v',u')`
//! some `u''` satisfies `b(v,u'') = b(v,u)` and `b(v',u'') = b(v',u')`.
//!
//! Two deciders are provided. [`has_common_slot_naive`] enumerates vectors
//! directly. [`has_common_slot`] works per pair `(v, v')`: with
//! `L_v = b(v, ·)`, the values `w` that need a common slot form
//! `I = Im L_v ∩ Im L_v'`, and the values that have one form
//! `D = L_v(ker(L_v - L_v'))`. The pair is fine iff `D = I`.

use std::collections::HashSet;

use thiserror::Error;

use crate::bilform::{AugBilinearMap, Violation, ViolationKind};
use crate::fpla::{self, FpMat, FpVec, Subspace};

/// Upper bound on `|V|` for the naive decider.
pub const NAIVE_MAX_ELEMENTS: u64 = 1 << 12;
/// Upper bound on the number of `(v, v')` pairs for the linear decider.
pub const PAIR_MAX: u64 = 1 << 16;
/// Upper bound on `|V|³` for exhaustive checking of quaternionic axiom (2).
pub const AXIOM2_MAX: u64 = 1 << 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlotError {
    #[error("search space too large: {0} elements exceeds the limit {1}")]
    TooLarge(u64, u64),
    #[error("quaternionic maps are defined for p = 2 only (got p = {0})")]
    NotBinary(u8),
}

/// A quadruple with `b(v,u) = b(v',u')` and no common slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotWitness {
    pub v: FpVec,
    pub u: FpVec,
    pub v2: FpVec,
    pub u2: FpVec,
}

impl SlotWitness {
    /// Checks the equality and searches every `u''` exhaustively.
    pub fn verify(&self, map: &AugBilinearMap) -> bool {
        let w = map.eval(&self.v, &self.u);
        if w != map.eval(&self.v2, &self.u2) {
            return false;
        }
        let (p, n) = (map.p(), map.n());
        !(0..(p as u64).pow(n as u32)).any(|idx| {
            let cand = FpVec::from_index(p, n, idx);
            map.eval(&self.v, &cand) == w && map.eval(&self.v2, &cand) == w
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotVerdict {
    Holds,
    Fails(SlotWitness),
}

impl SlotVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SlotVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&SlotWitness> {
        match self {
            SlotVerdict::Holds => None,
            SlotVerdict::Fails(w) => Some(w),
        }
    }
}

fn space_size(map: &AugBilinearMap) -> u64 {
    (map.p() as u64).saturating_pow(map.n() as u32)
}

/// Direct enumeration. Returns the lexicographically first violating
/// quadruple `(v, u, v', u')`.
pub fn has_common_slot_naive(map: &AugBilinearMap) -> Result<SlotVerdict, SlotError> {
    let size = space_size(map);
    if size > NAIVE_MAX_ELEMENTS {
        return Err(SlotError::TooLarge(size, NAIVE_MAX_ELEMENTS));
    }
    let (p, n) = (map.p(), map.n());
    let vecs: Vec<FpVec> = (0..size).map(|i| FpVec::from_index(p, n, i)).collect();
    // values[v][u] = b(v, u), encoded as an integer
    let values: Vec<Vec<u64>> =
        vecs.iter().map(|v| vecs.iter().map(|u| map.eval(v, u).index()).collect()).collect();
    let image_sets: Vec<HashSet<u64>> = values.iter().map(|row| row.iter().copied().collect()).collect();

    // For each (v, v'), the values admitting a common slot.
    let common = |a: usize, b: usize| -> HashSet<u64> {
        (0..vecs.len()).filter(|&c| values[a][c] == values[b][c]).map(|c| values[a][c]).collect()
    };
    for v in 0..vecs.len() {
        let per_v2: Vec<HashSet<u64>> = (0..vecs.len()).map(|v2| common(v, v2)).collect();
        for u in 0..vecs.len() {
            let w = values[v][u];
            for v2 in 0..vecs.len() {
                if image_sets[v2].contains(&w) && !per_v2[v2].contains(&w) {
                    let u2 = (0..vecs.len()).find(|&c| values[v2][c] == w).expect("w in image");
                    return Ok(SlotVerdict::Fails(SlotWitness {
                        v: vecs[v].clone(),
                        u: vecs[u].clone(),
                        v2: vecs[v2].clone(),
                        u2: vecs[u2].clone(),
                    }));
                }
            }
        }
    }
    Ok(SlotVerdict::Holds)
}

/// Subspace comparison per pair `(v, v')`, pairs scanned in lexicographic
/// order. The witness uses the lexicographically smallest `w ∈ I \ D`.
pub fn has_common_slot(map: &AugBilinearMap) -> Result<SlotVerdict, SlotError> {
    let size = space_size(map);
    let pairs = size.saturating_mul(size);
    if pairs > PAIR_MAX {
        return Err(SlotError::TooLarge(pairs, PAIR_MAX));
    }
    let (p, n) = (map.p(), map.n());
    let vecs: Vec<FpVec> = (0..size).map(|i| FpVec::from_index(p, n, i)).collect();
    let lefts: Vec<FpMat> = vecs.iter().map(|v| map.left_matrix(v)).collect();
    for a in 1..vecs.len() {
        for b in 1..vecs.len() {
            if let Some(w) = pair_gap(map, &lefts[a], &lefts[b]) {
                let solve = |l: &FpMat| fpla::solve(l, &w).expect("shapes agree").expect("w in image");
                return Ok(SlotVerdict::Fails(SlotWitness {
                    v: vecs[a].clone(),
                    u: solve(&lefts[a]),
                    v2: vecs[b].clone(),
                    u2: solve(&lefts[b]),
                }));
            }
        }
    }
    Ok(SlotVerdict::Holds)
}

/// The smallest `w ∈ I \ D` for the pair, if any.
fn pair_gap(map: &AugBilinearMap, lv: &FpMat, lw: &FpMat) -> Option<FpVec> {
    let field = map.field();
    let m = map.m();
    if m == 0 {
        return None;
    }
    // I = L_v(x) for (x, y) in ker [L_v | -L_v']
    let joint = lv.hstack(&lw.neg()).expect("same row count");
    let image_pairs = fpla::kernel_basis(&joint);
    let n = map.n();
    let inter: Vec<FpVec> = image_pairs
        .iter()
        .map(|xy| lv.mul_vec(&FpVec::from_raw(map.p(), xy.coords()[..n].to_vec())).expect("dims"))
        .collect();
    let inter = Subspace::spanned_by(field, m, &inter);
    let diff = lv.sub(lw).expect("same shape");
    let slots: Vec<FpVec> =
        fpla::kernel_basis(&diff).iter().map(|x| lv.mul_vec(x).expect("dims")).collect();
    let diag = Subspace::spanned_by(field, m, &slots);
    assert!(diag.is_subspace_of(&inter), "D ⊆ I");
    if diag.dim() == inter.dim() {
        return None;
    }
    inter.elements().filter(|w| !diag.contains(w.coords())).min()
}

/// Pass/fail of one quaternionic axiom, with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    /// Verified exhaustively or by the basis-level reduction.
    Pass,
    /// Holds as a consequence of bilinearity; not enumerated.
    Certified,
    Fail(String),
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        !matches!(self, AxiomStatus::Fail(_))
    }
}

/// Axioms (1)-(4) of a quaternionic map for `q = b`, with `G = V`, `-1 = ε`
/// and `Q` the image of `b` (so surjectivity holds by construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternionicReport {
    /// `q(a, -a) = 1`, i.e. `b(a, ε + a) = 0`.
    pub axiom1: AxiomStatus,
    /// `q(a, b) = q(a, c)` implies `q(a, bc) = 1`.
    pub axiom2: AxiomStatus,
    /// `q(a, b) = q(b, a)`.
    pub axiom3: AxiomStatus,
    /// Common slot property.
    pub axiom4: AxiomStatus,
}

impl QuaternionicReport {
    pub fn all_pass(&self) -> bool {
        [&self.axiom1, &self.axiom2, &self.axiom3, &self.axiom4].iter().all(|a| a.passed())
    }
}

pub fn is_quaternionic(map: &AugBilinearMap) -> Result<QuaternionicReport, SlotError> {
    if map.p() != 2 {
        return Err(SlotError::NotBinary(map.p()));
    }
    let violations = map.validate();
    let first_of = |kind: ViolationKind| violations.iter().find(|v| v.kind() == kind);

    let axiom1 = match first_of(ViolationKind::AxiomI) {
        Some(Violation::AxiomI { v, value }) => {
            AxiomStatus::Fail(format!("b({v}, ε+{v}) = {value}"))
        }
        _ => AxiomStatus::Pass,
    };
    let axiom3 = match first_of(ViolationKind::NotSkew) {
        Some(Violation::NotSkew { i, j }) => AxiomStatus::Fail(format!(
            "b(v{}, v{}) = {} but b(v{}, v{}) = {}",
            i + 1,
            j + 1,
            map.product(*i, *j),
            j + 1,
            i + 1,
            map.product(*j, *i)
        )),
        _ => AxiomStatus::Pass,
    };
    let size = space_size(map);
    let axiom2 = if size.saturating_pow(3) <= AXIOM2_MAX {
        check_axiom2(map)
    } else {
        AxiomStatus::Certified
    };
    let axiom4 = match has_common_slot(map)? {
        SlotVerdict::Holds => AxiomStatus::Pass,
        SlotVerdict::Fails(w) => AxiomStatus::Fail(format!(
            "v={} u={} v'={} u'={}",
            w.v, w.u, w.v2, w.u2
        )),
    };
    Ok(QuaternionicReport { axiom1, axiom2, axiom3, axiom4 })
}

fn check_axiom2(map: &AugBilinearMap) -> AxiomStatus {
    let (p, n) = (map.p(), map.n());
    let size = space_size(map);
    let vecs: Vec<FpVec> = (0..size).map(|i| FpVec::from_index(p, n, i)).collect();
    for a in &vecs {
        let row: Vec<FpVec> = vecs.iter().map(|x| map.eval(a, x)).collect();
        for (bi, b) in vecs.iter().enumerate() {
            for (ci, c) in vecs.iter().enumerate() {
                if row[bi] == row[ci] && !map.eval(a, &b.add(c)).is_zero() {
                    return AxiomStatus::Fail(format!("a={a} b={b} c={c}"));
                }
            }
        }
    }
    AxiomStatus::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{graph_bilinear, SimplicialGraph};

    fn gmap(g: &SimplicialGraph, p: u8) -> AugBilinearMap {
        graph_bilinear(g, p).unwrap()
    }

    #[test]
    fn edgeless_holds() {
        let m = gmap(&SimplicialGraph::empty(3).unwrap(), 2);
        assert!(has_common_slot_naive(&m).unwrap().holds());
        assert!(has_common_slot(&m).unwrap().holds());
    }

    #[test]
    fn path_and_cycle_fail() {
        for g in [SimplicialGraph::path(4), SimplicialGraph::cycle(4)] {
            let m = gmap(&g, 2);
            let naive = has_common_slot_naive(&m).unwrap();
            let fast = has_common_slot(&m).unwrap();
            assert!(naive.witness().unwrap().verify(&m));
            assert!(fast.witness().unwrap().verify(&m));
        }
    }

    #[test]
    fn triangle_holds() {
        let m = gmap(&SimplicialGraph::complete(3), 2);
        assert!(has_common_slot_naive(&m).unwrap().holds());
        assert!(has_common_slot(&m).unwrap().holds());
    }

    #[test]
    fn stated_quadruple_on_path_violates() {
        let m = gmap(&SimplicialGraph::path(4), 2);
        let w = SlotWitness {
            v: FpVec::new(2, vec![0, 1, 1, 0]).unwrap(),
            u: FpVec::new(2, vec![1, 1, 0, 0]).unwrap(),
            v2: FpVec::new(2, vec![1, 1, 1, 1]).unwrap(),
            u2: FpVec::new(2, vec![0, 1, 0, 0]).unwrap(),
        };
        assert!(w.verify(&m));
    }

    #[test]
    fn guards() {
        let big = AugBilinearMap::zero(2, 13, 0);
        assert!(matches!(has_common_slot_naive(&big), Err(SlotError::TooLarge(..))));
        assert!(matches!(has_common_slot(&AugBilinearMap::zero(2, 9, 0)), Err(SlotError::TooLarge(..))));
        assert_eq!(
            is_quaternionic(&AugBilinearMap::zero(3, 1, 0)).unwrap_err(),
            SlotError::NotBinary(3)
        );
    }

    #[test]
    fn quaternionic_report_on_path() {
        let m = gmap(&SimplicialGraph::path(4), 2);
        let r = is_quaternionic(&m).unwrap();
        assert_eq!(r.axiom1, AxiomStatus::Pass);
        assert_eq!(r.axiom2, AxiomStatus::Pass);
        assert_eq!(r.axiom3, AxiomStatus::Pass);
        assert!(!r.axiom4.passed());
    }

    #[test]
    fn quaternionic_flags_asymmetric_table() {
        let v = |c: &[u8]| FpVec::new(2, c.to_vec()).unwrap();
        let m = AugBilinearMap::new(2, 2, 1, &[v(&[0]), v(&[1]), v(&[0]), v(&[0])], v(&[0, 0])).unwrap();
        let r = is_quaternionic(&m).unwrap();
        assert!(!r.axiom3.passed());
    }
}
