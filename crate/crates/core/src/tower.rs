//! Finite models of field cohomology: base fields, power-series extensions,
//! the ε-extension of a skew map, and evaluation of construction trees.

use std::fmt;

use thiserror::Error;

use crate::bilform::{free_product, AugBilinearMap, BilformError, Morphism, Violation};
use crate::fpla::{FpMat, FpVec, FplaError, PrimeField};
use crate::graphs::ConstructionTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("base field {kind} is not available at p = {p}")]
    UnsupportedBase { kind: BaseKind, p: u8 },
    #[error("input is not skew-symmetric: b(v{}, v{}) ≠ -b(v{}, v{})", .i + 1, .j + 1, .j + 1, .i + 1)]
    NotSkew { i: usize, j: usize },
    #[error("not an augmented bilinear map: {0:?}")]
    Invalid(Violation),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error(transparent)]
    Bilform(#[from] BilformError),
    #[error(transparent)]
    Linear(#[from] FplaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// An algebraically closed field: no cohomology.
    Complex,
    /// A field where -1 is a sum of two squares but not a square.
    Z2Ext,
    /// The 2-adic numbers.
    Q2,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseKind::Complex => "C",
            BaseKind::Z2Ext => "Z2Ext",
            BaseKind::Q2 => "Q2",
        })
    }
}

/// `(H¹, H², ∪, (-1))` of a constructed field, with symbol labels on both
/// bases and a log of how it was built.
#[derive(Debug, Clone)]
pub struct FieldData {
    map: AugBilinearMap,
    provenance: Vec<String>,
}

impl FieldData {
    fn new(map: AugBilinearMap, provenance: Vec<String>) -> Result<Self, TowerError> {
        for labels in [map.vlabels(), map.wlabels()].into_iter().flatten() {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(TowerError::DuplicateLabel(l.clone()));
                }
            }
        }
        debug_assert!(map.is_valid(), "field data must satisfy the augmentation axioms");
        Ok(FieldData { map, provenance })
    }

    /// Wraps an arbitrary valid map, e.g. as the base of an extension.
    pub fn from_map(map: AugBilinearMap, origin: &str) -> Result<Self, TowerError> {
        if let Some(v) = map.validate().into_iter().next() {
            return Err(TowerError::Invalid(v));
        }
        FieldData::new(map, vec![origin.to_string()])
    }

    pub fn map(&self) -> &AugBilinearMap {
        &self.map
    }

    pub fn into_map(self) -> AugBilinearMap {
        self.map
    }

    pub fn vlabels(&self) -> &[String] {
        self.map.vlabels().unwrap_or(&[])
    }

    pub fn wlabels(&self) -> &[String] {
        self.map.wlabels().unwrap_or(&[])
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }
}

fn strings<const N: usize>(items: [&str; N]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn base_field(kind: BaseKind, p: u8) -> Result<FieldData, TowerError> {
    PrimeField::new(p as u64)?;
    let v = |c: &[u8]| FpVec::new(p, c.to_vec());
    let map = match (kind, p) {
        (BaseKind::Complex, _) => AugBilinearMap::zero(p, 0, 0).with_labels(Some(vec![]), Some(vec![])),
        (BaseKind::Z2Ext, 2) => AugBilinearMap::new(2, 1, 0, &[v(&[])?], v(&[1])?)?
            .with_labels(Some(strings(["(-1)"])), Some(vec![])),
        (BaseKind::Q2, 2) => {
            let gram = [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
                .iter()
                .flatten()
                .map(|&x| v(&[x]))
                .collect::<Result<Vec<_>, _>>()?;
            AugBilinearMap::new(2, 3, 1, &gram, v(&[1, 0, 0])?)?
                .with_labels(Some(strings(["(-1)", "(2)", "(5)"])), Some(strings(["(-1,-1)"])))
        }
        _ => return Err(TowerError::UnsupportedBase { kind, p }),
    };
    FieldData::new(map, vec![format!("base {kind} p={p}")])
}

/// Power-series extension `K((t_1))...((t_m))` with fresh symbols `t<k>`.
pub fn extend_power_series(k: &FieldData, m: usize) -> Result<(FieldData, Morphism), TowerError> {
    let taken = k.vlabels();
    let mut names = Vec::with_capacity(m);
    let mut next = 1;
    while names.len() < m {
        let cand = format!("t{next}");
        if !taken.contains(&cand) {
            names.push(cand);
        }
        next += 1;
    }
    extend_power_series_named(k, &names)
}

/// Adjoins one uniformizer per name. With `V = V_K ⊕ F_p^m`,
/// `W = W_K ⊕ (V_K ⊗ F_p^m) ⊕ Λ²F_p^m` and
///
/// `b((v,a),(v',a')) = (b_K(v,v'), v⊗a' - v'⊗a + ε_K⊗(a⊙a'), a∧a')`
///
/// where `(a⊙a')_l = a_l a'_l`. The `V_K ⊗ F_p^m` block is indexed old-basis
/// major and `Λ²` by pairs `l < l'` in lexicographic order. Also returns the
/// restriction `K → E`, the inclusion on both V and W.
pub fn extend_power_series_named(k: &FieldData, names: &[String]) -> Result<(FieldData, Morphism), TowerError> {
    let base = &k.map;
    let (p, n0, m0) = (base.p(), base.n(), base.m());
    let field = base.field();
    let m = names.len();
    let n = n0 + m;
    let lam = m * m.saturating_sub(1) / 2;
    let wm = m0 + n0 * m + lam;
    let cross = |i: usize, l: usize| m0 + i * m + l;
    let wedge = |l: usize, l2: usize| m0 + n0 * m + l * m - l * (l + 1) / 2 + (l2 - l - 1);
    let eps0 = base.eps();

    let mut out = AugBilinearMap::zero(p, n, wm);
    for i in 0..n0 {
        for j in 0..n0 {
            out.entry_mut(i, j)[..m0].copy_from_slice(base.entry(i, j));
        }
        for l in 0..m {
            out.entry_mut(i, n0 + l)[cross(i, l)] = 1;
            out.entry_mut(n0 + l, i)[cross(i, l)] = field.neg(1);
        }
    }
    for l in 0..m {
        for i in 0..n0 {
            out.entry_mut(n0 + l, n0 + l)[cross(i, l)] = eps0.get(i);
        }
        for l2 in l + 1..m {
            out.entry_mut(n0 + l, n0 + l2)[wedge(l, l2)] = 1;
            out.entry_mut(n0 + l2, n0 + l)[wedge(l, l2)] = field.neg(1);
        }
    }
    let eps = eps0.concat(&FpVec::zeros(p, m));
    let gram: Vec<FpVec> = (0..n * n).map(|idx| out.product(idx / n, idx % n)).collect();

    let old_v = k.vlabels().to_vec();
    let mut vlabels = if old_v.len() == n0 { old_v } else { (0..n0).map(|i| format!("v{}", i + 1)).collect() };
    let old_w = k.wlabels().to_vec();
    let mut wlabels = if old_w.len() == m0 { old_w } else { (0..m0).map(|i| format!("w{}", i + 1)).collect() };
    for u in &vlabels {
        for t in names {
            wlabels.push(format!("({u},{t})"));
        }
    }
    for l in 0..m {
        for l2 in l + 1..m {
            wlabels.push(format!("({},{})", names[l], names[l2]));
        }
    }
    vlabels.extend(names.iter().cloned());
    let map = AugBilinearMap::new(p, n, wm, &gram, eps)?.with_labels(Some(vlabels), Some(wlabels));

    let mut provenance = k.provenance.clone();
    provenance.push(format!("power series in {}", names.join(" ")));
    let ext = FieldData::new(map, provenance)?;
    let restriction = Morphism::new(inclusion(p, n, n0), inclusion(p, wm, m0), base.clone(), ext.map.clone())?;
    Ok((ext, restriction))
}

fn inclusion(p: u8, rows: usize, cols: usize) -> FpMat {
    let mut f = FpMat::zeros(p, rows, cols);
    for i in 0..cols {
        f.set(i, i, 1);
    }
    f
}

/// Adds an augmentation to a skew-symmetric map; the input ε is ignored.
///
/// For odd p the map is alternating and `ε = 0` works. For p = 2 the space
/// grows by one vector ε with `b̂(v + aε, v' + a'ε) = b(v,v') + a'b(v,v) +
/// ab(v',v')`; the original basis keeps its positions.
pub fn extend_to_augmented(b: &AugBilinearMap) -> Result<AugBilinearMap, TowerError> {
    let (p, n, m) = (b.p(), b.n(), b.m());
    let skew = AugBilinearMap::new(p, n, m, &all_products(b), FpVec::zeros(p, n))?;
    if let Some(Violation::NotSkew { i, j }) =
        skew.validate().into_iter().find(|v| matches!(v, Violation::NotSkew { .. }))
    {
        return Err(TowerError::NotSkew { i, j });
    }
    if p != 2 {
        return Ok(skew.with_labels(b.vlabels().map(<[String]>::to_vec), b.wlabels().map(<[String]>::to_vec)));
    }
    let n1 = n + 1;
    let mut gram = Vec::with_capacity(n1 * n1);
    for i in 0..n1 {
        for j in 0..n1 {
            gram.push(match (i < n, j < n) {
                (true, true) => b.product(i, j),
                (true, false) => b.product(i, i),
                (false, true) => b.product(j, j),
                (false, false) => FpVec::zeros(p, m),
            });
        }
    }
    let vlabels = b.vlabels().map(|l| {
        let mut l = l.to_vec();
        l.push("ε".to_string());
        l
    });
    Ok(AugBilinearMap::new(p, n1, m, &gram, FpVec::unit(p, n1, n))?
        .with_labels(vlabels, b.wlabels().map(<[String]>::to_vec)))
}

fn all_products(map: &AugBilinearMap) -> Vec<FpVec> {
    let n = map.n();
    (0..n * n).map(|idx| map.product(idx / n, idx % n)).collect()
}

/// Block sum of two fields with `ε = 0`; labels and logs are merged.
pub fn free_product_fields(k1: &FieldData, k2: &FieldData) -> Result<FieldData, TowerError> {
    let map = free_product(&k1.map, &k2.map)?;
    let mut provenance = vec![format!("free product of [{}]", k1.provenance.join("; "))];
    provenance.push(format!("with [{}]", k2.provenance.join("; ")));
    FieldData::new(map, provenance)
}

/// Evaluates a construction tree bottom-up: a leaf is one power-series
/// variable over C, a cone adjoins one more variable, a free node is the
/// block sum of its children. Vertex `k` is labeled `v<k+1>`.
pub fn eval_tree(tree: &ConstructionTree, p: u8) -> Result<FieldData, TowerError> {
    let name = |v: usize| vec![format!("v{}", v + 1)];
    match tree {
        ConstructionTree::Leaf(v) => Ok(extend_power_series_named(&base_field(BaseKind::Complex, p)?, &name(*v))?.0),
        ConstructionTree::Cone(child, apex) => Ok(extend_power_series_named(&eval_tree(child, p)?, &name(*apex))?.0),
        ConstructionTree::Free(children) => {
            let mut acc = base_field(BaseKind::Complex, p)?;
            for c in children {
                acc = free_product_fields(&acc, &eval_tree(c, p)?)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilform::{equal, permuted_equal};
    use crate::graphs::{decompose, graph_bilinear, Decomposition, SimplicialGraph};

    #[test]
    fn base_fields() {
        let c = base_field(BaseKind::Complex, 3).unwrap();
        assert_eq!((c.map().n(), c.map().m()), (0, 0));
        let z = base_field(BaseKind::Z2Ext, 2).unwrap();
        assert_eq!(z.map().eps().coords(), &[1]);
        assert_eq!(z.map().m(), 0);
        let q = base_field(BaseKind::Q2, 2).unwrap();
        assert!(q.map().validate().is_empty());
        assert_eq!(q.map().product(0, 0).coords(), &[1]);
        assert_eq!(q.map().product(1, 2).coords(), &[1]);
        assert_eq!(q.map().product(1, 1).coords(), &[0]);
        assert_eq!(
            base_field(BaseKind::Q2, 3).unwrap_err(),
            TowerError::UnsupportedBase { kind: BaseKind::Q2, p: 3 }
        );
    }

    #[test]
    fn power_series_examples() {
        let c = base_field(BaseKind::Complex, 2).unwrap();
        let (e, res) = extend_power_series(&c, 1).unwrap();
        assert_eq!((e.map().n(), e.map().m()), (1, 0));
        assert!(res.is_monomorphism());
        let (e, _) = extend_power_series(&c, 3).unwrap();
        assert_eq!((e.map().n(), e.map().m()), (3, 3));
        assert_eq!(e.wlabels(), &["(t1,t2)", "(t1,t3)", "(t2,t3)"]);
        assert_eq!(e.map().product(0, 2).coords(), &[0, 1, 0]);
        let q = base_field(BaseKind::Q2, 2).unwrap();
        let (e, res) = extend_power_series(&q, 1).unwrap();
        assert_eq!((e.map().n(), e.map().m()), (4, 4));
        // b(t, t) = ε ⊗ t = (-1) ⊗ t
        assert_eq!(e.map().product(3, 3).coords(), &[0, 1, 0, 0]);
        assert!(e.map().validate().is_empty());
        assert!(res.is_monomorphism());
    }

    #[test]
    fn repeated_extension_keeps_labels_distinct() {
        let c = base_field(BaseKind::Complex, 3).unwrap();
        let (e, _) = extend_power_series(&c, 2).unwrap();
        let (e, _) = extend_power_series(&e, 2).unwrap();
        assert_eq!(e.vlabels(), &["t1", "t2", "t3", "t4"]);
        assert_eq!(e.provenance().len(), 3);
    }

    #[test]
    fn augmented_extension_examples() {
        let v = |p: u8, c: &[u8]| FpVec::new(p, c.to_vec()).unwrap();
        let one = AugBilinearMap::new(2, 1, 1, &[v(2, &[1])], v(2, &[0])).unwrap();
        let ext = extend_to_augmented(&one).unwrap();
        assert_eq!(ext.n(), 2);
        assert_eq!(ext.product(0, 1).coords(), &[1]);
        assert!(ext.validate().is_empty());

        let k2 = graph_bilinear(&SimplicialGraph::complete(2), 3).unwrap();
        assert!(equal(&extend_to_augmented(&k2).unwrap(), &k2));

        let k2 = graph_bilinear(&SimplicialGraph::complete(2), 2).unwrap();
        let ext = extend_to_augmented(&k2).unwrap();
        assert_eq!(ext.n(), 3);
        assert!((0..3).all(|i| ext.product(i, 2).is_zero()));

        let bad = AugBilinearMap::new(3, 2, 1, &[v(3, &[0]), v(3, &[1]), v(3, &[1]), v(3, &[0])], v(3, &[0, 0])).unwrap();
        assert_eq!(extend_to_augmented(&bad).unwrap_err(), TowerError::NotSkew { i: 0, j: 1 });
    }

    #[test]
    fn trees() {
        let leaf = eval_tree(&ConstructionTree::Leaf(0), 2).unwrap();
        assert_eq!((leaf.map().n(), leaf.map().m()), (1, 0));
        let free = ConstructionTree::Free(vec![ConstructionTree::Leaf(0), ConstructionTree::Leaf(1)]);
        let out = eval_tree(&free, 2).unwrap();
        assert!(equal(out.map(), &AugBilinearMap::zero(2, 2, 0)));
        let k2 = ConstructionTree::Cone(Box::new(ConstructionTree::Leaf(0)), 1);
        let out = eval_tree(&k2, 3).unwrap();
        assert!(equal(out.map(), &graph_bilinear(&SimplicialGraph::complete(2), 3).unwrap()));
        assert_eq!(out.wlabels(), &["(v1,v2)"]);
    }

    #[test]
    fn p3_tree_matches_graph() {
        let p3 = SimplicialGraph::path(3);
        let Decomposition::Tree(t) = decompose(&p3) else { panic!("P3 is trivially perfect") };
        for p in [2, 3] {
            let out = eval_tree(&t, p).unwrap();
            let order = t.vertex_order();
            assert!(permuted_equal(out.map(), &graph_bilinear(&p3, p).unwrap(), &order));
        }
    }
}
