use qgk_core::bilform::{equal, AugBilinearMap};
use qgk_core::fpla::{self, FpMat, FpVec};
use qgk_core::graphs::{enumerate_graphs, graph_bilinear, SimplicialGraph};
use qgk_core::hull::{functor_f_of_g, hull_dims, pure_kernel_span};

fn all_vectors(p: u8, dim: usize) -> Vec<FpVec> {
    (0..(p as u64).pow(dim as u32)).map(|i| FpVec::from_index(p, dim, i)).collect()
}

fn tensor(vs: &[&FpVec]) -> FpVec {
    let field = vs[0].field();
    let mut out = vec![1u8];
    for v in vs {
        out = out.iter().flat_map(|&a| v.coords().iter().map(move |&b| field.mul(a, b))).collect();
    }
    FpVec::new(field.p(), out).unwrap()
}

/// Hull dimensions up to degree 3 from the rank of every pure tensor in the
/// ideal: `x⊗y` with `b(x,y) = 0`, and `x⊗y⊗z` with `b(x,y) = 0` or
/// `b(y,z) = 0`.
fn brute_force_dims(map: &AugBilinearMap) -> Vec<usize> {
    let (p, n) = (map.p(), map.n());
    let vecs = all_vectors(p, n);
    let zero = |a: &FpVec, b: &FpVec| map.eval(a, b).is_zero();
    let mut deg2 = Vec::new();
    let mut deg3 = Vec::new();
    for x in &vecs {
        for y in &vecs {
            if zero(x, y) {
                deg2.push(tensor(&[x, y]));
            }
            for z in &vecs {
                if zero(x, y) || zero(y, z) {
                    deg3.push(tensor(&[x, y, z]));
                }
            }
        }
    }
    let rank = |rows: &[FpVec], cols: usize| fpla::rank(&FpMat::from_rows(p, cols, rows).unwrap());
    vec![1, n, n * n - rank(&deg2, n * n), n.pow(3) - rank(&deg3, n.pow(3))]
}

#[test]
fn hull_dims_match_brute_force() {
    let k2 = graph_bilinear(&SimplicialGraph::complete(2), 2).unwrap();
    let k3 = graph_bilinear(&SimplicialGraph::complete(3), 2).unwrap();
    assert_eq!(brute_force_dims(&k2), vec![1, 2, 1, 0]);
    assert_eq!(brute_force_dims(&k3), vec![1, 3, 3, 1]);
    for n in 1..=3 {
        for g in enumerate_graphs(n, false).unwrap() {
            for p in [2, 3] {
                let b = graph_bilinear(&g, p).unwrap();
                assert_eq!(hull_dims(&b, 3).unwrap().dims, brute_force_dims(&b), "{}", g.to_text());
            }
        }
    }
}

#[test]
fn degree_two_counts_edges() {
    for n in 1..=5 {
        for g in enumerate_graphs(n, false).unwrap() {
            for p in [2, 3] {
                let b = graph_bilinear(&g, p).unwrap();
                assert_eq!(pure_kernel_span(&b).unwrap().len(), n * n - g.edge_count());
                assert_eq!(hull_dims(&b, 2).unwrap().dims[2], g.edge_count());
            }
        }
    }
}

#[test]
fn f_of_g_reproduces_graph_maps() {
    for n in 1..=4 {
        for g in enumerate_graphs(n, false).unwrap() {
            for p in [2, 3] {
                let b = graph_bilinear(&g, p).unwrap();
                let out = functor_f_of_g(&b).unwrap();
                assert_eq!(out.gap, 0);
                assert!(equal(&out.map, &b), "{}", g.to_text());
                assert!(out.iso.expect("surjective with no gap").is_isomorphism());
            }
        }
    }
}
