use qgk_core::graphs::{enumerate_graphs, graph_bilinear, SimplicialGraph};
use qgk_core::random::random_valid_map;
use qgk_core::slot::{has_common_slot, has_common_slot_naive, is_quaternionic};
use qgk_core::tower::{base_field, BaseKind};
use qgk_core::AugBilinearMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn agree(map: &AugBilinearMap) -> bool {
    let fast = has_common_slot(map).unwrap();
    let naive = has_common_slot_naive(map).unwrap();
    for w in [fast.witness(), naive.witness()].into_iter().flatten() {
        assert!(w.verify(map));
    }
    fast.holds() == naive.holds()
}

#[test]
fn deciders_agree_on_graph_maps() {
    for n in 1..=4 {
        for g in enumerate_graphs(n, false).unwrap() {
            for p in [2, 3] {
                assert!(agree(&graph_bilinear(&g, p).unwrap()), "{}", g.to_text());
            }
        }
    }
}

#[test]
fn deciders_agree_on_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let p = [2u8, 3][rng.random_range(0..2)];
        let n = rng.random_range(1..=3);
        let m = rng.random_range(0..=3);
        assert!(agree(&random_valid_map(&mut rng, p, n, m)));
    }
}

#[test]
fn quaternionic_axioms() {
    let q2 = base_field(BaseKind::Q2, 2).unwrap();
    assert!(is_quaternionic(q2.map()).unwrap().all_pass());
    assert!(has_common_slot_naive(q2.map()).unwrap().holds());
    let l3 = graph_bilinear(&SimplicialGraph::path(4), 2).unwrap();
    let report = is_quaternionic(&l3).unwrap();
    assert!(report.axiom1.passed() && report.axiom2.passed() && report.axiom3.passed());
    assert!(!report.axiom4.passed());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let map = random_valid_map(&mut rng, 2, 3, 2);
        let report = is_quaternionic(&map).unwrap();
        assert_eq!(report.all_pass(), has_common_slot(&map).unwrap().holds());
    }
}
