use qgk_core::bilform::{equal, normalize_w, permuted_equal};
use qgk_core::graphs::{decompose, enumerate_graphs, graph_bilinear, Decomposition};
use qgk_core::random::{random_skew_map, random_valid_map};
use qgk_core::tower::{base_field, eval_tree, extend_power_series, extend_to_augmented, BaseKind, FieldData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn extension_dimensions_and_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [2u8, 3] {
        for n in 0..=4 {
            let base = if n == 0 {
                base_field(BaseKind::Complex, p).unwrap()
            } else {
                let m0 = rng.random_range(0..=2);
                FieldData::from_map(random_valid_map(&mut rng, p, n, m0), "random").unwrap()
            };
            let w = base.map().m();
            for m in 0..=5 {
                let (ext, res) = extend_power_series(&base, m).unwrap();
                assert!(ext.map().validate().is_empty());
                assert_eq!(ext.map().n(), n + m);
                assert_eq!(ext.map().m(), w + m * n + m * (m.saturating_sub(1)) / 2);
                assert!(res.is_monomorphism());
                // dim H² ≥ m, except over a field without H¹ and m ≤ 2
                if n == 0 && (m == 1 || m == 2) {
                    assert!(ext.map().m() < m);
                } else {
                    assert!(ext.map().m() >= m, "n={n} m={m}");
                }
            }
        }
    }
}

#[test]
fn augmented_extension_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let p = [2u8, 3, 5][rng.random_range(0..3)];
        let n = rng.random_range(0..=4);
        let m = rng.random_range(0..=3);
        let skew = random_skew_map(&mut rng, p, n, m);
        let ext = extend_to_augmented(&skew).unwrap();
        assert!(ext.validate().is_empty());
        assert_eq!(ext.n() - n, if p == 2 { 1 } else { 0 });
        for i in 0..n {
            for j in 0..n {
                assert_eq!(ext.product(i, j), skew.product(i, j));
            }
        }
    }
}

#[test]
fn trees_evaluate_to_graph_maps() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, false).unwrap() {
            let Decomposition::Tree(t) = decompose(&g) else { continue };
            let order = t.vertex_order();
            for p in [2, 3] {
                let field = eval_tree(&t, p).unwrap();
                let b = graph_bilinear(&g, p).unwrap();
                assert!(permuted_equal(field.map(), &b, &order));
                assert!(equal(&normalize_w(&field.map().permute_v(&order).unwrap()), &b));
            }
        }
    }
}

/// 2-adic Hilbert symbol of `2^a u` and `2^b v` for odd `u`, `v`: 1 means -1.
fn hilbert_formula(x: i64, y: i64) -> u8 {
    let split = |z: i64| (z.trailing_zeros() as i64, z >> z.trailing_zeros());
    let (a, u) = split(x);
    let (b, v) = split(y);
    let eps = |u: i64| (u - 1).rem_euclid(4) / 2;
    let omega = |u: i64| ((u * u - 1) / 8).rem_euclid(2);
    ((eps(u) * eps(v) + a * omega(v) + b * omega(u)) % 2) as u8
}

/// Whether `x X² + y Y² = Z²` has a solution mod `2^k` with not all of
/// `X, Y, Z` even: 1 means no such solution.
fn hilbert_search(x: i64, y: i64, k: u32) -> u8 {
    let modulus = 1i64 << k;
    let solvable = (0..modulus).any(|a| {
        (0..modulus).any(|b| {
            (0..modulus).any(|c| {
                (a % 2 == 1 || b % 2 == 1 || c % 2 == 1)
                    && (x * a * a + y * b * b - c * c).rem_euclid(modulus) == 0
            })
        })
    });
    u8::from(!solvable)
}

#[test]
fn q2_table_matches_hilbert_symbols() {
    let q2 = base_field(BaseKind::Q2, 2).unwrap();
    let reps = [-1i64, 2, 5];
    assert_eq!(q2.vlabels(), &["(-1)", "(2)", "(5)"]);
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            let stored = q2.map().product(i, j).get(0);
            assert_eq!(hilbert_formula(x, y), stored, "({x},{y})");
            for k in 3..=6 {
                assert_eq!(hilbert_search(x, y, k), stored, "({x},{y}) mod 2^{k}");
            }
        }
    }
    let minus_one = q2.map().eps();
    assert!(!q2.map().eval(&minus_one, &minus_one).is_zero());
    let z = base_field(BaseKind::Z2Ext, 2).unwrap();
    assert!(!z.map().eps().is_zero());
    assert!(z.map().eval(&z.map().eps(), &z.map().eps()).is_zero());
}
