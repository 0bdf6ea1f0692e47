use proptest::prelude::*;
use qgk_core::bilform::equal;
use qgk_core::graphs::{enumerate_graphs, graph_bilinear};
use qgk_core::presentations::{
    collect_mod_s3, magnus_degree2, presentation_cup_product, raag_presentation, relator_coordinates, Word,
};
use qgk_core::random::random_graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len).prop_map(Word::new)
}

fn setting() -> impl Strategy<Value = (u8, usize)> {
    (prop::sample::select(vec![2u8, 3]), 1usize..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn collection_matches_magnus(((p, n), w) in setting().prop_flat_map(|(p, n)| (Just((p, n)), word(n, 20)))) {
        let nf = collect_mod_s3(&w, n, p).unwrap();
        let mg = magnus_degree2(&w, n, p).unwrap();
        prop_assert_eq!(nf.c(), &mg.linear[..]);
        let pp = p as u64;
        for i in 0..n {
            for j in i + 1..n {
                let cc = (nf.c()[i] % pp) * (nf.c()[j] % pp) % pp;
                let expected = (mg.quadratic[i][j] as u64 + pp - cc) % pp;
                prop_assert_eq!(nf.d(i, j) as u64, expected);
            }
        }
    }

    #[test]
    fn frattini_words_match_magnus(((p, n), w) in setting().prop_flat_map(|(p, n)| (Just((p, n)), word(n, 20)))) {
        // make every exponent sum divisible by p by appending powers
        let nf = collect_mod_s3(&w, n, p).unwrap();
        let fix = Word::new((0..n).map(|i| (i, -((nf.c()[i] % p as u64) as i64))));
        let w = w.mul(&fix);
        let rc = relator_coordinates(&w, n, p);
        prop_assume!(rc.is_ok() || w.is_empty());
        let nf = collect_mod_s3(&w, n, p).unwrap();
        let mg = magnus_degree2(&w, n, p).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                prop_assert_eq!(nf.d(i, j), mg.quadratic[i][j]);
            }
        }
    }

    #[test]
    fn collection_is_a_homomorphism(
        ((p, n), a, b) in setting().prop_flat_map(|(p, n)| (Just((p, n)), word(n, 12), word(n, 12)))
    ) {
        let direct = collect_mod_s3(&a.mul(&b), n, p).unwrap();
        let combined = collect_mod_s3(&a, n, p).unwrap().mul(&collect_mod_s3(&b, n, p).unwrap());
        prop_assert_eq!(direct, combined);
    }

    #[test]
    fn collection_respects_inverses(((p, n), w) in setting().prop_flat_map(|(p, n)| (Just((p, n)), word(n, 20)))) {
        let inv = collect_mod_s3(&w.inverse(), n, p).unwrap();
        prop_assert_eq!(&inv, &collect_mod_s3(&w, n, p).unwrap().inverse());
        let id = collect_mod_s3(&Word::default(), n, p).unwrap();
        prop_assert_eq!(inv.mul(&collect_mod_s3(&w, n, p).unwrap()), id);
    }
}

#[test]
fn raag_cup_product_is_the_graph_map() {
    for n in 1..=5 {
        for g in enumerate_graphs(n, false).unwrap() {
            for p in [2, 3] {
                let cup = presentation_cup_product(&raag_presentation(&g), p).unwrap();
                assert!(equal(&cup, &graph_bilinear(&g, p).unwrap()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 7);
        let cup = presentation_cup_product(&raag_presentation(&g), 5).unwrap();
        assert_eq!(cup.to_text(), graph_bilinear(&g, 5).unwrap().to_text());
    }
}
