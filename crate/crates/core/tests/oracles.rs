mod common;

use braidcover::braid::BraidWord;
use braidcover::homology::branched_h1;
use braidcover::surgery::linalg;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn burau_oracle_on_known_knots() {
    let det = |n, w: &[i32]| burau_determinant(&BraidWord::new(n, w.to_vec()).unwrap());
    assert_eq!(det(2, &[1, 1, 1]), BigInt::from(3));
    assert_eq!(det(3, &[1, -2, 1, -2]), BigInt::from(5));
    assert_eq!(det(3, &[1, 2]), BigInt::from(1));
    assert_eq!(det(2, &[1, 1, 1, 1, 1]), BigInt::from(5));
    assert_eq!(det(3, &[1, 1, 1, 2]), BigInt::from(3));
}

#[test]
fn two_bridge_torus_knots() {
    for m in 1..=4 {
        let lb = two_fold(2, &vec![1; 2 * m + 1]);
        let h = branched_h1(&lb).unwrap();
        assert!(h.is_finite());
        assert_eq!(h.order().unwrap(), burau_determinant(lb.braid()), "m = {m}");
    }
}

#[test]
fn three_braid_knots_up_to_eight_letters() {
    let words = three_braid_knot_words(8);
    assert!(words.len() > 100, "{}", words.len());
    for w in words {
        let lb = two_fold(3, &w);
        let h = branched_h1(&lb).unwrap();
        assert_eq!(h.free_rank(), 0, "{w:?}");
        assert_eq!(h.order().unwrap(), burau_determinant(lb.braid()), "{w:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_matches_characteristic_polynomial(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 6);
        let q = d.linking_matrix();
        prop_assert_eq!(linalg::signature(&q), signature_by_charpoly(&q));
    }

    #[test]
    fn characteristic_sublinks_match_exhaustive_search(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 7);
        let found: Vec<Vec<usize>> = d.characteristic_sublinks().into_iter().map(|s| s.members).collect();
        prop_assert_eq!(found, characteristic_subsets_exhaustive(&d.linking_matrix()));
    }
}
