use std::collections::BTreeSet;

use num_rational::Rational64;
use proptest::prelude::*;
use schubert::{Cell, Error, Root, RootSystem};

/// `e_a - e_b` written in the simple-root basis.
fn root_from_pair(rank: usize, a: usize, b: usize) -> Root {
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let mut v = vec![0; rank];
    for x in &mut v[lo..hi] {
        *x = sign;
    }
    Root(v)
}

fn swap(k: usize, x: usize) -> usize {
    if x == k {
        k + 1
    } else if x == k + 1 {
        k
    } else {
        x
    }
}

/// Inversion set `{alpha > 0 : w^{-1} alpha < 0}` of `w = s_{i_1} ... s_{i_l}`,
/// computed on index pairs.
fn inversion_set(n: usize, word: &[usize]) -> BTreeSet<Root> {
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let (mut x, mut y) = (a, b);
            for &k in word {
                x = swap(k, x);
                y = swap(k, y);
            }
            if x > y {
                out.insert(root_from_pair(n - 1, a, b));
            }
        }
    }
    out
}

#[test]
fn alphas_match_brute_force_inversions() {
    for n in [3usize, 4] {
        let sys = RootSystem::type_a(n).unwrap();
        for w in sys.reduced_words(n * (n - 1) / 2) {
            let alphas = sys.alpha_sequence(&w).unwrap();
            let set: BTreeSet<Root> = alphas.iter().cloned().collect();
            assert_eq!(set.len(), w.len(), "{w:?}");
            assert_eq!(set, inversion_set(n, &w), "{w:?}");
        }
    }
}

#[test]
fn betas_are_alphas_of_reversed_word() {
    let sys = RootSystem::type_a(4).unwrap();
    for w in sys.reduced_words(6) {
        let mut rev = w.clone();
        rev.reverse();
        let mut a = sys.alpha_sequence(&rev).unwrap();
        a.reverse();
        assert_eq!(sys.beta_sequence(&w).unwrap(), a, "{w:?}");
    }
}

#[test]
fn reduced_word_count_matches_permutations() {
    // number of elements of S_n
    for (n, count) in [(2usize, 2usize), (3, 6), (4, 24)] {
        let sys = RootSystem::type_a(n).unwrap();
        let words = sys.reduced_words(n * (n - 1) / 2);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for w in &words {
            if !classes.iter().any(|c| sys.same_element(c, w).unwrap()) {
                classes.push(w.clone());
            }
        }
        assert_eq!(classes.len(), count);
    }
}

#[test]
fn longest_words_share_inversion_set() {
    let sys = RootSystem::type_a(4).unwrap();
    let w0 = sys.longest_word();
    assert_eq!(w0.len(), 6);
    let all: BTreeSet<Root> = sys.positive_roots().iter().cloned().collect();
    for w in sys.reduced_words(6).into_iter().filter(|w| w.len() == 6) {
        assert!(sys.same_element(&w, &w0).unwrap());
        let set: BTreeSet<Root> = sys.alpha_sequence(&w).unwrap().into_iter().collect();
        assert_eq!(set, all);
    }
}

#[test]
fn killing_normalization() {
    for n in 2..=5usize {
        let sys = RootSystem::type_a(n).unwrap();
        let nn = n as i64;
        for r in sys.positive_roots() {
            assert_eq!(sys.pair_roots(r, r), Rational64::new(1, nn));
        }
        for i in 0..n - 1 {
            let g = sys.simple_root(i).unwrap();
            let rho_g = sys.pairing(sys.rho(), &g.to_weight()).unwrap();
            assert_eq!(rho_g, Rational64::new(1, 2 * nn));
            if i + 1 < n - 1 {
                let h = sys.simple_root(i + 1).unwrap();
                assert_eq!(sys.pair_roots(&g, &h), Rational64::new(-1, 2 * nn));
            }
        }
        assert_eq!(sys.positive_roots().len(), n * (n - 1) / 2);
        let heights: Vec<i64> = sys.positive_roots().iter().map(Root::height).collect();
        assert!(heights.windows(2).all(|p| p[0] <= p[1]));
    }
}

#[test]
fn matrix_positions_follow_index_pairs() {
    let sys = RootSystem::type_a(5).unwrap();
    for a in 0..5 {
        for b in a + 1..5 {
            assert_eq!(sys.matrix_position(&root_from_pair(4, a, b)), Some((a, b)));
        }
    }
}

#[test]
fn non_reduced_words_report_position() {
    let sys = RootSystem::type_a(4).unwrap();
    assert!(matches!(
        Cell::from_indices(&sys, &[0, 1, 0, 1]),
        Err(Error::NotReduced { position: 4 })
    ));
    assert!(matches!(
        sys.alpha_sequence(&[2, 0, 2]),
        Err(Error::NotReduced { position: 3 })
    ));
    assert!(matches!(
        sys.alpha_sequence(&[3]),
        Err(Error::IndexOutOfRange { .. })
    ));
    assert!(RootSystem::type_a(1).is_err());
}

#[test]
fn record_round_trip() {
    let sys = RootSystem::type_a(4).unwrap();
    let json = serde_json::to_string(&sys.to_record()).unwrap();
    let back = RootSystem::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.positive_roots(), sys.positive_roots());
    assert_eq!(back.gram(), sys.gram());
}

proptest! {
    #[test]
    fn weyl_action_preserves_norm(word in prop::collection::vec(0usize..3, 0..8), idx in 0usize..6) {
        let sys = RootSystem::type_a(4).unwrap();
        let r = sys.positive_roots()[idx].clone();
        let image = sys.weyl_act_root(&word, &r).unwrap();
        prop_assert!(sys.is_root(&image));
        prop_assert_eq!(sys.pair_roots(&image, &image), sys.pair_roots(&r, &r));
        let back = sys.weyl_act_inverse(&word, &image.to_weight()).unwrap();
        prop_assert_eq!(back, r.to_weight());
    }

    #[test]
    fn reducedness_matches_inversion_count(word in prop::collection::vec(0usize..3, 0..8)) {
        let sys = RootSystem::type_a(4).unwrap();
        prop_assert_eq!(sys.is_reduced(&word).unwrap(), inversion_set(4, &word).len() == word.len());
    }
}
