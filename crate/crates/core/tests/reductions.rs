use exgraph::graph::{colour_isomorphic, ColouredMultigraph};
use exgraph::reductions::{break_edge, merge_colours, merged_dims, path_profile, plus_one_reduce, remove_edge, word_profile};
use proptest::prelude::*;

fn cycle_word(min_n: usize, max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (min_n..=max_n).prop_flat_map(|n| proptest::collection::vec(0usize..2, n))
}

fn cycle(word: &[usize]) -> ColouredMultigraph {
    ColouredMultigraph::coloured_cycle(word, &["A", "B"]).unwrap()
}

proptest! {
    #[test]
    fn profile_partitions_the_cycle(word in cycle_word(3, 12)) {
        let p = word_profile(&word);
        prop_assert_eq!(p.lengths.iter().sum::<usize>(), word.len());
        prop_assert_eq!(p.lengths.len(), p.colours.len());
        prop_assert_eq!(p.t, p.lengths.iter().filter(|&&l| l == 2).count());
        prop_assert_eq!(p.ones, p.lengths.iter().filter(|&&l| l == 1).count());
        if p.lengths.len() > 1 {
            for k in 0..p.colours.len() {
                prop_assert_ne!(p.colours[k], p.colours[(k + 1) % p.colours.len()]);
            }
        }
        prop_assert_eq!(path_profile(&cycle(&word)).unwrap(), p);
    }

    #[test]
    fn break_adds_one_vertex_and_edge(word in cycle_word(3, 10), k in 0usize..10) {
        let cm = cycle(&word);
        let n = word.len();
        let k = k % n;
        let broken = break_edge(&cm, k, (k + 1) % n).unwrap();
        prop_assert_eq!(broken.n(), n + 1);
        prop_assert_eq!(broken.total_edges(), n + 1);
        let mut new_word = broken.cycle_word().unwrap();
        prop_assert_eq!(new_word.len(), n + 1);
        // The broken edge's colour now covers one more edge.
        new_word.sort_unstable();
        let mut expected = word.clone();
        expected.push(word[k]);
        expected.sort_unstable();
        prop_assert_eq!(new_word, expected);
    }

    #[test]
    fn plus_one_undoes_two_breaks(word in cycle_word(5, 9), k in 0usize..9) {
        let n = word.len();
        let k = k % n;
        // A single edge of colour a between two edges of the other colour.
        prop_assume!(word[k] != word[(k + n - 1) % n] && word[k] != word[(k + 1) % n]);
        let cm = cycle(&word);
        let once = break_edge(&cm, k, (k + 1) % n).unwrap();
        let twice = break_edge(&once, k, k + 1).unwrap();
        let middle = k + 1;
        let reduced = plus_one_reduce(&twice, middle).unwrap();
        prop_assert!(colour_isomorphic(&reduced, &cm));
    }

    #[test]
    fn merge_keeps_the_shadow(word in cycle_word(3, 10)) {
        let cm = cycle(&word);
        prop_assume!(cm.colour_count() == 2);
        let merged = merge_colours(&cm, 0, 1).unwrap();
        prop_assert_eq!(merged.shadow(), cm.shadow());
        prop_assert_eq!(merged.colour_count(), 1);
        prop_assert_eq!(merged_dims(&[2, 3], 0, 1).unwrap(), vec![6]);
    }

    #[test]
    fn removal_drops_one_edge(word in cycle_word(3, 10), k in 0usize..10) {
        let cm = cycle(&word);
        let n = word.len();
        let k = k % n;
        let removed = remove_edge(&cm, k, (k + 1) % n, word[k]).unwrap();
        prop_assert_eq!(removed.total_edges(), n - 1);
        prop_assert!(!removed.shadow().has_edge(k, (k + 1) % n));
        prop_assert!(remove_edge(&removed, k, (k + 1) % n, word[k]).is_err());
    }
}
