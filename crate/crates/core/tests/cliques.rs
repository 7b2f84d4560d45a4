use std::collections::BTreeMap;

use ekr_core::cliques::{odd_clique, verify_clique_character_nonvanishing};
use ekr_core::Permutation;

/// Relabelling by a transposition exchanges the two halves of every split
/// class, which is the same as swapping the `′`/`″` convention. The
/// nonvanishing verdict must not depend on it.
#[test]
fn verdict_is_invariant_under_the_split_convention() {
    for n in [5, 7, 9] {
        let clique = odd_clique(n).unwrap();
        let swapped = clique.relabel(&Permutation::parse_cycles(n, "(1 2)").unwrap()).unwrap();
        let (a, b) = clique.split_tallies().unwrap();
        assert_eq!(swapped.split_tallies().unwrap(), (b, a), "n = {n}");

        let before = verify_clique_character_nonvanishing(&clique).unwrap();
        let after = verify_clique_character_nonvanishing(&swapped).unwrap();
        assert!(before.passed() && after.passed());
        assert_eq!(before.standard_sum, after.standard_sum);
        // Each split row's sum moves to its twin row.
        let twisted: BTreeMap<String, String> = after
            .sums
            .iter()
            .map(|s| (s.character.galois_twin().to_string(), s.sum.to_string()))
            .collect();
        for s in &before.sums {
            assert_eq!(
                twisted[&s.character.to_string()],
                s.sum.to_string(),
                "n = {n}, {}",
                s.character
            );
        }
    }
}
