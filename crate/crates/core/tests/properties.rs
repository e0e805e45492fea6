//! Cross-cutting properties checked on random inputs: coverage arithmetic,
//! symmetry invariance, normal forms, and engine-versus-oracle agreement.

use proptest::prelude::*;
use upwords_core::{
    brute_force_oracle, canonical_cyclic, canonicalize, coverage, exhaustive_search, is_universal,
    single_diamond_template, truncated_complement, window_expansion, Alphabet, Cell,
    DiamondTemplate, PartialWord, SearchResult, SearchSpec, Symbol,
};

fn arb_word(max_len: usize) -> impl Strategy<Value = PartialWord> {
    (2usize..=4).prop_flat_map(move |size| {
        let alphabet = Alphabet::new(size).unwrap();
        let cell = prop_oneof![
            3 => (0..size as u8).prop_map(Symbol::Letter),
            1 => Just(Symbol::Diamond),
        ];
        proptest::collection::vec(cell, 1..=max_len)
            .prop_map(move |symbols| PartialWord::new(symbols, alphabet).unwrap())
    })
}

/// A solvable-shaped linear frame: a single wildcard at k with the length
/// the count identity dictates, then a few free cells pinned to letters.
/// Pinning never changes the window layout, so the frame stays consistent.
fn arb_linear_frame() -> impl Strategy<Value = DiamondTemplate> {
    (2usize..=3)
        .prop_flat_map(|n| (Just(n), 1usize..=(1 << (n - 1))))
        .prop_flat_map(|(n, k)| {
            let base = single_diamond_template(Alphabet::BINARY, n, k).unwrap();
            let len = base.len();
            (
                Just(base),
                proptest::collection::vec((1..=len, 0u8..=1), 0..=3),
            )
        })
        .prop_map(|(base, pins)| {
            let mut cells = base.cells().to_vec();
            for (pos, letter) in pins {
                if matches!(cells[pos - 1], Cell::Free) {
                    cells[pos - 1] = Cell::Fixed(letter);
                }
            }
            DiamondTemplate::new(base.alphabet(), base.n(), false, cells).unwrap()
        })
}

fn renders(result: &SearchResult) -> Vec<String> {
    result.witnesses.iter().map(PartialWord::render).collect()
}

proptest! {
    #[test]
    fn coverage_total_is_the_window_sum(u in arb_word(10), n in 1usize..=3, cyclic: bool) {
        prop_assume!(cyclic || u.len() >= n);
        let len = u.len();
        let windows = if cyclic { len } else { len.saturating_sub(n - 1) };
        let map = coverage(&u, n, cyclic).unwrap();
        let mut sum: u128 = 0;
        for start in 1..=windows {
            sum += window_expansion(&u, start, n, cyclic).unwrap().codes().len() as u128;
        }
        prop_assert_eq!(map.total(), sum);
    }

    #[test]
    fn window_size_is_alpha_to_the_distinct_wildcards(
        u in arb_word(10),
        n in 1usize..=3,
        cyclic: bool,
    ) {
        let len = u.len();
        let windows = if cyclic { len } else { len.saturating_sub(n - 1) };
        for start in 1..=windows {
            let distinct: std::collections::BTreeSet<usize> = (0..n)
                .map(|j| if cyclic { (start - 1 + j) % len } else { start - 1 + j })
                .filter(|&c| u.symbols()[c].is_diamond())
                .collect();
            let expansion = window_expansion(&u, start, n, cyclic).unwrap();
            let mut codes = expansion.codes().to_vec();
            codes.dedup();
            prop_assert_eq!(codes.len(), u.alphabet().size().pow(distinct.len() as u32));
        }
    }

    #[test]
    fn universality_is_invariant_under_symmetries(
        u in arb_word(10),
        n in 1usize..=3,
        cyclic: bool,
    ) {
        prop_assume!(cyclic || u.len() >= n);
        let base = is_universal(&u, n, cyclic).unwrap();
        prop_assert_eq!(is_universal(&u.reversed(), n, cyclic).unwrap(), base);
        let alpha = u.alphabet().size() as u8;
        let swap: Vec<u8> = (0..alpha).rev().collect();
        let rotate: Vec<u8> = (0..alpha).map(|x| (x + 1) % alpha).collect();
        for perm in [swap, rotate] {
            let permuted = u.permute_letters(&perm).unwrap();
            prop_assert_eq!(is_universal(&permuted, n, cyclic).unwrap(), base);
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_preserves_universality(u in arb_word(10), n in 1usize..=3) {
        prop_assume!(u.len() >= n);
        let c = canonicalize(&u);
        prop_assert_eq!(canonicalize(&c).render(), c.render());
        prop_assert_eq!(
            is_universal(&c, n, false).unwrap(),
            is_universal(&u, n, false).unwrap()
        );
    }

    #[test]
    fn cyclic_normal_form_ignores_rotation_reversal_relabelling(
        u in arb_word(8),
        shift in 0usize..8,
    ) {
        let len = u.len();
        let shift = shift % len;
        let mut symbols = u.symbols()[shift..].to_vec();
        symbols.extend_from_slice(&u.symbols()[..shift]);
        let rotated = PartialWord::new(symbols, u.alphabet()).unwrap();
        let canon = canonical_cyclic(&u).render();
        prop_assert_eq!(canonical_cyclic(&rotated).render(), canon.clone());
        prop_assert_eq!(canonical_cyclic(&u.reversed()).render(), canon.clone());
        let alpha = u.alphabet().size() as u8;
        let rotate: Vec<u8> = (0..alpha).map(|x| (x + 1) % alpha).collect();
        let permuted = u.permute_letters(&rotate).unwrap();
        prop_assert_eq!(canonical_cyclic(&permuted).render(), canon);
    }

    #[test]
    fn truncated_complement_extends_periodically(
        w in proptest::collection::vec(0u8..=1, 1..=6),
        n in 1usize..=20,
    ) {
        let out = truncated_complement(&w, n).unwrap();
        prop_assert_eq!(out.len(), n);
        for i in 0..n - 1 {
            prop_assert_eq!(out[i], w[i % w.len()]);
        }
        prop_assert_eq!(out[n - 1], w[(n - 1) % w.len()] ^ 1);
    }

    #[test]
    fn engine_and_oracle_agree_on_linear_frames(template in arb_linear_frame()) {
        let n = template.n();
        let spec = SearchSpec::new(template);
        let fast = exhaustive_search(&spec).unwrap();
        let slow = brute_force_oracle(&spec).unwrap();
        prop_assert!(fast.exhausted && slow.exhausted);
        prop_assert_eq!(renders(&fast), renders(&slow));
        for w in &fast.witnesses {
            prop_assert!(is_universal(w, n, false).unwrap());
            prop_assert!(spec.template().matches(w));
        }
    }

    #[test]
    fn engine_and_oracle_agree_on_cyclic_frames(
        mask in 0u8..64,
        letters in proptest::collection::vec(0u8..=1, 6),
    ) {
        // The wildcard orbit {1, 5} is closed, so free cells stay letter
        // slots under both routes.
        let free_cells = [2usize, 3, 4, 6, 7, 8];
        let mut cells = vec![Cell::Free; 8];
        cells[0] = Cell::Diamond;
        cells[4] = Cell::Diamond;
        for (i, &pos) in free_cells.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cells[pos - 1] = Cell::Fixed(letters[i]);
            }
        }
        let template = DiamondTemplate::new(Alphabet::BINARY, 4, true, cells).unwrap();
        let spec = SearchSpec::new(template);
        let fast = exhaustive_search(&spec).unwrap();
        let slow = brute_force_oracle(&spec).unwrap();
        prop_assert_eq!(renders(&fast), renders(&slow));
        for w in &fast.witnesses {
            prop_assert!(is_universal(w, 4, true).unwrap());
        }
    }
}
