use proptest::prelude::*;
use trace_kernel::{Chain, CyclicWord, Word};

fn word() -> impl Strategy<Value = Word> {
    "[aAbB]{0,14}".prop_map(|s| s.parse::<Word>().unwrap())
}

/// Independent canonical form on plain strings: free reduction with a
/// stack, trimming of inverse ends, then the least of all rotations under
/// a < A < b < B.
fn oracle_canonical(s: &str) -> String {
    let rank = |c: char| "aAbB".find(c).unwrap();
    let inverse = |x: usize, y: usize| x / 2 == y / 2 && x != y;
    let mut stack: Vec<usize> = Vec::new();
    for c in s.chars().map(rank) {
        match stack.last() {
            Some(&top) if inverse(top, c) => {
                stack.pop();
            }
            _ => stack.push(c),
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && inverse(stack[lo], stack[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let core = &stack[lo..hi];
    let best = (0..core.len().max(1))
        .map(|k| {
            let k = k.min(core.len());
            core[k..]
                .iter()
                .chain(&core[..k])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default();
    best.into_iter()
        .map(|i| "aAbB".as_bytes()[i] as char)
        .collect()
}

#[test]
fn canonical_form_matches_oracle_exhaustively() {
    let mut words = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..8 {
        frontier = frontier
            .iter()
            .flat_map(|w| "aAbB".chars().map(move |c| format!("{w}{c}")))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    assert_eq!(words.len(), (4usize.pow(9) - 1) / 3);
    for s in &words {
        let ours = s.parse::<Word>().unwrap().canonical_class().to_string();
        assert_eq!(ours, oracle_canonical(s), "word {s:?}");
    }
}

proptest! {
    #[test]
    fn parsing_reduces_idempotently(w in word()) {
        let again: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(&again, &w);
        prop_assert_eq!(Word::from_letters(w.letters()), w);
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!(w.multiply(&w.invert()).is_identity());
        prop_assert!(w.invert().multiply(&w).is_identity());
    }

    #[test]
    fn multiplication_is_associative(u in word(), v in word(), x in word()) {
        prop_assert_eq!(u.multiply(&v).multiply(&x), u.multiply(&v.multiply(&x)));
    }

    #[test]
    fn conjugates_share_a_class(w in word(), g in word()) {
        let c = w.conjugate_by(&g);
        prop_assert!(c.is_conjugate_to(&w));
        prop_assert_eq!(c.canonical_class(), w.canonical_class());
    }

    #[test]
    fn class_representative_is_cyclically_reduced(w in word()) {
        let class = w.canonical_class();
        let rep = class.representative();
        prop_assert!(rep.is_cyclically_reduced());
        prop_assert_eq!(rep.canonical_class(), class.clone());
        prop_assert_eq!(class.len() as u64, w.cyclic_reduce().letter_len());
    }

    #[test]
    fn abelianization_is_a_homomorphism(u in word(), v in word()) {
        prop_assert_eq!(u.multiply(&v).abelianize(), u.abelianize() + v.abelianize());
        prop_assert_eq!(u.conjugate_by(&v).abelianize(), u.abelianize());
    }

    #[test]
    fn class_text_round_trips(w in word()) {
        let class = w.canonical_class();
        let parsed: CyclicWord = class.to_string().parse().unwrap();
        prop_assert_eq!(parsed, class);
    }

    #[test]
    fn chain_terms_cancel(u in word(), v in word(), k in -5i64..5) {
        let mut c = Chain::zero();
        c.add_word(&u, k);
        c.add_word(&v, 3);
        c.add_word(&u.conjugate_by(&v), -k);
        c.add_word(&v, -3);
        prop_assert!(c.is_zero());
        prop_assert_eq!(c.support_size(), 0);
    }

    #[test]
    fn chain_json_round_trips(u in word(), v in word(), k in -1000i64..1000) {
        let mut c = Chain::term(&u, k);
        c.add_word(&v, 7);
        let back = Chain::from_json(&c.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn block_sequences_have_one_trailing_zero() {
    for s in ["aba", "abbabbba", "abbbbaba"] {
        let seq = s.parse::<Word>().unwrap().b_block_sequence().unwrap();
        assert_eq!(seq.iter().filter(|&&x| x == 0).count(), 1, "{s}");
        assert_eq!(seq.last(), Some(&0));
    }
    assert_eq!(
        "aa".parse::<Word>().unwrap().b_block_sequence().unwrap(),
        vec![0, 0]
    );
    assert!("ba".parse::<Word>().unwrap().b_block_sequence().is_err());
}
