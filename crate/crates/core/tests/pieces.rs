mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use small_overlap::oracle::{oracle_min_piece_count, oracle_pieces};
use small_overlap::pieces::{classify_with, RepeatPolicy};
use small_overlap::{classify, compute_pieces, factorize_xyz, Error, Letter, Presentation, WeakN, Word};

use common::{pres, w, P1, P2, P3};

fn names(p: &Presentation, words: &[Word]) -> Vec<String> {
    words.iter().map(|x| p.format_word(x)).collect()
}

#[test]
fn piece_sets() {
    let p1 = pres(P1);
    assert_eq!(names(&p1, &compute_pieces(&p1).pieces()), ["a", "b", "c", "d"]);
    let p3 = pres(P3);
    assert_eq!(names(&p3, &compute_pieces(&p3).pieces()), ["a", "b"]);
    let free = pres("gens: a b c d\nrel: ab = cd\n");
    assert!(compute_pieces(&free).is_empty());
}

#[test]
fn xyz_factorizations() {
    let p1 = pres(P1);
    let table = compute_pieces(&p1);
    let info = factorize_xyz(&p1, &table, &w(&p1, "abcd")).unwrap();
    assert_eq!((info.x(), info.y(), info.z()), (&w(&p1, "a")[..], &w(&p1, "bc")[..], &w(&p1, "d")[..]));
    let info = factorize_xyz(&p1, &table, &w(&p1, "badc")).unwrap();
    assert_eq!((info.x(), info.y(), info.z()), (&w(&p1, "b")[..], &w(&p1, "ad")[..], &w(&p1, "c")[..]));

    let p3 = pres(P3);
    let table = compute_pieces(&p3);
    let info = factorize_xyz(&p3, &table, &w(&p3, "aba")).unwrap();
    assert_eq!((info.x(), info.y(), info.z()), (&w(&p3, "a")[..], &w(&p3, "b")[..], &w(&p3, "a")[..]));
    assert!(matches!(factorize_xyz(&p3, &table, &w(&p3, "b")), Err(Error::NotWeaklyC3(_))));
}

#[test]
fn min_piece_counts() {
    let p1 = pres(P1);
    assert_eq!(compute_pieces(&p1).min_piece_count(&w(&p1, "abcd")), Some(4));
    assert_eq!(compute_pieces(&p1).min_piece_count(&[]), Some(0));
    let p3 = pres(P3);
    assert_eq!(compute_pieces(&p3).min_piece_count(&w(&p3, "aba")), Some(3));
}

#[test]
fn classifications() {
    let r1 = classify(&pres(P1));
    assert_eq!(r1.weak_n, WeakN::Finite(4));
    assert!(r1.strongly(4));
    let r2 = classify(&pres(P2));
    assert_eq!(r2.weak_n, WeakN::Finite(4));
    assert!(!r2.strongly(4));
    assert_eq!(classify(&pres(P3)).weak_n, WeakN::Finite(1));
    let free = classify(&pres("gens: a b c d\nrel: ab = cd\n"));
    assert_eq!(free.weak_n, WeakN::Infinite);
    assert_eq!(free.weak_n.to_string(), "inf");
}

#[test]
fn equal_sided_relation_policy() {
    let p = pres("gens: a b c d e f g h\nrel: abcd = abcd\nrel: efgh = hgfe\n");
    let table = compute_pieces(&p);
    let literal = classify_with(&p, &table, RepeatPolicy::Literal);
    assert!(literal.repeated_words);
    assert!(!literal.strongly(4));
    let collapsed = classify_with(&p, &table, RepeatPolicy::CollapseTrivial);
    assert!(!collapsed.repeated_words);
    assert_eq!(literal.weak_n, collapsed.weak_n);
}

#[test]
fn unfactorable_words_do_not_bound_n() {
    // `abcd` shares nothing, so only `aeae` (two pieces `ae`) counts.
    let p = pres("gens: a b c d e\nrel: abcd = aeae\n");
    let report = classify(&p);
    assert_eq!(report.weak_n, WeakN::Finite(2));
    assert!(report.per_word.iter().any(|(_, k)| k.is_none()));
}

fn random_presentation(seed: u64) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=4usize);
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let rels = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut word = || {
                let len = rng.gen_range(1..=10);
                Word::new((0..len).map(|_| rng.gen_range(0..n) as Letter).collect())
            };
            (word(), word())
        })
        .collect();
    Presentation::new(names, rels).unwrap()
}

/// Greedy factorization by longest piece prefix.
fn greedy_count(p: &Presentation, w: &[Letter]) -> Option<usize> {
    let table = compute_pieces(p);
    let mut rest = w;
    let mut count = 0;
    while !rest.is_empty() {
        let k = table.prefix_run(rest);
        if k == 0 {
            return None;
        }
        rest = &rest[k..];
        count += 1;
    }
    Some(count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pieces_match_site_counting(seed in any::<u64>()) {
        let p = random_presentation(seed);
        let got: HashSet<Word> = compute_pieces(&p).pieces().into_iter().collect();
        prop_assert_eq!(got, oracle_pieces(&p));
    }

    #[test]
    fn pieces_are_factor_closed(seed in any::<u64>()) {
        let p = random_presentation(seed);
        let table = compute_pieces(&p);
        for piece in table.pieces() {
            prop_assert!(piece.len() <= table.max_piece_len());
            for i in 0..piece.len() {
                for j in i + 1..=piece.len() {
                    prop_assert!(table.is_piece(&piece[i..j]));
                }
            }
        }
    }

    #[test]
    fn dp_matches_brute_force_and_greedy(seed in any::<u64>(), word_seed in any::<u64>()) {
        let p = random_presentation(seed);
        let table = compute_pieces(&p);
        let pieces = oracle_pieces(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(word_seed);
        let alphabet: Vec<Letter> = (0..p.alphabet_size() as Letter).collect();
        let mut words: Vec<Word> = p.relation_words().to_vec();
        for _ in 0..8 {
            let len = rng.gen_range(0..=10);
            words.push(Word::new((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()));
        }
        for x in &words {
            let dp = table.min_piece_count(x);
            prop_assert_eq!(dp, oracle_min_piece_count(&pieces, x).unwrap());
            prop_assert_eq!(dp, greedy_count(&p, x));
        }
    }

    #[test]
    fn weak_c4_iff_middle_words(seed in any::<u64>()) {
        let p = random_presentation(seed);
        let table = compute_pieces(&p);
        let by_xyz = p.relation_words().iter().all(|r| match factorize_xyz(&p, &table, r) {
            Ok(info) => !info.y().is_empty() && !table.is_piece(info.y()) && info.x().len() + info.z().len() < r.len(),
            Err(_) => false,
        });
        prop_assert_eq!(classify(&p).weakly(4), by_xyz);
    }

    #[test]
    fn xyz_concatenates(seed in any::<u64>()) {
        let p = random_presentation(seed);
        let table = compute_pieces(&p);
        for r in p.relation_words() {
            if let Ok(info) = factorize_xyz(&p, &table, r) {
                prop_assert_eq!(info.x().len(), table.prefix_run(r));
                prop_assert_eq!(info.z().len(), table.suffix_run(r));
                let joined: Vec<Letter> = [info.x(), info.y(), info.z()].concat();
                prop_assert_eq!(&joined[..], &r[..]);
            }
        }
    }
}
