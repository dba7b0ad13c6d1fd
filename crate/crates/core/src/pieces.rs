//! Pieces, maximal piece prefixes/suffixes, and C(n) classification.
//!
//! A piece is a non-empty word occurring at two distinct sites among the
//! distinct relation words: in two different words, or at two different
//! (possibly overlapping) positions of one word. The empty word counts as a
//! piece but is never stored.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

const SEPARATOR: Letter = Letter::MAX;

/// Factor-closed set of pieces stored as a trie; every node is a piece.
#[derive(Debug, Clone)]
pub struct PieceTable {
    edges: HashMap<(u32, Letter), u32>,
    nodes: usize,
    max_piece_len: usize,
}

impl PieceTable {
    fn child(&self, node: u32, c: Letter) -> Option<u32> {
        self.edges.get(&(node, c)).copied()
    }

    /// Number of non-empty pieces.
    pub fn len(&self) -> usize {
        self.nodes - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 1
    }

    pub fn max_piece_len(&self) -> usize {
        self.max_piece_len
    }

    /// Membership; `ε` is a piece.
    pub fn is_piece(&self, w: &[Letter]) -> bool {
        self.prefix_run(w) == w.len()
    }

    /// Length of the longest prefix of `w` that is a piece.
    pub fn prefix_run(&self, w: &[Letter]) -> usize {
        let mut node = 0;
        for (i, &c) in w.iter().enumerate() {
            match self.child(node, c) {
                Some(next) => node = next,
                None => return i,
            }
        }
        w.len()
    }

    /// Length of the longest suffix of `w` that is a piece.
    pub fn suffix_run(&self, w: &[Letter]) -> usize {
        (0..w.len()).find(|&start| self.prefix_run(&w[start..]) == w.len() - start).map_or(0, |start| w.len() - start)
    }

    /// All non-empty pieces in shortlex order.
    pub fn pieces(&self) -> Vec<Word> {
        let mut children: HashMap<u32, Vec<(Letter, u32)>> = HashMap::new();
        for (&(parent, c), &child) in &self.edges {
            children.entry(parent).or_default().push((c, child));
        }
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(0u32, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            if let Some(kids) = children.get(&node) {
                for &(c, child) in kids {
                    let mut next = path.clone();
                    next.push(c);
                    stack.push((child, next));
                }
            }
            if !path.is_empty() {
                out.push(Word::new(path));
            }
        }
        out.sort();
        out
    }

    /// Minimal number of non-empty pieces whose product is `w`; `Some(0)`
    /// for the empty word, `None` when no factorization exists.
    pub fn min_piece_count(&self, w: &[Letter]) -> Option<usize> {
        let mut best: Vec<Option<usize>> = vec![None; w.len() + 1];
        best[0] = Some(0);
        for i in 0..w.len() {
            let Some(here) = best[i] else { continue };
            let mut node = 0;
            for (k, &c) in w[i..].iter().enumerate() {
                match self.child(node, c) {
                    Some(next) => node = next,
                    None => break,
                }
                let slot = &mut best[i + k + 1];
                if slot.is_none_or(|b| here + 1 < b) {
                    *slot = Some(here + 1);
                }
            }
        }
        best[w.len()]
    }
}

/// Computes the pieces of `pres` in time quadratic in the total length of
/// its distinct relation words.
///
/// For every pair of positions in the separator-joined relation words the
/// length of their longest common extension is computed diagonal by
/// diagonal. The longest piece starting at position `i` is the maximum of
/// those lengths over all partners of `i`; its prefixes are exactly the
/// pieces occurring at `i`.
pub fn compute_pieces(pres: &Presentation) -> PieceTable {
    let mut text: Vec<Letter> = Vec::with_capacity(pres.total_length() + pres.relation_words().len());
    for w in pres.relation_words() {
        text.extend_from_slice(w);
        text.push(SEPARATOR);
    }
    let n = text.len();
    let mut longest = vec![0usize; n];
    for d in 1..n {
        let mut run = 0;
        for i in (0..n - d).rev() {
            let (a, b) = (text[i], text[i + d]);
            if a == b && a != SEPARATOR {
                run += 1;
                longest[i] = longest[i].max(run);
                longest[i + d] = longest[i + d].max(run);
            } else {
                run = 0;
            }
        }
    }

    let mut table = PieceTable { edges: HashMap::new(), nodes: 1, max_piece_len: 0 };
    for (i, &len) in longest.iter().enumerate() {
        table.max_piece_len = table.max_piece_len.max(len);
        let mut node = 0;
        for &c in &text[i..i + len] {
            node = match table.child(node, c) {
                Some(next) => next,
                None => {
                    let id = table.nodes as u32;
                    table.nodes += 1;
                    table.edges.insert((node, c), id);
                    id
                }
            };
        }
    }
    table
}

/// A relation word split as `X·Y·Z`: maximal piece prefix, middle word and
/// maximal piece suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWordInfo {
    pub word: Word,
    pub word_id: usize,
    pub class_id: usize,
    x_len: usize,
    z_len: usize,
}

impl RelationWordInfo {
    pub fn x(&self) -> &[Letter] {
        &self.word[..self.x_len]
    }

    pub fn y(&self) -> &[Letter] {
        &self.word[self.x_len..self.word.len() - self.z_len]
    }

    pub fn z(&self) -> &[Letter] {
        &self.word[self.word.len() - self.z_len..]
    }

    /// The relation prefix pattern `X·Y`.
    pub fn xy(&self) -> &[Letter] {
        &self.word[..self.word.len() - self.z_len]
    }
}

/// Splits relation word `r` into `X·Y·Z`.
pub fn factorize_xyz(pres: &Presentation, pieces: &PieceTable, r: &[Letter]) -> Result<RelationWordInfo> {
    let word_id = pres.word_id(r).ok_or_else(|| Error::NotRelationWord(Word::from(r)))?;
    let x_len = pieces.prefix_run(r);
    let z_len = pieces.suffix_run(r);
    if x_len + z_len >= r.len() {
        return Err(Error::NotWeaklyC3(Word::from(r)));
    }
    Ok(RelationWordInfo { word: Word::from(r), word_id, class_id: pres.class_id(word_id), x_len, z_len })
}

/// How the repeated-relation-word test treats a relation `(u, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepeatPolicy {
    /// Read the relation sequence literally: `(u, u)` lists `u` twice.
    #[default]
    Literal,
    /// A relation whose sides coincide contributes its word once.
    CollapseTrivial,
}

/// Largest `n` for which a presentation is weakly C(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeakN {
    Finite(usize),
    Infinite,
}

impl WeakN {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            WeakN::Finite(k) => k >= n,
            WeakN::Infinite => true,
        }
    }
}

impl fmt::Display for WeakN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeakN::Finite(k) => write!(f, "{k}"),
            WeakN::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnReport {
    pub weak_n: WeakN,
    /// Some relation word occurs more than once in the relation sequence.
    pub repeated_words: bool,
    /// Minimal piece count of every distinct relation word.
    pub per_word: Vec<(Word, Option<usize>)>,
}

impl CnReport {
    pub fn weakly(&self, n: usize) -> bool {
        self.weak_n.at_least(n)
    }

    pub fn strongly(&self, n: usize) -> bool {
        !self.repeated_words && self.weakly(n)
    }
}

impl fmt::Display for CnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weak_n={} strong_c4={}", self.weak_n, self.strongly(4))
    }
}

pub fn classify(pres: &Presentation) -> CnReport {
    classify_with(pres, &compute_pieces(pres), RepeatPolicy::default())
}

pub fn classify_with(pres: &Presentation, pieces: &PieceTable, policy: RepeatPolicy) -> CnReport {
    let per_word: Vec<(Word, Option<usize>)> =
        pres.relation_words().iter().map(|w| (w.clone(), pieces.min_piece_count(w))).collect();
    // A word with no piece factorization never limits n.
    let weak_n = per_word.iter().filter_map(|(_, k)| *k).min().map_or(WeakN::Infinite, WeakN::Finite);

    let mut seen = std::collections::HashSet::new();
    let repeated_words = pres.relations().iter().any(|r| {
        if r.lhs == r.rhs {
            match policy {
                RepeatPolicy::Literal => true,
                RepeatPolicy::CollapseTrivial => !seen.insert(&r.lhs),
            }
        } else {
            !seen.insert(&r.lhs) | !seen.insert(&r.rhs)
        }
    });
    CnReport { weak_n, repeated_words, per_word }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use std::collections::BTreeSet;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    /// Counts occurrence sites of every factor directly.
    fn naive_pieces(p: &Presentation) -> BTreeSet<Word> {
        let mut sites: HashMap<Vec<Letter>, usize> = HashMap::new();
        for w in p.relation_words() {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    *sites.entry(w[i..j].to_vec()).or_default() += 1;
                }
            }
        }
        sites.into_iter().filter(|(_, n)| *n >= 2).map(|(f, _)| Word::new(f)).collect()
    }

    fn words(p: &Presentation, list: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = list.iter().map(|s| p.parse_word(s).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn pieces_of_fixtures() {
        let p1 = pres("gens: a b c d\nrel: abcd = badc");
        assert_eq!(compute_pieces(&p1).pieces(), words(&p1, &["a", "b", "c", "d"]));

        let p3 = pres("gens: a b\nrel: aba = b");
        assert_eq!(compute_pieces(&p3).pieces(), words(&p3, &["a", "b"]));

        let disjoint = pres("gens: a b c d\nrel: ab = cd");
        let t = compute_pieces(&disjoint);
        assert!(t.is_empty());
        assert!(t.is_piece(&[]));
    }

    #[test]
    fn overlapping_occurrences_within_one_word() {
        let p = pres("gens: a b\nrel: aaab = b");
        // "aa" occurs at positions 0 and 1 of aaab.
        assert_eq!(compute_pieces(&p).pieces(), naive_pieces(&p).into_iter().collect::<Vec<_>>());
        assert!(compute_pieces(&p).is_piece(&[0, 0]));
    }

    #[test]
    fn xyz_factorization() {
        let p1 = pres("gens: a b c d\nrel: abcd = badc");
        let t = compute_pieces(&p1);
        let info = factorize_xyz(&p1, &t, &p1.parse_word("abcd").unwrap()).unwrap();
        assert_eq!((info.x(), info.y(), info.z()), (&[0][..], &[1, 2][..], &[3][..]));
        let info = factorize_xyz(&p1, &t, &p1.parse_word("badc").unwrap()).unwrap();
        assert_eq!((info.x(), info.y(), info.z()), (&[1][..], &[0, 3][..], &[2][..]));

        let p3 = pres("gens: a b\nrel: aba = b");
        let t3 = compute_pieces(&p3);
        let aba = factorize_xyz(&p3, &t3, &[0, 1, 0]).unwrap();
        assert_eq!((aba.x(), aba.y(), aba.z()), (&[0][..], &[1][..], &[0][..]));
        assert_eq!(factorize_xyz(&p3, &t3, &[1]), Err(Error::NotWeaklyC3(Word::new(vec![1]))));
        assert_eq!(factorize_xyz(&p3, &t3, &[1, 1]), Err(Error::NotRelationWord(Word::new(vec![1, 1]))));
    }

    #[test]
    fn min_piece_counts() {
        let p1 = pres("gens: a b c d\nrel: abcd = badc");
        let t1 = compute_pieces(&p1);
        assert_eq!(t1.min_piece_count(&[0, 1, 2, 3]), Some(4));
        assert_eq!(t1.min_piece_count(&[]), Some(0));

        let p3 = pres("gens: a b\nrel: aba = b");
        assert_eq!(compute_pieces(&p3).min_piece_count(&[0, 1, 0]), Some(3));

        let disjoint = pres("gens: a b c d\nrel: ab = cd");
        assert_eq!(compute_pieces(&disjoint).min_piece_count(&[0, 1]), None);
    }

    #[test]
    fn classification_of_fixtures() {
        let p1 = pres("gens: a b c d\nrel: abcd = badc");
        let r1 = classify(&p1);
        assert_eq!(r1.weak_n, WeakN::Finite(4));
        assert!(r1.strongly(4));

        let p2 = pres("gens: a b c d\nrel: abcd = badc\nrel: abcd = dacb");
        let r2 = classify(&p2);
        assert_eq!(r2.weak_n, WeakN::Finite(4));
        assert!(r2.weakly(4));
        assert!(!r2.strongly(4));
        assert!(!r2.strongly(2));

        let p3 = pres("gens: a b\nrel: aba = b");
        let r3 = classify(&p3);
        assert_eq!(r3.weak_n, WeakN::Finite(1));
        assert_eq!(r3.to_string(), "weak_n=1 strong_c4=false");

        let free = pres("gens: a b c d\nrel: ab = cd");
        assert_eq!(classify(&free).weak_n, WeakN::Infinite);
        assert_eq!(classify(&free).to_string(), "weak_n=inf strong_c4=true");
    }

    #[test]
    fn trivial_relation_repeat_policy() {
        let p = pres("gens: a b c d\nrel: abcd = abcd");
        let t = compute_pieces(&p);
        assert!(classify_with(&p, &t, RepeatPolicy::Literal).repeated_words);
        assert!(!classify_with(&p, &t, RepeatPolicy::CollapseTrivial).repeated_words);
        let p = pres("gens: a b c d\nrel: abcd = abcd\nrel: abcd = dcba");
        assert!(classify_with(&p, &compute_pieces(&p), RepeatPolicy::CollapseTrivial).repeated_words);
    }

    #[test]
    fn pieces_match_naive_on_assorted_presentations() {
        for text in [
            "gens: a b c\nrel: abcabc = cba\nrel: bca = aaa",
            "gens: a b\nrel: abababa = bb",
            "gens: a b c d e\nrel: abcde = edcba = aecbd",
            "gens: x y\nrel: x = y",
        ] {
            let p = pres(text);
            let fast: BTreeSet<Word> = compute_pieces(&p).pieces().into_iter().collect();
            assert_eq!(fast, naive_pieces(&p), "{text}");
        }
    }
}
