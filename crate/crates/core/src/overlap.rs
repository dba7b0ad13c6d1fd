//! Relation prefixes, overlap prefixes, cleanliness and p-activity.
//!
//! Everything here is driven by the set of `X·Y` patterns, one per distinct
//! relation word. Under weak C(3) no such pattern is a prefix of another
//! (otherwise it would be a piece longer than its word's maximal piece
//! prefix), so at any position of a word at most one pattern matches.

use crate::error::Result;
use crate::pieces::{compute_pieces, factorize_xyz, PieceTable, RelationWordInfo};
use crate::presentation::Presentation;
use crate::word::{shortlex, Letter, Letters, Prepended, Word};

#[derive(Debug, Clone, Default)]
struct PatternNode {
    next: Vec<(Letter, u32)>,
    terminal: Option<usize>,
}

/// Trie over the `X·Y` patterns.
#[derive(Debug, Clone)]
struct PatternTrie {
    nodes: Vec<PatternNode>,
}

impl PatternTrie {
    fn new() -> Self {
        PatternTrie { nodes: vec![PatternNode::default()] }
    }

    fn insert(&mut self, pattern: &[Letter], id: usize) {
        let mut node = 0usize;
        for &c in pattern {
            node = match self.nodes[node].next.iter().find(|(l, _)| *l == c) {
                Some(&(_, child)) => child as usize,
                None => {
                    self.nodes.push(PatternNode::default());
                    let child = self.nodes.len() - 1;
                    self.nodes[node].next.push((c, child as u32));
                    child
                }
            };
            debug_assert!(self.nodes[node].terminal.is_none() || node == 0, "XY pattern is a prefix of another");
        }
        debug_assert!(self.nodes[node].next.is_empty(), "XY pattern is a prefix of another");
        self.nodes[node].terminal = Some(id);
    }

    fn match_at<L: Letters + ?Sized>(&self, text: &L, pos: usize) -> Option<usize> {
        let mut node = 0usize;
        let mut i = pos;
        loop {
            if let Some(id) = self.nodes[node].terminal {
                return Some(id);
            }
            if i >= text.len() {
                return None;
            }
            let c = text.at(i);
            node = self.nodes[node].next.iter().find(|(l, _)| *l == c)?.1 as usize;
            i += 1;
        }
    }
}

/// A relation prefix `a·X·Y` of some word: `a` has length `start`, and
/// `X·Y` belongs to relation word `word_id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationPrefix {
    pub start: usize,
    pub word_id: usize,
}

/// One non-terminal link `Xᵢ·Yᵢ′` of an overlap prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapSegment {
    pub word_id: usize,
    pub x: Word,
    /// Proper, non-empty prefix of the word's middle word.
    pub y_prime: Word,
}

/// Factorization `b·X₁Y₁′·…·Xₙ₋₁Yₙ₋₁′·XₙYₙ` of an overlap prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapPrefixRecord {
    pub b: Word,
    pub segments: Vec<OverlapSegment>,
    /// Relation word whose full `X·Y` ends the prefix.
    pub terminal: usize,
    pub terminal_x: Word,
    pub terminal_y: Word,
    pub total_len: usize,
    pub clean: bool,
}

/// Precomputed tables for the overlap predicates of one presentation.
#[derive(Debug, Clone)]
pub struct OverlapIndex {
    pieces: PieceTable,
    infos: Vec<RelationWordInfo>,
    patterns: PatternTrie,
    max_xy_len: usize,
    /// Per complement class: the distinct non-empty `Z` words of its
    /// members, shortlex ordered.
    class_suffixes: Vec<Vec<Word>>,
    class_members: Vec<Vec<usize>>,
}

impl OverlapIndex {
    /// Fails with `NotWeaklyC3` if some relation word has no non-empty
    /// middle word.
    pub fn new(pres: &Presentation) -> Result<Self> {
        Self::with_pieces(pres, compute_pieces(pres))
    }

    pub fn with_pieces(pres: &Presentation, pieces: PieceTable) -> Result<Self> {
        let infos = pres
            .relation_words()
            .iter()
            .map(|w| factorize_xyz(pres, &pieces, w))
            .collect::<Result<Vec<_>>>()?;
        let mut patterns = PatternTrie::new();
        for info in &infos {
            patterns.insert(info.xy(), info.word_id);
        }
        let max_xy_len = infos.iter().map(|i| i.xy().len()).max().unwrap_or(0);
        let class_members: Vec<Vec<usize>> = (0..pres.num_classes()).map(|c| pres.class_members(c).to_vec()).collect();
        let class_suffixes = class_members
            .iter()
            .map(|members| {
                let mut zs: Vec<Word> =
                    members.iter().map(|&m| Word::from(infos[m].z())).filter(|z| !z.is_empty()).collect();
                zs.sort();
                zs.dedup();
                zs
            })
            .collect();
        Ok(OverlapIndex { pieces, infos, patterns, max_xy_len, class_suffixes, class_members })
    }

    pub fn pieces(&self) -> &PieceTable {
        &self.pieces
    }

    pub fn info(&self, word_id: usize) -> &RelationWordInfo {
        &self.infos[word_id]
    }

    pub fn infos(&self) -> &[RelationWordInfo] {
        &self.infos
    }

    pub fn max_xy_len(&self) -> usize {
        self.max_xy_len
    }

    /// Word ids of the complements of `word_id`, itself included.
    pub fn complements(&self, word_id: usize) -> &[usize] {
        &self.class_members[self.infos[word_id].class_id]
    }

    /// Distinct non-empty maximal piece suffixes among the complements of
    /// `word_id`, shortlex ordered.
    pub fn complement_suffixes(&self, word_id: usize) -> &[Word] {
        &self.class_suffixes[self.infos[word_id].class_id]
    }

    /// The relation word whose `X·Y` occurs in `u` at `pos`, if any.
    pub fn xy_at<L: Letters + ?Sized>(&self, u: &L, pos: usize) -> Option<usize> {
        self.patterns.match_at(u, pos)
    }

    /// Every relation prefix of `u`, ordered by where its `X·Y` ends.
    pub fn relation_prefixes<L: Letters + ?Sized>(&self, u: &L) -> Vec<RelationPrefix> {
        let mut out: Vec<RelationPrefix> =
            (0..u.len()).filter_map(|start| self.xy_at(u, start).map(|word_id| RelationPrefix { start, word_id })).collect();
        out.sort_by(|a, b| {
            self.end_of(a).cmp(&self.end_of(b)).then_with(|| shortlex(self.infos[a.word_id].xy(), self.infos[b.word_id].xy()))
        });
        out
    }

    pub fn end_of(&self, prefix: &RelationPrefix) -> usize {
        prefix.start + self.infos[prefix.word_id].xy().len()
    }

    /// The shortest prefix of `u` of the form `a·X·Y`.
    pub fn find_shortest_relation_prefix<L: Letters + ?Sized>(&self, u: &L) -> Option<RelationPrefix> {
        let mut best: Option<RelationPrefix> = None;
        for start in 0..u.len() {
            if let Some(found) = best {
                // Nothing starting here can end earlier.
                if start >= self.end_of(&found) {
                    break;
                }
            }
            if let Some(word_id) = self.xy_at(u, start) {
                let cand = RelationPrefix { start, word_id };
                let better = match best {
                    None => true,
                    Some(b) => {
                        let (ce, be) = (self.end_of(&cand), self.end_of(&b));
                        ce < be
                            || (ce == be && shortlex(self.infos[word_id].xy(), self.infos[b.word_id].xy()).is_lt())
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// Whether the relation prefix `a·X·Y` (with `|a| = prefix.start`) of
    /// `u` is clean: no `a·X·Y′·X₁·Y₁` is a prefix of `u` for a proper,
    /// non-empty prefix `Y′` of `Y`.
    pub fn is_clean<L: Letters + ?Sized>(&self, u: &L, prefix: RelationPrefix) -> bool {
        let info = &self.infos[prefix.word_id];
        let base = prefix.start + info.x().len();
        (1..info.y().len()).all(|k| self.xy_at(u, base + k).is_none())
    }

    /// The relation word `R` such that `u = X_R·Y_R·u′` with `X_R·Y_R` a
    /// clean overlap prefix, if there is one.
    pub fn leading_clean_overlap_prefix<L: Letters + ?Sized>(&self, u: &L) -> Option<usize> {
        let word_id = self.xy_at(u, 0)?;
        self.is_clean(u, RelationPrefix { start: 0, word_id }).then_some(word_id)
    }

    /// Whether `p·u` has a relation prefix `a·X·Y` with `|a| < |p|`.
    ///
    /// Only the first `max_xy_len` letters of `u` can matter.
    pub fn is_p_active<L: Letters + ?Sized>(&self, p: &[Letter], u: &L) -> bool {
        self.is_p_active_at(p, u, 0)
    }

    /// As [`is_p_active`](Self::is_p_active) for the suffix of `u` starting
    /// at `skip`.
    pub fn is_p_active_at<L: Letters + ?Sized>(&self, p: &[Letter], u: &L, skip: usize) -> bool {
        let view = Prepended { head: p, tail: u, skip };
        (0..p.len()).any(|start| self.xy_at(&view, start).is_some())
    }

    /// Reconstructs the overlap-prefix factorization of the relation prefix
    /// `prefix` of `u`, choosing the shortest `b`. Returns `None` when the
    /// relation prefix is not an overlap prefix.
    pub fn overlap_prefix_record(&self, u: &[Letter], prefix: RelationPrefix) -> Option<OverlapPrefixRecord> {
        let end = self.end_of(&prefix);
        let whole = &u[..end];
        // Earliest start of an X·Y occurrence lying entirely inside the prefix.
        let first_occurrence = (0..end)
            .find(|&s| self.xy_at(whole, s).is_some())
            .expect("the terminal X·Y lies inside the prefix");

        // next[t]: length and word of the link X·Y′ starting at t from which
        // the terminal X·Y is reachable.
        let mut next: Vec<Option<(usize, usize)>> = vec![None; prefix.start + 1];
        let mut reachable = vec![false; prefix.start + 1];
        reachable[prefix.start] = true;
        for t in (0..prefix.start).rev() {
            'words: for info in &self.infos {
                let (xl, xyl) = (info.x().len(), info.xy().len());
                for k in (xl + 1)..xyl {
                    if t + k > prefix.start {
                        break;
                    }
                    if reachable[t + k] && whole[t..t + k] == info.xy()[..k] {
                        next[t] = Some((k, info.word_id));
                        reachable[t] = true;
                        break 'words;
                    }
                }
            }
        }
        let b_len = (0..=prefix.start.min(first_occurrence)).find(|&t| reachable[t])?;

        let mut segments = Vec::new();
        let mut t = b_len;
        while t < prefix.start {
            let (k, word_id) = next[t].expect("reachable position has a link");
            let info = &self.infos[word_id];
            segments.push(OverlapSegment {
                word_id,
                x: Word::from(info.x()),
                y_prime: Word::from(&info.xy()[info.x().len()..k]),
            });
            t += k;
        }
        let terminal = &self.infos[prefix.word_id];
        Some(OverlapPrefixRecord {
            b: Word::from(&u[..b_len]),
            segments,
            terminal: prefix.word_id,
            terminal_x: Word::from(terminal.x()),
            terminal_y: Word::from(terminal.y()),
            total_len: end,
            clean: self.is_clean(u, prefix),
        })
    }

    /// All overlap prefixes of `u`, shortest first.
    pub fn overlap_prefixes(&self, u: &[Letter]) -> Vec<OverlapPrefixRecord> {
        self.relation_prefixes(u).into_iter().filter_map(|rp| self.overlap_prefix_record(u, rp)).collect()
    }

    /// Whether `u` has any clean overlap prefix (not necessarily at the
    /// start of `u`).
    pub fn has_clean_overlap_prefix(&self, u: &[Letter]) -> bool {
        self.overlap_prefixes(u).iter().any(|r| r.clean)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn setup(text: &str) -> (Presentation, OverlapIndex) {
        let p = parse_presentation(text).unwrap();
        let idx = OverlapIndex::new(&p).unwrap();
        (p, idx)
    }

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    const P1: &str = "gens: a b c d\nrel: abcd = badc";

    #[test]
    fn shortest_relation_prefix() {
        let (p, idx) = setup(P1);
        let abcd = p.word_id(&w(&p, "abcd")).unwrap();
        let badc = p.word_id(&w(&p, "badc")).unwrap();
        assert_eq!(
            idx.find_shortest_relation_prefix(&w(&p, "aabcdc")),
            Some(RelationPrefix { start: 1, word_id: abcd })
        );
        assert_eq!(idx.find_shortest_relation_prefix(&w(&p, "ab")), None);
        assert_eq!(idx.find_shortest_relation_prefix(&w(&p, "badcc")), Some(RelationPrefix { start: 0, word_id: badc }));
    }

    #[test]
    fn leading_clean_prefix() {
        let (p, idx) = setup(P1);
        let abcd = p.word_id(&w(&p, "abcd")).unwrap();
        let badc = p.word_id(&w(&p, "badc")).unwrap();
        assert_eq!(idx.leading_clean_overlap_prefix(&w(&p, "abcdc")), Some(abcd));
        assert_eq!(idx.leading_clean_overlap_prefix(&w(&p, "aabcdc")), None);
        for x in ["a", "b", "c", "d"] {
            let u = w(&p, &format!("badc{x}"));
            assert_eq!(idx.leading_clean_overlap_prefix(&u), Some(badc));
        }
    }

    #[test]
    fn cleanliness() {
        let (p, idx) = setup(P1);
        let abcd = p.word_id(&w(&p, "abcd")).unwrap();
        assert!(idx.is_clean(&w(&p, "abcdc"), RelationPrefix { start: 0, word_id: abcd }));
    }

    // abcd has X = ε, Y = abc, Z = d (c and d are pieces via the second
    // relation), and cxyw contributes the pattern cxyw.
    const DIRTY: &str = "gens: a b c d e f g h t u v w x y\nrel: abcd = efgh\nrel: cxyw = dtuv";

    #[test]
    fn dirty_prefix_is_detected() {
        let (p, idx) = setup(DIRTY);
        let abcd = p.word_id(&w(&p, "abcd")).unwrap();
        let cxyw = p.word_id(&w(&p, "cxyw")).unwrap();
        assert_eq!(p.format_word(idx.info(abcd).xy()), "abc");
        assert_eq!(p.format_word(idx.info(cxyw).xy()), "cxyw");

        // ab·cxyw: Y′ = ab followed by X₁Y₁ = cxyw.
        let u = w(&p, "abcxyw");
        let at0 = RelationPrefix { start: 0, word_id: abcd };
        assert!(!idx.is_clean(&u, at0));
        assert_eq!(idx.leading_clean_overlap_prefix(&u), None);
        // The shortest relation prefix is abc, a dirty overlap prefix.
        assert_eq!(idx.find_shortest_relation_prefix(&u), Some(at0));
        // ab·cxyw is an overlap prefix of length 2 and is clean.
        let rec = idx.overlap_prefix_record(&u, RelationPrefix { start: 2, word_id: cxyw }).unwrap();
        assert!(rec.b.is_empty());
        assert_eq!(rec.segments.len(), 1);
        assert_eq!(rec.segments[0].y_prime, w(&p, "ab"));
        assert!(rec.clean);
        assert!(idx.has_clean_overlap_prefix(&u));

        assert!(idx.is_clean(&w(&p, "abcdcxyw"), at0));
    }

    #[test]
    fn p_activity() {
        let (p, idx) = setup(P1);
        assert!(idx.is_p_active(&w(&p, "b"), &w(&p, "adcc")));
        assert!(!idx.is_p_active(&w(&p, "a"), &w(&p, "abcd")));
        assert!(!idx.is_p_active(&[], &w(&p, "abcd")));
    }

    #[test]
    fn overlap_record_for_shortest_prefix() {
        let (p, idx) = setup(P1);
        let u = w(&p, "aabcdc");
        let rp = idx.find_shortest_relation_prefix(&u).unwrap();
        let rec = idx.overlap_prefix_record(&u, rp).unwrap();
        assert_eq!(rec.b, w(&p, "a"));
        assert!(rec.segments.is_empty());
        assert_eq!(rec.total_len, 4);
        assert!(rec.clean);
    }
}
