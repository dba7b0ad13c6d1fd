//! Words over a finite alphabet.
//!
//! Generators are referred to by dense integer ids. The ordering on [`Word`]
//! is shortlex (length first, then lexicographic on ids), which is the
//! canonical order used throughout the crate.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;

/// Index of a generator in its presentation's alphabet.
pub type Letter = u32;

/// A word in the free monoid. The empty word is `Word::empty()`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// `self · other`.
    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(other);
        Word(out)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

// Only hash-based collections may look words up by slice: the shortlex
// `Ord` on `Word` differs from the lexicographic `Ord` on slices.
impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        write!(f, "{:?}", self.0)
    }
}

/// Shortlex comparison of two letter sequences.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Random-access view of a letter sequence.
///
/// Lets the matching routines run over both plain slices and the
/// double-ended buffers the word-problem loop consumes from.
pub trait Letters {
    fn len(&self) -> usize;
    fn at(&self, i: usize) -> Letter;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether `pat` occurs in `self` starting at `offset`.
    fn has_at(&self, offset: usize, pat: &[Letter]) -> bool {
        offset + pat.len() <= self.len() && pat.iter().enumerate().all(|(i, &c)| self.at(offset + i) == c)
    }
}

impl Letters for [Letter] {
    fn len(&self) -> usize {
        <[Letter]>::len(self)
    }

    fn at(&self, i: usize) -> Letter {
        self[i]
    }
}

impl Letters for Word {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn at(&self, i: usize) -> Letter {
        self.0[i]
    }
}

impl Letters for VecDeque<Letter> {
    fn len(&self) -> usize {
        VecDeque::len(self)
    }

    fn at(&self, i: usize) -> Letter {
        self[i]
    }
}

/// `p · u` without materialising the concatenation.
pub(crate) struct Prepended<'a, L: Letters + ?Sized> {
    pub head: &'a [Letter],
    pub tail: &'a L,
    pub skip: usize,
}

impl<L: Letters + ?Sized> Letters for Prepended<'_, L> {
    fn len(&self) -> usize {
        self.head.len() + self.tail.len() - self.skip
    }

    fn at(&self, i: usize) -> Letter {
        if i < self.head.len() {
            self.head[i]
        } else {
            self.tail.at(i - self.head.len() + self.skip)
        }
    }
}

/// Longest common suffix length of two slices.
pub fn common_suffix_len(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count()
}
