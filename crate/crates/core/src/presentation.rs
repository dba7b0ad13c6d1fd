//! Finite monoid presentations: parsing, validation and complement classes.
//!
//! The text format is line based:
//!
//! ```text
//! # comment
//! gens: a b c d
//! rel: abcd = badc
//! rel: abcd = dacb = cdab   # sugar for two binary relations
//! ```
//!
//! When every generator name is a single character, words are written by
//! juxtaposition (`abcd`); otherwise they are whitespace-separated tokens
//! (`x1 x2 x1`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Placeholder accepted for the empty word on input and printed on output.
pub const EMPTY_WORD: &str = "ε";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
    /// Distinct relation words in shortlex order.
    words: Vec<Word>,
    word_index: HashMap<Word, usize>,
    class_of: Vec<usize>,
    /// Members of each complement class, shortlex ordered. Classes are
    /// numbered by their least member.
    classes: Vec<Vec<usize>>,
}

impl Presentation {
    /// Builds a presentation from generator names and relation pairs.
    pub fn new(generators: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in &generators {
            if !valid_name(name) {
                return Err(Error::Syntax { line: 1, column: 1, message: format!("invalid generator name `{name}`") });
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateGenerator { line: 1, name: name.clone() });
            }
        }
        let n = generators.len() as Letter;
        let mut rels = Vec::with_capacity(relations.len());
        for (line, (lhs, rhs)) in relations.into_iter().enumerate() {
            if lhs.is_empty() || rhs.is_empty() {
                return Err(Error::EmptyRelationSide { line: line + 2 });
            }
            if let Some(&bad) = lhs.iter().chain(rhs.iter()).find(|&&c| c >= n) {
                return Err(Error::UnknownGenerator { line: line + 2, token: format!("#{bad}") });
            }
            rels.push(Relation { lhs, rhs });
        }
        Ok(Self::assemble(generators, rels))
    }

    fn assemble(generators: Vec<String>, relations: Vec<Relation>) -> Self {
        let set: BTreeSet<&Word> = relations.iter().flat_map(|r| [&r.lhs, &r.rhs]).collect();
        let words: Vec<Word> = set.into_iter().cloned().collect();
        let word_index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

        let mut uf = UnionFind::new(words.len());
        for r in &relations {
            uf.union(word_index[&r.lhs], word_index[&r.rhs]);
        }
        // Words are in shortlex order, so the first time a root is met is at
        // its class's least member.
        let mut root_to_class = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; words.len()];
        for (i, slot) in class_of.iter_mut().enumerate() {
            let root = uf.find(i);
            let id = *root_to_class.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(i);
            *slot = id;
        }

        Presentation { generators, relations, words, word_index, class_of, classes }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn alphabet_size(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// The distinct relation words, shortlex ordered.
    pub fn relation_words(&self) -> &[Word] {
        &self.words
    }

    pub fn word_id(&self, w: &[Letter]) -> Option<usize> {
        self.word_index.get(w).copied()
    }

    pub fn class_id(&self, word_id: usize) -> usize {
        self.class_of[word_id]
    }

    /// Word ids of one complement class, shortlex ordered.
    pub fn class_members(&self, class_id: usize) -> &[usize] {
        &self.classes[class_id]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// All complements of `r`, `r` included, in shortlex order.
    pub fn complement_class(&self, r: &[Letter]) -> Result<Vec<Word>> {
        let id = self.word_id(r).ok_or_else(|| Error::NotRelationWord(Word::from(r)))?;
        Ok(self.classes[self.class_of[id]].iter().map(|&i| self.words[i].clone()).collect())
    }

    /// Complements of `r` other than `r` itself, in shortlex order.
    pub fn proper_complements(&self, r: &[Letter]) -> Result<Vec<Word>> {
        let mut class = self.complement_class(r)?;
        class.retain(|w| w.letters() != r);
        Ok(class)
    }

    /// Relation words in sequence order, both sides of every relation.
    pub fn relation_sequence(&self) -> impl Iterator<Item = &Word> {
        self.relations.iter().flat_map(|r| [&r.lhs, &r.rhs])
    }

    /// Total length of the distinct relation words.
    pub fn total_length(&self) -> usize {
        self.words.iter().map(|w| w.len()).sum()
    }

    /// Whether words are written by juxtaposition of one-character names.
    pub fn is_compact(&self) -> bool {
        self.generators.iter().all(|g| g.chars().count() == 1)
    }

    pub fn generator_id(&self, name: &str) -> Option<Letter> {
        self.generators.iter().position(|g| g == name).map(|i| i as Letter)
    }

    /// Parses a word in this presentation's syntax. The empty string and
    /// `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == EMPTY_WORD {
            return Ok(Word::empty());
        }
        let lookup = |tok: &str| self.generator_id(tok).ok_or_else(|| Error::BadWord(tok.to_string()));
        if self.is_compact() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| lookup(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>>>()
                .map(Word::new)
        } else {
            text.split_whitespace().map(lookup).collect::<Result<Vec<_>>>().map(Word::new)
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return EMPTY_WORD.to_string();
        }
        let names = w.iter().map(|&c| self.generators[c as usize].as_str());
        if self.is_compact() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the text format described in the module docs.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut generators: Option<Vec<String>> = None;
    let mut relations: Vec<Relation> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim();
        let Some((keyword, rest)) = body.split_once(':') else {
            return Err(syntax(line, line_no, indent, "expected `gens:` or `rel:`"));
        };
        let rest_offset = line.len() - line.trim_start().len() + keyword.len() + 1;
        match keyword.trim() {
            "gens" => {
                if generators.is_some() {
                    return Err(syntax(line, line_no, indent, "`gens:` given twice"));
                }
                let mut names: Vec<String> = Vec::new();
                for tok in rest.split_whitespace() {
                    if !valid_name(tok) {
                        let col = rest_offset + rest.find(tok).unwrap_or(0);
                        return Err(syntax(line, line_no, col, &format!("invalid generator name `{tok}`")));
                    }
                    if names.iter().any(|n| n == tok) {
                        return Err(Error::DuplicateGenerator { line: line_no, name: tok.to_string() });
                    }
                    names.push(tok.to_string());
                }
                if names.is_empty() {
                    return Err(syntax(line, line_no, rest_offset, "no generators listed"));
                }
                generators = Some(names);
            }
            "rel" => {
                let Some(gens) = generators.as_ref() else {
                    return Err(syntax(line, line_no, indent, "`rel:` before `gens:`"));
                };
                let compact = gens.iter().all(|g| g.chars().count() == 1);
                let sides: Vec<&str> = rest.split('=').collect();
                if sides.len() < 2 {
                    return Err(syntax(line, line_no, rest_offset, "expected `=`"));
                }
                let mut words = Vec::with_capacity(sides.len());
                for side in sides {
                    let w = parse_side(gens, compact, side, line_no)?;
                    if w.is_empty() {
                        return Err(Error::EmptyRelationSide { line: line_no });
                    }
                    words.push(w);
                }
                for rhs in &words[1..] {
                    relations.push(Relation { lhs: words[0].clone(), rhs: rhs.clone() });
                }
            }
            other => {
                return Err(syntax(line, line_no, indent, &format!("unknown directive `{other}`")));
            }
        }
    }

    let generators = generators.ok_or(Error::Syntax { line: 1, column: 1, message: "missing `gens:` line".into() })?;
    Ok(Presentation::assemble(generators, relations))
}

fn parse_side(gens: &[String], compact: bool, side: &str, line: usize) -> Result<Word> {
    let lookup = |tok: &str| {
        gens.iter()
            .position(|g| g == tok)
            .map(|i| i as Letter)
            .ok_or_else(|| Error::UnknownGenerator { line, token: tok.to_string() })
    };
    let letters = if compact {
        side.chars().filter(|c| !c.is_whitespace()).map(|c| lookup(c.encode_utf8(&mut [0; 4]))).collect::<Result<Vec<_>>>()?
    } else {
        side.split_whitespace().map(lookup).collect::<Result<Vec<_>>>()?
    };
    Ok(Word::new(letters))
}

fn syntax(line: &str, line_no: usize, byte_col: usize, message: &str) -> Error {
    let column = line[..byte_col.min(line.len())].chars().count() + 1;
    Error::Syntax { line: line_no, column, message: message.to_string() }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relations {
            writeln!(f, "rel: {} = {}", self.format_word(&r.lhs), self.format_word(&r.rhs))?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
