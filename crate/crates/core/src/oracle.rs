//! Brute-force ground truth: breadth-first enumeration of equivalence
//! classes, exhaustive piece factorizations, and random presentations.
//!
//! Nothing here uses the piece tables or overlap machinery; the oracle
//! works for any finite presentation.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pieces::{classify, CnReport};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Limits for class enumeration. Tripping any of them yields
/// [`OracleAnswer::Exhausted`] rather than a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_word_len: usize,
    pub max_class_size: usize,
    pub max_steps: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_word_len: 64, max_class_size: 1_000_000, max_steps: 10_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Equal,
    Distinct,
    Exhausted,
}

/// All words reachable from a seed by rewrites in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub members: BTreeSet<Word>,
}

impl EquivClass {
    pub fn contains(&self, w: &[Letter]) -> bool {
        self.members.iter().any(|m| m.letters() == w)
    }

    /// Shortlex-least member.
    pub fn normal_form(&self) -> &Word {
        self.members.first().expect("a class contains its seed")
    }
}

/// Symmetric one-step rewriting with the relations of a presentation.
#[derive(Debug, Clone)]
pub struct Rewriter {
    rules: Vec<(Word, Word)>,
}

impl Rewriter {
    pub fn new(pres: &Presentation) -> Self {
        let mut rules = Vec::new();
        for r in pres.relations() {
            if r.lhs != r.rhs {
                rules.push((r.lhs.clone(), r.rhs.clone()));
                rules.push((r.rhs.clone(), r.lhs.clone()));
            }
        }
        rules.sort();
        rules.dedup();
        Rewriter { rules }
    }

    /// Every word obtained from `w` by one rewrite.
    pub fn neighbours(&self, w: &[Letter]) -> Vec<Word> {
        let mut out = Vec::new();
        for (from, to) in &self.rules {
            if from.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - from.len() {
                if w[i..i + from.len()] == from[..] {
                    let mut next = Vec::with_capacity(w.len() - from.len() + to.len());
                    next.extend_from_slice(&w[..i]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&w[i + from.len()..]);
                    out.push(Word::new(next));
                }
            }
        }
        out
    }

    /// Breadth-first search from `seed`, stopping early once `stop` holds
    /// for a visited word. Returns the visited set and whether it stopped.
    fn explore(
        &self,
        seed: &[Letter],
        budget: OracleBudget,
        mut stop: impl FnMut(&[Letter]) -> bool,
    ) -> std::result::Result<(HashSet<Word>, bool), Error> {
        if seed.len() > budget.max_word_len {
            return Err(Error::BudgetExhausted);
        }
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Word::from(seed));
        if stop(seed) {
            return Ok((seen, true));
        }
        queue.push_back(Word::from(seed));
        let mut steps = 0usize;
        while let Some(w) = queue.pop_front() {
            for next in self.neighbours(&w) {
                steps += 1;
                if steps > budget.max_steps || next.len() > budget.max_word_len {
                    return Err(Error::BudgetExhausted);
                }
                if seen.contains(next.letters()) {
                    continue;
                }
                if stop(&next) {
                    seen.insert(next);
                    return Ok((seen, true));
                }
                seen.insert(next.clone());
                if seen.len() > budget.max_class_size {
                    return Err(Error::BudgetExhausted);
                }
                queue.push_back(next);
            }
        }
        Ok((seen, false))
    }

    pub fn equiv_class(&self, seed: &[Letter], budget: OracleBudget) -> Result<EquivClass> {
        let (seen, _) = self.explore(seed, budget, |_| false)?;
        Ok(EquivClass { members: seen.into_iter().collect() })
    }

    pub fn equals(&self, u: &[Letter], v: &[Letter], budget: OracleBudget) -> OracleAnswer {
        match self.explore(u, budget, |w| w == v) {
            Ok((_, true)) => OracleAnswer::Equal,
            Ok((_, false)) => OracleAnswer::Distinct,
            Err(_) => OracleAnswer::Exhausted,
        }
    }

    /// A random walk of `steps` rewrites from `w`.
    pub fn random_walk(&self, w: &[Letter], steps: usize, rng: &mut impl Rng) -> Word {
        let mut cur = Word::from(w);
        for _ in 0..steps {
            let next = self.neighbours(&cur);
            match next.choose(rng) {
                Some(n) => cur = n.clone(),
                None => break,
            }
        }
        cur
    }
}

/// Memoised partition of words into equivalence classes.
#[derive(Debug, Clone)]
pub struct ClassCache {
    rewriter: Rewriter,
    budget: OracleBudget,
    ids: HashMap<Word, usize>,
    classes: Vec<EquivClass>,
}

impl ClassCache {
    pub fn new(pres: &Presentation, budget: OracleBudget) -> Self {
        ClassCache { rewriter: Rewriter::new(pres), budget, ids: HashMap::new(), classes: Vec::new() }
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.rewriter
    }

    /// Index of the class of `w`, enumerating it on first use.
    pub fn class_id(&mut self, w: &[Letter]) -> Result<usize> {
        if let Some(&id) = self.ids.get(w) {
            return Ok(id);
        }
        let class = self.rewriter.equiv_class(w, self.budget)?;
        let id = self.classes.len();
        for m in &class.members {
            self.ids.insert(m.clone(), id);
        }
        self.classes.push(class);
        Ok(id)
    }

    pub fn class(&mut self, w: &[Letter]) -> Result<&EquivClass> {
        let id = self.class_id(w)?;
        Ok(&self.classes[id])
    }

    pub fn equals(&mut self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        Ok(self.class_id(u)? == self.class_id(v)?)
    }

    pub fn possible_prefix(&mut self, p: &[Letter], u: &[Letter]) -> Result<bool> {
        Ok(self.class(u)?.members.iter().any(|m| m.starts_with(p)))
    }
}

/// Every word of length at most `max_len` over `alphabet_size` letters, in
/// shortlex order.
pub fn all_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet_size);
        for w in &layer {
            for c in 0..alphabet_size as Letter {
                next.push(w.concat(&[c]));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Decides `u ≡ v` by exhaustive search of `u`'s class.
pub fn oracle_equals(pres: &Presentation, u: &[Letter], v: &[Letter], budget: OracleBudget) -> OracleAnswer {
    Rewriter::new(pres).equals(u, v, budget)
}

/// The shortlex-least word equivalent to `u`.
pub fn oracle_normal_form(pres: &Presentation, u: &[Letter], budget: OracleBudget) -> Result<Word> {
    Ok(Rewriter::new(pres).equiv_class(u, budget)?.normal_form().clone())
}

/// Whether some word equivalent to `u` begins with `p`.
pub fn oracle_possible_prefix(pres: &Presentation, p: &[Letter], u: &[Letter], budget: OracleBudget) -> Result<bool> {
    let class = Rewriter::new(pres).equiv_class(u, budget)?;
    Ok(class.members.iter().any(|m| m.starts_with(p)))
}

/// Pieces by direct site counting over every factor of every distinct
/// relation word.
pub fn oracle_pieces(pres: &Presentation) -> HashSet<Word> {
    let mut sites: HashMap<&[Letter], usize> = HashMap::new();
    for w in pres.relation_words() {
        for i in 0..w.len() {
            for j in i + 1..=w.len() {
                *sites.entry(&w[i..j]).or_default() += 1;
            }
        }
    }
    sites.into_iter().filter(|&(_, n)| n >= 2).map(|(f, _)| Word::from(f)).collect()
}

pub const MAX_BRUTE_FORCE_LEN: usize = 16;

/// Minimal number of non-empty pieces multiplying to `w`, by trying all
/// `2^(|w|-1)` ordered factorizations.
pub fn oracle_min_piece_count(pieces: &HashSet<Word>, w: &[Letter]) -> Result<Option<usize>> {
    if w.len() > MAX_BRUTE_FORCE_LEN {
        return Err(Error::TooLong { len: w.len(), limit: MAX_BRUTE_FORCE_LEN });
    }
    if w.is_empty() {
        return Ok(Some(0));
    }
    let cuts = w.len() - 1;
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << cuts) {
        let mut start = 0;
        let mut ok = true;
        for i in 0..=cuts {
            if i == cuts || mask & (1 << i) != 0 {
                if !pieces.contains(&w[start..=i]) {
                    ok = false;
                    break;
                }
                start = i + 1;
            }
        }
        if ok {
            let count = mask.count_ones() as usize + 1;
            best = Some(best.map_or(count, |b: usize| b.min(count)));
        }
    }
    Ok(best)
}

/// Shape of random presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub alphabet_size: usize,
    pub num_relations: usize,
    pub min_len: usize,
    pub max_len: usize,
}

pub const GEN_RETRIES: usize = 20_000;

/// A random weakly C(4) presentation, deterministic in `seed`.
///
/// Later relations reuse an earlier relation word as their left side a
/// third of the time, so complement classes larger than two occur.
pub fn gen_presentation(params: GenParams, seed: u64) -> Result<(Presentation, CnReport)> {
    assert!(params.alphabet_size > 0 && params.min_len > 0 && params.min_len <= params.max_len);
    let names: Vec<String> = (0..params.alphabet_size).map(generator_name).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GEN_RETRIES {
        let mut rels: Vec<(Word, Word)> = Vec::with_capacity(params.num_relations);
        for i in 0..params.num_relations {
            let lhs = if i > 0 && rng.gen_ratio(1, 3) {
                let prev = &rels[rng.gen_range(0..i)];
                if rng.gen() { prev.0.clone() } else { prev.1.clone() }
            } else {
                random_word(&mut rng, params)
            };
            rels.push((lhs, random_word(&mut rng, params)));
        }
        let pres = Presentation::new(names.clone(), rels)?;
        let report = classify(&pres);
        if report.weakly(4) {
            return Ok((pres, report));
        }
    }
    Err(Error::RetriesExhausted(GEN_RETRIES))
}

fn random_word(rng: &mut impl Rng, params: GenParams) -> Word {
    let len = rng.gen_range(params.min_len..=params.max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..params.alphabet_size) as Letter).collect())
}

fn generator_name(i: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if i < LETTERS.len() {
        (LETTERS[i] as char).to_string()
    } else {
        format!("g{i}")
    }
}
