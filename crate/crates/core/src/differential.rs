//! Differential testing of [`Solver`] against the brute-force oracle.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::oracle::{gen_presentation, ClassCache, GenParams, OracleBudget};
use crate::pieces::classify;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};
use crate::word_problem::{CaseAudit, Solver};

/// A query on which the solver and the oracle differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub u: Word,
    pub v: Word,
    pub p: Word,
    pub solver: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub presentation: Presentation,
    pub disagreement: Disagreement,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.disagreement;
        let pres = &self.presentation;
        write!(f, "{pres}")?;
        writeln!(
            f,
            "u={} v={} p={} solver={} oracle={}",
            pres.format_word(&d.u),
            pres.format_word(&d.v),
            pres.format_word(&d.p),
            d.solver,
            d.oracle
        )
    }
}

/// Runs queries through both the solver and a shared oracle cache.
pub struct Checker<'a> {
    pub solver: &'a Solver,
    pub oracle: ClassCache,
    pub audit: CaseAudit,
    pub queries: usize,
}

impl<'a> Checker<'a> {
    pub fn new(solver: &'a Solver, budget: OracleBudget) -> Self {
        Checker { solver, oracle: ClassCache::new(solver.presentation(), budget), audit: CaseAudit::default(), queries: 0 }
    }

    /// Compares `u ≡ v`.
    pub fn check_pair(&mut self, u: &[Letter], v: &[Letter]) -> Result<Option<Disagreement>> {
        self.check(u, v, &[])
    }

    /// Compares "`u ≡ v` and `p` is a possible prefix of `u`".
    pub fn check(&mut self, u: &[Letter], v: &[Letter], p: &[Letter]) -> Result<Option<Disagreement>> {
        self.queries += 1;
        let solver = self.solver.wp_prefix_observed(u, v, p, &mut self.audit)?;
        let oracle = self.oracle.equals(u, v)? && (p.is_empty() || self.oracle.possible_prefix(p, u)?);
        Ok((solver != oracle).then(|| Disagreement { u: u.into(), v: v.into(), p: p.into(), solver, oracle }))
    }
}

/// Builds test words by splicing relation words, their fragments and
/// random letters, so that overlaps actually occur.
pub struct WordSampler<'a> {
    pres: &'a Presentation,
}

impl<'a> WordSampler<'a> {
    pub fn new(pres: &'a Presentation) -> Self {
        WordSampler { pres }
    }

    pub fn sample(&self, rng: &mut impl Rng, max_len: usize) -> Word {
        let target = rng.gen_range(0..=max_len);
        let words = self.pres.relation_words();
        let n = self.pres.alphabet_size() as Letter;
        let mut out: Vec<Letter> = Vec::with_capacity(target + 8);
        while out.len() < target {
            match rng.gen_range(0..4) {
                0 | 1 if !words.is_empty() => {
                    let w = words.choose(rng).expect("non-empty");
                    let i = rng.gen_range(0..w.len());
                    let j = rng.gen_range(i + 1..=w.len());
                    if rng.gen_bool(0.5) {
                        out.extend_from_slice(w);
                    } else {
                        out.extend_from_slice(&w[i..j]);
                    }
                }
                _ => out.push(rng.gen_range(0..n)),
            }
        }
        out.truncate(max_len);
        Word::new(out)
    }

    /// A pair that is equal half of the time: `v` is a random rewrite walk
    /// from `u`, sometimes with one letter changed.
    pub fn sample_pair(&self, oracle: &ClassCache, rng: &mut impl Rng, max_len: usize) -> (Word, Word) {
        let u = self.sample(rng, max_len);
        let mut v = oracle.rewriter().random_walk(&u, rng.gen_range(0..6), rng).into_letters();
        match rng.gen_range(0..4) {
            0 => {
                v = self.sample(rng, max_len).into_letters();
            }
            1 if !v.is_empty() => {
                let i = rng.gen_range(0..v.len());
                v[i] = rng.gen_range(0..self.pres.alphabet_size() as Letter);
            }
            _ => {}
        }
        if v.len() > max_len {
            v.truncate(max_len);
        }
        (u, Word::new(v))
    }
}

/// Parameters of one fuzzing run.
#[derive(Debug, Clone, Copy)]
pub struct FuzzConfig {
    pub pairs_per_seed: usize,
    pub max_word_len: usize,
    pub budget: OracleBudget,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { pairs_per_seed: 500, max_word_len: 12, budget: OracleBudget::default() }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FuzzReport {
    pub seeds: usize,
    pub skipped_seeds: usize,
    pub queries: usize,
    pub dispatches: usize,
    pub audit_violations: Vec<String>,
    /// Dispatches per case shape, index 0 for "no case".
    pub case_counts: [usize; 7],
}

/// Presentation shape used for fuzz seed `seed`: alphabet 2 to 6, one to
/// three relations, relation words of length 4 to 8.
pub fn params_for_seed(seed: u64) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    let min_len = rng.gen_range(4..=8);
    GenParams {
        alphabet_size: rng.gen_range(2..=6),
        num_relations: rng.gen_range(1..=3),
        min_len,
        max_len: rng.gen_range(min_len..=8),
    }
}


/// Fuzzes one seed. A disagreement is minimised before it is returned.
pub fn fuzz_seed(seed: u64, config: FuzzConfig, report: &mut FuzzReport) -> std::result::Result<(), Box<Counterexample>> {
    let Ok((pres, _)) = gen_presentation(params_for_seed(seed), seed) else {
        report.skipped_seeds += 1;
        return Ok(());
    };
    let solver = Solver::new(pres.clone()).expect("generated presentations are weakly C(4)");
    let mut checker = Checker::new(&solver, config.budget);
    let sampler = WordSampler::new(&pres);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let pieces = solver.index().pieces().pieces();
    for _ in 0..config.pairs_per_seed {
        let (u, v) = sampler.sample_pair(&checker.oracle, &mut rng, config.max_word_len);
        let p = if rng.gen_bool(0.25) { pieces.choose(&mut rng).cloned().unwrap_or_default() } else { Word::empty() };
        match checker.check(&u, &v, &p) {
            Ok(None) => {}
            Ok(Some(d)) => return Err(Box::new(minimize(pres, d, config.budget))),
            Err(_) => {}
        }
    }
    report.seeds += 1;
    report.queries += checker.queries;
    report.dispatches += checker.audit.dispatches;
    report.audit_violations.extend(checker.audit.violations);
    for (total, n) in report.case_counts.iter_mut().zip(checker.audit.case_counts) {
        *total += n;
    }
    Ok(())
}

/// Runs `fuzz_seed` over `seeds`, stopping at the first disagreement.
pub fn fuzz(seeds: impl IntoIterator<Item = u64>, config: FuzzConfig) -> std::result::Result<FuzzReport, Box<Counterexample>> {
    let mut report = FuzzReport::default();
    for seed in seeds {
        fuzz_seed(seed, config, &mut report)?;
    }
    Ok(report)
}

fn disagrees(pres: &Presentation, d: &Disagreement, budget: OracleBudget) -> Option<Disagreement> {
    if !classify(pres).weakly(4) {
        return None;
    }
    let solver = Solver::new(pres.clone()).ok()?;
    if !solver.index().pieces().is_piece(&d.p) {
        return None;
    }
    Checker::new(&solver, budget).check(&d.u, &d.v, &d.p).ok().flatten()
}

/// Greedily drops relations and letters while the disagreement persists.
pub fn minimize(pres: Presentation, d: Disagreement, budget: OracleBudget) -> Counterexample {
    let mut pres = pres;
    let mut d = d;
    let mut progress = true;
    while progress {
        progress = false;
        for i in 0..pres.relations().len() {
            let rels: Vec<(Word, Word)> = pres
                .relations()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| (r.lhs.clone(), r.rhs.clone()))
                .collect();
            let Ok(smaller) = Presentation::new(pres.generators().to_vec(), rels) else { continue };
            if let Some(found) = disagrees(&smaller, &d, budget) {
                pres = smaller;
                d = found;
                progress = true;
                break;
            }
        }
        for side in 0..3 {
            let len = [d.u.len(), d.v.len(), d.p.len()][side];
            for i in 0..len {
                let mut cand = d.clone();
                let target = match side {
                    0 => &mut cand.u,
                    1 => &mut cand.v,
                    _ => &mut cand.p,
                };
                let mut letters = target.letters().to_vec();
                letters.remove(i);
                *target = Word::new(letters);
                if let Some(found) = disagrees(&pres, &cand, budget) {
                    d = found;
                    progress = true;
                    break;
                }
            }
        }
    }
    Counterexample { presentation: pres, disagreement: d }
}
