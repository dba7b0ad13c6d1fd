//! Timing harness for the scaling checks and the `bench` subcommand.

use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pieces::compute_pieces;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};
use crate::word_problem::Solver;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub length: usize,
    pub ns_per_query: f64,
}

/// Least-squares line through a set of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> LinearFit {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points.iter().map(|p| (p.1 - (slope * p.0 + intercept)).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    LinearFit { slope, intercept, r_squared }
}

/// `t(2n)/t(n)` for consecutive samples.
pub fn doubling_ratios(samples: &[Sample]) -> Vec<f64> {
    samples.windows(2).map(|w| w[1].ns_per_query / w[0].ns_per_query).collect()
}

/// Best-of-batches mean running time of `f`, in nanoseconds.
///
/// Each batch repeats `f` until `min_batch` has elapsed; the fastest of
/// `batches` batch means is returned.
pub fn time_ns(mut f: impl FnMut(), batches: usize, min_batch: Duration) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..batches {
        let start = Instant::now();
        let mut reps = 0u32;
        loop {
            f();
            reps += 1;
            let elapsed = start.elapsed();
            if elapsed >= min_batch {
                best = best.min(elapsed.as_nanos() as f64 / reps as f64);
                break;
            }
        }
    }
    best
}

/// `(lhs^k, rhs^k)` for the first relation, with `k = length / |lhs|`.
pub fn synthesize_pair(pres: &Presentation, length: usize) -> Option<(Word, Word)> {
    let rel = pres.relations().first()?;
    let k = (length / rel.lhs.len()).max(1);
    Some((Word::new(rel.lhs.repeat(k)), Word::new(rel.rhs.repeat(k))))
}

/// Times `equals` on synthesized pairs of length `base_len · 2^i` for
/// `i = 0..=doublings`.
///
/// The lengths are timed in interleaved rounds and the best batch per
/// length is kept, so a slow stretch of the machine hits every length
/// rather than one.
pub fn bench_equals(solver: &Solver, base_len: usize, doublings: u32) -> Vec<Sample> {
    let pairs: Vec<(Word, Word)> =
        (0..=doublings).filter_map(|i| synthesize_pair(solver.presentation(), base_len << i)).collect();
    let mut best = vec![f64::INFINITY; pairs.len()];
    for _ in 0..7 {
        for ((u, v), best) in pairs.iter().zip(&mut best) {
            let ns = time_ns(|| {
                black_box(solver.equals(black_box(u), black_box(v)));
            }, 1, Duration::from_millis(20));
            *best = best.min(ns);
        }
    }
    pairs.iter().zip(best).map(|((u, _), ns)| Sample { length: u.len(), ns_per_query: ns }).collect()
}

/// A presentation with random relation words of total length `total`,
/// for timing piece computation. Not necessarily small overlap.
pub fn random_presentation(total: usize, alphabet_size: usize, word_len: usize, seed: u64) -> Presentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..alphabet_size).map(|i| format!("g{i}")).collect();
    let mut words: Vec<Word> = Vec::new();
    let mut remaining = total;
    while remaining > 0 {
        let len = word_len.min(remaining);
        remaining -= len;
        words.push(Word::new((0..len).map(|_| rng.gen_range(0..alphabet_size) as Letter).collect()));
    }
    if words.len() % 2 == 1 {
        // Pair the odd word with itself so no letters are lost.
        let last = words.last().expect("total > 0").clone();
        words.push(last);
    }
    let rels = words.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    Presentation::new(names, rels).expect("generated words are valid")
}

/// Best-of-batches time of `compute_pieces` in nanoseconds.
pub fn time_compute_pieces(pres: &Presentation) -> f64 {
    time_ns(|| {
        black_box(compute_pieces(black_box(pres)));
    }, 5, Duration::from_millis(40))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let fit = linear_fit(&[(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)]);
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_presentation_has_requested_length() {
        let p = random_presentation(1000, 8, 50, 1);
        let total: usize = p.relations().iter().map(|r| r.lhs.len() + r.rhs.len()).sum();
        assert_eq!(total, 1000);
    }

    #[test]
    fn synthesized_pair() {
        let p = crate::parse_presentation("gens: a b c d\nrel: abcd = badc").unwrap();
        let (u, v) = synthesize_pair(&p, 10).unwrap();
        assert_eq!(u.len(), 8);
        assert_eq!(&v[..4], &[1, 0, 3, 2]);
    }
}
