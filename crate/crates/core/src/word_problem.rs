//! Linear-time word problem for weakly C(4) presentations.
//!
//! [`Solver::wp_prefix`] decides, for words `u`, `v` and a piece `p`,
//! whether `u ≡ v` and `p` is a possible prefix of `u` (some `w` has
//! `p·w ≡ u`). Each round either strips one letter that no rewrite can
//! touch, or consumes a leading clean overlap prefix `X·Y` of `u` together
//! with the matching complement prefix of `v`, possibly pushing a short
//! piece back onto the front of the words. All rounds look at a bounded
//! window, so the total work is linear in the input.
//!
//! [`Solver::classify_case`] is the same case analysis written out as six
//! independent shape tests, used to audit the main loop.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::overlap::OverlapIndex;
use crate::pieces::{classify_with, compute_pieces, CnReport, RepeatPolicy};
use crate::presentation::Presentation;
use crate::word::{common_suffix_len, Letter, Letters, Word};

/// Why a query was answered negatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoReason {
    /// One of the words ran out before the other, or `p` was left over.
    Exhausted,
    /// `u` and `v` begin with different fixed letters.
    FirstLetter,
    /// `p` disagrees with the fixed first letter of `u`.
    PrefixLetter,
    /// `p` is not a prefix of any complement of `X`.
    PrefixNotInComplement,
    /// `v` does not begin with any complement of `X·Y`.
    NoComplementPrefix,
    /// The shapes of the final case do not match.
    Case6Shape,
}

/// One round of the decision loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Strip,
    Case1a,
    Case1b,
    Case2a,
    Case2b,
    Case4,
    Case5,
    Case6,
    Yes,
    No(NoReason),
}

impl Step {
    pub fn label(self) -> &'static str {
        match self {
            Step::Strip => "strip",
            Step::Case1a => "case1a",
            Step::Case1b => "case1b",
            Step::Case2a => "case2a",
            Step::Case2b => "case2b",
            Step::Case4 => "case4",
            Step::Case5 => "case5",
            Step::Case6 => "case6",
            Step::Yes => "yes",
            Step::No(_) => "no",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Hook into the decision loop.
pub trait Observer {
    fn step(&mut self, _step: Step) {}

    /// Whether [`dispatch`](Observer::dispatch) should be called. Calling
    /// it costs a copy of both words per round.
    fn wants_dispatch(&self) -> bool {
        false
    }

    /// Called when `u` has a leading clean overlap prefix, before the
    /// chosen branch is applied.
    fn dispatch(&mut self, _solver: &Solver, _u: &[Letter], _v: &[Letter], _p: &[Letter], _taken: Step) {}
}

impl Observer for () {}

/// Records the sequence of steps taken.
#[derive(Debug, Default, Clone)]
pub struct Trace {
    pub steps: Vec<Step>,
}

impl Observer for Trace {
    fn step(&mut self, step: Step) {
        self.steps.push(step);
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.steps.iter().map(|s| s.label()).collect();
        f.write_str(&labels.join(" "))
    }
}

/// Cross-checks every dispatch of the loop against [`Solver::classify_case`].
#[derive(Debug, Default, Clone)]
pub struct CaseAudit {
    pub dispatches: usize,
    /// Branch counts keyed by step label.
    pub branches: std::collections::BTreeMap<&'static str, usize>,
    pub violations: Vec<String>,
    /// Dispatch counts per case shape (index 0 for "no case").
    pub case_counts: [usize; 7],
}

impl Observer for CaseAudit {
    fn wants_dispatch(&self) -> bool {
        true
    }

    fn dispatch(&mut self, solver: &Solver, u: &[Letter], v: &[Letter], _p: &[Letter], taken: Step) {
        self.dispatches += 1;
        *self.branches.entry(taken.label()).or_default() += 1;
        let verdict = match solver.classify_case(u, v) {
            Ok(v) => v,
            Err(e) => {
                self.violations.push(format!("u={u:?} v={v:?}: {e}"));
                return;
            }
        };
        self.case_counts[verdict.case.map_or(0, |c| c as usize)] += 1;
        let consistent = match taken {
            Step::No(NoReason::PrefixNotInComplement) => true,
            Step::Case1a | Step::Case1b => matches!(verdict.case, Some(1 | 3)),
            Step::Case2a | Step::Case2b => verdict.case == Some(2),
            Step::Case4 => verdict.case == Some(4),
            Step::Case5 => verdict.case == Some(5),
            Step::Case6 => verdict.case == Some(6),
            Step::No(NoReason::NoComplementPrefix | NoReason::Case6Shape) => verdict.case.is_none(),
            _ => false,
        };
        if !consistent {
            self.violations.push(format!("u={u:?} v={v:?}: branch {taken} but case {:?}", verdict.case));
        }
    }
}

/// What remains to be decided once a case shape is recognised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    /// `Ẑ·u ≡ Ẑ·v` for at least one of the listed complements `Ẑ` of `Z`.
    SomeSuffix { suffixes: Vec<Word>, u: Word, v: Word },
    /// `u ≡ v`.
    Equivalent { u: Word, v: Word },
    /// `u ≡ v` and `prefix` is a possible prefix of `u`.
    EquivalentWithPrefix { u: Word, v: Word, prefix: Word },
}

impl Residual {
    /// Decides the residual obligation with `solver`.
    pub fn holds(&self, solver: &Solver) -> bool {
        match self {
            Residual::SomeSuffix { suffixes, u, v } => {
                suffixes.iter().any(|z| solver.equals(&z.concat(u), &z.concat(v)))
            }
            Residual::Equivalent { u, v } => solver.equals(u, v),
            Residual::EquivalentWithPrefix { u, v, prefix } => {
                solver.wp_prefix(u, v, prefix).expect("suffix of a piece is a piece")
            }
        }
    }
}

/// Which of the six mutually exclusive shapes a pair `(u, v)` has, where
/// `u = X·Y·u′` with `X·Y` a clean overlap prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseVerdict {
    /// 1 to 6, or `None` when no shape applies (then `u ≢ v`).
    pub case: Option<u8>,
    /// Relation word `X·Y·Z` leading `u`.
    pub relation: usize,
    /// Complement whose `X̄·Ȳ` leads `v`, if any.
    pub complement: Option<usize>,
    pub residual: Option<Residual>,
}

/// Word-problem solver for one weakly C(4) presentation.
#[derive(Debug, Clone)]
pub struct Solver {
    pres: Presentation,
    index: OverlapIndex,
    report: CnReport,
}

impl Solver {
    /// Fails with `NotWeaklyC4` unless every relation word needs at least
    /// four pieces.
    pub fn new(pres: Presentation) -> Result<Self> {
        let pieces = compute_pieces(&pres);
        let report = classify_with(&pres, &pieces, RepeatPolicy::default());
        if !report.weakly(4) {
            return Err(Error::NotWeaklyC4(report.weak_n.to_string()));
        }
        let index = OverlapIndex::with_pieces(&pres, pieces)?;
        Ok(Solver { pres, index, report })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn index(&self) -> &OverlapIndex {
        &self.index
    }

    pub fn report(&self) -> &CnReport {
        &self.report
    }

    /// `u ≡ v`.
    pub fn equals(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.run(u, v, &[], &mut ()).expect("the empty word is a piece")
    }

    /// `u ≡ v` and `p` is a possible prefix of `u`.
    pub fn wp_prefix(&self, u: &[Letter], v: &[Letter], p: &[Letter]) -> Result<bool> {
        self.run(u, v, p, &mut ())
    }

    pub fn wp_prefix_observed(
        &self,
        u: &[Letter],
        v: &[Letter],
        p: &[Letter],
        observer: &mut dyn Observer,
    ) -> Result<bool> {
        self.run(u, v, p, observer)
    }

    /// Whether `p·w ≡ u` for some word `w`.
    pub fn possible_piece_prefix(&self, p: &[Letter], u: &[Letter]) -> Result<bool> {
        self.run(u, u, p, &mut ())
    }

    fn run(&self, u: &[Letter], v: &[Letter], p: &[Letter], obs: &mut dyn Observer) -> Result<bool> {
        if !self.index.pieces().is_piece(p) {
            return Err(Error::PieceExpected(Word::from(p)));
        }
        let mut u = Tape::new(u);
        let mut v = Tape::new(v);
        let mut p: VecDeque<Letter> = p.iter().copied().collect();
        let idx = &self.index;

        loop {
            if u.is_empty() || v.is_empty() {
                let yes = u.is_empty() && v.is_empty() && p.is_empty();
                obs.step(if yes { Step::Yes } else { Step::No(NoReason::Exhausted) });
                return Ok(yes);
            }

            let Some(r) = idx.leading_clean_overlap_prefix(&u) else {
                let first = u.at(0);
                if v.at(0) != first {
                    obs.step(Step::No(NoReason::FirstLetter));
                    return Ok(false);
                }
                if let Some(&c) = p.front() {
                    if c != first {
                        obs.step(Step::No(NoReason::PrefixLetter));
                        return Ok(false);
                    }
                    p.pop_front();
                }
                u.drop_front(1);
                v.drop_front(1);
                obs.step(Step::Strip);
                continue;
            };

            let decision = self.decide(r, &u, &v, &p);
            if obs.wants_dispatch() {
                let (pu, pv, pp) = (u.to_vec(), v.to_vec(), p.make_contiguous().to_vec());
                obs.dispatch(self, &pu, &pv, &pp, decision.step);
            }
            obs.step(decision.step);
            if let Step::No(_) = decision.step {
                return Ok(false);
            }
            u.drop_front(decision.drop_u);
            v.drop_front(decision.drop_v);
            u.push_front(decision.push_u);
            v.push_front(decision.push_v);
            p.clear();
            p.extend(decision.new_p.iter().copied());
        }
    }

    /// Chooses the branch for `u = X·Y·u′` with `X·Y` (of word `r`) clean.
    fn decide<'a>(&'a self, r: usize, u: &Tape<'_>, v: &Tape<'_>, p: &VecDeque<Letter>) -> Decision<'a> {
        let idx = &self.index;
        let info = idx.info(r);
        let class = idx.complements(r);

        let p_ok = p.is_empty() || class.iter().any(|&c| starts_with(idx.info(c).x(), p));
        if !p_ok {
            return Decision::no(NoReason::PrefixNotInComplement);
        }

        // No complement of X·Y is a prefix of another, so at most one matches.
        let Some(q) = class.iter().copied().find(|&c| v.has_at(0, idx.info(c).xy())) else {
            return Decision::no(NoReason::NoComplementPrefix);
        };
        let comp = idx.info(q);
        let (xy_u, xy_v) = (info.xy().len(), comp.xy().len());
        let u_full = u.has_at(xy_u, info.z());
        let v_full = v.has_at(xy_v, comp.z());

        if u_full && v_full {
            let (drop_u, drop_v) = (info.word.len(), comp.word.len());
            let active = idx.complement_suffixes(r).iter().find(|z| idx.is_p_active_at(z, u, drop_u));
            let (step, z) = match active {
                Some(z) => (Step::Case1b, z.letters()),
                None => (Step::Case1a, info.z()),
            };
            Decision { step, drop_u, drop_v, push_u: z, push_v: z, new_p: &[] }
        } else if q == r {
            let (step, new_p) = if starts_with(info.x(), p) { (Step::Case2a, &[][..]) } else { (Step::Case2b, info.z()) };
            Decision { step, drop_u: xy_u, drop_v: xy_v, push_u: &[], push_v: &[], new_p }
        } else if v_full {
            Decision { step: Step::Case4, drop_u: xy_u, drop_v: comp.word.len(), push_u: &[], push_v: info.z(), new_p: &[] }
        } else if u_full {
            Decision { step: Step::Case5, drop_u: info.word.len(), drop_v: xy_v, push_u: comp.z(), push_v: &[], new_p: &[] }
        } else {
            let (z, zbar) = (info.z(), comp.z());
            let common = common_suffix_len(z, zbar);
            let z1 = &z[..z.len() - common];
            let z2 = &zbar[..zbar.len() - common];
            if !u.has_at(xy_u, z1) || !v.has_at(xy_v, z2) {
                return Decision::no(NoReason::Case6Shape);
            }
            Decision {
                step: Step::Case6,
                drop_u: xy_u + z1.len(),
                drop_v: xy_v + z2.len(),
                push_u: &[],
                push_v: &[],
                new_p: &z[z.len() - common..],
            }
        }
    }

    /// Evaluates the six case shapes independently for `u = X·Y·u′` with
    /// `X·Y` a leading clean overlap prefix, without deciding the residual
    /// equivalences.
    pub fn classify_case(&self, u: &[Letter], v: &[Letter]) -> Result<CaseVerdict> {
        let idx = &self.index;
        let r = idx.leading_clean_overlap_prefix(u).ok_or(Error::NoCleanOverlapPrefix)?;
        let info = idx.info(r);
        let matching: Vec<usize> = idx.complements(r).iter().copied().filter(|&c| v.starts_with(idx.info(c).xy())).collect();
        if matching.len() > 1 {
            return Err(Error::AmbiguousComplement);
        }
        let Some(&q) = matching.first() else {
            return Ok(CaseVerdict { case: None, relation: r, complement: None, residual: None });
        };
        let comp = idx.info(q);
        let (x, y, z) = (info.x(), info.y(), info.z());
        let (xb, yb, zb) = (comp.x(), comp.y(), comp.z());
        let u1 = &u[x.len() + y.len()..];
        let v1 = &v[xb.len() + yb.len()..];
        let u_full = u1.starts_with(z);
        let v_full = v1.starts_with(zb);
        let same = q == r;
        let common = common_suffix_len(z, zb);
        let (z1, z2, zs) = (&z[..z.len() - common], &zb[..zb.len() - common], &z[z.len() - common..]);

        let guards = [
            same && u_full && v1.starts_with(z),
            same && !(u1.starts_with(z) && v1.starts_with(z)),
            !same && u_full && v_full,
            !same && !u_full && v_full,
            !same && u_full && !v_full,
            !same && !u_full && !v_full && !zs.is_empty() && u1.starts_with(z1) && v1.starts_with(z2),
        ];
        let held: Vec<u8> = (1..=6u8).filter(|&c| guards[c as usize - 1]).collect();
        if held.len() > 1 {
            return Err(Error::AmbiguousCase(held));
        }
        let case = held.first().copied();
        let residual = case.map(|c| match c {
            1 | 3 => Residual::SomeSuffix {
                suffixes: idx.complements(r).iter().map(|&m| Word::from(idx.info(m).z())).collect::<std::collections::BTreeSet<_>>().into_iter().collect(),
                u: Word::from(&u1[z.len()..]),
                v: Word::from(&v1[zb.len()..]),
            },
            2 => Residual::Equivalent { u: Word::from(u1), v: Word::from(v1) },
            4 => Residual::Equivalent { u: Word::from(u1), v: Word::from(z).concat(&v1[zb.len()..]) },
            5 => Residual::Equivalent { u: Word::from(zb).concat(&u1[z.len()..]), v: Word::from(v1) },
            _ => Residual::EquivalentWithPrefix {
                u: Word::from(&u1[z1.len()..]),
                v: Word::from(&v1[z2.len()..]),
                prefix: Word::from(zs),
            },
        });
        Ok(CaseVerdict { case, relation: r, complement: Some(q), residual })
    }
}

struct Decision<'a> {
    step: Step,
    drop_u: usize,
    drop_v: usize,
    push_u: &'a [Letter],
    push_v: &'a [Letter],
    new_p: &'a [Letter],
}

impl Decision<'_> {
    fn no(reason: NoReason) -> Self {
        Decision { step: Step::No(reason), drop_u: 0, drop_v: 0, push_u: &[], push_v: &[], new_p: &[] }
    }
}

/// A borrowed word that letters can be pushed back onto.
struct Tape<'a> {
    rest: &'a [Letter],
    /// Pushed letters, in reverse order.
    front: Vec<Letter>,
}

impl<'a> Tape<'a> {
    fn new(w: &'a [Letter]) -> Self {
        Tape { rest: w, front: Vec::new() }
    }

    fn drop_front(&mut self, n: usize) {
        let k = n.min(self.front.len());
        self.front.truncate(self.front.len() - k);
        self.rest = &self.rest[n - k..];
    }

    fn push_front(&mut self, w: &[Letter]) {
        self.front.extend(w.iter().rev());
    }

    fn to_vec(&self) -> Vec<Letter> {
        self.front.iter().rev().chain(self.rest).copied().collect()
    }
}

impl Letters for Tape<'_> {
    fn len(&self) -> usize {
        self.front.len() + self.rest.len()
    }

    fn at(&self, i: usize) -> Letter {
        match self.front.len().checked_sub(i + 1) {
            Some(j) => self.front[j],
            None => self.rest[i - self.front.len()],
        }
    }
}

/// Whether `p` is a prefix of `w`.
fn starts_with(w: &[Letter], p: &VecDeque<Letter>) -> bool {
    p.len() <= w.len() && p.iter().zip(w).all(|(a, b)| a == b)
}
