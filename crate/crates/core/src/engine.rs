//! Resolution refutation over standard sentences.
//!
//! The prover saturates level by level. Each admitted sentence is reduced
//! (see [`reduce`]), filtered against what is already kept, and resolved
//! against every kept sentence on each clashing variable with maximal
//! cancellation. Non-clause sentences additionally contribute their prime
//! clauses through weakening steps.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::normalize::{classify, reduce, standardize, Classification};
use crate::trace::{ProofTrace, ResolveStep, StepKind};
use crate::types::{Coeff, LinearForm, Literal, Sentence, StandardSentence, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of derivation steps admitted before giving up.
    pub max_steps: usize,
    /// Resolvents with a larger bound are discarded; the run can then no
    /// longer report saturation.
    pub max_bound: Coeff,
    pub enable_subsumption: bool,
    /// Derive the prime clauses of every kept non-clause sentence.
    pub weakening: bool,
    /// 0 keeps the canonical processing order; anything else shuffles each
    /// level with this seed.
    pub deterministic_seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_steps: 100_000,
            max_bound: 1_000_000_000,
            enable_subsumption: true,
            weakening: true,
            deterministic_seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Derivation steps admitted (premises, resolvents and weakenings).
    pub steps: usize,
    pub resolvents: usize,
    pub subsumed: usize,
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub verdict: Verdict,
    /// Present exactly when the verdict is `Unsat`.
    pub trace: Option<ProofTrace>,
    pub stats: Stats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    Entailed,
    NotEntailed,
    Unknown(String),
}

impl Refutation {
    /// Read a refutation of `S ∪ {∼Φ}` as an answer to `S ⊢ Φ`.
    pub fn entailment(&self) -> Entailment {
        match &self.verdict {
            Verdict::Unsat => Entailment::Entailed,
            Verdict::Sat(_) | Verdict::Saturated => Entailment::NotEntailed,
            Verdict::Unknown(r) => Entailment::Unknown(r.clone()),
        }
    }
}

/// Rule II with `β = cancel·pivot`: `pivot` must occur in `left` and its
/// negation in `right`, both with coefficient at least `cancel`.
pub fn resolve(
    left: &StandardSentence,
    right: &StandardSentence,
    pivot: Literal,
    cancel: Coeff,
) -> Result<StandardSentence> {
    if cancel < 1 {
        return Err(Error::InvalidResolution(format!("cancel amount {cancel} is below 1")));
    }
    let l = left.form.coefficient(pivot);
    if l < cancel {
        return Err(Error::InvalidResolution(format!(
            "pivot has coefficient {l} in the left premise, below the cancel amount {cancel}"
        )));
    }
    let r = right.form.coefficient(pivot.negate());
    if r < cancel {
        return Err(Error::InvalidResolution(format!(
            "negated pivot has coefficient {r} in the right premise, below the cancel amount {cancel}"
        )));
    }
    combine(left, right, pivot, cancel)
}

fn combine(
    left: &StandardSentence,
    right: &StandardSentence,
    pivot: Literal,
    cancel: Coeff,
) -> Result<StandardSentence> {
    let overflow = || Error::Overflow("resolution");
    let side = |s: &StandardSentence, target: Literal| -> Vec<(Literal, Coeff)> {
        s.form
            .iter()
            .map(|(l, c)| (l, if l == target { c - cancel } else { c }))
            .collect()
    };
    let (lt, rt) = (side(left, pivot), side(right, pivot.negate()));
    let mut out: Vec<(Literal, Coeff)> = Vec::with_capacity(lt.len() + rt.len());
    let (mut i, mut j) = (0, 0);
    while i < lt.len() || j < rt.len() {
        let (lit, c) = match (lt.get(i), rt.get(j)) {
            (Some(&(a, c)), Some(&(b, d))) if a == b => {
                i += 1;
                j += 1;
                (a, c.checked_add(d).ok_or_else(overflow)?)
            }
            (Some(&a), Some(&b)) if a.0 < b.0 => {
                i += 1;
                a
            }
            (Some(&a), None) => {
                i += 1;
                a
            }
            (_, Some(&b)) => {
                j += 1;
                b
            }
            (None, None) => unreachable!(),
        };
        if c > 0 {
            out.push((lit, c));
        }
    }
    out.iter()
        .try_fold(0 as Coeff, |acc, &(_, c)| acc.checked_add(c))
        .ok_or_else(overflow)?;
    let bound = left
        .bound
        .checked_add(right.bound)
        .and_then(|b| b.checked_sub(cancel))
        .ok_or_else(overflow)?;
    Ok(StandardSentence::new(LinearForm::from_sorted_unchecked(out), bound))
}

/// Every Rule II instance between the two sentences: one per literal of
/// `left` whose negation occurs in `right`, with maximal cancellation.
pub fn all_resolvents(
    left: &StandardSentence,
    right: &StandardSentence,
) -> Result<Vec<(Literal, Coeff, StandardSentence)>> {
    clashes(left, right)
        .into_iter()
        .map(|(pivot, cancel)| Ok((pivot, cancel, combine(left, right, pivot, cancel)?)))
        .collect()
}

fn clashes(left: &StandardSentence, right: &StandardSentence) -> Vec<(Literal, Coeff)> {
    let mut out = Vec::new();
    let rt = right.form.terms();
    let mut j = 0;
    for &(lit, c) in left.form.terms() {
        let anti = lit.negate();
        while j < rt.len() && rt[j].0.var() < lit.var() {
            j += 1;
        }
        let mut k = j;
        while k < rt.len() && rt[k].0.var() == lit.var() {
            if rt[k].0 == anti {
                out.push((lit, c.min(rt[k].1)));
            }
            k += 1;
        }
    }
    out
}

/// `strong` subsumes `weak` when no coefficient of `strong` exceeds the
/// matching one of `weak` and its bound is at least as large.
pub fn subsumes(strong: &StandardSentence, weak: &StandardSentence) -> bool {
    if strong.bound < weak.bound || strong.form.len() > weak.form.len() {
        return false;
    }
    let wt = weak.form.terms();
    let mut j = 0;
    for &(lit, c) in strong.form.terms() {
        while j < wt.len() && wt[j].0 < lit {
            j += 1;
        }
        if j == wt.len() || wt[j].0 != lit || wt[j].1 < c {
            return false;
        }
    }
    true
}

/// Bounds above this make [`implies`] fall back to [`subsumes`].
pub const IMPLICATION_DP_LIMIT: Coeff = 4096;

/// Whether every model of `strong` is a model of `weak`.
///
/// Exact for `strong.bound <= IMPLICATION_DP_LIMIT`: a dynamic program over
/// the shared variables tracks, for each partial `strong` sum (capped at
/// its bound), the smallest reachable `weak` sum. Above the limit this is
/// [`subsumes`], which is sound but incomplete.
pub fn implies(strong: &StandardSentence, weak: &StandardSentence) -> bool {
    if weak.bound <= 0 || subsumes(strong, weak) {
        return true;
    }
    let bk = strong.bound;
    if bk <= 0 {
        return false;
    }
    if bk > IMPLICATION_DP_LIMIT {
        return false;
    }
    let bk = bk as usize;
    const UNREACHED: Coeff = Coeff::MAX;
    let mut dp = vec![UNREACHED; bk + 1];
    let mut next = vec![UNREACHED; bk + 1];
    dp[0] = 0;
    for (kt, kf, wt, wf) in per_variable(strong, weak) {
        next.fill(UNREACHED);
        for (s, &w) in dp.iter().enumerate() {
            if w == UNREACHED {
                continue;
            }
            let t = (s + kt as usize).min(bk);
            next[t] = next[t].min(w + wt);
            let f = (s + kf as usize).min(bk);
            next[f] = next[f].min(w + wf);
        }
        std::mem::swap(&mut dp, &mut next);
    }
    dp[bk] >= weak.bound
}

/// `(strong if true, strong if false, weak if true, weak if false)` per
/// variable of either sentence. Coefficients of `strong` are capped at its
/// bound.
fn per_variable(strong: &StandardSentence, weak: &StandardSentence) -> Vec<(Coeff, Coeff, Coeff, Coeff)> {
    let cap = strong.bound.max(0);
    let mut rows: Vec<(u32, Coeff, Coeff, Coeff, Coeff)> = Vec::new();
    let mut add = |lit: Literal, c: Coeff, in_strong: bool| {
        let ord = lit.var().ordinal();
        if rows.last().is_none_or(|r| r.0 != ord) {
            rows.push((ord, 0, 0, 0, 0));
        }
        let r = rows.last_mut().unwrap();
        match (in_strong, lit.is_positive()) {
            (true, true) => r.1 = (r.1 + c).min(cap),
            (true, false) => r.2 = (r.2 + c).min(cap),
            (false, true) => r.3 += c,
            (false, false) => r.4 += c,
        }
    };
    let (st, wt) = (strong.form.terms(), weak.form.terms());
    let (mut i, mut j) = (0, 0);
    while i < st.len() || j < wt.len() {
        let take_strong = match (st.get(i), wt.get(j)) {
            (Some(a), Some(b)) => a.0.var() <= b.0.var(),
            (Some(_), None) => true,
            _ => false,
        };
        if take_strong {
            add(st[i].0, st[i].1, true);
            i += 1;
        } else {
            add(wt[j].0, wt[j].1, false);
            j += 1;
        }
    }
    rows.into_iter().map(|(_, a, b, c, d)| (a, b, c, d)).collect()
}

/// Drop `dropped` from `source` and lower the bound by their coefficients.
pub fn weaken(source: &StandardSentence, dropped: &[Literal]) -> Result<StandardSentence> {
    if dropped.is_empty() {
        return Err(Error::InvalidWeakening("no literal dropped".into()));
    }
    let mut sorted = dropped.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidWeakening("a literal is dropped twice".into()));
    }
    let mut bound = source.bound;
    let mut kept = Vec::with_capacity(source.form.len());
    let mut it = sorted.iter().peekable();
    for &(lit, c) in source.form.terms() {
        if it.peek() == Some(&&lit) {
            it.next();
            bound -= c;
        } else {
            kept.push((lit, c));
        }
    }
    if it.next().is_some() {
        return Err(Error::InvalidWeakening(
            "dropped literal does not occur in the source".into(),
        ));
    }
    Ok(StandardSentence::new(LinearForm::from_sorted_unchecked(kept), bound))
}

/// Literal sets whose removal via [`weaken`] leaves a prime clause of `s`,
/// at most `limit` of them. `s` should be reduced.
///
/// Dropping `R` leaves a clause exactly when `R` is a maximal set with
/// coefficient sum below the bound.
pub fn prime_clauses(s: &StandardSentence, limit: usize) -> Vec<Vec<Literal>> {
    let mut terms: Vec<(Literal, Coeff)> = s.form.terms().to_vec();
    terms.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut suffix = vec![0; terms.len() + 1];
    for i in (0..terms.len()).rev() {
        suffix[i] = suffix[i + 1] + terms[i].1;
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    prime_search(&terms, &suffix, s.bound, 0, 0, Coeff::MAX, &mut chosen, &mut out, limit);
    out
}

#[allow(clippy::too_many_arguments)]
fn prime_search(
    terms: &[(Literal, Coeff)],
    suffix: &[Coeff],
    bound: Coeff,
    i: usize,
    sum: Coeff,
    min_excluded: Coeff,
    chosen: &mut Vec<Literal>,
    out: &mut Vec<Vec<Literal>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    // maximality: adding back the smallest excluded term must reach the bound
    if min_excluded != Coeff::MAX && sum + suffix[i] + min_excluded < bound {
        return;
    }
    if i == terms.len() {
        if !chosen.is_empty() {
            let mut r = chosen.clone();
            r.sort();
            out.push(r);
        }
        return;
    }
    let (lit, c) = terms[i];
    if sum + c < bound {
        chosen.push(lit);
        prime_search(terms, suffix, bound, i + 1, sum + c, min_excluded, chosen, out, limit);
        chosen.pop();
    }
    prime_search(
        terms,
        suffix,
        bound,
        i + 1,
        sum,
        min_excluded.min(c),
        chosen,
        out,
        limit,
    );
}

struct Node {
    kind: StepKind,
    raw: StandardSentence,
    reduced: StandardSentence,
    active: bool,
}

enum Admit {
    Kept,
    Dropped,
    Refuted,
    Exhausted,
}

struct Prover<'c> {
    cfg: &'c EngineConfig,
    nodes: Vec<Node>,
    seen: HashSet<StandardSentence>,
    pending: Vec<usize>,
    processed: Vec<usize>,
    conclusion: Option<usize>,
    incomplete: bool,
    stats: Stats,
}

impl<'c> Prover<'c> {
    fn new(cfg: &'c EngineConfig) -> Self {
        Prover {
            cfg,
            nodes: Vec::new(),
            seen: HashSet::new(),
            pending: Vec::new(),
            processed: Vec::new(),
            conclusion: None,
            incomplete: false,
            stats: Stats::default(),
        }
    }

    fn covers(strong: &StandardSentence, weak: &StandardSentence) -> bool {
        // clauses are only ever dropped syntactically, so a sentence cannot
        // discard the prime clauses it produces
        if weak.is_clause() {
            subsumes(strong, weak)
        } else {
            implies(strong, weak)
        }
    }

    fn admit(&mut self, kind: StepKind, raw: StandardSentence) -> Admit {
        let reduced = reduce(&raw);
        match classify(&reduced) {
            Classification::Tautology => return Admit::Dropped,
            Classification::Bottom => {
                self.nodes.push(Node {
                    kind,
                    raw,
                    reduced,
                    active: true,
                });
                self.conclusion = Some(self.nodes.len() - 1);
                return Admit::Refuted;
            }
            Classification::Contingent => {}
        }
        if self.seen.contains(&reduced) {
            return Admit::Dropped;
        }
        if self.cfg.enable_subsumption
            && self
                .nodes
                .iter()
                .any(|n| n.active && Self::covers(&n.reduced, &reduced))
        {
            self.stats.subsumed += 1;
            self.seen.insert(reduced);
            return Admit::Dropped;
        }
        if self.nodes.len() >= self.cfg.max_steps {
            return Admit::Exhausted;
        }
        if self.cfg.enable_subsumption {
            for n in self.nodes.iter_mut().filter(|n| n.active) {
                if Self::covers(&reduced, &n.reduced) {
                    n.active = false;
                    self.stats.subsumed += 1;
                }
            }
        }
        self.seen.insert(reduced.clone());
        let id = self.nodes.len();
        let clause = reduced.is_clause();
        self.nodes.push(Node {
            kind,
            raw,
            reduced,
            active: true,
        });
        self.pending.push(id);
        if self.cfg.weakening && !clause {
            let budget = self.cfg.max_steps - self.nodes.len() + 1;
            let source = self.nodes[id].reduced.clone();
            for dropped in prime_clauses(&source, budget) {
                let raw = weaken(&source, &dropped).expect("prime clause literals come from the source");
                match self.admit(StepKind::Weaken { source: id, dropped }, raw) {
                    Admit::Kept | Admit::Dropped => {}
                    stop => return stop,
                }
            }
        }
        Admit::Kept
    }

    fn run(&mut self) -> Result<Verdict> {
        let mut rng =
            (self.cfg.deterministic_seed != 0).then(|| ChaCha8Rng::seed_from_u64(self.cfg.deterministic_seed));
        while !self.pending.is_empty() {
            let mut level = std::mem::take(&mut self.pending);
            match rng.as_mut() {
                Some(rng) => level.shuffle(rng),
                None => level.sort_by(|&a, &b| self.nodes[a].reduced.cmp(&self.nodes[b].reduced).then(a.cmp(&b))),
            }
            self.stats.levels += 1;
            for given in level {
                if !self.nodes[given].active {
                    continue;
                }
                self.processed.push(given);
                let mut k = 0;
                while k < self.processed.len() {
                    let other = self.processed[k];
                    k += 1;
                    if !self.nodes[other].active || !self.nodes[given].active {
                        continue;
                    }
                    let (left, right) = (&self.nodes[other].reduced, &self.nodes[given].reduced);
                    for (pivot, cancel) in clashes(left, right) {
                        let (left, right) = (&self.nodes[other].reduced, &self.nodes[given].reduced);
                        let raw = combine(left, right, pivot, cancel)?;
                        self.stats.resolvents += 1;
                        if raw.bound > self.cfg.max_bound {
                            self.incomplete = true;
                            continue;
                        }
                        let kind = StepKind::Resolve {
                            left: other,
                            right: given,
                            pivot,
                            cancel,
                        };
                        match self.admit(kind, raw) {
                            Admit::Kept | Admit::Dropped => {}
                            Admit::Refuted => return Ok(Verdict::Unsat),
                            Admit::Exhausted => return Ok(self.exhausted()),
                        }
                    }
                }
            }
        }
        Ok(if self.incomplete {
            Verdict::Unknown(format!(
                "saturated only after discarding resolvents with bound above {}",
                self.cfg.max_bound
            ))
        } else {
            Verdict::Saturated
        })
    }

    fn exhausted(&self) -> Verdict {
        Verdict::Unknown(format!("step budget of {} exhausted", self.cfg.max_steps))
    }

    /// The conclusion and its ancestors, renumbered densely in order.
    fn extract_trace(&self) -> Option<ProofTrace> {
        let conclusion = self.conclusion?;
        let mut needed = vec![false; self.nodes.len()];
        let mut stack = vec![conclusion];
        while let Some(id) = stack.pop() {
            if !needed[id] {
                needed[id] = true;
                stack.extend(self.nodes[id].kind.references());
            }
        }
        let mut renumber = vec![usize::MAX; self.nodes.len()];
        let mut steps = Vec::new();
        for (id, node) in self.nodes.iter().enumerate().filter(|(id, _)| needed[*id]) {
            renumber[id] = steps.len();
            let kind = match &node.kind {
                StepKind::Premise { index } => StepKind::Premise { index: *index },
                StepKind::Resolve {
                    left,
                    right,
                    pivot,
                    cancel,
                } => StepKind::Resolve {
                    left: renumber[*left],
                    right: renumber[*right],
                    pivot: *pivot,
                    cancel: *cancel,
                },
                StepKind::Weaken { source, dropped } => StepKind::Weaken {
                    source: renumber[*source],
                    dropped: dropped.clone(),
                },
            };
            steps.push(ResolveStep {
                id: steps.len(),
                kind,
                result: node.raw.clone(),
            });
        }
        Some(ProofTrace {
            conclusion: Some(renumber[conclusion]),
            steps,
        })
    }
}

/// Standardized premises tagged with the index of the sentence they came
/// from.
pub fn standardize_all(sentences: &[Sentence]) -> Result<Vec<(usize, StandardSentence)>> {
    let mut out = Vec::new();
    for (index, s) in sentences.iter().enumerate() {
        for st in standardize(s)? {
            out.push((index, st));
        }
    }
    Ok(out)
}

pub fn refute(sentences: &[Sentence], cfg: &EngineConfig) -> Result<Refutation> {
    refute_standard(&standardize_all(sentences)?, cfg)
}

/// Refute already standardized premises; the index of each pair is
/// recorded in its premise step.
pub fn refute_standard(premises: &[(usize, StandardSentence)], cfg: &EngineConfig) -> Result<Refutation> {
    let mut prover = Prover::new(cfg);
    let mut verdict = None;
    for (index, s) in premises {
        match prover.admit(StepKind::Premise { index: *index }, s.clone()) {
            Admit::Kept | Admit::Dropped => {}
            Admit::Refuted => {
                verdict = Some(Verdict::Unsat);
                break;
            }
            Admit::Exhausted => {
                verdict = Some(prover.exhausted());
                break;
            }
        }
    }
    let verdict = match verdict {
        Some(v) => v,
        None => prover.run()?,
    };
    prover.stats.steps = prover.nodes.len();
    Ok(Refutation {
        trace: prover.extract_trace(),
        verdict,
        stats: prover.stats,
    })
}

/// Decide `S ⊢ Φ` by refuting `S ∪ {∼Φ}`. The trace, if any, has `∼Φ` as
/// premise index `S.len()`.
pub fn entails(sentences: &[Sentence], goal: &Sentence, cfg: &EngineConfig) -> Result<Refutation> {
    if standardize(goal)?.len() != 1 {
        return Err(Error::CompoundGoal);
    }
    let mut all = sentences.to_vec();
    all.push(goal.clone().negated());
    refute(&all, cfg)
}
