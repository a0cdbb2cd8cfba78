//! Replays a [`ProofTrace`] against its premises.
//!
//! Every step is recomputed from scratch with its own arithmetic, separate
//! from the engine's, and compared with the recorded sentence.

use std::collections::BTreeMap;
use std::fmt;

use crate::normalize::{classify, reduce, standardize, Classification};
use crate::trace::{ProofTrace, StepKind};
use crate::types::{Coeff, Literal, Sentence, StandardSentence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Step id or proof line number; `None` for whole-proof problems.
    pub at: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some(at) => write!(f, "line {at}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub first_failure: Option<Failure>,
    /// Lines accepted as assumptions rather than derived.
    pub hypotheses: Vec<usize>,
}

impl CheckReport {
    pub fn accepted(hypotheses: Vec<usize>) -> Self {
        CheckReport {
            ok: true,
            first_failure: None,
            hypotheses,
        }
    }

    pub fn rejected(at: Option<usize>, reason: impl Into<String>) -> Self {
        CheckReport {
            ok: false,
            first_failure: Some(Failure {
                at,
                reason: reason.into(),
            }),
            hypotheses: Vec::new(),
        }
    }
}

fn apply_rule(terms: impl IntoIterator<Item = (Literal, Coeff)>, bound: Option<Coeff>) -> Option<StandardSentence> {
    let mut acc: BTreeMap<Literal, Coeff> = BTreeMap::new();
    for (lit, c) in terms {
        let slot = acc.entry(lit).or_insert(0);
        *slot = slot.checked_add(c)?;
    }
    acc.retain(|_, c| *c != 0);
    if acc.values().any(|&c| c < 0) {
        return None;
    }
    let form = crate::types::LinearForm::from_terms(acc).ok()?;
    Some(StandardSentence::new(form, bound?))
}

fn check_resolve(
    left: &StandardSentence,
    right: &StandardSentence,
    pivot: Literal,
    cancel: Coeff,
) -> Result<StandardSentence, String> {
    if cancel < 1 {
        return Err(format!("cancel amount {cancel} must be at least 1"));
    }
    if left.form.coefficient(pivot) < cancel {
        return Err("pivot does not occur in the left sentence with the cancelled coefficient".into());
    }
    if right.form.coefficient(pivot.negate()) < cancel {
        return Err("negated pivot does not occur in the right sentence with the cancelled coefficient".into());
    }
    let beta = [(pivot, -cancel), (pivot.negate(), -cancel)];
    let bound = left.bound.checked_add(right.bound).and_then(|b| b.checked_sub(cancel));
    apply_rule(left.form.iter().chain(right.form.iter()).chain(beta), bound)
        .ok_or_else(|| "arithmetic overflow".to_string())
}

fn check_weaken(source: &StandardSentence, dropped: &[Literal]) -> Result<StandardSentence, String> {
    if dropped.is_empty() {
        return Err("weakening drops no literal".into());
    }
    let mut bound = source.bound;
    let mut removed = Vec::new();
    for (i, &lit) in dropped.iter().enumerate() {
        if dropped[..i].contains(&lit) {
            return Err("a literal is dropped twice".into());
        }
        let c = source.form.coefficient(lit);
        if c == 0 {
            return Err("dropped literal does not occur in the source sentence".into());
        }
        bound -= c;
        removed.push((lit, -c));
    }
    apply_rule(source.form.iter().chain(removed), Some(bound)).ok_or_else(|| "arithmetic overflow".to_string())
}

/// Check that `trace` derives a bottom sentence from `premises`.
///
/// Premise steps must equal a standard form of the cited premise; resolve
/// and weaken steps must equal the recomputed rule application on the
/// reduced forms of the cited steps. Ids must be dense and references must
/// point backwards.
pub fn check_trace(premises: &[Sentence], trace: &ProofTrace) -> CheckReport {
    let mut standard: Vec<Option<Vec<StandardSentence>>> = Vec::with_capacity(premises.len());
    for s in premises {
        standard.push(standardize(s).ok());
    }
    let mut reduced: Vec<StandardSentence> = Vec::with_capacity(trace.steps.len());
    for (pos, step) in trace.steps.iter().enumerate() {
        let fail = |reason: String| CheckReport::rejected(Some(step.id), reason);
        if step.id != pos {
            return fail(format!("step id {} out of sequence (expected {pos})", step.id));
        }
        for r in step.kind.references() {
            if r >= pos {
                return fail(format!("reference to step {r}, which does not precede step {pos}"));
            }
        }
        let expected = match &step.kind {
            StepKind::Premise { index } => match standard.get(*index) {
                None => return fail(format!("premise index {index} out of range")),
                Some(None) => return fail(format!("premise {index} has no standard form")),
                Some(Some(forms)) => {
                    if !forms.contains(&step.result) {
                        return fail(format!("sentence is not a standard form of premise {index}"));
                    }
                    step.result.clone()
                }
            },
            StepKind::Resolve {
                left,
                right,
                pivot,
                cancel,
            } => match check_resolve(&reduced[*left], &reduced[*right], *pivot, *cancel) {
                Ok(s) => s,
                Err(e) => return fail(e),
            },
            StepKind::Weaken { source, dropped } => match check_weaken(&reduced[*source], dropped) {
                Ok(s) => s,
                Err(e) => return fail(e),
            },
        };
        if expected != step.result {
            return fail("recorded sentence differs from the recomputed one".into());
        }
        reduced.push(reduce(&expected));
    }
    match trace.conclusion {
        None => CheckReport::rejected(None, "missing CONCLUSION"),
        Some(c) if c >= reduced.len() => CheckReport::rejected(None, format!("conclusion refers to missing step {c}")),
        Some(c) if classify(&reduced[c]) != Classification::Bottom => {
            CheckReport::rejected(Some(c), "conclusion is not a bottom sentence")
        }
        Some(_) => CheckReport::accepted(Vec::new()),
    }
}
