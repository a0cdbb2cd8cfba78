//! Random instances shared by the integration tests.
#![allow(dead_code)]

use cppl::normalize::normalize_formula;
use cppl::{ConstraintType, Formula, Literal, Sentence, StandardSentence, Variable, Vocabulary};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn vocabulary(n: usize) -> (Vocabulary, Vec<Variable>) {
    let mut v = Vocabulary::new();
    let vars = (1..=n).map(|i| v.intern(&format!("p{i}")).unwrap()).collect();
    (v, vars)
}

pub fn literal<R: Rng>(rng: &mut R, vars: &[Variable]) -> Literal {
    let var = *vars.choose(rng).unwrap();
    if rng.gen() {
        var.positive()
    } else {
        var.negative()
    }
}

/// Sum of 1..=max_terms scaled literals with coefficients in 1..=max_coeff.
pub fn linear_body<R: Rng>(rng: &mut R, vars: &[Variable], max_terms: usize, max_coeff: u64) -> Formula {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(Literal, u64)> = (0..n)
        .map(|_| (literal(rng, vars), rng.gen_range(1..=max_coeff)))
        .collect();
    Formula::sum_of(terms).unwrap()
}

/// Arbitrary formula tree of depth at most `depth`.
pub fn formula<R: Rng>(rng: &mut R, vars: &[Variable], depth: usize, max_coeff: u64) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return Formula::prime(*vars.choose(rng).unwrap());
    }
    match rng.gen_range(0..3) {
        0 => Formula::scale(rng.gen_range(0..=max_coeff), formula(rng, vars, depth - 1, max_coeff)),
        1 => Formula::negation(formula(rng, vars, depth - 1, max_coeff)),
        _ => Formula::add(
            formula(rng, vars, depth - 1, max_coeff),
            formula(rng, vars, depth - 1, max_coeff),
        ),
    }
}

/// A sentence with the given constraint type, bound in `0..=N+2` and up to
/// two leading `~` (an even number over `=`).
pub fn sentence_of<R: Rng>(rng: &mut R, body: Formula, ctype: ConstraintType) -> Sentence {
    sentence_with_slack(rng, body, ctype, 2)
}

fn sentence_with_slack<R: Rng>(rng: &mut R, body: Formula, ctype: ConstraintType, slack: i64) -> Sentence {
    let total = normalize_formula(&body).unwrap().coefficient_sum();
    let bound = rng.gen_range(0..=(total + slack).max(0)) as u64;
    let mut negations = rng.gen_range(0..=2u32);
    if ctype == ConstraintType::Eq {
        negations &= !1;
    }
    Sentence {
        negations,
        body,
        ctype,
        bound,
    }
}

/// Instance with at most `max_vars` variables and `max_sentences` sentences,
/// coefficients at most 4 and mixed constraint types.
pub fn instance<R: Rng>(rng: &mut R, vars: &[Variable], max_sentences: usize) -> Vec<Sentence> {
    let n = rng.gen_range(1..=max_sentences);
    instance_of(rng, vars, n, 2)
}

/// `n` sentences whose bounds are drawn from `0..=N+slack`.
pub fn instance_of<R: Rng>(rng: &mut R, vars: &[Variable], n: usize, slack: i64) -> Vec<Sentence> {
    (0..n)
        .map(|_| {
            let body = if rng.gen_ratio(1, 4) {
                formula(rng, vars, 3, 2)
            } else {
                linear_body(rng, vars, 4, 4)
            };
            let body = if normalize_formula(&body).unwrap().coefficient_sum() > 16 {
                linear_body(rng, vars, 4, 4)
            } else {
                body
            };
            let ctype = *ConstraintType::ALL.choose(rng).unwrap();
            sentence_with_slack(rng, body, ctype, slack)
        })
        .collect()
}

pub fn standard<R: Rng>(rng: &mut R, vars: &[Variable], max_terms: usize, max_coeff: i64) -> StandardSentence {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(Literal, i64)> = (0..n)
        .map(|_| (literal(rng, vars), rng.gen_range(1..=max_coeff)))
        .collect();
    let form = cppl::LinearForm::from_terms(terms).unwrap();
    let bound = rng.gen_range(-1..=form.coefficient_sum() + 2);
    StandardSentence::new(form, bound)
}

pub mod sequents;

#[allow(unused_imports)]
pub use mutation::mutate;

pub mod mutation {
    use cppl::trace::{ProofTrace, StepKind};
    use cppl::{LinearForm, StandardSentence};
    use rand::Rng;

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub enum Mutation {
        Bound,
        Pivot,
        Reference,
        Coefficient,
    }

    fn bump_coefficient<R: Rng>(rng: &mut R, s: &StandardSentence) -> Option<StandardSentence> {
        if s.form.is_empty() {
            return None;
        }
        let k = rng.gen_range(0..s.form.len());
        let delta = if rng.gen() { 1 } else { -1 };
        let terms = s
            .form
            .iter()
            .enumerate()
            .map(|(i, (l, c))| (l, if i == k { c + delta } else { c }));
        Some(StandardSentence::new(LinearForm::from_terms(terms).ok()?, s.bound))
    }

    /// Change one field of one step. `None` when the chosen field does not
    /// exist on the chosen step.
    pub fn mutate<R: Rng>(rng: &mut R, trace: &ProofTrace) -> Option<(Mutation, ProofTrace)> {
        let mut t = trace.clone();
        let k = rng.gen_range(0..t.steps.len());
        let step = &mut t.steps[k];
        let kind = match rng.gen_range(0..4) {
            0 => Mutation::Bound,
            1 => Mutation::Pivot,
            2 => Mutation::Reference,
            _ => Mutation::Coefficient,
        };
        match kind {
            Mutation::Bound => step.result.bound += if rng.gen() { 1 } else { -1 },
            Mutation::Coefficient => step.result = bump_coefficient(rng, &step.result)?,
            Mutation::Pivot => match &mut step.kind {
                StepKind::Resolve { pivot, .. } => *pivot = pivot.negate(),
                StepKind::Weaken { dropped, .. } => dropped[0] = dropped[0].negate(),
                StepKind::Premise { .. } => return None,
            },
            Mutation::Reference => match &mut step.kind {
                StepKind::Resolve { left, right, .. } => {
                    if rng.gen() {
                        std::mem::swap(left, right);
                    } else {
                        *left = rng.gen_range(0..trace.steps.len());
                    }
                }
                StepKind::Weaken { source, .. } => *source = rng.gen_range(0..trace.steps.len()),
                StepKind::Premise { index } => *index += 1,
            },
        }
        if t == *trace {
            return None;
        }
        Some((kind, t))
    }
}
