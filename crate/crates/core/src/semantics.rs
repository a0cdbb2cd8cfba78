//! The meaning function `I : F -> ℤ²`, the model relation, and a naive
//! truth-table oracle used as ground truth by the tests.

use crate::error::{Error, Result};
use crate::types::{Coeff, Formula, Interpretation, MeaningPair, Sentence, StandardSentence, Variable, Verdict};

pub fn evaluate(i: &Interpretation, f: &Formula) -> Result<MeaningPair> {
    Ok(match f {
        Formula::Prime(v) => {
            if i.contains(*v) {
                MeaningPair::TRUE
            } else {
                MeaningPair::FALSE
            }
        }
        Formula::Scale(n, body) => {
            let n = Coeff::try_from(*n).map_err(|_| Error::Overflow("scalar"))?;
            let z = evaluate(i, body)?;
            MeaningPair::new(
                n.checked_mul(z.first).ok_or(Error::Overflow("scalar multiplication"))?,
                n.checked_mul(z.second)
                    .ok_or(Error::Overflow("scalar multiplication"))?,
            )
        }
        Formula::Not(body) => {
            let z = evaluate(i, body)?;
            MeaningPair::new(z.second, z.first)
        }
        Formula::Add(l, r) => {
            let a = evaluate(i, l)?;
            let b = evaluate(i, r)?;
            MeaningPair::new(
                a.first.checked_add(b.first).ok_or(Error::Overflow("addition"))?,
                a.second.checked_add(b.second).ok_or(Error::Overflow("addition"))?,
            )
        }
    })
}

/// `I ⊨ s`: compare the first component against the bound, then flip once
/// per leading `~`.
pub fn satisfies(i: &Interpretation, s: &Sentence) -> Result<bool> {
    let m = evaluate(i, &s.body)?.first;
    let base = s.ctype.holds(m, Coeff::try_from(s.bound).unwrap_or(Coeff::MAX));
    // the bound conversion only saturates when it exceeds every reachable m
    Ok(base ^ (s.negations % 2 == 1))
}

pub fn satisfies_standard(i: &Interpretation, s: &StandardSentence) -> bool {
    // fits: the coefficient sum of a LinearForm is bounded by construction
    let m: Coeff = s.form.iter().filter(|&(l, _)| i.literal_holds(l)).map(|(_, c)| c).sum();
    m >= s.bound
}

pub const DEFAULT_VARIABLE_CAP: usize = 24;

/// Distinct variables of all sentences, in canonical (ordinal) order.
pub fn variables_of<'a>(sentences: impl IntoIterator<Item = &'a Sentence>) -> Vec<Variable> {
    let mut vars: Vec<Variable> = sentences.into_iter().flat_map(Sentence::variables).collect();
    vars.sort();
    vars.dedup();
    vars
}

fn standard_variables(sentences: &[StandardSentence]) -> Vec<Variable> {
    let mut vars: Vec<Variable> = sentences.iter().flat_map(|s| s.form.variables()).collect();
    vars.sort();
    vars.dedup();
    vars
}

/// Exhaustive enumeration over all `2^k` interpretations of `k` variables.
///
/// Interpretations are visited as a binary counter: bit `i` of the counter
/// decides the `i`-th variable in canonical order, so the first model found
/// is the numerically smallest.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_VARIABLE_CAP,
        }
    }
}

impl Oracle {
    pub fn with_cap(cap: usize) -> Self {
        Oracle { cap: cap.min(63) }
    }

    fn check_cap(&self, n: usize) -> Result<()> {
        if n > self.cap.min(63) {
            Err(Error::VariableCap(n, self.cap))
        } else {
            Ok(())
        }
    }

    /// First interpretation over `vars` accepted by `pred`.
    pub fn find(
        &self,
        vars: &[Variable],
        mut pred: impl FnMut(&Interpretation) -> Result<bool>,
    ) -> Result<Option<Interpretation>> {
        self.check_cap(vars.len())?;
        for mask in 0..(1u64 << vars.len()) {
            let i = Interpretation::from_mask(vars, mask);
            if pred(&i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn sat(&self, sentences: &[Sentence]) -> Result<Verdict> {
        let vars = variables_of(sentences);
        let found = self.find(&vars, |i| {
            for s in sentences {
                if !satisfies(i, s)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        match found {
            Ok(Some(w)) => Ok(Verdict::Sat(w)),
            Ok(None) => Ok(Verdict::Unsat),
            Err(Error::VariableCap(n, cap)) => Ok(Verdict::Unknown(format!(
                "{n} variables exceed the oracle cap of {cap}"
            ))),
            Err(e) => Err(e),
        }
    }

    pub fn sat_standard(&self, sentences: &[StandardSentence]) -> Verdict {
        let vars = standard_variables(sentences);
        match self.find(&vars, |i| Ok(sentences.iter().all(|s| satisfies_standard(i, s)))) {
            Ok(Some(w)) => Verdict::Sat(w),
            Ok(None) => Verdict::Unsat,
            Err(e) => Verdict::Unknown(e.to_string()),
        }
    }

    /// Every model of `premises` (over the joint variables) satisfies `goal`.
    pub fn entails(&self, premises: &[Sentence], goal: &Sentence) -> Result<bool> {
        let vars = variables_of(premises.iter().chain(std::iter::once(goal)));
        let counter = self.find(&vars, |i| {
            for s in premises {
                if !satisfies(i, s)? {
                    return Ok(false);
                }
            }
            Ok(!satisfies(i, goal)?)
        })?;
        Ok(counter.is_none())
    }

    pub fn entails_standard(&self, premises: &[StandardSentence], goal: &StandardSentence) -> Result<bool> {
        let mut all = premises.to_vec();
        all.push(goal.clone());
        let vars = standard_variables(&all);
        let counter = self.find(&vars, |i| {
            Ok(premises.iter().all(|s| satisfies_standard(i, s)) && !satisfies_standard(i, goal))
        })?;
        Ok(counter.is_none())
    }

    pub fn equivalent(&self, a: &Formula, b: &Formula) -> Result<bool> {
        let mut vars = a.variables();
        vars.extend(b.variables());
        vars.sort();
        vars.dedup();
        let witness = self.find(&vars, |i| Ok(evaluate(i, a)? != evaluate(i, b)?))?;
        Ok(witness.is_none())
    }
}

pub fn oracle_sat(sentences: &[Sentence]) -> Result<Verdict> {
    Oracle::default().sat(sentences)
}

pub fn oracle_entails(premises: &[Sentence], goal: &Sentence) -> Result<bool> {
    Oracle::default().entails(premises, goal)
}

pub fn equivalent(a: &Formula, b: &Formula) -> Result<bool> {
    Oracle::default().equivalent(a, b)
}
