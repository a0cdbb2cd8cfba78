//! Normal form for formulas and standard form for sentences.
//!
//! Everything here preserves models exactly. [`reduce`] is the per-sentence
//! canonicalization the prover applies to every sentence it keeps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::types::{Coeff, ConstraintType, Formula, LinearForm, Literal, Sentence, StandardSentence};

/// Push scalings and negations down to the variables, merge equal literals
/// and drop zero coefficients.
pub fn normalize_formula(f: &Formula) -> Result<LinearForm> {
    let mut acc: BTreeMap<Literal, Coeff> = BTreeMap::new();
    collect(f, 1, true, &mut acc)?;
    LinearForm::from_terms(acc)
}

fn collect(f: &Formula, mult: Coeff, positive: bool, acc: &mut BTreeMap<Literal, Coeff>) -> Result<()> {
    match f {
        Formula::Prime(v) => {
            let slot = acc.entry(Literal::new(*v, positive)).or_insert(0);
            *slot = slot.checked_add(mult).ok_or(Error::Overflow("normalization"))?;
        }
        Formula::Scale(n, body) => {
            if *n == 0 || mult == 0 {
                return Ok(());
            }
            let n = Coeff::try_from(*n).map_err(|_| Error::Overflow("normalization"))?;
            let m = mult.checked_mul(n).ok_or(Error::Overflow("normalization"))?;
            collect(body, m, positive, acc)?;
        }
        Formula::Not(body) => collect(body, mult, !positive, acc)?,
        Formula::Add(l, r) => {
            collect(l, mult, positive, acc)?;
            collect(r, mult, positive, acc)?;
        }
    }
    Ok(())
}

pub fn coefficient_sum(lf: &LinearForm) -> Coeff {
    lf.coefficient_sum()
}

fn bound_of(n: u64) -> Result<Coeff> {
    Coeff::try_from(n).map_err(|_| Error::Overflow("bound"))
}

/// Rewrite a sentence as an equivalent conjunction of `>=` sentences.
///
/// With `N` the coefficient sum of the normalized body:
/// `>= n` is kept, `> n` becomes `>= n+1`, `<= n` becomes `(¬φ >= N-n)`,
/// `< n` becomes `(¬φ >= N-n+1)` and `= n` yields both `>= n` and `<= n`.
/// Each leading `~` is eliminated with [`negate_standard`]; an odd number of
/// them over `=` is rejected.
pub fn standardize(s: &Sentence) -> Result<Vec<StandardSentence>> {
    let form = normalize_formula(&s.body)?;
    let n = bound_of(s.bound)?;
    let total = form.coefficient_sum();
    let at_most = |k: Coeff| -> Result<StandardSentence> {
        let b = total.checked_sub(k).ok_or(Error::Overflow("bound"))?;
        Ok(StandardSentence::new(form.negated(), b))
    };
    let base = match s.ctype {
        ConstraintType::Ge => vec![StandardSentence::new(form.clone(), n)],
        ConstraintType::Gt => vec![StandardSentence::new(
            form.clone(),
            n.checked_add(1).ok_or(Error::Overflow("bound"))?,
        )],
        ConstraintType::Le => vec![at_most(n)?],
        ConstraintType::Lt => vec![at_most(n.checked_sub(1).ok_or(Error::Overflow("bound"))?)?],
        ConstraintType::Eq => vec![StandardSentence::new(form.clone(), n), at_most(n)?],
    };
    if s.negations.is_multiple_of(2) {
        return Ok(base);
    }
    match base.as_slice() {
        [single] => Ok(vec![negate_standard(single)?]),
        _ => Err(Error::NegatedEquality),
    }
}

/// `∼(φ >= n) = (¬φ >= N - n + 1)`.
pub fn negate_standard(s: &StandardSentence) -> Result<StandardSentence> {
    let bound = s
        .form
        .coefficient_sum()
        .checked_sub(s.bound)
        .and_then(|b| b.checked_add(1))
        .ok_or(Error::Overflow("negation bound"))?;
    Ok(StandardSentence::new(s.form.negated(), bound))
}

/// Build a standard sentence from raw (possibly repeated, possibly zero)
/// pseudo-literals.
pub fn merge_duplicates(terms: &[(Literal, Coeff)], bound: Coeff) -> Result<StandardSentence> {
    Ok(StandardSentence::new(
        LinearForm::from_terms(terms.iter().copied())?,
        bound,
    ))
}

/// For every variable carrying both polarities, `m'p + m¬p` with
/// `m' >= m` becomes `(m'-m)p` and the bound drops by `m`. Exact: the first
/// component of `m'p + m¬p` is `(m'-m)[p∈I] + m`.
pub fn cancel_complementary(s: &StandardSentence) -> StandardSentence {
    let terms = s.form.terms();
    let mut out = Vec::with_capacity(terms.len());
    let mut bound = s.bound;
    let mut i = 0;
    while i < terms.len() {
        let (lit, c) = terms[i];
        match terms.get(i + 1) {
            Some(&(other, d)) if other == lit.negate() => {
                let m = c.min(d);
                // both coefficients are part of a sum that fits, so this cannot overflow
                bound -= m;
                if c > m {
                    out.push((lit, c - m));
                } else if d > m {
                    out.push((other, d - m));
                }
                i += 2;
            }
            _ => {
                out.push((lit, c));
                i += 1;
            }
        }
    }
    StandardSentence::new(LinearForm::from_sorted_unchecked(out), bound)
}

/// Cap every coefficient at the bound. No first component can exceed
/// the bound by using more than `bound` of any single literal.
pub fn saturate(s: &StandardSentence) -> StandardSentence {
    if s.bound <= 0 {
        return s.clone();
    }
    let b = s.bound;
    let terms = s.form.iter().map(|(l, c)| (l, c.min(b))).collect();
    StandardSentence::new(LinearForm::from_sorted_unchecked(terms), b)
}

fn gcd(mut a: Coeff, mut b: Coeff) -> Coeff {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divide all coefficients by their gcd `g` and round the bound up; the
/// first component is always a multiple of `g`.
pub fn divide_by_gcd(s: &StandardSentence) -> StandardSentence {
    if s.bound <= 0 || s.form.is_empty() {
        return s.clone();
    }
    let g = s.form.iter().fold(0, |g, (_, c)| gcd(g, c));
    if g <= 1 {
        return s.clone();
    }
    let terms = s.form.iter().map(|(l, c)| (l, c / g)).collect();
    let bound = s.bound / g + Coeff::from(s.bound % g != 0);
    StandardSentence::new(LinearForm::from_sorted_unchecked(terms), bound)
}

/// Cancellation, then saturation and gcd division until stable. The
/// result has the same models as the input.
pub fn reduce(s: &StandardSentence) -> StandardSentence {
    let mut cur = cancel_complementary(s);
    loop {
        let next = divide_by_gcd(&saturate(&cur));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Tautology,
    Bottom,
    Contingent,
}

/// Expects a cancelled sentence (no complementary pair).
pub fn classify(s: &StandardSentence) -> Classification {
    if s.bound <= 0 {
        Classification::Tautology
    } else if s.form.coefficient_sum() < s.bound {
        Classification::Bottom
    } else {
        Classification::Contingent
    }
}
