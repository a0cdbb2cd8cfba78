//! Shared vocabulary: variables, literals, formulas, sentences and
//! interpretations.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::ops::Not;

use crate::error::{Error, Result};

/// Coefficients and bounds. All arithmetic on them is checked.
pub type Coeff = i64;

/// A propositional variable, identified by its ordinal in a [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    pub fn from_ordinal(ordinal: u32) -> Self {
        Variable(ordinal)
    }

    pub fn ordinal(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

/// A variable or its negation.
///
/// Packed as `ordinal << 1 | negated`, so the derived ordering is the
/// canonical one: variable ordinal first, positive before negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Variable, positive: bool) -> Self {
        Literal(var.0 << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Variable {
        Variable(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        self.negate()
    }
}

pub fn negate_literal(lit: Literal) -> Literal {
    lit.negate()
}

pub fn canonical_compare(a: Literal, b: Literal) -> Ordering {
    a.cmp(&b)
}

/// Interner mapping variable names to ordinals in first-appearance order.
///
/// Instance-scoped: variables from different vocabularies must not be mixed.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary {
    names: Vec<String>,
    index: HashMap<String, Variable>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Result<Variable> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if !is_identifier(name) {
            return Err(Error::InvalidName(name.to_owned()));
        }
        let ordinal = u32::try_from(self.names.len()).map_err(|_| Error::Overflow("vocabulary"))?;
        let var = Variable(ordinal);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), var);
        Ok(var)
    }

    pub fn lookup(&self, name: &str) -> Option<Variable> {
        self.index.get(name).copied()
    }

    /// Name of `var`; variables not created by this vocabulary print as `_<ordinal>`.
    pub fn name(&self, var: Variable) -> std::borrow::Cow<'_, str> {
        match self.names.get(var.0 as usize) {
            Some(n) => n.as_str().into(),
            None => format!("_{}", var.0).into(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        (0..self.names.len() as u32).map(Variable)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A PPL formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Prime(Variable),
    Scale(u64, Box<Formula>),
    Not(Box<Formula>),
    Add(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn prime(var: Variable) -> Self {
        Formula::Prime(var)
    }

    pub fn scale(n: u64, body: Formula) -> Self {
        Formula::Scale(n, Box::new(body))
    }

    pub fn negation(body: Formula) -> Self {
        Formula::Not(Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(left: Formula, right: Formula) -> Self {
        Formula::Add(Box::new(left), Box::new(right))
    }

    pub fn literal(lit: Literal) -> Self {
        let p = Formula::Prime(lit.var());
        if lit.is_positive() {
            p
        } else {
            Formula::negation(p)
        }
    }

    /// Left-nested sum of the given pseudo-literals; `None` when empty.
    /// A coefficient of 1 is written as the bare literal.
    pub fn sum_of(terms: impl IntoIterator<Item = (Literal, u64)>) -> Option<Formula> {
        terms
            .into_iter()
            .map(|(lit, c)| {
                if c == 1 {
                    Formula::literal(lit)
                } else {
                    Formula::scale(c, Formula::literal(lit))
                }
            })
            .reduce(Formula::add)
    }

    /// Distinct variables in first-occurrence (left-to-right) order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Variable>) {
        match self {
            Formula::Prime(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Formula::Scale(_, b) | Formula::Not(b) => b.collect_vars(out),
            Formula::Add(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Prime(_) => 1,
            Formula::Scale(_, b) | Formula::Not(b) => 1 + b.depth(),
            Formula::Add(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintType {
    Gt,
    Ge,
    Eq,
    Lt,
    Le,
}

impl ConstraintType {
    pub const ALL: [ConstraintType; 5] = [
        ConstraintType::Gt,
        ConstraintType::Ge,
        ConstraintType::Eq,
        ConstraintType::Lt,
        ConstraintType::Le,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            ConstraintType::Gt => ">",
            ConstraintType::Ge => ">=",
            ConstraintType::Eq => "=",
            ConstraintType::Lt => "<",
            ConstraintType::Le => "<=",
        }
    }

    pub fn holds(self, lhs: Coeff, rhs: Coeff) -> bool {
        match self {
            ConstraintType::Gt => lhs > rhs,
            ConstraintType::Ge => lhs >= rhs,
            ConstraintType::Eq => lhs == rhs,
            ConstraintType::Lt => lhs < rhs,
            ConstraintType::Le => lhs <= rhs,
        }
    }
}

/// A CPPL sentence: `negations` leading `~` around `(body ctype bound)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub negations: u32,
    pub body: Formula,
    pub ctype: ConstraintType,
    pub bound: u64,
}

impl Sentence {
    pub fn new(body: Formula, ctype: ConstraintType, bound: u64) -> Self {
        Sentence {
            negations: 0,
            body,
            ctype,
            bound,
        }
    }

    /// Wrap in one more `~`.
    pub fn negated(mut self) -> Self {
        self.negations += 1;
        self
    }

    pub fn variables(&self) -> Vec<Variable> {
        self.body.variables()
    }
}

/// A sum of pseudo-literals with strictly positive coefficients, sorted
/// canonically. A literal and its negation may both occur.
///
/// The coefficient sum is guaranteed to fit in [`Coeff`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    terms: Vec<(Literal, Coeff)>,
}

impl LinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    /// Merge equal literals by adding coefficients and drop zero terms.
    /// Negative coefficients are rejected.
    pub fn from_terms(terms: impl IntoIterator<Item = (Literal, Coeff)>) -> Result<Self> {
        let mut terms: Vec<(Literal, Coeff)> = terms.into_iter().collect();
        if terms.iter().any(|&(_, c)| c < 0) {
            return Err(Error::InvalidResolution("negative coefficient".into()));
        }
        terms.sort_by_key(|&(l, _)| l);
        let mut merged: Vec<(Literal, Coeff)> = Vec::with_capacity(terms.len());
        for (lit, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == lit => {
                    *acc = acc.checked_add(c).ok_or(Error::Overflow("coefficient"))?;
                }
                _ => merged.push((lit, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        merged
            .iter()
            .try_fold(0 as Coeff, |acc, &(_, c)| acc.checked_add(c))
            .ok_or(Error::Overflow("coefficient sum"))?;
        Ok(LinearForm { terms: merged })
    }

    /// Caller guarantees the terms are sorted, merged, positive and
    /// that their sum fits.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Literal, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(_, c)| c > 0));
        LinearForm { terms }
    }

    pub fn terms(&self) -> &[(Literal, Coeff)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (Literal, Coeff)> + '_ {
        self.terms.iter().copied()
    }

    pub fn coefficient(&self, lit: Literal) -> Coeff {
        match self.terms.binary_search_by_key(&lit, |&(l, _)| l) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `N`, the largest first component the form can take.
    pub fn coefficient_sum(&self) -> Coeff {
        self.terms.iter().map(|&(_, c)| c).sum()
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self.terms.iter().map(|&(l, _)| l.var()).collect();
        vars.dedup();
        vars
    }

    /// Every literal flipped, coefficients kept.
    pub fn negated(&self) -> LinearForm {
        let mut terms: Vec<_> = self.terms.iter().map(|&(l, c)| (l.negate(), c)).collect();
        terms.sort_by_key(|&(l, _)| l);
        LinearForm { terms }
    }

    pub fn to_formula(&self) -> Option<Formula> {
        Formula::sum_of(self.terms.iter().map(|&(l, c)| (l, c as u64)))
    }
}

/// `(form >= bound)`. The bound is signed so that intermediate arithmetic
/// stays closed; a bound `<= 0` is a tautology.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardSentence {
    pub form: LinearForm,
    pub bound: Coeff,
}

impl StandardSentence {
    pub fn new(form: LinearForm, bound: Coeff) -> Self {
        StandardSentence { form, bound }
    }

    /// The canonical unsatisfiable sentence `( >= 1)`.
    pub fn bottom() -> Self {
        StandardSentence {
            form: LinearForm::new(),
            bound: 1,
        }
    }

    /// `(l1 + ... + lk >= 1)` with distinct literals.
    pub fn clause(lits: impl IntoIterator<Item = Literal>) -> Result<Self> {
        Ok(StandardSentence {
            form: LinearForm::from_terms(lits.into_iter().map(|l| (l, 1)))?,
            bound: 1,
        })
    }

    /// Every coefficient is 1 and the bound is 1.
    pub fn is_clause(&self) -> bool {
        self.bound == 1 && self.form.iter().all(|(_, c)| c == 1)
    }
}

/// The set of variables that are true; everything else is false.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Interpretation {
    true_vars: BTreeSet<Variable>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, var: Variable) -> bool {
        self.true_vars.contains(&var)
    }

    pub fn insert(&mut self, var: Variable) {
        self.true_vars.insert(var);
    }

    pub fn literal_holds(&self, lit: Literal) -> bool {
        self.contains(lit.var()) == lit.is_positive()
    }

    /// Bit `i` of `mask` decides `vars[i]`.
    pub fn from_mask(vars: &[Variable], mask: u64) -> Self {
        vars.iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    pub fn true_vars(&self) -> impl Iterator<Item = Variable> + '_ {
        self.true_vars.iter().copied()
    }
}

impl FromIterator<Variable> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Variable>>(iter: T) -> Self {
        Interpretation {
            true_vars: iter.into_iter().collect(),
        }
    }
}

/// Meaning of a formula: a point of ℤ².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MeaningPair {
    pub first: Coeff,
    pub second: Coeff,
}

impl MeaningPair {
    pub const TRUE: MeaningPair = MeaningPair { first: 1, second: 0 };
    pub const FALSE: MeaningPair = MeaningPair { first: 0, second: 1 };

    pub fn new(first: Coeff, second: Coeff) -> Self {
        MeaningPair { first, second }
    }
}

/// Outcome of a satisfiability question.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Satisfiable, with a model.
    Sat(Interpretation),
    /// Satisfiable because saturation finished without deriving ⊥. No model
    /// is produced.
    Saturated,
    Unsat,
    Unknown(String),
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_) | Verdict::Saturated)
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Sat(_) | Verdict::Saturated => "SAT",
            Verdict::Unsat => "UNSAT",
            Verdict::Unknown(_) => "UNKNOWN",
        }
    }
}
