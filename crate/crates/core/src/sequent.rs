//! Concrete formal proofs in the sequent calculus of derivation rules.
//!
//! One statement per line:
//!
//! ```text
//! 1 | {(q >= 1) ; ~(p >= 1)} |- {BOT} | Assumption
//! 2 | {(q >= 1) ; ~(p >= 1)} |- {(p >= 1)} | Constant Rule [1]
//! 3 | {(q >= 1) ; (p >= 1)} |- {(p >= 1)} | Initial Rule
//! 4 | {(q >= 1)} |- {(p >= 1)} | Negation Rule [2, 3]
//! ```
//!
//! Set elements are sentences in either input or standard syntax; `BOT`
//! is `( >= 1)`. Each element is replaced by its standard forms, so sets
//! are compared as sets of merged standard sentences.

use std::collections::BTreeSet;
use std::fmt;

use crate::checker::CheckReport;
use crate::error::{Error, ParseError, Result, SourceSpan};
use crate::normalize::{classify, negate_standard, normalize_formula, reduce, standardize, Classification};
use crate::parser::{content_lines, parse_element, parse_formula, parse_literal, Element};
use crate::types::{Coeff, LinearForm, Literal, StandardSentence, Vocabulary};

pub type SentenceSet = BTreeSet<StandardSentence>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Assumption,
    Initial,
    MonotonicityI,
    MonotonicityII,
    Union,
    Negation,
    Constant,
    Addition,
    /// Cancels the given literal against its negation inside one sentence.
    Resolution(Literal),
    RuleI,
    /// Rule II with the multi-literal `β`.
    RuleII(LinearForm),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Assumption => "Assumption",
            Rule::Initial => "Initial Rule",
            Rule::MonotonicityI => "Rule of Monotonicity I",
            Rule::MonotonicityII => "Rule of Monotonicity II",
            Rule::Union => "Union Rule",
            Rule::Negation => "Negation Rule",
            Rule::Constant => "Constant Rule",
            Rule::Addition => "Addition Rule",
            Rule::Resolution(_) => "Resolution Rule",
            Rule::RuleI => "Rule I",
            Rule::RuleII(_) => "Rule II",
        }
    }

    fn premises(&self) -> usize {
        match self {
            Rule::Assumption | Rule::Initial | Rule::RuleI => 0,
            Rule::Union | Rule::Negation => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentLine {
    pub line_no: usize,
    pub left: SentenceSet,
    pub right: SentenceSet,
    pub rule: Rule,
    pub refs: Vec<usize>,
}

fn set_error(line: &str, line_no: usize, offset: usize, start: usize, end: usize, msg: impl Into<String>) -> Error {
    ParseError::at(line, SourceSpan::new(start, end), msg)
        .on_line(line_no, offset)
        .into()
}

fn parse_set(
    line: &str,
    line_no: usize,
    offset: usize,
    start: usize,
    end: usize,
    vocab: &mut Vocabulary,
) -> Result<SentenceSet> {
    let field = &line[start..end];
    let lead = field.len() - field.trim_start().len();
    let inner = field.trim();
    let (open, close) = (start + lead, start + lead + inner.len());
    let Some(body) = inner.strip_prefix('{').and_then(|s| s.strip_suffix('}')) else {
        return Err(set_error(
            line,
            line_no,
            offset,
            open,
            close,
            "expected a set written as { ... }",
        ));
    };
    let mut set = SentenceSet::new();
    let mut pos = open + 1;
    if body.trim().is_empty() {
        return Ok(set);
    }
    for item in body.split(';') {
        let at = pos + (item.len() - item.trim_start().len());
        pos += item.len() + 1;
        let text = item.trim();
        if text == "BOT" {
            set.insert(StandardSentence::bottom());
            continue;
        }
        let shift = |e: Error| match e {
            Error::Parse(p) => set_error(line, line_no, offset, at + p.span.start, at + p.span.end, p.message),
            other => other,
        };
        match parse_element(text, vocab).map_err(shift)? {
            Element::Standard(s) => {
                set.insert(s);
            }
            Element::Sentence(s) => set.extend(standardize(&s)?),
        }
    }
    Ok(set)
}

fn parse_rule(
    line: &str,
    line_no: usize,
    offset: usize,
    start: usize,
    vocab: &mut Vocabulary,
) -> Result<(Rule, Vec<usize>)> {
    let text = &line[start..];
    let err = |from: usize, to: usize, msg: String| set_error(line, line_no, offset, start + from, start + to, msg);
    let name_end = text.find(['(', '[']).unwrap_or(text.len());
    let name_start = text.len() - text.trim_start().len();
    let name = text[..name_end].trim();
    let mut rest = name_end;
    let mut args = None;
    if text[rest..].starts_with('(') {
        let close = text[rest..]
            .find(')')
            .map(|i| rest + i)
            .ok_or_else(|| err(rest, text.len(), "unclosed rule argument".into()))?;
        args = Some((rest + 1, &text[rest + 1..close]));
        rest = close + 1;
    }
    let mut refs = Vec::new();
    let tail = text[rest..].trim();
    if !tail.is_empty() {
        let at = rest + (text[rest..].len() - text[rest..].trim_start().len());
        let Some(list) = tail.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return Err(err(
                at,
                text.len(),
                format!("expected line references in [ ], found {tail:?}"),
            ));
        };
        for r in list.split([',', ' ']).filter(|r| !r.is_empty()) {
            refs.push(
                r.parse()
                    .map_err(|_| err(at, text.len(), format!("bad line reference {r:?}")))?,
            );
        }
    }
    let arg = |what: &str| {
        args.ok_or_else(|| {
            err(
                name_start.min(name_end),
                name_end,
                format!("{name} needs {what} in parentheses"),
            )
        })
    };
    let rule = match name {
        "Assumption" => Rule::Assumption,
        "Initial Rule" => Rule::Initial,
        "Rule of Monotonicity I" => Rule::MonotonicityI,
        "Rule of Monotonicity II" => Rule::MonotonicityII,
        "Union Rule" => Rule::Union,
        "Negation Rule" => Rule::Negation,
        "Constant Rule" => Rule::Constant,
        "Addition Rule" => Rule::Addition,
        "Rule I" => Rule::RuleI,
        "Resolution Rule" => {
            let (at, a) = arg("the pivot variable")?;
            let lit = parse_literal(a.trim(), vocab).map_err(|e| err(at, at + a.len(), e.message))?;
            Rule::Resolution(lit)
        }
        "Rule II" => {
            let (at, a) = arg("the cancelled formula")?;
            let f = parse_formula(a, vocab).map_err(|e| err(at + e.span.start, at + e.span.end, e.message))?;
            Rule::RuleII(normalize_formula(&f)?)
        }
        other => {
            return Err(err(
                name_start.min(name_end),
                name_end,
                format!("unknown rule {other:?}"),
            ))
        }
    };
    if args.is_some() && !matches!(rule, Rule::Resolution(_) | Rule::RuleII(_)) {
        return Err(err(name_end, rest, format!("{name} takes no argument")));
    }
    Ok((rule, refs))
}

pub fn parse_sequent_proof(text: &str, vocab: &mut Vocabulary) -> Result<Vec<SequentLine>> {
    let mut lines = Vec::new();
    for (line_no, offset, line) in content_lines(text) {
        let err = |start: usize, end: usize, msg: &str| set_error(line, line_no, offset, start, end, msg);
        let bar = line
            .find('|')
            .ok_or_else(|| err(0, line.len(), "expected '|' after the line number"))?;
        let number = line[..bar].trim().trim_end_matches('.');
        let number: usize = number.parse().map_err(|_| err(0, bar, "expected a line number"))?;
        let turnstile = line[bar..]
            .find("|-")
            .map(|i| bar + i)
            .filter(|&i| i > bar)
            .ok_or_else(|| err(bar, line.len(), "expected '|-'"))?;
        let just = line[turnstile + 2..]
            .find('|')
            .map(|i| turnstile + 2 + i)
            .ok_or_else(|| err(turnstile, line.len(), "expected '|' before the justification"))?;
        let left = parse_set(line, line_no, offset, bar + 1, turnstile, vocab)?;
        let right = parse_set(line, line_no, offset, turnstile + 2, just, vocab)?;
        let (rule, refs) = parse_rule(line, line_no, offset, just + 1, vocab)?;
        lines.push(SequentLine {
            line_no: number,
            left,
            right,
            rule,
            refs,
        });
    }
    Ok(lines)
}

fn is_bottom(s: &StandardSentence) -> bool {
    classify(&reduce(s)) == Classification::Bottom
}

fn single(set: &SentenceSet) -> Option<&StandardSentence> {
    if set.len() == 1 {
        set.iter().next()
    } else {
        None
    }
}

fn sum(a: &StandardSentence, b: &StandardSentence) -> Option<StandardSentence> {
    let form = LinearForm::from_terms(a.form.iter().chain(b.form.iter())).ok()?;
    Some(StandardSentence::new(form, a.bound.checked_add(b.bound)?))
}

/// `(φ + m'p + m¬p >= n)` to `(φ + (m'-m)p >= n-m)` when `n > m' >= m`.
fn resolution_rule(s: &StandardSentence, p: Literal) -> std::result::Result<StandardSentence, String> {
    let (hi, lo, n) = (s.form.coefficient(p), s.form.coefficient(p.negate()), s.bound);
    if lo == 0 {
        return Err("the negated pivot does not occur in the premise".into());
    }
    if !(n > hi && hi >= lo) {
        return Err(format!(
            "side condition n > m' >= m fails (n = {n}, m' = {hi}, m = {lo})"
        ));
    }
    let terms = s
        .form
        .iter()
        .filter(|(l, _)| *l != p.negate())
        .map(|(l, c)| (l, if l == p { c - lo } else { c }));
    Ok(StandardSentence::new(
        LinearForm::from_terms(terms).map_err(|e| e.to_string())?,
        n - lo,
    ))
}

/// `(φ1 + β >= n1), (φ2 + ¬β >= n2)` to `(φ1 + φ2 >= n1 + n2 - |β|)`.
fn rule_two(a: &StandardSentence, b: &StandardSentence, beta: &LinearForm) -> Option<StandardSentence> {
    let anti = beta.negated();
    let covers = |s: &StandardSentence, part: &LinearForm| part.iter().all(|(l, c)| s.form.coefficient(l) >= c);
    if !covers(a, beta) || !covers(b, &anti) {
        return None;
    }
    let minus = |s: &StandardSentence, part: &LinearForm| -> Vec<(Literal, Coeff)> {
        s.form
            .iter()
            .map(|(l, c)| (l, c - part.coefficient(l)))
            .filter(|&(_, c)| c > 0)
            .collect()
    };
    let mut terms = minus(a, beta);
    terms.extend(minus(b, &anti));
    let form = LinearForm::from_terms(terms).ok()?;
    let bound = a.bound.checked_add(b.bound)?.checked_sub(beta.coefficient_sum())?;
    Some(StandardSentence::new(form, bound))
}

fn check_line(line: &SequentLine, first: bool, cited: &[&SequentLine]) -> std::result::Result<(), String> {
    let (s, t) = (&line.left, &line.right);
    match &line.rule {
        Rule::Assumption => {
            if !first {
                return Err("Assumption is only accepted on the first line".into());
            }
        }
        Rule::Initial | Rule::RuleI => {
            if !t.is_subset(s) {
                return Err("right side is not a subset of the left side".into());
            }
        }
        Rule::MonotonicityI => {
            let p = cited[0];
            if p.right != *t {
                return Err("right side differs from the cited line".into());
            }
            if !p.left.is_subset(s) {
                return Err("left side of the cited line is not a subset of this left side".into());
            }
        }
        Rule::MonotonicityII => {
            let p = cited[0];
            if p.left != *s {
                return Err("left side differs from the cited line".into());
            }
            if !t.is_subset(&p.right) {
                return Err("right side is not a subset of the cited right side".into());
            }
        }
        Rule::Union => {
            let (a, b) = (cited[0], cited[1]);
            if a.left != *s || b.left != *s {
                return Err("left sides of the cited lines differ from this left side".into());
            }
            let union: SentenceSet = a.right.union(&b.right).cloned().collect();
            if union != *t {
                return Err("right side is not the union of the cited right sides".into());
            }
        }
        Rule::Negation => {
            let (a, b) = (cited[0], cited[1]);
            if a.right != *t || b.right != *t {
                return Err("right sides of the cited lines differ from this right side".into());
            }
            let extends = |p: &SequentLine, phi: &StandardSentence| {
                let mut want = s.clone();
                want.insert(phi.clone());
                p.left == want
            };
            let candidates: Vec<&StandardSentence> = a.left.difference(s).chain(s.iter()).collect();
            let found = candidates.iter().any(|phi| {
                let Ok(neg) = negate_standard(phi) else { return false };
                (extends(a, phi) && extends(b, &neg)) || (extends(b, phi) && extends(a, &neg))
            });
            if !found {
                return Err("cited left sides are not this left side extended by a sentence and its negation".into());
            }
        }
        Rule::Constant => {
            let p = cited[0];
            if p.left != *s {
                return Err("left side differs from the cited line".into());
            }
            if !p.right.iter().any(is_bottom) {
                return Err("cited line does not derive a bottom sentence".into());
            }
        }
        Rule::Addition => {
            let p = cited[0];
            if p.left != *s {
                return Err("left side differs from the cited line".into());
            }
            let goal = single(t).ok_or("Addition Rule concludes exactly one sentence")?;
            let hit = p
                .right
                .iter()
                .any(|a| p.right.iter().any(|b| sum(a, b).as_ref() == Some(goal)));
            if !hit {
                return Err("conclusion is not the sum of two cited sentences".into());
            }
        }
        Rule::Resolution(pivot) => {
            let p = cited[0];
            if p.left != *s {
                return Err("left side differs from the cited line".into());
            }
            let goal = single(t).ok_or("Resolution Rule concludes exactly one sentence")?;
            let mut reason = "no cited sentence contains the pivot".to_string();
            for premise in p.right.iter().filter(|x| x.form.coefficient(*pivot) > 0) {
                match resolution_rule(premise, *pivot) {
                    Ok(r) if r == *goal => return Ok(()),
                    Ok(_) => reason = "conclusion differs from the recomputed sentence".into(),
                    Err(e) => reason = e,
                }
            }
            return Err(reason);
        }
        Rule::RuleII(beta) => {
            let p = cited[0];
            if p.left != *s {
                return Err("left side differs from the cited line".into());
            }
            if beta.is_empty() {
                return Err("the cancelled formula is empty".into());
            }
            let goal = single(t).ok_or("Rule II concludes exactly one sentence")?;
            let hit = p
                .right
                .iter()
                .any(|a| p.right.iter().any(|b| rule_two(a, b, beta).as_ref() == Some(goal)));
            if !hit {
                return Err("conclusion is not a Rule II resolvent of two cited sentences".into());
            }
        }
    }
    Ok(())
}

/// Verify each line against its cited rule. Line numbers must increase
/// and references must point to earlier lines.
pub fn check_sequent_proof(lines: &[SequentLine]) -> CheckReport {
    let mut hypotheses = Vec::new();
    for (pos, line) in lines.iter().enumerate() {
        let fail = |reason: String| CheckReport::rejected(Some(line.line_no), format!("{}: {reason}", line.rule));
        if pos > 0 && lines[pos - 1].line_no >= line.line_no {
            return fail("line numbers must increase".into());
        }
        if line.refs.len() != line.rule.premises() {
            return fail(format!(
                "expects {} cited line(s), found {}",
                line.rule.premises(),
                line.refs.len()
            ));
        }
        let mut cited = Vec::with_capacity(line.refs.len());
        for r in &line.refs {
            match lines[..pos].iter().find(|l| l.line_no == *r) {
                Some(l) => cited.push(l),
                None => return fail(format!("line {r} does not precede this line")),
            }
        }
        if let Err(reason) = check_line(line, pos == 0, &cited) {
            return fail(reason);
        }
        if line.rule == Rule::Assumption {
            hypotheses.push(line.line_no);
        }
    }
    CheckReport::accepted(hypotheses)
}
