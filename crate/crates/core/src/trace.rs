//! Proof traces: the step records a refutation leaves behind, and their
//! line-oriented text form.
//!
//! ```text
//! 0 P 0 (p >= 1)
//! 1 P 1 (!p >= 1)
//! 2 R 0 1 p 1 ( >= 1)
//! CONCLUSION 2
//! ```
//!
//! A weakening step drops literals from an earlier sentence:
//! `<id> W <source-id> <lit>,<lit>,... <sentence>`.

use std::fmt::Write;

use crate::error::{Error, ParseError, Result, SourceSpan};
use crate::parser::{content_lines, parse_literal, parse_standard_sentence};
use crate::printer::{print_literal, print_standard};
use crate::types::{Coeff, Literal, StandardSentence, Vocabulary};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// A standardized input sentence; `index` is its position in the
    /// instance.
    Premise {
        index: usize,
    },
    Resolve {
        left: usize,
        right: usize,
        pivot: Literal,
        cancel: Coeff,
    },
    Weaken {
        source: usize,
        dropped: Vec<Literal>,
    },
}

impl StepKind {
    /// Ids of the steps this one depends on.
    pub fn references(&self) -> Vec<usize> {
        match self {
            StepKind::Premise { .. } => vec![],
            StepKind::Resolve { left, right, .. } => vec![*left, *right],
            StepKind::Weaken { source, .. } => vec![*source],
        }
    }
}

/// One derivation step. `result` is the sentence produced by the rule
/// itself, before per-sentence reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResolveStep {
    pub id: usize,
    pub kind: StepKind,
    pub result: StandardSentence,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofTrace {
    pub steps: Vec<ResolveStep>,
    pub conclusion: Option<usize>,
}

impl ProofTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn resolve_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::Resolve { .. }))
            .count()
    }
}

pub fn write_trace(vocab: &Vocabulary, trace: &ProofTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let s = print_standard(vocab, &step.result);
        let _ = match &step.kind {
            StepKind::Premise { index } => writeln!(out, "{} P {index} {s}", step.id),
            StepKind::Resolve {
                left,
                right,
                pivot,
                cancel,
            } => writeln!(
                out,
                "{} R {left} {right} {} {cancel} {s}",
                step.id,
                print_literal(vocab, *pivot)
            ),
            StepKind::Weaken { source, dropped } => {
                let lits: Vec<String> = dropped.iter().map(|l| print_literal(vocab, *l)).collect();
                writeln!(out, "{} W {source} {} {s}", step.id, lits.join(","))
            }
        };
    }
    if let Some(c) = trace.conclusion {
        let _ = writeln!(out, "CONCLUSION {c}");
    }
    out
}

struct LineReader<'a> {
    line: &'a str,
    line_no: usize,
    offset: usize,
    pos: usize,
}

impl<'a> LineReader<'a> {
    fn error(&self, start: usize, end: usize, msg: impl Into<String>) -> Error {
        ParseError::at(self.line, SourceSpan::new(start, end), msg)
            .on_line(self.line_no, self.offset)
            .into()
    }

    /// Next whitespace-separated word, stopping before a `(`.
    fn word(&mut self, what: &str) -> Result<(&'a str, usize)> {
        let rest = &self.line[self.pos..];
        let skipped = rest.len() - rest.trim_start().len();
        let start = self.pos + skipped;
        let tail = &self.line[start..];
        let len = tail.find(|c: char| c.is_whitespace() || c == '(').unwrap_or(tail.len());
        if len == 0 {
            return Err(self.error(start, start, format!("expected {what}")));
        }
        self.pos = start + len;
        Ok((&tail[..len], start))
    }

    fn number<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let (w, at) = self.word(what)?;
        w.parse()
            .map_err(|_| self.error(at, at + w.len(), format!("expected {what}, found {w:?}")))
    }

    fn literal(&mut self, text: &str, at: usize, vocab: &mut Vocabulary) -> Result<Literal> {
        parse_literal(text, vocab).map_err(|e| self.error(at, at + text.len(), e.message))
    }

    fn sentence(&mut self, vocab: &mut Vocabulary) -> Result<StandardSentence> {
        let rest = &self.line[self.pos..];
        let start = self.pos + (rest.len() - rest.trim_start().len());
        match parse_standard_sentence(&self.line[start..], vocab) {
            Ok(s) => Ok(s),
            Err(Error::Parse(e)) => Err(self.error(start + e.span.start, start + e.span.end, e.message)),
            Err(e) => Err(e),
        }
    }
}

pub fn parse_trace(text: &str, vocab: &mut Vocabulary) -> Result<ProofTrace> {
    let mut trace = ProofTrace::default();
    for (line_no, offset, line) in content_lines(text) {
        let mut r = LineReader {
            line,
            line_no,
            offset,
            pos: 0,
        };
        let (head, at) = r.word("a step id")?;
        if head == "CONCLUSION" {
            if trace.conclusion.is_some() {
                return Err(r.error(at, at + head.len(), "duplicate CONCLUSION line"));
            }
            trace.conclusion = Some(r.number("a step id")?);
            continue;
        }
        let id: usize = head
            .parse()
            .map_err(|_| r.error(at, at + head.len(), format!("expected a step id, found {head:?}")))?;
        let (tag, at) = r.word("a step kind")?;
        let kind = match tag {
            "P" => StepKind::Premise {
                index: r.number("a premise index")?,
            },
            "R" => {
                let left = r.number("a left step id")?;
                let right = r.number("a right step id")?;
                let (lit, at) = r.word("a pivot literal")?;
                let pivot = r.literal(lit, at, vocab)?;
                let cancel = r.number("a cancel amount")?;
                StepKind::Resolve {
                    left,
                    right,
                    pivot,
                    cancel,
                }
            }
            "W" => {
                let source = r.number("a source step id")?;
                let (list, at) = r.word("a list of dropped literals")?;
                let mut dropped = Vec::new();
                let mut pos = at;
                for part in list.split(',') {
                    dropped.push(r.literal(part, pos, vocab)?);
                    pos += part.len() + 1;
                }
                StepKind::Weaken { source, dropped }
            }
            other => {
                return Err(r.error(
                    at,
                    at + other.len(),
                    format!("unknown step kind {other:?} (expected P, R or W)"),
                ))
            }
        };
        let result = r.sentence(vocab)?;
        trace.steps.push(ResolveStep { id, kind, result });
    }
    Ok(trace)
}
