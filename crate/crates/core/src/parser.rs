//! Concrete syntax.
//!
//! ```text
//! formula  := addend ('+' addend)*
//! addend   := NAT addend | '!' addend | IDENT | '(' formula ')'
//! sentence := '~'* '(' formula CMP NAT ')'
//! IDENT    := [A-Za-z][A-Za-z0-9_]*      NAT := [0-9]+
//! CMP      := '>' | '>=' | '=' | '<' | '<='
//! ```
//!
//! Addition is left-associative. Instances hold one sentence per line, `#`
//! starts a comment.

use crate::error::{Error, ParseError, SourceSpan};
use crate::normalize::normalize_formula;
use crate::types::{Coeff, ConstraintType, Formula, Literal, Sentence, StandardSentence, Vocabulary};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Ident(String),
    Plus,
    Minus,
    Bang,
    Tilde,
    LParen,
    RParen,
    Cmp(ConstraintType),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Cmp(c) => format!("'{}'", c.symbol()),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse::<u64>()
                    .map_err(|_| ParseError::at(text, SourceSpan::new(start, i), "number too large"))?;
                toks.push((Tok::Nat(n), SourceSpan::new(start, i)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_owned()), SourceSpan::new(start, i)));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'!' => Tok::Bang,
            b'~' => Tok::Tilde,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Cmp(ConstraintType::Eq),
            b'>' | b'<' => {
                let eq = bytes.get(i + 1) == Some(&b'=');
                if eq {
                    i += 1;
                }
                Tok::Cmp(match (c, eq) {
                    (b'>', true) => ConstraintType::Ge,
                    (b'>', false) => ConstraintType::Gt,
                    (_, true) => ConstraintType::Le,
                    (_, false) => ConstraintType::Lt,
                })
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::at(
                    text,
                    SourceSpan::new(i, i + ch.len_utf8()),
                    format!("unexpected character {ch:?}"),
                ));
            }
        };
        i += 1;
        toks.push((tok, SourceSpan::new(start, i)));
    }
    toks.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(toks)
}

/// What a sentence slot in a proof file may hold.
#[derive(Clone, Debug)]
pub(crate) enum Element {
    Sentence(Sentence),
    Standard(StandardSentence),
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    vocab: &'a mut Vocabulary,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vocab: &'a mut Vocabulary) -> Result<Self, ParseError> {
        Ok(Parser {
            text,
            toks: lex(text)?,
            pos: 0,
            vocab,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::at(
            self.text,
            self.span(),
            format!("expected {expected}, found {}", self.peek().describe()),
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.error("end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.addend()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.addend()?;
            acc = Formula::add(acc, rhs);
        }
        Ok(acc)
    }

    fn addend(&mut self) -> Result<Formula, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(Formula::scale(n, self.addend()?))
            }
            Tok::Bang => {
                self.bump();
                Ok(Formula::negation(self.addend()?))
            }
            Tok::Ident(name) => {
                self.bump();
                let var = self
                    .vocab
                    .intern(&name)
                    .map_err(|e| ParseError::at(self.text, span, e.to_string()))?;
                Ok(Formula::Prime(var))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("a natural number bound")),
        }
    }

    fn cmp(&mut self) -> Result<ConstraintType, ParseError> {
        match *self.peek() {
            Tok::Cmp(c) => {
                self.bump();
                Ok(c)
            }
            _ => Err(self.error("a comparator (>, >=, =, <, <=)")),
        }
    }

    fn tildes(&mut self) -> u32 {
        let mut n = 0;
        while *self.peek() == Tok::Tilde {
            self.bump();
            n += 1;
        }
        n
    }

    fn sentence(&mut self) -> Result<Sentence, ParseError> {
        let negations = self.tildes();
        self.expect(Tok::LParen, "'('")?;
        let body = self.formula()?;
        let ctype = self.cmp()?;
        let bound = self.nat()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Sentence {
            negations,
            body,
            ctype,
            bound,
        })
    }

    /// `'(' formula? '>=' '-'? NAT ')'`, normalized but not simplified.
    fn standard(&mut self) -> Result<StandardSentence, Error> {
        self.expect(Tok::LParen, "'('")?;
        let form = match self.peek() {
            Tok::Cmp(_) => Default::default(),
            _ => normalize_formula(&self.formula()?)?,
        };
        if *self.peek() != Tok::Cmp(ConstraintType::Ge) {
            return Err(self.error("'>='").into());
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let span = self.span();
        let n = self.nat()?;
        let n = Coeff::try_from(n).map_err(|_| ParseError::at(self.text, span, "bound too large"))?;
        self.expect(Tok::RParen, "')'")?;
        Ok(StandardSentence::new(form, if negative { -n } else { n }))
    }

    fn element(&mut self) -> Result<Element, Error> {
        let start = self.pos;
        if *self.peek() == Tok::LParen && matches!(self.toks[self.pos + 1].0, Tok::Cmp(_)) {
            return Ok(Element::Standard(self.standard()?));
        }
        let negative_bound = self.toks.iter().skip(start).any(|(t, _)| *t == Tok::Minus);
        if negative_bound {
            return Ok(Element::Standard(self.standard()?));
        }
        Ok(Element::Sentence(self.sentence()?))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = if *self.peek() == Tok::Bang {
            self.bump();
            false
        } else {
            true
        };
        let span = self.span();
        match self.bump() {
            Tok::Ident(name) => {
                let var = self
                    .vocab
                    .intern(&name)
                    .map_err(|e| ParseError::at(self.text, span, e.to_string()))?;
                Ok(Literal::new(var, positive))
            }
            other => Err(ParseError::at(
                self.text,
                span,
                format!("expected a literal, found {}", other.describe()),
            )),
        }
    }
}

pub fn parse_formula(text: &str, vocab: &mut Vocabulary) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_sentence(text: &str, vocab: &mut Vocabulary) -> Result<Sentence, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let s = p.sentence()?;
    p.finish()?;
    Ok(s)
}

/// Parse a standard sentence as written in proof traces: `>=` only, the
/// formula may be empty and the bound may be negative. The formula is
/// normalized (merged) but not otherwise simplified.
pub fn parse_standard_sentence(text: &str, vocab: &mut Vocabulary) -> Result<StandardSentence, Error> {
    let mut p = Parser::new(text, vocab)?;
    let s = p.standard()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_literal(text: &str, vocab: &mut Vocabulary) -> Result<Literal, ParseError> {
    let mut p = Parser::new(text, vocab)?;
    let l = p.literal()?;
    p.finish()?;
    Ok(l)
}

pub(crate) fn parse_element(text: &str, vocab: &mut Vocabulary) -> Result<Element, Error> {
    let mut p = Parser::new(text, vocab)?;
    let e = p.element()?;
    p.finish()?;
    Ok(e)
}

/// Calls `f` with (1-based line number, byte offset, content) for each line
/// that is not blank after stripping `#` comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    let mut offset = 0;
    text.split('\n').enumerate().filter_map(move |(i, raw)| {
        let here = offset;
        offset += raw.len() + 1;
        let content = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        if content.trim().is_empty() {
            None
        } else {
            Some((i + 1, here, content))
        }
    })
}

/// One sentence per non-empty line; `#` starts a comment.
pub fn parse_instance(text: &str, vocab: &mut Vocabulary) -> Result<Vec<Sentence>, ParseError> {
    content_lines(text)
        .map(|(line_no, offset, line)| parse_sentence(line, vocab).map_err(|e| e.on_line(line_no, offset)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Variable;

    fn p(v: &mut Vocabulary, name: &str) -> Formula {
        Formula::Prime(v.intern(name).unwrap())
    }

    #[test]
    fn scaled_sum() {
        let mut v = Vocabulary::new();
        let f = parse_formula("3 p1 + 2 !p2", &mut v).unwrap();
        let expected = Formula::add(
            Formula::scale(3, p(&mut v, "p1")),
            Formula::scale(2, Formula::negation(p(&mut v, "p2"))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn scaled_parenthesized_body() {
        let mut v = Vocabulary::new();
        let f = parse_formula("2 (p + !q)", &mut v).unwrap();
        let expected = Formula::scale(2, Formula::add(p(&mut v, "p"), Formula::negation(p(&mut v, "q"))));
        assert_eq!(f, expected);
    }

    #[test]
    fn negated_sum() {
        let mut v = Vocabulary::new();
        let f = parse_formula("!(p + q)", &mut v).unwrap();
        assert_eq!(f, Formula::negation(Formula::add(p(&mut v, "p"), p(&mut v, "q"))));
    }

    #[test]
    fn juxtaposition_binds_tighter_than_plus() {
        let mut v = Vocabulary::new();
        let f = parse_formula("2p+q", &mut v).unwrap();
        assert_eq!(f, Formula::add(Formula::scale(2, p(&mut v, "p")), p(&mut v, "q")));
        let g = parse_formula("a + b + c", &mut v).unwrap();
        let (a, b, c) = (p(&mut v, "a"), p(&mut v, "b"), p(&mut v, "c"));
        assert_eq!(g, Formula::add(Formula::add(a, b), c));
    }

    #[test]
    fn sentences() {
        let mut v = Vocabulary::new();
        let s = parse_sentence("(2 p1 + p2 >= 2)", &mut v).unwrap();
        assert_eq!(s.negations, 0);
        assert_eq!(s.ctype, ConstraintType::Ge);
        assert_eq!(s.bound, 2);
        let s = parse_sentence("~(p = 1)", &mut v).unwrap();
        assert_eq!((s.negations, s.ctype, s.bound), (1, ConstraintType::Eq, 1));
        let s = parse_sentence("~~(p > 0)", &mut v).unwrap();
        assert_eq!((s.negations, s.ctype, s.bound), (2, ConstraintType::Gt, 0));
        for (text, ct) in [("(p<1)", ConstraintType::Lt), ("(p<=1)", ConstraintType::Le)] {
            assert_eq!(parse_sentence(text, &mut v).unwrap().ctype, ct);
        }
    }

    #[test]
    fn sentence_errors() {
        let mut v = Vocabulary::new();
        let err = parse_sentence("(p 1)", &mut v).unwrap_err();
        assert!(err.message.contains("comparator"), "{err}");
        let err = parse_sentence("(p >= q)", &mut v).unwrap_err();
        assert!(err.message.contains("natural"), "{err}");
        assert_eq!(
            err.to_string(),
            "1:7: expected a natural number bound, found identifier \"q\""
        );
        let err = parse_sentence("(p >= -1)", &mut v).unwrap_err();
        assert!(err.message.contains("natural"));
    }

    #[test]
    fn empty_and_garbage_input() {
        let mut v = Vocabulary::new();
        let err = parse_formula("", &mut v).unwrap_err();
        assert_eq!(err.span, SourceSpan::new(0, 0));
        assert!(parse_formula("   ", &mut v).is_err());
        let err = parse_formula("p + $", &mut v).unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        assert!(parse_formula("p q", &mut v).is_err());
        assert!(parse_formula("(p", &mut v).is_err());
        assert!(parse_formula("99999999999999999999999 p", &mut v).is_err());
    }

    #[test]
    fn instances() {
        let mut v = Vocabulary::new();
        assert_eq!(parse_instance("(p >= 1)\n(!p >= 1)", &mut v).unwrap().len(), 2);
        assert_eq!(parse_instance("# note\n(p >= 1)", &mut v).unwrap().len(), 1);
        assert!(parse_instance("", &mut v).unwrap().is_empty());
        assert_eq!(parse_instance("(p >= 1) # trailing\n\n   \n", &mut v).unwrap().len(), 1);
        let err = parse_instance("(p >= 1)\n\n(q >= )", &mut v).unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.to_string(), "3:7: expected a natural number bound, found ')'");
    }

    #[test]
    fn standard_sentences_allow_empty_forms_and_negative_bounds() {
        let mut v = Vocabulary::new();
        let s = parse_standard_sentence("( >= 1)", &mut v).unwrap();
        assert_eq!(s, StandardSentence::bottom());
        let s = parse_standard_sentence("(p + p >= -2)", &mut v).unwrap();
        let pv = v.lookup("p").unwrap();
        assert_eq!(s.form.terms(), &[(pv.positive(), 2)]);
        assert_eq!(s.bound, -2);
        assert!(parse_standard_sentence("(p > 1)", &mut v).is_err());
    }

    #[test]
    fn literals() {
        let mut v = Vocabulary::new();
        let l = parse_literal("!x", &mut v).unwrap();
        assert_eq!(l, Variable::from_ordinal(0).negative());
        assert!(parse_literal("2 x", &mut v).is_err());
    }
}
