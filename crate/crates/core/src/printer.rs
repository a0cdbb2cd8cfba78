//! Canonical text for every syntactic object. `parse(print(x)) == x`.

use std::fmt::Write;

use crate::types::{Formula, LinearForm, Literal, Sentence, StandardSentence, Vocabulary};

pub fn print_literal(vocab: &Vocabulary, lit: Literal) -> String {
    let name = vocab.name(lit.var());
    if lit.is_positive() {
        name.into_owned()
    } else {
        format!("!{name}")
    }
}

pub fn print_formula(vocab: &Vocabulary, f: &Formula) -> String {
    let mut out = String::new();
    write_formula(vocab, f, &mut out);
    out
}

fn write_formula(vocab: &Vocabulary, f: &Formula, out: &mut String) {
    match f {
        Formula::Add(l, r) => {
            write_formula(vocab, l, out);
            out.push_str(" + ");
            // addition is left-associative; a right-nested sum needs parentheses
            write_addend(vocab, r, out);
        }
        _ => write_addend(vocab, f, out),
    }
}

fn write_addend(vocab: &Vocabulary, f: &Formula, out: &mut String) {
    match f {
        Formula::Prime(v) => out.push_str(&vocab.name(*v)),
        Formula::Scale(n, b) => {
            let _ = write!(out, "{n} ");
            write_addend(vocab, b, out);
        }
        Formula::Not(b) => {
            out.push('!');
            write_addend(vocab, b, out);
        }
        Formula::Add(..) => {
            out.push('(');
            write_formula(vocab, f, out);
            out.push(')');
        }
    }
}

pub fn print_sentence(vocab: &Vocabulary, s: &Sentence) -> String {
    let mut out = "~".repeat(s.negations as usize);
    let _ = write!(
        out,
        "({} {} {})",
        print_formula(vocab, &s.body),
        s.ctype.symbol(),
        s.bound
    );
    out
}

/// Terms in canonical order, coefficient 1 omitted.
pub fn print_linear_form(vocab: &Vocabulary, lf: &LinearForm) -> String {
    let mut out = String::new();
    for (i, (lit, c)) in lf.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        if c != 1 {
            let _ = write!(out, "{c} ");
        }
        out.push_str(&print_literal(vocab, lit));
    }
    out
}

pub fn print_standard(vocab: &Vocabulary, s: &StandardSentence) -> String {
    if s.form.is_empty() {
        format!("( >= {})", s.bound)
    } else {
        format!("({} >= {})", print_linear_form(vocab, &s.form), s.bound)
    }
}
