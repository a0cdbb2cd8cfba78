//! Getting instances in and out: DIMACS CNF, cardinality constraints and
//! the native one-sentence-per-line format.

use crate::error::{Error, Result};
use crate::parser::parse_instance;
use crate::printer::print_sentence;
use crate::types::{ConstraintType, Formula, Literal, Sentence, Vocabulary};

/// Translate a DIMACS CNF file. Clause `l1 … lk 0` becomes
/// `(λ1 + … + λk >= 1)` with variable `i` named `p<i>`; a repeated literal
/// is merged into a coefficient.
pub fn read_dimacs(text: &str, vocab: &mut Vocabulary) -> Result<Vec<Sentence>> {
    let err = |line: usize, msg: String| Error::Dimacs(format!("line {line}: {msg}"));
    let mut vars = None;
    let mut out = Vec::new();
    let mut clause: Vec<(Literal, u64)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        last_line = line_no;
        if line.starts_with('p') {
            if vars.is_some() {
                return Err(err(line_no, "duplicate problem line".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let n = match fields.as_slice() {
                ["p", "cnf", n, m] if m.parse::<usize>().is_ok() => n
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("bad variable count {n:?}")))?,
                _ => return Err(err(line_no, format!("malformed problem line {line:?}"))),
            };
            let mut interned = Vec::with_capacity(n);
            for i in 1..=n {
                interned.push(vocab.intern(&format!("p{i}"))?);
            }
            vars = Some(interned);
            continue;
        }
        let Some(vars) = vars.as_ref() else {
            return Err(err(line_no, "clause before the problem line".into()));
        };
        for tok in line.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| err(line_no, format!("expected an integer literal, found {tok:?}")))?;
            if value == 0 {
                if clause.is_empty() {
                    return Err(err(line_no, "empty clause".into()));
                }
                out.push(Sentence::new(
                    Formula::sum_of(clause.drain(..)).expect("clause is non-empty"),
                    ConstraintType::Ge,
                    1,
                ));
                continue;
            }
            let index = value.unsigned_abs() as usize;
            let var = *vars.get(index - 1).ok_or_else(|| {
                err(
                    line_no,
                    format!("literal {value} exceeds the declared {} variables", vars.len()),
                )
            })?;
            let lit = Literal::new(var, value > 0);
            match clause.iter_mut().find(|(l, _)| *l == lit) {
                Some((_, c)) => *c += 1,
                None => clause.push((lit, 1)),
            }
        }
    }
    if vars.is_none() {
        return Err(Error::Dimacs("missing problem line".into()));
    }
    if !clause.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    Ok(out)
}

fn cardinality(lits: &[Literal], ctype: ConstraintType, k: u64) -> Result<Sentence> {
    let body =
        Formula::sum_of(lits.iter().map(|&l| (l, 1))).ok_or_else(|| Error::Cardinality("empty literal list".into()))?;
    Ok(Sentence::new(body, ctype, k))
}

/// `(λ1 + … + λn >= k)`
pub fn at_least_k(lits: &[Literal], k: u64) -> Result<Sentence> {
    cardinality(lits, ConstraintType::Ge, k)
}

/// `(λ1 + … + λn <= k)`
pub fn at_most_k(lits: &[Literal], k: u64) -> Result<Sentence> {
    cardinality(lits, ConstraintType::Le, k)
}

/// `(λ1 + … + λn = k)`; `k` may not exceed the number of literals.
pub fn exactly_k(lits: &[Literal], k: u64) -> Result<Sentence> {
    if k > lits.len() as u64 {
        return Err(Error::Cardinality(format!(
            "exactly {k} of {} literals is unsatisfiable by construction",
            lits.len()
        )));
    }
    cardinality(lits, ConstraintType::Eq, k)
}

/// Pigeon `i` sits in some hole; hole `j` holds at most one pigeon.
/// Variable `p<i>_<j>` means pigeon `i` is in hole `j`.
pub fn pigeonhole(vocab: &mut Vocabulary, pigeons: usize, holes: usize) -> Result<Vec<Sentence>> {
    let mut grid = Vec::with_capacity(pigeons);
    for i in 1..=pigeons {
        let mut row = Vec::with_capacity(holes);
        for j in 1..=holes {
            row.push(vocab.intern(&format!("p{i}_{j}"))?.positive());
        }
        grid.push(row);
    }
    let mut out = Vec::new();
    for row in &grid {
        out.push(at_least_k(row, 1)?);
    }
    for j in 0..holes {
        let column: Vec<Literal> = grid.iter().map(|row| row[j]).collect();
        out.push(at_most_k(&column, 1)?);
    }
    Ok(out)
}

pub fn write_instance(vocab: &Vocabulary, sentences: &[Sentence]) -> String {
    sentences.iter().map(|s| print_sentence(vocab, s) + "\n").collect()
}

pub fn read_instance(text: &str, vocab: &mut Vocabulary) -> Result<Vec<Sentence>> {
    Ok(parse_instance(text, vocab)?)
}
