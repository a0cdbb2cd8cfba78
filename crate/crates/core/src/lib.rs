//! Constrained pseudo-propositional logic (CPPL).
//!
//! Formulas are sums of scaled literals evaluated to pairs in `ℤ²`;
//! sentences compare the first component of a formula against a natural
//! bound. This crate parses and prints them, evaluates them, brings them
//! into standard form, and decides satisfiability with a resolution prover
//! whose traces can be re-checked independently.

pub mod checker;
pub mod engine;
pub mod error;
pub mod ingest;
pub mod normalize;
pub mod parser;
pub mod printer;
pub mod semantics;
pub mod sequent;
pub mod trace;
pub mod types;

pub use error::{Error, ParseError, Result, SourceSpan};
pub use types::{
    canonical_compare, negate_literal, Coeff, ConstraintType, Formula, Interpretation, LinearForm, Literal,
    MeaningPair, Sentence, StandardSentence, Variable, Verdict, Vocabulary,
};
