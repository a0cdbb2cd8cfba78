//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cppl::checker::check_trace;
use cppl::engine::{all_resolvents, refute, EngineConfig};
use cppl::ingest::pigeonhole;
use cppl::normalize::{negate_standard, normalize_formula, standardize};
use cppl::parser::{parse_formula, parse_sentence};
use cppl::printer::{print_formula, print_sentence};
use cppl::semantics::{oracle_sat, satisfies, satisfies_standard, Oracle};
use cppl::sequent::{check_sequent_proof, parse_sequent_proof};
use cppl::{ConstraintType, Interpretation, Sentence, Variable, Verdict, Vocabulary};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ms(d: Duration) -> String {
    format!("{:.2} ms", d.as_secs_f64() * 1e3)
}

fn models<'a>(vars: &'a [Variable]) -> impl Iterator<Item = Interpretation> + 'a {
    (0..1u64 << vars.len()).map(move |m| Interpretation::from_mask(vars, m))
}

fn contradiction_replay() -> Outcome {
    let mut v = Vocabulary::new();
    let premises = cppl::parser::parse_instance("(p >= 1)\n(!p >= 1)", &mut v).unwrap();
    let start = Instant::now();
    let r = refute(&premises, &EngineConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let Some(trace) = r.trace else {
        return outcome(false, format!("verdict {:?} without a trace", r.verdict));
    };
    let steps = trace.resolve_steps();
    let conclusion = &trace.steps[trace.conclusion.unwrap()].result;
    let bottom = conclusion.form.is_empty() && conclusion.bound == 1;
    let accepted = check_trace(&premises, &trace).ok;
    outcome(
        r.verdict == Verdict::Unsat && steps == 1 && bottom && accepted && elapsed < Duration::from_millis(10),
        format!(
            "{steps} Rule II step(s), conclusion ( >= 1): {bottom}, checker accepts: {accepted}, {}",
            ms(elapsed)
        ),
    )
}

/// Instances over at most 6 variables with at most 8 sentences whose
/// normal forms have coefficients at most 4.
fn corpus(seed: u64, count: usize) -> Vec<Vec<Sentence>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, vars) = common::vocabulary(6);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let inst = common::instance(&mut rng, &vars, 8);
        let small = inst
            .iter()
            .all(|s| normalize_formula(&s.body).unwrap().iter().all(|(_, c)| c <= 4));
        if small {
            out.push(inst);
        }
    }
    out
}

fn oracle_agreement() -> Outcome {
    let cfg = EngineConfig::default();
    let start = Instant::now();
    let instances = corpus(2024, 600);
    let (mut agree, mut sat, mut unsat) = (0, 0, 0);
    for inst in &instances {
        let engine = refute(inst, &cfg).unwrap().verdict;
        let oracle = oracle_sat(inst).unwrap();
        let same = match (&engine, &oracle) {
            (Verdict::Unsat, Verdict::Unsat) => {
                unsat += 1;
                true
            }
            (e, Verdict::Sat(_)) if e.is_sat() => {
                sat += 1;
                true
            }
            _ => false,
        };
        if same {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    let n = instances.len();
    outcome(
        n >= 500 && agree == n && elapsed < Duration::from_secs(60),
        format!("{agree}/{n} agree ({sat} SAT, {unsat} UNSAT), {}", ms(elapsed)),
    )
}

fn step_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (_, vars) = common::vocabulary(5);
    let (mut applications, mut sound) = (0, 0);
    while applications < 1200 {
        let a = common::standard(&mut rng, &vars, 4, 4);
        let b = common::standard(&mut rng, &vars, 4, 4);
        for (_, _, r) in all_resolvents(&a, &b).unwrap() {
            applications += 1;
            let ok = models(&vars)
                .filter(|i| satisfies_standard(i, &a) && satisfies_standard(i, &b))
                .all(|i| satisfies_standard(&i, &r));
            if ok {
                sound += 1;
            }
        }
    }
    outcome(
        applications >= 1000 && sound == applications,
        format!("{sound}/{applications} sound"),
    )
}

fn negation_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (_, vars) = common::vocabulary(5);
    let total = 300;
    let mut exact = 0;
    for _ in 0..total {
        let s = common::standard(&mut rng, &vars, 5, 4);
        let Ok(n) = negate_standard(&s) else { continue };
        if models(&vars).all(|i| satisfies_standard(&i, &s) != satisfies_standard(&i, &n)) {
            exact += 1;
        }
    }
    outcome(exact == total, format!("{exact}/{total} exactly-one"))
}

fn standardization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let (_, vars) = common::vocabulary(5);
    let per_type = 250;
    let mut summary = Vec::new();
    let mut pass = true;
    for ctype in ConstraintType::ALL {
        let (mut equal, mut wrapped) = (0, 0);
        for _ in 0..per_type {
            let body = if rng.gen() {
                common::formula(&mut rng, &vars, 4, 3)
            } else {
                common::linear_body(&mut rng, &vars, 4, 4)
            };
            let s = common::sentence_of(&mut rng, body, ctype);
            if s.negations > 0 {
                wrapped += 1;
            }
            let Ok(parts) = standardize(&s) else { continue };
            let same =
                models(&vars).all(|i| satisfies(&i, &s).unwrap() == parts.iter().all(|p| satisfies_standard(&i, p)));
            if same {
                equal += 1;
            }
        }
        pass &= equal == per_type && wrapped > 0;
        summary.push(format!("{} {equal}/{per_type} ({wrapped} ~-wrapped)", ctype.symbol()));
    }
    outcome(pass, summary.join(", "))
}

fn checker_adversarial() -> Outcome {
    let cfg = EngineConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let (mut traces, mut accepted) = (0, 0);
    let (mut mutations, mut rejected) = (0, 0);
    let (mut changing, mut changing_rejected) = (0, 0);
    for inst in corpus(62, 400) {
        let Some(trace) = refute(&inst, &cfg).unwrap().trace else {
            continue;
        };
        traces += 1;
        if check_trace(&inst, &trace).ok {
            accepted += 1;
        }
        let conclusion = &trace.steps[trace.conclusion.unwrap()].result;
        for _ in 0..100 {
            let Some((_, bad)) = common::mutate(&mut rng, &trace) else {
                continue;
            };
            mutations += 1;
            let ok = check_trace(&inst, &bad).ok;
            if !ok {
                rejected += 1;
            }
            if bad.steps[bad.conclusion.unwrap()].result != *conclusion {
                changing += 1;
                if !ok {
                    changing_rejected += 1;
                }
            }
        }
    }
    outcome(
        traces > 0 && accepted == traces && rejected * 100 >= mutations * 95 && changing_rejected == changing,
        format!(
            "{accepted}/{traces} traces accepted, {rejected}/{mutations} mutations rejected \
             ({:.1}%), {changing_rejected}/{changing} conclusion-changing rejected",
            100.0 * rejected as f64 / mutations.max(1) as f64
        ),
    )
}

fn pigeonhole_refutation() -> Outcome {
    let cfg = EngineConfig {
        max_steps: 100_000,
        ..EngineConfig::default()
    };
    let mut pass = true;
    let mut summary = Vec::new();
    for holes in 2..=3 {
        let mut v = Vocabulary::new();
        let php = pigeonhole(&mut v, holes + 1, holes).unwrap();
        let start = Instant::now();
        let r = refute(&php, &cfg).unwrap();
        let elapsed = start.elapsed();
        let checked = r.trace.as_ref().is_some_and(|t| check_trace(&php, t).ok);
        let oracle = Oracle::default().sat(&php).unwrap();
        pass &= r.verdict == Verdict::Unsat && checked && oracle == Verdict::Unsat;
        summary.push(format!(
            "PHP({}, {holes}) {} in {} steps, {}, trace accepted: {checked}, oracle {}",
            holes + 1,
            r.verdict.label(),
            r.stats.steps,
            ms(elapsed),
            oracle.label()
        ));
    }
    outcome(pass, summary.join("; "))
}

fn sequent_proofs() -> Outcome {
    let check = |text: &str| {
        let mut v = Vocabulary::new();
        check_sequent_proof(&parse_sequent_proof(text, &mut v).unwrap())
    };
    let example = check(common::sequents::NEGATION_EXAMPLE).ok;
    let mut covered = 0;
    for case in &common::sequents::RULES {
        let bad = check(case.rejected);
        let fails_on_rule = bad
            .first_failure
            .as_ref()
            .is_some_and(|f| f.reason.starts_with(case.rule));
        if check(case.accepted).ok && !bad.ok && fails_on_rule {
            covered += 1;
        }
    }
    let rules = common::sequents::RULES.len();
    outcome(
        example && covered == rules,
        format!(
            "four-line negation proof accepted: {example}, {covered}/{rules} rules with accepted and rejected lines"
        ),
    )
}

fn parser_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let (mut v, vars) = common::vocabulary(6);
    let total = 1000;
    let mut survived = 0;
    for k in 0..total {
        let body = common::formula(&mut rng, &vars, 6, 9);
        let same = if k % 2 == 0 {
            let text = print_formula(&v, &body);
            parse_formula(&text, &mut v).is_ok_and(|f| f == body)
        } else {
            let s = Sentence {
                negations: rng.gen_range(0..=3),
                body,
                ctype: *ConstraintType::ALL.choose(&mut rng).unwrap(),
                bound: rng.gen_range(0..=40),
            };
            let text = print_sentence(&v, &s);
            parse_sentence(&text, &mut v).is_ok_and(|t| t == s)
        };
        if same {
            survived += 1;
        }
    }
    outcome(survived == total, format!("{survived}/{total} formulas and sentences"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("contradiction replay", contradiction_replay),
        ("oracle agreement", oracle_agreement),
        ("resolution step soundness", step_soundness),
        ("negation exactly-one", negation_theorem),
        ("standardization preserves models", standardization),
        ("checker adversarial suite", checker_adversarial),
        ("pigeonhole", pigeonhole_refutation),
        ("sequent proofs", sequent_proofs),
        ("parser round trip", parser_round_trip),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            n + 1,
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
