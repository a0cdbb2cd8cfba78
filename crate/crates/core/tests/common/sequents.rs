//! Concrete sequent proofs: one accepted and one rejected proof per
//! derivation rule. Every rejected proof fails on its last line.

pub struct RuleCase {
    pub rule: &'static str,
    pub accepted: &'static str,
    pub rejected: &'static str,
}

/// S = {(q >= 1)}, Φ = (p >= 1).
pub const NEGATION_EXAMPLE: &str = "\
1 | {(q >= 1) ; ~(p >= 1)} |- {BOT} | Assumption
2 | {(q >= 1) ; ~(p >= 1)} |- {(p >= 1)} | Constant Rule [1]
3 | {(q >= 1) ; (p >= 1)} |- {(p >= 1)} | Initial Rule
4 | {(q >= 1)} |- {(p >= 1)} | Negation Rule [2, 3]
";

/// φ = p, n = 1.
pub const CONTRADICTION: &str = "\
1 | {} |- {(p >= 1) ; ~(p >= 1)} | Assumption
2 | {} |- {BOT} | Rule II(p) [1]
";

/// φ = p + 2 q, n = 2, so ∼Φ is (!p + 2 !q >= 2).
pub const CONTRADICTION_WIDE: &str = "\
1 | {(r >= 1)} |- {(p + 2 q >= 2) ; ~(p + 2 q >= 2)} | Assumption
2 | {(r >= 1)} |- {( >= 1)} | Rule II(p + 2 q) [1]
";

pub const RULES: [RuleCase; 8] = [
    RuleCase {
        rule: "Initial Rule",
        accepted: "1 | {(p >= 1) ; (q >= 1)} |- {(p >= 1)} | Initial Rule",
        rejected: "1 | {(p >= 1)} |- {(q >= 1)} | Initial Rule",
    },
    RuleCase {
        rule: "Rule of Monotonicity I",
        accepted: "\
1 | {(p >= 1)} |- {(q >= 1)} | Assumption
2 | {(p >= 1) ; (r >= 1)} |- {(q >= 1)} | Rule of Monotonicity I [1]",
        rejected: "\
1 | {(p >= 1)} |- {(q >= 1)} | Assumption
2 | {(r >= 1)} |- {(q >= 1)} | Rule of Monotonicity I [1]",
    },
    RuleCase {
        rule: "Rule of Monotonicity II",
        accepted: "\
1 | {(p >= 1)} |- {(q >= 1) ; (r >= 1)} | Assumption
2 | {(p >= 1)} |- {(q >= 1)} | Rule of Monotonicity II [1]",
        rejected: "\
1 | {(p >= 1)} |- {(q >= 1) ; (r >= 1)} | Assumption
2 | {(p >= 1)} |- {(s >= 1)} | Rule of Monotonicity II [1]",
    },
    RuleCase {
        rule: "Union Rule",
        accepted: "\
1 | {(p >= 1) ; (q >= 1)} |- {(p >= 1)} | Initial Rule
2 | {(p >= 1) ; (q >= 1)} |- {(q >= 1)} | Initial Rule
3 | {(p >= 1) ; (q >= 1)} |- {(p >= 1) ; (q >= 1)} | Union Rule [1, 2]",
        rejected: "\
1 | {(p >= 1) ; (q >= 1)} |- {(p >= 1)} | Initial Rule
2 | {(p >= 1) ; (q >= 1)} |- {(q >= 1)} | Initial Rule
3 | {(p >= 1) ; (q >= 1)} |- {(p >= 1) ; (r >= 1)} | Union Rule [1, 2]",
    },
    RuleCase {
        rule: "Negation Rule",
        accepted: NEGATION_EXAMPLE,
        rejected: "\
1 | {(q >= 1) ; ~(p >= 1)} |- {BOT} | Assumption
2 | {(q >= 1) ; ~(p >= 1)} |- {(p >= 1)} | Constant Rule [1]
3 | {(q >= 1) ; (p >= 1)} |- {(p >= 1)} | Initial Rule
4 | {(r >= 1)} |- {(p >= 1)} | Negation Rule [2, 3]",
    },
    RuleCase {
        rule: "Constant Rule",
        accepted: "\
1 | {(p >= 1) ; (!p >= 1)} |- {( >= 1)} | Assumption
2 | {(p >= 1) ; (!p >= 1)} |- {(q >= 3) ; (r >= 1)} | Constant Rule [1]",
        rejected: "\
1 | {(p >= 1)} |- {(q >= 1)} | Assumption
2 | {(p >= 1)} |- {(r >= 1)} | Constant Rule [1]",
    },
    RuleCase {
        rule: "Addition Rule",
        accepted: "\
1 | {} |- {(p >= 1) ; (q >= 2)} | Assumption
2 | {} |- {(p + q >= 3)} | Addition Rule [1]",
        rejected: "\
1 | {} |- {(p >= 1) ; (q >= 2)} | Assumption
2 | {} |- {(p + q >= 4)} | Addition Rule [1]",
    },
    RuleCase {
        rule: "Resolution Rule",
        accepted: "\
1 | {} |- {(2 p + !p + q >= 3)} | Assumption
2 | {} |- {(p + q >= 2)} | Resolution Rule(p) [1]",
        rejected: "\
1 | {} |- {(p + !p >= 1)} | Assumption
2 | {} |- {( >= 0)} | Resolution Rule(p) [1]",
    },
];
