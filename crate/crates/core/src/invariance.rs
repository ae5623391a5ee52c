//! Invariance checks over random move sequences.
//!
//! Each invariant knows how it reacts to a classical curl (a monomial factor
//! per unit of writhe) and whether it survives virtual curls.  A sweep runs
//! seeded walks and compares the end value against the start value scaled by
//! that factor.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bracket::{binary_bracket, rotational_bracket, standard_bracket};
use crate::diagram::fuzz::{Limits, MoveClass, Walk, Walker};
use crate::diagram::{MorseDiagram, Orientation};
use crate::parity::parity_bracket;
use crate::poly::LaurentPoly;
use crate::quantum::{binary_model, bracket_model, evaluate_oriented, homflypt_model, ModelSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Invariant {
    Standard,
    Rotational,
    Binary,
    Parity,
    QuantumBracket,
    QuantumBinary,
    Homflypt(usize),
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Standard => write!(f, "bracket"),
            Invariant::Rotational => write!(f, "rot-bracket"),
            Invariant::Binary => write!(f, "binary"),
            Invariant::Parity => write!(f, "parity"),
            Invariant::QuantumBracket => write!(f, "quantum-bracket"),
            Invariant::QuantumBinary => write!(f, "quantum-binary"),
            Invariant::Homflypt(n) => write!(f, "homflypt-{n}"),
        }
    }
}

impl std::str::FromStr for Invariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "bracket" => Invariant::Standard,
            "rot-bracket" => Invariant::Rotational,
            "binary" => Invariant::Binary,
            "parity" => Invariant::Parity,
            "quantum-bracket" => Invariant::QuantumBracket,
            "quantum-binary" => Invariant::QuantumBinary,
            _ => match s.strip_prefix("homflypt-").and_then(|n| n.parse().ok()) {
                Some(n) if n >= 1 => Invariant::Homflypt(n),
                _ => return Err(format!("unknown invariant `{s}`")),
            },
        })
    }
}

/// A computed value: a polynomial, or the graph-keyed parity bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(LaurentPoly),
    Graphs(BTreeMap<String, LaurentPoly>),
}

impl Value {
    fn scaled(&self, c: &LaurentPoly) -> Value {
        match self {
            Value::Poly(p) => Value::Poly(p * c),
            Value::Graphs(g) => Value::Graphs(
                g.iter()
                    .map(|(k, p)| (k.clone(), p * c))
                    .filter(|(_, p)| !p.is_zero())
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Graphs(g) => {
                let parts: Vec<String> = g
                    .iter()
                    .map(|(k, p)| if k.is_empty() { format!("({p})") } else { format!("({p}) [{k}]") })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

fn model(inv: Invariant) -> Option<ModelSpec> {
    match inv {
        Invariant::QuantumBracket => Some(bracket_model()),
        Invariant::QuantumBinary => Some(binary_model()),
        Invariant::Homflypt(n) => Some(homflypt_model(n)),
        _ => None,
    }
}

impl Invariant {
    /// Every invariant the sweep knows, with Homflypt for `n = 1..=3`.
    pub fn all() -> Vec<Invariant> {
        vec![
            Invariant::Standard,
            Invariant::Rotational,
            Invariant::Binary,
            Invariant::Parity,
            Invariant::QuantumBracket,
            Invariant::QuantumBinary,
            Invariant::Homflypt(1),
            Invariant::Homflypt(2),
            Invariant::Homflypt(3),
        ]
    }

    pub fn compute(self, d: &MorseDiagram, o: &Orientation) -> Value {
        match self {
            Invariant::Standard => Value::Poly(standard_bracket(d)),
            Invariant::Rotational => Value::Poly(rotational_bracket(d)),
            Invariant::Binary => Value::Poly(binary_bracket(d)),
            Invariant::Parity => Value::Graphs(parity_bracket(d).coefficients()),
            _ => {
                let m = model(self).expect("quantum invariant");
                Value::Poly(evaluate_oriented(d, &m, o).expect("built-in models validate"))
            }
        }
    }

    /// Factor picked up per unit of writhe added by classical curls.
    pub fn curl_factor(self) -> LaurentPoly {
        match self {
            Invariant::Standard | Invariant::Rotational | Invariant::Parity | Invariant::QuantumBracket => LaurentPoly::term(-1, 3),
            Invariant::Binary | Invariant::QuantumBinary => LaurentPoly::term(1, 1),
            // in t = q^(1/2)
            Invariant::Homflypt(n) => LaurentPoly::term(1, 2 * (n as i32 + 1)),
        }
    }

    /// Factor for a net writhe change of `k`.
    pub fn writhe_factor(self, k: i32) -> LaurentPoly {
        let f = self.curl_factor();
        let f = if k < 0 { f.invert_base() } else { f };
        f.pow(k.unsigned_abs())
    }

    /// Unchanged by adding or removing a virtual curl.
    pub fn survives_virtual_curls(self) -> bool {
        matches!(self, Invariant::Standard | Invariant::Binary | Invariant::QuantumBinary)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub iteration: usize,
    pub invariant: String,
    pub moves: Vec<String>,
    pub end: String,
    pub expected: String,
    pub got: String,
}

/// Per-invariant tallies of a sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub checked: usize,
    /// Sequences whose end value differed from the start value at all.
    pub changed: usize,
    /// Whether a mismatch against the expected factor is a violation.
    pub required: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub class: String,
    pub seed: u64,
    pub iterations: usize,
    pub moves: usize,
    pub tallies: BTreeMap<String, Tally>,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub class: MoveClass,
    pub seed: u64,
    pub iterations: usize,
    pub walk_len: usize,
    pub limits: Limits,
    pub invariants: Vec<Invariant>,
}

impl Sweep {
    pub fn new(class: MoveClass, seed: u64, iterations: usize) -> Self {
        Sweep { class, seed, iterations, walk_len: 4, limits: Limits::default(), invariants: Invariant::all() }
    }

    /// Walks `iterations` random sequences from `d`.  Invariants are
    /// compared with the writhe factor applied; under virtual curls only the
    /// ones that survive them are required to match.
    pub fn run(&self, d: &MorseDiagram, o: &Orientation) -> SweepReport {
        let mut walker = Walker::new(self.seed, self.class).with_limits(self.limits);
        let start: Vec<Value> = self.invariants.iter().map(|i| i.compute(d, o)).collect();
        let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
        let mut violations = Vec::new();
        let mut moves = 0;
        let vcurls = matches!(self.class, MoveClass::VCurl | MoveClass::All);
        for iteration in 0..self.iterations {
            let walk = walker.walk(d, o, self.walk_len);
            moves += walk.steps.len();
            let k = walk.writhe_change();
            let (end, end_o) = walk.end();
            for (inv, v0) in self.invariants.iter().zip(&start) {
                let required = !vcurls || inv.survives_virtual_curls();
                let got = inv.compute(end, end_o);
                let expected = v0.scaled(&inv.writhe_factor(k));
                let t = tallies.entry(inv.to_string()).or_default();
                t.checked += 1;
                t.required = required;
                if got != *v0 {
                    t.changed += 1;
                }
                if required && got != expected {
                    violations.push(violation(iteration, *inv, &walk, &expected, &got));
                }
            }
        }
        SweepReport {
            class: self.class.name().into(),
            seed: self.seed,
            iterations: self.iterations,
            moves,
            tallies,
            violations,
        }
    }
}

fn violation(iteration: usize, inv: Invariant, walk: &Walk, expected: &Value, got: &Value) -> Violation {
    Violation {
        iteration,
        invariant: inv.to_string(),
        moves: walk.steps.iter().map(|s| format!("{:?}", s.mv)).collect(),
        end: walk.end().0.to_inline(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}
