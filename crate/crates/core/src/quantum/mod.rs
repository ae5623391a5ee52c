//! Tensor models of Morse diagrams.
//!
//! A model assigns matrices to cups, caps and crossings over a finite index
//! set.  Evaluation contracts slice by slice along the Morse word, keeping a
//! sparse vector over the index assignments of the live strands.

mod checks;
mod models;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::ports::{BL, BR, TL};
use crate::diagram::{EventKind, MorseDiagram, Orientation};
use crate::poly::LaurentPoly;

pub use checks::{
    check_inverse, check_r_lambda, check_skein, check_slide, check_spin_preserving,
    check_yang_baxter, check_zigzag, skein_triple, validate, z_state_sum,
    z_state_sum_generalized, AxiomReport, SkeinError, SkeinTriple,
};
pub use models::{binary_model, bracket_model, homflypt_model};

/// Dense operator with `arity_in` lower and `arity_out` upper indices.
/// Entry order: input digits first, then output digits, most significant
/// first.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    pub arity_in: usize,
    pub arity_out: usize,
    pub dim: usize,
    pub entries: Vec<LaurentPoly>,
}

impl Operator {
    pub fn zeros(arity_in: usize, arity_out: usize, dim: usize) -> Self {
        let n = dim.pow((arity_in + arity_out) as u32);
        Operator { arity_in, arity_out, dim, entries: vec![LaurentPoly::zero(); n] }
    }

    pub fn from_fn(
        arity_in: usize,
        arity_out: usize,
        dim: usize,
        f: impl Fn(&[usize]) -> LaurentPoly,
    ) -> Self {
        let mut op = Self::zeros(arity_in, arity_out, dim);
        let k = arity_in + arity_out;
        for (flat, slot) in op.entries.iter_mut().enumerate() {
            *slot = f(&digits(flat, dim, k));
        }
        op
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &LaurentPoly {
        &self.entries[self.index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: LaurentPoly) {
        let i = self.index(idx);
        self.entries[i] = v;
    }

    /// Nonzero entries grouped by input digits.
    fn table(&self) -> BTreeMap<Vec<usize>, Vec<(Vec<usize>, LaurentPoly)>> {
        let mut t: BTreeMap<Vec<usize>, Vec<(Vec<usize>, LaurentPoly)>> = BTreeMap::new();
        let k = self.arity_in + self.arity_out;
        for (flat, v) in self.entries.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let d = digits(flat, self.dim, k);
            t.entry(d[..self.arity_in].to_vec())
                .or_default()
                .push((d[self.arity_in..].to_vec(), v.clone()));
        }
        t
    }

    /// Entries as polynomial strings, for JSON.
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|p| p.to_string()).collect()
    }
}

fn digits(mut flat: usize, dim: usize, k: usize) -> Vec<usize> {
    let mut d = vec![0; k];
    for slot in d.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationMode {
    Unoriented,
    Oriented,
}

/// A tensor model.  For unoriented models the left and right variants of
/// cups and caps coincide.  Oriented models use `pos`/`neg` for crossings
/// with both strands pointing up; other aspects are rewritten through cups
/// and caps.  A right cup or cap is traversed from left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub name: String,
    /// Labels of the index set, e.g. spins `-n, -n+2, .., n`.
    pub labels: Vec<i32>,
    pub mode: OrientationMode,
    pub cup_left: Operator,
    pub cup_right: Operator,
    pub cap_left: Operator,
    pub cap_right: Operator,
    /// Operator for `x+` events.
    pub pos: Operator,
    /// Operator for `x-` events.
    pub neg: Operator,
    pub virt: Operator,
    /// The base variable is `t = q^(1/2)` rather than `A`.
    pub half_q: bool,
    /// Skip axiom validation in `evaluate`.
    pub override_checks: bool,
}

impl ModelSpec {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Renders a value in this model's variable.
    pub fn show(&self, p: &LaurentPoly) -> String {
        if self.half_q {
            p.render_q()
        } else {
            p.to_string()
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let op = |o: &Operator| {
            serde_json::json!({
                "arity_in": o.arity_in,
                "arity_out": o.arity_out,
                "entries": o.to_strings(),
            })
        };
        serde_json::json!({
            "name": self.name,
            "labels": self.labels,
            "mode": self.mode,
            "variable": if self.half_q { "t" } else { "A" },
            "cup_left": op(&self.cup_left),
            "cup_right": op(&self.cup_right),
            "cap_left": op(&self.cap_left),
            "cap_right": op(&self.cap_right),
            "pos": op(&self.pos),
            "neg": op(&self.neg),
            "virtual": op(&self.virt),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, QuantumError> {
        let bad = |m: &str| QuantumError::BadModel(m.to_string());
        let labels: Vec<i32> = serde_json::from_value(v["labels"].clone()).map_err(|e| bad(&e.to_string()))?;
        let dim = labels.len();
        let op = |key: &str, ai: usize, ao: usize| -> Result<Operator, QuantumError> {
            let entries = v[key]["entries"].as_array().ok_or_else(|| bad(&format!("missing {key}")))?;
            let mut o = Operator::zeros(ai, ao, dim);
            if entries.len() != o.entries.len() {
                return Err(QuantumError::Shape(key.to_string()));
            }
            for (slot, e) in o.entries.iter_mut().zip(entries) {
                let s = e.as_str().ok_or_else(|| bad("entry is not a string"))?;
                *slot = s.parse().map_err(|e: crate::poly::parse::PolyParseError| bad(&e.to_string()))?;
            }
            Ok(o)
        };
        let mode = match v["mode"].as_str() {
            Some("oriented") => OrientationMode::Oriented,
            _ => OrientationMode::Unoriented,
        };
        Ok(ModelSpec {
            name: v["name"].as_str().unwrap_or("custom").to_string(),
            labels,
            mode,
            cup_left: op("cup_left", 0, 2)?,
            cup_right: op("cup_right", 0, 2)?,
            cap_left: op("cap_left", 2, 0)?,
            cap_right: op("cap_right", 2, 0)?,
            pos: op("pos", 2, 2)?,
            neg: op("neg", 2, 2)?,
            virt: op("virtual", 2, 2)?,
            half_q: v["variable"].as_str() == Some("t"),
            override_checks: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantumError {
    #[error("operator {0} has the wrong shape")]
    Shape(String),
    #[error("model fails axiom {0}")]
    Axiom(String),
    #[error("bad model: {0}")]
    BadModel(String),
}

/// One slice of a contraction schedule.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Cup { pos: usize, op: Operator },
    Cap { pos: usize, op: Operator },
    Cross { pos: usize, op: Operator },
}

impl Step {
    fn width_after(&self, w: usize) -> usize {
        match self {
            Step::Cup { .. } => w + 2,
            Step::Cap { .. } => w - 2,
            Step::Cross { .. } => w,
        }
    }
}

/// Slice-by-slice schedule with the live width after every step.
#[derive(Clone, Debug)]
pub struct ContractionPlan {
    pub steps: Vec<Step>,
    pub width_in: usize,
    pub frontier: Vec<usize>,
}

impl ContractionPlan {
    pub fn new(width_in: usize, steps: Vec<Step>) -> Self {
        let mut frontier = Vec::with_capacity(steps.len());
        let mut w = width_in;
        for s in &steps {
            w = s.width_after(w);
            frontier.push(w);
        }
        ContractionPlan { steps, width_in, frontier }
    }

    pub fn width_out(&self) -> usize {
        self.frontier.last().copied().unwrap_or(self.width_in)
    }

    pub fn max_width(&self) -> usize {
        self.frontier.iter().copied().chain([self.width_in]).max().unwrap_or(0)
    }

    /// Applies the plan to a sparse vector.
    pub fn apply(&self, state: Frontier) -> Frontier {
        let mut cur = state;
        for step in &self.steps {
            cur = apply_step(&cur, step);
        }
        cur
    }

    /// The plan as a sparse matrix: input assignment to output vector.
    pub fn matrix(&self, dim: usize) -> BTreeMap<Vec<usize>, Frontier> {
        let mut out = BTreeMap::new();
        let n = dim.pow(self.width_in as u32);
        for flat in 0..n {
            let key = digits(flat, dim, self.width_in);
            let mut start = Frontier::new();
            start.insert(key.clone(), LaurentPoly::one());
            out.insert(key, self.apply(start));
        }
        out
    }

    /// Scalar value of a closed plan.
    pub fn scalar(&self) -> LaurentPoly {
        assert_eq!(self.width_in, 0);
        let mut start = Frontier::new();
        start.insert(Vec::new(), LaurentPoly::one());
        let end = self.apply(start);
        end.get(&Vec::new()).cloned().unwrap_or_default()
    }
}

/// Sparse vector over index assignments of the live strands.
pub type Frontier = BTreeMap<Vec<usize>, LaurentPoly>;

fn apply_step(state: &Frontier, step: &Step) -> Frontier {
    let mut next = Frontier::new();
    let mut push = |k: Vec<usize>, v: LaurentPoly| {
        if v.is_zero() {
            return;
        }
        let slot = next.entry(k).or_default();
        *slot += v;
    };
    match step {
        Step::Cup { pos, op } => {
            let table = op.table();
            let outs = table.get(&Vec::new()).cloned().unwrap_or_default();
            for (key, val) in state {
                for (o, w) in &outs {
                    let mut k = key.clone();
                    k.splice(pos..pos, o.iter().copied());
                    push(k, val * w);
                }
            }
        }
        Step::Cap { pos, op } => {
            for (key, val) in state {
                let w = op.get(&key[*pos..*pos + 2]);
                if w.is_zero() {
                    continue;
                }
                let mut k = key.clone();
                k.drain(*pos..*pos + 2);
                push(k, val * w);
            }
        }
        Step::Cross { pos, op } => {
            let table = op.table();
            for (key, val) in state {
                if let Some(outs) = table.get(&key[*pos..*pos + 2]) {
                    for (o, w) in outs {
                        let mut k = key.clone();
                        k[*pos] = o[0];
                        k[*pos + 1] = o[1];
                        push(k, val * w);
                    }
                }
            }
        }
    }
    next.retain(|_, v| !v.is_zero());
    next
}

/// The same crossing rotated by a half turn, so its inputs are on top.
fn turned(op: &Operator) -> Operator {
    Operator::from_fn(2, 2, op.dim, |i| op.get(&[i[3], i[2], i[1], i[0]]).clone())
}

/// Builds the contraction schedule of a diagram under a model.
pub fn plan(d: &MorseDiagram, m: &ModelSpec, orientation: &Orientation) -> ContractionPlan {
    let mut steps = Vec::new();
    match m.mode {
        OrientationMode::Unoriented => {
            for e in d.events() {
                let pos = e.pos;
                steps.push(match e.kind {
                    EventKind::Cup => Step::Cup { pos, op: m.cup_left.clone() },
                    EventKind::Cap => Step::Cap { pos, op: m.cap_left.clone() },
                    EventKind::Pos => Step::Cross { pos, op: m.pos.clone() },
                    EventKind::Neg => Step::Cross { pos, op: m.neg.clone() },
                    EventKind::Virtual => Step::Cross { pos, op: m.virt.clone() },
                });
            }
        }
        OrientationMode::Oriented => {
            let pg = d.ports();
            let flow = pg.flow(orientation);
            for (i, e) in d.events().iter().enumerate() {
                let p = e.pos;
                match e.kind {
                    EventKind::Cup => {
                        // a cup whose left strand rises is traversed right to left
                        let left_up = flow[4 * i + TL] == Some(true);
                        let op = if left_up { &m.cup_left } else { &m.cup_right };
                        steps.push(Step::Cup { pos: p, op: op.clone() });
                    }
                    EventKind::Cap => {
                        let left_up = flow[4 * i + BL] == Some(false);
                        let op = if left_up { &m.cap_right } else { &m.cap_left };
                        steps.push(Step::Cap { pos: p, op: op.clone() });
                    }
                    EventKind::Virtual => steps.push(Step::Cross { pos: p, op: m.virt.clone() }),
                    k => {
                        let up_l = pg.strand_points_up(i, BL, &flow);
                        let up_r = pg.strand_points_up(i, BR, &flow);
                        steps.extend(oriented_crossing(m, k, p, up_l, up_r));
                    }
                }
            }
        }
    }
    ContractionPlan::new(0, steps)
}

fn crossing_op(m: &ModelSpec, k: EventKind) -> &Operator {
    if k == EventKind::Pos {
        &m.pos
    } else {
        &m.neg
    }
}

/// Steps for a classical crossing of an oriented model, given the vertical
/// direction of the strands entering at its bottom left and bottom right.
/// Mixed crossings are rotated a quarter turn into upward crossings of the
/// other kind, with a cup and a cap to bend the strand that points down.
pub fn oriented_crossing(m: &ModelSpec, k: EventKind, p: usize, up_l: bool, up_r: bool) -> Vec<Step> {
    let ks = k.switched();
    match (up_l, up_r) {
        (true, true) => vec![Step::Cross { pos: p, op: crossing_op(m, k).clone() }],
        (true, false) => vec![
            Step::Cup { pos: p, op: m.cup_right.clone() },
            Step::Cross { pos: p + 1, op: crossing_op(m, ks).clone() },
            Step::Cap { pos: p + 2, op: m.cap_right.clone() },
        ],
        (false, true) => vec![
            Step::Cup { pos: p + 2, op: m.cup_left.clone() },
            Step::Cross { pos: p + 1, op: crossing_op(m, ks).clone() },
            Step::Cap { pos: p, op: m.cap_left.clone() },
        ],
        (false, false) => vec![Step::Cross { pos: p, op: turned(crossing_op(m, k)) }],
    }
}

/// Value `Z(d)` of a diagram under a model.
pub fn evaluate(d: &MorseDiagram, m: &ModelSpec) -> Result<LaurentPoly, QuantumError> {
    evaluate_oriented(d, m, &Orientation::default())
}

pub fn evaluate_oriented(
    d: &MorseDiagram,
    m: &ModelSpec,
    orientation: &Orientation,
) -> Result<LaurentPoly, QuantumError> {
    if !m.override_checks {
        validate(m)?;
    }
    Ok(plan(d, m, orientation).scalar())
}
