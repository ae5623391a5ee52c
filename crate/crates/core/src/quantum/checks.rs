//! Symbolic axiom checks for tensor models, and the state-sum oracles the
//! tensor evaluation is compared against.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use super::{evaluate_oriented, oriented_crossing, ContractionPlan, ModelSpec, Operator, OrientationMode, QuantumError, Step};
use crate::bracket::{rotational_bracket, state_sum};
use crate::diagram::ports::{BL, BR};
use crate::diagram::{Event, EventKind, MorseDiagram, Orientation};
use crate::poly::LaurentPoly;

const KINDS: [EventKind; 2] = [EventKind::Pos, EventKind::Neg];

fn same(m: &ModelSpec, width: usize, a: Vec<Step>, b: Vec<Step>) -> bool {
    let pa = ContractionPlan::new(width, a);
    let pb = ContractionPlan::new(width, b);
    pa.matrix(m.dim()) == pb.matrix(m.dim())
}

fn cross(pos: usize, op: &Operator) -> Step {
    Step::Cross { pos, op: op.clone() }
}

fn op_of(m: &ModelSpec, k: EventKind) -> &Operator {
    match k {
        EventKind::Pos => &m.pos,
        EventKind::Neg => &m.neg,
        _ => &m.virt,
    }
}

/// Steps of a crossing with the given strand directions; unoriented models
/// ignore the directions.
fn crossing(m: &ModelSpec, k: EventKind, p: usize, up_l: bool, up_r: bool) -> Vec<Step> {
    if m.mode == OrientationMode::Unoriented || k == EventKind::Virtual {
        vec![cross(p, op_of(m, k))]
    } else {
        oriented_crossing(m, k, p, up_l, up_r)
    }
}

fn cup_for(m: &ModelSpec, left_up: bool) -> &Operator {
    if left_up {
        &m.cup_left
    } else {
        &m.cup_right
    }
}

fn cap_for(m: &ModelSpec, left_up: bool) -> &Operator {
    if left_up {
        &m.cap_right
    } else {
        &m.cap_left
    }
}

fn directions(m: &ModelSpec) -> Vec<bool> {
    match m.mode {
        OrientationMode::Unoriented => vec![true],
        OrientationMode::Oriented => vec![true, false],
    }
}

/// Axiom 0: a cup followed by a cap on one side straightens to the identity.
pub fn check_zigzag(m: &ModelSpec) -> bool {
    let pairs = [(&m.cup_right, &m.cap_right), (&m.cup_left, &m.cap_left)];
    pairs.iter().all(|(cup, cap)| {
        let a = vec![Step::Cup { pos: 1, op: (*cup).clone() }, Step::Cap { pos: 0, op: (*cap).clone() }];
        let b = vec![Step::Cup { pos: 0, op: (*cup).clone() }, Step::Cap { pos: 1, op: (*cap).clone() }];
        same(m, 1, a, Vec::new()) && same(m, 1, b, Vec::new())
    })
}

/// Axiom II: the two crossings cancel in either order.  For oriented models
/// this covers parallel strands only; antiparallel ones are the R-λ check.
pub fn check_inverse(m: &ModelSpec) -> bool {
    let pn = vec![cross(0, &m.pos), cross(0, &m.neg)];
    let np = vec![cross(0, &m.neg), cross(0, &m.pos)];
    let vv = vec![cross(0, &m.virt), cross(0, &m.virt)];
    same(m, 2, pn, Vec::new()) && same(m, 2, np, Vec::new()) && same(m, 2, vv, Vec::new())
}

/// Axiom III on three strands for both crossing kinds and, for oriented
/// models, every choice of strand directions.  Also checks the mixed
/// virtual move with one classical crossing.
pub fn check_yang_baxter(m: &ModelSpec) -> bool {
    let dirs = directions(m);
    for k in KINDS {
        for &u0 in &dirs {
            for &u1 in &dirs {
                for &u2 in &dirs {
                    // strands keep their directions as they move between positions
                    let mut a = crossing(m, k, 0, u0, u1);
                    a.extend(crossing(m, k, 1, u0, u2));
                    a.extend(crossing(m, k, 0, u1, u2));
                    let mut b = crossing(m, k, 1, u1, u2);
                    b.extend(crossing(m, k, 0, u0, u2));
                    b.extend(crossing(m, k, 1, u0, u1));
                    if !same(m, 3, a, b) {
                        return false;
                    }
                    let mut a = crossing(m, EventKind::Virtual, 0, u0, u1);
                    a.extend(crossing(m, EventKind::Virtual, 1, u0, u2));
                    a.extend(crossing(m, k, 0, u1, u2));
                    let mut b = crossing(m, k, 1, u1, u2);
                    b.extend(crossing(m, EventKind::Virtual, 0, u0, u2));
                    b.extend(crossing(m, EventKind::Virtual, 1, u0, u1));
                    if !same(m, 3, a, b) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Axiom IV: a strand slides past a cup or a cap, for classical and virtual
/// crossings and every choice of directions.
pub fn check_slide(m: &ModelSpec) -> bool {
    let dirs = directions(m);
    let kinds = [EventKind::Pos, EventKind::Neg, EventKind::Virtual];
    for k in kinds {
        let ks = if k == EventKind::Virtual { k } else { k.switched() };
        for &us in &dirs {
            for &uc in &dirs {
                let cup = cup_for(m, uc);
                // strand enters the cup from the left or from the right
                let mut a = vec![Step::Cup { pos: 1, op: cup.clone() }];
                a.extend(crossing(m, k, 0, us, uc));
                let mut b = vec![Step::Cup { pos: 0, op: cup.clone() }];
                b.extend(crossing(m, ks, 1, !uc, us));
                if !same(m, 1, a, b) {
                    return false;
                }
                let cap = cap_for(m, uc);
                let mut a = crossing(m, ks, 0, uc, us);
                a.push(Step::Cap { pos: 1, op: cap.clone() });
                let mut b = crossing(m, k, 1, us, !uc);
                b.push(Step::Cap { pos: 0, op: cap.clone() });
                if !same(m, 3, a, b) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every crossing entry with `a + b != c + d` (in labels) vanishes.
pub fn check_spin_preserving(m: &ModelSpec) -> bool {
    [&m.pos, &m.neg].iter().all(|op| {
        op.table().iter().all(|(i, outs)| {
            outs.iter().all(|(o, _)| {
                m.labels[i[0]] + m.labels[i[1]] == m.labels[o[0]] + m.labels[o[1]]
            })
        })
    })
}

/// The R-λ equation: a crossing and its inverse cancel on antiparallel
/// strands once the crossings are turned through the λ-weighted cups and
/// caps.  Also requires spin preservation.
pub fn check_r_lambda(m: &ModelSpec) -> bool {
    if !check_spin_preserving(m) {
        return false;
    }
    for k in KINDS {
        let ks = k.switched();
        for up_l in [true, false] {
            let mut a = oriented_crossing(m, k, 0, up_l, !up_l);
            a.extend(oriented_crossing(m, ks, 0, !up_l, up_l));
            if !same(m, 2, a, Vec::new()) {
                return false;
            }
        }
    }
    true
}

/// Which axioms a model satisfies.  Oriented-only checks are `None` for
/// unoriented models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub zigzag: bool,
    pub inverse: bool,
    pub yang_baxter: bool,
    pub slide: bool,
    pub spin_preserving: Option<bool>,
    pub r_lambda: Option<bool>,
}

impl AxiomReport {
    pub fn of(m: &ModelSpec) -> Self {
        let oriented = m.mode == OrientationMode::Oriented;
        AxiomReport {
            zigzag: check_zigzag(m),
            inverse: check_inverse(m),
            yang_baxter: check_yang_baxter(m),
            slide: check_slide(m),
            spin_preserving: oriented.then(|| check_spin_preserving(m)),
            r_lambda: oriented.then(|| check_r_lambda(m)),
        }
    }

    /// Name of the first failing axiom.
    pub fn first_failure(&self) -> Option<&'static str> {
        let list = [
            ("0", Some(self.zigzag)),
            ("II", Some(self.inverse)),
            ("III", Some(self.yang_baxter)),
            ("IV", Some(self.slide)),
            ("spin", self.spin_preserving),
            ("R-lambda", self.r_lambda),
        ];
        list.iter().find(|(_, ok)| *ok == Some(false)).map(|(n, _)| *n)
    }

    pub fn all_pass(&self) -> bool {
        self.first_failure().is_none()
    }
}

fn check_shapes(m: &ModelSpec) -> Result<(), QuantumError> {
    let dim = m.dim();
    let want = [
        ("cup_left", &m.cup_left, 0, 2),
        ("cup_right", &m.cup_right, 0, 2),
        ("cap_left", &m.cap_left, 2, 0),
        ("cap_right", &m.cap_right, 2, 0),
        ("pos", &m.pos, 2, 2),
        ("neg", &m.neg, 2, 2),
        ("virtual", &m.virt, 2, 2),
    ];
    for (name, op, ai, ao) in want {
        let len = dim.pow((ai + ao) as u32);
        if op.dim != dim || op.arity_in != ai || op.arity_out != ao || op.entries.len() != len {
            return Err(QuantumError::Shape(name.to_string()));
        }
    }
    Ok(())
}

/// Runs every applicable axiom check.  Results are memoized per model.
pub fn validate(m: &ModelSpec) -> Result<AxiomReport, QuantumError> {
    static SEEN: OnceLock<Mutex<HashMap<String, Result<AxiomReport, QuantumError>>>> = OnceLock::new();
    check_shapes(m)?;
    let key = m.to_json().to_string();
    let cache = SEEN.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let report = AxiomReport::of(m);
    let r = match report.first_failure() {
        Some(name) => Err(QuantumError::Axiom(name.to_string())),
        None => Ok(report),
    };
    cache.lock().unwrap().insert(key, r.clone());
    r
}

/// Proposition form of the bracket model: every state loop of Whitney
/// degree `n` contributes `(-1)^n (A^2n + A^-2n)`.
pub fn z_state_sum(d: &MorseDiagram) -> LaurentPoly {
    state_sum(d, LaurentPoly::quantum_loop)
}

/// Generalized state sum with a variable per Whitney degree.  Identifying
/// `d_n` with `(-1)^n (A^2n + A^-2n)` recovers `z_state_sum`; with `d` kept
/// for degree one it is the rotational bracket.
pub fn z_state_sum_generalized(d: &MorseDiagram) -> LaurentPoly {
    rotational_bracket(d)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkeinError {
    #[error("no classical crossing {0}")]
    UnknownCrossing(usize),
    #[error("the diagrams do not differ at exactly one crossing")]
    NotATriple,
}

/// Three diagrams that agree away from one crossing: positive, negative
/// and oriented smoothing, each with its orientation.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub plus: (MorseDiagram, Orientation),
    pub minus: (MorseDiagram, Orientation),
    pub zero: (MorseDiagram, Orientation),
}

/// Builds the skein triple at classical crossing `crossing` (counted in
/// event order) of an oriented diagram.
pub fn skein_triple(d: &MorseDiagram, orientation: &Orientation, crossing: usize) -> Result<SkeinTriple, SkeinError> {
    let classical = d.classical_events();
    let &i = classical.get(crossing).ok_or(SkeinError::UnknownCrossing(crossing))?;
    let pg = d.ports();
    let flow = pg.flow(orientation);
    let sign = pg.crossing_sign(i, &flow);
    let parallel = pg.strand_points_up(i, BL, &flow) == pg.strand_points_up(i, BR, &flow);
    let switched = d.switch_crossings(&[crossing]).expect("crossing exists");
    let (plus, minus) = if sign > 0 { (d.clone(), switched) } else { (switched, d.clone()) };
    let mut events = d.events().to_vec();
    let p = events[i].pos;
    let zero_events: Vec<usize> = (0..d.len()).filter(|&j| j != i).collect();
    if parallel {
        events.remove(i);
    } else {
        events.splice(i..=i, [Event::new(EventKind::Cap, p), Event::new(EventKind::Cup, p)]);
    }
    let zero = MorseDiagram::new(events).expect("smoothing keeps widths");
    let zo = induced_orientation(d, &flow, i, &zero, &zero_events, !parallel)?;
    Ok(SkeinTriple {
        plus: (plus, orientation.clone()),
        minus: (minus, orientation.clone()),
        zero: (zero, zo),
    })
}

/// An orientation of `zero` whose flow agrees with `flow` on every event
/// carried over from the original diagram.
fn induced_orientation(
    d: &MorseDiagram,
    flow: &[Option<bool>],
    site: usize,
    zero: &MorseDiagram,
    kept: &[usize],
    widened: bool,
) -> Result<Orientation, SkeinError> {
    let _ = d;
    let comps = zero.component_count();
    let pg = zero.ports();
    let new_index = |j: usize| if widened && j > site { j + 1 } else if !widened && j > site { j - 1 } else { j };
    for mask in 0u32..(1 << comps) {
        let o = Orientation::new((0..comps).map(|c| mask >> c & 1 == 1).collect());
        let f = pg.flow(&o);
        let ok = kept.iter().all(|&j| {
            let nj = new_index(j);
            (0..4).all(|s| flow[4 * j + s] == f[4 * nj + s])
        });
        if ok {
            return Ok(o);
        }
    }
    Err(SkeinError::NotATriple)
}

/// `Z[+] - Z[-] = (q - q^-1) Z[0]` with `q = t^2`.
pub fn check_skein(m: &ModelSpec, t: &SkeinTriple) -> Result<bool, QuantumError> {
    let ev = |(d, o): &(MorseDiagram, Orientation)| evaluate_oriented(d, m, o);
    let (p, n, z) = (ev(&t.plus)?, ev(&t.minus)?, ev(&t.zero)?);
    let z_coef = &LaurentPoly::term(1, 2) - &LaurentPoly::term(1, -2);
    Ok(&p - &n == &z_coef * &z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::standard_bracket;
    use crate::quantum::models::homflypt_with;
    use crate::quantum::{binary_model, bracket_model, homflypt_model};

    #[test]
    fn builtin_models_pass() {
        assert!(validate(&bracket_model()).is_ok());
        assert!(validate(&binary_model()).is_ok());
        for n in 1..=3 {
            let r = validate(&homflypt_model(n));
            assert!(r.is_ok(), "n = {n}: {r:?}");
        }
    }

    #[test]
    fn corrupted_models_fail() {
        let m = bracket_model();
        for (idx, e) in m.neg.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mut c = m.clone();
            c.neg.entries[idx] = LaurentPoly::zero();
            assert!(validate(&c).is_err(), "entry {idx}");
        }
        let mut c = m.clone();
        c.neg.entries[0] = LaurentPoly::zero();
        assert!(!check_yang_baxter(&c));
        let bad = homflypt_with(2, 2);
        assert!(check_spin_preserving(&bad));
        assert!(!check_r_lambda(&bad));
    }

    #[test]
    fn classical_z_is_d_times_bracket() {
        let t = MorseDiagram::parse("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0").unwrap();
        let want = &LaurentPoly::loop_value() * &standard_bracket(&t);
        assert_eq!(z_state_sum(&t), want);
    }

    #[test]
    fn skein_on_trefoil() {
        let t = MorseDiagram::parse("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0").unwrap();
        let m = homflypt_model(2);
        for c in 0..3 {
            let tr = skein_triple(&t, &Orientation::default(), c).unwrap();
            assert!(check_skein(&m, &tr).unwrap());
        }
        assert_eq!(skein_triple(&t, &Orientation::default(), 3).unwrap_err(), SkeinError::UnknownCrossing(3));
    }
}
