//! Bracket-family state sums: standard, rotational and binary.
//!
//! States are enumerated explicitly (2^V for V classical crossings), so these
//! are meant for diagrams of moderate size.

use serde::Serialize;

use crate::diagram::{EventKind, Loop, MorseDiagram, Orientation, PortGraph, Resolution};
use crate::diagram::ports::{BL, BR, TL};
use crate::poly::{LaurentPoly, RawBracketPoly};

/// Hard limit on classical crossings for explicit state enumeration.
pub const MAX_STATE_CROSSINGS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Smoothing {
    A,
    B,
}

/// Resolution of a crossing event under a smoothing.  The A-smoothing of
/// `x+` is vertical, that of `x-` horizontal.
pub fn resolution(kind: EventKind, s: Smoothing) -> Resolution {
    match (kind, s) {
        (EventKind::Pos, Smoothing::A) | (EventKind::Neg, Smoothing::B) => Resolution::Vertical,
        (EventKind::Pos, Smoothing::B) | (EventKind::Neg, Smoothing::A) => Resolution::Horizontal,
        _ => Resolution::Pass,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothingState {
    /// One entry per classical crossing, by crossing id.
    pub choices: Vec<Smoothing>,
}

impl SmoothingState {
    pub fn a_count(&self) -> usize {
        self.choices.iter().filter(|&&s| s == Smoothing::A).count()
    }

    pub fn b_count(&self) -> usize {
        self.choices.len() - self.a_count()
    }

    /// Exponent of `A` in the state weight.
    pub fn weight_exp(&self) -> i32 {
        self.a_count() as i32 - self.b_count() as i32
    }
}

/// A smoothed state with its loops.
pub struct StateLoops<'a> {
    pub state: SmoothingState,
    pub loops: Vec<Loop>,
    pub graph: &'a PortGraph,
    classical: &'a [usize],
}

impl StateLoops<'_> {
    fn resolution_of(&self, event: usize) -> Resolution {
        let id = self.classical.binary_search(&event).unwrap();
        resolution(self.graph.kind(event), self.state.choices[id])
    }
}

/// Calls `f` once per state, in binary counting order of the crossing ids
/// (crossing 0 is the lowest bit, 0 = A).
pub fn for_each_state(d: &MorseDiagram, mut f: impl FnMut(&StateLoops<'_>)) {
    let pg = d.ports();
    let classical = d.classical_events();
    let v = classical.len();
    assert!(v <= MAX_STATE_CROSSINGS, "too many classical crossings for state enumeration");
    for mask in 0u64..(1u64 << v) {
        let choices: Vec<Smoothing> = (0..v)
            .map(|i| if mask >> i & 1 == 0 { Smoothing::A } else { Smoothing::B })
            .collect();
        let res: Vec<Resolution> = classical
            .iter()
            .zip(&choices)
            .map(|(&e, &s)| resolution(pg.kind(e), s))
            .collect();
        let loops = pg.trace(|e| res[classical.binary_search(&e).unwrap()]);
        f(&StateLoops {
            state: SmoothingState { choices },
            loops,
            graph: &pg,
            classical: &classical,
        });
    }
}

/// Generic sum `Σ A^{#A-#B} Π loop_value(C)`.
pub fn state_sum(d: &MorseDiagram, loop_value: impl Fn(u32) -> LaurentPoly) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for_each_state(d, |s| {
        let mut term = LaurentPoly::term(1, s.state.weight_exp());
        for l in &s.loops {
            term = &term * &loop_value(l.whitney());
        }
        total += term;
    });
    total
}

/// `<K> = Σ A^{#A-#B} d^{|S|-1}` with `d = -A^2 - A^-2`.  Virtual crossings
/// are passed through.  The empty diagram evaluates to 1.
pub fn standard_bracket(d: &MorseDiagram) -> LaurentPoly {
    let dv = LaurentPoly::loop_value();
    let mut total = LaurentPoly::zero();
    for_each_state(d, |s| {
        let k = s.loops.len().saturating_sub(1) as u32;
        total += LaurentPoly::term(1, s.state.weight_exp()) * dv.pow(k);
    });
    total
}

/// Writhe-normalized bracket `(-A^3)^{-w} <K>`.
pub fn normalized_f(d: &MorseDiagram, orientation: &Orientation) -> LaurentPoly {
    let w = d.writhe(orientation);
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::term(sign, -3 * w) * standard_bracket(d)
}

/// Rotational bracket with `A`, `B` and `d` kept symbolic.  Every loop gets
/// the variable of its Whitney class; there is no free-loop discount.
pub fn rotational_bracket_raw(d: &MorseDiagram) -> RawBracketPoly {
    let mut total = RawBracketPoly::zero();
    for_each_state(d, |s| {
        let mut term = RawBracketPoly::a_pow(s.state.a_count() as i32)
            * RawBracketPoly::b_pow(s.state.b_count() as i32);
        for l in &s.loops {
            term = &term * &RawBracketPoly::loop_var(l.whitney());
        }
        total += term;
    });
    total
}

/// Rotational bracket specialized at `B = A^{-1}`, `d = -A^2 - A^-2`.
pub fn rotational_bracket(d: &MorseDiagram) -> LaurentPoly {
    state_sum(d, LaurentPoly::loop_var)
}

/// Flat specialization `A = B = -1` of the rotational bracket.
pub fn rotational_bracket_flat(d: &MorseDiagram) -> LaurentPoly {
    rotational_bracket(d).flat()
}

/// Number of 2-colorings of the state loops such that the two arcs at every
/// smoothing site get different colors.
fn proper_colorings(s: &StateLoops<'_>) -> u64 {
    let mut loop_of = std::collections::HashMap::new();
    for (i, l) in s.loops.iter().enumerate() {
        for &(a, b) in &l.steps {
            loop_of.insert(a, i);
            loop_of.insert(b, i);
        }
    }
    let n = s.loops.len();
    // union-find with parity
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![0u8; n];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, parity, parent[x]);
        parity[x] ^= p;
        parent[x] = r;
        (r, parity[x])
    }
    for &e in s.classical {
        let (p1, p2) = match s.resolution_of(e) {
            Resolution::Vertical => (4 * e + BL, 4 * e + BR),
            _ => (4 * e + BL, 4 * e + TL),
        };
        let (a, b) = (loop_of[&p1], loop_of[&p2]);
        let (ra, pa) = find(&mut parent, &mut parity, a);
        let (rb, pb) = find(&mut parent, &mut parity, b);
        if ra == rb {
            if pa == pb {
                return 0;
            }
        } else {
            parent[ra] = rb;
            parity[ra] = pa ^ pb ^ 1;
        }
    }
    let roots = (0..n).filter(|&x| find(&mut parent, &mut parity, x).0 == x).count();
    1u64 << roots
}

/// Binary bracket `{K}`: states weighted by `A^{#A-#B}` times the number of
/// proper 2-colorings of their loops.
pub fn binary_bracket(d: &MorseDiagram) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    for_each_state(d, |s| {
        let c = proper_colorings(s);
        if c > 0 {
            total += LaurentPoly::term(c as i64, s.state.weight_exp());
        }
    });
    total
}

/// `A^{-w} {K}`.
pub fn binary_normalized(d: &MorseDiagram, orientation: &Orientation) -> LaurentPoly {
    LaurentPoly::term(1, -d.writhe(orientation)) * binary_bracket(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> MorseDiagram {
        MorseDiagram::parse(s).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    const TREFOIL: &str = "cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0";

    #[test]
    fn unknot_values() {
        let u = MorseDiagram::unknot();
        assert!(standard_bracket(&u).is_one());
        assert_eq!(rotational_bracket(&u), LaurentPoly::loop_value());
        assert_eq!(binary_bracket(&u), LaurentPoly::int(2));
    }

    #[test]
    fn trefoil_jones() {
        let t = d(TREFOIL);
        let f = normalized_f(&t, &Orientation::default());
        // right-handed trefoil: V(t) = t + t^3 - t^4 under A = t^{-1/4}
        assert_eq!(f, p("A^-4 + A^-12 - A^-16"));
        let fm = normalized_f(&t.mirror(), &Orientation::default());
        assert_eq!(fm, f.invert_base());
    }

    #[test]
    fn curls() {
        let pos = d("cup 0 / cup 1 / x+ 0 / cap 1 / cap 0");
        let neg = d("cup 0 / cup 1 / x- 0 / cap 1 / cap 0");
        assert_eq!(standard_bracket(&pos), p("-A^3"));
        assert_eq!(standard_bracket(&neg), p("-A^-3"));
        assert!(normalized_f(&pos, &Orientation::default()).is_one());
        assert_eq!(binary_bracket(&pos), p("2 A"));
        assert_eq!(binary_bracket(&neg), p("2 A^-1"));
        assert_eq!(binary_normalized(&pos, &Orientation::default()), LaurentPoly::int(2));
    }

    #[test]
    fn disjoint_unknot_doubles_binary() {
        let t = d(TREFOIL);
        let two = t.disjoint_union(&MorseDiagram::unknot());
        assert_eq!(binary_bracket(&two), binary_bracket(&t) * LaurentPoly::int(2));
    }

    #[test]
    fn virtual_curl_seen_by_rotational_only() {
        // the curl on the left cancels the loop's turning, on the right doubles it
        let vc = d("cup 0 / cup 0 / v 1 / cap 0 / cap 0");
        assert!(standard_bracket(&vc).is_one());
        assert_eq!(rotational_bracket(&vc), LaurentPoly::loop_var(0));
        let vc2 = d("cup 0 / cup 1 / v 0 / cap 1 / cap 0");
        assert_eq!(rotational_bracket(&vc2), LaurentPoly::loop_var(2));
        assert_eq!(binary_bracket(&vc), LaurentPoly::int(2));
    }

    #[test]
    fn raw_specializes() {
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(rotational_bracket_raw(&vt).substitute_d1(), rotational_bracket(&vt));
    }
}
