//! Seeded random walks through the move set.
//!
//! A walk picks a move shape at random, then a random site where that shape
//! applies.  Growth is capped relative to the starting diagram so state sums
//! stay cheap.  The orientation is carried along every step by matching the
//! flow on the events outside the rewritten window.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{EventKind, Move, MoveKind, MorseDiagram, Orientation, Side};

/// Which moves a walk may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveClass {
    /// Everything except virtual curls.
    Rotational,
    /// Rotational moves without classical curls.
    Regular,
    /// Classical curls only.
    R1,
    /// Virtual curls only.
    VCurl,
    /// Every move, virtual curls included.
    All,
}

impl MoveClass {
    pub fn allows(self, k: MoveKind) -> bool {
        match self {
            MoveClass::Rotational => k.preserves_rotational(),
            MoveClass::Regular => k.preserves_regular_isotopy(),
            MoveClass::R1 => matches!(k, MoveKind::R1a | MoveKind::R1b),
            MoveClass::VCurl => matches!(k, MoveKind::VCurlAdd | MoveKind::VCurlRemove),
            MoveClass::All => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveClass::Rotational => "rotational",
            MoveClass::Regular => "regular",
            MoveClass::R1 => "r1",
            MoveClass::VCurl => "vcurl",
            MoveClass::All => "all",
        }
    }

    fn shapes(self) -> &'static [Shape] {
        use Shape::*;
        match self {
            MoveClass::R1 => &[CurlPos, CurlNeg, CurlRemove],
            MoveClass::VCurl => &[CurlVirt, CurlRemove],
            _ => &[MorseInsert, MorseCancel, CurlPos, CurlNeg, CurlVirt, CurlRemove, R2, VR2, R2Remove, Triangle, Slide, Interchange],
        }
    }
}

impl std::str::FromStr for MoveClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "rotational" => MoveClass::Rotational,
            "regular" => MoveClass::Regular,
            "r1" => MoveClass::R1,
            "vcurl" => MoveClass::VCurl,
            "all" => MoveClass::All,
            _ => return Err(format!("unknown move class `{s}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    MorseInsert,
    MorseCancel,
    CurlPos,
    CurlNeg,
    CurlVirt,
    CurlRemove,
    R2,
    VR2,
    R2Remove,
    Triangle,
    Slide,
    Interchange,
}

impl Shape {
    fn sites(self, d: &MorseDiagram) -> Vec<Move> {
        let widths = d.widths();
        let n = d.len();
        let mut out = Vec::new();
        let strands = |at: usize| 0..widths[at];
        match self {
            Shape::MorseInsert => {
                for at in 0..=n {
                    for pos in strands(at) {
                        for side in [Side::Left, Side::Right] {
                            out.push(Move::MorseInsert { at, pos, side });
                        }
                    }
                }
            }
            Shape::CurlPos | Shape::CurlNeg | Shape::CurlVirt => {
                let kind = match self {
                    Shape::CurlPos => EventKind::Pos,
                    Shape::CurlNeg => EventKind::Neg,
                    _ => EventKind::Virtual,
                };
                for at in 0..=n {
                    for pos in strands(at) {
                        for side in [Side::Left, Side::Right] {
                            out.push(Move::CurlAdd { at, pos, kind, side });
                        }
                    }
                }
            }
            Shape::R2 | Shape::VR2 => {
                let kinds: &[EventKind] = if self == Shape::R2 { &[EventKind::Pos, EventKind::Neg] } else { &[EventKind::Virtual] };
                for at in 0..=n {
                    for pos in 0..widths[at].saturating_sub(1) {
                        for &kind in kinds {
                            out.push(Move::R2Add { at, pos, kind });
                        }
                    }
                }
            }
            Shape::MorseCancel => out.extend((0..n).map(|at| Move::MorseCancel { at })),
            Shape::CurlRemove => out.extend((0..n).map(|at| Move::CurlRemove { at })),
            Shape::R2Remove => out.extend((0..n).map(|at| Move::R2Remove { at })),
            Shape::Triangle => out.extend((0..n).map(|at| Move::Triangle { at })),
            Shape::Slide => out.extend((0..n).map(|at| Move::Slide { at })),
            Shape::Interchange => out.extend((0..n).map(|at| Move::Interchange { at })),
        }
        out
    }
}

impl Move {
    /// The rewritten window: `(at, events removed, events inserted)`.
    pub fn window(&self) -> (usize, usize, usize) {
        match *self {
            Move::MorseInsert { at, .. } | Move::R2Add { at, .. } => (at, 0, 2),
            Move::MorseCancel { at } | Move::R2Remove { at } => (at, 2, 0),
            Move::CurlAdd { at, .. } => (at, 0, 3),
            Move::CurlRemove { at } => (at, 3, 0),
            Move::Triangle { at } => (at, 3, 3),
            Move::Slide { at } | Move::Interchange { at } => (at, 2, 2),
        }
    }
}

/// Orientation of `after` that agrees with `orientation` on `before` at every
/// event outside the window of `m`.
pub fn carry_orientation(before: &MorseDiagram, orientation: &Orientation, m: &Move, after: &MorseDiagram) -> Option<Orientation> {
    let (at, removed, inserted) = m.window();
    let old = before.ports();
    let new = after.ports();
    let old_flow = old.flow(orientation);
    let kept: Vec<(usize, usize)> = (0..before.len())
        .filter(|&i| i < at || i >= at + removed)
        .map(|i| (i, if i < at { i } else { i - removed + inserted }))
        .collect();
    let comps = after.component_count();
    (0..1u64 << comps).find_map(|mask| {
        let o = Orientation::new((0..comps).map(|c| mask >> c & 1 == 1).collect());
        let flow = new.flow(&o);
        let agrees = kept.iter().all(|&(i, j)| (0..4).all(|s| old_flow[4 * i + s] == flow[4 * j + s]));
        agrees.then_some(o)
    })
}

/// Growth allowed over the starting diagram.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub events: usize,
    pub crossings: usize,
    pub width: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { events: 8, crossings: 2, width: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub mv: Move,
    pub kind: MoveKind,
    pub diagram: MorseDiagram,
    pub orientation: Orientation,
}

/// A finished walk.  `steps` is empty when no move applied.
#[derive(Clone, Debug)]
pub struct Walk {
    pub start: MorseDiagram,
    pub orientation: Orientation,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn end(&self) -> (&MorseDiagram, &Orientation) {
        match self.steps.last() {
            Some(s) => (&s.diagram, &s.orientation),
            None => (&self.start, &self.orientation),
        }
    }

    /// Writhe of the end diagram minus writhe of the start.
    pub fn writhe_change(&self) -> i32 {
        let (d, o) = self.end();
        d.writhe(o) - self.start.writhe(&self.orientation)
    }
}

pub struct Walker {
    rng: ChaCha8Rng,
    class: MoveClass,
    limits: Limits,
}

impl Walker {
    pub fn new(seed: u64, class: MoveClass) -> Self {
        Walker { rng: ChaCha8Rng::seed_from_u64(seed), class, limits: Limits::default() }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// One random move of the walker's class within the caps measured from
    /// `start`.  Returns `None` when nothing applies.
    pub fn step(&mut self, start: &MorseDiagram, d: &MorseDiagram, o: &Orientation) -> Option<Step> {
        let cap_events = start.len() + self.limits.events;
        let cap_cross = start.crossing_count() + self.limits.crossings;
        let cap_width = start.max_width() + self.limits.width;
        let mut shapes = self.class.shapes().to_vec();
        while !shapes.is_empty() {
            let i = self.rng.gen_range(0..shapes.len());
            let shape = shapes.swap_remove(i);
            let mut sites = shape.sites(d);
            sites.shuffle(&mut self.rng);
            for m in sites {
                let Ok(a) = d.apply_move(&m) else { continue };
                let nd = &a.diagram;
                if !self.class.allows(a.kind)
                    || nd.len() > cap_events
                    || nd.crossing_count() > cap_cross
                    || nd.max_width() > cap_width
                {
                    continue;
                }
                let orientation = carry_orientation(d, o, &m, nd)?;
                return Some(Step { mv: m, kind: a.kind, diagram: a.diagram, orientation });
            }
        }
        None
    }

    pub fn walk(&mut self, start: &MorseDiagram, orientation: &Orientation, len: usize) -> Walk {
        let mut steps: Vec<Step> = Vec::with_capacity(len);
        for _ in 0..len {
            let (d, o) = match steps.last() {
                Some(s) => (&s.diagram, &s.orientation),
                None => (start, orientation),
            };
            match self.step(start, d, o) {
                Some(s) => steps.push(s),
                None => break,
            }
        }
        Walk { start: start.clone(), orientation: orientation.clone(), steps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::standard_bracket;

    fn d(s: &str) -> MorseDiagram {
        MorseDiagram::parse(s).unwrap()
    }

    #[test]
    fn walks_are_reproducible() {
        let t = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        let o = Orientation::default();
        let a = Walker::new(7, MoveClass::Rotational).walk(&t, &o, 6);
        let b = Walker::new(7, MoveClass::Rotational).walk(&t, &o, 6);
        assert_eq!(a.steps.len(), 6);
        assert_eq!(a.end().0, b.end().0);
        assert!(a.steps.iter().all(|s| s.kind.preserves_rotational()));
    }

    #[test]
    fn orientation_survives_reversal() {
        // reversing the unknot must be tracked through a zig-zag insertion
        let u = MorseDiagram::unknot();
        let rev = Orientation::new(vec![true]);
        let m = Move::MorseInsert { at: 1, pos: 0, side: Side::Left };
        let a = u.apply_move(&m).unwrap();
        let o = carry_orientation(&u, &rev, &m, &a.diagram).unwrap();
        let f0 = u.ports().flow(&rev);
        let f1 = a.diagram.ports().flow(&o);
        assert_eq!(f0[0..4], f1[0..4]);
    }

    #[test]
    fn r1_walk_scales_bracket() {
        let t = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        let o = Orientation::default();
        let base = standard_bracket(&t);
        let mut w = Walker::new(3, MoveClass::R1);
        for _ in 0..20 {
            let walk = w.walk(&t, &o, 2);
            let k = walk.writhe_change();
            let factor = crate::poly::LaurentPoly::term(-1, 3 * k.signum()).pow(k.unsigned_abs());
            assert_eq!(standard_bracket(walk.end().0), &base * &factor);
        }
    }
}
