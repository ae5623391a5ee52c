//! Port graph of a Morse diagram and loop tracing.
//!
//! Every event owns up to four ports, numbered `4 * event + slot` with slots
//! bottom-left, bottom-right, top-left, top-right.  Segments between events
//! join a top port of a lower event to a bottom port of a higher one.

use super::{EventKind, MorseDiagram, Orientation};

pub const BL: usize = 0;
pub const BR: usize = 1;
pub const TL: usize = 2;
pub const TR: usize = 3;
const NONE: usize = usize::MAX;

/// How a classical crossing is treated while tracing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Strands pass straight through (the unsmoothed diagram).
    Pass,
    /// Bottom-left to top-left and bottom-right to top-right.
    Vertical,
    /// Cap on the bottom pair, cup on the top pair.
    Horizontal,
}

/// A closed curve found by tracing.
#[derive(Clone, Debug)]
pub struct Loop {
    /// (entry port, exit port) for every event passed, in traversal order.
    pub steps: Vec<(usize, usize)>,
    /// Signed tangent rotation in half turns (counterclockwise positive).
    pub half_turns: i32,
    pub touches_classical: bool,
}

impl Loop {
    /// Absolute Whitney degree.
    pub fn whitney(&self) -> u32 {
        debug_assert!(self.half_turns % 2 == 0);
        (self.half_turns / 2).unsigned_abs()
    }

    /// Smallest port on the loop.
    pub fn min_port(&self) -> usize {
        self.steps
            .iter()
            .map(|&(a, b)| a.min(b))
            .min()
            .unwrap_or(NONE)
    }
}

/// Rotation picked up when passing through an event from `from` to `to`
/// (slots).  Cups and caps, and the cup/cap halves of a horizontal smoothing,
/// turn by half a revolution; everything else goes straight.
pub fn slot_turn(from: usize, to: usize) -> i32 {
    match (from, to) {
        (TL, TR) => 1,
        (TR, TL) => -1,
        (BL, BR) => -1,
        (BR, BL) => 1,
        _ => 0,
    }
}

/// A path between two classical ports through cups, caps and virtual
/// crossings.
#[derive(Clone, Debug)]
pub struct EdgePath {
    pub end: usize,
    pub half_turns: i32,
    /// Virtual crossing events passed, in order.
    pub virtuals: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PortGraph {
    kinds: Vec<EventKind>,
    partner: Vec<usize>,
}

impl PortGraph {
    pub fn new(d: &MorseDiagram) -> Self {
        let n = d.events().len();
        let mut partner = vec![NONE; 4 * n];
        let mut frontier: Vec<usize> = Vec::new();
        for (i, e) in d.events().iter().enumerate() {
            let p = e.pos;
            match e.kind {
                EventKind::Cup => {
                    frontier.splice(p..p, [4 * i + TL, 4 * i + TR]);
                }
                EventKind::Cap => {
                    let (l, r) = (frontier[p], frontier[p + 1]);
                    partner[l] = 4 * i + BL;
                    partner[4 * i + BL] = l;
                    partner[r] = 4 * i + BR;
                    partner[4 * i + BR] = r;
                    frontier.drain(p..p + 2);
                }
                _ => {
                    let (l, r) = (frontier[p], frontier[p + 1]);
                    partner[l] = 4 * i + BL;
                    partner[4 * i + BL] = l;
                    partner[r] = 4 * i + BR;
                    partner[4 * i + BR] = r;
                    frontier[p] = 4 * i + TL;
                    frontier[p + 1] = 4 * i + TR;
                }
            }
        }
        debug_assert!(frontier.is_empty());
        PortGraph {
            kinds: d.events().iter().map(|e| e.kind).collect(),
            partner,
        }
    }

    pub fn event_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, event: usize) -> EventKind {
        self.kinds[event]
    }

    pub fn exists(&self, port: usize) -> bool {
        self.partner[port] != NONE
    }

    pub fn partner(&self, port: usize) -> usize {
        self.partner[port]
    }

    /// Internal connection inside an event.
    pub fn through(&self, port: usize, res: Resolution) -> usize {
        let (e, s) = (port / 4, port % 4);
        let other = match self.kinds[e] {
            EventKind::Cup | EventKind::Cap => s ^ 1,
            EventKind::Virtual => 3 - s,
            _ => match res {
                Resolution::Pass => 3 - s,
                Resolution::Vertical => s ^ 2,
                Resolution::Horizontal => s ^ 1,
            },
        };
        4 * e + other
    }

    /// Traces all loops.  `res` is consulted for classical crossing events.
    pub fn trace(&self, res: impl Fn(usize) -> Resolution) -> Vec<Loop> {
        let mut seen = vec![false; self.partner.len()];
        let mut loops = Vec::new();
        for p0 in 0..self.partner.len() {
            if self.partner[p0] == NONE || seen[p0] {
                continue;
            }
            let mut steps = Vec::new();
            let mut half_turns = 0;
            let mut touches_classical = false;
            let mut cur = p0;
            loop {
                seen[cur] = true;
                let q = self.partner[cur];
                seen[q] = true;
                let e = q / 4;
                let r = if self.kinds[e].is_classical() {
                    touches_classical = true;
                    self.through(q, res(e))
                } else {
                    self.through(q, Resolution::Pass)
                };
                half_turns += slot_turn(q % 4, r % 4);
                steps.push((q, r));
                if r == p0 {
                    break;
                }
                cur = r;
            }
            loops.push(Loop { steps, half_turns, touches_classical });
        }
        loops
    }

    /// Components of the unsmoothed diagram in basepoint order.
    pub fn components(&self) -> Vec<Loop> {
        self.trace(|_| Resolution::Pass)
    }

    /// Flow at every port: `Some(true)` if the oriented strand leaves the
    /// event through it, `Some(false)` if it enters.
    pub fn flow(&self, orientation: &Orientation) -> Vec<Option<bool>> {
        let mut flow = vec![None; self.partner.len()];
        for (c, l) in self.components().iter().enumerate() {
            let rev = orientation.is_reversed(c);
            for &(a, b) in &l.steps {
                flow[a] = Some(rev);
                flow[b] = Some(!rev);
            }
        }
        flow
    }

    /// Is the component strand through the given slot pair pointing up?
    fn strand_up(flow: &[Option<bool>], event: usize, bottom_slot: usize) -> bool {
        // entering from below means moving upward
        flow[4 * event + bottom_slot] == Some(false)
    }

    /// True when both strands of a crossing point the same vertical way.
    pub fn crossing_parallel(&self, event: usize, flow: &[Option<bool>]) -> bool {
        Self::strand_up(flow, event, BL) == Self::strand_up(flow, event, BR)
    }

    /// Vertical direction of the strand entering at the given bottom slot.
    pub fn strand_points_up(&self, event: usize, bottom_slot: usize, flow: &[Option<bool>]) -> bool {
        Self::strand_up(flow, event, bottom_slot)
    }

    /// Oriented sign of a classical crossing.
    pub fn crossing_sign(&self, event: usize, flow: &[Option<bool>]) -> i32 {
        let parallel = self.crossing_parallel(event, flow);
        let s = if parallel { 1 } else { -1 };
        match self.kinds[event] {
            EventKind::Pos => s,
            EventKind::Neg => -s,
            _ => 0,
        }
    }

    /// Is the strand through `slot` the over strand?
    pub fn is_over(&self, event: usize, slot: usize) -> bool {
        let on_main_diagonal = slot == BL || slot == TR;
        match self.kinds[event] {
            EventKind::Pos => on_main_diagonal,
            EventKind::Neg => !on_main_diagonal,
            _ => false,
        }
    }

    /// Follows a strand leaving `port` (a classical port) until the next
    /// classical port, passing cups, caps and virtual crossings.
    pub fn edge_from(&self, port: usize) -> EdgePath {
        let mut half_turns = 0;
        let mut virtuals = Vec::new();
        let mut q = self.partner[port];
        while !self.kinds[q / 4].is_classical() {
            let r = self.through(q, Resolution::Pass);
            half_turns += slot_turn(q % 4, r % 4);
            if self.kinds[q / 4] == EventKind::Virtual {
                virtuals.push(q / 4);
            }
            q = self.partner[r];
        }
        EdgePath { end: q, half_turns, virtuals }
    }

    /// Connected pieces of the diagram: components sharing a classical
    /// crossing are merged, virtual crossings do not join anything.  Each
    /// piece lists its ports in increasing order.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.partner.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            parent[ra] = rb;
        }
        for p in 0..n {
            if self.partner[p] == NONE {
                continue;
            }
            union(&mut parent, p, self.partner[p]);
            let e = p / 4;
            if self.kinds[e].is_classical() {
                union(&mut parent, p, 4 * e);
            } else {
                union(&mut parent, p, self.through(p, Resolution::Pass));
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for p in 0..n {
            if self.partner[p] != NONE {
                let r = find(&mut parent, p);
                groups.entry(r).or_default().push(p);
            }
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}
