//! Four-valent flat graphs with rotation data.
//!
//! A graph is a set of nodes (four slots each, in the crossing geometry of
//! the Morse picture) joined by edges.  Each edge stores its total tangent
//! turning in eighths of a revolution.  Virtual crossings are forgotten:
//! a detour that keeps the turning of an edge does not change the graph.
//! Loops without nodes are split off as Whitney classes.
//!
//! Reduction and the canonical key are heuristics: the reducer removes node
//! bigons, and the key is the least serialization over all traversal starts
//! with a gauge fixing for edge winding.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::diagram::ports::{slot_turn, PortGraph, Resolution, BL, BR, TL, TR};

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    /// Ports `4 * node + slot` at both ends.
    pub ends: [usize; 2],
    /// Turning from `ends[0]` to `ends[1]`, in units of 45 degrees,
    /// counterclockwise positive.
    pub turn: i32,
}

impl Edge {
    /// Turning read from the given end.
    fn turn_from(&self, port: usize) -> i32 {
        if port == self.ends[0] {
            self.turn
        } else {
            debug_assert_eq!(port, self.ends[1]);
            -self.turn
        }
    }

    fn other_end(&self, port: usize) -> usize {
        if port == self.ends[0] {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// Slot direction in units of 45 degrees.
fn angle(slot: usize) -> i32 {
    match slot {
        TR => 1,
        TL => 3,
        BL => 5,
        BR => 7,
        _ => unreachable!(),
    }
}

/// Counterclockwise index of a slot (TR, TL, BL, BR).
fn ccw_index(slot: usize) -> usize {
    ((angle(slot) - 1) / 2) as usize
}

fn opposite(slot: usize) -> usize {
    3 - slot
}

fn adjacent(a: usize, b: usize) -> bool {
    (angle(a) - angle(b)).rem_euclid(8) == 2 || (angle(b) - angle(a)).rem_euclid(8) == 2
}

/// Turn from vertical travel onto the port direction when leaving a node.
fn leave_bend(slot: usize) -> i32 {
    match slot {
        TR | BL => 1,
        _ => -1,
    }
}

fn arrive_bend(slot: usize) -> i32 {
    match slot {
        BR | TL => 1,
        _ => -1,
    }
}

/// Turn taken when entering a node at `a` and leaving at `b`.
fn corner(a: usize, b: usize) -> i32 {
    let t = (angle(b) - angle(a) - 4).rem_euclid(8);
    if t >= 4 {
        t - 8
    } else {
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatGraph {
    nodes: Vec<bool>,
    port_edge: Vec<Option<usize>>,
    edges: Vec<Option<Edge>>,
    /// Whitney classes of node-free loops.
    pub loops: Vec<u32>,
}

/// A removable node bigon: node pair and the two edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bigon {
    pub ports: [usize; 2],
    pub ends: [usize; 2],
}

impl FlatGraph {
    /// Builds the graph of a diagram in which the classical events listed in
    /// `nodes` are rigid nodes and every other classical event is resolved
    /// by `res`.
    pub fn from_ports(pg: &PortGraph, nodes: &[usize], res: impl Fn(usize) -> Resolution) -> Self {
        let n = pg.event_count();
        let is_node: Vec<bool> = (0..n).map(|e| nodes.contains(&e)).collect();
        let resolve = |e: usize| {
            if is_node[e] || !pg.kind(e).is_classical() {
                Resolution::Pass
            } else {
                res(e)
            }
        };
        let mut g = FlatGraph {
            nodes: is_node.clone(),
            port_edge: vec![None; 4 * n],
            edges: Vec::new(),
            loops: Vec::new(),
        };
        for &e in nodes {
            for slot in 0..4 {
                let p0 = 4 * e + slot;
                if g.port_edge[p0].is_some() {
                    continue;
                }
                let mut turn = leave_bend(slot);
                let mut p = p0;
                let end = loop {
                    let q = pg.partner(p);
                    let ev = q / 4;
                    if is_node[ev] {
                        turn += arrive_bend(q % 4);
                        break q;
                    }
                    let r = pg.through(q, resolve(ev));
                    turn += 4 * slot_turn(q % 4, r % 4);
                    p = r;
                };
                let id = g.edges.len();
                g.edges.push(Some(Edge { ends: [p0, end], turn }));
                g.port_edge[p0] = Some(id);
                g.port_edge[end] = Some(id);
            }
        }
        // node-free loops
        for l in pg.trace(resolve) {
            if !l.steps.iter().any(|&(q, _)| is_node[q / 4]) {
                g.loops.push(l.whitney());
            }
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.nodes.iter().filter(|&&b| b).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().flatten()
    }

    pub fn has_nodes(&self) -> bool {
        self.node_count() > 0
    }

    /// All node bigons whose two edges close up with a single full turn.
    pub fn bigons(&self) -> Vec<Bigon> {
        let mut out = Vec::new();
        for (node, &alive) in self.nodes.iter().enumerate() {
            if !alive {
                continue;
            }
            for (s1, s2) in [(TR, TL), (TL, BL), (BL, BR), (BR, TR)] {
                let (p1, p2) = (4 * node + s1, 4 * node + s2);
                let (Some(e1), Some(e2)) = (self.port_edge[p1], self.port_edge[p2]) else { continue };
                if e1 == e2 {
                    continue;
                }
                let (e1, e2) = (self.edges[e1].as_ref().unwrap(), self.edges[e2].as_ref().unwrap());
                let (q1, q2) = (e1.other_end(p1), e2.other_end(p2));
                if q1 / 4 != q2 / 4 || q1 / 4 == node || !adjacent(q1 % 4, q2 % 4) {
                    continue;
                }
                let t1 = e1.turn_from(p1);
                let t2 = e2.turn_from(p2);
                let c2 = corner(q1 % 4, q2 % 4);
                let c1 = corner(p2 % 4, p1 % 4);
                let total = t1 + c2 - t2 + c1;
                if total.abs() == 8 && c1 == c2 && c1 * total > 0 {
                    out.push(Bigon { ports: [p1, p2], ends: [q1, q2] });
                }
            }
        }
        out
    }

    fn take_edge(&mut self, id: usize) -> Edge {
        let e = self.edges[id].take().unwrap();
        for p in e.ends {
            if self.port_edge[p] == Some(id) {
                self.port_edge[p] = None;
            }
        }
        e
    }

    /// Rejoins the strand through `p` (at one bigon node) and `q` (at the
    /// other) after the bigon edge between them is deleted.
    fn splice_strand(&mut self, p: usize, q: usize, mid: i32) {
        let (a_port, b_port) = (p - p % 4 + opposite(p % 4), q - q % 4 + opposite(q % 4));
        let a_id = self.port_edge[a_port].unwrap();
        let b_id = self.port_edge[b_port].unwrap();
        if a_id == b_id {
            let e = self.take_edge(a_id);
            let turn = e.turn_from(b_port) + mid;
            debug_assert!(turn % 8 == 0);
            self.loops.push((turn / 8).unsigned_abs());
            return;
        }
        let a = self.take_edge(a_id);
        let b = self.take_edge(b_id);
        let a_far = a.other_end(a_port);
        let b_far = b.other_end(b_port);
        let turn = a.turn_from(a_far) + mid + b.turn_from(b_port);
        let id = self.edges.len();
        self.edges.push(Some(Edge { ends: [a_far, b_far], turn }));
        self.port_edge[a_far] = Some(id);
        self.port_edge[b_far] = Some(id);
    }

    /// Removes a bigon found by [`FlatGraph::bigons`].
    pub fn remove_bigon(&mut self, b: Bigon) {
        let e1 = self.take_edge(self.port_edge[b.ports[0]].unwrap());
        let e2 = self.take_edge(self.port_edge[b.ports[1]].unwrap());
        let mid1 = e1.turn_from(b.ports[0]);
        let mid2 = e2.turn_from(b.ports[1]);
        // edge port slots were freed by take_edge; splice the two strands
        self.splice_strand(b.ports[0], b.ends[0], mid1);
        self.splice_strand(b.ports[1], b.ends[1], mid2);
        for node in [b.ports[0] / 4, b.ends[0] / 4] {
            self.nodes[node] = false;
            for s in 0..4 {
                debug_assert!(self.port_edge[4 * node + s].is_none());
            }
        }
    }

    /// Reduces to a fixpoint, always taking the first available move.
    pub fn reduce(&mut self) {
        while let Some(&b) = self.bigons().first() {
            self.remove_bigon(b);
        }
    }

    /// Reduces with moves picked at random (for confluence checks).
    pub fn reduce_random(&mut self, rng: &mut impl Rng) {
        while let Some(&b) = self.bigons().choose(rng) {
            self.remove_bigon(b);
        }
    }

    pub fn reduced(&self) -> FlatGraph {
        let mut g = self.clone();
        g.reduce();
        g
    }

    /// True when the graph has nodes and no reduction applies.
    pub fn is_irreducible(&self) -> bool {
        let r = self.reduced();
        r.has_nodes() && r.node_count() == self.node_count()
    }

    /// Canonical key of the node part (free loops are not included).
    pub fn key(&self) -> String {
        let mut pieces: Vec<String> = self
            .pieces()
            .into_iter()
            .map(|nodes| {
                nodes
                    .iter()
                    .flat_map(|&n| (0..4).map(move |s| 4 * n + s))
                    .filter_map(|start| self.serialize_from(start))
                    .min()
                    .unwrap_or_default()
            })
            .collect();
        pieces.sort();
        pieces.join(" + ")
    }

    fn pieces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for start in 0..self.nodes.len() {
            if !self.nodes[start] || seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut piece = Vec::new();
            seen[start] = true;
            while let Some(n) = stack.pop() {
                piece.push(n);
                for s in 0..4 {
                    if let Some(e) = self.port_edge[4 * n + s] {
                        let m = self.edges[e].as_ref().unwrap().other_end(4 * n + s) / 4;
                        if !seen[m] {
                            seen[m] = true;
                            stack.push(m);
                        }
                    }
                }
            }
            out.push(piece);
        }
        out
    }

    /// Serializes the piece containing `start`, traversing straight through
    /// nodes and leaving first through `start`.
    fn serialize_from(&self, start: usize) -> Option<String> {
        self.port_edge[start]?;
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut frame: HashMap<usize, usize> = HashMap::new();
        let mut gauge: HashMap<usize, i32> = HashMap::new();
        let mut used = BTreeSet::new();
        let mut out = String::new();
        let rel = |frame: &HashMap<usize, usize>, port: usize| -> usize {
            (ccw_index(port % 4) + 4 - ccw_index(frame[&(port / 4)] % 4)) % 4
        };
        let lift = |frame: &HashMap<usize, usize>, port: usize| -> i32 {
            angle(frame[&(port / 4)] % 4) + 2 * rel(frame, port) as i32
        };
        label.insert(start / 4, 0);
        frame.insert(start / 4, start);
        gauge.insert(start / 4, 0);
        let mut next = Some(start);
        while let Some(s0) = next {
            out.push('[');
            let mut p = s0;
            loop {
                used.insert(p);
                let e = self.edges[self.port_edge[p].unwrap()].as_ref().unwrap();
                let q = e.other_end(p);
                used.insert(q);
                let t = e.turn_from(p);
                let (u, v) = (p / 4, q / 4);
                let fresh = !label.contains_key(&v);
                if fresh {
                    label.insert(v, label.len());
                    frame.insert(v, q);
                }
                // port angles lifted from the node frame, so a node turned by
                // a quarter shifts all its edges alike (absorbed by the gauge)
                let m = t - (lift(&frame, q) + 4) + lift(&frame, p);
                debug_assert!(m % 8 == 0);
                let m = m / 8;
                if fresh {
                    gauge.insert(v, m + gauge[&u]);
                }
                let k = m + gauge[&u] - gauge[&v];
                out.push_str(&format!("{}.{}>{}.{}:{};", label[&u], rel(&frame, p), label[&v], rel(&frame, q), k));
                p = q - q % 4 + opposite(q % 4);
                if p == s0 {
                    break;
                }
            }
            out.push(']');
            // next circuit: least unused port of a labelled node
            next = label
                .iter()
                .flat_map(|(&n, &l)| (0..4).map(move |s| (l, 4 * n + s)))
                .filter(|&(_, port)| !used.contains(&port) && self.port_edge[port].is_some())
                .map(|(l, port)| (l, rel(&frame, port), port))
                .min()
                .map(|(_, _, port)| port);
        }
        Some(out)
    }
}
