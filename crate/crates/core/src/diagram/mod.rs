//! Morse-word encodings of virtual link diagrams.
//!
//! A diagram is read bottom to top as a word of events.  Each event touches
//! the strands at `pos` (and `pos + 1`).  Cups open two strands, caps close
//! two, crossings keep the width.
//!
//! Crossing convention: `x+` is the crossing whose A-smoothing is the vertical
//! (identity) smoothing; the strand from bottom-left to top-right passes
//! over.  With both strands oriented upward it is a positive crossing, so the
//! A-smoothing of a positive crossing is always the oriented smoothing.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod fuzz;
pub mod gauss;
pub mod genus;
pub mod moves;
pub mod ports;

pub use gauss::{GaussCode, GaussEntry};
pub use moves::{Applied, Move, MoveError, MoveKind, Side};
pub use ports::{Loop, PortGraph, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Cup,
    Cap,
    #[serde(rename = "x+")]
    Pos,
    #[serde(rename = "x-")]
    Neg,
    #[serde(rename = "v")]
    Virtual,
}

impl EventKind {
    pub fn is_classical(self) -> bool {
        matches!(self, EventKind::Pos | EventKind::Neg)
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, EventKind::Pos | EventKind::Neg | EventKind::Virtual)
    }

    /// Switches a classical crossing; other kinds are unchanged.
    pub fn switched(self) -> Self {
        match self {
            EventKind::Pos => EventKind::Neg,
            EventKind::Neg => EventKind::Pos,
            k => k,
        }
    }

    /// Net change of the strand count.
    pub fn width_delta(self) -> isize {
        match self {
            EventKind::Cup => 2,
            EventKind::Cap => -2,
            _ => 0,
        }
    }

    fn token(self) -> &'static str {
        match self {
            EventKind::Cup => "cup",
            EventKind::Cap => "cap",
            EventKind::Pos => "x+",
            EventKind::Neg => "x-",
            EventKind::Virtual => "v",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Event {
    pub kind: EventKind,
    pub pos: usize,
}

impl Event {
    pub fn new(kind: EventKind, pos: usize) -> Self {
        Event { kind, pos }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("event {index} ({event}): {msg}")]
    Width { index: usize, event: String, msg: String },
    #[error("diagram not closed: final width {width}")]
    NotClosed { width: usize },
    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),
    #[error("component touches a classical crossing")]
    NotFlat,
}

/// A closed virtual link diagram as a bottom-to-top Morse word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorseDiagram {
    events: Vec<Event>,
}

impl MorseDiagram {
    /// Validates and wraps an event list.
    pub fn new(events: Vec<Event>) -> Result<Self, DiagramError> {
        let d = MorseDiagram { events };
        d.validate()?;
        Ok(d)
    }

    pub fn empty() -> Self {
        MorseDiagram { events: Vec::new() }
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        MorseDiagram {
            events: vec![Event::new(EventKind::Cup, 0), Event::new(EventKind::Cap, 0)],
        }
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut width = 0usize;
        for (index, e) in self.events.iter().enumerate() {
            let ok = match e.kind {
                EventKind::Cup => e.pos <= width,
                _ => e.pos + 1 < width,
            };
            if !ok {
                return Err(DiagramError::Width {
                    index,
                    event: format!("{} {}", e.kind.token(), e.pos),
                    msg: format!("position out of range for width {width}"),
                });
            }
            width = (width as isize + e.kind.width_delta()) as usize;
        }
        if width != 0 {
            return Err(DiagramError::NotClosed { width });
        }
        Ok(())
    }

    /// Strand count below each event, plus the final width (always 0).
    pub fn widths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let mut w = 0isize;
        out.push(0);
        for e in &self.events {
            w += e.kind.width_delta();
            out.push(w as usize);
        }
        out
    }

    pub fn max_width(&self) -> usize {
        self.widths().into_iter().max().unwrap_or(0)
    }

    /// Event indices of the classical crossings; crossing id = position in
    /// this list.
    pub fn classical_events(&self) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind.is_classical())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind.is_classical()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.events.iter().filter(|e| e.kind == EventKind::Virtual).count()
    }

    pub fn ports(&self) -> PortGraph {
        PortGraph::new(self)
    }

    pub fn component_count(&self) -> usize {
        self.ports().components().len()
    }

    /// Mirror image: every classical crossing switched.
    pub fn mirror(&self) -> MorseDiagram {
        MorseDiagram {
            events: self
                .events
                .iter()
                .map(|e| Event::new(e.kind.switched(), e.pos))
                .collect(),
        }
    }

    /// A new diagram from an edited copy of the events, validated like
    /// [`MorseDiagram::new`].
    pub fn with_events(&self, events: Vec<Event>) -> Result<MorseDiagram, DiagramError> {
        MorseDiagram::new(events)
    }

    /// Disjoint union, placing `other` to the right.
    pub fn disjoint_union(&self, other: &MorseDiagram) -> MorseDiagram {
        let mut events = self.events.clone();
        events.extend(other.events.iter().copied());
        MorseDiagram { events }
    }

    /// Replaces each selected classical crossing by the pattern
    /// `v, switched crossing, v` at the same position.
    pub fn virtualize(&self, crossings: &[usize]) -> Result<MorseDiagram, DiagramError> {
        let classical = self.classical_events();
        for &c in crossings {
            if c >= classical.len() {
                return Err(DiagramError::UnknownCrossing(c));
            }
        }
        let selected: Vec<usize> = crossings.iter().map(|&c| classical[c]).collect();
        let mut events = Vec::with_capacity(self.events.len() + 2 * selected.len());
        for (i, e) in self.events.iter().enumerate() {
            if selected.contains(&i) {
                events.push(Event::new(EventKind::Virtual, e.pos));
                events.push(Event::new(e.kind.switched(), e.pos));
                events.push(Event::new(EventKind::Virtual, e.pos));
            } else {
                events.push(*e);
            }
        }
        MorseDiagram::new(events)
    }

    /// Switches the selected classical crossings.
    pub fn switch_crossings(&self, crossings: &[usize]) -> Result<MorseDiagram, DiagramError> {
        let classical = self.classical_events();
        let mut events = self.events.clone();
        for &c in crossings {
            let i = *classical.get(c).ok_or(DiagramError::UnknownCrossing(c))?;
            events[i].kind = events[i].kind.switched();
        }
        MorseDiagram::new(events)
    }

    /// Writhe for the given orientation (one entry per component, `true`
    /// reverses the default direction).
    pub fn writhe(&self, orientation: &Orientation) -> i32 {
        let pg = self.ports();
        let flow = pg.flow(orientation);
        self.classical_events()
            .iter()
            .map(|&e| pg.crossing_sign(e, &flow))
            .sum()
    }

    /// Signed Whitney degree of every component, which must avoid classical
    /// crossings.  Components are listed in basepoint order.
    pub fn whitney_degrees(&self) -> Result<Vec<u32>, DiagramError> {
        let pg = self.ports();
        let loops = pg.trace(|_| Resolution::Pass);
        let mut out = Vec::new();
        for l in loops {
            if l.touches_classical {
                return Err(DiagramError::NotFlat);
            }
            out.push(l.whitney());
        }
        Ok(out)
    }

    /// Parses the text format.  Events are separated by newlines or `/`;
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut events = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for chunk in line.split(['/', ';']) {
                let toks: Vec<&str> = chunk.split_whitespace().collect();
                if toks.is_empty() {
                    continue;
                }
                let syntax = |msg: String| DiagramError::Syntax { line: lineno + 1, msg };
                if toks.len() != 2 {
                    return Err(syntax(format!("expected `<event> <position>`, got `{}`", chunk.trim())));
                }
                let kind = match toks[0] {
                    "cup" => EventKind::Cup,
                    "cap" => EventKind::Cap,
                    "x+" => EventKind::Pos,
                    "x-" => EventKind::Neg,
                    "v" => EventKind::Virtual,
                    other => return Err(syntax(format!("unknown event `{other}`"))),
                };
                let pos: usize = toks[1]
                    .parse()
                    .map_err(|_| syntax(format!("bad position `{}`", toks[1])))?;
                events.push(Event::new(kind, pos));
            }
        }
        MorseDiagram::new(events)
    }

    /// One-line form with ` / ` separators.
    pub fn to_inline(&self) -> String {
        self.events
            .iter()
            .map(|e| format!("{} {}", e.kind.token(), e.pos))
            .collect::<Vec<_>>()
            .join(" / ")
    }

    /// FNV-1a hash of the canonical text, used to tag reports.
    pub fn hash_hex(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.to_string().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let gauss = self.gauss_code(&Orientation::default());
        serde_json::json!({
            "events": self.events,
            "widths": self.widths(),
            "classical_crossings": self.crossing_count(),
            "virtual_crossings": self.virtual_count(),
            "components": self.component_count(),
            "gauss_code": gauss.to_json(),
        })
    }
}

impl fmt::Display for MorseDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{} {}", e.kind.token(), e.pos)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MorseDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MorseDiagram::parse(s)
    }
}

/// Per-component direction override: `reversed[c]` flips component `c`
/// (components in basepoint order).  Missing entries keep the default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    pub reversed: Vec<bool>,
}

impl Orientation {
    pub fn new(reversed: Vec<bool>) -> Self {
        Orientation { reversed }
    }

    pub fn is_reversed(&self, component: usize) -> bool {
        self.reversed.get(component).copied().unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn d(text: &str) -> MorseDiagram {
        MorseDiagram::parse(text).unwrap()
    }

    #[test]
    fn parse_unknot() {
        let u = d("cup 0 / cap 0");
        assert_eq!(u, MorseDiagram::unknot());
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.component_count(), 1);
    }

    #[test]
    fn parse_virtual_trefoil() {
        let k = d("cup 0\ncup 1\nx+ 0\nv 0\nx+ 0\ncap 1\ncap 0\n");
        assert_eq!(k.crossing_count(), 2);
        assert_eq!(k.virtual_count(), 1);
        assert_eq!(k.component_count(), 1);
        assert_eq!(k.widths(), vec![0, 2, 4, 4, 4, 4, 2, 0]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            MorseDiagram::parse("cup 0 / x+ 0"),
            Err(DiagramError::NotClosed { width: 2 })
        );
        assert!(matches!(
            MorseDiagram::parse("cup 0\nfoo 1"),
            Err(DiagramError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            MorseDiagram::parse("cup 0 / x+ 1 / cap 0"),
            Err(DiagramError::Width { index: 1, .. })
        ));
        assert!(matches!(
            MorseDiagram::parse("cup 3"),
            Err(DiagramError::Width { index: 0, .. })
        ));
    }

    #[test]
    fn comments_and_round_trip() {
        let k = d("# trefoil-ish\n\ncup 0 # first\ncap 0\n");
        assert_eq!(MorseDiagram::parse(&k.to_string()).unwrap(), k);
        assert_eq!(k.to_inline(), "cup 0 / cap 0");
    }

    #[test]
    fn whitney_degrees_of_flat_loops() {
        assert_eq!(MorseDiagram::unknot().whitney_degrees().unwrap(), vec![1]);
        // one flat virtual curl on either side
        let right = d("cup 0 / cup 2 / v 1 / cap 0 / cap 0");
        let left = d("cup 0 / cup 0 / v 1 / cap 2 / cap 0");
        let degs: Vec<u32> = [&right, &left]
            .iter()
            .map(|k| k.whitney_degrees().unwrap()[0])
            .collect();
        assert!(degs.iter().all(|&n| n == 0 || n == 2), "{degs:?}");
        // two opposite curls cancel
        let both = d("cup 0 / cup 2 / v 1 / cap 0 / cup 0 / v 1 / cap 2 / cap 0");
        let b = both.whitney_degrees().unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0] == 1 || b[0] == 3, "{b:?}");
    }

    #[test]
    fn whitney_degree_rejects_classical() {
        let k = d("cup 0 / cup 2 / x+ 1 / cap 0 / cap 0");
        assert_eq!(k.whitney_degrees(), Err(DiagramError::NotFlat));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(MorseDiagram::unknot().writhe(&Orientation::default()), 0);
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(vt.writhe(&Orientation::default()), 2);
        let trefoil = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(trefoil.writhe(&Orientation::default()), 3);
        assert_eq!(trefoil.mirror().writhe(&Orientation::default()), -3);
    }

    #[test]
    fn virtualize_shapes() {
        let trefoil = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(trefoil.virtualize(&[]).unwrap(), trefoil);
        let v = trefoil.virtualize(&[1]).unwrap();
        assert_eq!(v.crossing_count(), 3);
        assert_eq!(v.virtual_count(), 2);
        assert_eq!(v.events()[4], Event::new(EventKind::Neg, 0));
        assert_eq!(trefoil.virtualize(&[7]), Err(DiagramError::UnknownCrossing(7)));
    }
}
