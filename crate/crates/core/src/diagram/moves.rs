//! Local moves on Morse words.
//!
//! Every move is a rewrite of a short window of consecutive events.  Sites
//! are addressed by event index (`at`) and strand position (`pos`); the
//! rewrite checks the window structurally and refuses anything else.

use serde::Serialize;

use super::{Event, EventKind, MorseDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveKind {
    /// Classical curl made with `x+`.
    R1a,
    /// Classical curl made with `x-`.
    R1b,
    R2,
    R3,
    VR2,
    VR3,
    /// A strand crossing two others virtually passes a classical crossing.
    Mixed,
    /// Cup followed by cap on the same strand (zig-zag).
    MorseCancel,
    SlideMax,
    SlideMin,
    VCurlAdd,
    VCurlRemove,
    /// Two non-interacting events trade heights.
    Interchange,
}

impl MoveKind {
    /// Moves allowed in rotational virtual equivalence.
    pub fn preserves_rotational(self) -> bool {
        !matches!(self, MoveKind::VCurlAdd | MoveKind::VCurlRemove)
    }

    /// Moves allowed in regular isotopy (no classical curls either).
    pub fn preserves_regular_isotopy(self) -> bool {
        self.preserves_rotational() && !matches!(self, MoveKind::R1a | MoveKind::R1b)
    }
}

/// Which side of the strand a curl or zig-zag bulges to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// Insert `cup, cap` on the strand at `pos` just below event `at`.
    MorseInsert { at: usize, pos: usize, side: Side },
    MorseCancel { at: usize },
    /// Insert a curl (`cup, crossing, cap`) on the strand at `pos`.
    CurlAdd { at: usize, pos: usize, kind: EventKind, side: Side },
    CurlRemove { at: usize },
    /// Insert a crossing followed by its inverse on strands `pos, pos + 1`.
    R2Add { at: usize, pos: usize, kind: EventKind },
    R2Remove { at: usize },
    /// Triangle move on events `at..at + 3`.
    Triangle { at: usize },
    /// Swing a crossing across the adjacent cap or cup.
    Slide { at: usize },
    Interchange { at: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("move {0:?} not applicable at its site")]
    NotApplicable(Move),
}

/// Result of applying a move.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: MorseDiagram,
    pub kind: MoveKind,
    /// The move that undoes this one on `diagram`.
    pub inverse: Move,
}

fn ev(kind: EventKind, pos: usize) -> Event {
    Event::new(kind, pos)
}

fn curl_kind(kind: EventKind, adding: bool) -> MoveKind {
    match (kind, adding) {
        (EventKind::Pos, _) => MoveKind::R1a,
        (EventKind::Neg, _) => MoveKind::R1b,
        (_, true) => MoveKind::VCurlAdd,
        (_, false) => MoveKind::VCurlRemove,
    }
}

/// Strands consumed below and produced above an event.
fn io(e: Event) -> (usize, usize) {
    match e.kind {
        EventKind::Cup => (0, 2),
        EventKind::Cap => (2, 0),
        _ => (2, 2),
    }
}

/// Is the R3 triangle with pair kinds (first, middle, last) realizable?
fn triangle_ok(a: EventKind, b: EventKind, c: EventKind) -> Option<MoveKind> {
    let virtuals = [a, b, c].iter().filter(|k| **k == EventKind::Virtual).count();
    match virtuals {
        3 => Some(MoveKind::VR3),
        2 => Some(MoveKind::Mixed),
        1 => None,
        _ => {
            // heights must be acyclic
            if a == c && b != a {
                None
            } else {
                Some(MoveKind::R3)
            }
        }
    }
}

impl Move {
    pub fn apply(&self, d: &MorseDiagram) -> Result<Applied, MoveError> {
        let na = || MoveError::NotApplicable(*self);
        let evs = d.events();
        let widths = d.widths();
        let splice = |at: usize, remove: usize, insert: Vec<Event>| -> Result<MorseDiagram, MoveError> {
            let mut events = evs.to_vec();
            events.splice(at..at + remove, insert);
            MorseDiagram::new(events).map_err(|_| na())
        };
        let window = |at: usize, n: usize| -> Option<&[Event]> { evs.get(at..at + n) };

        match *self {
            Move::MorseInsert { at, pos, side } => {
                if at > evs.len() || pos >= widths[at] {
                    return Err(na());
                }
                let ins = match side {
                    Side::Right => vec![ev(EventKind::Cup, pos + 1), ev(EventKind::Cap, pos)],
                    Side::Left => vec![ev(EventKind::Cup, pos), ev(EventKind::Cap, pos + 1)],
                };
                Ok(Applied {
                    diagram: splice(at, 0, ins)?,
                    kind: MoveKind::MorseCancel,
                    inverse: Move::MorseCancel { at },
                })
            }
            Move::MorseCancel { at } => {
                let w = window(at, 2).ok_or_else(na)?;
                let (cup, cap) = (w[0], w[1]);
                if cup.kind != EventKind::Cup || cap.kind != EventKind::Cap {
                    return Err(na());
                }
                let (pos, side) = if cup.pos == cap.pos + 1 {
                    (cap.pos, Side::Right)
                } else if cap.pos == cup.pos + 1 {
                    (cup.pos, Side::Left)
                } else {
                    return Err(na());
                };
                Ok(Applied {
                    diagram: splice(at, 2, vec![])?,
                    kind: MoveKind::MorseCancel,
                    inverse: Move::MorseInsert { at, pos, side },
                })
            }
            Move::CurlAdd { at, pos, kind, side } => {
                if !kind.is_crossing() || at > evs.len() || pos >= widths[at] {
                    return Err(na());
                }
                let ins = match side {
                    Side::Right => vec![
                        ev(EventKind::Cup, pos + 1),
                        ev(kind, pos),
                        ev(EventKind::Cap, pos + 1),
                    ],
                    Side::Left => vec![
                        ev(EventKind::Cup, pos),
                        ev(kind, pos + 1),
                        ev(EventKind::Cap, pos),
                    ],
                };
                Ok(Applied {
                    diagram: splice(at, 0, ins)?,
                    kind: curl_kind(kind, true),
                    inverse: Move::CurlRemove { at },
                })
            }
            Move::CurlRemove { at } => {
                let w = window(at, 3).ok_or_else(na)?;
                let (cup, x, cap) = (w[0], w[1], w[2]);
                if cup.kind != EventKind::Cup || !x.kind.is_crossing() || cap.kind != EventKind::Cap {
                    return Err(na());
                }
                let (pos, side) = if cup.pos == x.pos + 1 && cap.pos == x.pos + 1 {
                    (x.pos, Side::Right)
                } else if x.pos == cup.pos + 1 && cap.pos == cup.pos {
                    (cup.pos, Side::Left)
                } else {
                    return Err(na());
                };
                Ok(Applied {
                    diagram: splice(at, 3, vec![])?,
                    kind: curl_kind(x.kind, false),
                    inverse: Move::CurlAdd { at, pos, kind: x.kind, side },
                })
            }
            Move::R2Add { at, pos, kind } => {
                if !kind.is_crossing() || at > evs.len() || pos + 1 >= widths[at] {
                    return Err(na());
                }
                let ins = vec![ev(kind, pos), ev(kind.switched(), pos)];
                Ok(Applied {
                    diagram: splice(at, 0, ins)?,
                    kind: if kind == EventKind::Virtual { MoveKind::VR2 } else { MoveKind::R2 },
                    inverse: Move::R2Remove { at },
                })
            }
            Move::R2Remove { at } => {
                let w = window(at, 2).ok_or_else(na)?;
                let (x, y) = (w[0], w[1]);
                if !x.kind.is_crossing() || x.pos != y.pos || y.kind != x.kind.switched() {
                    return Err(na());
                }
                Ok(Applied {
                    diagram: splice(at, 2, vec![])?,
                    kind: if x.kind == EventKind::Virtual { MoveKind::VR2 } else { MoveKind::R2 },
                    inverse: Move::R2Add { at, pos: x.pos, kind: x.kind },
                })
            }
            Move::Triangle { at } => {
                let w = window(at, 3).ok_or_else(na)?;
                if !w.iter().all(|e| e.kind.is_crossing()) {
                    return Err(na());
                }
                let (p, q) = (w[0].pos, w[1].pos);
                if w[2].pos != p || (q != p + 1 && p != q + 1) {
                    return Err(na());
                }
                let kind = triangle_ok(w[0].kind, w[1].kind, w[2].kind).ok_or_else(na)?;
                let ins = vec![ev(w[2].kind, q), ev(w[1].kind, p), ev(w[0].kind, q)];
                Ok(Applied {
                    diagram: splice(at, 3, ins)?,
                    kind,
                    inverse: Move::Triangle { at },
                })
            }
            Move::Slide { at } => {
                let w = window(at, 2).ok_or_else(na)?;
                let (e1, e2) = (w[0], w[1]);
                let (ins, kind) = if e1.kind.is_crossing() && e2.kind == EventKind::Cap {
                    let p = e1.pos;
                    if e2.pos == p + 1 {
                        (vec![ev(e1.kind.switched(), p + 1), ev(EventKind::Cap, p)], MoveKind::SlideMax)
                    } else if p >= 1 && e2.pos == p - 1 {
                        (vec![ev(e1.kind.switched(), p - 1), ev(EventKind::Cap, p)], MoveKind::SlideMax)
                    } else {
                        return Err(na());
                    }
                } else if e1.kind == EventKind::Cup && e2.kind.is_crossing() {
                    let p = e1.pos;
                    if e2.pos == p + 1 {
                        (vec![ev(EventKind::Cup, p + 1), ev(e2.kind.switched(), p)], MoveKind::SlideMin)
                    } else if p >= 1 && e2.pos == p - 1 {
                        (vec![ev(EventKind::Cup, p - 1), ev(e2.kind.switched(), p)], MoveKind::SlideMin)
                    } else {
                        return Err(na());
                    }
                } else {
                    return Err(na());
                };
                Ok(Applied {
                    diagram: splice(at, 2, ins)?,
                    kind,
                    inverse: Move::Slide { at },
                })
            }
            Move::Interchange { at } => {
                let w = window(at, 2).ok_or_else(na)?;
                let (e1, e2) = (w[0], w[1]);
                let (k1, o1) = io(e1);
                let (k2, o2) = io(e2);
                let ins = if e2.pos + k2 <= e1.pos {
                    // e2 lies left of e1's outputs
                    let shifted = e1.pos as isize + o2 as isize - k2 as isize;
                    vec![e2, ev(e1.kind, shifted as usize)]
                } else if e2.pos >= e1.pos + o1 {
                    let shifted = e2.pos as isize - o1 as isize + k1 as isize;
                    vec![ev(e2.kind, shifted as usize), e1]
                } else {
                    return Err(na());
                };
                Ok(Applied {
                    diagram: splice(at, 2, ins)?,
                    kind: MoveKind::Interchange,
                    inverse: Move::Interchange { at },
                })
            }
        }
    }
}

impl MorseDiagram {
    pub fn apply_move(&self, m: &Move) -> Result<Applied, MoveError> {
        m.apply(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> MorseDiagram {
        MorseDiagram::parse(s).unwrap()
    }

    fn round_trip(start: &MorseDiagram, m: Move) -> Applied {
        let a = start.apply_move(&m).unwrap();
        let back = a.diagram.apply_move(&a.inverse).unwrap();
        assert_eq!(&back.diagram, start, "inverse of {m:?}");
        a
    }

    #[test]
    fn morse_cancel_removes_zigzag() {
        let z = d("cup 0 / cup 1 / cap 0 / cap 0");
        let a = z.apply_move(&Move::MorseCancel { at: 1 }).unwrap();
        assert_eq!(a.diagram.len(), z.len() - 2);
        assert_eq!(a.diagram, MorseDiagram::unknot());
        assert_eq!(a.kind, MoveKind::MorseCancel);
    }

    #[test]
    fn inverse_pairs() {
        let u = MorseDiagram::unknot();
        for side in [Side::Left, Side::Right] {
            round_trip(&u, Move::MorseInsert { at: 1, pos: 0, side });
            for kind in [EventKind::Pos, EventKind::Neg, EventKind::Virtual] {
                round_trip(&u, Move::CurlAdd { at: 1, pos: 1, kind, side });
            }
        }
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        let a = round_trip(&vt, Move::R2Add { at: 2, pos: 1, kind: EventKind::Neg });
        assert_eq!(a.kind, MoveKind::R2);
        round_trip(&vt, Move::R2Add { at: 5, pos: 0, kind: EventKind::Virtual });
        round_trip(&vt, Move::Slide { at: 4 });
        round_trip(&vt, Move::Slide { at: 1 });
    }

    #[test]
    fn r2_then_remove_gives_original() {
        let u = d("cup 0 / cup 2 / cap 1 / cap 0");
        let a = u.apply_move(&Move::R2Add { at: 2, pos: 1, kind: EventKind::Pos }).unwrap();
        let b = a.diagram.apply_move(&Move::R2Remove { at: 2 }).unwrap();
        assert_eq!(b.diagram, u);
    }

    #[test]
    fn triangle_rules() {
        let base = "cup 0 / cup 2 / cup 4 / {} / cap 4 / cap 2 / cap 0";
        let make = |mid: &str| d(&base.replace("{}", mid));
        let ok = make("x+ 1 / x+ 2 / x+ 1");
        assert_eq!(ok.apply_move(&Move::Triangle { at: 3 }).unwrap().kind, MoveKind::R3);
        let cyclic = make("x+ 1 / x- 2 / x+ 1");
        assert!(cyclic.apply_move(&Move::Triangle { at: 3 }).is_err());
        let forbidden = make("x+ 1 / x+ 2 / v 1");
        assert!(forbidden.apply_move(&Move::Triangle { at: 3 }).is_err());
        let mixed = make("v 1 / v 2 / x- 1");
        let a = round_trip(&mixed, Move::Triangle { at: 3 });
        assert_eq!(a.kind, MoveKind::Mixed);
        let vr3 = make("v 1 / v 2 / v 1");
        assert_eq!(round_trip(&vr3, Move::Triangle { at: 3 }).kind, MoveKind::VR3);
    }

    #[test]
    fn interchange_far_events() {
        let two = d("cup 0 / cup 2 / cap 0 / cap 0");
        let a = round_trip(&two, Move::Interchange { at: 0 });
        assert_eq!(a.diagram, d("cup 0 / cup 0 / cap 0 / cap 0"));
        // interacting events refuse
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        assert!(vt.apply_move(&Move::Interchange { at: 2 }).is_err());
    }

    #[test]
    fn not_applicable() {
        let u = MorseDiagram::unknot();
        assert!(u.apply_move(&Move::MorseCancel { at: 5 }).is_err());
        assert!(u.apply_move(&Move::R2Remove { at: 0 }).is_err());
        assert!(u.apply_move(&Move::CurlAdd { at: 0, pos: 0, kind: EventKind::Pos, side: Side::Left }).is_err());
    }

    #[test]
    fn kind_flags() {
        assert!(!MoveKind::VCurlAdd.preserves_rotational());
        assert!(MoveKind::R1a.preserves_rotational());
        assert!(!MoveKind::R1a.preserves_regular_isotopy());
        assert!(MoveKind::Mixed.preserves_regular_isotopy());
    }
}
