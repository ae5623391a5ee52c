//! Oriented Gauss codes.

use std::fmt;

use serde::Serialize;

use super::{MorseDiagram, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GaussEntry {
    pub crossing: usize,
    pub over: bool,
    pub sign: i32,
}

/// One cyclic word per component.  Virtual crossings do not appear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussEntry>>,
}

impl GaussCode {
    /// Builds a code from plain crossing labels (no over/under or sign data),
    /// as used for parity computations on words like `ABACDBDC`.
    pub fn from_labels(words: &[&str]) -> Self {
        let mut names: Vec<char> = Vec::new();
        let mut components = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for w in words {
            let mut comp = Vec::new();
            for ch in w.chars() {
                let id = match names.iter().position(|&c| c == ch) {
                    Some(i) => i,
                    None => {
                        names.push(ch);
                        names.len() - 1
                    }
                };
                let first = seen.insert(id);
                comp.push(GaussEntry { crossing: id, over: first, sign: 1 });
            }
            components.push(comp);
        }
        GaussCode { components }
    }

    pub fn crossing_count(&self) -> usize {
        self.components
            .iter()
            .flatten()
            .map(|e| e.crossing + 1)
            .max()
            .unwrap_or(0)
    }

    /// Letter word per component (`A`, `B`, ... by crossing id), ignoring
    /// decorations.
    pub fn letters(&self) -> Vec<String> {
        self.components
            .iter()
            .map(|c| c.iter().map(|e| letter(e.crossing)).collect())
            .collect()
    }

    /// Checks that every crossing occurs exactly twice, once over and once
    /// under.
    pub fn is_valid(&self) -> bool {
        let n = self.crossing_count();
        let mut over = vec![0; n];
        let mut under = vec![0; n];
        for e in self.components.iter().flatten() {
            if e.over {
                over[e.crossing] += 1;
            } else {
                under[e.crossing] += 1;
            }
        }
        over.iter().zip(&under).all(|(&o, &u)| o == 1 && u == 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }
}

fn letter(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("X{i}")
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| {
                        format!(
                            "{}{}{}",
                            if e.over { 'O' } else { 'U' },
                            e.crossing + 1,
                            if e.sign > 0 { '+' } else { '-' }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", words.join(" | "))
    }
}

impl MorseDiagram {
    pub fn gauss_code(&self, orientation: &Orientation) -> GaussCode {
        let pg = self.ports();
        let flow = pg.flow(orientation);
        let classical = self.classical_events();
        let id_of = |e: usize| classical.binary_search(&e).unwrap();
        let mut components = Vec::new();
        for (c, l) in pg.components().iter().enumerate() {
            let mut word: Vec<GaussEntry> = l
                .steps
                .iter()
                .filter(|(q, _)| pg.kind(q / 4).is_classical())
                .map(|&(q, _)| GaussEntry {
                    crossing: id_of(q / 4),
                    over: pg.is_over(q / 4, q % 4),
                    sign: pg.crossing_sign(q / 4, &flow),
                })
                .collect();
            if orientation.is_reversed(c) {
                word.reverse();
            }
            components.push(word);
        }
        GaussCode { components }
    }
}
