//! Gauss parity and the parity bracket with flat-graph values.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bracket::{resolution, Smoothing};
use crate::diagram::{EventKind, GaussCode, Move, MorseDiagram, Orientation, Side};
use crate::poly::LaurentPoly;

pub mod graph;

pub use graph::{Bigon, Edge, FlatGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    /// A crossing between two different components.
    Inter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityMap {
    /// By crossing id.
    pub parities: Vec<Parity>,
}

impl ParityMap {
    pub fn all_odd(&self) -> bool {
        self.parities.iter().all(|&p| p == Parity::Odd)
    }

    pub fn count(&self, p: Parity) -> usize {
        self.parities.iter().filter(|&&q| q == p).count()
    }

    /// Crossings that become nodes: odd and inter-component ones.
    pub fn node_ids(&self) -> Vec<usize> {
        (0..self.parities.len())
            .filter(|&i| self.parities[i] != Parity::Even)
            .collect()
    }
}

/// Parity of each crossing: the number of crossing symbols strictly between
/// its two occurrences in its component's word.
pub fn crossing_parities(code: &GaussCode) -> ParityMap {
    let n = code.crossing_count();
    let mut parities = vec![Parity::Inter; n];
    for word in &code.components {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, e) in word.iter().enumerate() {
            match first.get(&e.crossing) {
                None => {
                    first.insert(e.crossing, i);
                }
                Some(&j) => {
                    let between = i - j - 1;
                    parities[e.crossing] = if between % 2 == 0 { Parity::Even } else { Parity::Odd };
                }
            }
        }
    }
    ParityMap { parities }
}

impl MorseDiagram {
    pub fn parity_map(&self) -> ParityMap {
        crossing_parities(&self.gauss_code(&Orientation::default()))
    }

    /// The graph obtained by turning every classical crossing into a node.
    pub fn node_graph(&self) -> FlatGraph {
        FlatGraph::from_ports(&self.ports(), &self.classical_events(), |_| {
            unreachable!("every classical crossing is a node")
        })
    }
}

/// One term of the parity bracket.
#[derive(Clone, Debug, Serialize)]
pub struct ParityTerm {
    pub coefficient: LaurentPoly,
    /// A representative reduced graph (none for the loop-only term).
    pub graph: Option<FlatGraph>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityBracketValue {
    /// Keyed by canonical graph key; the empty key holds the loop-only part.
    pub terms: BTreeMap<String, ParityTerm>,
    /// Set when two reduction orders disagreed on some state.
    pub unresolved: bool,
}

impl ParityBracketValue {
    /// The coefficient of the node-free part.
    pub fn loop_part(&self) -> LaurentPoly {
        self.terms
            .get("")
            .map(|t| t.coefficient.clone())
            .unwrap_or_default()
    }

    /// Terms carrying an irreducible graph.
    pub fn graph_terms(&self) -> impl Iterator<Item = (&String, &ParityTerm)> {
        self.terms.iter().filter(|(k, _)| !k.is_empty())
    }

    pub fn has_graphs(&self) -> bool {
        self.graph_terms().next().is_some()
    }

    /// For node-free values, divides out one loop factor `d`, giving the
    /// normalization of the standard bracket.
    pub fn bracket_normalized(&self) -> Option<LaurentPoly> {
        if self.has_graphs() {
            return None;
        }
        self.loop_part().div_loop_value()
    }

    /// Coefficient of every graph key.
    pub fn coefficients(&self) -> BTreeMap<String, LaurentPoly> {
        self.terms.iter().map(|(k, t)| (k.clone(), t.coefficient.clone())).collect()
    }

    /// Graph keys with their coefficients, in key order.
    pub fn signature(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(k, t)| (k.clone(), t.coefficient.to_string()))
            .collect()
    }
}

impl PartialEq for ParityBracketValue {
    fn eq(&self, other: &Self) -> bool {
        self.signature() == other.signature()
    }
}

impl fmt::Display for ParityBracketValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut graphs = 0;
        for (k, t) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k.is_empty() {
                write!(f, "({})", t.coefficient)?;
            } else {
                graphs += 1;
                let nodes = t.graph.as_ref().map(|g| g.node_count()).unwrap_or(0);
                write!(f, "({}) G{}[{} nodes]", t.coefficient, graphs, nodes)?;
            }
        }
        Ok(())
    }
}

/// How crossings become nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityMode {
    /// Odd crossings become nodes; crossings between components too.
    Link,
    /// Every classical crossing becomes a node.
    AllNodes,
}

fn state_graphs(
    d: &MorseDiagram,
    mode: ParityMode,
    mut f: impl FnMut(i32, FlatGraph),
) {
    let classical = d.classical_events();
    let node_ids = match mode {
        ParityMode::Link => d.parity_map().node_ids(),
        ParityMode::AllNodes => (0..classical.len()).collect(),
    };
    let nodes: Vec<usize> = node_ids.iter().map(|&i| classical[i]).collect();
    let even: Vec<usize> = classical.iter().copied().filter(|e| !nodes.contains(e)).collect();
    let pg = d.ports();
    for mask in 0u64..(1u64 << even.len()) {
        let choice = |e: usize| {
            let i = even.binary_search(&e).unwrap();
            if mask >> i & 1 == 0 {
                Smoothing::A
            } else {
                Smoothing::B
            }
        };
        let weight = even.len() as i32 - 2 * mask.count_ones() as i32;
        let g = FlatGraph::from_ports(&pg, &nodes, |e| resolution(pg.kind(e), choice(e)));
        f(weight, g);
    }
}

/// Parity bracket `Σ A^{n(S)} d^{l(S)} [G(S)]` with loops of Whitney class
/// `n != 1` contributing `d_n`.  No loop is discounted, so on node-free
/// diagrams this is `d` times the standard bracket.
pub fn parity_bracket(d: &MorseDiagram) -> ParityBracketValue {
    parity_bracket_with(d, ParityMode::Link, 0)
}

/// Parity bracket with `checks` extra randomized reduction orders per state;
/// a disagreement marks the value unresolved.
pub fn parity_bracket_with(d: &MorseDiagram, mode: ParityMode, checks: u64) -> ParityBracketValue {
    let mut terms: BTreeMap<String, ParityTerm> = BTreeMap::new();
    let mut unresolved = false;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    state_graphs(d, mode, |weight, g| {
        let mut r = g.clone();
        r.reduce();
        let key = r.key();
        for _ in 0..checks {
            let mut alt = g.clone();
            alt.reduce_random(&mut rng);
            if alt.key() != key || alt.node_count() != r.node_count() {
                unresolved = true;
            }
        }
        let mut coeff = LaurentPoly::term(1, weight);
        for &n in &r.loops {
            coeff = &coeff * &LaurentPoly::loop_var(n);
        }
        let entry = terms.entry(key.clone()).or_insert_with(|| ParityTerm {
            coefficient: LaurentPoly::zero(),
            graph: if key.is_empty() { None } else { Some(r.clone()) },
        });
        entry.coefficient += coeff;
    });
    terms.retain(|_, t| !t.coefficient.is_zero());
    ParityBracketValue { terms, unresolved }
}

/// Checks that random reduction orders agree on every state.
pub fn reduction_is_confluent(d: &MorseDiagram, rounds: u64) -> bool {
    !parity_bracket_with(d, ParityMode::Link, rounds).unresolved
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AugmentError {
    #[error("crossing {0} is even")]
    EvenCrossing(usize),
    #[error("could not make the node graph irreducible")]
    Stuck,
}

/// Every single flat virtual curl that can be added to `d`.
fn curl_sites(d: &MorseDiagram) -> impl Iterator<Item = MorseDiagram> + '_ {
    let widths = d.widths();
    (0..=d.len()).flat_map(move |at| {
        let w = widths[at];
        (0..w).flat_map(move |pos| {
            [Side::Left, Side::Right].into_iter().filter_map(move |side| {
                Move::CurlAdd { at, pos, kind: EventKind::Virtual, side }
                    .apply(d)
                    .ok()
                    .map(|a| a.diagram)
            })
        })
    })
}

/// Inserts flat virtual curls until the node graph is irreducible.  Each
/// round takes the first site that finishes the job, or else the one leaving
/// the fewest bigons.  Returns the new diagram and the number of curls added.
pub fn augment_with_flat_curls(d: &MorseDiagram) -> Result<(MorseDiagram, usize), AugmentError> {
    let pm = d.parity_map();
    if let Some(i) = pm.parities.iter().position(|&p| p == Parity::Even) {
        return Err(AugmentError::EvenCrossing(i));
    }
    let mut cur = d.clone();
    let mut added = 0;
    let limit = 4 * d.crossing_count() + 4;
    loop {
        let g = cur.node_graph();
        if g.is_irreducible() {
            return Ok((cur, added));
        }
        if added >= limit {
            return Err(AugmentError::Stuck);
        }
        let here = g.bigons().len();
        let mut best: Option<(usize, MorseDiagram)> = None;
        for next in curl_sites(&cur) {
            let ng = next.node_graph();
            if ng.is_irreducible() {
                best = Some((0, next));
                break;
            }
            let b = ng.bigons().len();
            if b < here && best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                best = Some((b, next));
            }
        }
        cur = best.ok_or(AugmentError::Stuck)?.1;
        added += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> MorseDiagram {
        MorseDiagram::parse(s).unwrap()
    }

    #[test]
    fn parities_from_words() {
        let p = crossing_parities(&GaussCode::from_labels(&["ABACDBDC"]));
        assert!(p.all_odd());
        let t = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(t.parity_map().count(Parity::Even), 3);
        let two = crossing_parities(&GaussCode::from_labels(&["AB", "AB"]));
        assert_eq!(two.parities, vec![Parity::Inter, Parity::Inter]);
    }

    #[test]
    fn classical_parity_bracket_is_rotational_bracket() {
        let t = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        let v = parity_bracket(&t);
        assert!(!v.has_graphs());
        assert_eq!(v.loop_part(), crate::bracket::rotational_bracket(&t));
        assert_eq!(v.bracket_normalized(), Some(crate::bracket::standard_bracket(&t)));
    }

    #[test]
    fn clean_bigon_reduces() {
        // two nodes stacked: the graph of an R2 pair on two arcs
        let r2 = d("cup 0 / cup 2 / x+ 1 / x- 1 / cap 2 / cap 0");
        let g = r2.node_graph();
        assert_eq!(g.node_count(), 2);
        assert!(!g.bigons().is_empty());
        let r = g.reduced();
        assert_eq!(r.node_count(), 0);
        assert_eq!(r.loops, vec![1, 1]);
        assert!(!g.is_irreducible());
    }

    #[test]
    fn virtual_trefoil_graph_has_a_bigon_face() {
        // the two classical crossings bound a face; the graph collapses to
        // one loop turning twice
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        assert!(vt.parity_map().all_odd());
        let v = parity_bracket(&vt);
        assert!(!v.has_graphs());
        assert_eq!(v.loop_part(), LaurentPoly::loop_var(2));
    }

    #[test]
    fn key_is_start_independent() {
        let vt = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        let vt2 = d("cup 0 / cup 0 / x+ 1 / v 1 / x+ 1 / cap 0 / cap 0");
        let k1 = vt.node_graph().key();
        assert!(!k1.is_empty());
        assert_eq!(k1, vt.node_graph().key());
        // a sliding variant is the same graph
        let s = vt.apply_move(&Move::Interchange { at: 0 });
        if let Ok(s) = s {
            assert_eq!(s.diagram.node_graph().key(), k1);
        }
        let _ = vt2.node_graph().key();
    }
}
