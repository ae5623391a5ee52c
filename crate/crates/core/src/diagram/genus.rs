//! Ribbon neighbourhoods and diagram genus.
//!
//! Classical crossings are plates joining four band ends in their planar
//! cyclic order; virtual crossings are bands passing over each other without
//! interacting.  Boundary loops are counted as faces of the ribbon graph.

use serde::Serialize;

use super::ports::{PortGraph, BL, BR, TL, TR};
use super::MorseDiagram;

/// Counterclockwise successor of a crossing slot.
fn ccw_next(slot: usize) -> usize {
    match slot {
        TR => TL,
        TL => BL,
        BL => BR,
        BR => TR,
        _ => unreachable!(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceGenus {
    /// Classical crossings in the piece.
    pub crossings: usize,
    /// Edges of the 4-valent graph (a free loop counts as one vertex and one
    /// edge).
    pub edges: usize,
    /// Boundary loops of the ribbon neighbourhood.
    pub boundaries: usize,
    pub genus: usize,
    /// Genus recomputed from the Euler characteristic `V - E + F`.
    pub euler_genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub pieces: Vec<PieceGenus>,
}

impl GenusReport {
    pub fn total(&self) -> usize {
        self.pieces.iter().map(|p| p.genus).sum()
    }

    pub fn boundaries(&self) -> usize {
        self.pieces.iter().map(|p| p.boundaries).sum()
    }

    pub fn euler_consistent(&self) -> bool {
        self.pieces.iter().all(|p| p.genus == p.euler_genus)
    }
}

fn face_count(pg: &PortGraph, darts: &[usize]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut faces = 0;
    for &d0 in darts {
        if seen.contains(&d0) {
            continue;
        }
        faces += 1;
        let mut d = d0;
        loop {
            seen.insert(d);
            let end = pg.edge_from(d).end;
            d = 4 * (end / 4) + ccw_next(end % 4);
            if d == d0 {
                break;
            }
        }
    }
    faces
}

impl MorseDiagram {
    /// Number of boundary loops `L` of the ribbon neighbourhood.
    pub fn ribbon_boundary_count(&self) -> usize {
        self.genus_report().boundaries()
    }

    /// Genus `1 + (V - L)/2` of each connected piece.
    pub fn genus_report(&self) -> GenusReport {
        let pg = self.ports();
        let mut pieces = Vec::new();
        for ports in pg.pieces() {
            let darts: Vec<usize> = ports
                .iter()
                .copied()
                .filter(|&p| pg.kind(p / 4).is_classical())
                .collect();
            if darts.is_empty() {
                // a free loop: annulus, capped to a sphere
                pieces.push(PieceGenus {
                    crossings: 0,
                    edges: 1,
                    boundaries: 2,
                    genus: 0,
                    euler_genus: 0,
                });
                continue;
            }
            let v = darts.len() / 4;
            let l = face_count(&pg, &darts);
            debug_assert!((v + l) % 2 == 0);
            let genus = (2 + v - l) / 2;
            // independent count of graph edges: pair darts through their paths
            let edges = darts
                .iter()
                .filter(|&&p| p <= pg.edge_from(p).end)
                .count();
            let chi = v as isize - edges as isize + l as isize;
            let euler_genus = ((2 - chi) / 2) as usize;
            pieces.push(PieceGenus { crossings: v, edges, boundaries: l, genus, euler_genus });
        }
        GenusReport { pieces }
    }

    /// Total diagram genus (sum over connected pieces).
    pub fn diagram_genus(&self) -> usize {
        self.genus_report().total()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> MorseDiagram {
        MorseDiagram::parse(s).unwrap()
    }

    #[test]
    fn unknot_is_an_annulus() {
        assert_eq!(MorseDiagram::unknot().ribbon_boundary_count(), 2);
        assert_eq!(MorseDiagram::unknot().diagram_genus(), 0);
    }

    #[test]
    fn classical_trefoil_has_five_boundaries() {
        let t = d("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(t.ribbon_boundary_count(), 5);
        assert_eq!(t.diagram_genus(), 0);
    }

    #[test]
    fn virtual_trefoil_has_genus_one() {
        let t = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        assert_eq!(t.ribbon_boundary_count(), 2);
        assert_eq!(t.diagram_genus(), 1);
        assert!(t.genus_report().euler_consistent());
    }

    #[test]
    fn disjoint_pieces_reported_separately() {
        let t = d("cup 0 / cup 1 / x+ 0 / v 0 / x+ 0 / cap 1 / cap 0");
        let two = t.disjoint_union(&MorseDiagram::unknot());
        let r = two.genus_report();
        assert_eq!(r.pieces.len(), 2);
        assert_eq!(r.total(), 1);
    }
}
