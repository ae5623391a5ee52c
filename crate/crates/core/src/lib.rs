//! Invariants of rotational virtual knots and links.
//!
//! Diagrams are Morse words ([`MorseDiagram`]).  From them the crate computes
//! bracket state sums (standard, rotational, binary, parity), tensor
//! evaluations of quantum models, diagram genus and the trace-word image in
//! a ribbon Hopf algebra.
//!
//! ```
//! use rotknot_core::{bracket::standard_bracket, poly::parse_laurent, MorseDiagram};
//!
//! let trefoil = MorseDiagram::parse("cup 0 / cup 1 / x+ 0 / x+ 0 / x+ 0 / cap 1 / cap 0").unwrap();
//! assert_eq!(standard_bracket(&trefoil), parse_laurent("A^-7 - A^-3 - A^5").unwrap());
//! ```

pub mod bracket;
pub mod diagram;
pub mod hopf;
pub mod invariance;
pub mod parity;
pub mod poly;
pub mod quantum;

pub use diagram::{DiagramError, GaussCode, Move, MorseDiagram, Orientation};
pub use parity::{FlatGraph, ParityBracketValue};
pub use poly::{Coeff, LaurentPoly, RawBracketPoly};
pub use quantum::ModelSpec;
