//! Exact computations in Thompson's group F and its groupoid of dyadic
//! rearrangements: piecewise-linear maps, strand diagrams, annular
//! closures and conjugacy, fixed-point dynamics, Mather invariants and
//! orbits.

pub mod annular;
pub mod binary;
pub mod dot;
pub mod dyadic;
pub mod error;
pub mod generators;
pub mod graph;
pub mod mather;
pub mod orbits;
pub mod parse;
pub mod plmap;
pub mod random;
pub mod strand;
pub mod tree;

pub use annular::{are_conjugate, AnnularStrandDiagram, CutPath, LoopInfo, LoopKind};
pub use binary::{BinaryWord, TailWord};
pub use dyadic::Q;
pub use error::{Error, Result};
pub use generators::{x0, x1, Letter, Word};
pub use mather::{CircleMap, CylindricalStrandDiagram, RotationSide};
pub use plmap::{CantorPoint, FixedInterval, PLMap, Side};
pub use strand::StrandDiagram;
pub use tree::Tree;
