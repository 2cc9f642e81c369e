//! Combinatorial layer: plane diagrams of knots and single-vertex
//! 4-valent graphs, rational tangle calculus by annular layer peeling,
//! tunnel-number-one classification of reduced alternating knot diagrams,
//! and the handlebody-exterior test for reduced alternating graph
//! diagrams. Everything works on combinatorial maps; no geometry.

pub mod classify;
pub mod construct;
pub mod diagram;
pub mod error;
pub mod fraction;
pub mod handlebody;
pub mod rational;
pub mod report;
pub mod runner;
pub mod tangle;

pub use diagram::{parse_diagram, DiagramFormat, PlaneDiagram};
pub use error::{Error, Result};
pub use fraction::Fraction;
