//! Augmented cubes, internally disjoint path constructions through three
//! terminals, and exact small-scale oracles to check them against.

pub mod cli;
pub mod construct;
pub mod cube;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod verify;

pub use construct::{construct, target_count, CaseLabel, ConstructionTrace, DPathFamily};
pub use cube::{AdjacencyMask, AugmentedCube, Quadrant, Vertex, XorTranslation};
pub use error::{Error, Result};
pub use graph::{ExplicitGraph, Graph, Restricted};
pub use verify::{check_family, check_path, Verdict, Violation, ViolationKind};
