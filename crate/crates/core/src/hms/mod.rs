//! The mirror dictionary: line bundles as tropical section data, and the
//! generator-level comparison of the Čech and simplicial models.

mod axioms;
mod compare;
mod sections;

use thiserror::Error;

pub use axioms::{dg_axioms_check, AxiomCounts, DgReport, DgSuite};
pub use compare::{ModelReport, Models};
pub use sections::{bundle_to_sections, linear_shift_between, sections_to_bundle, SectionData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HmsError {
    #[error("section data does not match the vertices of the polytope")]
    Shape,
    #[error("lifts at vertices {from} and {to} differ by more than a multiple of edge {edge}")]
    IncompatibleEdge { edge: usize, from: usize, to: usize },
    #[error("lifts disagree on ray {0}")]
    InconsistentRay(usize),
}
