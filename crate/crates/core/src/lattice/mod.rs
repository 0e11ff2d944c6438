//! Fans, support functions, moment polytopes and their face posets.

mod boundary;
pub mod examples;
mod faces;
mod fan;
mod io;
mod model;
mod polytope;

use thiserror::Error;

pub use boundary::{h_function, BoundaryPattern};
pub use faces::{face_poset, Face, FaceId, FacePoset};
pub use fan::{validate_fan, Fan, FanDiagnostics, SupportFunction, Wall};
pub use io::{parse_fan_json, FanFile};
pub use model::ToricModel;
pub use polytope::{lattice_points, polytope_from_support, Inequality, Polytope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("malformed fan: {0}")]
    Malformed(String),
    #[error("maximal cone {cone} has {rays} rays, expected {dim}")]
    MalformedCone {
        cone: usize,
        rays: usize,
        dim: usize,
    },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no face poset: the polytope is empty")]
    NoFacePoset,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("fan file parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("fan is not {0}")]
    Invalid(&'static str),
}
