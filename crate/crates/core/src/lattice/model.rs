use super::faces::{face_poset, FacePoset};
use super::fan::{Fan, SupportFunction};
use super::polytope::{polytope_from_support, Polytope};
use super::LatticeError;

/// A validated smooth complete fan with an ample support function, its moment
/// polytope and face poset. Everything downstream is built on one of these.
#[derive(Clone, Debug)]
pub struct ToricModel {
    pub fan: Fan,
    pub psi: SupportFunction,
    pub polytope: Polytope,
    pub poset: FacePoset,
}

impl ToricModel {
    pub fn new(fan: Fan, psi: SupportFunction) -> Result<Self, LatticeError> {
        let diag = fan.validate(&psi)?;
        if !diag.primitive {
            return Err(LatticeError::Invalid("primitive"));
        }
        if !diag.smooth {
            return Err(LatticeError::Invalid("smooth"));
        }
        if !diag.complete {
            return Err(LatticeError::Invalid("complete"));
        }
        if !diag.strictly_convex {
            return Err(LatticeError::Invalid("strictly convex"));
        }
        let polytope = polytope_from_support(&fan, &psi);
        let poset = face_poset(&polytope)?;
        Ok(Self {
            fan,
            psi,
            polytope,
            poset,
        })
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn num_rays(&self) -> usize {
        self.fan.num_rays()
    }

    pub fn trivial_bundle(&self) -> SupportFunction {
        SupportFunction::zero(self.num_rays())
    }
}
