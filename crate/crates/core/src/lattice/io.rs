use serde::{Deserialize, Serialize};

use super::fan::{Fan, SupportFunction};
use super::LatticeError;

/// On-disk fan description.
///
/// ```json
/// { "dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]], "psi": [1,1,1] }
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub psi: Vec<i64>,
}

impl FanFile {
    pub fn into_parts(self) -> Result<(Fan, SupportFunction), LatticeError> {
        let fan = Fan::new(self.dim, self.rays, self.max_cones)?;
        if self.psi.len() != fan.num_rays() {
            return Err(LatticeError::LengthMismatch {
                expected: fan.num_rays(),
                found: self.psi.len(),
            });
        }
        Ok((fan, SupportFunction::new(self.psi)))
    }

    pub fn from_parts(fan: &Fan, psi: &SupportFunction) -> Self {
        Self {
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            max_cones: fan.max_cones().to_vec(),
            psi: psi.values().to_vec(),
        }
    }
}

/// Parses a fan file. Syntax errors carry the line and column.
pub fn parse_fan_json(text: &str) -> Result<(Fan, SupportFunction), LatticeError> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| LatticeError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_parts()
}
