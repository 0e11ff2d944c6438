use serde::Serialize;

use super::cells::CellCopy;
use super::SimpError;

/// A simplicial complex with totally ordered vertices; simplices are listed
/// with increasing vertices.
pub trait OrderedComplex {
    fn contains(&self, s: &[usize]) -> bool;
    fn simplices(&self, k: usize) -> Vec<Vec<usize>>;
    fn dim(&self) -> usize;
}

/// The standard simplex `Δ^d` on vertices `0..=d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullSimplex(pub usize);

impl OrderedComplex for FullSimplex {
    fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && s.iter().all(|&v| v <= self.0) && s.windows(2).all(|w| w[0] < w[1])
    }

    fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        fn rec(
            start: usize,
            top: usize,
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for v in start..=top {
                cur.push(v);
                rec(v + 1, top, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= self.0 {
            rec(0, self.0, k + 1, &mut Vec::new(), &mut out);
        }
        out
    }

    fn dim(&self) -> usize {
        self.0
    }
}

/// A face of the local model together with which copy of the dual
/// subdivision its dual cell lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiModelCell {
    pub face: Vec<usize>,
    pub copy: CellCopy,
}

impl PiModelCell {
    pub fn unshifted(face: Vec<usize>) -> Self {
        Self {
            face,
            copy: CellCopy::Unshifted,
        }
    }

    pub fn shifted(face: Vec<usize>) -> Self {
        Self {
            face,
            copy: CellCopy::Shifted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PiOutcome {
    Empty,
    /// The dual cells meet in a cell of the same dimension as the dual of
    /// the glued face `[u_0..u_k = w_0..w_l]`.
    SameDimension(Vec<usize>),
    /// The dual cells meet in a cell one dimension larger than the dual of
    /// `[u_0..u_k, w_0..w_l]`, and collapse onto it.
    Collapsed(Vec<usize>),
}

/// Intersection of the dual cell of `sigma` with the shifted dual cell of
/// `tau`: they meet iff `u_k <= w_0`.
pub fn pi_intersect_collapse<C: OrderedComplex + ?Sized>(
    cx: &C,
    sigma: &PiModelCell,
    tau: &PiModelCell,
) -> Result<PiOutcome, SimpError> {
    if sigma.copy != CellCopy::Unshifted {
        return Err(SimpError::WrongCopy {
            expected: CellCopy::Unshifted,
        });
    }
    if tau.copy != CellCopy::Shifted {
        return Err(SimpError::WrongCopy {
            expected: CellCopy::Shifted,
        });
    }
    for f in [&sigma.face, &tau.face] {
        if !cx.contains(f) {
            return Err(SimpError::MalformedFace(f.clone()));
        }
    }
    let uk = *sigma.face.last().expect("nonempty face");
    let w0 = tau.face[0];
    let glued = |skip: usize| {
        let mut s = sigma.face.clone();
        s.extend_from_slice(&tau.face[skip..]);
        s
    };
    Ok(if uk > w0 {
        PiOutcome::Empty
    } else if uk == w0 {
        let s = glued(1);
        if cx.contains(&s) {
            PiOutcome::SameDimension(s)
        } else {
            PiOutcome::Empty
        }
    } else {
        let s = glued(0);
        if cx.contains(&s) {
            PiOutcome::Collapsed(s)
        } else {
            PiOutcome::Empty
        }
    })
}
