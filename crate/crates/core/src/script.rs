//! Edit scripts shared by the discrete and continuous solvers.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{Curve, Point};

/// Which edits a solver may use on σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditOps {
    Delete,
    Insert,
    Both,
}

impl EditOps {
    pub fn deletes(self) -> bool {
        matches!(self, EditOps::Delete | EditOps::Both)
    }

    pub fn inserts(self) -> bool {
        matches!(self, EditOps::Insert | EditOps::Both)
    }
}

/// One edit of σ.
#[derive(Clone, Debug, PartialEq)]
pub enum EditOp {
    /// Remove original vertex `index` (1-based).
    Delete { index: usize },
    /// Insert `point` after the first `position` original vertices.
    /// Several insertions at one position appear in script order.
    Insert { position: usize, point: Point },
}

/// A list of edits; its length is the edit cost.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn deletions(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| matches!(o, EditOp::Delete { .. }))
            .count()
    }

    pub fn insertions(&self) -> usize {
        self.len() - self.deletions()
    }

    /// Applies the script to `sigma`.
    pub fn apply(&self, sigma: &Curve) -> Result<Curve> {
        let n = sigma.len();
        let mut deleted = alloc::vec![false; n];
        let mut inserts: Vec<Vec<Point>> = alloc::vec![Vec::new(); n + 1];
        for op in &self.ops {
            match op {
                EditOp::Delete { index } => {
                    if *index == 0 || *index > n {
                        return Err(Error::Invalid(alloc::format!(
                            "delete index {index} outside 1..={n}"
                        )));
                    }
                    if deleted[index - 1] {
                        return Err(Error::Invalid(alloc::format!(
                            "vertex {index} deleted twice"
                        )));
                    }
                    deleted[index - 1] = true;
                }
                EditOp::Insert { position, point } => {
                    if *position > n {
                        return Err(Error::Invalid(alloc::format!(
                            "insert position {position} outside 0..={n}"
                        )));
                    }
                    if point.dim() != sigma.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: sigma.dim(),
                            found: point.dim(),
                        });
                    }
                    inserts[*position].push(point.clone());
                }
            }
        }
        let mut out = Vec::new();
        for p in 0..=n {
            out.append(&mut inserts[p]);
            if p < n && !deleted[p] {
                out.push(sigma.vertex(p).clone());
            }
        }
        if out.is_empty() {
            return Err(Error::Empty("edited curve has no vertices"));
        }
        Curve::new(out)
    }
}
