//! Cell identifiers and boundary paths.
//!
//! All four cell kinds are interned into their owning category and referred to
//! by dense indices. Composable runs of 1-cells are kept as flattened lists:
//! the empty list at an object *is* the identity 1-cell, so the strict unit
//! and associativity laws hold at the representation level and never need
//! rewriting.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HCellId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VCellId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SquareId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}
impl fmt::Display for HCellId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}
impl fmt::Display for VCellId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
impl fmt::Display for SquareId {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// A composable run of horizontal 1-cells. `cells[0]` leaves `start`; an
/// empty run denotes the horizontal identity at `start`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HPath {
    pub start: ObjId,
    pub cells: Vec<HCellId>,
}

/// A composable run of vertical 1-cells, top to bottom.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VPath {
    pub start: ObjId,
    pub cells: Vec<VCellId>,
}

impl HPath {
    pub fn id(at: ObjId) -> Self {
        HPath { start: at, cells: Vec::new() }
    }
    pub fn one(start: ObjId, f: HCellId) -> Self {
        HPath { start, cells: vec![f] }
    }
    pub fn is_id(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

impl VPath {
    pub fn id(at: ObjId) -> Self {
        VPath { start: at, cells: Vec::new() }
    }
    pub fn one(start: ObjId, u: VCellId) -> Self {
        VPath { start, cells: vec![u] }
    }
    pub fn is_id(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The four-sided boundary of a square composite.
///
/// Corners: `top` runs src(left) -> src(right) and `bottom` runs
/// tgt(left) -> tgt(right).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Boundary {
    pub top: HPath,
    pub bottom: HPath,
    pub left: VPath,
    pub right: VPath,
}
