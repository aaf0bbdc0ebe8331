//! Well-typed pasting expressions for 2-cells.

use crate::cell::{HPath, SquareId, VPath};
use std::fmt;

/// A binary pasting expression denoting a square composite.
///
/// `HComp(l, r)` places `l` to the left of `r`; `VComp(t, b)` stacks `t` on
/// top of `b`. Well-typedness (the shared boundary of each node) is checked
/// against a category by [`crate::category::DoubleCategory::boundary`], not
/// at construction, so expression trees stay plain data.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SquareExpr {
    Gen(SquareId),
    /// Horizontal identity square on a vertical path.
    HId(VPath),
    /// Vertical identity square on a horizontal path.
    VId(HPath),
    HComp(Box<SquareExpr>, Box<SquareExpr>),
    VComp(Box<SquareExpr>, Box<SquareExpr>),
}

impl SquareExpr {
    pub fn gen(s: SquareId) -> Self {
        SquareExpr::Gen(s)
    }

    pub fn hid(p: VPath) -> Self {
        SquareExpr::HId(p)
    }

    pub fn vid(p: HPath) -> Self {
        SquareExpr::VId(p)
    }

    /// Raw tree construction; use [`crate::category::DoubleCategory::hcomp`]
    /// for the checked version.
    pub fn beside(self, right: SquareExpr) -> Self {
        SquareExpr::HComp(Box::new(self), Box::new(right))
    }

    pub fn above(self, below: SquareExpr) -> Self {
        SquareExpr::VComp(Box::new(self), Box::new(below))
    }

    /// Number of generator leaves.
    pub fn size(&self) -> usize {
        match self {
            SquareExpr::Gen(_) => 1,
            SquareExpr::HId(_) | SquareExpr::VId(_) => 0,
            SquareExpr::HComp(a, b) | SquareExpr::VComp(a, b) => a.size() + b.size(),
        }
    }
}

/// Left-to-right horizontal composite of several factors. Panics on empty
/// input: the caller knows the identity boundary, the function does not.
pub fn hrow(factors: Vec<SquareExpr>) -> SquareExpr {
    let mut it = factors.into_iter();
    let first = it.next().expect("hrow needs at least one factor");
    it.fold(first, |acc, x| acc.beside(x))
}

/// Top-to-bottom vertical composite of several factors.
pub fn vstack(factors: Vec<SquareExpr>) -> SquareExpr {
    let mut it = factors.into_iter();
    let first = it.next().expect("vstack needs at least one factor");
    it.fold(first, |acc, x| acc.above(x))
}

impl fmt::Display for SquareExpr {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            SquareExpr::Gen(s) => write!(f, "{}", s),
            SquareExpr::HId(p) => {
                if p.is_id() {
                    write!(f, "1({})", p.start)
                } else {
                    let names: Vec<String> = p.cells.iter().map(|c| c.to_string()).collect();
                    write!(f, "Idh({})", names.join("."))
                }
            }
            SquareExpr::VId(p) => {
                if p.is_id() {
                    write!(f, "1({})", p.start)
                } else {
                    let names: Vec<String> = p.cells.iter().map(|c| c.to_string()).collect();
                    write!(f, "Idv({})", names.join("."))
                }
            }
            SquareExpr::HComp(a, b) => write!(f, "({} | {})", a, b),
            SquareExpr::VComp(a, b) => write!(f, "({} / {})", a, b),
        }
    }
}
