//! Symbolic engine for strict double categories.
//!
//! Cells, pasting expressions, finitely tabulated and free double
//! categories, pseudo double functors, horizontal and vertical
//! transformations, companion pairs, and a Gray-style tensor of free
//! double categories, with exhaustive axiom checking throughout.

pub mod category;
pub mod cell;
pub mod companion;
pub mod dbltrans;
pub mod dsl;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod free;
pub mod functor;
pub mod graytensor;
pub mod report;
pub mod transform;
pub mod tricat;

pub use category::{DoubleCategory, NormalForm, TabData, Tabulated};
pub use cell::{Boundary, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
pub use error::{DblError, Eq3, Result};
pub use expr::{hrow, vstack, SquareExpr};
pub use free::{Free, FreeHCell, FreeNf, FreeSquareGen, FreeVCell, HPathRule, SquareRule, VPathRule};
pub use functor::{check_functor_axioms, compose_functors, identity_functor, DoublePseudoFunctor, Inv};
pub use report::{Report, ReportEntry, Verdict};
