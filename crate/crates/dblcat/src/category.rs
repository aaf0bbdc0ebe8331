//! Strict double categories: the tabulated (finite, fully tabled) flavor and
//! the unified API over tabulated and free categories.
//!
//! A tabulated category stores total composition tables for both directions
//! and is validated exhaustively at construction: associativity, units, the
//! interchange law and the identity-square coherences are checked on every
//! composable tuple, so downstream code can evaluate expressions blindly.

use crate::cell::{Boundary, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use crate::error::{DblError, Eq3, Result};
use crate::expr::SquareExpr;
use crate::free::{Free, FreeNf};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct TabHCell {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct TabVCell {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct TabSquare {
    pub name: String,
    pub top: HCellId,
    pub bottom: HCellId,
    pub left: VCellId,
    pub right: VCellId,
}

/// Raw tabulated data, validated by [`Tabulated::new`].
#[derive(Clone, Debug, Default)]
pub struct TabData {
    pub objects: Vec<String>,
    pub hcells: Vec<TabHCell>,
    pub vcells: Vec<TabVCell>,
    pub squares: Vec<TabSquare>,
    pub h_id: Vec<HCellId>,
    pub v_id: Vec<VCellId>,
    pub h_comp: HashMap<(HCellId, HCellId), HCellId>,
    pub v_comp: HashMap<(VCellId, VCellId), VCellId>,
    /// (left, right) -> composite
    pub sq_h: HashMap<(SquareId, SquareId), SquareId>,
    /// (top, bottom) -> composite
    pub sq_v: HashMap<(SquareId, SquareId), SquareId>,
    pub sq_idh: Vec<SquareId>,
    pub sq_idv: Vec<SquareId>,
}

#[derive(Clone, Debug)]
pub struct Tabulated {
    pub data: TabData,
}

macro_rules! law {
    ($law:expr, $witness:expr) => {
        return Err(DblError::LawViolation { law: $law.to_string(), witness: $witness })
    };
}

impl Tabulated {
    pub fn new(data: TabData) -> Result<Self> {
        let t = Tabulated { data };
        t.validate()?;
        Ok(t)
    }

    fn h(&self, f: HCellId) -> &TabHCell {
        &self.data.hcells[f.0 as usize]
    }
    fn v(&self, u: VCellId) -> &TabVCell {
        &self.data.vcells[u.0 as usize]
    }
    fn sq(&self, s: SquareId) -> &TabSquare {
        &self.data.squares[s.0 as usize]
    }

    pub fn comp_h(&self, f: HCellId, g: HCellId) -> Result<HCellId> {
        self.data.h_comp.get(&(f, g)).copied().ok_or_else(|| DblError::invalid(format!("h_comp missing for ({}, {})", f, g)))
    }

    pub fn comp_v(&self, u: VCellId, w: VCellId) -> Result<VCellId> {
        self.data.v_comp.get(&(u, w)).copied().ok_or_else(|| DblError::invalid(format!("v_comp missing for ({}, {})", u, w)))
    }

    pub fn comp_sq_h(&self, a: SquareId, b: SquareId) -> Result<SquareId> {
        self.data.sq_h.get(&(a, b)).copied().ok_or_else(|| DblError::invalid(format!("sq_h missing for ({}, {})", a, b)))
    }

    pub fn comp_sq_v(&self, a: SquareId, b: SquareId) -> Result<SquareId> {
        self.data.sq_v.get(&(a, b)).copied().ok_or_else(|| DblError::invalid(format!("sq_v missing for ({}, {})", a, b)))
    }

    pub fn eval_h(&self, p: &HPath) -> Result<HCellId> {
        let mut acc = self.data.h_id[p.start.0 as usize];
        for &f in &p.cells {
            acc = self.comp_h(acc, f)?;
        }
        Ok(acc)
    }

    pub fn eval_v(&self, p: &VPath) -> Result<VCellId> {
        let mut acc = self.data.v_id[p.start.0 as usize];
        for &u in &p.cells {
            acc = self.comp_v(acc, u)?;
        }
        Ok(acc)
    }

    fn validate(&self) -> Result<()> {
        let d = &self.data;
        let no = d.objects.len();
        if d.h_id.len() != no || d.v_id.len() != no {
            return Err(DblError::invalid("identity tables must cover every object"));
        }
        if d.sq_idh.len() != d.vcells.len() || d.sq_idv.len() != d.hcells.len() {
            return Err(DblError::invalid("identity-square tables must cover every 1-cell"));
        }
        for (o, &i) in d.h_id.iter().enumerate() {
            let c = self.h(i);
            if c.src.0 as usize != o || c.tgt.0 as usize != o {
                law!("h-unit-shape", format!("1_{} = {}", ObjId(o as u32), i));
            }
        }
        for (o, &i) in d.v_id.iter().enumerate() {
            let c = self.v(i);
            if c.src.0 as usize != o || c.tgt.0 as usize != o {
                law!("v-unit-shape", format!("1^{} = {}", ObjId(o as u32), i));
            }
        }
        for s in &d.squares {
            let (t, b, l, r) = (self.h(s.top), self.h(s.bottom), self.v(s.left), self.v(s.right));
            if t.src != l.src || t.tgt != r.src || b.src != l.tgt || b.tgt != r.tgt {
                law!("square-boundary", s.name.clone());
            }
        }

        // 1-cell tables: totality, shape, units, associativity.
        let nh = d.hcells.len();
        for f in 0..nh {
            let f = HCellId(f as u32);
            for g in 0..nh {
                let g = HCellId(g as u32);
                let composable = self.h(f).tgt == self.h(g).src;
                match d.h_comp.get(&(f, g)) {
                    None if composable => law!("h-comp-total", format!("({}, {})", f, g)),
                    Some(_) if !composable => law!("h-comp-shape", format!("({}, {})", f, g)),
                    Some(&c) if composable => {
                        if self.h(c).src != self.h(f).src || self.h(c).tgt != self.h(g).tgt {
                            law!("h-comp-shape", format!("({}, {})", f, g));
                        }
                    }
                    _ => {}
                }
            }
        }
        let nv = d.vcells.len();
        for u in 0..nv {
            let u = VCellId(u as u32);
            for w in 0..nv {
                let w = VCellId(w as u32);
                let composable = self.v(u).tgt == self.v(w).src;
                match d.v_comp.get(&(u, w)) {
                    None if composable => law!("v-comp-total", format!("({}, {})", u, w)),
                    Some(_) if !composable => law!("v-comp-shape", format!("({}, {})", u, w)),
                    Some(&c) if composable => {
                        if self.v(c).src != self.v(u).src || self.v(c).tgt != self.v(w).tgt {
                            law!("v-comp-shape", format!("({}, {})", u, w));
                        }
                    }
                    _ => {}
                }
            }
        }
        for f in 0..nh {
            let f = HCellId(f as u32);
            let (s, t) = (self.h(f).src, self.h(f).tgt);
            if self.comp_h(d.h_id[s.0 as usize], f)? != f || self.comp_h(f, d.h_id[t.0 as usize])? != f {
                law!("h-unit", f.to_string());
            }
        }
        for u in 0..nv {
            let u = VCellId(u as u32);
            let (s, t) = (self.v(u).src, self.v(u).tgt);
            if self.comp_v(d.v_id[s.0 as usize], u)? != u || self.comp_v(u, d.v_id[t.0 as usize])? != u {
                law!("v-unit", u.to_string());
            }
        }
        for (&(f, g), &fg) in &d.h_comp {
            for h in 0..nh {
                let h = HCellId(h as u32);
                if self.h(g).tgt == self.h(h).src {
                    let lhs = self.comp_h(fg, h)?;
                    let rhs = self.comp_h(f, self.comp_h(g, h)?)?;
                    if lhs != rhs {
                        law!("h-assoc", format!("({}, {}, {})", f, g, h));
                    }
                }
            }
        }
        for (&(u, w), &uw) in &d.v_comp {
            for x in 0..nv {
                let x = VCellId(x as u32);
                if self.v(w).tgt == self.v(x).src {
                    let lhs = self.comp_v(uw, x)?;
                    let rhs = self.comp_v(u, self.comp_v(w, x)?)?;
                    if lhs != rhs {
                        law!("v-assoc", format!("({}, {}, {})", u, w, x));
                    }
                }
            }
        }

        // Identity squares: shape.
        for (u, &s) in d.sq_idh.iter().enumerate() {
            let u = VCellId(u as u32);
            let sq = self.sq(s);
            let (a, b) = (self.v(u).src, self.v(u).tgt);
            if sq.top != d.h_id[a.0 as usize] || sq.bottom != d.h_id[b.0 as usize] || sq.left != u || sq.right != u {
                law!("idh-shape", u.to_string());
            }
        }
        for (f, &s) in d.sq_idv.iter().enumerate() {
            let f = HCellId(f as u32);
            let sq = self.sq(s);
            let (a, b) = (self.h(f).src, self.h(f).tgt);
            if sq.top != f || sq.bottom != f || sq.left != d.v_id[a.0 as usize] || sq.right != d.v_id[b.0 as usize] {
                law!("idv-shape", f.to_string());
            }
        }

        // Square tables: totality and boundary shape.
        let ns = d.squares.len();
        let hcomposable = |a: &TabSquare, b: &TabSquare| a.right == b.left;
        let vcomposable = |a: &TabSquare, b: &TabSquare| a.bottom == b.top;
        for a in 0..ns {
            let ai = SquareId(a as u32);
            for b in 0..ns {
                let bi = SquareId(b as u32);
                let (sa, sb) = (self.sq(ai), self.sq(bi));
                let hc = hcomposable(sa, sb);
                match d.sq_h.get(&(ai, bi)) {
                    None if hc => law!("sq-h-total", format!("({}, {})", ai, bi)),
                    Some(_) if !hc => law!("sq-h-shape", format!("({}, {})", ai, bi)),
                    Some(&c) if hc => {
                        let sc = self.sq(c);
                        if sc.top != self.comp_h(sa.top, sb.top)?
                            || sc.bottom != self.comp_h(sa.bottom, sb.bottom)?
                            || sc.left != sa.left
                            || sc.right != sb.right
                        {
                            law!("sq-h-shape", format!("({}, {})", ai, bi));
                        }
                    }
                    _ => {}
                }
                let vc = vcomposable(sa, sb);
                match d.sq_v.get(&(ai, bi)) {
                    None if vc => law!("sq-v-total", format!("({}, {})", ai, bi)),
                    Some(_) if !vc => law!("sq-v-shape", format!("({}, {})", ai, bi)),
                    Some(&c) if vc => {
                        let sc = self.sq(c);
                        if sc.top != sa.top
                            || sc.bottom != sb.bottom
                            || sc.left != self.comp_v(sa.left, sb.left)?
                            || sc.right != self.comp_v(sa.right, sb.right)?
                        {
                            law!("sq-v-shape", format!("({}, {})", ai, bi));
                        }
                    }
                    _ => {}
                }
            }
        }

        // Square units.
        for a in 0..ns {
            let ai = SquareId(a as u32);
            let sa = self.sq(ai).clone();
            if self.comp_sq_h(d.sq_idh[sa.left.0 as usize], ai)? != ai
                || self.comp_sq_h(ai, d.sq_idh[sa.right.0 as usize])? != ai
            {
                law!("sq-h-unit", ai.to_string());
            }
            if self.comp_sq_v(d.sq_idv[sa.top.0 as usize], ai)? != ai
                || self.comp_sq_v(ai, d.sq_idv[sa.bottom.0 as usize])? != ai
            {
                law!("sq-v-unit", ai.to_string());
            }
        }

        // Square associativity.
        for (&(a, b), &ab) in &d.sq_h {
            for c in 0..ns {
                let c = SquareId(c as u32);
                if self.sq(b).right == self.sq(c).left {
                    if self.comp_sq_h(ab, c)? != self.comp_sq_h(a, self.comp_sq_h(b, c)?)? {
                        law!("sq-h-assoc", format!("({}, {}, {})", a, b, c));
                    }
                }
            }
        }
        for (&(a, b), &ab) in &d.sq_v {
            for c in 0..ns {
                let c = SquareId(c as u32);
                if self.sq(b).bottom == self.sq(c).top {
                    if self.comp_sq_v(ab, c)? != self.comp_sq_v(a, self.comp_sq_v(b, c)?)? {
                        law!("sq-v-assoc", format!("({}, {}, {})", a, b, c));
                    }
                }
            }
        }

        // Identity-square coherence.
        for o in 0..no {
            if d.sq_idv[d.h_id[o].0 as usize] != d.sq_idh[d.v_id[o].0 as usize] {
                law!("id-square-coherence", ObjId(o as u32).to_string());
            }
        }
        for (&(u, w), &uw) in &d.v_comp {
            if self.comp_sq_v(d.sq_idh[u.0 as usize], d.sq_idh[w.0 as usize])? != d.sq_idh[uw.0 as usize] {
                law!("idh-functorial", format!("({}, {})", u, w));
            }
        }
        for (&(f, g), &fg) in &d.h_comp {
            if self.comp_sq_h(d.sq_idv[f.0 as usize], d.sq_idv[g.0 as usize])? != d.sq_idv[fg.0 as usize] {
                law!("idv-functorial", format!("({}, {})", f, g));
            }
        }

        // Interchange: rows-then-columns equals columns-then-rows.
        for (&(a, b), &ab) in &d.sq_h {
            for c in 0..ns {
                let c = SquareId(c as u32);
                if self.sq(c).top != self.sq(a).bottom {
                    continue;
                }
                for e in 0..ns {
                    let e = SquareId(e as u32);
                    if self.sq(e).top != self.sq(b).bottom || self.sq(c).right != self.sq(e).left {
                        continue;
                    }
                    let rows = self.comp_sq_v(ab, self.comp_sq_h(c, e)?)?;
                    let cols = self.comp_sq_h(self.comp_sq_v(a, c)?, self.comp_sq_v(b, e)?)?;
                    if rows != cols {
                        law!("interchange", format!("({}, {}, {}, {})", a, b, c, e));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn eval_sq(&self, e: &SquareExpr) -> Result<SquareId> {
        match e {
            SquareExpr::Gen(s) => {
                if (s.0 as usize) < self.data.squares.len() {
                    Ok(*s)
                } else {
                    Err(DblError::invalid(format!("unknown square {}", s)))
                }
            }
            SquareExpr::HId(p) => {
                let u = self.eval_v(p)?;
                Ok(self.data.sq_idh[u.0 as usize])
            }
            SquareExpr::VId(p) => {
                let f = self.eval_h(p)?;
                Ok(self.data.sq_idv[f.0 as usize])
            }
            SquareExpr::HComp(a, b) => {
                let (x, y) = (self.eval_sq(a)?, self.eval_sq(b)?);
                if self.sq(x).right != self.sq(y).left {
                    return Err(DblError::BoundaryMismatch {
                        context: "horizontal composite".into(),
                        lhs: self.sq(x).right.to_string(),
                        rhs: self.sq(y).left.to_string(),
                    });
                }
                self.comp_sq_h(x, y)
            }
            SquareExpr::VComp(a, b) => {
                let (x, y) = (self.eval_sq(a)?, self.eval_sq(b)?);
                if self.sq(x).bottom != self.sq(y).top {
                    return Err(DblError::BoundaryMismatch {
                        context: "vertical composite".into(),
                        lhs: self.sq(x).bottom.to_string(),
                        rhs: self.sq(y).top.to_string(),
                    });
                }
                self.comp_sq_v(x, y)
            }
        }
    }
}

/// Normal form of a square expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalForm {
    Tab(SquareId),
    Free(FreeNf),
}

/// A strict double category, either freely presented or fully tabled.
#[derive(Debug)]
pub enum DoubleCategory {
    Tab(Tabulated),
    Free(Free),
}

impl DoubleCategory {
    pub fn mk_tabulated(data: TabData) -> Result<Self> {
        Ok(DoubleCategory::Tab(Tabulated::new(data)?))
    }

    pub fn mk_free(free: Free) -> Result<Self> {
        free.validate()?;
        Ok(DoubleCategory::Free(free))
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self, DoubleCategory::Tab(_))
    }

    pub fn as_tab(&self) -> Result<&Tabulated> {
        match self {
            DoubleCategory::Tab(t) => Ok(t),
            DoubleCategory::Free(_) => Err(DblError::invalid("operation requires a tabulated category")),
        }
    }

    pub fn as_free(&self) -> Result<&Free> {
        match self {
            DoubleCategory::Free(f) => Ok(f),
            DoubleCategory::Tab(_) => Err(DblError::invalid("operation requires a free category")),
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            DoubleCategory::Tab(t) => t.data.objects.len(),
            DoubleCategory::Free(f) => f.objects.len(),
        }
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        match self {
            DoubleCategory::Tab(t) => &t.data.objects[o.0 as usize],
            DoubleCategory::Free(f) => &f.objects[o.0 as usize],
        }
    }

    pub fn hcell_count(&self) -> usize {
        match self {
            DoubleCategory::Tab(t) => t.data.hcells.len(),
            DoubleCategory::Free(f) => f.hcells.len(),
        }
    }

    pub fn vcell_count(&self) -> usize {
        match self {
            DoubleCategory::Tab(t) => t.data.vcells.len(),
            DoubleCategory::Free(f) => f.vcells.len(),
        }
    }

    pub fn square_count(&self) -> usize {
        match self {
            DoubleCategory::Tab(t) => t.data.squares.len(),
            DoubleCategory::Free(f) => f.squares.len(),
        }
    }

    pub fn h_src(&self, f: HCellId) -> ObjId {
        match self {
            DoubleCategory::Tab(t) => t.data.hcells[f.0 as usize].src,
            DoubleCategory::Free(c) => c.hcells[f.0 as usize].src,
        }
    }

    pub fn h_tgt(&self, f: HCellId) -> ObjId {
        match self {
            DoubleCategory::Tab(t) => t.data.hcells[f.0 as usize].tgt,
            DoubleCategory::Free(c) => c.hcells[f.0 as usize].tgt,
        }
    }

    pub fn v_src(&self, u: VCellId) -> ObjId {
        match self {
            DoubleCategory::Tab(t) => t.data.vcells[u.0 as usize].src,
            DoubleCategory::Free(c) => c.vcells[u.0 as usize].src,
        }
    }

    pub fn v_tgt(&self, u: VCellId) -> ObjId {
        match self {
            DoubleCategory::Tab(t) => t.data.vcells[u.0 as usize].tgt,
            DoubleCategory::Free(c) => c.vcells[u.0 as usize].tgt,
        }
    }

    pub fn hcell_name(&self, f: HCellId) -> &str {
        match self {
            DoubleCategory::Tab(t) => &t.data.hcells[f.0 as usize].name,
            DoubleCategory::Free(c) => &c.hcells[f.0 as usize].name,
        }
    }

    pub fn vcell_name(&self, u: VCellId) -> &str {
        match self {
            DoubleCategory::Tab(t) => &t.data.vcells[u.0 as usize].name,
            DoubleCategory::Free(c) => &c.vcells[u.0 as usize].name,
        }
    }

    pub fn square_name(&self, s: SquareId) -> &str {
        match self {
            DoubleCategory::Tab(t) => &t.data.squares[s.0 as usize].name,
            DoubleCategory::Free(c) => &c.squares[s.0 as usize].name,
        }
    }

    /// Validate composability of a horizontal path and return its end object.
    pub fn h_end(&self, p: &HPath) -> Result<ObjId> {
        let mut at = p.start;
        for &f in &p.cells {
            if self.h_src(f) != at {
                return Err(DblError::BoundaryMismatch {
                    context: "horizontal path".into(),
                    lhs: at.to_string(),
                    rhs: self.h_src(f).to_string(),
                });
            }
            at = self.h_tgt(f);
        }
        Ok(at)
    }

    pub fn v_end(&self, p: &VPath) -> Result<ObjId> {
        let mut at = p.start;
        for &u in &p.cells {
            if self.v_src(u) != at {
                return Err(DblError::BoundaryMismatch {
                    context: "vertical path".into(),
                    lhs: at.to_string(),
                    rhs: self.v_src(u).to_string(),
                });
            }
            at = self.v_tgt(u);
        }
        Ok(at)
    }

    pub fn concat_h(&self, p: &HPath, q: &HPath) -> Result<HPath> {
        if self.h_end(p)? != q.start {
            return Err(DblError::BoundaryMismatch {
                context: "horizontal path concatenation".into(),
                lhs: self.h_end(p)?.to_string(),
                rhs: q.start.to_string(),
            });
        }
        let mut cells = p.cells.clone();
        cells.extend_from_slice(&q.cells);
        Ok(HPath { start: p.start, cells })
    }

    pub fn concat_v(&self, p: &VPath, q: &VPath) -> Result<VPath> {
        if self.v_end(p)? != q.start {
            return Err(DblError::BoundaryMismatch {
                context: "vertical path concatenation".into(),
                lhs: self.v_end(p)?.to_string(),
                rhs: q.start.to_string(),
            });
        }
        let mut cells = p.cells.clone();
        cells.extend_from_slice(&q.cells);
        Ok(VPath { start: p.start, cells })
    }

    /// Path equality up to the category's own laws: table evaluation when
    /// tabulated, rule normalization when free.
    pub fn hpaths_eq(&self, p: &HPath, q: &HPath) -> Result<bool> {
        match self {
            DoubleCategory::Tab(t) => {
                if p.start != q.start {
                    return Ok(false);
                }
                Ok(t.eval_h(p)? == t.eval_h(q)?)
            }
            DoubleCategory::Free(f) => Ok(f.normalize_hpath(p)? == f.normalize_hpath(q)?),
        }
    }

    pub fn vpaths_eq(&self, p: &VPath, q: &VPath) -> Result<bool> {
        match self {
            DoubleCategory::Tab(t) => {
                if p.start != q.start {
                    return Ok(false);
                }
                Ok(t.eval_v(p)? == t.eval_v(q)?)
            }
            DoubleCategory::Free(f) => Ok(f.normalize_vpath(p)? == f.normalize_vpath(q)?),
        }
    }

    /// Boundary of a square generator, as length-1 paths.
    pub fn square_boundary(&self, s: SquareId) -> Result<Boundary> {
        match self {
            DoubleCategory::Tab(t) => {
                if s.0 as usize >= t.data.squares.len() {
                    return Err(DblError::invalid(format!("unknown square {}", s)));
                }
                let sq = &t.data.squares[s.0 as usize];
                let top_src = t.data.hcells[sq.top.0 as usize].src;
                let bot_src = t.data.hcells[sq.bottom.0 as usize].src;
                Ok(Boundary {
                    top: HPath::one(top_src, sq.top),
                    bottom: HPath::one(bot_src, sq.bottom),
                    left: VPath::one(t.data.vcells[sq.left.0 as usize].src, sq.left),
                    right: VPath::one(t.data.vcells[sq.right.0 as usize].src, sq.right),
                })
            }
            DoubleCategory::Free(f) => {
                if s.0 as usize >= f.squares.len() {
                    return Err(DblError::invalid(format!("unknown square {}", s)));
                }
                let sq = &f.squares[s.0 as usize];
                Ok(Boundary {
                    top: sq.top.clone(),
                    bottom: sq.bottom.clone(),
                    left: sq.left.clone(),
                    right: sq.right.clone(),
                })
            }
        }
    }

    /// Boundary of an expression, checking well-typedness of every node.
    pub fn boundary(&self, e: &SquareExpr) -> Result<Boundary> {
        match e {
            SquareExpr::Gen(s) => self.square_boundary(*s),
            SquareExpr::HId(p) => {
                let end = self.v_end(p)?;
                Ok(Boundary {
                    top: HPath::id(p.start),
                    bottom: HPath::id(end),
                    left: p.clone(),
                    right: p.clone(),
                })
            }
            SquareExpr::VId(p) => {
                let end = self.h_end(p)?;
                Ok(Boundary {
                    top: p.clone(),
                    bottom: p.clone(),
                    left: VPath::id(p.start),
                    right: VPath::id(end),
                })
            }
            SquareExpr::HComp(a, b) => {
                let (ba, bb) = (self.boundary(a)?, self.boundary(b)?);
                if !self.vpaths_eq(&ba.right, &bb.left)? {
                    return Err(DblError::BoundaryMismatch {
                        context: format!("hcomp of {} and {}", a, b),
                        lhs: format!("{:?}", ba.right),
                        rhs: format!("{:?}", bb.left),
                    });
                }
                Ok(Boundary {
                    top: self.concat_h(&ba.top, &bb.top)?,
                    bottom: self.concat_h(&ba.bottom, &bb.bottom)?,
                    left: ba.left,
                    right: bb.right,
                })
            }
            SquareExpr::VComp(a, b) => {
                let (ba, bb) = (self.boundary(a)?, self.boundary(b)?);
                if !self.hpaths_eq(&ba.bottom, &bb.top)? {
                    return Err(DblError::BoundaryMismatch {
                        context: format!("vcomp of {} and {}", a, b),
                        lhs: format!("{:?}", ba.bottom),
                        rhs: format!("{:?}", bb.top),
                    });
                }
                Ok(Boundary {
                    top: ba.top,
                    bottom: bb.bottom,
                    left: self.concat_v(&ba.left, &bb.left)?,
                    right: self.concat_v(&ba.right, &bb.right)?,
                })
            }
        }
    }

    /// Checked horizontal composite.
    pub fn hcomp(&self, l: SquareExpr, r: SquareExpr) -> Result<SquareExpr> {
        let e = l.beside(r);
        self.boundary(&e)?;
        Ok(e)
    }

    /// Checked vertical composite (top over bottom).
    pub fn vcomp(&self, t: SquareExpr, b: SquareExpr) -> Result<SquareExpr> {
        let e = t.above(b);
        self.boundary(&e)?;
        Ok(e)
    }

    pub fn normalize(&self, e: &SquareExpr) -> Result<NormalForm> {
        match self {
            DoubleCategory::Tab(t) => Ok(NormalForm::Tab(t.eval_sq(e)?)),
            DoubleCategory::Free(f) => Ok(NormalForm::Free(f.normalize(e)?)),
        }
    }

    /// Decide equality of two square composites with the same outer boundary.
    pub fn equal(&self, e1: &SquareExpr, e2: &SquareExpr) -> Result<Eq3> {
        let (b1, b2) = (self.boundary(e1)?, self.boundary(e2)?);
        let same = self.hpaths_eq(&b1.top, &b2.top)?
            && self.hpaths_eq(&b1.bottom, &b2.bottom)?
            && self.vpaths_eq(&b1.left, &b2.left)?
            && self.vpaths_eq(&b1.right, &b2.right)?;
        if !same {
            return Err(DblError::BoundaryMismatch {
                context: "equal: outer boundaries differ".into(),
                lhs: format!("{}", e1),
                rhs: format!("{}", e2),
            });
        }
        match self {
            DoubleCategory::Tab(t) => Ok(if t.eval_sq(e1)? == t.eval_sq(e2)? { Eq3::Equal } else { Eq3::NotEqual }),
            DoubleCategory::Free(f) => f.equal(e1, e2),
        }
    }

    /// All distinct 1h-cells `src -> tgt` expressible with at most `max_len`
    /// generators, deduplicated by the category's equality.
    pub fn enumerate_hcells(&self, src: ObjId, tgt: ObjId, max_len: usize) -> Result<Vec<HPath>> {
        let mut out: Vec<HPath> = Vec::new();
        let mut seen: Vec<HPath> = Vec::new();
        let mut stack: Vec<HPath> = vec![HPath::id(src)];
        while let Some(p) = stack.pop() {
            let end = self.h_end(&p)?;
            if end == tgt {
                let mut dup = false;
                for q in &seen {
                    if self.hpaths_eq(&p, q)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    seen.push(p.clone());
                    out.push(p.clone());
                }
            }
            if p.len() < max_len {
                for f in 0..self.hcell_count() {
                    let f = HCellId(f as u32);
                    if self.h_src(f) == end {
                        let mut cells = p.cells.clone();
                        cells.push(f);
                        stack.push(HPath { start: src, cells });
                    }
                }
            }
        }
        Ok(out)
    }

    /// All distinct squares with the given boundary, built from at most
    /// `max_size` generator squares.
    pub fn enumerate_squares(&self, boundary: &Boundary, max_size: usize) -> Result<Vec<SquareExpr>> {
        match self {
            DoubleCategory::Tab(t) => {
                let top = t.eval_h(&boundary.top)?;
                let bottom = t.eval_h(&boundary.bottom)?;
                let left = t.eval_v(&boundary.left)?;
                let right = t.eval_v(&boundary.right)?;
                let mut out = Vec::new();
                for (i, s) in t.data.squares.iter().enumerate() {
                    if s.top == top && s.bottom == bottom && s.left == left && s.right == right {
                        out.push(SquareExpr::Gen(SquareId(i as u32)));
                    }
                }
                Ok(out)
            }
            DoubleCategory::Free(f) => f.enumerate_squares(boundary, max_size),
        }
    }
}
