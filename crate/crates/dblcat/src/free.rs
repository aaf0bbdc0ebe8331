//! Free double categories on a double graph, with optional oriented rules.
//!
//! Square composites are evaluated into a wire-diagram normal form: the top
//! boundary is a row of wires, every generator occurrence is an event that
//! consumes a contiguous run of wires and emits its bottom boundary as fresh
//! wires. Two composites are equal modulo the strict laws and the
//! interchange law exactly when their canonical diagrams coincide; the
//! canonical order schedules every event into the earliest row allowed by its
//! top-boundary dependencies and sorts each row left to right. Binary syntax
//! cannot express pinwheel tilings, so this normal form is total on
//! everything an expression can denote.
//!
//! Generator squares must have nonempty top and bottom paths; identity-sided
//! composites are expressed with the `HId`/`VId` expression constructors and
//! normalize to dedicated identity values instead of zero-width tiles.

use crate::cell::{Boundary, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use crate::error::{DblError, Eq3, Result};
use crate::expr::SquareExpr;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct FreeHCell {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct FreeVCell {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, Debug)]
pub struct FreeSquareGen {
    pub name: String,
    pub top: HPath,
    pub bottom: HPath,
    pub left: VPath,
    pub right: VPath,
}

/// Oriented rule on 1-cell runs; `rhs` is never longer than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPathRule {
    pub lhs: Vec<HCellId>,
    pub rhs: Vec<HCellId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPathRule {
    pub lhs: Vec<VCellId>,
    pub rhs: Vec<VCellId>,
}

/// Oriented rule on square composites, applied left to right.
#[derive(Clone, Debug)]
pub struct SquareRule {
    pub name: String,
    pub lhs: SquareExpr,
    pub rhs: SquareExpr,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Wire {
    Top(u32),
    Out { ev: u32, pos: u32 },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Event {
    pub sq: SquareId,
    pub inputs: Vec<Wire>,
}

/// Canonical wire diagram; always contains at least one event.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    pub top: HPath,
    pub events: Vec<Event>,
    /// Row index (1-based) per event, parallel to `events`.
    pub rows: Vec<u32>,
}

/// Normal form of a square composite in a free double category.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FreeNf {
    /// Horizontal identity square on a vertical path (covers the fully
    /// degenerate identity when the path is empty).
    HIdent(VPath),
    /// Vertical identity square on a nonempty horizontal path.
    VIdent(HPath),
    Diag(Diagram),
}

#[derive(Clone, Debug)]
pub struct Free {
    pub objects: Vec<String>,
    pub hcells: Vec<FreeHCell>,
    pub vcells: Vec<FreeVCell>,
    pub squares: Vec<FreeSquareGen>,
    pub h_rules: Vec<HPathRule>,
    pub v_rules: Vec<VPathRule>,
    pub sq_rules: Vec<SquareRule>,
    pub rewrite_bound: usize,
    /// Local-confluence certificate computed at construction. When absent,
    /// `equal` degrades unequal normal forms to `Unknown`.
    pub confluent: bool,
    /// Per square rule: the replacement preserves the raw boundary wire
    /// segmentation, so it is applicable inside larger diagrams.
    pub seg_ok: Vec<bool>,
}

pub const DEFAULT_REWRITE_BOUND: usize = 10_000;

impl Free {
    pub fn new(
        objects: Vec<String>,
        hcells: Vec<FreeHCell>,
        vcells: Vec<FreeVCell>,
        squares: Vec<FreeSquareGen>,
        h_rules: Vec<HPathRule>,
        v_rules: Vec<VPathRule>,
        sq_rules: Vec<SquareRule>,
    ) -> Result<Free> {
        let mut f = Free {
            objects,
            hcells,
            vcells,
            squares,
            h_rules,
            v_rules,
            sq_rules,
            rewrite_bound: DEFAULT_REWRITE_BOUND,
            confluent: false,
            seg_ok: Vec::new(),
        };
        f.validate()?;
        f.seg_ok = f.compute_seg_ok()?;
        f.confluent = f.certify_confluence()?;
        Ok(f)
    }

    fn h_src(&self, f: HCellId) -> ObjId {
        self.hcells[f.0 as usize].src
    }
    fn h_tgt(&self, f: HCellId) -> ObjId {
        self.hcells[f.0 as usize].tgt
    }
    fn v_src(&self, u: VCellId) -> ObjId {
        self.vcells[u.0 as usize].src
    }
    fn v_tgt(&self, u: VCellId) -> ObjId {
        self.vcells[u.0 as usize].tgt
    }

    fn check_hpath(&self, p: &HPath) -> Result<ObjId> {
        let mut at = p.start;
        for &c in &p.cells {
            if c.0 as usize >= self.hcells.len() || self.h_src(c) != at {
                return Err(DblError::invalid(format!("ill-formed horizontal path at {}", c)));
            }
            at = self.h_tgt(c);
        }
        Ok(at)
    }

    fn check_vpath(&self, p: &VPath) -> Result<ObjId> {
        let mut at = p.start;
        for &c in &p.cells {
            if c.0 as usize >= self.vcells.len() || self.v_src(c) != at {
                return Err(DblError::invalid(format!("ill-formed vertical path at {}", c)));
            }
            at = self.v_tgt(c);
        }
        Ok(at)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.squares {
            let tl = self.check_hpath(&s.top).map(|_| ())?;
            let _ = tl;
            self.check_hpath(&s.bottom)?;
            self.check_vpath(&s.left)?;
            self.check_vpath(&s.right)?;
            if s.top.is_empty() || s.bottom.is_empty() {
                return Err(DblError::invalid(format!(
                    "square generator {} needs nonempty top and bottom boundaries",
                    s.name
                )));
            }
            if s.top.start != s.left.start
                || self.check_hpath(&s.top)? != s.right.start
                || s.bottom.start != self.check_vpath(&s.left)?
                || self.check_hpath(&s.bottom)? != self.check_vpath(&s.right)?
            {
                return Err(DblError::invalid(format!("square generator {} has mismatched corners", s.name)));
            }
        }
        for r in &self.h_rules {
            if r.lhs.is_empty() || r.rhs.len() > r.lhs.len() {
                return Err(DblError::invalid("path rule must be size-nonincreasing with nonempty lhs"));
            }
            let l = HPath { start: self.h_src(r.lhs[0]), cells: r.lhs.clone() };
            let lend = self.check_hpath(&l)?;
            let rstart = if r.rhs.is_empty() { l.start } else { self.h_src(r.rhs[0]) };
            let rp = HPath { start: rstart, cells: r.rhs.clone() };
            if rp.start != l.start || self.check_hpath(&rp)? != lend {
                return Err(DblError::invalid("path rule endpoints differ"));
            }
        }
        for r in &self.v_rules {
            if r.lhs.is_empty() || r.rhs.len() > r.lhs.len() {
                return Err(DblError::invalid("path rule must be size-nonincreasing with nonempty lhs"));
            }
            let l = VPath { start: self.v_src(r.lhs[0]), cells: r.lhs.clone() };
            let lend = self.check_vpath(&l)?;
            let rstart = if r.rhs.is_empty() { l.start } else { self.v_src(r.rhs[0]) };
            let rp = VPath { start: rstart, cells: r.rhs.clone() };
            if rp.start != l.start || self.check_vpath(&rp)? != lend {
                return Err(DblError::invalid("path rule endpoints differ"));
            }
        }
        for r in &self.sq_rules {
            let ln = self.eval(&r.lhs)?;
            let rn = self.eval(&r.rhs)?;
            if self.nf_size(&ln) < self.nf_size(&rn) {
                return Err(DblError::invalid(format!("square rule {} is size-increasing", r.name)));
            }
            let (bl, br) = (self.nf_boundary(&ln)?, self.nf_boundary(&rn)?);
            let ok = self.normalize_hpath(&bl.top)? == self.normalize_hpath(&br.top)?
                && self.normalize_hpath(&bl.bottom)? == self.normalize_hpath(&br.bottom)?
                && self.normalize_vpath(&bl.left)? == self.normalize_vpath(&br.left)?
                && self.normalize_vpath(&bl.right)? == self.normalize_vpath(&br.right)?;
            if !ok {
                return Err(DblError::invalid(format!("square rule {} is not boundary-preserving", r.name)));
            }
        }
        Ok(())
    }

    fn nf_size(&self, nf: &FreeNf) -> usize {
        match nf {
            FreeNf::Diag(d) => d.events.len(),
            _ => 0,
        }
    }

    fn compute_seg_ok(&self) -> Result<Vec<bool>> {
        let mut out = Vec::with_capacity(self.sq_rules.len());
        for r in &self.sq_rules {
            let ln = self.eval(&r.lhs)?;
            let rn = self.eval(&r.rhs)?;
            let (bl, br) = (self.nf_boundary(&ln)?, self.nf_boundary(&rn)?);
            out.push(bl == br);
        }
        Ok(out)
    }

    pub fn normalize_hpath(&self, p: &HPath) -> Result<HPath> {
        self.check_hpath(p)?;
        let mut cells = p.cells.clone();
        let mut steps = 0usize;
        'outer: loop {
            for r in &self.h_rules {
                if r.lhs.len() > cells.len() {
                    continue;
                }
                for i in 0..=cells.len() - r.lhs.len() {
                    if cells[i..i + r.lhs.len()] == r.lhs[..] {
                        cells.splice(i..i + r.lhs.len(), r.rhs.iter().copied());
                        steps += 1;
                        if steps > self.rewrite_bound {
                            return Err(DblError::RewriteDepthExceeded { bound: self.rewrite_bound });
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(HPath { start: p.start, cells })
    }

    pub fn normalize_vpath(&self, p: &VPath) -> Result<VPath> {
        self.check_vpath(p)?;
        let mut cells = p.cells.clone();
        let mut steps = 0usize;
        'outer: loop {
            for r in &self.v_rules {
                if r.lhs.len() > cells.len() {
                    continue;
                }
                for i in 0..=cells.len() - r.lhs.len() {
                    if cells[i..i + r.lhs.len()] == r.lhs[..] {
                        cells.splice(i..i + r.lhs.len(), r.rhs.iter().copied());
                        steps += 1;
                        if steps > self.rewrite_bound {
                            return Err(DblError::RewriteDepthExceeded { bound: self.rewrite_bound });
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(VPath { start: p.start, cells })
    }

    fn wire_hcell(&self, d: &Diagram, w: Wire) -> HCellId {
        match w {
            Wire::Top(i) => d.top.cells[i as usize],
            Wire::Out { ev, pos } => self.squares[d.events[ev as usize].sq.0 as usize].bottom.cells[pos as usize],
        }
    }

    /// Recompute the canonical row layering and event order of a diagram.
    fn canonicalize(&self, top: HPath, events: Vec<Event>) -> Result<Diagram> {
        let n = events.len();
        // Kahn layering on the producer -> consumer dependency graph.
        let mut row = vec![0u32; n];
        let mut remaining: Vec<usize> = (0..n).collect();
        while !remaining.is_empty() {
            let mut progressed = false;
            remaining.retain(|&e| {
                let mut r = 1u32;
                for w in &events[e].inputs {
                    match *w {
                        Wire::Top(_) => {}
                        Wire::Out { ev, .. } => {
                            if row[ev as usize] == 0 {
                                r = 0;
                                break;
                            }
                            r = r.max(row[ev as usize] + 1);
                        }
                    }
                }
                if r > 0 {
                    row[e] = r;
                } else {
                    return true;
                }
                progressed = true;
                false
            });
            if !progressed {
                return Err(DblError::invalid("cyclic wiring in diagram"));
            }
        }
        let maxrow = row.iter().copied().max().unwrap_or(0);

        // Frontier simulation: order events of each row left to right.
        let mut frontier: Vec<Wire> = (0..top.cells.len()).map(|i| Wire::Top(i as u32)).collect();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        for r in 1..=maxrow {
            let mut pos_of: HashMap<Wire, usize> = HashMap::new();
            for (i, &w) in frontier.iter().enumerate() {
                pos_of.insert(w, i);
            }
            let mut this_row: Vec<(usize, usize)> = Vec::new();
            for e in 0..n {
                if row[e] != r {
                    continue;
                }
                let p0 = *pos_of
                    .get(&events[e].inputs[0])
                    .ok_or_else(|| DblError::invalid("event input not on frontier"))?;
                for (k, w) in events[e].inputs.iter().enumerate() {
                    match pos_of.get(w) {
                        Some(&p) if p == p0 + k => {}
                        _ => return Err(DblError::invalid("event inputs not contiguous on frontier")),
                    }
                }
                this_row.push((p0, e));
            }
            this_row.sort();
            // Replace consumed segments by event outputs, left to right.
            let mut next: Vec<Wire> = Vec::new();
            let mut i = 0usize;
            let mut seg: HashMap<usize, usize> = HashMap::new(); // start pos -> event
            for &(p0, e) in &this_row {
                seg.insert(p0, e);
            }
            while i < frontier.len() {
                if let Some(&e) = seg.get(&i) {
                    let nb = self.squares[events[e].sq.0 as usize].bottom.cells.len();
                    for pos in 0..nb {
                        next.push(Wire::Out { ev: e as u32, pos: pos as u32 });
                    }
                    i += events[e].inputs.len();
                } else {
                    next.push(frontier[i]);
                    i += 1;
                }
            }
            for &(_, e) in &this_row {
                order.push(e);
            }
            frontier = next;
        }
        if order.len() != n {
            return Err(DblError::invalid("diagram layering failed to schedule all events"));
        }
        // Remap event indices to canonical order.
        let mut newix = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            newix[old] = new as u32;
        }
        let mut out_events: Vec<Event> = Vec::with_capacity(n);
        let mut out_rows: Vec<u32> = Vec::with_capacity(n);
        for &old in &order {
            let ev = &events[old];
            let inputs = ev
                .inputs
                .iter()
                .map(|w| match *w {
                    Wire::Top(i) => Wire::Top(i),
                    Wire::Out { ev, pos } => Wire::Out { ev: newix[ev as usize], pos },
                })
                .collect();
            out_events.push(Event { sq: ev.sq, inputs });
            out_rows.push(row[old]);
        }
        Ok(Diagram { top, events: out_events, rows: out_rows })
    }

    /// Bottom wires of a canonical diagram, in order.
    fn bottom_wires(&self, d: &Diagram) -> Result<Vec<Wire>> {
        let mut frontier: Vec<Wire> = (0..d.top.cells.len()).map(|i| Wire::Top(i as u32)).collect();
        let maxrow = d.rows.iter().copied().max().unwrap_or(0);
        for r in 1..=maxrow {
            let mut pos_of: HashMap<Wire, usize> = HashMap::new();
            for (i, &w) in frontier.iter().enumerate() {
                pos_of.insert(w, i);
            }
            let mut seg: Vec<(usize, usize)> = Vec::new();
            for e in 0..d.events.len() {
                if d.rows[e] != r {
                    continue;
                }
                let p0 = *pos_of
                    .get(&d.events[e].inputs[0])
                    .ok_or_else(|| DblError::invalid("event input not on frontier"))?;
                seg.push((p0, e));
            }
            seg.sort();
            let segmap: HashMap<usize, usize> = seg.iter().copied().collect();
            let mut next = Vec::new();
            let mut i = 0usize;
            while i < frontier.len() {
                if let Some(&e) = segmap.get(&i) {
                    let nb = self.squares[d.events[e].sq.0 as usize].bottom.cells.len();
                    for pos in 0..nb {
                        next.push(Wire::Out { ev: e as u32, pos: pos as u32 });
                    }
                    i += d.events[e].inputs.len();
                } else {
                    next.push(frontier[i]);
                    i += 1;
                }
            }
            frontier = next;
        }
        Ok(frontier)
    }

    /// Full raw boundary of a normal form.
    pub fn nf_boundary(&self, nf: &FreeNf) -> Result<Boundary> {
        match nf {
            FreeNf::HIdent(p) => {
                let end = self.check_vpath(p)?;
                Ok(Boundary { top: HPath::id(p.start), bottom: HPath::id(end), left: p.clone(), right: p.clone() })
            }
            FreeNf::VIdent(h) => {
                let end = self.check_hpath(h)?;
                Ok(Boundary { top: h.clone(), bottom: h.clone(), left: VPath::id(h.start), right: VPath::id(end) })
            }
            FreeNf::Diag(d) => {
                // Walk rows once, collecting left- and right-edge events.
                let mut frontier: Vec<Wire> = (0..d.top.cells.len()).map(|i| Wire::Top(i as u32)).collect();
                let maxrow = d.rows.iter().copied().max().unwrap_or(0);
                let mut left_cells: Vec<VCellId> = Vec::new();
                let mut right_cells: Vec<VCellId> = Vec::new();
                for r in 1..=maxrow {
                    let mut pos_of: HashMap<Wire, usize> = HashMap::new();
                    for (i, &w) in frontier.iter().enumerate() {
                        pos_of.insert(w, i);
                    }
                    let mut seg: Vec<(usize, usize)> = Vec::new();
                    for e in 0..d.events.len() {
                        if d.rows[e] != r {
                            continue;
                        }
                        let p0 = *pos_of
                            .get(&d.events[e].inputs[0])
                            .ok_or_else(|| DblError::invalid("event input not on frontier"))?;
                        seg.push((p0, e));
                    }
                    seg.sort();
                    for &(p0, e) in &seg {
                        let sq = &self.squares[d.events[e].sq.0 as usize];
                        if p0 == 0 {
                            left_cells.extend_from_slice(&sq.left.cells);
                        }
                        if p0 + d.events[e].inputs.len() == frontier.len() {
                            right_cells.extend_from_slice(&sq.right.cells);
                        }
                    }
                    let segmap: HashMap<usize, usize> = seg.iter().copied().collect();
                    let mut next = Vec::new();
                    let mut i = 0usize;
                    while i < frontier.len() {
                        if let Some(&e) = segmap.get(&i) {
                            let nb = self.squares[d.events[e].sq.0 as usize].bottom.cells.len();
                            for pos in 0..nb {
                                next.push(Wire::Out { ev: e as u32, pos: pos as u32 });
                            }
                            i += d.events[e].inputs.len();
                        } else {
                            next.push(frontier[i]);
                            i += 1;
                        }
                    }
                    frontier = next;
                }
                let bottom_cells: Vec<HCellId> = frontier.iter().map(|&w| self.wire_hcell(d, w)).collect();
                let left = VPath { start: d.top.start, cells: left_cells };
                let bottom_start = self.check_vpath(&left)?;
                let top_end = self.check_hpath(&d.top)?;
                let right = VPath { start: top_end, cells: right_cells };
                Ok(Boundary {
                    top: d.top.clone(),
                    bottom: HPath { start: bottom_start, cells: bottom_cells },
                    left,
                    right,
                })
            }
        }
    }

    fn hcomp_nf(&self, a: FreeNf, b: FreeNf) -> Result<FreeNf> {
        let (ba, bb) = (self.nf_boundary(&a)?, self.nf_boundary(&b)?);
        if self.normalize_vpath(&ba.right)? != self.normalize_vpath(&bb.left)? {
            return Err(DblError::BoundaryMismatch {
                context: "hcomp".into(),
                lhs: format!("{:?}", ba.right),
                rhs: format!("{:?}", bb.left),
            });
        }
        match (a, b) {
            (FreeNf::HIdent(_), x) | (x, FreeNf::HIdent(_)) => Ok(x),
            (FreeNf::VIdent(h1), FreeNf::VIdent(h2)) => {
                let mut cells = h1.cells;
                cells.extend(h2.cells);
                Ok(FreeNf::VIdent(HPath { start: h1.start, cells }))
            }
            (FreeNf::VIdent(h), FreeNf::Diag(d)) => {
                let off = h.cells.len() as u32;
                let mut cells = h.cells;
                cells.extend(d.top.cells.iter().copied());
                let top = HPath { start: h.start, cells };
                let events = d
                    .events
                    .into_iter()
                    .map(|e| Event {
                        sq: e.sq,
                        inputs: e
                            .inputs
                            .into_iter()
                            .map(|w| match w {
                                Wire::Top(i) => Wire::Top(i + off),
                                o => o,
                            })
                            .collect(),
                    })
                    .collect();
                self.canonicalize(top, events).map(FreeNf::Diag)
            }
            (FreeNf::Diag(d), FreeNf::VIdent(h)) => {
                let mut cells = d.top.cells.clone();
                cells.extend(h.cells);
                let top = HPath { start: d.top.start, cells };
                self.canonicalize(top, d.events).map(FreeNf::Diag)
            }
            (FreeNf::Diag(d1), FreeNf::Diag(d2)) => {
                let woff = d1.top.cells.len() as u32;
                let eoff = d1.events.len() as u32;
                let mut cells = d1.top.cells.clone();
                cells.extend(d2.top.cells.iter().copied());
                let top = HPath { start: d1.top.start, cells };
                let mut events = d1.events;
                events.extend(d2.events.into_iter().map(|e| Event {
                    sq: e.sq,
                    inputs: e
                        .inputs
                        .into_iter()
                        .map(|w| match w {
                            Wire::Top(i) => Wire::Top(i + woff),
                            Wire::Out { ev, pos } => Wire::Out { ev: ev + eoff, pos },
                        })
                        .collect(),
                }));
                self.canonicalize(top, events).map(FreeNf::Diag)
            }
        }
    }

    fn vcomp_nf(&self, a: FreeNf, b: FreeNf) -> Result<FreeNf> {
        let (ba, bb) = (self.nf_boundary(&a)?, self.nf_boundary(&b)?);
        if self.normalize_hpath(&ba.bottom)? != self.normalize_hpath(&bb.top)? {
            return Err(DblError::BoundaryMismatch {
                context: "vcomp".into(),
                lhs: format!("{:?}", ba.bottom),
                rhs: format!("{:?}", bb.top),
            });
        }
        match (a, b) {
            (FreeNf::VIdent(_), x) | (x, FreeNf::VIdent(_)) => Ok(x),
            (FreeNf::HIdent(p), FreeNf::HIdent(q)) => {
                let mut cells = p.cells;
                cells.extend(q.cells);
                Ok(FreeNf::HIdent(VPath { start: p.start, cells }))
            }
            (FreeNf::HIdent(_), FreeNf::Diag(_)) | (FreeNf::Diag(_), FreeNf::HIdent(_)) => {
                // A diagram always has nonempty top and bottom; the identity
                // side can only have matched after path collapsing, which the
                // wire model cannot re-segment.
                Err(DblError::Inconclusive { reason: "vertical boundary collapses under path rules".into() })
            }
            (FreeNf::Diag(d1), FreeNf::Diag(d2)) => {
                if ba.bottom != bb.top {
                    return Err(DblError::Inconclusive {
                        reason: "vertical boundary matches only after path rewriting".into(),
                    });
                }
                let bw = self.bottom_wires(&d1)?;
                let eoff = d1.events.len() as u32;
                let mut events = d1.events.clone();
                events.extend(d2.events.iter().map(|e| Event {
                    sq: e.sq,
                    inputs: e
                        .inputs
                        .iter()
                        .map(|w| match *w {
                            Wire::Top(i) => bw[i as usize],
                            Wire::Out { ev, pos } => Wire::Out { ev: ev + eoff, pos },
                        })
                        .collect(),
                }));
                self.canonicalize(d1.top, events).map(FreeNf::Diag)
            }
        }
    }

    /// Evaluate an expression to its canonical (unrewritten) diagram value.
    pub fn eval(&self, e: &SquareExpr) -> Result<FreeNf> {
        match e {
            SquareExpr::Gen(s) => {
                let sq = self
                    .squares
                    .get(s.0 as usize)
                    .ok_or_else(|| DblError::invalid(format!("unknown square {}", s)))?;
                let top = sq.top.clone();
                let inputs = (0..top.cells.len()).map(|i| Wire::Top(i as u32)).collect();
                self.canonicalize(top, vec![Event { sq: *s, inputs }]).map(FreeNf::Diag)
            }
            SquareExpr::HId(p) => {
                self.check_vpath(p)?;
                Ok(FreeNf::HIdent(p.clone()))
            }
            SquareExpr::VId(p) => {
                self.check_hpath(p)?;
                if p.is_empty() {
                    Ok(FreeNf::HIdent(VPath::id(p.start)))
                } else {
                    Ok(FreeNf::VIdent(p.clone()))
                }
            }
            SquareExpr::HComp(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.hcomp_nf(x, y)
            }
            SquareExpr::VComp(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                self.vcomp_nf(x, y)
            }
        }
    }

    /// Apply square rules to fixpoint and normalize identity-variant paths.
    pub fn normalize(&self, e: &SquareExpr) -> Result<FreeNf> {
        let nf = self.eval(e)?;
        match nf {
            FreeNf::HIdent(p) => Ok(FreeNf::HIdent(self.normalize_vpath(&p)?)),
            FreeNf::VIdent(h) => Ok(FreeNf::VIdent(self.normalize_hpath(&h)?)),
            FreeNf::Diag(d) => self.rewrite_fixpoint(d),
        }
    }

    fn rewrite_fixpoint(&self, mut d: Diagram) -> Result<FreeNf> {
        let mut steps = 0usize;
        'outer: loop {
            for (ri, rule) in self.sq_rules.iter().enumerate() {
                if !self.seg_ok[ri] {
                    continue;
                }
                let lnf = self.eval(&rule.lhs)?;
                let rnf = self.eval(&rule.rhs)?;
                if let Some(nd) = self.try_apply_rule(&d, &lnf, &rnf)? {
                    steps += 1;
                    if steps > self.rewrite_bound {
                        return Err(DblError::RewriteDepthExceeded { bound: self.rewrite_bound });
                    }
                    match nd {
                        FreeNf::Diag(x) => {
                            d = x;
                            continue 'outer;
                        }
                        other => return Ok(other),
                    }
                }
            }
            break;
        }
        Ok(FreeNf::Diag(d))
    }

    /// Try to match the rule lhs as a convex subdiagram of `d` and replace it.
    fn try_apply_rule(&self, d: &Diagram, lnf: &FreeNf, rnf: &FreeNf) -> Result<Option<FreeNf>> {
        let l = match lnf {
            FreeNf::Diag(l) => l,
            // Identity lhs never matches inside a diagram.
            _ => return Ok(None),
        };
        let mut assignment: Vec<Option<usize>> = vec![None; l.events.len()];
        let mut used = vec![false; d.events.len()];
        if self.match_events(d, l, 0, &mut assignment, &mut used)? {
            let m: Vec<usize> = assignment.into_iter().map(|x| x.unwrap()).collect();
            let nd = self.splice(d, l, &m, rnf)?;
            return Ok(Some(nd));
        }
        Ok(None)
    }

    fn match_events(
        &self,
        d: &Diagram,
        l: &Diagram,
        k: usize,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> Result<bool> {
        if k == l.events.len() {
            return Ok(self.match_consistent(d, l, assignment));
        }
        for cand in 0..d.events.len() {
            if used[cand] || d.events[cand].sq != l.events[k].sq {
                continue;
            }
            assignment[k] = Some(cand);
            used[cand] = true;
            if self.match_events(d, l, k + 1, assignment, used)? {
                return Ok(true);
            }
            assignment[k] = None;
            used[cand] = false;
        }
        Ok(false)
    }

    /// Check that an assignment of lhs events to diagram events respects the
    /// wiring: internal wires correspond, and top wires bind consistently.
    fn match_consistent(&self, d: &Diagram, l: &Diagram, assignment: &[Option<usize>]) -> bool {
        let m = |i: usize| assignment[i].unwrap();
        let mut topbind: HashMap<u32, Wire> = HashMap::new();
        for (le, ev) in l.events.iter().enumerate() {
            let de = &d.events[m(le)];
            for (pos, w) in ev.inputs.iter().enumerate() {
                let dw = de.inputs[pos];
                match *w {
                    Wire::Out { ev: lev, pos: lpos } => {
                        if dw != (Wire::Out { ev: m(lev as usize) as u32, pos: lpos }) {
                            return false;
                        }
                    }
                    Wire::Top(i) => {
                        // A matched internal producer in d must correspond to
                        // a matched l-event; a lhs top wire must come from
                        // outside the match.
                        if let Wire::Out { ev: dev, .. } = dw {
                            if assignment.iter().any(|a| *a == Some(dev as usize)) {
                                return false;
                            }
                        }
                        match topbind.get(&i) {
                            Some(&b) if b != dw => return false,
                            _ => {
                                topbind.insert(i, dw);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn splice(&self, d: &Diagram, l: &Diagram, m: &[usize], rnf: &FreeNf) -> Result<FreeNf> {
        // Interface wires of the match.
        let mut topbind: Vec<Wire> = vec![Wire::Top(u32::MAX); l.top.cells.len()];
        for (le, ev) in l.events.iter().enumerate() {
            for (pos, w) in ev.inputs.iter().enumerate() {
                if let Wire::Top(i) = *w {
                    topbind[i as usize] = d.events[m[le]].inputs[pos];
                }
            }
        }
        let l_bottom = self.bottom_wires(l)?;
        // Map each lhs bottom wire to the corresponding wire of d.
        let to_d_wire = |w: Wire| -> Wire {
            match w {
                Wire::Top(i) => topbind[i as usize],
                Wire::Out { ev, pos } => Wire::Out { ev: m[ev as usize] as u32, pos },
            }
        };

        let matched: Vec<bool> = {
            let mut v = vec![false; d.events.len()];
            for &x in m {
                v[x] = true;
            }
            v
        };

        // New event list: unmatched events of d, then the rhs events.
        let mut keep: Vec<usize> = Vec::new();
        for e in 0..d.events.len() {
            if !matched[e] {
                keep.push(e);
            }
        }
        let mut newix: HashMap<usize, u32> = HashMap::new();
        for (i, &e) in keep.iter().enumerate() {
            newix.insert(e, i as u32);
        }
        let roff = keep.len() as u32;

        // Where does each replaced interface wire go?
        let mut iface: HashMap<Wire, Wire> = HashMap::new();
        match rnf {
            FreeNf::Diag(r) => {
                let r_bottom = self.bottom_wires(r)?;
                if r_bottom.len() != l_bottom.len() {
                    return Err(DblError::invalid("rule sides have different bottom widths"));
                }
                for (j, &lb) in l_bottom.iter().enumerate() {
                    let rb = match r_bottom[j] {
                        Wire::Top(i) => topbind[i as usize],
                        Wire::Out { ev, pos } => Wire::Out { ev: ev + roff, pos },
                    };
                    iface.insert(to_d_wire(lb), rb);
                }
            }
            FreeNf::VIdent(_) | FreeNf::HIdent(_) => {
                // Identity replacement: consumers fall through to the wires
                // the lhs consumed from above.
                if l_bottom.len() != l.top.cells.len() {
                    return Err(DblError::invalid("identity replacement with unequal widths"));
                }
                for (j, &lb) in l_bottom.iter().enumerate() {
                    iface.insert(to_d_wire(lb), topbind[j]);
                }
            }
        }

        let remap = |w: Wire| -> Wire {
            if let Some(&t) = iface.get(&w) {
                return t;
            }
            match w {
                Wire::Top(i) => Wire::Top(i),
                Wire::Out { ev, pos } => Wire::Out { ev: newix[&(ev as usize)], pos },
            }
        };

        let mut events: Vec<Event> = Vec::new();
        for &e in &keep {
            events.push(Event {
                sq: d.events[e].sq,
                inputs: d.events[e].inputs.iter().map(|&w| remap(w)).collect(),
            });
        }
        if let FreeNf::Diag(r) = rnf {
            for ev in &r.events {
                events.push(Event {
                    sq: ev.sq,
                    inputs: ev
                        .inputs
                        .iter()
                        .map(|&w| match w {
                            Wire::Top(i) => {
                                let dw = topbind[i as usize];
                                if let Some(&t) = iface.get(&dw) {
                                    t
                                } else {
                                    match dw {
                                        Wire::Top(x) => Wire::Top(x),
                                        Wire::Out { ev, pos } => Wire::Out { ev: newix[&(ev as usize)], pos },
                                    }
                                }
                            }
                            Wire::Out { ev, pos } => Wire::Out { ev: ev + roff, pos },
                        })
                        .collect(),
                });
            }
        }
        if events.is_empty() {
            // The whole diagram reduced to an identity.
            let b = self.nf_boundary(&FreeNf::Diag(d.clone()))?;
            if b.left.is_empty() && b.right.is_empty() {
                return Ok(FreeNf::VIdent(d.top.clone()));
            }
            return Ok(FreeNf::HIdent(b.left));
        }
        self.canonicalize(d.top.clone(), events).map(FreeNf::Diag)
    }

    pub fn equal(&self, e1: &SquareExpr, e2: &SquareExpr) -> Result<Eq3> {
        let n1 = match self.normalize(e1) {
            Ok(n) => n,
            Err(DblError::Inconclusive { .. }) => return Ok(Eq3::Unknown),
            Err(e) => return Err(e),
        };
        let n2 = match self.normalize(e2) {
            Ok(n) => n,
            Err(DblError::Inconclusive { .. }) => return Ok(Eq3::Unknown),
            Err(e) => return Err(e),
        };
        if n1 == n2 {
            Ok(Eq3::Equal)
        } else if self.confluent {
            Ok(Eq3::NotEqual)
        } else {
            Ok(Eq3::Unknown)
        }
    }

    /// Local-confluence certificate. Path rules get a full critical-pair
    /// check; square rules are certified when they are segmentation-
    /// preserving and either overlap-free or pure one-direction collapse
    /// families whose derived binary operation is associative. Anything
    /// else is conservatively uncertified.
    fn certify_confluence(&self) -> Result<bool> {
        // Path rules: joinability of all critical pairs.
        for (i, r1) in self.h_rules.iter().enumerate() {
            for (j, r2) in self.h_rules.iter().enumerate() {
                for (w1, w2) in critical_pairs(&r1.lhs, &r1.rhs, &r2.lhs, &r2.rhs, i == j) {
                    if self.rewrite_word_h(&w1)? != self.rewrite_word_h(&w2)? {
                        return Ok(false);
                    }
                }
            }
        }
        for (i, r1) in self.v_rules.iter().enumerate() {
            for (j, r2) in self.v_rules.iter().enumerate() {
                for (w1, w2) in critical_pairs(&r1.lhs, &r1.rhs, &r2.lhs, &r2.rhs, i == j) {
                    if self.rewrite_word_v(&w1)? != self.rewrite_word_v(&w2)? {
                        return Ok(false);
                    }
                }
            }
        }

        if self.sq_rules.is_empty() {
            return Ok(true);
        }
        if self.seg_ok.iter().any(|&x| !x) {
            return Ok(false);
        }
        // If path rules can interact with square boundaries, stay conservative.
        if !self.h_rules.is_empty() || !self.v_rules.is_empty() {
            return Ok(false);
        }

        #[derive(PartialEq)]
        enum Shape {
            VPair(SquareId, SquareId, SquareId),
            HPair(SquareId, SquareId, SquareId),
            Other(Vec<SquareId>),
        }
        let shape_of = |r: &SquareRule| -> Result<Shape> {
            let single = |e: &SquareExpr| match e {
                SquareExpr::Gen(s) => Some(*s),
                _ => None,
            };
            match (&r.lhs, &r.rhs) {
                (SquareExpr::VComp(a, b), rhs) => {
                    if let (Some(x), Some(y), Some(z)) = (single(a), single(b), single(rhs)) {
                        return Ok(Shape::VPair(x, y, z));
                    }
                    let nf = self.eval(&r.lhs)?;
                    Ok(Shape::Other(nf_gens(&nf)))
                }
                (SquareExpr::HComp(a, b), rhs) => {
                    if let (Some(x), Some(y), Some(z)) = (single(a), single(b), single(rhs)) {
                        return Ok(Shape::HPair(x, y, z));
                    }
                    let nf = self.eval(&r.lhs)?;
                    Ok(Shape::Other(nf_gens(&nf)))
                }
                _ => {
                    let nf = self.eval(&r.lhs)?;
                    Ok(Shape::Other(nf_gens(&nf)))
                }
            }
        };
        let mut vmap: HashMap<(SquareId, SquareId), SquareId> = HashMap::new();
        let mut hmap: HashMap<(SquareId, SquareId), SquareId> = HashMap::new();
        let mut other_gens: Vec<Vec<SquareId>> = Vec::new();
        for r in &self.sq_rules {
            match shape_of(r)? {
                Shape::VPair(a, b, c) => {
                    vmap.insert((a, b), c);
                }
                Shape::HPair(a, b, c) => {
                    hmap.insert((a, b), c);
                }
                Shape::Other(g) => other_gens.push(g),
            }
        }
        // Other-shaped rules must not overlap anything.
        let mut pair_gens: Vec<SquareId> = Vec::new();
        for (&(a, b), &c) in vmap.iter().chain(hmap.iter()) {
            pair_gens.extend([a, b, c]);
        }
        for (i, g1) in other_gens.iter().enumerate() {
            for s in g1 {
                if pair_gens.contains(s) {
                    return Ok(false);
                }
                for (j, g2) in other_gens.iter().enumerate() {
                    if i != j && g2.contains(s) {
                        return Ok(false);
                    }
                }
                if g1.iter().filter(|&&x| x == *s).count() > 1 {
                    return Ok(false);
                }
            }
        }
        // A generator in both a vertical and a horizontal collapse family
        // would need an interchange-joinability argument we do not attempt.
        let vgens: Vec<SquareId> = vmap.keys().flat_map(|&(a, b)| [a, b]).collect();
        for (a, b) in hmap.keys() {
            if vgens.contains(a) || vgens.contains(b) {
                return Ok(false);
            }
        }
        // Associativity of the collapse families.
        for (&(a, b), &ab) in &vmap {
            for (&(b2, c), &bc) in &vmap {
                if b == b2 {
                    match (vmap.get(&(ab, c)), vmap.get(&(a, bc))) {
                        (Some(x), Some(y)) if x == y => {}
                        _ => return Ok(false),
                    }
                }
            }
        }
        for (&(a, b), &ab) in &hmap {
            for (&(b2, c), &bc) in &hmap {
                if b == b2 {
                    match (hmap.get(&(ab, c)), hmap.get(&(a, bc))) {
                        (Some(x), Some(y)) if x == y => {}
                        _ => return Ok(false),
                    }
                }
            }
        }
        Ok(true)
    }

    fn rewrite_word_h(&self, w: &[HCellId]) -> Result<Vec<HCellId>> {
        let mut cells = w.to_vec();
        let mut steps = 0usize;
        'outer: loop {
            for r in &self.h_rules {
                if r.lhs.len() > cells.len() {
                    continue;
                }
                for i in 0..=cells.len() - r.lhs.len() {
                    if cells[i..i + r.lhs.len()] == r.lhs[..] {
                        cells.splice(i..i + r.lhs.len(), r.rhs.iter().copied());
                        steps += 1;
                        if steps > self.rewrite_bound {
                            return Err(DblError::RewriteDepthExceeded { bound: self.rewrite_bound });
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(cells)
    }

    fn rewrite_word_v(&self, w: &[VCellId]) -> Result<Vec<VCellId>> {
        let mut cells = w.to_vec();
        let mut steps = 0usize;
        'outer: loop {
            for r in &self.v_rules {
                if r.lhs.len() > cells.len() {
                    continue;
                }
                for i in 0..=cells.len() - r.lhs.len() {
                    if cells[i..i + r.lhs.len()] == r.lhs[..] {
                        cells.splice(i..i + r.lhs.len(), r.rhs.iter().copied());
                        steps += 1;
                        if steps > self.rewrite_bound {
                            return Err(DblError::RewriteDepthExceeded { bound: self.rewrite_bound });
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(cells)
    }

    /// Exhaustive tiling search: all distinct squares with the given raw
    /// boundary using at most `max_size` generator squares.
    pub fn enumerate_squares(&self, boundary: &Boundary, max_size: usize) -> Result<Vec<SquareExpr>> {
        let mut found_nf: Vec<FreeNf> = Vec::new();
        let mut found: Vec<SquareExpr> = Vec::new();
        // Identity candidates.
        if boundary.top == boundary.bottom && boundary.left.is_empty() && boundary.right.is_empty() {
            let e = SquareExpr::VId(boundary.top.clone());
            found_nf.push(self.normalize(&e)?);
            found.push(e);
        } else if boundary.left == boundary.right && boundary.top.is_empty() && boundary.bottom.is_empty() {
            let e = SquareExpr::HId(boundary.left.clone());
            found_nf.push(self.normalize(&e)?);
            found.push(e);
        }
        // Recursive boundary splitting that mirrors the binary expression
        // grammar: a square with this boundary is a generator, or a vertical
        // cut (prefix of the left and right sides plus an intermediate
        // horizontal path), or a horizontal cut. Complete for everything the
        // expression language can denote at the given size, on raw
        // boundaries.
        let mut memo: HashMap<(BoundaryKey, usize), Vec<(SquareExpr, usize)>> = HashMap::new();
        for (e, _) in self.enum_exprs(boundary, max_size, &mut memo)? {
            let nf = self.normalize(&e)?;
            if !found_nf.contains(&nf) {
                found_nf.push(nf);
                found.push(e);
            }
        }
        Ok(found)
    }

    /// All expressions with the given raw boundary using at least one and at
    /// most `n` generator squares, paired with their generator count.
    fn enum_exprs(
        &self,
        b: &Boundary,
        n: usize,
        memo: &mut HashMap<(BoundaryKey, usize), Vec<(SquareExpr, usize)>>,
    ) -> Result<Vec<(SquareExpr, usize)>> {
        let key = (boundary_key(b), n);
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut out: Vec<(SquareExpr, usize)> = Vec::new();
        for (si, sq) in self.squares.iter().enumerate() {
            if sq.top == b.top && sq.bottom == b.bottom && sq.left == b.left && sq.right == b.right {
                out.push((SquareExpr::Gen(SquareId(si as u32)), 1));
            }
        }
        // Identity padding: a passthrough column or row beside/under the rest
        // of the pasting. Only legal against an empty vertical (resp.
        // horizontal) boundary, and it strictly shrinks the boundary.
        if b.right.is_empty() {
            for k in 1..=b.top.len().min(b.bottom.len()) {
                if b.top.cells[b.top.len() - k..] == b.bottom.cells[b.bottom.len() - k..] {
                    let t1 = HPath { start: b.top.start, cells: b.top.cells[..b.top.len() - k].to_vec() };
                    let b1 = HPath { start: b.bottom.start, cells: b.bottom.cells[..b.bottom.len() - k].to_vec() };
                    let h = HPath { start: self.check_hpath(&t1)?, cells: b.top.cells[b.top.len() - k..].to_vec() };
                    let inner = Boundary { top: t1, bottom: b1, left: b.left.clone(), right: VPath::id(h.start) };
                    for (e, s) in self.enum_exprs(&inner, n, memo)? {
                        out.push((e.beside(SquareExpr::VId(h.clone())), s));
                    }
                }
            }
        }
        if b.left.is_empty() {
            for k in 1..=b.top.len().min(b.bottom.len()) {
                if b.top.cells[..k] == b.bottom.cells[..k] && b.top.start == b.bottom.start {
                    let h = HPath { start: b.top.start, cells: b.top.cells[..k].to_vec() };
                    let mid = self.check_hpath(&h)?;
                    let t2 = HPath { start: mid, cells: b.top.cells[k..].to_vec() };
                    let b2 = HPath { start: mid, cells: b.bottom.cells[k..].to_vec() };
                    let inner = Boundary { top: t2, bottom: b2, left: VPath::id(mid), right: b.right.clone() };
                    for (e, s) in self.enum_exprs(&inner, n, memo)? {
                        out.push((SquareExpr::VId(h.clone()).beside(e), s));
                    }
                }
            }
        }
        if b.bottom.is_empty() {
            for k in 1..=b.left.len().min(b.right.len()) {
                if b.left.cells[b.left.len() - k..] == b.right.cells[b.right.len() - k..] {
                    let l1 = VPath { start: b.left.start, cells: b.left.cells[..b.left.len() - k].to_vec() };
                    let r1 = VPath { start: b.right.start, cells: b.right.cells[..b.right.len() - k].to_vec() };
                    let p = VPath { start: self.check_vpath(&l1)?, cells: b.left.cells[b.left.len() - k..].to_vec() };
                    let inner = Boundary { top: b.top.clone(), bottom: HPath::id(p.start), left: l1, right: r1 };
                    for (e, s) in self.enum_exprs(&inner, n, memo)? {
                        out.push((e.above(SquareExpr::HId(p.clone())), s));
                    }
                }
            }
        }
        if b.top.is_empty() {
            for k in 1..=b.left.len().min(b.right.len()) {
                if b.left.cells[..k] == b.right.cells[..k] && b.left.start == b.right.start {
                    let p = VPath { start: b.left.start, cells: b.left.cells[..k].to_vec() };
                    let mid = self.check_vpath(&p)?;
                    let l2 = VPath { start: mid, cells: b.left.cells[k..].to_vec() };
                    let r2 = VPath { start: mid, cells: b.right.cells[k..].to_vec() };
                    let inner = Boundary { top: HPath::id(mid), bottom: b.bottom.clone(), left: l2, right: r2 };
                    for (e, s) in self.enum_exprs(&inner, n, memo)? {
                        out.push((SquareExpr::HId(p.clone()).above(e), s));
                    }
                }
            }
        }
        if n >= 2 {
            let max_path = n * self.max_gen_boundary();
            // Vertical cuts.
            for lk in 0..=b.left.cells.len() {
                for rk in 0..=b.right.cells.len() {
                    let l1 = VPath { start: b.left.start, cells: b.left.cells[..lk].to_vec() };
                    let l2 = VPath { start: self.check_vpath(&l1)?, cells: b.left.cells[lk..].to_vec() };
                    let r1 = VPath { start: b.right.start, cells: b.right.cells[..rk].to_vec() };
                    let r2 = VPath { start: self.check_vpath(&r1)?, cells: b.right.cells[rk..].to_vec() };
                    for m in self.all_hpaths(l2.start, r2.start, max_path) {
                        let upper = Boundary { top: b.top.clone(), bottom: m.clone(), left: l1.clone(), right: r1.clone() };
                        let lower = Boundary { top: m, bottom: b.bottom.clone(), left: l2.clone(), right: r2.clone() };
                        for (e1, s1) in self.enum_exprs(&upper, n - 1, memo)? {
                            for (e2, s2) in self.enum_exprs(&lower, n - s1, memo)? {
                                if s1 + s2 <= n {
                                    out.push((e1.clone().above(e2), s1 + s2));
                                }
                            }
                        }
                    }
                }
            }
            // Horizontal cuts.
            for tk in 0..=b.top.cells.len() {
                for bk in 0..=b.bottom.cells.len() {
                    let t1 = HPath { start: b.top.start, cells: b.top.cells[..tk].to_vec() };
                    let t2 = HPath { start: self.check_hpath(&t1)?, cells: b.top.cells[tk..].to_vec() };
                    let b1 = HPath { start: b.bottom.start, cells: b.bottom.cells[..bk].to_vec() };
                    let b2 = HPath { start: self.check_hpath(&b1)?, cells: b.bottom.cells[bk..].to_vec() };
                    for m in self.all_vpaths(t2.start, b2.start, max_path) {
                        let lft = Boundary { top: t1.clone(), bottom: b1.clone(), left: b.left.clone(), right: m.clone() };
                        let rgt = Boundary { top: t2.clone(), bottom: b2.clone(), left: m, right: b.right.clone() };
                        for (e1, s1) in self.enum_exprs(&lft, n - 1, memo)? {
                            for (e2, s2) in self.enum_exprs(&rgt, n - s1, memo)? {
                                if s1 + s2 <= n {
                                    out.push((e1.clone().beside(e2), s1 + s2));
                                }
                            }
                        }
                    }
                }
            }
        }
        // Attach identity-shaped absorptions: composing with an identity on
        // either side does not create new squares, so nothing else is needed.
        // Deduplicate structurally to keep the memo small.
        out.sort_by(|a, b| format!("{}", a.0).cmp(&format!("{}", b.0)));
        out.dedup_by(|a, b| a.0 == b.0);
        memo.insert(key, out.clone());
        Ok(out)
    }

    fn max_gen_boundary(&self) -> usize {
        self.squares
            .iter()
            .map(|s| s.top.len().max(s.bottom.len()).max(s.left.len()).max(s.right.len()))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    fn all_hpaths(&self, src: ObjId, tgt: ObjId, max_len: usize) -> Vec<HPath> {
        let mut out = Vec::new();
        let mut stack = vec![HPath::id(src)];
        while let Some(p) = stack.pop() {
            let end = p.cells.last().map(|&c| self.h_tgt(c)).unwrap_or(src);
            if end == tgt {
                out.push(p.clone());
            }
            if p.len() < max_len {
                for (i, h) in self.hcells.iter().enumerate() {
                    if h.src == end {
                        let mut cells = p.cells.clone();
                        cells.push(HCellId(i as u32));
                        stack.push(HPath { start: src, cells });
                    }
                }
            }
        }
        out
    }

    fn all_vpaths(&self, src: ObjId, tgt: ObjId, max_len: usize) -> Vec<VPath> {
        let mut out = Vec::new();
        let mut stack = vec![VPath::id(src)];
        while let Some(p) = stack.pop() {
            let end = p.cells.last().map(|&c| self.v_tgt(c)).unwrap_or(src);
            if end == tgt {
                out.push(p.clone());
            }
            if p.len() < max_len {
                for (i, v) in self.vcells.iter().enumerate() {
                    if v.src == end {
                        let mut cells = p.cells.clone();
                        cells.push(VCellId(i as u32));
                        stack.push(VPath { start: src, cells });
                    }
                }
            }
        }
        out
    }
}

type BoundaryKey = (ObjId, Vec<HCellId>, ObjId, Vec<HCellId>, ObjId, Vec<VCellId>, ObjId, Vec<VCellId>);

fn boundary_key(b: &Boundary) -> BoundaryKey {
    (
        b.top.start,
        b.top.cells.clone(),
        b.bottom.start,
        b.bottom.cells.clone(),
        b.left.start,
        b.left.cells.clone(),
        b.right.start,
        b.right.cells.clone(),
    )
}

fn nf_gens(nf: &FreeNf) -> Vec<SquareId> {
    match nf {
        FreeNf::Diag(d) => d.events.iter().map(|e| e.sq).collect(),
        _ => Vec::new(),
    }
}

/// Critical pairs of two oriented word rules: for each overlapping
/// superposition, the pair of one-step reducts (rule 1 applied first, rule 2
/// applied first). The caller rewrites both reducts to normal form.
fn critical_pairs<T: Copy + PartialEq>(
    l1: &[T],
    r1: &[T],
    l2: &[T],
    r2: &[T],
    same: bool,
) -> Vec<(Vec<T>, Vec<T>)> {
    let mut out = Vec::new();
    // Suffix of l1 = prefix of l2, superposition l1 · l2[k..].
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut a = r1.to_vec();
            a.extend_from_slice(&l2[k..]);
            let mut b = l1[..l1.len() - k].to_vec();
            b.extend_from_slice(r2);
            out.push((a, b));
        }
    }
    // Suffix of l2 = prefix of l1, superposition l2 · l1[k..].
    for k in 1..l1.len().min(l2.len()) {
        if l2[l2.len() - k..] == l1[..k] {
            let mut a = l2[..l2.len() - k].to_vec();
            a.extend_from_slice(r1);
            let mut b = r2.to_vec();
            b.extend_from_slice(&l1[k..]);
            out.push((a, b));
        }
    }
    if !same {
        // l2 inside l1.
        if l2.len() <= l1.len() {
            for i in 0..=l1.len() - l2.len() {
                if l1[i..i + l2.len()] == l2[..] {
                    let mut b = l1[..i].to_vec();
                    b.extend_from_slice(r2);
                    b.extend_from_slice(&l1[i + l2.len()..]);
                    out.push((r1.to_vec(), b));
                }
            }
        }
        // l1 inside l2.
        if l1.len() <= l2.len() {
            for i in 0..=l2.len() - l1.len() {
                if l2[i..i + l1.len()] == l1[..] {
                    let mut a = l2[..i].to_vec();
                    a.extend_from_slice(r1);
                    a.extend_from_slice(&l2[i + l1.len()..]);
                    out.push((a, r2.to_vec()));
                }
            }
        }
    }
    out
}
