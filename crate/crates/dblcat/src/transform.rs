//! Horizontal and vertical pseudonatural transformations between double
//! pseudo functors.
//!
//! Data is stored on source generators only; values on paths are derived by
//! pasting, which makes the functoriality axioms checks of derivation
//! against storage. Because functors act strictly on paths, whiskering and
//! the derived identities need no extra comparison cells at path level.

use crate::category::DoubleCategory;
use crate::cell::{HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use crate::error::{DblError, Eq3, Result};
use crate::expr::{hrow, vstack, SquareExpr};
use crate::functor::DoublePseudoFunctor;
use crate::report::Report;
use std::rc::Rc;

/// alpha: F => G with a 1h-cell component per object, a square per
/// 1v-generator and a vertically globular delta per 1h-generator.
#[derive(Clone)]
pub struct HorizontalPsNatTrans {
    pub f: Rc<DoublePseudoFunctor>,
    pub g: Rc<DoublePseudoFunctor>,
    /// alpha(A): F(A) -> G(A), indexed by source object.
    pub comp: Vec<HPath>,
    /// alpha_u, indexed by source 1v-generator.
    pub comp_sq: Vec<SquareExpr>,
    /// delta_{alpha,f}, indexed by source 1h-generator.
    pub delta: Vec<SquareExpr>,
}

/// The vertical dual: a 1v-cell per object, a square per 1h-generator and a
/// horizontally globular delta per 1v-generator.
#[derive(Clone)]
pub struct VerticalPsNatTrans {
    pub f: Rc<DoublePseudoFunctor>,
    pub g: Rc<DoublePseudoFunctor>,
    pub comp: Vec<VPath>,
    /// alpha_f, indexed by source 1h-generator.
    pub comp_sq: Vec<SquareExpr>,
    /// delta_{alpha,u}, indexed by source 1v-generator.
    pub delta: Vec<SquareExpr>,
}

impl HorizontalPsNatTrans {
    pub fn src(&self) -> &DoubleCategory {
        &self.f.src
    }

    pub fn tgt(&self) -> &DoubleCategory {
        &self.f.tgt
    }

    pub fn at(&self, a: ObjId) -> &HPath {
        &self.comp[a.0 as usize]
    }

    /// alpha over a vertical path: the stack of the generator squares, or
    /// the vertical identity on alpha(A) for the empty path.
    pub fn sq_vpath(&self, p: &VPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return Ok(SquareExpr::VId(self.at(p.start).clone()));
        }
        let mut it = p.cells.iter();
        let mut acc = self.comp_sq[it.next().unwrap().0 as usize].clone();
        for &u in it {
            acc = acc.above(self.comp_sq[u.0 as usize].clone());
        }
        Ok(acc)
    }

    /// delta over a horizontal path, derived right to left by the
    /// functoriality pasting.
    pub fn delta_hpath(&self, p: &HPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return Ok(SquareExpr::VId(self.at(p.start).clone()));
        }
        if p.cells.len() == 1 {
            return Ok(self.delta[p.cells[0].0 as usize].clone());
        }
        let init = HPath { start: p.start, cells: p.cells[..p.cells.len() - 1].to_vec() };
        let last = p.cells[p.cells.len() - 1];
        let f_init = self.f.apply_h(&init)?;
        let g_last = self.g.apply_h(&HPath::one(self.src().h_src(last), last))?;
        Ok(SquareExpr::VId(f_init)
            .beside(self.delta[last.0 as usize].clone())
            .above(self.delta_hpath(&init)?.beside(SquareExpr::VId(g_last))))
    }
}

impl VerticalPsNatTrans {
    pub fn src(&self) -> &DoubleCategory {
        &self.f.src
    }

    pub fn tgt(&self) -> &DoubleCategory {
        &self.f.tgt
    }

    pub fn at(&self, a: ObjId) -> &VPath {
        &self.comp[a.0 as usize]
    }

    pub fn sq_hpath(&self, p: &HPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return Ok(SquareExpr::HId(self.at(p.start).clone()));
        }
        let mut it = p.cells.iter();
        let mut acc = self.comp_sq[it.next().unwrap().0 as usize].clone();
        for &f in it {
            acc = acc.beside(self.comp_sq[f.0 as usize].clone());
        }
        Ok(acc)
    }

    pub fn delta_vpath(&self, p: &VPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return Ok(SquareExpr::HId(self.at(p.start).clone()));
        }
        if p.cells.len() == 1 {
            return Ok(self.delta[p.cells[0].0 as usize].clone());
        }
        let init = VPath { start: p.start, cells: p.cells[..p.cells.len() - 1].to_vec() };
        let last = p.cells[p.cells.len() - 1];
        let f_init = self.f.apply_v(&init)?;
        let g_last = self.g.apply_v(&VPath::one(self.src().v_src(last), last))?;
        Ok(SquareExpr::HId(f_init)
            .above(self.delta[last.0 as usize].clone())
            .beside(self.delta_vpath(&init)?.above(SquareExpr::HId(g_last))))
    }
}

/// The identity horizontal transformation on a functor.
pub fn identity_horizontal(f: Rc<DoublePseudoFunctor>) -> Result<HorizontalPsNatTrans> {
    let src = &*f.src;
    let comp = (0..src.object_count() as u32).map(|a| HPath::id(f.obj(ObjId(a)))).collect();
    let mut comp_sq = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        comp_sq.push(SquareExpr::HId(f.apply_v(&VPath::one(src.v_src(VCellId(u)), VCellId(u)))?));
    }
    let mut delta = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        delta.push(SquareExpr::VId(f.apply_h(&HPath::one(src.h_src(HCellId(c)), HCellId(c)))?));
    }
    Ok(HorizontalPsNatTrans { f: f.clone(), g: f, comp, comp_sq, delta })
}

/// The identity vertical transformation on a functor.
pub fn identity_vertical(f: Rc<DoublePseudoFunctor>) -> Result<VerticalPsNatTrans> {
    let src = &*f.src;
    let comp = (0..src.object_count() as u32).map(|a| VPath::id(f.obj(ObjId(a)))).collect();
    let mut comp_sq = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        comp_sq.push(SquareExpr::VId(f.apply_h(&HPath::one(src.h_src(HCellId(c)), HCellId(c)))?));
    }
    let mut delta = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        delta.push(SquareExpr::HId(f.apply_v(&VPath::one(src.v_src(VCellId(u)), VCellId(u)))?));
    }
    Ok(VerticalPsNatTrans { f: f.clone(), g: f, comp, comp_sq, delta })
}

pub fn check_horizontal(al: &HorizontalPsNatTrans) -> Report {
    let mut rep = Report::new();
    if !Rc::ptr_eq(&al.f.src, &al.g.src) || !Rc::ptr_eq(&al.f.tgt, &al.g.tgt) {
        rep.fail("trans-functors", "global", "the two functors must be parallel");
        return rep;
    }
    if let Err(e) = check_horizontal_inner(al, &mut rep) {
        rep.fail("trans-check", "global", e.to_string());
    }
    rep
}

fn check_horizontal_inner(al: &HorizontalPsNatTrans, rep: &mut Report) -> Result<()> {
    let src = al.src();
    let cat = al.tgt();
    if al.comp.len() != src.object_count()
        || al.comp_sq.len() != src.vcell_count()
        || al.delta.len() != src.hcell_count()
    {
        return Err(DblError::invalid("transformation data must cover every generator"));
    }
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let p = al.at(a);
        let ok = p.start == al.f.obj(a) && cat.h_end(p)? == al.g.obj(a);
        if ok {
            rep.pass("trans-shape-comp", a.to_string());
        } else {
            rep.fail("trans-shape-comp", a.to_string(), "component endpoints differ from functor images");
        }
    }
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        let b = cat.boundary(&al.comp_sq[u.0 as usize])?;
        let ok = cat.hpaths_eq(&b.top, al.at(a))?
            && cat.hpaths_eq(&b.bottom, al.at(a1))?
            && cat.vpaths_eq(&b.left, &al.f.apply_v(&one)?)?
            && cat.vpaths_eq(&b.right, &al.g.apply_v(&one)?)?;
        if ok {
            rep.pass("trans-shape-sq", u.to_string());
        } else {
            rep.fail("trans-shape-sq", u.to_string(), "component square has the wrong boundary");
        }
    }
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        let bd = cat.boundary(&al.delta[c.0 as usize])?;
        let top = cat.concat_h(&al.f.apply_h(&one)?, al.at(b))?;
        let bottom = cat.concat_h(al.at(a), &al.g.apply_h(&one)?)?;
        let ok = cat.hpaths_eq(&bd.top, &top)?
            && cat.hpaths_eq(&bd.bottom, &bottom)?
            && cat.vpaths_eq(&bd.left, &VPath::id(bd.left.start))?
            && cat.vpaths_eq(&bd.right, &VPath::id(bd.right.start))?;
        if ok {
            rep.pass("trans-shape-delta", c.to_string());
        } else {
            rep.fail("trans-shape-delta", c.to_string(), "delta square is not globular of the stated shape");
        }
    }

    // Pseudonaturality on every generator square.
    for s in 0..src.square_count() as u32 {
        let s = SquareId(s);
        let res = (|| -> Result<Eq3> {
            let b = src.square_boundary(s)?;
            let lhs = al
                .f
                .apply_sq(&SquareExpr::Gen(s))?
                .beside(al.sq_vpath(&b.right)?)
                .above(al.delta_hpath(&b.bottom)?);
            let rhs = al
                .delta_hpath(&b.top)?
                .above(al.sq_vpath(&b.left)?.beside(al.g.apply_sq(&SquareExpr::Gen(s))?));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("square-pseudonaturality", s.to_string(), res);
    }

    // Functoriality axioms need composite cells, hence a tabulated source.
    if let DoubleCategory::Tab(tab) = src {
        let d = &tab.data;
        for (&(u, w), &uw) in &d.v_comp {
            let res = (|| -> Result<Eq3> {
                let lhs = al.f.cmp_v_pair(u, w)?.fwd.beside(al.comp_sq[uw.0 as usize].clone());
                let rhs = al.comp_sq[u.0 as usize]
                    .clone()
                    .above(al.comp_sq[w.0 as usize].clone())
                    .beside(al.g.cmp_v_pair(u, w)?.fwd);
                cat.equal(&lhs, &rhs)
            })();
            rep.eq_result("vertical-functoriality", format!("({}, {})", u, w), res);
        }
        for a in 0..d.objects.len() as u32 {
            let a = ObjId(a);
            let res = (|| -> Result<Eq3> {
                let one = d.v_id[a.0 as usize];
                let lhs = al.f.unit_v_at(a)?.bwd.beside(al.comp_sq[one.0 as usize].clone());
                let rhs = SquareExpr::VId(al.at(a).clone()).beside(al.g.unit_v_at(a)?.bwd);
                cat.equal(&lhs, &rhs)
            })();
            rep.eq_result("vertical-unit", a.to_string(), res);
        }
        for (&(x, y), &xy) in &d.h_comp {
            let res = (|| -> Result<Eq3> {
                let (a, c) = (d.hcells[x.0 as usize].src, d.hcells[y.0 as usize].tgt);
                let fx = al.f.apply_h(&HPath::one(a, x))?;
                let gy = al.g.apply_h(&HPath::one(d.hcells[y.0 as usize].src, y))?;
                let rhs = vstack(vec![
                    al.f.cmp_h_pair(x, y)?.bwd.beside(SquareExpr::VId(al.at(c).clone())),
                    SquareExpr::VId(fx).beside(al.delta[y.0 as usize].clone()),
                    al.delta[x.0 as usize].clone().beside(SquareExpr::VId(gy)),
                    SquareExpr::VId(al.at(a).clone()).beside(al.g.cmp_h_pair(x, y)?.fwd),
                ]);
                cat.equal(&al.delta[xy.0 as usize], &rhs)
            })();
            rep.eq_result("delta-functoriality", format!("({}, {})", x, y), res);
        }
        for a in 0..d.objects.len() as u32 {
            let a = ObjId(a);
            let res = (|| -> Result<Eq3> {
                let one = d.h_id[a.0 as usize];
                let lhs = vstack(vec![
                    al.f.unit_h_at(a)?.bwd.beside(SquareExpr::VId(al.at(a).clone())),
                    al.delta[one.0 as usize].clone(),
                    SquareExpr::VId(al.at(a).clone()).beside(al.g.unit_h_at(a)?.fwd),
                ]);
                cat.equal(&lhs, &SquareExpr::VId(al.at(a).clone()))
            })();
            rep.eq_result("delta-unit", a.to_string(), res);
        }
    }
    Ok(())
}

pub fn check_vertical(al: &VerticalPsNatTrans) -> Report {
    let mut rep = Report::new();
    if !Rc::ptr_eq(&al.f.src, &al.g.src) || !Rc::ptr_eq(&al.f.tgt, &al.g.tgt) {
        rep.fail("trans-functors", "global", "the two functors must be parallel");
        return rep;
    }
    if let Err(e) = check_vertical_inner(al, &mut rep) {
        rep.fail("trans-check", "global", e.to_string());
    }
    rep
}

fn check_vertical_inner(al: &VerticalPsNatTrans, rep: &mut Report) -> Result<()> {
    let src = al.src();
    let cat = al.tgt();
    if al.comp.len() != src.object_count()
        || al.comp_sq.len() != src.hcell_count()
        || al.delta.len() != src.vcell_count()
    {
        return Err(DblError::invalid("transformation data must cover every generator"));
    }
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let p = al.at(a);
        let ok = p.start == al.f.obj(a) && cat.v_end(p)? == al.g.obj(a);
        if ok {
            rep.pass("trans-shape-comp", a.to_string());
        } else {
            rep.fail("trans-shape-comp", a.to_string(), "component endpoints differ from functor images");
        }
    }
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        let bd = cat.boundary(&al.comp_sq[c.0 as usize])?;
        let ok = cat.vpaths_eq(&bd.left, al.at(a))?
            && cat.vpaths_eq(&bd.right, al.at(b))?
            && cat.hpaths_eq(&bd.top, &al.f.apply_h(&one)?)?
            && cat.hpaths_eq(&bd.bottom, &al.g.apply_h(&one)?)?;
        if ok {
            rep.pass("trans-shape-sq", c.to_string());
        } else {
            rep.fail("trans-shape-sq", c.to_string(), "component square has the wrong boundary");
        }
    }
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        let bd = cat.boundary(&al.delta[u.0 as usize])?;
        let left = cat.concat_v(&al.f.apply_v(&one)?, al.at(a1))?;
        let right = cat.concat_v(al.at(a), &al.g.apply_v(&one)?)?;
        let ok = cat.vpaths_eq(&bd.left, &left)?
            && cat.vpaths_eq(&bd.right, &right)?
            && cat.hpaths_eq(&bd.top, &HPath::id(bd.top.start))?
            && cat.hpaths_eq(&bd.bottom, &HPath::id(bd.bottom.start))?;
        if ok {
            rep.pass("trans-shape-delta", u.to_string());
        } else {
            rep.fail("trans-shape-delta", u.to_string(), "delta square is not globular of the stated shape");
        }
    }

    for s in 0..src.square_count() as u32 {
        let s = SquareId(s);
        let res = (|| -> Result<Eq3> {
            let b = src.square_boundary(s)?;
            let lhs = al
                .f
                .apply_sq(&SquareExpr::Gen(s))?
                .above(al.sq_hpath(&b.bottom)?)
                .beside(al.delta_vpath(&b.right)?);
            let rhs = al
                .delta_vpath(&b.left)?
                .beside(al.sq_hpath(&b.top)?.above(al.g.apply_sq(&SquareExpr::Gen(s))?));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("square-pseudonaturality", s.to_string(), res);
    }

    if let DoubleCategory::Tab(tab) = src {
        let d = &tab.data;
        for (&(x, y), &xy) in &d.h_comp {
            let res = (|| -> Result<Eq3> {
                let lhs = al.f.cmp_h_pair(x, y)?.fwd.above(al.comp_sq[xy.0 as usize].clone());
                let rhs = al.comp_sq[x.0 as usize]
                    .clone()
                    .beside(al.comp_sq[y.0 as usize].clone())
                    .above(al.g.cmp_h_pair(x, y)?.fwd);
                cat.equal(&lhs, &rhs)
            })();
            rep.eq_result("horizontal-functoriality", format!("({}, {})", x, y), res);
        }
        for a in 0..d.objects.len() as u32 {
            let a = ObjId(a);
            let res = (|| -> Result<Eq3> {
                let one = d.h_id[a.0 as usize];
                let lhs = al.f.unit_h_at(a)?.bwd.above(al.comp_sq[one.0 as usize].clone());
                let rhs = SquareExpr::HId(al.at(a).clone()).above(al.g.unit_h_at(a)?.bwd);
                cat.equal(&lhs, &rhs)
            })();
            rep.eq_result("horizontal-unit", a.to_string(), res);
        }
        for (&(u, w), &uw) in &d.v_comp {
            let res = (|| -> Result<Eq3> {
                let (a, a2) = (d.vcells[u.0 as usize].src, d.vcells[w.0 as usize].tgt);
                let fu = al.f.apply_v(&VPath::one(a, u))?;
                let gw = al.g.apply_v(&VPath::one(d.vcells[w.0 as usize].src, w))?;
                let rhs = hrow(vec![
                    al.f.cmp_v_pair(u, w)?.bwd.above(SquareExpr::HId(al.at(a2).clone())),
                    SquareExpr::HId(fu).above(al.delta[w.0 as usize].clone()),
                    al.delta[u.0 as usize].clone().above(SquareExpr::HId(gw)),
                    SquareExpr::HId(al.at(a).clone()).above(al.g.cmp_v_pair(u, w)?.fwd),
                ]);
                cat.equal(&al.delta[uw.0 as usize], &rhs)
            })();
            rep.eq_result("delta-functoriality", format!("({}, {})", u, w), res);
        }
        for a in 0..d.objects.len() as u32 {
            let a = ObjId(a);
            let res = (|| -> Result<Eq3> {
                let one = d.v_id[a.0 as usize];
                let lhs = hrow(vec![
                    al.f.unit_v_at(a)?.bwd.above(SquareExpr::HId(al.at(a).clone())),
                    al.delta[one.0 as usize].clone(),
                    SquareExpr::HId(al.at(a).clone()).above(al.g.unit_v_at(a)?.fwd),
                ]);
                cat.equal(&lhs, &SquareExpr::HId(al.at(a).clone()))
            })();
            rep.eq_result("delta-unit", a.to_string(), res);
        }
    }
    Ok(())
}

/// Whisker a horizontal transformation by a following functor. Because
/// functors act strictly on paths, the conjugating comparisons of the
/// general formula are identities and every component is just the image.
pub fn whisker_delta(h: &Rc<DoublePseudoFunctor>, al: &HorizontalPsNatTrans) -> Result<HorizontalPsNatTrans> {
    if !Rc::ptr_eq(&h.src, &al.f.tgt) {
        return Err(DblError::CategoryMismatch {
            context: "whisker_delta: functor source is not the transformation's target".into(),
        });
    }
    let f = Rc::new(crate::functor::compose_functors(h, &al.f)?);
    let g = Rc::new(crate::functor::compose_functors(h, &al.g)?);
    let comp = al.comp.iter().map(|p| h.apply_h(p)).collect::<Result<Vec<_>>>()?;
    let comp_sq = al.comp_sq.iter().map(|e| h.apply_sq(e)).collect::<Result<Vec<_>>>()?;
    let delta = al.delta.iter().map(|e| h.apply_sq(e)).collect::<Result<Vec<_>>>()?;
    Ok(HorizontalPsNatTrans { f, g, comp, comp_sq, delta })
}

/// Horizontal composite beta . alpha for alpha: F => G and beta: F' => G'
/// with F', G' applied after F, G.
pub fn hcomp_horizontal(be: &HorizontalPsNatTrans, al: &HorizontalPsNatTrans) -> Result<HorizontalPsNatTrans> {
    if !Rc::ptr_eq(&be.f.src, &al.f.tgt) {
        return Err(DblError::CategoryMismatch {
            context: "hcomp_horizontal: transformations are not composable across functors".into(),
        });
    }
    let src = &*al.f.src;
    let cat = &*be.f.tgt;
    let f = Rc::new(crate::functor::compose_functors(&be.f, &al.f)?);
    let g = Rc::new(crate::functor::compose_functors(&be.g, &al.g)?);
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        comp.push(cat.concat_h(&be.f.apply_h(al.at(a))?, be.at(al.g.obj(a)))?);
    }
    let mut comp_sq = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let gu = al.g.apply_v(&VPath::one(src.v_src(u), u))?;
        comp_sq.push(be.f.apply_sq(&al.comp_sq[u.0 as usize])?.beside(be.sq_vpath(&gu)?));
    }
    let mut delta = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let gf = al.g.apply_h(&HPath::one(a, c))?;
        let row1 = be
            .f
            .apply_sq(&al.delta[c.0 as usize])?
            .beside(SquareExpr::VId(be.at(al.g.obj(b)).clone()));
        let row2 = SquareExpr::VId(be.f.apply_h(al.at(a))?).beside(be.delta_hpath(&gf)?);
        delta.push(row1.above(row2));
    }
    Ok(HorizontalPsNatTrans { f, g, comp, comp_sq, delta })
}

/// Horizontal composite of two vertical transformations, dual layout.
pub fn hcomp_vertical(be: &VerticalPsNatTrans, al: &VerticalPsNatTrans) -> Result<VerticalPsNatTrans> {
    if !Rc::ptr_eq(&be.f.src, &al.f.tgt) {
        return Err(DblError::CategoryMismatch {
            context: "hcomp_vertical: transformations are not composable across functors".into(),
        });
    }
    let src = &*al.f.src;
    let cat = &*be.f.tgt;
    let f = Rc::new(crate::functor::compose_functors(&be.f, &al.f)?);
    let g = Rc::new(crate::functor::compose_functors(&be.g, &al.g)?);
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        comp.push(cat.concat_v(&be.f.apply_v(al.at(a))?, be.at(al.g.obj(a)))?);
    }
    let mut comp_sq = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let gf = al.g.apply_h(&HPath::one(src.h_src(c), c))?;
        comp_sq.push(be.f.apply_sq(&al.comp_sq[c.0 as usize])?.above(be.sq_hpath(&gf)?));
    }
    let mut delta = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let gu = al.g.apply_v(&VPath::one(a, u))?;
        let col1 = be
            .f
            .apply_sq(&al.delta[u.0 as usize])?
            .above(SquareExpr::HId(be.at(al.g.obj(a1)).clone()));
        let col2 = SquareExpr::HId(be.f.apply_v(al.at(a))?).above(be.delta_vpath(&gu)?);
        delta.push(col1.beside(col2));
    }
    Ok(VerticalPsNatTrans { f, g, comp, comp_sq, delta })
}

/// Vertical composite alpha over beta for alpha: F => G, beta: G => H,
/// strictly associative and unital at path level.
pub fn vcomp_horizontal(al: &HorizontalPsNatTrans, be: &HorizontalPsNatTrans) -> Result<HorizontalPsNatTrans> {
    if !Rc::ptr_eq(&al.g, &be.f) && !functors_equal(&al.g, &be.f) {
        return Err(DblError::CategoryMismatch {
            context: "vcomp_horizontal: middle functors differ".into(),
        });
    }
    let src = &*al.f.src;
    let cat = &*al.f.tgt;
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        comp.push(cat.concat_h(al.at(a), be.at(a))?);
    }
    let mut comp_sq = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        comp_sq.push(al.comp_sq[u as usize].clone().beside(be.comp_sq[u as usize].clone()));
    }
    let mut delta = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let row1 = al.delta[c.0 as usize].clone().beside(SquareExpr::VId(be.at(b).clone()));
        let row2 = SquareExpr::VId(al.at(a).clone()).beside(be.delta[c.0 as usize].clone());
        delta.push(row1.above(row2));
    }
    Ok(HorizontalPsNatTrans { f: al.f.clone(), g: be.g.clone(), comp, comp_sq, delta })
}

/// Vertical composite of two vertical transformations.
pub fn vcomp_vertical(al: &VerticalPsNatTrans, be: &VerticalPsNatTrans) -> Result<VerticalPsNatTrans> {
    if !Rc::ptr_eq(&al.g, &be.f) && !functors_equal(&al.g, &be.f) {
        return Err(DblError::CategoryMismatch {
            context: "vcomp_vertical: middle functors differ".into(),
        });
    }
    let src = &*al.f.src;
    let cat = &*al.f.tgt;
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        comp.push(cat.concat_v(al.at(a), be.at(a))?);
    }
    let mut comp_sq = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        comp_sq.push(al.comp_sq[c as usize].clone().above(be.comp_sq[c as usize].clone()));
    }
    let mut delta = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let col1 = al.delta[u.0 as usize].clone().above(SquareExpr::HId(be.at(a1).clone()));
        let col2 = SquareExpr::HId(al.at(a).clone()).above(be.delta[u.0 as usize].clone());
        delta.push(col1.beside(col2));
    }
    Ok(VerticalPsNatTrans { f: al.f.clone(), g: be.g.clone(), comp, comp_sq, delta })
}

/// Structural equality of functor data, used when two handles denote the
/// same functor without sharing an allocation.
pub fn functors_equal(a: &DoublePseudoFunctor, b: &DoublePseudoFunctor) -> bool {
    Rc::ptr_eq(&a.src, &b.src)
        && Rc::ptr_eq(&a.tgt, &b.tgt)
        && a.obj_map == b.obj_map
        && a.h_map == b.h_map
        && a.v_map == b.v_map
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityName {
    Axiom4,
    ThreeDs,
    Cor,
}

/// Verify one of the derived pasting identities for horizontally composable
/// transformations: the whisker exchange (Axiom4), its triple-composition
/// instance (ThreeDs), or the corollary form (Cor).
pub fn verify_identity(
    name: IdentityName,
    al: &HorizontalPsNatTrans,
    be: &HorizontalPsNatTrans,
    ga: Option<&HorizontalPsNatTrans>,
) -> Report {
    let mut rep = Report::new();
    if !Rc::ptr_eq(&be.f.src, &al.f.tgt) {
        rep.fail("identity-data", "global", "transformations are not composable across functors");
        return rep;
    }
    let src = &*al.f.src;
    match name {
        IdentityName::Axiom4 => {
            for c in 0..src.hcell_count() as u32 {
                let c = HCellId(c);
                rep.eq_result("whisker-exchange", c.to_string(), axiom4_at(al, be, c));
            }
        }
        IdentityName::Cor => {
            for c in 0..src.hcell_count() as u32 {
                let c = HCellId(c);
                rep.eq_result("whisker-exchange-cor", c.to_string(), cor_at(al, be, c));
            }
        }
        IdentityName::ThreeDs => {
            let ga = match ga {
                Some(x) => x,
                None => {
                    rep.fail("identity-data", "global", "the triple identity needs a third transformation");
                    return rep;
                }
            };
            if !Rc::ptr_eq(&ga.f.src, &be.f.tgt) {
                rep.fail("identity-data", "global", "third transformation is not composable");
                return rep;
            }
            for a in 0..src.object_count() as u32 {
                let a = ObjId(a);
                rep.eq_result("triple-exchange", a.to_string(), three_ds_at(al, be, ga, a));
            }
        }
    }
    rep
}

/// Core exchange pasting shared by Axiom4 and ThreeDs: for a vertically
/// globular square d: p => q in the middle category, whiskering beta past d
/// on either side agrees.
fn exchange_eq(be: &HorizontalPsNatTrans, d: &SquareExpr, p: &HPath, q: &HPath) -> Result<Eq3> {
    let cat = &*be.f.tgt;
    let a_obj = p.start;
    let b_obj = be.f.src.h_end(p)?;
    let lhs = be
        .delta_hpath(p)?
        .above(SquareExpr::VId(be.at(a_obj).clone()).beside(be.g.apply_sq(d)?));
    let rhs = be
        .f
        .apply_sq(d)?
        .beside(SquareExpr::VId(be.at(b_obj).clone()))
        .above(be.delta_hpath(q)?);
    cat.equal(&lhs, &rhs)
}

fn axiom4_at(al: &HorizontalPsNatTrans, be: &HorizontalPsNatTrans, c: HCellId) -> Result<Eq3> {
    let mid = &*al.f.tgt;
    let (a, b) = (al.f.src.h_src(c), al.f.src.h_tgt(c));
    let one = HPath::one(a, c);
    let p = mid.concat_h(&al.f.apply_h(&one)?, al.at(b))?;
    let q = mid.concat_h(al.at(a), &al.g.apply_h(&one)?)?;
    exchange_eq(be, &al.delta[c.0 as usize], &p, &q)
}

fn three_ds_at(
    al: &HorizontalPsNatTrans,
    be: &HorizontalPsNatTrans,
    ga: &HorizontalPsNatTrans,
    a: ObjId,
) -> Result<Eq3> {
    let mid2 = &*be.f.tgt;
    let d = be.delta_hpath(al.at(a))?;
    let p = mid2.concat_h(&be.f.apply_h(al.at(a))?, be.at(al.g.obj(a)))?;
    let q = mid2.concat_h(be.at(al.f.obj(a)), &be.g.apply_h(al.at(a))?)?;
    exchange_eq(ga, &d, &p, &q)
}

fn cor_at(al: &HorizontalPsNatTrans, be: &HorizontalPsNatTrans, c: HCellId) -> Result<Eq3> {
    let cat = &*be.f.tgt;
    let (a, b) = (al.f.src.h_src(c), al.f.src.h_tgt(c));
    let one = HPath::one(a, c);
    let ff = al.f.apply_h(&one)?;
    let gf = al.g.apply_h(&one)?;
    let lhs = vstack(vec![
        SquareExpr::VId(be.f.apply_h(&ff)?).beside(be.delta_hpath(al.at(b))?),
        be.delta_hpath(&ff)?.beside(SquareExpr::VId(be.g.apply_h(al.at(b))?)),
        SquareExpr::VId(be.at(al.f.obj(a)).clone()).beside(be.g.apply_sq(&al.delta[c.0 as usize])?),
    ]);
    let rhs = vstack(vec![
        be.f.apply_sq(&al.delta[c.0 as usize])?.beside(SquareExpr::VId(be.at(al.g.obj(b)).clone())),
        SquareExpr::VId(be.f.apply_h(al.at(a))?).beside(be.delta_hpath(&gf)?),
        be.delta_hpath(al.at(a))?.beside(SquareExpr::VId(be.g.apply_h(&gf)?)),
    ]);
    cat.equal(&lhs, &rhs)
}
