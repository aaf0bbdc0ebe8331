//! Double pseudonatural transformations: a compatible pair of a vertical
//! and a horizontal pseudonatural transformation equipped with tying
//! squares t (one per 1h-generator) and r (one per 1v-generator), their
//! horizontal and vertical compositions, a globular variant determined by a
//! single square per object, and modifications with their three
//! compositions.
//!
//! Values of t and r on paths are derived by head recursion through the
//! naturality squares of the partner transformation; on the empty path the
//! derived value is the unit-comparison conjugate of the value at the
//! identity cell, which requires a tabulated source.

use crate::category::DoubleCategory;
use crate::cell::{Boundary, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use crate::error::{DblError, Eq3, Result};
use crate::expr::{hrow, vstack, SquareExpr};
use crate::functor::DoublePseudoFunctor;
use crate::report::{Report, Verdict};
use crate::transform::{
    check_horizontal, check_vertical, functors_equal, hcomp_horizontal, hcomp_vertical,
    identity_horizontal, identity_vertical, vcomp_horizontal, vcomp_vertical, HorizontalPsNatTrans,
    VerticalPsNatTrans,
};
use std::rc::Rc;

/// A 2-cell between double pseudo functors F => G: the vertical component
/// family a0, the horizontal component family a1, and for every source
/// 1h-generator f a square t_f with top [F(f), a1(B)], left a0(A), bottom
/// G(f) and empty right, dually for every 1v-generator u a square r_u with
/// top a1(A), left [F(u), a0(A')], right G(u) and empty bottom.
#[derive(Clone)]
pub struct DoublePsNatTrans {
    pub a0: VerticalPsNatTrans,
    pub a1: HorizontalPsNatTrans,
    /// t_f, indexed by source 1h-generator.
    pub t: Vec<SquareExpr>,
    /// r_u, indexed by source 1v-generator.
    pub r: Vec<SquareExpr>,
}

impl DoublePsNatTrans {
    pub fn src(&self) -> &DoubleCategory {
        &self.a1.f.src
    }

    pub fn tgt(&self) -> &DoubleCategory {
        &self.a1.f.tgt
    }

    /// t over a horizontal path, derived by pasting the vertical-family
    /// naturality square of the head beside the value on the tail. The
    /// empty path takes the unit-comparison conjugate of t at the identity
    /// cell, which needs a tabulated source.
    pub fn t_hpath(&self, p: &HPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return self.t_unit_at(p.start);
        }
        if p.cells.len() == 1 {
            return Ok(self.t[p.cells[0].0 as usize].clone());
        }
        let head = p.cells[0];
        let rest = HPath { start: self.a1.f.src.h_tgt(head), cells: p.cells[1..].to_vec() };
        Ok(self.a0.comp_sq[head.0 as usize].clone().beside(self.t_hpath(&rest)?))
    }

    /// r over a vertical path, the dual derivation.
    pub fn r_vpath(&self, p: &VPath) -> Result<SquareExpr> {
        if p.cells.is_empty() {
            return self.r_unit_at(p.start);
        }
        if p.cells.len() == 1 {
            return Ok(self.r[p.cells[0].0 as usize].clone());
        }
        let head = p.cells[0];
        let rest = VPath { start: self.a1.f.src.v_tgt(head), cells: p.cells[1..].to_vec() };
        Ok(self.a1.comp_sq[head.0 as usize].clone().above(self.r_vpath(&rest)?))
    }

    /// The globular square with top a1(A), left a0(A) and empty bottom and
    /// right obtained from t at the identity 1h-cell on A.
    pub fn t_unit_at(&self, a: ObjId) -> Result<SquareExpr> {
        let f = &self.a1.f;
        let g = &self.a1.g;
        let one = f.src.as_tab()?.data.h_id[a.0 as usize];
        Ok(vstack(vec![
            f.unit_h_at(a)?.bwd.beside(SquareExpr::VId(self.a1.at(a).clone())),
            self.t[one.0 as usize].clone(),
            g.unit_h_at(a)?.fwd,
        ]))
    }

    /// The dual globular square obtained from r at the identity 1v-cell.
    pub fn r_unit_at(&self, a: ObjId) -> Result<SquareExpr> {
        let f = &self.a1.f;
        let g = &self.a1.g;
        let one = f.src.as_tab()?.data.v_id[a.0 as usize];
        Ok(hrow(vec![
            f.unit_v_at(a)?.bwd.above(SquareExpr::HId(self.a0.at(a).clone())),
            self.r[one.0 as usize].clone(),
            g.unit_v_at(a)?.fwd,
        ]))
    }
}

/// The identity 2-cell on a functor: identity components, identity tying
/// squares on the image cells.
pub fn identity_double(f: Rc<DoublePseudoFunctor>) -> Result<DoublePsNatTrans> {
    let src = &*f.src;
    let a0 = identity_vertical(f.clone())?;
    let a1 = identity_horizontal(f.clone())?;
    let mut t = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        t.push(SquareExpr::VId(f.apply_h(&HPath::one(src.h_src(c), c))?));
    }
    let mut r = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        r.push(SquareExpr::HId(f.apply_v(&VPath::one(src.v_src(u), u))?));
    }
    Ok(DoublePsNatTrans { a0, a1, t, r })
}

/// Full instance check: component-family axioms, compatibility of the pair,
/// invertibility of the naturality deltas, naturality of t and r against
/// every generator square, their interchange and composite laws on
/// composable pairs, and associativity of the derived composite on triples.
pub fn check_double(al: &DoublePsNatTrans) -> Report {
    let mut rep = Report::new();
    if !functors_equal(&al.a0.f, &al.a1.f) || !functors_equal(&al.a0.g, &al.a1.g) {
        rep.fail("pair-functors", "global", "the two component families must share their functors");
        return rep;
    }
    rep.merge(check_vertical(&al.a0));
    rep.merge(check_horizontal(&al.a1));
    if let Err(e) = check_double_inner(al, &mut rep) {
        rep.fail("double-check", "global", e.to_string());
    }
    rep
}

fn check_double_inner(al: &DoublePsNatTrans, rep: &mut Report) -> Result<()> {
    let src = al.src();
    let cat = al.tgt();
    let f = &al.a1.f;
    let g = &al.a1.g;
    if al.t.len() != src.hcell_count() || al.r.len() != src.vcell_count() {
        return Err(DblError::invalid("tying squares must cover every generator"));
    }

    // Shapes of the tying squares.
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        let bd = cat.boundary(&al.t[c.0 as usize])?;
        let top = cat.concat_h(&f.apply_h(&one)?, al.a1.at(b))?;
        let ok = cat.hpaths_eq(&bd.top, &top)?
            && cat.hpaths_eq(&bd.bottom, &g.apply_h(&one)?)?
            && cat.vpaths_eq(&bd.left, al.a0.at(a))?
            && cat.vpaths_eq(&bd.right, &VPath::id(bd.right.start))?;
        if ok {
            rep.pass("t-shape", c.to_string());
        } else {
            rep.fail("t-shape", c.to_string(), "tying square has the wrong boundary");
        }
    }
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        let bd = cat.boundary(&al.r[u.0 as usize])?;
        let left = cat.concat_v(&f.apply_v(&one)?, al.a0.at(a1))?;
        let ok = cat.vpaths_eq(&bd.left, &left)?
            && cat.vpaths_eq(&bd.right, &g.apply_v(&one)?)?
            && cat.hpaths_eq(&bd.top, al.a1.at(a))?
            && cat.hpaths_eq(&bd.bottom, &HPath::id(bd.bottom.start))?;
        if ok {
            rep.pass("r-shape", u.to_string());
        } else {
            rep.fail("r-shape", u.to_string(), "tying square has the wrong boundary");
        }
    }

    // Invertibility of the naturality deltas of both component families.
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        check_invertible(cat, rep, "delta-invertible", &format!("horizontal at {}", c), &al.a1.delta[c.0 as usize]);
    }
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        check_invertible(cat, rep, "delta-invertible", &format!("vertical at {}", u), &al.a0.delta[u.0 as usize]);
    }

    // Naturality of t and r against every generator square: pasting the
    // square before the tying data equals pasting it after.
    for s in 0..src.square_count() as u32 {
        let s = SquareId(s);
        let res = (|| -> Result<Eq3> {
            let b = src.square_boundary(s)?;
            let lhs = f
                .apply_sq(&SquareExpr::Gen(s))?
                .beside(al.a1.sq_vpath(&b.right)?)
                .above(al.t_hpath(&b.bottom)?);
            let rhs = al
                .a0
                .delta_vpath(&b.left)?
                .beside(al.t_hpath(&b.top)?.above(g.apply_sq(&SquareExpr::Gen(s))?));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("t-naturality", s.to_string(), res);
        let res = (|| -> Result<Eq3> {
            let b = src.square_boundary(s)?;
            let lhs = f
                .apply_sq(&SquareExpr::Gen(s))?
                .above(al.a0.sq_hpath(&b.bottom)?)
                .beside(al.r_vpath(&b.right)?);
            let rhs = al
                .a1
                .delta_hpath(&b.top)?
                .above(al.r_vpath(&b.left)?.beside(g.apply_sq(&SquareExpr::Gen(s))?));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("r-naturality", s.to_string(), res);
    }

    // The remaining laws quantify over composite cells of a tabulated source.
    let tab = match src {
        DoubleCategory::Tab(t) => t,
        DoubleCategory::Free(_) => return Ok(()),
    };
    let d = &tab.data;

    // Interchange between the tying squares and the naturality deltas.
    for (&(x, y), _) in &d.h_comp {
        let res = (|| -> Result<Eq3> {
            let fx = f.apply_h(&HPath::one(d.hcells[x.0 as usize].src, x))?;
            let gy = g.apply_h(&HPath::one(d.hcells[y.0 as usize].src, y))?;
            let lhs = vstack(vec![
                SquareExpr::VId(fx).beside(al.a1.delta[y.0 as usize].clone()),
                al.t[x.0 as usize].clone().beside(SquareExpr::VId(gy)),
            ]);
            let rhs = al.a0.comp_sq[x.0 as usize].clone().beside(al.t[y.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("t-interchange", format!("({}, {})", x, y), res);
    }
    for (&(u, w), _) in &d.v_comp {
        let res = (|| -> Result<Eq3> {
            let fu = f.apply_v(&VPath::one(d.vcells[u.0 as usize].src, u))?;
            let gw = g.apply_v(&VPath::one(d.vcells[w.0 as usize].src, w))?;
            let lhs = hrow(vec![
                SquareExpr::HId(fu).above(al.a0.delta[w.0 as usize].clone()),
                al.r[u.0 as usize].clone().above(SquareExpr::HId(gw)),
            ]);
            let rhs = al.a1.comp_sq[u.0 as usize].clone().above(al.r[w.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("r-interchange", format!("({}, {})", u, w), res);
    }

    // Stored value on a composite cell against the comparison-conjugated
    // pasting of the factors.
    for (&(x, y), &xy) in &d.h_comp {
        let res = (|| -> Result<Eq3> {
            cat.equal(&al.t[xy.0 as usize], &derived_t(al, x, y)?)
        })();
        rep.eq_result("t-composite", format!("({}, {})", x, y), res);
    }
    for (&(u, w), &uw) in &d.v_comp {
        let res = (|| -> Result<Eq3> {
            cat.equal(&al.r[uw.0 as usize], &derived_r(al, u, w)?)
        })();
        rep.eq_result("r-composite", format!("({}, {})", u, w), res);
    }

    // The two derivations of t on a composable triple agree.
    for (&(x, y), &xy) in &d.h_comp {
        for z in 0..d.hcells.len() as u32 {
            let z = HCellId(z);
            if d.hcells[y.0 as usize].tgt != d.hcells[z.0 as usize].src {
                continue;
            }
            let res = (|| -> Result<Eq3> {
                let yz = tab.comp_h(y, z)?;
                cat.equal(&derived_t(al, xy, z)?, &derived_t(al, x, yz)?)
            })();
            rep.eq_result("t-associativity", format!("({}, {}, {})", x, y, z), res);
        }
    }
    Ok(())
}

/// The comparison-conjugated pasting giving t on the composite of two
/// 1h-cells from the values on the factors.
fn derived_t(al: &DoublePsNatTrans, x: HCellId, y: HCellId) -> Result<SquareExpr> {
    let f = &al.a1.f;
    let g = &al.a1.g;
    let c = al.a1.f.src.h_tgt(y);
    Ok(vstack(vec![
        f.cmp_h_pair(x, y)?.bwd.beside(SquareExpr::VId(al.a1.at(c).clone())),
        al.a0.comp_sq[x.0 as usize].clone().beside(al.t[y.0 as usize].clone()),
        g.cmp_h_pair(x, y)?.fwd,
    ]))
}

/// The dual pasting giving r on the composite of two 1v-cells.
fn derived_r(al: &DoublePsNatTrans, u: VCellId, w: VCellId) -> Result<SquareExpr> {
    let f = &al.a1.f;
    let g = &al.a1.g;
    let a2 = al.a1.f.src.v_tgt(w);
    Ok(hrow(vec![
        f.cmp_v_pair(u, w)?.bwd.above(SquareExpr::HId(al.a0.at(a2).clone())),
        al.a1.comp_sq[u.0 as usize].clone().above(al.r[w.0 as usize].clone()),
        g.cmp_v_pair(u, w)?.fwd,
    ]))
}

/// Find a two-sided inverse of a globular square over a tabulated target by
/// enumerating generator squares on the flipped boundary. The composition
/// sense (vertical or horizontal) is read off from which boundary pair is
/// the identity.
pub(crate) fn find_inverse(cat: &DoubleCategory, e: &SquareExpr) -> Result<Option<SquareExpr>> {
    let b = cat.boundary(e)?;
    let vert = cat.vpaths_eq(&b.left, &VPath::id(b.left.start))?;
    let flipped = if vert {
        Boundary { top: b.bottom.clone(), bottom: b.top.clone(), left: b.left.clone(), right: b.right.clone() }
    } else {
        Boundary { top: b.top.clone(), bottom: b.bottom.clone(), left: b.right.clone(), right: b.left.clone() }
    };
    for cand in cat.enumerate_squares(&flipped, 1)? {
        let (one, two, id1, id2) = if vert {
            (
                e.clone().above(cand.clone()),
                cand.clone().above(e.clone()),
                SquareExpr::VId(b.top.clone()),
                SquareExpr::VId(b.bottom.clone()),
            )
        } else {
            (
                e.clone().beside(cand.clone()),
                cand.clone().beside(e.clone()),
                SquareExpr::HId(b.left.clone()),
                SquareExpr::HId(b.right.clone()),
            )
        };
        if cat.equal(&one, &id1)? == Eq3::Equal && cat.equal(&two, &id2)? == Eq3::Equal {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Search for a two-sided inverse of a globular square. Decidable over a
/// tabulated target by enumeration; over a free target the check passes for
/// identities and is reported unknown otherwise.
fn check_invertible(cat: &DoubleCategory, rep: &mut Report, check: &str, witness: &str, e: &SquareExpr) {
    let res = (|| -> Result<Eq3> {
        let b = cat.boundary(e)?;
        match cat {
            DoubleCategory::Tab(_) => {
                if find_inverse(cat, e)?.is_some() {
                    Ok(Eq3::Equal)
                } else {
                    Ok(Eq3::NotEqual)
                }
            }
            DoubleCategory::Free(_) => {
                let vert = cat.vpaths_eq(&b.left, &VPath::id(b.left.start))?;
                let id = if vert && cat.hpaths_eq(&b.top, &b.bottom)? {
                    Some(SquareExpr::VId(b.top.clone()))
                } else if !vert && cat.vpaths_eq(&b.left, &b.right)? {
                    Some(SquareExpr::HId(b.left.clone()))
                } else {
                    None
                };
                match id {
                    Some(id) if cat.equal(e, &id)? == Eq3::Equal => Ok(Eq3::Equal),
                    _ => Ok(Eq3::Unknown),
                }
            }
        }
    })();
    match res {
        Ok(Eq3::Equal) => rep.pass(check, witness.to_string()),
        Ok(Eq3::NotEqual) => rep.fail(check, witness.to_string(), "no two-sided inverse found"),
        Ok(Eq3::Unknown) => rep.push(check, witness.to_string(), Verdict::Unknown, "invertibility undecided over a free target"),
        Err(e) => rep.fail(check, witness.to_string(), e.to_string()),
    }
}

/// Horizontal composite beta . alpha of 2-cells across a middle category.
/// Because image paths concatenate strictly, the only functor comparisons
/// surviving from the general pasting are those internal to the reused
/// component squares.
pub fn hcomp_double(be: &DoublePsNatTrans, al: &DoublePsNatTrans) -> Result<DoublePsNatTrans> {
    let a0 = hcomp_vertical(&be.a0, &al.a0)?;
    let a1 = hcomp_horizontal(&be.a1, &al.a1)?;
    let src = &*al.src();
    let gp = &be.a1.g; // G'
    let mut t = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        let ff = al.a1.f.apply_h(&one)?;
        let left = be.a0.delta_vpath(al.a0.at(a))?;
        let row1 = be.a0.sq_hpath(&ff)?.beside(be.t_hpath(al.a1.at(b))?);
        let row2 = gp.apply_sq(&al.t[c.0 as usize])?;
        t.push(left.beside(row1.above(row2)));
    }
    let mut r = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a2) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        let fu = al.a1.f.apply_v(&one)?;
        let top = be.a1.delta_hpath(al.a1.at(a))?;
        let col1 = be.a1.sq_vpath(&fu)?.above(be.r_vpath(al.a0.at(a2))?);
        let col2 = gp.apply_sq(&al.r[u.0 as usize])?;
        r.push(top.above(col1.beside(col2)));
    }
    Ok(DoublePsNatTrans { a0, a1, t, r })
}

/// Vertical composite of 2-cells alpha: F => G then beta: G => H, strictly
/// associative and unital.
pub fn vcomp_double(al: &DoublePsNatTrans, be: &DoublePsNatTrans) -> Result<DoublePsNatTrans> {
    let a0 = vcomp_vertical(&al.a0, &be.a0)?;
    let a1 = vcomp_horizontal(&al.a1, &be.a1)?;
    let src = &*al.src();
    let mut t = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let b = src.h_tgt(c);
        let row1 = al.t[c.0 as usize].clone().beside(SquareExpr::VId(be.a1.at(b).clone()));
        t.push(row1.above(be.t[c.0 as usize].clone()));
    }
    let mut r = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let a2 = src.v_tgt(u);
        let col1 = al.r[u.0 as usize].clone().above(SquareExpr::HId(be.a0.at(a2).clone()));
        r.push(col1.beside(be.r[u.0 as usize].clone()));
    }
    Ok(DoublePsNatTrans { a0, a1, t, r })
}

/// A 2-cell determined by one globular square per object with top a1(A) and
/// left a0(A); the tying squares are then derived rather than chosen.
#[derive(Clone)]
pub struct ThetaTrans {
    pub a0: VerticalPsNatTrans,
    pub a1: HorizontalPsNatTrans,
    /// The collapse square at each source object.
    pub theta: Vec<SquareExpr>,
}

/// The identity globular 2-cell on a functor.
pub fn identity_theta(f: Rc<DoublePseudoFunctor>) -> Result<ThetaTrans> {
    let src = &*f.src;
    let a0 = identity_vertical(f.clone())?;
    let a1 = identity_horizontal(f.clone())?;
    let theta = (0..src.object_count() as u32)
        .map(|a| SquareExpr::VId(HPath::id(f.obj(ObjId(a)))))
        .collect();
    Ok(ThetaTrans { a0, a1, theta })
}

/// Check the component families, the collapse-square shapes, and the two
/// naturality conditions tying the collapse squares to the deltas.
pub fn check_theta(th: &ThetaTrans) -> Report {
    let mut rep = Report::new();
    if !functors_equal(&th.a0.f, &th.a1.f) || !functors_equal(&th.a0.g, &th.a1.g) {
        rep.fail("pair-functors", "global", "the two component families must share their functors");
        return rep;
    }
    rep.merge(check_vertical(&th.a0));
    rep.merge(check_horizontal(&th.a1));
    if let Err(e) = check_theta_inner(th, &mut rep) {
        rep.fail("theta-check", "global", e.to_string());
    }
    rep
}

fn check_theta_inner(th: &ThetaTrans, rep: &mut Report) -> Result<()> {
    let src = &*th.a1.f.src;
    let cat = &*th.a1.f.tgt;
    let g = &th.a1.g;
    if th.theta.len() != src.object_count() {
        return Err(DblError::invalid("collapse squares must cover every object"));
    }
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let bd = cat.boundary(&th.theta[a.0 as usize])?;
        let ok = cat.hpaths_eq(&bd.top, th.a1.at(a))?
            && cat.hpaths_eq(&bd.bottom, &HPath::id(bd.bottom.start))?
            && cat.vpaths_eq(&bd.left, th.a0.at(a))?
            && cat.vpaths_eq(&bd.right, &VPath::id(bd.right.start))?;
        if ok {
            rep.pass("theta-shape", a.to_string());
        } else {
            rep.fail("theta-shape", a.to_string(), "collapse square has the wrong boundary");
        }
    }
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let res = (|| -> Result<Eq3> {
            let (a, b) = (src.h_src(c), src.h_tgt(c));
            let gf = g.apply_h(&HPath::one(a, c))?;
            let lhs = th.a0.comp_sq[c.0 as usize].clone().beside(th.theta[b.0 as usize].clone());
            let rhs = th.a1.delta[c.0 as usize]
                .clone()
                .above(th.theta[a.0 as usize].clone().beside(SquareExpr::VId(gf)));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("theta-h-naturality", c.to_string(), res);
    }
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let res = (|| -> Result<Eq3> {
            let (a, a1) = (src.v_src(u), src.v_tgt(u));
            let gu = g.apply_v(&VPath::one(a, u))?;
            let lhs = th.a1.comp_sq[u.0 as usize].clone().above(th.theta[a1.0 as usize].clone());
            let rhs = th.a0.delta[u.0 as usize]
                .clone()
                .beside(th.theta[a.0 as usize].clone().above(SquareExpr::HId(gu)));
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("theta-v-naturality", u.to_string(), res);
    }
    Ok(())
}

/// Expand a globular 2-cell into tying-square form: t is the naturality
/// square pasted beside the collapse at the target, r the dual.
pub fn theta_to_double(th: &ThetaTrans) -> Result<DoublePsNatTrans> {
    let src = &*th.a1.f.src;
    let mut t = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let b = src.h_tgt(c);
        t.push(th.a0.comp_sq[c.0 as usize].clone().beside(th.theta[b.0 as usize].clone()));
    }
    let mut r = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let a1 = src.v_tgt(u);
        r.push(th.a1.comp_sq[u.0 as usize].clone().above(th.theta[a1.0 as usize].clone()));
    }
    Ok(DoublePsNatTrans { a0: th.a0.clone(), a1: th.a1.clone(), t, r })
}

/// Candidate collapse squares recovered from t at the identity 1h-cells.
/// Each satisfies the horizontal naturality condition; only when the two
/// extractions agree does the 2-cell come from a globular one.
pub fn extract_t_theta(al: &DoublePsNatTrans) -> Result<Vec<SquareExpr>> {
    let src = &*al.a1.f.src;
    (0..src.object_count() as u32).map(|a| al.t_unit_at(ObjId(a))).collect()
}

/// Candidate collapse squares recovered from r at the identity 1v-cells.
pub fn extract_r_theta(al: &DoublePsNatTrans) -> Result<Vec<SquareExpr>> {
    let src = &*al.a1.f.src;
    (0..src.object_count() as u32).map(|a| al.r_unit_at(ObjId(a))).collect()
}

/// A 3-cell between parallel 2-cells alpha => beta: one horizontally
/// globular square per object between the vertical components and one
/// vertically globular square per object between the horizontal components.
#[derive(Clone)]
pub struct Modification {
    /// a0(A): alpha0(A) => beta0(A), horizontally globular.
    pub m0: Vec<SquareExpr>,
    /// a1(A): alpha1(A) => beta1(A), vertically globular.
    pub m1: Vec<SquareExpr>,
}

/// The identity modification on a 2-cell.
pub fn identity_modification(al: &DoublePsNatTrans) -> Modification {
    let m0 = al.a0.comp.iter().map(|p| SquareExpr::HId(p.clone())).collect();
    let m1 = al.a1.comp.iter().map(|p| SquareExpr::VId(p.clone())).collect();
    Modification { m0, m1 }
}

/// Check the four component-family conditions and the two mixed conditions
/// against the tying squares of the two 2-cells.
pub fn check_modification(m: &Modification, al: &DoublePsNatTrans, be: &DoublePsNatTrans) -> Report {
    let mut rep = Report::new();
    if !functors_equal(&al.a1.f, &be.a1.f) || !functors_equal(&al.a1.g, &be.a1.g) {
        rep.fail("mod-functors", "global", "the two 2-cells must be parallel");
        return rep;
    }
    if let Err(e) = check_modification_inner(m, al, be, &mut rep) {
        rep.fail("mod-check", "global", e.to_string());
    }
    rep
}

fn check_modification_inner(
    m: &Modification,
    al: &DoublePsNatTrans,
    be: &DoublePsNatTrans,
    rep: &mut Report,
) -> Result<()> {
    let src = al.src();
    let cat = al.tgt();
    let f = &al.a1.f;
    let g = &al.a1.g;
    if m.m0.len() != src.object_count() || m.m1.len() != src.object_count() {
        return Err(DblError::invalid("modification squares must cover every object"));
    }
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let b0 = cat.boundary(&m.m0[a.0 as usize])?;
        let ok0 = cat.vpaths_eq(&b0.left, al.a0.at(a))?
            && cat.vpaths_eq(&b0.right, be.a0.at(a))?
            && cat.hpaths_eq(&b0.top, &HPath::id(b0.top.start))?
            && cat.hpaths_eq(&b0.bottom, &HPath::id(b0.bottom.start))?;
        if ok0 {
            rep.pass("mod-shape-v", a.to_string());
        } else {
            rep.fail("mod-shape-v", a.to_string(), "vertical-component square has the wrong boundary");
        }
        let b1 = cat.boundary(&m.m1[a.0 as usize])?;
        let ok1 = cat.hpaths_eq(&b1.top, al.a1.at(a))?
            && cat.hpaths_eq(&b1.bottom, be.a1.at(a))?
            && cat.vpaths_eq(&b1.left, &VPath::id(b1.left.start))?
            && cat.vpaths_eq(&b1.right, &VPath::id(b1.right.start))?;
        if ok1 {
            rep.pass("mod-shape-h", a.to_string());
        } else {
            rep.fail("mod-shape-h", a.to_string(), "horizontal-component square has the wrong boundary");
        }
    }

    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        let res = (|| -> Result<Eq3> {
            let lhs = m.m0[a.0 as usize].clone().beside(be.a0.comp_sq[c.0 as usize].clone());
            let rhs = al.a0.comp_sq[c.0 as usize].clone().beside(m.m0[b.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("mod-v-naturality", c.to_string(), res);
        let res = (|| -> Result<Eq3> {
            let ff = f.apply_h(&one)?;
            let gf = g.apply_h(&one)?;
            let lhs = al.a1.delta[c.0 as usize]
                .clone()
                .above(m.m1[a.0 as usize].clone().beside(SquareExpr::VId(gf)));
            let rhs = SquareExpr::VId(ff)
                .beside(m.m1[b.0 as usize].clone())
                .above(be.a1.delta[c.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("mod-h-delta", c.to_string(), res);
        let res = (|| -> Result<Eq3> {
            let ff = f.apply_h(&one)?;
            let lhs = vstack(vec![
                SquareExpr::VId(ff).beside(m.m1[b.0 as usize].clone()),
                m.m0[a.0 as usize].clone().beside(be.t[c.0 as usize].clone()),
            ]);
            cat.equal(&lhs, &al.t[c.0 as usize])
        })();
        rep.eq_result("mod-t", c.to_string(), res);
    }

    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        let res = (|| -> Result<Eq3> {
            let lhs = m.m1[a.0 as usize].clone().above(be.a1.comp_sq[u.0 as usize].clone());
            let rhs = al.a1.comp_sq[u.0 as usize].clone().above(m.m1[a1.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("mod-h-naturality", u.to_string(), res);
        let res = (|| -> Result<Eq3> {
            let fu = f.apply_v(&one)?;
            let gu = g.apply_v(&one)?;
            let lhs = al.a0.delta[u.0 as usize]
                .clone()
                .beside(m.m0[a.0 as usize].clone().above(SquareExpr::HId(gu)));
            let rhs = SquareExpr::HId(fu)
                .above(m.m0[a1.0 as usize].clone())
                .beside(be.a0.delta[u.0 as usize].clone());
            cat.equal(&lhs, &rhs)
        })();
        rep.eq_result("mod-v-delta", u.to_string(), res);
        let res = (|| -> Result<Eq3> {
            let fu = f.apply_v(&one)?;
            let lhs = hrow(vec![
                SquareExpr::HId(fu).above(m.m0[a1.0 as usize].clone()),
                m.m1[a.0 as usize].clone().above(be.r[u.0 as usize].clone()),
            ]);
            cat.equal(&lhs, &al.r[u.0 as usize])
        })();
        rep.eq_result("mod-r", u.to_string(), res);
    }
    Ok(())
}

/// Horizontal composite of modifications across a middle category: the
/// outer functor's image of the inner squares pasted with the outer squares
/// at the image objects. `bsrc` and `asrc` are the domain 2-cells of `b`
/// and `a`; unit comparisons vanish because image paths concatenate
/// strictly.
pub fn hcomp_mod(
    b: &Modification,
    bsrc: &DoublePsNatTrans,
    a: &Modification,
    asrc: &DoublePsNatTrans,
) -> Result<Modification> {
    if !Rc::ptr_eq(&bsrc.a1.f.src, &asrc.a1.f.tgt) {
        return Err(DblError::CategoryMismatch {
            context: "hcomp_mod: modifications are not composable across functors".into(),
        });
    }
    let fp = &bsrc.a1.f;
    let g = &asrc.a1.g;
    let src = &*asrc.src();
    let mut m0 = Vec::new();
    let mut m1 = Vec::new();
    for i in 0..src.object_count() as u32 {
        let i = ObjId(i);
        let ga = g.obj(i);
        m0.push(fp.apply_sq(&a.m0[i.0 as usize])?.above(b.m0[ga.0 as usize].clone()));
        m1.push(fp.apply_sq(&a.m1[i.0 as usize])?.beside(b.m1[ga.0 as usize].clone()));
    }
    Ok(Modification { m0, m1 })
}

/// Vertical composite of modifications along vertically composable 2-cells.
pub fn vcomp_mod(a: &Modification, b: &Modification) -> Modification {
    let m0 = a.m0.iter().zip(&b.m0).map(|(x, y)| x.clone().above(y.clone())).collect();
    let m1 = a.m1.iter().zip(&b.m1).map(|(x, y)| x.clone().beside(y.clone())).collect();
    Modification { m0, m1 }
}

/// Transversal composite of modifications between stacked parallel 2-cells.
pub fn transversal_comp_mod(a: &Modification, b: &Modification) -> Modification {
    let m0 = a.m0.iter().zip(&b.m0).map(|(x, y)| x.clone().beside(y.clone())).collect();
    let m1 = a.m1.iter().zip(&b.m1).map(|(x, y)| x.clone().above(y.clone())).collect();
    Modification { m0, m1 }
}
