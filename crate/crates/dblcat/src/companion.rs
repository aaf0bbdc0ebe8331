//! Companion pairs and connections: the conversion between strong vertical
//! and strong horizontal pseudonatural transformations, the pushforward of
//! companions along a pseudo functor, the explicit inverse of the delta at
//! a companion 1h-cell, and the embedding of strict vertical
//! transformations as full 2-cells via their collapse squares.

use crate::category::DoubleCategory;
use crate::cell::{HPath, ObjId, VPath};
use crate::dbltrans::{theta_to_double, DoublePsNatTrans, ThetaTrans};
use crate::error::{DblError, Eq3, Result};
use crate::expr::{hrow, vstack, SquareExpr};
use crate::functor::DoublePseudoFunctor;
use crate::report::Report;
use crate::transform::{HorizontalPsNatTrans, VerticalPsNatTrans};
use crate::{HCellId, VCellId};
use std::collections::HashMap;

/// A companion pair for a 1v-cell u: a 1h-path u_star with the collapse
/// square eps (top u_star, left u, identity bottom and right) and the
/// expand square eta (identity top and left, bottom u_star, right u),
/// subject to the two absorption relations.
#[derive(Clone)]
pub struct CompanionPair {
    pub u: VCellId,
    pub u_star: HPath,
    pub eps: SquareExpr,
    pub eta: SquareExpr,
}

/// A chosen companion pair for each relevant object, indexed by the 0-cells
/// of the transformation's source category. Deliberately partial: only the
/// components actually converted need an entry.
#[derive(Clone, Default)]
pub struct Connection {
    pub pairs: HashMap<ObjId, CompanionPair>,
}

impl Connection {
    pub fn get(&self, a: ObjId) -> Result<&CompanionPair> {
        self.pairs.get(&a).ok_or(DblError::MissingCompanion { obj: a.to_string() })
    }
}

/// The identity companion on every object of a tabulated category: the
/// identity 1v-cell with the identity 1h-path and identity squares.
pub fn identity_connection(cat: &DoubleCategory) -> Result<Connection> {
    let d = &cat.as_tab()?.data;
    let mut pairs = HashMap::new();
    for a in 0..d.objects.len() as u32 {
        let a = ObjId(a);
        pairs.insert(
            a,
            CompanionPair {
                u: d.v_id[a.0 as usize],
                u_star: HPath::id(a),
                eps: SquareExpr::VId(HPath::id(a)),
                eta: SquareExpr::VId(HPath::id(a)),
            },
        );
    }
    Ok(Connection { pairs })
}

/// Verify the boundary shapes of eps and eta and the two absorption
/// relations: eta beside eps is the vertical identity on u_star, and eta
/// over eps is the horizontal identity on u.
pub fn check_companion(c: &CompanionPair, cat: &DoubleCategory) -> Report {
    let mut rep = Report::new();
    if let Err(e) = check_companion_inner(c, cat, &mut rep) {
        rep.fail("companion-data", "global", e.to_string());
    }
    rep
}

fn check_companion_inner(c: &CompanionPair, cat: &DoubleCategory, rep: &mut Report) -> Result<()> {
    let u = VPath::one(cat.v_src(c.u), c.u);
    let be = cat.boundary(&c.eps)?;
    let ok = cat.hpaths_eq(&be.top, &c.u_star)?
        && cat.hpaths_eq(&be.bottom, &HPath::id(be.bottom.start))?
        && cat.vpaths_eq(&be.left, &u)?
        && cat.vpaths_eq(&be.right, &VPath::id(be.right.start))?;
    if ok {
        rep.pass("eps-shape", c.u.to_string());
    } else {
        rep.fail("eps-shape", c.u.to_string(), "collapse square has the wrong boundary");
    }
    let bn = cat.boundary(&c.eta)?;
    let ok = cat.hpaths_eq(&bn.top, &HPath::id(bn.top.start))?
        && cat.hpaths_eq(&bn.bottom, &c.u_star)?
        && cat.vpaths_eq(&bn.left, &VPath::id(bn.left.start))?
        && cat.vpaths_eq(&bn.right, &u)?;
    if ok {
        rep.pass("eta-shape", c.u.to_string());
    } else {
        rep.fail("eta-shape", c.u.to_string(), "expand square has the wrong boundary");
    }
    rep.eq_result(
        "companion-row",
        c.u.to_string(),
        cat.equal(&c.eta.clone().beside(c.eps.clone()), &SquareExpr::VId(c.u_star.clone())),
    );
    rep.eq_result(
        "companion-stack",
        c.u.to_string(),
        cat.equal(&c.eta.clone().above(c.eps.clone()), &SquareExpr::HId(u)),
    );
    Ok(())
}

/// Push a companion pair forward along a pseudo functor: the image path of
/// u_star is a companion of the image of u, with eps corrected below by the
/// forward unit comparison and eta corrected above by the backward one.
/// The image of u must again be a single generator to fit the pair type.
pub fn functor_image_companion(f: &DoublePseudoFunctor, c: &CompanionPair) -> Result<CompanionPair> {
    let a = f.src.v_src(c.u);
    let a1 = f.src.v_tgt(c.u);
    let img = f.apply_v(&VPath::one(a, c.u))?;
    if img.cells.len() != 1 {
        return Err(DblError::invalid(
            "image of the companion base is not a single generator",
        ));
    }
    Ok(CompanionPair {
        u: img.cells[0],
        u_star: f.apply_h(&c.u_star)?,
        eps: f.apply_sq(&c.eps)?.above(f.unit_h_at(a1)?.fwd),
        eta: f.unit_h_at(a)?.bwd.above(f.apply_sq(&c.eta)?),
    })
}

/// Convert a strong vertical transformation into the horizontal one whose
/// components are the chosen companions: the naturality square at a 1v-cell
/// pastes the expand and collapse squares around the vertical delta, and
/// the delta at a 1h-cell pastes them around the vertical naturality
/// square.
pub fn vertical_to_horizontal(a0: &VerticalPsNatTrans, conn: &Connection) -> Result<HorizontalPsNatTrans> {
    let src = a0.src();
    let f = &a0.f;
    let g = &a0.g;
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        comp.push(conn.get(ObjId(a))?.u_star.clone());
    }
    let mut comp_sq = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1) = (src.v_src(u), src.v_tgt(u));
        let one = VPath::one(a, u);
        comp_sq.push(hrow(vec![
            SquareExpr::HId(f.apply_v(&one)?).above(conn.get(a1)?.eta.clone()),
            a0.delta[u.0 as usize].clone(),
            conn.get(a)?.eps.clone().above(SquareExpr::HId(g.apply_v(&one)?)),
        ]));
    }
    let mut delta = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        delta.push(hrow(vec![
            conn.get(a)?.eta.clone(),
            a0.comp_sq[c.0 as usize].clone(),
            conn.get(b)?.eps.clone(),
        ]));
    }
    Ok(HorizontalPsNatTrans { f: f.clone(), g: g.clone(), comp, comp_sq, delta })
}

/// Convert back: a strong horizontal transformation whose components are
/// the designated companion 1h-paths determines a vertical one on the
/// companion base 1v-cells, by the dual pastings.
pub fn horizontal_to_vertical(a1: &HorizontalPsNatTrans, conn: &Connection) -> Result<VerticalPsNatTrans> {
    let src = a1.src();
    let cat = a1.tgt();
    let f = &a1.f;
    let g = &a1.g;
    let mut comp = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let pair = conn.get(a)?;
        if !cat.hpaths_eq(a1.at(a), &pair.u_star)? {
            return Err(DblError::NotACompanion { obj: a.to_string() });
        }
        comp.push(VPath::one(cat.v_src(pair.u), pair.u));
    }
    let mut comp_sq = Vec::new();
    for c in 0..src.hcell_count() as u32 {
        let c = HCellId(c);
        let (a, b) = (src.h_src(c), src.h_tgt(c));
        let one = HPath::one(a, c);
        comp_sq.push(vstack(vec![
            SquareExpr::VId(f.apply_h(&one)?).beside(conn.get(b)?.eta.clone()),
            a1.delta[c.0 as usize].clone(),
            conn.get(a)?.eps.clone().beside(SquareExpr::VId(g.apply_h(&one)?)),
        ]));
    }
    let mut delta = Vec::new();
    for u in 0..src.vcell_count() as u32 {
        let u = VCellId(u);
        let (a, a1_) = (src.v_src(u), src.v_tgt(u));
        delta.push(vstack(vec![
            conn.get(a)?.eta.clone(),
            a1.comp_sq[u.0 as usize].clone(),
            conn.get(a1_)?.eps.clone(),
        ]));
    }
    Ok(VerticalPsNatTrans { f: f.clone(), g: g.clone(), comp, comp_sq, delta })
}

/// The four exchange identities tying a strong vertical transformation to
/// the horizontal one derived from it through a connection; they follow
/// from the absorption relations and underpin both round trips.
pub fn verify_companion_exchange(a0: &VerticalPsNatTrans, conn: &Connection) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let a1 = vertical_to_horizontal(a0, conn)?;
        let src = a0.src();
        let cat = a0.tgt();
        let f = &a0.f;
        let g = &a0.g;
        for c in 0..src.hcell_count() as u32 {
            let c = HCellId(c);
            let (a, b) = (src.h_src(c), src.h_tgt(c));
            let one = HPath::one(a, c);
            let gf = g.apply_h(&one)?;
            let lhs = a0.comp_sq[c.0 as usize].clone().beside(conn.get(b)?.eps.clone());
            let rhs = a1.delta[c.0 as usize]
                .clone()
                .above(conn.get(a)?.eps.clone().beside(SquareExpr::VId(gf)));
            rep.eq_result("exchange-collapse-h", c.to_string(), cat.equal(&lhs, &rhs));
            let ff = f.apply_h(&one)?;
            let lhs = hrow(vec![conn.get(a)?.eta.clone(), a0.comp_sq[c.0 as usize].clone()]);
            let rhs = SquareExpr::VId(ff)
                .beside(conn.get(b)?.eta.clone())
                .above(a1.delta[c.0 as usize].clone());
            rep.eq_result("exchange-expand-h", c.to_string(), cat.equal(&lhs, &rhs));
        }
        for u in 0..src.vcell_count() as u32 {
            let u = VCellId(u);
            let (a, a1_) = (src.v_src(u), src.v_tgt(u));
            let one = VPath::one(a, u);
            let gu = g.apply_v(&one)?;
            let lhs = vstack(vec![a1.comp_sq[u.0 as usize].clone(), conn.get(a1_)?.eps.clone()]);
            let rhs = hrow(vec![
                a0.delta[u.0 as usize].clone(),
                conn.get(a)?.eps.clone().above(SquareExpr::HId(gu.clone())),
            ]);
            rep.eq_result("exchange-collapse-v", u.to_string(), cat.equal(&lhs, &rhs));
            let fu = f.apply_v(&one)?;
            let lhs = vstack(vec![conn.get(a)?.eta.clone(), a1.comp_sq[u.0 as usize].clone()]);
            let rhs = hrow(vec![
                SquareExpr::HId(fu).above(conn.get(a1_)?.eta.clone()),
                a0.delta[u.0 as usize].clone(),
            ]);
            rep.eq_result("exchange-expand-v", u.to_string(), cat.equal(&lhs, &rhs));
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("exchange-data", "global", e.to_string());
    }
    rep
}

/// Round trip starting from a vertical transformation: convert to the
/// companion horizontal transformation and back, then compare every datum.
pub fn roundtrip_vertical(a0: &VerticalPsNatTrans, conn: &Connection) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let back = horizontal_to_vertical(&vertical_to_horizontal(a0, conn)?, conn)?;
        let cat = a0.tgt();
        for (i, (p, q)) in a0.comp.iter().zip(&back.comp).enumerate() {
            rep.eq3(
                "roundtrip-component",
                ObjId(i as u32).to_string(),
                if cat.vpaths_eq(p, q)? { Eq3::Equal } else { Eq3::NotEqual },
            );
        }
        for (i, (x, y)) in a0.comp_sq.iter().zip(&back.comp_sq).enumerate() {
            rep.eq_result("roundtrip-naturality", HCellId(i as u32).to_string(), cat.equal(x, y));
        }
        for (i, (x, y)) in a0.delta.iter().zip(&back.delta).enumerate() {
            rep.eq_result("roundtrip-delta", VCellId(i as u32).to_string(), cat.equal(x, y));
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("roundtrip-data", "global", e.to_string());
    }
    rep
}

/// Round trip starting from a horizontal transformation whose components
/// are the designated companions.
pub fn roundtrip_horizontal(a1: &HorizontalPsNatTrans, conn: &Connection) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let back = vertical_to_horizontal(&horizontal_to_vertical(a1, conn)?, conn)?;
        let cat = a1.tgt();
        for (i, (p, q)) in a1.comp.iter().zip(&back.comp).enumerate() {
            rep.eq3(
                "roundtrip-component",
                ObjId(i as u32).to_string(),
                if cat.hpaths_eq(p, q)? { Eq3::Equal } else { Eq3::NotEqual },
            );
        }
        for (i, (x, y)) in a1.comp_sq.iter().zip(&back.comp_sq).enumerate() {
            rep.eq_result("roundtrip-naturality", VCellId(i as u32).to_string(), cat.equal(x, y));
        }
        for (i, (x, y)) in a1.delta.iter().zip(&back.delta).enumerate() {
            rep.eq_result("roundtrip-delta", HCellId(i as u32).to_string(), cat.equal(x, y));
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("roundtrip-data", "global", e.to_string());
    }
    rep
}

/// Explicit inverse of the delta of a companion-derived horizontal
/// transformation at a companion 1h-path in the source: the row of the
/// pushed-forward expand square, the naturality square at the base 1v-cell
/// and the pushed-forward collapse square.
pub fn delta_companion_inverse(
    a1: &HorizontalPsNatTrans,
    pair: &CompanionPair,
) -> Result<SquareExpr> {
    let f_img = functor_image_companion(&a1.f, pair)?;
    let g_img = functor_image_companion(&a1.g, pair)?;
    Ok(hrow(vec![f_img.eta, a1.comp_sq[pair.u.0 as usize].clone(), g_img.eps]))
}

/// Check that [`delta_companion_inverse`] really is a two-sided inverse of
/// the delta over the companion path.
pub fn verify_delta_companion_inverse(a1: &HorizontalPsNatTrans, pair: &CompanionPair) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let cat = a1.tgt();
        let d = a1.delta_hpath(&pair.u_star)?;
        let inv = delta_companion_inverse(a1, pair)?;
        let b = cat.boundary(&d)?;
        rep.eq_result(
            "delta-inverse-left",
            pair.u.to_string(),
            cat.equal(&d.clone().above(inv.clone()), &SquareExpr::VId(b.top.clone())),
        );
        rep.eq_result(
            "delta-inverse-right",
            pair.u.to_string(),
            cat.equal(&inv.above(d), &SquareExpr::VId(b.bottom.clone())),
        );
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("delta-inverse-data", "global", e.to_string());
    }
    rep
}

/// Embed a strong vertical transformation as a full 2-cell: the collapse
/// squares of the connection serve as the per-object globular squares, and
/// the tying data is derived from them.
pub fn embed_psdbl_2cell(a0: &VerticalPsNatTrans, conn: &Connection) -> Result<DoublePsNatTrans> {
    let a1 = vertical_to_horizontal(a0, conn)?;
    let src = a0.src();
    let mut theta = Vec::new();
    for a in 0..src.object_count() as u32 {
        theta.push(conn.get(ObjId(a))?.eps.clone());
    }
    theta_to_double(&ThetaTrans { a0: a0.clone(), a1, theta })
}

/// The three-way correspondence between the tying squares of the embedded
/// 2-cell, the deltas of the derived horizontal transformation and the
/// naturality squares of the vertical one: each displayed formula recovers
/// its subject from the other datum.
pub fn correspondence_check(a0: &VerticalPsNatTrans, conn: &Connection) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let al = embed_psdbl_2cell(a0, conn)?;
        let a1 = &al.a1;
        let src = a0.src();
        let cat = a0.tgt();
        for c in 0..src.hcell_count() as u32 {
            let c = HCellId(c);
            let (a, b) = (src.h_src(c), src.h_tgt(c));
            let one = HPath::one(a, c);
            let t = &al.t[c.0 as usize];
            let gf = a0.g.apply_h(&one)?;
            let from_delta = a1.delta[c.0 as usize]
                .clone()
                .above(conn.get(a)?.eps.clone().beside(SquareExpr::VId(gf)));
            rep.eq_result("t-from-delta", c.to_string(), cat.equal(t, &from_delta));
            let delta_from_t = hrow(vec![conn.get(a)?.eta.clone(), t.clone()]);
            rep.eq_result(
                "delta-from-t",
                c.to_string(),
                cat.equal(&a1.delta[c.0 as usize], &delta_from_t),
            );
            let ff = a0.f.apply_h(&one)?;
            let nat_from_t =
                SquareExpr::VId(ff).beside(conn.get(b)?.eta.clone()).above(t.clone());
            rep.eq_result(
                "naturality-from-t",
                c.to_string(),
                cat.equal(&a0.comp_sq[c.0 as usize], &nat_from_t),
            );
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("correspondence-data", "global", e.to_string());
    }
    rep
}
