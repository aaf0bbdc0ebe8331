//! Small concrete double categories used by tests, examples and the
//! command-line manifests.

use crate::category::{DoubleCategory, TabData, TabHCell, TabSquare, TabVCell, Tabulated};
use crate::cell::{HCellId, ObjId, SquareId, VCellId};
use crate::cell::{HPath, VPath};
use crate::error::{DblError, Result};
use crate::free::{Free, FreeHCell, FreeSquareGen, FreeVCell};
use std::collections::HashMap;

/// A finite category with every morphism tabulated.
/// `comp[(f, g)]` is f-then-g, defined exactly when `tgt(f) == src(g)`.
#[derive(Clone, Debug)]
pub struct FinCat {
    pub objects: Vec<String>,
    /// (name, src, tgt)
    pub morphisms: Vec<(String, usize, usize)>,
    pub identity: Vec<usize>,
    pub comp: HashMap<(usize, usize), usize>,
}

/// The category with two objects and one non-identity arrow between them.
pub fn walking_arrow() -> FinCat {
    FinCat {
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![("i0".into(), 0, 0), ("i1".into(), 1, 1), ("a".into(), 0, 1)],
        identity: vec![0, 1],
        comp: HashMap::from([((0, 0), 0), ((0, 2), 2), ((2, 1), 2), ((1, 1), 1)]),
    }
}

/// The terminal double category: one object and nothing but identities.
pub fn terminal() -> Result<DoubleCategory> {
    let data = TabData {
        objects: vec!["*".into()],
        hcells: vec![TabHCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        vcells: vec![TabVCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        squares: vec![TabSquare {
            name: "1".into(),
            top: HCellId(0),
            bottom: HCellId(0),
            left: VCellId(0),
            right: VCellId(0),
        }],
        h_id: vec![HCellId(0)],
        v_id: vec![VCellId(0)],
        h_comp: HashMap::from([((HCellId(0), HCellId(0)), HCellId(0))]),
        v_comp: HashMap::from([((VCellId(0), VCellId(0)), VCellId(0))]),
        sq_h: HashMap::from([((SquareId(0), SquareId(0)), SquareId(0))]),
        sq_v: HashMap::from([((SquareId(0), SquareId(0)), SquareId(0))]),
        sq_idh: vec![SquareId(0)],
        sq_idv: vec![SquareId(0)],
    };
    DoubleCategory::mk_tabulated(data)
}

/// The quintet double category of a finite category: both kinds of 1-cell
/// are the morphisms, and a square with top f, left u, right v, bottom g
/// exists (uniquely) when f-then-v equals u-then-g.
pub fn quintet(c: &FinCat) -> Result<DoubleCategory> {
    let n = c.morphisms.len();
    let comp = |f: usize, g: usize| -> Result<usize> {
        c.comp
            .get(&(f, g))
            .copied()
            .ok_or_else(|| DblError::invalid(format!("composition table missing ({}, {})", f, g)))
    };
    let mut squares = Vec::new();
    let mut index: HashMap<(usize, usize, usize, usize), SquareId> = HashMap::new();
    for f in 0..n {
        for u in 0..n {
            if c.morphisms[f].1 != c.morphisms[u].1 {
                continue;
            }
            for v in 0..n {
                if c.morphisms[v].1 != c.morphisms[f].2 {
                    continue;
                }
                for g in 0..n {
                    if c.morphisms[g].1 != c.morphisms[u].2 || c.morphisms[g].2 != c.morphisms[v].2 {
                        continue;
                    }
                    if comp(f, v)? == comp(u, g)? {
                        index.insert((f, u, v, g), SquareId(squares.len() as u32));
                        squares.push(TabSquare {
                            name: format!(
                                "[{}/{}/{}/{}]",
                                c.morphisms[f].0, c.morphisms[u].0, c.morphisms[v].0, c.morphisms[g].0
                            ),
                            top: HCellId(f as u32),
                            bottom: HCellId(g as u32),
                            left: VCellId(u as u32),
                            right: VCellId(v as u32),
                        });
                    }
                }
            }
        }
    }
    let keys: Vec<(usize, usize, usize, usize)> = {
        let mut ks: Vec<_> = index.iter().map(|(&k, &s)| (s, k)).collect();
        ks.sort();
        ks.into_iter().map(|(_, k)| k).collect()
    };
    let mut sq_h = HashMap::new();
    let mut sq_v = HashMap::new();
    for (i, &(f, u, v, g)) in keys.iter().enumerate() {
        for (j, &(f2, u2, v2, g2)) in keys.iter().enumerate() {
            if v == u2 {
                let k = (comp(f, f2)?, u, v2, comp(g, g2)?);
                sq_h.insert((SquareId(i as u32), SquareId(j as u32)), index[&k]);
            }
            if g == f2 {
                let k = (f, comp(u, u2)?, comp(v, v2)?, g2);
                sq_v.insert((SquareId(i as u32), SquareId(j as u32)), index[&k]);
            }
        }
    }
    let sq_idh: Vec<SquareId> = (0..n)
        .map(|u| index[&(c.identity[c.morphisms[u].1], u, u, c.identity[c.morphisms[u].2])])
        .collect();
    let sq_idv: Vec<SquareId> = (0..n)
        .map(|f| index[&(f, c.identity[c.morphisms[f].1], c.identity[c.morphisms[f].2], f)])
        .collect();
    let one_comp: HashMap<(u32, u32), u32> =
        c.comp.iter().map(|(&(f, g), &h)| ((f as u32, g as u32), h as u32)).collect();
    let data = TabData {
        objects: c.objects.clone(),
        hcells: c
            .morphisms
            .iter()
            .map(|m| TabHCell { name: m.0.clone(), src: ObjId(m.1 as u32), tgt: ObjId(m.2 as u32) })
            .collect(),
        vcells: c
            .morphisms
            .iter()
            .map(|m| TabVCell { name: m.0.clone(), src: ObjId(m.1 as u32), tgt: ObjId(m.2 as u32) })
            .collect(),
        squares,
        h_id: c.identity.iter().map(|&i| HCellId(i as u32)).collect(),
        v_id: c.identity.iter().map(|&i| VCellId(i as u32)).collect(),
        h_comp: one_comp.iter().map(|(&(f, g), &h)| ((HCellId(f), HCellId(g)), HCellId(h))).collect(),
        v_comp: one_comp.iter().map(|(&(f, g), &h)| ((VCellId(f), VCellId(g)), VCellId(h))).collect(),
        sq_h,
        sq_v,
        sq_idh,
        sq_idv,
    };
    DoubleCategory::mk_tabulated(data)
}

/// One object, identity 1-cells only, and squares forming Z/2 under both
/// compositions. The smallest double category with a non-identity globular
/// square, used wherever a genuinely pseudo comparison is needed.
pub fn parity() -> Result<DoubleCategory> {
    let xor: HashMap<(SquareId, SquareId), SquareId> = HashMap::from([
        ((SquareId(0), SquareId(0)), SquareId(0)),
        ((SquareId(0), SquareId(1)), SquareId(1)),
        ((SquareId(1), SquareId(0)), SquareId(1)),
        ((SquareId(1), SquareId(1)), SquareId(0)),
    ]);
    let data = TabData {
        objects: vec!["*".into()],
        hcells: vec![TabHCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        vcells: vec![TabVCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        squares: vec![
            TabSquare { name: "e".into(), top: HCellId(0), bottom: HCellId(0), left: VCellId(0), right: VCellId(0) },
            TabSquare { name: "n".into(), top: HCellId(0), bottom: HCellId(0), left: VCellId(0), right: VCellId(0) },
        ],
        h_id: vec![HCellId(0)],
        v_id: vec![VCellId(0)],
        h_comp: HashMap::from([((HCellId(0), HCellId(0)), HCellId(0))]),
        v_comp: HashMap::from([((VCellId(0), VCellId(0)), VCellId(0))]),
        sq_h: xor.clone(),
        sq_v: xor,
        sq_idh: vec![SquareId(0)],
        sq_idv: vec![SquareId(0)],
    };
    DoubleCategory::mk_tabulated(data)
}

/// Componentwise product of two tabulated double categories.
pub fn product(a: &Tabulated, b: &Tabulated) -> Result<DoubleCategory> {
    let (da, db) = (&a.data, &b.data);
    let no_b = db.objects.len() as u32;
    let nh_b = db.hcells.len() as u32;
    let nv_b = db.vcells.len() as u32;
    let ns_b = db.squares.len() as u32;
    let obj = |x: ObjId, y: ObjId| ObjId(x.0 * no_b + y.0);
    let hc = |x: HCellId, y: HCellId| HCellId(x.0 * nh_b + y.0);
    let vc = |x: VCellId, y: VCellId| VCellId(x.0 * nv_b + y.0);
    let sq = |x: SquareId, y: SquareId| SquareId(x.0 * ns_b + y.0);

    let mut data = TabData::default();
    for oa in &da.objects {
        for ob in &db.objects {
            data.objects.push(format!("({},{})", oa, ob));
        }
    }
    for ha in &da.hcells {
        for hb in &db.hcells {
            data.hcells.push(TabHCell {
                name: format!("({},{})", ha.name, hb.name),
                src: obj(ha.src, hb.src),
                tgt: obj(ha.tgt, hb.tgt),
            });
        }
    }
    for va in &da.vcells {
        for vb in &db.vcells {
            data.vcells.push(TabVCell {
                name: format!("({},{})", va.name, vb.name),
                src: obj(va.src, vb.src),
                tgt: obj(va.tgt, vb.tgt),
            });
        }
    }
    for sa in &da.squares {
        for sb in &db.squares {
            data.squares.push(TabSquare {
                name: format!("({},{})", sa.name, sb.name),
                top: hc(sa.top, sb.top),
                bottom: hc(sa.bottom, sb.bottom),
                left: vc(sa.left, sb.left),
                right: vc(sa.right, sb.right),
            });
        }
    }
    for (i, &ia) in da.h_id.iter().enumerate() {
        for (j, &jb) in db.h_id.iter().enumerate() {
            let _ = (i, j);
            data.h_id.push(hc(ia, jb));
        }
    }
    for &ia in &da.v_id {
        for &jb in &db.v_id {
            data.v_id.push(vc(ia, jb));
        }
    }
    for (&(f1, g1), &h1) in &da.h_comp {
        for (&(f2, g2), &h2) in &db.h_comp {
            data.h_comp.insert((hc(f1, f2), hc(g1, g2)), hc(h1, h2));
        }
    }
    for (&(u1, w1), &x1) in &da.v_comp {
        for (&(u2, w2), &x2) in &db.v_comp {
            data.v_comp.insert((vc(u1, u2), vc(w1, w2)), vc(x1, x2));
        }
    }
    for (&(s1, t1), &r1) in &da.sq_h {
        for (&(s2, t2), &r2) in &db.sq_h {
            data.sq_h.insert((sq(s1, s2), sq(t1, t2)), sq(r1, r2));
        }
    }
    for (&(s1, t1), &r1) in &da.sq_v {
        for (&(s2, t2), &r2) in &db.sq_v {
            data.sq_v.insert((sq(s1, s2), sq(t1, t2)), sq(r1, r2));
        }
    }
    for &ua in &da.sq_idh {
        for &ub in &db.sq_idh {
            data.sq_idh.push(sq(ua, ub));
        }
    }
    for &fa in &da.sq_idv {
        for &fb in &db.sq_idv {
            data.sq_idv.push(sq(fa, fb));
        }
    }
    DoubleCategory::mk_tabulated(data)
}

/// Free double category on a rows x cols grid of square generators, with
/// index helpers into its objects and cells.
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub cat: DoubleCategory,
}

impl Grid {
    /// Object at grid corner (r, c), 0-indexed from the top left.
    pub fn obj(&self, r: usize, c: usize) -> ObjId {
        ObjId((r * (self.cols + 1) + c) as u32)
    }
    /// Horizontal edge from (r, c) to (r, c+1).
    pub fn h(&self, r: usize, c: usize) -> HCellId {
        HCellId((r * self.cols + c) as u32)
    }
    /// Vertical edge from (r, c) to (r+1, c).
    pub fn v(&self, r: usize, c: usize) -> VCellId {
        VCellId((r * (self.cols + 1) + c) as u32)
    }
    /// Generator square with top-left corner (r, c).
    pub fn sq(&self, r: usize, c: usize) -> SquareId {
        SquareId((r * self.cols + c) as u32)
    }
    /// Horizontal path along row r covering columns c0..c1.
    pub fn hpath(&self, r: usize, c0: usize, c1: usize) -> HPath {
        HPath { start: self.obj(r, c0), cells: (c0..c1).map(|c| self.h(r, c)).collect() }
    }
    /// Vertical path along column c covering rows r0..r1.
    pub fn vpath(&self, c: usize, r0: usize, r1: usize) -> VPath {
        VPath { start: self.obj(r0, c), cells: (r0..r1).map(|r| self.v(r, c)).collect() }
    }
}

pub fn grid(rows: usize, cols: usize) -> Result<Grid> {
    let mut objects = Vec::new();
    for r in 0..=rows {
        for c in 0..=cols {
            objects.push(format!("x{}{}", r, c));
        }
    }
    let obj = |r: usize, c: usize| ObjId((r * (cols + 1) + c) as u32);
    let mut hcells = Vec::new();
    for r in 0..=rows {
        for c in 0..cols {
            hcells.push(FreeHCell { name: format!("h{}{}", r, c), src: obj(r, c), tgt: obj(r, c + 1) });
        }
    }
    let mut vcells = Vec::new();
    for r in 0..rows {
        for c in 0..=cols {
            vcells.push(FreeVCell { name: format!("v{}{}", r, c), src: obj(r, c), tgt: obj(r + 1, c) });
        }
    }
    let h = |r: usize, c: usize| HCellId((r * cols + c) as u32);
    let v = |r: usize, c: usize| VCellId((r * (cols + 1) + c) as u32);
    let mut squares = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            squares.push(FreeSquareGen {
                name: format!("s{}{}", r, c),
                top: HPath::one(obj(r, c), h(r, c)),
                bottom: HPath::one(obj(r + 1, c), h(r + 1, c)),
                left: VPath::one(obj(r, c), v(r, c)),
                right: VPath::one(obj(r, c + 1), v(r, c + 1)),
            });
        }
    }
    let free = Free::new(objects, hcells, vcells, squares, Vec::new(), Vec::new(), Vec::new())?;
    Ok(Grid { rows, cols, cat: DoubleCategory::Free(free) })
}

/// Free double category on a single 1h-cell `f : 0 -> 1`.
pub fn free_on_one_hcell() -> Result<Free> {
    Free::new(
        vec!["0".into(), "1".into()],
        vec![FreeHCell { name: "f".into(), src: ObjId(0), tgt: ObjId(1) }],
        Vec::new(),
        Vec::new(),
        Vec::new(),
        Vec::new(),
        Vec::new(),
    )
}

/// One object, an idempotent horizontal generator `f` and an idempotent
/// vertical generator `u`, with a thin square for every matching boundary:
/// a unique square exists exactly when top equals bottom and left equals
/// right, so every pasting equation holds automatically. Cell indices:
/// hcells [1, f], vcells [1, u], squares indexed by (top, left).
pub fn thin_idempotent() -> Result<DoubleCategory> {
    let sq = |t: u32, l: u32| SquareId(t * 2 + l);
    let hname = ["1", "f"];
    let vname = ["1", "u"];
    let mut squares = Vec::new();
    for t in 0..2u32 {
        for l in 0..2u32 {
            squares.push(TabSquare {
                name: format!("[{}|{}]", hname[t as usize], vname[l as usize]),
                top: HCellId(t),
                bottom: HCellId(t),
                left: VCellId(l),
                right: VCellId(l),
            });
        }
    }
    // The 1-cell monoid {1, f} with f idempotent: composition is max.
    let mut h_comp = HashMap::new();
    let mut v_comp = HashMap::new();
    for a in 0..2u32 {
        for b in 0..2u32 {
            h_comp.insert((HCellId(a), HCellId(b)), HCellId(a.max(b)));
            v_comp.insert((VCellId(a), VCellId(b)), VCellId(a.max(b)));
        }
    }
    let mut sq_h = HashMap::new();
    let mut sq_v = HashMap::new();
    for t1 in 0..2u32 {
        for l1 in 0..2u32 {
            for t2 in 0..2u32 {
                for l2 in 0..2u32 {
                    if l1 == l2 {
                        sq_h.insert((sq(t1, l1), sq(t2, l2)), sq(t1.max(t2), l1));
                    }
                    if t1 == t2 {
                        sq_v.insert((sq(t1, l1), sq(t2, l2)), sq(t1, l1.max(l2)));
                    }
                }
            }
        }
    }
    let data = TabData {
        objects: vec!["*".into()],
        hcells: (0..2)
            .map(|i| TabHCell { name: hname[i].into(), src: ObjId(0), tgt: ObjId(0) })
            .collect(),
        vcells: (0..2)
            .map(|i| TabVCell { name: vname[i].into(), src: ObjId(0), tgt: ObjId(0) })
            .collect(),
        squares,
        h_id: vec![HCellId(0)],
        v_id: vec![VCellId(0)],
        h_comp,
        v_comp,
        sq_h,
        sq_v,
        sq_idh: vec![sq(0, 0), sq(0, 1)],
        sq_idv: vec![sq(0, 0), sq(1, 0)],
    };
    DoubleCategory::mk_tabulated(data)
}

/// One object and an involutive horizontal generator (`f . f = 1`), with
/// thin squares only: the unique square over each globular boundary.
/// Cell indices: hcells [1, f], vcells [1], squares [e, Id_f].
pub fn involution() -> Result<DoubleCategory> {
    let data = TabData {
        objects: vec!["*".into()],
        hcells: vec![
            TabHCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) },
            TabHCell { name: "f".into(), src: ObjId(0), tgt: ObjId(0) },
        ],
        vcells: vec![TabVCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        squares: vec![
            TabSquare { name: "e".into(), top: HCellId(0), bottom: HCellId(0), left: VCellId(0), right: VCellId(0) },
            TabSquare { name: "If".into(), top: HCellId(1), bottom: HCellId(1), left: VCellId(0), right: VCellId(0) },
        ],
        h_id: vec![HCellId(0)],
        v_id: vec![VCellId(0)],
        h_comp: (0..2)
            .flat_map(|a| (0..2).map(move |b| ((HCellId(a), HCellId(b)), HCellId(a ^ b))))
            .collect(),
        v_comp: HashMap::from([((VCellId(0), VCellId(0)), VCellId(0))]),
        sq_h: (0..2)
            .flat_map(|a| (0..2).map(move |b| ((SquareId(a), SquareId(b)), SquareId(a ^ b))))
            .collect(),
        sq_v: HashMap::from([
            ((SquareId(0), SquareId(0)), SquareId(0)),
            ((SquareId(1), SquareId(1)), SquareId(1)),
        ]),
        sq_idh: vec![SquareId(0)],
        sq_idv: vec![SquareId(0), SquareId(1)],
    };
    DoubleCategory::mk_tabulated(data)
}

/// Same 1-cells as [`involution`], with squares graded by a parity that
/// composes by xor in both directions. The odd globular square on the
/// identity 1h-cell is the nontrivial comparison cell used by genuinely
/// pseudo fixtures. Square indices: (hcell, parity) at `hcell * 2 + parity`,
/// i.e. [e, n, Id_f, m].
pub fn involution_parity() -> Result<DoubleCategory> {
    let sq = |c: u32, p: u32| SquareId(c * 2 + p);
    let sname = [["e", "n"], ["If", "m"]];
    let mut squares = Vec::new();
    for c in 0..2u32 {
        for p in 0..2u32 {
            squares.push(TabSquare {
                name: sname[c as usize][p as usize].into(),
                top: HCellId(c),
                bottom: HCellId(c),
                left: VCellId(0),
                right: VCellId(0),
            });
        }
    }
    let mut sq_h = HashMap::new();
    let mut sq_v = HashMap::new();
    for c1 in 0..2u32 {
        for p1 in 0..2u32 {
            for c2 in 0..2u32 {
                for p2 in 0..2u32 {
                    sq_h.insert((sq(c1, p1), sq(c2, p2)), sq(c1 ^ c2, p1 ^ p2));
                    if c1 == c2 {
                        sq_v.insert((sq(c1, p1), sq(c2, p2)), sq(c1, p1 ^ p2));
                    }
                }
            }
        }
    }
    let data = TabData {
        objects: vec!["*".into()],
        hcells: vec![
            TabHCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) },
            TabHCell { name: "f".into(), src: ObjId(0), tgt: ObjId(0) },
        ],
        vcells: vec![TabVCell { name: "1".into(), src: ObjId(0), tgt: ObjId(0) }],
        squares,
        h_id: vec![HCellId(0)],
        v_id: vec![VCellId(0)],
        h_comp: (0..2)
            .flat_map(|a| (0..2).map(move |b| ((HCellId(a), HCellId(b)), HCellId(a ^ b))))
            .collect(),
        v_comp: HashMap::from([((VCellId(0), VCellId(0)), VCellId(0))]),
        sq_h,
        sq_v,
        sq_idh: vec![sq(0, 0)],
        sq_idv: vec![sq(0, 0), sq(1, 0)],
    };
    DoubleCategory::mk_tabulated(data)
}

/// A genuinely pseudo double functor from the terminal double category into
/// the parity category: every comparison square is the nonidentity square,
/// which is coherent because the parity squares compose by xor.
pub fn pseudo_parity_functor() -> Result<crate::functor::DoublePseudoFunctor> {
    use crate::expr::SquareExpr;
    use crate::functor::{DoublePseudoFunctor, Inv};
    use std::rc::Rc;

    let src = Rc::new(terminal()?);
    let tgt = Rc::new(parity()?);
    let n = || Inv { fwd: SquareExpr::Gen(SquareId(1)), bwd: SquareExpr::Gen(SquareId(1)) };
    Ok(DoublePseudoFunctor {
        src,
        tgt,
        obj_map: vec![ObjId(0)],
        h_map: vec![HPath::one(ObjId(0), HCellId(0))],
        v_map: vec![VPath::one(ObjId(0), VCellId(0))],
        sq_map: vec![SquareExpr::Gen(SquareId(0))],
        cmp_h: HashMap::from([((HCellId(0), HCellId(0)), n())]),
        unit_h: HashMap::from([(ObjId(0), n())]),
        cmp_v: HashMap::from([((VCellId(0), VCellId(0)), n())]),
        unit_v: HashMap::from([(ObjId(0), n())]),
    })
}
