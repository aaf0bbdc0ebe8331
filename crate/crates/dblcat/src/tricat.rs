//! Constraint 3-cells for the three-dimensional structure whose 0-cells are
//! double categories, 1-cells pseudo double functors, 2-cells double
//! pseudonatural transformations and 3-cells modifications: the associator
//! and unitor modifications for the horizontal composition of 2-cells, the
//! interchange isomorphism, and instance verifiers for the pentagon, the
//! unit-coherence identities and naturality of the associator.
//!
//! Because image paths concatenate strictly, the comparison squares a fully
//! weak construction would insert into the associator and the unitors vanish
//! here: those constraint cells are identity modifications, and their whole
//! content is that the identity really is a modification between the two
//! composites — a nontrivial equation whenever a pseudo functor is involved.

use crate::category::DoubleCategory;
use crate::cell::ObjId;
use crate::dbltrans::{
    check_modification, find_inverse, hcomp_double, hcomp_mod, identity_double,
    identity_modification, DoublePsNatTrans, Modification,
};
use crate::error::{DblError, Result};
use crate::expr::{vstack, SquareExpr};
use crate::functor::identity_functor;
use crate::report::Report;
use std::rc::Rc;

/// A constraint 3-cell of the structure, tagged by its role. The variants
/// without a payload are definitionally identity 3-cells.
#[derive(Clone)]
pub enum ConstraintCell {
    /// Rebracketing of a horizontal composite of three 2-cells.
    Associator(Modification),
    /// Left unitor for the horizontal composition of 2-cells.
    UnitorL(Modification),
    /// Right unitor for the horizontal composition of 2-cells.
    UnitorR(Modification),
    /// Interchange of a vertical-then-horizontal composite of four 2-cells.
    InterchangeXi(Modification),
    /// Pentagon mediator; an identity 3-cell by construction.
    Pi,
    /// Unit mediators for composable 1-cells; identity 3-cells.
    MuLambdaRho,
}

impl ConstraintCell {
    /// The underlying modification, when the variant carries one.
    pub fn modification(&self) -> Option<&Modification> {
        match self {
            ConstraintCell::Associator(m)
            | ConstraintCell::UnitorL(m)
            | ConstraintCell::UnitorR(m)
            | ConstraintCell::InterchangeXi(m) => Some(m),
            ConstraintCell::Pi | ConstraintCell::MuLambdaRho => None,
        }
    }
}

fn composable(outer: &DoublePsNatTrans, inner: &DoublePsNatTrans) -> Result<()> {
    if !Rc::ptr_eq(&outer.a1.f.src, &inner.a1.f.tgt) {
        return Err(DblError::CategoryMismatch {
            context: "2-cells are not horizontally composable".into(),
        });
    }
    Ok(())
}

/// The associator (ga . be) . al => ga . (be . al) for a horizontally
/// composable triple of 2-cells. At the path level the two composites have
/// identical component paths, so the associator is the identity
/// modification; that it satisfies the modification conditions against both
/// bracketings is the nontrivial content, checked by [`verify_pentagon`] and
/// by tests.
pub fn associator(
    ga: &DoublePsNatTrans,
    be: &DoublePsNatTrans,
    al: &DoublePsNatTrans,
) -> Result<Modification> {
    composable(ga, be)?;
    composable(be, al)?;
    let lhs = hcomp_double(&hcomp_double(ga, be)?, al)?;
    Ok(identity_modification(&lhs))
}

/// The unitor pair (l, r) for a 2-cell al: composing with the identity
/// 2-cell on the identity functor, on either side, gives back al on the
/// nose at the path level, so both unitors are identity modifications on
/// the respective composites.
pub fn unitors(al: &DoublePsNatTrans) -> Result<(Modification, Modification)> {
    let id_out = identity_double(Rc::new(identity_functor(al.a1.f.tgt.clone())))?;
    let id_in = identity_double(Rc::new(identity_functor(al.a1.f.src.clone())))?;
    let l = identity_modification(&hcomp_double(&id_out, al)?);
    let r = identity_modification(&hcomp_double(al, &id_in)?);
    Ok((l, r))
}

/// The interchange modification from ((al / ga) | (be / de)) to
/// ((al | be) / (ga | de)), for al, ga a vertically composable pair into
/// the middle category and be, de a vertically composable pair out of it.
/// Componentwise it is the naturality square of the vertical (respectively
/// horizontal) component family of `be` at the corresponding component of
/// `ga`, padded by identities on the outer component paths.
pub fn interchange(
    al: &DoublePsNatTrans,
    ga: &DoublePsNatTrans,
    be: &DoublePsNatTrans,
    de: &DoublePsNatTrans,
) -> Result<Modification> {
    composable(be, al)?;
    composable(de, ga)?;
    let src = al.src();
    let fp = &be.a1.f;
    let h = &ga.a1.g;
    let mut m0 = Vec::new();
    let mut m1 = Vec::new();
    for a in 0..src.object_count() as u32 {
        let a = ObjId(a);
        let ha = h.obj(a);
        m0.push(vstack(vec![
            SquareExpr::HId(fp.apply_v(al.a0.at(a))?),
            be.a0.delta_vpath(ga.a0.at(a))?,
            SquareExpr::HId(de.a0.at(ha).clone()),
        ]));
        m1.push(
            SquareExpr::VId(fp.apply_h(al.a1.at(a))?)
                .beside(be.a1.delta_hpath(ga.a1.at(a))?)
                .beside(SquareExpr::VId(de.a1.at(ha).clone())),
        );
    }
    Ok(Modification { m0, m1 })
}

/// Componentwise two-sided inverse of a modification, found by enumeration
/// over a tabulated target category.
pub fn invert_modification(m: &Modification, cat: &DoubleCategory) -> Result<Modification> {
    let mut m0 = Vec::new();
    for e in &m.m0 {
        m0.push(find_inverse(cat, e)?.ok_or_else(|| {
            DblError::invalid("vertical-family component has no two-sided inverse")
        })?);
    }
    let mut m1 = Vec::new();
    for e in &m.m1 {
        m1.push(find_inverse(cat, e)?.ok_or_else(|| {
            DblError::invalid("horizontal-family component has no two-sided inverse")
        })?);
    }
    Ok(Modification { m0, m1 })
}

fn summarize(rep: &mut Report, check: &str, witness: &str, inner: Report) {
    if inner.ok() {
        rep.pass(check, witness);
    } else {
        let mut names: Vec<String> =
            inner.failures().map(|f| format!("{} {}", f.check, f.witness)).collect();
        names.dedup();
        rep.fail(check, witness, format!("failing conditions: {}", names.join(", ")));
    }
}

/// Check that the identity modification really does mediate between two
/// composite 2-cells, recording one summary line.
fn check_route(rep: &mut Report, check: &str, witness: &str, from: &DoublePsNatTrans, to: &DoublePsNatTrans) {
    summarize(rep, check, witness, check_modification(&identity_modification(from), from, to));
}

/// Pentagon coherence on an instance: with the associator the identity
/// modification, the five bracketings of a horizontal composite of four
/// 2-cells must be mediated by the identity, which is checked against the
/// full set of modification conditions for each route.
pub fn verify_pentagon(
    de: &DoublePsNatTrans,
    ga: &DoublePsNatTrans,
    be: &DoublePsNatTrans,
    al: &DoublePsNatTrans,
) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let ba = hcomp_double(be, al)?;
        let gb = hcomp_double(ga, be)?;
        let dg = hcomp_double(de, ga)?;
        let x1 = hcomp_double(&hcomp_double(&dg, be)?, al)?;
        let routes = [
            ("((d.g).b).a", x1.clone()),
            ("(d.(g.b)).a", hcomp_double(&hcomp_double(de, &gb)?, al)?),
            ("(d.g).(b.a)", hcomp_double(&dg, &ba)?),
            ("d.((g.b).a)", hcomp_double(de, &hcomp_double(&gb, al)?)?),
            ("d.(g.(b.a))", hcomp_double(de, &hcomp_double(ga, &ba)?)?),
        ];
        for (name, x) in &routes[1..] {
            check_route(&mut rep, "pentagon-route", name, &x1, x);
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("pentagon-data", "global", e.to_string());
    }
    rep
}

/// Unit coherence on an instance: with associator and unitors the identity,
/// inserting an identity 2-cell on an identity functor in the middle, on
/// the outside or on the inside of a composite be . al must change nothing,
/// again checked against the full set of modification conditions.
pub fn verify_unit_coherence(be: &DoublePsNatTrans, al: &DoublePsNatTrans) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        composable(be, al)?;
        let id_mid = identity_double(Rc::new(identity_functor(al.a1.f.tgt.clone())))?;
        let id_out = identity_double(Rc::new(identity_functor(be.a1.f.tgt.clone())))?;
        let id_in = identity_double(Rc::new(identity_functor(al.a1.f.src.clone())))?;
        let ba = hcomp_double(be, al)?;
        let mid_l = hcomp_double(be, &hcomp_double(&id_mid, al)?)?;
        let mid_r = hcomp_double(&hcomp_double(be, &id_mid)?, al)?;
        check_route(&mut rep, "unit-coherence-middle", "rebracketed", &mid_l, &mid_r);
        check_route(&mut rep, "unit-coherence-middle", "collapsed", &mid_l, &ba);
        check_route(&mut rep, "unit-coherence-outer", "collapsed", &hcomp_double(&id_out, &ba)?, &ba);
        check_route(&mut rep, "unit-coherence-inner", "collapsed", &hcomp_double(&ba, &id_in)?, &ba);
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("unit-coherence-data", "global", e.to_string());
    }
    rep
}

/// Naturality of the associator on an instance: with the associator the
/// identity, the square it fills against a horizontally composable triple
/// of modifications commutes exactly when the two bracketings of their
/// horizontal composite agree componentwise.
pub fn verify_associator_naturality(
    c: &Modification,
    ga: &DoublePsNatTrans,
    b: &Modification,
    be: &DoublePsNatTrans,
    a: &Modification,
    al: &DoublePsNatTrans,
) -> Report {
    let mut rep = Report::new();
    let res = (|| -> Result<()> {
        let ba = hcomp_double(be, al)?;
        let gb = hcomp_double(ga, be)?;
        let lhs = hcomp_mod(c, ga, &hcomp_mod(b, be, a, al)?, &ba)?;
        let rhs = hcomp_mod(&hcomp_mod(c, ga, b, be)?, &gb, a, al)?;
        let cat = ga.tgt();
        for i in 0..lhs.m0.len() {
            let w = ObjId(i as u32).to_string();
            rep.eq_result("associator-naturality-v", w.clone(), cat.equal(&lhs.m0[i], &rhs.m0[i]));
            rep.eq_result("associator-naturality-h", w, cat.equal(&lhs.m1[i], &rhs.m1[i]));
        }
        Ok(())
    })();
    if let Err(e) = res {
        rep.fail("associator-naturality-data", "global", e.to_string());
    }
    rep
}
