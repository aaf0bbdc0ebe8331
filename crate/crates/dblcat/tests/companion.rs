//! Companion-pair checks: identity connections, the quintet arrow
//! companion, pushforward along functors, the vertical/horizontal
//! conversion with its exchange identities and round trips, the explicit
//! delta inverse, the embedding of vertical transformations as 2-cells,
//! and corruption controls.

use dblcat::companion::{
    check_companion, correspondence_check, delta_companion_inverse, embed_psdbl_2cell,
    functor_image_companion, identity_connection, roundtrip_horizontal,
    roundtrip_vertical, verify_companion_exchange, verify_delta_companion_inverse,
    vertical_to_horizontal, CompanionPair, Connection,
};
use dblcat::dbltrans::check_double;
use dblcat::expr::SquareExpr;
use dblcat::functor::{compose_functors, identity_functor, DoublePseudoFunctor, Inv};
use dblcat::transform::{check_horizontal, check_vertical, identity_vertical};
use dblcat::{fixtures, Boundary, DoubleCategory, Eq3, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use std::collections::HashMap;
use std::rc::Rc;

fn assert_clean(rep: &dblcat::Report, label: &str) {
    assert!(rep.ok(), "{} report has failures:\n{}", label, rep);
}

/// The quintet square with the stated one-generator boundary.
fn quintet_square(q: &DoubleCategory, top: u32, left: u32, bottom: u32, right: u32) -> SquareExpr {
    let h = |o: u32, c: u32| {
        if c == u32::MAX {
            HPath::id(ObjId(o))
        } else {
            HPath::one(ObjId(o), HCellId(c))
        }
    };
    let v = |o: u32, c: u32| {
        if c == u32::MAX {
            VPath::id(ObjId(o))
        } else {
            VPath::one(ObjId(o), VCellId(c))
        }
    };
    // Cell 2 runs 0 -> 1; identities stay at their object.
    let obj_of = |c: u32, tgt: bool| if c == 2 { if tgt { 1 } else { 0 } } else { c };
    let b = Boundary {
        top: h(obj_of(top, false), top),
        bottom: h(obj_of(bottom, false), bottom),
        left: v(obj_of(left, false), left),
        right: v(obj_of(top, true), right),
    };
    q.enumerate_squares(&b, 1).unwrap().into_iter().next().expect("quintet square")
}

/// Companion of the vertical arrow in the quintet of the walking arrow.
fn arrow_companion(q: &DoubleCategory) -> CompanionPair {
    CompanionPair {
        u: VCellId(2),
        u_star: HPath::one(ObjId(0), HCellId(2)),
        eps: quintet_square(q, 2, 2, 1, 1),
        eta: quintet_square(q, 0, 0, 2, 2),
    }
}

/// A nonidentity companion of the parity identity 1v-cell: both squares
/// the nonidentity square, which absorbs itself on both sides.
fn twisted_parity_companion() -> CompanionPair {
    CompanionPair {
        u: VCellId(0),
        u_star: HPath::one(ObjId(0), HCellId(0)),
        eps: SquareExpr::Gen(SquareId(1)),
        eta: SquareExpr::Gen(SquareId(1)),
    }
}

/// A genuinely pseudo endofunctor on the parity category.
fn pseudo_endo(c: &Rc<DoubleCategory>) -> DoublePseudoFunctor {
    let n = || Inv { fwd: SquareExpr::Gen(SquareId(1)), bwd: SquareExpr::Gen(SquareId(1)) };
    DoublePseudoFunctor {
        src: c.clone(),
        tgt: c.clone(),
        obj_map: vec![ObjId(0)],
        h_map: vec![HPath::one(ObjId(0), HCellId(0))],
        v_map: vec![VPath::one(ObjId(0), VCellId(0))],
        sq_map: vec![SquareExpr::Gen(SquareId(0)), SquareExpr::Gen(SquareId(1))],
        cmp_h: HashMap::from([((HCellId(0), HCellId(0)), n())]),
        unit_h: HashMap::from([(ObjId(0), n())]),
        cmp_v: HashMap::from([((VCellId(0), VCellId(0)), n())]),
        unit_v: HashMap::from([(ObjId(0), n())]),
    }
}

#[test]
fn identity_connections_pass() {
    for cat in [
        fixtures::terminal().unwrap(),
        fixtures::parity().unwrap(),
        fixtures::quintet(&fixtures::walking_arrow()).unwrap(),
    ] {
        let conn = identity_connection(&cat).unwrap();
        for pair in conn.pairs.values() {
            assert_clean(&check_companion(pair, &cat), "identity companion");
        }
    }
}

#[test]
fn quintet_arrow_companion_passes_and_swap_fails() {
    let q = fixtures::quintet(&fixtures::walking_arrow()).unwrap();
    let c = arrow_companion(&q);
    assert_clean(&check_companion(&c, &q), "arrow companion");

    let swapped = CompanionPair { u: c.u, u_star: c.u_star.clone(), eps: c.eta.clone(), eta: c.eps.clone() };
    let rep = check_companion(&swapped, &q);
    assert!(!rep.ok(), "swapped collapse and expand squares must fail:\n{}", rep);
}

#[test]
fn twisted_parity_companion_passes() {
    let p = fixtures::parity().unwrap();
    assert_clean(&check_companion(&twisted_parity_companion(), &p), "twisted companion");
}

#[test]
fn functor_image_of_a_companion_is_a_companion() {
    // Identity functor: plain images.
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let idq = identity_functor(q.clone());
    let img = functor_image_companion(&idq, &arrow_companion(&q)).unwrap();
    assert_clean(&check_companion(&img, &q), "identity-functor image");

    // Pseudo endofunctor on parity: the unit corrections matter.
    let p = Rc::new(fixtures::parity().unwrap());
    let e = pseudo_endo(&p);
    let img = functor_image_companion(&e, &twisted_parity_companion()).unwrap();
    assert_clean(&check_companion(&img, &p), "pseudo image of the twisted companion");
    let img = functor_image_companion(&e, identity_connection(&p).unwrap().get(ObjId(0)).unwrap()).unwrap();
    assert_clean(&check_companion(&img, &p), "pseudo image of the identity companion");
}

#[test]
fn functor_image_commutes_with_composition() {
    // Composite functors keep only the outer image of the inner comparison
    // data, so the pushforward factors exactly when the outer layer has
    // strict units; the identity outer functor is that case.
    let p = Rc::new(fixtures::parity().unwrap());
    let e = Rc::new(pseudo_endo(&p));
    let idp = Rc::new(identity_functor(p.clone()));
    let comp = compose_functors(&idp, &e).unwrap();
    let c = twisted_parity_companion();
    let via_composite = functor_image_companion(&comp, &c).unwrap();
    let via_steps = functor_image_companion(&idp, &functor_image_companion(&e, &c).unwrap()).unwrap();
    assert_eq!(via_composite.u, via_steps.u);
    assert_eq!(p.equal(&via_composite.eps, &via_steps.eps).unwrap(), Eq3::Equal);
    assert_eq!(p.equal(&via_composite.eta, &via_steps.eta).unwrap(), Eq3::Equal);
    // Either way the result is a companion pair.
    assert_clean(&check_companion(&via_composite, &p), "composite image companion");
}

/// The vertical side of the walking-arrow 2-cell: constant functors from
/// the terminal category and the vertical arrow as component.
fn arrow_vertical(q: &Rc<DoubleCategory>) -> dblcat::transform::VerticalPsNatTrans {
    let src = Rc::new(fixtures::terminal().unwrap());
    let mk = |obj: u32, s: Rc<DoubleCategory>| DoublePseudoFunctor {
        src: s,
        tgt: q.clone(),
        obj_map: vec![ObjId(obj)],
        h_map: vec![HPath::id(ObjId(obj))],
        v_map: vec![VPath::id(ObjId(obj))],
        sq_map: vec![SquareExpr::VId(HPath::id(ObjId(obj)))],
        cmp_h: Default::default(),
        unit_h: Default::default(),
        cmp_v: Default::default(),
        unit_v: Default::default(),
    };
    let f = Rc::new(mk(0, src.clone()));
    let g = Rc::new(mk(1, src));
    let av = VPath::one(ObjId(0), VCellId(2));
    dblcat::transform::VerticalPsNatTrans {
        f,
        g,
        comp: vec![av.clone()],
        comp_sq: vec![SquareExpr::HId(av.clone())],
        delta: vec![SquareExpr::HId(av)],
    }
}

/// Connection assigning the arrow companion to the single source object.
fn arrow_connection(q: &DoubleCategory) -> Connection {
    Connection { pairs: HashMap::from([(ObjId(0), arrow_companion(q))]) }
}

#[test]
fn conversion_and_exchange_identities_on_the_quintet() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let a0 = arrow_vertical(&q);
    assert_clean(&check_vertical(&a0), "vertical arrow");
    let conn = arrow_connection(&q);
    let a1 = vertical_to_horizontal(&a0, &conn).unwrap();
    assert_clean(&check_horizontal(&a1), "derived horizontal arrow");
    assert_clean(&verify_companion_exchange(&a0, &conn), "exchange identities");
    assert_clean(&roundtrip_vertical(&a0, &conn), "vertical round trip");
    assert_clean(&roundtrip_horizontal(&a1, &conn), "horizontal round trip");
}

#[test]
fn conversion_over_pseudo_functors_with_twisted_connection() {
    let p = Rc::new(fixtures::parity().unwrap());
    let e = Rc::new(pseudo_endo(&p));
    let a0 = identity_vertical(e).unwrap();
    let conn = Connection { pairs: HashMap::from([(ObjId(0), twisted_parity_companion())]) };
    let a1 = vertical_to_horizontal(&a0, &conn).unwrap();
    assert_clean(&check_horizontal(&a1), "twisted horizontal over pseudo");
    assert_clean(&verify_companion_exchange(&a0, &conn), "twisted exchange identities");
    assert_clean(&roundtrip_vertical(&a0, &conn), "twisted vertical round trip");
    assert_clean(&roundtrip_horizontal(&a1, &conn), "twisted horizontal round trip");
}

#[test]
fn mismatched_connection_is_rejected_or_fails() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let a0 = arrow_vertical(&q);
    // No entry for the object at all.
    let empty = Connection::default();
    assert!(vertical_to_horizontal(&a0, &empty).is_err());
    // An entry whose companion belongs to a different 1v-cell breaks the
    // derived data.
    let wrong = Connection {
        pairs: HashMap::from([(ObjId(0), identity_connection(&q).unwrap().get(ObjId(0)).unwrap().clone())]),
    };
    let rep = roundtrip_vertical(&a0, &wrong);
    assert!(!rep.ok(), "wrong companion must break the round trip:\n{}", rep);
}

#[test]
fn delta_inverse_at_companion_paths() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let idq = Rc::new(identity_functor(q.clone()));
    let a0 = identity_vertical(idq).unwrap();
    let conn = identity_connection(&q).unwrap();
    let a1 = vertical_to_horizontal(&a0, &conn).unwrap();
    let pair = arrow_companion(&q);
    let inv = delta_companion_inverse(&a1, &pair).unwrap();
    let d = a1.delta_hpath(&pair.u_star).unwrap();
    assert!(q.boundary(&inv).is_ok());
    assert!(q.boundary(&d).is_ok());
    assert_clean(&verify_delta_companion_inverse(&a1, &pair), "delta inverse on the quintet");

    let p = Rc::new(fixtures::parity().unwrap());
    let e = Rc::new(pseudo_endo(&p));
    let a0 = identity_vertical(e).unwrap();
    let conn = Connection { pairs: HashMap::from([(ObjId(0), twisted_parity_companion())]) };
    let a1 = vertical_to_horizontal(&a0, &conn).unwrap();
    assert_clean(
        &verify_delta_companion_inverse(&a1, &twisted_parity_companion()),
        "delta inverse over pseudo with the twisted companion",
    );
}

#[test]
fn embedded_vertical_transformation_is_a_valid_2cell() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let a0 = arrow_vertical(&q);
    let conn = arrow_connection(&q);
    let al = embed_psdbl_2cell(&a0, &conn).unwrap();
    assert_clean(&check_double(&al), "embedded arrow 2-cell");
    assert_clean(&correspondence_check(&a0, &conn), "tying correspondence");

    let p = Rc::new(fixtures::parity().unwrap());
    let e = Rc::new(pseudo_endo(&p));
    let a0 = identity_vertical(e).unwrap();
    let conn = Connection { pairs: HashMap::from([(ObjId(0), twisted_parity_companion())]) };
    let al = embed_psdbl_2cell(&a0, &conn).unwrap();
    assert_clean(&check_double(&al), "embedded twisted 2-cell over pseudo");
    assert_clean(&correspondence_check(&a0, &conn), "twisted tying correspondence");
}

#[test]
fn corrupted_naturality_breaks_all_three_layers_together() {
    let p = Rc::new(fixtures::parity().unwrap());
    let e = Rc::new(pseudo_endo(&p));
    let mut a0 = identity_vertical(e).unwrap();
    a0.comp_sq[0] = SquareExpr::Gen(SquareId(1));
    let conn = Connection { pairs: HashMap::from([(ObjId(0), twisted_parity_companion())]) };
    let rep_v = check_vertical(&a0);
    assert!(!rep_v.ok(), "corrupted vertical naturality must fail:\n{}", rep_v);
    let a1 = vertical_to_horizontal(&a0, &conn).unwrap();
    let rep_h = check_horizontal(&a1);
    assert!(!rep_h.ok(), "derived horizontal transformation must fail:\n{}", rep_h);
    let al = embed_psdbl_2cell(&a0, &conn).unwrap();
    let rep_d = check_double(&al);
    assert!(
        rep_d.failures().any(|x| x.check.starts_with("t-")),
        "embedded 2-cell must fail a tying condition:\n{}",
        rep_d
    );
}
