//! Constraint-cell checks for the three-dimensional structure: associator
//! and unitors as identity modifications verified against both composites,
//! the interchange isomorphism with its inverse, pentagon and unit
//! coherence on instances, associator naturality, and corruption controls.

use dblcat::cell::Boundary;
use dblcat::dbltrans::{
    check_double, check_modification, hcomp_double, identity_double, identity_modification,
    transversal_comp_mod, vcomp_double, DoublePsNatTrans, Modification,
};
use dblcat::expr::SquareExpr;
use dblcat::functor::{check_functor_axioms, identity_functor, DoublePseudoFunctor, Inv};
use dblcat::transform::{HorizontalPsNatTrans, VerticalPsNatTrans};
use dblcat::tricat::{
    associator, interchange, invert_modification, unitors, verify_associator_naturality,
    verify_pentagon, verify_unit_coherence, ConstraintCell,
};
use dblcat::{fixtures, DoubleCategory, Eq3, HCellId, HPath, ObjId, SquareId, VCellId, VPath};
use std::collections::HashMap;
use std::rc::Rc;

fn assert_clean(rep: &dblcat::Report, label: &str) {
    assert!(rep.ok(), "{} report has failures:\n{}", label, rep);
}

/// Constant functor from the terminal category into the quintet of the
/// walking arrow, picking out one object.
fn constant_to_quintet(q: &Rc<DoubleCategory>, src: Rc<DoubleCategory>, obj: u32) -> DoublePseudoFunctor {
    DoublePseudoFunctor {
        src,
        tgt: q.clone(),
        obj_map: vec![ObjId(obj)],
        h_map: vec![HPath::id(ObjId(obj))],
        v_map: vec![VPath::id(ObjId(obj))],
        sq_map: vec![SquareExpr::VId(HPath::id(ObjId(obj)))],
        cmp_h: Default::default(),
        unit_h: Default::default(),
        cmp_v: Default::default(),
        unit_v: Default::default(),
    }
}

/// The thin quintet square with top and left the arrow and identity bottom
/// and right.
fn collapse_square(q: &Rc<DoubleCategory>) -> SquareExpr {
    let b = Boundary {
        top: HPath::one(ObjId(0), HCellId(2)),
        bottom: HPath::id(ObjId(1)),
        left: VPath::one(ObjId(0), VCellId(2)),
        right: VPath::id(ObjId(1)),
    };
    q.enumerate_squares(&b, 1).unwrap().into_iter().next().expect("quintet collapse square")
}

/// The walking arrow as a 2-cell between the two constant functors.
fn arrow_double(q: &Rc<DoubleCategory>) -> DoublePsNatTrans {
    let src = Rc::new(fixtures::terminal().unwrap());
    let f = Rc::new(constant_to_quintet(q, src.clone(), 0));
    let g = Rc::new(constant_to_quintet(q, src, 1));
    let ah = HPath::one(ObjId(0), HCellId(2));
    let av = VPath::one(ObjId(0), VCellId(2));
    let a1 = HorizontalPsNatTrans {
        f: f.clone(),
        g: g.clone(),
        comp: vec![ah.clone()],
        comp_sq: vec![SquareExpr::VId(ah.clone())],
        delta: vec![SquareExpr::VId(ah)],
    };
    let a0 = VerticalPsNatTrans {
        f,
        g,
        comp: vec![av.clone()],
        comp_sq: vec![SquareExpr::HId(av.clone())],
        delta: vec![SquareExpr::HId(av)],
    };
    let c = collapse_square(q);
    DoublePsNatTrans { a0, a1, t: vec![c.clone()], r: vec![c] }
}

/// A genuinely pseudo endofunctor on the parity category: identity on
/// cells, every comparison the nonidentity square.
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

/// A horizontally composable triple with every layer genuinely pseudo.
fn pseudo_triple() -> (DoublePsNatTrans, DoublePsNatTrans, DoublePsNatTrans) {
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let e = Rc::new(pseudo_endo(&f.tgt));
    let al = identity_double(f).unwrap();
    let be = identity_double(e.clone()).unwrap();
    let ga = identity_double(e).unwrap();
    (ga, be, al)
}

#[test]
fn pseudo_endofunctor_is_coherent() {
    let c = Rc::new(fixtures::parity().unwrap());
    assert_clean(&check_functor_axioms(&pseudo_endo(&c)), "pseudo endofunctor");
}

#[test]
fn associator_is_identity_on_strictly_composed_instances() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_double(idq.clone()).unwrap();
    let ga = identity_double(idq).unwrap();
    let a = associator(&ga, &be, &al).unwrap();
    let lhs = hcomp_double(&hcomp_double(&ga, &be).unwrap(), &al).unwrap();
    let rhs = hcomp_double(&ga, &hcomp_double(&be, &al).unwrap()).unwrap();
    assert_clean(&check_modification(&a, &lhs, &rhs), "associator forward");
    let inv = invert_modification(&a, &q).unwrap();
    assert_clean(&check_modification(&inv, &rhs, &lhs), "associator inverse");
    let cell = ConstraintCell::Associator(a);
    assert!(cell.modification().is_some());
}

#[test]
fn associator_over_pseudo_functors() {
    let (ga, be, al) = pseudo_triple();
    let cat = ga.tgt();
    let lhs = hcomp_double(&hcomp_double(&ga, &be).unwrap(), &al).unwrap();
    let rhs = hcomp_double(&ga, &hcomp_double(&be, &al).unwrap()).unwrap();
    assert_clean(&check_double(&lhs), "left-bracketed composite");
    assert_clean(&check_double(&rhs), "right-bracketed composite");
    let a = associator(&ga, &be, &al).unwrap();
    assert_clean(&check_modification(&a, &lhs, &rhs), "associator over pseudo");
    let inv = invert_modification(&a, cat).unwrap();
    assert_clean(&check_modification(&inv, &rhs, &lhs), "associator inverse over pseudo");
    // The stored inverse composes with the associator to the identity.
    let round = transversal_comp_mod(&a, &inv);
    let ident = identity_modification(&lhs);
    for i in 0..round.m0.len() {
        assert_eq!(cat.equal(&round.m0[i], &ident.m0[i]).unwrap(), Eq3::Equal);
        assert_eq!(cat.equal(&round.m1[i], &ident.m1[i]).unwrap(), Eq3::Equal);
    }
}

#[test]
fn unitors_mediate_both_unit_composites() {
    for al in [
        arrow_double(&Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap())),
        identity_double(Rc::new(fixtures::pseudo_parity_functor().unwrap())).unwrap(),
    ] {
        let (l, r) = unitors(&al).unwrap();
        let id_out = identity_double(Rc::new(identity_functor(al.a1.f.tgt.clone()))).unwrap();
        let id_in = identity_double(Rc::new(identity_functor(al.a1.f.src.clone()))).unwrap();
        let lc = hcomp_double(&id_out, &al).unwrap();
        let rc = hcomp_double(&al, &id_in).unwrap();
        assert_clean(&check_modification(&l, &lc, &al), "left unitor");
        assert_clean(&check_modification(&r, &rc, &al), "right unitor");
        let linv = invert_modification(&l, al.tgt()).unwrap();
        assert_clean(&check_modification(&linv, &al, &lc), "left unitor inverse");
    }
}

#[test]
fn interchange_mediates_the_two_composition_orders() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let ga = identity_double(al.a1.g.clone()).unwrap();
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_double(idq.clone()).unwrap();
    let de = identity_double(idq).unwrap();

    let x = hcomp_double(&vcomp_double(&be, &de).unwrap(), &vcomp_double(&al, &ga).unwrap()).unwrap();
    let y = vcomp_double(&hcomp_double(&be, &al).unwrap(), &hcomp_double(&de, &ga).unwrap()).unwrap();
    let m = interchange(&al, &ga, &be, &de).unwrap();
    assert_clean(&check_modification(&m, &x, &y), "interchange");
    let inv = invert_modification(&m, &q).unwrap();
    assert_clean(&check_modification(&inv, &y, &x), "interchange inverse");
    let round = transversal_comp_mod(&m, &inv);
    let ident = identity_modification(&x);
    for i in 0..round.m0.len() {
        assert_eq!(q.equal(&round.m0[i], &ident.m0[i]).unwrap(), Eq3::Equal);
        assert_eq!(q.equal(&round.m1[i], &ident.m1[i]).unwrap(), Eq3::Equal);
    }
}

#[test]
fn interchange_over_pseudo_functors() {
    let (_, be, al) = pseudo_triple();
    let ga = identity_double(al.a1.f.clone()).unwrap();
    let de = identity_double(be.a1.f.clone()).unwrap();
    let x = hcomp_double(&vcomp_double(&be, &de).unwrap(), &vcomp_double(&al, &ga).unwrap()).unwrap();
    let y = vcomp_double(&hcomp_double(&be, &al).unwrap(), &hcomp_double(&de, &ga).unwrap()).unwrap();
    let m = interchange(&al, &ga, &be, &de).unwrap();
    assert_clean(&check_modification(&m, &x, &y), "interchange over pseudo");
    let inv = invert_modification(&m, al.tgt()).unwrap();
    assert_clean(&check_modification(&inv, &y, &x), "interchange inverse over pseudo");
}

#[test]
fn pentagon_holds_on_instances() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_double(idq.clone()).unwrap();
    assert_clean(&verify_pentagon(&be, &be, &be, &al), "pentagon on the quintet");

    let (ga, be, al) = pseudo_triple();
    let de = identity_double(ga.a1.f.clone()).unwrap();
    assert_clean(&verify_pentagon(&de, &ga, &be, &al), "pentagon over pseudo functors");
}

#[test]
fn unit_coherence_holds_on_instances() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q));
    let be = identity_double(idq).unwrap();
    assert_clean(&verify_unit_coherence(&be, &al), "unit coherence on the quintet");

    let (_, be, al) = pseudo_triple();
    assert_clean(&verify_unit_coherence(&be, &al), "unit coherence over pseudo functors");
}

#[test]
fn associator_naturality_on_modification_triples() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q));
    let be = identity_double(idq.clone()).unwrap();
    let ga = identity_double(idq).unwrap();
    let rep = verify_associator_naturality(
        &identity_modification(&ga),
        &ga,
        &identity_modification(&be),
        &be,
        &identity_modification(&al),
        &al,
    );
    assert_clean(&rep, "associator naturality on the quintet");

    let (ga, be, al) = pseudo_triple();
    let rep = verify_associator_naturality(
        &identity_modification(&ga),
        &ga,
        &identity_modification(&be),
        &be,
        &identity_modification(&al),
        &al,
    );
    assert_clean(&rep, "associator naturality over pseudo functors");
}

#[test]
fn corrupted_associator_fails_modification_check() {
    let (ga, be, al) = pseudo_triple();
    let lhs = hcomp_double(&hcomp_double(&ga, &be).unwrap(), &al).unwrap();
    let rhs = hcomp_double(&ga, &hcomp_double(&be, &al).unwrap()).unwrap();
    let mut a = associator(&ga, &be, &al).unwrap();
    a.m1[0] = SquareExpr::Gen(SquareId(1));
    let rep = check_modification(&a, &lhs, &rhs);
    assert!(!rep.ok(), "parity-flipped associator must fail:\n{}", rep);
}

#[test]
fn non_globular_square_has_no_inverse() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let bad = Modification { m0: vec![collapse_square(&q)], m1: vec![] };
    assert!(invert_modification(&bad, &q).is_err());
}
