//! Pseudonatural transformation checks: identities, a nonidentity
//! transformation valued in the quintet category, compositions, whiskering,
//! the derived exchange identities, and corruption controls.

use dblcat::expr::SquareExpr;
use dblcat::functor::{identity_functor, DoublePseudoFunctor};
use dblcat::transform::{
    check_horizontal, check_vertical, hcomp_horizontal, hcomp_vertical, identity_horizontal,
    identity_vertical, vcomp_horizontal, vcomp_vertical, verify_identity, whisker_delta,
    HorizontalPsNatTrans, IdentityName,
};
use dblcat::{fixtures, DoubleCategory, Eq3, HPath, ObjId, VPath};
use std::rc::Rc;

fn assert_clean(rep: &dblcat::Report, label: &str) {
    assert!(rep.ok(), "{} report has failures:\n{}", label, rep);
}

#[test]
fn identity_transformations_pass() {
    let cats = vec![
        fixtures::terminal().unwrap(),
        fixtures::parity().unwrap(),
        fixtures::quintet(&fixtures::walking_arrow()).unwrap(),
        fixtures::grid(2, 2).unwrap().cat,
    ];
    for c in cats {
        let f = Rc::new(identity_functor(Rc::new(c)));
        assert_clean(&check_horizontal(&identity_horizontal(f.clone()).unwrap()), "horizontal identity");
        assert_clean(&check_vertical(&identity_vertical(f).unwrap()), "vertical identity");
    }
}

#[test]
fn identity_transformation_on_pseudo_functor_passes() {
    // Exercises the tab-source functoriality axioms with genuinely
    // nonidentity functor comparisons.
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    assert_clean(&check_horizontal(&identity_horizontal(f.clone()).unwrap()), "id trans on pseudo");
    assert_clean(&check_vertical(&identity_vertical(f).unwrap()), "id trans on pseudo");
}

/// Two constant functors from the terminal category into the quintet of the
/// walking arrow, picking out its two objects.
fn constant_to_quintet(q: &Rc<DoubleCategory>, obj: u32) -> DoublePseudoFunctor {
    let src = Rc::new(fixtures::terminal().unwrap());
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

/// The walking arrow itself as a horizontal transformation between the two
/// constant functors.
fn arrow_transformation(q: &Rc<DoubleCategory>) -> HorizontalPsNatTrans {
    let f = constant_to_quintet(q, 0);
    let src = f.src.clone();
    let mut g = constant_to_quintet(q, 1);
    g.src = src;
    let a = HPath::one(ObjId(0), dblcat::HCellId(2));
    HorizontalPsNatTrans {
        f: Rc::new(f),
        g: Rc::new(g),
        comp: vec![a.clone()],
        comp_sq: vec![SquareExpr::VId(a.clone())],
        delta: vec![SquareExpr::VId(a)],
    }
}

#[test]
fn arrow_transformation_passes() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_transformation(&q);
    assert_clean(&check_horizontal(&al), "arrow transformation");
}

#[test]
fn corrupted_delta_fails_functoriality() {
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let mut al = identity_horizontal(f).unwrap();
    al.delta[0] = SquareExpr::Gen(dblcat::SquareId(1));
    let rep = check_horizontal(&al);
    assert!(!rep.ok());
    let failed: Vec<&str> = rep.failures().map(|x| x.check.as_str()).collect();
    assert!(
        failed.contains(&"delta-functoriality") && failed.contains(&"delta-unit"),
        "expected delta axiom failures, got {:?}",
        failed
    );
}

#[test]
fn vertical_composition_is_unital_and_associative() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_transformation(&q);
    let idg = identity_horizontal(al.g.clone()).unwrap();
    let composed = vcomp_horizontal(&al, &idg).unwrap();
    assert_clean(&check_horizontal(&composed), "al . id");
    // Components agree with al up to evaluation.
    for (p, p2) in al.comp.iter().zip(&composed.comp) {
        assert!(q.hpaths_eq(p, p2).unwrap());
    }
    for (e, e2) in al.delta.iter().zip(&composed.delta) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
    // Associativity on a triple.
    let lhs = vcomp_horizontal(&vcomp_horizontal(&al, &idg).unwrap(), &idg).unwrap();
    let rhs = vcomp_horizontal(&al, &vcomp_horizontal(&idg, &idg).unwrap()).unwrap();
    for (e, e2) in lhs.comp_sq.iter().zip(&rhs.comp_sq) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
    for (e, e2) in lhs.delta.iter().zip(&rhs.delta) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
}

#[test]
fn horizontal_composition_passes_check() {
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let al = identity_horizontal(f.clone()).unwrap();
    let idp = Rc::new(identity_functor(f.tgt.clone()));
    let be = identity_horizontal(idp).unwrap();
    let c = hcomp_horizontal(&be, &al).unwrap();
    assert_clean(&check_horizontal(&c), "hcomp of identities over pseudo");

    let alv = identity_vertical(f.clone()).unwrap();
    let idp = Rc::new(identity_functor(f.tgt.clone()));
    let bev = identity_vertical(idp).unwrap();
    let cv = hcomp_vertical(&bev, &alv).unwrap();
    assert_clean(&check_vertical(&cv), "hcomp of vertical identities over pseudo");
}

#[test]
fn vertical_dual_compositions_pass() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let idq = Rc::new(identity_functor(q));
    let alv = identity_vertical(idq).unwrap();
    let c = vcomp_vertical(&alv, &alv).unwrap();
    assert_clean(&check_vertical(&c), "vcomp_vertical of identities");
}

#[test]
fn whiskering_by_pseudo_functor_passes() {
    let h = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let idt = Rc::new(identity_functor(h.src.clone()));
    let al = identity_horizontal(idt).unwrap();
    let w = whisker_delta(&h, &al).unwrap();
    assert_clean(&check_horizontal(&w), "whisker by pseudo functor");
    // Whiskering by the identity leaves the transformation unchanged.
    let idb = Rc::new(identity_functor(al.f.tgt.clone()));
    let w2 = whisker_delta(&idb, &al).unwrap();
    assert_eq!(w2.comp, al.comp);
}

#[test]
fn exchange_identities_hold() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_transformation(&q);
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_horizontal(idq.clone()).unwrap();
    let ga = identity_horizontal(idq).unwrap();
    assert_clean(&verify_identity(IdentityName::Axiom4, &al, &be, None), "whisker exchange");
    assert_clean(&verify_identity(IdentityName::Cor, &al, &be, None), "whisker exchange corollary");
    assert_clean(&verify_identity(IdentityName::ThreeDs, &al, &be, Some(&ga)), "triple exchange");
}

#[test]
fn exchange_identities_detect_corruption() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_transformation(&q);
    let idq = Rc::new(identity_functor(q));
    let mut be = identity_horizontal(idq).unwrap();
    // Outer delta at the arrow replaced by a square on the wrong 1-cell.
    be.delta[2] = SquareExpr::VId(HPath::one(ObjId(0), dblcat::HCellId(0)));
    let rep = verify_identity(IdentityName::Axiom4, &al, &be, None);
    assert!(!rep.ok(), "corrupted outer delta must break the exchange:\n{}", rep);
}
