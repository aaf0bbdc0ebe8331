//! Double transformation checks: identity 2-cells, a nonidentity 2-cell
//! valued in the quintet category, both compositions, the globular variant
//! with its roundtrip, modifications, and corruption controls.

use dblcat::cell::Boundary;
use dblcat::dbltrans::{
    check_double, check_modification, check_theta, extract_r_theta, extract_t_theta, hcomp_double,
    hcomp_mod, identity_double, identity_modification, identity_theta, theta_to_double,
    transversal_comp_mod, vcomp_double, vcomp_mod, DoublePsNatTrans, Modification, ThetaTrans,
};
use dblcat::expr::SquareExpr;
use dblcat::functor::{identity_functor, DoublePseudoFunctor};
use dblcat::transform::{HorizontalPsNatTrans, VerticalPsNatTrans};
use dblcat::{fixtures, DoubleCategory, Eq3, HCellId, HPath, ObjId, VCellId, VPath};
use std::rc::Rc;

fn assert_clean(rep: &dblcat::Report, label: &str) {
    assert!(rep.ok(), "{} report has failures:\n{}", label, rep);
}

#[test]
fn identity_double_transformations_pass() {
    let cats = vec![
        fixtures::terminal().unwrap(),
        fixtures::parity().unwrap(),
        fixtures::quintet(&fixtures::walking_arrow()).unwrap(),
        fixtures::grid(2, 2).unwrap().cat,
    ];
    for c in cats {
        let f = Rc::new(identity_functor(Rc::new(c)));
        assert_clean(&check_double(&identity_double(f).unwrap()), "identity 2-cell");
    }
}

#[test]
fn identity_double_on_pseudo_functor_passes() {
    // Nonidentity functor comparisons make the composite and associativity
    // laws genuinely conjugated.
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    assert_clean(&check_double(&identity_double(f).unwrap()), "identity 2-cell over pseudo");
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

#[test]
fn arrow_double_transformation_passes() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    assert_clean(&check_double(&arrow_double(&q)), "arrow 2-cell");
}

#[test]
fn corrupted_r_square_fails_check() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let mut al = arrow_double(&q);
    // A square on entirely different cells cannot tie the components.
    al.r[0] = SquareExpr::VId(HPath::one(ObjId(0), HCellId(0)));
    let rep = check_double(&al);
    assert!(!rep.ok());
    let failed: Vec<&str> = rep.failures().map(|x| x.check.as_str()).collect();
    assert!(failed.contains(&"r-shape"), "expected r-shape failure, got {:?}", failed);
    assert!(
        failed.contains(&"r-interchange") || failed.contains(&"r-naturality"),
        "expected the r laws to fail, got {:?}",
        failed
    );
}

#[test]
fn horizontal_composition_of_double_transformations_passes() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_double(idq).unwrap();
    let c = hcomp_double(&be, &al).unwrap();
    assert_clean(&check_double(&c), "identity composed after arrow");
    // Unitality up to evaluation: components agree with the original.
    for (p, p2) in al.a1.comp.iter().zip(&c.a1.comp) {
        assert!(q.hpaths_eq(p, p2).unwrap());
    }
    for (e, e2) in al.t.iter().zip(&c.t) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }

    // And over a genuinely pseudo factor.
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let alp = identity_double(f.clone()).unwrap();
    let idp = Rc::new(identity_functor(f.tgt.clone()));
    let bep = identity_double(idp).unwrap();
    let cp = hcomp_double(&bep, &alp).unwrap();
    assert_clean(&check_double(&cp), "horizontal composite over pseudo");
}

#[test]
fn vertical_composition_is_unital_and_closed() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idg = identity_double(al.a1.g.clone()).unwrap();
    let c = vcomp_double(&al, &idg).unwrap();
    assert_clean(&check_double(&c), "arrow then identity");
    for (e, e2) in al.t.iter().zip(&c.t) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
    for (e, e2) in al.r.iter().zip(&c.r) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
    // Strict associativity of the vertical composition.
    let lhs = vcomp_double(&vcomp_double(&al, &idg).unwrap(), &idg).unwrap();
    let rhs = vcomp_double(&al, &vcomp_double(&idg, &idg).unwrap()).unwrap();
    for (e, e2) in lhs.t.iter().zip(&rhs.t) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
    for (e, e2) in lhs.r.iter().zip(&rhs.r) {
        assert_eq!(q.equal(e, e2).unwrap(), Eq3::Equal);
    }
}

fn arrow_theta(q: &Rc<DoubleCategory>) -> ThetaTrans {
    let al = arrow_double(q);
    ThetaTrans { a0: al.a0, a1: al.a1, theta: vec![collapse_square(q)] }
}

#[test]
fn globular_variant_roundtrip() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let th = arrow_theta(&q);
    assert_clean(&check_theta(&th), "globular arrow 2-cell");
    let al = theta_to_double(&th).unwrap();
    assert_clean(&check_double(&al), "expansion of the globular 2-cell");
    // Both extractions recover the collapse squares.
    let t_back = extract_t_theta(&al).unwrap();
    let r_back = extract_r_theta(&al).unwrap();
    for i in 0..th.theta.len() {
        assert_eq!(q.equal(&t_back[i], &th.theta[i]).unwrap(), Eq3::Equal);
        assert_eq!(q.equal(&r_back[i], &th.theta[i]).unwrap(), Eq3::Equal);
    }
}

#[test]
fn globular_identity_on_pseudo_functor() {
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let cat = f.tgt.clone();
    let th = identity_theta(f).unwrap();
    assert_clean(&check_theta(&th), "globular identity over pseudo");
    let al = theta_to_double(&th).unwrap();
    assert_clean(&check_double(&al), "expanded globular identity over pseudo");
    let t_back = extract_t_theta(&al).unwrap();
    let r_back = extract_r_theta(&al).unwrap();
    for i in 0..th.theta.len() {
        assert_eq!(cat.equal(&t_back[i], &th.theta[i]).unwrap(), Eq3::Equal);
        assert_eq!(cat.equal(&r_back[i], &th.theta[i]).unwrap(), Eq3::Equal);
    }
}

#[test]
fn identity_modification_passes_and_composes() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let m = identity_modification(&al);
    assert_clean(&check_modification(&m, &al, &al), "identity modification");

    // Transversal and vertical composition of identities stay identities up
    // to evaluation.
    let tr = transversal_comp_mod(&m, &m);
    assert_clean(&check_modification(&tr, &al, &al), "transversal composite");
    let idg = identity_double(al.a1.g.clone()).unwrap();
    let mg = identity_modification(&idg);
    let vc = vcomp_mod(&m, &mg);
    let alg = vcomp_double(&al, &idg).unwrap();
    assert_clean(&check_modification(&vc, &alg, &alg), "vertical composite");
}

#[test]
fn horizontal_composition_of_modifications_passes() {
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idq = Rc::new(identity_functor(q.clone()));
    let be = identity_double(idq).unwrap();
    let ma = identity_modification(&al);
    let mb = identity_modification(&be);
    let m = hcomp_mod(&mb, &be, &ma, &al).unwrap();
    let c = hcomp_double(&be, &al).unwrap();
    assert_clean(&check_modification(&m, &c, &c), "horizontal composite of identities");
}

#[test]
fn corrupted_modification_fails_mixed_condition() {
    let f = Rc::new(fixtures::pseudo_parity_functor().unwrap());
    let al = identity_double(f).unwrap();
    let mut m = identity_modification(&al);
    m.m1[0] = SquareExpr::Gen(dblcat::SquareId(1));
    let rep = check_modification(&m, &al, &al);
    assert!(!rep.ok());
    let failed: Vec<&str> = rep.failures().map(|x| x.check.as_str()).collect();
    assert!(failed.contains(&"mod-t"), "expected mod-t failure, got {:?}", failed);
}

#[test]
fn mismatched_pair_is_rejected() {
    // A 2-cell whose two component families live over different functors.
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let al = arrow_double(&q);
    let idf = Rc::new(identity_functor(q.clone()));
    let id2 = identity_double(idf).unwrap();
    let bad = DoublePsNatTrans { a0: id2.a0, a1: al.a1.clone(), t: al.t.clone(), r: al.r.clone() };
    let rep = check_double(&bad);
    assert!(rep.failures().any(|x| x.check == "pair-functors"));

    let badm = Modification { m0: vec![], m1: vec![] };
    let rep = check_modification(&badm, &al, &al);
    assert!(!rep.ok());
}
