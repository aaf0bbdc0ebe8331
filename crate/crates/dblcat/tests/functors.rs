//! Double pseudo functor checks: identity functors, a genuinely pseudo
//! functor into the parity category, composition, and corruption controls.

use dblcat::expr::SquareExpr;
use dblcat::functor::{check_functor_axioms, compose_functors, identity_functor, Inv};
use dblcat::{fixtures, DoubleCategory, SquareId};
use std::rc::Rc;

fn assert_clean(rep: &dblcat::Report, label: &str) {
    assert!(rep.ok(), "{} report has failures:\n{}", label, rep);
}

#[test]
fn identity_functors_satisfy_axioms() {
    let cats: Vec<DoubleCategory> = vec![
        fixtures::terminal().unwrap(),
        fixtures::parity().unwrap(),
        fixtures::quintet(&fixtures::walking_arrow()).unwrap(),
        fixtures::grid(2, 2).unwrap().cat,
    ];
    for c in cats {
        let c = Rc::new(c);
        let f = identity_functor(c);
        assert!(f.is_strict());
        let rep = check_functor_axioms(&f);
        assert_clean(&rep, "identity functor");
    }
}

#[test]
fn identity_functor_apply_commutes_with_normalize() {
    let g = fixtures::grid(2, 2).unwrap();
    let e = SquareExpr::Gen(g.sq(0, 0))
        .beside(SquareExpr::Gen(g.sq(0, 1)))
        .above(SquareExpr::Gen(g.sq(1, 0)).beside(SquareExpr::Gen(g.sq(1, 1))));
    let c = Rc::new(g.cat);
    let f = identity_functor(c.clone());
    let img = f.apply_sq(&e).unwrap();
    assert_eq!(c.normalize(&img).unwrap(), c.normalize(&e).unwrap());
}

#[test]
fn pseudo_functor_into_parity_is_coherent() {
    let f = fixtures::pseudo_parity_functor().unwrap();
    assert!(!f.is_strict());
    let rep = check_functor_axioms(&f);
    assert_clean(&rep, "pseudo parity functor");
}

#[test]
fn corrupted_unit_comparison_fails_unit_coherence() {
    let mut f = fixtures::pseudo_parity_functor().unwrap();
    let e = || Inv { fwd: SquareExpr::Gen(SquareId(0)), bwd: SquareExpr::Gen(SquareId(0)) };
    f.unit_h.insert(dblcat::ObjId(0), e());
    let rep = check_functor_axioms(&f);
    assert!(!rep.ok());
    let failed: Vec<&str> = rep.failures().map(|x| x.check.as_str()).collect();
    assert!(failed.contains(&"hunit-left"), "expected hunit-left failure, got {:?}", failed);
}

#[test]
fn corrupted_comparison_fails_invertibility() {
    let mut f = fixtures::pseudo_parity_functor().unwrap();
    // Forward n with backward e is not a two-sided inverse pair.
    f.cmp_h.insert(
        (dblcat::HCellId(0), dblcat::HCellId(0)),
        Inv { fwd: SquareExpr::Gen(SquareId(1)), bwd: SquareExpr::Gen(SquareId(0)) },
    );
    let rep = check_functor_axioms(&f);
    assert!(rep.failures().any(|x| x.check == "cmp-invertible"));
}

#[test]
fn composition_with_identity_preserves_axioms() {
    let f = fixtures::pseudo_parity_functor().unwrap();
    let idt = identity_functor(f.tgt.clone());
    let ids = identity_functor(f.src.clone());
    let left = compose_functors(&idt, &f).unwrap();
    let right = compose_functors(&f, &ids).unwrap();
    assert_clean(&check_functor_axioms(&left), "id . F");
    assert_clean(&check_functor_axioms(&right), "F . id");
    // Same data on generators.
    assert_eq!(left.obj_map, f.obj_map);
    assert_eq!(right.h_map, f.h_map);
}

#[test]
fn strict_functor_free_to_quintet() {
    // Send the free 1h-generator to the arrow of the quintet category and
    // its squares (none) accordingly; rule preservation is vacuous.
    let free = Rc::new(DoubleCategory::Free(fixtures::free_on_one_hcell().unwrap()));
    let q = Rc::new(fixtures::quintet(&fixtures::walking_arrow()).unwrap());
    let a = dblcat::HCellId(2); // the non-identity arrow
    let f = dblcat::functor::DoublePseudoFunctor {
        src: free.clone(),
        tgt: q.clone(),
        obj_map: vec![dblcat::ObjId(0), dblcat::ObjId(1)],
        h_map: vec![dblcat::HPath::one(dblcat::ObjId(0), a)],
        v_map: Vec::new(),
        sq_map: Vec::new(),
        cmp_h: Default::default(),
        unit_h: Default::default(),
        cmp_v: Default::default(),
        unit_v: Default::default(),
    };
    assert_clean(&check_functor_axioms(&f), "free-to-quintet");
    let p = dblcat::HPath { start: dblcat::ObjId(0), cells: vec![dblcat::HCellId(0)] };
    let img = f.apply_h(&p).unwrap();
    assert_eq!(q.as_tab().unwrap().eval_h(&img).unwrap(), a);
}
