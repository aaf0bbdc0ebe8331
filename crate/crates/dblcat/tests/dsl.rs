//! Manifest language: golden-file round trips, resolution against the
//! built-in categories, command semantics and exit codes, and the CLI
//! binary end to end.

use dblcat::dsl::{
    self, parse, parse_expr, print_expr, print_manifest, Command, DslError, Expr, RenderFormat,
    RunOpts,
};
use dblcat::{fixtures, HCellId, ObjId, SquareId, VCellId};
use std::path::PathBuf;
use std::process::Command as Proc;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests")
}

fn read_manifest(name: &str) -> String {
    let p = manifest_dir().join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("reading {}: {}", p.display(), e))
}

fn run_file(name: &str, cmd: &Command, opts: &RunOpts) -> dsl::Outcome {
    let man = parse(&read_manifest(name)).expect("golden manifest parses");
    dsl::run(&man, cmd, opts)
}

#[test]
fn empty_manifest_parses_to_no_declarations() {
    assert_eq!(parse("").unwrap().decls.len(), 0);
    assert_eq!(parse(&read_manifest("empty.dcm")).unwrap().decls.len(), 0);
}

#[test]
fn golden_files_round_trip_through_the_printer() {
    for name in [
        "quintet.dcm",
        "free_arrow_pair.dcm",
        "grid2.dcm",
        "empty.dcm",
        "bad_corner.dcm",
        "broken_functor.dcm",
    ] {
        let m = parse(&read_manifest(name)).unwrap_or_else(|e| panic!("{}: {}", name, e));
        let printed = print_manifest(&m);
        let reparsed = parse(&printed).unwrap_or_else(|e| panic!("{} reprint: {}", name, e));
        assert_eq!(reparsed, m, "{}: parse(print(m)) != m", name);
        assert_eq!(print_manifest(&reparsed), printed, "{}: printer not idempotent", name);
    }
}

#[test]
fn quintet_golden_file_matches_the_builtin_tables() {
    let man = parse(&read_manifest("quintet.dcm")).unwrap();
    let env = dsl::resolve(&man, &RunOpts::default()).unwrap();
    let golden = &env.category("Q").expect("Q resolves").cat;
    let builtin = fixtures::quintet(&fixtures::walking_arrow()).unwrap();
    let (g, b) = (golden.as_tab().unwrap(), builtin.as_tab().unwrap());
    assert_eq!(g.data.objects.len(), b.data.objects.len());
    assert_eq!(g.data.hcells.len(), b.data.hcells.len());
    assert_eq!(g.data.vcells.len(), b.data.vcells.len());
    assert_eq!(g.data.squares.len(), b.data.squares.len());

    // Both categories are thin over distinct boundaries, so matching cells
    // by endpoints and squares by boundary gives the unique comparison.
    let hmap: Vec<HCellId> = g
        .data
        .hcells
        .iter()
        .map(|h| {
            let i = b
                .data
                .hcells
                .iter()
                .position(|c| c.src == h.src && c.tgt == h.tgt)
                .expect("matching 1h-cell");
            HCellId(i as u32)
        })
        .collect();
    let vmap: Vec<VCellId> = g
        .data
        .vcells
        .iter()
        .map(|v| {
            let i = b
                .data
                .vcells
                .iter()
                .position(|c| c.src == v.src && c.tgt == v.tgt)
                .expect("matching 1v-cell");
            VCellId(i as u32)
        })
        .collect();
    let smap: Vec<SquareId> = g
        .data
        .squares
        .iter()
        .map(|q| {
            let top = hmap[q.top.0 as usize];
            let bottom = hmap[q.bottom.0 as usize];
            let left = vmap[q.left.0 as usize];
            let right = vmap[q.right.0 as usize];
            let i = b
                .data
                .squares
                .iter()
                .position(|c| {
                    c.top == top && c.bottom == bottom && c.left == left && c.right == right
                })
                .expect("matching square");
            SquareId(i as u32)
        })
        .collect();
    for (&(x, y), &z) in &g.data.h_comp {
        assert_eq!(
            b.data.h_comp[&(hmap[x.0 as usize], hmap[y.0 as usize])],
            hmap[z.0 as usize]
        );
    }
    assert_eq!(g.data.h_comp.len(), b.data.h_comp.len());
    for (&(x, y), &z) in &g.data.sq_h {
        assert_eq!(b.data.sq_h[&(smap[x.0 as usize], smap[y.0 as usize])], smap[z.0 as usize]);
    }
    assert_eq!(g.data.sq_h.len(), b.data.sq_h.len());
    for (&(x, y), &z) in &g.data.sq_v {
        assert_eq!(b.data.sq_v[&(smap[x.0 as usize], smap[y.0 as usize])], smap[z.0 as usize]);
    }
    assert_eq!(g.data.sq_v.len(), b.data.sq_v.len());
}

#[test]
fn mismatched_square_corners_are_a_type_error() {
    let man = parse(&read_manifest("bad_corner.dcm")).unwrap();
    match dsl::resolve(&man, &RunOpts::default()) {
        Err(DslError::Type { detail, .. }) => {
            assert!(detail.contains("mismatched corner objects"), "{}", detail)
        }
        other => panic!("expected a type error, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    match parse("category X bogus\n") {
        Err(DslError::Parse { line: 1, col, .. }) => assert!(col > 1),
        other => panic!("expected a parse error, got {:?}", other.map(|_| ())),
    }
    match parse("category X free {\n  objects a\n  oops\n}\n") {
        Err(DslError::Parse { line: 3, .. }) => {}
        other => panic!("expected a parse error on line 3, got {:?}", other.map(|_| ())),
    }
    // An unclosed block is a parse error, not a hang.
    assert!(matches!(parse("category X free {\n  objects a\n"), Err(DslError::Parse { .. })));
}

#[test]
fn expression_precedence_and_round_trip() {
    // `/` binds tighter than `|`.
    let e = parse_expr("a | b / c").unwrap();
    assert_eq!(
        e,
        Expr::HComp(
            Box::new(Expr::Gen("a".into())),
            Box::new(Expr::VComp(Box::new(Expr::Gen("b".into())), Box::new(Expr::Gen("c".into()))))
        )
    );
    for text in [
        "a | b / c",
        "(a | b) / c",
        "a / (b / c)",
        "1h(A) | Idv(f.g) / Idh(u)",
        "a | (b | c)",
        "1v(X)",
    ] {
        let e = parse_expr(text).unwrap();
        assert_eq!(print_expr(&e), text, "canonical form differs");
        assert_eq!(parse_expr(&print_expr(&e)).unwrap(), e, "round trip broke");
    }
}

#[test]
fn eq_command_accepts_interchange_parse_trees() {
    let out = run_file(
        "grid2.dcm",
        &Command::Eq {
            e1: "(s00 | s01) / (s10 | s11)".into(),
            e2: "(s00 / s10) | (s01 / s11)".into(),
        },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 0, "{}", out.output);
    assert!(out.output.contains("PASS eq"));
}

#[test]
fn eq_command_rejects_unequal_and_reports_unknown() {
    let parity = parse("category P fixture parity\n").unwrap();
    let not_eq = dsl::run(
        &parity,
        &Command::Eq { e1: "e".into(), e2: "n".into() },
        &RunOpts::default(),
    );
    assert_eq!(not_eq.code, 1, "{}", not_eq.output);
    assert!(not_eq.output.contains("FAIL eq"));

    // Two rules rewrite p to different normal forms and cannot be joined,
    // so the presentation has no confluence certificate and the comparison
    // of q with r is inconclusive.
    let text = "category C free {\n\
                  objects x\n\
                  hcell f x x\n\
                  square p f f - -\n\
                  square q f f - -\n\
                  square r f f - -\n\
                  sqrule collapse-q p = q\n\
                  sqrule collapse-r p = r\n\
                }\n";
    let man = parse(text).unwrap();
    let out = dsl::run(
        &man,
        &Command::Eq { e1: "q".into(), e2: "r".into() },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 3, "{}", out.output);
    assert!(out.output.contains("UNKNOWN eq"));
}

#[test]
fn check_command_on_the_quintet_golden_file_passes() {
    let out = run_file("quintet.dcm", &Command::Check { name: "laws-q".into() }, &RunOpts::default());
    assert_eq!(out.code, 0, "{}", out.output);
    assert!(out.output.contains("PASS laws Q"));
}

#[test]
fn corrupted_functor_manifest_fails_its_check() {
    let out = run_file(
        "broken_functor.dcm",
        &Command::Check { name: "axioms-n".into() },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 1, "{}", out.output);
    assert!(out.output.contains("FAIL"));
}

#[test]
fn declared_identity_functor_passes_its_check() {
    let text = "category P fixture parity\n\
                functor I P P {\n\
                  obj * *\n\
                  hcell 1 1\n\
                  vcell 1 1\n\
                  square e e\n\
                  square n n\n\
                }\n\
                check axioms-i functor I\n";
    let man = parse(text).unwrap();
    let out = dsl::run(&man, &Command::Check { name: "axioms-i".into() }, &RunOpts::default());
    assert_eq!(out.code, 0, "{}", out.output);
}

#[test]
fn law_violating_tables_fail_the_laws_check() {
    // Square composition that ignores its second argument: breaks the
    // identity-square axioms, which is a check failure rather than a
    // type error.
    let text = "category W tabulated {\n\
                  objects *\n\
                  hcell 1 * *\n\
                  vcell 1 * *\n\
                  hid 1\n\
                  vid 1\n\
                  square e 1 1 1 1\n\
                  square n 1 1 1 1\n\
                  sqidh e\n\
                  sqidv e\n\
                  hcomp 1 1 1\n\
                  vcomp 1 1 1\n\
                  sqh e e e\n\
                  sqh e n e\n\
                  sqh n e n\n\
                  sqh n n n\n\
                  sqv e e e\n\
                  sqv e n e\n\
                  sqv n e n\n\
                  sqv n n n\n\
                }\n";
    let man = parse(text).unwrap();
    let out = dsl::run(&man, &Command::Check { name: "W".into() }, &RunOpts::default());
    assert_eq!(out.code, 1, "{}", out.output);
    assert!(out.output.contains("FAIL laws W"));
}

#[test]
fn tensor_command_finds_exactly_two_corner_composites() {
    let out = run_file(
        "free_arrow_pair.dcm",
        &Command::Tensor { a: "A".into(), b: "B".into(), emit: false },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 0, "{}", out.output);
    assert!(out.output.contains("count=2"), "{}", out.output);
    assert!(out.output.contains("PASS tensor-rule"), "{}", out.output);
    assert!(!out.output.contains("FAIL"), "{}", out.output);
}

#[test]
fn emitted_tensor_presentation_reparses_and_revalidates() {
    let out = run_file(
        "free_arrow_pair.dcm",
        &Command::Tensor { a: "A".into(), b: "B".into(), emit: true },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 0, "{}", out.output);
    let start = out.output.find("category").expect("emitted declaration");
    let man = parse(&out.output[start..]).expect("emitted manifest parses");
    let env = dsl::resolve(&man, &RunOpts::default()).unwrap();
    let cat = &env.category("AxB").expect("emitted category resolves").cat;
    assert_eq!(cat.object_count(), 4);
    assert_eq!(cat.hcell_count(), 4);
    assert_eq!(cat.square_count(), 2);
}

#[test]
fn tensor_declaration_in_a_manifest_resolves() {
    let text = "category A fixture free-arrow\n\
                category B fixture free-arrow\n\
                category T tensor A B\n";
    let man = parse(text).unwrap();
    let env = dsl::resolve(&man, &RunOpts::default()).unwrap();
    let t = &env.category("T").expect("tensor resolves").cat;
    assert_eq!(t.object_count(), 4);
    assert_eq!(t.square_count(), 2);
    assert_eq!(
        t.enumerate_hcells(ObjId(0), ObjId(3), 2).unwrap().len(),
        2
    );
}

#[test]
fn expression_commands_require_a_unique_or_named_category() {
    let ambiguous = run_file(
        "free_arrow_pair.dcm",
        &Command::Normalize { expr: "Idv(F)".into() },
        &RunOpts::default(),
    );
    assert_eq!(ambiguous.code, 2, "{}", ambiguous.output);
    let picked = run_file(
        "free_arrow_pair.dcm",
        &Command::Normalize { expr: "Idv(F)".into() },
        &RunOpts { in_cat: Some("A".into()), ..Default::default() },
    );
    assert_eq!(picked.code, 0, "{}", picked.output);
    assert!(picked.output.contains("vertical identity on F"), "{}", picked.output);
}

#[test]
fn render_dot_of_a_two_by_two_grid_is_valid_dot() {
    let out = run_file(
        "grid2.dcm",
        &Command::Render {
            expr: "(s00 | s01) / (s10 | s11)".into(),
            format: RenderFormat::Dot,
        },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 0, "{}", out.output);
    let text = out.output;
    assert!(text.starts_with("digraph"), "{}", text);
    assert_eq!(text.matches('{').count(), text.matches('}').count());
    assert_eq!(text.matches('[').count(), text.matches(']').count());
    // 9 grid corners, 6 horizontal and 6 vertical edges.
    assert_eq!(text.matches("label=\"x").count(), 9, "{}", text);
    assert_eq!(text.matches("->").count(), 12, "{}", text);
    assert_eq!(text.matches("style=dashed").count(), 6, "{}", text);
}

#[test]
fn compose_command_checks_the_composite_functor() {
    let text = "category P fixture parity\n\
                functor I P P {\n\
                  obj * *\n\
                  hcell 1 1\n\
                  vcell 1 1\n\
                  square e e\n\
                  square n n\n\
                }\n";
    let man = parse(text).unwrap();
    let out = dsl::run(
        &man,
        &Command::Compose { kind: "functor".into(), names: vec!["I".into(), "I".into()] },
        &RunOpts::default(),
    );
    assert_eq!(out.code, 0, "{}", out.output);
    let bad = dsl::run(
        &man,
        &Command::Compose { kind: "htrans".into(), names: vec![] },
        &RunOpts::default(),
    );
    assert_eq!(bad.code, 2);
}

#[test]
fn verify_tricat_instances_pass() {
    let man = parse("").unwrap();
    for instance in ["walking-arrow", "pseudo-parity"] {
        let out = dsl::run(
            &man,
            &Command::VerifyTricat { instance: instance.into() },
            &RunOpts::default(),
        );
        assert_eq!(out.code, 0, "{}: {}", instance, out.output);
        assert!(out.output.contains("PASS verify-tricat"));
    }
    let unknown = dsl::run(
        &man,
        &Command::VerifyTricat { instance: "nope".into() },
        &RunOpts::default(),
    );
    assert_eq!(unknown.code, 2);
}

// ---------------------------------------------------------------------------
// The compiled binary, end to end.
// ---------------------------------------------------------------------------

fn bin(args: &[&str]) -> (String, i32) {
    let out = Proc::new(env!("CARGO_BIN_EXE_dblcat"))
        .args(args)
        .current_dir(manifest_dir())
        .env_remove("MAX_LEN")
        .env_remove("MAX_REWRITE")
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned()
            + &String::from_utf8_lossy(&out.stderr),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn binary_exit_codes_cover_all_four_outcomes() {
    let (out, code) = bin(&["quintet.dcm", "check", "laws-q"]);
    assert_eq!(code, 0, "{}", out);
    let (out, code) = bin(&["broken_functor.dcm", "check", "axioms-n"]);
    assert_eq!(code, 1, "{}", out);
    let (out, code) = bin(&["bad_corner.dcm", "check", "Bad"]);
    assert_eq!(code, 2, "{}", out);
    let (out, code) = bin(&[
        "quintet.dcm",
        "eq",
        "sR / sL",
        "sB",
    ]);
    assert_eq!(code, 0, "{}", out);
}

#[test]
fn binary_env_variable_bounds_the_enumeration() {
    let out = Proc::new(env!("CARGO_BIN_EXE_dblcat"))
        .args(["free_arrow_pair.dcm", "tensor", "A", "B"])
        .current_dir(manifest_dir())
        .env("MAX_LEN", "1")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("len<=1: count=0"), "{}", text);
    // The flag wins over the environment variable.
    let out = Proc::new(env!("CARGO_BIN_EXE_dblcat"))
        .args(["free_arrow_pair.dcm", "tensor", "A", "B", "--max-len", "2"])
        .current_dir(manifest_dir())
        .env("MAX_LEN", "1")
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("len<=2: count=2"), "{}", text);
}
