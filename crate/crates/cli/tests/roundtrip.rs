//! Parser round-trip, determinism and grammar examples.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spbw_cli::ast::{Expr, ExprKind, Span};
use spbw_cli::{parse, render_file, run_source, Flags};

fn corpus() -> Vec<PathBuf> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut v = Vec::new();
    for dir in [root.clone(), root.join("errors")] {
        for e in fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "spbw") {
                v.push(p);
            }
        }
    }
    v.sort();
    v
}

#[test]
fn render_parse_round_trip_over_the_corpus() {
    let mut parsed = 0;
    for path in corpus() {
        let src = fs::read_to_string(&path).unwrap();
        let Ok(ast) = parse(&src) else {
            // syntax errors are part of the error corpus
            continue;
        };
        let text = render_file(&ast);
        let again =
            parse(&text).unwrap_or_else(|e| panic!("{}: {}", path.display(), e.render(&text)));
        assert_eq!(again, ast, "{}", path.display());
        assert_eq!(
            render_file(&again),
            text,
            "{}: rendering is not a fixpoint",
            path.display()
        );
        parsed += 1;
    }
    assert!(parsed >= 15);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for path in corpus() {
        let src = fs::read_to_string(&path).unwrap();
        let flags = Flags {
            trace: true,
            ..Flags::default()
        };
        let a = run_source(&src, None, &flags);
        let b = run_source(&src, None, &flags);
        assert_eq!(a, b, "{}", path.display());
    }
}

#[test]
fn reformatted_files_give_the_same_report() {
    for path in corpus() {
        let src = fs::read_to_string(&path).unwrap();
        let Ok(ast) = parse(&src) else { continue };
        let a = run_source(&src, None, &Flags::default());
        let b = run_source(&render_file(&ast), None, &Flags::default());
        assert_eq!(a.code, b.code);
        // error positions may move; everything else is identical
        if a.code == 0 {
            assert_eq!(a.report, b.report, "{}", path.display());
        }
    }
}

#[test]
fn binary_runs_are_byte_identical() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/diffusion.spbw");
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_spbw"))
            .arg("run")
            .arg(&file)
            .arg("--trace")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout)
        .unwrap()
        .starts_with("# spbw-report v1\n"));
}

#[test]
fn binary_exit_codes() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let code = |args: &[&str]| {
        Process::new(env!("CARGO_BIN_EXE_spbw"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    let p = |name: &str| data.join(name).to_string_lossy().into_owned();
    assert_eq!(code(&["validate", &p("weyl.spbw")]), Some(0));
    assert_eq!(code(&["gb", &p("commutative.spbw"), "a", "b"]), Some(0));
    assert_eq!(
        code(&["divide", &p("diffusion.spbw"), "f", "by", "f1", "f2", "f3"]),
        Some(0)
    );
    assert_eq!(code(&["unimod", &p("errors/not_unimodular.spbw")]), Some(1));
    assert_eq!(
        code(&["validate", &p("errors/missing_inverse.spbw")]),
        Some(1)
    );
    assert_eq!(code(&["run", &p("errors/syntax.spbw")]), Some(2));
    assert_eq!(code(&["gb", &p("commutative.spbw"), "nope"]), Some(2));
    assert_eq!(code(&["run", &p("no_such_file.spbw")]), Some(2));
    assert_eq!(
        code(&["gb", &p("triangle.spbw"), "--max-basis", "4"]),
        Some(3)
    );
    assert_eq!(
        code(&["run", &p("commutative.spbw"), "--order", "lex x > y > z"]),
        Some(2)
    );
    assert_eq!(code(&["fmt", &p("r_algebra.spbw")]), Some(0));
}

#[test]
fn order_flag_changes_the_basis() {
    let src = fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/commutative.spbw"),
    )
    .unwrap();
    let flags = Flags {
        overrides: spbw_cli::Overrides {
            order: Some(spbw_cli::parse_order("degrevlex z > y > x").unwrap()),
            module_order: None,
        },
        ..Flags::default()
    };
    let out = run_source(&src, None, &flags);
    assert_eq!(out.code, 0);
    assert!(out.report.contains("order degrevlex z > y > x\n"));
    assert_ne!(out.report, run_source(&src, None, &Flags::default()).report);
}

#[test]
fn diffusion_header_is_valid_and_not_quasi_commutative() {
    let src = "coeff QQ[x1, x2]\nvars D1, D2\norder deglex D1 > D2\n\
               relation D2*D1 = 2*D1*D2 + x2*D1 - x1*D2\nvalidate\n";
    let out = run_source(src, None, &Flags::default());
    assert_eq!(out.code, 0);
    assert!(out.report.contains("valid: yes\n"));
    assert!(out.report.contains("quasi-commutative: no\n"));
}

#[test]
fn empty_relations_give_the_commutative_plane() {
    let src =
        "coeff QQ\nvars x, y\norder deglex x > y\nlet a = y*x\nlet b = x*y\nvalidate\nmul a b\n";
    let out = run_source(src, None, &Flags::default());
    assert_eq!(out.code, 0, "{}", out.report);
    assert!(out.report.contains("quasi-commutative: yes\n"));
    assert!(out.report.contains("a*b = x^2*y^2\n"));
}

#[test]
fn relation_orientation_is_enforced() {
    let src = "coeff QQ\nvars D1, D2\norder deglex D1 > D2\nrelation D1*D2 = D1*D2\n";
    let out = run_source(src, None, &Flags::default());
    assert_eq!(out.code, 2);
    assert!(out
        .report
        .contains("error: 4:10: left side must be x_j x_i with j > i"));
}

#[test]
fn relations_must_be_in_standard_form() {
    for rhs in ["D2*D1", "D1*x1*D2 + 1", "x1*(D1 + D2)"] {
        let src =
            format!("coeff QQ[x1]\nvars D1, D2\norder deglex D1 > D2\nrelation D2*D1 = {rhs}\n");
        assert_eq!(run_source(&src, None, &Flags::default()).code, 2, "{rhs}");
    }
}

#[test]
fn kinds_are_checked() {
    let src = "coeff QQ\nvars x\norder deglex x\nlet v = [x ; 1]\nlet f = v + 1\n";
    let out = run_source(src, None, &Flags::default());
    assert_eq!(out.code, 0, "definitions alone are not evaluated");
    let src = format!("{src}gb f\n");
    let out = run_source(&src, None, &Flags::default());
    assert_eq!(out.code, 2);
    assert!(out.report.contains("`v` is a vector, not a polynomial"));
}

#[test]
fn coefficient_images_only_use_generators() {
    let src = "coeff QQ[s]\nvars x\norder deglex x\nsigma x: s -> x ; inverse s -> s\n";
    let out = run_source(src, None, &Flags::default());
    assert_eq!(out.code, 2);
    assert!(out.report.contains("`x` is not a coefficient"));
}

#[test]
fn reserved_words_cannot_be_definitions() {
    let src = "coeff QQ\nvars x\norder deglex x\nlet by = x\n";
    assert_eq!(run_source(src, None, &Flags::default()).code, 2);
}

fn arb_expr(names: Vec<&'static str>) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..40, 1i64..7)
            .prop_map(|(p, q)| ExprKind::Num(BigRational::new(BigInt::from(p), BigInt::from(q)))),
        proptest::sample::select(names).prop_map(|n| ExprKind::Name(n.to_string())),
    ]
    .prop_map(|kind| Expr {
        kind,
        span: Span::default(),
    });
    leaf.prop_recursive(5, 40, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| ExprKind::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| ExprKind::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| ExprKind::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| ExprKind::Mul(b(x), b(y))),
            (inner, 0u32..4).prop_map(move |(x, n)| ExprKind::Pow(b(x), n)),
        ]
        .prop_map(|kind| Expr {
            kind,
            span: Span::default(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_expressions_round_trip(e in arb_expr(vec!["x", "y", "s", "f"])) {
        let file = format!(
            "coeff QQ[s]\nvars x, y\norder deglex x > y\nlet f = 1\nlet g = {}\n",
            spbw_cli::render::render_expr(&e)
        );
        let ast = parse(&file).unwrap();
        let spbw_cli::ast::Item::Let { value: spbw_cli::ast::Value::Poly(parsed), .. } = &ast.items[1] else {
            panic!("not a polynomial definition");
        };
        prop_assert_eq!(parsed, &e);
    }

    #[test]
    fn rendered_values_evaluate_like_the_original(e in arb_expr(vec!["x", "y", "s"])) {
        // evaluating the canonical text and a fully parenthesized variant agrees
        let text = spbw_cli::render::render_expr(&e);
        let src = format!(
            "coeff QQ[s]\nvars x, y\norder deglex x > y\nrelation y*x = 2*x*y + s\nlet a = {text}\nlet b = ({text})\nlet z = a - b\nmul z z\n"
        );
        let out = run_source(&src, None, &Flags::default());
        prop_assert_eq!(out.code, 0);
        prop_assert!(out.report.contains("z*z = 0\n"));
    }
}
