//! End-to-end runs of the binary against the fixture files, pinned to their
//! exact output.

use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_pathcoalg"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures"))
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is utf8"),
        String::from_utf8(out.stderr).expect("stderr is utf8"),
        out.status.code().unwrap_or(-1),
    )
}

fn expect(args: &[&str], golden: &str) {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "non-zero exit; stderr: {stderr}");
    assert_eq!(stdout, golden, "output drifted for {args:?}");
}

#[test]
fn closure_prints_the_graded_components() {
    expect(
        &["closure", "diamond.coalg"],
        r#"vertices: x1 x2 x3 x4
maxlen: 2
admissible: true
total dim: 9
component x1 -> x1 (dim 1):
  e_x1
component x1 -> x2 (dim 1):
  alpha1
component x1 -> x3 (dim 1):
  alpha3
component x1 -> x4 (dim 1):
  alpha2*alpha1 + alpha4*alpha3
component x2 -> x2 (dim 1):
  e_x2
component x2 -> x4 (dim 1):
  alpha2
component x3 -> x3 (dim 1):
  e_x3
component x3 -> x4 (dim 1):
  alpha4
component x4 -> x4 (dim 1):
  e_x4
"#,
    );
}

#[test]
fn localize_reports_the_surviving_route_and_rewrites_the_generator() {
    expect(
        &[
            "localize",
            "diamond.coalg",
            "--subset",
            "x1,x3,x4",
            "--element",
            "alpha2*alpha1 + alpha4*alpha3",
        ],
        r#"vertex x1 x3 x4
arrow alpha3_bar : x1 -> x3
arrow alpha4_bar : x3 -> x4
label alpha3_bar = alpha3
label alpha4_bar = alpha4
admissible: true
total dim: 6
component x1 -> x1 (dim 1):
  e_x1
component x1 -> x3 (dim 1):
  alpha3_bar
component x1 -> x4 (dim 1):
  alpha4_bar*alpha3_bar
component x3 -> x3 (dim 1):
  e_x3
component x3 -> x4 (dim 1):
  alpha4_bar
component x4 -> x4 (dim 1):
  e_x4
reexpress alpha2*alpha1 + alpha4*alpha3 -> alpha4_bar*alpha3_bar
"#,
    );
}

#[test]
fn delta_lists_the_splittings_in_canonical_order() {
    expect(
        &[
            "delta",
            "diamond.q",
            "--element",
            "alpha2*alpha1 + alpha4*alpha3",
        ],
        "1 * e_x4 (x) alpha2*alpha1\n\
         1 * e_x4 (x) alpha4*alpha3\n\
         1 * alpha2 (x) alpha1\n\
         1 * alpha4 (x) alpha3\n\
         1 * alpha2*alpha1 (x) e_x1\n\
         1 * alpha4*alpha3 (x) e_x1\n",
    );
}

#[test]
fn classify_separates_split_from_semicentral() {
    // Both boundary directions are crossed, yet no path re-enters: split
    // without either semicentrality.
    expect(
        &["classify", "--quiver", "zigzag.q", "--maxlen", "2", "--subset", "x1,x2"],
        "subset: x1 x2\n\
         entering arrow: into\n\
         leaving arrow: out\n\
         left semicentral: false\n\
         right semicentral: false\n\
         split: true\n\
         colocalizing: true\n\
         bounds exact: true\n\
         tail dims x1: 1 1\n\
         tail dims x2: 0 0\n",
    );

    expect(
        &["classify", "--coalgebra", "line3.coalg", "--subset", "v1,v3"],
        "subset: v1 v3\n\
         entering arrow: beta\n\
         leaving arrow: alpha\n\
         left semicentral: false\n\
         right semicentral: false\n\
         split: true\n\
         colocalizing: true\n\
         bounds exact: true\n\
         tail dims v1: 1 1\n\
         tail dims v3: 0 0\n",
    );

    // The glued diamond routes fail splitness with an explicit witness.
    expect(
        &["classify", "--coalgebra", "diamond.coalg", "--subset", "x1,x3,x4"],
        "subset: x1 x3 x4\n\
         entering arrow: alpha2\n\
         leaving arrow: alpha1\n\
         left semicentral: false\n\
         right semicentral: false\n\
         split: false\n\
         split violation: alpha2*alpha1\n\
         colocalizing: true\n\
         bounds exact: true\n\
         tail dims x1: 1 1\n\
         tail dims x3: 0 0\n\
         tail dims x4: 0 0\n",
    );
}

#[test]
fn criterion_reports_the_difference_family_and_parallel_count() {
    expect(
        &["criterion", "parallel4.coalg", "--from", "x", "--to", "y"],
        "pair: x -> y\n\
         truncation: 2\n\
         witness size: 3\n\
         row: b1*a1 - b4*a4\n\
         row: b2*a2 - b4*a4\n\
         row: b3*a3 - b4*a4\n\
         localized parallel arrows: 3\n\
         three or more parallel: true\n",
    );
}

#[test]
fn dualize_spans_the_ideal_and_prints_the_orthogonal_coalgebra() {
    expect(
        &["dualize", "--coalgebra", "diamond.coalg"],
        r#"ideal dim: 1
component x1 -> x4 (dim 1):
  alpha2*alpha1 - alpha4*alpha3
supports length >= 2: true
closed under multiplication: true
"#,
    );

    let (stdout, _, code) = run(&[
        "dualize",
        "--quiver",
        "ladder.q",
        "--relations",
        "all_ge2.rel",
        "--maxlen",
        "4",
    ]);
    assert_eq!(code, 0);
    let head = r#"ideal dim: 4
component u1 -> v2 (dim 1):
  t2*r1 - s1*t1
component u1 -> v3 (dim 2):
  t3*r2*r1 - s2*s1*t1
  s2*t2*r1 - s2*s1*t1
component u2 -> v3 (dim 1):
  t3*r2 - s2*t2
"#;
    assert!(stdout.starts_with(head), "ideal part drifted:\n{stdout}");
    assert!(stdout.contains("total dim: 18\n"));
    assert!(stdout.contains("component u1 -> v2 (dim 1):\n  t2*r1 + s1*t1\n"));
    assert!(stdout.contains(
        "component u1 -> v3 (dim 1):\n  t3*r2*r1 + s2*t2*r1 + s2*s1*t1\n"
    ));
}

#[test]
fn comodule_reports_validate_restrict_and_section() {
    expect(
        &["comodule", "diamond.coalg", "--module", "sink_chunk.comod"],
        "module dim: 4\n\
         module length vector: x1:1 x2:1 x3:1 x4:1\n\
         module socle dim: 1\n\
         module socle x4: 1\n",
    );

    expect(
        &[
            "comodule",
            "diamond.coalg",
            "--module",
            "sink_chunk.comod",
            "--subset",
            "x1,x3,x4",
        ],
        "module dim: 4\n\
         module length vector: x1:1 x2:1 x3:1 x4:1\n\
         module socle dim: 1\n\
         module socle x4: 1\n\
         restriction dim: 3\n\
         restriction length vector: x1:1 x3:1 x4:1\n\
         restriction socle dim: 1\n\
         restriction socle x4: 1\n",
    );

    expect(
        &[
            "comodule",
            "diamond.coalg",
            "--module",
            "simple_x4.comod",
            "--subset",
            "x1,x3,x4",
            "--section",
        ],
        "module dim: 1\n\
         module length vector: x4:1\n\
         module socle dim: 1\n\
         module socle x4: 1\n\
         section dim: 2\n\
         section length vector: x2:1 x4:1\n\
         section socle dim: 1\n\
         section socle x4: 1\n\
         restricts back: true\n",
    );

    expect(
        &["comodule", "diamond.coalg", "--subset", "x1,x3,x4"],
        "restriction dim: 7\n\
         restriction length vector: x1:4 x3:2 x4:1\n\
         restriction socle dim: 4\n\
         restriction socle x1: 2\n\
         restriction socle x3: 1\n\
         restriction socle x4: 1\n",
    );
}

#[test]
fn path_listings_are_canonically_ordered() {
    expect(
        &["paths", "star5.q", "--maxlen", "2", "--from", "x"],
        "e_x\ng1\ng2\ng3\ng4\ng5\n",
    );
    expect(
        &["cells", "ladder.q", "--subset", "u1,v3", "--from", "u1", "--to", "v3", "--maxlen", "4"],
        "t3*r2*r1\ns2*t2*r1\ns2*s1*t1\n",
    );
    expect(
        &["tails", "diamond.q", "--subset", "x1,x3,x4", "--from", "x1", "--maxlen", "2"],
        "alpha1\n",
    );
}

#[test]
fn roundtrip_recovers_the_coalgebra_exactly() {
    expect(
        &["roundtrip", "diamond.coalg"],
        "coalgebra total dim: 9\n\
         ideal dim: 1\n\
         supports length >= 2: true\n\
         closed under multiplication: true\n\
         recovered: true\n",
    );
}

#[test]
fn selftest_is_reproducible_for_a_fixed_seed() {
    expect(
        &["selftest", "--rounds", "5"],
        "seed: 20260816\nrounds: 5\nchecks: 15\nselftest: ok\n",
    );
}

#[test]
fn repeated_runs_emit_identical_bytes() {
    for args in [
        vec!["localize", "diamond.coalg", "--subset", "x1,x3,x4", "--format", "json"],
        vec!["closure", "parallel4.coalg", "--format", "json"],
        vec!["classify", "--coalgebra", "diamond.coalg", "--subset", "x1,x3,x4", "--format", "json"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "run of {args:?} was not reproducible");
        assert_eq!(first.2, 0);
    }
}

#[test]
fn parse_errors_exit_with_code_two_and_a_position() {
    let (stdout, stderr, code) = run(&["closure", "all_ge2.rel"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("line 2"), "stderr was: {stderr}");

    let (_, stderr, code) = run(&["paths", "star5.q", "--maxlen", "2", "--from", "nope"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown vertex"));
}
