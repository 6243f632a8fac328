//! End-to-end checks of the command-line binary against the sample files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tagbarc::io::{BarcodeFile, ComplexFile, SimplicialFile};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tagbarc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().expect("paths are UTF-8")
}

const SPHERE_BARCODE: &str = "#tagged\n0 0 inf\n2 0 inf\n2 1 1\n";

#[test]
fn tagbar_emits_the_sphere_barcode_under_both_constructions() {
    for construction in ["x", "y"] {
        let out = run(&["tagbar", "--construction", construction, path_arg(&data("s2.cplx"))]);
        assert!(out.status.success());
        assert_eq!(stdout_of(&out), SPHERE_BARCODE, "construction {construction}");
    }
}

#[test]
fn tie_order_decides_the_degree_one_interval() {
    let first = run(&["tagbar", "--construction", "y", path_arg(&data("ties.cplx"))]);
    assert!(first.status.success());
    assert!(stdout_of(&first).contains("\n1 2 2\n"), "{}", stdout_of(&first));
    let reversed =
        run(&["tagbar", "--construction", "y", path_arg(&data("ties_reversed.cplx"))]);
    assert!(reversed.status.success());
    assert!(
        stdout_of(&reversed)
            .contains("\n1 2.8284271247461903 2.8284271247461903\n"),
        "{}",
        stdout_of(&reversed)
    );
}

#[test]
fn bottleneck_of_a_barcode_with_itself_is_zero() {
    let bar = data("s2.bar");
    let out = run(&["bottleneck", path_arg(&bar), path_arg(&bar)]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "0\n");
}

#[test]
fn bottleneck_and_dint_agree_on_the_ties_pair() {
    let dir = tempfile::tempdir().unwrap();
    let mut bars = Vec::new();
    for name in ["ties.cplx", "ties_reversed.cplx"] {
        let out = run(&["tagbar", "--construction", "y", path_arg(&data(name))]);
        let path = dir.path().join(name).with_extension("bar");
        std::fs::write(&path, stdout_of(&out)).unwrap();
        bars.push(path);
    }
    let args: Vec<&str> = bars.iter().map(|p| p.to_str().unwrap()).collect();
    let bottleneck = run(&["bottleneck", args[0], args[1]]);
    let dint = run(&["dint", args[0], args[1]]);
    // The only difference is the degree-1 interval: 2 against sqrt(8).
    assert_eq!(stdout_of(&bottleneck), "0.8284271247461903\n");
    assert_eq!(stdout_of(&dint), stdout_of(&bottleneck));
    let matching = run(&["bottleneck", args[0], args[1], "--matching", "--degree", "1"]);
    let text = stdout_of(&matching);
    assert!(text.contains("pair [0,2,2) -- [0,2.8284271247461903,2.8284271247461903)"), "{text}");
}

#[test]
fn persist_and_correspond_on_the_filtered_example() {
    let persist = run(&["persist", path_arg(&data("scalar.cplx"))]);
    assert!(persist.status.success());
    assert_eq!(stdout_of(&persist), "#persistence\n0 0 inf\n0 1 2\n");
    let correspond = run(&["correspond", path_arg(&data("scalar.cplx"))]);
    assert!(correspond.status.success());
    assert_eq!(stdout_of(&correspond), "PASS\n");
}

#[test]
fn morse_feeds_tagbar_with_the_sphere_complex() {
    let morse = run(&["morse", path_arg(&data("sphere.splx"))]);
    assert!(morse.status.success());
    let text = stdout_of(&morse);
    assert_eq!(
        text,
        "dim 0 a\ndim 1 c-d\ndim 2 a-c-d b-c-d\nbnd a-c-d : c-d\nbnd b-c-d : c-d\n\
         w c-d a 3\nw a-c-d c-d 1\nw b-c-d c-d 2\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("morse.cplx");
    std::fs::write(&path, &text).unwrap();
    let tagbar = run(&["tagbar", "--construction", "y", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&tagbar), SPHERE_BARCODE);
}

#[test]
fn subdivide_doubles_the_circle() {
    let out = run(&["subdivide", path_arg(&data("circle.splx"))]);
    assert!(out.status.success());
    let sf = SimplicialFile::parse(&stdout_of(&out)).unwrap();
    assert_eq!(sf.complex().num_vertices(), 8);
    assert_eq!(sf.complex().total_simplices(), 16);
    assert!(sf.field().is_empty());
}

#[test]
fn xi_reads_a_bare_point_list() {
    let out = run(&["xi", path_arg(&data("points.splx"))]);
    assert!(out.status.success());
    // Closest distance gap: |p1 - p2| - |p0 - p2| = sqrt(5) - 2.
    assert_eq!(stdout_of(&out), "0.2360679774997898\n");
}

#[test]
fn perturb_confirms_the_bound_on_generic_weights() {
    let out = run(&[
        "perturb",
        path_arg(&data("s2.cplx")),
        "--delta",
        "0.4",
        "--trials",
        "25",
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("bound: PASS"), "{}", stdout_of(&out));
}

#[test]
fn exit_codes_separate_parse_and_validation_failures() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.cplx");
    std::fs::write(&ok, "dim 0 x\n").unwrap();
    assert_eq!(run(&["validate", ok.to_str().unwrap()]).status.code(), Some(0));

    let parse = dir.path().join("parse.cplx");
    std::fs::write(&parse, "dim 0 x\nbnd y : x\n").unwrap();
    let out = run(&["validate", parse.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let invalid = dir.path().join("invalid.cplx");
    std::fs::write(&invalid, "dim 0 x\ndim 1 a b\nbnd a : x\nw a x 1\n").unwrap();
    let out = run(&["validate", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let missing = run(&["validate", "/definitely/not/there.cplx"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn sample_files_round_trip_through_their_parsers() {
    for name in ["s2.cplx", "ties.cplx", "ties_reversed.cplx", "scalar.cplx"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let parsed = ComplexFile::parse(&text).unwrap();
        assert_eq!(ComplexFile::parse(&parsed.serialize()).unwrap(), parsed, "{name}");
    }
    for name in ["circle.splx", "sphere.splx", "points.splx"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let parsed = SimplicialFile::parse(&text).unwrap();
        assert_eq!(SimplicialFile::parse(&parsed.serialize()).unwrap(), parsed, "{name}");
    }
    let text = std::fs::read_to_string(data("s2.bar")).unwrap();
    let parsed = BarcodeFile::parse(&text).unwrap();
    assert_eq!(BarcodeFile::parse(&parsed.serialize()).unwrap(), parsed);
}
