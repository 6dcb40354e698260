use std::process::{Command, Output};

use cousinet::adams::FORMAT_TAG;
use cousinet::gmod::Module;
use cousinet::text::parse_atom;

fn cousinet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cousinet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn e2_pages_are_deterministic() {
    let args = ["e2", "--rank", "1", "X=EG+", "Y=S0", "--window", "-10:10"];
    let a = cousinet(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = cousinet(&args);
    let seq = cousinet(&[&args[..], &["--jobs", "1"]].concat());
    let shuffled = cousinet(&[&args[..], &["--seed", "7"]].concat());
    let page = stdout(&a);
    assert!(page.starts_with(FORMAT_TAG));
    assert_eq!(page, stdout(&b));
    assert_eq!(page, stdout(&seq));
    assert_eq!(page, stdout(&shuffled));
    // [EG+, S0] is ℚ in the even stems at most zero
    for t in [-10, -8, -2, 0] {
        assert!(page.contains(&format!("\n0\t{t}\t1\n")), "{page}");
    }
}

#[test]
fn catalogue_names_and_descriptions_agree() {
    let w = ["--window", "-6:6"];
    let by_name = stdout(&cousinet(&[&["ext", "EG+", "EG+"][..], &w].concat()));
    let by_desc = stdout(&cousinet(&[&["ext", "f(1,(susp(2,dual)))", "EG+"][..], &w].concat()));
    let body = |s: &str| s.lines().filter(|l| !l.starts_with('#')).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&by_name), body(&by_desc));
}

#[test]
fn realize_round_trips_through_the_table() {
    let atom = "sum(cyc(2,3),susp(4,dual))";
    let o = cousinet(&["realize", atom, "--window", "-8:8"]);
    assert_eq!(o.status.code(), Some(0));
    let m = Module::from_table(&stdout(&o)).unwrap();
    assert_eq!(m, parse_atom(atom).unwrap().realize(Some((-8, 8))).unwrap());
}

#[test]
fn local_cohomology_of_the_plane() {
    let o = cousinet(&["lcoh", "--ring", "Q[x,y]", "--window", "4:8", "--horizon", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("s\tt\tdim\n2\t4\t1\n2\t6\t2\n2\t8\t3\n"));
}

#[test]
fn exit_codes() {
    // a horizon too short for H¹_(x) of the plane
    let o = cousinet(&["lcoh", "--ring", "Q[x,y]", "--ideal", "x", "--window", "0:4", "--horizon", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[horizon]"));

    let o = cousinet(&["e2", "X=S0", "Y=S^1w"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[parse]"));

    let o = cousinet(&["lcoh", "--denoms", "x", "--subgroup", "circle(1,0)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[not-an-euler-unit]"));

    assert_eq!(cousinet(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cousinet(&["--help"]).status.code(), Some(0));
    assert_eq!(cousinet(&["--version"]).status.code(), Some(0));
}

#[test]
fn general_resolutions_print_their_certificates() {
    let o = cousinet(&["res", "f(1,(koszul(Q[x,y],1)))", "--rank", "2", "--window", "-4:4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("two-phase, length 4"));
    assert!(out.contains("# certified true, exact true"));
    assert!(!out.contains("FAILS"));
}

#[test]
fn witness_images_follow_the_closed_form() {
    let o = cousinet(&["witness", "--rank", "2", "--horizon", "3", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\n4\t4,3,2,1\tfalse\t-\ttrue\n"));
}
