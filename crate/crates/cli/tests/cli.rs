use std::path::Path;
use std::process::{Command, Output};

use jacobi_core::families::{pont_neuf, wheel};
use jacobi_core::weights::{cd, o_w_gl};
use jacobi_core::{CasimirPoly, PontNeufParams};

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn wheel_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dfile = dir.path().join("w2.json");
    let pfile = dir.path().join("w2.poly.json");
    let o = jacobi(&["family", "--type", "wheel", "--u", "2", "--out", path(&dfile)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&dfile).unwrap();
    assert_eq!(text, wheel(2).unwrap().to_json());
    let o = jacobi(&["eval", "--diagram", path(&dfile), "--out", path(&pfile)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let poly = CasimirPoly::from_json(&std::fs::read_to_string(&pfile).unwrap()).unwrap();
    assert_eq!(poly, CasimirPoly::from_pairs([(2, vec![0, 2]), (-2, vec![1, 1])]));
    assert_eq!(poly.to_json(), o_w_gl(&wheel(2).unwrap()).unwrap().to_json());
}

#[test]
fn pont_neuf_cd_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dfile = dir.path().join("pn.json");
    assert!(jacobi(&["family", "--type", "pontneuf", "--a", "0", "--b", "1", "--out", path(&dfile)])
        .status
        .success());
    let p = PontNeufParams::new(vec![0], 1).unwrap();
    let expected = cd(&pont_neuf(&p)).unwrap();
    assert_eq!(expected, CasimirPoly::from_pairs([(4, vec![0, 0, 2]), (-4, vec![0, 1, 1])]));
    for extra in [&[][..], &["--fast"][..]] {
        let mut args = vec!["eval", "--diagram", path(&dfile), "--cd"];
        args.extend_from_slice(extra);
        let o = jacobi(&args);
        assert!(o.status.success());
        assert_eq!(stdout(&o), expected.to_json());
    }
}

#[test]
fn output_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let dfile = dir.path().join("pn.json");
    assert!(jacobi(&["family", "--type", "pontneuf", "--a", "1,1", "--b", "2", "--out", path(&dfile)])
        .status
        .success());
    let outs: Vec<String> = ["1", "2", "8"]
        .iter()
        .map(|j| stdout(&jacobi(&["eval", "--diagram", path(&dfile), "--cd", "--jobs", j])))
        .collect();
    assert!(!outs[0].is_empty());
    assert!(outs.iter().all(|o| *o == outs[0]));
}

#[test]
fn family_output_is_deterministic() {
    let a = jacobi(&["family", "--type", "pontneuf", "--a", "1,3", "--b", "3"]);
    let b = jacobi(&["family", "--type", "pontneuf", "--a", "1,3", "--b", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let w4 = stdout(&jacobi(&["family", "--type", "wheel", "--u", "4"]));
    assert_eq!(jacobi_core::Diagram::from_json(&w4).unwrap().darts, 16);
}

#[test]
fn invalid_inputs_exit_2() {
    let o = jacobi(&["family", "--type", "pontneuf", "--a", "3,1", "--b", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a not weakly increasing"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("dangling.json");
    // dart 2 is on no edge
    std::fs::write(&bad, r#"{"darts":3,"edges":[[0,1]],"trivalent":[],"univalent":[0,1,2]}"#).unwrap();
    let o = jacobi(&["eval", "--diagram", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matching not perfect"));

    let o = jacobi(&["eval", "--diagram", path(&dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(jacobi(&["rank", "--k", "1", "--u", "5"]).status.code(), Some(2));
}

#[test]
fn state_cap_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let dfile = dir.path().join("w6.json");
    std::fs::write(&dfile, wheel(6).unwrap().to_json()).unwrap();
    let o = jacobi(&["eval", "--diagram", path(&dfile), "--max-states", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the cap"));
}

#[test]
fn rank_report() {
    let o = jacobi(&["rank", "--k", "1", "--u", "6"]);
    assert_eq!(stdout(&o), "size=2 rank=2 triangular=ok\n");
}

#[test]
fn lb_table() {
    let o = stdout(&jacobi(&["lb", "--max-n", "7"]));
    let lines: Vec<&str> = o.lines().collect();
    assert_eq!(lines[0], "n,LB");
    assert_eq!(lines[4], "4,3");
    assert_eq!(*lines.last().unwrap(), "7,6");
}

#[test]
fn partitions_table() {
    let o = stdout(&jacobi(&["partitions", "--max-n", "100"]));
    assert!(o.starts_with("n,p,p2,adm2,LB,hr_p,ratio\n"));
    let row: Vec<&str> = o.lines().last().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["100", "190569292", "21339417", &row[3], &row[4]]);
    let ratio: f64 = row[6].parse().unwrap();
    assert!((1.04..1.05).contains(&ratio));
}

#[test]
fn genfunc_table() {
    let o = stdout(&jacobi(&["genfunc", "--max-u", "16"]));
    let lines: Vec<&str> = o.lines().collect();
    assert_eq!(lines[0], "series,0,2,4,6,8,10,12,14,16");
    assert_eq!(lines[4], "k3_conjecture,1,2,3,5,8,10,15,19,24");
    assert!(lines[3].starts_with("k3_lower,1,1,"));
}

#[test]
fn bounds_table() {
    let o = stdout(&jacobi(&["bounds", "--max-n", "3"]));
    let lines: Vec<&str> = o.lines().collect();
    assert_eq!(lines[0], "n,U,n2p,U_le_n2p,sum_U,n3p,sum_le_n3p");
    assert_eq!(lines[1], "1,3,1,false,4,1,false");
    assert_eq!(lines.len(), 4);
}
