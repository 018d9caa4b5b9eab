use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genassoc"))
        .args(args)
        .env_remove("GENASSOC_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_e6_top_root() {
    let o = run(&["expand", "E6", "[1,1,1,1,1,1]", "--minus-simple", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[1,0,1,1,1,1]\n");
}

#[test]
fn table_e6_matches_golden_file() {
    let o = run(&["table", "e6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        include_str!("../../core/tests/golden/e6_table.txt")
    );
}

#[test]
fn a3_off_export() {
    let o = run(&["polytope", "A3", "--rho", "--format", "off"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "OFF");
    let counts: Vec<i64> = data[1].split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(counts, [14, 9, 21]);
    // Euler characteristic of the boundary sphere
    assert_eq!(counts[0] - counts[2] + counts[1], 2);
    assert_eq!(data.len(), 2 + 14 + 9);
}

#[test]
fn off_needs_rank_three() {
    let o = run(&["polytope", "A4", "--format", "off"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_export_is_verified() {
    let o = run(&["polytope", "B2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"verified\": true"), "{text}");
}

#[test]
fn verify_g2_full() {
    let o = run(&["verify", "G2", "--full"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS G2\n"));
}

#[test]
fn verify_with_custom_support() {
    let o = run(&["verify", "A3", "--support", "1,3/2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "A3", "--support", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[1, 3]"));
}

#[test]
fn clusters_count() {
    let o = run(&["clusters", "D4", "--count"]);
    assert_eq!(stdout(&o), "50\n");
    let o = run(&["--threads", "1", "clusters", "F4", "--count"]);
    assert_eq!(stdout(&o), "105\n");
}

#[test]
fn oracle_c3() {
    let o = run(&["oracle", "C3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("maximal non-crossing sets: 20, clusters: 20"));
    assert_eq!(run(&["oracle", "D4"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["roots", "Q3"]).status.code(), Some(2));
    assert_eq!(run(&["roots", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "A2", "[1,1,1]"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn roots_lists_orbits() {
    let o = run(&["roots", "A2"]);
    let text = stdout(&o);
    assert!(text.starts_with("# A2: 5 almost positive roots, h = 3"));
    assert!(text.contains("orbit 1 (5 roots)"));
}
