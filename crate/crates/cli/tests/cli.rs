use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn jscheme(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jscheme"))
        .args(args)
        .env("JSCHEME_CACHE", cache)
        .output()
        .expect("spawn jscheme")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("jscheme-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const FANO: &str = "7 3 fano\n# lines of PG(2,2)\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n";

#[test]
fn usage_errors_exit_64() {
    let d = scratch("usage");
    assert_eq!(jscheme(&["pq", "--n", "9"], &d).status.code(), Some(64));
    assert_eq!(jscheme(&["frobnicate"], &d).status.code(), Some(64));
    assert_eq!(jscheme(&["pq", "--n", "3", "--k", "5"], &d).status.code(), Some(64));
    assert_eq!(jscheme(&["--help"], &d).status.code(), Some(0));
}

#[test]
fn memory_budget_exceeded_exits_1() {
    let d = scratch("mem");
    let o = jscheme(&["graph", "--n", "30", "--k", "4", "--classes", "1", "--memory-budget", "1000"], &d);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pq_json_has_rational_strings() {
    let d = scratch("pq");
    let o = jscheme(&["pq", "--n", "9", "--k", "4", "--json"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["p"][0][1], "20");
    assert_eq!(v["q"][1][1], serde_json::json!("22/5"));
}

#[test]
fn graph_stats_and_bounds() {
    let d = scratch("graph");
    let o = jscheme(&["graph", "--n", "9", "--k", "4", "--classes", "1,3", "--stats"], &d);
    let s = stdout(&o);
    assert!(s.contains("v = 126") && s.contains("degree = 60") && s.contains("τ = -8"), "{s}");
    let o = jscheme(&["bounds", "--n", "9", "--k", "4", "--classes", "1,3"], &d);
    let s = stdout(&o);
    assert!(s.contains("17/2") && s.contains("divides degree: no"), "{s}");
}

#[test]
fn clique_witness_prints_blocks() {
    let d = scratch("clique");
    let o = jscheme(&["clique", "--n", "7", "--k", "3", "--classes", "2", "--witness", "--budget", "10"], &d);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains(": 7 (proved)"), "{s}");
    let blocks = s.lines().skip_while(|l| !l.starts_with("7 3")).skip(1).count();
    assert_eq!(blocks, 7);
}

#[test]
fn verify_fano_and_broken_copy() {
    let d = scratch("verify");
    let f = d.join("fano.blocks");
    fs::write(&f, FANO).unwrap();
    let o = jscheme(&["verify", "--file", f.to_str().unwrap(), "--t", "2"], &d);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Steiner: yes");

    let g = d.join("broken.blocks");
    fs::write(&g, FANO.replace("3 5 6", "3 5 7")).unwrap();
    let o = jscheme(&["verify", "--file", g.to_str().unwrap(), "--t", "2"], &d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("Steiner: no"));
}

#[test]
fn witness_round_trip() {
    let d = scratch("witness");
    let out = d.join("k4n9");
    let o = jscheme(&["witness", "--case", "k4n9", "--out", out.to_str().unwrap()], &d);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("clique.blocks").exists());
    assert_eq!(
        fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("colour_")).count(),
        9
    );
    let o = jscheme(&["verify", "--colouring", out.to_str().unwrap(), "--classes", "1,3"], &d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("clique number = chromatic number: yes"));

    // dropping a block leaves a vertex uncoloured
    let c1 = out.join("colour_01.blocks");
    let text = fs::read_to_string(&c1).unwrap();
    let kept: Vec<&str> = text.lines().take(text.lines().count() - 1).collect();
    fs::write(&c1, kept.join("\n") + "\n").unwrap();
    let o = jscheme(&["verify", "--colouring", out.to_str().unwrap(), "--classes", "1,3"], &d);
    assert_eq!(o.status.code(), Some(1));

    let o = jscheme(&["witness", "--case", "k9n99"], &d);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn classify_json_schema() {
    let d = scratch("classify");
    let path = d.join("out.json");
    let o = jscheme(&["classify", "--n", "9", "--k", "4", "--budget", "30", "--json", path.to_str().unwrap()], &d);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 9);
    assert_eq!(v["k"], 4);
    assert_eq!(v["v"], 126);
    assert_eq!(v["verdict"], "non-separating");
    let rows = v["per_class"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    for r in rows {
        assert!(r["classes"].is_array());
        assert!(r["omega"]["value"].is_u64() && r["omega"]["proved"].is_boolean());
        assert!(r["alpha"]["value"].is_u64() && r["alpha"]["proved"].is_boolean());
        assert!(r["ratio"]["bound"].is_string() && r["ratio"]["divides"].is_boolean());
        assert!(r["filter"]["feasible_pairs"].is_array());
    }
    let r13 = rows.iter().find(|r| r["classes"] == serde_json::json!([1, 3])).unwrap();
    assert_eq!(r13["ratio"]["bound"], "17/2");
    assert_eq!(v["sync_evidence"]["verdict"], "non-synchronizing");
}

#[test]
fn classify_separating_case_exits_0() {
    let d = scratch("classify11");
    let o = jscheme(&["classify", "--n", "11", "--k", "4", "--budget", "30", "--json"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "separating");
    assert_eq!(v["sync_evidence"]["verdict"], "synchronizing");
}

#[test]
fn plane_q2() {
    let d = scratch("plane");
    let o = jscheme(&["plane", "--q", "2", "--json"], &d);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max_coclique"]["value"], 5);
    assert_eq!(v["holds"], false);
}
