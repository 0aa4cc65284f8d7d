use std::process::{Command, Output};

fn bruhat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bruhat"))
        .args(args)
        .env_remove("BRUHAT_IDEAL_CAP")
        .env_remove("BRUHAT_WORD_CAP")
        .env_remove("BRUHAT_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = bruhat(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn a2_grade_table() {
    let out = ok(&["grade", "--all", "3", "--format", "csv"]);
    assert_eq!(out.lines().next().unwrap(), "w,length,a,grade,perfect,witness_u");
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let grades: Vec<String> = rows.records().map(|r| r.unwrap()[3].to_string()).collect();
    // rows in lexicographic order: 123 132 213 231 312 321
    assert_eq!(grades, vec!["0", "1", "1", "1", "1", "3"]);
}

#[test]
fn grade_of_non_boolean_elements() {
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["grade", "--rw", "2132", "--degree", "4", "--format", "json"])).unwrap();
    assert_eq!(json["grade"], 1);
    assert_eq!(json["a_value"], 2);
    let json: serde_json::Value = serde_json::from_str(&ok(&["grade", "4,2,3,1", "--format", "json"])).unwrap();
    assert_eq!(json["grade"], 2);
    assert_eq!(json["a_value"], 3);
    let json: serde_json::Value = serde_json::from_str(&ok(&["grade", "1,2,3", "--format", "json"])).unwrap();
    assert_eq!(json["grade"], 0);
}

#[test]
fn intersect_examples() {
    let out = ok(&["intersect", "3,1,2,6,4,7,8,9,5", "3,2,5,1,8,4,7,6,9", "--both"]);
    let lines: Vec<&str> = out.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(lines, vec!["3,1,2,4,6,5,8,7,9", "3,1,2,5,4,7,8,6,9"]);

    let json: serde_json::Value = serde_json::from_str(&ok(&[
        "intersect", "3,1,2,6,4,7,8,9,5", "2,3,1,5,9,4,6,7,8", "--enumerate", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["maximal"].as_array().unwrap().len(), 8);

    let out = ok(&["intersect", "2,1,3", "2,1,3"]);
    assert_eq!(out.trim(), "2,1,3  [1]");
}

#[test]
fn boolean_and_shapes() {
    let json: serde_json::Value = serde_json::from_str(&ok(&["boolean", "3,4,1,2", "--format", "json"])).unwrap();
    assert_eq!(json["boolean"], false);
    assert_eq!(json["by_words"], false);
    assert_eq!(ok(&["rs", "2,4,1,5,3"]).trim(), "3,2");
    assert_eq!(ok(&["afun", "4,3,2,1"]).trim(), "6");
    assert_eq!(ok(&["afun", "--rw", "12321"]).trim(), "3");
}

#[test]
fn ork_and_partner() {
    let out = ok(&["ork", "5,1,2,3,6,7,8,12,4,9,10,11"]);
    assert!(out.contains("ork 8"), "{out}");
    assert!(out.contains("(11)(10)9|45678|321"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&ok(&["partner", "5,1,2,3,4", "--format", "json"])).unwrap();
    assert_eq!(json["partner_word"], "321432");
    assert_eq!(json["matching"]["kind"], "almost_perfect");
    assert_eq!(json["matching"]["rank"], 3);
}

#[test]
fn selfish_lists() {
    let out = ok(&["selfish", "4"]);
    let members: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(members, vec!["{1,3}", "{1,4}", "{2,4}"]);
    let json: serde_json::Value = serde_json::from_str(&ok(&["selfish", "15", "--format", "json"])).unwrap();
    assert_eq!(json["count"], 65);
}

#[test]
fn verify_passes_and_aliases_work() {
    assert!(ok(&["verify", "thm6.8", "--n", "4"]).starts_with("PASS grade-equals-a"));
    assert!(ok(&["verify", "prop3.3", "--k", "15"]).starts_with("PASS"));
    assert!(ok(&["verify", "thm2.4", "--n", "3"]).starts_with("PASS"));
    assert!(ok(&["verify", "slimming", "--n", "4"]).starts_with("PASS"));
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "cor3.6", "--n", "6", "--samples", "50", "--format", "json"])).unwrap();
    assert_eq!(json["cases"], 50);
    assert_eq!(json["failure_count"], 0);
    assert_eq!(ok(&["verify", "list"]).lines().count(), 16);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "prop5.8", "--n", "6", "--samples", "30", "--seed", "9", "--format", "json"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn export_dot() {
    let out = ok(&["export", "--rw", "123", "321", "--matched"]);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("penwidth=3").count(), 2);
    assert_eq!(out.matches("shape=circle").count(), 1);
    assert!(out.contains("[2]\", shape=circle"), "{out}");

    let out = ok(&["export", "--rw", "4321", "321432", "--degree", "5", "--matched"]);
    assert!(out.contains("[432]\", shape=circle"), "{out}");

    let out = ok(&["export", "1,2,3", "3,2,1"]);
    assert_eq!(out.matches("label=").count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(bruhat(&["boolean", "2413"]).status.code(), Some(2));
    assert_eq!(bruhat(&["boolean", "2,2,1"]).status.code(), Some(2));
    assert_eq!(bruhat(&["ork", "3,2,1"]).status.code(), Some(2));
    assert_eq!(bruhat(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(bruhat(&["verify", "thm6.8", "--n", "9"]).status.code(), Some(2));
    assert_eq!(bruhat(&["intersect", "--rw", "121", "1"]).status.code(), Some(2));
    assert_eq!(bruhat(&["frobnicate"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_bruhat"))
        .args(["intersect", "--rw", "4321", "4321", "--enumerate"])
        .env("BRUHAT_IDEAL_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}
