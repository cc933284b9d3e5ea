use std::process::{Command, Output};

fn scoregame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scoregame")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_figure_game() {
    let o = scoregame(&["eval", "{{.|0|{-1|-1|.}}|0|{{.|1|1}|0|.}}"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "SL=-1 SR=1 outcome=P sets=L_<,R_>\n");
}

#[test]
fn exit_codes() {
    assert_eq!(scoregame(&["eval", "{1|0"]).status.code(), Some(2));
    assert_eq!(scoregame(&["bogus"]).status.code(), Some(2));
    assert_eq!(scoregame(&["enum", "--scores", ""]).status.code(), Some(3));
    assert_eq!(scoregame(&["verify", "outcome-template", "--grid", "1"]).status.code(), Some(1));
    assert_eq!(scoregame(&["verify", "partition"]).status.code(), Some(0));
}

#[test]
fn parse_errors_go_to_stderr() {
    let o = scoregame(&["eval", "{.|.}"]);
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("error"), "{err}");
}

#[test]
fn duplicate_options_warn() {
    let o = scoregame(&["eval", "{1,1|0|.}"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stderr).unwrap().contains("duplicate"));
}

#[test]
fn cmp_and_canon() {
    let o = scoregame(&["cmp", "{1|1|1}", "{1|0|1}"]);
    assert_eq!(stdout(&o), ">= Proved(Equivalent)\n<= Proved(Equivalent)\n= Proved(Equivalent)\n");
    let o = scoregame(&["canon", "{{3|0|4},{3|1|4}|0|.}"]);
    assert!(stdout(&o).starts_with("{{3|0|4}|0|.}\n"));
    let forms: Vec<String> = (1..6)
        .map(|seed| stdout(&scoregame(&["canon", "{{3|0|4},{3|1|4}|0|.}", "--seed", &seed.to_string()])))
        .map(|out| out.lines().next().unwrap().to_string())
        .collect();
    assert!(forms.iter().all(|f| f == "{{3|0|4}|0|.}" || f == "{{3|1|4}|0|.}"));
}

#[test]
fn conjectural_results_are_marked() {
    let o = scoregame(&["canon", "{{1|0|.},{0|0|.}|0|.}", "--mode", "conjectural"]);
    let out = stdout(&o);
    assert!(out.starts_with("[conjectural] {{1|0|.}|0|.}"), "{out}");
    let o = scoregame(&["canon", "{{1|0|.},{0|0|.}|0|.}", "--mode", "conjectural", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["conjectural"], true);
}

#[test]
fn json_records_have_stable_fields() {
    let o = scoregame(&["enum", "--depth", "1", "--width", "1", "--scores", "0,1", "--format", "json"]);
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 18);
    for v in &lines {
        for field in ["term", "sl", "sr", "outcome"] {
            assert!(v.get(field).is_some(), "{v}");
        }
    }
}

#[test]
fn tf_and_rationals() {
    assert!(stdout(&scoregame(&["tf", "TBF"])).contains("outcome=P"));
    assert_eq!(stdout(&scoregame(&["sum", "1/2", "0.25"])), "3/4\n");
    assert_eq!(stdout(&scoregame(&["neg", "{.|-3/2|2}"])), "{-2|3/2|.}\n");
}

#[test]
fn byte_identical_reruns() {
    let args = ["verify", "fixtures", "--format", "json"];
    assert_eq!(scoregame(&args).stdout, scoregame(&args).stdout);
}
