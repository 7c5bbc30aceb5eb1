//! Command-line behavior: exit codes, determinism, file formats and the
//! config-file/flag precedence.

use std::fs;

use netgame::cli::run;
use netgame::spe::OutcomeRow;

fn run_args(args: &[&str]) -> i32 {
    let mut full = vec!["netgame"];
    full.extend_from_slice(args);
    run(full)
}

#[test]
fn solve_writes_a_csv_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("row.csv");
    let code = run_args(&[
        "solve", "--n", "10", "--c_D", "1/20", "--c_A", "1/8", "--tau", "0.3", "--tau_R", "0.45",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,c_D,c_A,tau,tau_R,regime,situation,e1,eA,e2,u_D,u_A,delta");
    let row = OutcomeRow::from_csv(lines.next().unwrap()).unwrap();
    assert_eq!(row.situation.token(), "S2");
    assert_eq!((row.e1, row.ea, row.e2), (9, 1, 1));
    assert_eq!(row.u_d, 0.05);
    assert_eq!(row.u_a, 0.325);
}

#[test]
fn csv_and_text_forms_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("solve.csv");
    let text_path = dir.path().join("solve.txt");
    let args = [
        "--n", "10", "--c_D", "1/30", "--c_A", "1/20", "--tau", "0.55", "--tau_R", "0.45",
    ];
    let mut csv_args = vec!["solve"];
    csv_args.extend_from_slice(&args);
    csv_args.extend_from_slice(&["--out", csv_path.to_str().unwrap()]);
    assert_eq!(run_args(&csv_args), 0);
    let mut text_args = vec!["solve"];
    text_args.extend_from_slice(&args);
    text_args.extend_from_slice(&["--format", "text", "--out", text_path.to_str().unwrap()]);
    assert_eq!(run_args(&text_args), 0);

    let csv_row = fs::read_to_string(&csv_path).unwrap().lines().nth(1).unwrap().to_string();
    let from_csv = OutcomeRow::from_csv(&csv_row).unwrap();
    let record = fs::read_to_string(&text_path).unwrap();
    let from_text = OutcomeRow::from_record(record.trim()).unwrap();
    assert_eq!(from_csv, from_text);
    assert_eq!(from_text.to_csv(), csv_row);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let code = run_args(&[
            "plan", "--n", "10", "--c_D", "1/20", "--c_A", "1/8", "--tau", "0.3",
            "--step", "1/200", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage error.
    assert_eq!(run_args(&["solve", "--n", "10"]), 1);
    assert_eq!(run_args(&["definitely-not-a-command"]), 1);
    // Resource error: the oracle refuses n beyond its ceiling.
    let code = run_args(&[
        "oracle", "--n", "9", "--c_D", "1/20", "--c_A", "1/8", "--tau", "0.3", "--tau_R", "0.1",
    ]);
    assert_eq!(code, 3);
    // Clean verification exits 0.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let code = run_args(&[
        "verify", "--n", "4", "--grid", "random:5", "--seed", "3", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report = fs::read_to_string(&out).unwrap();
    assert!(report.trim_end().ends_with("mismatch=0"));
}

#[test]
fn construct_exports_dot_and_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    let out = dir.path().join("h.edges");
    let code = run_args(&[
        "construct", "--harary", "5", "4", "--dot", dot.to_str().unwrap(), "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot_text = fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph g {"));
    assert_eq!(dot_text.matches(" -- ").count(), 10);
    let edges = fs::read_to_string(&out).unwrap();
    assert_eq!(edges.lines().next().unwrap(), "n=5");
    assert_eq!(edges.lines().count(), 11);
}

#[test]
fn construct_case4_reports_both_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c4.edges");
    let code = run_args(&["construct", "--case4", "6", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# constructed_edges=9 formula_edges=11\n"));
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("params.cfg");
    fs::write(&cfg, "n=10\nc_D=1/20\nc_A=1/8\ntau=0.3\ntau_R=0.45\n").unwrap();
    let out = dir.path().join("row.csv");
    // tau_R overridden on the command line.
    let code = run_args(&[
        "solve", "--config", cfg.to_str().unwrap(), "--tau_R", "0.1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    let row = OutcomeRow::from_csv(text.lines().nth(1).unwrap()).unwrap();
    assert_eq!(row.situation.token(), "S1");
    assert_eq!(row.u_d, 0.55);

    // Unknown keys are rejected.
    fs::write(&cfg, "n=10\nbogus=1\n").unwrap();
    assert_eq!(
        run_args(&["solve", "--config", cfg.to_str().unwrap()]),
        1
    );
}

#[test]
fn casestudy_names_are_validated() {
    assert_eq!(run_args(&["casestudy", "fig11"]), 1);
}

#[test]
fn fig6_situation_column_changes_exactly_twice() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig6.csv");
    assert_eq!(run_args(&["casestudy", "fig6", "--out", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&out).unwrap();
    let situations: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("tau_R"))
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    let changes = situations.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(changes, 2, "situation sequence: {situations:?}");
}

#[test]
fn sweep_taur_command_name_matches() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let code = run_args(&[
        "sweep-tauR", "--n", "6", "--c_D", "1/10", "--c_A", "1/7", "--tau", "0.3", "--step",
        "1/100", "--hi", "0.2", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("tau_R,regime,situation"));
}
