//! End-to-end checks of the CLI surface: summaries, emitted files,
//! cross-format consistency, error paths, and the verification command.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_matclass"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn matclass")
}

fn run_ok(args: &[&str]) -> String {
    let output = run(args);
    assert!(
        output.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn generate_prints_row_and_class_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("data");
    let stdout = run_ok(&["generate", "--n", "100", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(stdout.contains("100 rows, 3 classes"), "stdout: {stdout}");
    assert!(out.join("dataset.csv").is_file());
    assert!(out.join("schema.json").is_file());
}

#[test]
fn generate_with_point_spec_and_zero_noise_trains_perfectly() {
    let tmp = tempfile::tempdir().unwrap();
    let spec_path = tmp.path().join("spec.json");
    // Point-only profiles over two attributes.
    std::fs::write(
        &spec_path,
        r#"{
  "schema": {
    "class_attribute": "class",
    "class_labels": ["Polymer", "Metal"],
    "attributes": [
      { "name": "CS", "kind": "categorical", "values": ["Poor", "Good"] },
      { "name": "SM", "kind": "categorical", "values": ["Poor", "Excellent"] }
    ]
  },
  "class_weights": [1.0, 1.0],
  "profiles": [
    { "categorical": [ { "point": "Poor" }, { "point": "Good" } ] },
    { "categorical": [ { "point": "Excellent" }, { "point": "Poor" } ] }
  ],
  "noise_rate": 0.5
}"#,
    )
    .unwrap();
    let out = tmp.path().join("data");
    run_ok(&[
        "generate",
        "--spec",
        spec_path.to_str().unwrap(),
        "--n",
        "80",
        "--seed",
        "5",
        "--noise",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    let model = tmp.path().join("nb.json");
    run_ok(&[
        "train",
        "--schema",
        out.join("schema.json").to_str().unwrap(),
        "--data",
        out.join("dataset.csv").to_str().unwrap(),
        "--classifier",
        "nb",
        "--model",
        model.to_str().unwrap(),
    ]);
    let eval_dir = tmp.path().join("eval");
    let stdout = run_ok(&[
        "evaluate",
        "--schema",
        out.join("schema.json").to_str().unwrap(),
        "--data",
        out.join("dataset.csv").to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--out",
        eval_dir.to_str().unwrap(),
    ]);
    assert!(stdout.contains("pooled accuracy 100.00%"), "stdout: {stdout}");
}

#[test]
fn train_c45_on_pure_dataset_reports_single_leaf() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("pure.csv");
    std::fs::write(&csv, "CS,MANFT,class\nPoor,Good,Metal\nGood,Fair,Metal\n").unwrap();
    let model = tmp.path().join("tree.json");
    let stdout = run_ok(&[
        "train",
        "--schema",
        fixture("fixture14.schema.json").to_str().unwrap(),
        "--data",
        csv.to_str().unwrap(),
        "--classifier",
        "c45",
        "--model",
        model.to_str().unwrap(),
    ]);
    assert!(stdout.contains("depth 0, 1 leaves"), "stdout: {stdout}");
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&model).unwrap()).unwrap();
    assert_eq!(doc["kind"], "c45");
    assert_eq!(doc["root"]["leaf_label"], "Metal");
}

#[test]
fn trained_nb_model_file_has_expected_kind() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("nb.json");
    run_ok(&[
        "train",
        "--schema",
        fixture("nb8.schema.json").to_str().unwrap(),
        "--data",
        fixture("nb8.csv").to_str().unwrap(),
        "--classifier",
        "nb",
        "--alpha",
        "1.0",
        "--model",
        model.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&model).unwrap()).unwrap();
    assert_eq!(doc["kind"], "naive_bayes");
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["alpha"], 1.0);
}

#[test]
fn evaluate_formats_are_numerically_consistent() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("eval");
    run_ok(&[
        "evaluate",
        "--schema",
        fixture("fixture14.schema.json").to_str().unwrap(),
        "--data",
        fixture("fixture14.csv").to_str().unwrap(),
        "--classifier",
        "nb",
        "--split",
        "0.6",
        "--seed",
        "11",
        "--out",
        out.to_str().unwrap(),
        "--format",
        "text,csv,json",
    ]);
    let text = std::fs::read_to_string(out.join("report.txt")).unwrap();
    let csv = std::fs::read_to_string(out.join("report.csv")).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();

    let pooled = json["results"][0]["evaluation"]["pooled"]["accuracy"]
        .as_f64()
        .unwrap();
    let two_dp = format!("{:.2}", (pooled * 10000.0 + 0.5).floor() / 100.0);
    assert!(text.contains(&two_dp), "text report missing {two_dp}:\n{text}");
    let pooled_line = csv
        .lines()
        .find(|l| l.contains(",pooled,"))
        .expect("pooled row in csv");
    assert!(pooled_line.contains(&two_dp), "csv {pooled_line} missing {two_dp}");

    // Plot data files exist alongside the reports.
    assert!(out.join("plot_confusion.csv").is_file());
    assert!(out.join("plot_metrics.csv").is_file());
    assert!(out.join("plot_roc.csv").is_file());
}

#[test]
fn compare_on_determined_dataset_declares_ties() {
    let tmp = tempfile::tempdir().unwrap();
    // One attribute exactly determines the class.
    let csv = tmp.path().join("det.csv");
    let mut rows = String::from("CS,MANFT,class\n");
    for _ in 0..8 {
        rows.push_str("Poor,Good,Metal\n");
        rows.push_str("Good,Fair,Polymer\n");
        rows.push_str("Excellent,Good,Polymer\n");
    }
    std::fs::write(&csv, rows).unwrap();
    let out = tmp.path().join("cmp");
    let stdout = run_ok(&[
        "compare",
        "--schema",
        fixture("fixture14.schema.json").to_str().unwrap(),
        "--data",
        csv.to_str().unwrap(),
        "--split",
        "0.75",
        "--seed",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        stdout.contains("accuracy=tie"),
        "expected tie on fully determined data: {stdout}"
    );
    for file in [
        "comparison.txt",
        "comparison.csv",
        "comparison.json",
        "plot_confusion_nb.csv",
        "plot_confusion_c45.csv",
        "plot_metrics.csv",
        "plot_roc.csv",
    ] {
        assert!(out.join(file).is_file(), "missing {file}");
    }
}

#[test]
fn predict_handles_unlabeled_input() {
    let tmp = tempfile::tempdir().unwrap();
    let model = tmp.path().join("nb.json");
    run_ok(&[
        "train",
        "--schema",
        fixture("nb8.schema.json").to_str().unwrap(),
        "--data",
        fixture("nb8.csv").to_str().unwrap(),
        "--classifier",
        "nb",
        "--model",
        model.to_str().unwrap(),
    ]);
    let unlabeled = tmp.path().join("unlabeled.csv");
    std::fs::write(&unlabeled, "CS,SM\nPoor,Poor\nGood,Excellent\n").unwrap();
    let out = tmp.path().join("pred");
    run_ok(&[
        "predict",
        "--schema",
        fixture("nb8.schema.json").to_str().unwrap(),
        "--data",
        unlabeled.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let predictions = std::fs::read_to_string(out.join("predictions.csv")).unwrap();
    let lines: Vec<&str> = predictions.lines().collect();
    assert_eq!(lines[0], "row,predicted");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,"));
}

#[test]
fn evaluate_requires_exactly_one_mode() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("eval");
    let output = run(&[
        "evaluate",
        "--schema",
        fixture("nb8.schema.json").to_str().unwrap(),
        "--data",
        fixture("nb8.csv").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("--model or --classifier"), "stderr: {stderr}");
}

#[test]
fn malformed_csv_reports_row_and_column() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.csv");
    std::fs::write(&bad, "CS,SM,class\nPoor,Poor,Polymer\nSuperb,Poor,Metal\n").unwrap();
    let model = tmp.path().join("nb.json");
    let output = run(&[
        "train",
        "--schema",
        fixture("nb8.schema.json").to_str().unwrap(),
        "--data",
        bad.to_str().unwrap(),
        "--classifier",
        "nb",
        "--model",
        model.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("row 3, CS: unknown value 'Superb'"),
        "stderr: {stderr}"
    );
}

#[test]
fn load_schema_fixture_has_fifteen_attributes_three_labels() {
    let schema = matclass::Schema::from_json(
        &std::fs::read(fixture("materials_categorical.schema.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(schema.num_attributes(), 15);
    assert!(schema.attributes.iter().all(|a| a.is_categorical()));
    assert_eq!(schema.class_labels, ["Polymer", "Ceramic", "Metal"]);
}

#[test]
fn verify_tables_reports_and_flags() {
    let output = run(&["verify-tables"]);
    let stdout = String::from_utf8(output.stdout).unwrap();

    // The per-class and pooled NB checks pass.
    assert!(stdout.contains("PASS  nb/Polymer accuracy"));
    assert!(stdout.contains("PASS  nb pooled accuracy"));
    assert!(stdout.contains("PASS  nb pooled tpr"));
    // Derived C4.5 pins pass; the reported summary column and FPR warn.
    assert!(stdout.contains("PASS  c45 pooled accuracy (derived)"));
    assert!(stdout.contains("WARN  c45 reported summary accuracy"));
    assert!(stdout.contains("WARN  c45 reported fpr"));
    assert!(stdout.contains("not derivable"));
    // The one reference cell that contradicts its own counts fails, and the
    // exit status reflects it.
    assert!(stdout.contains("FAIL  c45/Ceramic accuracy"));
    assert!(stdout.contains("inconsistent with its own counts"));
    assert_eq!(output.status.code(), Some(1));
}
