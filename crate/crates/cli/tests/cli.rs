//! End-to-end behavior of every subcommand against real files.

use std::path::Path;
use std::process::{Command, Output};

fn maskuq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_maskuq"))
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

const ALL_DRY_3X3: &str = "P2\n3 3\n255\n255 255 255\n255 255 255\n255 255 255\n";
const BLOCK_3X3_IN_5X5: &str = "0,0,0,0,0\n0,1,1,1,0\n0,1,1,1,0\n0,1,1,1,0\n0,0,0,0,0\n";

#[test]
fn metrics_all_dry_frame() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("frame.pgm");
    write(&mask, ALL_DRY_3X3);
    let output = maskuq().arg("metrics").arg(&mask).output().unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with(",1,0,"), "row: {row}");
}

#[test]
fn metrics_missing_file_keeps_going_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pgm");
    let c = dir.path().join("c.pgm");
    write(&a, ALL_DRY_3X3);
    write(&c, ALL_DRY_3X3);
    let output = maskuq()
        .arg("metrics")
        .arg(&a)
        .arg(dir.path().join("missing.pgm"))
        .arg(&c)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let rows = stdout(&output);
    assert_eq!(
        rows.lines().count(),
        3,
        "header + two surviving rows: {rows}"
    );
    let diagnostics = String::from_utf8_lossy(&output.stderr);
    assert!(diagnostics.contains("missing.pgm"));
}

#[test]
fn metrics_directory_rows_sorted_by_filename() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["b.pgm", "a.pgm", "c.csv"] {
        write(
            &dir.path().join(name),
            if name.ends_with("csv") {
                "1,0\n"
            } else {
                ALL_DRY_3X3
            },
        );
    }
    let output = maskuq().arg("metrics").arg(dir.path()).output().unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    let ids: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(ids.len(), 3);
}

#[test]
fn metrics_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("frame.pgm");
    write(&mask, ALL_DRY_3X3);
    let output = maskuq()
        .args(["metrics", "--format", "json", "--resolution", "12.6"])
        .arg(&mask)
        .output()
        .unwrap();
    assert!(output.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed[0]["theta_dry"], 1.0);
    assert_eq!(parsed[0]["rho_cl_physical"], 0.0);
}

#[test]
fn simulate_axis_arithmetic_gives_40_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("matrix.csv");
    let status = maskuq()
        .args([
            "simulate", "--cells", "12.6", "--radii", "5:200:5", "--iters", "5", "--seed", "7",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 41, "header + 40 cells");
    assert!(out.with_extension("manifest.json").exists());
}

#[test]
fn simulate_rejects_bad_config_before_compute() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("matrix.csv");
    let output = maskuq()
        .args(["simulate", "--cells", "12.6", "--radii", "900", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists(), "no output on config error");
}

#[test]
fn simulate_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.conf");
    write(
        &config,
        "# sweep setup\ndomain = 1000\ncells = 10,20\nradii = 30:60:30\niters = 4\nseed = 3\nboundary = dilate\n",
    );
    let out = dir.path().join("matrix.csv");
    let status = maskuq()
        .args(["simulate", "--config"])
        .arg(&config)
        .args(["--iters", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5, "header + 2x2 cells");
    assert!(text.lines().nth(1).unwrap().contains(",dilate,"));
    let manifest = std::fs::read_to_string(out.with_extension("manifest.json")).unwrap();
    assert!(manifest.contains("\"--iters\",\n    \"2\"") || manifest.contains("\"2\""));
}

#[test]
fn calibrate_single_bin_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("population.csv");
    write(&hist, "bin_lo,bin_hi,count\n40,60,12\n");
    let out = dir.path().join("table.csv");
    let status = maskuq()
        .args(["calibrate", "--histogram"])
        .arg(&hist)
        .args([
            "--resolution",
            "12.6",
            "--radii",
            "50",
            "--iters",
            "50",
            "--seed",
            "1",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "header + one row + summary: {text}");
    assert!(lines[1].starts_with("1,40,60,50,12,"));
    assert!(lines[2].starts_with("summary,,,,12,"));
    // summary of a one-row table equals the row's error values
    let row: Vec<&str> = lines[1].split(',').collect();
    let summary: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(row[5..9], summary[5..9]);
}

#[test]
fn calibrate_from_mask_requires_population() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.csv");
    let output = maskuq()
        .args(["calibrate", "--resolution", "12.6", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn calibrate_compare_boundary_direction() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("population.csv");
    // argon-shaped frequencies over 25-µm bins
    let mut body = String::from("bin_lo,bin_hi,count\n");
    for (i, w) in [184u64, 110, 59, 31, 11, 7, 3, 2].iter().enumerate() {
        body.push_str(&format!(
            "{},{},{w}\n",
            12.5 + 25.0 * i as f64,
            37.5 + 25.0 * i as f64
        ));
    }
    write(&hist, &body);
    let out = dir.path().join("comparison.csv");
    let status = maskuq()
        .args(["calibrate", "--histogram"])
        .arg(&hist)
        .args([
            "--resolution",
            "12.6",
            "--radii",
            "25:200:25",
            "--iters",
            "2000",
            "--seed",
            "6",
            "--compare-boundary",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with("pre_perimeter,"))
        .expect("side-by-side summary row");
    let fields: Vec<&str> = line.split(',').collect();
    let erode: f64 = fields[1].parse().unwrap();
    let dilate: f64 = fields[2].parse().unwrap();
    assert!(
        dilate.abs() <= erode.abs(),
        "dilation should not worsen perimeter PRE: {dilate} vs {erode}"
    );
}

#[test]
fn calibrate_argon_population_negative_perimeter_summary() {
    let dir = tempfile::tempdir().unwrap();
    let hist = dir.path().join("argon.csv");
    let mut body = String::from("bin_lo,bin_hi,count\n");
    let edges = [5.0, 20.0, 40.0, 62.5, 87.5, 112.5, 137.5, 162.5, 187.5];
    for (i, w) in [184u64, 110, 59, 31, 11, 7, 3, 2].iter().enumerate() {
        body.push_str(&format!("{},{},{w}\n", edges[i], edges[i + 1]));
    }
    write(&hist, &body);
    let out = dir.path().join("table.csv");
    let status = maskuq()
        .args(["calibrate", "--histogram"])
        .arg(&hist)
        .args([
            "--resolution",
            "12.6",
            "--radii",
            "10,30,50,75,100,125,150,175",
            "--iters",
            "800",
            "--seed",
            "3",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let summary = text.lines().find(|l| l.starts_with("summary,")).unwrap();
    let pre_perimeter: f64 = summary.split(',').nth(7).unwrap().parse().unwrap();
    assert!(pre_perimeter < 0.0, "summary row: {summary}");
}

#[test]
fn bubbles_json_table() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("block.csv");
    write(&mask, BLOCK_3X3_IN_5X5);
    let out = dir.path().join("bubbles.json");
    let status = maskuq()
        .arg("bubbles")
        .arg(&mask)
        .args(["--format", "json", "--resolution", "2"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(rows[0]["area_px"], 9);
    assert_eq!(rows[0]["perimeter_px"], 8);
    assert_eq!(rows[0]["area_phys"], 36.0);
}

#[test]
fn calibrate_rejects_conflicting_embedded_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("frame.pgm");
    write(
        &mask,
        "P2\n# resolution 10\n3 3\n255\n0 255 0\n255 255 255\n0 255 0\n",
    );
    let out = dir.path().join("table.csv");
    let output = maskuq()
        .args(["calibrate", "--mask"])
        .arg(&mask)
        .args([
            "--resolution",
            "12.6",
            "--radii",
            "50",
            "--iters",
            "10",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("conflicts"));
}

#[test]
fn evaluate_identical_dirs_score_one() {
    let dir = tempfile::tempdir().unwrap();
    let masks = dir.path().join("frames");
    std::fs::create_dir(&masks).unwrap();
    write(&masks.join("f1.csv"), "1,0\n0,1\n");
    write(&masks.join("f2.csv"), "1,1\n0,0\n");
    let output = maskuq()
        .arg("evaluate")
        .arg("--pred")
        .arg(&masks)
        .arg("--truth")
        .arg(&masks)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    for line in text.lines().skip(1).take(3) {
        for cell in line.split(',').skip(1) {
            assert_eq!(cell, "1", "all metrics must be 1 in {line}");
        }
    }
}

#[test]
fn evaluate_seven_pixel_example_row() {
    let dir = tempfile::tempdir().unwrap();
    let pred = dir.path().join("pred.csv");
    let truth = dir.path().join("truth.csv");
    write(&pred, "1,1,1,0,0,0,0\n");
    write(&truth, "1,1,0,1,0,0,0\n");
    let output = maskuq()
        .arg("evaluate")
        .arg("--pred")
        .arg(&pred)
        .arg("--truth")
        .arg(&truth)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout(&output);
    let row = text.lines().nth(1).unwrap();
    let mcc: f64 = row.split(',').next_back().unwrap().parse().unwrap();
    assert!((mcc - 5.0 / 12.0).abs() < 1e-12, "mcc {mcc}");
}

#[test]
fn evaluate_length_mismatch_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write(&a, "1\n");
    write(&b, "1\n");
    let output = maskuq()
        .arg("evaluate")
        .arg("--pred")
        .arg(&a)
        .arg(&b)
        .arg("--truth")
        .arg(&a)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn evaluate_dimension_mismatch_names_pair_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write(&a, "1,0\n");
    write(&b, "1\n");
    let output = maskuq()
        .arg("evaluate")
        .arg("--pred")
        .arg(&a)
        .arg("--truth")
        .arg(&b)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(
        err.contains("a.csv") && err.contains("b.csv"),
        "stderr: {err}"
    );
}

#[test]
fn bubbles_block_mask_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("block.csv");
    write(&mask, BLOCK_3X3_IN_5X5);
    let out = dir.path().join("bubbles.csv");
    let status = maskuq()
        .arg("bubbles")
        .arg(&mask)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields[2], "9", "area_px");
    assert_eq!(fields[3], "8", "perimeter_px");
}

#[test]
fn bubbles_svg_does_not_change_csv() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("block.csv");
    write(&mask, BLOCK_3X3_IN_5X5);
    let out_a = dir.path().join("a.csv");
    let hist_a = dir.path().join("ha.csv");
    let out_b = dir.path().join("b.csv");
    let hist_b = dir.path().join("hb.csv");
    let svg = dir.path().join("chart.svg");
    maskuq()
        .arg("bubbles")
        .arg(&mask)
        .args(["--bins", "3"])
        .arg("--out")
        .arg(&out_a)
        .arg("--hist")
        .arg(&hist_a)
        .status()
        .unwrap();
    maskuq()
        .arg("bubbles")
        .arg(&mask)
        .args(["--bins", "3"])
        .arg("--out")
        .arg(&out_b)
        .arg("--hist")
        .arg(&hist_b)
        .arg("--svg")
        .arg(&svg)
        .status()
        .unwrap();
    assert!(svg.exists());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert_eq!(
        std::fs::read(&out_a).unwrap(),
        std::fs::read(&out_b).unwrap()
    );
    assert_eq!(
        std::fs::read(&hist_a).unwrap(),
        std::fs::read(&hist_b).unwrap()
    );
}

#[test]
fn bubbles_connectivity_flag_changes_component_count() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("diag.csv");
    // two pixels touching only diagonally
    write(&mask, "1,0\n0,1\n");
    let rows = |conn: &str| {
        let out = dir.path().join(format!("c{conn}.csv"));
        maskuq()
            .arg("bubbles")
            .arg(&mask)
            .args(["--connectivity", conn])
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        std::fs::read_to_string(&out).unwrap().lines().count() - 1
    };
    assert_eq!(rows("8"), 1);
    assert_eq!(rows("4"), 2);
}

#[test]
fn bubbles_size_classes_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let mask = dir.path().join("two.csv");
    // one single-pixel bubble and one 3x3 bubble
    write(&mask, "1,0,0,0,0\n0,0,1,1,1\n0,0,1,1,1\n0,0,1,1,1\n");
    let out = dir.path().join("bubbles.csv");
    let status = maskuq()
        .arg("bubbles")
        .arg(&mask)
        .args(["--field", "area", "--classes", "2,5"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].ends_with(",size_class"));
    assert!(
        lines[1].ends_with(",0"),
        "1-px bubble below both thresholds: {}",
        lines[1]
    );
    assert!(
        lines[2].ends_with(",2"),
        "9-px bubble above both thresholds: {}",
        lines[2]
    );
}

#[test]
fn convergence_four_milestones_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let status = maskuq()
        .args([
            "convergence",
            "--cell",
            "12.6",
            "--radius",
            "50",
            "--milestones",
            "50,100,150,200",
            "--seed",
            "3",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5, "header + 4 milestones");
    assert!(out.with_extension("manifest.json").exists());
}

#[test]
fn manifest_replay_reproduces_output_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("matrix.csv");
    maskuq()
        .args([
            "simulate", "--cells", "10,20", "--radii", "30,60", "--iters", "20", "--seed", "9",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    let first = std::fs::read(&out).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(out.with_extension("manifest.json")).unwrap(),
    )
    .unwrap();
    let args: Vec<String> = manifest["resolved_args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    std::fs::remove_file(&out).unwrap();
    let status = maskuq().args(&args).status().unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&out).unwrap(), first);
}
