//! Black-box tests of the `ctwalk` binary: artifact formats, flag
//! validation, and exit behaviour.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ctwalk")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("ctwalk-cli-{}-{tag}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn path(&self) -> &Path {
        &self.0
    }

    fn read(&self, name: &str) -> String {
        fs::read_to_string(self.0.join(name)).unwrap()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        fs::remove_dir_all(&self.0).ok();
    }
}

fn run_in(dir: &TempDir, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir.path())
        .output()
        .expect("binary must launch")
}

fn run_ok(dir: &TempDir, args: &[&str]) -> String {
    let output = run_in(dir, args);
    assert!(
        output.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

fn run_err(dir: &TempDir, args: &[&str]) -> String {
    let output = run_in(dir, args);
    assert!(!output.status.success(), "expected failure for {args:?}");
    String::from_utf8(output.stderr).unwrap()
}

#[test]
fn carpet_csv_rows_are_normalized_distributions() {
    let dir = TempDir::new("carpet-csv");
    run_ok(
        &dir,
        &[
            "carpet",
            "--nodes",
            "21",
            "--t-max",
            "10",
            "--samples",
            "50",
            "--method",
            "bloch",
            "--out",
            "carpet.csv",
        ],
    );
    let content = dir.read("carpet.csv");
    let mut lines = content.lines();
    assert_eq!(lines.next(), Some("t,node,probability"));

    let mut rows: Vec<(f64, usize, f64)> = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3, "bad CSV line {line}");
        rows.push((
            fields[0].parse().unwrap(),
            fields[1].parse().unwrap(),
            fields[2].parse().unwrap(),
        ));
    }
    assert_eq!(rows.len(), 50 * 21);

    // Time-major, nodes ascending from 1.
    for (index, &(_, node, _)) in rows.iter().enumerate() {
        assert_eq!(node, index % 21 + 1);
    }
    let times: Vec<f64> = rows.iter().map(|r| r.0).collect();
    assert!(times.windows(2).all(|w| w[0] <= w[1]));

    // Every time sample is a probability distribution.
    for sample in rows.chunks(21) {
        let sum: f64 = sample.iter().map(|r| r.2).sum();
        assert!((sum - 1.0).abs() < 1e-9, "row sums to {sum}");
    }
    // The walk starts localized at node 1.
    assert_eq!(rows[0].2, 1.0);
    assert!(rows[1].2 < 1e-30);
}

#[test]
fn csv_round_trips_bit_identically() {
    let dir = TempDir::new("roundtrip");
    run_ok(&dir, &["limdist", "--nodes", "21", "--out", "chi.csv"]);
    let content = dir.read("chi.csv");
    let values: Vec<f64> = content
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 21);
    let sum: f64 = values.iter().sum();
    assert!((sum - 1.0).abs() < 1e-10);

    // Re-print with the same formatting: identical text means the artifact
    // carries full precision.
    let reprinted: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
    for (line, printed) in content.lines().skip(1).zip(reprinted) {
        assert_eq!(line.split(',').nth(1).unwrap(), printed);
    }
}

#[test]
fn limdist_n3_prints_the_known_values() {
    let dir = TempDir::new("limdist3");
    run_ok(&dir, &["limdist", "--nodes", "3", "--out", "limdist.csv"]);
    let content = dir.read("limdist.csv");
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines[0], "node,probability");
    assert!(lines[1].starts_with("1,0.5555555555555"), "{}", lines[1]);
    assert!(lines[2].starts_with("2,0.2222222222222"), "{}", lines[2]);
    assert!(lines[3].starts_with("3,0.2222222222222"), "{}", lines[3]);
}

#[test]
fn pgm_carpet_has_the_documented_header_and_darkness() {
    let dir = TempDir::new("pgm");
    run_ok(
        &dir,
        &[
            "carpet",
            "--nodes",
            "6",
            "--t-max",
            "5",
            "--samples",
            "4",
            "--format",
            "pgm",
            "--out",
            "c.pgm",
        ],
    );
    let content = dir.read("c.pgm");
    let mut lines = content.lines();
    assert_eq!(lines.next(), Some("P2"));
    assert_eq!(lines.next(), Some("6 4"));
    assert_eq!(lines.next(), Some("255"));
    let rows: Vec<Vec<u32>> = lines
        .map(|l| l.split(' ').map(|p| p.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.len() == 6));
    assert!(rows.iter().flatten().all(|&p| p <= 255));
    // t = 0: probability 1 at the start node is the darkest pixel, the rest
    // carry no probability and stay white.
    assert_eq!(rows[0][0], 0);
    assert!(rows[0][1..].iter().all(|&p| p == 255));
}

#[test]
fn pgm_long_time_carpet_puts_the_revival_in_the_darkest_pixel() {
    // Over a long window (excluding the trivial t=0 delta), the darkest
    // pixel of the start-node column is the first revival, well after the
    // wave-return time N/2.
    let dir = TempDir::new("pgm-revival");
    run_ok(
        &dir,
        &[
            "carpet",
            "--nodes",
            "20",
            "--t-min",
            "10",
            "--t-max",
            "100",
            "--samples",
            "901",
            "--format",
            "pgm",
            "--out",
            "long.pgm",
        ],
    );
    let content = dir.read("long.pgm");
    let rows: Vec<u32> = content
        .lines()
        .skip(3)
        .map(|l| l.split(' ').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 901);
    let darkest = rows
        .iter()
        .enumerate()
        .min_by_key(|&(_, pixel)| pixel)
        .unwrap()
        .0;
    let t = 10.0 + darkest as f64 * 0.1;
    assert!(t > 10.0, "darkest return pixel at t = {t}, not after N/2");
    assert!(
        (67.0..=73.0).contains(&t),
        "darkest return pixel at t = {t}, outside the revival window"
    );
}

#[test]
fn pgm_log_scale_flattens_uniform_rows() {
    let dir = TempDir::new("pgm-log");
    // A long-time classical carpet is uniform: every pixel must be equal.
    run_ok(
        &dir,
        &[
            "classical",
            "--nodes",
            "5",
            "--t-min",
            "9000",
            "--t-max",
            "10000",
            "--samples",
            "3",
            "--format",
            "pgm",
            "--scale",
            "log",
            "--out",
            "u.pgm",
        ],
    );
    let content = dir.read("u.pgm");
    let pixel_lines: Vec<&str> = content.lines().skip(3).collect();
    for line in &pixel_lines {
        let pixels: Vec<&str> = line.split(' ').collect();
        assert_eq!(pixels.len(), 5);
        assert!(pixels.iter().all(|&p| p == pixels[0]), "{line}");
    }
}

#[test]
fn plot_scripts_reference_the_artifact_by_relative_path() {
    let dir = TempDir::new("plots");
    run_ok(
        &dir,
        &[
            "return-prob",
            "--nodes",
            "20",
            "--t-max",
            "100",
            "--samples",
            "60",
            "--out",
            "series.csv",
            "--emit-plot",
        ],
    );
    let script = dir.read("series.gp");
    assert!(script.contains("\"series.csv\""));
    assert!(script.contains("plot"));
    assert!(
        !script.contains(dir.path().to_str().unwrap()),
        "must not embed absolute paths"
    );

    run_ok(
        &dir,
        &[
            "carpet",
            "--nodes",
            "5",
            "--t-max",
            "5",
            "--samples",
            "10",
            "--out",
            "c.csv",
            "--emit-plot",
        ],
    );
    let script = dir.read("c.gp");
    assert!(
        script.contains("with image"),
        "carpet script draws a heat map"
    );
    assert!(
        script.contains("using 2:1:3"),
        "time belongs on the vertical axis"
    );

    run_ok(
        &dir,
        &["limdist", "--nodes", "4", "--out", "chi.csv", "--emit-plot"],
    );
    let script = dir.read("chi.gp");
    assert!(
        script.contains("with points"),
        "limdist script is a marker plot"
    );
}

#[test]
fn crossing_needs_a_target_and_honours_the_infinite_method() {
    let dir = TempDir::new("crossing");
    let output = run_in(&dir, &["crossing", "--nodes", "21", "--t-max", "4"]);
    assert!(!output.status.success(), "--target is required");

    run_ok(
        &dir,
        &[
            "crossing",
            "--nodes",
            "21",
            "--start",
            "1",
            "--target",
            "11",
            "--t-max",
            "4",
            "--samples",
            "41",
            "--method",
            "infinite",
            "--out",
            "inf.csv",
        ],
    );
    let content = dir.read("inf.csv");
    let first_data_line = content.lines().nth(1).unwrap();
    // J_10(0)^2 = 0: the infinite-lattice walker has not crossed yet.
    assert_eq!(first_data_line, "0,0");
}

#[test]
fn return_prob_starts_at_certainty() {
    let dir = TempDir::new("return");
    run_ok(
        &dir,
        &[
            "return-prob",
            "--nodes",
            "9",
            "--t-max",
            "5",
            "--samples",
            "11",
            "--out",
            "r.csv",
        ],
    );
    let content = dir.read("r.csv");
    assert_eq!(content.lines().next().unwrap(), "t,probability");
    assert_eq!(content.lines().nth(1).unwrap(), "0,1");
}

#[test]
fn invalid_combinations_fail_with_one_line_reasons() {
    let dir = TempDir::new("invalid");
    let stderr = run_err(
        &dir,
        &[
            "carpet",
            "--nodes",
            "8",
            "--boundary",
            "reflecting",
            "--method",
            "bloch",
        ],
    );
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.contains("Bloch"), "{stderr}");

    let stderr = run_err(&dir, &["carpet", "--nodes", "2", "--boundary", "periodic"]);
    assert!(stderr.contains("double bond"), "{stderr}");

    let stderr = run_err(&dir, &["limdist", "--nodes", "5", "--start", "6"]);
    assert!(stderr.contains("1-based"), "{stderr}");

    let stderr = run_err(&dir, &["return-prob", "--nodes", "9", "--gamma", "-1"]);
    assert!(stderr.contains("gamma"), "{stderr}");

    let stderr = run_err(
        &dir,
        &["carpet", "--nodes", "4", "--format", "pgm", "--emit-plot"],
    );
    assert!(stderr.contains("csv"), "{stderr}");

    let stderr = run_err(
        &dir,
        &["revival", "--nodes", "20", "--boundary", "reflecting"],
    );
    assert!(stderr.contains("periodic"), "{stderr}");

    let stderr = run_err(
        &dir,
        &["limdist", "--nodes", "4", "--out", "missing-dir/chi.csv"],
    );
    assert!(stderr.contains("missing-dir"), "{stderr}");
}

#[test]
fn revival_artifact_and_summary() {
    let dir = TempDir::new("revival");
    let stdout = run_ok(&dir, &["revival", "--nodes", "20", "--out", "revival.csv"]);
    assert!(stdout.contains("tau0 = 63.66197723675813"), "{stdout}");
    assert!(
        stdout.contains("first revival detected at t = "),
        "{stdout}"
    );

    let content = dir.read("revival.csv");
    let lines: Vec<&str> = content.lines().collect();
    assert_eq!(lines[0], "mode,revival_time");
    assert_eq!(lines.len(), 20); // header + 19 modes
                                 // Mode 10 is the fastest: exactly pi/2.
    let tau10: f64 = lines[10].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(tau10, std::f64::consts::FRAC_PI_2);
}

#[test]
fn bessel_check_reports_residuals_and_succeeds() {
    let dir = TempDir::new("bessel");
    let stdout = run_ok(&dir, &["bessel-check"]);
    assert!(stdout.contains("recurrence residual"), "{stdout}");
    assert!(stdout.contains("even-order normalization"), "{stdout}");
    assert!(stdout.contains("propagator normalization"), "{stdout}");
    assert!(stdout.contains("all residuals within bounds"), "{stdout}");
}

#[test]
fn no_temp_files_left_behind() {
    let dir = TempDir::new("atomic");
    run_ok(&dir, &["limdist", "--nodes", "4", "--out", "chi.csv"]);
    let leftovers: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|name| name.ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty(), "temp files left: {leftovers:?}");
}
