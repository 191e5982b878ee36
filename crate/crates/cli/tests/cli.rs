use std::fs;
use std::process::{Command, Output};

fn qbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbm")).args(args).env_remove("QBM_OUTPUT_DIR").output().unwrap()
}

struct Csv {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Csv {
    fn parse(text: &str) -> Csv {
        assert!(text.ends_with('\n'));
        let mut comments = Vec::new();
        let mut lines = text.lines();
        let header = loop {
            let line = lines.next().expect("header row");
            match line.strip_prefix("# ") {
                Some(c) => comments.push(c.to_string()),
                None => break line.split(',').map(String::from).collect::<Vec<_>>(),
            }
        };
        let rows = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
        Csv { comments, header, rows }
    }

    fn column(&self, name: &str) -> Vec<f64> {
        let j = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[j]).collect()
    }
}

fn run_csv(args: &[&str]) -> Csv {
    let out = qbm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    Csv::parse(&String::from_utf8(out.stdout).unwrap())
}

#[test]
fn green_contract() {
    let csv = run_csv(&["green", "--model", "srt", "--gamma", "0.769231", "--Omega", "5", "--tmax", "20", "--steps", "400"]);
    assert_eq!(csv.header, ["t", "G", "Gdot", "Gddot"]);
    assert_eq!(csv.rows.len(), 401);
    assert_eq!(csv.rows[0][1], 0.0);
    assert!((csv.rows[0][2] - 1.0).abs() < 1e-12);
    assert_eq!(csv.rows[400][0], 20.0);
}

#[test]
fn flags_round_trip_through_comments() {
    let csv = run_csv(&["msd", "--gamma", "0.3", "--Omega", "7.25", "--kt", "0.125", "--tmax", "3", "--steps", "3"]);
    for expected in ["gamma = 0.3", "Omega = 7.25", "kt = 0.125", "tmax = 3.0", "steps = 3", "model = srt"] {
        assert!(csv.comments.iter().any(|c| c == expected), "missing `{expected}` in {:?}", csv.comments);
    }
    assert_eq!(csv.header, ["t", "s", "sdot", "sddot"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["wigner", "--state", "cat", "--t", "0.4", "--xsteps", "20", "--psteps", "20"];
    let a = qbm(&args);
    let b = qbm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["mc-validate", "--samples", "5000", "--seed", "11"];
    assert_eq!(qbm(&args).stdout, qbm(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(qbm(&["moments"]).status.code(), Some(0));
    // divergent request is a numerical failure
    assert_eq!(qbm(&["moments", "--model", "ohmic"]).status.code(), Some(1));
    assert_eq!(qbm(&["moments", "--model", "ohmic", "--small-tau"]).status.code(), Some(2));
    assert_eq!(qbm(&["green", "--steps", "0"]).status.code(), Some(2));
    assert_eq!(qbm(&["green", "--tmin", "3", "--tmax", "1"]).status.code(), Some(2));
    assert_eq!(qbm(&["green", "--gamma", "-1"]).status.code(), Some(2));
    assert_eq!(qbm(&["figure", "7"]).status.code(), Some(2));
    assert_eq!(qbm(&["wigner", "--state", "squeezed", "--model", "ohmic"]).status.code(), Some(2));
    assert_eq!(qbm(&["jointdist", "--widths", "0.1,0.2", "--times", "1"]).status.code(), Some(2));
    assert_eq!(qbm(&["no-such-command"]).status.code(), Some(2));
    let out = qbm(&["green", "--steps", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 2 points"));
}

#[test]
fn output_locations() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_qbm"))
        .args(["figure", "5", "--steps", "10"])
        .env("QBM_OUTPUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(dir.path().join("figure5.csv")).unwrap();
    assert_eq!(Csv::parse(&text).header, ["t", "Gddot_srt", "Gddot_ohmic"]);
    let file = dir.path().join("nested/green.csv");
    let out = qbm(&["green", "--steps", "4", "--output", file.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(Csv::parse(&fs::read_to_string(file).unwrap()).rows.len(), 5);
}

#[test]
fn figure_contracts() {
    let f3 = run_csv(&["figure", "3", "--steps", "50"]);
    assert_eq!(f3.header, ["t", "A_exact", "A_WW", "A_weak"]);
    let f6 = run_csv(&["figure", "6", "--steps", "50"]);
    assert_eq!(f6.header, ["t", "s_exact", "s_weak"]);
    let f5 = run_csv(&["figure", "5", "--steps", "50"]);
    assert!(f5.column("Gddot_srt")[0].abs() < 1e-12);
    assert!((f5.column("Gddot_ohmic")[0] + 10.0 / 13.0).abs() < 1e-12);
    let f2 = run_csv(&["figure", "2", "--steps", "50"]);
    assert!((f2.column("x_coherent")[0] - 1.0).abs() < 1e-12);
    assert!((f2.column("x_displaced")[0] - 1.0).abs() < 1e-12);
    let f4 = run_csv(&["figure", "4", "--steps", "20"]);
    assert_eq!(f4.rows.len(), 3 * 21 * 21);
}

#[test]
fn figure_one_interference_grows() {
    let f1 = run_csv(&["figure", "1", "--steps", "400"]);
    let xs = f1.column("x");
    let mid = xs.iter().position(|x| x.abs() < 1e-12).unwrap();
    let initial = f1.column("P_initial");
    let later = f1.column("P_t");
    let direct = f1.column("P0_t");
    let peak0 = initial.iter().cloned().fold(0.0, f64::max);
    assert!(initial[mid] < 1e-2 * peak0, "{} vs {peak0}", initial[mid]);
    // at the later time the central fringe is of order one relative to the packets
    assert!((later[mid] - direct[mid]) > 0.5 * direct[mid]);
    let spread = f1.comments.iter().find(|c| c.starts_with("spread_factor")).unwrap();
    assert_eq!(spread, "spread_factor = 3.0");
}

#[test]
fn measurement_commands() {
    let cf = run_csv(&["chain-cf", "--widths", "0.3,0.5", "--times", "0,1", "--k", "1,-1", "--lambda-steps", "10"]);
    assert_eq!(cf.rows[0][1], 1.0);
    let joint = run_csv(&["jointdist", "--widths", "0.3,0.5", "--times", "0,1", "--xsteps", "10"]);
    assert_eq!(joint.header, ["x1", "x2", "density"]);
    assert_eq!(joint.rows.len(), 121);
    let p = run_csv(&["pdist", "--width", "0.4", "--center", "1", "--t", "0.5"]);
    assert!(p.column("P").iter().all(|v| *v >= 0.0));
    let cat = run_csv(&["cat", "--t", "0.5", "--xsteps", "100"]);
    let (total, direct, cross) = (cat.column("P"), cat.column("P_direct"), cat.column("P_interference"));
    for i in 0..total.len() {
        assert!((total[i] - direct[i] - cross[i]).abs() < 1e-14);
    }
    let displaced = run_csv(&["cat", "--displaced", "3", "--t", "0.5", "--xsteps", "10"]);
    assert!(displaced.comments.iter().any(|c| c.starts_with("attenuation = ")));
}

#[test]
fn mc_validate_passes_its_own_band() {
    let csv = run_csv(&["mc-validate", "--samples", "20000", "--seed", "3"]);
    assert_eq!(csv.rows.len(), 6);
    assert!(csv.column("z").iter().all(|z| z.abs() <= 3.0));
    assert_eq!(qbm(&["mc-validate", "--omega0", "0"]).status.code(), Some(2));
}
