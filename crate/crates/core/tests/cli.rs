use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_darkgate");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gate_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.toml", "btau = 1e6\n");
    let o = run(&["gate", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let f: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("F "))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(f >= 0.9999, "{f}");
    assert!(text.contains("Re U") && text.contains("Im U"));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", "alpha = 0\n");
    let o = run(&["gate", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));

    let unknown = write_config(dir.path(), "typo.toml", "alpah = 0.1\n");
    assert_eq!(run(&["gate", &unknown]).status.code(), Some(2));
    assert_eq!(run(&["gate", "/does/not/exist.toml"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--shapes", "gaussian,triangle"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--grid", "1e6,1e5"]).status.code(), Some(2));
    assert_eq!(run(&["leakage", "--case", "9"]).status.code(), Some(2));
    assert_eq!(run(&["blockade", "--mode", "slow"]).status.code(), Some(2));
    assert_eq!(run(&["gate"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_shape() {
    let o = run(&["sweep", "--grid", "1e6", "--shapes", "gaussian"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "btau,shape,E_sim,E_analytic_solid,E_analytic_dashed,F,residual_rydberg");
    assert_eq!(lines.len(), 2);
    let cells: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cells.len(), 7);
    assert_eq!(cells[0], "1.00000000e6");

    let full = stdout(&run(&["sweep", "--jobs", "4"]));
    assert_eq!(full.lines().count(), 1 + 13 * 2);
}

#[test]
fn out_dir_gets_output_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let args = ["sweep", "--grid", "1e5,1e6", "--out", out.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = std::fs::read(out.join("sweep.csv")).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("sweep_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "sweep");
    assert_eq!(manifest["config"]["alpha"], 0.10472);
    assert_eq!(manifest["outputs"][0], "sweep.csv");

    // identical inputs give identical bytes
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(out.join("sweep.csv")).unwrap(), first);
    let mut names: Vec<_> = std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["sweep.csv", "sweep_manifest.json"]);
}

#[test]
fn leakage_cases() {
    for (case, reference) in [("2", 1.7e-6), ("5", 6.4e-6)] {
        let o = run(&["leakage", "--case", case]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let row = text.lines().nth(1).unwrap();
        let missing: f64 = row.split(',').nth(6).unwrap().parse().unwrap();
        assert!(missing / reference < 2.0 && reference / missing < 2.0, "case {case}: {missing:e}");
    }
    let all = stdout(&run(&["leakage", "--all"]));
    assert_eq!(all.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn blockade_modes() {
    let magic = stdout(&run(&["blockade", "--mode", "magic"]));
    let cr: f64 = magic
        .lines()
        .find_map(|l| l.strip_prefix("|c_r(T)|"))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(cr <= 1e-10, "{cr}");

    let square = stdout(&run(&["blockade", "--mode", "square"]));
    let grab = |key: &str| -> f64 {
        square
            .lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    let avg = grab("<|c_r|^2> last period");
    let est = grab("Omega_t^2/(2 B_sh^2)");
    assert!((avg / est - 1.0).abs() < 0.05, "{avg} vs {est}");
}
