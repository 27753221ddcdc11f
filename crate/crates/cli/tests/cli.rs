//! Runs the `unruh` binary and checks its exit codes and output contracts.

use std::process::{Command, Output};

fn unruh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unruh")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fig3_csv_layout() {
    let o = unruh(&["fig3", "--grid-min", "-1", "--grid-max", "1", "--grid-step", "0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# command=fig3 a=1 "));
    assert_eq!(lines[1], "K_over_a,abs_pos,abs_neg,arg_pos,arg_neg,converged");
    // K = 0 is skipped.
    assert_eq!(lines.len(), 2 + 4);
    for row in &lines[2..] {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 6);
        for c in &cells[..5] {
            assert!(c.parse::<f64>().unwrap().is_finite());
        }
        let arg: f64 = cells[3].parse().unwrap();
        assert!(arg > -std::f64::consts::PI && arg <= std::f64::consts::PI);
    }
}

#[test]
fn eval_values() {
    let o = unruh(&["eval", "unruh_temp", "--a", "6.2832"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).lines().next().unwrap().strip_prefix("unruh_temp=").unwrap().parse().unwrap();
    assert!((v - 1.0).abs() < 1e-5);

    let o = unruh(&["eval", "beta2", "--a", "1", "--k", "1", "--K", "1"]);
    assert!(o.status.success());
    let v: f64 = stdout(&o).lines().next().unwrap().strip_prefix("beta2=").unwrap().parse().unwrap();
    assert!((v - 2.9777e-4).abs() < 1e-7);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(unruh(&["eval", "nonsense"]).status.code(), Some(2));
    assert_eq!(unruh(&["fig5", "--grid-step", "0"]).status.code(), Some(2));
    assert_eq!(unruh(&["fig5", "--bogus"]).status.code(), Some(2));
    assert_eq!(unruh(&["eval", "beta2", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "a = 2\ngrid_min = 0\ngrid_max = 1\ngrid_step = 0.5\nomega0 = 0.02\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = unruh(&["fig5", "--config", cfg, "--a", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let meta = text.lines().next().unwrap();
    assert!(meta.contains(" a=3 "), "{meta}");
    assert!(meta.contains("omega0=0.02 "), "{meta}");
    assert_eq!(text.lines().count(), 2 + 3);

    std::fs::write(dir.path().join("bad.conf"), "colour = red\n").unwrap();
    let bad = dir.path().join("bad.conf");
    assert_eq!(unruh(&["fig5", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let args = ["fig5", "--grid-min", "-2", "--grid-max", "2", "--grid-step", "1"];
    let direct = stdout(&unruh(&args));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(unruh(&with_out).status.success());
    assert_eq!(std::fs::read_to_string(path).unwrap(), direct);
}
