use std::process::{Command, Output};

fn gradbeam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradbeam"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = gradbeam(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_value(csv: &str, basis: &str, quantity: &str, n: &str, index: usize) -> f64 {
    csv.lines()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|f| f[0] == n && f[1] == basis && f[2] == quantity && f[3] == index.to_string())
        .unwrap_or_else(|| panic!("no {basis} {quantity} N={n} #{index}"))[4]
        .parse()
        .unwrap()
}

#[test]
fn static_table_for_all_bases() {
    let out = stdout(&["static", "--basis", "all", "--n", "11", "--bc", "ss"]);
    assert!(out.starts_with("w_bar_center\n   N   lagrange    hermite     oracle\n  11     1.2996     1.2993     1.2992\n"));
    assert!(out.contains("w_bar (N=11)"));
}

#[test]
fn buckling_convergence_sweep() {
    let csv = stdout(&[
        "converge",
        "--analysis",
        "buckling",
        "--bc",
        "ss",
        "--n",
        "5..15",
        "--format",
        "csv",
    ]);
    assert!(csv.starts_with("N,basis,quantity,index,value\n"));
    let ns: Vec<usize> = (5..=15).collect();
    for n in &ns {
        let p = csv_value(&csv, "lagrange", "p_bar", &n.to_string(), 1);
        assert!((p - 9.8909).abs() < 5e-3, "N={n}: {p}");
    }
    let exact = csv_value(&csv, "oracle", "p_bar", "", 1);
    assert!((exact - 9.8926).abs() < 1e-3 * 9.8926);
    assert!(!csv.contains('\r'));
}

#[test]
fn oracle_free_free_row() {
    let csv = stdout(&[
        "modal", "--basis", "oracle", "--bc", "free", "--modes", "6", "--format", "csv",
    ]);
    let expected = [22.4040, 61.9900, 122.2350, 203.6676, 307.2790, 434.2906];
    for (i, e) in expected.iter().enumerate() {
        let v = csv_value(&csv, "oracle", "omega_bar", "", i + 1);
        assert!((v - e).abs() < 1e-3 * e);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "converge",
        "--analysis",
        "modal",
        "--n",
        "7..13",
        "--jobs",
        "3",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    let c = stdout(&[
        "converge",
        "--analysis",
        "modal",
        "--n",
        "7..13",
        "--jobs",
        "1",
    ]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn config_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("gradbeam_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("beam.cfg");
    std::fs::write(
        &cfg,
        "# classical beam\ng1 = 0\ng2 = 0\nbasis = lagrange\nn = 15\n",
    )
    .unwrap();
    let out = dir.join("out.csv");
    let printed = stdout(&[
        "buckling",
        "--config",
        cfg.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(printed.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    let p = csv_value(&csv, "lagrange", "p_bar", "15", 1);
    assert!((p - std::f64::consts::PI.powi(2)).abs() < 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dump_weights_lists_nodes_and_weights() {
    let csv = stdout(&["dump-weights", "--n", "5", "--format", "csv"]);
    assert!((csv_value(&csv, "gll", "weight", "5", 3) - 32.0 / 45.0).abs() < 1e-15);
}

#[test]
fn invalid_spec_exits_with_usage_error() {
    for args in [
        &["static", "--n", "3"][..],
        &["static", "--n", "42"],
        &["modal", "--bc", "pinned"],
        &["static", "--format", "xml"],
        &["explode"],
    ] {
        let out = gradbeam(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn solver_errors_carry_context() {
    let out = gradbeam(&["static", "--basis", "lagrange", "--bc", "free", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("lagrange N=9"), "{err}");
}
