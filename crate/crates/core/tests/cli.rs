use std::process::{Command, Output};

fn qsaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsaf"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .env_remove("QSAF_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    format!("tests/fixtures/{name}.qsaf")
}

#[test]
fn catalog_and_tier_commands() {
    let o = qsaf(&["catalog", "list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 34);
    let o = qsaf(&["catalog", "list", "--category", "PE"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = qsaf(&["catalog", "show", "GroverOperator"]);
    assert!(stdout(&o).contains("id = 11"), "{}", stdout(&o));
    let o = qsaf(&["tier", "33"]);
    assert!(stdout(&o).contains("tier = universal"));
    let o = qsaf(&["heatmap"]);
    assert!(stdout(&o).contains("Ancilla Management"));
    let o = qsaf(&["catalog", "show", "99"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    assert_eq!(qsaf(&["validate", &fixture("grover_valid")]).status.code(), Some(0));
    assert_eq!(qsaf(&["validate", &fixture("grover_missing_contract")]).status.code(), Some(0));
    assert_eq!(qsaf(&["validate", "--strict-contracts", &fixture("grover_missing_contract")]).status.code(), Some(1));
    assert_eq!(qsaf(&["compose", &fixture("fan_out")]).status.code(), Some(1));
    assert_eq!(qsaf(&["validate", "no/such/file.qsaf"]).status.code(), Some(2));
    assert_eq!(qsaf(&["validate"]).status.code(), Some(0));
}

#[test]
fn seed_precedence() {
    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qsaf"));
        c.current_dir(env!("CARGO_MANIFEST_DIR")).arg("simulate").arg(fixture("grover_valid")).args(extra);
        match env {
            Some(s) => c.env("QSAF_SEED", s),
            None => c.env_remove("QSAF_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert!(run(&[], Some("99")).contains("seed = 7"));
    assert!(run(&["--seed", "5"], Some("99")).contains("seed = 5"));
    let text = std::fs::read_to_string(format!("{}/{}", env!("CARGO_MANIFEST_DIR"), fixture("vqe"))).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let bare = dir.path().join("v.qsaf");
    std::fs::write(&bare, text.replace("run minimize opt", "")).unwrap();
    let out = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qsaf"));
        c.arg("simulate").arg(&bare).args(["--shots", "10"]);
        match env {
            Some(s) => c.env("QSAF_SEED", s),
            None => c.env_remove("QSAF_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert!(out(Some("31")).contains("seed = 31"));
    assert!(out(None).contains("seed = 0"));
}

#[test]
fn analyze_compare_and_export() {
    let o = qsaf(&["analyze", "15", "--sizes", "4,8,16"]);
    let s = stdout(&o);
    assert!(s.contains("gate_count = 12") && s.contains("consistent = true"), "{s}");
    let o = qsaf(&["analyze", "25", "--params", "n=4, layers=2", "--nisq-threshold", "10"]);
    assert!(stdout(&o).contains("nisq_suitable = false"));
    let o = qsaf(&["compare", "25", "27", "--context", "nisq", "--params-a", "n=4, layers=2"]);
    assert!(stdout(&o).contains("recommendation = a"), "{}", stdout(&o));
    let o = qsaf(&["compare", "25", "27", "--context", "ft", "--params-a", "n=4, layers=2"]);
    assert!(stdout(&o).contains("recommendation = b"));
    assert_eq!(qsaf(&["compare", "25", "27", "--context", "later"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.qasm");
    let o = qsaf(&["export", &fixture("bell"), "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let golden = std::fs::read_to_string(format!("{}/tests/golden/bell.qasm", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden);
}

#[test]
fn kappa_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    std::fs::write(&path, "yes,no\n2,1\n2,1\n1,2\n").unwrap();
    let o = qsaf(&["kappa", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("kappa = -0.35"), "{}", stdout(&o));
    let o = qsaf(&["classify", "27"]);
    assert!(stdout(&o).contains("category = Variational Ansatz"));
}

#[test]
fn vqe_manifest_minimizes() {
    let s = stdout(&qsaf(&["simulate", &fixture("vqe")]));
    let best: f64 = s.lines().find_map(|l| l.strip_prefix("best_energy = ")).unwrap().parse().unwrap();
    assert!((best + 1.25f64.sqrt()).abs() < 1e-4, "{s}");
}
