use std::process::{Command, Output};

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn pair_rank_one_is_one_plus_two_k() {
    let o = dunkl(&["pair", "--k", "1/2", "--p", "x1", "--q", "x1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn apply_delta_on_b2() {
    let o = dunkl(&["apply", "--group", "B2", "--k", "1/2,1", "--op", "Delta", "--poly", "x1^2 + x2^2"]);
    assert!(o.status.success());
    // Δ_k|x|² = 2(N + 2γ) with γ = 2·1/2 + 2·1
    assert_eq!(stdout(&o).trim(), "16");
}

#[test]
fn negative_k_exits_with_config_error() {
    let o = dunkl(&["verify", "all", "--k", "-1/2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["error"]["origin"], "config");
}

#[test]
fn unknown_group_is_config_error() {
    let o = dunkl(&["group", "--group", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = dunkl(&["verify", "kernel", "--seed", "7", "--format", "json"]);
    let b = dunkl(&["verify", "kernel", "--seed", "7", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn heat_mass_json() {
    let o = dunkl(&["heat", "--mass", "--t", "1", "--x", "0.5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn kernel_rank_one_value() {
    // E_k(1, 1/2) for k = 1/2 equals e^{−1/2}₁F₁(3/2; 2; 1)
    let o = dunkl(&["kernel", "--k", "1/2", "--x", "1", "--y", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..60 {
        let nf = n as f64;
        term *= (1.5 + nf) / ((2.0 + nf) * (nf + 1.0));
        sum += term;
    }
    let expect = (-0.5f64).exp() * sum;
    assert!((v["re"].as_f64().unwrap() - expect).abs() < 1e-12);
}

#[test]
fn asympt_emits_csv() {
    let o = dunkl(&["asympt", "--k", "1/2", "--mode", "heat", "--t", "0.1,0.01,0.001"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t,value_re,value_im,target_re,target_im,error");
    assert_eq!(lines.len(), 4);
}

#[test]
fn rank_one_only_commands_reject_b2() {
    let o = dunkl(&["transform", "--group", "B2", "--xi", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integrate_second_moment() {
    // ∫x² e^{−x²/2}w_k dx / c_k = 1 + 2k
    let o = dunkl(&["integrate", "--k", "1", "--poly", "x1^2", "--nodes", "30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c_k = 2f64.powf(2.5) * gamma_three_halves();
    assert!((v["value"].as_f64().unwrap() / c_k - 3.0).abs() < 1e-12);
}

fn gamma_three_halves() -> f64 {
    std::f64::consts::PI.sqrt() / 2.0
}
