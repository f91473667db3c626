mod common;

use common::degen;
use degen::genus2::ModulePair;
use degen::series::QSeries;
use degen::sewing::EpsSeries;
use degen::virasoro::VirState;
use degen::zhu::DiffOp;

#[test]
fn beta_rows() {
    let r = degen(&["beta", "--max", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "k  beta_k\n2  -1/12\n4  -1/480\n");
    let r = degen(&["beta", "--max", "2"]);
    assert_eq!(r.stdout.lines().count(), 2);
    let r = degen(&["beta"]);
    assert!(r.stdout.trim_end().ends_with("14 1/464486400"));
}

#[test]
fn beta_rejects_odd_max() {
    let r = degen(&["beta", "--max", "5"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("even"));
}

#[test]
fn lambda_table() {
    let r = degen(&["lambda", "--max-weight", "0"]);
    assert_eq!(r.stdout, "lambda^(0) = 1 · vacuum\nconstructions agree: yes\n");
    let r = degen(&["lambda", "--max-weight", "6"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("lambda^(2) = -1/12 · L[-2]\n"));
    assert!(r.stdout.contains("lambda^(6) = 1/12096 · L[-6] + 1/5760 · L[-4]L[-2] + -1/10368 · L[-2]L[-2]L[-2]\n"));
    assert_eq!(degen(&["lambda", "--max-weight", "3"]).code, 2);
}

#[test]
fn lambda_json_round_trips() {
    let r = degen(&["lambda", "--max-weight", "8", "--format", "json"]);
    let v = r.json();
    for w in v["weights"].as_array().unwrap() {
        let state: VirState = serde_json::from_value(w["state"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&state).unwrap(), w["state"]);
    }
}

#[test]
fn compute_examples() {
    let r = degen(&["compute", "onepoint", "--partition", "2,2"]);
    assert_eq!(r.stdout.trim_end(), "∂^2 + 2*E2*∂ + 1/2*E4*C");
    let r = degen(&["compute", "eisenstein", "--k", "3"]);
    assert!(r.stdout.starts_with("0 "), "{}", r.stdout);
    let r = degen(&["compute", "eisenstein", "--k", "2", "--q-order", "4"]);
    assert_eq!(r.stdout.trim_end(), "-1/12 + 2*q + 6*q^2 + 8*q^3 + 14*q^4 + O(q^5)");
    let r = degen(&["compute", "tau-degen", "--q-order", "1", "--eps-order", "4"]);
    assert_eq!(r.stdout.trim_end(), "(-1/12 + O(q1^2))*eps^2 + (-1/1728 + 1/72*q1 + O(q1^2))*eps^4 + O(eps^5)");
}

#[test]
fn every_object_renders() {
    for obj in ["eta", "period", "z2-heisenberg", "z2-module"] {
        let r = degen(&["compute", obj, "--q-order", "2", "--eps-order", "2", "--alpha-sq", "1"]);
        assert_eq!(r.code, 0, "{obj}: {}", r.stderr);
        assert!(!r.stdout.is_empty());
    }
    let r = degen(&["compute", "onepoint", "--partition", "2", "--basis", "theta"]);
    assert_eq!(r.stdout.trim_end(), "∂ + 1/2*E2*C");
}

#[test]
fn malformed_flags_are_usage_errors() {
    for args in [
        &["compute", "onepoint", "--partition", "2,1"][..],
        &["compute", "onepoint", "--partition", "x"],
        &["compute", "onepoint"],
        &["compute", "eisenstein", "--k", "1"],
        &["compute", "z2-module", "--alpha-sq", "one"],
        &["compute", "tau-degen", "--eps-order", "6", "--matrix-size", "4"],
        &["verify", "nope"],
        &["verify", "detHi", "--eps-order", "4", "--l-max", "3"],
        &["verify", "theta-degen", "--beta-sq", "1"],
        &["verify", "theta-degen", "--max-weight", "4"],
    ] {
        assert_eq!(degen(args).code, 2, "{args:?}");
    }
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "modular-identities"][..],
        &["verify", "detHi"],
        &["verify", "theta-degen", "--alpha-sq", "1", "--rank", "1"],
        &["verify", "heisenberg-degen", "--q-order", "4"],
        &["verify", "structure", "--max-weight", "6"],
    ] {
        let r = degen(args);
        assert_eq!(r.code, 0, "{args:?}\n{}", r.stdout);
        assert!(r.stdout.trim_end().ends_with(", 0 failed"));
    }
}

#[test]
fn verify_all_reports_every_suite() {
    let r = degen(&["verify", "all", "--eps-order", "4", "--q-order", "4", "--max-weight", "4", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for prefix in ["modular-identities:", "detHi:", "heisenberg-degen:", "theta-degen alpha^2=1/4 r=2:", "structure:"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix}");
    }
    assert!(v["notes"][0].as_str().unwrap().contains("q2^(r/24)"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["compute", "z2-heisenberg", "--q-order", "3", "--eps-order", "4", "--format", "json"];
    assert_eq!(degen(&args).stdout, degen(&args).stdout);
}

#[test]
fn series_json_round_trips() {
    let r = degen(&["compute", "tau-degen", "--q-order", "3", "--eps-order", "6", "--format", "json"]);
    let v = r.json();
    let s = EpsSeries::<QSeries>::from_json(&v).unwrap();
    assert_eq!(s.to_json().unwrap(), v);

    let r = degen(&["compute", "onepoint", "--partition", "4,2", "--basis", "theta", "--format", "json"]);
    let v = r.json();
    let op: DiffOp = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&op).unwrap(), v);
}

#[test]
fn module_pair_matches_library() {
    let r = degen(&["compute", "z2-module", "--alpha-sq", "1/4", "--rank", "2", "--q-order", "2", "--eps-order", "2", "--format", "json"]);
    let p = ModulePair::first_only(2, degen::rational::rat(1, 4));
    let z = degen::genus2::z2_module_pair(&p, 2, 2, 2, None).unwrap();
    assert_eq!(r.json(), z.to_json().unwrap());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("degen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("orders.cfg");
    std::fs::write(&path, "q-order=2\nformat=json\n").unwrap();
    let p = path.to_str().unwrap();
    let r = degen(&["compute", "eta", "--config", p]);
    assert_eq!(r.json()["trunc"], 2);
    let r = degen(&["compute", "eta", "--config", p, "--q-order", "3", "--format", "table"]);
    assert_eq!(r.stdout.trim_end(), "q^(1/24)*(1 - q - q^2 + O(q^4))");
    std::fs::write(&path, "unknown=1\n").unwrap();
    assert_eq!(degen(&["beta", "--config", p]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}
