use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn semigp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semigp")).args(args).env_remove("SEMIGP_CONFIG").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn valid_algebra_is_accepted() {
    let out = semigp(&["algebra", "validate", &data("dual_numbers.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["radical_dim"], 1);
}

#[test]
fn non_associative_table_exits_3_with_witness() {
    let out = semigp(&["algebra", "validate", &data("non_associative.json")]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("non_associative.json"));
}

#[test]
fn broken_module_names_the_file() {
    let out = semigp(&["module", "validate", &data("bad_action.json"), "--algebra", &data("dual_numbers.json")]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad_action.json") && err.contains("action law"), "{err}");
}

#[test]
fn projective_module_classifies_positively() {
    let out = semigp(&["module", "classify", &data("regular.json"), "--bound", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    for key in ["torsionless", "reflexive"] {
        assert_eq!(v[key], true);
    }
    for key in ["semi_gp", "dual_semi_gp", "double_semi_gp", "gp"] {
        assert_eq!(v[key]["status"], "holds", "{key}");
    }
}

#[test]
fn ext_rows_over_self_injective_algebra() {
    let out = semigp(&["ext", &data("simple.json"), &data("regular.json"), "--bound", "3"]);
    assert_eq!(code(&out), 0);
    let dims: Vec<u64> = json(&out)["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 0, 0]);
}

#[test]
fn tor_of_simples_over_dual_numbers() {
    let out = semigp(&["tor", &data("simple_right.json"), &data("simple.json"), "--bound", "3"]);
    assert_eq!(code(&out), 0);
    let dims: Vec<u64> = json(&out)["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1, 1]);
}

#[test]
fn resolution_of_simple_is_periodic() {
    let out = semigp(&["module", "resolve", &data("simple.json"), "--steps", "3", "--minimal"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["term_dims"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(v["complete"], false);
}

#[test]
fn dual_of_simple_is_right_simple() {
    let v = json(&semigp(&["module", "dual", &data("simple.json")]));
    assert_eq!(v["dual"]["side"], "right");
    assert_eq!(v["dual_dim"], 1);
}

#[test]
fn monic_modes_agree_on_fixtures() {
    for (file, expected) in [("rep_monic.json", 0), ("rep_not_monic.json", 1)] {
        for mode in ["combinatorial", "homological"] {
            let out = semigp(&["monic", &data(file), "--mode", mode, "--bound", "3"]);
            assert_eq!(code(&out), expected, "{file} {mode}");
        }
    }
    let v = json(&semigp(&["monic", &data("rep_not_monic.json")]));
    assert_eq!(v["verdict"]["witness"]["kind"], "vertex");
}

#[test]
fn triple_commands() {
    let build = json(&semigp(&["t2", "build", &data("triple_not_monic.json")]));
    assert_eq!(build["module"]["dim"], 2);
    assert_eq!(build["algebra"]["dim"], 6);
    let dual = semigp(&["t2", "dual", &data("triple_projective.json")]);
    assert_eq!(code(&dual), 0);
    let cls = semigp(&["t2", "classify", &data("triple_projective.json"), "--bound", "3"]);
    assert_eq!(code(&cls), 0);
    let v = json(&cls);
    assert!(v["cross_checks"].as_array().unwrap().iter().all(|c| c["agrees"] == true));
}

#[test]
fn tensor_with_a2_has_six_basis_elements() {
    let v = json(&semigp(&["tensor", "build", &data("dual_numbers.json"), &data("a2.json")]));
    assert_eq!(v["dim"], 6);
    assert_eq!(v["paths"].as_array().unwrap().len(), 3);
}

#[test]
fn lambda_q_reports_layers_and_warnings() {
    let v = json(&semigp(&["gallery", "lambda-q", "--q", "2"]));
    assert_eq!(v["radical_layers"], serde_json::json!([1, 3, 2]));
    assert!(v["warnings"].as_array().unwrap().is_empty());
    let v = json(&semigp(&["gallery", "lambda-q", "--q", "-1"]));
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(code(&semigp(&["gallery", "lambda-q", "--q", "0"])), 3);
}

#[test]
fn verify_prop_exits_zero_with_json() {
    let out = semigp(&["verify", "prop-6.2", "--q", "2", "--c", "0", "--bound", "6"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["scenario"], "prop-6.2");
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["status"] == "holds"));
}

#[test]
fn verify_over_prime_field() {
    let out = semigp(&["verify", "lemma-6.1", "--field", "F_7", "--q", "2", "--c", "0,1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "thm-1.7-sampled", "--samples", "3", "--seed", "5", "--bound", "3"];
    let a = semigp(&args);
    let b = semigp(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = semigp(&["module", "classify", &data("simple.json")]);
    let d = semigp(&["module", "classify", &data("simple.json")]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&semigp(&["nonsense"])), 3);
    assert_eq!(code(&semigp(&["verify", "no-such-scenario"])), 3);
    assert_eq!(code(&semigp(&["ext", &data("simple.json")])), 3);
    assert_eq!(code(&semigp(&["algebra", "validate", "/nonexistent.json"])), 3);
    assert_eq!(code(&semigp(&["--help"])), 0);
}

#[test]
fn config_file_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_semigp"))
        .args(["module", "classify", &data("simple.json")])
        .env("SEMIGP_CONFIG", data("config.json"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("bound: 4"), "{text}");
    // Flags override the file.
    let out = Command::new(env!("CARGO_BIN_EXE_semigp"))
        .args(["module", "classify", &data("simple.json"), "--bound", "2", "--format", "json"])
        .env("SEMIGP_CONFIG", data("config.json"))
        .output()
        .unwrap();
    assert_eq!(json(&out)["bound"], 2);
}

#[test]
fn dimension_cap_is_enforced() {
    let out = semigp(&["--cap", "1", "module", "classify", &data("regular.json")]);
    assert_eq!(code(&out), 3);
}
