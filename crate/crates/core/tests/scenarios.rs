use semigp::gallery::{run_scenario, ScenarioParams, SCENARIOS};
use semigp::{Rational, Status};

fn run(name: &str, params: ScenarioParams) -> semigp::gallery::ScenarioReport {
    let r = run_scenario::<Rational>(name, &params).unwrap();
    eprintln!("{}", r.to_text());
    r
}

#[test]
fn dual_of_cyclic_family() {
    assert_eq!(run("lemma-6.1", ScenarioParams::default()).status(), Status::Holds);
}

#[test]
fn not_monic_but_double_semi_gp() {
    for c in ["0", "1"] {
        let p = ScenarioParams { c: Some(c.into()), ..Default::default() };
        assert_eq!(run("prop-6.2", p).status(), Status::Holds);
    }
}

#[test]
fn approximation_pipeline() {
    assert_eq!(run("thm-1.6-pipeline", ScenarioParams::default()).status(), Status::Holds);
}

#[test]
fn sampled_transfer() {
    let p = ScenarioParams { samples: Some(6), ..Default::default() };
    assert_eq!(run("thm-1.7-sampled", p).status(), Status::Holds);
}

#[test]
fn lsgp_free_example() {
    assert_eq!(run("lsgp-4.4", ScenarioParams::default()).status(), Status::Holds);
}

#[test]
fn unknown_scenario_is_rejected() {
    assert!(run_scenario::<Rational>("nope", &ScenarioParams::default()).is_err());
    assert_eq!(SCENARIOS.len(), 5);
}
