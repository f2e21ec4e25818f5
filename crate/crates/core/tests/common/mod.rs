//! Helpers shared by the integration test suites.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use truthful_arch::numeric::{rational, Rational};
use truthful_arch::scenario::Scenario;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> Scenario {
    Scenario::from_json_file(fixture_path(name)).expect("fixture is valid")
}

pub const FIXTURES: [&str; 7] = [
    "table1.json",
    "table2.json",
    "table3.json",
    "table4.json",
    "table5.json",
    "table6.json",
    "table7.json",
];

/// Random scenario with benefits on the step-10 grid, up to four
/// stakeholders and four alternatives, both matrices present.
pub fn random_grid_scenario(rng: &mut ChaCha8Rng) -> Scenario {
    let m = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=4);
    let alternatives = (0..m)
        .map(|j| (format!("A{j}"), rational(rng.gen_range(1..=100))))
        .collect();
    let stakeholders = (0..n).map(|i| format!("s{i}")).collect();
    let matrix = |rng: &mut ChaCha8Rng| -> Vec<Vec<Rational>> {
        (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| rational(rng.gen_range(-10..=10) * 10))
                    .collect()
            })
            .collect()
    };
    let actual = matrix(rng);
    let reported = matrix(rng);
    Scenario::new(alternatives, stakeholders, Some(actual), reported)
        .expect("generated scenario is valid")
}
